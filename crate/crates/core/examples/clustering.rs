//! Top and bottom clustering sets for a few spectrum families.

use covlab::spectra::{
    default_check_grid, generator_condition_check, h_set_xi, j_set, Generator, SpectrumFamily,
};

fn main() -> covlab::Result<()> {
    let families = [
        SpectrumFamily::identity(1.0)?,
        SpectrumFamily::generator(Generator::parse("2-x")?),
        SpectrumFamily::dirac_mixture(0.3, 3.0, Generator::parse("2-x")?)?,
        SpectrumFamily::two_block(2.0, 1.0, 0.5)?,
    ];
    let kappa = 0.5;
    println!("{:<20} {:>5} {:>6} {:>6}", "family", "p", "phi", "xi");
    for fam in &families {
        for p in [10, 40, 100] {
            let j = j_set(fam, p, 10_000)?;
            let h = h_set_xi(fam, p, kappa, 10_000)?;
            println!(
                "{:<20} {p:>5} {:>6} {:>6}",
                fam.describe(),
                j.cardinal,
                h.cardinal
            );
        }
    }

    for expr in ["2-x", "2-sqrt(x)", "1+pow(1-x, 2)"] {
        let g = Generator::parse(expr)?;
        let check = generator_condition_check(&g, &default_check_grid())?;
        let last = check.slopes.last().copied().unwrap_or(f64::NAN);
        println!(
            "{expr:<14} sqrt(x) g'(x) at x = 2^-24: {last:>10.3e}  passes: {}",
            check.passes
        );
    }
    Ok(())
}
