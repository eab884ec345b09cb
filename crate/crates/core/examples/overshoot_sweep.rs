//! Overshoot and undershoot frequencies as the dimension grows, next to the
//! asymptotic exponential references.

use covlab::experiments::{sweep, ExperimentConfig};
use covlab::spectra::{Generator, SpectrumFamily};

fn main() -> covlab::Result<()> {
    for fam in [
        SpectrumFamily::identity(1.0)?,
        SpectrumFamily::generator(Generator::parse("2-x")?),
    ] {
        let config = ExperimentConfig::new(fam.clone(), vec![10, 20, 40, 80], 0.1, 200, 42);
        let result = sweep(&config)?;
        println!("{}", fam.describe());
        println!(
            "   p     n  phi   xi  P(l1>λ1)  95% CI            P(lp<λp)  e^(-cφ)   1-e^(-cκ ξ)"
        );
        for r in &result.rows {
            println!(
                "{:>4} {:>5} {:>4} {:>4}  {:.3}     [{:.3}, {:.3}]    {:.3}     {:.3e} {:.6}",
                r.p,
                r.n,
                r.phi,
                r.xi,
                r.overshoot.freq,
                r.overshoot.ci_low,
                r.overshoot.ci_high,
                r.undershoot.freq,
                r.theorem2_bound,
                r.theorem3_bound
            );
        }
        println!();
    }
    Ok(())
}
