//! Chi-square tails and the Gaussian tail sandwich.

use covlab::specfun::{chi2_cdf, chi2_ln_sf, chi2_sf, gaussian_tail_bounds, ln_gamma, normal_sf};

fn main() -> covlab::Result<()> {
    println!("ln Γ(0.5) = {:.15}", ln_gamma(0.5)?);
    println!("ln Γ(100) = {:.10}", ln_gamma(100.0)?);

    println!("\n  n        x         cdf              sf         ln sf");
    for &(n, x) in &[
        (2u64, 1.0),
        (10, 5.0),
        (200, 150.0),
        (200, 400.0),
        (5000, 6000.0),
    ] {
        println!(
            "{n:>5} {x:>8.1}  {:<16.10e} {:<16.10e} {:.6}",
            chi2_cdf(n, x)?,
            chi2_sf(n, x)?,
            chi2_ln_sf(n, x)?
        );
    }

    println!("\n   x     lower            √(π/2) e^(x²/2) (1 - Φ(x))   upper");
    for x in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let t = gaussian_tail_bounds(x)?;
        println!(
            "{x:>4.1}  {:.10e}   {:.10e}             {:.10e}",
            t.lower, t.mid, t.upper
        );
    }
    for x in [1.0, 4.0, 8.0] {
        println!("1 - Φ({x}) = {:.10e}", normal_sf(x));
    }
    Ok(())
}
