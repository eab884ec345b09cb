//! Pooled sample eigenvalues of an identity covariance against the
//! Marchenko–Pastur law.

use covlab::bounds::MPLaw;
use covlab::experiments::mp_compare;

fn main() -> covlab::Result<()> {
    let law = MPLaw::new(0.1)?;
    println!(
        "q = 0.1: support [{:.6}, {:.6}]",
        law.lambda_minus, law.lambda_plus
    );
    for x in [0.5, 0.8, 1.0, 1.3, 1.7] {
        println!(
            "  x = {x:.1}  density {:.6}  cdf {:.6}",
            law.density(x),
            law.cdf(x)
        );
    }

    for p in [20, 100, 400] {
        let r = mp_compare(p, 0.1, 5, 7, None)?;
        println!(
            "p = {p:>3}: {} eigenvalues, KS distance {:.4}",
            r.eigenvalue_count, r.ks
        );
    }

    let r = mp_compare(200, 0.1, 5, 7, None)?;
    println!("\nhistogram (p = 200) against the density at bin centres:");
    for b in r.histogram.iter().filter(|b| b.mass > 0.0) {
        let width = b.hi - b.lo;
        let centre = 0.5 * (b.lo + b.hi);
        println!(
            "  [{:.3}, {:.3})  {:.4}  {:.4}",
            b.lo,
            b.hi,
            b.mass / width,
            law.density(centre)
        );
    }
    Ok(())
}
