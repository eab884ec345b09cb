//! Gaussian data, sample covariance matrices, their eigenvalues and the
//! Wishart densities.

mod density;
mod linalg;
mod sampling;

use serde::Serialize;

pub use density::{joint_eig_logdensity_isotropic, wishart_logpdf};
pub use linalg::{
    cholesky, cholesky_solve, jacobi_eigenvalues, ln_det_from_cholesky, symmetric_eigenvalues,
    JacobiOutcome, Matrix, SYMMETRY_TOL,
};
pub use sampling::{
    random_orthogonal, sample_covariance, sample_gaussian_matrix, DataMatrix, SampleCov,
};

use crate::error::{domain, Error, Result};
use crate::rng::GaussianStream;
use crate::spectra::SpectrumFamily;

/// Sample size for dimension `p` at aspect ratio `q`: `n = round(p/q)`,
/// required to exceed `p`.
pub fn sample_size(p: usize, q: f64) -> Result<usize> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(
            "sample_size",
            format!("q must lie in (0, 1), got {q}"),
        ));
    }
    if p == 0 {
        return Err(Error::Dimensions("p must be at least 1".into()));
    }
    let n = (p as f64 / q).round() as usize;
    if n <= p {
        return Err(Error::Dimensions(format!(
            "n = round(p/q) = {n} does not exceed p = {p}"
        )));
    }
    Ok(n)
}

/// Extreme sample and population eigenvalues from one simulated draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialRecord {
    pub p: usize,
    pub n: usize,
    /// Largest sample eigenvalue `l_1`.
    pub l1: f64,
    /// Smallest sample eigenvalue `l_p`.
    pub lp: f64,
    pub lambda1: f64,
    pub lambdap: f64,
    /// `l_1 > λ_1`
    pub overshoot: bool,
    /// `l_p < λ_p`
    pub undershoot: bool,
    /// Raw id of the random stream the trial consumed.
    pub stream: u64,
}

/// Simulates `X ~ N(0, diag(λ))` with `n = round(p/q)` rows, forms `S`, and
/// records its extreme eigenvalues.
pub fn extreme_eigs_trial(
    family: &SpectrumFamily,
    p: usize,
    q: f64,
    stream: &mut GaussianStream,
) -> Result<TrialRecord> {
    let n = sample_size(p, q)?;
    let spectrum = family.spectrum_at(p)?;
    let x = sample_gaussian_matrix(p, n, &spectrum, stream)?;
    let eig = sample_covariance(&x)?.eigenvalues()?;
    let (l1, lp) = (eig[0], eig[p - 1]);
    let (lambda1, lambdap) = (spectrum.largest(), spectrum.smallest());
    Ok(TrialRecord {
        p,
        n,
        l1,
        lp,
        lambda1,
        lambdap,
        overshoot: l1 > lambda1,
        undershoot: lp < lambdap,
        stream: stream.id().raw(),
    })
}
