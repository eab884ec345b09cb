use std::f64::consts::{LN_2, PI};

use crate::error::{domain, Error, Result};
use crate::specfun::multivariate_ln_gamma;

use super::linalg::{cholesky, cholesky_solve, ln_det_from_cholesky, Matrix};

/// Log-density of `W_p(n, Σ)` at `M`:
///
/// `−(np/2) ln 2 − ln Γ_p(n/2) − (n/2) ln det Σ − ½ tr(Σ⁻¹M) + ((n−p−1)/2) ln det M`.
pub fn wishart_logpdf(m: &Matrix, dof: f64, sigma: &Matrix) -> Result<f64> {
    let p = m.rows();
    if !m.is_square() || sigma.rows() != p || sigma.cols() != p || p == 0 {
        return Err(Error::Dimensions(format!(
            "M is {}x{}, Sigma is {}x{}",
            m.rows(),
            m.cols(),
            sigma.rows(),
            sigma.cols()
        )));
    }
    let pf = p as f64;
    if !(dof >= pf) {
        return Err(domain(
            "wishart_logpdf",
            format!("degrees of freedom {dof} below p = {p}"),
        ));
    }
    let lm = cholesky(m)?;
    let ls = cholesky(sigma)?;
    let ln_det_m = ln_det_from_cholesky(&lm);
    let ln_det_s = ln_det_from_cholesky(&ls);
    let mut trace = 0.0;
    let mut col = vec![0.0; p];
    for j in 0..p {
        for (i, c) in col.iter_mut().enumerate() {
            *c = m[(i, j)];
        }
        cholesky_solve(&ls, &mut col);
        trace += col[j];
    }
    Ok(-(dof * pf / 2.0) * LN_2
        - multivariate_ln_gamma(p, dof / 2.0)?
        - (dof / 2.0) * ln_det_s
        - 0.5 * trace
        + ((dof - pf - 1.0) / 2.0) * ln_det_m)
}

/// Joint log-density of the ordered eigenvalues `l_1 > … > l_p` of
/// `W_p(n, λ I)`, where the orthogonal-group integral collapses to
/// `exp(−Σ l_i / 2λ)`.
pub fn joint_eig_logdensity_isotropic(l: &[f64], dof: f64, lambda: f64) -> Result<f64> {
    let p = l.len();
    if p == 0 {
        return Err(Error::Dimensions("no eigenvalues".into()));
    }
    let pf = p as f64;
    if !(dof > pf) {
        return Err(domain(
            "joint_eig_logdensity_isotropic",
            format!("degrees of freedom {dof} must exceed p = {p}"),
        ));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain(
            "joint_eig_logdensity_isotropic",
            format!("lambda must be positive, got {lambda}"),
        ));
    }
    if let Some(bad) = l.iter().position(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(domain(
            "joint_eig_logdensity_isotropic",
            format!("eigenvalue {} = {} is not positive", bad + 1, l[bad]),
        ));
    }
    if let Some(i) = l.windows(2).position(|w| w[1] >= w[0]) {
        return Err(Error::TiedEigenvalues(i + 1));
    }
    let mut value = (pf * pf / 2.0) * PI.ln()
        - (dof * pf / 2.0) * LN_2
        - (dof / 2.0) * pf * lambda.ln()
        - multivariate_ln_gamma(p, dof / 2.0)?
        - multivariate_ln_gamma(p, pf / 2.0)?;
    let mut sum_l = 0.0;
    for (i, &li) in l.iter().enumerate() {
        value += ((dof - pf - 1.0) / 2.0) * li.ln();
        sum_l += li;
        for &lj in &l[i + 1..] {
            value += (li - lj).ln();
        }
    }
    Ok(value - sum_l / (2.0 * lambda))
}
