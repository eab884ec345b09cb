//! Probability bounds on the extreme sample eigenvalues and the
//! Marchenko–Pastur reference law.
//!
//! The product bounds are valid for every finite `p < n`:
//!
//! ```text
//! P(l_1 ≤ x) ≤ ∏ P(χ²_n ≤ n x / λ_i)
//! P(l_p ≤ x) ≥ 1 − ∏ P(χ²_n ≥ n x / λ_i)
//! ```
//!
//! The exponential bounds in `φ` and `ξ` are asymptotic reference values
//! only; they are not guaranteed to hold at any finite `p`.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quad::adaptive_simpson;
use crate::specfun::{chi2_ln_cdf, chi2_ln_sf};
use crate::spectra::Spectrum;

/// Degrees of freedom used for the chi-square factors. The scaling
/// `n x / λ_i` uses `n` under both conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DofConvention {
    #[default]
    #[serde(rename = "n")]
    N,
    #[serde(rename = "n-1")]
    NMinusOne,
}

impl DofConvention {
    pub fn dof(self, n: usize) -> u64 {
        match self {
            DofConvention::N => n as u64,
            DofConvention::NMinusOne => n as u64 - 1,
        }
    }
}

impl fmt::Display for DofConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DofConvention::N => "n",
            DofConvention::NMinusOne => "n-1",
        })
    }
}

impl FromStr for DofConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "n" => Ok(DofConvention::N),
            "n-1" => Ok(DofConvention::NMinusOne),
            other => Err(Error::Config(format!(
                "dof convention must be `n` or `n-1`, got {other:?}"
            ))),
        }
    }
}

fn check_bound_args(func: &'static str, spectrum: &Spectrum, n: usize, x: f64) -> Result<()> {
    if n <= spectrum.p() {
        return Err(domain(
            func,
            format!("need n > p, got n = {n}, p = {}", spectrum.p()),
        ));
    }
    if !(x >= 0.0) {
        return Err(domain(func, format!("x must be nonnegative, got {x}")));
    }
    Ok(())
}

/// Upper bound on `P(l_1 ≤ x)`: `∏ P(χ²_dof ≤ n x / λ_i)`, summed in log space.
pub fn muirhead_upper_largest(
    spectrum: &Spectrum,
    n: usize,
    x: f64,
    dof: DofConvention,
) -> Result<f64> {
    check_bound_args("muirhead_upper_largest", spectrum, n, x)?;
    let k = dof.dof(n);
    let mut ln = 0.0;
    for &lam in spectrum.values() {
        ln += chi2_ln_cdf(k, n as f64 * x / lam)?;
    }
    Ok(ln.exp())
}

/// Lower bound on `P(l_p ≤ x)`: `1 − ∏ P(χ²_dof ≥ n x / λ_i)`.
pub fn muirhead_lower_smallest(
    spectrum: &Spectrum,
    n: usize,
    x: f64,
    dof: DofConvention,
) -> Result<f64> {
    check_bound_args("muirhead_lower_smallest", spectrum, n, x)?;
    let k = dof.dof(n);
    let mut ln = 0.0;
    for &lam in spectrum.values() {
        ln += chi2_ln_sf(k, n as f64 * x / lam)?;
    }
    Ok(-ln.exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// `values = ∏ factors`, factors are chi-square CDFs.
    UpperLargest,
    /// `values = 1 − ∏ factors`, factors are chi-square survivals.
    LowerSmallest,
}

/// A product bound evaluated on a grid, with the per-eigenvalue factors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCurve {
    pub kind: BoundKind,
    pub x_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// `factors[k][i]` is the chi-square factor of eigenvalue `i` at `x_grid[k]`.
    pub factors: Vec<Vec<f64>>,
    pub dof_convention: DofConvention,
}

/// Evaluates either product bound on `x_grid`.
pub fn bound_curve(
    kind: BoundKind,
    spectrum: &Spectrum,
    n: usize,
    x_grid: &[f64],
    dof: DofConvention,
) -> Result<BoundCurve> {
    let k = dof.dof(n);
    let mut values = Vec::with_capacity(x_grid.len());
    let mut factors = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let (value, row) = match kind {
            BoundKind::UpperLargest => {
                let v = muirhead_upper_largest(spectrum, n, x, dof)?;
                let row = spectrum
                    .values()
                    .iter()
                    .map(|&lam| chi2_ln_cdf(k, n as f64 * x / lam).map(f64::exp))
                    .collect::<Result<Vec<_>>>()?;
                (v, row)
            }
            BoundKind::LowerSmallest => {
                let v = muirhead_lower_smallest(spectrum, n, x, dof)?;
                let row = spectrum
                    .values()
                    .iter()
                    .map(|&lam| chi2_ln_sf(k, n as f64 * x / lam).map(f64::exp))
                    .collect::<Result<Vec<_>>>()?;
                (v, row)
            }
        };
        values.push(value);
        factors.push(row);
    }
    Ok(BoundCurve {
        kind,
        x_grid: x_grid.to_vec(),
        values,
        factors,
        dof_convention: dof,
    })
}

/// Rate constant of the overshoot bound: `√(2/π) e⁻¹ / (1 + √5)`.
pub fn theorem2_constant() -> f64 {
    (2.0 / PI).sqrt() / E / (1.0 + 5f64.sqrt())
}

/// Asymptotic upper bound on `P(l_1 ≤ λ_1)`: `e^{−c φ}`.
pub fn theorem2_bound(phi: u64) -> f64 {
    (-theorem2_constant() * phi as f64).exp()
}

/// Largest admissible `κ` (exclusive) for the undershoot bound: `√(2/π)`.
pub fn kappa_limit() -> f64 {
    (2.0 / PI).sqrt()
}

/// `c_κ = ln(2 − κ √(π/2))`, positive for `0 < κ < √(2/π)`.
pub fn theorem3_constant(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa < kappa_limit()) {
        return Err(domain(
            "theorem3_bound",
            format!(
                "kappa must lie in (0, sqrt(2/pi) = {}), got {kappa}",
                kappa_limit()
            ),
        ));
    }
    Ok((2.0 - kappa * (PI / 2.0).sqrt()).ln())
}

/// Asymptotic lower bound on `P(l_p ≤ λ_p)`: `1 − e^{−c_κ ξ}`.
pub fn theorem3_bound(xi: u64, kappa: f64) -> Result<f64> {
    let c = theorem3_constant(kappa)?;
    Ok(-(-c * xi as f64).exp_m1())
}

/// Marchenko–Pastur law for aspect ratio `q ∈ (0, 1)` and unit variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MPLaw {
    pub q: f64,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
}

const MP_QUAD_TOL: f64 = 1e-8;

impl MPLaw {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(domain("mp_law", format!("q must lie in (0, 1), got {q}")));
        }
        let s = q.sqrt();
        Ok(MPLaw {
            q,
            lambda_minus: (1.0 - s) * (1.0 - s),
            lambda_plus: (1.0 + s) * (1.0 + s),
        })
    }

    pub fn density(&self, x: f64) -> f64 {
        if !(x >= self.lambda_minus && x <= self.lambda_plus) {
            return 0.0;
        }
        ((self.lambda_plus - x) * (x - self.lambda_minus)).sqrt() / (2.0 * PI * self.q * x)
    }

    /// CDF by adaptive Simpson after the substitution
    /// `x = λ₋ + w (1 − cos θ)/2`, which removes the square-root edges.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.lambda_minus {
            return 0.0;
        }
        if x >= self.lambda_plus {
            return 1.0;
        }
        let w = self.lambda_plus - self.lambda_minus;
        let theta = (1.0 - 2.0 * (x - self.lambda_minus) / w)
            .clamp(-1.0, 1.0)
            .acos();
        let half = 0.5 * w;
        let integrand = |t: f64| {
            let s = t.sin();
            let xt = self.lambda_minus + half * (1.0 - t.cos());
            half * half * s * s / (2.0 * PI * self.q * xt)
        };
        adaptive_simpson(&integrand, 0.0, theta, MP_QUAD_TOL).clamp(0.0, 1.0)
    }
}

/// Marchenko–Pastur density; zero outside `[λ₋, λ₊]`.
pub fn mp_density(q: f64, x: f64) -> Result<f64> {
    Ok(MPLaw::new(q)?.density(x))
}

/// Marchenko–Pastur CDF.
pub fn mp_cdf(q: f64, x: f64) -> Result<f64> {
    Ok(MPLaw::new(q)?.cdf(x))
}
