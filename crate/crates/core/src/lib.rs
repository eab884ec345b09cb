//! Numerical laboratory for the extreme eigenvalues of sample covariance
//! matrices.
//!
//! * [`specfun`]: gamma, incomplete gamma, chi-square and normal functions,
//!   Gaussian tail sandwich.
//! * [`spectra`]: population spectrum families and the top/bottom clustering
//!   sets `J_p`, `H_{p,κ}`.
//! * [`wishart`]: Gaussian simulation, sample covariance, Jacobi eigenvalues,
//!   Wishart densities.
//! * [`bounds`]: finite-sample product bounds, asymptotic exponential bounds,
//!   Marchenko–Pastur law.
//! * [`stats`]: Wilson intervals and Kolmogorov–Smirnov statistics.
//! * [`experiments`]: seeded Monte Carlo estimation and validation.
//! * [`cli`]: the `covlab` command-line front end.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod experiments;
mod quad;
pub mod rng;
pub mod specfun;
pub mod spectra;
pub mod stats;
pub mod wishart;

pub use error::{Error, Result};
