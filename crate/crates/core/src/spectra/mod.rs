//! Population spectra indexed by dimension, and the clustering sets that
//! control whether the extreme sample eigenvalues over- or undershoot.
//!
//! A [`SpectrumFamily`] yields a spectrum `λ_{1,p} ≥ … ≥ λ_{p,p}` for every
//! dimension `p`. The top-cluster set keeps the indices `i ≤ p` with
//! `|λ_{1,m}/λ_{i,m} − 1| < 1/√m` for every `m ≥ p`; the bottom-cluster set
//! does the same relative to `λ_{m,m}` with tolerance `κ/√m`. Both
//! quantifiers are truncated at a finite horizon `M`.

mod expr;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use expr::Expr;

use crate::error::{Error, Result};

/// Smallest admissible eigenvalue; keeps eigenvalue ratios finite.
pub const MIN_EIGENVALUE: f64 = 1e-12;

/// Number of points used to check that a generator is decreasing.
const MONOTONE_CHECK_POINTS: usize = 1000;

/// Default truncation of the "for all m ≥ p" quantifier: `max(100 p, 10⁴)`.
pub fn default_horizon(p: usize) -> usize {
    (100 * p).max(10_000)
}

/// Number of atoms at the top of a Dirac mixture spectrum: `⌈δ p⌉`.
pub fn dirac_count(delta: f64, p: usize) -> usize {
    ((delta * p as f64).ceil() as usize).min(p)
}

/// Population eigenvalues for one dimension, sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("spectrum is empty".into()));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= MIN_EIGENVALUE {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalue {} = {v} is not a finite value above {MIN_EIGENVALUE}",
                    i + 1
                )));
            }
            if i > 0 && v > values[i - 1] {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalues must be nonincreasing: λ_{} = {} < λ_{} = {v}",
                    i,
                    values[i - 1],
                    i + 1
                )));
            }
        }
        Ok(Spectrum { values })
    }

    pub fn identity(p: usize, lambda: f64) -> Result<Self> {
        Spectrum::new(vec![lambda; p])
    }

    pub fn p(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn smallest(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// A function `g` on `[0, 1]` with `λ_{i,p} = g(i/p)`.
#[derive(Clone)]
pub struct Generator {
    label: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Generator").field(&self.label).finish()
    }
}

impl Generator {
    /// Wraps `f`, checking that it is positive and strictly decreasing on
    /// an evenly spaced grid of 1000 points in `[0, 1]`.
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let g = Generator {
            label: label.into(),
            f: Arc::new(f),
        };
        g.validate()?;
        Ok(g)
    }

    /// Parses an expression in `x` (see [`Expr`]).
    pub fn parse(src: &str) -> Result<Self> {
        let e = Expr::parse(src)?;
        Generator::new(src.trim(), move |x| e.eval(x))
    }

    fn validate(&self) -> Result<()> {
        let n = MONOTONE_CHECK_POINTS;
        let mut prev = f64::INFINITY;
        for k in 0..n {
            let x = k as f64 / (n - 1) as f64;
            let v = self.eval(x);
            if !v.is_finite() || v <= MIN_EIGENVALUE {
                return Err(Error::NonMonotoneGenerator(format!(
                    "{}: g({x}) = {v} is not positive",
                    self.label
                )));
            }
            if v >= prev {
                return Err(Error::NonMonotoneGenerator(format!(
                    "{}: g({x}) = {v} is not below the previous grid value {prev}",
                    self.label
                )));
            }
            prev = v;
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }
}

/// Explicit per-dimension spectra: either a finite map or a rule `p ↦ values`.
#[derive(Clone)]
pub enum Table {
    Explicit(BTreeMap<usize, Spectrum>),
    Rule {
        label: String,
        rule: Arc<dyn Fn(usize) -> Vec<f64> + Send + Sync>,
    },
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Table::Explicit(map) => f.debug_tuple("Explicit").field(map).finish(),
            Table::Rule { label, .. } => f.debug_struct("Rule").field("label", label).finish(),
        }
    }
}

/// A rule producing a spectrum for every dimension.
#[derive(Debug, Clone)]
pub enum SpectrumFamily {
    /// `Σ = λ I`.
    Identity {
        lambda: f64,
    },
    /// `λ_{i,p} = g(i/p)`.
    Generator(Generator),
    /// The first `⌈δ p⌉` eigenvalues equal `top`, the rest are `base(i/p)`.
    DiracMixture {
        delta: f64,
        top: f64,
        base: Generator,
    },
    Table(Table),
}

impl SpectrumFamily {
    pub fn identity(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= MIN_EIGENVALUE {
            return Err(Error::InvalidSpectrum(format!(
                "identity scale {lambda} must be positive"
            )));
        }
        Ok(SpectrumFamily::Identity { lambda })
    }

    pub fn generator(g: Generator) -> Self {
        SpectrumFamily::Generator(g)
    }

    pub fn dirac_mixture(delta: f64, top: f64, base: Generator) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidSpectrum(format!(
                "Dirac fraction {delta} must lie in (0, 1)"
            )));
        }
        let b0 = base.eval(0.0);
        if !(top >= b0) || !top.is_finite() {
            return Err(Error::InvalidSpectrum(format!(
                "Dirac atom {top} must be at least base(0) = {b0}"
            )));
        }
        Ok(SpectrumFamily::DiracMixture { delta, top, base })
    }

    pub fn table(map: BTreeMap<usize, Spectrum>) -> Result<Self> {
        for (p, s) in &map {
            if s.p() != *p {
                return Err(Error::InvalidSpectrum(format!(
                    "table entry for p = {p} has {} values",
                    s.p()
                )));
            }
        }
        Ok(SpectrumFamily::Table(Table::Explicit(map)))
    }

    pub fn rule(
        label: impl Into<String>,
        rule: impl Fn(usize) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        SpectrumFamily::Table(Table::Rule {
            label: label.into(),
            rule: Arc::new(rule),
        })
    }

    /// `high` for the first `⌈fraction · p⌉` indices, `low` for the rest.
    pub fn two_block(high: f64, low: f64, fraction: f64) -> Result<Self> {
        if !(high >= low && low > MIN_EIGENVALUE && fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::InvalidSpectrum(format!(
                "two-block spectrum needs high >= low > 0 and fraction in (0, 1], got ({high}, {low}, {fraction})"
            )));
        }
        Ok(SpectrumFamily::rule(
            format!("blocks:{high}:{low}:{fraction}"),
            move |p| {
                let k = dirac_count(fraction, p);
                (0..p).map(|i| if i < k { high } else { low }).collect()
            },
        ))
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            SpectrumFamily::Identity { lambda } => format!("identity:{lambda}"),
            SpectrumFamily::Generator(g) => format!("generator:{}", g.label()),
            SpectrumFamily::DiracMixture { delta, top, base } => {
                format!("dirac:{delta}:{top}:{}", base.label())
            }
            SpectrumFamily::Table(Table::Explicit(map)) => format!("table({} entries)", map.len()),
            SpectrumFamily::Table(Table::Rule { label, .. }) => label.clone(),
        }
    }

    /// The generator behind this family, if it has one.
    pub fn generator_fn(&self) -> Option<&Generator> {
        match self {
            SpectrumFamily::Generator(g) => Some(g),
            SpectrumFamily::DiracMixture { base, .. } => Some(base),
            _ => None,
        }
    }

    /// The length-`p` spectrum of this family.
    pub fn spectrum_at(&self, p: usize) -> Result<Spectrum> {
        if p == 0 {
            return Err(Error::InvalidSpectrum(
                "dimension must be at least 1".into(),
            ));
        }
        let values = match self {
            SpectrumFamily::Identity { lambda } => vec![*lambda; p],
            SpectrumFamily::Generator(g) => (1..=p).map(|i| g.eval(i as f64 / p as f64)).collect(),
            SpectrumFamily::DiracMixture { delta, top, base } => {
                let k = dirac_count(*delta, p);
                (1..=p)
                    .map(|i| {
                        if i <= k {
                            *top
                        } else {
                            base.eval(i as f64 / p as f64)
                        }
                    })
                    .collect()
            }
            SpectrumFamily::Table(Table::Explicit(map)) => {
                return map.get(&p).cloned().ok_or(Error::MissingTableEntry(p));
            }
            SpectrumFamily::Table(Table::Rule { rule, .. }) => {
                let v = rule(p);
                if v.len() != p {
                    return Err(Error::InvalidSpectrum(format!(
                        "rule produced {} values for p = {p}",
                        v.len()
                    )));
                }
                v
            }
        };
        Spectrum::new(values).map_err(|e| match (self, e) {
            (SpectrumFamily::Generator(g), Error::InvalidSpectrum(msg))
            | (SpectrumFamily::DiracMixture { base: g, .. }, Error::InvalidSpectrum(msg)) => {
                Error::NonMonotoneGenerator(format!("{} at p = {p}: {msg}", g.label()))
            }
            (_, e) => e,
        })
    }

    /// Eigenvalues `λ_{i,m}` for the requested 1-based `indices`, plus
    /// `λ_{1,m}` and `λ_{m,m}`.
    fn slice_at(&self, m: usize, indices: &[usize]) -> Result<(Vec<f64>, f64, f64)> {
        let mf = m as f64;
        match self {
            SpectrumFamily::Identity { lambda } => {
                Ok((vec![*lambda; indices.len()], *lambda, *lambda))
            }
            SpectrumFamily::Generator(g) => {
                let at = |i: usize| g.eval(i as f64 / mf);
                let (top, bottom) = (at(1), at(m));
                if !(top >= bottom && bottom > MIN_EIGENVALUE) {
                    return Err(Error::NonMonotoneGenerator(format!(
                        "{} at p = {m}",
                        g.label()
                    )));
                }
                Ok((indices.iter().map(|&i| at(i)).collect(), top, bottom))
            }
            SpectrumFamily::DiracMixture { delta, top, base } => {
                let k = dirac_count(*delta, m);
                let at = |i: usize| {
                    if i <= k {
                        *top
                    } else {
                        base.eval(i as f64 / mf)
                    }
                };
                Ok((indices.iter().map(|&i| at(i)).collect(), at(1), at(m)))
            }
            SpectrumFamily::Table(_) => {
                let s = self.spectrum_at(m)?;
                let v = s.values();
                Ok((
                    indices.iter().map(|&i| v[i - 1]).collect(),
                    s.largest(),
                    s.smallest(),
                ))
            }
        }
    }
}

/// Membership set of a clustering condition under a finite horizon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterReport {
    pub p: usize,
    pub horizon: usize,
    /// 1-based eigenvalue indices, ascending.
    pub members: Vec<usize>,
    pub cardinal: usize,
    /// Always true: "for all m ≥ p" was checked only for `p ≤ m ≤ horizon`.
    pub quantifier_truncated: bool,
}

impl ClusterReport {
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &ClusterReport) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }
}

/// Shared driver: keep `i ∈ 1..=p` while `|target(m)/λ_{i,m} − 1| < tol(m)`
/// for every `m ∈ [p, horizon]`.
fn cluster_set(
    family: &SpectrumFamily,
    p: usize,
    horizon: usize,
    mut target: impl FnMut(usize, f64, f64) -> Result<f64>,
    tol: impl Fn(usize) -> f64,
) -> Result<ClusterReport> {
    if p == 0 {
        return Err(Error::InvalidSpectrum(
            "dimension must be at least 1".into(),
        ));
    }
    if horizon < p {
        return Err(Error::HorizonTooSmall { p, horizon });
    }
    let mut members: Vec<usize> = (1..=p).collect();
    for m in p..=horizon {
        if members.is_empty() {
            break;
        }
        let (vals, top, bottom) = family.slice_at(m, &members)?;
        let t = target(m, top, bottom)?;
        let eps = tol(m);
        let keep: Vec<usize> = members
            .iter()
            .zip(&vals)
            .filter(|(_, &lam)| (t / lam - 1.0).abs() < eps)
            .map(|(&i, _)| i)
            .collect();
        members = keep;
    }
    Ok(ClusterReport {
        p,
        horizon,
        cardinal: members.len(),
        members,
        quantifier_truncated: true,
    })
}

/// Indices clustered with the top eigenvalue: `|λ_{1,m}/λ_{i,m} − 1| < 1/√m`.
pub fn j_set(family: &SpectrumFamily, p: usize, horizon: usize) -> Result<ClusterReport> {
    cluster_set(
        family,
        p,
        horizon,
        |_, top, _| Ok(top),
        |m| 1.0 / (m as f64).sqrt(),
    )
}

/// Cardinal of [`j_set`].
pub fn phi(family: &SpectrumFamily, p: usize, horizon: usize) -> Result<usize> {
    j_set(family, p, horizon).map(|r| r.cardinal)
}

/// Indices clustered with the bottom eigenvalue:
/// `|λ_{m,m}/λ_{i,m} − 1| < κ/√m`.
pub fn h_set_xi(
    family: &SpectrumFamily,
    p: usize,
    kappa: f64,
    horizon: usize,
) -> Result<ClusterReport> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(crate::error::domain(
            "h_set_xi",
            format!("kappa must be positive, got {kappa}"),
        ));
    }
    cluster_set(
        family,
        p,
        horizon,
        |_, _, bottom| Ok(bottom),
        |m| kappa / (m as f64).sqrt(),
    )
}

/// Cardinal of [`h_set_xi`].
pub fn xi(family: &SpectrumFamily, p: usize, kappa: f64, horizon: usize) -> Result<usize> {
    h_set_xi(family, p, kappa, horizon).map(|r| r.cardinal)
}

/// Indices clustered with an arbitrary positive sequence:
/// `|x_m/λ_{i,m} − 1| < 1/√m`. `x(m)` returning `None` (or a nonpositive
/// value) inside `[p, horizon]` is an error.
pub fn generalized_j_set(
    family: &SpectrumFamily,
    x: impl Fn(usize) -> Option<f64>,
    p: usize,
    horizon: usize,
) -> Result<ClusterReport> {
    cluster_set(
        family,
        p,
        horizon,
        |m, _, _| match x(m) {
            Some(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Error::UndefinedSequence(m)),
        },
        |m| 1.0 / (m as f64).sqrt(),
    )
}

/// Finite-difference evidence for `√x g′(x) → 0` as `x → 0⁺`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorCheck {
    pub points: Vec<f64>,
    /// `√x · g′(x)` at each grid point.
    pub slopes: Vec<f64>,
    pub passes: bool,
    /// Always true: a finite grid is evidence about a limit, not a proof.
    pub heuristic: bool,
}

/// Minimum number of grid points accepted by [`generator_condition_check`].
pub const MIN_CHECK_POINTS: usize = 8;
const CHECK_TAIL: usize = 5;
const CHECK_THRESHOLD: f64 = 0.05;

/// `start, start·ratio, start·ratio², …` (`len` points).
pub fn geometric_grid(start: f64, ratio: f64, len: usize) -> Vec<f64> {
    (0..len).map(|k| start * ratio.powi(k as i32)).collect()
}

/// Default grid for [`generator_condition_check`]: `2^{-1}, …, 2^{-24}`.
pub fn default_check_grid() -> Vec<f64> {
    geometric_grid(0.5, 0.5, 24)
}

/// Estimates `√x g′(x)` by central differences (step `x/100`) on a grid
/// decreasing toward zero. Passes when `|√x g′(x)|` strictly decreases over
/// the last five points and ends below 0.05.
pub fn generator_condition_check(g: &Generator, grid: &[f64]) -> Result<GeneratorCheck> {
    let valid = grid.len() >= MIN_CHECK_POINTS
        && grid.iter().all(|&x| x > 0.0 && x <= 1.0)
        && grid.windows(2).all(|w| w[1] < w[0]);
    if !valid {
        return Err(Error::GridTooShort {
            needed: MIN_CHECK_POINTS,
            got: grid.len(),
        });
    }
    let slopes: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let h = x / 100.0;
            let d = (g.eval(x + h) - g.eval(x - h)) / (2.0 * h);
            x.sqrt() * d
        })
        .collect();
    let tail = &slopes[slopes.len() - CHECK_TAIL..];
    let decreasing = tail.windows(2).all(|w| w[1].abs() < w[0].abs());
    let last = tail[CHECK_TAIL - 1].abs();
    Ok(GeneratorCheck {
        points: grid.to_vec(),
        slopes,
        passes: decreasing && last < CHECK_THRESHOLD,
        heuristic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(src: &str) -> Generator {
        Generator::parse(src).unwrap()
    }

    /// Brute-force membership: evaluate the full spectrum at every m.
    fn brute_j(family: &SpectrumFamily, p: usize, horizon: usize) -> Vec<usize> {
        let spectra: Vec<Vec<f64>> = (p..=horizon)
            .map(|m| family.spectrum_at(m).unwrap().values().to_vec())
            .collect();
        (1..=p)
            .filter(|&i| {
                spectra.iter().enumerate().all(|(k, s)| {
                    let m = (p + k) as f64;
                    (s[0] / s[i - 1] - 1.0).abs() < 1.0 / m.sqrt()
                })
            })
            .collect()
    }

    fn brute_h(family: &SpectrumFamily, p: usize, kappa: f64, horizon: usize) -> Vec<usize> {
        (1..=p)
            .filter(|&i| {
                (p..=horizon).all(|m| {
                    let s = family.spectrum_at(m).unwrap();
                    let v = s.values();
                    (v[m - 1] / v[i - 1] - 1.0).abs() < kappa / (m as f64).sqrt()
                })
            })
            .collect()
    }

    #[test]
    fn spectrum_validation() {
        assert!(Spectrum::new(vec![]).is_err());
        assert!(Spectrum::new(vec![1.0, 2.0]).is_err());
        assert!(Spectrum::new(vec![1.0, 0.0]).is_err());
        assert!(Spectrum::new(vec![1.0, 1e-13]).is_err());
        assert!(Spectrum::new(vec![2.0, 2.0, 1.0]).is_ok());
    }

    #[test]
    fn spectrum_at_examples() {
        let id = SpectrumFamily::identity(1.0).unwrap();
        assert_eq!(id.spectrum_at(3).unwrap().values(), &[1.0, 1.0, 1.0]);

        let lin = SpectrumFamily::generator(gen("2-x"));
        assert_eq!(
            lin.spectrum_at(4).unwrap().values(),
            &[1.75, 1.5, 1.25, 1.0]
        );

        let dm = SpectrumFamily::dirac_mixture(0.5, 2.0, gen("1 - x/2")).unwrap();
        assert_eq!(dm.spectrum_at(4).unwrap().values(), &[2.0, 2.0, 0.625, 0.5]);

        let table = SpectrumFamily::table(BTreeMap::from([(
            2,
            Spectrum::new(vec![3.0, 1.0]).unwrap(),
        )]))
        .unwrap();
        assert_eq!(table.spectrum_at(2).unwrap().values(), &[3.0, 1.0]);
        assert_eq!(table.spectrum_at(3), Err(Error::MissingTableEntry(3)));
        assert!(id.spectrum_at(0).is_err());
    }

    #[test]
    fn generator_validation() {
        assert!(matches!(
            Generator::parse("1 + x"),
            Err(Error::NonMonotoneGenerator(_))
        ));
        assert!(matches!(
            Generator::parse("1"),
            Err(Error::NonMonotoneGenerator(_))
        ));
        assert!(matches!(
            Generator::parse("0.5 - x"),
            Err(Error::NonMonotoneGenerator(_))
        ));
        assert!(Generator::parse("2 - pow(x, 0.25)").is_ok());
        // a rule that is non-monotone is caught when the spectrum is built
        let bad = SpectrumFamily::rule("bad", |p| (0..p).map(|i| 1.0 + i as f64).collect());
        assert!(matches!(bad.spectrum_at(3), Err(Error::InvalidSpectrum(_))));
        assert!(SpectrumFamily::dirac_mixture(0.5, 1.0, gen("2-x")).is_err());
        assert!(SpectrumFamily::dirac_mixture(1.5, 3.0, gen("2-x")).is_err());
    }

    #[test]
    fn j_set_identity_is_everything() {
        let id = SpectrumFamily::identity(1.0).unwrap();
        let r = j_set(&id, 10, 1000).unwrap();
        assert_eq!(r.members, (1..=10).collect::<Vec<_>>());
        assert_eq!(r.cardinal, 10);
        assert!(r.quantifier_truncated);
    }

    #[test]
    fn j_set_two_block_matches_brute_force() {
        let fam = SpectrumFamily::two_block(2.0, 1.0, 0.5).unwrap();
        let r = j_set(&fam, 20, 2000).unwrap();
        assert_eq!(r.members, brute_j(&fam, 20, 2000));
        assert_eq!(r.cardinal, 10);
        assert_eq!(phi(&fam, 20, 2000).unwrap(), 10);
    }

    #[test]
    fn j_set_linear_generator_matches_brute_force() {
        let fam = SpectrumFamily::generator(gen("2-x"));
        let r = j_set(&fam, 100, 10_000).unwrap();
        let brute = brute_j(&fam, 100, 10_000);
        assert_eq!(r.members, brute);
        // λ_1/λ_i − 1 ≈ (i − 1)/m near the top: the binding constraint is
        // at m = p and gives i − 1 < √p roughly.
        assert!(r.cardinal >= 5 && r.cardinal <= 20, "phi = {}", r.cardinal);
    }

    #[test]
    fn isolated_top_and_bottom() {
        let top = SpectrumFamily::rule("isolated-top", |p| {
            let mut v = vec![1.0; p];
            v[0] = 10.0;
            v
        });
        assert_eq!(phi(&top, 7, 500).unwrap(), 1);
        assert_eq!(j_set(&top, 7, 500).unwrap().members, vec![1]);

        let bottom = SpectrumFamily::rule("isolated-bottom", |p| {
            let mut v = vec![1.0; p];
            v[p - 1] = 0.1;
            v
        });
        // index p belongs at m = p but is above the bottom once m > p
        let r = h_set_xi(&bottom, 7, 0.5, 7).unwrap();
        assert_eq!(r.members, vec![7]);
        assert_eq!(r.cardinal, 1);
    }

    #[test]
    fn h_set_examples() {
        let id = SpectrumFamily::identity(1.0).unwrap();
        assert_eq!(xi(&id, 10, 0.5, 1000).unwrap(), 10);

        // bottom block of the two-block rule starts at ⌈m/2⌉ + 1 > p/2 for
        // m = p only; at m > p it moves, so index i stays in the bottom block
        // for all m ≥ p only if i > ⌈m/2⌉ for every m, which is impossible for i ≤ p
        // once m ≥ 2i. The brute-force oracle is the reference.
        let fam = SpectrumFamily::two_block(2.0, 1.0, 0.5).unwrap();
        let r = h_set_xi(&fam, 20, 0.5, 2000).unwrap();
        assert_eq!(r.members, brute_h(&fam, 20, 0.5, 2000));
        assert_eq!(r.cardinal, 0);
        // with the horizon at p the bottom block is exactly the set
        assert_eq!(xi(&fam, 20, 0.5, 20).unwrap(), 10);
        assert!(h_set_xi(&id, 10, 0.0, 100).is_err());
        assert!(h_set_xi(&id, 10, 0.5, 5).is_err());
    }

    #[test]
    fn generalized_set() {
        let fam = SpectrumFamily::generator(gen("3 - x*x"));
        let top = |m: usize| Some(fam.spectrum_at(m).unwrap().largest());
        assert_eq!(
            generalized_j_set(&fam, top, 30, 600).unwrap(),
            j_set(&fam, 30, 600).unwrap()
        );

        let id = SpectrumFamily::identity(1.0).unwrap();
        assert_eq!(
            generalized_j_set(&id, |_| Some(1.0), 5, 100)
                .unwrap()
                .cardinal,
            5
        );
        assert_eq!(
            generalized_j_set(&id, |_| Some(2.0), 5, 100)
                .unwrap()
                .cardinal,
            0
        );
        assert_eq!(
            generalized_j_set(&id, |m| if m < 50 { Some(1.0) } else { None }, 5, 100),
            Err(Error::UndefinedSequence(50))
        );
    }

    #[test]
    fn horizon_must_cover_p() {
        let id = SpectrumFamily::identity(1.0).unwrap();
        assert_eq!(
            j_set(&id, 10, 9),
            Err(Error::HorizonTooSmall { p: 10, horizon: 9 })
        );
    }

    #[test]
    fn generator_check_examples() {
        let grid = default_check_grid();
        let lin = generator_condition_check(&gen("2-x"), &grid).unwrap();
        assert!(lin.passes && lin.heuristic);

        let sq = generator_condition_check(&gen("2-sqrt(x)"), &grid).unwrap();
        assert!(!sq.passes);
        for s in &sq.slopes {
            assert!((s + 0.5).abs() < 1e-3, "slope {s}");
        }

        let quarter = generator_condition_check(&gen("2-pow(x, 0.25)"), &grid).unwrap();
        assert!(!quarter.passes);
        assert!(quarter.slopes.windows(2).all(|w| w[1].abs() > w[0].abs()));

        assert!(generator_condition_check(&gen("2-x"), &grid[..7]).is_err());
        assert!(generator_condition_check(
            &gen("2-x"),
            &[0.5, 0.6, 0.1, 0.05, 0.01, 0.005, 0.001, 1e-4]
        )
        .is_err());
    }

    #[test]
    fn dirac_count_rounding() {
        for p in 1..=200usize {
            // ⌈3p/10⌉ in exact integer arithmetic
            assert_eq!(dirac_count(0.3, p), (3 * p).div_ceil(10), "p = {p}");
        }
    }
}
