//! Binomial confidence intervals and Kolmogorov–Smirnov statistics.

use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// A binomial frequency with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Proportion {
    pub successes: usize,
    pub trials: usize,
    pub freq: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Proportion {
    /// Panics if `trials == 0`; callers reject empty experiments first.
    pub fn new(successes: usize, trials: usize) -> Self {
        assert!(trials > 0, "proportion over zero trials");
        let (ci_low, ci_high) = wilson_interval(successes, trials, Z95);
        Proportion {
            successes,
            trials,
            freq: successes as f64 / trials as f64,
            ci_low,
            ci_high,
        }
    }

    /// Plug-in standard error `√(f (1 − f) / T)`.
    pub fn stderr(&self) -> f64 {
        (self.freq * (1.0 - self.freq) / self.trials as f64).sqrt()
    }
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: usize, n: usize, z: f64) -> (f64, f64) {
    let nf = n as f64;
    let f = k as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (f + z2 / (2.0 * nf)) / denom;
    let half = z * (f * (1.0 - f) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    // the exact endpoints at k = 0 and k = n are 0 and 1
    let lo = if k == 0 {
        0.0
    } else {
        (centre - half).clamp(0.0, f)
    };
    let hi = if k == n {
        1.0
    } else {
        (centre + half).clamp(f, 1.0)
    };
    (lo, hi)
}

/// Fraction of `sorted` that is `≤ x`.
pub fn ecdf(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
}

/// `sup |F_n − F|` for an ascending sample.
pub fn ks_one_sample(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max((i + 1) as f64 / n - f).max(f - i as f64 / n)
    })
}

/// Two-sample statistic `sup |F_a − F_b|`. Both inputs ascending.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic Kolmogorov survival `P(K > λ) = 2 Σ (−1)^{k−1} e^{−2k²λ²}`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Approximate p-value of a two-sample KS statistic (Stephens' correction).
pub fn ks_two_sample_pvalue(d: f64, na: usize, nb: usize) -> f64 {
    let ne = (na * nb) as f64 / (na + nb) as f64;
    let s = ne.sqrt();
    kolmogorov_sf((s + 0.12 + 0.11 / s) * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_estimate() {
        for n in [1usize, 5, 200, 2000] {
            for k in [0, n / 3, n] {
                let p = Proportion::new(k, n);
                assert!(p.ci_low <= p.freq && p.freq <= p.ci_high);
                assert!(p.ci_low >= 0.0 && p.ci_high <= 1.0);
            }
        }
        // textbook value: 0 of 10 → (0, 0.2775)
        let (lo, hi) = wilson_interval(0, 10, Z95);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.277_532).abs() < 1e-5);
    }

    #[test]
    fn ks_against_uniform() {
        let sample: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let d = ks_one_sample(&sample, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.005).abs() < 1e-12);
        assert_eq!(ecdf(&sample, 0.0), 0.0);
        assert_eq!(ecdf(&sample, 1.0), 1.0);
    }

    #[test]
    fn two_sample_statistic() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(ks_two_sample(&a, &a), 0.0);
        let b = [5.0, 6.0, 7.0, 8.0];
        assert_eq!(ks_two_sample(&a, &b), 1.0);
        let c = [1.5, 2.5, 3.5, 4.5];
        assert!((ks_two_sample(&a, &c) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn kolmogorov_tail_values() {
        // P(K > 1.36) ≈ 0.049, P(K > 1.63) ≈ 0.0098
        assert!((kolmogorov_sf(1.358) - 0.05).abs() < 1e-3);
        assert!((kolmogorov_sf(1.628) - 0.01).abs() < 1e-3);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
    }
}
