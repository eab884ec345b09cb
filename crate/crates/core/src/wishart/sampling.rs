use crate::error::{Error, Result};
use crate::rng::GaussianStream;
use crate::spectra::Spectrum;

use super::linalg::{symmetric_eigenvalues, Matrix};

/// `n × p` data matrix, one observation per row, with `n > p ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix(Matrix);

impl DataMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let (n, p) = (m.rows(), m.cols());
        if p < 1 || n <= p {
            return Err(Error::Dimensions(format!(
                "data matrix needs n > p >= 1, got n = {n}, p = {p}"
            )));
        }
        Ok(DataMatrix(m))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn p(&self) -> usize {
        self.0.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// Rows mapped by `x ↦ Q x`, i.e. the data matrix `X Qᵀ`.
    pub fn rotated(&self, q: &Matrix) -> Result<DataMatrix> {
        Ok(DataMatrix(self.0.matmul(&q.transpose())?))
    }
}

/// Sample covariance `S = (1/n) Σ (X_i − X̄)(X_i − X̄)ᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleCov {
    matrix: Matrix,
    n: usize,
}

impl SampleCov {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.matrix.rows()
    }

    /// Sample eigenvalues `l_1 ≥ … ≥ l_p`.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        symmetric_eigenvalues(&self.matrix)
    }
}

/// Draws `n` rows from `N(0, diag(spectrum))`; entry `(i, j)` is
/// `√λ_j · z_ij`, consuming normals in row-major order.
pub fn sample_gaussian_matrix(
    p: usize,
    n: usize,
    spectrum: &Spectrum,
    stream: &mut GaussianStream,
) -> Result<DataMatrix> {
    if spectrum.p() != p {
        return Err(Error::Dimensions(format!(
            "spectrum has {} values but p = {p}",
            spectrum.p()
        )));
    }
    if n <= p {
        return Err(Error::Dimensions(format!(
            "need n > p, got n = {n}, p = {p}"
        )));
    }
    let scale: Vec<f64> = spectrum.values().iter().map(|v| v.sqrt()).collect();
    let mut data = Vec::with_capacity(n * p);
    for _ in 0..n {
        for s in &scale {
            data.push(s * stream.standard_normal());
        }
    }
    DataMatrix::new(Matrix::from_vec(n, p, data)?)
}

/// Mean-centred sample covariance with `1/n` normalization.
pub fn sample_covariance(x: &DataMatrix) -> Result<SampleCov> {
    let (n, p) = (x.n(), x.p());
    if n < 2 {
        return Err(Error::Dimensions("sample covariance needs n >= 2".into()));
    }
    let m = x.matrix();
    let mut mean = vec![0.0; p];
    for i in 0..n {
        for (acc, v) in mean.iter_mut().zip(m.row(i)) {
            *acc += v;
        }
    }
    for v in &mut mean {
        *v /= n as f64;
    }
    let mut s = Matrix::zeros(p, p);
    let mut centered = vec![0.0; p];
    for i in 0..n {
        for ((c, v), mu) in centered.iter_mut().zip(m.row(i)).zip(&mean) {
            *c = v - mu;
        }
        for a in 0..p {
            let ca = centered[a];
            for b in a..p {
                s[(a, b)] += ca * centered[b];
            }
        }
    }
    let inv_n = 1.0 / n as f64;
    for a in 0..p {
        for b in a..p {
            let v = s[(a, b)] * inv_n;
            s[(a, b)] = v;
            s[(b, a)] = v;
        }
    }
    Ok(SampleCov { matrix: s, n })
}

/// Haar-distributed orthogonal matrix: Gram–Schmidt on a Gaussian matrix
/// with the sign convention `R_ii > 0`.
pub fn random_orthogonal(p: usize, stream: &mut GaussianStream) -> Matrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(p);
    while cols.len() < p {
        let mut v: Vec<f64> = (0..p).map(|_| stream.standard_normal()).collect();
        for _ in 0..2 {
            for c in &cols {
                let d: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= d * ci;
                }
            }
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    let mut q = Matrix::zeros(p, p);
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            q[(i, j)] = *v;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Purpose, StreamId};

    fn stream(seed: u64) -> GaussianStream {
        GaussianStream::new(seed, StreamId::new(Purpose::Auxiliary, 0, 0))
    }

    fn column_variances(x: &DataMatrix) -> Vec<f64> {
        let s = sample_covariance(x).unwrap();
        (0..x.p()).map(|j| s.matrix()[(j, j)]).collect()
    }

    #[test]
    fn deterministic_draws() {
        let spec = Spectrum::new(vec![2.0, 1.0]).unwrap();
        let a = sample_gaussian_matrix(2, 10, &spec, &mut stream(3)).unwrap();
        let b = sample_gaussian_matrix(2, 10, &spec, &mut stream(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn column_variances_follow_spectrum() {
        let unit = Spectrum::new(vec![1.0, 1.0]).unwrap();
        let x = sample_gaussian_matrix(2, 100_000, &unit, &mut stream(11)).unwrap();
        for v in column_variances(&x) {
            assert!((v - 1.0).abs() < 0.03, "variance {v}");
        }
        let skew = Spectrum::new(vec![4.0, 1.0]).unwrap();
        let x = sample_gaussian_matrix(2, 100_000, &skew, &mut stream(12)).unwrap();
        let v = column_variances(&x);
        assert!((v[0] / v[1] - 4.0).abs() < 0.15, "ratio {}", v[0] / v[1]);
    }

    #[test]
    fn sample_covariance_by_hand() {
        let x = DataMatrix::new(Matrix::from_rows(&[vec![0.0], vec![2.0]]).unwrap()).unwrap();
        assert_eq!(sample_covariance(&x).unwrap().matrix()[(0, 0)], 1.0);

        let same = DataMatrix::new(Matrix::from_rows(&vec![vec![1.5, -2.0]; 4]).unwrap()).unwrap();
        let s = sample_covariance(&same).unwrap();
        assert!(s.matrix().as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn translation_invariance() {
        let spec = Spectrum::new(vec![3.0, 2.0, 1.0]).unwrap();
        let x = sample_gaussian_matrix(3, 50, &spec, &mut stream(5)).unwrap();
        let shift = [10.0, -4.0, 0.5];
        let rows: Vec<Vec<f64>> = (0..x.n())
            .map(|i| {
                x.matrix()
                    .row(i)
                    .iter()
                    .zip(&shift)
                    .map(|(a, b)| a + b)
                    .collect()
            })
            .collect();
        let y = DataMatrix::new(Matrix::from_rows(&rows).unwrap()).unwrap();
        let (sx, sy) = (
            sample_covariance(&x).unwrap(),
            sample_covariance(&y).unwrap(),
        );
        for (a, b) in sx.matrix().as_slice().iter().zip(sy.matrix().as_slice()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_checks() {
        let spec = Spectrum::new(vec![1.0, 1.0]).unwrap();
        assert!(sample_gaussian_matrix(2, 2, &spec, &mut stream(1)).is_err());
        assert!(sample_gaussian_matrix(3, 10, &spec, &mut stream(1)).is_err());
        assert!(DataMatrix::new(Matrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn orthogonal_matrix_is_orthogonal() {
        let q = random_orthogonal(6, &mut stream(8));
        let qtq = q.transpose().matmul(&q).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((qtq[(i, j)] - want).abs() < 1e-12);
            }
        }
    }
}
