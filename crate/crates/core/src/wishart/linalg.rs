//! Dense row-major matrices, a cyclic Jacobi eigenvalue solver and Cholesky
//! factorization. Sized for desk-scale dimensions (p up to a few hundred).

use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::diag(&vec![1.0; n])
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimensions(format!(
                "{} values do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimensions("ragged rows".into()));
        }
        Matrix::from_vec(r, c, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimensions(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest `|a_ij − a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    fn check_symmetric(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimensions(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let scale = self.data.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let asym = self.asymmetry();
        if asym > tol * scale {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Symmetry tolerance (relative to the largest entry) accepted by the solvers.
pub const SYMMETRY_TOL: f64 = 1e-10;
const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-12;

/// Result of a Jacobi diagonalization.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiOutcome {
    /// Eigenvalues sorted descending.
    pub eigenvalues: Vec<f64>,
    pub sweeps: usize,
    /// Off-diagonal Frobenius norm of the final rotated matrix.
    pub off_norm: f64,
    /// Frobenius norm of the input.
    pub norm: f64,
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[(i, j)] * a[(i, j)];
        }
    }
    (2.0 * s).sqrt()
}

/// Cyclic Jacobi with a threshold sweep.
///
/// Stops when the off-diagonal Frobenius norm falls below `1e-12 · ‖A‖_F`;
/// at most 100 sweeps.
pub fn jacobi_eigenvalues(input: &Matrix) -> Result<JacobiOutcome> {
    input.check_symmetric(SYMMETRY_TOL)?;
    let n = input.rows;
    let mut a = input.clone();
    // exact symmetrization so the rotations act on a symmetric matrix
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let norm = a.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= JACOBI_REL_TOL * norm || n < 2 {
            let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
            eigenvalues.sort_by(|x, y| y.total_cmp(x));
            return Ok(JacobiOutcome {
                eigenvalues,
                sweeps,
                off_norm: off,
                norm,
            });
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                method: "cyclic Jacobi",
                iterations: sweeps,
            });
        }
        // early sweeps skip small elements
        let threshold = if sweeps < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for i in 0..n - 1 {
            for j in (i + 1)..n {
                let aij = a[(i, j)];
                if aij == 0.0 {
                    continue;
                }
                let g = 100.0 * aij.abs();
                let (aii, ajj) = (a[(i, i)], a[(j, j)]);
                if sweeps > 3 && aii.abs() + g == aii.abs() && ajj.abs() + g == ajj.abs() {
                    a[(i, j)] = 0.0;
                    a[(j, i)] = 0.0;
                    continue;
                }
                if aij.abs() <= threshold {
                    continue;
                }
                rotate(&mut a, i, j);
            }
        }
        sweeps += 1;
    }
}

/// Applies the plane rotation that annihilates `a[i][j]` (`i < j`).
fn rotate(a: &mut Matrix, i: usize, j: usize) {
    let n = a.rows;
    let aij = a[(i, j)];
    let h = a[(j, j)] - a[(i, i)];
    let t = if (h.abs() + 100.0 * aij.abs()) == h.abs() {
        aij / h
    } else {
        let theta = 0.5 * h / aij;
        let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);
    a[(i, i)] -= t * aij;
    a[(j, j)] += t * aij;
    a[(i, j)] = 0.0;
    a[(j, i)] = 0.0;
    let cols = a.cols;
    for k in 0..n {
        if k == i || k == j {
            continue;
        }
        let g = a.data[i * cols + k];
        let h = a.data[j * cols + k];
        let gi = g - s * (h + g * tau);
        let hj = h + s * (g - h * tau);
        a.data[i * cols + k] = gi;
        a.data[j * cols + k] = hj;
        a.data[k * cols + i] = gi;
        a.data[k * cols + j] = hj;
    }
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub fn symmetric_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    jacobi_eigenvalues(a).map(|o| o.eigenvalues)
}

/// Lower-triangular Cholesky factor `L` with `A = L Lᵀ`.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    a.check_symmetric(SYMMETRY_TOL)?;
    let n = a.rows;
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// `ln det A` from a Cholesky factor.
pub fn ln_det_from_cholesky(l: &Matrix) -> f64 {
    2.0 * (0..l.rows).map(|i| l[(i, i)].ln()).sum::<f64>()
}

/// Solves `L Lᵀ x = b` in place.
pub fn cholesky_solve(l: &Matrix, b: &mut [f64]) {
    let n = l.rows;
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * b[k];
        }
        b[i] = s / l[(i, i)];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * b[k];
        }
        b[i] = s / l[(i, i)];
    }
}
