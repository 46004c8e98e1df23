//! Small dense complex matrices and the handful of numerical kernels the
//! geometric and topological layers need: products, adjoints, norms, a
//! deterministic spectral-norm estimate, the unitary exponential of a 2x2
//! Hermitian matrix, and Gauss-Legendre nodes.
//!
//! Matrix sizes here are tiny (2x2 and 4x4 witnesses, truncations up to a
//! few dozen), so everything is written directly against `Vec<Complex64>`
//! with fixed, reproducible iteration orders — no BLAS, no threading, and
//! byte-identical results run to run.

use num_complex::Complex64;

use crate::error::{CoreError, Result};

pub type C64 = Complex64;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Build from nested arrays/slices of rows.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CoreError::DimensionMismatch { expected: c, found: 0 });
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(CMat { rows: r, cols: c, data })
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = CMat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, *e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: C64) -> CMat {
        let data = self.data.iter().map(|a| a * s).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.at(i, t);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_at(i, j, a * other.at(t, j));
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i)).sum()
    }

    /// Trace divided by the dimension (the tracial state of a matrix block).
    pub fn normalized_trace(&self) -> C64 {
        self.trace() / self.rows as f64
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        self.sub(other).max_abs()
    }

    /// Worst-case distance from unitarity: max entry of `A A* - 1` and
    /// `A* A - 1`.
    pub fn unitarity_residual(&self) -> f64 {
        let id = CMat::identity(self.rows);
        let r1 = self.mul(&self.adjoint()).sub(&id).max_abs();
        let r2 = self.adjoint().mul(self).sub(&id).max_abs();
        r1.max(r2)
    }

    /// `diag(A, B)`.
    pub fn block_diag(&self, other: &CMat) -> CMat {
        let n = self.rows + other.rows;
        let c = self.cols + other.cols;
        let mut out = CMat::zeros(n, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    /// Reindex rows and columns by the same permutation (conjugation by the
    /// permutation matrix): `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> CMat {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = CMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(perm[i], perm[j]));
            }
        }
        out
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = C64::new(1.0, 0.0);
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].norm();
            for r in col + 1..n {
                let v = a[r * n + col].norm();
                if v > best {
                    best = v;
                    pivot = r;
                }
            }
            if best == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= f * v;
                }
            }
        }
        det
    }

    /// Largest singular value, i.e. the operator 2-norm, by power iteration
    /// on `A* A` with a fixed starting vector.  The estimate converges in
    /// value even when the top of the spectrum clusters, which is exactly
    /// the regime the truncation norms live in.
    pub fn spectral_norm(&self) -> f64 {
        let n = self.cols;
        if n == 0 || self.rows == 0 {
            return 0.0;
        }
        let mut b = self.adjoint().mul(self);
        let f = b.frobenius_norm();
        if f == 0.0 {
            return 0.0;
        }
        b = b.scale(C64::new(1.0 / f, 0.0));
        // Repeated squaring drives every column into the top eigenspace of
        // the Gram matrix even when singular values cluster far too tightly
        // for plain power iteration to separate them.
        for _ in 0..40 {
            let sq = b.mul(&b);
            let f = sq.frobenius_norm();
            if f == 0.0 {
                break;
            }
            b = sq.scale(C64::new(1.0 / f, 0.0));
        }
        // largest-norm column as the eigenvector candidate; the Rayleigh
        // value with the original matrix is a certified lower bound for the
        // norm, tight to rounding
        let mut best = 0usize;
        let mut best_norm = -1.0f64;
        for j in 0..n {
            let cn: f64 = (0..b.rows).map(|i| b.at(i, j).norm_sqr()).sum();
            if cn > best_norm {
                best_norm = cn;
                best = j;
            }
        }
        let v: Vec<C64> = (0..n).map(|i| b.at(i, best)).collect();
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            return 0.0;
        }
        let mut avn = 0.0f64;
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for (j, vj) in v.iter().enumerate() {
                acc += self.at(i, j) * vj;
            }
            avn += acc.norm_sqr();
        }
        avn.sqrt() / vn
    }
}

/// `exp(2 pi i H)` for a 2x2 Hermitian `H`, through its spectral
/// decomposition (exact up to rounding; no series truncation).
pub fn exp_2pi_i_herm2(h: &CMat) -> CMat {
    assert!(h.rows() == 2 && h.cols() == 2);
    let a = h.at(0, 0).re;
    let d = h.at(1, 1).re;
    let b = h.at(0, 1);
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let phase = |lambda: f64| {
        let t = std::f64::consts::TAU * lambda;
        C64::new(t.cos(), t.sin())
    };
    if r < 1e-300 {
        return CMat::identity(2).scale(phase(mean));
    }
    let lp = mean + r;
    let lm = mean - r;
    // spectral projection onto the lambda_+ eigenspace
    let mut proj = h.clone();
    proj.set(0, 0, C64::new(a - lm, 0.0));
    proj.set(1, 1, C64::new(d - lm, 0.0));
    let proj = proj.scale(C64::new(1.0 / (lp - lm), 0.0));
    let comp = CMat::identity(2).sub(&proj);
    proj.scale(phase(lp)).add(&comp.scale(phase(lm)))
}

/// Gauss-Legendre nodes and weights on [0, 1].
///
/// Newton iteration on the Legendre polynomial with the classical Chebyshev
/// initial guesses; exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre_01(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        // root of P_n on [-1, 1]
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1,1] -> [0,1]
        out.push((0.5 * (x + 1.0), 0.5 * w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
