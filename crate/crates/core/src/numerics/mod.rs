//! Small dense complex linear algebra, a Hermitian eigensolver and seeded
//! state sampling.
//!
//! Everything here works at "desk scale" (dimension at most 64), so matrices
//! are plain row-major `Vec`s and products are the textbook triple loop.

mod eigen;
mod rng;
mod sample;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use rng::SeededRng;
pub use sample::{random_unitary_matrix, sample_state, MixedEnsemble, Strategy};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest dimension supported anywhere in the crate.
pub const MAX_DIM: usize = 64;

/// Tolerance on `max |M†M - I|` for a matrix to count as unitary.
pub const UNITARY_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries
    /// and every entry must be finite.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::BadDimension("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        let m = Self { dim, data };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::Parse("matrix has non-finite entries".into()))
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks(self.dim)
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// `self · v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        self.apply_into(v, &mut out);
        out
    }

    pub fn apply_into(&self, v: &[C64], out: &mut [C64]) {
        debug_assert_eq!(v.len(), self.dim);
        for (o, row) in out.iter_mut().zip(self.rows()) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }

    /// `self† · v`.
    pub fn apply_adjoint(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![ZERO; n];
        for (i, row) in self.rows().enumerate() {
            let vi = v[i];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * vi;
            }
        }
        out
    }

    /// `max_ij |(M†M - I)_ij|`.
    pub fn unitarity_defect(&self) -> f64 {
        let g = self.adjoint().matmul(self);
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((g[(i, j)] - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// `max_ij |M_ij - conj(M_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn determinant(&self) -> C64 {
        // Gaussian elimination with partial pivoting.
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            if a[pivot * n + col].norm() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
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
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Kronecker product; row index `(i1, i2)` maps to `i1 * dim(b) + i2`.
pub fn tensor_product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (da, db) = (a.dim(), b.dim());
    CMatrix::from_fn(da * db, |i, j| a[(i / db, j / db)] * b[(i % db, j % db)])
}

/// Kronecker product of two vectors with the same index convention as
/// [`tensor_product`].
pub fn tensor_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    norm_sqr(v).sqrt()
}

/// `<a, b>` (conjugate-linear in the first slot).
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Scales `v` to unit norm; fails on the zero vector.
pub fn normalize(v: &mut [C64]) -> Result<()> {
    let n = norm(v);
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::BadState(format!("cannot normalize vector of norm {n}")));
    }
    for z in v.iter_mut() {
        *z /= n;
    }
    Ok(())
}

pub fn basis_vector(d: usize, k: usize) -> Vec<C64> {
    let mut v = vec![ZERO; d];
    v[k] = ONE;
    v
}

pub fn real_vector(xs: &[f64]) -> Vec<C64> {
    xs.iter().map(|&x| C64::new(x, 0.0)).collect()
}

/// Checks that `psi` is a finite unit vector of dimension `d` within `tol`.
pub fn check_state(psi: &[C64], d: usize, tol: f64) -> Result<()> {
    if psi.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: psi.len(),
        });
    }
    if psi.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::BadState("non-finite amplitude".into()));
    }
    let n = norm(psi);
    if (n - 1.0).abs() > tol {
        return Err(Error::BadState(format!("norm {n} is not 1")));
    }
    Ok(())
}

/// Cyclic discrete Fourier transform `(F v)_j = d^{-1/2} Σ_m v_m e^{2πi jm/d}`.
pub fn dft(v: &[C64]) -> Vec<C64> {
    let d = v.len();
    let scale = 1.0 / (d as f64).sqrt();
    (0..d)
        .map(|j| {
            v.iter()
                .enumerate()
                .map(|(m, &x)| x * root_of_unity((j * m) % d, d))
                .sum::<C64>()
                * scale
        })
        .collect()
}

/// `e^{2πi k/n}`.
#[inline]
pub fn root_of_unity(k: usize, n: usize) -> C64 {
    let k = k % n;
    // Exact values on the axes keep real Fourier matrices real.
    if (4 * k).is_multiple_of(n) {
        return [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][4 * k / n];
    }
    C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}
