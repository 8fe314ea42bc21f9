use super::{CMatrix, C64, MAX_DIM, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-10;

/// Spectral decomposition `H = V diag(values) V†`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

/// Cyclic complex Jacobi method for Hermitian matrices.
///
/// Each rotation first strips the phase of the pivot `h_pq` with a diagonal
/// unitary and then applies a real Givens rotation, so `h_pq` is annihilated
/// exactly. Sweeps stop once the off-diagonal Frobenius mass drops below
/// `1e-15` relative to the full norm.
pub fn hermitian_eigen(h: &CMatrix) -> Result<HermitianEigen> {
    let n = h.dim();
    if n == 0 || n > MAX_DIM {
        return Err(Error::BadDimension(format!("eigensolver needs 1 <= d <= {MAX_DIM}, got {n}")));
    }
    let asym = h.hermiticity_defect();
    if asym > HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }

    // Symmetrize so rounding noise in the input does not accumulate.
    let mut a = CMatrix::from_fn(n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);

    let total: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = (total * 1e-15).max(f64::MIN_POSITIVE);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) · [[c, s], [-s, c]] restricted to (p, q).
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    let n = a.dim();
    // A <- A G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A <- G† A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SeededRng;
    use rand_distr::{Distribution, StandardNormal};

    fn random_hermitian(d: usize, rng: &mut SeededRng) -> CMatrix {
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in i..d {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = if i == j { 0.0 } else { StandardNormal.sample(rng) };
                m[(i, j)] = C64::new(re, im);
                m[(j, i)] = C64::new(re, -im);
            }
        }
        m
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = hermitian_eigen(&CMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_spectrum_is_sorted() {
        let m = CMatrix::from_real_rows(&[vec![0.7, 0.0], vec![0.0, 0.3]]).unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.values[0] - 0.3).abs() < 1e-15);
        assert!((e.values[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn pauli_x_spectrum() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let e = hermitian_eigen(&m).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn reconstruction_on_random_hermitian_matrices() {
        let mut rng = SeededRng::new(11, 0);
        for case in 0..100 {
            let d = 1 + case % 16;
            let h = random_hermitian(d, &mut rng);
            let e = hermitian_eigen(&h).unwrap();
            assert!(e.vectors.is_unitary(1e-10));
            let lambda = CMatrix::from_fn(d, |i, j| if i == j { C64::new(e.values[i], 0.0) } else { ZERO });
            let rebuilt = e.vectors.matmul(&lambda).matmul(&e.vectors.adjoint());
            assert!(rebuilt.max_abs_diff(&h) <= 1e-8, "case {case}");
            for k in 0..d {
                let col = e.vectors.column(k);
                let hv = h.apply(&col);
                for (x, y) in hv.iter().zip(&col) {
                    assert!((x - y * e.values[k]).norm() <= 1e-9);
                }
            }
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
