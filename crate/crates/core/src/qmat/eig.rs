//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! At dimensions ≲ 64 the quadratically convergent Jacobi sweep is accurate
//! and needs no external solver. The 2×2 case is closed form (one rotation).

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64 as C64;

/// Eigenvalues sorted descending with matching orthonormal column vectors.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    /// Column k is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// ‖M − Σ λ_k v_k v_k†‖_F against the original matrix.
    pub fn reconstruction_residual(&self, m: &ComplexMatrix) -> f64 {
        let n = self.values.len();
        let mut rec = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            for i in 0..n {
                let vik = self.vectors.get(i, k) * self.values[k];
                for j in 0..n {
                    let v = rec.get(i, j) + vik * self.vectors.get(j, k).conj();
                    rec.set(i, j, v);
                }
            }
        }
        rec.frobenius_dist(m)
    }

    /// max |⟨v_i, v_j⟩ − δ_ij|.
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.values.len();
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut dot = C64::ZERO;
                for k in 0..n {
                    dot += self.vectors.get(k, i).conj() * self.vectors.get(k, j);
                }
                let target = if i == j { C64::ONE } else { C64::ZERO };
                r = r.max((dot - target).norm());
            }
        }
        r
    }
}

const MAX_SWEEPS: usize = 64;

/// Diagonalizes a Hermitian matrix; eigenvalues come out descending.
///
/// Degenerate eigenvalues keep the first-occurrence order of the sweep
/// output (stable sort), which fixes the achieving basis deterministically.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<EigenSystem> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
            context: "eig_hermitian",
        });
    }
    let herm = m.hermiticity_residual();
    if herm > tol::STRUCTURAL {
        return Err(Error::NotHermitian { residual: herm });
    }
    let n = m.rows();
    if n == 1 {
        return Ok(EigenSystem {
            values: vec![m.get(0, 0).re],
            vectors: ComplexMatrix::identity(1),
        });
    }
    if n == 2 {
        return Ok(eig_2x2(m));
    }

    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);
    let threshold = 1e-15 * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
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
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let values: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    Ok(sorted_descending(values, v))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating a[p][q].
///
/// With a_pq = |b| e^{iφ}, the plane rotation R_pp = c, R_pq = s e^{iφ},
/// R_qp = −s e^{−iφ}, R_qq = c (c, s real) zeroes the target entry when
/// t = s/c solves t² + 2τt − 1 = 0 for τ = (a_qq − a_pp) / (2|b|).
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let phase = apq / abs;

    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sigma = phase * s;

    let n = a.rows();
    // columns p and q of A <- A R
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * c - akq * sigma.conj());
        a.set(k, q, akp * sigma + akq * c);
    }
    // rows p and q of A <- R† A
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, apk * c - aqk * sigma);
        a.set(q, k, apk * sigma.conj() + aqk * c);
    }
    // exact zeros at the annihilated pair; diagonals stay real
    a.set(p, q, C64::ZERO);
    a.set(q, p, C64::ZERO);
    a.set(p, p, C64::new(a.get(p, p).re, 0.0));
    a.set(q, q, C64::new(a.get(q, q).re, 0.0));

    // accumulate eigenvectors: V <- V R
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * c - vkq * sigma.conj());
        v.set(k, q, vkp * sigma + vkq * c);
    }
}

/// Closed form for the 2×2 Hermitian block [[a, b], [b̄, d]].
fn eig_2x2(m: &ComplexMatrix) -> EigenSystem {
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let abs = b.norm();
    if abs == 0.0 {
        let vectors = ComplexMatrix::identity(2);
        return sorted_descending(vec![a, d], vectors);
    }
    let phase = b / abs;
    let tau = (d - a) / (2.0 * abs);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let sigma = phase * s;

    let lam_p = a * c * c - 2.0 * c * s * abs + d * s * s;
    let lam_q = a * s * s + 2.0 * c * s * abs + d * c * c;
    // columns of R are the eigenvectors
    let mut vectors = ComplexMatrix::zeros(2, 2);
    vectors.set(0, 0, C64::new(c, 0.0));
    vectors.set(1, 0, -sigma.conj());
    vectors.set(0, 1, sigma);
    vectors.set(1, 1, C64::new(c, 0.0));
    sorted_descending(vec![lam_p, lam_q], vectors)
}

fn sorted_descending(values: Vec<f64>, vectors: ComplexMatrix) -> EigenSystem {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap());
    let sorted_values: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = ComplexMatrix::from_fn(n, n, |i, k| vectors.get(i, order[k]));
    EigenSystem {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::projector;

    #[test]
    fn diagonal_input_sorts_descending() {
        let m = ComplexMatrix::from_real_diag(&[0.3, 0.7]);
        let eig = eig_hermitian(&m).unwrap();
        assert_eq!(eig.values, vec![0.7, 0.3]);
    }

    #[test]
    fn plus_projector_is_rank_one() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [C64::new(inv, 0.0), C64::new(inv, 0.0)];
        let eig = eig_hermitian(&projector(&plus)).unwrap();
        assert!((eig.values[0] - 1.0).abs() <= 1e-14);
        assert!(eig.values[1].abs() <= 1e-14);
    }

    #[test]
    fn random_hermitian_4x4_reconstructs() {
        // fixed arbitrary Hermitian matrix
        let mut m = ComplexMatrix::zeros(4, 4);
        let entries = [
            (0, 0, 0.9, 0.0),
            (1, 1, -0.2, 0.0),
            (2, 2, 0.4, 0.0),
            (3, 3, 1.3, 0.0),
            (0, 1, 0.21, -0.34),
            (0, 2, -0.11, 0.05),
            (0, 3, 0.02, 0.4),
            (1, 2, 0.5, 0.12),
            (1, 3, -0.33, -0.27),
            (2, 3, 0.06, 0.61),
        ];
        for &(i, j, re, im) in &entries {
            m.set(i, j, C64::new(re, im));
            if i != j {
                m.set(j, i, C64::new(re, -im));
            }
        }
        let eig = eig_hermitian(&m).unwrap();
        assert!(eig.reconstruction_residual(&m) <= tol::SPECTRAL);
        assert!(eig.orthonormality_residual() <= tol::SPECTRAL);
        let sum: f64 = eig.values.iter().sum();
        assert!((sum - m.trace().re).abs() <= tol::SPECTRAL);
        for w in eig.values.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let mut m = ComplexMatrix::identity(3);
        m.set(0, 1, C64::new(0.2, 0.0));
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn two_by_two_matches_trace_and_det() {
        let m = ComplexMatrix::from_vec(
            2,
            2,
            vec![
                C64::new(0.3, 0.0),
                C64::new(0.1, 0.25),
                C64::new(0.1, -0.25),
                C64::new(0.7, 0.0),
            ],
        )
        .unwrap();
        let eig = eig_hermitian(&m).unwrap();
        let tr = eig.values[0] + eig.values[1];
        let det = eig.values[0] * eig.values[1];
        assert!((tr - 1.0).abs() <= 1e-14);
        let expect_det = 0.3 * 0.7 - C64::new(0.1, 0.25).norm_sqr();
        assert!((det - expect_det).abs() <= 1e-14);
        assert!(eig.reconstruction_residual(&m) <= 1e-13);
    }
}
