//! Dense complex linear algebra for small Hilbert spaces (dimension ≲ 64).
//!
//! Everything is stored row-major in a flat `Vec<Complex64>`; at these sizes
//! O(d³) products are negligible and sparsity would only add bookkeeping.
//! All operations are pure functions on immutable inputs.

mod eig;
pub mod rand_states;

pub use eig::{eig_hermitian, EigenSystem};

use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64 as C64;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::ONE);
        }
        m
    }

    /// Builds a matrix entry by entry from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
                context: "ComplexMatrix::from_vec",
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Diagonal matrix with real entries.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::ZERO
            }
        })
    }

    /// |a⟩⟨b| in the computational basis.
    pub fn ket_bra(a: usize, b: usize, dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        m.set(a, b, C64::ONE);
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(C64::new(s, 0.0))
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_dist(&self, other: &Self) -> f64 {
        self.sub(other).frobenius_norm()
    }

    /// max |M[i][j] − conj(M[j][i])|.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        r
    }

    /// ‖M†M − 1‖_F.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .frobenius_dist(&Self::identity(self.rows))
    }
}

/// Kronecker product; the left factor is the slow index, so
/// `tensor(a, b)[(i_a·rows_b + i_b, j_a·cols_b + j_b)] = a[i_a][j_a]·b[i_b][j_b]`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        let (ia, ib) = (i / b.rows(), i % b.rows());
        let (ja, jb) = (j / b.cols(), j % b.cols());
        a.get(ia, ja) * b.get(ib, jb)
    })
}

/// Left-fold tensor product of several factors. The fold order is fixed so
/// repeated calls evaluate bit-identically.
pub fn tensor_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    assert!(!factors.is_empty(), "tensor_all of no factors");
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = tensor(&acc, f);
    }
    acc
}

/// Traces out every subsystem except `keep`.
///
/// `dims` lists the subsystem dimensions in tensor order (leftmost factor is
/// the slowest index); their product must equal the matrix dimension.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: usize) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            got: m.rows(),
            context: "partial_trace",
        });
    }
    if keep >= dims.len() {
        return Err(Error::InvalidParameter(format!(
            "partial_trace keep index {keep} out of range for {} subsystems",
            dims.len()
        )));
    }
    let dk = dims[keep];
    // stride of the kept subsystem and the number of environment tuples
    let stride: usize = dims[keep + 1..].iter().product();
    let env: usize = total / dk;
    let mut out = ComplexMatrix::zeros(dk, dk);
    for e in 0..env {
        // embed the environment tuple around the kept slot
        let base = (e / stride) * stride * dk + (e % stride);
        for a in 0..dk {
            let ra = base + a * stride;
            for b in 0..dk {
                let rb = base + b * stride;
                let v = out.get(a, b) + m.get(ra, rb);
                out.set(a, b, v);
            }
        }
    }
    Ok(out)
}

/// |v⟩⟨v| for an arbitrary (not necessarily normalized) vector.
pub fn projector(v: &[C64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
}

/// ⟨u|M|v⟩.
pub fn sandwich(u: &[C64], m: &ComplexMatrix, v: &[C64]) -> C64 {
    assert_eq!(u.len(), m.rows());
    assert_eq!(v.len(), m.cols());
    let mut acc = C64::ZERO;
    for (i, ui) in u.iter().enumerate() {
        let mut row = C64::ZERO;
        for (j, vj) in v.iter().enumerate() {
            row += m.get(i, j) * vj;
        }
        acc += ui.conj() * row;
    }
    acc
}

/// Validated density matrix: Hermitian with unit trace.
///
/// Positivity is not enforced at construction (Kraus sums keep it up to
/// rounding); consumers that need the spectrum clip per [`tol::PSD_CLIP`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidState {
                reason: format!("not square: {}x{}", m.rows(), m.cols()),
            });
        }
        let herm = m.hermiticity_residual();
        if herm > tol::STRUCTURAL {
            return Err(Error::NotHermitian { residual: herm });
        }
        let tr = m.trace();
        if (tr - C64::ONE).norm() > tol::STRUCTURAL {
            return Err(Error::InvalidState {
                reason: format!("trace {} != 1", tr),
            });
        }
        Ok(Self(m))
    }

    /// |v⟩⟨v| from a normalized state vector.
    pub fn from_pure(v: &[C64]) -> Result<Self> {
        let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::InvalidState {
                reason: format!("pure state norm² {} != 1", norm),
            });
        }
        Self::new(projector(v))
    }

    /// Maximally mixed state 1/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// ρ_A ⊗ ρ_B as a density matrix.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Self {
        Self(tensor(a.matrix(), b.matrix()))
    }

    /// Reduced state on subsystem `keep`.
    pub fn reduce(&self, dims: &[usize], keep: usize) -> Result<Self> {
        Self::new(partial_trace(&self.0, dims, keep)?)
    }
}
