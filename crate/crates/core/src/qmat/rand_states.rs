//! Seeded random states and operators.
//!
//! Used by the separable-state sampler, the full-basis measurement search,
//! and the property-test suites. Everything is deterministic given the RNG.

use super::{projector, ComplexMatrix, DensityMatrix};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Ginibre construction: ρ = GG† / Tr(GG†).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| gaussian_c64(rng));
    let gg = g.mul(&g.adjoint());
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale(1.0 / tr)).expect("Ginibre state is valid")
}

/// (A + A†)/2 with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(dim, dim, |_, _| gaussian_c64(rng));
    a.add(&a.adjoint()).scale(0.5)
}

/// Haar-ish random unit vector (Gaussian direction, normalized).
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim).map(|_| gaussian_c64(rng)).collect();
        let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

/// Random orthonormal basis by Gram-Schmidt on Gaussian vectors, returned as
/// rank-1 projectors.
pub fn random_projective_basis<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<ComplexMatrix> {
    let mut vectors: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while vectors.len() < dim {
        let mut v = random_pure(rng, dim);
        for u in &vectors {
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            vectors.push(v);
        }
    }
    vectors.iter().map(|v| projector(v)).collect()
}
