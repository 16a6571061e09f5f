//! Seeded sampler of separable, discordant, locally thermal joint states.
//!
//! Each sample mixes 2–4 product terms Σ_i w_i · diag(d_i, 1−d_i) ⊗ |c_i⟩⟨c_i|
//! with Haar-random (generically non-orthogonal) control states — a
//! classical-quantum ensemble carrying discord as seen from the control.
//! Local thermality is enforced by construction: the target populations
//! are blended toward the Gibbs ground population so Σ_i w_i d_i = q holds
//! exactly.

use crate::error::Result;
use crate::qmat::rand_states::random_pure;
use crate::qmat::{ComplexMatrix, DensityMatrix};
use crate::thermo::{thermal_state, Hamiltonian};
use rand::Rng;

pub fn random_separable_locally_thermal<R: Rng + ?Sized>(
    rng: &mut R,
    beta_in: f64,
) -> Result<DensityMatrix> {
    let q = thermal_state(beta_in, &Hamiltonian::qubit())?.populations()[0];
    let k = rng.random_range(2..=4usize);

    let mut weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);

    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..1.0)).collect();
    let mean: f64 = raw.iter().zip(&weights).map(|(x, w)| x * w).sum();
    // blend populations toward q; t is capped so every d_i stays in [0, 1]
    let mut t_max = 1.0f64;
    for &x in &raw {
        if x > mean {
            t_max = t_max.min((1.0 - q) / (x - mean));
        } else if x < mean {
            t_max = t_max.min(q / (mean - x));
        }
    }
    let t = t_max.min(1.0);
    let targets: Vec<f64> = raw.iter().map(|&x| q + t * (x - mean)).collect();

    let mut m = ComplexMatrix::zeros(4, 4);
    for i in 0..k {
        let control = random_pure(rng, 2);
        let d = targets[i].clamp(0.0, 1.0);
        for (level, pop) in [(0usize, d), (1usize, 1.0 - d)] {
            for cr in 0..2 {
                for cc in 0..2 {
                    let v = m.get(level * 2 + cr, level * 2 + cc)
                        + control[cr] * control[cc].conj() * (weights[i] * pop);
                    m.set(level * 2 + cr, level * 2 + cc, v);
                }
            }
        }
    }
    DensityMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::partial_trace;
    use crate::tol;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_locally_thermal() {
        let h = Hamiltonian::qubit();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for beta_in in [0.0, 0.7, 2.5] {
            let tau = thermal_state(beta_in, &h).unwrap();
            for _ in 0..25 {
                let joint = random_separable_locally_thermal(&mut rng, beta_in).unwrap();
                let marginal = partial_trace(joint.matrix(), &[2, 2], 0).unwrap();
                assert!(marginal.max_abs_diff(tau.matrix()) <= tol::STRUCTURAL);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let a = random_separable_locally_thermal(&mut ChaCha8Rng::seed_from_u64(5), 1.0).unwrap();
        let b = random_separable_locally_thermal(&mut ChaCha8Rng::seed_from_u64(5), 1.0).unwrap();
        assert_eq!(a.matrix().entries(), b.matrix().entries());
    }
}
