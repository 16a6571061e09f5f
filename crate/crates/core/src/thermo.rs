//! Thermal states, thermalizing (pin) maps, and thermal operations.
//!
//! Units: k_B = 1, energies in units of the qubit gap ε = 1, temperatures as
//! inverse temperature β (so β = 0 is infinitely hot). β = +∞ is accepted as
//! a sentinel for the zero-temperature limit and maps to the ground-state
//! projector rather than evaluating e^{−∞}.

use crate::error::{Error, Result};
use crate::qmat::{partial_trace, tensor, ComplexMatrix, DensityMatrix};
use crate::tol;
use num_complex::Complex64 as C64;

/// Energy operator with an explicit orthonormal eigenbasis.
///
/// Energies are kept ascending; `basis` column k is the eigenvector of
/// `energies[k]`.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    energies: Vec<f64>,
    basis: ComplexMatrix,
}

impl Hamiltonian {
    /// Two-level H = |1⟩⟨1|: ε₀ = 0, ε₁ = 1.
    pub fn qubit() -> Self {
        Self {
            energies: vec![0.0, 1.0],
            basis: ComplexMatrix::identity(2),
        }
    }

    /// H ∝ 0: every level at zero energy (used for control registers).
    pub fn trivial(dim: usize) -> Self {
        Self {
            energies: vec![0.0; dim],
            basis: ComplexMatrix::identity(dim),
        }
    }

    /// Diagonal Hamiltonian from per-level energies in computational order.
    /// Levels are re-sorted ascending; ties keep computational order.
    pub fn from_diagonal(levels: &[f64]) -> Self {
        let n = levels.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| levels[i].partial_cmp(&levels[j]).unwrap());
        let energies = order.iter().map(|&i| levels[i]).collect();
        let basis = ComplexMatrix::from_fn(
            n,
            n,
            |i, k| {
                if i == order[k] {
                    C64::ONE
                } else {
                    C64::ZERO
                }
            },
        );
        Self { energies, basis }
    }

    /// Non-interacting sum H ⊗ 1 + 1 ⊗ H' on the tensor product space
    /// (this factor is the slow index).
    pub fn sum_with(&self, other: &Hamiltonian) -> Hamiltonian {
        assert!(self.is_computational() && other.is_computational());
        let (da, db) = (self.dim(), other.dim());
        // energies in computational order of the joint index
        let mut levels = Vec::with_capacity(da * db);
        for i in 0..da {
            for j in 0..db {
                levels.push(self.energy_of_level(i) + other.energy_of_level(j));
            }
        }
        Hamiltonian::from_diagonal(&levels)
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Ascending eigenvalues.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Column k is the eigenvector of energies()[k].
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Σ ε_k |ε_k⟩⟨ε_k|.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.basis.get(i, k) * self.energies[k] * self.basis.get(j, k).conj())
                .sum()
        })
    }

    /// Energy of computational level `level` (only valid when the basis is a
    /// permutation of the computational one).
    fn energy_of_level(&self, level: usize) -> f64 {
        for k in 0..self.dim() {
            if self.basis.get(level, k).norm() > 0.5 {
                return self.energies[k];
            }
        }
        unreachable!("permutation basis expected")
    }

    fn is_computational(&self) -> bool {
        let n = self.dim();
        (0..n).all(|k| {
            (0..n).all(|i| {
                let v = self.basis.get(i, k);
                v == C64::ZERO || v == C64::ONE
            })
        })
    }
}

/// Gibbs state τ_β = e^{−βH} / Z_β.
#[derive(Debug, Clone)]
pub struct ThermalState {
    pub beta: f64,
    hamiltonian: Hamiltonian,
    populations: Vec<f64>,
    state: DensityMatrix,
}

impl ThermalState {
    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.state.matrix()
    }

    /// Population of the k-th energy level (ascending order).
    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }
}

/// Canonical partition function Z_β = Σ_k e^{−β ε_k}.
pub fn partition_function(beta: f64, h: &Hamiltonian) -> f64 {
    h.energies().iter().map(|e| (-beta * e).exp()).sum()
}

/// Boltzmann populations over the (ascending) energy levels.
///
/// The spectrum is shifted by the ground energy before exponentiation; the
/// shift cancels in the ratio and keeps β up to a few hundred finite.
fn gibbs_populations(beta: f64, h: &Hamiltonian) -> Result<Vec<f64>> {
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature must be ≥ 0 or +inf, got {beta}"
        )));
    }
    let e0 = h.energies()[0];
    if beta.is_infinite() {
        // zero-temperature limit: uniform over the degenerate ground space
        let ground: Vec<bool> = h
            .energies()
            .iter()
            .map(|&e| (e - e0).abs() <= tol::STRUCTURAL)
            .collect();
        let count = ground.iter().filter(|&&g| g).count() as f64;
        return Ok(ground
            .into_iter()
            .map(|g| if g { 1.0 / count } else { 0.0 })
            .collect());
    }
    let weights: Vec<f64> = h
        .energies()
        .iter()
        .map(|&e| (-beta * (e - e0)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / z).collect())
}

/// Thermal state of `h` at inverse temperature `beta` (β = +∞ allowed).
pub fn thermal_state(beta: f64, h: &Hamiltonian) -> Result<ThermalState> {
    let populations = gibbs_populations(beta, h)?;
    let n = h.dim();
    let basis = h.basis();
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| basis.get(i, k) * populations[k] * basis.get(j, k).conj())
            .sum()
    });
    Ok(ThermalState {
        beta,
        hamiltonian: h.clone(),
        populations,
        state: DensityMatrix::new(m)?,
    })
}

/// A CPTP map as a finite Kraus set with Σ E†E = 1.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
    input_dim: usize,
    output_dim: usize,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| {
            Error::InvalidParameter("a Kraus channel needs at least one operator".into())
        })?;
        let (output_dim, input_dim) = (first.rows(), first.cols());
        for op in &ops {
            if op.rows() != output_dim || op.cols() != input_dim {
                return Err(Error::DimensionMismatch {
                    expected: output_dim,
                    got: op.rows(),
                    context: "KrausChannel operators",
                });
            }
        }
        let ch = Self {
            ops,
            input_dim,
            output_dim,
        };
        let residual = ch.completeness_residual();
        if residual > tol::STRUCTURAL {
            return Err(Error::IncompleteProjectors { residual });
        }
        Ok(ch)
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    /// ‖Σ E†E − 1‖_F.
    pub fn completeness_residual(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.input_dim, self.input_dim);
        for op in &self.ops {
            acc.add_assign(&op.adjoint().mul(op));
        }
        acc.frobenius_dist(&ComplexMatrix::identity(self.input_dim))
    }

    /// Σ E ρ E† on a raw matrix.
    pub fn apply_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.output_dim, self.output_dim);
        for op in &self.ops {
            out.add_assign(&op.mul(rho).mul(&op.adjoint()));
        }
        out
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: rho.dim(),
                context: "KrausChannel::apply",
            });
        }
        DensityMatrix::new(self.apply_matrix(rho.matrix()))
    }
}

/// Pin map Λ_β sending every input to τ_β, as d² Kraus operators
/// E_k = √(pop_{⌊k/d⌋}) |⌊k/d⌋⟩⟨k mod d| in the energy eigenbasis.
pub fn thermalizing_map(beta: f64, h: &Hamiltonian) -> Result<KrausChannel> {
    let populations = gibbs_populations(beta, h)?;
    let d = h.dim();
    let basis = h.basis();
    let mut ops = Vec::with_capacity(d * d);
    for (a, pop) in populations.iter().enumerate() {
        let w = pop.sqrt();
        for b in 0..d {
            // √w |ε_a⟩⟨ε_b|
            let op =
                ComplexMatrix::from_fn(d, d, |i, j| basis.get(i, a) * w * basis.get(j, b).conj());
            ops.push(op);
        }
    }
    KrausChannel::new(ops)
}

/// SWAP on a d ⊗ d space: Σ_ij |ij⟩⟨ji|.
pub fn swap_unitary(dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim * dim, dim * dim, |r, c| {
        let (i, j) = (r / dim, r % dim);
        let (k, l) = (c / dim, c % dim);
        if i == l && j == k {
            C64::ONE
        } else {
            C64::ZERO
        }
    })
}

/// Tr_E[U (ρ ⊗ τ_β) U†] for a unitary system-bath interaction.
pub fn thermal_operation(
    rho: &DensityMatrix,
    u_se: &ComplexMatrix,
    bath: &ThermalState,
) -> Result<DensityMatrix> {
    let ds = rho.dim();
    let de = bath.state().dim();
    if u_se.rows() != ds * de || !u_se.is_square() {
        return Err(Error::DimensionMismatch {
            expected: ds * de,
            got: u_se.rows(),
            context: "thermal_operation unitary",
        });
    }
    let residual = u_se.unitarity_residual();
    if residual > tol::STRUCTURAL {
        return Err(Error::NotUnitary { residual });
    }
    let joint = tensor(rho.matrix(), bath.matrix());
    let evolved = u_se.mul(&joint).mul(&u_se.adjoint());
    DensityMatrix::new(partial_trace(&evolved, &[ds, de], 0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qubit_thermal_state_values() {
        let h = Hamiltonian::qubit();

        let hot = thermal_state(0.0, &h).unwrap();
        assert!((hot.matrix().get(0, 0).re - 0.5).abs() <= tol::STRUCTURAL);
        assert!((hot.matrix().get(1, 1).re - 0.5).abs() <= tol::STRUCTURAL);

        let cold = thermal_state(f64::INFINITY, &h).unwrap();
        assert!((cold.matrix().get(0, 0).re - 1.0).abs() <= tol::STRUCTURAL);
        assert!(cold.matrix().get(1, 1).norm() <= tol::STRUCTURAL);

        let unit = thermal_state(1.0, &h).unwrap();
        let z = 1.0 + (-1.0f64).exp();
        assert!((unit.matrix().get(0, 0).re - 1.0 / z).abs() <= tol::STRUCTURAL);
        assert!((unit.matrix().get(1, 1).re - (-1.0f64).exp() / z).abs() <= tol::STRUCTURAL);
        // frozen decimal values
        assert!((unit.matrix().get(0, 0).re - 0.7310585786300049).abs() <= 1e-15);
        assert!((unit.matrix().get(1, 1).re - 0.2689414213699951).abs() <= 1e-15);
    }

    #[test]
    fn negative_beta_is_rejected() {
        assert!(thermal_state(-0.1, &Hamiltonian::qubit()).is_err());
        assert!(thermal_state(f64::NAN, &Hamiltonian::qubit()).is_err());
    }

    #[test]
    fn populations_never_increase_with_energy() {
        let h = Hamiltonian::from_diagonal(&[0.0, 0.4, 1.0, 2.5]);
        for beta in [0.0, 0.3, 1.0, 7.0, f64::INFINITY] {
            let tau = thermal_state(beta, &h).unwrap();
            for w in tau.populations().windows(2) {
                assert!(w[0] >= w[1] - tol::STRUCTURAL);
            }
        }
    }

    #[test]
    fn thermalizing_map_matches_qubit_kraus_form() {
        let beta = 0.7;
        let h = Hamiltonian::qubit();
        let ch = thermalizing_map(beta, &h).unwrap();
        assert_eq!(ch.ops().len(), 4);
        let p = 1.0 / (1.0 + (-beta).exp());
        let sp = p.sqrt();
        let sq = (1.0 - p).sqrt();
        // E list: √p|0⟩⟨0|, √p|0⟩⟨1|, √(1−p)|1⟩⟨0|, √(1−p)|1⟩⟨1|
        let expect = [
            ComplexMatrix::ket_bra(0, 0, 2).scale(sp),
            ComplexMatrix::ket_bra(0, 1, 2).scale(sp),
            ComplexMatrix::ket_bra(1, 0, 2).scale(sq),
            ComplexMatrix::ket_bra(1, 1, 2).scale(sq),
        ];
        for (got, want) in ch.ops().iter().zip(&expect) {
            assert!(got.max_abs_diff(want) <= tol::STRUCTURAL);
        }
    }

    #[test]
    fn pin_map_examples() {
        let h = Hamiltonian::qubit();

        let infinite = thermalizing_map(0.0, &h).unwrap();
        let excited = DensityMatrix::new(ComplexMatrix::ket_bra(1, 1, 2)).unwrap();
        let out = infinite.apply(&excited).unwrap();
        assert!(
            out.matrix()
                .max_abs_diff(&ComplexMatrix::identity(2).scale(0.5))
                <= tol::STRUCTURAL
        );

        let ch = thermalizing_map(1.0, &h).unwrap();
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let plus = DensityMatrix::from_pure(&[C64::new(inv, 0.0), C64::new(inv, 0.0)]).unwrap();
        let out = ch.apply(&plus).unwrap();
        let tau = thermal_state(1.0, &h).unwrap();
        assert!(out.matrix().max_abs_diff(tau.matrix()) <= tol::STRUCTURAL);
        assert!(out.matrix().get(0, 1).norm() <= tol::STRUCTURAL);

        for beta in [0.0, 0.5, 3.0] {
            let ch = thermalizing_map(beta, &h).unwrap();
            assert!(ch.completeness_residual() <= tol::STRUCTURAL);
        }
    }

    #[test]
    fn pin_property_random_inputs() {
        let h = Hamiltonian::qubit();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let beta: f64 = rng.random_range(0.0..5.0);
            let ch = thermalizing_map(beta, &h).unwrap();
            let tau = thermal_state(beta, &h).unwrap();
            let rho = crate::qmat::rand_states::random_density(&mut rng, 2);
            let out = ch.apply(&rho).unwrap();
            assert!(out.matrix().frobenius_dist(tau.matrix()) <= tol::STRUCTURAL);
        }
    }

    #[test]
    fn pin_map_breaks_correlations() {
        // acting on one half of any bipartite state leaves an exact product
        let h = Hamiltonian::qubit();
        let beta = 0.9;
        let ch = thermalizing_map(beta, &h).unwrap();
        let tau = thermal_state(beta, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let joint = crate::qmat::rand_states::random_density(&mut rng, 4);
            // Λ ⊗ 1 via Kraus operators E ⊗ 1
            let mut out = ComplexMatrix::zeros(4, 4);
            for op in ch.ops() {
                let lifted = tensor(op, &ComplexMatrix::identity(2));
                out.add_assign(&lifted.mul(joint.matrix()).mul(&lifted.adjoint()));
            }
            let other = partial_trace(joint.matrix(), &[2, 2], 1).unwrap();
            let expect = tensor(tau.matrix(), &other);
            assert!(out.frobenius_dist(&expect) <= tol::STRUCTURAL);
        }
    }

    #[test]
    fn qutrit_pin_map_pins_and_completes() {
        let h = Hamiltonian::from_diagonal(&[0.0, 0.5, 1.3]);
        for beta in [0.0, 0.9, 4.0, f64::INFINITY] {
            let ch = thermalizing_map(beta, &h).unwrap();
            assert_eq!(ch.ops().len(), 9);
            assert!(ch.completeness_residual() <= tol::STRUCTURAL);
            let tau = thermal_state(beta, &h).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..10 {
                let rho = crate::qmat::rand_states::random_density(&mut rng, 3);
                let out = ch.apply(&rho).unwrap();
                assert!(out.matrix().frobenius_dist(tau.matrix()) <= tol::STRUCTURAL);
            }
        }
    }

    #[test]
    fn thermal_operation_swap_and_identity() {
        let h = Hamiltonian::qubit();
        let bath = thermal_state(1.3, &h).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rho = crate::qmat::rand_states::random_density(&mut rng, 2);

        let swapped = thermal_operation(&rho, &swap_unitary(2), &bath).unwrap();
        assert!(swapped.matrix().max_abs_diff(bath.matrix()) <= tol::STRUCTURAL);

        let id = ComplexMatrix::identity(4);
        let same = thermal_operation(&rho, &id, &bath).unwrap();
        assert!(same.matrix().max_abs_diff(rho.matrix()) <= tol::STRUCTURAL);

        // SWAP realization agrees with the pin-map Kraus set
        let ch = thermalizing_map(1.3, &h).unwrap();
        let pinned = ch.apply(&rho).unwrap();
        assert!(swapped.matrix().frobenius_dist(pinned.matrix()) <= tol::STRUCTURAL);
    }

    #[test]
    fn thermal_operation_rejects_non_unitary() {
        let h = Hamiltonian::qubit();
        let bath = thermal_state(1.0, &h).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        let not_u = ComplexMatrix::identity(4).scale(0.5);
        assert!(matches!(
            thermal_operation(&rho, &not_u, &bath),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn sum_hamiltonian_orders_energies() {
        let joint = Hamiltonian::qubit().sum_with(&Hamiltonian::trivial(2));
        assert_eq!(joint.energies(), &[0.0, 0.0, 1.0, 1.0]);
        let two_qubits = Hamiltonian::qubit().sum_with(&Hamiltonian::qubit());
        assert_eq!(two_qubits.energies(), &[0.0, 1.0, 1.0, 2.0]);
    }
}
