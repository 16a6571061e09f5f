//! The quantum N-SWITCH superchannel and control measurements.
//!
//! Given N channels with Kraus sets {E^{(k)}_i}, the N-SWITCH runs them in a
//! coherent superposition of the N cyclic orders, entangled with an
//! N-dimensional control register. Each joint Kraus operator is
//!
//!   S = Σ_j  P_j(E^{(1)}_{i₁} ⋯ E^{(N)}_{i_N}) ⊗ |j⟩⟨j|,
//!
//! where P_j rotates the product string cyclically, mapping the order
//! (1,…,N) to (j+1,…,N,1,…,j). Only cyclic orders are superposed, so the
//! control dimension equals N; the control register carries at most log₂ N
//! bits of order information (no capacity accounting is done here).
//!
//! The Kraus set is enumerated lazily by a multi-index odometer — Π_k |E^{(k)}|
//! operators of 3N small products each via prefix/suffix factorization — so
//! applying the superchannel streams over operators and keeps memory at
//! O(joint²) regardless of N.

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix};
use crate::thermo::KrausChannel;
use crate::tol;
use num_complex::Complex64 as C64;

/// N channels composed in superposed cyclic orders; a channel on
/// target ⊗ control with control dimension N.
#[derive(Debug, Clone)]
pub struct SwitchedChannel {
    channels: Vec<KrausChannel>,
    target_dim: usize,
}

/// Builds the N-SWITCH over the given channels.
///
/// All channels must act on the same space (square, equal dimensions) and
/// N ≥ 2 — a single channel has no orders to superpose.
pub fn build_n_switch(channels: Vec<KrausChannel>) -> Result<SwitchedChannel> {
    if channels.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "the N-SWITCH needs at least two channels, got {}",
            channels.len()
        )));
    }
    let target_dim = channels[0].input_dim();
    for ch in &channels {
        if ch.input_dim() != target_dim || ch.output_dim() != target_dim {
            return Err(Error::DimensionMismatch {
                expected: target_dim,
                got: ch.output_dim(),
                context: "build_n_switch channel dimensions",
            });
        }
    }
    Ok(SwitchedChannel {
        channels,
        target_dim,
    })
}

impl SwitchedChannel {
    pub fn n(&self) -> usize {
        self.channels.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn control_dim(&self) -> usize {
        self.n()
    }

    pub fn joint_dim(&self) -> usize {
        self.target_dim * self.n()
    }

    /// Number of joint Kraus operators, Π_k |E^{(k)}|.
    pub fn kraus_count(&self) -> usize {
        self.channels.iter().map(|c| c.ops().len()).product()
    }

    /// The cyclic product blocks M_j for one multi-index; the joint Kraus
    /// operator is block diagonal over the control, S = Σ_j M_j ⊗ |j⟩⟨j|.
    fn cyclic_blocks(&self, index: &[usize]) -> Vec<ComplexMatrix> {
        let n = self.n();
        let d = self.target_dim;
        let factor = |k: usize| &self.channels[k].ops()[index[k]];
        // prefix[j] = A_0 ⋯ A_{j-1}, suffix[j] = A_j ⋯ A_{N-1}
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(ComplexMatrix::identity(d));
        for k in 0..n {
            let last = prefix.last().unwrap();
            prefix.push(last.mul(factor(k)));
        }
        let mut suffix = vec![ComplexMatrix::identity(d); n + 1];
        for k in (0..n).rev() {
            suffix[k] = factor(k).mul(&suffix[k + 1]);
        }
        // M_j = A_{j} ⋯ A_{N-1} · A_0 ⋯ A_{j-1} shifted so M_0 is the
        // untouched order: M_j = suffix[j] · prefix[j]
        (0..n).map(|j| suffix[j].mul(&prefix[j])).collect()
    }

    /// Streams the joint Kraus operators in odometer order (last channel
    /// index fastest).
    pub fn kraus_ops(&self) -> impl Iterator<Item = ComplexMatrix> + '_ {
        self.indices()
            .map(|idx| self.assemble(&self.cyclic_blocks(&idx)))
    }

    fn indices(&self) -> MultiIndex {
        MultiIndex::new(self.channels.iter().map(|c| c.ops().len()).collect())
    }

    /// S = Σ_j M_j ⊗ |j⟩⟨j| as a dense joint-space matrix.
    fn assemble(&self, blocks: &[ComplexMatrix]) -> ComplexMatrix {
        let d = self.target_dim;
        let n = self.n();
        let mut s = ComplexMatrix::zeros(d * n, d * n);
        for (j, m) in blocks.iter().enumerate() {
            for t in 0..d {
                for t2 in 0..d {
                    s.set(t * n + j, t2 * n + j, m.get(t, t2));
                }
            }
        }
        s
    }

    /// ‖Σ S†S − 1‖_F over the full Kraus set.
    pub fn completeness_residual(&self) -> f64 {
        let dim = self.joint_dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for s in self.kraus_ops() {
            acc.add_assign(&s.adjoint().mul(&s));
        }
        acc.frobenius_dist(&ComplexMatrix::identity(dim))
    }

    /// Σ S ρ S† for a (possibly correlated) joint target-control state.
    ///
    /// Exploits the control-block-diagonal structure of every S: with ρ
    /// decomposed into control blocks B_{cc'}, the output block is
    /// Σ M_c B_{cc'} M_{c'}†. Accumulation order is fixed by the odometer,
    /// so results are bit-stable.
    pub fn apply(&self, joint: &DensityMatrix) -> Result<DensityMatrix> {
        if joint.dim() != self.joint_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.joint_dim(),
                got: joint.dim(),
                context: "apply_switch joint state",
            });
        }
        let d = self.target_dim;
        let n = self.n();
        let rho = joint.matrix();
        // control blocks: B[c][c'] is the d×d target operator at (c, c')
        let block = |c: usize, c2: usize| {
            ComplexMatrix::from_fn(d, d, |t, t2| rho.get(t * n + c, t2 * n + c2))
        };
        let blocks: Vec<Vec<ComplexMatrix>> = (0..n)
            .map(|c| (0..n).map(|c2| block(c, c2)).collect())
            .collect();

        let mut out_blocks = vec![vec![ComplexMatrix::zeros(d, d); n]; n];
        for idx in self.indices() {
            let m = self.cyclic_blocks(&idx);
            let m_dag: Vec<ComplexMatrix> = m.iter().map(|b| b.adjoint()).collect();
            for c in 0..n {
                for c2 in 0..n {
                    out_blocks[c][c2].add_assign(&m[c].mul(&blocks[c][c2]).mul(&m_dag[c2]));
                }
            }
        }
        let out = ComplexMatrix::from_fn(d * n, d * n, |r, col| {
            let (t, c) = (r / n, r % n);
            let (t2, c2) = (col / n, col % n);
            out_blocks[c][c2].get(t, t2)
        });
        DensityMatrix::new(out)
    }
}

/// Odometer over a mixed-radix multi-index; the last digit moves fastest.
struct MultiIndex {
    radix: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl MultiIndex {
    fn new(radix: Vec<usize>) -> Self {
        let done = radix.contains(&0);
        let current = vec![0; radix.len()];
        Self {
            radix,
            current,
            done,
        }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut pos = self.radix.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.radix[pos] {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}

/// |γ₊⟩ = (1/√N) Σ_i |i⟩, the uniform control superposition.
pub fn uniform_superposition(n: usize) -> Vec<C64> {
    let amp = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    vec![amp; n]
}

/// Yes/no measurement of the control against |γ₊⟩:
/// {|γ₊⟩⟨γ₊|, 1 − |γ₊⟩⟨γ₊|}.
pub fn yes_no_measurement(n: usize) -> Vec<ComplexMatrix> {
    let gamma = crate::qmat::projector(&uniform_superposition(n));
    let complement = ComplexMatrix::identity(n).sub(&gamma);
    vec![gamma, complement]
}

/// Projectively measures the control register of a joint state.
///
/// Returns, per projector Π_a, the outcome probability
/// p_a = Tr[(1⊗Π_a) ρ] and the un-normalized post-measurement target state
/// Tr_C[(1⊗Π_a) ρ (1⊗Π_a)]. The projectors must be Hermitian, idempotent,
/// and sum to the identity on the control.
pub fn measure_control(
    joint: &DensityMatrix,
    target_dim: usize,
    control_dim: usize,
    projectors: &[ComplexMatrix],
) -> Result<Vec<(f64, ComplexMatrix)>> {
    if joint.dim() != target_dim * control_dim {
        return Err(Error::DimensionMismatch {
            expected: target_dim * control_dim,
            got: joint.dim(),
            context: "measure_control joint state",
        });
    }
    let mut sum = ComplexMatrix::zeros(control_dim, control_dim);
    for pi in projectors {
        if pi.rows() != control_dim || !pi.is_square() {
            return Err(Error::DimensionMismatch {
                expected: control_dim,
                got: pi.rows(),
                context: "measure_control projector",
            });
        }
        let herm = pi.hermiticity_residual();
        let idem = pi.mul(pi).frobenius_dist(pi);
        if herm > tol::STRUCTURAL || idem > tol::STRUCTURAL {
            return Err(Error::IncompleteProjectors {
                residual: herm.max(idem),
            });
        }
        sum.add_assign(pi);
    }
    let completeness = sum.frobenius_dist(&ComplexMatrix::identity(control_dim));
    if completeness > tol::STRUCTURAL {
        return Err(Error::IncompleteProjectors {
            residual: completeness,
        });
    }

    let rho = joint.matrix();
    let mut out = Vec::with_capacity(projectors.len());
    for pi in projectors {
        // Tr_C[(1⊗Π) ρ (1⊗Π)][t][t'] = Σ_{kl} ρ[(t,k),(t',l)] Π[l][k]
        let branch = ComplexMatrix::from_fn(target_dim, target_dim, |t, t2| {
            let mut acc = C64::ZERO;
            for k in 0..control_dim {
                for l in 0..control_dim {
                    acc += rho.get(t * control_dim + k, t2 * control_dim + l) * pi.get(l, k);
                }
            }
            acc
        });
        out.push((branch.trace().re, branch));
    }
    let total: f64 = out.iter().map(|(p, _)| p).sum();
    if (total - 1.0).abs() > tol::STRUCTURAL {
        return Err(Error::IncompleteProjectors {
            residual: (total - 1.0).abs(),
        });
    }
    Ok(out)
}
