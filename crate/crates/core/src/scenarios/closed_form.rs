//! Closed-form counterparts of the switched-thermalization pipeline.
//!
//! Everything here is evaluated directly from Boltzmann factors — no Kraus
//! operators, no channel application — so agreement tests against the
//! numerical pipeline are genuine cross-validation. Conventions: qubit
//! target with energies (0, 1), maps at inverse temperature β, locally
//! thermal target at β_in, ground populations p = 1/Z_β and q = 1/Z_{β_in}.

use crate::qmat::ComplexMatrix;
use num_complex::Complex64 as C64;

/// Z_β = 1 + e^{−β} for the unit-gap qubit.
pub fn partition(beta: f64) -> f64 {
    1.0 + (-beta).exp()
}

/// Ground population p = 1/Z_β.
pub fn ground_population(beta: f64) -> f64 {
    1.0 / partition(beta)
}

/// Thermal qubit diag(1, e^{−β}) / Z_β.
fn tau(beta: f64) -> [f64; 2] {
    let z = partition(beta);
    [1.0 / z, (-beta).exp() / z]
}

/// Daemonic ergotropy of the N-SWITCH output for a product input,
/// (N−1)/(N Z_β² Z_{β_in}) · max{0, e^{−2β} − e^{−β_in}}.
pub fn w_d_product(beta_in: f64, beta: f64, n: usize) -> f64 {
    let gain = ((-2.0 * beta).exp() - (-beta_in).exp()).max(0.0);
    let nf = n as f64;
    (nf - 1.0) / (nf * partition(beta).powi(2) * partition(beta_in)) * gain
}

/// Daemonic ergotropy for the classically correlated input (optimal |±⟩
/// correlation basis), max{0, e^{−2β} − e^{−β_in} + 2e^{−(2β+β_in)}} over
/// 2 Z_β² Z_{β_in}.
pub fn w_d_classical(beta_in: f64, beta: f64) -> f64 {
    let gain =
        ((-2.0 * beta).exp() - (-beta_in).exp() + 2.0 * (-(2.0 * beta + beta_in)).exp()).max(0.0);
    gain / (2.0 * partition(beta).powi(2) * partition(beta_in))
}

/// Incoherent daemonic part for the purified input at (α, φ).
pub fn w_d_incoherent_purified(beta_in: f64, beta: f64, alpha: f64, phi: f64) -> f64 {
    let cross = 2.0 * phi.cos() * (alpha * (1.0 - alpha)).sqrt();
    let gain = ((-2.0 * beta).exp() - (-beta_in).exp()
        + (1.0 + cross) * (-(2.0 * beta + beta_in)).exp()
        - (1.0 - cross))
        .max(0.0);
    gain / (2.0 * partition(beta).powi(2) * partition(beta_in))
}

/// Daemonic ergotropy for the purification in the computational control
/// basis (α ∈ {0, 1}): ½ tanh(β/2)(√(1 + ¼ sinh⁻²β cosh⁻²(β_in/2)) − 1).
/// Purely coherent. The β → 0 limit is finite, 1/(8 cosh(β_in/2)).
pub fn w_d_coherent_computational(beta_in: f64, beta: f64) -> f64 {
    let ch = (0.5 * beta_in).cosh();
    if beta == 0.0 {
        return 1.0 / (8.0 * ch);
    }
    let sh = beta.sinh();
    let inner = 1.0 + 0.25 / (sh * sh * ch * ch);
    0.5 * (0.5 * beta).tanh() * (inner.sqrt() - 1.0)
}

/// Best purification value: computational-basis branch vs the |±⟩ branch.
pub fn w_d_purified_optimal(beta_in: f64, beta: f64) -> f64 {
    w_d_coherent_computational(beta_in, beta).max(w_d_classical(beta_in, beta))
}

/// Activation boundary for product inputs: β_in > 2β.
pub fn product_bound_satisfied(beta_in: f64, beta: f64) -> bool {
    beta_in > 2.0 * beta
}

/// Activation boundary for classically correlated inputs:
/// ln(e^{β_in} + 2) > 2β.
pub fn classical_bound_satisfied(beta_in: f64, beta: f64) -> bool {
    (beta_in.exp() + 2.0).ln() > 2.0 * beta
}

/// Map temperature below which classical correlations activate every β_in.
pub fn classical_critical_beta() -> f64 {
    3.0f64.ln() / 2.0
}

/// The 2-SWITCH output for τ_{β_in} ⊗ |+⟩⟨+|, assembled from
/// ½[(τ + τ τ_in τ) ⊗ |+⟩⟨+| + (τ − τ τ_in τ) ⊗ |−⟩⟨−|].
pub fn two_switch_output(beta_in: f64, beta: f64) -> ComplexMatrix {
    n_switch_output(beta_in, beta, 2)
}

/// The N-SWITCH output for τ_{β_in} ⊗ |γ₊⟩⟨γ₊|:
/// (1/N)[(τ + (N−1) τ τ_in τ) ⊗ |γ₊⟩⟨γ₊| + (τ − τ τ_in τ) ⊗ (1 − |γ₊⟩⟨γ₊|)].
pub fn n_switch_output(beta_in: f64, beta: f64, n: usize) -> ComplexMatrix {
    let t = tau(beta);
    let tin = tau(beta_in);
    let nf = n as f64;
    // target-diagonal coefficients of the two control components
    let sym = [
        (t[0] + (nf - 1.0) * t[0] * tin[0] * t[0]) / nf,
        (t[1] + (nf - 1.0) * t[1] * tin[1] * t[1]) / nf,
    ];
    let rest = [
        (t[0] - t[0] * tin[0] * t[0]) / nf,
        (t[1] - t[1] * tin[1] * t[1]) / nf,
    ];
    ComplexMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (tr, cr) = (r / n, r % n);
        let (tc, cc) = (c / n, c % n);
        if tr != tc {
            return C64::ZERO;
        }
        let gamma = 1.0 / nf; // |γ₊⟩⟨γ₊| entries
        let comp = if cr == cc { 1.0 - gamma } else { -gamma };
        C64::new(sym[tr] * gamma + rest[tr] * comp, 0.0)
    })
}

/// Un-normalized post-measurement target states of the N-SWITCH output
/// under the yes/no |γ₊⟩ measurement; `(yes, no)` with
///   yes = (1/(N Z_β)) diag(1 + (N−1)/(Z Z'), e^{−β}(1 + (N−1)e^{−(β+β_in)}/(Z Z')))
///   no  = ((N−1)/(N Z_β)) diag(1 − 1/(Z Z'), e^{−β}(1 − e^{−(β+β_in)}/(Z Z'))).
pub fn n_switch_branches(beta_in: f64, beta: f64, n: usize) -> (ComplexMatrix, ComplexMatrix) {
    let z = partition(beta);
    let zin = partition(beta_in);
    let nf = n as f64;
    let cross = 1.0 / (z * zin);
    let eb = (-beta).exp();
    let ebb = (-(beta + beta_in)).exp();
    let yes = ComplexMatrix::from_real_diag(&[
        (1.0 + (nf - 1.0) * cross) / (nf * z),
        eb * (1.0 + (nf - 1.0) * cross * ebb) / (nf * z),
    ]);
    let no = ComplexMatrix::from_real_diag(&[
        (nf - 1.0) * (1.0 - cross) / (nf * z),
        (nf - 1.0) * eb * (1.0 - cross * ebb) / (nf * z),
    ]);
    (yes, no)
}

/// 2-SWITCH |±⟩ branches; the + branch is the yes branch of N = 2.
pub fn two_switch_branches(beta_in: f64, beta: f64) -> (ComplexMatrix, ComplexMatrix) {
    n_switch_branches(beta_in, beta, 2)
}

/// Orthogonal complement in the qubit convention (b̄, −ā) for ψ = (a, b).
pub fn orthogonal_qubit(psi: &[C64; 2]) -> [C64; 2] {
    [psi[1].conj(), -psi[0].conj()]
}

/// Control basis vector of the purification, ψ = √α|0⟩ + e^{iφ}√(1−α)|1⟩.
pub fn purification_control_vector(alpha: f64, phi: f64) -> [C64; 2] {
    [
        C64::new(alpha.sqrt(), 0.0),
        C64::from_polar((1.0 - alpha).sqrt(), phi),
    ]
}

/// The 2-SWITCH output for the classically correlated input over control
/// basis {ψ, ψ⊥}:
/// (1/(2 Z_in)) Σ_x e^{−β_in x} [(τ + τ|x⟩⟨x|τ) ⊗ χ_x + (τ − τ|x⟩⟨x|τ) ⊗ Z χ_x Z]
/// with χ_0 = |ψ⟩⟨ψ|, χ_1 = |ψ⊥⟩⟨ψ⊥|.
pub fn classical_corr_output(beta_in: f64, beta: f64, psi: &[C64; 2]) -> ComplexMatrix {
    let t = tau(beta);
    let tin = tau(beta_in);
    let perp = orthogonal_qubit(psi);
    let mut out = ComplexMatrix::zeros(4, 4);
    for (x, chi) in [psi, &perp].into_iter().enumerate() {
        let weight = tin[x];
        // control components: χ and its Z-dephased partner
        let proj = |k: usize, l: usize| chi[k] * chi[l].conj();
        for (tr, &tv) in t.iter().enumerate() {
            // target diagonal of τ ± τ|x⟩⟨x|τ
            let plus = tv + if tr == x { tv * tv } else { 0.0 };
            let minus = tv - if tr == x { tv * tv } else { 0.0 };
            for cr in 0..2 {
                for cc in 0..2 {
                    let zsign = if (cr + cc) % 2 == 1 { -1.0 } else { 1.0 };
                    let control = proj(cr, cc) * (plus + zsign * minus);
                    let v = out.get(tr * 2 + cr, tr * 2 + cc) + control * (weight / 2.0);
                    out.set(tr * 2 + cr, tr * 2 + cc, v);
                }
            }
        }
    }
    out
}

/// The 2-SWITCH output for the purified input |T_α(β_in)⟩, entry by entry
/// in the (target, control) computational basis, in terms of the ground
/// populations p (maps) and q (input).
pub fn purified_output(beta_in: f64, beta: f64, alpha: f64, phi: f64) -> ComplexMatrix {
    let p = ground_population(beta);
    let q = ground_population(beta_in);
    let a = alpha;
    let root_a = (a * (1.0 - a)).sqrt();
    let root_q = (q * (1.0 - q)).sqrt();
    let eip = C64::from_polar(1.0, phi);
    let ei2p = C64::from_polar(1.0, 2.0 * phi);

    let mut s = ComplexMatrix::zeros(4, 4);
    s.set(0, 0, C64::new(p * (1.0 - a + q * (2.0 * a - 1.0)), 0.0));
    s.set(0, 1, eip.conj() * (p * p * q * root_a));
    s.set(0, 3, C64::new(-(1.0 - p) * p * a * root_q, 0.0));
    s.set(1, 1, C64::new(p * (a + q * (1.0 - 2.0 * a)), 0.0));
    s.set(1, 2, ei2p * ((1.0 - p) * p * (1.0 - a) * root_q));
    s.set(
        2,
        2,
        C64::new((1.0 - p) * (1.0 - a + q * (2.0 * a - 1.0)), 0.0),
    );
    s.set(
        2,
        3,
        eip.conj() * (-(1.0 - p) * (1.0 - p) * (1.0 - q) * root_a),
    );
    s.set(3, 3, C64::new((1.0 - p) * (a + q * (1.0 - 2.0 * a)), 0.0));
    // fill the conjugate triangle
    for i in 0..4 {
        for j in 0..i {
            s.set(i, j, s.get(j, i).conj());
        }
    }
    s
}

/// Un-normalized |±⟩-measured target branches of [`purified_output`].
pub fn purified_output_branches(
    beta_in: f64,
    beta: f64,
    alpha: f64,
    phi: f64,
) -> (ComplexMatrix, ComplexMatrix) {
    let p = ground_population(beta);
    let q = ground_population(beta_in);
    let a = alpha;
    let root_a = (a * (1.0 - a)).sqrt();
    let root_q = (q * (1.0 - q)).sqrt();
    let ei2p = C64::from_polar(1.0, 2.0 * phi);
    let cos = phi.cos();

    let branch = |sign: f64| {
        let mut m = ComplexMatrix::zeros(2, 2);
        m.set(
            0,
            0,
            C64::new(0.5 * (p + sign * 2.0 * cos * p * p * q * root_a), 0.0),
        );
        let off = (ei2p * (1.0 - a) - a) * (0.5 * sign * p * (1.0 - p) * root_q);
        m.set(0, 1, off);
        m.set(1, 0, off.conj());
        m.set(
            1,
            1,
            C64::new(
                0.5 * ((1.0 - p) - sign * 2.0 * cos * (1.0 - p) * (1.0 - p) * (1.0 - q) * root_a),
                0.0,
            ),
        );
        m
    };
    (branch(1.0), branch(-1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_value_at_reference_point() {
        // β = 0.5, β_in = 2 → ≈ 0.03968
        let w = w_d_product(2.0, 0.5, 2);
        assert!((w - 0.03968).abs() < 5e-6);
    }

    #[test]
    fn product_value_vanishes_at_and_below_bound() {
        assert_eq!(w_d_product(1.0, 0.5, 2), 0.0);
        assert_eq!(w_d_product(0.9, 0.5, 3), 0.0);
        assert!(w_d_product(1.2, 0.5, 2) > 0.0);
    }

    #[test]
    fn n_switch_ratio_doubles_towards_large_n() {
        let (beta_in, beta) = (2.0, 0.5);
        let base = w_d_product(beta_in, beta, 2);
        for n in 3..=6 {
            let ratio = w_d_product(beta_in, beta, n) / base;
            let expect = 2.0 * (1.0 - 1.0 / n as f64);
            assert!((ratio - expect).abs() <= 1e-12);
        }
    }

    #[test]
    fn classical_value_at_reference_point() {
        // β = 0.4 < ln(3)/2, β_in = 0: (3e^{−0.8} − 1)/(2 Z² · 2)
        let w = w_d_classical(0.0, 0.4);
        let z = partition(0.4);
        let expect = (3.0 * (-0.8f64).exp() - 1.0) / (2.0 * z * z * 2.0);
        assert!((w - expect).abs() <= 1e-15);
        assert!((w - 0.03118).abs() < 5e-6);
    }

    #[test]
    fn classical_bound_edge_is_zero() {
        // β = 1 > ln(3)/2; β_in = ln(e² − 2) sits exactly on the boundary
        let beta_in = (1.0f64.exp().powi(2) - 2.0).ln();
        let w = w_d_classical(beta_in, 1.0);
        assert!(w.abs() <= 1e-15);
        assert!(!classical_bound_satisfied(beta_in - 1e-9, 1.0));
        assert!(classical_bound_satisfied(beta_in + 1e-9, 1.0));
    }

    #[test]
    fn classical_reduces_to_product_at_cold_input() {
        for beta in [0.3, 0.8, 1.5] {
            let gap = (w_d_classical(30.0, beta) - w_d_product(30.0, beta, 2)).abs();
            assert!(gap <= 1e-12);
        }
    }

    #[test]
    fn purified_incoherent_interpolates_known_cases() {
        // α = ½, φ = 0 reproduces the classical formula
        for (beta_in, beta) in [(2.5, 0.5), (0.7, 0.2), (4.0, 1.0)] {
            let a = w_d_incoherent_purified(beta_in, beta, 0.5, 0.0);
            let b = w_d_classical(beta_in, beta);
            assert!((a - b).abs() <= 1e-15);
        }
        // α ∈ {0, 1} never has an incoherent part
        for (beta_in, beta) in [(2.5, 0.5), (0.7, 0.2)] {
            assert_eq!(w_d_incoherent_purified(beta_in, beta, 0.0, 0.3), 0.0);
            assert_eq!(w_d_incoherent_purified(beta_in, beta, 1.0, 1.1), 0.0);
        }
    }

    #[test]
    fn coherent_formula_reference_and_limits() {
        // β = 1, β_in = 0 → ≈ 0.02004
        let w = w_d_coherent_computational(0.0, 1.0);
        assert!((w - 0.02004).abs() < 5e-6);
        // finite hot-map limit
        let hot = w_d_coherent_computational(1.0, 0.0);
        assert!((hot - 1.0 / (8.0 * 0.5f64.cosh())).abs() <= 1e-15);
        // extreme inverse temperatures switch the value off
        assert!(w_d_coherent_computational(80.0, 1.0) < 1e-15);
        assert!(w_d_coherent_computational(1.0, 700.0) < 1e-15);
    }

    #[test]
    fn critical_map_temperature_matches_zero_input_boundary() {
        let crit = classical_critical_beta();
        assert!(classical_bound_satisfied(0.0, crit - 1e-12));
        assert!(!classical_bound_satisfied(0.0, crit + 1e-12));
        assert!(w_d_classical(0.0, crit - 0.01) > 0.0);
        assert_eq!(w_d_classical(0.0, crit + 0.01), 0.0);
    }

    #[test]
    fn switch_outputs_have_unit_trace() {
        for n in 2..=5 {
            let m = n_switch_output(1.7, 0.6, n);
            assert!((m.trace().re - 1.0).abs() <= 1e-14);
            assert!(m.hermiticity_residual() <= 1e-14);
        }
        let cc = classical_corr_output(1.3, 0.4, &[C64::ONE, C64::ZERO]);
        assert!((cc.trace().re - 1.0).abs() <= 1e-14);
        let sq = purified_output(1.3, 0.4, 0.25, 0.8);
        assert!((sq.trace().re - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn branch_traces_sum_to_one() {
        for n in [2, 4] {
            let (yes, no) = n_switch_branches(2.2, 0.4, n);
            assert!((yes.trace().re + no.trace().re - 1.0).abs() <= 1e-14);
        }
        let (plus, minus) = purified_output_branches(2.2, 0.4, 0.3, 1.2);
        assert!((plus.trace().re + minus.trace().re - 1.0).abs() <= 1e-14);
    }
}
