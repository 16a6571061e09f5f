//! Centralized numerical tolerances.
//!
//! Three tiers, by how the compared quantities are produced:
//!
//! * [`STRUCTURAL`] — identities that hold up to plain rounding: trace
//!   preservation, Kraus completeness, Hermiticity residuals, entry-wise
//!   agreement between a Kraus sum and its closed form.
//! * [`SPECTRAL`] — quantities that pass through an iterative
//!   eigendecomposition: reconstruction residuals, ergotropy sums.
//! * [`OPTIMIZATION`] — convergence targets of the measurement and
//!   purification searches.

/// Trace preservation, completeness relations, closed-form matrix agreement.
pub const STRUCTURAL: f64 = 1e-12;

/// Eigendecomposition residuals and derived energy sums.
pub const SPECTRAL: f64 = 1e-10;

/// Value-level convergence of the grid + simplex optimizers.
pub const OPTIMIZATION: f64 = 1e-9;

/// Density-matrix eigenvalues may dip this far below zero from accumulated
/// Kraus-sum rounding; anything worse is rejected, anything better is
/// clipped to zero and the spectrum renormalized.
pub const PSD_CLIP: f64 = 1e-10;
