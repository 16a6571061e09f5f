//! Simulation of coherently controlled thermalization and the work it can
//! unlock.
//!
//! A thermalizing (pin) map sends every input state to the Gibbs state of its
//! bath, so any definite-order composition of such maps outputs a thermal,
//! passive state with no extractable work. Routing the maps through a quantum
//! N-SWITCH instead places their application orders in superposition,
//! entangled with an N-dimensional control register. Measuring the control
//! afterwards post-selects target states that are no longer thermal, and the
//! average work extractable over the measurement outcomes (the daemonic
//! ergotropy) can be strictly positive.
//!
//! The crate is organized in layers:
//!
//! * [`qmat`] — dense complex matrices for small Hilbert spaces: tensor
//!   products, partial traces, Hermitian eigendecomposition.
//! * [`thermo`] — Gibbs states, thermalizing maps as Kraus channels, and
//!   generic thermal operations built from system-bath unitaries.
//! * [`switch`] — the N-SWITCH superchannel over cyclic channel orders and
//!   projective measurements of the control register.
//! * [`ergotropy`] — work extraction: full/incoherent/coherent ergotropy,
//!   local and global variants, and daemonic ergotropy with optimization
//!   over control measurements.
//! * [`scenarios`] — end-to-end experiments (product, classically
//!   correlated, and purified target-control inputs), closed-form
//!   counterparts, region maps, and purification optimization.
//! * [`verify`] — the oracle suite cross-checking the Kraus pipeline
//!   against every closed form.

pub mod error;
pub mod tol;

pub mod qmat;

pub mod ergotropy;
pub mod optim;
pub mod scenarios;
pub mod switch;
pub mod thermo;
pub mod verify;

pub use error::{Error, Result};
pub use qmat::{ComplexMatrix, DensityMatrix, EigenSystem};
pub use thermo::{Hamiltonian, KrausChannel, ThermalState};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
