//! Finite-dimensional PT-symmetric representations of the non-standard quantum
//! algebra `U_z(sl(2,R))`.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: dense complex matrices, matrix exponential, a Hessenberg/QR
//!   eigensolver, Hermitian square roots, companion-matrix polynomial roots.
//! * [`reps`]: generator matrices `J0`, `J+`, `J-` (and their undeformed
//!   `sl(2,R)` limit), the PT operator, the deformed Casimir and checks of the
//!   commutation relations and Hopf structure.
//! * [`spectra`]: the Hamiltonian families built from the generators, their
//!   closed-form spectra, PT phase classification, exceptional points and
//!   metric operators.
//! * [`qdot`]: the hybrid double-quantum-dot effective model.
//! * [`sweep`]: grid evaluation (parallel or sequential), output records and
//!   the task runner used by the `uzsl2` binary.

pub mod check;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod qdot;
pub mod reps;
pub mod spectra;
pub mod sweep;
pub mod tolerances;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use tolerances::Tolerances;
