//! Fine-grained uncertainty relations and parity-oblivious random access codes
//! for finite-dimensional quantum systems.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: small dense complex linear algebra (states, density matrices,
//!   a cyclic Jacobi eigensolver for Hermitian matrices).
//! - [`bloch`]: generalized Gell-Mann matrices and the density-matrix / Bloch-vector map.
//! - [`bases`]: computational, Fourier, shift/clock and prime-dimension MUB families.
//! - [`fur`]: fine-grained certainty sums, their analytic upper bounds and
//!   maximally certain states.
//! - [`porac`]: the N→1 d-level PORAC game, its quantum strategies, bounds and
//!   parity-obliviousness audits.
//! - [`oracle`]: brute-force and Monte Carlo certification of every analytic bound.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise. Results are identical in both
//! modes: partial results are collected in index order and reduced sequentially.

pub mod bases;
pub mod bloch;
mod error;
pub mod fur;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod porac;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use num_rational::Ratio;
