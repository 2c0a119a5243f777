//! Time-optimal control synthesis for Λ-configuration qutrits.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Hermitian eigendecomposition and
//!   matrix exponentials of skew-Hermitian generators.
//! * [`kp`]: the block Cartan split of `su(n)`, the Λ control basis,
//!   tridiagonalization, the scalar-exponential test and the AIII factorization.
//! * [`orbit`]: coordinates on `SU(3)` modulo conjugation by `S(U(2)×U(1))`.
//! * [`integer`]: the integer program whose minimizer fixes the optimal time.
//! * [`synthesis`]: the end-to-end pipeline from a target gate to controls.

pub mod integer;
pub mod json;
pub mod kp;
pub mod linalg;
pub mod orbit;
pub mod sampling;
pub mod synthesis;

pub use num_complex::Complex64;
