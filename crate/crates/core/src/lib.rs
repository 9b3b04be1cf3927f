//! Two-dimensional superintegrable models from k-step rational extensions of
//! the harmonic and radial oscillators.
//!
//! The crate constructs the four families of separable Hamiltonians whose
//! one-dimensional parts are rational (Wronskian-quotient) extensions of the
//! oscillator and the radial oscillator, and derives their physics along two
//! independent routes:
//!
//! - [`spectrum`] enumerates the quantum-number lattice and checks the
//!   closed-form degeneracy law against direct counting;
//! - [`algebra`] builds the polynomial symmetry algebra (ladder polynomials
//!   and the structure polynomial in the integrals `K`, `H`), both from zero
//!   modes and from the published explicit formulas, with a discrepancy
//!   report between the two;
//! - [`unirreps`] constructs finite-dimensional unitary representations
//!   directly as ladder chains on the lattice and classifies every level;
//! - [`daska`] realizes the algebra as a deformed oscillator and recovers the
//!   same representation content from structure-function boundary
//!   constraints;
//! - [`numerics`] verifies the constructed potentials by finite-difference
//!   diagonalization, independently of all of the above.
//!
//! Everything symbolic runs in exact rational arithmetic ([`exact`]); floats
//! appear only inside the numerical oracle.

pub mod algebra;
pub mod daska;
pub mod error;
pub mod exact;
pub mod model;
pub mod numerics;
pub mod ser;
pub mod spectrum;
pub mod unirreps;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
