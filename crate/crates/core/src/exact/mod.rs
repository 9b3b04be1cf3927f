//! Exact arithmetic: arbitrary-precision rationals, univariate polynomials,
//! rational functions, classical orthogonal polynomial generators, Wronskians,
//! and real-root counting.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share across threads.

pub mod classical;
pub mod poly;
pub mod ratfun;
pub mod sturm;

pub use classical::{hermite, laguerre, pseudo_hermite};
pub use poly::{int, rat, wronskian, Poly, Var};
pub use ratfun::{log_second_derivative, RationalFunction};
pub use sturm::{count_real_roots, Endpoint};

/// Arbitrary-precision rational number; the coefficient field for every
/// symbolic construction in the crate.
pub type Rational = num::BigRational;
