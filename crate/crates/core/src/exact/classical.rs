//! Classical orthogonal polynomial generators.

use crate::exact::poly::{int, Poly, Var};
use crate::exact::Rational;
use num::One;

/// Physicists' Hermite polynomial `H_n` via the three-term recurrence
/// `H_{n+1} = 2x H_n − 2n H_{n−1}`, `H_0 = 1`, `H_1 = 2x`.
pub fn hermite(n: u32) -> Poly {
    let two_x = Poly::from_coeffs(Var::X, vec![int(0), int(2)]);
    let mut prev = Poly::one(Var::X);
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for i in 1..n {
        let next = &(&two_x * &cur) - &prev.scale(&int(2 * i as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Pseudo-Hermite polynomial: `H_n` continued to imaginary argument so that
/// every coefficient becomes nonnegative. Satisfies
/// `P_{n+1} = 2x P_n + 2n P_{n−1}` with the same base cases as `H_n`.
pub fn pseudo_hermite(n: u32) -> Poly {
    let two_x = Poly::from_coeffs(Var::X, vec![int(0), int(2)]);
    let mut prev = Poly::one(Var::X);
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for i in 1..n {
        let next = &(&two_x * &cur) + &prev.scale(&int(2 * i as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre polynomial `L_n^{(a)}(z)` with rational parameter,
/// via `(n+1) L_{n+1} = (2n+1+a−z) L_n − (n+a) L_{n−1}`, `L_0 = 1`,
/// `L_1 = 1 + a − z`.
pub fn laguerre(n: u32, a: &Rational) -> Poly {
    let mut prev = Poly::one(Var::Z);
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::from_coeffs(Var::Z, vec![Rational::one() + a, -int(1)]);
    for i in 1..n {
        let i_r = int(i as i64);
        let lin = Poly::from_coeffs(Var::Z, vec![&i_r + &i_r + int(1) + a, -int(1)]);
        let next = (&(&lin * &cur) - &prev.scale(&(&i_r + a))).scale(&(i_r + int(1)).recip());
        prev = cur;
        cur = next;
    }
    cur
}
