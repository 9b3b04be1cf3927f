//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored lowest degree first with the leading coefficient
//! nonzero (the zero polynomial has an empty coefficient list). Each
//! polynomial carries a variable tag; operations that combine two
//! non-constant polynomials require matching tags.
//!
//! Multiplication is schoolbook convolution: degrees in this crate stay small
//! enough that exactness matters and asymptotics do not.

use crate::error::Error;
use crate::exact::Rational;
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Variable tag: `x` (full-line coordinate), `z` (radial variable `x²/2`),
/// or `E` (a one-dimensional Hamiltonian eigenvalue).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Var {
    X,
    Z,
    E,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Z => "z",
            Var::E => "E",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    var: Var,
    /// Lowest degree first; empty iff zero; last entry nonzero otherwise.
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero(var: Var) -> Self {
        Poly {
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Poly::constant(var, Rational::one())
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Poly::from_coeffs(var, vec![c])
    }

    /// The polynomial equal to its own variable.
    pub fn variable(var: Var) -> Self {
        Poly::from_coeffs(var, vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Tag for the result of combining `self` with `other`; constants adopt
    /// the other operand's variable.
    fn join_var(&self, other: &Poly) -> Var {
        if self.var == other.var || other.is_constant() {
            self.var
        } else if self.is_constant() {
            other.var
        } else {
            panic!(
                "mixed polynomial variables: {} vs {}",
                self.var, other.var
            );
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect();
        Poly::from_coeffs(self.var, coeffs)
    }

    /// `self(inner)`, tagged with `inner`'s variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(inner.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(inner.var, c.clone());
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.var);
        }
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Positive rational content: gcd of coefficient numerators over lcm of
    /// denominators. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rational::zero()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }

    /// Integer-primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.clone().recip()),
        }
    }

    /// Euclidean quotient and remainder over the rationals.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let var = self.join_var(divisor);
        let d = divisor.coeffs.len();
        if self.coeffs.len() < d {
            return (Poly::zero(var), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - d + 1];
        let lead = divisor.leading().unwrap();
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d - 1] / lead;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let t = &q * dc;
                    rem[i + j] = &rem[i + j] - &t;
                }
            }
            quot[i] = q;
        }
        rem.truncate(d - 1);
        (Poly::from_coeffs(var, quot), Poly::from_coeffs(var, rem))
    }

    /// Division that must be exact; panics on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Euclidean remainder stripped of its (positive) content, sign kept.
    /// Content stripping between chain steps keeps Sturm and gcd sequences
    /// free of coefficient blowup.
    pub fn rem_primitive(&self, divisor: &Poly) -> Poly {
        let (_, r) = self.div_rem(divisor);
        if r.is_zero() {
            return r;
        }
        let c = r.content();
        r.scale(&c.recip())
    }

    /// Monic greatest common divisor via the primitive Euclidean chain.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem_primitive(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part `self / gcd(self, self')`, primitive-normalized.
    pub fn square_free(&self) -> Poly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).primitive()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let var = self.join_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(var, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let var = self.join_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(var, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let var = self.join_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(var, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            if i == 1 {
                write!(f, "{v}")?;
            } else if i > 1 {
                write!(f, "{v}^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.var, self)
    }
}

/// Wronskian determinant of the given polynomials: the `(i, j)` entry is the
/// `i`-th derivative of `fs[j]`, expanded exactly. Derivatives are taken with
/// respect to the shared variable; mixed tags are rejected.
pub fn wronskian(fs: &[Poly]) -> crate::Result<Poly> {
    if fs.is_empty() {
        return Err(Error::EmptyWronskian);
    }
    let var = fs[0].var();
    for f in fs {
        if !f.is_constant() && !fs[0].is_constant() && f.var() != var {
            return Err(Error::MixedVariables(var, f.var()));
        }
    }
    let k = fs.len();
    let mut rows = Vec::with_capacity(k);
    let mut current: Vec<Poly> = fs.to_vec();
    for _ in 0..k {
        rows.push(current.clone());
        current = current.iter().map(Poly::derivative).collect();
    }
    Ok(determinant(&rows, &(0..k).collect::<Vec<_>>(), var))
}

/// Cofactor expansion along the first remaining row; fine for the small
/// matrices (k ≤ 6) that occur here.
fn determinant(rows: &[Vec<Poly>], cols: &[usize], var: Var) -> Poly {
    let row = rows.len() - cols.len();
    if cols.len() == 1 {
        return rows[row][cols[0]].clone();
    }
    let mut acc = Poly::zero(var);
    for (i, &c) in cols.iter().enumerate() {
        let entry = &rows[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&other| other != c)
            .collect();
        let minor = determinant(rows, &rest, var);
        let term = entry * &minor;
        if i % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{hermite, pseudo_hermite};
    use proptest::prelude::*;

    fn poly_x(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(Var::X, coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn degree_and_normalization() {
        let p = Poly::from_coeffs(Var::X, vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Poly::zero(Var::X).degree().is_none());
        assert_eq!(poly_x(&[0, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn arithmetic_basics() {
        let p = poly_x(&[1, 2]); // 1 + 2x
        let q = poly_x(&[-1, 2]); // -1 + 2x
        assert_eq!(&p * &q, poly_x(&[-1, 0, 4]));
        assert_eq!(&p + &q, poly_x(&[0, 4]));
        assert_eq!(&p - &p, Poly::zero(Var::X));
        assert_eq!(p.eval(&rat(1, 2)), int(2));
    }

    #[test]
    fn division_round_trips() {
        let a = poly_x(&[2, 0, -3, 1, 4]);
        let b = poly_x(&[1, 5, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_common_factor() {
        let common = poly_x(&[1, 1]); // 1 + x
        let a = &common * &poly_x(&[3, 0, 1]);
        let b = &common * &poly_x(&[-2, 1]);
        assert_eq!(a.gcd(&b), common.monic());
    }

    #[test]
    fn square_free_strips_multiplicity() {
        let p = poly_x(&[1, 1]);
        let sq = &(&p * &p) * &poly_x(&[-1, 1]);
        let sf = sq.square_free();
        assert!(sf.div_rem(&p).1.is_zero());
        assert_eq!(sf.degree(), Some(2));
    }

    #[test]
    fn compose_substitutes_exactly() {
        // (1 + z)² at z = x²/2 is 1 + x² + x⁴/4
        let p = Poly::from_coeffs(Var::Z, vec![int(1), int(2), int(1)]);
        let half_x_sq = Poly::from_coeffs(Var::X, vec![int(0), int(0), rat(1, 2)]);
        let q = p.compose(&half_x_sq);
        assert_eq!(
            q,
            Poly::from_coeffs(Var::X, vec![int(1), int(0), int(1), int(0), rat(1, 4)])
        );
    }

    #[test]
    fn wronskian_frozen_examples() {
        // 1×1 Wronskian is the function itself.
        assert_eq!(wronskian(&[pseudo_hermite(2)]).unwrap(), pseudo_hermite(2));
        // W(H~2, H~3) = 32x⁴ + 24, expanded by hand.
        let w = wronskian(&[pseudo_hermite(2), pseudo_hermite(3)]).unwrap();
        assert_eq!(w, poly_x(&[24, 0, 0, 0, 32]));
        // Repeated inputs give zero.
        let p = hermite(3);
        assert!(wronskian(&[p.clone(), p]).unwrap().is_zero());
    }

    #[test]
    fn wronskian_rejects_mixed_variables() {
        let err = wronskian(&[pseudo_hermite(2), Poly::variable(Var::Z)]).unwrap_err();
        assert!(matches!(err, Error::MixedVariables(Var::X, Var::Z)));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-6i64..=6, 1..=4)
            .prop_map(|cs| Poly::from_coeffs(Var::X, cs.into_iter().map(int).collect()))
    }

    proptest! {
        #[test]
        fn wronskian_is_alternating(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let w1 = wronskian(&[a.clone(), b.clone(), c.clone()]).unwrap();
            let w2 = wronskian(&[b, a, c]).unwrap();
            prop_assert_eq!(w1, -&w2);
        }

        #[test]
        fn mul_then_divide_round_trips(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b), a);
        }
    }
}
