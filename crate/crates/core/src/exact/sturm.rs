//! Exact real-root counting via Sturm's theorem.

use crate::exact::poly::Poly;
use crate::exact::Rational;
use num::{Signed, Zero};

/// Interval endpoint for root counting.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    NegInf,
    Finite(Rational),
    PosInf,
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// The input is reduced to its square-free part, so multiple roots count
/// once. Panics on the zero polynomial (the count is not defined there).
pub fn count_real_roots(p: &Poly, lo: &Endpoint, hi: &Endpoint) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    if p.degree() == Some(0) {
        return 0;
    }
    let sf = p.square_free();
    let chain = sturm_chain(&sf);
    let v_lo = sign_variations(&chain, lo);
    let v_hi = sign_variations(&chain, hi);
    let mut count = v_lo.saturating_sub(v_hi);
    // Sturm counts roots in (lo, hi]; drop a root sitting exactly at hi.
    if let Endpoint::Finite(b) = hi {
        if sf.eval(b).is_zero() {
            count = count.saturating_sub(1);
        }
    }
    count
}

/// Canonical Sturm chain of a square-free polynomial: `p`, `p'`, then
/// negated remainders, each stripped of content.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.primitive(), p.derivative().primitive()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem_primitive(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

fn sign_variations(chain: &[Poly], at: &Endpoint) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| match at {
            Endpoint::Finite(x) => sign_of(&q.eval(x)),
            Endpoint::PosInf => q.leading().map_or(0, sign_of),
            Endpoint::NegInf => q.leading().map_or(0, |lc| {
                let s = sign_of(lc);
                if q.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }),
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
