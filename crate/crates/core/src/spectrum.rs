//! Quantum-number lattice, closed-form energies, and degeneracy counting by
//! direct enumeration against the closed-form law.
//!
//! The two degeneracy routes are deliberately independent: enumeration walks
//! the lattice, the closed form implements the piecewise law; their equality
//! over every admissible system is the central exact check of the crate.

use crate::error::Error;
use crate::exact::poly::int;
use crate::exact::Rational;
use crate::model::SystemSpec;
use serde::Serialize;

/// A separable basis state labeled by `(nu_x, nu_y)`; the level is
/// `N = nu_x + nu_y + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LatticeState {
    pub nu_x: i64,
    pub nu_y: i64,
}

impl LatticeState {
    pub fn new(nu_x: i64, nu_y: i64) -> Self {
        LatticeState { nu_x, nu_y }
    }

    pub fn n(&self) -> i64 {
        self.nu_x + self.nu_y + 1
    }
}

/// The admissible `nu_x` values: the k added-state labels `−m_i − 1` below
/// zero, plus all nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuXDomain {
    /// Added-state labels, ascending (so `−m_k−1` first).
    pub added: Vec<i64>,
}

impl NuXDomain {
    pub fn contains(&self, nu: i64) -> bool {
        nu >= 0 || self.added.binary_search(&nu).is_ok()
    }

    /// All domain values `≤ hi`, ascending.
    pub fn up_to(&self, hi: i64) -> Vec<i64> {
        let mut out: Vec<i64> = self.added.iter().copied().filter(|&v| v <= hi).collect();
        out.extend(0..=hi);
        out
    }
}

/// The `nu_x` domain of a validated system.
pub fn nu_x_domain(spec: &SystemSpec) -> NuXDomain {
    let mut added: Vec<i64> = spec
        .steps()
        .as_slice()
        .iter()
        .map(|&m| -(m as i64) - 1)
        .collect();
    added.sort_unstable();
    NuXDomain { added }
}

/// The lowest admissible level, attained by `(nu_x, nu_y) = (−m_k−1, 0)`.
pub fn min_level(spec: &SystemSpec) -> i64 {
    -(spec.m_k() as i64)
}

/// Level energy `E_N = 2N + gamma`.
pub fn energy(spec: &SystemSpec, n: i64) -> crate::Result<Rational> {
    check_level(spec, n)?;
    Ok(int(2 * n) + spec.gamma())
}

/// All states `(nu_x, nu_y)` of level `N`, ordered by ascending `nu_x`.
pub fn enumerate_level(spec: &SystemSpec, n: i64) -> Vec<LatticeState> {
    let domain = nu_x_domain(spec);
    domain
        .up_to(n - 1)
        .into_iter()
        .map(|nu_x| LatticeState::new(nu_x, n - 1 - nu_x))
        .collect()
}

/// The piecewise degeneracy law:
/// `k−j+1` on the band `−m_j ≤ N ≤ −m_{j−1}−1` (j = 2 … k), `k` on
/// `−m_1 ≤ N ≤ 0`, and `N+k` for positive `N`.
pub fn degeneracy_closed_form(spec: &SystemSpec, n: i64) -> crate::Result<u64> {
    check_level(spec, n)?;
    let k = spec.k() as u64;
    let m = spec.steps().as_slice();
    if n >= 1 {
        return Ok(n as u64 + k);
    }
    if n >= -(m[0] as i64) {
        return Ok(k);
    }
    for j in (2..=spec.k()).rev() {
        let lo = -(m[j - 1] as i64);
        let hi = -(m[j - 2] as i64) - 1;
        if n >= lo && n <= hi {
            return Ok(k - j as u64 + 1);
        }
    }
    unreachable!("level bands tile [-m_k, 0]");
}

fn check_level(spec: &SystemSpec, n: i64) -> crate::Result<()> {
    let min = min_level(spec);
    if n < min {
        return Err(Error::LevelOutOfRange { n, min });
    }
    Ok(())
}

/// One level with both degeneracy routes side by side.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub n: i64,
    #[serde(serialize_with = "crate::ser::rational")]
    pub energy: Rational,
    pub states: Vec<LatticeState>,
    pub deg_enumerated: u64,
    pub deg_closed_form: u64,
}

pub fn level_report(spec: &SystemSpec, n: i64) -> crate::Result<LevelReport> {
    let states = enumerate_level(spec, n);
    Ok(LevelReport {
        n,
        energy: energy(spec, n)?,
        deg_enumerated: states.len() as u64,
        deg_closed_form: degeneracy_closed_form(spec, n)?,
        states,
    })
}
