//! Finite-dimensional unitary representations built directly on the lattice:
//! the integrals `I_±` shift `nu_x` by `±(m_k+1)` at fixed level, chains run
//! from a state annihilated by `I_−` to one annihilated by `I_+`, and the
//! per-level multiset of chain lengths reproduces the published
//! classification (eleven cases, at most three length slots each).
//!
//! Annihilation is decided by exact zero tests on squared amplitudes, never
//! by thresholds.

use crate::algebra::{q_x_ladder, q_y_ladder};
use crate::error::Error;
use crate::exact::poly::int;
use crate::exact::Rational;
use crate::model::SystemSpec;
use crate::spectrum::{enumerate_level, min_level, nu_x_domain, LatticeState};
use num::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Quantum numbers `nu_x` annihilated by `I_−` at any level.
pub fn lowering_zero_modes(spec: &SystemSpec) -> BTreeSet<i64> {
    spec.steps().lowering_zero_modes()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raising,
    Lowering,
}

/// Result of a non-annihilated integral application.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeAction {
    pub target: LatticeState,
    #[serde(serialize_with = "crate::ser::rational")]
    pub amplitude_sq: Rational,
}

/// Applies `I_+` or `I_−` to a lattice state. Returns `None` when the action
/// annihilates: for `I_−` exactly on the lowering zero modes, for `I_+` when
/// the y descent would cross its ground state.
///
/// The squared amplitude is the x-ladder factor at the relevant energy times
/// the product of `n_2 = m_k+1` y-ladder factors along the descent/ascent.
pub fn apply_integral(
    spec: &SystemSpec,
    state: LatticeState,
    direction: Direction,
) -> Option<LatticeAction> {
    let n2 = spec.n2() as i64;
    let domain = nu_x_domain(spec);
    let q_x = q_x_ladder(spec);
    let q_y = q_y_ladder(spec);

    let (target, x_factor) = match direction {
        Direction::Raising => {
            if state.nu_y < n2 {
                return None;
            }
            let target = LatticeState::new(state.nu_x + n2, state.nu_y - n2);
            let ex_target = spec.x_energy(target.nu_x);
            (target, q_x.eval(&ex_target))
        }
        Direction::Lowering => {
            let target = LatticeState::new(state.nu_x - n2, state.nu_y + n2);
            if !domain.contains(target.nu_x) {
                return None;
            }
            (target, q_x.eval(&spec.x_energy(state.nu_x)))
        }
    };

    let mut amplitude_sq = x_factor;
    for t in 0..n2 {
        let nu_y = match direction {
            Direction::Raising => state.nu_y - t,
            Direction::Lowering => state.nu_y + t + 1,
        };
        amplitude_sq *= q_y.eval(&spec.y_energy(nu_y));
    }

    if amplitude_sq.is_zero() {
        return None;
    }
    debug_assert!(
        amplitude_sq.is_positive(),
        "negative squared amplitude at {state:?}"
    );
    debug_assert!(domain.contains(target.nu_x));
    Some(LatticeAction {
        target,
        amplitude_sq,
    })
}

/// A maximal `I_+` chain at fixed level: `p + 1` states whose `nu_x` values
/// ascend in steps of `m_k + 1`; the first is annihilated by `I_−`, the last
/// by `I_+`.
#[derive(Clone, Debug, Serialize)]
pub struct UnirrepChain {
    pub n: i64,
    pub nu_x_values: Vec<i64>,
    pub p: i64,
}

impl UnirrepChain {
    /// Head label; doubles as the tag distinguishing repeated
    /// representations at the same level.
    pub fn head(&self) -> i64 {
        self.nu_x_values[0]
    }

    /// `s = p/2`, the spin-like label; sigma runs from `−s` to `s`.
    pub fn spin(&self) -> Rational {
        int(self.p) / int(2)
    }

    /// Number of states, `p + 1`; a chain is never empty.
    pub fn len(&self) -> usize {
        self.nu_x_values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Partitions level `N` into maximal `I_+` chains, heads ascending.
pub fn build_chains(spec: &SystemSpec, n: i64) -> Vec<UnirrepChain> {
    let zero_modes = lowering_zero_modes(spec);
    let level = enumerate_level(spec, n);
    let mut chains = Vec::new();
    for state in &level {
        if !zero_modes.contains(&state.nu_x) {
            continue;
        }
        let mut nu_x_values = vec![state.nu_x];
        let mut cursor = *state;
        while let Some(action) = apply_integral(spec, cursor, Direction::Raising) {
            cursor = action.target;
            nu_x_values.push(cursor.nu_x);
        }
        chains.push(UnirrepChain {
            n,
            p: nu_x_values.len() as i64 - 1,
            nu_x_values,
        });
    }
    debug_assert_eq!(
        chains.iter().map(UnirrepChain::len).sum::<usize>(),
        level.len(),
        "chains must partition level {n}"
    );
    chains
}

/// A level matched against its classification row: the case id, the chain
/// length multiset, the number of unirreps, and the total degeneracy.
#[derive(Clone, Debug, Serialize)]
pub struct LevelClassification {
    pub n: i64,
    pub lambda: i64,
    pub mu: i64,
    pub case_id: u8,
    /// `(p, multiplicity)` pairs, descending in `p`.
    pub p_multiset: Vec<(i64, i64)>,
    pub n_unirreps: i64,
    pub deg: i64,
}

/// Chain-length slots of one classification row: `(p, multiplicity)` in row
/// order, zero multiplicities kept so slot positions stay meaningful.
/// `N = lambda (m_k+1) + mu` fixes the row together with the band of `mu`.
pub fn table3_row(spec: &SystemSpec, n: i64) -> crate::Result<(u8, Vec<(i64, i64)>)> {
    let k = spec.k() as i64;
    let m = spec.steps().as_slice();
    let mk = spec.m_k() as i64;
    let lambda = n.div_euclid(mk + 1);
    let mu = n.rem_euclid(mk + 1);
    let err = |details: String| Error::NoMatchingCase { n, details };

    if n < min_level(spec) {
        return Err(err(format!("below the minimal level {}", min_level(spec))));
    }

    // Band of the mu partition: mu = 0, the top band `1 … m_k − m_{k−1}`,
    // a middle band indexed by j = 2 … k−1, or the bottom band
    // `m_k − m_1 + 1 … m_k`. For k = 1 the bottom band fills `1 … m_k`.
    #[derive(PartialEq)]
    enum Band {
        Zero,
        Top,
        Middle(i64),
        Bottom,
    }
    let band = if mu == 0 {
        Band::Zero
    } else if k == 1 || mu > mk - m[0] as i64 {
        Band::Bottom
    } else if mu <= mk - m[k as usize - 2] as i64 {
        Band::Top
    } else {
        let j = (2..k)
            .find(|&j| {
                let lo = mk - m[j as usize - 1] as i64 + 1;
                let hi = mk - m[j as usize - 2] as i64;
                mu >= lo && mu <= hi
            })
            .ok_or_else(|| err(format!("mu = {mu} fits no band")))?;
        Band::Middle(j)
    };

    let (case_id, slots) = match (lambda, band) {
        (-1, Band::Top) => (1, vec![(0, 1)]),
        (-1, Band::Middle(j)) => (2, vec![(0, k - j + 1)]),
        (-1, Band::Bottom) => (3, vec![(0, k)]),
        (0, Band::Zero) => (4, vec![(0, k)]),
        (0, Band::Top) => (5, vec![(1, 1), (0, mu + k - 2)]),
        (0, Band::Middle(j)) => (6, vec![(1, k - j + 1), (0, mu - k + 2 * j - 2)]),
        (0, Band::Bottom) => (7, vec![(1, k), (0, mu - k)]),
        (l, Band::Zero) if l >= 1 => (8, vec![(l, k), (l - 1, mk - k + 1)]),
        (l, Band::Top) if l >= 1 => (
            9,
            vec![(l + 1, 1), (l, mu + k - 2), (l - 1, mk - mu - k + 2)],
        ),
        (l, Band::Middle(j)) if l >= 1 => (
            10,
            vec![
                (l + 1, k - j + 1),
                (l, mu - k + 2 * j - 2),
                (l - 1, mk - mu - j + 2),
            ],
        ),
        (l, Band::Bottom) if l >= 1 => (11, vec![(l + 1, k), (l, mu - k), (l - 1, mk - mu + 1)]),
        (l, _) => return Err(err(format!("lambda = {l} fits no case"))),
    };

    if slots.iter().any(|&(p, mult)| mult < 0 || (mult > 0 && p < 0)) {
        return Err(err(format!("row {case_id} produced negative entries")));
    }
    Ok((case_id, slots))
}

/// Builds the chains of level `N`, matches their length multiset against the
/// classification row, and returns the verified classification. A mismatch
/// is an error: it signals an inconsistency between the lattice construction
/// and the published table and must not occur for admissible systems.
pub fn classify_level(spec: &SystemSpec, n: i64) -> crate::Result<LevelClassification> {
    let (case_id, slots) = table3_row(spec, n)?;
    let chains = build_chains(spec, n);

    let mut computed: BTreeMap<i64, i64> = BTreeMap::new();
    for chain in &chains {
        *computed.entry(chain.p).or_insert(0) += 1;
    }
    let mut expected: BTreeMap<i64, i64> = BTreeMap::new();
    for &(p, mult) in &slots {
        if mult > 0 {
            *expected.entry(p).or_insert(0) += mult;
        }
    }
    if computed != expected {
        return Err(Error::NoMatchingCase {
            n,
            details: format!(
                "case {case_id}: computed p-multiset {computed:?} differs from row {expected:?}"
            ),
        });
    }

    let mk = spec.m_k() as i64;
    let mut p_multiset: Vec<(i64, i64)> = computed.into_iter().collect();
    p_multiset.reverse();
    Ok(LevelClassification {
        n,
        lambda: n.div_euclid(mk + 1),
        mu: n.rem_euclid(mk + 1),
        case_id,
        n_unirreps: chains.len() as i64,
        deg: chains.iter().map(|c| c.p + 1).sum(),
        p_multiset,
    })
}

/// Distinct `(case, slot)` sequence types that occur with nonzero
/// multiplicity over the level range, after verifying each level.
pub fn sequence_type_census(
    spec: &SystemSpec,
    n_lo: i64,
    n_hi: i64,
) -> crate::Result<BTreeSet<(u8, usize)>> {
    let mut census = BTreeSet::new();
    for n in n_lo..=n_hi {
        classify_level(spec, n)?;
        let (case_id, slots) = table3_row(spec, n)?;
        for (idx, &(_, mult)) in slots.iter().enumerate() {
            if mult > 0 {
                census.insert((case_id, idx));
            }
        }
    }
    Ok(census)
}
