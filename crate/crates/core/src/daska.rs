//! Deformed-oscillator route to the representation content: realize the
//! symmetry algebra with `b† = I_+`, `b = I_−`, `N = K − u`, so the
//! structure function is `Φ(E, u, x) = F(K, H)` at `K = x + u`, `H = E`.
//! A `(p+1)`-dimensional representation needs `Φ` to vanish at `x = 0` and
//! `x = p + 1` and stay positive at the integers between.
//!
//! Each solution family pairs one x-side factor (vanishing at `x = 0`, the
//! chain head killed by the x lowering ladder) with one y-side factor
//! (vanishing at `x = p + 1`, the top killed by the y descent); the two
//! boundary equations are solved exactly for `(E, u)` as affine functions
//! of `p`. Same-side pairs leave `E` undetermined and are recorded as
//! degenerate; reversed orientations contradict the chain-boundary roles
//! and are counted, not solved.

use crate::algebra::{structure_polynomial, LinearFactor, StructurePolynomial};
use crate::error::Error;
use crate::exact::poly::{int, rat};
use crate::exact::Rational;
use crate::model::{Family, SystemSpec};
use crate::spectrum::energy;
use num::{Signed, Zero};
use serde::Serialize;
use std::fmt;

/// An affine function of the representation parameter `p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AffineP {
    #[serde(serialize_with = "crate::ser::rational")]
    pub slope: Rational,
    #[serde(serialize_with = "crate::ser::rational")]
    pub constant: Rational,
}

impl AffineP {
    pub fn new(slope: Rational, constant: Rational) -> Self {
        AffineP { slope, constant }
    }

    pub fn eval(&self, p: i64) -> Rational {
        &self.slope * int(p) + &self.constant
    }
}

impl fmt::Display for AffineP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::ser::rational_string as rs;
        use num::One;
        if self.slope.is_zero() {
            return write!(f, "{}", rs(&self.constant));
        }
        let slope = if self.slope.denom().is_one() {
            format!("{}p", rs(&self.slope))
        } else {
            format!("({})p", rs(&self.slope))
        };
        if self.constant.is_zero() {
            write!(f, "{slope}")
        } else if self.constant.is_negative() {
            write!(f, "{slope} - {}", rs(&self.constant.abs()))
        } else {
            write!(f, "{slope} + {}", rs(&self.constant))
        }
    }
}

/// Positivity range of one solution family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "p_max")]
pub enum Validity {
    /// `Φ > 0` at `x = 1 … p` for every `p`.
    AllP,
    /// Positivity first fails beyond `p_max`; the family is truncated.
    UpTo(i64),
}

/// One solution family `(E(p), u(p))` with its boundary factors.
#[derive(Clone, Debug, Serialize)]
pub struct UnirrepSolution {
    pub energy: AffineP,
    pub u: AffineP,
    /// Factor vanishing at `x = 0`.
    pub source_a: LinearFactor,
    /// Factor vanishing at `x = p + 1`.
    pub source_b: LinearFactor,
    pub validity: Validity,
}

/// A same-side factor pair: the boundary equations are linearly dependent,
/// so `E` stays undetermined. Recorded, never silently dropped.
#[derive(Clone, Debug, Serialize)]
pub struct DegeneratePair {
    pub a: LinearFactor,
    pub b: LinearFactor,
}

/// Full output of the boundary-constraint solver.
#[derive(Clone, Debug, Serialize)]
pub struct DaskaSolution {
    pub structure: StructurePolynomial,
    pub families: Vec<UnirrepSolution>,
    pub degenerate_pairs: Vec<DegeneratePair>,
    /// Ordered pairs skipped because the x=0 factor was on the y side.
    pub orientation_excluded: usize,
    /// Ordered pairs dropped as exact duplicates of an earlier `(E, u)`.
    pub deduplicated: usize,
}

impl DaskaSolution {
    /// `Φ(E(p), u(p), x)` for one family, exactly.
    pub fn phi(&self, family: &UnirrepSolution, p: i64, x: &Rational) -> Rational {
        let e = family.energy.eval(p);
        let u = family.u.eval(p);
        let k = x + &u;
        self.structure.eval(&k, &e)
    }

    /// Exact positivity of `Φ` at `x = 1 … p` (vacuous for `p = 0`).
    pub fn positive_through(&self, family: &UnirrepSolution, p: i64) -> bool {
        (1..=p).all(|x| self.phi(family, p, &int(x)).is_positive())
    }
}

/// Solves the two boundary constraints for every factor pair of the
/// zero-mode structure polynomial, deduplicates, and attaches the
/// positivity classification.
pub fn solve_families(spec: &SystemSpec) -> DaskaSolution {
    let structure = structure_polynomial(spec);
    let mut families: Vec<UnirrepSolution> = Vec::new();
    let mut degenerate_pairs = Vec::new();
    let mut orientation_excluded = 0;
    let mut deduplicated = 0;

    for a in structure.factors.iter() {
        for b in structure.factors.iter() {
            let det = &a.coef_h * &b.coef_k - &b.coef_h * &a.coef_k;
            if det.is_zero() {
                degenerate_pairs.push(DegeneratePair {
                    a: a.clone(),
                    b: b.clone(),
                });
                continue;
            }
            if !a.is_x_side() {
                orientation_excluded += 1;
                continue;
            }

            // a:  c_h·E + c_k·u = −c_a                 (factor a at x = 0)
            // b:  c_h'·E + c_k'·u = −c_b − c_k'(p+1)   (factor b at x = p+1)
            let rhs_a = -&a.constant;
            let rhs_b_const = -&b.constant - &b.coef_k;
            let rhs_b_slope = -&b.coef_k;
            let energy = AffineP::new(
                (&rhs_b_slope * -&a.coef_k) / &det,
                (&rhs_a * &b.coef_k - &a.coef_k * &rhs_b_const) / &det,
            );
            let u = AffineP::new(
                (&a.coef_h * &rhs_b_slope) / &det,
                (&a.coef_h * &rhs_b_const - &b.coef_h * &rhs_a) / &det,
            );

            if families.iter().any(|f| f.energy == energy && f.u == u) {
                deduplicated += 1;
                continue;
            }

            let validity = classify_positivity(&structure, &energy, &u);
            families.push(UnirrepSolution {
                energy,
                u,
                source_a: a.clone(),
                source_b: b.clone(),
                validity,
            });
        }
    }

    DaskaSolution {
        structure,
        families,
        degenerate_pairs,
        orientation_excluded,
        deduplicated,
    }
}

/// Exact positivity classification of `Φ(E(p), u(p), ·)` over all `p`.
///
/// Substituting the boundary solution turns every x-side factor into
/// `λ·n + c` (no `p` dependence) and every y-side factor into `λ·w + g`
/// with `w = p − n ≥ 0`. Both parts are increasing in their variable, so
/// sign patterns stabilize beyond the largest root; scanning the finite box
/// below that bound plus one tail representative per axis decides
/// positivity for every `(n, p)` with `1 ≤ n ≤ p`.
fn classify_positivity(
    structure: &StructurePolynomial,
    energy: &AffineP,
    u: &AffineP,
) -> Validity {
    struct Line {
        coef: Rational,
        constant: Rational,
        on_x: bool,
    }
    let mut lines = Vec::new();
    for f in &structure.factors {
        let p_slope = &f.coef_h * &energy.slope + &f.coef_k * &u.slope;
        let constant = &f.coef_h * &energy.constant + &f.coef_k * &u.constant + &f.constant;
        if f.is_x_side() {
            // The x = 0 boundary identity kills the p dependence here.
            debug_assert!(p_slope.is_zero());
            lines.push(Line {
                coef: f.coef_k.clone(),
                constant,
                on_x: true,
            });
        } else {
            // Value at x = n, p = n + w is p_slope·w + constant, because
            // the n coefficient c_k + p_slope vanishes.
            debug_assert_eq!(p_slope, -&f.coef_k);
            lines.push(Line {
                coef: p_slope,
                constant,
                on_x: false,
            });
        }
    }

    let bound = |on_x: bool| -> i64 {
        lines
            .iter()
            .filter(|l| l.on_x == on_x)
            .map(|l| {
                let root = -&l.constant / &l.coef;
                i64::try_from(root.ceil().to_integer()).unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
            .max(0)
    };
    let n_star = bound(true) + 1;
    let w_star = bound(false) + 1;

    // Prefactors are positive throughout, so Φ's sign is the product of the
    // line signs.
    let sign_at = |n: i64, w: i64| -> i8 {
        let mut negative = false;
        for l in &lines {
            let v = &l.coef * int(if l.on_x { n } else { w }) + &l.constant;
            if v.is_zero() {
                return 0;
            }
            if v.is_negative() {
                negative = !negative;
            }
        }
        if negative {
            -1
        } else {
            1
        }
    };

    let mut first_violation: Option<i64> = None;
    for n in 1..=n_star + 1 {
        for w in 0..=w_star + 1 {
            if sign_at(n, w) <= 0 {
                let p = n + w;
                first_violation = Some(first_violation.map_or(p, |q| q.min(p)));
            }
        }
    }
    match first_violation {
        None => Validity::AllP,
        Some(p) => Validity::UpTo(p - 1),
    }
}

/// The closed-form `u(E)` relations of the one-step worked example
/// (family a): `2(m+1) u_1 = −E/2 − 2m − 1` for the chains headed by the
/// added state, `2(m+1) u_2 = −E/2 + 2l + 1` for those headed at
/// `nu_x = l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintedFamily {
    One,
    Two { l: u32 },
}

/// `u` as an affine function of `E`, i.e. `u(E) = slope·E + constant`.
pub fn u_parameters(spec: &SystemSpec, family: PrintedFamily) -> crate::Result<AffineP> {
    if spec.family() != Family::A || spec.k() != 1 {
        return Err(Error::InvalidConfig(
            "printed u-parameter relations cover the one-step family a example".into(),
        ));
    }
    let m = spec.m_k() as i64;
    let denom = int(2 * (m + 1));
    Ok(match family {
        PrintedFamily::One => AffineP::new(rat(-1, 2) / &denom, int(-2 * m - 1) / &denom),
        PrintedFamily::Two { l } => {
            AffineP::new(rat(-1, 2) / &denom, int(2 * l as i64 + 1) / &denom)
        }
    })
}

/// One `(family, p)` contribution to a level's degeneracy.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub family_index: usize,
    pub p: i64,
    pub dimension: i64,
    #[serde(serialize_with = "crate::ser::rational")]
    pub source_a_constant: Rational,
    #[serde(serialize_with = "crate::ser::rational")]
    pub source_b_constant: Rational,
}

/// A level's degeneracy recomposed as a union of solution families.
#[derive(Clone, Debug, Serialize)]
pub struct UnionDegeneracy {
    pub n: i64,
    #[serde(serialize_with = "crate::ser::rational")]
    pub energy: Rational,
    pub total: i64,
    pub witnesses: Vec<Witness>,
}

/// Enumerates every `(family, p)` with `E_family(p)` equal to the level
/// energy and positivity satisfied; the dimensions `p + 1` sum to the
/// degeneracy contributed by the deformed-oscillator route.
pub fn union_degeneracy(
    spec: &SystemSpec,
    solution: &DaskaSolution,
    n: i64,
) -> crate::Result<UnionDegeneracy> {
    let e_n = energy(spec, n)?;
    let mut witnesses = Vec::new();
    for (idx, family) in solution.families.iter().enumerate() {
        debug_assert!(family.energy.slope.is_positive());
        let p_rat = (&e_n - &family.energy.constant) / &family.energy.slope;
        if !p_rat.is_integer() || p_rat.is_negative() {
            continue;
        }
        let p = i64::try_from(p_rat.to_integer()).expect("p fits in i64");
        if !solution.positive_through(family, p) {
            continue;
        }
        witnesses.push(Witness {
            family_index: idx,
            p,
            dimension: p + 1,
            source_a_constant: family.source_a.constant.clone(),
            source_b_constant: family.source_b.constant.clone(),
        });
    }
    Ok(UnionDegeneracy {
        n,
        energy: e_n,
        total: witnesses.iter().map(|w| w.dimension).sum(),
        witnesses,
    })
}

/// Root positions of one printed structure function against the solver's.
#[derive(Clone, Debug, Serialize)]
pub struct PhiComparison {
    pub family_id: u8,
    pub l: Option<u32>,
    pub kappa: u32,
    pub matched_roots: usize,
    pub printed_only: Vec<AffineP>,
    pub solver_only: Vec<AffineP>,
    pub printed_vanishes_at_zero: bool,
    pub printed_vanishes_at_p_plus_one: bool,
}

impl PhiComparison {
    pub fn roots_agree(&self) -> bool {
        self.printed_only.is_empty() && self.solver_only.is_empty()
    }
}

/// Root-set comparison of the printed one-step structure functions against
/// the solver's, per parameter choice.
#[derive(Clone, Debug, Serialize)]
pub struct PrintedPhiReport {
    pub m: u32,
    pub entries: Vec<PhiComparison>,
}

/// Rebuilds the printed `Φ_1`, `Φ_2` of the one-step worked example as root
/// sets (affine in `p`), matches them against the solver's structure
/// functions for the corresponding families, and flags boundary failures.
pub fn reproduce_printed_phi(m: u32) -> crate::Result<PrintedPhiReport> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidConfig(
            "the printed structure functions cover one-step systems with even m ≥ 2".into(),
        ));
    }
    let spec = SystemSpec::new(
        Family::A,
        crate::model::StepIndices::new(vec![m])?,
        None,
        None,
    )?;
    let solution = solve_families(&spec);
    let m_i = m as i64;
    let mp1 = int(m_i + 1);
    let lambda = spec.lambda();
    let mut entries = Vec::new();

    // Solver roots for the family keyed by boundary constants (c_a, c_b):
    // x side at (c_a − c)/λ, y side at p + 1 + (c − c_b)/λ.
    let solver_roots = |c_a: &Rational, c_b: &Rational| -> Vec<AffineP> {
        let mut roots = Vec::new();
        for f in solution.structure.x_side() {
            roots.push(AffineP::new(int(0), (c_a - &f.constant) / &lambda));
        }
        for f in solution.structure.y_side() {
            roots.push(AffineP::new(int(1), int(1) + (&f.constant - c_b) / &lambda));
        }
        roots.sort();
        roots
    };

    let compare = |family_id: u8,
                   l: Option<u32>,
                   kappa: u32,
                   mut printed: Vec<AffineP>,
                   c_a: &Rational|
     -> PhiComparison {
        let c_b = int(2 * kappa as i64 - 1);
        let mut solver = solver_roots(c_a, &c_b);
        printed.sort();
        let zero = AffineP::new(int(0), int(0));
        let p_plus_one = AffineP::new(int(1), int(1));
        let printed_vanishes_at_zero = printed.contains(&zero);
        let printed_vanishes_at_p_plus_one = printed.contains(&p_plus_one);
        let mut matched = 0;
        let mut i = 0;
        while i < printed.len() {
            if let Ok(j) = solver.binary_search(&printed[i]) {
                solver.remove(j);
                printed.remove(i);
                matched += 1;
            } else {
                i += 1;
            }
        }
        PhiComparison {
            family_id,
            l,
            kappa,
            matched_roots: matched,
            printed_only: printed,
            solver_only: solver,
            printed_vanishes_at_zero,
            printed_vanishes_at_p_plus_one,
        }
    };

    for kappa in 1..=m + 1 {
        // Printed Φ_1 = x · ∏_{i=1}^m [(m+1)x − m − 1 − i]
        //                 · ∏_{j=1}^{m+1} [(m+1)(p+1−x) − m + j − κ].
        let mut printed = vec![AffineP::new(int(0), int(0))];
        for i in 1..=m_i {
            printed.push(AffineP::new(int(0), int(m_i + 1 + i) / &mp1));
        }
        for j in 1..=m_i + 1 {
            printed.push(AffineP::new(
                int(1),
                int(1) - int(m_i - j + kappa as i64) / &mp1,
            ));
        }
        entries.push(compare(1, None, kappa, printed, &int(2 * m_i + 1)));
    }

    for l in 1..=m {
        for kappa in 1..=m + 1 {
            // Printed Φ_2 = [(m+1)x + m + 1 + l] · ∏_{i=1}^m [(m+1)x + l − i]
            //                 · ∏_{j=1}^{m+1} [(m+1)(p+1−x) + j − κ].
            let l_i = l as i64;
            let mut printed = vec![AffineP::new(int(0), int(-(m_i + 1 + l_i)) / &mp1)];
            for i in 1..=m_i {
                printed.push(AffineP::new(int(0), int(i - l_i) / &mp1));
            }
            for j in 1..=m_i + 1 {
                printed.push(AffineP::new(int(1), int(1) + int(j - kappa as i64) / &mp1));
            }
            entries.push(compare(2, Some(l), kappa, printed, &int(-(2 * l_i + 1))));
        }
    }

    Ok(PrintedPhiReport { m, entries })
}
