//! The four system families: admissibility, derived constants, and exact
//! construction of the one-dimensional potentials.

use crate::error::Error;
use crate::exact::poly::{int, rat, Poly, Var};
use crate::exact::{
    count_real_roots, laguerre, log_second_derivative, pseudo_hermite, wronskian, Endpoint,
    Rational, RationalFunction,
};
use num::Zero;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// One of the four separable families. The x axis always carries the k-step
/// extension; the y axis is an unextended oscillator or radial oscillator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_lowercase() {
            'a' => Some(Family::A),
            'b' => Some(Family::B),
            'c' => Some(Family::C),
            'd' => Some(Family::D),
            _ => None,
        }
    }

    /// The x part is a k-step radial oscillator (Laguerre seeds).
    pub fn x_is_radial(self) -> bool {
        matches!(self, Family::B | Family::D)
    }

    /// The y part is a radial oscillator.
    pub fn y_is_radial(self) -> bool {
        matches!(self, Family::C | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// The kind of a one-dimensional component Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Oscillator,
    RadialOscillator,
    KStepOscillator,
    KStepRadialOscillator,
}

impl ComponentKind {
    pub fn name(self) -> &'static str {
        match self {
            ComponentKind::Oscillator => "oscillator",
            ComponentKind::RadialOscillator => "radial-oscillator",
            ComponentKind::KStepOscillator => "k-step-oscillator",
            ComponentKind::KStepRadialOscillator => "k-step-radial-oscillator",
        }
    }
}

/// Strictly increasing step indices `m_1 < m_2 < … < m_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StepIndices {
    m: Vec<u32>,
}

impl StepIndices {
    pub fn new(m: Vec<u32>) -> crate::Result<Self> {
        if m.is_empty()
            || m[0] == 0
            || m.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::NonAscendingSteps(m));
        }
        Ok(StepIndices { m })
    }

    pub fn k(&self) -> usize {
        self.m.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.m
    }

    pub fn m_k(&self) -> u32 {
        *self.m.last().unwrap()
    }

    /// The exclusion set `T = { m_k − m_i : i = 1 … k−1 }`.
    pub fn t_set(&self) -> BTreeSet<u32> {
        let mk = self.m_k();
        self.m[..self.k() - 1].iter().map(|mi| mk - mi).collect()
    }

    /// Quantum numbers annihilated by the lowering ladder of the k-step
    /// component: the k added-state labels `−m_i − 1` together with
    /// `{1, …, m_k}` minus the exclusion set. Always `m_k + 1` values.
    pub fn lowering_zero_modes(&self) -> BTreeSet<i64> {
        let mut set: BTreeSet<i64> = self.m.iter().map(|&mi| -(mi as i64) - 1).collect();
        let excluded = self.t_set();
        for s in 1..=self.m_k() {
            if !excluded.contains(&s) {
                set.insert(s as i64);
            }
        }
        set
    }
}

/// A validated system: family, steps, radial parameters, and the derived
/// constants `alpha` (of the k-step axis, when radial) and `gamma` in the
/// level energy `E_N = 2N + gamma`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemSpec {
    family: Family,
    steps: StepIndices,
    l_x: Option<u32>,
    l_y: Option<u32>,
    #[serde(serialize_with = "crate::ser::rational_opt")]
    alpha: Option<Rational>,
    #[serde(serialize_with = "crate::ser::rational")]
    gamma: Rational,
}

impl SystemSpec {
    /// Validates admissibility and fills the derived constants.
    ///
    /// Step parity (`m_i` even for odd `i`, odd for even `i`) keeps every
    /// Wronskian denominator nodeless on its physical domain and every
    /// ladder amplitude nonnegative, so it is enforced for all four
    /// families; families with a radial x part additionally need
    /// `alpha + k > m_k + 1`.
    pub fn new(
        family: Family,
        steps: StepIndices,
        l_x: Option<u32>,
        l_y: Option<u32>,
    ) -> crate::Result<Self> {
        for (i, &mi) in steps.as_slice().iter().enumerate() {
            let index = i + 1;
            let want_even = index % 2 == 1;
            if (mi % 2 == 0) != want_even {
                return Err(Error::ParityViolation {
                    index,
                    value: mi,
                    expected: if want_even { "even" } else { "odd" },
                });
            }
        }

        match (family.x_is_radial(), l_x) {
            (true, None) => {
                return Err(Error::MissingRadialParameter {
                    family: family.letter(),
                    name: "l_x",
                })
            }
            (false, Some(_)) => {
                return Err(Error::UnexpectedRadialParameter {
                    family: family.letter(),
                    name: "l_x",
                })
            }
            _ => {}
        }
        match (family.y_is_radial(), l_y) {
            (true, None) => {
                return Err(Error::MissingRadialParameter {
                    family: family.letter(),
                    name: "l_y",
                })
            }
            (false, Some(_)) => {
                return Err(Error::UnexpectedRadialParameter {
                    family: family.letter(),
                    name: "l_y",
                })
            }
            _ => {}
        }

        let k = int(steps.k() as i64);
        let alpha = l_x.map(|l| int(l as i64) + rat(1, 2));
        if let Some(a) = &alpha {
            let bound = a + &k;
            if bound <= int(steps.m_k() as i64 + 1) {
                return Err(Error::AlphaBoundViolation {
                    alpha_plus_k: bound,
                    mk_plus_one: steps.m_k() + 1,
                });
            }
        }

        let alpha_y = l_y.map(|l| int(l as i64) + rat(1, 2));
        let gamma = match family {
            Family::A => Rational::zero(),
            Family::B => alpha.clone().unwrap() + &k,
            Family::C => alpha_y.unwrap(),
            Family::D => alpha.clone().unwrap() + alpha_y.unwrap() + &k,
        };

        Ok(SystemSpec {
            family,
            steps,
            l_x,
            l_y,
            alpha,
            gamma,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn steps(&self) -> &StepIndices {
        &self.steps
    }

    pub fn k(&self) -> usize {
        self.steps.k()
    }

    pub fn m_k(&self) -> u32 {
        self.steps.m_k()
    }

    pub fn l_x(&self) -> Option<u32> {
        self.l_x
    }

    pub fn l_y(&self) -> Option<u32> {
        self.l_y
    }

    /// `l_x + 1/2` for the radial k-step axis (families b, d).
    pub fn alpha(&self) -> Option<&Rational> {
        self.alpha.as_ref()
    }

    /// `l_y + 1/2` for a radial y axis (families c, d).
    pub fn alpha_y(&self) -> Option<Rational> {
        self.l_y.map(|l| int(l as i64) + rat(1, 2))
    }

    /// The constant in `E_N = 2N + gamma`.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// Common ladder shift `lambda = 2 m_k + 2` of the x axis.
    pub fn lambda(&self) -> Rational {
        int(2 * self.m_k() as i64 + 2)
    }

    /// Number of y-ladder steps per integral application, `n_2 = m_k + 1`.
    pub fn n2(&self) -> u32 {
        self.m_k() + 1
    }

    pub fn x_kind(&self) -> ComponentKind {
        if self.family.x_is_radial() {
            ComponentKind::KStepRadialOscillator
        } else {
            ComponentKind::KStepOscillator
        }
    }

    pub fn y_kind(&self) -> ComponentKind {
        if self.family.y_is_radial() {
            ComponentKind::RadialOscillator
        } else {
            ComponentKind::Oscillator
        }
    }

    /// Exact x-part eigenvalue at quantum number `nu`.
    pub fn x_energy(&self, nu: i64) -> Rational {
        match self.x_kind() {
            ComponentKind::KStepOscillator => int(2 * nu + 1),
            ComponentKind::KStepRadialOscillator => {
                int(2 * nu) + self.alpha.clone().unwrap() + int(self.k() as i64 + 1)
            }
            _ => unreachable!(),
        }
    }

    /// Exact y-part eigenvalue at quantum number `nu`.
    pub fn y_energy(&self, nu: i64) -> Rational {
        match self.y_kind() {
            ComponentKind::Oscillator => int(2 * nu + 1),
            ComponentKind::RadialOscillator => int(2 * nu + 1) + self.alpha_y().unwrap(),
            _ => unreachable!(),
        }
    }
}

/// Physical domain of a one-dimensional component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    RealLine,
    HalfLine,
}

/// A one-dimensional potential
/// `q·x² + l(l+1)/x² + shift + correction(x)`, with the Wronskian that
/// underlies the rational correction kept for nodelessness checks.
#[derive(Clone, Debug)]
pub struct Potential1D {
    pub kind: ComponentKind,
    /// Coefficient of `x²`: 1 for oscillator kinds, 1/4 for radial kinds.
    pub quadratic: Rational,
    pub centrifugal_l: Option<u32>,
    pub shift: Rational,
    /// The term `−2 (log W)''`, identically zero for unextended kinds.
    pub correction: RationalFunction,
    /// The Wronskian denominator, as a polynomial in `x`.
    pub denominator: Poly,
}

impl Potential1D {
    pub fn domain(&self) -> Domain {
        match self.kind {
            ComponentKind::Oscillator | ComponentKind::KStepOscillator => Domain::RealLine,
            _ => Domain::HalfLine,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut v = self.quadratic.to_f64() * x * x + self.shift.to_f64();
        if let Some(l) = self.centrifugal_l {
            let l = l as f64;
            v += l * (l + 1.0) / (x * x);
        }
        if !self.correction.is_zero() {
            v += self.correction.eval_f64(x);
        }
        v
    }
}

/// `to_f64` on a `Rational`, for the few float consumers.
trait ToF64 {
    fn to_f64(&self) -> f64;
}

impl ToF64 for Rational {
    fn to_f64(&self) -> f64 {
        num::ToPrimitive::to_f64(self).expect("rational out of f64 range")
    }
}

/// Builds the x-axis potential: the k-step extension of the harmonic
/// oscillator (families a, c) or of the radial oscillator (families b, d).
///
/// For the radial case the Laguerre seeds live in `z`, their Wronskian is
/// taken with derivatives in `z`, and `z = x²/2` is substituted exactly
/// before the logarithmic second derivative in `x` is applied.
pub fn build_x_potential(spec: &SystemSpec) -> crate::Result<Potential1D> {
    let k = spec.k() as i64;
    match spec.x_kind() {
        ComponentKind::KStepOscillator => {
            let seeds: Vec<Poly> = spec
                .steps()
                .as_slice()
                .iter()
                .map(|&m| pseudo_hermite(m))
                .collect();
            let w = wronskian(&seeds)?;
            check_nodeless(&w, Domain::RealLine, 'x')?;
            let correction =
                log_second_derivative(&RationalFunction::from_poly(w.clone()))?.scale(&int(-2));
            Ok(Potential1D {
                kind: ComponentKind::KStepOscillator,
                quadratic: int(1),
                centrifugal_l: None,
                shift: int(-2 * k),
                correction,
                denominator: w,
            })
        }
        ComponentKind::KStepRadialOscillator => {
            let alpha = spec.alpha().unwrap().clone();
            let parameter = -(&alpha + int(k));
            let minus_z = Poly::from_coeffs(Var::Z, vec![int(0), int(-1)]);
            let seeds: Vec<Poly> = spec
                .steps()
                .as_slice()
                .iter()
                .map(|&m| laguerre(m, &parameter).compose(&minus_z))
                .collect();
            let w_z = wronskian(&seeds)?;
            let half_x_sq = Poly::from_coeffs(Var::X, vec![int(0), int(0), rat(1, 2)]);
            let w_x = w_z.compose(&half_x_sq);
            check_nodeless(&w_x, Domain::HalfLine, 'x')?;
            let correction =
                log_second_derivative(&RationalFunction::from_poly(w_x.clone()))?.scale(&int(-2));
            Ok(Potential1D {
                kind: ComponentKind::KStepRadialOscillator,
                quadratic: rat(1, 4),
                centrifugal_l: spec.l_x(),
                shift: int(-k),
                correction,
                denominator: w_x,
            })
        }
        _ => unreachable!(),
    }
}

/// Builds the unextended y-axis potential.
pub fn build_y_potential(spec: &SystemSpec) -> crate::Result<Potential1D> {
    let kind = spec.y_kind();
    let radial = kind == ComponentKind::RadialOscillator;
    Ok(Potential1D {
        kind,
        quadratic: if radial { rat(1, 4) } else { int(1) },
        centrifugal_l: if radial { spec.l_y() } else { None },
        shift: int(0),
        correction: RationalFunction::zero(Var::X),
        denominator: Poly::one(Var::X),
    })
}

fn check_nodeless(w: &Poly, domain: Domain, axis: char) -> crate::Result<()> {
    let (lo, hi) = match domain {
        Domain::RealLine => (Endpoint::NegInf, Endpoint::PosInf),
        Domain::HalfLine => (Endpoint::Finite(Rational::zero()), Endpoint::PosInf),
    };
    let roots = count_real_roots(w, &lo, &hi);
    if roots > 0 {
        return Err(Error::NodelessnessViolation { axis, roots });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::int;

    pub(crate) fn spec_a(ms: &[u32]) -> SystemSpec {
        SystemSpec::new(Family::A, StepIndices::new(ms.to_vec()).unwrap(), None, None).unwrap()
    }

    #[test]
    fn validates_the_reference_family_a_spec() {
        let spec = spec_a(&[2, 3]);
        assert_eq!(spec.gamma(), &int(0));
        assert_eq!(spec.lambda(), int(8));
        assert_eq!(spec.n2(), 4);
    }

    #[test]
    fn rejects_parity_violations() {
        let err = SystemSpec::new(
            Family::A,
            StepIndices::new(vec![1]).unwrap(),
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ParityViolation { index: 1, .. }));

        let err = SystemSpec::new(
            Family::A,
            StepIndices::new(vec![2, 4]).unwrap(),
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ParityViolation { index: 2, .. }));
    }

    #[test]
    fn rejects_alpha_bound_violations() {
        // family b, m=(2), l_x=1: alpha+k = 5/2 < m_k+1 = 3.
        let err = SystemSpec::new(
            Family::B,
            StepIndices::new(vec![2]).unwrap(),
            Some(1),
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::AlphaBoundViolation { mk_plus_one: 3, .. }));
    }

    #[test]
    fn rejects_non_ascending_steps() {
        assert!(StepIndices::new(vec![3, 2]).is_err());
        assert!(StepIndices::new(vec![2, 2]).is_err());
        assert!(StepIndices::new(vec![]).is_err());
        assert!(StepIndices::new(vec![0]).is_err());
    }

    #[test]
    fn radial_parameters_must_match_family() {
        let steps = || StepIndices::new(vec![2]).unwrap();
        assert!(matches!(
            SystemSpec::new(Family::B, steps(), None, None),
            Err(Error::MissingRadialParameter { name: "l_x", .. })
        ));
        assert!(matches!(
            SystemSpec::new(Family::A, steps(), Some(1), None),
            Err(Error::UnexpectedRadialParameter { name: "l_x", .. })
        ));
        assert!(matches!(
            SystemSpec::new(Family::C, steps(), None, None),
            Err(Error::MissingRadialParameter { name: "l_y", .. })
        ));
    }

    #[test]
    fn gamma_follows_the_family_formulas() {
        let steps = || StepIndices::new(vec![2]).unwrap();
        let b = SystemSpec::new(Family::B, steps(), Some(3), None).unwrap();
        assert_eq!(b.gamma(), &rat(9, 2)); // alpha + k = 7/2 + 1
        let c = SystemSpec::new(Family::C, steps(), None, Some(1)).unwrap();
        assert_eq!(c.gamma(), &rat(3, 2)); // alpha_y
        let d = SystemSpec::new(Family::D, steps(), Some(3), Some(3)).unwrap();
        assert_eq!(d.gamma(), &int(8)); // 2 alpha + k = 7 + 1
    }

    #[test]
    fn zero_modes_match_the_ladder_action() {
        let steps = StepIndices::new(vec![2]).unwrap();
        assert_eq!(
            steps.lowering_zero_modes(),
            [-3, 1, 2].into_iter().collect()
        );
        let steps = StepIndices::new(vec![2, 3]).unwrap();
        assert_eq!(
            steps.lowering_zero_modes(),
            [-4, -3, 2, 3].into_iter().collect()
        );
        // Cardinality is always m_k + 1.
        for ms in [vec![2], vec![2, 3], vec![2, 3, 6], vec![4, 5, 6]] {
            let steps = StepIndices::new(ms).unwrap();
            assert_eq!(steps.lowering_zero_modes().len(), steps.m_k() as usize + 1);
        }
    }

    #[test]
    fn one_step_oscillator_correction_matches_hand_expansion() {
        let spec = spec_a(&[2]);
        let pot = build_x_potential(&spec).unwrap();
        assert_eq!(pot.denominator, pseudo_hermite(2));
        assert_eq!(pot.shift, int(-2));
        let den = &pseudo_hermite(2) * &pseudo_hermite(2);
        let num = Poly::from_coeffs(Var::X, vec![int(-32), int(0), int(64)]);
        assert_eq!(pot.correction, RationalFunction::new(num, den).unwrap());
    }

    #[test]
    fn two_step_wronskian_is_nodeless() {
        let pot = build_x_potential(&spec_a(&[2, 3])).unwrap();
        assert_eq!(
            pot.denominator,
            Poly::from_coeffs(Var::X, vec![int(24), int(0), int(0), int(0), int(32)])
        );
    }

    #[test]
    fn unextended_radial_y_part() {
        let spec = SystemSpec::new(
            Family::C,
            StepIndices::new(vec![2]).unwrap(),
            None,
            Some(1),
        )
        .unwrap();
        let pot = build_y_potential(&spec).unwrap();
        assert_eq!(pot.kind, ComponentKind::RadialOscillator);
        assert!(pot.correction.is_zero());
        // V(y) = y²/4 + 2/y² at y = 2: 1 + 1/2.
        assert!((pot.eval_f64(2.0) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn substitution_commutes_with_the_chain_rule() {
        // d/dx [g(x²/2)] = x · g'(x²/2) for the Laguerre seeds.
        let half_x_sq = Poly::from_coeffs(Var::X, vec![int(0), int(0), rat(1, 2)]);
        let x = Poly::variable(Var::X);
        for m in [2u32, 3, 5] {
            let g = laguerre(m, &rat(-9, 2));
            let lhs = g.compose(&half_x_sq).derivative();
            let rhs = &x * &g.derivative().compose(&half_x_sq);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn every_admissible_x_denominator_is_nodeless() {
        // All ascending step lists with m_k ≤ 7, all families, radial l ≤ 3:
        // whatever validates must produce a nodeless Wronskian.
        let mut lists = vec![];
        for a in 1..=7u32 {
            lists.push(vec![a]);
            for b in a + 1..=7 {
                lists.push(vec![a, b]);
                for c in b + 1..=7 {
                    lists.push(vec![a, b, c]);
                }
            }
        }
        let mut checked = 0;
        for ms in &lists {
            let steps = || StepIndices::new(ms.clone()).unwrap();
            let mut specs = Vec::new();
            if let Ok(s) = SystemSpec::new(Family::A, steps(), None, None) {
                specs.push(s);
            }
            for l in 1..=3 {
                if let Ok(s) = SystemSpec::new(Family::B, steps(), Some(l), None) {
                    specs.push(s);
                }
                if let Ok(s) = SystemSpec::new(Family::D, steps(), Some(l), Some(l)) {
                    specs.push(s);
                }
            }
            for spec in specs {
                build_x_potential(&spec).unwrap_or_else(|e| {
                    panic!("family {} m={ms:?}: {e}", spec.family().letter())
                });
                checked += 1;
            }
        }
        assert!(checked >= 20, "sweep too small: {checked}");
    }
}
