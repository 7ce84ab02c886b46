//! Does some multiple of `m(x)` have a prescribed coefficient sign pattern?
//!
//! A candidate multiplier `f` of degree `e` has unknown rational
//! coefficients `f_0..f_e`; every coefficient of `f·m` is a linear form in
//! them. A pattern pins one coefficient to `±1` and puts sign constraints on
//! the others, so each probe is a small exact linear feasibility problem.
//! Patterns that need integer coefficients beyond scaling go through a
//! branch-and-bound search on top of the rational engine.
//!
//! Witnesses are deterministic: the smallest feasible product degree, then
//! the lexicographically smallest multiplier coefficient vector (lowest
//! index first).

pub mod branch;
pub mod fourier_motzkin;
pub mod linear;
pub mod simplex;

use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::caps::{Caps, LpEngine, FM_CUTOVER};
use crate::error::{Error, Result};
use crate::polycore::{IntPoly, Integer, RatPoly, Rational};
use crate::rootcount::positive_root_count;
use branch::{integer_lexmin, IntOutcome};
use linear::{Cmp, LinearSystem};

/// Closed interval with optional ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexOutcome {
    Infeasible,
    /// Feasible, but some coordinate is unbounded below at its turn.
    Unbounded,
    Point(Vec<Rational>),
}

/// The lexicographic minimum of `sys`.
pub fn lexmin(sys: &LinearSystem, engine: LpEngine) -> LexOutcome {
    let use_fm = match engine {
        LpEngine::Auto => sys.vars() <= FM_CUTOVER,
        LpEngine::FourierMotzkin => true,
        LpEngine::Simplex => false,
    };
    if use_fm {
        if let Some(out) = fourier_motzkin::lexmin(sys) {
            return out;
        }
    }
    simplex::lexmin(sys)
}

/// Range of the first unknown, `None` when `sys` is infeasible.
pub fn range_first(sys: &LinearSystem, engine: LpEngine) -> Option<Interval> {
    let use_fm = match engine {
        LpEngine::Auto => sys.vars() <= FM_CUTOVER,
        LpEngine::FourierMotzkin => true,
        LpEngine::Simplex => false,
    };
    if use_fm {
        if let Some(out) = fourier_motzkin::range_first(sys) {
            return out;
        }
    }
    simplex::range_first(sys)
}

/// The sign patterns the analyzer asks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternKind {
    /// `x^n − Σ_{i<n} a_i x^i` with integer `a_i ≥ 0`.
    MonicAtom { degree: usize },
    /// Degree exactly `s`, leading coefficient negative, the rest `≥ 0`.
    StrongPrefix { degree: usize },
    /// Degree at most `max_degree`, coefficient `k` negative, the rest `≥ 0`.
    SingleNegativeAt { index: usize, max_degree: usize },
    /// `Σ_{i≥1} c_i x^i − n` with `c_i ≥ 0`, `n ≥ 1`.
    UnitRepresentation { max_degree: usize },
    /// `Σ_{i≥1} c_i x^i − 1` with integer `c_i ≥ 0`.
    UnitDecomposition { max_degree: usize },
}

impl PatternKind {
    /// Upper bound on the sign variations of any matching polynomial.
    pub fn max_variations(&self) -> usize {
        match *self {
            PatternKind::SingleNegativeAt { index, max_degree } if index > 0 && index < max_degree => 2,
            _ => 1,
        }
    }

    /// Whether only integer multipliers count (the pinned value cannot be
    /// reached by rescaling).
    pub fn integral(&self) -> bool {
        matches!(self, PatternKind::MonicAtom { .. } | PatternKind::UnitDecomposition { .. })
    }

    fn fixed_degree(&self) -> bool {
        matches!(self, PatternKind::MonicAtom { .. } | PatternKind::StrongPrefix { .. })
    }

    /// Product degrees probed, in order.
    pub fn degrees(&self, d: usize) -> RangeInclusive<usize> {
        match *self {
            PatternKind::MonicAtom { degree } | PatternKind::StrongPrefix { degree } => degree.max(d)..=degree,
            PatternKind::SingleNegativeAt { index, max_degree } => index.max(d)..=max_degree,
            PatternKind::UnitRepresentation { max_degree } | PatternKind::UnitDecomposition { max_degree } => {
                d..=max_degree
            }
        }
    }

    /// The distinguished coefficient and its pinned value.
    fn pinned(&self) -> (usize, Rational) {
        match *self {
            PatternKind::MonicAtom { degree } => (degree, Rational::one()),
            PatternKind::StrongPrefix { degree } => (degree, -Rational::one()),
            PatternKind::SingleNegativeAt { index, .. } => (index, -Rational::one()),
            PatternKind::UnitRepresentation { .. } | PatternKind::UnitDecomposition { .. } => {
                (0, -Rational::one())
            }
        }
    }

    /// Whether `product` has this pattern. Strong prefixes are accepted in
    /// either orientation.
    pub fn matches(&self, product: &IntPoly) -> bool {
        let Some(deg) = product.degree() else { return false };
        let c = product.coeffs();
        let others = |k: usize, ok: &dyn Fn(&Integer) -> bool| {
            c.iter().enumerate().filter(|&(i, _)| i != k).all(|(_, a)| ok(a))
        };
        match *self {
            PatternKind::MonicAtom { degree } => {
                deg == degree && c[deg].is_one() && others(deg, &|a| !a.is_positive())
            }
            PatternKind::StrongPrefix { degree } => {
                deg == degree
                    && ((c[deg].is_negative() && others(deg, &|a| !a.is_negative()))
                        || (c[deg].is_positive() && others(deg, &|a| !a.is_positive())))
            }
            PatternKind::SingleNegativeAt { index, max_degree } => {
                deg <= max_degree && index <= deg && c[index].is_negative() && others(index, &|a| !a.is_negative())
            }
            PatternKind::UnitRepresentation { max_degree } => {
                deg <= max_degree && c[0].is_negative() && others(0, &|a| !a.is_negative())
            }
            PatternKind::UnitDecomposition { max_degree } => {
                deg <= max_degree && c[0] == -Integer::one() && others(0, &|a| !a.is_negative())
            }
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::MonicAtom { degree } => write!(f, "monic-atom({degree})"),
            PatternKind::StrongPrefix { degree } => write!(f, "strong-prefix({degree})"),
            PatternKind::SingleNegativeAt { index, max_degree } => {
                write!(f, "single-negative-at({index}, deg<={max_degree})")
            }
            PatternKind::UnitRepresentation { max_degree } => write!(f, "unit-representation(deg<={max_degree})"),
            PatternKind::UnitDecomposition { max_degree } => write!(f, "unit-decomposition(deg<={max_degree})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPatternQuery {
    pub m: IntPoly,
    pub kind: PatternKind,
    pub caps: Caps,
}

impl SignPatternQuery {
    pub fn new(m: &IntPoly, kind: PatternKind, caps: &Caps) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if m.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !m.is_primitive() {
            return Err(Error::Precondition("sign-pattern queries expect a primitive modulus".into()));
        }
        Ok(SignPatternQuery { m: m.clone(), kind, caps: caps.clone() })
    }

    fn d(&self) -> usize {
        self.m.degree().expect("nonconstant")
    }

    /// The linear system for product degree `t`: unknowns `f_0..f_{t-d}`.
    pub fn system(&self, t: usize) -> LinearSystem {
        let d = self.d();
        let n = t - d + 1;
        let mc = self.m.coeffs();
        let (pin, value) = self.kind.pinned();
        let other = if matches!(self.kind, PatternKind::MonicAtom { .. }) { Cmp::Le } else { Cmp::Ge };
        let mut sys = LinearSystem::new(n);
        for j in 0..=t {
            let row: Vec<Rational> = (0..n)
                .map(|i| match j.checked_sub(i) {
                    Some(k) if k <= d => Rational::from_integer(mc[k].clone()),
                    _ => Rational::zero(),
                })
                .collect();
            if j == pin {
                sys.push(&row, Cmp::Eq, &value);
            } else {
                sys.push(&row, other, &Rational::zero());
            }
        }
        sys.canonicalize();
        sys
    }

    fn witness(&self, f: Vec<Rational>) -> Witness {
        let multiplier = RatPoly::new(f);
        let product = &multiplier * &self.m.to_rat();
        Witness { multiplier, product }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapReason {
    Degree,
    Nodes,
    Coefficients,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Infeasibility {
    /// Every multiple has at least `positive_roots` sign variations, more
    /// than the pattern allows.
    DescartesBound { positive_roots: usize, max_variations: usize },
    /// No rational multiplier exists.
    LinearInfeasible,
    /// Rational multipliers exist but no integer one does.
    IntegerInfeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub multiplier: RatPoly,
    pub product: RatPoly,
}

impl Witness {
    /// The positive primitive integer rescaling of the multiplier.
    pub fn integer_multiplier(&self) -> IntPoly {
        self.multiplier.primitive_integer().map(|(_, p)| p).unwrap_or_else(|_| IntPoly::zero())
    }

    pub fn integer_product(&self) -> IntPoly {
        self.product.primitive_integer().map(|(_, p)| p).unwrap_or_else(|_| IntPoly::zero())
    }

    /// Re-multiplies and re-checks the sign pattern.
    pub fn verify(&self, m: &IntPoly, kind: &PatternKind) -> bool {
        if self.product != &self.multiplier * &m.to_rat() {
            return false;
        }
        let product = if kind.integral() {
            match self.product.to_integer_poly() {
                Some(p) => p,
                None => return false,
            }
        } else {
            self.integer_product()
        };
        kind.matches(&product)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WitnessResult {
    Witness(Witness),
    InfeasibleProven(Infeasibility),
    ExhaustedCaps { reason: CapReason },
}

impl WitnessResult {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            WitnessResult::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// Infeasibility for every degree, read off Descartes' rule of signs.
pub fn descartes_prune(query: &SignPatternQuery) -> Option<Infeasibility> {
    let roots = positive_root_count(&query.m, true).ok()?;
    let max_variations = query.kind.max_variations();
    (roots > 0 && max_variations < roots)
        .then_some(Infeasibility::DescartesBound { positive_roots: roots, max_variations })
}

/// Rational lexmin, retrying inside the coefficient box when unbounded.
fn rational_point(sys: &LinearSystem, caps: &Caps) -> std::result::Result<Option<Vec<Rational>>, CapReason> {
    match lexmin(sys, caps.engine) {
        LexOutcome::Infeasible => Ok(None),
        LexOutcome::Point(x) => Ok(Some(x)),
        LexOutcome::Unbounded => match lexmin(&sys.with_box(&Integer::from(caps.max_coeff)), caps.engine) {
            LexOutcome::Point(x) => Ok(Some(x)),
            _ => Err(CapReason::Coefficients),
        },
    }
}

/// Decides the rational relaxation exactly, degree by degree.
pub fn rational_feasibility(query: &SignPatternQuery) -> WitnessResult {
    for t in query.kind.degrees(query.d()) {
        match rational_point(&query.system(t), &query.caps) {
            Ok(Some(f)) => return WitnessResult::Witness(query.witness(f)),
            Ok(None) => {}
            Err(reason) => return WitnessResult::ExhaustedCaps { reason },
        }
    }
    if query.kind.fixed_degree() {
        WitnessResult::InfeasibleProven(Infeasibility::LinearInfeasible)
    } else {
        WitnessResult::ExhaustedCaps { reason: CapReason::Degree }
    }
}

/// Searches for a multiple with integer coefficients.
pub fn integer_witness_search(query: &SignPatternQuery) -> WitnessResult {
    if let Some(reason) = descartes_prune(query) {
        return WitnessResult::InfeasibleProven(reason);
    }
    if !query.kind.integral() {
        // homogeneous pattern: clear denominators of the rational witness
        return match rational_feasibility(query) {
            WitnessResult::Witness(w) => {
                let multiplier = w.integer_multiplier();
                let product = &multiplier * &query.m;
                WitnessResult::Witness(Witness { multiplier: multiplier.to_rat(), product: product.to_rat() })
            }
            other => other,
        };
    }
    let caps = &query.caps;
    let bound = Integer::from(caps.max_coeff);
    for t in query.kind.degrees(query.d()) {
        let sys = query.system(t);
        if lexmin(&sys, caps.engine) == LexOutcome::Infeasible {
            if query.kind.fixed_degree() {
                return WitnessResult::InfeasibleProven(Infeasibility::LinearInfeasible);
            }
            continue;
        }
        match integer_lexmin(&sys, caps.engine, &bound, caps.max_nodes) {
            IntOutcome::Found(f) => {
                let f = f.into_iter().map(Rational::from_integer).collect();
                return WitnessResult::Witness(query.witness(f));
            }
            IntOutcome::Infeasible if query.kind.fixed_degree() => {
                return WitnessResult::InfeasibleProven(Infeasibility::IntegerInfeasible);
            }
            IntOutcome::Infeasible => {}
            IntOutcome::Exhausted(reason) => return WitnessResult::ExhaustedCaps { reason },
        }
    }
    if query.kind.fixed_degree() {
        WitnessResult::InfeasibleProven(Infeasibility::LinearInfeasible)
    } else {
        WitnessResult::ExhaustedCaps { reason: CapReason::Degree }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn query(m: &[i64], kind: PatternKind) -> SignPatternQuery {
        SignPatternQuery::new(&p(m), kind, &Caps::default()).unwrap()
    }

    const FAMILY: [i64; 4] = [-2, 4, -8, 1];

    #[test]
    fn descartes_examples() {
        let q = query(&[1, -3, 1], PatternKind::UnitRepresentation { max_degree: 24 });
        assert_eq!(
            descartes_prune(&q),
            Some(Infeasibility::DescartesBound { positive_roots: 2, max_variations: 1 })
        );
        for k in 0..5 {
            let q = query(&[-1, 6, -5, 1], PatternKind::SingleNegativeAt { index: k, max_degree: 24 });
            assert!(descartes_prune(&q).is_some());
        }
        assert_eq!(descartes_prune(&query(&FAMILY, PatternKind::StrongPrefix { degree: 4 })), None);
        // no positive root, nothing to prune
        assert_eq!(descartes_prune(&query(&[1, 1, 1], PatternKind::StrongPrefix { degree: 2 })), None);
    }

    #[test]
    fn strong_prefix_examples() {
        let r = rational_feasibility(&query(&FAMILY, PatternKind::StrongPrefix { degree: 4 }));
        let w = r.witness().expect("witness");
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(w.multiplier, RatPoly::new(vec![-half, -Rational::one()]));
        assert_eq!(w.integer_multiplier(), p(&[-1, -2]));
        assert_eq!(-w.integer_product(), p(&[-2, 0, 0, -15, 2]));

        let r = rational_feasibility(&query(&FAMILY, PatternKind::StrongPrefix { degree: 3 }));
        assert_eq!(r, WitnessResult::InfeasibleProven(Infeasibility::LinearInfeasible));

        let r = rational_feasibility(&query(&[-1, -1, 1], PatternKind::StrongPrefix { degree: 2 }));
        let w = r.witness().unwrap();
        assert_eq!(w.multiplier, RatPoly::constant(-Rational::one()));
        assert_eq!(w.integer_product(), p(&[1, 1, -1]));
    }

    #[test]
    fn monic_atom_examples() {
        let r = integer_witness_search(&query(&FAMILY, PatternKind::MonicAtom { degree: 5 }));
        let w = r.witness().expect("witness");
        assert_eq!(w.integer_multiplier(), p(&[1, 2, 1]));
        assert_eq!(w.integer_product(), p(&[-2, 0, -2, -11, -6, 1]));

        let r = integer_witness_search(&query(&FAMILY, PatternKind::MonicAtom { degree: 4 }));
        assert_eq!(r, WitnessResult::InfeasibleProven(Infeasibility::IntegerInfeasible));
        let r = rational_feasibility(&query(&FAMILY, PatternKind::MonicAtom { degree: 4 }));
        assert!(r.witness().is_some());
    }

    #[test]
    fn single_negative_example() {
        let q = query(&[1, -3, 1], PatternKind::SingleNegativeAt { index: 1, max_degree: 2 });
        let w = integer_witness_search(&q).witness().cloned().expect("witness");
        assert_eq!(w.integer_product(), p(&[1, -3, 1]));
        assert!(w.verify(&q.m, &q.kind));
    }

    #[test]
    fn unit_decomposition() {
        let q = query(&[-1, 1, 1], PatternKind::UnitDecomposition { max_degree: 6 });
        let w = integer_witness_search(&q).witness().cloned().expect("witness");
        assert_eq!(w.integer_product(), p(&[-1, 1, 1]));
        // 1 + α = α² with α > 1 leaves no room for 1
        let q = query(&[-1, -1, 1], PatternKind::UnitDecomposition { max_degree: 6 });
        assert!(integer_witness_search(&q).witness().is_none());
    }

    #[test]
    fn engines_agree() {
        let cases: &[(&[i64], PatternKind)] = &[
            (&FAMILY, PatternKind::StrongPrefix { degree: 4 }),
            (&FAMILY, PatternKind::StrongPrefix { degree: 3 }),
            (&FAMILY, PatternKind::MonicAtom { degree: 4 }),
            (&FAMILY, PatternKind::MonicAtom { degree: 5 }),
            (&[1, -3, 1], PatternKind::SingleNegativeAt { index: 1, max_degree: 4 }),
            (&[-1, -1, 1], PatternKind::StrongPrefix { degree: 5 }),
            (&[-3, -1, 2], PatternKind::UnitRepresentation { max_degree: 6 }),
        ];
        for (m, kind) in cases {
            let base = query(m, *kind);
            let fm = SignPatternQuery { caps: base.caps.clone().with_engine(LpEngine::FourierMotzkin), ..base.clone() };
            let sx = SignPatternQuery { caps: base.caps.clone().with_engine(LpEngine::Simplex), ..base.clone() };
            assert_eq!(rational_feasibility(&fm), rational_feasibility(&sx), "{kind}");
            assert_eq!(integer_witness_search(&fm), integer_witness_search(&sx), "{kind}");
        }
    }

    #[test]
    fn strong_prefix_monotone() {
        for m in [&FAMILY[..], &[-1, -1, 1], &[-2, -1, 2], &[-1, 0, -1, 1]] {
            let mut seen = false;
            for s in 2..9 {
                let q = query(m, PatternKind::StrongPrefix { degree: s });
                let feasible = rational_feasibility(&q).witness().is_some();
                assert!(!seen || feasible, "lost feasibility at {s} for {m:?}");
                seen |= feasible;
            }
        }
    }
}
