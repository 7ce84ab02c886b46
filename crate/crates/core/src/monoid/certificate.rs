use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::degree2::{degree2_form, Degree2Subcase};
use super::Count;
use crate::caps::{Caps, LpEngine};
use crate::irreducibility::{eisenstein_check, IrreducibilityVerdict};
use crate::polycore::{minimal_pair, serde_big, IntPoly, Integer, Rational};
use crate::rootcount::{positive_root_count, Point, SturmChain};
use crate::signsearch::{self, Infeasibility, PatternKind, SignPatternQuery, WitnessResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DetectorKind {
    /// Every coefficient has the same sign, so `α` is not a positive real and
    /// `M_α` is a group.
    SameSignCoefficients,
    MultiplePositiveRoots { count: usize },
    /// `α > lower_bound ≥ 1`, so no sum of positive powers equals 1.
    RootAboveOne {
        #[serde(serialize_with = "serde_big::rational")]
        lower_bound: Rational,
    },
    /// `|m(0)| ≠ 1`; a multiple `Σ c_i x^i − 1` would force `m(0) | 1`.
    ConstantTermNotUnit,
    /// `m = x^d − q(x)` with `q ≥ 0`.
    UfmShape,
    /// Leading coefficient above 1: no multiple of `m` is monic.
    GaussNonMonic,
    ThreePositiveRoots { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Irreducible { verdict: IrreducibilityVerdict },
    /// The input was not certified irreducible; the caller vouched for it.
    AssumedIrreducible,
    MultiplierWitness { multiplier: IntPoly, product: IntPoly, pattern: PatternKind },
    DescartesBound { positive_roots: usize, pattern: PatternKind, pattern_max_variations: usize },
    /// No multiplier of the pattern exists; `integral` marks the case where
    /// rational ones do but integer ones do not.
    LinearInfeasible { pattern: PatternKind, integral: bool },
    /// `a·α^k = b·α^{n+k}` for every `k`.
    BinomialRelation {
        #[serde(serialize_with = "serde_big::integer")]
        a: Integer,
        #[serde(serialize_with = "serde_big::integer")]
        b: Integer,
        n: usize,
    },
    Degree2Case { case: u8, subcase: Option<Degree2Subcase> },
    EisensteinPrime {
        #[serde(serialize_with = "serde_big::integer")]
        p: Integer,
    },
    TransformScaling { k: usize, base_polynomial: IntPoly, base_strong: Count, base_atoms: Count },
    UfmMinimalPair { p: IntPoly, q: IntPoly },
    AtomicityDetector { detector: DetectorKind },
}

fn other_engine_caps() -> Caps {
    Caps::default().with_engine(LpEngine::Simplex)
}

/// Every positive root of `m`, in particular the selected one, exceeds
/// `lower_bound ≥ 1`.
fn root_above_one(m: &IntPoly, lower_bound: &Rational) -> bool {
    if *lower_bound < Rational::one() || positive_root_count(m, false).map_or(true, |n| n == 0) {
        return false;
    }
    SturmChain::new(m).is_ok_and(|chain| chain.count_between(&Point::ZeroPlus, &Point::At(lower_bound.clone())) == 0)
}

impl Certificate {
    /// Re-checks the certificate against `m` with polynomial arithmetic,
    /// Sturm counts and, for infeasibility claims, the simplex engine.
    pub fn verify(&self, m: &IntPoly) -> bool {
        match self {
            Certificate::Irreducible { verdict } => verdict.is_irreducible() && verdict.recheck(m),
            Certificate::AssumedIrreducible => true,
            Certificate::MultiplierWitness { multiplier, product, pattern } => {
                &(multiplier * m) == product && pattern.matches(product)
            }
            Certificate::DescartesBound { positive_roots, pattern, pattern_max_variations } => {
                positive_root_count(m, true).ok() == Some(*positive_roots)
                    && pattern.max_variations() == *pattern_max_variations
                    && pattern_max_variations < positive_roots
            }
            Certificate::LinearInfeasible { pattern, integral } => {
                let Ok(q) = SignPatternQuery::new(m, *pattern, &other_engine_caps()) else {
                    return false;
                };
                match integral {
                    false => {
                        signsearch::rational_feasibility(&q)
                            == WitnessResult::InfeasibleProven(Infeasibility::LinearInfeasible)
                    }
                    true => matches!(
                        signsearch::integer_witness_search(&q),
                        WitnessResult::InfeasibleProven(Infeasibility::IntegerInfeasible | Infeasibility::LinearInfeasible)
                    ),
                }
            }
            Certificate::BinomialRelation { a, b, n } => {
                let expected = &IntPoly::monomial(b.clone(), *n) - &IntPoly::constant(a.clone());
                expected == *m && a.is_positive() && b.is_positive() && a.gcd(b).is_one() && !a.is_one() && !b.is_one()
            }
            Certificate::Degree2Case { case, subcase } => {
                degree2_form(m).is_some_and(|(c, s)| c == *case && s == *subcase)
            }
            Certificate::EisensteinPrime { p } => eisenstein_check(m).is_some_and(|q| q == *p),
            Certificate::TransformScaling { k, base_polynomial, .. } => {
                base_polynomial.substitute_power(*k).is_ok_and(|lifted| lifted == *m)
            }
            Certificate::UfmMinimalPair { p, q } => minimal_pair(&m.to_rat())
                .is_ok_and(|pair| pair.p == *p && pair.q == *q && pair.scale.is_one() && pair.p_is_pure_power()),
            Certificate::AtomicityDetector { detector } => verify_detector(detector, m),
        }
    }
}

fn verify_detector(detector: &DetectorKind, m: &IntPoly) -> bool {
    match detector {
        DetectorKind::SameSignCoefficients => {
            let nonzero: Vec<&Integer> = m.coeffs().iter().filter(|c| !c.is_zero()).collect();
            nonzero.iter().all(|c| c.is_positive()) || nonzero.iter().all(|c| c.is_negative())
        }
        DetectorKind::MultiplePositiveRoots { count } => {
            *count >= 2 && positive_root_count(m, false).ok() == Some(*count)
        }
        DetectorKind::ThreePositiveRoots { count } => {
            *count >= 3 && positive_root_count(m, true).ok() == Some(*count)
        }
        DetectorKind::RootAboveOne { lower_bound } => root_above_one(m, lower_bound),
        DetectorKind::ConstantTermNotUnit => !m.coeff(0).abs().is_one(),
        DetectorKind::UfmShape => minimal_pair(&m.to_rat()).is_ok_and(|p| p.p_is_pure_power()),
        DetectorKind::GaussNonMonic => m.is_primitive() && m.leading().is_some_and(|l| l.abs() > Integer::one()),
    }
}
