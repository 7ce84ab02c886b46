//! Certifying that a primitive integer polynomial is irreducible over `Q`.
//!
//! Desk-scale only: Eisenstein's criterion, the rational-root test for
//! degrees up to three, and for higher degrees an exhaustive search over
//! integer factor candidates whose coefficients are bounded by Mignotte's
//! bound. When that bound exceeds the configured cap the search still runs,
//! but an empty result is reported as [`IrreducibilityVerdict::Unknown`].

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::polycore::{serde_big, IntPoly, Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IrreducibilityCertificate {
    /// Degree one.
    Linear,
    Eisenstein {
        #[serde(serialize_with = "serde_big::integer")]
        prime: Integer,
    },
    /// Degree two or three with no rational root.
    NoRationalRoot,
    /// No integer factor of degree `1..=deg/2` with coefficients inside
    /// Mignotte's bound.
    ExhaustedFactorSearch {
        #[serde(serialize_with = "serde_big::integer")]
        coefficient_bound: Integer,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IrreducibilityVerdict {
    Irreducible { certificate: IrreducibilityCertificate },
    Reducible { factor: IntPoly },
    Unknown { coefficient_cap: u64, candidates_tried: usize },
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible { .. })
    }

    /// Re-checks the verdict against `m` with plain arithmetic. `Unknown`
    /// verdicts claim nothing and always pass.
    pub fn recheck(&self, m: &IntPoly) -> bool {
        match self {
            IrreducibilityVerdict::Reducible { factor } => {
                let (Some(df), Some(dm)) = (factor.degree(), m.degree()) else {
                    return false;
                };
                1 <= df && df < dm && factor.divides(m)
            }
            IrreducibilityVerdict::Irreducible { certificate } => match certificate {
                IrreducibilityCertificate::Linear => m.degree() == Some(1),
                IrreducibilityCertificate::Eisenstein { prime } => eisenstein_holds(m, prime),
                IrreducibilityCertificate::NoRationalRoot => {
                    matches!(m.degree(), Some(2 | 3)) && rational_root(m).is_none()
                }
                IrreducibilityCertificate::ExhaustedFactorSearch { coefficient_bound } => {
                    let Some(deg) = m.degree() else { return false };
                    let bound_ok = (1..=deg / 2)
                        .all(|k| (0..=k).all(|j| mignotte_bound(m, k, j) <= *coefficient_bound));
                    let cap = coefficient_bound.to_u64().unwrap_or(u64::MAX);
                    bound_ok
                        && rational_root(m).is_none()
                        && search_factor(m, cap, usize::MAX).0.is_none()
                }
            },
            IrreducibilityVerdict::Unknown { .. } => true,
        }
    }
}

/// Positive divisors by trial division.
pub fn divisors(n: &Integer) -> Vec<Integer> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Integer::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn prime_factors(n: &Integer) -> Vec<Integer> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = Integer::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > Integer::one() {
        out.push(n);
    }
    out
}

fn eisenstein_holds(m: &IntPoly, p: &Integer) -> bool {
    let c = m.coeffs();
    let Some((lead, rest)) = c.split_last() else { return false };
    !rest.is_empty()
        && !lead.is_multiple_of(p)
        && rest.iter().all(|a| a.is_multiple_of(p))
        && !c[0].is_multiple_of(&(p * p))
}

/// A prime satisfying Eisenstein's criterion for `m`, if one divides the
/// constant term.
pub fn eisenstein_check(m: &IntPoly) -> Option<Integer> {
    let c0 = m.coeffs().first()?;
    if c0.is_zero() || m.is_constant() {
        return None;
    }
    // every candidate divides the gcd of the non-leading coefficients
    let g = m.coeffs()[..m.coeffs().len() - 1]
        .iter()
        .fold(Integer::zero(), |g, a| g.gcd(a));
    prime_factors(&g).into_iter().find(|p| eisenstein_holds(m, p))
}

/// A rational root `p/q` of `m`, if any.
pub fn rational_root(m: &IntPoly) -> Option<Rational> {
    let c0 = m.coeffs().first()?;
    if c0.is_zero() {
        return Some(Rational::zero());
    }
    let lead = m.leading()?;
    for q in divisors(lead) {
        for p in divisors(c0) {
            for candidate in [Rational::new(p.clone(), q.clone()), Rational::new(-p.clone(), q.clone())] {
                if m.eval(&candidate).is_zero() {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn binomial(n: usize, k: usize) -> Integer {
    (0..k).fold(Integer::one(), |acc, i| acc * Integer::from(n - i) / Integer::from(i + 1))
}

/// `C(k, j) · ⌈‖m‖₂⌉`, an upper bound on |coefficient j| of any degree-k
/// factor of `m`.
fn mignotte_bound(m: &IntPoly, k: usize, j: usize) -> Integer {
    let sumsq: Integer = m.coeffs().iter().map(|c| c * c).sum();
    let mut norm = sumsq.sqrt();
    if &norm * &norm < sumsq {
        norm += 1;
    }
    binomial(k, j) * norm
}

/// Exhaustive factor search of degrees `2..=deg/2` inside `[-cap, cap]`.
///
/// Returns the first factor found and the number of candidates tried;
/// stops early once `budget` candidates have been tested.
fn search_factor(m: &IntPoly, cap: u64, budget: usize) -> (Option<IntPoly>, usize) {
    let deg = m.degree().unwrap_or(0);
    let c = m.coeffs();
    let at_one = m.eval_int(&Integer::one());
    let at_minus_one = m.eval_int(&-Integer::one());
    let cap = Integer::from(cap);
    let mut tried = 0usize;
    for k in 2..=deg / 2 {
        for lead in divisors(m.leading().expect("nonconstant")) {
            for c0 in divisors(&c[0]) {
                for c0 in [-c0.clone(), c0] {
                    let bounds: Vec<Integer> = (1..k)
                        .map(|j| mignotte_bound(m, k, j).min(cap.clone()))
                        .collect();
                    let mut middle: Vec<Integer> = bounds.iter().map(|b| -b).collect();
                    loop {
                        tried += 1;
                        if tried > budget {
                            return (None, tried - 1);
                        }
                        let mut coeffs = Vec::with_capacity(k + 1);
                        coeffs.push(c0.clone());
                        coeffs.extend(middle.iter().cloned());
                        coeffs.push(lead.clone());
                        let g = IntPoly::new(coeffs);
                        let passes_one = at_one.is_zero() || at_one.is_multiple_of(&g.eval_int(&Integer::one()));
                        let passes_minus = at_minus_one.is_zero()
                            || at_minus_one.is_multiple_of(&g.eval_int(&-Integer::one()));
                        if passes_one && passes_minus && g.divides(m) {
                            return (Some(g), tried);
                        }
                        // odometer over the middle coefficients
                        let mut idx = 0;
                        loop {
                            if idx == middle.len() {
                                break;
                            }
                            if middle[idx] < bounds[idx] {
                                middle[idx] += 1;
                                break;
                            }
                            middle[idx] = -bounds[idx].clone();
                            idx += 1;
                        }
                        if idx == middle.len() {
                            break;
                        }
                    }
                }
            }
        }
    }
    (None, tried)
}

/// Decides irreducibility where the bounded methods allow it.
pub fn certify_irreducible(m: &IntPoly, caps: &Caps) -> Result<IrreducibilityVerdict> {
    let deg = m.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !m.is_primitive() {
        return Err(Error::Precondition("irreducibility certification expects a primitive polynomial".into()));
    }
    use IrreducibilityCertificate as C;
    use IrreducibilityVerdict as V;
    if deg == 1 {
        return Ok(V::Irreducible { certificate: C::Linear });
    }
    if let Some(prime) = eisenstein_check(m) {
        return Ok(V::Irreducible { certificate: C::Eisenstein { prime } });
    }
    if let Some(root) = rational_root(m) {
        let factor = IntPoly::new(vec![-root.numer().clone(), root.denom().clone()]);
        return Ok(V::Reducible { factor });
    }
    if deg <= 3 {
        return Ok(V::Irreducible { certificate: C::NoRationalRoot });
    }
    let (factor, tried) = search_factor(m, caps.factor_coeff_cap, caps.factor_candidates);
    if let Some(factor) = factor {
        return Ok(V::Reducible { factor });
    }
    let needed = (2..=deg / 2)
        .flat_map(|k| (1..k).map(move |j| (k, j)))
        .map(|(k, j)| mignotte_bound(m, k, j))
        .max()
        .unwrap_or_default();
    let exhaustive = tried < caps.factor_candidates && needed <= Integer::from(caps.factor_coeff_cap);
    if exhaustive {
        // the full bound covers the leading and constant positions as well
        let bound = (1..=deg / 2)
            .flat_map(|k| (0..=k).map(move |j| (k, j)))
            .map(|(k, j)| mignotte_bound(m, k, j))
            .max()
            .unwrap_or_default();
        Ok(V::Irreducible { certificate: C::ExhaustedFactorSearch { coefficient_bound: bound } })
    } else {
        Ok(V::Unknown { coefficient_cap: caps.factor_coeff_cap, candidates_tried: tried })
    }
}
