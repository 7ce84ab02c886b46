//! Exact real-root counting.
//!
//! Sign variations of coefficient sequences, Sturm chains evaluated at exact
//! rationals (plus the symbolic points `0⁺` and `+∞`), squarefree
//! decomposition for multiplicities, rational root isolation by bisection,
//! and a bounded search for multipliers that make Descartes' bound exact.

use num_bigint::Sign;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{int_to_rat, serde_big, IntPoly, Integer, Rational};

fn sign_of(n: &Integer) -> i8 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn sign_of_rat(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Number of sign changes in a sequence, zeros skipped.
pub fn count_variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.into_iter().filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Sign changes in the coefficient sequence of `f`.
pub fn sign_variations(f: &IntPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(count_variations(f.coeffs().iter().map(sign_of)))
}

/// A point at which a Sturm chain can be evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point {
    /// Just to the right of zero.
    ZeroPlus,
    At(Rational),
    PlusInfinity,
}

/// Signed remainder sequence `f, f′, −rem(f, f′), …`.
///
/// Members are rescaled by positive constants to primitive integer
/// polynomials; this does not change any sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(f: &IntPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let normalize = |p: &IntPoly| p.content_primitive().expect("nonzero").1;
        let mut chain = vec![normalize(f)];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(normalize(&d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].to_rat().div_rem(&chain[n - 1].to_rat())?;
            if r.is_zero() {
                break;
            }
            let (_, prim) = (-r).primitive_integer()?;
            chain.push(prim);
        }
        Ok(SturmChain { chain })
    }

    pub fn members(&self) -> &[IntPoly] {
        &self.chain
    }

    fn sign_at(p: &IntPoly, point: &Point) -> i8 {
        match point {
            Point::ZeroPlus => p.coeffs().iter().find(|c| !c.is_zero()).map_or(0, sign_of),
            Point::PlusInfinity => p.leading().map_or(0, sign_of),
            Point::At(x) => sign_of_rat(&p.eval(x)),
        }
    }

    pub fn variations_at(&self, point: &Point) -> usize {
        count_variations(self.chain.iter().map(|p| Self::sign_at(p, point)))
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_between(&self, a: &Point, b: &Point) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// True when `x` is a root of some chain member.
    pub fn touches(&self, x: &Rational) -> bool {
        self.chain.iter().any(|p| p.eval(x).is_zero())
    }
}

/// Yun's squarefree decomposition: pairs `(a_i, i)` with `f = c·∏ a_i^i`,
/// each `a_i` a nonconstant primitive integer polynomial.
pub fn squarefree_decomposition(f: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let fr = f.to_rat();
    let df = fr.derivative();
    let a0 = fr.gcd(&df);
    let mut b = fr.div_rem(&a0)?.0;
    let mut c = df.div_rem(&a0)?.0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a)?.0;
        c = d.div_rem(&a)?.0;
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_integer()?.1, i));
        }
        i += 1;
    }
    Ok(out)
}

/// `f / gcd(f, f′)` as a primitive integer polynomial.
pub fn squarefree_part(f: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fr = f.to_rat();
    let g = fr.gcd(&fr.derivative());
    let (q, _) = fr.div_rem(&g)?;
    Ok(q.primitive_integer()?.1)
}

fn distinct_positive(f: &IntPoly) -> Result<usize> {
    if f.is_constant() {
        return Ok(0);
    }
    Ok(SturmChain::new(f)?.count_between(&Point::ZeroPlus, &Point::PlusInfinity))
}

/// Roots of `f` in `(0, ∞)`, distinct or counted with multiplicity.
pub fn positive_root_count(f: &IntPoly, with_multiplicity: bool) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.strip_x_power();
    if !with_multiplicity {
        return distinct_positive(&g);
    }
    squarefree_decomposition(&g)?
        .iter()
        .try_fold(0, |acc, (a, i)| Ok(acc + i * distinct_positive(a)?))
}

/// An interval `(lo, hi]` holding exactly one real root of a squarefree
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "serde_big::rational")]
    pub lo: Rational,
    #[serde(serialize_with = "serde_big::rational")]
    pub hi: Rational,
    pub polynomial: IntPoly,
}

impl RootInterval {
    fn chain(&self) -> SturmChain {
        SturmChain::new(&self.polynomial).expect("nonzero polynomial")
    }

    /// Re-derives the isolation claim from a fresh Sturm count.
    pub fn isolates_exactly_one(&self) -> bool {
        self.lo < self.hi
            && self
                .chain()
                .count_between(&Point::At(self.lo.clone()), &Point::At(self.hi.clone()))
                == 1
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int_to_rat(&Integer::from(2))
    }

    /// Halves the interval, keeping the half that holds the root.
    pub fn bisect(&self) -> RootInterval {
        self.bisect_with(&self.chain())
    }

    fn bisect_with(&self, chain: &SturmChain) -> RootInterval {
        let mid = self.midpoint();
        let left = chain.count_between(&Point::At(self.lo.clone()), &Point::At(mid.clone()));
        if left == 1 {
            RootInterval { lo: self.lo.clone(), hi: mid, polynomial: self.polynomial.clone() }
        } else {
            RootInterval { lo: mid, hi: self.hi.clone(), polynomial: self.polynomial.clone() }
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine_to(&self, width: &Rational) -> RootInterval {
        let chain = self.chain();
        let mut cur = self.clone();
        while cur.width() > *width {
            cur = cur.bisect_with(&chain);
        }
        cur
    }
}

/// Upper bound on the absolute value of every root (Cauchy).
fn cauchy_bound(f: &IntPoly) -> Integer {
    let lead = f.leading().expect("nonzero").abs();
    let max = f.coeffs()[..f.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Integer::one() + max.div_ceil(&lead)
}

/// Disjoint isolating intervals for the distinct positive roots of `f`,
/// ordered left to right.
pub fn isolate_positive_roots(f: &IntPoly) -> Result<Vec<RootInterval>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = squarefree_part(&f.strip_x_power())?;
    if g.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&g)?;
    let mut out = Vec::new();
    let mut stack = vec![(Rational::zero(), int_to_rat(&cauchy_bound(&g)))];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_between(&Point::At(lo.clone()), &Point::At(hi.clone()));
        match n {
            0 => {}
            1 => out.push(RootInterval { lo, hi, polynomial: g.clone() }),
            _ => {
                let mid = (&lo + &hi) / int_to_rat(&Integer::from(2));
                // right half first so the left half pops first
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    Ok(out)
}

fn primitive_content_is_one(coeffs: &[i64]) -> bool {
    coeffs.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1
}

/// Searches for `μ ≠ 0` with `var(μ·f)` equal to the number of positive
/// roots of `f` counted with multiplicity.
///
/// Candidates are primitive with positive leading coefficient and nonzero
/// constant term, ordered by degree, then by height (largest absolute
/// coefficient), then lexicographically from the constant term up. `None`
/// means nothing was found within the caps, not that no multiplier exists.
pub fn curtiss_multiplier_search(f: &IntPoly, deg_cap: usize, coeff_cap: i64) -> Result<Option<IntPoly>> {
    let target = positive_root_count(f, true)?;
    for degree in 0..=deg_cap {
        for height in 1..=coeff_cap.max(0) {
            let mut found = None;
            enumerate_height(degree, height, &mut |mu| {
                let mu = IntPoly::from_i64s(mu);
                let product = &mu * f;
                if sign_variations(&product).ok() == Some(target) {
                    found = Some(mu);
                    true
                } else {
                    false
                }
            });
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Visits coefficient vectors of length `degree + 1` with maximum absolute
/// value exactly `height`, lexicographic from index 0, positive leading
/// entry, nonzero constant entry, content one. Stops when `visit` says so.
fn enumerate_height(degree: usize, height: i64, visit: &mut dyn FnMut(&[i64]) -> bool) {
    fn rec(
        idx: usize,
        v: &mut Vec<i64>,
        degree: usize,
        height: i64,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        if idx > degree {
            let hits_height = v.iter().any(|c| c.abs() == height);
            return hits_height && primitive_content_is_one(v) && visit(v);
        }
        let lo = if idx == degree { 1 } else { -height };
        for c in lo..=height {
            if idx == 0 && c == 0 {
                continue;
            }
            v.push(c);
            let stop = rec(idx + 1, v, degree, height, visit);
            v.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(0, &mut Vec::with_capacity(degree + 1), degree, height, visit);
}
