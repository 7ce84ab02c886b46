//! Brute-force ground truth: exact power-basis arithmetic in `Q[x]/(m)`
//! and enumeration of factorizations in `M_α` for monic `m`.
//!
//! Everything here is bounded by explicit caps and meant for cross-checking
//! the sign-pattern engine on small inputs, not for proofs.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::AlgebraicNumberSpec;
use crate::polycore::{reduce_mod, serde_big, IntPoly, Integer, Rational};
use crate::rootcount::RootInterval;

/// Relative width the value intervals are refined to.
const VALUE_PRECISION_BITS: u32 = 20;
/// Fixed-point scale of the pruning bounds.
const PRUNE_BITS: u32 = 40;

/// An element of `Q[α]` in power-basis coordinates with an enclosure of its
/// real value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidElement {
    #[serde(serialize_with = "serialize_coords")]
    pub coords: Vec<Rational>,
    #[serde(serialize_with = "serde_big::rational")]
    pub value_lo: Rational,
    #[serde(serialize_with = "serde_big::rational")]
    pub value_hi: Rational,
}

fn serialize_coords<S: serde::Serializer>(c: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(crate::polycore::rational_string))
}

/// A multiset of powers of `α`: power index to multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorizationMultiset {
    pub exponents: BTreeMap<usize, u64>,
}

impl FactorizationMultiset {
    pub fn total(&self) -> u64 {
        self.exponents.values().sum()
    }

    /// `Σ c_i x^i`.
    pub fn polynomial(&self) -> IntPoly {
        let deg = self.exponents.keys().max().copied().unwrap_or(0);
        let mut coeffs = vec![Integer::zero(); deg + 1];
        for (&i, &c) in &self.exponents {
            coeffs[i] = Integer::from(c);
        }
        IntPoly::new(coeffs)
    }

    /// `n` copies of `α^k`.
    pub fn trivial(k: usize, n: u64) -> Self {
        FactorizationMultiset { exponents: BTreeMap::from([(k, n)]) }
    }
}

fn monic_polynomial(spec: &AlgebraicNumberSpec) -> Result<&IntPoly> {
    let m = &spec.minimal_polynomial;
    if !m.is_monic() {
        return Err(Error::Precondition(format!("the oracle needs a monic minimal polynomial, got {m}")));
    }
    Ok(m)
}

fn root(spec: &AlgebraicNumberSpec) -> Result<&RootInterval> {
    spec.root_interval()
        .ok_or_else(|| Error::Precondition("the oracle needs a positive real root".into()))
}

/// Encloses `w(α)` for `α ∈ (lo, hi]`, `lo ≥ 0`.
fn enclose(w: &IntPoly, iv: &RootInterval) -> (Rational, Rational) {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for c in w.coeffs() {
        plus.push(if c.is_positive() { c.clone() } else { Integer::zero() });
        minus.push(if c.is_negative() { -c } else { Integer::zero() });
    }
    let (plus, minus) = (IntPoly::new(plus), IntPoly::new(minus));
    (plus.eval(&iv.lo) - minus.eval(&iv.hi), plus.eval(&iv.hi) - minus.eval(&iv.lo))
}

/// Power-basis coordinates of `w(α)` and a value enclosure of relative
/// width below `2^-20`.
pub fn reduce_element(w: &IntPoly, spec: &AlgebraicNumberSpec) -> Result<MonoidElement> {
    let m = &spec.minimal_polynomial;
    let iv = root(spec)?;
    let d = spec.degree();
    let rem = reduce_mod(w, m)?;
    let coords = (0..d).map(|i| rem.coeff(i)).collect();
    let mut iv = iv.clone();
    let scale = Rational::from_integer(Integer::one() << VALUE_PRECISION_BITS);
    let (mut lo, mut hi) = enclose(w, &iv);
    for _ in 0..512 {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if (&hi - &lo) * &scale <= mid.abs() || hi == lo {
            break;
        }
        iv = iv.bisect();
        (lo, hi) = enclose(w, &iv);
    }
    Ok(MonoidElement { coords, value_lo: lo, value_hi: hi })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleCaps {
    pub max_power: usize,
    pub max_total: u64,
    /// Value-based pruning; off only to test that it never loses anything.
    pub prune: bool,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { max_power: 8, max_total: 20, prune: true }
    }
}

struct Enumerator {
    /// Non-basis powers, largest value first: (index, coords, value lower bound).
    powers: Vec<(usize, Vec<i128>, i128)>,
    max_total: u64,
    limit: i128,
    prune: bool,
    out: Vec<FactorizationMultiset>,
}

impl Enumerator {
    fn dfs(&mut self, j: usize, residual: &mut Vec<i128>, used: u64, low: i128, chosen: &mut Vec<(usize, u64)>) {
        if j == self.powers.len() {
            if residual.iter().any(|&r| r < 0) {
                return;
            }
            let basis: i128 = residual.iter().sum();
            if used as i128 + basis > self.max_total as i128 {
                return;
            }
            let mut exponents = BTreeMap::new();
            for (i, &r) in residual.iter().enumerate() {
                if r > 0 {
                    exponents.insert(i, r as u64);
                }
            }
            for &(i, c) in chosen.iter() {
                if c > 0 {
                    exponents.insert(i, c);
                }
            }
            self.out.push(FactorizationMultiset { exponents });
            return;
        }
        let (index, coords, value) = self.powers[j].clone();
        let mut c = 0u64;
        let mut low_c = low;
        loop {
            chosen.push((index, c));
            self.dfs(j + 1, residual, used + c, low_c, chosen);
            chosen.pop();
            c += 1;
            low_c = low_c.saturating_add(value);
            if used + c > self.max_total || (self.prune && low_c > self.limit) {
                break;
            }
            for (r, v) in residual.iter_mut().zip(&coords) {
                *r -= v;
            }
        }
        // undo the subtractions made for c - 1 extra copies
        for (r, v) in residual.iter_mut().zip(&coords) {
            *r += v * (c as i128 - 1);
        }
    }
}

fn to_i128(q: &Rational) -> Result<i128> {
    if !q.is_integer() {
        return Err(Error::Precondition("non-integral power-basis coordinate".into()));
    }
    q.to_integer().to_i128().ok_or_else(|| Error::Unsupported("coordinates exceed the oracle's range".into()))
}

fn fixed_point_floor(q: &Rational) -> i128 {
    let scaled = q * Rational::from_integer(Integer::one() << PRUNE_BITS);
    scaled.floor().to_integer().to_i128().unwrap_or(i128::MAX)
}

fn fixed_point_ceil(q: &Rational) -> i128 {
    let scaled = q * Rational::from_integer(Integer::one() << PRUNE_BITS);
    scaled.ceil().to_integer().to_i128().unwrap_or(i128::MAX)
}

/// Every multiset of powers `α^0..α^{max_power}` with at most `max_total`
/// elements summing exactly to `target`, canonically sorted.
pub fn enumerate_factorizations(
    target: &MonoidElement,
    spec: &AlgebraicNumberSpec,
    caps: &OracleCaps,
) -> Result<Vec<FactorizationMultiset>> {
    monic_polynomial(spec)?;
    let d = spec.degree();
    let mut powers = Vec::new();
    for i in d..=caps.max_power {
        let e = reduce_element(&IntPoly::monomial(Integer::one(), i), spec)?;
        let coords = e.coords.iter().map(to_i128).collect::<Result<Vec<_>>>()?;
        powers.push((i, coords, fixed_point_floor(&e.value_lo.clone().max(Rational::zero())), e.value_lo));
    }
    // values of distinct powers differ, so lower bounds at this precision order them
    powers.sort_by(|a, b| b.3.cmp(&a.3).then(a.0.cmp(&b.0)));
    let mut residual = target.coords.iter().map(to_i128).collect::<Result<Vec<_>>>()?;
    let mut e = Enumerator {
        powers: powers.into_iter().map(|(i, c, v, _)| (i, c, v)).collect(),
        max_total: caps.max_total,
        limit: fixed_point_ceil(&target.value_hi),
        prune: caps.prune,
        out: Vec::new(),
    };
    e.dfs(0, &mut residual, 0, 0, &mut Vec::new());
    let mut out = e.out;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StrongVerdict {
    /// Only the trivial factorization of `n·α^k` for `n ≤ n_max`; a bounded
    /// observation, not a proof.
    StrongUpTo { n_max: u64 },
    NonStrong { n: u64, factorization: FactorizationMultiset },
}

/// Looks for a nontrivial factorization of `n·α^k`, `n = 1..=n_max`.
pub fn strong_check_oracle(
    k: usize,
    spec: &AlgebraicNumberSpec,
    n_max: u64,
    caps: &OracleCaps,
) -> Result<StrongVerdict> {
    monic_polynomial(spec)?;
    for n in 1..=n_max {
        let w = IntPoly::monomial(Integer::from(n), k);
        let target = reduce_element(&w, spec)?;
        let trivial = FactorizationMultiset::trivial(k, n);
        if let Some(f) = enumerate_factorizations(&target, spec, caps)?.into_iter().find(|f| *f != trivial) {
            return Ok(StrongVerdict::NonStrong { n, factorization: f });
        }
    }
    Ok(StrongVerdict::StrongUpTo { n_max })
}

/// `Σ c_i x^i − n·x^k`, the relation a nontrivial factorization encodes.
pub fn relation_polynomial(k: usize, n: u64, f: &FactorizationMultiset) -> IntPoly {
    &f.polynomial() - &IntPoly::monomial(Integer::from(n), k)
}
