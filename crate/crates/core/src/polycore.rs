//! Dense exact polynomials over the integers and the rationals.
//!
//! Coefficients are stored in ascending order of degree: index `i` holds the
//! coefficient of `x^i`. Both polynomial types trim trailing zeros on
//! construction, so the zero polynomial is the empty coefficient vector and
//! the last stored coefficient is always the leading one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision integer used for every coefficient.
pub type Integer = BigInt;
/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Formats a rational as `"num/den"`.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn int_to_rat(n: &Integer) -> Rational {
    Rational::from_integer(n.clone())
}

/// Least common multiple of the denominators of `qs` (1 for an empty slice).
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    qs.into_iter()
        .fold(Integer::one(), |acc, q| acc.lcm(q.denom()))
}

/// A polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

/// A polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Integer::one())
    }

    pub fn constant(c: Integer) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^degree`.
    pub fn monomial(c: Integer, degree: usize) -> Self {
        let mut coeffs = vec![Integer::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Integer::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides out `x^ord`.
    pub fn strip_x_power(&self) -> IntPoly {
        match self.ord() {
            Some(k) => IntPoly { coeffs: self.coeffs[k..].to_vec() },
            None => IntPoly::zero(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Integer::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + int_to_rat(c);
        }
        acc
    }

    pub fn eval_int(&self, x: &Integer) -> Integer {
        let mut acc = Integer::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(int_to_rat).collect())
    }

    /// Content (gcd of coefficients, always positive) and primitive part.
    ///
    /// The primitive part keeps the sign of the leading coefficient.
    pub fn content_primitive(&self) -> Result<(Integer, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self
            .coeffs
            .iter()
            .fold(Integer::zero(), |g, c| g.gcd(c));
        let primitive = IntPoly::new(self.coeffs.iter().map(|c| c / &content).collect());
        Ok((content, primitive))
    }

    pub fn is_primitive(&self) -> bool {
        self.content_primitive().is_ok_and(|(c, _)| c.is_one())
    }

    /// `m(x^k)`.
    pub fn substitute_power(&self, k: usize) -> Result<IntPoly> {
        if k == 0 {
            return Err(Error::InvalidArgument("power substitution needs k >= 1".into()));
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let mut coeffs = vec![Integer::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Ok(IntPoly::new(coeffs))
    }

    /// Exact quotient `self / divisor` when it exists in `Z[x]`.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.to_rat().div_rem(&divisor.to_rat()).ok()?;
        if !r.is_zero() {
            return None;
        }
        q.to_integer_poly()
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.exact_div(self).is_some()
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Rescaled to leading coefficient 1. The zero polynomial stays zero.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => RatPoly::zero(),
        }
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int_to_rat(&Integer::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &factor * d;
            }
            quot[i - dd] = factor;
        }
        rem.truncate(dd);
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `Some` when every coefficient is an integer.
    pub fn to_integer_poly(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    /// Clears denominators: returns `(s, p)` with `s > 0` rational and
    /// `p = s · self` a primitive integer polynomial.
    pub fn primitive_integer(&self) -> Result<(Rational, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let l = denominator_lcm(&self.coeffs);
        let scaled: Vec<Integer> = self
            .coeffs
            .iter()
            .map(|c| (c * int_to_rat(&l)).to_integer())
            .collect();
        let (content, primitive) = IntPoly::new(scaled).content_primitive()?;
        Ok((Rational::new(l, content), primitive))
    }
}

fn convolve<T>(a: &[T], b: &[T]) -> Vec<T>
where
    T: Zero + Clone,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

fn zip_with<T: Zero + Clone>(a: &[T], b: &[T], f: impl Fn(&T, &T) -> T) -> Vec<T> {
    let n = a.len().max(b.len());
    let zero = T::zero();
    (0..n)
        .map(|i| f(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

macro_rules! ring_ops {
    ($ty:ident) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                $ty::new(zip_with(&self.coeffs, &rhs.coeffs, |x, y| x + y))
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                $ty::new(zip_with(&self.coeffs, &rhs.coeffs, |x, y| x - y))
            }
        }
        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $ty::new(convolve(&self.coeffs, &rhs.coeffs))
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty { coeffs: self.coeffs.iter().map(|c| -c).collect() }
            }
        }
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}

ring_ops!(IntPoly);
ring_ops!(RatPoly);

/// The minimal pair `(p, q)` of a rational polynomial together with the
/// positive scale `r` such that `r·f = p − q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPair {
    pub scale: Rational,
    pub p: IntPoly,
    pub q: IntPoly,
}

impl MinimalPair {
    /// True when `p` is a single monomial `x^d`, the unique-factorization shape.
    pub fn p_is_pure_power(&self) -> bool {
        self.p.support().len() == 1 && self.p.leading().is_some_and(One::is_one)
    }
}

/// Splits `r·f` into its positive and negative parts, with `r > 0` chosen so
/// that `r·f` is a primitive integer polynomial.
pub fn minimal_pair(f: &RatPoly) -> Result<MinimalPair> {
    let (scale, g) = f.primitive_integer()?;
    let split = |keep: fn(&Integer) -> bool| {
        IntPoly::new(
            g.coeffs()
                .iter()
                .map(|c| if keep(c) { c.abs() } else { Integer::zero() })
                .collect(),
        )
    };
    Ok(MinimalPair {
        scale,
        p: split(Signed::is_positive),
        q: split(Signed::is_negative),
    })
}

/// Remainder of `target` modulo `m` over the rationals.
pub fn reduce_mod(target: &IntPoly, m: &IntPoly) -> Result<RatPoly> {
    if m.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(target.to_rat().div_rem(&m.to_rat())?.1)
}

fn write_terms<T: fmt::Display + Signed>(f: &mut fmt::Formatter<'_>, coeffs: &[T]) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let unit = mag.is_one();
        match i {
            0 => write!(f, "{mag}")?,
            1 if unit => f.write_str("x")?,
            1 => write!(f, "{mag}x")?,
            _ if unit => write!(f, "x^{i}")?,
            _ => write!(f, "{mag}x^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rational_string(c))?;
        }
        seq.end()
    }
}

/// Serde helpers for big numbers in the canonical string form.
pub mod serde_big {
    use super::*;

    pub fn integer<S: Serializer>(n: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_string(q))
    }
}

// ---------------------------------------------------------------------------
// Parsing

impl FromStr for IntPoly {
    type Err = Error;

    /// Accepts `"x^3 - 8x^2 + 4x - 2"` or an ascending list `"[-2, 4, -8, 1]"`.
    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let end = text.len();
        if chars.is_empty() {
            return Err(Error::Parse { position: 0, message: "empty input".into() });
        }
        if chars[0].1 == '[' {
            parse_list(&chars, end)
        } else {
            parse_expression(&chars, end)
        }
    }
}

struct Cursor<'a> {
    chars: &'a [(usize, char)],
    idx: usize,
    end: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn position(&self) -> usize {
        self.chars.get(self.idx).map_or(self.end, |&(p, _)| p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.position(), message: message.into() })
    }

    fn digits(&mut self) -> Option<Integer> {
        let start = self.idx;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.idx += 1;
        }
        if start == self.idx {
            return None;
        }
        let s: String = self.chars[start..self.idx].iter().map(|&(_, c)| c).collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn reject_fraction(&self) -> Result<()> {
        match self.peek() {
            Some('/') | Some('.') => self.error("non-integer coefficients are not supported"),
            _ => Ok(()),
        }
    }
}

fn parse_list(chars: &[(usize, char)], end: usize) -> Result<IntPoly> {
    let mut cur = Cursor { chars, idx: 1, end };
    let mut coeffs = Vec::new();
    if cur.peek() == Some(']') {
        cur.idx += 1;
    } else {
        loop {
            let negative = match cur.peek() {
                Some('-') => {
                    cur.idx += 1;
                    true
                }
                Some('+') => {
                    cur.idx += 1;
                    false
                }
                _ => false,
            };
            let Some(v) = cur.digits() else {
                return cur.error("expected an integer coefficient");
            };
            cur.reject_fraction()?;
            coeffs.push(if negative { -v } else { v });
            match cur.peek() {
                Some(',') => cur.idx += 1,
                Some(']') => {
                    cur.idx += 1;
                    break;
                }
                _ => return cur.error("expected ',' or ']'"),
            }
        }
    }
    if cur.idx != chars.len() {
        return cur.error("unexpected trailing input");
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_expression(chars: &[(usize, char)], end: usize) -> Result<IntPoly> {
    let mut cur = Cursor { chars, idx: 0, end };
    let mut coeffs: Vec<Integer> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some('-') => {
                cur.idx += 1;
                true
            }
            Some('+') if !first => {
                cur.idx += 1;
                false
            }
            _ if first => false,
            _ => return cur.error("expected '+' or '-'"),
        };
        first = false;
        let coefficient = cur.digits();
        cur.reject_fraction()?;
        let mut exponent = 0usize;
        if coefficient.is_some() && cur.peek() == Some('*') {
            cur.idx += 1;
            if cur.peek() != Some('x') {
                return cur.error("expected 'x' after '*'");
            }
        }
        if cur.peek() == Some('x') {
            cur.idx += 1;
            exponent = 1;
            if cur.peek() == Some('^') {
                cur.idx += 1;
                let Some(e) = cur.digits() else {
                    return cur.error("expected an exponent after '^'");
                };
                exponent = usize::try_from(e)
                    .ok()
                    .filter(|&e| e <= 100_000)
                    .map_or_else(|| cur.error("exponent too large"), Ok)?;
            }
        } else if coefficient.is_none() {
            return cur.error("expected a coefficient or 'x'");
        }
        let mut c = coefficient.unwrap_or_else(Integer::one);
        if negative {
            c = -c;
        }
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, Integer::zero());
        }
        coeffs[exponent] += c;
    }
    Ok(IntPoly::new(coeffs))
}
