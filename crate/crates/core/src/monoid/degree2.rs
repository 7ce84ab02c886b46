//! The complete answer for quadratic minimal polynomials.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{Certificate, Count, InfiniteReason, PairResult};
use crate::error::{Error, Result};
use crate::polycore::{IntPoly, Integer};

/// Sign pattern of `ax² ± bx ± c` with `a, b, c > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree2Form {
    /// `ax² + bx + c`
    AllPositive,
    /// `ax² + bx − c`
    PosPosNeg,
    /// `ax² − bx + c`
    PosNegPos,
    /// `ax² − bx − c`
    PosNegNeg,
}

impl Degree2Form {
    pub fn case(self) -> u8 {
        match self {
            Degree2Form::AllPositive => 1,
            Degree2Form::PosPosNeg => 2,
            Degree2Form::PosNegPos => 3,
            Degree2Form::PosNegNeg => 4,
        }
    }

    pub fn polynomial(self, a: &Integer, b: &Integer, c: &Integer) -> IntPoly {
        let (sb, sc) = match self {
            Degree2Form::AllPositive => (1, 1),
            Degree2Form::PosPosNeg => (1, -1),
            Degree2Form::PosNegPos => (-1, 1),
            Degree2Form::PosNegNeg => (-1, -1),
        };
        IntPoly::new(vec![c * Integer::from(sc), b * Integer::from(sb), a.clone()])
    }

    pub const ALL: [Degree2Form; 4] =
        [Degree2Form::AllPositive, Degree2Form::PosPosNeg, Degree2Form::PosNegPos, Degree2Form::PosNegNeg];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree2Subcase {
    /// `c = 1`
    UnitConstant,
    /// `c > 1`
    NonUnitConstant,
    /// `a = 1`
    Monic,
    /// `a > 1`
    NonMonic,
}

/// Reads off `(a, b, c, form)` from a quadratic with positive leading
/// coefficient and no zero coefficient.
pub fn split_degree2(m: &IntPoly) -> Option<(Integer, Integer, Integer, Degree2Form)> {
    if m.degree() != Some(2) || m.coeffs().iter().any(Zero::is_zero) || !m.coeff(2).is_positive() {
        return None;
    }
    let (c, b, a) = (m.coeff(0), m.coeff(1), m.coeff(2));
    let form = match (b.is_positive(), c.is_positive()) {
        (true, true) => Degree2Form::AllPositive,
        (true, false) => Degree2Form::PosPosNeg,
        (false, true) => Degree2Form::PosNegPos,
        (false, false) => Degree2Form::PosNegNeg,
    };
    Some((a, b.abs(), c.abs(), form))
}

fn subcase(form: Degree2Form, a: &Integer, c: &Integer) -> Option<Degree2Subcase> {
    match form {
        Degree2Form::AllPositive | Degree2Form::PosNegPos => None,
        Degree2Form::PosPosNeg if c.is_one() => Some(Degree2Subcase::UnitConstant),
        Degree2Form::PosPosNeg => Some(Degree2Subcase::NonUnitConstant),
        Degree2Form::PosNegNeg if a.is_one() => Some(Degree2Subcase::Monic),
        Degree2Form::PosNegNeg => Some(Degree2Subcase::NonMonic),
    }
}

/// Case number and subcase of `m`, when `m` is a quadratic of one of the
/// four forms.
pub fn degree2_form(m: &IntPoly) -> Option<(u8, Option<Degree2Subcase>)> {
    let (a, _, c, form) = split_degree2(m)?;
    Some((form.case(), subcase(form, &a, &c)))
}

fn is_square(n: &Integer) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// `(|S|, |A|)` for `ax² ± bx ± c` in the given form.
pub fn classify_degree2(a: &Integer, b: &Integer, c: &Integer, form: Degree2Form) -> Result<PairResult> {
    if !(a.is_positive() && b.is_positive() && c.is_positive()) {
        return Err(Error::Precondition("a, b and c must be positive".into()));
    }
    if !a.gcd(b).gcd(c).is_one() {
        return Err(Error::Precondition(format!("{} is not primitive", form.polynomial(a, b, c))));
    }
    let four_ac = Integer::from(4) * a * c;
    let disc = match form {
        Degree2Form::AllPositive | Degree2Form::PosNegPos => b * b - &four_ac,
        Degree2Form::PosPosNeg | Degree2Form::PosNegNeg => b * b + &four_ac,
    };
    if is_square(&disc) {
        return Err(Error::Reducible { factor: rational_factor(a, b, c, form, &disc) });
    }
    if form == Degree2Form::PosNegPos && disc.is_negative() {
        return Err(Error::Precondition(format!(
            "{} has no real root; its discriminant is negative",
            form.polynomial(a, b, c)
        )));
    }
    let sub = subcase(form, a, c);
    let infinite = || Count::Infinite(InfiniteReason::Degree2Classification);
    let (strong, atoms) = match (form, sub) {
        (Degree2Form::AllPositive, _) => (Count::Finite(0), Count::Finite(0)),
        (Degree2Form::PosPosNeg, Some(Degree2Subcase::UnitConstant)) => (Count::Finite(0), Count::Finite(0)),
        (Degree2Form::PosPosNeg, _) => (Count::Finite(0), infinite()),
        (Degree2Form::PosNegPos, _) => (Count::Finite(1), infinite()),
        (Degree2Form::PosNegNeg, Some(Degree2Subcase::Monic)) => (Count::Finite(2), Count::Finite(2)),
        (Degree2Form::PosNegNeg, _) => (Count::Finite(2), infinite()),
    };
    Ok(PairResult { strong, atoms, certificates: vec![Certificate::Degree2Case { case: form.case(), subcase: sub }] })
}

/// A linear factor of a quadratic whose discriminant is a square.
fn rational_factor(a: &Integer, b: &Integer, c: &Integer, form: Degree2Form, disc: &Integer) -> IntPoly {
    let m = form.polynomial(a, b, c);
    let r = disc.sqrt();
    // roots (-B ± r) / 2A with B the signed linear coefficient
    let big_b = m.coeff(1);
    let num = -big_b + r;
    let den = Integer::from(2) * a;
    let g = num.gcd(&den);
    let (p, q) = if g.is_zero() { (Integer::zero(), Integer::one()) } else { (&num / &g, &den / &g) };
    let (p, q) = if q.is_negative() { (-p, -q) } else { (p, q) };
    IntPoly::new(vec![-p, q])
}
