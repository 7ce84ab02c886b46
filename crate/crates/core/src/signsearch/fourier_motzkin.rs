//! Exact Fourier–Motzkin elimination.

use num_traits::{Signed, Zero};

use super::linear::{Cmp, LinearSystem, Relation, Row};
use super::{Interval, LexOutcome};
use crate::polycore::{Integer, Rational};

/// Row budget per elimination stage before giving up on this engine.
pub const ROW_CAP: usize = 4_000;

/// `stages[j]` is the projection of the system onto unknowns `0..j`.
struct Projection {
    stages: Vec<LinearSystem>,
}

fn combine(a: &Row, ca: &Integer, b: &Row, cb: &Integer, width: usize) -> (Vec<Rational>, Rational) {
    let coeffs = (0..width)
        .map(|i| Rational::from_integer(&a.coeffs[i] * ca + &b.coeffs[i] * cb))
        .collect();
    let rhs = &a.rhs * Rational::from_integer(ca.clone()) + &b.rhs * Rational::from_integer(cb.clone());
    (coeffs, rhs)
}

/// Eliminates the last unknown. `None` when the row budget is exceeded.
fn eliminate_last(sys: &LinearSystem) -> Option<LinearSystem> {
    let j = sys.vars() - 1;
    let mut out = LinearSystem::new(j);
    if sys.has_contradiction() {
        out.push(&vec![Rational::zero(); j], Cmp::Eq, &Rational::from_integer(1.into()));
        return Some(out);
    }
    let cmp_of = |r: &Row| if r.rel == Relation::Eq { Cmp::Eq } else { Cmp::Le };
    let pivot = sys.rows().iter().find(|r| r.rel == Relation::Eq && !r.coeffs[j].is_zero());
    if let Some(e) = pivot {
        let ej = &e.coeffs[j];
        for r in sys.rows() {
            if std::ptr::eq(r, e) {
                continue;
            }
            let rj = &r.coeffs[j];
            if rj.is_zero() {
                let (c, rhs) = combine(r, &1.into(), e, &0.into(), j);
                out.push(&c, cmp_of(r), &rhs);
                continue;
            }
            let sign: Integer = if ej.is_negative() { (-1).into() } else { 1.into() };
            let (c, rhs) = combine(r, &ej.abs(), e, &-(sign * rj), j);
            out.push(&c, cmp_of(r), &rhs);
        }
    } else {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for r in sys.rows() {
            let rj = &r.coeffs[j];
            if rj.is_zero() {
                let (c, rhs) = combine(r, &1.into(), r, &0.into(), j);
                out.push(&c, cmp_of(r), &rhs);
            } else if rj.is_positive() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
        if out.rows().len() + pos.len() * neg.len() > ROW_CAP * 4 {
            return None;
        }
        for p in &pos {
            for n in &neg {
                let (c, rhs) = combine(p, &-n.coeffs[j].clone(), n, &p.coeffs[j], j);
                out.push(&c, Cmp::Le, &rhs);
            }
        }
    }
    out.canonicalize();
    (out.rows().len() <= ROW_CAP).then_some(out)
}

impl Projection {
    fn new(sys: &LinearSystem) -> Option<Projection> {
        let n = sys.vars();
        let mut stages = vec![LinearSystem::new(0); n + 1];
        let mut top = sys.clone();
        top.canonicalize();
        stages[n] = top;
        for j in (1..=n).rev() {
            stages[j - 1] = eliminate_last(&stages[j])?;
        }
        Some(Projection { stages })
    }

    fn feasible(&self) -> bool {
        !self.stages[0].has_contradiction()
    }

    /// The interval of `x_j` allowed by stage `j + 1` after fixing `x_0..x_j`.
    fn interval(&self, j: usize, prefix: &[Rational]) -> Interval {
        let stage = &self.stages[j + 1];
        let mut iv = Interval { lo: None, hi: None };
        for r in stage.rows() {
            let a = &r.coeffs[j];
            if a.is_zero() {
                continue;
            }
            let fixed: Rational = r.coeffs[..j]
                .iter()
                .zip(prefix)
                .map(|(c, v)| Rational::from_integer(c.clone()) * v)
                .sum();
            let bound = (&r.rhs - fixed) / Rational::from_integer(a.clone());
            let upper = r.rel == Relation::Eq || a.is_positive();
            let lower = r.rel == Relation::Eq || a.is_negative();
            if upper && iv.hi.as_ref().is_none_or(|h| bound < *h) {
                iv.hi = Some(bound.clone());
            }
            if lower && iv.lo.as_ref().is_none_or(|l| bound > *l) {
                iv.lo = Some(bound);
            }
        }
        iv
    }
}

/// Lexicographically smallest solution, or `None` when elimination blows
/// past [`ROW_CAP`].
pub fn lexmin(sys: &LinearSystem) -> Option<LexOutcome> {
    let proj = Projection::new(sys)?;
    if !proj.feasible() {
        return Some(LexOutcome::Infeasible);
    }
    let mut x = Vec::with_capacity(sys.vars());
    for j in 0..sys.vars() {
        match proj.interval(j, &x).lo {
            Some(lo) => x.push(lo),
            None => return Some(LexOutcome::Unbounded),
        }
    }
    Some(LexOutcome::Point(x))
}

/// Range of `x_0` over the feasible set; `None` on row blow-up, and
/// `Some(None)` when infeasible.
pub fn range_first(sys: &LinearSystem) -> Option<Option<Interval>> {
    if sys.vars() == 0 {
        return Some((!sys.has_contradiction()).then_some(Interval { lo: None, hi: None }));
    }
    let proj = Projection::new(sys)?;
    if !proj.feasible() {
        return Some(None);
    }
    Some(Some(proj.interval(0, &[])))
}
