//! Linear systems over `Q` stored as primitive integer rows.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};


use crate::polycore::{denominator_lcm, Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Le,
    Eq,
}

/// Comparison used when building rows; `Ge` is stored as a negated `Le`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x rel rhs` with primitive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Row {
    pub coeffs: Vec<Integer>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Row {
    fn build(coeffs: &[Rational], cmp: Cmp, rhs: &Rational) -> Option<Row> {
        let lcm = Rational::from_integer(denominator_lcm(coeffs));
        let ints: Vec<Integer> = coeffs.iter().map(|q| (q * &lcm).to_integer()).collect();
        let g = ints.iter().fold(Integer::zero(), |g, a| g.gcd(a));
        if g.is_zero() {
            return None;
        }
        let mut scale = lcm / Rational::from_integer(g.clone());
        let mut rel = Relation::Le;
        match cmp {
            Cmp::Le => {}
            Cmp::Ge => scale = -scale,
            Cmp::Eq => {
                rel = Relation::Eq;
                if ints.iter().find(|a| !a.is_zero()).is_some_and(Signed::is_negative) {
                    scale = -scale;
                }
            }
        }
        let sign_g = if scale.is_negative() { -g } else { g };
        Some(Row {
            coeffs: ints.into_iter().map(|a| a / &sign_g).collect(),
            rel,
            rhs: rhs * scale,
        })
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .map(|(a, v)| Rational::from_integer(a.clone()) * v)
            .sum()
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.eval(x);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A conjunction of rows over `vars` unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    vars: usize,
    rows: Vec<Row>,
    contradiction: bool,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem { vars, rows: Vec::new(), contradiction: false }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// True when a row without variables fails, so the system is infeasible
    /// on its face.
    pub fn has_contradiction(&self) -> bool {
        self.contradiction
    }

    /// Adds `coeffs · x cmp rhs`.
    pub fn push(&mut self, coeffs: &[Rational], cmp: Cmp, rhs: &Rational) {
        assert_eq!(coeffs.len(), self.vars, "row width");
        match Row::build(coeffs, cmp, rhs) {
            Some(row) => self.rows.push(row),
            None => {
                let holds = match cmp {
                    Cmp::Le => !rhs.is_negative(),
                    Cmp::Ge => !rhs.is_positive(),
                    Cmp::Eq => rhs.is_zero(),
                };
                if !holds {
                    self.contradiction = true;
                }
            }
        }
    }

    /// Adds a row that is already normalized.
    pub(crate) fn push_row(&mut self, row: Row) {
        let cmp = if row.rel == Relation::Eq { Cmp::Eq } else { Cmp::Le };
        let coeffs: Vec<Rational> = row.coeffs.into_iter().map(Rational::from_integer).collect();
        self.push(&coeffs, cmp, &row.rhs);
    }

    /// Adds `-bound ≤ x_i ≤ bound` for every unknown.
    pub fn with_box(&self, bound: &Integer) -> LinearSystem {
        let mut out = self.clone();
        for i in 0..self.vars {
            let mut e = vec![Integer::zero(); self.vars];
            e[i] = Integer::one();
            let b = Rational::from_integer(bound.clone());
            out.push_row(Row { coeffs: e.clone(), rel: Relation::Le, rhs: b.clone() });
            e[i] = -Integer::one();
            out.push_row(Row { coeffs: e, rel: Relation::Le, rhs: b });
        }
        out.canonicalize();
        out
    }

    /// Sorts rows, drops duplicates and keeps the tightest `Le` per
    /// coefficient vector.
    pub fn canonicalize(&mut self) {
        let mut le: BTreeMap<Vec<Integer>, Rational> = BTreeMap::new();
        let mut eq: BTreeMap<Vec<Integer>, Rational> = BTreeMap::new();
        for row in self.rows.drain(..) {
            match row.rel {
                Relation::Le => {
                    le.entry(row.coeffs)
                        .and_modify(|r| {
                            if row.rhs < *r {
                                *r = row.rhs.clone()
                            }
                        })
                        .or_insert(row.rhs);
                }
                Relation::Eq => {
                    if let Some(prev) = eq.get(&row.coeffs) {
                        if *prev != row.rhs {
                            self.contradiction = true;
                        }
                    } else {
                        eq.insert(row.coeffs, row.rhs);
                    }
                }
            }
        }
        self.rows = eq
            .into_iter()
            .map(|(coeffs, rhs)| Row { coeffs, rel: Relation::Eq, rhs })
            .chain(le.into_iter().map(|(coeffs, rhs)| Row { coeffs, rel: Relation::Le, rhs }))
            .collect();
    }

    /// Substitutes `x_0 = value` and drops the first unknown.
    pub fn fix_first(&self, value: &Rational) -> LinearSystem {
        self.fix_prefix(std::slice::from_ref(value))
    }

    /// Substitutes the leading unknowns with `values`.
    pub fn fix_prefix(&self, values: &[Rational]) -> LinearSystem {
        let k = values.len();
        let mut out = LinearSystem::new(self.vars - k);
        out.contradiction = self.contradiction;
        for row in &self.rows {
            let fixed: Rational = row.coeffs[..k]
                .iter()
                .zip(values)
                .map(|(a, v)| Rational::from_integer(a.clone()) * v)
                .sum();
            let rest: Vec<Rational> = row.coeffs[k..].iter().cloned().map(Rational::from_integer).collect();
            let rhs = &row.rhs - fixed;
            let cmp = if row.rel == Relation::Eq { Cmp::Eq } else { Cmp::Le };
            out.push(&rest, cmp, &rhs);
        }
        out.canonicalize();
        out
    }

    /// Moves unknown `var` to position 0, keeping the others in order.
    pub fn with_first(&self, var: usize) -> LinearSystem {
        let mut out = self.clone();
        for row in &mut out.rows {
            let a = row.coeffs.remove(var);
            row.coeffs.insert(0, a);
        }
        out
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        !self.contradiction && self.rows.iter().all(|r| r.satisfied_by(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rows_are_primitive_and_deduplicated() {
        let mut s = LinearSystem::new(2);
        s.push(&[q(2), q(4)], Cmp::Le, &q(6));
        s.push(&[q(1), q(2)], Cmp::Le, &q(1));
        s.push(&[Rational::new(1.into(), 2.into()), q(1)], Cmp::Le, &q(5));
        s.canonicalize();
        assert_eq!(s.rows().len(), 1);
        assert_eq!(s.rows()[0].rhs, q(1));
    }

    #[test]
    fn ge_rows_are_negated() {
        let mut s = LinearSystem::new(1);
        s.push(&[q(3)], Cmp::Ge, &q(2));
        assert!(s.satisfied_by(&[q(1)]));
        assert!(!s.satisfied_by(&[q(0)]));
    }

    #[test]
    fn fractional_rhs_is_kept_exact() {
        let mut s = LinearSystem::new(1);
        s.push(&[q(2)], Cmp::Le, &q(1));
        assert!(s.satisfied_by(&[Rational::new(1.into(), 2.into())]));
        assert!(!s.satisfied_by(&[q(1)]));
    }

    #[test]
    fn fixing_detects_contradictions() {
        let mut s = LinearSystem::new(2);
        s.push(&[q(1), q(0)], Cmp::Eq, &q(3));
        assert!(s.fix_first(&q(2)).has_contradiction());
        assert!(!s.fix_first(&q(3)).has_contradiction());
    }
}
