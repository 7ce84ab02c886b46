//! Dense two-phase simplex over exact rationals, Bland's rule throughout.

use num_traits::{One, Signed, Zero};

use super::linear::{LinearSystem, Relation};
use super::{Interval, LexOutcome};
use crate::polycore::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in &mut self.rows[r] {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs to optimality over columns `< allowed`. Returns false if unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj = cost.to_vec();
        obj.resize(self.cols + 1, Rational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost.get(self.basis[i]).cloned().unwrap_or_default();
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                *o -= cb * v;
            }
        }
        self.obj = obj;
    }
}

/// Minimizes `objective · x` subject to `sys`, all unknowns free.
pub fn optimize(sys: &LinearSystem, objective: &[Rational]) -> LpOutcome {
    if sys.has_contradiction() {
        return LpOutcome::Infeasible;
    }
    let n = sys.vars();
    let m = sys.rows().len();
    let slack_count = sys.rows().iter().filter(|r| r.rel == Relation::Le).count();
    let structural = 2 * n + slack_count;
    let cols = structural + m;
    let mut rows = Vec::with_capacity(m);
    let mut slack = 2 * n;
    for (i, r) in sys.rows().iter().enumerate() {
        let mut row = vec![Rational::zero(); cols + 1];
        for (k, a) in r.coeffs.iter().enumerate() {
            let a = Rational::from_integer(a.clone());
            row[2 * k + 1] = -a.clone();
            row[2 * k] = a;
        }
        if r.rel == Relation::Le {
            row[slack] = Rational::one();
            slack += 1;
        }
        row[cols] = r.rhs.clone();
        if row[cols].is_negative() {
            for v in &mut row {
                *v = -&*v;
            }
        }
        row[structural + i] = Rational::one();
        rows.push(row);
    }
    let mut t = Tableau { rows, obj: Vec::new(), basis: (structural..cols).collect(), cols };

    let mut phase1 = vec![Rational::zero(); cols];
    for c in &mut phase1[structural..] {
        *c = Rational::one();
    }
    t.set_objective(&phase1);
    t.run(cols);
    if !t.obj[cols].is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= structural {
            match (0..structural).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = vec![Rational::zero(); cols];
    for (k, o) in objective.iter().enumerate() {
        cost[2 * k] = o.clone();
        cost[2 * k + 1] = -o.clone();
    }
    t.set_objective(&cost);
    if !t.run(structural) {
        return LpOutcome::Unbounded;
    }
    let mut y = vec![Rational::zero(); cols];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.rhs(i).clone();
    }
    let x: Vec<Rational> = (0..n).map(|k| &y[2 * k] - &y[2 * k + 1]).collect();
    let value = objective.iter().zip(&x).map(|(o, v)| o * v).sum();
    LpOutcome::Optimal { x, value }
}

fn unit(n: usize, k: usize, sign: i64) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[k] = Rational::from_integer(sign.into());
    e
}

/// Lexicographic minimum by one LP per coordinate.
pub fn lexmin(sys: &LinearSystem) -> LexOutcome {
    let n = sys.vars();
    let mut current = sys.clone();
    let mut last = None;
    for k in 0..n {
        match optimize(&current, &unit(n, k, 1)) {
            LpOutcome::Infeasible => return LexOutcome::Infeasible,
            LpOutcome::Unbounded => return LexOutcome::Unbounded,
            LpOutcome::Optimal { x, value } => {
                current.push(&unit(n, k, 1), super::linear::Cmp::Eq, &value);
                last = Some(x);
            }
        }
    }
    match last {
        Some(x) => LexOutcome::Point(x),
        None if sys.has_contradiction() => LexOutcome::Infeasible,
        None => LexOutcome::Point(Vec::new()),
    }
}

/// Range of `x_0`; `None` when infeasible.
pub fn range_first(sys: &LinearSystem) -> Option<Interval> {
    let n = sys.vars();
    if n == 0 {
        return (!sys.has_contradiction()).then_some(Interval { lo: None, hi: None });
    }
    let lo = match optimize(sys, &unit(n, 0, 1)) {
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => None,
        LpOutcome::Optimal { value, .. } => Some(value),
    };
    let hi = match optimize(sys, &unit(n, 0, -1)) {
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => None,
        LpOutcome::Optimal { value, .. } => Some(-value),
    };
    Some(Interval { lo, hi })
}
