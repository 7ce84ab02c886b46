//! Integer lexicographic minimum by depth-first coordinate branching.
//!
//! Each node asks the rational engine for the range of the next unknown
//! given the integers fixed so far, then tries the integers of that range in
//! ascending order. The first leaf reached is the integer lexmin.

use super::linear::LinearSystem;
use super::{range_first, CapReason};
use crate::caps::LpEngine;
use crate::polycore::{Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntOutcome {
    Found(Vec<Integer>),
    /// No integer point exists.
    Infeasible,
    Exhausted(CapReason),
}

struct Search {
    engine: LpEngine,
    bound: Integer,
    max_nodes: usize,
    nodes: usize,
    clipped: bool,
}

impl Search {
    fn dfs(&mut self, sys: &LinearSystem, prefix: &mut Vec<Integer>) -> Result<bool, CapReason> {
        if sys.vars() == 0 {
            return Ok(!sys.has_contradiction());
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(CapReason::Nodes);
        }
        let Some(iv) = range_first(sys, self.engine) else {
            return Ok(false);
        };
        let neg_bound = -self.bound.clone();
        let mut lo = match iv.lo {
            Some(l) => l.ceil().to_integer(),
            None => {
                self.clipped = true;
                neg_bound.clone()
            }
        };
        let mut hi = match iv.hi {
            Some(h) => h.floor().to_integer(),
            None => {
                self.clipped = true;
                self.bound.clone()
            }
        };
        if lo < neg_bound {
            lo = neg_bound;
            self.clipped = true;
        }
        if hi > self.bound {
            hi = self.bound.clone();
            self.clipped = true;
        }
        let mut v = lo;
        while v <= hi {
            let sub = sys.fix_first(&Rational::from_integer(v.clone()));
            prefix.push(v.clone());
            if !sub.has_contradiction() && self.dfs(&sub, prefix)? {
                return Ok(true);
            }
            prefix.pop();
            v += 1;
        }
        Ok(false)
    }
}

/// Integer lexmin of `sys` with every coordinate in `[-bound, bound]`.
///
/// `Infeasible` is only reported when the bound never cut a range, so it is
/// exact; otherwise an empty search is reported as exhausted coefficients.
pub fn integer_lexmin(sys: &LinearSystem, engine: LpEngine, bound: &Integer, max_nodes: usize) -> IntOutcome {
    let mut search = Search { engine, bound: bound.clone(), max_nodes, nodes: 0, clipped: false };
    let mut prefix = Vec::with_capacity(sys.vars());
    if sys.has_contradiction() {
        return IntOutcome::Infeasible;
    }
    match search.dfs(sys, &mut prefix) {
        Ok(true) => IntOutcome::Found(prefix),
        Ok(false) if search.clipped => IntOutcome::Exhausted(CapReason::Coefficients),
        Ok(false) => IntOutcome::Infeasible,
        Err(reason) => IntOutcome::Exhausted(reason),
    }
}

#[cfg(test)]
mod tests {
    use super::super::linear::Cmp;
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn finds_lattice_point_in_thin_region() {
        // 2x - 2y = 1 has rational but no integer points
        let mut s = LinearSystem::new(2);
        s.push(&[q(2), q(-2)], Cmp::Eq, &q(1));
        s.push(&[q(1), q(0)], Cmp::Ge, &q(0));
        s.push(&[q(1), q(0)], Cmp::Le, &q(5));
        assert_eq!(integer_lexmin(&s, LpEngine::Auto, &100.into(), 1000), IntOutcome::Infeasible);

        // 3x + 5y = 7, x >= 0, y >= -10  ->  x = 4, y = -1 first
        let mut s = LinearSystem::new(2);
        s.push(&[q(3), q(5)], Cmp::Eq, &q(7));
        s.push(&[q(1), q(0)], Cmp::Ge, &q(0));
        s.push(&[q(0), q(1)], Cmp::Ge, &q(-10));
        let found = integer_lexmin(&s, LpEngine::Simplex, &100.into(), 1000);
        assert_eq!(found, IntOutcome::Found(vec![4.into(), (-1).into()]));
    }

    #[test]
    fn unbounded_ranges_are_clipped() {
        let mut s = LinearSystem::new(2);
        s.push(&[q(2), q(-2)], Cmp::Eq, &q(1));
        assert_eq!(
            integer_lexmin(&s, LpEngine::Auto, &10.into(), 1000),
            IntOutcome::Exhausted(CapReason::Coefficients)
        );
    }

    #[test]
    fn node_cap() {
        let mut s = LinearSystem::new(3);
        s.push(&[q(2), q(2), q(-2)], Cmp::Eq, &q(1));
        s.push(&[q(1), q(0), q(0)], Cmp::Ge, &q(0));
        s.push(&[q(1), q(0), q(0)], Cmp::Le, &q(50));
        s.push(&[q(0), q(1), q(0)], Cmp::Ge, &q(0));
        s.push(&[q(0), q(1), q(0)], Cmp::Le, &q(50));
        assert_eq!(
            integer_lexmin(&s, LpEngine::Auto, &100.into(), 20),
            IntOutcome::Exhausted(CapReason::Nodes)
        );
    }
}
