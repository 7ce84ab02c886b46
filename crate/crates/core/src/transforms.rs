//! The lift `α → α^{1/k}` and the `(4k+c, 5k+c)` family.
//!
//! If `m(x^k)` is irreducible, the number `β` with `β^k = α` has
//! `f(β) = k·f(α)`. Eisenstein's criterion survives the substitution, which
//! is how the family below scales.

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::irreducibility::{certify_irreducible, eisenstein_check, IrreducibilityVerdict};
use crate::monoid::{analyze, AlgebraicNumberSpec, Certificate, Count, PairResult};
use crate::polycore::{IntPoly, Integer};
use crate::signsearch::PatternKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub k: usize,
    pub c: usize,
}

impl FamilyParams {
    pub fn new(k: usize, c: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("family parameter k must be at least 1".into()));
        }
        Ok(FamilyParams { k, c })
    }

    pub fn expected(&self) -> (usize, usize) {
        (4 * self.k + self.c, 5 * self.k + self.c)
    }
}

fn sparse(terms: &[(usize, i64)]) -> IntPoly {
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![Integer::from(0); deg + 1];
    for &(i, a) in terms {
        coeffs[i] += a;
    }
    IntPoly::new(coeffs)
}

/// The family member for `(k, c)` with its expected pair and witnesses.
///
/// For `c ≥ 1` this is `x^{3k+c} − 8x^{2k+c} + 4x^{k+c} − 2x^c − 2`; for
/// `c = 0` it is the lift `x^{3k} − 8x^{2k} + 4x^k − 2` of the base cubic.
/// The expected result carries the Eisenstein prime and the two multiplier
/// witnesses `1 + 2x^k + x^{2k}` (atoms) and `1 + 2x^k` (strong atoms).
pub fn family_polynomial(params: FamilyParams) -> Result<(IntPoly, PairResult)> {
    let FamilyParams { k, c } = FamilyParams::new(params.k, params.c)?;
    let m = if c == 0 {
        sparse(&[(3 * k, 1), (2 * k, -8), (k, 4), (0, -2)])
    } else {
        sparse(&[(3 * k + c, 1), (2 * k + c, -8), (k + c, 4), (c, -2), (0, -2)])
    };
    let (strong, atoms) = params.expected();
    let atom_mult = sparse(&[(0, 1), (k, 2), (2 * k, 1)]);
    let strong_mult = sparse(&[(0, 1), (k, 2)]);
    let p = eisenstein_check(&m).expect("family polynomials are 2-Eisenstein");
    let certificates = vec![
        Certificate::EisensteinPrime { p },
        Certificate::MultiplierWitness {
            product: &strong_mult * &m,
            multiplier: strong_mult,
            pattern: PatternKind::StrongPrefix { degree: strong },
        },
        Certificate::MultiplierWitness {
            product: &atom_mult * &m,
            multiplier: atom_mult,
            pattern: PatternKind::MonicAtom { degree: atoms },
        },
    ];
    Ok((m, PairResult { strong: Count::Finite(strong), atoms: Count::Finite(atoms), certificates }))
}

/// Certifies that `m(x^k)` is irreducible.
fn lifted_irreducibility(lifted: &IntPoly, caps: &Caps) -> Result<Certificate> {
    if let Some(p) = eisenstein_check(lifted) {
        return Ok(Certificate::EisensteinPrime { p });
    }
    match certify_irreducible(lifted, caps)? {
        verdict @ IrreducibilityVerdict::Irreducible { .. } => Ok(Certificate::Irreducible { verdict }),
        IrreducibilityVerdict::Reducible { factor } => Err(Error::Reducible { factor }),
        IrreducibilityVerdict::Unknown { .. } => Err(Error::UncertifiedIrreducibility),
    }
}

/// `f(β) = k·f(α)` for `β^k = α`, provided `m(x^k)` is irreducible.
pub fn transform_scale(spec: &AlgebraicNumberSpec, k: usize, caps: &Caps) -> Result<PairResult> {
    let base = analyze(spec, caps)?;
    if k == 1 {
        return Ok(base);
    }
    let lifted = spec.minimal_polynomial.substitute_power(k)?;
    let irreducible = lifted_irreducibility(&lifted, caps)?;
    let certificates = vec![
        irreducible,
        Certificate::TransformScaling {
            k,
            base_polynomial: spec.minimal_polynomial.clone(),
            base_strong: base.strong.clone(),
            base_atoms: base.atoms.clone(),
        },
    ];
    Ok(PairResult { strong: base.strong.scale(k), atoms: base.atoms.scale(k), certificates })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingCrossCheck {
    pub lifted: IntPoly,
    pub scaled: PairResult,
    pub direct: PairResult,
    /// Decided components agree.
    pub agrees: bool,
}

/// Runs [`transform_scale`] and also analyzes `m(x^k)` directly.
pub fn transform_cross_check(spec: &AlgebraicNumberSpec, k: usize, caps: &Caps) -> Result<ScalingCrossCheck> {
    let scaled = transform_scale(spec, k, caps)?;
    let lifted = spec.minimal_polynomial.substitute_power(k)?;
    let lifted_spec = AlgebraicNumberSpec::new(&lifted, caps, spec.assumed_irreducible)?;
    let direct = analyze(&lifted_spec, caps)?;
    let agree = |a: &Count, b: &Count| !(a.is_decided() && b.is_decided()) || a.same_value(b);
    let agrees = agree(&scaled.strong, &direct.strong) && agree(&scaled.atoms, &direct.atoms);
    Ok(ScalingCrossCheck { lifted, scaled, direct, agrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn family_members() {
        let (m, expected) = family_polynomial(FamilyParams { k: 1, c: 0 }).unwrap();
        assert_eq!(m, p(&[-2, 4, -8, 1]));
        assert!(expected.same_pair(&Count::Finite(4), &Count::Finite(5)));
        assert!(expected.verify(&m));

        let (m, expected) = family_polynomial(FamilyParams { k: 2, c: 1 }).unwrap();
        assert_eq!(m, p(&[-2, -2, 0, 4, 0, -8, 0, 1]));
        assert!(expected.same_pair(&Count::Finite(9), &Count::Finite(11)));
        assert!(expected.verify(&m));

        let (m, _) = family_polynomial(FamilyParams { k: 1, c: 2 }).unwrap();
        assert_eq!(m, p(&[-2, 0, -2, 4, -8, 1]));
        assert!(family_polynomial(FamilyParams { k: 0, c: 1 }).is_err());
    }

    #[test]
    fn family_support() {
        for k in 1..4 {
            for c in 1..5 {
                let (m, expected) = family_polynomial(FamilyParams { k, c }).unwrap();
                let mut support = vec![0, c, k + c, 2 * k + c, 3 * k + c];
                support.dedup();
                assert_eq!(m.support(), support);
                assert!(expected.verify(&m), "k={k} c={c}");
            }
        }
    }

    #[test]
    fn scaling() {
        let caps = Caps::default();
        let spec = AlgebraicNumberSpec::new(&p(&[-2, 4, -8, 1]), &caps, false).unwrap();
        let r = transform_scale(&spec, 2, &caps).unwrap();
        assert!(r.same_pair(&Count::Finite(8), &Count::Finite(10)));
        assert!(r.verify(&p(&[-2, 0, 4, 0, -8, 0, 1])));
        assert_eq!(transform_scale(&spec, 1, &caps).unwrap(), analyze(&spec, &caps).unwrap());

        let spec = AlgebraicNumberSpec::new(&p(&[1, -3, 1]), &caps, false).unwrap();
        match transform_scale(&spec, 2, &caps) {
            Err(Error::Reducible { factor }) => assert_eq!(factor, p(&[-1, -1, 1])),
            other => panic!("{other:?}"),
        }
    }
}
