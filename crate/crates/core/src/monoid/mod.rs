//! The analyzer: `(|S(M_α)|, |A(M_α)|)` with certificates.
//!
//! Special-case detectors run first (antimatter, binomials, quadratics,
//! unique factorization, three positive conjugates); everything else goes
//! through the sign-pattern engine. Cap exhaustion is always reported as
//! [`Count::AtLeast`], never as a verdict.

mod certificate;
mod degree2;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use certificate::{Certificate, DetectorKind};
pub use degree2::{classify_degree2, degree2_form, split_degree2, Degree2Form, Degree2Subcase};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::irreducibility::{certify_irreducible, IrreducibilityVerdict};
use crate::polycore::{minimal_pair, IntPoly, Integer};
use crate::rootcount::{isolate_positive_roots, positive_root_count, Point, RootInterval, SturmChain};
use crate::signsearch::{
    descartes_prune, integer_witness_search, rational_feasibility, Infeasibility, PatternKind, SignPatternQuery,
    WitnessResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InfiniteReason {
    MultiplePositiveRoots,
    ThreePositiveRoots,
    /// Leading coefficient above 1 on an atomic monoid.
    NonMonic,
    BinomialRelation,
    Degree2Classification,
    /// Inherited from the base number of an `x → x^k` lift.
    Scaled,
}

/// A cardinality, possibly only bounded from below.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Count {
    Finite(usize),
    Infinite(InfiniteReason),
    /// The search stopped here; the true value is at least this.
    AtLeast(usize),
}

impl Count {
    pub fn is_decided(&self) -> bool {
        !matches!(self, Count::AtLeast(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Count::Infinite(_))
    }

    /// `k·self`, with `k·∞ = ∞` and `k·AtLeast(n) = AtLeast(kn)`.
    pub fn scale(&self, k: usize) -> Count {
        match self {
            Count::Finite(n) => Count::Finite(k * n),
            Count::Infinite(_) => Count::Infinite(InfiniteReason::Scaled),
            Count::AtLeast(n) => Count::AtLeast(k * n),
        }
    }

    /// Order on decided values, `Finite(n) < Infinite`. `None` if either
    /// side is undecided.
    pub fn cmp_decided(&self, other: &Count) -> Option<Ordering> {
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => Some(a.cmp(b)),
            (Count::Finite(_), Count::Infinite(_)) => Some(Ordering::Less),
            (Count::Infinite(_), Count::Finite(_)) => Some(Ordering::Greater),
            (Count::Infinite(_), Count::Infinite(_)) => Some(Ordering::Equal),
            _ => None,
        }
    }

    /// Equality of values, ignoring the reason attached to `Infinite`.
    pub fn same_value(&self, other: &Count) -> bool {
        match (self, other) {
            (Count::AtLeast(a), Count::AtLeast(b)) => a == b,
            _ => self.cmp_decided(other) == Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Infinite(_) => f.write_str("∞"),
            Count::AtLeast(n) => write!(f, "≥{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub strong: Count,
    pub atoms: Count,
    pub certificates: Vec<Certificate>,
}

impl PairResult {
    fn new(strong: Count, atoms: Count, certificates: Vec<Certificate>) -> Self {
        PairResult { strong, atoms, certificates }
    }

    pub fn is_decided(&self) -> bool {
        self.strong.is_decided() && self.atoms.is_decided()
    }

    /// Strong atoms are atoms, so decided values satisfy `strong ≤ atoms`.
    pub fn is_consistent(&self) -> bool {
        self.strong.cmp_decided(&self.atoms) != Some(Ordering::Greater)
    }

    /// Re-checks every certificate against `m`.
    pub fn verify(&self, m: &IntPoly) -> bool {
        self.is_consistent() && self.certificates.iter().all(|c| c.verify(m))
    }

    /// Same pair of values, certificates aside.
    pub fn same_pair(&self, strong: &Count, atoms: &Count) -> bool {
        self.strong.same_value(strong) && self.atoms.same_value(atoms)
    }
}

impl fmt::Display for PairResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.strong, self.atoms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootSelector {
    /// The smallest positive real root.
    Positive { interval: RootInterval },
    NoPositiveRoot,
}

/// An algebraic number given by its minimal polynomial and a root choice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraicNumberSpec {
    /// Primitive, positive leading coefficient.
    pub minimal_polynomial: IntPoly,
    pub irreducibility: IrreducibilityVerdict,
    pub assumed_irreducible: bool,
    pub root: RootSelector,
}

impl AlgebraicNumberSpec {
    /// Normalizes `m`, certifies irreducibility and selects the root.
    ///
    /// Fails on reducible input, and on input whose irreducibility cannot be
    /// certified unless `assume_irreducible` is set.
    pub fn new(m: &IntPoly, caps: &Caps, assume_irreducible: bool) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if m.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let (_, mut prim) = m.content_primitive()?;
        if prim.leading().is_some_and(Signed::is_negative) {
            prim = -prim;
        }
        let verdict = certify_irreducible(&prim, caps)?;
        let assumed = match &verdict {
            IrreducibilityVerdict::Irreducible { .. } => false,
            IrreducibilityVerdict::Reducible { factor } => return Err(Error::Reducible { factor: factor.clone() }),
            IrreducibilityVerdict::Unknown { .. } if assume_irreducible => true,
            IrreducibilityVerdict::Unknown { .. } => return Err(Error::UncertifiedIrreducibility),
        };
        let root = match isolate_positive_roots(&prim)?.into_iter().next() {
            Some(interval) => RootSelector::Positive { interval },
            None => RootSelector::NoPositiveRoot,
        };
        Ok(AlgebraicNumberSpec { minimal_polynomial: prim, irreducibility: verdict, assumed_irreducible: assumed, root })
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial.degree().expect("nonconstant")
    }

    pub fn root_interval(&self) -> Option<&RootInterval> {
        match &self.root {
            RootSelector::Positive { interval } => Some(interval),
            RootSelector::NoPositiveRoot => None,
        }
    }

    fn base_certificates(&self) -> Vec<Certificate> {
        if self.assumed_irreducible {
            vec![Certificate::AssumedIrreducible]
        } else {
            vec![Certificate::Irreducible { verdict: self.irreducibility.clone() }]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Atomicity {
    Atomic { certificate: Certificate },
    /// `1 = Σ_{i≥1} c_i α^i`, so 1 is not an atom.
    NotAtomic { witness: Certificate },
    Undecided,
}

fn same_sign(m: &IntPoly) -> bool {
    let nonzero: Vec<&Integer> = m.coeffs().iter().filter(|c| !c.is_zero()).collect();
    nonzero.iter().all(|c| c.is_positive()) || nonzero.iter().all(|c| c.is_negative())
}

fn detector(kind: DetectorKind) -> Certificate {
    Certificate::AtomicityDetector { detector: kind }
}

fn query(spec: &AlgebraicNumberSpec, kind: PatternKind, caps: &Caps) -> SignPatternQuery {
    SignPatternQuery::new(&spec.minimal_polynomial, kind, caps).expect("spec polynomial is primitive and nonconstant")
}

fn witness_certificate(pattern: PatternKind, w: &crate::signsearch::Witness) -> Certificate {
    Certificate::MultiplierWitness { multiplier: w.integer_multiplier(), product: w.integer_product(), pattern }
}

/// Is 1 an atom of `M_α`?
pub fn atomicity_check(spec: &AlgebraicNumberSpec, caps: &Caps) -> Result<Atomicity> {
    let m = &spec.minimal_polynomial;
    if spec.root_interval().is_none() {
        return Ok(Atomicity::Undecided);
    }
    let distinct = positive_root_count(m, false)?;
    if distinct >= 2 {
        return Ok(Atomicity::Atomic { certificate: detector(DetectorKind::MultiplePositiveRoots { count: distinct }) });
    }
    if !m.coeff(0).abs().is_one() {
        return Ok(Atomicity::Atomic { certificate: detector(DetectorKind::ConstantTermNotUnit) });
    }
    let chain = SturmChain::new(m)?;
    let one = crate::polycore::int_to_rat(&Integer::one());
    if chain.count_between(&Point::ZeroPlus, &Point::At(one.clone())) == 0 {
        return Ok(Atomicity::Atomic { certificate: detector(DetectorKind::RootAboveOne { lower_bound: one }) });
    }
    if minimal_pair(&m.to_rat())?.p_is_pure_power() {
        return Ok(Atomicity::Atomic { certificate: detector(DetectorKind::UfmShape) });
    }
    let max_degree = caps.max_witness_degree;
    let relaxed = query(spec, PatternKind::UnitRepresentation { max_degree }, caps);
    if rational_feasibility(&relaxed).witness().is_none() {
        return Ok(Atomicity::Undecided);
    }
    let kind = PatternKind::UnitDecomposition { max_degree };
    match integer_witness_search(&query(spec, kind, caps)) {
        WitnessResult::Witness(w) => Ok(Atomicity::NotAtomic { witness: witness_certificate(kind, &w) }),
        _ => Ok(Atomicity::Undecided),
    }
}

/// `(d, d)` when the minimal pair of `m` is `(x^d, q)`.
pub fn ufm_check(spec: &AlgebraicNumberSpec) -> Option<PairResult> {
    let pair = minimal_pair(&spec.minimal_polynomial.to_rat()).ok()?;
    if !pair.p_is_pure_power() || spec.root_interval().is_none() {
        return None;
    }
    let d = spec.degree();
    let mut certs = spec.base_certificates();
    certs.push(Certificate::UfmMinimalPair { p: pair.p, q: pair.q });
    Some(PairResult::new(Count::Finite(d), Count::Finite(d), certs))
}

/// `(0, ∞)` for `b·x^n − a` with coprime `a, b > 1`.
pub fn binomial_check(spec: &AlgebraicNumberSpec) -> Option<PairResult> {
    let m = &spec.minimal_polynomial;
    let n = spec.degree();
    if m.support() != vec![0, n] || spec.root_interval().is_none() {
        return None;
    }
    let b = m.coeff(n);
    let a = -m.coeff(0);
    if !a.is_positive() || a.is_one() || b.is_one() {
        return None;
    }
    let mut certs = spec.base_certificates();
    certs.push(Certificate::BinomialRelation { a, b, n });
    Some(PairResult::new(Count::Finite(0), Count::Infinite(InfiniteReason::BinomialRelation), certs))
}

/// `|A(M_α)|`.
pub fn count_atoms(spec: &AlgebraicNumberSpec, caps: &Caps) -> Result<(Count, Vec<Certificate>)> {
    let m = &spec.minimal_polynomial;
    if m.leading().is_some_and(|l| *l > Integer::one()) {
        return Ok((Count::Infinite(InfiniteReason::NonMonic), vec![detector(DetectorKind::GaussNonMonic)]));
    }
    let distinct = positive_root_count(m, false)?;
    if distinct >= 2 {
        let cert = detector(DetectorKind::MultiplePositiveRoots { count: distinct });
        return Ok((Count::Infinite(InfiniteReason::MultiplePositiveRoots), vec![cert]));
    }
    let mut certs = Vec::new();
    for n in spec.degree()..=caps.max_witness_degree {
        let kind = PatternKind::MonicAtom { degree: n };
        match integer_witness_search(&query(spec, kind, caps)) {
            WitnessResult::Witness(w) => {
                certs.push(witness_certificate(kind, &w));
                return Ok((Count::Finite(n), certs));
            }
            WitnessResult::InfeasibleProven(reason) => certs.push(infeasibility_certificate(kind, &reason)),
            WitnessResult::ExhaustedCaps { .. } => return Ok((Count::AtLeast(n), certs)),
        }
    }
    Ok((Count::AtLeast(caps.max_witness_degree.max(spec.degree()) + 1), certs))
}

fn infeasibility_certificate(pattern: PatternKind, reason: &Infeasibility) -> Certificate {
    match reason {
        Infeasibility::DescartesBound { positive_roots, max_variations } => Certificate::DescartesBound {
            positive_roots: *positive_roots,
            pattern,
            pattern_max_variations: *max_variations,
        },
        Infeasibility::LinearInfeasible => Certificate::LinearInfeasible { pattern, integral: false },
        Infeasibility::IntegerInfeasible => Certificate::LinearInfeasible { pattern, integral: true },
    }
}

fn strong_given_atoms(spec: &AlgebraicNumberSpec, caps: &Caps, atoms: &Count) -> Result<(Count, Vec<Certificate>)> {
    let m = &spec.minimal_polynomial;
    let roots = positive_root_count(m, true)?;
    if roots >= 3 {
        let cert = detector(DetectorKind::ThreePositiveRoots { count: roots });
        return Ok((Count::Infinite(InfiniteReason::ThreePositiveRoots), vec![cert]));
    }
    let mut certs = Vec::new();
    if let Count::Finite(n) = *atoms {
        // finitely generated: the smallest degree of a multiple with a
        // negative leading coefficient and nonnegative remainder
        for s in spec.degree()..=n {
            let kind = PatternKind::StrongPrefix { degree: s };
            match rational_feasibility(&query(spec, kind, caps)) {
                WitnessResult::Witness(w) => {
                    certs.push(Certificate::MultiplierWitness {
                        multiplier: -w.integer_multiplier(),
                        product: -w.integer_product(),
                        pattern: kind,
                    });
                    return Ok((Count::Finite(s), certs));
                }
                WitnessResult::InfeasibleProven(reason) => certs.push(infeasibility_certificate(kind, &reason)),
                WitnessResult::ExhaustedCaps { .. } => return Ok((Count::AtLeast(s), certs)),
            }
        }
        return Ok((Count::AtLeast(spec.degree()), certs));
    }
    for k in 0..=caps.max_witness_degree {
        let kind = if k == 0 {
            PatternKind::UnitRepresentation { max_degree: caps.max_witness_degree }
        } else {
            PatternKind::SingleNegativeAt { index: k, max_degree: caps.max_witness_degree }
        };
        let q = query(spec, kind, caps);
        if let Some(reason) = descartes_prune(&q) {
            certs.push(infeasibility_certificate(kind, &reason));
            continue;
        }
        return Ok(match integer_witness_search(&q) {
            WitnessResult::Witness(w) => {
                certs.push(witness_certificate(kind, &w));
                (Count::Finite(k), certs)
            }
            _ => (Count::AtLeast(k), certs),
        });
    }
    Ok((Count::AtLeast(caps.max_witness_degree + 1), certs))
}

/// `|S(M_α)|`.
pub fn count_strong_atoms(spec: &AlgebraicNumberSpec, caps: &Caps) -> Result<(Count, Vec<Certificate>)> {
    if positive_root_count(&spec.minimal_polynomial, true)? >= 3 {
        return strong_given_atoms(spec, caps, &Count::AtLeast(0));
    }
    let (atoms, _) = count_atoms(spec, caps)?;
    strong_given_atoms(spec, caps, &atoms)
}

/// `f(α) = (|S(M_α)|, |A(M_α)|)`.
pub fn analyze(spec: &AlgebraicNumberSpec, caps: &Caps) -> Result<PairResult> {
    analyze_with(spec, caps, true)
}

/// [`analyze`] without the binomial, quadratic and unique-factorization
/// shortcuts: only detectors and the sign-pattern engine.
pub fn analyze_general(spec: &AlgebraicNumberSpec, caps: &Caps) -> Result<PairResult> {
    analyze_with(spec, caps, false)
}

fn analyze_with(spec: &AlgebraicNumberSpec, caps: &Caps, closed_forms: bool) -> Result<PairResult> {
    let m = &spec.minimal_polynomial;
    let mut certs = spec.base_certificates();
    let zero = || (Count::Finite(0), Count::Finite(0));

    if same_sign(m) {
        certs.push(detector(DetectorKind::SameSignCoefficients));
        return Ok(PairResult::new(zero().0, zero().1, certs));
    }
    if spec.root_interval().is_none() {
        return Err(Error::Unsupported(format!(
            "{m} has no positive real root and mixed signs; only the antimatter and degree-two cases cover such α"
        )));
    }
    let atomicity = atomicity_check(spec, caps)?;
    match &atomicity {
        Atomicity::NotAtomic { witness } => {
            certs.push(witness.clone());
            return Ok(PairResult::new(zero().0, zero().1, certs));
        }
        Atomicity::Atomic { certificate } => certs.push(certificate.clone()),
        Atomicity::Undecided => {}
    }
    if let Some(r) = binomial_check(spec).filter(|_| closed_forms) {
        return Ok(r);
    }
    if let Some((a, b, c, form)) = split_degree2(m).filter(|_| closed_forms) {
        let mut r = classify_degree2(&a, &b, &c, form)?;
        certs.append(&mut r.certificates);
        if form == Degree2Form::PosNegPos {
            // two positive roots: the general scan reaches the same count
            let (strong, mut scan) = strong_given_atoms(spec, caps, &r.atoms)?;
            if strong == r.strong {
                certs.append(&mut scan);
            }
        }
        return Ok(PairResult::new(r.strong, r.atoms, certs));
    }
    if let Some(r) = ufm_check(spec).filter(|_| closed_forms) {
        return Ok(r);
    }
    let roots = positive_root_count(m, true)?;
    if roots >= 3 {
        let inf = Count::Infinite(InfiniteReason::ThreePositiveRoots);
        certs.push(detector(DetectorKind::ThreePositiveRoots { count: roots }));
        return Ok(PairResult::new(inf.clone(), inf, certs));
    }
    if atomicity == Atomicity::Undecided {
        return Ok(PairResult::new(Count::AtLeast(0), Count::AtLeast(0), certs));
    }
    let (atoms, mut atom_certs) = count_atoms(spec, caps)?;
    let (strong, mut strong_certs) = strong_given_atoms(spec, caps, &atoms)?;
    certs.append(&mut strong_certs);
    certs.append(&mut atom_certs);
    Ok(PairResult::new(strong, atoms, certs))
}

/// Parses nothing, certifies irreducibility and analyzes in one call.
pub fn analyze_polynomial(m: &IntPoly, caps: &Caps) -> Result<PairResult> {
    analyze(&AlgebraicNumberSpec::new(m, caps, false)?, caps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn run(c: &[i64]) -> PairResult {
        let m = p(c);
        let r = analyze_polynomial(&m, &Caps::default()).unwrap();
        assert!(r.verify(&m), "certificates of {m} fail: {r:?}");
        r
    }

    const INF: Count = Count::Infinite(InfiniteReason::Scaled);

    #[test]
    fn family_base() {
        let r = run(&[-2, 4, -8, 1]);
        assert!(r.same_pair(&Count::Finite(4), &Count::Finite(5)));
        let strong = r
            .certificates
            .iter()
            .find_map(|c| match c {
                Certificate::MultiplierWitness { multiplier, product, pattern: PatternKind::StrongPrefix { .. } } => {
                    Some((multiplier.clone(), product.clone()))
                }
                _ => None,
            })
            .unwrap();
        assert_eq!(strong, (p(&[1, 2]), p(&[-2, 0, 0, -15, 2])));
    }

    #[test]
    fn small_examples() {
        assert!(run(&[1, -3, 1]).same_pair(&Count::Finite(1), &INF));
        assert!(run(&[1, 1, 1]).same_pair(&Count::Finite(0), &Count::Finite(0)));
        assert!(run(&[-3, 0, 2]).same_pair(&Count::Finite(0), &INF));
        assert!(run(&[-1, 6, -5, 1]).same_pair(&INF, &INF));
        assert!(run(&[-1, -1, 1]).same_pair(&Count::Finite(2), &Count::Finite(2)));
        assert!(run(&[-2, 0, 1]).same_pair(&Count::Finite(2), &Count::Finite(2)));
        assert!(run(&[-2, 1]).same_pair(&Count::Finite(1), &Count::Finite(1)));
        assert!(run(&[-1, 2]).same_pair(&Count::Finite(0), &Count::Finite(0)));
    }

    #[test]
    fn atomicity_examples() {
        let caps = Caps::default();
        let spec = |c: &[i64]| AlgebraicNumberSpec::new(&p(c), &caps, false).unwrap();
        assert!(matches!(atomicity_check(&spec(&[1, -3, 1]), &caps).unwrap(), Atomicity::Atomic { .. }));
        assert!(matches!(atomicity_check(&spec(&[-1, -1, 1]), &caps).unwrap(), Atomicity::Atomic { .. }));
        match atomicity_check(&spec(&[-1, 1, 1]), &caps).unwrap() {
            Atomicity::NotAtomic { witness: Certificate::MultiplierWitness { product, .. } } => {
                assert_eq!(product, p(&[-1, 1, 1]))
            }
            other => panic!("{other:?}"),
        }
        // 1 = α + α² + α³
        assert!(matches!(atomicity_check(&spec(&[-1, 1, 1, 1]), &caps).unwrap(), Atomicity::NotAtomic { .. }));
    }

    #[test]
    fn detectors_do_not_fire_wrongly() {
        let caps = Caps::default();
        let spec = |c: &[i64]| AlgebraicNumberSpec::new(&p(c), &caps, false).unwrap();
        assert!(ufm_check(&spec(&[1, -3, 1])).is_none());
        assert!(ufm_check(&spec(&[-2, 4, -8, 1])).is_none());
        assert!(binomial_check(&spec(&[-2, 0, 1])).is_none());
        assert!(binomial_check(&spec(&[1, -3, 1])).is_none());
        let r = binomial_check(&spec(&[-3, 0, 2])).unwrap();
        assert_eq!(
            r.certificates.last(),
            Some(&Certificate::BinomialRelation { a: 3.into(), b: 2.into(), n: 2 })
        );
    }

    #[test]
    fn reducible_and_complex_inputs() {
        let caps = Caps::default();
        assert!(matches!(
            AlgebraicNumberSpec::new(&p(&[1, 0, -3, 0, 1]), &caps, false),
            Err(Error::Reducible { .. })
        ));
        assert!(matches!(analyze_polynomial(&p(&[1, -1, 1]), &caps), Err(Error::Unsupported(_))));
    }

    #[test]
    fn count_scaling() {
        assert_eq!(Count::Finite(4).scale(2), Count::Finite(8));
        assert_eq!(Count::AtLeast(3).scale(2), Count::AtLeast(6));
        assert!(Count::Infinite(InfiniteReason::NonMonic).scale(3).is_infinite());
        assert_eq!(Count::Finite(9).cmp_decided(&INF), Some(Ordering::Less));
        assert_eq!(Count::AtLeast(9).cmp_decided(&INF), None);
    }
}
