//! Acceptance suite: one pass/fail line per criterion, with the tolerance
//! and the runtime limit each criterion is held to.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semidomain_atoms::monoid::{
    analyze, analyze_general, classify_degree2, count_atoms, AlgebraicNumberSpec, Certificate, Count,
    Degree2Form, DetectorKind, InfiniteReason, PairResult,
};
use semidomain_atoms::oracle::{relation_polynomial, strong_check_oracle, OracleCaps, StrongVerdict};
use semidomain_atoms::rootcount::{positive_root_count, sign_variations, Point, SturmChain};
use semidomain_atoms::signsearch::{
    descartes_prune, integer_witness_search, rational_feasibility, PatternKind, SignPatternQuery, WitnessResult,
};
use semidomain_atoms::transforms::{family_polynomial, transform_cross_check, FamilyParams};
use semidomain_atoms::{Caps, IntPoly, Integer, Rational};

type Check = Result<(), String>;

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn spec(m: &IntPoly) -> Result<AlgebraicNumberSpec, String> {
    AlgebraicNumberSpec::new(m, &Caps::default(), false).map_err(|e| e.to_string())
}

fn run_analyze(m: &IntPoly) -> Result<PairResult, String> {
    analyze(&spec(m)?, &Caps::default()).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn witnesses(r: &PairResult) -> Vec<(&IntPoly, &IntPoly, PatternKind)> {
    r.certificates
        .iter()
        .filter_map(|c| match c {
            Certificate::MultiplierWitness { multiplier, product, pattern } => Some((multiplier, product, *pattern)),
            _ => None,
        })
        .collect()
}

fn criterion_1() -> Check {
    let m = poly(&[-2, 4, -8, 1]);
    let r = run_analyze(&m)?;
    ensure(r.same_pair(&Count::Finite(4), &Count::Finite(5)), || format!("got {r}"))?;
    ensure(r.verify(&m), || "certificates fail re-checking".into())?;
    let ws = witnesses(&r);
    let strong = ws.iter().find(|w| matches!(w.2, PatternKind::StrongPrefix { degree: 4 }));
    let atom = ws.iter().find(|w| matches!(w.2, PatternKind::MonicAtom { degree: 5 }));
    let (Some(strong), Some(atom)) = (strong, atom) else {
        return Err("missing strong or atom witness".into());
    };
    for (mult, prod, _) in [strong, atom] {
        ensure(&(*mult * &m) == *prod, || format!("{mult} · m ≠ {prod}"))?;
    }
    let c = strong.1.coeffs();
    ensure(
        strong.1.degree() == Some(4) && c[4].is_positive() && c[..4].iter().all(|a| !a.is_positive()),
        || format!("strong product {} is not b₄x⁴ − (positive terms)", strong.1),
    )?;
    let c = atom.1.coeffs();
    ensure(
        atom.1.degree() == Some(5) && c[5] == Integer::from(1) && c[..5].iter().all(|a| !a.is_positive()),
        || format!("atom product {} is not x⁵ − (nonnegative terms)", atom.1),
    )
}

fn check_family(k: usize, c: usize) -> Check {
    let (m, expected) = family_polynomial(FamilyParams::new(k, c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let r = run_analyze(&m)?;
    let (s, a) = (4 * k + c, 5 * k + c);
    ensure(expected.same_pair(&Count::Finite(s), &Count::Finite(a)), || "wrong expectation".into())?;
    ensure(r.same_pair(&Count::Finite(s), &Count::Finite(a)), || format!("k={k} c={c}: {m} gives {r}"))?;
    ensure(r.verify(&m) && expected.verify(&m), || format!("k={k} c={c}: certificates fail"))
}

fn criterion_2() -> Check {
    for k in 1..=2 {
        for c in 0..=2 {
            check_family(k, c)?;
        }
    }
    Ok(())
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt().round() as i64;
        r * r == n
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Values of the quadratic classification, written out independently.
fn expected_degree2(a: i64, c: i64, form: Degree2Form) -> (Option<usize>, Option<usize>) {
    match form {
        Degree2Form::AllPositive => (Some(0), Some(0)),
        Degree2Form::PosPosNeg if c == 1 => (Some(0), Some(0)),
        Degree2Form::PosPosNeg => (Some(0), None),
        Degree2Form::PosNegPos => (Some(1), None),
        Degree2Form::PosNegNeg if a == 1 => (Some(2), Some(2)),
        Degree2Form::PosNegNeg => (Some(2), None),
    }
}

fn as_option(c: &Count) -> Result<Option<usize>, String> {
    match c {
        Count::Finite(n) => Ok(Some(*n)),
        Count::Infinite(_) => Ok(None),
        Count::AtLeast(_) => Err("classification left a count undecided".into()),
    }
}

struct GridEntry {
    m: IntPoly,
    pair: (Option<usize>, Option<usize>),
}

/// Primitive `ax² ± bx ± c`, `1 ≤ a, b, c ≤ 8`, with positive non-square
/// discriminant.
fn degree2_grid() -> Result<Vec<GridEntry>, String> {
    let mut out = Vec::new();
    for form in Degree2Form::ALL {
        for a in 1..=8i64 {
            for b in 1..=8i64 {
                for c in 1..=8i64 {
                    if gcd(gcd(a, b), c) != 1 {
                        continue;
                    }
                    let disc = match form {
                        Degree2Form::AllPositive | Degree2Form::PosNegPos => b * b - 4 * a * c,
                        _ => b * b + 4 * a * c,
                    };
                    if disc <= 0 || is_square(disc) {
                        continue;
                    }
                    let (ai, bi, ci) = (Integer::from(a), Integer::from(b), Integer::from(c));
                    let r = classify_degree2(&ai, &bi, &ci, form).map_err(|e| e.to_string())?;
                    let got = (as_option(&r.strong)?, as_option(&r.atoms)?);
                    let want = expected_degree2(a, c, form);
                    let m = form.polynomial(&ai, &bi, &ci);
                    if got != want {
                        return Err(format!("{m}: got {r}, expected {want:?}"));
                    }
                    let Some(Certificate::Degree2Case { case, subcase }) = r.certificates.first() else {
                        return Err(format!("{m}: no case certificate"));
                    };
                    if *case != form.case() || !r.verify(&m) {
                        return Err(format!("{m}: case certificate {case} {subcase:?} fails"));
                    }
                    out.push(GridEntry { m, pair: got });
                }
            }
        }
    }
    Ok(out)
}

fn criterion_3() -> Check {
    let grid = degree2_grid()?;
    ensure(grid.len() > 500, || format!("grid has only {} instances", grid.len()))?;
    let caps = Caps::default().with_max_witness_degree(10);
    let step = grid.len() / 20;
    let mut decided = 0;
    for entry in grid.iter().step_by(step).take(20) {
        let s = spec(&entry.m)?;
        let r = analyze_general(&s, &caps).map_err(|e| e.to_string())?;
        for (count, want) in [(&r.strong, entry.pair.0), (&r.atoms, entry.pair.1)] {
            if count.is_decided() {
                decided += 1;
                ensure(as_option(count)? == want, || format!("{}: general pipeline gives {r}", entry.m))?;
            }
        }
    }
    ensure(decided >= 20, || format!("the general pipeline decided only {decided} of 40 components"))
}

fn criterion_4() -> Check {
    let m = poly(&[1, -3, 1]);
    let r = run_analyze(&m)?;
    ensure(
        r.strong == Count::Finite(1) && r.atoms.is_infinite(),
        || format!("got {r}"),
    )?;
    ensure(r.verify(&m), || "certificates fail re-checking".into())?;
    let pruned_at_zero = r.certificates.iter().any(|c| {
        matches!(c, Certificate::DescartesBound { pattern: PatternKind::UnitRepresentation { .. }, positive_roots: 2, .. })
    });
    ensure(pruned_at_zero, || "no Descartes prune at k = 0".into())?;
    // 3α = 1 + α²
    let at_one = witnesses(&r).into_iter().any(|(_, product, pattern)| {
        matches!(pattern, PatternKind::SingleNegativeAt { index: 1, .. }) && *product == poly(&[1, -3, 1])
    });
    ensure(at_one, || "no witness 3α = 1 + α² at k = 1".into())?;
    let two_roots = r.certificates.iter().any(|c| {
        matches!(c, Certificate::AtomicityDetector { detector: DetectorKind::MultiplePositiveRoots { count: 2 } })
    });
    ensure(two_roots, || "no two-positive-roots detector".into())?;
    let (atoms, _) = count_atoms(&spec(&m)?, &Caps::default()).map_err(|e| e.to_string())?;
    ensure(atoms == Count::Infinite(InfiniteReason::MultiplePositiveRoots), || format!("atom count gives {atoms}"))
}

fn criterion_5() -> Check {
    let s = spec(&poly(&[-2, 4, -8, 1]))?;
    let check = transform_cross_check(&s, 2, &Caps::default()).map_err(|e| e.to_string())?;
    ensure(check.lifted == poly(&[-2, 0, 4, 0, -8, 0, 1]), || format!("lifted to {}", check.lifted))?;
    ensure(check.scaled.same_pair(&Count::Finite(8), &Count::Finite(10)), || format!("scaled {}", check.scaled))?;
    ensure(check.direct.same_pair(&Count::Finite(8), &Count::Finite(10)), || format!("direct {}", check.direct))?;
    ensure(check.scaled.verify(&check.lifted) && check.direct.verify(&check.lifted), || "certificates fail".into())
}

fn criterion_6() -> Check {
    let m = poly(&[-3, 0, 2]);
    let r = run_analyze(&m)?;
    ensure(r.strong == Count::Finite(0) && r.atoms.is_infinite(), || format!("got {r}"))?;
    let binomial = r.certificates.iter().any(|c| {
        matches!(c, Certificate::BinomialRelation { a, b, n: 2 } if *a == Integer::from(3) && *b == Integer::from(2))
    });
    ensure(binomial && r.verify(&m), || "no valid binomial relation certificate".into())
}

fn criterion_7() -> Check {
    let m = poly(&[-1, 6, -5, 1]);
    let r = run_analyze(&m)?;
    ensure(r.strong.is_infinite() && r.atoms.is_infinite(), || format!("got {r}"))?;
    let three = r.certificates.iter().any(|c| {
        matches!(c, Certificate::AtomicityDetector { detector: DetectorKind::ThreePositiveRoots { count: 3 } })
    });
    ensure(three && r.verify(&m), || "no valid three-positive-roots certificate".into())?;
    let chain = SturmChain::new(&m).map_err(|e| e.to_string())?;
    let sturm = chain.count_between(&Point::ZeroPlus, &Point::PlusInfinity);
    let points = [Rational::zero(), Rational::new(1.into(), 5.into()), Rational::from_integer(2.into()), Rational::from_integer(5.into())];
    let signs: Vec<i8> = points.iter().map(|x| if m.eval(x).is_positive() { 1 } else { -1 }).collect();
    let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    ensure(sturm == 3 && changes == 3, || format!("Sturm {sturm}, sign changes {changes} ({signs:?})"))
}

fn criterion_8() -> Check {
    let caps = Caps::default();
    let oracle_caps = OracleCaps { max_power: 8, max_total: 20, prune: true };
    let mut non_strong = 0;
    for m in [poly(&[-1, -1, 1]), poly(&[1, -3, 1]), poly(&[-2, 4, -8, 1])] {
        let s = spec(&m)?;
        for k in 0..=5 {
            let verdict = strong_check_oracle(k, &s, 8, &oracle_caps).map_err(|e| e.to_string())?;
            let kind = if k == 0 {
                PatternKind::UnitRepresentation { max_degree: caps.max_witness_degree }
            } else {
                PatternKind::SingleNegativeAt { index: k, max_degree: caps.max_witness_degree }
            };
            let q = SignPatternQuery::new(&m, kind, &caps).map_err(|e| e.to_string())?;
            let pruned = descartes_prune(&q).is_some();
            match &verdict {
                StrongVerdict::NonStrong { n, factorization } => {
                    non_strong += 1;
                    let relation = relation_polynomial(k, *n, factorization);
                    ensure(m.divides(&relation) && kind.matches(&relation), || {
                        format!("{m}, k={k}: oracle relation {relation} is not a multiple with the pattern")
                    })?;
                    ensure(!pruned, || format!("{m}, k={k}: pruned but the oracle found {factorization:?}"))?;
                    let engine = integer_witness_search(&q);
                    let ok = engine.witness().is_some_and(|w| w.verify(&m, &kind));
                    ensure(ok, || format!("{m}, k={k}: oracle non-strong, engine says {engine:?}"))?;
                }
                StrongVerdict::StrongUpTo { .. } => {}
            }
            if pruned {
                ensure(matches!(verdict, StrongVerdict::StrongUpTo { .. }), || format!("{m}, k={k}: prune disagrees"))?;
            }
        }
    }
    ensure(non_strong > 0, || "the oracle never found a nontrivial factorization".into())
}

fn random_poly(rng: &mut ChaCha8Rng) -> IntPoly {
    let deg = rng.gen_range(1..=8usize);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-9..=9);
    }
    poly(&c)
}

/// Points `p/143` with `11 ∤ p` and `13 ∤ p` are never roots: a rational
/// root's reduced denominator divides the leading coefficient.
fn partition(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut nums: Vec<i64> = (0..rng.gen_range(1..6))
        .map(|_| rng.gen_range(1..2000))
        .filter(|p| p % 11 != 0 && p % 13 != 0)
        .collect();
    nums.sort();
    nums.dedup();
    nums.into_iter().map(|p| Rational::new(p.into(), 143.into())).collect()
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a70b5);
    let caps = Caps { max_nodes: 2_000, max_coeff: 1_000, ..Caps::default() }.with_max_witness_degree(12);
    let mut witnesses_checked = 0;
    for i in 0..1000 {
        let f = random_poly(&mut rng);
        let v = sign_variations(&f).map_err(|e| e.to_string())?;
        let r = positive_root_count(&f, true).map_err(|e| e.to_string())?;
        ensure(v >= r && (v - r) % 2 == 0, || format!("{f}: {v} variations, {r} positive roots"))?;

        let chain = SturmChain::new(&f).map_err(|e| e.to_string())?;
        let mut points = vec![Point::ZeroPlus];
        points.extend(partition(&mut rng).into_iter().map(Point::At));
        points.push(Point::PlusInfinity);
        let total = chain.count_between(&Point::ZeroPlus, &Point::PlusInfinity);
        let sum: usize = points.windows(2).map(|w| chain.count_between(&w[0], &w[1])).sum();
        let distinct = positive_root_count(&f, false).map_err(|e| e.to_string())?;
        let g = f.strip_x_power();
        ensure(sum == total || g.is_constant(), || format!("{f}: Sturm pieces sum to {sum}, whole is {total}"))?;
        ensure(total == distinct || g != f, || format!("{f}: Sturm {total} vs {distinct}"))?;

        let (_, m) = f.content_primitive().map_err(|e| e.to_string())?;
        let d = m.degree().unwrap_or(0);
        let kinds = [
            PatternKind::StrongPrefix { degree: d + i % 3 },
            PatternKind::SingleNegativeAt { index: 1 + i % 2, max_degree: d + 3 },
            PatternKind::MonicAtom { degree: d + 1 },
        ];
        for kind in kinds {
            let q = SignPatternQuery::new(&m, kind, &caps).map_err(|e| e.to_string())?;
            let result = if kind.integral() { integer_witness_search(&q) } else { rational_feasibility(&q) };
            if let WitnessResult::Witness(w) = result {
                witnesses_checked += 1;
                ensure(w.verify(&m, &kind), || format!("{m}: {kind} witness fails: {w:?}"))?;
            }
        }
    }
    ensure(witnesses_checked > 100, || format!("only {witnesses_checked} witnesses checked"))
}

fn criterion_10() -> Check {
    for n in 4..=8 {
        check_family(1, n - 4)?;
    }
    let forbidden = [(3, 4), (2, 3), (1, 2), (0, 1)];
    for entry in degree2_grid()? {
        if let (Some(s), Some(a)) = entry.pair {
            ensure(!forbidden.contains(&(s, a)), || format!("{} realizes ({s}, {a})", entry.m))?;
        }
    }
    Ok(())
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    check: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "base cubic gives (4, 5) with witness products", limit: Duration::from_secs(1), check: criterion_1 },
        Criterion { id: 2, name: "family sweep k ≤ 2, c ≤ 2", limit: Duration::from_secs(30), check: criterion_2 },
        Criterion { id: 3, name: "degree-two grid and general-pipeline spot checks", limit: Duration::from_secs(60), check: criterion_3 },
        Criterion { id: 4, name: "x² − 3x + 1 gives (1, ∞)", limit: Duration::from_secs(1), check: criterion_4 },
        Criterion { id: 5, name: "x → x² lift gives (8, 10) both ways", limit: Duration::from_secs(10), check: criterion_5 },
        Criterion { id: 6, name: "2x² − 3 gives (0, ∞) by a binomial relation", limit: Duration::from_secs(1), check: criterion_6 },
        Criterion { id: 7, name: "x³ − 5x² + 6x − 1 gives (∞, ∞)", limit: Duration::from_secs(1), check: criterion_7 },
        Criterion { id: 8, name: "oracle agrees with the sign-pattern engine", limit: Duration::from_secs(120), check: criterion_8 },
        Criterion { id: 9, name: "random-polynomial property suite", limit: Duration::from_secs(120), check: criterion_9 },
        Criterion { id: 10, name: "(n, n + 1) for n = 4..8; grid avoids n ≤ 3", limit: Duration::from_secs(60), check: criterion_10 },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= c.limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => "FAIL (over the time limit)".to_string(),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "criterion {:>2}: {verdict} | {} | tolerance exact | {:.3} s of {} s",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
