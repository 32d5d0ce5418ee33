//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use rankfilt_core::cartan::{cartan_cohomology, Evaluator};
use rankfilt_core::combinat::{
    compose_indices, enumerate_summands, latching_quotient, pushforward, IndexTuple, MaxRank, PointedMap,
    RankContext,
};
use rankfilt_core::decomp::{cube_report, CubeParams};
use rankfilt_core::orbitspace::descriptor::Factor;
use rankfilt_core::orbitspace::molien::compositions;
use rankfilt_core::orbitspace::{flag_poincare_oracle, molien_poincare};
use rankfilt_core::spectra::{
    ku_limit_series, pi0_check, small_range_report, subquotient_rational_check, ReportOptions, Verdict,
};
use rankfilt_core::{OrbitDescriptor, PoincarePoly};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(pairs: &[(u32, u64)]) -> PoincarePoly {
    PoincarePoly::from_pairs(pairs.iter().copied())
}

/// Finite-group trees of total dimension `d` over blocks `U(a)`: every
/// product of blocks `U(a)` and wreaths `S_j wr F`.
fn factors(d: u32) -> Vec<Factor> {
    fn items(d: u32) -> Vec<Factor> {
        let mut out = vec![Factor::block(d, 1)];
        for j in 2..=d {
            if d.is_multiple_of(j) {
                for inner in factors(d / j) {
                    out.push(Factor::wreath(j, inner));
                }
            }
        }
        out
    }
    // Multisets of items with dimensions summing to d, parts non-increasing.
    fn go(rest: u32, max: u32, acc: &mut Vec<Factor>, out: &mut Vec<Factor>) {
        if rest == 0 {
            out.push(Factor::Product(acc.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            for item in items(part) {
                acc.push(item);
                go(rest - part, part, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

fn torus_commensurable(k: u32) -> Vec<OrbitDescriptor> {
    let mut set = BTreeSet::new();
    for c in 0..=k {
        for f in factors(k - c) {
            let d = OrbitDescriptor::new(k, f, c).unwrap();
            assert!(d.is_torus_commensurable());
            set.insert(d);
        }
    }
    set.into_iter().collect()
}

fn engine_cross_validation() -> Check {
    let mut flags = 0;
    for k in 1..=6u32 {
        for comp in compositions(k) {
            let blocks: Vec<(u32, u32)> = comp.iter().map(|&a| (a, 1)).collect();
            let d = OrbitDescriptor::levi(k, &blocks, 0).map_err(|e| e.to_string())?;
            let p = molien_poincare(&d).map_err(|e| e.to_string())?;
            ensure(p == flag_poincare_oracle(&comp), || format!("{d}: molien {p}, oracle {}", flag_poincare_oracle(&comp)))?;
            flags += 1;
        }
    }
    let mut descriptors = 0;
    for k in 1..=4u32 {
        for d in torus_commensurable(k) {
            let m = molien_poincare(&d).map_err(|e| e.to_string())?;
            let c = cartan_cohomology(&d, 20).map_err(|e| e.to_string())?;
            ensure(m.agrees_through(&c, 20) && c.truncation().is_none(), || format!("{d}: molien {m}, cartan {c}"))?;
            descriptors += 1;
        }
    }
    Ok(format!("{flags} compositions, {descriptors} descriptors"))
}

fn normalizer_triviality() -> Check {
    for m in 1..=6u32 {
        let d: OrbitDescriptor = format!("U({m})/[S{m}wr(1)]").parse().map_err(|e: rankfilt_core::Error| e.to_string())?;
        let p = molien_poincare(&d).map_err(|e| e.to_string())?;
        ensure(p.is_one(), || format!("P({d}) = {p}"))?;
        if m <= 4 {
            let c = cartan_cohomology(&d, d.real_dimension()).map_err(|e| e.to_string())?;
            ensure(c.is_one(), || format!("cartan P({d}) = {c}"))?;
        }
    }
    Ok("m = 1..6".into())
}

fn rational_contractibility() -> Check {
    let ev = Evaluator::default();
    for m in 2..=4u32 {
        let r = cube_report(CubeParams::plain(m), &ev).map_err(|e| e.to_string())?;
        ensure(r.all_verified && r.signed_sum_zero, || format!("m = {m}: {:?}", r.failures))?;
        if m == 3 {
            let p = |u: &[u32]| r.vertex(u).map(|v| v.poincare.clone()).unwrap_or_default();
            let square = [p(&[]), p(&[2]), p(&[3]), p(&[2, 3])];
            let one = PoincarePoly::one();
            let p2 = poly(&[(0, 1), (2, 1), (4, 1)]);
            ensure(square == [one.clone(), p2.clone(), one, p2], || format!("m = 3 square: {square:?}"))?;
        }
    }
    Ok("m = 2, 3, 4".into())
}

fn subquotient_vanishing() -> Check {
    let ev = Evaluator::default();
    let mut n = 0;
    for l in 1..=2u32 {
        for m in 2..=3u32 {
            for k in l * m..=6 {
                let c = subquotient_rational_check(k, l, m, None, &ev).map_err(|e| e.to_string())?;
                ensure(c.verdict == Verdict::RationallyTrivial, || format!("(k={k}, l={l}, m={m}): {:?}", c.verdict))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} triples"))
}

fn first_stage_identifications() -> Check {
    let ev = Evaluator::default();
    let options = ReportOptions::default();
    let r = small_range_report(2, 1, &options, &ev).map_err(|e| e.to_string())?;
    let cp1 = poly(&[(0, 1), (2, 1)]);
    ensure(r.rational_homology.as_ref() == Some(&cp1), || format!("report 2 1: {:?}", r.rational_homology))?;
    // ∏_{i=2}^{k} (1 + t^{2i−1}), expanded by hand.
    let closed = [
        (2, poly(&[(0, 1), (3, 1)])),
        (3, poly(&[(0, 1), (3, 1), (5, 1), (8, 1)])),
        (4, poly(&[(0, 1), (3, 1), (5, 1), (7, 1), (8, 1), (10, 1), (12, 1), (15, 1)])),
    ];
    for (k, expected) in closed {
        let r = small_range_report(k, k, &options, &ev).map_err(|e| e.to_string())?;
        ensure(r.endomorphism.as_ref() == Some(&expected), || format!("report {k} {k}: {:?}", r.endomorphism))?;
        ensure(r.rational_homology.as_ref() == Some(&expected), || format!("report {k} {k}: homology"))?;
    }
    Ok("CP^1, PU(2), PU(3), PU(4)".into())
}

fn pi0_checks() -> Check {
    let ev = Evaluator::default();
    for k in 1..=5u32 {
        for l in 1..=k {
            let r = pi0_check(k, l, &ev).map_err(|e| e.to_string())?;
            ensure(r == 1, || format!("pi0({k}, {l}) = {r}"))?;
        }
        for l in k + 1..=6 {
            let r = pi0_check(k, l, &ev).map_err(|e| e.to_string())?;
            ensure(r == 0, || format!("pi0({k}, {l}) = {r}"))?;
        }
    }
    Ok("1 ≤ k ≤ 5".into())
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: 1000,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn pointed_map(source: usize, target: usize) -> impl Strategy<Value = PointedMap> {
    prop::collection::vec(0..=target, source).prop_map(move |v| PointedMap::new(target, v).unwrap())
}

fn context() -> impl Strategy<Value = RankContext> {
    (1u32..=10, 1u32..=4).prop_map(|(k, l)| RankContext::new(k, l).unwrap())
}

fn binomial(n: u64, r: u64) -> u64 {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn combinatorial_layer() -> Check {
    let functoriality = (context(), 0usize..5, 0usize..5, 0usize..5)
        .prop_flat_map(|(ctx, t, s, r)| {
            (Just(ctx), pointed_map(t, s), pointed_map(s, r), prop::collection::vec(0u32..5, t))
        });
    runner()
        .run(&functoriality, |(ctx, alpha, beta, entries)| {
            let x = IndexTuple::new(ctx, entries);
            let composite = beta.after(&alpha).unwrap();
            let lhs = pushforward(&composite, &x).unwrap();
            let rhs = pushforward(&beta, &pushforward(&alpha, &x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(pushforward(&PointedMap::identity(x.len()), &x).unwrap(), x);
            Ok(())
        })
        .map_err(|e| format!("functoriality: {e}"))?;

    let multiplicativity = (1u32..6, 1u32..6, 1u32..6, 0usize..4, 0usize..4).prop_flat_map(|(k, l, n, t, s)| {
        (
            Just((k, l, n)),
            prop::collection::vec(0u32..4, t),
            prop::collection::vec(0u32..4, s),
        )
    });
    runner()
        .run(&multiplicativity, |((k, l, n), a, b)| {
            let outer = IndexTuple::new(RankContext::new(k, l).unwrap(), a);
            let inner = IndexTuple::new(RankContext::new(l, n).unwrap(), b);
            let c = compose_indices(&outer, &inner).unwrap();
            prop_assert_eq!(c.rank(), outer.rank() * inner.rank());
            prop_assert_eq!(c.context, RankContext::new(k, n).unwrap());
            Ok(())
        })
        .map_err(|e| format!("rank multiplicativity: {e}"))?;

    runner()
        .run(&(context(), 0usize..8, 0u32..8), |(ctx, t, m)| {
            let q = latching_quotient(ctx, t, MaxRank::Finite(m));
            let bound = m.min(ctx.max_rank()) as usize;
            prop_assert_eq!(q.is_empty(), t > bound || t == 0);
            prop_assert!(q.tuples.iter().all(|x| x.entries.iter().all(|&e| e >= 1)));
            Ok(())
        })
        .map_err(|e| format!("latching triviality: {e}"))?;

    runner()
        .run(&(context(), 0usize..6, 0u32..7), |(ctx, t, m)| {
            let set = enumerate_summands(ctx, t, MaxRank::Finite(m));
            let bound = m.min(ctx.max_rank()) as u64;
            // Non-negative t-tuples with sum ≤ R, minus the zero tuple.
            let expected = binomial(bound + t as u64, t as u64) - 1;
            prop_assert_eq!(set.len() as u64, expected);
            Ok(())
        })
        .map_err(|e| format!("summand count: {e}"))?;
    Ok("4 suites × 1000 cases".into())
}

fn ku_limit() -> Check {
    let ev = Evaluator::default();
    let series = ku_limit_series(1, 1, 1, 12, &[0, 1, 2], &ev).map_err(|e| e.to_string())?;
    let closed = PoincarePoly::from_pairs((0..=6).map(|i| (2 * i, 1)));
    ensure(series.series.agrees_through(&closed, 12), || format!("series {}", series.series))?;
    ensure(series.stabilizes(), || "summand does not stabilize".into())?;
    for k in 8..=12u32 {
        let cp = molien_poincare(&OrbitDescriptor::levi(k, &[(1, 1)], k - 1).unwrap()).map_err(|e| e.to_string())?;
        ensure(cp.agrees_through(&series.series, 12), || format!("CP^{} = {cp}", k - 1))?;
    }
    Ok("degrees ≤ 12, k = 8..12".into())
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("engine cross-validation", engine_cross_validation, Duration::from_secs(60)),
        ("normalizer triviality", normalizer_triviality, Duration::from_secs(10)),
        ("rational contractibility of L_m", rational_contractibility, Duration::from_secs(300)),
        ("subquotient rational vanishing", subquotient_vanishing, Duration::from_secs(600)),
        ("first-stage identifications", first_stage_identifications, Duration::from_secs(120)),
        ("pi0 checks", pi0_checks, Duration::from_secs(30)),
        ("combinatorial layer", combinatorial_layer, Duration::from_secs(30)),
        ("ku limit", ku_limit, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed > *limit => ("FAIL", format!("over time limit {limit:?}")),
            Ok(detail) => ("PASS", detail),
            Err(reason) => ("FAIL", reason),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} criterion {}: {name} ({detail}; {elapsed:.2?})", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
