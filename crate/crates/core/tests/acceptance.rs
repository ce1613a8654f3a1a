//! One PASS/FAIL line per acceptance criterion, all comparisons exact.
//!
//! The lines go to stderr even when output is captured. Criteria listed in
//! `KNOWN_UNATTAINABLE` are reported as FAIL and do not abort the run; every
//! other criterion must pass.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use hypertab::identities::{golden_key, golden_verdicts, run_identity, run_suite, IdentityReport, RunOptions, Verdict};
use hypertab::sequences::{fibonacci, hyperharmonic, incomplete_fibonacci, incomplete_lucas, lucas};
use hypertab::triangle::{EulerSeidelTableau, Preset};
use hypertab::{binomial, Integer, Rational};

/// The printed Lucas base case `(2k+1)L_{2k} + L_{2k+2}` at `n = 2k+1`
/// disagrees with the direct binomial transform for every `k`.
const KNOWN_UNATTAINABLE: &[u32] = &[9];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn run(id: &str, variant: &str) -> Result<IdentityReport, String> {
    run_identity(id, variant, &RunOptions::default()).map_err(|e| format!("{id}/{variant}: {e}"))
}

fn passes(id: &str, variant: &str) -> Result<usize, String> {
    let r = run(id, variant)?;
    match r.verdict {
        Verdict::Pass => Ok(r.tested),
        v => Err(format!("{id}/{variant}: {v} with {} failures, first {:?}", r.failure_count, r.failures.first())),
    }
}

fn all_pass(ids: &[(&str, &str)]) -> Result<usize, String> {
    ids.iter().map(|(id, v)| passes(id, v)).sum()
}

fn pinned(id: &str, variant: &str) -> Result<Verdict, String> {
    let r = run(id, variant)?;
    let expected = golden_verdicts().get(&golden_key(id, variant)).copied();
    if expected == Some(r.verdict) {
        Ok(r.verdict)
    } else {
        Err(format!("{id}/{variant}: {} but golden file says {expected:?}", r.verdict))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Outcome {
    let r = run("symmetric-closed-form", "printed")?;
    check(r.tested == 22_500, || format!("tested {} instances", r.tested))?;
    check(r.verdict == Verdict::Pass, || format!("{} failures", r.failure_count))?;
    Ok("22500 entries".into())
}

fn c2() -> Outcome {
    let n = all_pass(&[("theorem2-row", "printed"), ("theorem2-col", "printed")])?;
    check(n == 1200, || format!("tested {n} series"))?;
    Ok(format!("{n} series to order 25"))
}

fn c3() -> Outcome {
    let n = all_pass(&[
        ("hyperharmonic-gf", "statement"),
        ("hyperharmonic-gf", "proof-form"),
        ("hyperharmonic-explicit", "printed"),
        ("hyperharmonic-closed-form", "printed"),
    ])?;
    // recurrence against the binomial closed form
    for r in 1..=10i64 {
        let mut row: Vec<Rational> = (1..=40).map(|m| Rational::new(1, m).unwrap()).collect();
        for _ in 0..r {
            let mut acc = Rational::from(0);
            for v in row.iter_mut() {
                acc = &acc + &*v;
                *v = acc.clone();
            }
        }
        for (i, v) in row.iter().enumerate() {
            let n = i as i64 + 1;
            check(*v == hyperharmonic(n, r).unwrap(), || format!("H_{n}^({r})"))?;
        }
    }
    Ok(format!("{n} instances plus 400 recurrence values"))
}

fn c4() -> Outcome {
    let n = all_pass(&[("dumont-roundtrip", "printed"), ("euler-gf", "printed")])?;
    let mut es = EulerSeidelTableau::new(hypertab::triangle::Seed::rule(|i| Rational::from(fibonacci(i as i64))));
    let col = es.first_column(21).map_err(|e| e.to_string())?;
    for (i, v) in col.iter().enumerate() {
        check(*v == Rational::from(fibonacci(2 * i as i64)), || format!("first column at {i}: {v}"))?;
    }
    Ok(format!("{n} instances, F_(2n) for n <= 20"))
}

fn c5() -> Outcome {
    let n = all_pass(&[("hypmat-identification", "printed"), ("fibmat-identification", "printed")])?;
    let mut fib = Preset::FibOdd.tableau();
    let mut luc = Preset::LucasOdd.tableau();
    for k in 1..=12i64 {
        for m in 0..=30i64 {
            check(fib.entry(m, k).unwrap() == Rational::from(fibonacci(m + 2 * k - 1)), || format!("F at ({m},{k})"))?;
            check(luc.entry(m, k).unwrap() == Rational::from(lucas(m + 2 * k - 1)), || format!("L at ({m},{k})"))?;
        }
    }
    Ok(format!("{n} instances"))
}

fn c6() -> Outcome {
    let n = all_pass(&[
        ("propfib1-row", "printed"),
        ("propfib1-row", "lucas"),
        ("propfib1-col", "printed"),
        ("propfib1-col", "lucas"),
        ("propfib2-row", "oracle-only"),
        ("propfib2-col", "oracle-only"),
        ("propfib2-coeffs", "shifted"),
    ])?;
    let pins: Vec<String> = [("propfib2-row", "printed"), ("propfib2-col", "printed"), ("propfib2-coeffs", "printed")]
        .iter()
        .map(|(id, v)| pinned(id, v).map(|verdict| format!("{id}/{v} {verdict}")))
        .collect::<Result<_, _>>()?;
    Ok(format!("{n} instances; {}", pins.join(", ")))
}

fn c7() -> Outcome {
    let n = all_pass(&[("incfib-gf-vs-sum", "printed"), ("incluc-gf-vs-sum", "printed"), ("incomplete-anchors", "printed")])?;
    for k in 0..=10i64 {
        check(incomplete_fibonacci(2 * k + 1, k).unwrap() == fibonacci(2 * k + 1), || format!("F_(2k+1)({k})"))?;
        check(incomplete_fibonacci(2 * k + 2, k).unwrap() == fibonacci(2 * k + 2), || format!("F_(2k+2)({k})"))?;
        check(incomplete_lucas(2 * k, k).unwrap() == lucas(2 * k), || format!("L_(2k)({k})"))?;
    }
    Ok(format!("{n} instances"))
}

fn c8() -> Outcome {
    let n = all_pass(&[
        ("binsuminc", "printed"),
        ("binsumincl", "printed"),
        ("inc-cessaro-fib", "printed"),
        ("inc-cessaro-lucas", "dual"),
        ("inc-cessaro-lucas", "forward"),
    ])?;
    Ok(format!("{n} instances"))
}

fn transform(n: i64, k: i64, term: fn(i64, i64) -> hypertab::Result<Integer>) -> Integer {
    (0..=n).map(|l| binomial(n, l).unwrap() * term(l, k).unwrap()).sum()
}

fn c9() -> Outcome {
    let tested = all_pass(&[
        ("incfib-binom-transform", "oracle"),
        ("incfib-binom-transform", "euler-seidel"),
        ("incluc-binom-transform", "oracle"),
        ("incluc-binom-transform", "euler-seidel"),
    ])?;
    for (id, v) in [
        ("incfib-binom-transform", "printed-F-closed-form"),
        ("incluc-binom-transform", "printed-L-closed-form"),
        ("incluc-binom-transform", "printed-base-case"),
    ] {
        pinned(id, v)?;
    }
    for k in 1..=6i64 {
        for n in 0..=2 * k + 1 {
            let f = transform(n, k, incomplete_fibonacci);
            let expected = if n <= 2 * k { Integer::from(0) } else { fibonacci(2 * k + 1) };
            check(f == expected, || format!("Fibonacci base case k={k} n={n}: {f} vs {expected}"))?;
        }
    }
    for k in 1..=6i64 {
        for n in 0..=2 * k + 1 {
            let l = transform(n, k, incomplete_lucas);
            let expected = match n - 2 * k {
                i64::MIN..=-1 => Integer::from(0),
                0 => lucas(2 * k),
                _ => Integer::from(2 * k + 1) * lucas(2 * k) + lucas(2 * k + 2),
            };
            check(l == expected, || {
                format!("{tested} oracle instances pass; printed Lucas base case at k={k} n={n}: transform {l}, printed {expected}")
            })?;
        }
    }
    Ok(format!("{tested} instances and all base cases"))
}

fn c10() -> Outcome {
    passes("lastfib", "corrected")?;
    passes("lastfib", "tail")?;
    let a = run("lastfib", "printed")?;
    let b = run("lastfib", "printed")?;
    check(a.failure_count > 0, || "printed variant does not fail".into())?;
    check(a == b, || "reports differ between runs".into())?;
    let first = &a.failures[0];
    let key = (first.params["k"], first.params["n"], first.lhs.as_str(), first.rhs.as_str());
    check(key == (1, 4, "3", "2"), || format!("smallest counterexample {key:?}"))?;
    let lastluc: Vec<String> = ["printed", "index-shifted", "literal-fibonacci-ab"]
        .iter()
        .map(|v| pinned("lastluc", v).map(|verdict| format!("{v} {verdict}")))
        .collect::<Result<_, _>>()?;
    Ok(format!("printed {} at k=1 n=4 (3 vs 2); lastluc {}", a.verdict, lastluc.join(", ")))
}

fn c11() -> Outcome {
    let n = all_pass(&[
        ("fibnew1", "printed"),
        ("fibnew2", "printed"),
        ("lucas-corollary", "printed"),
        ("helpfib", "printed"),
        ("helpluc", "printed"),
    ])?;
    Ok(format!("{n} instances"))
}

fn c12() -> Outcome {
    let n = all_pass(&[
        ("hyperfib-gf", "printed"),
        ("hyperfib-gf", "printed-initial-values"),
        ("hyperluc-gf", "printed"),
        ("hyperluc-gf", "summation-initial-values"),
    ])?;
    check(hypertab::sequences::hyperlucas(0, 1).unwrap() == Integer::from(2), || "L_0^(1) is not 2".into())?;
    let v = pinned("hyperluc-gf", "printed-initial-values")?;
    check(v == Verdict::ErratumConfirmed, || format!("printed initial values are {v}"))?;
    Ok(format!("{n} instances; printed initial values {v}"))
}

fn c13() -> Outcome {
    let start = Instant::now();
    let mut t = Preset::Hyperharmonic.tableau();
    let rect = t.rectangle(199, 199).map_err(|e| e.to_string())?;
    let fill = start.elapsed();
    check(fill < Duration::from_secs(5), || format!("200x200 fill took {fill:?}"))?;
    for (k, n) in [(0, 0), (1, 9), (199, 199), (57, 120)] {
        check(rect[k][n] == hyperharmonic(n as i64 + 1, k as i64).unwrap(), || format!("entry ({n},{k})"))?;
    }
    let start = Instant::now();
    let summary = run_suite(None, &RunOptions::default()).map_err(|e| e.to_string())?;
    let suite = start.elapsed();
    check(suite < Duration::from_secs(60), || format!("check all took {suite:?}"))?;
    check(summary.all_expected(), || format!("unexpected verdicts {:?}", summary.unexpected))?;
    Ok(format!("fill {fill:.2?}, check all {suite:.2?}"))
}

fn c14() -> Outcome {
    let a = serde_json::to_string_pretty(&run_suite(None, &RunOptions::default()).unwrap().reports).unwrap();
    let b = serde_json::to_string_pretty(&run_suite(None, &RunOptions::default()).unwrap().reports).unwrap();
    check(a == b, || "suite reports differ between runs".into())?;
    Ok(format!("{} identical bytes", a.len()))
}

fn line(text: String) {
    writeln!(std::io::stderr().lock(), "{text}").unwrap();
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        (1, "closed form vs recurrence", 5, c1),
        (2, "row and column generating functions", 10, c2),
        (3, "hyperharmonic agreement", 5, c3),
        (4, "Dumont round trip and Euler GF", 2, c4),
        (5, "tableau identifications", 2, c5),
        (6, "Fibonacci tableau series", 30, c6),
        (7, "incomplete-number consistency", 5, c7),
        (8, "binomial sums of incomplete numbers", 10, c8),
        (9, "binomial-transform theorems", 10, c9),
        (10, "last Fibonacci and Lucas theorems", 30, c10),
        (11, "corollaries", 2, c11),
        (12, "hyperfibonacci and hyperlucas GFs", 30, c12),
        (13, "performance", 65, c13),
        (14, "determinism", 120, c14),
    ];
    let mut failed = BTreeMap::new();
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let mut outcome = f();
        let took = start.elapsed();
        if outcome.is_ok() && took > Duration::from_secs(budget) {
            outcome = Err(format!("took {took:.2?}, budget {budget} s"));
        }
        match &outcome {
            Ok(detail) => line(format!("PASS criterion {id:>2} {name}: {detail} ({took:.2?})")),
            Err(why) => {
                line(format!("FAIL criterion {id:>2} {name}: {why} ({took:.2?})"));
                failed.insert(id, why.clone());
            }
        }
    }
    let unexpected: Vec<_> = failed.keys().filter(|id| !KNOWN_UNATTAINABLE.contains(id)).collect();
    assert!(unexpected.is_empty(), "criteria failed: {failed:?}");
    for id in KNOWN_UNATTAINABLE {
        assert!(failed.contains_key(id), "criterion {id} now passes; drop it from KNOWN_UNATTAINABLE");
    }
}
