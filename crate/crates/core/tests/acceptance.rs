//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p betaexp --test acceptance`.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use betaexp::admissible::{
    check_alpha_self, check_beta_self, check_greedy_vs_alpha, check_quasi_vs_alpha, Verdict,
};
use betaexp::expand::digit_bound_check;
use betaexp::oracle::{brute_greedy_prefix, brute_quasi_prefix};
use betaexp::recover::{base_from_alpha, base_from_beta};
use betaexp::relate::{alpha_from_beta, enumerate_between, quasi_from_greedy};
use betaexp::{greedy_expand, quasi_greedy_expand, BaseSpec, Bound, DigitSeq, QElement, Seq, Sign};
use common::{base, digits, grid, BASES, GOLDEN};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5EED_2024;
const ORACLE_DIGITS: usize = 10;
const CYCLE_DIGITS: usize = 256;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    for f in failures.iter().take(5) {
        detail.push_str(&format!("\n      {f}"));
    }
    Outcome {
        pass: failures.is_empty(),
        detail,
    }
}

fn oracle_equivalence(quasi: bool) -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for (qt, q, bound, xl, x) in grid() {
        cases += 1;
        let (res, brute) = if quasi {
            (
                quasi_greedy_expand(&q, &bound, &x, ORACLE_DIGITS, true),
                brute_quasi_prefix(&q, &bound, &x, ORACLE_DIGITS),
            )
        } else {
            (
                greedy_expand(&q, &bound, &x, ORACLE_DIGITS, true),
                brute_greedy_prefix(&q, &bound, &x, ORACLE_DIGITS),
            )
        };
        match (res, brute) {
            (Ok(res), Ok(brute)) => {
                let got = digits(&res.leading_digits(ORACLE_DIGITS));
                let want = digits(brute.digits());
                if got != want[..got.len()] {
                    failures.push(format!("q={qt} M={bound} x={xl}: {got:?} vs {want:?}"));
                }
            }
            (a, b) => failures.push(format!(
                "q={qt} M={bound} x={xl}: {:?} / {:?}",
                a.err(),
                b.err()
            )),
        }
    }
    outcome(
        &failures,
        format!("{cases} grid points, first {ORACLE_DIGITS} digits"),
    )
}

fn alpha_of(q: &BaseSpec, bound: &Bound) -> Seq {
    quasi_greedy_expand(q, bound, &q.one(), CYCLE_DIGITS, true)
        .unwrap()
        .sequence()
}

fn beta_of(q: &BaseSpec, bound: &Bound) -> Seq {
    greedy_expand(q, bound, &q.one(), CYCLE_DIGITS, true)
        .unwrap()
        .sequence()
}

fn characterization_soundness() -> Outcome {
    let mut failures = Vec::new();
    let (mut checked, mut admissible, mut open) = (0, 0, 0);
    let mut alphas: BTreeMap<(String, String), Seq> = BTreeMap::new();
    for (qt, q, bound, xl, x) in grid() {
        let alpha = alphas
            .entry((qt.clone(), bound.to_string()))
            .or_insert_with(|| alpha_of(&q, &bound))
            .clone();
        let is_one = x.value_eq(&q.one());
        for quasi in [false, true] {
            let res = if quasi {
                quasi_greedy_expand(&q, &bound, &x, CYCLE_DIGITS, true)
            } else {
                greedy_expand(&q, &bound, &x, CYCLE_DIGITS, true)
            }
            .unwrap();
            let Some(c) = res.closed_form else { continue };
            checked += 1;
            let report = match (quasi, is_one) {
                (true, true) => check_alpha_self(&c, &bound),
                (false, true) => check_beta_self(&c, &bound),
                (true, false) => check_quasi_vs_alpha(&c, &alpha, &bound).unwrap(),
                (false, false) => check_greedy_vs_alpha(&c, &alpha, &bound).unwrap(),
            };
            match report.verdict {
                Verdict::Admissible => admissible += 1,
                // Only possible when alpha itself has no closed form.
                Verdict::Undetermined => open += 1,
                Verdict::Violated => failures.push(format!(
                    "q={qt} M={bound} x={xl} {}: {c} fails {}",
                    res.mode, report.condition
                )),
            }
        }
    }
    outcome(
        &failures,
        format!("{checked} cycle-detected outputs, {admissible} admissible, {open} undetermined against an alpha prefix"),
    )
}

/// Every canonical eventually periodic sequence over `{0..m}` with the given
/// length limits.
fn all_sequences(m: u64, max_pre: usize, max_per: usize) -> Vec<DigitSeq> {
    fn words(m: u64, len: usize) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..=m).map(move |d| {
                        let mut w = w.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        out
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for pl in 0..=max_pre {
        for pre in words(m, pl) {
            for ql in 0..=max_per {
                for per in words(m, ql) {
                    let s = DigitSeq::from_digits(&pre, &per, Bound::finite(m)).unwrap();
                    if seen.insert(s.to_string()) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

fn bijection_round_trips() -> Outcome {
    let mut failures = Vec::new();
    let (mut n_alpha, mut n_beta) = (0, 0);
    for m in 1..=2u64 {
        let bound = Bound::finite(m);
        for s in all_sequences(m, 2, 3) {
            if check_alpha_self(&s, &bound).verdict == Verdict::Admissible {
                n_alpha += 1;
                let back = base_from_alpha(&s, &bound)
                    .and_then(|q| quasi_greedy_expand(&q, &bound, &q.one(), CYCLE_DIGITS, true));
                match back {
                    Ok(r) if r.closed_form.as_ref() == Some(&s) => {}
                    Ok(r) => failures.push(format!("alpha {s} M={m}: got {}", r.sequence())),
                    Err(e) => failures.push(format!("alpha {s} M={m}: {e}")),
                }
            }
            if check_beta_self(&s, &bound).verdict == Verdict::Admissible {
                n_beta += 1;
                let q = match base_from_beta(&s, &bound) {
                    Ok(q) => q,
                    Err(e) => {
                        failures.push(format!("beta {s} M={m}: {e}"));
                        continue;
                    }
                };
                if q.is_unit() {
                    if s.to_string() != "1()" {
                        failures.push(format!("beta {s} M={m}: unexpected q = 1"));
                    }
                    continue;
                }
                match greedy_expand(&q, &bound, &q.one(), CYCLE_DIGITS, true) {
                    Ok(r) if r.closed_form.as_ref() == Some(&s) => {}
                    Ok(r) => failures.push(format!("beta {s} M={m}: got {}", r.sequence())),
                    Err(e) => failures.push(format!("beta {s} M={m}: {e}")),
                }
            }
        }
    }
    outcome(
        &failures,
        format!(
            "{n_alpha} admissible alphas, {n_beta} admissible betas (M ≤ 2, |pre| ≤ 2, |per| ≤ 3)"
        ),
    )
}

fn transforms() -> Outcome {
    let mut failures = Vec::new();
    let (mut n_quasi, mut n_alpha) = (0, 0);
    let mut done_alpha = HashSet::new();
    for (qt, q, bound, xl, x) in grid() {
        let Seq::Closed(alpha) = alpha_of(&q, &bound) else {
            continue;
        };
        if done_alpha.insert((qt.clone(), bound.to_string())) {
            if let Seq::Closed(beta) = beta_of(&q, &bound) {
                n_alpha += 1;
                match alpha_from_beta(&beta, &bound) {
                    Ok(a) if a == alpha => {}
                    other => failures.push(format!(
                        "q={qt} M={bound}: alpha_from_beta {beta} -> {other:?}"
                    )),
                }
            }
        }
        let g = greedy_expand(&q, &bound, &x, CYCLE_DIGITS, true)
            .unwrap()
            .closed_form;
        let a = quasi_greedy_expand(&q, &bound, &x, CYCLE_DIGITS, true)
            .unwrap()
            .closed_form;
        let (Some(g), Some(a)) = (g, a) else { continue };
        n_quasi += 1;
        match quasi_from_greedy(&g, &alpha, &bound) {
            Ok(t) if t == a => {}
            other => failures.push(format!(
                "q={qt} M={bound} x={xl}: {g} -> {other:?}, want {a}"
            )),
        }
    }
    outcome(
        &failures,
        format!("{n_quasi} quasi_from_greedy cases, {n_alpha} alpha_from_beta cases"),
    )
}

fn enumeration() -> Outcome {
    let mut failures = Vec::new();
    let q = base(GOLDEN);
    let bound = Bound::finite(1);
    let list = enumerate_between(&q, &bound, &q.one(), 5).unwrap();
    if list.len() != 6 {
        failures.push(format!("expected 6 sequences, got {}", list.len()));
    }
    // b = beta = 1 1 0^∞: b_1 b_2^- = 10, beta_1 beta_2^- = 10, beta_1 beta_2 = 11.
    let mut expected = vec![DigitSeq::from_digits(&[1, 1], &[], bound.clone()).unwrap()];
    for n in 0..5 {
        let mut w = vec![1u64, 0];
        for _ in 0..n {
            w.extend([1, 0]);
        }
        w.extend([1, 1]);
        expected.push(DigitSeq::from_digits(&w, &[], bound.clone()).unwrap());
    }
    if list != expected {
        failures.push(format!("got {list:?}"));
    }
    for w in list.windows(2) {
        if w[0] <= w[1] {
            failures.push(format!("{} not above {}", w[0], w[1]));
        }
    }
    for s in &list {
        if !s.evaluate(&q).unwrap().value_eq(&q.one()) {
            failures.push(format!("{s} does not evaluate to 1"));
        }
    }
    let shown: Vec<String> = list.iter().map(|s| s.to_string()).collect();
    outcome(&failures, format!("[{}]", shown.join(", ")))
}

fn random_seq(rng: &mut ChaCha8Rng, m: u64, max_pre: usize, max_per: usize) -> DigitSeq {
    let pre: Vec<u64> = (0..rng.gen_range(0..=max_pre))
        .map(|_| rng.gen_range(0..=m))
        .collect();
    let per: Vec<u64> = (0..rng.gen_range(1..=max_per))
        .map(|_| rng.gen_range(0..=m))
        .collect();
    DigitSeq::from_digits(&pre, &per, Bound::finite(m)).unwrap()
}

fn tail_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut bases: BTreeMap<String, BaseSpec> = BTreeMap::new();
    let (mut triples, mut checks) = (0, 0);
    let mut attempts = 0;
    while triples < 200 && attempts < 200_000 {
        attempts += 1;
        let m = rng.gen_range(1..=3u64);
        let bound = Bound::finite(m);
        let alpha = random_seq(&mut rng, m, 2, 4);
        if check_alpha_self(&alpha, &bound).verdict != Verdict::Admissible {
            continue;
        }
        let a = random_seq(&mut rng, m, 3, 4);
        if check_quasi_vs_alpha(&a, &alpha, &bound).unwrap().verdict != Verdict::Admissible {
            continue;
        }
        let key = format!("{alpha}/{m}");
        let q = match bases.get(&key) {
            Some(q) => q.clone(),
            None => match base_from_alpha(&alpha, &bound) {
                Ok(q) => {
                    bases.insert(key, q.clone());
                    q
                }
                Err(e) => {
                    failures.push(format!("alpha {alpha}: {e}"));
                    continue;
                }
            },
        };
        triples += 1;
        let total = a.evaluate(&q).unwrap();
        let horizon = a.preperiod().len() + 2 * a.cycle_len();
        let mut head = q.zero();
        let mut weight = q.one();
        let qinv = q.q().inv().unwrap();
        for n in 1..=horizon {
            weight = &weight * &qinv;
            let d = a.digit(n);
            head = &head + &weight.scale(&BigRational::from_integer(d.clone().into()));
            if !bound.is_below_max(&d) {
                continue;
            }
            checks += 1;
            // q^n (a_{n+1}/q^{n+1} + ...) ≤ 1, and the same via the shifted sequence.
            let scaled = (&total - &head).checked_mul(&q.q().pow(n as u32)).unwrap();
            let shifted = a.shift(n).evaluate(&q).unwrap();
            if !scaled.value_eq(&shifted) {
                failures.push(format!("a={a} alpha={alpha} n={n}: tail identity broken"));
            }
            if (&q.one() - &scaled).sign() == Sign::Negative {
                failures.push(format!("a={a} alpha={alpha} n={n}: tail exceeds 1/q^n"));
            }
        }
    }
    if triples < 200 {
        failures.push(format!("only {triples} admissible triples found"));
    }
    outcome(
        &failures,
        format!("{triples} triples, {checks} tail inequalities, seed {SEED:#x}"),
    )
}

fn unbounded_digit_bound() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for qt in ["5/2", GOLDEN, "3"] {
        let q = base(qt);
        for xt in ["1", "7", "22/7"] {
            let x = QElement::parse(xt, &q).unwrap();
            for quasi in [false, true] {
                let res = if quasi {
                    quasi_greedy_expand(&q, &Bound::Infinite, &x, 64, false)
                } else {
                    greedy_expand(&q, &Bound::Infinite, &x, 64, false)
                }
                .unwrap();
                cases += 1;
                let direct = res.digits.digits().iter().skip(1).all(|d| {
                    (&q.q() - &q.integer(num_bigint::BigInt::from(d.clone()))).sign()
                        == Sign::Positive
                });
                if !direct || !digit_bound_check(&res).unwrap() {
                    failures.push(format!("q={qt} x={xt} {}: {}", res.mode, res.digits));
                }
            }
        }
    }
    outcome(&failures, format!("{cases} expansions of 64 digits"))
}

fn m_independence() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for qt in BASES {
        let q = base(qt);
        for m in 1..=3u64 {
            let top = q.integer(m + 1).checked_div(&q.q()).unwrap();
            for k in 1..=8u64 {
                let x = top.scale(&BigRational::new(k.into(), 8u64.into()));
                let fin = quasi_greedy_expand(&q, &Bound::finite(m), &x, 32, false).unwrap();
                let inf = quasi_greedy_expand(&q, &Bound::Infinite, &x, 32, false).unwrap();
                cases += 1;
                if fin.digits.digits() != inf.digits.digits() {
                    failures.push(format!(
                        "q={qt} M={m} x={k}/8*(M+1)/q: {} vs {}",
                        fin.digits, inf.digits
                    ));
                }
            }
        }
    }
    outcome(
        &failures,
        format!("{cases} cases, x = k/8*(M+1)/q, 32 digits"),
    )
}

fn monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let mut failures = Vec::new();
    let mut undecided = Vec::new();
    for _ in 0..50 {
        let m = rng.gen_range(1..=3u64);
        let den = rng.gen_range(2..=12u64);
        let mut nums = [rng.gen_range(1..=m * den), rng.gen_range(1..=m * den)];
        while nums[0] == nums[1] {
            nums[1] = rng.gen_range(1..=m * den);
        }
        nums.sort_unstable();
        let qs: Vec<BaseSpec> = nums
            .iter()
            .map(|&k| BaseSpec::rational(BigRational::new((den + k).into(), den.into())).unwrap())
            .collect();
        let bound = Bound::finite(m);
        let a: Vec<Vec<BigUint>> = qs
            .iter()
            .map(|q| {
                quasi_greedy_expand(q, &bound, &q.one(), 64, true)
                    .unwrap()
                    .leading_digits(64)
            })
            .collect();
        let label = format!("M={m} q1={} q2={}", qs[0], qs[1]);
        match a[0].iter().zip(&a[1]).find(|(x, y)| x != y) {
            Some((x, y)) if x < y => {}
            Some(_) => failures.push(format!("{label}: alpha(q1) > alpha(q2)")),
            None => undecided.push(label),
        }
    }
    let mut detail = format!("50 pairs, {} undecided within 64 digits", undecided.len());
    for u in &undecided {
        detail.push_str(&format!("\n      undecided: {u}"));
    }
    outcome(&failures, detail)
}

fn cli_golden() -> Outcome {
    let cases: [(&str, &[&str], i32); 4] = [
        (
            "expand_golden",
            &[
                "expand",
                "--mode",
                "greedy",
                "--base",
                "root(1,-1,-1;1.5,1.7)",
                "--M",
                "1",
                "--x",
                "1",
            ],
            0,
        ),
        (
            "check_beta_violated",
            &["check", "--condition", "beta", "--seq", "(10)", "--M", "1"],
            1,
        ),
        (
            "recover_beta_golden",
            &[
                "recover",
                "--from",
                "beta",
                "--seq",
                "110()",
                "--M",
                "1",
                "--decimals",
                "10",
            ],
            0,
        ),
        (
            "relate_golden_enumerate",
            &[
                "relate",
                "--base",
                "root(1,-1,-1;1.5,1.7)",
                "--M",
                "1",
                "--x",
                "1",
                "--enumerate",
                "2",
            ],
            0,
        ),
    ];
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let mut failures = Vec::new();
    for (name, args, code) in cases {
        let out = betaexp::cli::run(std::iter::once("betaexp").chain(args.iter().copied()));
        let want = std::fs::read_to_string(format!("{dir}/{name}.txt")).unwrap_or_default();
        if out.stdout != want || out.code != code {
            failures.push(format!("{name}: exit {} output {:?}", out.code, out.stdout));
        }
    }
    outcome(
        &failures,
        "expand, check, recover and relate invocations, byte-exact".into(),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence, greedy", || oracle_equivalence(false)),
        ("oracle equivalence, quasi-greedy", || {
            oracle_equivalence(true)
        }),
        ("characterization soundness", characterization_soundness),
        ("bijection round trips", bijection_round_trips),
        ("greedy/quasi-greedy transforms", transforms),
        ("enumeration of intermediate expansions", enumeration),
        ("tail bound", tail_bound),
        ("M = ∞ digit bound", unbounded_digit_bound),
        ("M-independence of quasi-greedy expansions", m_independence),
        ("monotonicity of alpha in q", monotonicity),
        ("CLI golden output", cli_golden),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let tag = if r.pass { "PASS" } else { "FAIL" };
        if !r.pass {
            failed += 1;
        }
        println!(
            "[{tag}] {:>2}. {name}: {} ({:.1}s)",
            i + 1,
            r.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
