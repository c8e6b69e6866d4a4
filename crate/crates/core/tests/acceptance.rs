//! Acceptance criteria, one line each. Runs as a plain binary so the
//! verdicts show up in `cargo test` output; exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use symdyn::certify::{
    keylem_decay, multiplicity_upper_bound, sturmian_simplicity_certificate, thue_morse_cyclicity_evidence,
    MultiplicityBound, WordChooser,
};
use symdyn::complexity::{check_hitting, complexity, good_scales, right_special};
use symdyn::embed::{
    build_embedding, build_embedding_as, embedding_dimension, finite_mult, fix_dimension, injectivity_certificate,
    psi_eval, EmbeddingCase, PermutationSystem,
};
use symdyn::{Rational, Scalar, Subshift, SubshiftSpec};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn boc_identity() -> Outcome {
    let specs = [
        ("fibonacci", SubshiftSpec::fibonacci(30)),
        ("thue-morse", SubshiftSpec::thue_morse()),
        ("golden-mean", SubshiftSpec::golden_mean()),
    ];
    for (name, spec) in specs {
        let s = Subshift::new(spec);
        for n in 1..=20 {
            let sw = right_special(&s, n).map_err(|e| format!("{name} n={n}: {e}"))?;
            let (p, p1) = (complexity(&s, n).unwrap(), complexity(&s, n + 1).unwrap());
            check(
                sw.q_prime.len() + p == sw.q.len() + p1,
                format!("{name} n={n}: #Q'={} #Q={} p(n)={p} p(n+1)={p1}", sw.q_prime.len(), sw.q.len()),
            )?;
        }
    }
    Ok("3 subshifts, 1 ≤ n ≤ 20".into())
}

fn sturmian_slopes() -> Vec<(&'static str, Vec<u64>)> {
    vec![
        ("[1;1,1,…]", vec![1; 40]),
        ("[2;2,2,…]", vec![2; 30]),
        ("[1;2,3,…]", (1..=12).collect()),
        ("[3;1,4,1,5,…]", vec![3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]),
    ]
}

fn sturmian_complexity() -> Outcome {
    let slopes = sturmian_slopes();
    for (name, cf) in &slopes {
        let s = Subshift::new(SubshiftSpec::sturmian(cf.clone()).unwrap());
        for n in 1..=30 {
            let p = complexity(&s, n).map_err(|e| format!("{name} n={n}: {e}"))?;
            check(p == n + 1, format!("{name}: p({n}) = {p}"))?;
        }
    }
    Ok(format!("{} slopes, n ≤ 30", slopes.len()))
}

fn sturmian_rank() -> Outcome {
    for (name, cf) in sturmian_slopes() {
        let s = Subshift::new(SubshiftSpec::sturmian(cf).unwrap());
        let c = sturmian_simplicity_certificate(&s, 15).map_err(|e| format!("{name}: {e}"))?;
        check(c.levels.iter().all(|l| l.rank == l.n + 1), format!("{name}: rank deficiency"))?;
    }
    Ok("rank n+1 for n ≤ 15 on every slope".into())
}

fn fibonacci_bounds() -> Result<Vec<MultiplicityBound>, String> {
    let s = Subshift::new(SubshiftSpec::fibonacci(30));
    let scales = good_scales(&s, 1, 11).map_err(|e| e.to_string())?;
    scales
        .members
        .iter()
        .filter(|&&n| n >= 2)
        .map(|&n| multiplicity_upper_bound(&s, 1, n).map_err(|e| format!("n={n}: {e}")))
        .collect()
}

fn multiplicity(bounds: &[MultiplicityBound]) -> Outcome {
    check(bounds.len() == 9, format!("expected scales 2..=10, got {}", bounds.len()))?;
    for b in bounds {
        check(b.family_size == 2, format!("n={}: #Q'={}", b.n, b.family_size))?;
        for c in &b.certificates {
            check(
                c.partition.covered && c.partition.disjoint && c.partition.contained && c.partition.offset_bound,
                format!("n={}: partition of [{}] fails", b.n, c.target),
            )?;
            check(c.indicator_sum && c.span_member, format!("n={}: [{}] not represented", b.n, c.target))?;
        }
    }
    let cylinders: usize = bounds.iter().map(|b| b.certificates.len()).sum();
    Ok(format!("n ∈ 2..=10, #Q'_(n+1) = 2, {cylinders} cylinders certified"))
}

fn hitting() -> Outcome {
    let fib = Subshift::new(SubshiftSpec::fibonacci(30));
    let mut words = 0;
    for n in 1..=6 {
        let r = check_hitting(&fib, n, 1).map_err(|e| e.to_string())?;
        check(r.passed, format!("fibonacci n={n}: counterexample {:?}", r.counterexample))?;
        words += r.words_checked;
    }
    let tm = Subshift::new(SubshiftSpec::thue_morse());
    let n = *good_scales(&tm, 3, 64)
        .map_err(|e| e.to_string())?
        .members
        .first()
        .ok_or("no good scale for thue-morse")?;
    let r = check_hitting(&tm, n, 3).map_err(|e| e.to_string())?;
    check(r.passed, format!("thue-morse n={n}: counterexample {:?}", r.counterexample))?;
    Ok(format!("fibonacci n ≤ 6 ({words} words), thue-morse n = {n} ({} words), 0 counterexamples", r.words_checked))
}

fn offsets_within_period(bounds: &[MultiplicityBound]) -> Outcome {
    let pieces: usize = bounds.iter().flat_map(|b| &b.certificates).map(|c| c.pieces.len()).sum();
    for b in bounds {
        for c in &b.certificates {
            check(c.partition.dense3, format!("n={}: [{}] has a piece beyond its period", b.n, c.target))?;
        }
    }
    Ok(format!("{pieces} pieces checked"))
}

fn all_permutations(max_size: usize) -> impl Iterator<Item = PermutationSystem> {
    (1..=max_size).flat_map(|n| (0..n).permutations(n).map(|p| PermutationSystem::new(p).unwrap()))
}

fn coboundaries() -> Outcome {
    let mut count = 0;
    for s in all_permutations(7) {
        let c = finite_mult::<Rational>(&s);
        check(c.passed(), format!("{}: quotient {} vs k {}", s.notation(), c.quotient_dimension, c.multiplicity))?;
        count += 1;
    }
    Ok(format!("{count} permutations of size ≤ 7"))
}

fn embeddings() -> Outcome {
    let mut count = 0;
    let mut sharp = 0;
    let mut common = 0;
    let mut fix_checks = 0;
    for s in all_permutations(8) {
        let plan = build_embedding(&s);
        check(
            injectivity_certificate::<Rational>(&plan).injective,
            format!("{}: gcd-rule plan not injective", s.notation()),
        )?;
        count += 1;
        if embedding_dimension(&s).1 == EmbeddingCase::CommonFactor {
            common += 1;
            let lower = build_embedding_as(&s, EmbeddingCase::Coprime);
            let cert = injectivity_certificate::<Rational>(&lower);
            if let Some((mu, nu)) = cert.witness {
                let range = (0, lower.period as i64 - 1);
                check(
                    mu != nu && psi_eval(&lower, &mu, range).unwrap() == psi_eval(&lower, &nu, range).unwrap(),
                    format!("{}: witness does not collide", s.notation()),
                )?;
                sharp += 1;
            }
        }
        let lengths = s.cycle_lengths();
        for p in 1..=s.size() {
            if lengths.iter().all(|r| r % p == 0) {
                let k = lengths.len();
                check(
                    fix_dimension(&s, p).unwrap() == k * p - 1,
                    format!("{}: dim Fix at p={p}", s.notation()),
                )?;
                fix_checks += 1;
            }
        }
    }
    check(sharp >= 3, format!("only {sharp} sharpness failures"))?;
    Ok(format!(
        "{count} plans injective; {sharp}/{common} common-factor systems fail at d-1; {fix_checks} fix-dimension checks"
    ))
}

/// Smoothing window: `dev(q) ≤ dev(p)` whenever `4 ≤ p < q ≤ 32`, `q ≥ 2p`.
const SMOOTHING_FROM: usize = 4;
const SMOOTHING_FACTOR: usize = 2;
const P_MAX: usize = 32;
/// Required overall decay `dev(32) ≤ dev(1) / 4`.
const DECAY_RATIO: (i64, i64) = (1, 4);

fn thue_morse_evidence() -> Outcome {
    let tm = Subshift::new(SubshiftSpec::thue_morse());
    let mut summary = Vec::new();
    for n in 1..=3 {
        let e = thue_morse_cyclicity_evidence::<Rational>(&tm, n, P_MAX).map_err(|e| e.to_string())?;
        if let Some((p, q)) = e.smoothed_increase(SMOOTHING_FROM, SMOOTHING_FACTOR) {
            return Err(format!("n={n}: dev({q}) > dev({p})"));
        }
        let (first, last) = (e.deviation(1).unwrap().clone(), e.deviation(P_MAX).unwrap().clone());
        check(
            last <= first.clone() * Rational::ratio(DECAY_RATIO.0, DECAY_RATIO.1),
            format!("n={n}: dev(32) = {last}, dev(1) = {first}"),
        )?;
        summary.push(format!("n={n}: {} → {}", first.to_report_string(), last.to_report_string()));
    }
    Ok(format!(
        "{}; smoothing q ≥ {SMOOTHING_FACTOR}p from p = {SMOOTHING_FROM}, ratio ≤ {}/{}",
        summary.join(", "),
        DECAY_RATIO.0,
        DECAY_RATIO.1
    ))
}

fn period_growth() -> Outcome {
    let s = Subshift::new(SubshiftSpec::fibonacci(30));
    let t = keylem_decay::<Rational>(&s, &[2, 4, 8, 16], WordChooser::RightSpecial).map_err(|e| e.to_string())?;
    let ells: Vec<usize> = t.rows.iter().map(|r| r.ell).collect();
    check(t.rows.iter().all(|r| r.right_special), "chosen words are not right-special")?;
    check(ells.len() == 4 && t.ell_increasing, format!("ℓ = {ells:?}"))?;
    Ok(format!("ℓ(w_n) = {ells:?}"))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let mut failures = 0;
    let mut report = |c: Criterion, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {} [{took:.2?}]: {detail}", c.id, c.name),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {} [{took:.2?}]: {why}", c.id, c.name);
            }
        }
    };
    let c = |id, name, limit| Criterion { id, name, limit };

    report(c(1, "special-word count identity", secs(5)), &mut boc_identity);
    report(c(2, "sturmian complexity n+1", secs(5)), &mut sturmian_complexity);
    report(c(3, "sturmian rank certificate", secs(30)), &mut sturmian_rank);
    let mut bounds = Err("not computed".to_string());
    report(c(4, "fibonacci multiplicity bound", secs(60)), &mut || {
        bounds = fibonacci_bounds();
        bounds.as_ref().map_err(Clone::clone).and_then(|b| multiplicity(b))
    });
    report(c(5, "special-word hitting", None), &mut hitting);
    report(c(6, "offsets within period", None), &mut || {
        bounds.as_ref().map_err(Clone::clone).and_then(|b| offsets_within_period(b))
    });
    report(c(7, "coboundary quotient dimension", secs(60)), &mut coboundaries);
    report(c(8, "embedding injectivity and sharpness", None), &mut embeddings);
    report(c(9, "thue-morse birkhoff decay", secs(60)), &mut thue_morse_evidence);
    report(c(10, "fibonacci period growth", secs(5)), &mut period_growth);

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
