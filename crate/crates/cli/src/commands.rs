use std::path::Path;

use serde_json::{json, Value};
use symdyn::certify::{
    functions_rank, keylem_decay, multiplicity_upper_bound, sturmian_simplicity_certificate,
    thue_morse_cyclicity_evidence, CylinderFunction, WordChooser,
};
use symdyn::complexity::{boshernitzan_bound, complexity, good_scales, right_special};
use symdyn::decompose::{decompose_cylinder, verify_partition, DecompositionRecord};
use symdyn::embed::{
    build_embedding_as, embedding_dimension, finite_mult, fix_dimension, injectivity_certificate, EmbeddingCase,
    PermutationSystem,
};
use symdyn::{Error, Limits, Rational, Result, Scalar, Subshift, SubshiftSpec, Word};

use crate::args::{CaseArg, ChooserArg, Command};
use crate::report::Report;

const THUE_MORSE_TEXT: &str = "kind=substitution\n0->01\n1->10\nseed=0\n";

/// A spec file path, or the spec text itself when no such file exists.
fn load_spec(arg: &str, limits: Limits) -> Result<(Subshift, String)> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("cannot read {arg}: {e}")))?
    } else if arg.contains('=') {
        arg.to_string()
    } else {
        return Err(Error::InvalidInput(format!("no spec file '{arg}'")));
    };
    let spec = SubshiftSpec::parse(&text)?;
    Ok((Subshift::with_limits(spec, limits), text))
}

fn value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn run(command: &Command, limits: Limits, full: bool) -> Result<Report> {
    match command {
        Command::Complexity { spec, max_n } => {
            let (sub, text) = load_spec(spec, limits)?;
            let levels = (1..=*max_n)
                .map(|n| Ok(json!({"n": n, "p": complexity(&sub, n)?})))
                .collect::<Result<Vec<_>>>()?;
            Ok(Report::new(
                "complexity",
                &text,
                json!({"max_n": max_n}),
                true,
                json!({"kind": sub.spec().kind_name(), "levels": levels}),
                &[],
            ))
        }
        Command::Special { spec, n } => {
            let (sub, text) = load_spec(spec, limits)?;
            let sw = right_special(&sub, *n)?;
            let (p, p_next) = (complexity(&sub, *n)?, complexity(&sub, n + 1)?);
            Ok(Report::new(
                "special",
                &text,
                json!({"n": n}),
                true,
                json!({
                    "q": sw.q,
                    "q_prime": sw.q_prime,
                    "p_n": p,
                    "p_next": p_next,
                    "identity": format!("#Q' = #Q + p(n+1) - p(n): {} = {} + {} - {}", sw.q_prime.len(), sw.q.len(), p_next, p),
                }),
                &[],
            ))
        }
        Command::GoodScales { spec, k, max_n } => {
            let (sub, text) = load_spec(spec, limits)?;
            let scales = good_scales(&sub, *k, *max_n)?;
            let bound = if *max_n >= 4 { Some(boshernitzan_bound(&sub, *max_n)?) } else { None };
            Ok(Report::new(
                "good-scales",
                &text,
                json!({"k": k, "max_n": max_n}),
                true,
                json!({"members": scales.members, "complexity_bound": bound}),
                &[],
            ))
        }
        Command::Decompose { spec, word, n, k, verify } => {
            let (sub, text) = load_spec(spec, limits)?;
            let w = Word::parse(word)?;
            let d = decompose_cylinder(&sub, &w, *n, *k)?;
            let report = if *verify { Some(verify_partition(&sub, &d, None)?) } else { None };
            let passed = report.as_ref().is_none_or(|r| r.checks.all());
            Ok(Report::new(
                "decompose",
                &text,
                json!({"word": word, "n": n, "k": k, "verify": verify}),
                passed,
                json!({
                    "decomposition": DecompositionRecord::new(&d, report.as_ref()),
                    "words_checked": report.as_ref().map(|r| r.words_checked),
                    "witness": report.as_ref().and_then(|r| r.witness.clone()),
                }),
                &[],
            ))
        }
        Command::MultBound { spec, k, n } => {
            let (sub, text) = load_spec(spec, limits)?;
            let b = multiplicity_upper_bound(&sub, *k, *n)?;
            let failed: Vec<&Word> = b.certificates.iter().filter(|c| !c.passed()).map(|c| &c.target).collect();
            let certificates = if full {
                value(&b.certificates)
            } else {
                json!({"count": b.certificates.len(), "failed": failed})
            };
            Ok(Report::new(
                "mult-bound",
                &text,
                json!({"k": k, "n": n}),
                b.passed,
                json!({
                    "family": b.family,
                    "family_size": b.family_size,
                    "bound": b.bound,
                    "aperiodicity": b.aperiodicity,
                    "certificates": certificates,
                    "verdict": b.verdict,
                }),
                &["aperiodicity"],
            ))
        }
        Command::SturmianCert { spec, max_n } => {
            let (sub, text) = load_spec(spec, limits)?;
            let c = sturmian_simplicity_certificate(&sub, *max_n)?;
            let mut results = json!({
                "levels": c.levels.iter().map(|l| json!({"n": l.n, "rank": l.rank, "p": l.complexity, "status": "n+1"})).collect::<Vec<_>>(),
                "verdict": c.verdict,
            });
            if full {
                let one = CylinderFunction::<Rational>::one(&sub)?;
                let f = CylinderFunction::<Rational>::sign(&sub)?;
                let matrices = (1..=*max_n)
                    .map(|n| {
                        let mut fns = vec![one.clone()];
                        fns.extend((0..n as i64).map(|j| f.shift(j)));
                        functions_rank(&sub, &fns, (0, n as i64 - 1)).map(value)
                    })
                    .collect::<Result<Vec<_>>>()?;
                results["matrices"] = Value::Array(matrices);
            }
            Ok(Report::new("sturmian-cert", &text, json!({"max_n": max_n}), true, results, &[]))
        }
        Command::TmEvidence { n, pmax, from, factor } => {
            let sub = Subshift::with_limits(SubshiftSpec::thue_morse(), limits);
            let e = thue_morse_cyclicity_evidence::<Rational>(&sub, *n, *pmax)?;
            let increase = e.smoothed_increase(*from, *factor);
            let first = e.deviation(1).cloned().unwrap_or_else(|| Rational::ratio(0, 1));
            let last = e.deviation(*pmax).cloned().unwrap_or_else(|| Rational::ratio(0, 1));
            let ratio = if first == Rational::ratio(0, 1) { None } else { Some((last.clone() / first.clone()).to_report_string()) };
            Ok(Report::new(
                "tm-evidence",
                THUE_MORSE_TEXT,
                json!({"n": n, "pmax": pmax, "from": from, "factor": factor}),
                increase.is_none() && last <= first,
                json!({
                    "block_length": e.block_length,
                    "rows": e.rows,
                    "trend": {
                        "rule": format!("dev(q) ≤ dev(p) for {from} ≤ p < q ≤ {pmax}, q ≥ {factor}p"),
                        "first_increase": increase,
                        "last_over_first": ratio,
                    },
                    "note": "finite-scale evidence, not a proof",
                }),
                &["trend"],
            ))
        }
        Command::PermMult { perm } => {
            let sys = PermutationSystem::parse(perm)?;
            let c = finite_mult::<Rational>(&sys);
            Ok(Report::new(
                "perm-mult",
                perm,
                json!({"perm": perm}),
                c.passed(),
                json!({"system": sys, "certificate": c}),
                &[],
            ))
        }
        Command::PermEmbed { perm, certify, force_case } => {
            let sys = PermutationSystem::parse(perm)?;
            let (rule_d, rule_case) = embedding_dimension(&sys);
            let case = match force_case {
                Some(CaseArg::CommonFactor) => EmbeddingCase::CommonFactor,
                Some(CaseArg::Coprime) => EmbeddingCase::Coprime,
                None => rule_case,
            };
            let plan = build_embedding_as(&sys, case);
            let cert = certify.then(|| injectivity_certificate::<Rational>(&plan));
            Ok(Report::new(
                "perm-embed",
                perm,
                json!({"perm": perm, "certify": certify, "force_case": force_case.map(|c| format!("{c:?}"))}),
                cert.as_ref().is_none_or(|c| c.injective),
                json!({
                    "system": sys,
                    "rule": {"dimension": rule_d, "case": rule_case},
                    "d": plan.dimension,
                    "injective": cert.as_ref().map(|c| c.injective),
                    "plan": plan,
                    "certificate": cert,
                }),
                &[],
            ))
        }
        Command::FixDim { perm, p } => {
            let sys = PermutationSystem::parse(perm)?;
            let dim = fix_dimension(&sys, *p)?;
            let lengths = sys.cycle_lengths();
            let divides = lengths.iter().all(|r| r % p == 0);
            let expected = divides.then(|| lengths.len() * p - 1);
            Ok(Report::new(
                "fix-dim",
                perm,
                json!({"perm": perm, "p": p}),
                expected.is_none_or(|e| e == dim),
                json!({"system": sys, "dimension": dim, "p_divides_all_lengths": divides, "kp_minus_one": expected}),
                &[],
            ))
        }
        Command::Keylem { spec, levels, chooser } => {
            let (sub, text) = load_spec(spec, limits)?;
            let chooser = match chooser {
                ChooserArg::RightSpecial => WordChooser::RightSpecial,
                ChooserArg::FirstRightSpecial => WordChooser::FirstRightSpecial,
                ChooserArg::FirstWord => WordChooser::FirstWord,
            };
            let t = keylem_decay::<Rational>(&sub, levels, chooser)?;
            Ok(Report::new(
                "keylem",
                &text,
                json!({"levels": levels, "chooser": chooser}),
                true,
                value(&t),
                &["rows", "sample_length", "aperiodic"],
            ))
        }
    }
}
