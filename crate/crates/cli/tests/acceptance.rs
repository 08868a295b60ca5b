//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p rewritekit-cli --test acceptance`.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rewritekit::lambda;
use rewritekit::rewrite;
use rewritekit::stlc::Context;
use rewritekit::stlcext::{self, StepRule};
use rewritekit::testkit::{
    neutrality_check, rule_regressions, run_debruijn, Generator, Suite, SuiteConfig, SuiteReport, Typed, TypedSystem,
};

const SEED: u64 = 1;
const CASES: usize = 10_000;
const RANDOM_MAX_SIZE: usize = 12;
const RANDOM_FREE_BOUND: usize = 4;
const DEBRUIJN_EXHAUSTIVE: usize = 8;
const PARALLEL_EXHAUSTIVE: usize = 6;
const STRING_LEN: usize = 10;
const HR_STRING_LEN: usize = 8;
const SN_MAX_SIZE: usize = 8;
const NEUTRALITY_SIZE: usize = 5;
const JOIN_DEPTH: usize = 4;
const GOLDEN_CASES: usize = 20;
const LIMIT_60: Duration = Duration::from_secs(60);
const LIMIT_120: Duration = Duration::from_secs(120);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cfg(exhaustive: usize) -> SuiteConfig {
    let mut c = SuiteConfig::new(SEED);
    c.cases = CASES;
    c.gen.max_size = RANDOM_MAX_SIZE;
    c.gen.max_free_index = RANDOM_FREE_BOUND;
    c.exhaustive = Some(exhaustive);
    c
}

fn suite_detail(r: &SuiteReport, elapsed: Duration) -> String {
    let first = r.failures.first().map(|f| format!(" first: {} {}", f.property, f.counterexample)).unwrap_or_default();
    format!("cases={} failures={} in {:.1}s{first}", r.cases, r.failure_count, elapsed.as_secs_f64())
}

fn timed_suite(suite: Suite, c: &SuiteConfig, limit: Option<Duration>) -> Outcome {
    let t = Instant::now();
    let r = suite.run(c);
    let elapsed = t.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    outcome(r.passed() && in_time, suite_detail(&r, elapsed))
}

fn debruijn() -> Outcome {
    let t = Instant::now();
    let r = run_debruijn(&cfg(DEBRUIJN_EXHAUSTIVE), lambda::subst);
    let elapsed = t.elapsed();
    outcome(r.passed() && elapsed < LIMIT_60, suite_detail(&r, elapsed))
}

fn takahashi() -> Outcome {
    timed_suite(Suite::Takahashi, &cfg(PARALLEL_EXHAUSTIVE), Some(LIMIT_120))
}

fn diamond() -> Outcome {
    timed_suite(Suite::Diamond, &cfg(PARALLEL_EXHAUSTIVE), None)
}

fn newman() -> Outcome {
    timed_suite(Suite::Newman, &cfg(STRING_LEN), Some(LIMIT_60))
}

fn critical_pairs() -> Outcome {
    let rules = rewrite::idempotency_rules();
    let cps = rewrite::critical_pairs(&rules);
    let all_joinable = cps.iter().all(|cp| rewrite::critical_pair_joinable(cp, &rules, JOIN_DEPTH));
    let found: HashSet<(String, String, String)> =
        cps.iter().map(|cp| (cp.source.clone(), cp.rules.0.to_string(), cp.rules.1.to_string())).collect();
    let expected: HashSet<(String, String, String)> = [("aaa", "aa->a"), ("bbb", "bb->b")]
        .iter()
        .map(|(s, r)| (s.to_string(), r.to_string(), r.to_string()))
        .collect();
    let exact = cps.len() == 2 && found == expected;
    outcome(
        all_joinable && exact,
        format!("{} overlaps, all joinable within depth {JOIN_DEPTH}: {all_joinable}", cps.len()),
    )
}

fn hindley_rosen() -> Outcome {
    timed_suite(Suite::HindleyRosen, &cfg(HR_STRING_LEN), None)
}

fn subject_reduction() -> Outcome {
    timed_suite(Suite::SubjectReduction, &cfg(0), None)
}

fn strong_normalization() -> Outcome {
    let mut c = cfg(0);
    c.gen.max_size = SN_MAX_SIZE;
    // Replays the suite's draw order to confirm the size bound on every term.
    let mut g = Generator::new(c.gen);
    let mut largest = 0;
    for system in [TypedSystem::Stlc, TypedSystem::StlcExt] {
        for _ in 0..c.cases {
            largest = largest.max(match g.closed(system) {
                Typed::Stlc(m, _) => m.size(),
                Typed::StlcExt(m, _) => m.size(),
            });
        }
    }
    let sized = largest <= SN_MAX_SIZE;
    let o = timed_suite(Suite::Sn, &c, None);
    outcome(o.pass && sized, format!("{} largest term size {largest}", o.detail))
}

fn progress() -> Outcome {
    let o = timed_suite(Suite::Progress, &cfg(NEUTRALITY_SIZE), None);
    // Each rule has a regression term with a step labeled by it that keeps
    // the type.
    let empty = Context::empty();
    let covered: HashSet<StepRule> = rule_regressions()
        .iter()
        .filter_map(|(rule, m)| {
            let ty = stlcext::ext_infer(&empty, m).ok()?;
            let ok = stlcext::ext_steps(m)
                .iter()
                .any(|s| s.rule == *rule && stlcext::ext_infer(&empty, &s.term).as_ref() == Ok(&ty));
            ok.then_some(*rule)
        })
        .collect();
    let all = covered.len() == StepRule::ALL.len();
    outcome(
        o.pass && all,
        format!("{}; regression coverage {}/{} listed rules", o.detail, covered.len(), StepRule::ALL.len()),
    )
}

fn neutrality() -> Outcome {
    let (checked, failures) = neutrality_check(NEUTRALITY_SIZE);
    let first = failures.first().map(|f| format!(" first: {} {}", f.property, f.counterexample)).unwrap_or_default();
    outcome(failures.is_empty(), format!("checks={checked} failures={}{first}", failures.len()))
}

fn golden() -> Outcome {
    let cases = common::load_cases();
    let mut problems = Vec::new();
    let mut dots = 0;
    for c in &cases {
        let a = common::run_case(c);
        let b = common::run_case(c);
        if a != b {
            problems.push(format!("{}: runs differ", c.name));
        }
        let path = common::golden_dir().join(format!("{}.golden", c.name));
        match std::fs::read_to_string(&path) {
            Ok(g) if g == a.render() => {}
            Ok(_) => problems.push(format!("{}: differs from golden file", c.name)),
            Err(_) => problems.push(format!("{}: golden file missing", c.name)),
        }
        if a.stdout.starts_with("digraph") {
            dots += 1;
            if let Err(e) = common::validate_dot(&a.stdout) {
                problems.push(format!("{}: DOT rejected: {e}", c.name));
            }
        }
    }
    let ok = cases.len() == GOLDEN_CASES && problems.is_empty();
    outcome(
        ok,
        format!(
            "{} invocations, {dots} DOT outputs parsed; checked on this platform only{}",
            cases.len(),
            problems.first().map(|p| format!("; {p}")).unwrap_or_default()
        ),
    )
}

fn mutation() -> Outcome {
    let r = run_debruijn(&cfg(DEBRUIJN_EXHAUSTIVE), lambda::subst_leaf_shift);
    let props: HashSet<&str> = r.failures.iter().map(|f| f.property.as_str()).collect();
    let mut names: Vec<&str> = props.into_iter().collect();
    names.sort();
    outcome(!r.passed(), format!("mutant failures={} properties: {}", r.failure_count, names.join(",")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("de Bruijn lemmas, random and exhaustive", debruijn),
        ("Takahashi property, exhaustive", takahashi),
        ("parallel diamond, lambda and SK", diamond),
        ("Newman case studies", newman),
        ("critical pairs", critical_pairs),
        ("Hindley-Rosen union", hindley_rosen),
        ("subject reduction", subject_reduction),
        ("strong normalization", strong_normalization),
        ("progress and rule regressions", progress),
        ("wrapper neutrality", neutrality),
        ("CLI golden corpus", golden),
        ("mutation sensitivity", mutation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
