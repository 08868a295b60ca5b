use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::enumerate::{enum_eterms, enum_exprs, enum_ski, enum_strings, enum_terms};
use super::generate::{GenConfig, Generator, Typed, TypedSystem};
use super::lemmas::{debruijn_instances, SubstFn};
use super::shrink::minimize;
use crate::ars::{self, SnVerdict, DEFAULT_NODE_CAP};
use crate::lambda::{self, Term};
use crate::rewrite::{self, Expr, StrRule};
use crate::ski;
use crate::stlc::{self, Context, TTerm, Ty};
use crate::stlcext::{self as ext, build as e, ebase, ETerm, ETy, StepRule};

/// Failures kept with a minimized counterexample; the rest are only counted.
const SHOWN_FAILURES: usize = 20;

// Lambda corpora for the parallel-reduction suites use free indices below 3.
const PARALLEL_FREE: usize = 3;
// SK corpus bound for the diamond suite.
const SKI_SIZE: usize = 11;
const EXPR_SIZE: usize = 9;
const JOIN_DEPTH: usize = 4;
const SR_DEPTH: usize = 5;
const NORMALIZE_FUEL: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    DeBruijn,
    Takahashi,
    Diamond,
    Newman,
    HindleyRosen,
    SubjectReduction,
    Sn,
    Progress,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::DeBruijn,
        Suite::Takahashi,
        Suite::Diamond,
        Suite::Newman,
        Suite::HindleyRosen,
        Suite::SubjectReduction,
        Suite::Sn,
        Suite::Progress,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DeBruijn => "debruijn",
            Suite::Takahashi => "takahashi",
            Suite::Diamond => "diamond",
            Suite::Newman => "newman",
            Suite::HindleyRosen => "hindley-rosen",
            Suite::SubjectReduction => "subject-reduction",
            Suite::Sn => "sn",
            Suite::Progress => "progress",
        }
    }

    /// Default exhaustive bound: term size, string length or ETerm size.
    pub fn default_exhaustive(self) -> usize {
        match self {
            Suite::DeBruijn => 8,
            Suite::Takahashi | Suite::Diamond => 6,
            Suite::Newman => 10,
            Suite::HindleyRosen => 8,
            Suite::SubjectReduction | Suite::Sn => 0,
            Suite::Progress => 5,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?} (expected one of debruijn, takahashi, diamond, newman, hindley-rosen, subject-reduction, sn, progress)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub gen: GenConfig,
    /// Random cases (per system, for the typed suites).
    pub cases: usize,
    /// Overrides the suite's exhaustive bound.
    pub exhaustive: Option<usize>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig { gen: GenConfig { seed, ..GenConfig::default() }, cases: 10_000, exhaustive: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: usize,
    pub property: String,
    pub counterexample: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub failure_count: usize,
    /// The first failures by case index, minimized.
    pub failures: Vec<Failure>,
}

#[derive(Serialize)]
struct Summary<'a> {
    suite: &'a str,
    cases: usize,
    failures: usize,
    seed: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string(&Summary {
            suite: self.suite.name(),
            cases: self.cases,
            failures: self.failure_count,
            seed: self.seed,
        })
        .expect("summary serializes")
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .failures
            .iter()
            .map(|f| format!("FAIL case={} property={} {}", f.case, f.property, f.counterexample))
            .collect();
        if self.failure_count > self.failures.len() {
            out.push(format!("... {} more failures", self.failure_count - self.failures.len()));
        }
        out.push(format!(
            "suite={} cases={} failures={} seed={}",
            self.suite, self.cases, self.failure_count, self.seed
        ));
        out
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

struct Collector {
    suite: Suite,
    seed: u64,
    cases: usize,
    count: usize,
    failures: Vec<Failure>,
}

impl Collector {
    fn new(suite: Suite, seed: u64) -> Self {
        Collector { suite, seed, cases: 0, count: 0, failures: Vec::new() }
    }

    /// Registers a case and returns its index.
    fn case(&mut self) -> usize {
        self.cases += 1;
        self.cases - 1
    }

    // The counterexample (and its shrinking) is only computed for kept failures.
    fn fail(&mut self, case: usize, property: impl Into<String>, counterexample: impl FnOnce() -> String) {
        self.count += 1;
        if self.failures.len() < SHOWN_FAILURES {
            self.failures.push(Failure { case, property: property.into(), counterexample: counterexample() });
        }
    }

    fn check(&mut self, case: usize, ok: bool, property: &str, counterexample: impl FnOnce() -> String) {
        if !ok {
            self.fail(case, property, counterexample);
        }
    }

    fn finish(mut self) -> SuiteReport {
        self.failures.sort_by_key(|f| f.case);
        SuiteReport {
            suite: self.suite,
            seed: self.seed,
            cases: self.cases,
            failure_count: self.count,
            failures: self.failures,
        }
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, UnknownSuite> {
    Ok(Suite::from_str(name)?.run(cfg))
}

impl Suite {
    pub fn run(self, cfg: &SuiteConfig) -> SuiteReport {
        let bound = cfg.exhaustive.unwrap_or(self.default_exhaustive());
        match self {
            Suite::DeBruijn => run_debruijn(cfg, lambda::subst),
            Suite::Takahashi => takahashi(cfg, bound),
            Suite::Diamond => diamond(cfg, bound),
            Suite::Newman => newman(cfg, bound),
            Suite::HindleyRosen => hindley_rosen(cfg, bound),
            Suite::SubjectReduction => subject_reduction(cfg),
            Suite::Sn => sn(cfg),
            Suite::Progress => progress(cfg, bound),
        }
    }
}

/// The de Bruijn lemma suite against a given substitution: `cases` random
/// terms, then every term up to the exhaustive size.
pub fn run_debruijn(cfg: &SuiteConfig, subst: SubstFn) -> SuiteReport {
    let mut out = Collector::new(Suite::DeBruijn, cfg.gen.seed);
    let instances = debruijn_instances();
    let check = |out: &mut Collector, m: &Term, pairs: &[(Term, Term)]| {
        let case = out.case();
        for inst in &instances {
            let uses = if inst.lemma.uses_p() {
                pairs.len()
            } else if inst.lemma.uses_n() {
                pairs.len().min(2)
            } else {
                1
            };
            for (n, p) in &pairs[..uses] {
                if !inst.holds(subst, m, n, p) {
                    out.fail(case, inst.lemma.name(), || {
                        let small = minimize(m, |t| !inst.holds(subst, t, n, p));
                        format!("{inst} M={small} N={n} P={p}")
                    });
                }
            }
        }
    };

    let mut g = Generator::new(cfg.gen);
    let mut aux = Generator::new(GenConfig { seed: cfg.gen.seed.wrapping_add(1), max_size: 5, ..cfg.gen });
    for _ in 0..cfg.cases {
        let m = g.term();
        let pair = [(aux.term(), aux.term())];
        check(&mut out, &m, &pair);
    }

    use crate::lambda::{app, lam, var};
    let (n1, n2) = (var(1), lam(app(var(0), var(2))));
    // Distinct N first, so lemmas over N alone see both.
    let pairs = [(n1.clone(), n2.clone()), (n2.clone(), n1.clone()), (n1.clone(), n1), (n2.clone(), n2)];
    let bound = cfg.exhaustive.unwrap_or(Suite::DeBruijn.default_exhaustive());
    for m in enum_terms(bound, cfg.gen.max_free_index) {
        check(&mut out, &m, &pairs);
    }
    out.finish()
}

fn takahashi(cfg: &SuiteConfig, bound: usize) -> SuiteReport {
    let mut out = Collector::new(Suite::Takahashi, cfg.gen.seed);
    let beta = lambda::beta_rel();
    for m in enum_terms(bound, PARALLEL_FREE) {
        let case = out.case();
        let report = lambda::takahashi_check(&m);
        for n in &report.violations {
            out.fail(case, "takahashi", || format!("M={m} N={n} M*={}", report.development));
        }
        for b in lambda::beta_reducts(&m) {
            out.check(case, lambda::parallel_reduces_to(&m, &b), "beta_in_parallel", || format!("M={m} N={b}"));
        }
        let reach = ars::bounded_reach(&beta, &m, m.size());
        for n in lambda::parallel_reducts(&m) {
            out.check(case, reach.contains_key(&n), "parallel_in_beta_star", || format!("M={m} N={n}"));
        }
    }
    out.finish()
}

fn diamond(cfg: &SuiteConfig, bound: usize) -> SuiteReport {
    let mut out = Collector::new(Suite::Diamond, cfg.gen.seed);
    for a in enum_terms(bound, PARALLEL_FREE) {
        let case = out.case();
        let dev = lambda::complete_development(&a);
        let peaks = lambda::parallel_reducts(&a);
        let joins: Vec<bool> = peaks.iter().map(|b| lambda::parallel_reduces_to(b, &dev)).collect();
        for i in 0..peaks.len() {
            for j in i..peaks.len() {
                out.check(case, joins[i] && joins[j], "lambda_parallel_diamond", || {
                    format!("a={a} b={} c={} a*={dev}", peaks[i], peaks[j])
                });
            }
        }
    }
    for a in enum_ski(SKI_SIZE) {
        let case = out.case();
        let dev = ski::ski_complete(&a);
        let peaks = ski::ski_parallel_reducts(&a);
        let joins: Vec<bool> = peaks.iter().map(|b| ski::ski_parallel_contains(b, &dev)).collect();
        for i in 0..peaks.len() {
            for j in i..peaks.len() {
                out.check(case, joins[i] && joins[j], "ski_parallel_diamond", || {
                    format!("a={a} b={} c={} a*={dev}", peaks[i], peaks[j])
                });
            }
        }
    }
    out.finish()
}

// Bottom-up evaluation with the unit and annihilator laws; the children are
// already normal, so one root step suffices.
fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Zero | Expr::One => e.clone(),
        Expr::Add(a, b) => match (simplify(a), simplify(b)) {
            (Expr::Zero, x) | (x, Expr::Zero) => x,
            (x, y) => rewrite::add(x, y),
        },
        Expr::Mul(a, b) => match (simplify(a), simplify(b)) {
            (Expr::Zero, _) | (_, Expr::Zero) => Expr::Zero,
            (Expr::One, x) | (x, Expr::One) => x,
            (x, y) => rewrite::mul(x, y),
        },
    }
}

fn newman_case<S: ars::State>(
    out: &mut Collector,
    rel: &ars::Rel<S>,
    start: &S,
    measure: impl Fn(&S) -> usize,
    expected_nf: &S,
) {
    let case = out.case();
    let g = ars::star_reachable(rel, start, DEFAULT_NODE_CAP);
    let v = ars::newman_verdict_of(&g);
    let show = || format!("start={start} verdict={v}");
    out.check(case, v.terminating == Some(true) && v.complete, "terminating", show);
    out.check(case, v.locally_confluent, "locally_confluent", show);
    out.check(case, v.unique_nf, "unique_nf", show);
    out.check(case, v.normal_forms == [expected_nf.clone()], "normal_form_oracle", || {
        format!("start={start} verdict={v} expected={expected_nf}")
    });
    let decreasing = g.edges().all(|(a, b)| measure(b) < measure(a));
    out.check(case, decreasing, "measure_decreases", show);
}

fn newman(cfg: &SuiteConfig, bound: usize) -> SuiteReport {
    let mut out = Collector::new(Suite::Newman, cfg.gen.seed);
    let rel = rewrite::srs_rel("srs", rewrite::idempotency_rules());
    for w in enum_strings(bound) {
        let nf = rewrite::collapse_runs(&w);
        newman_case(&mut out, &rel, &w, |s| rewrite::str_len(s), &nf);
    }
    let rel = rewrite::expr_rel();
    for e in enum_exprs(EXPR_SIZE) {
        let nf = simplify(&e);
        newman_case(&mut out, &rel, &e, rewrite::expr_size, &nf);
    }
    out.finish()
}

fn single_rule(lhs: &str, rhs: &str) -> ars::Rel<String> {
    let rule = StrRule::new(lhs, rhs).expect("valid rule");
    rewrite::srs_rel(rule.to_string(), vec![rule])
}

fn hindley_rosen(cfg: &SuiteConfig, bound: usize) -> SuiteReport {
    let mut out = Collector::new(Suite::HindleyRosen, cfg.gen.seed);
    let corpus = enum_strings(bound);
    let r = single_rule("aa", "a");
    let s = single_rule("bb", "b");
    let union = ars::union_rel(&r, &s);
    let reports = [
        ("diamond_r", ars::check_diamond(&r, &corpus, JOIN_DEPTH)),
        ("diamond_s", ars::check_diamond(&s, &corpus, JOIN_DEPTH)),
        ("commute", ars::commute_check(&r, &s, &corpus, JOIN_DEPTH)),
        ("diamond_union", ars::check_diamond(&union, &corpus, JOIN_DEPTH)),
    ];
    let index = |w: &String| corpus.iter().position(|x| x == w).unwrap_or(0);
    for w in &corpus {
        let case = out.case();
        let v = ars::newman_verify(&union, w, DEFAULT_NODE_CAP);
        out.check(case, v.unique_nf && v.complete, "union_unique_nf", || format!("start={w} verdict={v}"));
    }
    for (name, report) in &reports {
        for p in &report.failures {
            out.fail(index(&p.source), *name, || format!("source={} left={} right={}", p.source, p.left, p.right));
        }
    }
    out.finish()
}

fn simple_ctx(ctx: &Context<ETy>) -> Context<Ty> {
    fn lower(t: &ETy) -> Ty {
        match t {
            ETy::Base(n) => stlc::base(*n),
            ETy::Arr(a, b) => stlc::arr(lower(a), lower(b)),
            _ => unreachable!("simple contexts hold arrow and base types"),
        }
    }
    Context::from_innermost(ctx.iter().map(lower))
}

fn draw(g: &mut Generator, system: TypedSystem, ctx: &Context<ETy>) -> Typed {
    loop {
        if let Ok(t) = g.gen_typed(system, ctx, None) {
            return t;
        }
    }
}

fn subject_reduction(cfg: &SuiteConfig) -> SuiteReport {
    let mut out = Collector::new(Suite::SubjectReduction, cfg.gen.seed);
    let mut g = Generator::new(cfg.gen);
    for system in [TypedSystem::Stlc, TypedSystem::StlcExt] {
        for _ in 0..cfg.cases {
            let ctx = g.context(2, system == TypedSystem::StlcExt);
            let case = out.case();
            match draw(&mut g, system, &ctx) {
                Typed::Stlc(m, _) => {
                    let sctx = simple_ctx(&ctx);
                    let fails =
                        |t: &TTerm| matches!(stlc::subject_reduction_check(&sctx, t, SR_DEPTH), Ok(r) if !r.passed());
                    out.check(case, !fails(&m), "stlc_subject_reduction", || format!("term={}", minimize(&m, fails)));
                }
                Typed::StlcExt(m, _) => {
                    let fails =
                        |t: &ETerm| matches!(ext::ext_subject_reduction_check(&ctx, t, SR_DEPTH), Ok(r) if !r.passed());
                    out.check(case, !fails(&m), "stlcext_subject_reduction", || {
                        format!("term={}", minimize(&m, fails))
                    });
                }
            }
        }
    }
    out.finish()
}

fn sn(cfg: &SuiteConfig) -> SuiteReport {
    let mut out = Collector::new(Suite::Sn, cfg.gen.seed);
    let mut g = Generator::new(cfg.gen);
    fn judge<S: ars::State>(out: &mut Collector, case: usize, system: &str, v: SnVerdict<S>, start: &dyn fmt::Display) {
        match v {
            SnVerdict::Sn(graph) => {
                let nv = ars::newman_verdict_of(&graph);
                out.check(case, nv.unique_nf, &format!("{system}_unique_nf"), || format!("term={start} verdict={nv}"));
            }
            SnVerdict::CycleFound(path) => out.fail(case, format!("{system}_sn"), || {
                let p: Vec<String> = path.iter().map(|s| s.to_string()).collect();
                format!("term={start} cycle={}", p.join(" -> "))
            }),
            SnVerdict::CapExhausted => out.fail(case, format!("{system}_sn"), || format!("term={start} cap exhausted")),
        }
    }
    for system in [TypedSystem::Stlc, TypedSystem::StlcExt] {
        for _ in 0..cfg.cases {
            let case = out.case();
            match g.closed(system) {
                Typed::Stlc(m, _) => judge(&mut out, case, "stlc", stlc::sn_certificate(&m, DEFAULT_NODE_CAP), &m),
                Typed::StlcExt(m, _) => {
                    judge(&mut out, case, "stlcext", ext::ext_sn_certificate(&m, DEFAULT_NODE_CAP), &m)
                }
            }
        }
    }
    let case = out.case();
    let omega = lambda::omega();
    let control = ars::sn_certificate(&lambda::beta_rel(), &omega, DEFAULT_NODE_CAP);
    out.check(case, matches!(control, SnVerdict::CycleFound(_)), "omega_cycle", || format!("term={omega}"));
    out.finish()
}

/// One closed well-typed term per reduction rule, each with a step labeled by
/// that rule.
pub fn rule_regressions() -> Vec<(StepRule, ETerm)> {
    let b0 = ebase(0);
    let a = ext::earr(b0.clone(), b0.clone());
    let id0 = e::lam(b0.clone(), e::v(0));
    let g = e::lam(a.clone(), e::v(0));
    let redex = e::app(g.clone(), id0.clone());
    let s = ext::sum(a.clone(), a.clone());
    let p = ext::prod(a.clone(), a.clone());
    let pr = e::pair(id0.clone(), id0.clone());
    vec![
        (StepRule::Beta, redex.clone()),
        (StepRule::FstPair, e::fst(pr.clone())),
        (StepRule::SndPair, e::snd(pr.clone())),
        (StepRule::CaseInl, e::case(e::inl(s.clone(), id0.clone()), e::v(0), e::v(0))),
        (StepRule::CaseInr, e::case(e::inr(s.clone(), id0.clone()), e::v(0), e::v(0))),
        (StepRule::AppL, e::app(e::app(e::lam(ext::earr(a.clone(), a.clone()), e::v(0)), g.clone()), id0.clone())),
        (StepRule::AppR, e::app(g.clone(), redex.clone())),
        (StepRule::Lam, e::lam(b0.clone(), e::app(id0.clone(), e::v(0)))),
        (StepRule::PairL, e::pair(redex.clone(), id0.clone())),
        (StepRule::PairR, e::pair(id0.clone(), redex.clone())),
        (StepRule::Fst, e::fst(e::app(e::lam(p.clone(), e::v(0)), pr.clone()))),
        (StepRule::Snd, e::snd(e::app(e::lam(p, e::v(0)), pr))),
        (StepRule::Inl, e::inl(s.clone(), redex.clone())),
        (StepRule::Inr, e::inr(s.clone(), redex.clone())),
        (
            StepRule::CaseM,
            e::case(e::app(e::lam(s.clone(), e::v(0)), e::inl(s.clone(), id0.clone())), e::v(0), e::v(0)),
        ),
        (StepRule::CaseN1, e::case(e::inl(s.clone(), id0.clone()), e::app(g.clone(), e::v(0)), e::v(0))),
        (StepRule::CaseN2, e::case(e::inl(s, id0), e::v(0), e::app(g, e::v(0)))),
    ]
}

/// Wrapper neutrality over every extended term up to `max_size`: for each
/// enumerated `case M N1 N2`, the terms `fst (case ..)`, `snd (case ..)` and
/// `(case ..) P` for every enumerated `P` are neutral; values and neutral
/// terms are disjoint. Returns the number of terms checked and the failures.
pub fn neutrality_check(max_size: usize) -> (usize, Vec<Failure>) {
    let palette = [ebase(0), ext::sum(ebase(0), ebase(1))];
    let corpus = enum_eterms(max_size, 1, &palette);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut expect = |ok: bool, property: &str, t: &dyn Fn() -> ETerm, checked: &mut usize| {
        *checked += 1;
        if !ok {
            failures.push(Failure {
                case: *checked - 1,
                property: property.to_string(),
                counterexample: t().to_string(),
            });
        }
    };
    for m in &corpus {
        expect(!(ext::is_value(m) && ext::is_neutral(m)), "value_neutral_disjoint", &|| m.clone(), &mut checked);
        if !matches!(m, ETerm::Case(..)) {
            continue;
        }
        let f = e::fst(m.clone());
        expect(ext::is_neutral(&f), "fst_case_neutral", &|| f.clone(), &mut checked);
        let s = e::snd(m.clone());
        expect(ext::is_neutral(&s), "snd_case_neutral", &|| s.clone(), &mut checked);
        for p in &corpus {
            let t = e::app(m.clone(), p.clone());
            expect(ext::is_neutral(&t), "app_case_neutral", &|| t.clone(), &mut checked);
        }
    }
    (checked, failures)
}

fn progress(cfg: &SuiteConfig, bound: usize) -> SuiteReport {
    let mut out = Collector::new(Suite::Progress, cfg.gen.seed);
    let mut g = Generator::new(cfg.gen);
    let empty = Context::empty();
    for _ in 0..cfg.cases {
        let case = out.case();
        let Typed::StlcExt(m, ty) = g.closed(TypedSystem::StlcExt) else { unreachable!() };
        match ext::progress_check(&m) {
            Ok(ext::Progress::IsValue) => {}
            Ok(ext::Progress::Steps(step)) => {
                let kept = ext::ext_infer(&empty, &step.term).as_ref() == Ok(&ty);
                out.check(case, kept, "step_preserves_type", || format!("term={m} rule={}", step.rule));
            }
            Ok(ext::Progress::Violation) => out.fail(case, "progress", || {
                let small = minimize(&m, |t| matches!(ext::progress_check(t), Ok(ext::Progress::Violation)));
                format!("term={small}")
            }),
            Err(err) => out.fail(case, "generated_ill_typed", || format!("term={m} error={err}")),
        }
        out.check(case, !(ext::is_value(&m) && ext::is_neutral(&m)), "value_neutral_disjoint", || format!("term={m}"));
        let mut cur = m.clone();
        let mut fuel = NORMALIZE_FUEL;
        while let Some(step) = ext::ext_step_normal_order(&cur) {
            if fuel == 0 {
                break;
            }
            fuel -= 1;
            cur = step.term;
        }
        out.check(case, fuel == 0 || ext::is_value(&cur), "normal_form_is_value", || {
            format!("term={m} normal_form={cur}")
        });
    }
    for (rule, t) in rule_regressions() {
        let case = out.case();
        let ty = ext::ext_infer(&empty, &t);
        let exercised = ext::ext_steps(&t)
            .into_iter()
            .any(|s| s.rule == rule && ty.is_ok() && ext::ext_infer(&empty, &s.term) == ty);
        out.check(case, exercised, &format!("rule_{rule}"), || format!("term={t}"));
    }
    let base = out.cases;
    let (checked, failures) = neutrality_check(bound);
    for f in failures {
        out.fail(base + f.case, f.property, || f.counterexample);
    }
    out.cases += checked;
    out.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> SuiteConfig {
        SuiteConfig { cases: 200, exhaustive: Some(4), ..SuiteConfig::new(seed) }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert_eq!(run_suite("nope", &small(1)).unwrap_err(), UnknownSuite("nope".into()));
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let r = s.run(&small(3));
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn mutant_fails_small_debruijn() {
        let r = run_debruijn(&small(1), lambda::subst_leaf_shift);
        assert!(!r.passed());
        assert!(r.failures.iter().any(|f| f.property == "subst_subst"));
        assert!(r.failures.iter().all(|f| f.property != "subst_shift_cancel"));
    }

    #[test]
    fn summary_record() {
        let r = Suite::Takahashi.run(&small(9));
        let v: serde_json::Value = serde_json::from_str(&r.summary_json()).unwrap();
        assert_eq!(v["suite"], "takahashi");
        assert_eq!(v["failures"], 0);
        assert_eq!(v["seed"], 9);
    }

    #[test]
    fn regressions_cover_every_rule() {
        let rules: Vec<StepRule> = rule_regressions().into_iter().map(|r| r.0).collect();
        assert_eq!(rules, StepRule::ALL);
    }
}
