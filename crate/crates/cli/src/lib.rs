//! The `rewritekit` command line.
//!
//! Exit codes: 0 success, 1 input or type error (or a failed property suite),
//! 2 a fuel or node bound was exhausted, 64 usage error.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rewritekit::ars::{self, Rel, State};
use rewritekit::lambda::{self, Term};
use rewritekit::rewrite::{self, Expr, StrRule};
use rewritekit::ski::{self, CTerm};
use rewritekit::stlc::{self, Context, TTerm};
use rewritekit::stlcext::{self, ETerm};
use rewritekit::surface::{self, ParseError, Parsed, SourceSpan, System};
use rewritekit::testkit::{Suite, SuiteConfig};

mod dot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BOUND: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Overrides `--seed` when set.
pub const SEED_ENV: &str = "REWRITEKIT_SEED";

#[derive(Parser, Debug)]
#[command(name = "rewritekit", version, about = "Rewriting systems, lambda calculi and their confluence checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form of a term.
    Parse(Common),
    /// Print the type of a stlc or stlcext term.
    Typecheck(Common),
    /// Reduce to normal form.
    Normalize(Common),
    /// Print every reduction step as `rule: term`.
    Trace(Common),
    /// Explore all reducts and report termination, local confluence and
    /// normal forms.
    Confluence(Common),
    /// Export the reduction graph.
    Graph(Common),
    /// List critical pairs of the string rules or the arithmetic rules.
    CriticalPairs(PairsArgs),
    /// Run a property suite.
    Props(PropsArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// One of lambda, ski, expr, srs, stlc, stlcext.
    #[arg(long)]
    system: System,
    /// The term, or `-` to read standard input.
    #[arg(value_name = "TERM")]
    term: Option<String>,
    /// The term, as a flag.
    #[arg(long, conflicts_with = "term")]
    input: Option<String>,
    /// Read the term from a file.
    #[arg(long, conflicts_with_all = ["term", "input"])]
    file: Option<PathBuf>,
    /// Maximum reduction steps.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(0..=10_000_000))]
    fuel: u64,
    /// Reduction graph node cap.
    #[arg(long, default_value_t = ars::DEFAULT_NODE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    cap: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::NormalOrder)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// String rules for the srs system, one `lhs -> rhs` per line.
    #[arg(long)]
    rules: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PairsArgs {
    /// srs or expr.
    #[arg(long)]
    system: System,
    /// Rule file (srs only); defaults to aa -> a, bb -> b.
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Join search depth.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(0..=64))]
    depth: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct PropsArgs {
    /// debruijn, takahashi, diamond, newman, hindley-rosen,
    /// subject-reduction, sn or progress.
    #[arg(long)]
    suite: Suite,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random cases (per system for typed suites).
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(0..=10_000_000))]
    cases: u64,
    /// Exhaustive bound override.
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=16))]
    exhaustive: Option<u64>,
    /// Maximum generated term size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    max_size: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    #[value(alias = "normal")]
    NormalOrder,
    #[value(alias = "applicative")]
    ApplicativeOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    JsonLines,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

// Write failures on the output streams are not recoverable here.
macro_rules! say {
    ($w:expr, $($arg:tt)*) => {
        let _ = writeln!($w, $($arg)*);
    };
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { stdin, out, err };
    match cli.command {
        Command::Parse(c) => with_term(&c, &mut io, |t, io| cmd_parse(t, &c, io)),
        Command::Typecheck(c) if !matches!(c.system, System::Stlc | System::StlcExt) => {
            say!(io.err, "error: typecheck needs the stlc or stlcext system, not {}", c.system);
            EXIT_USAGE
        }
        Command::Typecheck(c) => cmd_typecheck(&c, &mut io),
        Command::Normalize(c) => with_term(&c, &mut io, |t, io| cmd_reduce(t, &c, false, io)),
        Command::Trace(c) => with_term(&c, &mut io, |t, io| cmd_reduce(t, &c, true, io)),
        Command::Confluence(c) => with_term(&c, &mut io, |t, io| cmd_confluence(t, &c, io)),
        Command::Graph(c) => with_term(&c, &mut io, |t, io| cmd_graph(t, &c, io)),
        Command::CriticalPairs(a) => cmd_critical_pairs(&a, &mut io),
        Command::Props(a) => cmd_props(&a, &mut io),
    }
}

fn read_input(c: &Common, io: &mut Io<'_>) -> Result<String, i32> {
    let inline = c.term.as_ref().or(c.input.as_ref());
    match (inline, &c.file) {
        (Some(s), _) if s == "-" => {
            let mut buf = String::new();
            io.stdin.read_to_string(&mut buf).map_err(|e| {
                say!(io.err, "error: reading standard input: {e}");
                EXIT_INPUT
            })?;
            Ok(buf)
        }
        (Some(s), _) => Ok(s.clone()),
        (None, Some(path)) => std::fs::read_to_string(path).map_err(|e| {
            say!(io.err, "error: reading {}: {e}", path.display());
            EXIT_INPUT
        }),
        (None, None) => {
            say!(io.err, "error: no input term (give TERM, --input or --file; `-` reads standard input)");
            Err(EXIT_USAGE)
        }
    }
}

// Prints `message` with the offending source line and a caret underline.
fn report_at(input: &str, span: SourceSpan, message: &str, io: &mut Io<'_>) {
    say!(io.err, "error: {}:{}: {message}", span.line, span.column);
    if let Some(line) = input.lines().nth(span.line - 1) {
        let rest: String = line.chars().skip(span.column - 1).collect();
        let width = input[span.byte_start..span.byte_end].chars().take_while(|&c| c != '\n').count();
        let width = width.clamp(1, rest.chars().count().max(1));
        say!(io.err, "  {line}");
        say!(io.err, "  {}{}", " ".repeat(span.column - 1), "^".repeat(width));
    }
}

fn report_parse_error(input: &str, e: &ParseError, io: &mut Io<'_>) {
    let mut message = e.message.clone();
    if !e.expected.is_empty() {
        message = format!("{message} (expected {})", e.expected.join(", "));
    }
    report_at(input, e.span, &message, io);
}

fn with_term(c: &Common, io: &mut Io<'_>, f: impl FnOnce(Parsed, &mut Io<'_>) -> i32) -> i32 {
    let input = match read_input(c, io) {
        Ok(s) => s,
        Err(code) => return code,
    };
    match surface::parse(c.system, &input) {
        Ok(t) => f(t, io),
        Err(e) => {
            report_parse_error(&input, &e, io);
            EXIT_INPUT
        }
    }
}

fn record(event: &str, term: Option<String>, rule: Option<String>, step: Option<usize>) -> String {
    json!({ "event": event, "term": term, "rule": rule, "step": step }).to_string()
}

fn cmd_parse(t: Parsed, c: &Common, io: &mut Io<'_>) -> i32 {
    match c.format {
        Format::JsonLines => {
            say!(io.out, "{}", record("parsed", Some(t.to_string()), None, None));
        }
        _ => {
            say!(io.out, "{}", surface::print(&t));
        }
    }
    EXIT_OK
}

fn cmd_typecheck(c: &Common, io: &mut Io<'_>) -> i32 {
    let input = match read_input(c, io) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let parsed = if c.system == System::Stlc {
        surface::parse_stlc_spanned(&input).map(|w| {
            let site = stlc::type_error_site(&Context::empty(), &w.term).map(|(i, e)| (w.spans[i], e.to_string()));
            (stlc::infer(&Context::empty(), &w.term).map(|t| t.to_string()).ok(), site)
        })
    } else {
        surface::parse_stlcext_spanned(&input).map(|w| {
            let site =
                stlcext::ext_type_error_site(&Context::empty(), &w.term).map(|(i, e)| (w.spans[i], e.to_string()));
            (stlcext::ext_infer(&Context::empty(), &w.term).map(|t| t.to_string()).ok(), site)
        })
    };
    match parsed {
        Err(e) => {
            report_parse_error(&input, &e, io);
            EXIT_INPUT
        }
        Ok((Some(ty), _)) => {
            if c.format == Format::JsonLines {
                say!(
                    io.out,
                    "{}",
                    json!({ "event": "type", "term": input.trim(), "rule": null, "step": null, "type": ty })
                );
            } else {
                say!(io.out, "{ty}");
            }
            EXIT_OK
        }
        Ok((None, site)) => {
            let (span, msg) = site.expect("an ill-typed term has an error site");
            report_at(&input, span, &format!("type error: {msg}"), io);
            EXIT_INPUT
        }
    }
}

/// Uniform access to each system's labeled steps.
trait Engine {
    type T: State + Send + Sync + 'static;
    fn rel(&self) -> Rel<Self::T>;
    fn size(&self, t: &Self::T) -> usize;
    /// Every labeled one-step reduct.
    fn labeled(&self, t: &Self::T) -> Vec<(String, Self::T)>;
    /// The strategy step, or `None` at a normal form.
    fn next(&self, t: &Self::T, strategy: StrategyArg) -> Option<(String, Self::T)>;
}

struct LambdaSys;
struct SkiSys;
struct ExprSys;
struct SrsSys(Vec<StrRule>);
struct StlcSys;
struct ExtSys;

impl Engine for LambdaSys {
    type T = Term;
    fn rel(&self) -> Rel<Term> {
        lambda::beta_rel()
    }
    fn size(&self, t: &Term) -> usize {
        t.size()
    }
    fn labeled(&self, t: &Term) -> Vec<(String, Term)> {
        lambda::beta_reducts(t).into_iter().map(|r| ("beta".to_string(), r)).collect()
    }
    fn next(&self, t: &Term, strategy: StrategyArg) -> Option<(String, Term)> {
        let s = match strategy {
            StrategyArg::NormalOrder => lambda::Strategy::NormalOrder,
            StrategyArg::ApplicativeOrder => lambda::Strategy::ApplicativeOrder,
        };
        lambda::step(t, s).map(|r| ("beta".to_string(), r))
    }
}

impl Engine for SkiSys {
    type T = CTerm;
    fn rel(&self) -> Rel<CTerm> {
        ski::ski_rel()
    }
    fn size(&self, t: &CTerm) -> usize {
        t.size()
    }
    fn labeled(&self, t: &CTerm) -> Vec<(String, CTerm)> {
        ski::ski_steps(t).into_iter().map(|(r, x)| (r.to_string(), x)).collect()
    }
    fn next(&self, t: &CTerm, _: StrategyArg) -> Option<(String, CTerm)> {
        ski::ski_step_normal_order(t).map(|(r, x)| (r.to_string(), x))
    }
}

impl Engine for ExprSys {
    type T = Expr;
    fn rel(&self) -> Rel<Expr> {
        rewrite::expr_rel()
    }
    fn size(&self, t: &Expr) -> usize {
        rewrite::expr_size(t)
    }
    fn labeled(&self, t: &Expr) -> Vec<(String, Expr)> {
        rewrite::expr_steps(t).into_iter().map(|(r, x)| (r.to_string(), x)).collect()
    }
    fn next(&self, t: &Expr, _: StrategyArg) -> Option<(String, Expr)> {
        self.labeled(t).into_iter().next()
    }
}

impl Engine for SrsSys {
    type T = String;
    fn rel(&self) -> Rel<String> {
        rewrite::srs_rel("srs", self.0.clone())
    }
    fn size(&self, t: &String) -> usize {
        rewrite::str_len(t)
    }
    fn labeled(&self, t: &String) -> Vec<(String, String)> {
        rewrite::srs_steps(t, &self.0).unwrap_or_default().into_iter().map(|(r, x)| (r.to_string(), x)).collect()
    }
    fn next(&self, t: &String, _: StrategyArg) -> Option<(String, String)> {
        self.labeled(t).into_iter().next()
    }
}

impl Engine for StlcSys {
    type T = TTerm;
    fn rel(&self) -> Rel<TTerm> {
        stlc::typed_rel()
    }
    fn size(&self, t: &TTerm) -> usize {
        t.size()
    }
    fn labeled(&self, t: &TTerm) -> Vec<(String, TTerm)> {
        stlc::typed_step_reducts(t).into_iter().map(|r| ("beta".to_string(), r)).collect()
    }
    fn next(&self, t: &TTerm, _: StrategyArg) -> Option<(String, TTerm)> {
        stlc::typed_step_normal_order(t).map(|r| ("beta".to_string(), r))
    }
}

impl Engine for ExtSys {
    type T = ETerm;
    fn rel(&self) -> Rel<ETerm> {
        stlcext::ext_rel()
    }
    fn size(&self, t: &ETerm) -> usize {
        t.size()
    }
    fn labeled(&self, t: &ETerm) -> Vec<(String, ETerm)> {
        stlcext::ext_steps(t).into_iter().map(|s| (s.redex.to_string(), s.term)).collect()
    }
    fn next(&self, t: &ETerm, _: StrategyArg) -> Option<(String, ETerm)> {
        stlcext::ext_step_normal_order(t).map(|s| (s.redex.to_string(), s.term))
    }
}

fn load_rules(path: Option<&PathBuf>, io: &mut Io<'_>) -> Result<Vec<StrRule>, i32> {
    let Some(path) = path else {
        return Ok(rewrite::idempotency_rules());
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        say!(io.err, "error: reading {}: {e}", path.display());
        EXIT_INPUT
    })?;
    rewrite::parse_rules(&text).map_err(|e| {
        say!(io.err, "error: {}: {e}", path.display());
        EXIT_INPUT
    })
}

/// Calls `$body` with the system engine and the core term bound.
macro_rules! dispatch {
    ($t:expr, $c:expr, $io:expr, |$sys:ident, $term:ident| $body:expr) => {
        match $t {
            Parsed::Lambda($term) => {
                let $sys = LambdaSys;
                $body
            }
            Parsed::Ski($term) => {
                let $sys = SkiSys;
                $body
            }
            Parsed::Expr($term) => {
                let $sys = ExprSys;
                $body
            }
            Parsed::Srs($term) => {
                let $sys = match load_rules($c.rules.as_ref(), $io) {
                    Ok(r) => SrsSys(r),
                    Err(code) => return code,
                };
                $body
            }
            Parsed::Stlc($term) => {
                let $sys = StlcSys;
                $body
            }
            Parsed::StlcExt($term) => {
                let $sys = ExtSys;
                $body
            }
        }
    };
}

fn cmd_reduce(t: Parsed, c: &Common, trace: bool, io: &mut Io<'_>) -> i32 {
    if c.strategy == StrategyArg::ApplicativeOrder && !matches!(t, Parsed::Lambda(_)) {
        say!(io.err, "error: applicative-order is only available for the lambda system");
        return EXIT_USAGE;
    }
    dispatch!(t, c, io, |sys, m| reduce(&sys, m, c, trace, io))
}

fn reduce<S: Engine>(sys: &S, start: S::T, c: &Common, trace: bool, io: &mut Io<'_>) -> i32 {
    let json = c.format == Format::JsonLines;
    let mut cur = start;
    let mut steps = 0usize;
    loop {
        let Some((rule, next)) = sys.next(&cur, c.strategy) else {
            if json {
                say!(io.out, "{}", record("normal-form", Some(cur.to_string()), None, Some(steps)));
            } else if !trace {
                say!(io.out, "{cur}");
            }
            return EXIT_OK;
        };
        if steps as u64 == c.fuel {
            if json {
                say!(io.out, "{}", record("fuel-exhausted", Some(cur.to_string()), None, Some(steps)));
            }
            say!(io.err, "fuel exhausted after {steps} steps; last term: {cur}");
            return EXIT_BOUND;
        }
        steps += 1;
        if trace {
            if json {
                say!(io.out, "{}", record("step", Some(next.to_string()), Some(rule.clone()), Some(steps)));
            } else {
                say!(io.out, "{rule}: {next}");
            }
        }
        cur = next;
    }
}

fn cmd_confluence(t: Parsed, c: &Common, io: &mut Io<'_>) -> i32 {
    dispatch!(t, c, io, |sys, m| confluence(&sys, &m, c, io))
}

fn confluence<S: Engine>(sys: &S, start: &S::T, c: &Common, io: &mut Io<'_>) -> i32 {
    let v = ars::newman_verify(&sys.rel(), start, c.cap as usize);
    if c.format == Format::JsonLines {
        let nfs: Vec<String> = v.normal_forms.iter().map(|s| s.to_string()).collect();
        let line = json!({
            "event": "verdict",
            "term": start.to_string(),
            "rule": null,
            "step": null,
            "terminating": v.terminating,
            "locallyConfluent": v.locally_confluent,
            "uniqueNF": v.unique_nf,
            "nf": nfs,
            "complete": v.complete,
        });
        say!(io.out, "{line}");
    } else {
        say!(io.out, "{v}");
    }
    if v.complete {
        EXIT_OK
    } else {
        EXIT_BOUND
    }
}

fn cmd_graph(t: Parsed, c: &Common, io: &mut Io<'_>) -> i32 {
    dispatch!(t, c, io, |sys, m| graph(&sys, &m, c, io))
}

fn graph<S: Engine>(sys: &S, start: &S::T, c: &Common, io: &mut Io<'_>) -> i32 {
    let g = ars::star_reachable(&sys.rel(), start, c.cap as usize);
    let view = dot::GraphView::build(&g, |s| sys.size(s), |s| sys.labeled(s));
    match c.format {
        Format::JsonLines => {
            for line in view.json_lines() {
                say!(io.out, "{line}");
            }
        }
        _ => {
            let _ = write!(io.out, "{}", view.to_dot());
        }
    }
    if g.is_complete() {
        EXIT_OK
    } else {
        say!(io.err, "warning: node cap {} reached; graph is partial", c.cap);
        EXIT_BOUND
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit_pair(io: &mut Io<'_>, format: Format, text: impl Display, source: String, rules: String, joinable: bool) {
    if format == Format::JsonLines {
        let line = json!({
            "event": "critical-pair",
            "term": source,
            "rule": rules,
            "step": null,
            "joinable": joinable,
        });
        say!(io.out, "{line}");
    } else {
        say!(io.out, "{text} joinable={}", yes_no(joinable));
    }
}

fn cmd_critical_pairs(a: &PairsArgs, io: &mut Io<'_>) -> i32 {
    let depth = a.depth as usize;
    match a.system {
        System::Srs => {
            let rules = match load_rules(a.rules.as_ref(), io) {
                Ok(r) => r,
                Err(code) => return code,
            };
            for cp in rewrite::critical_pairs(&rules) {
                let ok = rewrite::critical_pair_joinable(&cp, &rules, depth);
                let names = format!("{}/{}", cp.rules.0, cp.rules.1);
                emit_pair(io, a.format, &cp, cp.source.clone(), names, ok);
            }
            EXIT_OK
        }
        System::Expr => {
            if a.rules.is_some() {
                say!(io.err, "error: --rules only applies to the srs system");
                return EXIT_USAGE;
            }
            let rel = rewrite::expr_rel();
            for cp in rewrite::expr_critical_pairs() {
                let ok = ars::joinable(&rel, &cp.left, &cp.right, depth).is_some();
                let names = format!("{}/{}", cp.rules.0, cp.rules.1);
                let text = format!("source={} left={} right={} rules={names}", cp.source, cp.left, cp.right);
                emit_pair(io, a.format, text, cp.source.to_string(), names, ok);
            }
            EXIT_OK
        }
        other => {
            say!(io.err, "error: critical-pairs needs the srs or expr system, not {other}");
            EXIT_USAGE
        }
    }
}

fn seed_from_env(flag: u64, io: &mut Io<'_>) -> Result<u64, i32> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            say!(io.err, "error: {SEED_ENV}={v:?} is not an unsigned integer");
            EXIT_USAGE
        }),
        Err(_) => Ok(flag),
    }
}

fn cmd_props(a: &PropsArgs, io: &mut Io<'_>) -> i32 {
    let seed = match seed_from_env(a.seed, io) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let mut cfg = SuiteConfig::new(seed);
    cfg.cases = a.cases as usize;
    cfg.exhaustive = a.exhaustive.map(|n| n as usize);
    if let Some(n) = a.max_size {
        cfg.gen.max_size = n as usize;
    }
    let report = a.suite.run(&cfg);
    if a.format == Format::JsonLines {
        for f in &report.failures {
            let line = json!({
                "event": "failure",
                "term": f.counterexample,
                "rule": f.property,
                "step": f.case,
            });
            say!(io.out, "{line}");
        }
        say!(io.out, "{}", report.summary_json());
    } else {
        let _ = write!(io.out, "{report}");
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_INPUT
    }
}
