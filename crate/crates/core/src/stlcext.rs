//! STLC extended with products and sums.
//!
//! Reduction is the full congruence closure of the computational rules:
//! `FstPair`/`SndPair` fire on any pair and `CaseInl`/`CaseInr` on any
//! injection, values or not. Both `case` branches bind one variable at
//! index 0.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::ars::{self, Rel, SnVerdict};
use crate::stlc::{Context, SubjectReductionReport, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ETy {
    Base(usize),
    Arr(Box<ETy>, Box<ETy>),
    Prod(Box<ETy>, Box<ETy>),
    Sum(Box<ETy>, Box<ETy>),
}

pub fn ebase(n: usize) -> ETy {
    ETy::Base(n)
}

pub fn earr(a: ETy, b: ETy) -> ETy {
    ETy::Arr(Box::new(a), Box::new(b))
}

pub fn prod(a: ETy, b: ETy) -> ETy {
    ETy::Prod(Box::new(a), Box::new(b))
}

pub fn sum(a: ETy, b: ETy) -> ETy {
    ETy::Sum(Box::new(a), Box::new(b))
}

impl ETy {
    pub fn depth(&self) -> usize {
        match self {
            ETy::Base(_) => 0,
            ETy::Arr(a, b) | ETy::Prod(a, b) | ETy::Sum(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            ETy::Arr(..) => 0,
            ETy::Sum(..) => 1,
            ETy::Prod(..) => 2,
            ETy::Base(_) => 3,
        }
    }
}

impl fmt::Display for ETy {
    /// `->` is right-associative; `*` and `+` are left-associative with `*`
    /// binding tighter.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(t: &ETy, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if t.prec() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        }
        match self {
            ETy::Base(n) => write!(f, "b{n}"),
            ETy::Arr(a, b) => {
                wrap(a, 1, f)?;
                f.write_str(" -> ")?;
                wrap(b, 0, f)
            }
            ETy::Sum(a, b) => {
                wrap(a, 1, f)?;
                f.write_str(" + ")?;
                wrap(b, 2, f)
            }
            ETy::Prod(a, b) => {
                wrap(a, 2, f)?;
                f.write_str(" * ")?;
                wrap(b, 3, f)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ETerm {
    Var(usize),
    Lam(ETy, Box<ETerm>),
    App(Box<ETerm>, Box<ETerm>),
    Pair(Box<ETerm>, Box<ETerm>),
    Fst(Box<ETerm>),
    Snd(Box<ETerm>),
    /// Annotated with the full sum type.
    Inl(ETy, Box<ETerm>),
    Inr(ETy, Box<ETerm>),
    Case(Box<ETerm>, Box<ETerm>, Box<ETerm>),
}

pub mod build {
    //! Short constructors for [`ETerm`](super::ETerm).
    use super::{ETerm, ETy};

    pub fn v(n: usize) -> ETerm {
        ETerm::Var(n)
    }
    pub fn lam(ty: ETy, body: ETerm) -> ETerm {
        ETerm::Lam(ty, Box::new(body))
    }
    pub fn app(f: ETerm, a: ETerm) -> ETerm {
        ETerm::App(Box::new(f), Box::new(a))
    }
    pub fn pair(l: ETerm, r: ETerm) -> ETerm {
        ETerm::Pair(Box::new(l), Box::new(r))
    }
    pub fn fst(m: ETerm) -> ETerm {
        ETerm::Fst(Box::new(m))
    }
    pub fn snd(m: ETerm) -> ETerm {
        ETerm::Snd(Box::new(m))
    }
    pub fn inl(ann: ETy, m: ETerm) -> ETerm {
        ETerm::Inl(ann, Box::new(m))
    }
    pub fn inr(ann: ETy, m: ETerm) -> ETerm {
        ETerm::Inr(ann, Box::new(m))
    }
    pub fn case(s: ETerm, n1: ETerm, n2: ETerm) -> ETerm {
        ETerm::Case(Box::new(s), Box::new(n1), Box::new(n2))
    }
}

use build::*;

/// Constructor tags, for coverage counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constructor {
    Var,
    Lam,
    App,
    Pair,
    Fst,
    Snd,
    Inl,
    Inr,
    Case,
}

impl Constructor {
    pub const ALL: [Constructor; 9] = [
        Constructor::Var,
        Constructor::Lam,
        Constructor::App,
        Constructor::Pair,
        Constructor::Fst,
        Constructor::Snd,
        Constructor::Inl,
        Constructor::Inr,
        Constructor::Case,
    ];
}

impl ETerm {
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn children(&self) -> Vec<&ETerm> {
        match self {
            ETerm::Var(_) => vec![],
            ETerm::Lam(_, m) | ETerm::Fst(m) | ETerm::Snd(m) | ETerm::Inl(_, m) | ETerm::Inr(_, m) => vec![m],
            ETerm::App(a, b) | ETerm::Pair(a, b) => vec![a, b],
            ETerm::Case(s, n1, n2) => vec![s, n1, n2],
        }
    }

    pub fn constructor(&self) -> Constructor {
        match self {
            ETerm::Var(_) => Constructor::Var,
            ETerm::Lam(..) => Constructor::Lam,
            ETerm::App(..) => Constructor::App,
            ETerm::Pair(..) => Constructor::Pair,
            ETerm::Fst(_) => Constructor::Fst,
            ETerm::Snd(_) => Constructor::Snd,
            ETerm::Inl(..) => Constructor::Inl,
            ETerm::Inr(..) => Constructor::Inr,
            ETerm::Case(..) => Constructor::Case,
        }
    }

    /// Every constructor occurring in the term.
    pub fn constructors(&self, out: &mut HashSet<Constructor>) {
        out.insert(self.constructor());
        for c in self.children() {
            c.constructors(out);
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, ETerm::Var(_) | ETerm::App(..) | ETerm::Pair(..) | ETerm::Case(..))
    }
}

fn atom(m: &ETerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if m.is_atom() {
        write!(f, "{m}")
    } else {
        write!(f, "({m})")
    }
}

impl fmt::Display for ETerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ETerm::Var(n) => write!(f, "v{n}"),
            ETerm::Lam(ty, b) => write!(f, "\\:{ty}. {b}"),
            ETerm::App(fun, arg) => {
                if matches!(**fun, ETerm::Lam(..)) {
                    write!(f, "(({fun}) {arg})")
                } else {
                    write!(f, "({fun} {arg})")
                }
            }
            ETerm::Pair(l, r) => write!(f, "({l}, {r})"),
            ETerm::Fst(m) => {
                f.write_str("fst ")?;
                atom(m, f)
            }
            ETerm::Snd(m) => {
                f.write_str("snd ")?;
                atom(m, f)
            }
            ETerm::Inl(ty, m) => {
                write!(f, "inl[{ty}] ")?;
                atom(m, f)
            }
            ETerm::Inr(ty, m) => {
                write!(f, "inr[{ty}] ")?;
                atom(m, f)
            }
            ETerm::Case(s, n1, n2) => write!(f, "case {s} of {{ inl => {n1} | inr => {n2} }}"),
        }
    }
}

pub fn eshift(d: usize, c: usize, m: &ETerm) -> ETerm {
    if d == 0 {
        return m.clone();
    }
    let go = |t: &ETerm| eshift(d, c, t);
    let under = |t: &ETerm| eshift(d, c + 1, t);
    match m {
        ETerm::Var(n) => ETerm::Var(if *n < c { *n } else { n + d }),
        ETerm::Lam(ty, b) => lam(ty.clone(), under(b)),
        ETerm::App(a, b) => app(go(a), go(b)),
        ETerm::Pair(a, b) => pair(go(a), go(b)),
        ETerm::Fst(a) => fst(go(a)),
        ETerm::Snd(a) => snd(go(a)),
        ETerm::Inl(ty, a) => inl(ty.clone(), go(a)),
        ETerm::Inr(ty, a) => inr(ty.clone(), go(a)),
        ETerm::Case(s, n1, n2) => case(go(s), under(n1), under(n2)),
    }
}

/// Capture-avoiding substitution, crossing `Lam` bodies and `case` branches
/// as single binders.
pub fn esubst(k: usize, n: &ETerm, m: &ETerm) -> ETerm {
    let go = |t: &ETerm| esubst(k, n, t);
    let under = |t: &ETerm| esubst(k + 1, &eshift(1, 0, n), t);
    match m {
        ETerm::Var(i) if *i < k => ETerm::Var(*i),
        ETerm::Var(i) if *i == k => n.clone(),
        ETerm::Var(i) => ETerm::Var(i - 1),
        ETerm::Lam(ty, b) => lam(ty.clone(), under(b)),
        ETerm::App(a, b) => app(go(a), go(b)),
        ETerm::Pair(a, b) => pair(go(a), go(b)),
        ETerm::Fst(a) => fst(go(a)),
        ETerm::Snd(a) => snd(go(a)),
        ETerm::Inl(ty, a) => inl(ty.clone(), go(a)),
        ETerm::Inr(ty, a) => inr(ty.clone(), go(a)),
        ETerm::Case(s, n1, n2) => case(go(s), under(n1), under(n2)),
    }
}

/// The 5 computational and 12 congruence reduction rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepRule {
    Beta,
    FstPair,
    SndPair,
    CaseInl,
    CaseInr,
    AppL,
    AppR,
    Lam,
    PairL,
    PairR,
    Fst,
    Snd,
    Inl,
    Inr,
    CaseM,
    CaseN1,
    CaseN2,
}

impl StepRule {
    pub const ALL: [StepRule; 17] = [
        StepRule::Beta,
        StepRule::FstPair,
        StepRule::SndPair,
        StepRule::CaseInl,
        StepRule::CaseInr,
        StepRule::AppL,
        StepRule::AppR,
        StepRule::Lam,
        StepRule::PairL,
        StepRule::PairR,
        StepRule::Fst,
        StepRule::Snd,
        StepRule::Inl,
        StepRule::Inr,
        StepRule::CaseM,
        StepRule::CaseN1,
        StepRule::CaseN2,
    ];

    pub fn is_computational(self) -> bool {
        matches!(self, StepRule::Beta | StepRule::FstPair | StepRule::SndPair | StepRule::CaseInl | StepRule::CaseInr)
    }

    pub fn name(self) -> &'static str {
        match self {
            StepRule::Beta => "Beta",
            StepRule::FstPair => "FstPair",
            StepRule::SndPair => "SndPair",
            StepRule::CaseInl => "CaseInl",
            StepRule::CaseInr => "CaseInr",
            StepRule::AppL => "AppL",
            StepRule::AppR => "AppR",
            StepRule::Lam => "Lam",
            StepRule::PairL => "PairL",
            StepRule::PairR => "PairR",
            StepRule::Fst => "Fst",
            StepRule::Snd => "Snd",
            StepRule::Inl => "Inl",
            StepRule::Inr => "Inr",
            StepRule::CaseM => "CaseM",
            StepRule::CaseN1 => "CaseN1",
            StepRule::CaseN2 => "CaseN2",
        }
    }
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One reduction step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtStep {
    /// Last rule of the derivation (the congruence at the root, or the
    /// computational rule for a root contraction).
    pub rule: StepRule,
    /// Computational rule of the contracted redex.
    pub redex: StepRule,
    pub term: ETerm,
}

fn root_contraction(m: &ETerm) -> Option<(StepRule, ETerm)> {
    match m {
        ETerm::App(f, a) => match &**f {
            ETerm::Lam(_, body) => Some((StepRule::Beta, esubst(0, a, body))),
            _ => None,
        },
        ETerm::Fst(p) => match &**p {
            ETerm::Pair(l, _) => Some((StepRule::FstPair, (**l).clone())),
            _ => None,
        },
        ETerm::Snd(p) => match &**p {
            ETerm::Pair(_, r) => Some((StepRule::SndPair, (**r).clone())),
            _ => None,
        },
        ETerm::Case(s, n1, n2) => match &**s {
            ETerm::Inl(_, v) => Some((StepRule::CaseInl, esubst(0, v, n1))),
            ETerm::Inr(_, v) => Some((StepRule::CaseInr, esubst(0, v, n2))),
            _ => None,
        },
        _ => None,
    }
}

fn steps_into(m: &ETerm, out: &mut Vec<ExtStep>) {
    if let Some((rule, term)) = root_contraction(m) {
        out.push(ExtStep { rule, redex: rule, term });
    }
    let mut lift = |rule: StepRule, sub: &ETerm, rebuild: &dyn Fn(ETerm) -> ETerm| {
        let mut inner = Vec::new();
        steps_into(sub, &mut inner);
        out.extend(inner.into_iter().map(|s| ExtStep { rule, redex: s.redex, term: rebuild(s.term) }));
    };
    match m {
        ETerm::Var(_) => {}
        ETerm::Lam(ty, b) => lift(StepRule::Lam, b, &|b2| lam(ty.clone(), b2)),
        ETerm::App(f, a) => {
            lift(StepRule::AppL, f, &|f2| app(f2, (**a).clone()));
            lift(StepRule::AppR, a, &|a2| app((**f).clone(), a2));
        }
        ETerm::Pair(l, r) => {
            lift(StepRule::PairL, l, &|l2| pair(l2, (**r).clone()));
            lift(StepRule::PairR, r, &|r2| pair((**l).clone(), r2));
        }
        ETerm::Fst(p) => lift(StepRule::Fst, p, &fst),
        ETerm::Snd(p) => lift(StepRule::Snd, p, &snd),
        ETerm::Inl(ty, p) => lift(StepRule::Inl, p, &|p2| inl(ty.clone(), p2)),
        ETerm::Inr(ty, p) => lift(StepRule::Inr, p, &|p2| inr(ty.clone(), p2)),
        ETerm::Case(s, n1, n2) => {
            lift(StepRule::CaseM, s, &|s2| case(s2, (**n1).clone(), (**n2).clone()));
            lift(StepRule::CaseN1, n1, &|b| case((**s).clone(), b, (**n2).clone()));
            lift(StepRule::CaseN2, n2, &|b| case((**s).clone(), (**n1).clone(), b));
        }
    }
}

/// All single steps, outermost-leftmost first, without duplicate steps.
pub fn ext_steps(m: &ETerm) -> Vec<ExtStep> {
    let mut raw = Vec::new();
    steps_into(m, &mut raw);
    let mut seen = HashSet::new();
    raw.into_iter().filter(|s| seen.insert(s.clone())).collect()
}

/// Labeled one-step reducts: `(last derivation rule, reduct)`.
pub fn ext_reducts(m: &ETerm) -> Vec<(StepRule, ETerm)> {
    let mut seen = HashSet::new();
    ext_steps(m).into_iter().map(|s| (s.rule, s.term)).filter(|p| seen.insert(p.clone())).collect()
}

/// Unlabeled reducts in canonical order.
pub fn ext_reduct_terms(m: &ETerm) -> Vec<ETerm> {
    let mut seen = HashSet::new();
    let mut out: Vec<ETerm> = ext_steps(m).into_iter().map(|s| s.term).filter(|t| seen.insert(t.clone())).collect();
    out.sort_by_cached_key(|t| (t.size(), t.to_string()));
    out
}

pub fn ext_rel() -> Rel<ETerm> {
    Rel::new("stlcext", ext_reduct_terms)
}

/// Leftmost-outermost single step.
pub fn ext_step_normal_order(m: &ETerm) -> Option<ExtStep> {
    let mut raw = Vec::new();
    steps_into(m, &mut raw);
    raw.into_iter().next()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtTypeError {
    #[error("unbound variable v{0}")]
    UnboundVariable(usize),
    #[error("expected a function, found {0}")]
    NotAFunction(ETy),
    #[error("expected a product, found {0}")]
    NotAProduct(ETy),
    #[error("expected a sum, found {0}")]
    NotASum(ETy),
    #[error("injection annotated {annotation} cannot hold a payload of type {payload}")]
    BadInjectionAnnotation { annotation: ETy, payload: ETy },
    #[error("case branches disagree: {left} vs {right}")]
    BranchTypeMismatch { left: ETy, right: ETy },
    #[error("argument type mismatch: expected {expected}, found {actual}")]
    ArgMismatch { expected: ETy, actual: ETy },
}

fn infer_in(ctx: &mut Context<ETy>, m: &ETerm) -> Result<ETy, ExtTypeError> {
    use ExtTypeError as E;
    let under = |ctx: &mut Context<ETy>, ty: ETy, body: &ETerm| {
        ctx.push(ty);
        let r = infer_in(ctx, body);
        ctx.pop();
        r
    };
    match m {
        ETerm::Var(n) => ctx.lookup(*n).cloned().ok_or(E::UnboundVariable(*n)),
        ETerm::Lam(dom, body) => Ok(earr(dom.clone(), under(ctx, dom.clone(), body)?)),
        ETerm::App(f, a) => {
            let fty = infer_in(ctx, f)?;
            let aty = infer_in(ctx, a)?;
            match fty {
                ETy::Arr(dom, cod) if *dom == aty => Ok(*cod),
                ETy::Arr(dom, _) => Err(E::ArgMismatch { expected: *dom, actual: aty }),
                other => Err(E::NotAFunction(other)),
            }
        }
        ETerm::Pair(l, r) => Ok(prod(infer_in(ctx, l)?, infer_in(ctx, r)?)),
        ETerm::Fst(p) => match infer_in(ctx, p)? {
            ETy::Prod(a, _) => Ok(*a),
            other => Err(E::NotAProduct(other)),
        },
        ETerm::Snd(p) => match infer_in(ctx, p)? {
            ETy::Prod(_, b) => Ok(*b),
            other => Err(E::NotAProduct(other)),
        },
        ETerm::Inl(ann, p) | ETerm::Inr(ann, p) => {
            let payload = infer_in(ctx, p)?;
            let expected = match (ann, m) {
                (ETy::Sum(a, _), ETerm::Inl(..)) => Some(a),
                (ETy::Sum(_, b), _) => Some(b),
                _ => None,
            };
            match expected {
                Some(t) if **t == payload => Ok(ann.clone()),
                _ => Err(E::BadInjectionAnnotation { annotation: ann.clone(), payload }),
            }
        }
        ETerm::Case(s, n1, n2) => {
            let (a, b) = match infer_in(ctx, s)? {
                ETy::Sum(a, b) => (*a, *b),
                other => return Err(E::NotASum(other)),
            };
            let left = under(ctx, a, n1)?;
            let right = under(ctx, b, n2)?;
            if left == right {
                Ok(left)
            } else {
                Err(E::BranchTypeMismatch { left, right })
            }
        }
    }
}

pub fn ext_infer(ctx: &Context<ETy>, m: &ETerm) -> Result<ETy, ExtTypeError> {
    infer_in(&mut ctx.clone(), m)
}

/// For an ill-typed `m`, the pre-order index of the innermost subterm that
/// fails to type while all of its own subterms type, with that error.
pub fn ext_type_error_site(ctx: &Context<ETy>, m: &ETerm) -> Option<(usize, ExtTypeError)> {
    fn under(ctx: &mut Context<ETy>, ty: ETy, m: &ETerm, at: usize) -> Option<(usize, ExtTypeError)> {
        ctx.push(ty);
        let r = go(ctx, m, at);
        ctx.pop();
        r
    }
    fn go(ctx: &mut Context<ETy>, m: &ETerm, at: usize) -> Option<(usize, ExtTypeError)> {
        let err = infer_in(ctx, m).err()?;
        let inner = match m {
            ETerm::Var(_) => None,
            ETerm::Lam(dom, b) => under(ctx, dom.clone(), b, at + 1),
            ETerm::Fst(p) | ETerm::Snd(p) | ETerm::Inl(_, p) | ETerm::Inr(_, p) => go(ctx, p, at + 1),
            ETerm::App(a, b) | ETerm::Pair(a, b) => go(ctx, a, at + 1).or_else(|| go(ctx, b, at + 1 + a.size())),
            ETerm::Case(s, n1, n2) => go(ctx, s, at + 1).or_else(|| match infer_in(ctx, s) {
                Ok(ETy::Sum(a, b)) => {
                    under(ctx, *a, n1, at + 1 + s.size()).or_else(|| under(ctx, *b, n2, at + 1 + s.size() + n1.size()))
                }
                _ => None,
            }),
        };
        inner.or(Some((at, err)))
    }
    go(&mut ctx.clone(), m, 0)
}

/// Abstractions, pairs of values, and injections of values.
pub fn is_value(m: &ETerm) -> bool {
    match m {
        ETerm::Lam(..) => true,
        ETerm::Pair(l, r) => is_value(l) && is_value(r),
        ETerm::Inl(_, p) | ETerm::Inr(_, p) => is_value(p),
        _ => false,
    }
}

/// Not a redex former at the head: variables, and eliminations whose
/// principal argument is not the matching introduction.
pub fn is_neutral(m: &ETerm) -> bool {
    match m {
        ETerm::Var(_) => true,
        ETerm::App(f, _) => !matches!(**f, ETerm::Lam(..)),
        ETerm::Fst(p) | ETerm::Snd(p) => !matches!(**p, ETerm::Pair(..)),
        ETerm::Case(s, _, _) => !matches!(**s, ETerm::Inl(..) | ETerm::Inr(..)),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Progress {
    IsValue,
    Steps(ExtStep),
    /// Neither a value nor reducible.
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgressError {
    #[error("progress needs a closed well-typed term: {0}")]
    IllTyped(#[from] ExtTypeError),
}

pub fn progress_check(m: &ETerm) -> Result<Progress, ProgressError> {
    ext_infer(&Context::empty(), m)?;
    if is_value(m) {
        return Ok(Progress::IsValue);
    }
    Ok(match ext_step_normal_order(m) {
        Some(step) => Progress::Steps(step),
        None => Progress::Violation,
    })
}

pub fn ext_subject_reduction_check(
    ctx: &Context<ETy>,
    m: &ETerm,
    depth: usize,
) -> Result<SubjectReductionReport<ETerm, ETy>, ExtTypeError> {
    let ty = ext_infer(ctx, m)?;
    let reach = ars::bounded_reach(&ext_rel(), m, depth);
    let mut reducts: Vec<&ETerm> = reach.keys().filter(|t| *t != m).collect();
    reducts.sort_by_cached_key(|t| (t.size(), t.to_string()));
    let violations = reducts
        .iter()
        .filter_map(|t| match ext_infer(ctx, t) {
            Ok(found) if found == ty => None,
            found => Some(Violation { reduct: (*t).clone(), found: found.map_err(|e| e.to_string()) }),
        })
        .collect();
    Ok(SubjectReductionReport { ty, reducts_checked: reducts.len(), violations })
}

/// Checks type preservation of each single step of `m`, per rule label.
/// Returns the steps whose reduct fails to re-infer to `m`'s type.
pub fn step_preservation(ctx: &Context<ETy>, m: &ETerm) -> Result<Vec<ExtStep>, ExtTypeError> {
    let ty = ext_infer(ctx, m)?;
    Ok(ext_steps(m).into_iter().filter(|s| ext_infer(ctx, &s.term).as_ref() != Ok(&ty)).collect())
}

pub fn ext_sn_certificate(m: &ETerm, node_cap: usize) -> SnVerdict<ETerm> {
    ars::sn_certificate(&ext_rel(), m, node_cap)
}
