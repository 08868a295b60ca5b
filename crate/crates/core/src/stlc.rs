//! Simply typed lambda calculus with domain-annotated binders.
//!
//! Annotating `Lam` with its domain makes synthesis syntax-directed;
//! [`TTerm::erase`] recovers the untyped term.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::ars::{self, Rel, SnVerdict};
use crate::lambda::{self, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    Base(usize),
    Arr(Box<Ty>, Box<Ty>),
}

pub fn base(n: usize) -> Ty {
    Ty::Base(n)
}

pub fn arr(a: Ty, b: Ty) -> Ty {
    Ty::Arr(Box::new(a), Box::new(b))
}

impl Ty {
    pub fn depth(&self) -> usize {
        match self {
            Ty::Base(_) => 0,
            Ty::Arr(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Base(n) => write!(f, "b{n}"),
            Ty::Arr(a, b) => {
                if matches!(**a, Ty::Arr(..)) {
                    write!(f, "({a}) -> {b}")
                } else {
                    write!(f, "{a} -> {b}")
                }
            }
        }
    }
}

/// Typing context; index 0 is the most recent binder.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context<T> {
    // Innermost binder last.
    entries: Vec<T>,
}

impl<T: Clone> Context<T> {
    pub fn empty() -> Self {
        Context { entries: Vec::new() }
    }

    /// Builds a context from types listed innermost first.
    pub fn from_innermost(types: impl IntoIterator<Item = T>) -> Self {
        let mut entries: Vec<T> = types.into_iter().collect();
        entries.reverse();
        Context { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, n: usize) -> Option<&T> {
        self.entries.len().checked_sub(n + 1).map(|i| &self.entries[i])
    }

    /// `ty :: self`.
    pub fn extend(&self, ty: T) -> Self {
        let mut entries = self.entries.clone();
        entries.push(ty);
        Context { entries }
    }

    pub fn push(&mut self, ty: T) {
        self.entries.push(ty);
    }

    pub fn pop(&mut self) -> Option<T> {
        self.entries.pop()
    }

    /// Entries innermost first.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &T> + ExactSizeIterator {
        self.entries.iter().rev()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TTerm {
    Var(usize),
    App(Box<TTerm>, Box<TTerm>),
    Lam(Ty, Box<TTerm>),
}

pub fn tvar(n: usize) -> TTerm {
    TTerm::Var(n)
}

pub fn tapp(f: TTerm, a: TTerm) -> TTerm {
    TTerm::App(Box::new(f), Box::new(a))
}

pub fn tlam(dom: Ty, body: TTerm) -> TTerm {
    TTerm::Lam(dom, Box::new(body))
}

impl TTerm {
    pub fn size(&self) -> usize {
        match self {
            TTerm::Var(_) => 1,
            TTerm::App(f, a) => 1 + f.size() + a.size(),
            TTerm::Lam(_, b) => 1 + b.size(),
        }
    }

    pub fn erase(&self) -> Term {
        match self {
            TTerm::Var(n) => lambda::var(*n),
            TTerm::App(f, a) => lambda::app(f.erase(), a.erase()),
            TTerm::Lam(_, b) => lambda::lam(b.erase()),
        }
    }

    pub fn children(&self) -> Vec<&TTerm> {
        match self {
            TTerm::Var(_) => vec![],
            TTerm::App(f, a) => vec![f, a],
            TTerm::Lam(_, b) => vec![b],
        }
    }
}

impl fmt::Display for TTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TTerm::Var(n) => write!(f, "v{n}"),
            TTerm::Lam(a, b) => write!(f, "\\:{a}. {b}"),
            TTerm::App(fun, arg) => {
                if matches!(**fun, TTerm::Lam(..)) {
                    write!(f, "(({fun}) {arg})")
                } else {
                    write!(f, "({fun} {arg})")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable v{0}")]
    UnboundVariable(usize),
    #[error("expected a function, found {0}")]
    NotAFunction(Ty),
    #[error("argument type mismatch: expected {expected}, found {actual}")]
    ArgMismatch { expected: Ty, actual: Ty },
}

fn infer_in(ctx: &mut Context<Ty>, m: &TTerm) -> Result<Ty, TypeError> {
    match m {
        TTerm::Var(n) => ctx.lookup(*n).cloned().ok_or(TypeError::UnboundVariable(*n)),
        TTerm::Lam(dom, body) => {
            ctx.push(dom.clone());
            let cod = infer_in(ctx, body);
            ctx.pop();
            Ok(arr(dom.clone(), cod?))
        }
        TTerm::App(f, a) => {
            let fty = infer_in(ctx, f)?;
            let aty = infer_in(ctx, a)?;
            match fty {
                Ty::Arr(dom, cod) if *dom == aty => Ok(*cod),
                Ty::Arr(dom, _) => Err(TypeError::ArgMismatch { expected: *dom, actual: aty }),
                other => Err(TypeError::NotAFunction(other)),
            }
        }
    }
}

/// Synthesizes the type of `m` under `ctx`.
pub fn infer(ctx: &Context<Ty>, m: &TTerm) -> Result<Ty, TypeError> {
    infer_in(&mut ctx.clone(), m)
}

/// For an ill-typed `m`, the pre-order index of the innermost subterm that
/// fails to type while all of its own subterms type, with that error.
pub fn type_error_site(ctx: &Context<Ty>, m: &TTerm) -> Option<(usize, TypeError)> {
    fn go(ctx: &mut Context<Ty>, m: &TTerm, at: usize) -> Option<(usize, TypeError)> {
        let err = infer_in(ctx, m).err()?;
        let inner = match m {
            TTerm::Var(_) => None,
            TTerm::Lam(dom, b) => {
                ctx.push(dom.clone());
                let r = go(ctx, b, at + 1);
                ctx.pop();
                r
            }
            TTerm::App(f, a) => go(ctx, f, at + 1).or_else(|| go(ctx, a, at + 1 + f.size())),
        };
        inner.or(Some((at, err)))
    }
    go(&mut ctx.clone(), m, 0)
}

pub fn tshift(d: usize, c: usize, m: &TTerm) -> TTerm {
    if d == 0 {
        return m.clone();
    }
    match m {
        TTerm::Var(n) => TTerm::Var(if *n < c { *n } else { n + d }),
        TTerm::App(f, a) => tapp(tshift(d, c, f), tshift(d, c, a)),
        TTerm::Lam(ty, b) => tlam(ty.clone(), tshift(d, c + 1, b)),
    }
}

/// Annotation-preserving lift of [`lambda::subst`].
pub fn tsubst(k: usize, n: &TTerm, m: &TTerm) -> TTerm {
    match m {
        TTerm::Var(i) if *i < k => TTerm::Var(*i),
        TTerm::Var(i) if *i == k => n.clone(),
        TTerm::Var(i) => TTerm::Var(i - 1),
        TTerm::App(f, a) => tapp(tsubst(k, n, f), tsubst(k, n, a)),
        TTerm::Lam(ty, b) => tlam(ty.clone(), tsubst(k + 1, &tshift(1, 0, n), b)),
    }
}

fn steps_into(m: &TTerm, out: &mut Vec<TTerm>) {
    match m {
        TTerm::Var(_) => {}
        TTerm::Lam(ty, b) => {
            let mut inner = Vec::new();
            steps_into(b, &mut inner);
            out.extend(inner.into_iter().map(|b2| tlam(ty.clone(), b2)));
        }
        TTerm::App(f, a) => {
            if let TTerm::Lam(_, body) = &**f {
                out.push(tsubst(0, a, body));
            }
            let mut left = Vec::new();
            steps_into(f, &mut left);
            out.extend(left.into_iter().map(|f2| tapp(f2, (**a).clone())));
            let mut right = Vec::new();
            steps_into(a, &mut right);
            out.extend(right.into_iter().map(|a2| tapp((**f).clone(), a2)));
        }
    }
}

/// One-step full β reducts of an annotated term, canonical order.
pub fn typed_step_reducts(m: &TTerm) -> Vec<TTerm> {
    let mut raw = Vec::new();
    steps_into(m, &mut raw);
    let mut seen = HashSet::new();
    let mut out: Vec<TTerm> = raw.into_iter().filter(|t| seen.insert(t.clone())).collect();
    out.sort_by_cached_key(|t| (t.size(), t.to_string()));
    out
}

/// Leftmost-outermost single step.
pub fn typed_step_normal_order(m: &TTerm) -> Option<TTerm> {
    match m {
        TTerm::Var(_) => None,
        TTerm::Lam(ty, b) => typed_step_normal_order(b).map(|b2| tlam(ty.clone(), b2)),
        TTerm::App(f, a) => {
            if let TTerm::Lam(_, body) = &**f {
                return Some(tsubst(0, a, body));
            }
            if let Some(f2) = typed_step_normal_order(f) {
                return Some(tapp(f2, (**a).clone()));
            }
            typed_step_normal_order(a).map(|a2| tapp((**f).clone(), a2))
        }
    }
}

pub fn typed_rel() -> Rel<TTerm> {
    Rel::new("beta:stlc", typed_step_reducts)
}

/// A reduct whose type differs from the start term's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<T, Y> {
    pub reduct: T,
    pub found: Result<Y, String>,
}

#[derive(Clone, Debug)]
pub struct SubjectReductionReport<T, Y> {
    pub ty: Y,
    pub reducts_checked: usize,
    pub violations: Vec<Violation<T, Y>>,
}

impl<T, Y> SubjectReductionReport<T, Y> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Explores all reducts of `m` up to `depth` steps; each must re-infer to the
/// type of `m`.
pub fn subject_reduction_check(
    ctx: &Context<Ty>,
    m: &TTerm,
    depth: usize,
) -> Result<SubjectReductionReport<TTerm, Ty>, TypeError> {
    let ty = infer(ctx, m)?;
    let reach = ars::bounded_reach(&typed_rel(), m, depth);
    let mut reducts: Vec<&TTerm> = reach.keys().filter(|t| *t != m).collect();
    reducts.sort_by_cached_key(|t| (t.size(), t.to_string()));
    let violations = reducts
        .iter()
        .filter_map(|t| match infer(ctx, t) {
            Ok(found) if found == ty => None,
            found => Some(Violation { reduct: (*t).clone(), found: found.map_err(|e| e.to_string()) }),
        })
        .collect();
    Ok(SubjectReductionReport { ty, reducts_checked: reducts.len(), violations })
}

/// SN iff the full typed reduction graph is finite and acyclic.
pub fn sn_certificate(m: &TTerm, node_cap: usize) -> SnVerdict<TTerm> {
    ars::sn_certificate(&typed_rel(), m, node_cap)
}

/// Same certification for the erased untyped term.
pub fn erased_sn_certificate(m: &TTerm, node_cap: usize) -> SnVerdict<Term> {
    ars::sn_certificate(&lambda::beta_rel(), &m.erase(), node_cap)
}
