//! Untyped lambda calculus with de Bruijn indices.
//!
//! `subst` is the capture-avoiding "substitute and lower" operation: the
//! argument is shifted once at every binder crossing and returned unchanged
//! at the hit. [`subst_leaf_shift`] keeps the variant that additionally
//! re-shifts at the hit; it exists so the lemma suites can demonstrate that
//! they notice the difference.

use std::collections::HashSet;
use std::fmt;

use crate::ars::Rel;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App(Box<Term>, Box<Term>),
    Lam(Box<Term>),
}

pub use Term::{App, Lam, Var};

pub fn var(n: usize) -> Term {
    Var(n)
}

pub fn app(f: Term, a: Term) -> Term {
    App(Box::new(f), Box::new(a))
}

pub fn lam(body: Term) -> Term {
    Lam(Box::new(body))
}

/// `(\x. x x) (\x. x x)`.
pub fn omega() -> Term {
    let w = lam(app(var(0), var(0)));
    app(w.clone(), w)
}

impl Term {
    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Var(_) => 1,
            App(f, a) => 1 + f.size() + a.size(),
            Lam(b) => 1 + b.size(),
        }
    }

    /// Whether every free index is below `bound`.
    pub fn free_below(&self, bound: usize) -> bool {
        match self {
            Var(n) => *n < bound,
            App(f, a) => f.free_below(bound) && a.free_below(bound),
            Lam(b) => b.free_below(bound + 1),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_below(0)
    }

    pub fn is_redex(&self) -> bool {
        matches!(self, App(f, _) if matches!(**f, Lam(_)))
    }

    pub fn is_normal(&self) -> bool {
        match self {
            Var(_) => true,
            Lam(b) => b.is_normal(),
            App(f, a) => !matches!(**f, Lam(_)) && f.is_normal() && a.is_normal(),
        }
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Var(_) => vec![],
            App(f, a) => vec![f, a],
            Lam(b) => vec![b],
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var(n) => write!(f, "v{n}"),
            Lam(b) => write!(f, "\\. {b}"),
            App(fun, arg) => {
                if matches!(**fun, Lam(_)) {
                    write!(f, "(({fun}) {arg})")
                } else {
                    write!(f, "({fun} {arg})")
                }
            }
        }
    }
}

/// Sorts by (size, canonical form) and drops duplicates.
pub fn canonical_order(terms: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut seen = HashSet::new();
    let mut out: Vec<Term> = terms.into_iter().filter(|t| seen.insert(t.clone())).collect();
    out.sort_by_cached_key(|t| (t.size(), t.to_string()));
    out
}

/// Adds `d` to every index at or above the cutoff `c`.
pub fn shift(d: usize, c: usize, m: &Term) -> Term {
    if d == 0 {
        return m.clone();
    }
    match m {
        Var(n) => Var(if *n < c { *n } else { n + d }),
        App(f, a) => app(shift(d, c, f), shift(d, c, a)),
        Lam(b) => lam(shift(d, c + 1, b)),
    }
}

/// Replaces index `k` by `n` and lowers the indices above `k`.
pub fn subst(k: usize, n: &Term, m: &Term) -> Term {
    match m {
        Var(i) if *i < k => Var(*i),
        Var(i) if *i == k => n.clone(),
        Var(i) => Var(i - 1),
        App(f, a) => app(subst(k, n, f), subst(k, n, a)),
        Lam(b) => lam(subst(k + 1, &shift(1, 0, n), b)),
    }
}

/// Substitution that shifts the argument at every binder crossing *and* by
/// `k` again at the hit, so crossed binders are counted twice.
pub fn subst_leaf_shift(k: usize, n: &Term, m: &Term) -> Term {
    match m {
        Var(i) if *i < k => Var(*i),
        Var(i) if *i == k => shift(k, 0, n),
        Var(i) => Var(i - 1),
        App(f, a) => app(subst_leaf_shift(k, n, f), subst_leaf_shift(k, n, a)),
        Lam(b) => lam(subst_leaf_shift(k + 1, &shift(1, 0, n), b)),
    }
}

/// Contracts a redex `(\. body) arg`.
pub fn beta(body: &Term, arg: &Term) -> Term {
    subst(0, arg, body)
}

fn beta_reducts_into(m: &Term, out: &mut Vec<Term>) {
    match m {
        Var(_) => {}
        Lam(b) => {
            let mut inner = Vec::new();
            beta_reducts_into(b, &mut inner);
            out.extend(inner.into_iter().map(lam));
        }
        App(f, a) => {
            if let Lam(body) = &**f {
                out.push(beta(body, a));
            }
            let mut left = Vec::new();
            beta_reducts_into(f, &mut left);
            out.extend(left.into_iter().map(|f2| app(f2, (**a).clone())));
            let mut right = Vec::new();
            beta_reducts_into(a, &mut right);
            out.extend(right.into_iter().map(|a2| app((**f).clone(), a2)));
        }
    }
}

/// All one-step β reducts, in canonical order.
pub fn beta_reducts(m: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    beta_reducts_into(m, &mut out);
    canonical_order(out)
}

/// Full β-reduction as a relation.
pub fn beta_rel() -> Rel<Term> {
    Rel::new("beta", beta_reducts)
}

fn parallel_set(m: &Term) -> HashSet<Term> {
    match m {
        Var(_) => HashSet::from([m.clone()]),
        Lam(b) => parallel_set(b).into_iter().map(lam).collect(),
        App(f, a) => {
            let fs = parallel_set(f);
            let args = parallel_set(a);
            let mut out = HashSet::new();
            for f2 in &fs {
                for a2 in &args {
                    out.insert(app(f2.clone(), a2.clone()));
                }
            }
            if let Lam(body) = &**f {
                for b2 in parallel_set(body) {
                    for a2 in &args {
                        out.insert(beta(&b2, a2));
                    }
                }
            }
            out
        }
    }
}

/// Every `n` with `m ⇒ n` (parallel reduction), in canonical order.
pub fn parallel_reducts(m: &Term) -> Vec<Term> {
    canonical_order(parallel_set(m))
}

/// Whether `m ⇒ n`, decided structurally without enumerating reducts.
pub fn parallel_reduces_to(m: &Term, n: &Term) -> bool {
    // Beta case needs the whole reduct set for the body; fall back to
    // enumeration there, structural matching elsewhere.
    match (m, n) {
        (Var(i), Var(j)) => i == j,
        (Lam(b), Lam(b2)) => parallel_reduces_to(b, b2),
        (App(f, a), _) => {
            if let App(f2, a2) = n {
                if parallel_reduces_to(f, f2) && parallel_reduces_to(a, a2) {
                    return true;
                }
            }
            if let Lam(body) = &**f {
                let bodies = parallel_set(body);
                let args = parallel_set(a);
                bodies.iter().any(|b2| args.iter().any(|a2| beta(b2, a2) == *n))
            } else {
                false
            }
        }
        _ => false,
    }
}

/// Contracts every redex of `m` simultaneously.
pub fn complete_development(m: &Term) -> Term {
    match m {
        Var(_) => m.clone(),
        Lam(b) => lam(complete_development(b)),
        App(f, a) => match &**f {
            Lam(body) => subst(0, &complete_development(a), &complete_development(body)),
            _ => app(complete_development(f), complete_development(a)),
        },
    }
}

/// Result of checking `m ⇒ n ⟹ n ⇒ m*` for one term.
#[derive(Clone, Debug)]
pub struct TakahashiReport {
    pub term: Term,
    pub development: Term,
    pub reducts_checked: usize,
    /// Parallel reducts `n` with `m* ∉ par(n)`.
    pub violations: Vec<Term>,
}

impl TakahashiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn takahashi_check(m: &Term) -> TakahashiReport {
    let dev = complete_development(m);
    let reducts = parallel_reducts(m);
    let violations = reducts.iter().filter(|n| !parallel_set(n).contains(&dev)).cloned().collect();
    TakahashiReport { term: m.clone(), development: dev, reducts_checked: reducts.len(), violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost-outermost.
    NormalOrder,
    /// Leftmost-innermost.
    ApplicativeOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    NormalForm(T),
    FuelExhausted(T),
}

impl<T> Outcome<T> {
    pub fn term(&self) -> &T {
        match self {
            Outcome::NormalForm(t) | Outcome::FuelExhausted(t) => t,
        }
    }

    pub fn is_normal_form(&self) -> bool {
        matches!(self, Outcome::NormalForm(_))
    }
}

/// Leftmost-outermost single step.
pub fn step_normal_order(m: &Term) -> Option<Term> {
    match m {
        Var(_) => None,
        Lam(b) => step_normal_order(b).map(lam),
        App(f, a) => {
            if let Lam(body) = &**f {
                return Some(beta(body, a));
            }
            if let Some(f2) = step_normal_order(f) {
                return Some(app(f2, (**a).clone()));
            }
            step_normal_order(a).map(|a2| app((**f).clone(), a2))
        }
    }
}

/// Leftmost-innermost single step.
pub fn step_applicative_order(m: &Term) -> Option<Term> {
    match m {
        Var(_) => None,
        Lam(b) => step_applicative_order(b).map(lam),
        App(f, a) => {
            if let Some(f2) = step_applicative_order(f) {
                return Some(app(f2, (**a).clone()));
            }
            if let Some(a2) = step_applicative_order(a) {
                return Some(app((**f).clone(), a2));
            }
            match &**f {
                Lam(body) => Some(beta(body, a)),
                _ => None,
            }
        }
    }
}

pub fn step(m: &Term, strategy: Strategy) -> Option<Term> {
    match strategy {
        Strategy::NormalOrder => step_normal_order(m),
        Strategy::ApplicativeOrder => step_applicative_order(m),
    }
}

/// Steps with `strategy` until no redex remains or `fuel` steps were taken.
pub fn normalize(m: &Term, strategy: Strategy, fuel: usize) -> Outcome<Term> {
    let mut cur = m.clone();
    for _ in 0..fuel {
        match step(&cur, strategy) {
            Some(next) => cur = next,
            None => return Outcome::NormalForm(cur),
        }
    }
    if cur.is_normal() {
        Outcome::NormalForm(cur)
    } else {
        Outcome::FuelExhausted(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        assert_eq!(shift(1, 0, &var(0)), var(1));
        assert_eq!(shift(1, 0, &lam(var(1))), lam(var(2)));
        assert_eq!(shift(1, 0, &lam(var(0))), lam(var(0)));
        assert_eq!(shift(0, 3, &omega()), omega());
    }

    #[test]
    fn subst_examples() {
        let p = app(var(7), lam(var(1)));
        assert_eq!(subst(0, &p, &var(0)), p);
        assert_eq!(subst(0, &p, &var(3)), var(2));
        assert_eq!(subst(0, &p, &lam(var(1))), lam(shift(1, 0, &p)));
        assert_eq!(subst(2, &p, &var(1)), var(1));
    }

    #[test]
    fn leaf_shift_variant_captures() {
        // (\.\. v1) v5 must give \. v6; the leaf-shifting variant overshoots.
        let body = lam(var(1));
        assert_eq!(subst(0, &var(5), &body), lam(var(6)));
        assert_eq!(subst_leaf_shift(0, &var(5), &body), lam(var(7)));
    }

    #[test]
    fn beta_reduct_examples() {
        assert!(beta_reducts(&var(3)).is_empty());
        assert_eq!(beta_reducts(&app(lam(lam(var(1))), var(5))), vec![lam(var(6))]);
        assert_eq!(beta_reducts(&omega()), vec![omega()]);
    }

    #[test]
    fn parallel_reduct_examples() {
        assert_eq!(parallel_reducts(&var(4)), vec![var(4)]);
        let m = app(lam(var(0)), var(3));
        assert_eq!(parallel_reducts(&m), vec![var(3), m.clone()]);
        assert!(parallel_reduces_to(&m, &var(3)));
        assert!(parallel_reduces_to(&m, &m));
        assert!(!parallel_reduces_to(&m, &var(2)));
    }

    #[test]
    fn complete_development_examples() {
        assert_eq!(complete_development(&var(2)), var(2));
        let nested = app(lam(var(0)), app(lam(var(0)), var(2)));
        assert_eq!(complete_development(&nested), var(2));
        let stuck = app(var(0), var(1));
        assert_eq!(complete_development(&stuck), stuck);
    }

    #[test]
    fn takahashi_examples() {
        assert!(takahashi_check(&var(0)).passed());
        let r = takahashi_check(&app(lam(var(0)), var(3)));
        assert_eq!(r.development, var(3));
        assert_eq!(r.reducts_checked, 2);
        assert!(r.passed());
    }

    #[test]
    fn normalize_examples() {
        let id = lam(var(0));
        for s in [Strategy::NormalOrder, Strategy::ApplicativeOrder] {
            assert_eq!(normalize(&id, s, 0), Outcome::NormalForm(id.clone()));
        }
        assert_eq!(
            normalize(&app(lam(lam(var(1))), var(5)), Strategy::NormalOrder, 10),
            Outcome::NormalForm(lam(var(6)))
        );
        assert_eq!(normalize(&omega(), Strategy::NormalOrder, 100), Outcome::FuelExhausted(omega()));
    }

    #[test]
    fn strategies_differ_on_discarded_divergence() {
        // (\.\. v0) omega: normal order discards omega, applicative loops.
        let m = app(lam(lam(var(0))), omega());
        assert_eq!(normalize(&m, Strategy::NormalOrder, 10), Outcome::NormalForm(lam(var(0))));
        assert!(!normalize(&m, Strategy::ApplicativeOrder, 10).is_normal_form());
    }

    #[test]
    fn canonical_print() {
        assert_eq!(lam(var(0)).to_string(), "\\. v0");
        assert_eq!(omega().to_string(), "((\\. (v0 v0)) \\. (v0 v0))");
        assert_eq!(app(var(0), var(1)).to_string(), "(v0 v1)");
    }
}
