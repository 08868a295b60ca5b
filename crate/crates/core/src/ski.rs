//! SK combinatory logic.
//!
//! Rules: `K x y → x` and `S x y z → x z (y z)`. The system is orthogonal, so
//! parallel reduction and complete development need no substitution.

use std::collections::HashSet;
use std::fmt;

use crate::ars::Rel;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CTerm {
    S,
    K,
    App(Box<CTerm>, Box<CTerm>),
}

pub fn capp(f: CTerm, a: CTerm) -> CTerm {
    CTerm::App(Box::new(f), Box::new(a))
}

/// Left-associated application spine: `spine([a, b, c]) = a b c`.
pub fn spine(items: impl IntoIterator<Item = CTerm>) -> CTerm {
    let mut it = items.into_iter();
    let head = it.next().expect("spine needs at least one combinator");
    it.fold(head, capp)
}

/// Which contraction rule fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkRule {
    K,
    S,
}

impl fmt::Display for SkRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkRule::K => "K",
            SkRule::S => "S",
        })
    }
}

enum Redex<'a> {
    K(&'a CTerm),
    S(&'a CTerm, &'a CTerm, &'a CTerm),
}

fn as_redex(m: &CTerm) -> Option<Redex<'_>> {
    let CTerm::App(f, z) = m else { return None };
    let CTerm::App(f2, y) = &**f else { return None };
    match &**f2 {
        CTerm::K => Some(Redex::K(y)),
        CTerm::App(f3, x) if **f3 == CTerm::S => Some(Redex::S(x, y, z)),
        _ => None,
    }
}

fn contract(r: &Redex<'_>) -> CTerm {
    match *r {
        Redex::K(x) => x.clone(),
        Redex::S(x, y, z) => capp(capp(x.clone(), z.clone()), capp(y.clone(), z.clone())),
    }
}

impl CTerm {
    pub fn size(&self) -> usize {
        match self {
            CTerm::S | CTerm::K => 1,
            CTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn is_redex(&self) -> bool {
        as_redex(self).is_some()
    }

    pub fn children(&self) -> Vec<&CTerm> {
        match self {
            CTerm::App(f, a) => vec![f, a],
            _ => vec![],
        }
    }
}

impl fmt::Display for CTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CTerm::S => f.write_str("S"),
            CTerm::K => f.write_str("K"),
            CTerm::App(fun, arg) => {
                write!(f, "{fun} ")?;
                if matches!(**arg, CTerm::App(..)) {
                    write!(f, "({arg})")
                } else {
                    write!(f, "{arg}")
                }
            }
        }
    }
}

fn canonical(terms: impl IntoIterator<Item = CTerm>) -> Vec<CTerm> {
    let mut seen = HashSet::new();
    let mut out: Vec<CTerm> = terms.into_iter().filter(|t| seen.insert(t.clone())).collect();
    out.sort_by_cached_key(|t| (t.size(), t.to_string()));
    out
}

fn labeled_steps_into(m: &CTerm, out: &mut Vec<(SkRule, CTerm)>) {
    if let Some(r) = as_redex(m) {
        let rule = match r {
            Redex::K(..) => SkRule::K,
            Redex::S(..) => SkRule::S,
        };
        out.push((rule, contract(&r)));
    }
    if let CTerm::App(f, a) = m {
        let mut left = Vec::new();
        labeled_steps_into(f, &mut left);
        out.extend(left.into_iter().map(|(r, f2)| (r, capp(f2, (**a).clone()))));
        let mut right = Vec::new();
        labeled_steps_into(a, &mut right);
        out.extend(right.into_iter().map(|(r, a2)| (r, capp((**f).clone(), a2))));
    }
}

/// One-step reducts with the rule that produced each, outermost-leftmost first.
pub fn ski_steps(m: &CTerm) -> Vec<(SkRule, CTerm)> {
    let mut out = Vec::new();
    labeled_steps_into(m, &mut out);
    out
}

/// All one-step reducts, in canonical order.
pub fn ski_reducts(m: &CTerm) -> Vec<CTerm> {
    canonical(ski_steps(m).into_iter().map(|(_, t)| t))
}

pub fn ski_rel() -> Rel<CTerm> {
    Rel::new("sk", ski_reducts)
}

fn parallel_set(m: &CTerm) -> HashSet<CTerm> {
    match m {
        CTerm::S | CTerm::K => HashSet::from([m.clone()]),
        CTerm::App(f, a) => {
            let fs = parallel_set(f);
            let args = parallel_set(a);
            let mut out = HashSet::new();
            for f2 in &fs {
                for a2 in &args {
                    out.insert(capp(f2.clone(), a2.clone()));
                }
            }
            match as_redex(m) {
                Some(Redex::K(x)) => out.extend(parallel_set(x)),
                Some(Redex::S(x, y, _)) => {
                    let (xs, ys) = (parallel_set(x), parallel_set(y));
                    for x2 in &xs {
                        for y2 in &ys {
                            for z2 in &args {
                                out.insert(capp(capp(x2.clone(), z2.clone()), capp(y2.clone(), z2.clone())));
                            }
                        }
                    }
                }
                None => {}
            }
            out
        }
    }
}

/// Every `n` with `m ⇒ n`, in canonical order.
pub fn ski_parallel_reducts(m: &CTerm) -> Vec<CTerm> {
    canonical(parallel_set(m))
}

pub fn ski_parallel_contains(m: &CTerm, n: &CTerm) -> bool {
    parallel_set(m).contains(n)
}

/// Complete development: a root redex is contracted after developing its
/// pattern variables; otherwise recurse structurally.
pub fn ski_complete(m: &CTerm) -> CTerm {
    match as_redex(m) {
        Some(Redex::K(x)) => ski_complete(x),
        Some(Redex::S(x, y, z)) => {
            let z2 = ski_complete(z);
            capp(capp(ski_complete(x), z2.clone()), capp(ski_complete(y), z2))
        }
        None => match m {
            CTerm::App(f, a) => capp(ski_complete(f), ski_complete(a)),
            _ => m.clone(),
        },
    }
}

/// Parallel reducts of `m` that fail to parallel-reduce to `ski_complete(m)`.
pub fn ski_takahashi_violations(m: &CTerm) -> Vec<CTerm> {
    let dev = ski_complete(m);
    ski_parallel_reducts(m).into_iter().filter(|n| !parallel_set(n).contains(&dev)).collect()
}

/// Leftmost-outermost single step.
pub fn ski_step_normal_order(m: &CTerm) -> Option<(SkRule, CTerm)> {
    ski_steps(m).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::CTerm::{K, S};
    use super::*;

    fn ksk() -> CTerm {
        spine([K, S, K])
    }

    #[test]
    fn reducts() {
        assert_eq!(ski_reducts(&ksk()), vec![S]);
        assert!(ski_reducts(&K).is_empty());
        assert_eq!(ski_reducts(&spine([S, K, K, K])), vec![capp(capp(K, K), capp(K, K))]);
    }

    #[test]
    fn parallel() {
        assert_eq!(ski_parallel_reducts(&S), vec![S]);
        assert_eq!(ski_parallel_reducts(&ksk()), vec![S, ksk()]);
    }

    #[test]
    fn complete() {
        assert_eq!(ski_complete(&K), K);
        assert_eq!(ski_complete(&ksk()), S);
        assert_eq!(ski_complete(&capp(ksk(), ksk())), capp(S, S));
    }

    #[test]
    fn display_is_left_associative() {
        assert_eq!(ksk().to_string(), "K S K");
        assert_eq!(capp(ksk(), ksk()).to_string(), "K S K (K S K)");
        assert_eq!(capp(S, capp(K, K)).to_string(), "S (K K)");
    }
}
