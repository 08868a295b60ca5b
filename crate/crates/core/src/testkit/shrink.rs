use crate::lambda::{self, Term};
use crate::stlc::{self, TTerm};
use crate::stlcext::{build as e, ETerm};

/// Structural one-step shrinks: every term obtained by replacing one subterm
/// with one of its own immediate children (or with `v0`).
pub trait Shrink: Sized + Clone {
    fn shrinks(&self) -> Vec<Self>;
}

/// Greedily applies shrinks while `fails` still holds.
pub fn minimize<T: Shrink>(start: &T, fails: impl Fn(&T) -> bool) -> T {
    let mut cur = start.clone();
    'outer: loop {
        for cand in cur.shrinks() {
            if fails(&cand) {
                cur = cand;
                continue 'outer;
            }
        }
        return cur;
    }
}

impl Shrink for Term {
    fn shrinks(&self) -> Vec<Term> {
        let mut out: Vec<Term> = self.children().into_iter().cloned().collect();
        if *self != lambda::var(0) {
            out.push(lambda::var(0));
        }
        match self {
            Term::Var(n) if *n > 0 => out.push(lambda::var(n - 1)),
            Term::Var(_) => {}
            Term::Lam(b) => out.extend(b.shrinks().into_iter().map(lambda::lam)),
            Term::App(f, a) => {
                out.extend(f.shrinks().into_iter().map(|f2| lambda::app(f2, (**a).clone())));
                out.extend(a.shrinks().into_iter().map(|a2| lambda::app((**f).clone(), a2)));
            }
        }
        out
    }
}

impl Shrink for TTerm {
    fn shrinks(&self) -> Vec<TTerm> {
        let mut out: Vec<TTerm> = self.children().into_iter().cloned().collect();
        match self {
            TTerm::Var(n) if *n > 0 => out.push(stlc::tvar(n - 1)),
            TTerm::Var(_) => {}
            TTerm::Lam(t, b) => out.extend(b.shrinks().into_iter().map(|b2| stlc::tlam(t.clone(), b2))),
            TTerm::App(f, a) => {
                out.extend(f.shrinks().into_iter().map(|f2| stlc::tapp(f2, (**a).clone())));
                out.extend(a.shrinks().into_iter().map(|a2| stlc::tapp((**f).clone(), a2)));
            }
        }
        out
    }
}

impl Shrink for ETerm {
    fn shrinks(&self) -> Vec<ETerm> {
        let mut out: Vec<ETerm> = self.children().into_iter().cloned().collect();
        let un =
            |m: &ETerm, wrap: &dyn Fn(ETerm) -> ETerm| -> Vec<ETerm> { m.shrinks().into_iter().map(wrap).collect() };
        match self {
            ETerm::Var(n) if *n > 0 => out.push(e::v(n - 1)),
            ETerm::Var(_) => {}
            ETerm::Lam(t, b) => out.extend(un(b, &|x| e::lam(t.clone(), x))),
            ETerm::Fst(m) => out.extend(un(m, &e::fst)),
            ETerm::Snd(m) => out.extend(un(m, &e::snd)),
            ETerm::Inl(t, m) => out.extend(un(m, &|x| e::inl(t.clone(), x))),
            ETerm::Inr(t, m) => out.extend(un(m, &|x| e::inr(t.clone(), x))),
            ETerm::App(f, a) => {
                out.extend(un(f, &|x| e::app(x, (**a).clone())));
                out.extend(un(a, &|x| e::app((**f).clone(), x)));
            }
            ETerm::Pair(l, r) => {
                out.extend(un(l, &|x| e::pair(x, (**r).clone())));
                out.extend(un(r, &|x| e::pair((**l).clone(), x)));
            }
            ETerm::Case(s, n1, n2) => {
                out.extend(un(s, &|x| e::case(x, (**n1).clone(), (**n2).clone())));
                out.extend(un(n1, &|x| e::case((**s).clone(), x, (**n2).clone())));
                out.extend(un(n2, &|x| e::case((**s).clone(), (**n1).clone(), x)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{app, lam, var};

    #[test]
    fn shrinks_to_smallest_failing_subterm() {
        // "contains an application of v2" shrinks down to exactly that.
        let big = lam(app(lam(app(var(3), var(2))), app(var(0), var(1))));
        fn has(t: &Term) -> bool {
            match t {
                Term::Var(_) => false,
                Term::App(f, a) => **a == var(2) || has(f) || has(a),
                Term::Lam(b) => has(b),
            }
        }
        assert!(has(&big));
        let small = minimize(&big, has);
        assert!(has(&small));
        assert_eq!(small.size(), 3);
    }
}
