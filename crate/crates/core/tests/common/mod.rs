#![allow(dead_code)]

use proptest::prelude::*;

use rewritekit::lambda::{self, Term};
use rewritekit::rewrite::{self, Expr};
use rewritekit::ski::{capp, CTerm};
use rewritekit::stlc::{self, TTerm, Ty};
use rewritekit::stlcext::{self, build as e, ETerm, ETy};

/// Untyped terms whose indices stay below `free + depth` at every position.
pub fn term(free: usize) -> BoxedStrategy<Term> {
    fn go(k: usize, depth: u32) -> BoxedStrategy<Term> {
        let leaf =
            if k == 0 { Just(lambda::lam(lambda::var(0))).boxed() } else { (0..k).prop_map(lambda::var).boxed() };
        if depth == 0 {
            return leaf;
        }
        prop_oneof![
            2 => leaf,
            2 => go(k + 1, depth - 1).prop_map(lambda::lam),
            3 => (go(k, depth - 1), go(k, depth - 1)).prop_map(|(f, a)| lambda::app(f, a)),
        ]
        .boxed()
    }
    go(free, 4)
}

pub fn cterm() -> impl Strategy<Value = CTerm> {
    let leaf = prop_oneof![Just(CTerm::S), Just(CTerm::K)];
    leaf.prop_recursive(5, 24, 2, |inner| (inner.clone(), inner).prop_map(|(f, a)| capp(f, a)))
}

pub fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::Zero), Just(Expr::One)];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| rewrite::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| rewrite::mul(a, b)),
        ]
    })
}

pub fn word(max_len: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('a'), Just('b')], 0..=max_len).prop_map(|cs| cs.into_iter().collect())
}

pub fn ty() -> impl Strategy<Value = Ty> {
    (0..3usize)
        .prop_map(stlc::base)
        .prop_recursive(2, 6, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| stlc::arr(a, b)))
}

pub fn ety() -> impl Strategy<Value = ETy> {
    (0..3usize).prop_map(stlcext::ebase).prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| stlcext::earr(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| stlcext::prod(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| stlcext::sum(a, b)),
        ]
    })
}

/// Typed-syntax terms, not necessarily well typed.
pub fn tterm() -> impl Strategy<Value = TTerm> {
    (0..4usize).prop_map(stlc::tvar).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (ty(), inner.clone()).prop_map(|(t, b)| stlc::tlam(t, b)),
            (inner.clone(), inner).prop_map(|(f, a)| stlc::tapp(f, a)),
        ]
    })
}

/// Extended-syntax terms, not necessarily well typed.
pub fn eterm() -> impl Strategy<Value = ETerm> {
    (0..4usize).prop_map(e::v).prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (ety(), inner.clone()).prop_map(|(t, b)| e::lam(t, b)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| e::app(f, a)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| e::pair(l, r)),
            inner.clone().prop_map(e::fst),
            inner.clone().prop_map(e::snd),
            (ety(), inner.clone()).prop_map(|(t, m)| e::inl(t, m)),
            (ety(), inner.clone()).prop_map(|(t, m)| e::inr(t, m)),
            (inner.clone(), inner.clone(), inner).prop_map(|(s, a, b)| e::case(s, a, b)),
        ]
    })
}
