mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use rewritekit::ars;
use rewritekit::lambda::{self, Term};
use rewritekit::stlc::{self, Context, Ty};
use rewritekit::stlcext::{self, build as e, earr, ebase, esubst, sum, ETerm, ETy};
use rewritekit::testkit::{GenConfig, Generator};

const CAP: usize = 10_000;

fn gen(seed: u64) -> Generator {
    Generator::new(GenConfig { seed, max_size: 8, ..GenConfig::default() })
}

fn extend<T: Clone>(ctx: &Context<T>, innermost: T) -> Context<T> {
    Context::from_innermost(std::iter::once(innermost).chain(ctx.iter().cloned()))
}

fn simple(ctx: &Context<ETy>) -> Context<Ty> {
    fn lower(t: &ETy) -> Ty {
        match t {
            ETy::Base(n) => stlc::base(*n),
            ETy::Arr(a, b) => stlc::arr(lower(a), lower(b)),
            other => panic!("not a simple type: {other}"),
        }
    }
    Context::from_innermost(ctx.iter().map(lower))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn erasure_commutes_with_reduction(m in common::tterm()) {
        let stepped: HashSet<Term> = stlc::typed_step_reducts(&m).iter().map(|t| t.erase()).collect();
        let erased: HashSet<Term> = lambda::beta_reducts(&m.erase()).into_iter().collect();
        prop_assert_eq!(stepped, erased);
    }

    #[test]
    fn stlc_substitution_lemma(seed in any::<u64>()) {
        let mut g = gen(seed);
        let ctx = simple(&g.context(2, false));
        let (n, a) = loop {
            if let Ok(x) = g.gen_stlc(&ctx, None) {
                break x;
            }
        };
        let under = extend(&ctx, a.clone());
        if let Ok((m, b)) = g.gen_stlc(&under, None) {
            prop_assert_eq!(stlc::infer(&under, &m), Ok(b.clone()));
            prop_assert_eq!(stlc::infer(&ctx, &stlc::tsubst(0, &n, &m)), Ok(b));
        }
    }

    #[test]
    fn stlcext_substitution_lemma(seed in any::<u64>()) {
        let mut g = gen(seed);
        let ctx = g.context(2, true);
        let (n, a) = loop {
            if let Ok(x) = g.gen_stlcext(&ctx, None) {
                break x;
            }
        };
        let under = extend(&ctx, a.clone());
        if let Ok((m, b)) = g.gen_stlcext(&under, None) {
            prop_assert_eq!(stlcext::ext_infer(&ctx, &esubst(0, &n, &m)), Ok(b));
        }
    }
}

fn reach(m: &ETerm) -> Vec<ETerm> {
    let g = ars::star_reachable(&stlcext::ext_rel(), m, CAP);
    assert!(g.is_complete(), "{m} not explored within the cap");
    g.nodes().to_vec()
}

// `case M N1 N2 →* inl V` (or `inr V`) only through some `M →* inl W` with
// `N1[W] →* inl V`, or some `M →* inr W` with `N2[W] →* inl V`.
fn tracked(m: &ETerm, n1: &ETerm, n2: &ETerm) -> Result<usize, String> {
    let whole = e::case(m.clone(), n1.clone(), n2.clone());
    let from_m = reach(m);
    let mut results = 0;
    for r in reach(&whole) {
        if !matches!(r, ETerm::Inl(..) | ETerm::Inr(..)) {
            continue;
        }
        results += 1;
        let explained = from_m.iter().any(|w| match w {
            ETerm::Inl(_, w) => reach(&esubst(0, w, n1)).contains(&r),
            ETerm::Inr(_, w) => reach(&esubst(0, w, n2)).contains(&r),
            _ => false,
        });
        if !explained {
            return Err(format!("{whole} reaches {r}"));
        }
    }
    Ok(results)
}

#[test]
fn scrutinee_tracking_on_generated_instances() {
    let mut g = gen(11);
    let sums = [sum(ebase(0), ebase(1)), sum(earr(ebase(0), ebase(0)), ebase(0))];
    let results = [sum(ebase(0), ebase(0)), sum(ebase(1), earr(ebase(0), ebase(0)))];
    let empty = Context::empty();
    let mut reaching = 0;
    for _ in 0..400 {
        for s in &sums {
            for c in &results {
                let ETy::Sum(a, b) = s else { unreachable!() };
                let (Ok((m, _)), Ok((n1, _)), Ok((n2, _))) = (
                    g.gen_stlcext(&empty, Some(s)),
                    g.gen_stlcext(&extend(&empty, (**a).clone()), Some(c)),
                    g.gen_stlcext(&extend(&empty, (**b).clone()), Some(c)),
                ) else {
                    continue;
                };
                match tracked(&m, &n1, &n2) {
                    Ok(n) if n > 0 => reaching += 1,
                    Ok(_) => {}
                    Err(msg) => panic!("{msg}"),
                }
            }
        }
    }
    assert!(reaching > 100, "{reaching}");
}

#[test]
fn scrutinee_tracking_needs_both_branches() {
    // case ((\z:S. z) (inr id)) of { inl x => inl x | inr y => inl y } reaches
    // an inl result although its scrutinee only ever reaches inr.
    let f = earr(ebase(0), ebase(0));
    let s = sum(f.clone(), f.clone());
    let id = e::lam(ebase(0), e::v(0));
    let m = e::app(e::lam(s.clone(), e::v(0)), e::inr(s.clone(), id));
    let branch = e::inl(s.clone(), e::v(0));
    let whole = e::case(m.clone(), branch.clone(), branch.clone());
    assert_eq!(stlcext::ext_infer(&Context::empty(), &whole), Ok(s));
    assert!(reach(&whole).iter().any(|r| matches!(r, ETerm::Inl(..))));
    assert!(!reach(&m).iter().any(|r| matches!(r, ETerm::Inl(..))));
    assert!(tracked(&m, &branch, &branch).unwrap() > 0);
}
