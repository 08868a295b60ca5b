mod common;

use proptest::prelude::*;

use rewritekit::ars::{self, Rel};
use rewritekit::lambda::{self, Term};
use rewritekit::rewrite::{self, StrRule};
use rewritekit::testkit::enum_strings;

const CAP: usize = 300;

fn parallel_rel() -> Rel<Term> {
    Rel::new("par", |m: &Term| lambda::parallel_reducts(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn star_graph_is_sound(t in common::term(2)) {
        let rel = lambda::beta_rel();
        let g = ars::star_reachable(&rel, &t, CAP);
        prop_assert_eq!(g.root(), &t);
        for (x, y) in g.edges() {
            prop_assert!(rel.successors(x).contains(y));
        }
        let reach = g.reachable_from(0);
        prop_assert!(reach.iter().all(|&r| r));
        if g.is_complete() {
            for (i, x) in g.nodes().iter().enumerate() {
                let mut succ: Vec<&Term> = g.successors_of(i).iter().map(|&j| &g.nodes()[j]).collect();
                let mut expected: Vec<Term> = rel.successors(x);
                succ.sort_by_key(|s| s.to_string());
                expected.sort_by_key(|s| s.to_string());
                prop_assert_eq!(succ, expected.iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn join_witnesses_replay(t in common::term(2)) {
        let rel = lambda::beta_rel();
        let succs = rel.successors(&t);
        for b in &succs {
            for c in &succs {
                if let Some(w) = ars::joinable(&rel, b, c, 3) {
                    prop_assert!(w.validate(&rel, b, &rel, c));
                    prop_assert!(w.left_path.len() <= 3 && w.right_path.len() <= 3);
                }
            }
        }
    }

    #[test]
    fn diamond_gives_joinability_in_graph(t in common::term(2)) {
        let rel = parallel_rel();
        let g = ars::star_reachable(&rel, &t, 60);
        prop_assume!(g.is_complete());
        prop_assert!(ars::check_diamond(&rel, g.nodes(), 1).passed());
        for i in 0..g.len() {
            for j in i..g.len() {
                prop_assert!(g.joinable_in_graph(i, j), "{} / {}", g.nodes()[i], g.nodes()[j]);
            }
        }
    }

    #[test]
    fn analysis_is_deterministic(w in common::word(10), t in common::term(2)) {
        let srs = rewrite::srs_rel("srs", rewrite::idempotency_rules());
        prop_assert_eq!(
            ars::newman_verify(&srs, &w, CAP).to_string(),
            ars::newman_verify(&srs, &w, CAP).to_string()
        );
        let beta = lambda::beta_rel();
        let a = ars::star_reachable(&beta, &t, CAP);
        let b = ars::star_reachable(&beta, &t, CAP);
        prop_assert_eq!(a.nodes(), b.nodes());
        prop_assert_eq!(a.edge_indices(), b.edge_indices());
    }
}

fn single(rule: &StrRule) -> Rel<String> {
    rewrite::srs_rel(rule.to_string(), vec![rule.clone()])
}

// Every length-decreasing rule with a two-letter left side.
fn short_rules() -> Vec<StrRule> {
    let mut out = Vec::new();
    for lhs in ["aa", "ab", "ba", "bb"] {
        for rhs in ["", "a", "b"] {
            out.push(StrRule::new(lhs, rhs).unwrap());
        }
    }
    out
}

#[test]
fn hindley_rosen_implication_on_rule_pairs() {
    let corpus = enum_strings(6);
    let rules = short_rules();
    let mut premises_held = 0;
    for r in &rules {
        for s in &rules {
            let (rr, sr) = (single(r), single(s));
            let premises = ars::check_diamond(&rr, &corpus, 4).passed()
                && ars::check_diamond(&sr, &corpus, 4).passed()
                && ars::commute_check(&rr, &sr, &corpus, 4).passed();
            if premises {
                premises_held += 1;
                let union = ars::union_rel(&rr, &sr);
                assert!(ars::check_diamond(&union, &corpus, 4).passed(), "{r} with {s}");
            }
        }
    }
    // Not vacuous: the idempotency pair and many others qualify.
    assert!(premises_held >= 10, "{premises_held}");
}
