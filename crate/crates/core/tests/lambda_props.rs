mod common;

use proptest::prelude::*;

use rewritekit::ars::{self, Rel};
use rewritekit::lambda::{self, Outcome, Strategy};
use rewritekit::ski::{self, CTerm};
use rewritekit::testkit::{enum_ski, enum_terms};

const FUEL: usize = 200;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn strategies_agree_on_normal_forms(t in common::term(2)) {
        let normal = lambda::normalize(&t, Strategy::NormalOrder, FUEL);
        let applicative = lambda::normalize(&t, Strategy::ApplicativeOrder, FUEL);
        if let (Outcome::NormalForm(a), Outcome::NormalForm(b)) = (&normal, &applicative) {
            prop_assert_eq!(a, b);
        }
        // Normal order finds a normal form whenever applicative order does.
        if applicative.is_normal_form() {
            prop_assert!(lambda::normalize(&t, Strategy::NormalOrder, 10 * FUEL).is_normal_form());
        }
    }
}

#[test]
fn beta_has_unique_normal_forms_on_terminating_terms() {
    let rel = lambda::beta_rel();
    let corpus = enum_terms(7, 2);
    let mut terminating = 0;
    for t in &corpus {
        let v = ars::newman_verify(&rel, t, 500);
        if v.terminating == Some(true) {
            terminating += 1;
            assert!(v.unique_nf && v.locally_confluent, "{t}: {v}");
        }
    }
    assert!(2 * terminating > corpus.len(), "{terminating} of {}", corpus.len());
}

#[test]
fn ski_takahashi_exhaustive() {
    for m in enum_ski(7) {
        assert!(ski::ski_takahashi_violations(&m).is_empty(), "{m}");
    }
}

#[test]
fn ski_parallel_reduction_has_the_diamond_property() {
    let par: Rel<CTerm> = Rel::new("ski-par", |m: &CTerm| ski::ski_parallel_reducts(m));
    let report = ars::check_diamond(&par, &enum_ski(9), 1);
    assert!(report.passed(), "{report}");
    assert!(report.peaks_checked > 0);
}

#[test]
fn ski_terminating_starts_have_unique_normal_forms() {
    let rel = ski::ski_rel();
    for m in enum_ski(9) {
        let g = ars::star_reachable(&rel, &m, 2000);
        if g.is_complete() && g.is_acyclic() {
            let v = ars::newman_verdict_of(&g);
            assert!(v.unique_nf, "{m}: {v}");
        }
    }
}
