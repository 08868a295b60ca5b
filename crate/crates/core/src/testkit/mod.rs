//! Seeded generators, exhaustive enumerators and the executable lemma suites.

mod enumerate;
mod generate;
mod lemmas;
mod shrink;
mod suites;

pub use enumerate::{enum_eterms, enum_exprs, enum_ski, enum_strings, enum_terms, term_count};
pub use generate::{gen_ski, gen_term, GenConfig, Generator, GiveUp, Typed, TypedSystem, GEN_ATTEMPTS};
pub use lemmas::{debruijn_instances, Instance, Lemma, SubstFn};
pub use shrink::{minimize, Shrink};
pub use suites::{
    neutrality_check, rule_regressions, run_debruijn, run_suite, Failure, Suite, SuiteConfig, SuiteReport, UnknownSuite,
};
