//! Classification tables, the arithmetic lemmas behind them, and verdicts.

pub mod lemmas;
pub mod tables;
pub mod verdict;

pub use lemmas::{
    enumerate_splitting_types, index_facts, ramification_contradiction, splitting_types_del_pezzo,
    splitting_types_index_one, standard_p, IndexFacts, MiddleIndexCases, Ramification, StandardCurve,
};
pub use tables::{
    del_pezzo_lookup, del_pezzo_wps_consistency, resolve_alias, DelPezzoEntry, MukaiEntry, WpsConsistency,
};
pub use verdict::{lookup_rule, verdict, Rule, Status, Subject, Verdict, RULES, SUPPORTED_SHAPES};
