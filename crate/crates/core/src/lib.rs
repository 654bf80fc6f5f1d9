//! Exact expected waiting times for patterns in i.i.d. letter streams.
//!
//! For a word `w` over `{0, .., r-1}` and a letter distribution `p` with all
//! masses positive, `E(w)` is the expected index at which `w` first
//! completes in a stream of independent letters drawn from `p`. It satisfies
//! `E(w) = E(ŵ) + 1/p(w)` where `ŵ` is the longest bifix of `w`, so
//!
//! ```
//! use bifix_core::{expected_waiting_time, Distribution, Word};
//!
//! let fair = Distribution::uniform(2).unwrap();
//! let report = expected_waiting_time(&Word::from(vec![0, 1, 1, 0]), &fair);
//! assert_eq!(bifix_core::rational::to_fraction_string(&report.expectation), "18/1");
//! ```
//!
//! The crate also carries two independent routes to the same numbers (an
//! exact absorbing-chain solve and a seeded simulation, in [`oracles`]) and
//! exhaustive checks of the identities `E` satisfies ([`identities`]).

pub mod alphabet;
pub mod automaton;
pub mod error;
pub mod identities;
pub mod oracles;
pub mod rational;
pub mod waiting_time;
pub mod word;

pub use alphabet::{Alphabet, Distribution};
pub use automaton::{build_automaton, PatternAutomaton};
pub use error::{Error, Result};
pub use identities::{
    check_f1, check_f2, check_s_recurrence, sweep_lemma_checks, Engine, ExpectationSource,
    Identity, IdentityCheckResult, IdentityChecker, Subject,
};
pub use oracles::{hitting_time_oracle, hitting_times, monte_carlo, LinearSystem, McEstimate};
pub use rational::Rational;
pub use waiting_time::{
    conditional, conditional_expected, expectation, expected_waiting_time, sibling_relation_rhs,
    word_probability, ChainTerm, Conditional, WaitingTimeReport,
};
pub use word::{border_chain, longest_bifix, max_bifix_extension, Word};
