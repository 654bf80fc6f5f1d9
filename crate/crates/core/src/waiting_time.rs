//! Exact expected waiting times.
//!
//! `E(w)` is the expected index at which `w` first completes in an i.i.d.
//! stream. With `ŵ` the longest bifix of `w`, `E(w) = E(ŵ) + 1/p(w)` and
//! `E(∅) = 0`, so unrolling the border chain gives
//! `E(w) = Σ 1/p(v)` over the nonempty words `v` of that chain.

use num_traits::One;

use crate::alphabet::Distribution;
use crate::automaton::PatternAutomaton;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::word::{border_lengths, longest_bifix, Word};

/// Significant digits of the decimal rendering in reports.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct ChainTerm {
    pub word: Word,
    /// `1 / p(word)`
    pub term: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaitingTimeReport {
    pub word: Word,
    pub p_w: Rational,
    pub expectation: Rational,
    /// Nonempty border-chain words, longest first; the terms sum to
    /// `expectation`.
    pub chain: Vec<ChainTerm>,
    /// Display only.
    pub decimal_hint: f64,
}

impl WaitingTimeReport {
    pub fn decimal(&self) -> String {
        rational::to_decimal_string(&self.expectation, DECIMAL_DIGITS)
    }
}

/// `p(w) = Π p(w(i))`, with `p(∅) = 1`.
pub fn word_probability(w: &Word, d: &Distribution) -> Rational {
    w.letters()
        .iter()
        .fold(Rational::one(), |acc, &x| acc * d.p(x))
}

/// Cumulative `p(w[1, k])` for `k = 0..=|w|`.
fn prefix_probabilities(w: &Word, d: &Distribution) -> Vec<Rational> {
    let mut out = Vec::with_capacity(w.len() + 1);
    out.push(Rational::one());
    for &x in w.letters() {
        let next = out.last().unwrap() * d.p(x);
        out.push(next);
    }
    out
}

/// Panics if `w` uses a letter outside the distribution's alphabet.
pub fn expected_waiting_time(w: &Word, d: &Distribution) -> WaitingTimeReport {
    let prefix_p = prefix_probabilities(w, d);
    let chain: Vec<ChainTerm> = border_lengths(w)
        .into_iter()
        .filter(|&k| k > 0)
        .map(|k| ChainTerm {
            word: w.prefix(k),
            term: prefix_p[k].recip(),
        })
        .collect();
    let expectation: Rational = chain.iter().map(|t| &t.term).sum();
    WaitingTimeReport {
        word: w.clone(),
        p_w: prefix_p[w.len()].clone(),
        decimal_hint: rational::to_f64(&expectation),
        expectation,
        chain,
    }
}

/// Shorthand for `expected_waiting_time(w, d).expectation`.
pub fn expectation(w: &Word, d: &Distribution) -> Rational {
    let prefix_p = prefix_probabilities(w, d);
    border_lengths(w)
        .into_iter()
        .filter(|&k| k > 0)
        .map(|k| prefix_p[k].recip())
        .sum()
}

/// `E(w | w')` together with how it was resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Conditional {
    pub value: Rational,
    /// Automaton state after reading `w'`; equals `|w|` when `w` occurs
    /// inside `w'`.
    pub state: usize,
    /// `w` already occurs inside `w'`, so the value is deterministic and
    /// at most zero.
    pub occurred: bool,
}

/// Expected additional time until `w` first occurs after the history `w'`,
/// i.e. the expectation of `T_w(w'X) - |w'|`.
pub fn conditional(w: &Word, w_prime: &Word, d: &Distribution) -> Result<Conditional> {
    let automaton = PatternAutomaton::new(w, d.r())?;
    d.check_word(w_prime)?;
    if let Some(end) = w_prime.first_occurrence_end(w) {
        return Ok(Conditional {
            value: rational::from_int(end as i64 - w_prime.len() as i64),
            state: automaton.accepting(),
            occurred: true,
        });
    }
    let state = automaton.run(0, w_prime.letters());
    Ok(Conditional {
        value: expectation(w, d) - expectation(&w.prefix(state), d),
        state,
        occurred: false,
    })
}

pub fn conditional_expected(w: &Word, w_prime: &Word, d: &Distribution) -> Result<Rational> {
    conditional(w, w_prime, d).map(|c| c.value)
}

/// Right-hand side of the sibling relation
/// `p(x) E(w_x) = E(w[1,n-1]) + 1 - Σ_{y≠x} p(y) E(ŵ_y)`, where
/// `w_y = w[1,n-1] y` and `ŵ_y` is its longest bifix.
pub fn sibling_relation_rhs(w: &Word, x: usize, d: &Distribution) -> Result<Rational> {
    if w.is_empty() {
        return Err(Error::WordTooShort { min: 1, len: 0 });
    }
    d.check_word(w)?;
    if x >= d.r() {
        return Err(Error::LetterOutOfRange {
            letter: x,
            r: d.r(),
        });
    }
    let stem = w.without_last();
    let mut rhs = expectation(&stem, d) + Rational::one();
    for y in (0..d.r()).filter(|&y| y != x) {
        let bifix = longest_bifix(&stem.extended(y))?;
        rhs -= d.p(y) * expectation(&bifix, d);
    }
    Ok(rhs)
}

/// `r^n` as an exact rational; used by the global identities.
pub(crate) fn power(r: usize, n: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n {
        acc *= rational::from_int(r as i64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_int, ratio};
    use crate::word::words_up_to;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::from(s.bytes().map(|b| (b - b'0') as usize).collect::<Vec<_>>())
    }

    fn fair() -> Distribution {
        Distribution::uniform(2).unwrap()
    }

    fn skewed() -> Distribution {
        Distribution::from_ratios(&[(1, 3), (2, 3)]).unwrap()
    }

    // Literal recursion E(w) = E(ŵ) + 1/p(w).
    fn recursive(w: &Word, d: &Distribution) -> Rational {
        if w.is_empty() {
            return Rational::zero();
        }
        recursive(&longest_bifix(w).unwrap(), d) + word_probability(w, d).recip()
    }

    #[test]
    fn probability_examples() {
        assert_eq!(word_probability(&Word::empty(), &fair()), from_int(1));
        assert_eq!(word_probability(&w("00"), &fair()), ratio(1, 4));
        let mut oracle = from_int(1);
        for _ in 0..1 {
            oracle *= ratio(1, 3);
        }
        for _ in 0..2 {
            oracle *= ratio(2, 3);
        }
        assert_eq!(word_probability(&w("011"), &skewed()), oracle);
        assert_eq!(oracle, ratio(4, 27));
    }

    #[test]
    fn expectation_examples() {
        let d = fair();
        assert_eq!(
            expected_waiting_time(&Word::empty(), &d).expectation,
            from_int(0)
        );
        assert_eq!(
            expected_waiting_time(&w("1"), &skewed()).expectation,
            ratio(3, 2)
        );
        let hh = expected_waiting_time(&w("00"), &d);
        assert_eq!(hh.expectation, from_int(6));
        let terms: Vec<_> = hh.chain.iter().map(|t| t.term.clone()).collect();
        assert_eq!(terms, vec![from_int(4), from_int(2)]);
        assert_eq!(hh.p_w, ratio(1, 4));
        assert_eq!(hh.decimal(), "6.00000000000");
        assert_eq!(hh.decimal_hint, 6.0);
        assert_eq!(expectation(&w("01"), &d), from_int(4));
        assert_eq!(expectation(&w("0110"), &d), from_int(18));
    }

    #[test]
    fn chain_sum_equals_recursion() {
        for d in [fair(), skewed()] {
            for word in words_up_to(2, 12) {
                assert_eq!(expectation(&word, &d), recursive(&word, &d), "{word}");
            }
        }
    }

    #[test]
    fn report_terms_sum_to_expectation() {
        let d = Distribution::from_ratios(&[(1, 2), (1, 3), (1, 6)]).unwrap();
        for word in words_up_to(3, 5) {
            let rep = expected_waiting_time(&word, &d);
            let sum: Rational = rep.chain.iter().map(|t| &t.term).sum();
            assert_eq!(sum, rep.expectation);
            assert_eq!(rep.p_w, word_probability(&word, &d));
        }
    }

    #[test]
    fn at_least_pattern_length() {
        let d = Distribution::from_ratios(&[(1, 2), (1, 3), (1, 6)]).unwrap();
        for word in words_up_to(3, 6) {
            assert!(expectation(&word, &d) >= from_int(word.len() as i64));
        }
    }

    #[test]
    fn conditional_examples() {
        let d = fair();
        assert_eq!(
            conditional_expected(&w("00"), &Word::empty(), &d).unwrap(),
            from_int(6)
        );
        assert_eq!(
            conditional_expected(&w("00"), &w("0"), &d).unwrap(),
            from_int(4)
        );
        let c = conditional(&w("01"), &w("011"), &d).unwrap();
        assert_eq!(c.value, from_int(-1));
        assert!(c.occurred);
        assert_eq!(c.state, 2);
        assert_eq!(
            conditional_expected(&w("01"), &w("01"), &d).unwrap(),
            from_int(0)
        );
        assert_eq!(
            conditional_expected(&Word::empty(), &w("0"), &d),
            Err(Error::WordTooShort { min: 1, len: 0 })
        );
    }

    #[test]
    fn prefix_decomposition_holds() {
        for d in [fair(), skewed()] {
            for word in words_up_to(2, 8).filter(|w| !w.is_empty()) {
                for k in 0..word.len() {
                    let head = word.prefix(k);
                    assert_eq!(
                        conditional_expected(&word, &head, &d).unwrap() + expectation(&head, &d),
                        expectation(&word, &d)
                    );
                }
            }
        }
    }

    #[test]
    fn sibling_examples() {
        let d = fair();
        assert_eq!(sibling_relation_rhs(&w("0"), 0, &d).unwrap(), from_int(1));
        assert_eq!(sibling_relation_rhs(&w("00"), 0, &d).unwrap(), from_int(3));
        assert_eq!(sibling_relation_rhs(&w("00"), 1, &d).unwrap(), from_int(2));
        assert!(sibling_relation_rhs(&Word::empty(), 0, &d).is_err());
        assert!(sibling_relation_rhs(&w("0"), 2, &d).is_err());
    }

    #[test]
    fn sibling_relation_holds() {
        let d = Distribution::from_ratios(&[(1, 2), (1, 3), (1, 6)]).unwrap();
        for word in words_up_to(3, 5).filter(|w| !w.is_empty()) {
            for x in 0..3 {
                let lhs = d.p(x) * expectation(&word.without_last().extended(x), &d);
                assert_eq!(
                    lhs,
                    sibling_relation_rhs(&word, x, &d).unwrap(),
                    "{word} x={x}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn relabeling_invariance(
            v in proptest::collection::vec(0usize..3, 0..10),
            perm_idx in 0usize..6,
        ) {
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let perm = perms[perm_idx];
            let d = Distribution::from_ratios(&[(1, 2), (1, 3), (1, 6)]).unwrap();
            let word = Word::from(v);
            prop_assert_eq!(
                expectation(&word, &d),
                expectation(&word.mapped(&perm), &d.permuted(&perm))
            );
        }
    }
}
