//! Failure automaton for a single pattern.
//!
//! State `i` in `0..=n` is the length of the longest suffix of the consumed
//! stream that is a prefix of the pattern. State `n` is absorbing, so the
//! first step that lands on `n` is the waiting time of the pattern.

use crate::error::{Error, Result};
use crate::word::{failure_function, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternAutomaton {
    pattern: Word,
    r: usize,
    // row-major (n+1) x r
    transition: Vec<usize>,
    failure: Vec<usize>,
}

impl PatternAutomaton {
    pub fn new(pattern: &Word, r: usize) -> Result<Self> {
        let n = pattern.len();
        if n == 0 {
            return Err(Error::WordTooShort { min: 1, len: 0 });
        }
        if let Some(&letter) = pattern.letters().iter().find(|&&x| x >= r) {
            return Err(Error::LetterOutOfRange { letter, r });
        }
        let w = pattern.letters();
        let failure = failure_function(w);
        let mut transition = vec![0; (n + 1) * r];
        transition[w[0]] = 1;
        for i in 1..n {
            let fallback = failure[i - 1];
            for y in 0..r {
                transition[i * r + y] = if y == w[i] {
                    i + 1
                } else {
                    transition[fallback * r + y]
                };
            }
        }
        for y in 0..r {
            transition[n * r + y] = n;
        }
        Ok(PatternAutomaton {
            pattern: pattern.clone(),
            r,
            transition,
            failure,
        })
    }

    pub fn pattern(&self) -> &Word {
        &self.pattern
    }

    /// Index of the absorbing state, `|pattern|`.
    pub fn accepting(&self) -> usize {
        self.pattern.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.r
    }

    pub fn failure(&self) -> &[usize] {
        &self.failure
    }

    #[inline]
    pub fn next(&self, state: usize, letter: usize) -> usize {
        self.transition[state * self.r + letter]
    }

    /// State after consuming `letters` from `state`.
    pub fn run(&self, state: usize, letters: &[usize]) -> usize {
        letters.iter().fold(state, |s, &y| self.next(s, y))
    }

    /// First step (1-based) at which the automaton absorbs while reading
    /// `stream` from state 0, i.e. the end of the first occurrence.
    pub fn first_hit(&self, stream: &[usize]) -> Option<usize> {
        let n = self.accepting();
        let mut state = 0;
        for (i, &y) in stream.iter().enumerate() {
            state = self.next(state, y);
            if state == n {
                return Some(i + 1);
            }
        }
        None
    }
}

/// Convenience wrapper for [`PatternAutomaton::new`].
pub fn build_automaton(w: &Word, r: usize) -> Result<PatternAutomaton> {
    PatternAutomaton::new(w, r)
}
