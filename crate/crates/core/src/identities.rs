//! Exhaustive checks of the identities satisfied by `E`:
//!
//! * F1: `Σ_y p(y) E(wy) = E(w) + 1 + (r-1)/p(w)`
//! * F2: `S_n = Σ_{|w|=n} p(w) E(w) = r^n + n - 1`
//! * the recurrence `S_{n+1} = S_n + 1 + (r-1) r^n`
//! * prefix decomposition `E(w) = E(w|w_1) + E(w_1)` for `w = w_1 w_2`
//! * letter expansion `E(w) = E(w[1,n-1]) + 1 + Σ_{y≠w(n)} p(y) E(w | w[1,n-1]y)`
//! * the sibling relation (see [`sibling_relation_rhs`])
//! * the three properties of the maximal extension bifix
//!   (see [`max_bifix_extension`])
//!
//! Every comparison is between exact rationals. Conditional expectations in
//! the prefix and letter checks come from the hitting-time oracle, so those
//! two checks compare the recursion against the absorbing chain.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::alphabet::Distribution;
use crate::automaton::PatternAutomaton;
use crate::error::{Error, Result};
use crate::oracles::hitting_times;
use crate::rational::{self, Rational};
use crate::waiting_time::{expectation, power, sibling_relation_rhs, word_probability};
use crate::word::{
    extension_bifix_len, longest_bifix, max_bifix_extension, words_of_length, words_up_to, Word,
};

/// Default cap on the number of words a single enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    F1,
    F2,
    SRecurrence,
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::F1,
        Identity::F2,
        Identity::SRecurrence,
        Identity::Lemma1,
        Identity::Lemma2,
        Identity::Lemma3,
        Identity::Lemma4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::F1 => "F1",
            Identity::F2 => "F2",
            Identity::SRecurrence => "S_RECURRENCE",
            Identity::Lemma1 => "LEMMA1",
            Identity::Lemma2 => "LEMMA2",
            Identity::Lemma3 => "LEMMA3",
            Identity::Lemma4 => "LEMMA4",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a single check was instantiated with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Word(Word),
    Length(usize),
    /// `w` and a letter `x`.
    WordLetter(Word, usize),
    /// `w` split after its first `head` letters.
    Split(Word, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheckResult {
    pub identity: Identity,
    /// Sub-property label, e.g. `"ii"` for the maximal-extension checks.
    pub clause: Option<&'static str>,
    pub subject: Subject,
    pub distribution: Distribution,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub counterexample: Option<Word>,
    /// Words enumerated to form the sums, for F2 and the recurrence.
    pub words_visited: Option<u128>,
}

impl IdentityCheckResult {
    fn new(
        identity: Identity,
        subject: Subject,
        distribution: &Distribution,
        lhs: Rational,
        rhs: Rational,
        witness: impl FnOnce() -> Word,
    ) -> Self {
        let holds = lhs == rhs;
        IdentityCheckResult {
            identity,
            clause: None,
            subject,
            distribution: distribution.clone(),
            lhs,
            rhs,
            holds,
            counterexample: if holds { None } else { Some(witness()) },
            words_visited: None,
        }
    }

    pub fn r(&self) -> usize {
        self.distribution.r()
    }
}

/// Supplies `E(w)` to the checker. [`Engine`] is the real implementation;
/// tests plug in deliberately broken sources to see failures reported.
pub trait ExpectationSource: Sync {
    fn distribution(&self) -> &Distribution;

    fn expectation(&self, w: &Word) -> Rational;

    /// `E(w[1,n-1]) + 1 - Σ_{y≠x} p(y) E(ŵ_y)` for `|w| >= 1`.
    fn sibling_rhs(&self, w: &Word, x: usize) -> Rational {
        let d = self.distribution();
        let stem = w.without_last();
        let mut rhs = self.expectation(&stem) + Rational::one();
        for y in (0..d.r()).filter(|&y| y != x) {
            let bifix = longest_bifix(&stem.extended(y)).expect("nonempty");
            rhs -= d.p(y) * self.expectation(&bifix);
        }
        rhs
    }

    /// `Σ_{|w|=n} p(w) E(w)` and the number of words summed over.
    fn weighted_sum(&self, n: usize) -> (Rational, u128) {
        let d = self.distribution();
        let mut count = 0u128;
        let mut sum = Rational::zero();
        for w in words_of_length(d.r(), n) {
            sum += word_probability(&w, d) * self.expectation(&w);
            count += 1;
        }
        (sum, count)
    }
}

/// The border-chain evaluation from [`crate::waiting_time`].
#[derive(Debug, Clone)]
pub struct Engine {
    d: Distribution,
}

impl Engine {
    pub fn new(d: Distribution) -> Self {
        Engine { d }
    }
}

impl ExpectationSource for Engine {
    fn distribution(&self) -> &Distribution {
        &self.d
    }

    fn expectation(&self, w: &Word) -> Rational {
        expectation(w, &self.d)
    }

    fn sibling_rhs(&self, w: &Word, x: usize) -> Rational {
        sibling_relation_rhs(w, x, &self.d).expect("checked by caller")
    }

    /// Walks the prefix tree of `X^n` depth-first, extending the failure
    /// function, `p` and `E` one letter at a time, so each tree edge costs
    /// one bifix extension instead of a fresh chain evaluation.
    fn weighted_sum(&self, n: usize) -> (Rational, u128) {
        if n == 0 {
            return (Rational::zero(), 1);
        }
        (0..self.d.r())
            .into_par_iter()
            .map(|first| {
                let mut walk = PrefixWalk::new(&self.d, n);
                walk.push(first);
                walk.descend()
            })
            .reduce(|| (Rational::zero(), 0), |a, b| (a.0 + b.0, a.1 + b.1))
    }
}

struct PrefixWalk<'d> {
    d: &'d Distribution,
    target: usize,
    letters: Vec<usize>,
    fail: Vec<usize>,
    // index k holds the value for the prefix of length k
    prob: Vec<Rational>,
    expect: Vec<Rational>,
}

impl<'d> PrefixWalk<'d> {
    fn new(d: &'d Distribution, target: usize) -> Self {
        PrefixWalk {
            d,
            target,
            letters: Vec::with_capacity(target),
            fail: Vec::with_capacity(target),
            prob: vec![Rational::one()],
            expect: vec![Rational::zero()],
        }
    }

    fn push(&mut self, y: usize) {
        let border = if self.letters.is_empty() {
            0
        } else {
            extension_bifix_len(&self.letters, &self.fail, y)
        };
        self.letters.push(y);
        self.fail.push(border);
        let p = self.prob.last().unwrap() * self.d.p(y);
        let e = &self.expect[border] + p.recip();
        self.prob.push(p);
        self.expect.push(e);
    }

    fn pop(&mut self) {
        self.letters.pop();
        self.fail.pop();
        self.prob.pop();
        self.expect.pop();
    }

    fn descend(&mut self) -> (Rational, u128) {
        let depth = self.letters.len();
        if depth == self.target {
            return (&self.prob[depth] * &self.expect[depth], 1);
        }
        let mut acc = (Rational::zero(), 0);
        for y in 0..self.d.r() {
            self.push(y);
            let (s, c) = self.descend();
            acc.0 += s;
            acc.1 += c;
            self.pop();
        }
        acc
    }
}

pub struct IdentityChecker<S> {
    source: S,
    budget: u128,
}

impl IdentityChecker<Engine> {
    pub fn for_distribution(d: &Distribution) -> Self {
        IdentityChecker::new(Engine::new(d.clone()))
    }
}

impl<S: ExpectationSource> IdentityChecker<S> {
    pub fn new(source: S) -> Self {
        IdentityChecker {
            source,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn source(&self) -> &S {
        &self.source
    }

    fn d(&self) -> &Distribution {
        self.source.distribution()
    }

    fn guard(&self, n: usize) -> Result<()> {
        let words = (self.d().r() as u128)
            .checked_pow(n as u32)
            .unwrap_or(u128::MAX);
        if words > self.budget {
            Err(Error::BudgetExceeded {
                words,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_f1(&self, w: &Word) -> Result<IdentityCheckResult> {
        let d = self.d();
        d.check_word(w)?;
        let lhs: Rational = (0..d.r())
            .map(|y| d.p(y) * self.source.expectation(&w.extended(y)))
            .sum();
        let r_minus_1 = rational::from_int(d.r() as i64 - 1);
        let rhs = self.source.expectation(w) + Rational::one() + r_minus_1 / word_probability(w, d);
        Ok(IdentityCheckResult::new(
            Identity::F1,
            Subject::Word(w.clone()),
            d,
            lhs,
            rhs,
            || w.clone(),
        ))
    }

    /// F1 for every word of length `0..=max_len`.
    pub fn f1_sweep(&self, max_len: usize) -> Result<Vec<IdentityCheckResult>> {
        self.guard(max_len + 1)?;
        words_up_to(self.d().r(), max_len)
            .map(|w| self.check_f1(&w))
            .collect()
    }

    /// `Σ_{|w|=n} p(w) E(w)`, refusing enumerations over budget.
    pub fn weighted_sum(&self, n: usize) -> Result<(Rational, u128)> {
        self.guard(n)?;
        Ok(self.source.weighted_sum(n))
    }

    pub fn check_f2(&self, n: usize) -> Result<IdentityCheckResult> {
        let (lhs, visited) = self.weighted_sum(n)?;
        let r = self.d().r();
        let rhs = power(r, n) + rational::from_int(n as i64 - 1);
        let mut result =
            IdentityCheckResult::new(Identity::F2, Subject::Length(n), self.d(), lhs, rhs, || {
                self.locate_f1_failure(n)
            });
        result.words_visited = Some(visited);
        Ok(result)
    }

    pub fn check_s_recurrence(&self, n: usize) -> Result<IdentityCheckResult> {
        self.guard(n + 1)?;
        let (s_n, c_n) = self.weighted_sum(n)?;
        let (s_next, c_next) = self.weighted_sum(n + 1)?;
        let r = self.d().r();
        let rhs = Rational::one() + rational::from_int(r as i64 - 1) * power(r, n);
        let mut result = IdentityCheckResult::new(
            Identity::SRecurrence,
            Subject::Length(n),
            self.d(),
            s_next - s_n,
            rhs,
            || self.locate_f1_failure(n + 1),
        );
        result.words_visited = Some(c_n + c_next);
        Ok(result)
    }

    // S_n follows from F1 over words of length n-1, so a broken sum points
    // at one of those; fall back to ∅ when F1 holds throughout.
    fn locate_f1_failure(&self, n: usize) -> Word {
        if n == 0 {
            return Word::empty();
        }
        words_of_length(self.d().r(), n - 1)
            .find(|w| self.check_f1(w).map(|c| !c.holds).unwrap_or(false))
            .unwrap_or_default()
    }

    /// `E(w|w[1,k]) + E(w[1,k]) = E(w)` for every `k < |w|`.
    pub fn check_prefix_splits(&self, w: &Word) -> Result<Vec<IdentityCheckResult>> {
        let d = self.d();
        let t = hitting_times(w, d)?;
        let whole = self.source.expectation(w);
        Ok((0..w.len())
            .map(|k| {
                // reading w[1,k] leaves the automaton in state k
                let lhs = &t[k] + self.source.expectation(&w.prefix(k));
                IdentityCheckResult::new(
                    Identity::Lemma1,
                    Subject::Split(w.clone(), k),
                    d,
                    lhs,
                    whole.clone(),
                    || w.clone(),
                )
            })
            .collect())
    }

    pub fn check_letter_expansion(&self, w: &Word) -> Result<IdentityCheckResult> {
        let d = self.d();
        let automaton = PatternAutomaton::new(w, d.r())?;
        let t = hitting_times(w, d)?;
        let n = w.len();
        let last = w.letters()[n - 1];
        let stem = w.without_last();
        let mut rhs = self.source.expectation(&stem) + Rational::one();
        for y in (0..d.r()).filter(|&y| y != last) {
            rhs += d.p(y) * &t[automaton.next(n - 1, y)];
        }
        Ok(IdentityCheckResult::new(
            Identity::Lemma2,
            Subject::Word(w.clone()),
            d,
            self.source.expectation(w),
            rhs,
            || w.clone(),
        ))
    }

    /// `p(x) E(w[1,n-1]x) = sibling_rhs(w, x)`.
    pub fn check_sibling(&self, w: &Word, x: usize) -> Result<IdentityCheckResult> {
        let d = self.d();
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
        let w_x = w.without_last().extended(x);
        let lhs = d.p(x) * self.source.expectation(&w_x);
        let rhs = self.source.sibling_rhs(w, x);
        Ok(IdentityCheckResult::new(
            Identity::Lemma3,
            Subject::WordLetter(w.clone(), x),
            d,
            lhs,
            rhs,
            || w_x.clone(),
        ))
    }

    /// The three properties of the maximal extension bifix, as length
    /// comparisons: (i) `min(n_x, 1) = 1`; (ii) `|longest_bifix(w[1,n-1])| =
    /// n_x - 1`; (iii) for each `y ≠ x`, the longest bifixes of
    /// `w[1,n-1]y` and `w[1,n_x-1]y` have equal length. All words compared
    /// are prefixes of `w`, so equal lengths mean equal words.
    pub fn check_max_extension(&self, w: &Word) -> Result<Vec<IdentityCheckResult>> {
        let d = self.d();
        d.check_word(w)?;
        let r = d.r();
        let (x, n_x) = max_bifix_extension(w, r)?;
        let len = |k: usize| rational::from_int(k as i64);
        let mut out = Vec::with_capacity(r + 1);
        let mut push = |clause, lhs: Rational, rhs: Rational| {
            let mut c = IdentityCheckResult::new(
                Identity::Lemma4,
                Subject::Word(w.clone()),
                d,
                lhs,
                rhs,
                || w.clone(),
            );
            c.clause = Some(clause);
            out.push(c);
        };
        push("i", len(n_x.min(1)), len(1));
        if n_x == 0 {
            return Ok(out);
        }
        let stem = w.without_last();
        push("ii", len(longest_bifix(&stem)?.len()), len(n_x - 1));
        let short = w.prefix(n_x - 1);
        for y in (0..r).filter(|&y| y != x) {
            push(
                "iii",
                len(longest_bifix(&stem.extended(y))?.len()),
                len(longest_bifix(&short.extended(y))?.len()),
            );
        }
        Ok(out)
    }

    /// Every instance of the prefix, letter, sibling and maximal-extension
    /// checks for words up to `max_len`, passing or not.
    pub fn lemma_checks(&self, max_len: usize) -> Result<Vec<IdentityCheckResult>> {
        self.guard(max_len)?;
        let r = self.d().r();
        let words: Vec<Word> = words_up_to(r, max_len).filter(|w| !w.is_empty()).collect();
        let per_word: Vec<Vec<IdentityCheckResult>> = words
            .par_iter()
            .map(|w| -> Result<Vec<IdentityCheckResult>> {
                let mut out = self.check_prefix_splits(w)?;
                out.push(self.check_letter_expansion(w)?);
                for x in 0..r {
                    out.push(self.check_sibling(w, x)?);
                }
                if w.len() >= 2 {
                    out.extend(self.check_max_extension(w)?);
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        Ok(per_word.into_iter().flatten().collect())
    }

    /// Failing instances from [`IdentityChecker::lemma_checks`].
    pub fn sweep_lemma_checks(&self, max_len: usize) -> Result<Vec<IdentityCheckResult>> {
        Ok(self
            .lemma_checks(max_len)?
            .into_iter()
            .filter(|c| !c.holds)
            .collect())
    }
}

pub fn check_f1(w: &Word, d: &Distribution) -> Result<IdentityCheckResult> {
    IdentityChecker::for_distribution(d).check_f1(w)
}

pub fn check_f2(n: usize, d: &Distribution) -> Result<IdentityCheckResult> {
    IdentityChecker::for_distribution(d).check_f2(n)
}

pub fn check_s_recurrence(n: usize, d: &Distribution) -> Result<IdentityCheckResult> {
    IdentityChecker::for_distribution(d).check_s_recurrence(n)
}

pub fn sweep_lemma_checks(max_len: usize, d: &Distribution) -> Result<Vec<IdentityCheckResult>> {
    IdentityChecker::for_distribution(d).sweep_lemma_checks(max_len)
}
