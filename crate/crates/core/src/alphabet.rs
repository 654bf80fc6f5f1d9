//! Letter alphabets and letter distributions.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::word::Word;

/// Display symbols for letters `0..r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySymbol);
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// `0`, `1`, ..., `r-1`.
    pub fn numeric(r: usize) -> Result<Self> {
        Self::new((0..r).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: usize) -> &str {
        &self.symbols[letter]
    }

    pub fn letter(&self, symbol: &str) -> Option<usize> {
        self.index.get(symbol).copied()
    }

    /// Parses a word written in display symbols.
    ///
    /// Whitespace or commas separate symbols when present. Otherwise the text
    /// is tokenized greedily, longest symbol first.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.contains(|c: char| c.is_whitespace() || c == ',') {
            let letters = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    self.letter(t).ok_or_else(|| Error::UnknownSymbol {
                        rest: t.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Word::from(letters));
        }
        let mut by_len: Vec<(usize, &str)> = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.as_str()))
            .collect();
        by_len.sort_by_key(|(_, s)| std::cmp::Reverse(s.len()));

        let mut rest = text;
        let mut letters = Vec::new();
        while !rest.is_empty() {
            let (letter, sym) = by_len
                .iter()
                .find(|(_, s)| rest.starts_with(s))
                .ok_or_else(|| Error::UnknownSymbol {
                    rest: rest.to_string(),
                })?;
            letters.push(*letter);
            rest = &rest[sym.len()..];
        }
        Ok(Word::from(letters))
    }

    /// Inverse of [`Alphabet::parse_word`]: symbols are concatenated when all
    /// are single characters and space-separated otherwise.
    pub fn format_word(&self, w: &Word) -> String {
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            " "
        };
        w.letters()
            .iter()
            .map(|&x| self.symbol(x))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A probability distribution on letters `0..r` with every mass strictly
/// positive and summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    probs: Vec<Rational>,
}

impl Distribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::AlphabetTooSmall(probs.len()));
        }
        for (letter, p) in probs.iter().enumerate() {
            if !rational::is_positive(p) {
                return Err(Error::NonPositiveProbability {
                    letter,
                    value: rational::to_fraction_string(p),
                });
            }
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::ProbabilitySum(rational::to_fraction_string(&total)));
        }
        Ok(Distribution { probs })
    }

    pub fn uniform(r: usize) -> Result<Self> {
        Self::new(vec![rational::ratio(1, r as i64); r])
    }

    /// Convenience for small integer ratios, e.g. `&[(1, 3), (2, 3)]`.
    pub fn from_ratios(ratios: &[(i64, i64)]) -> Result<Self> {
        Self::new(ratios.iter().map(|&(n, d)| rational::ratio(n, d)).collect())
    }

    /// Parses strings such as `"1/3"` or `"0.25"` exactly.
    pub fn parse<S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        let probs = texts
            .iter()
            .map(|t| rational::parse_rational(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(probs)
    }

    /// Number of letters `r`.
    pub fn r(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    /// Mass of `letter`. Panics if the letter is outside `0..r`.
    pub fn p(&self, letter: usize) -> &Rational {
        &self.probs[letter]
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&x| x >= self.r()) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                r: self.r(),
            }),
            None => Ok(()),
        }
    }

    /// Reindexes letters: the new letter `perm[x]` carries the mass of `x`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut probs = vec![Rational::zero(); self.r()];
        for (x, &y) in perm.iter().enumerate() {
            probs[y] = self.probs[x].clone();
        }
        Distribution { probs }
    }
}
