//! Words over `{0, .., r-1}` and their borders.
//!
//! A bifix (border) of `w` is a word `v != w` that is both a prefix and a
//! suffix of `w`. The empty word is a bifix of every nonempty word, and the
//! empty word itself has none.

use std::fmt;

use crate::error::{Error, Result};

/// A finite word; letters are indices into the alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The first `k` letters, `w[1, k]`.
    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    /// `self` followed by `letter`.
    pub fn extended(&self, letter: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(letter);
        Word(letters)
    }

    /// `self` without its last letter. Panics on the empty word.
    pub fn without_last(&self) -> Word {
        self.prefix(self.len() - 1)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word([self.0.as_slice(), other.0.as_slice()].concat())
    }

    /// Relabels letters through `perm`.
    pub fn mapped(&self, perm: &[usize]) -> Word {
        Word(self.0.iter().map(|&x| perm[x]).collect())
    }

    /// End position (1-based) of the first occurrence of `pattern` in
    /// `self`, if any. The empty pattern occurs at 0.
    pub fn first_occurrence_end(&self, pattern: &Word) -> Option<usize> {
        if pattern.is_empty() {
            return Some(0);
        }
        self.0
            .windows(pattern.len())
            .position(|win| win == pattern.letters())
            .map(|start| start + pattern.len())
    }

    fn require_len(&self, min: usize) -> Result<()> {
        if self.len() < min {
            Err(Error::WordTooShort {
                min,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl From<&[usize]> for Word {
    fn from(letters: &[usize]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        let sep = if self.0.iter().all(|&x| x < 10) {
            ""
        } else {
            ","
        };
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

/// Failure function: `fail[i]` is the length of the longest bifix of
/// `w[1, i+1]`.
pub fn failure_function(w: &[usize]) -> Vec<usize> {
    let mut fail = vec![0; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[k] != w[i] {
            k = fail[k - 1];
        }
        if w[k] == w[i] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

pub fn longest_bifix(w: &Word) -> Result<Word> {
    w.require_len(1)?;
    let fail = failure_function(w.letters());
    Ok(w.prefix(fail[w.len() - 1]))
}

/// Lengths of `w`, its longest bifix, the longest bifix of that, and so on
/// down to 0.
pub fn border_lengths(w: &Word) -> Vec<usize> {
    let fail = failure_function(w.letters());
    let mut lengths = vec![w.len()];
    let mut k = w.len();
    while k > 0 {
        k = fail[k - 1];
        lengths.push(k);
    }
    lengths
}

/// `[w, ŵ, ŵ̂, ..., ∅]`; `[∅]` for the empty word.
pub fn border_chain(w: &Word) -> Vec<Word> {
    border_lengths(w).into_iter().map(|k| w.prefix(k)).collect()
}

/// For `|w| = n >= 2`, the letter `x` maximizing the longest-bifix length
/// `n_y` of `w[1, n-1] y` over all letters `y < r`, returned with that
/// length. Ties go to the smallest letter.
pub fn max_bifix_extension(w: &Word, r: usize) -> Result<(usize, usize)> {
    w.require_len(2)?;
    let stem = &w.letters()[..w.len() - 1];
    let fail = failure_function(stem);
    let mut best = (0, 0);
    for y in 0..r {
        let n_y = extension_bifix_len(stem, &fail, y);
        if y == 0 || n_y > best.1 {
            best = (y, n_y);
        }
    }
    Ok(best)
}

/// Longest-bifix length of `stem · y`, given the failure function of a
/// nonempty `stem`.
pub(crate) fn extension_bifix_len(stem: &[usize], fail: &[usize], y: usize) -> usize {
    let mut k = fail[stem.len() - 1];
    loop {
        if stem[k] == y {
            return k + 1;
        }
        if k == 0 {
            return 0;
        }
        k = fail[k - 1];
    }
}

/// Every word of length `n` over `r` letters, in lexicographic order.
pub fn words_of_length(r: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = (r as u128)
        .checked_pow(n as u32)
        .expect("word count overflows u128");
    let mut current = vec![0usize; n];
    let mut produced = 0u128;
    std::iter::from_fn(move || {
        if produced == total {
            return None;
        }
        let out = Word(current.clone());
        produced += 1;
        for slot in current.iter_mut().rev() {
            *slot += 1;
            if *slot < r {
                break;
            }
            *slot = 0;
        }
        Some(out)
    })
}

/// Every word of length `0..=max_len`, shortest first.
pub fn words_up_to(r: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |n| words_of_length(r, n))
}
