use num_traits::{One, Zero};

use crate::alphabet::Distribution;
use crate::automaton::PatternAutomaton;
use crate::error::Result;
use crate::oracles::LinearSystem;
use crate::rational::Rational;
use crate::word::Word;

/// `(I - Q) t = 1` over the transient states `0..n` of the automaton,
/// where `Q` is the transient block of the letter-driven transition matrix.
pub fn absorption_system(automaton: &PatternAutomaton, d: &Distribution) -> LinearSystem {
    let n = automaton.accepting();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] += Rational::one();
        for y in 0..d.r() {
            let j = automaton.next(i, y);
            if j < n {
                row[j] -= d.p(y);
            }
        }
    }
    LinearSystem::new(matrix, vec![Rational::one(); n])
}

/// Expected steps to absorption from every state `0..=|w|`; the last entry
/// is 0.
pub fn hitting_times(w: &Word, d: &Distribution) -> Result<Vec<Rational>> {
    let automaton = PatternAutomaton::new(w, d.r())?;
    let mut t = absorption_system(&automaton, d).solve()?;
    t.push(Rational::zero());
    Ok(t)
}

/// `E(w)` as the hitting time of the absorbing state from state 0.
pub fn hitting_time_oracle(w: &Word, d: &Distribution) -> Result<Rational> {
    hitting_times(w, d).map(|t| t[0].clone())
}
