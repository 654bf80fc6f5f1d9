//! Seeded Monte Carlo estimate of `E(w)`.
//!
//! Trial `i` draws letters from ChaCha8 keyed by `seed` (expanded with
//! `SeedableRng::seed_from_u64`) on stream `i`. Each draw is a uniform
//! `u64` read as `u / 2^64` and mapped to a letter by exact comparison with
//! the cumulative distribution, half-open on the right. Steps are summed as
//! integers, so the estimate does not depend on how trials are scheduled
//! across threads.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::alphabet::Distribution;
use crate::automaton::PatternAutomaton;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::word::Word;

/// Step cap used when no expectation is available.
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`; 0 for a single trial.
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    /// Trials that hit `max_steps` without absorbing. Each contributes
    /// `max_steps` to the mean.
    pub truncated_count: u64,
}

/// `1000 · ceil(E(w))` when the expectation is known, else
/// [`DEFAULT_MAX_STEPS`].
pub fn default_max_steps(expectation: Option<&Rational>) -> u64 {
    expectation
        .and_then(|e| e.ceil().to_integer().to_u64())
        .map(|c| c.max(1).saturating_mul(1000))
        .unwrap_or(DEFAULT_MAX_STEPS)
}

/// Maps uniform `u64` draws to letters.
#[derive(Debug, Clone)]
pub struct LetterSampler {
    // thresholds[k] = ceil(P(letter <= k) · 2^64); u < thresholds[k] iff
    // u / 2^64 < P(letter <= k)
    thresholds: Vec<u128>,
}

impl LetterSampler {
    pub fn new(d: &Distribution) -> Self {
        let scale = BigInt::from(1u128 << 64);
        let mut cumulative = Rational::zero();
        let thresholds = d
            .probs()
            .iter()
            .map(|p| {
                cumulative += p;
                let scaled = cumulative.numer() * &scale;
                let (q, rem) = scaled.div_rem(cumulative.denom());
                let ceil = if rem.is_zero() { q } else { q + 1u32 };
                ceil.to_u128().expect("threshold fits in 65 bits")
            })
            .collect();
        LetterSampler { thresholds }
    }

    #[inline]
    pub fn letter(&self, draw: u64) -> usize {
        let u = draw as u128;
        self.thresholds
            .iter()
            .position(|&t| u < t)
            .expect("last threshold is 2^64")
    }
}

pub fn monte_carlo(
    w: &Word,
    d: &Distribution,
    trials: u64,
    seed: u64,
    max_steps: u64,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let automaton = PatternAutomaton::new(w, d.r())?;
    if max_steps < w.len() as u64 {
        return Err(Error::MaxStepsTooSmall {
            max_steps,
            len: w.len(),
        });
    }
    let sampler = LetterSampler::new(d);

    let run_trial = |trial: u64| -> (u64, bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let target = automaton.accepting();
        let mut state = 0;
        for step in 1..=max_steps {
            state = automaton.next(state, sampler.letter(rng.next_u64()));
            if state == target {
                return (step, false);
            }
        }
        (max_steps, true)
    };

    let (sum, sum_sq, truncated) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let (steps, cut) = run_trial(i);
            let s = steps as u128;
            (s, s * s, cut as u64)
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));

    let n = BigInt::from(trials);
    let sum = BigInt::from(sum);
    let mean = rational::to_f64(&Rational::new(sum.clone(), n.clone()));
    let std_error = if trials > 1 {
        // s² / n = (n Σx² - (Σx)²) / (n² (n - 1))
        let num = &n * BigInt::from(sum_sq) - &sum * &sum;
        let den = &n * &n * (&n - 1u32);
        rational::to_f64(&Rational::new(num, den)).sqrt()
    } else {
        0.0
    };
    Ok(McEstimate {
        mean,
        std_error,
        trials,
        seed,
        truncated_count: truncated,
    })
}
