//! Verification routes that do not go through the border recursion: an
//! exact absorbing-chain solve over the pattern automaton, and a seeded
//! Monte Carlo simulation.

mod hitting;
mod linear;
mod monte_carlo;

pub use hitting::{absorption_system, hitting_time_oracle, hitting_times};
pub use linear::LinearSystem;
pub use monte_carlo::{
    default_max_steps, monte_carlo, LetterSampler, McEstimate, DEFAULT_MAX_STEPS,
};
