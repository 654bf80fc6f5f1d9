//! Serializable output records. Field names here are the JSON contract
//! described by `docs/output.schema.json`.

use bifix_core::rational::{to_decimal_string, to_fraction_string};
use bifix_core::waiting_time::DECIMAL_DIGITS;
use bifix_core::Rational;
use serde::Serialize;

pub fn exact(q: &Rational) -> String {
    to_fraction_string(q)
}

pub fn decimal(q: &Rational) -> String {
    to_decimal_string(q, DECIMAL_DIGITS)
}

#[derive(Debug, Serialize)]
pub struct Distribution {
    pub alphabet: Vec<String>,
    pub probabilities: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ExpectOutput {
    pub command: &'static str,
    pub distribution: Distribution,
    pub reports: Vec<ExpectReport>,
}

#[derive(Debug, Serialize)]
pub struct ExpectReport {
    pub pattern: String,
    pub length: usize,
    pub p_w: String,
    pub expectation: String,
    pub decimal: String,
    pub chain: Vec<ChainEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct ChainEntry {
    pub word: String,
    pub term: String,
}

#[derive(Debug, Serialize)]
pub struct ConditionalOutput {
    pub command: &'static str,
    pub distribution: Distribution,
    pub pattern: String,
    pub given: String,
    pub value: String,
    pub decimal: String,
    pub state: usize,
    pub occurred: bool,
}

#[derive(Debug, Serialize)]
pub struct SimulateOutput {
    pub command: &'static str,
    pub distribution: Distribution,
    pub pattern: String,
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
    pub seed: u64,
    pub max_steps: u64,
    pub truncated_count: u64,
    pub predicted: String,
    pub predicted_decimal: String,
}

#[derive(Debug, Serialize)]
pub struct IdentitiesOutput {
    pub command: &'static str,
    pub distribution: Distribution,
    pub max_len: usize,
    pub n: usize,
    pub all_passed: bool,
    pub identities: Vec<IdentitySummary>,
    pub f2: SumCheck,
    pub s_recurrence: SumCheck,
}

#[derive(Debug, Serialize)]
pub struct IdentitySummary {
    pub identity: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub passed: bool,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Serialize)]
pub struct Counterexample {
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<&'static str>,
    pub lhs: String,
    pub rhs: String,
    pub word: String,
}

#[derive(Debug, Serialize)]
pub struct SumCheck {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub words_visited: u128,
}
