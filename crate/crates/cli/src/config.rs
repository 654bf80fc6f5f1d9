//! Run configuration: a JSON document naming the alphabet and its letter
//! probabilities.
//!
//! ```json
//! {"alphabet": ["H", "T"], "probabilities": ["1/2", "0.5"]}
//! ```

use std::io::Read;
use std::path::Path;

use bifix_core::{Alphabet, Distribution, Error as CoreError, Word};
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    alphabet: Vec<String>,
    probabilities: Vec<Value>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alphabet: Alphabet,
    pub distribution: Distribution,
}

impl RunConfig {
    /// Reads from `path`, or stdin when `path` is `-`.
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = if path == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Config(format!("reading stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(Path::new(path))
                .map_err(|e| CliError::Config(format!("reading {path}: {e}")))?
        };
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("invalid config: {e}")))?;
        let alphabet = Alphabet::new(raw.alphabet.iter().cloned())?;
        if raw.probabilities.len() != alphabet.len() {
            return Err(CoreError::ProbabilityCount {
                expected: alphabet.len(),
                got: raw.probabilities.len(),
            }
            .into());
        }
        let texts = raw
            .probabilities
            .iter()
            .map(|v| match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(CliError::Config(format!(
                    "probability must be a string or number, got {other}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let distribution = Distribution::parse(&texts)?;
        Ok(RunConfig {
            alphabet,
            distribution,
        })
    }

    pub fn word(&self, text: &str) -> Result<Word, CliError> {
        Ok(self.alphabet.parse_word(text)?)
    }

    pub fn format(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }
}
