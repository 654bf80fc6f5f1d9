//! Subcommand implementations. Each appends its stdout text to `out`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bifix_core::identities::{
    Engine, ExpectationSource, Identity, IdentityCheckResult, IdentityChecker, Subject,
};
use bifix_core::oracles::default_max_steps;
use bifix_core::{
    conditional as conditional_wait, expected_waiting_time, hitting_time_oracle, monte_carlo,
    Distribution, Rational, Word,
};
use num_traits::Zero;
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{self, decimal, exact};
use crate::{CliError, ConditionalArgs, ExpectArgs, IdentitiesArgs, SimulateArgs};

// Counterexamples listed per identity in the output.
const MAX_LISTED: usize = 10;

fn distribution(config: &RunConfig) -> output::Distribution {
    output::Distribution {
        alphabet: config.alphabet.symbols().to_vec(),
        probabilities: config.distribution.probs().iter().map(exact).collect(),
    }
}

fn write_json<T: Serialize>(out: &mut String, value: &T) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("serializable output")
    );
}

fn shown(config: &RunConfig, w: &Word) -> String {
    if w.is_empty() {
        "∅".to_string()
    } else {
        config.format(w)
    }
}

pub fn expect(
    config: &RunConfig,
    args: &ExpectArgs,
    json: bool,
    out: &mut String,
) -> Result<(), CliError> {
    expect_with_oracle(config, args, json, out, hitting_time_oracle)
}

/// [`expect`] with the `--verify` cross-check routed through `oracle`.
pub fn expect_with_oracle(
    config: &RunConfig,
    args: &ExpectArgs,
    json: bool,
    out: &mut String,
    oracle: impl Fn(&Word, &Distribution) -> bifix_core::Result<Rational>,
) -> Result<(), CliError> {
    let d = &config.distribution;
    let mut reports = Vec::with_capacity(args.patterns.len());
    let mut mismatch = None;
    for text in &args.patterns {
        let w = config.word(text)?;
        let report = expected_waiting_time(&w, d);
        let oracle = if args.verify {
            Some(if w.is_empty() {
                Rational::zero()
            } else {
                oracle(&w, d)?
            })
        } else {
            None
        };
        let agrees = oracle.as_ref().map(|o| *o == report.expectation);
        if agrees == Some(false) && mismatch.is_none() {
            mismatch = Some(config.format(&w));
        }
        reports.push(output::ExpectReport {
            pattern: config.format(&w),
            length: w.len(),
            p_w: exact(&report.p_w),
            expectation: exact(&report.expectation),
            decimal: report.decimal(),
            chain: report
                .chain
                .iter()
                .map(|t| output::ChainEntry {
                    word: config.format(&t.word),
                    term: exact(&t.term),
                })
                .collect(),
            oracle: oracle.as_ref().map(exact),
            agrees,
        });
    }

    if json {
        write_json(
            out,
            &output::ExpectOutput {
                command: "expect",
                distribution: distribution(config),
                reports,
            },
        );
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                let _ = writeln!(out);
            }
            let pattern = if r.pattern.is_empty() {
                "∅"
            } else {
                &r.pattern
            };
            let _ = writeln!(out, "pattern      {pattern}");
            let _ = writeln!(out, "p(w)         {}", r.p_w);
            let _ = writeln!(out, "E(w)         {}  ~ {}", r.expectation, r.decimal);
            let mut chain: Vec<&str> = r.chain.iter().map(|c| c.word.as_str()).collect();
            chain.push("∅");
            let _ = writeln!(out, "border chain {}", chain.join(" > "));
            let terms: Vec<&str> = r.chain.iter().map(|c| c.term.as_str()).collect();
            if !terms.is_empty() {
                let _ = writeln!(out, "terms        {}", terms.join(" + "));
            }
            if let (Some(o), Some(a)) = (&r.oracle, r.agrees) {
                let _ = writeln!(
                    out,
                    "oracle       {o}  {}",
                    if a { "agrees" } else { "DISAGREES" }
                );
            }
        }
    }
    match mismatch {
        Some(w) => Err(CliError::VerifyMismatch(w)),
        None => Ok(()),
    }
}

pub fn conditional(
    config: &RunConfig,
    args: &ConditionalArgs,
    json: bool,
    out: &mut String,
) -> Result<(), CliError> {
    let w = config.word(&args.pattern)?;
    let given = config.word(&args.given)?;
    let c = conditional_wait(&w, &given, &config.distribution)?;
    let record = output::ConditionalOutput {
        command: "conditional",
        distribution: distribution(config),
        pattern: config.format(&w),
        given: config.format(&given),
        value: exact(&c.value),
        decimal: decimal(&c.value),
        state: c.state,
        occurred: c.occurred,
    };
    if json {
        write_json(out, &record);
    } else {
        let _ = writeln!(out, "pattern   {}", shown(config, &w));
        let _ = writeln!(out, "given     {}", shown(config, &given));
        let _ = writeln!(out, "E(w|w')   {}  ~ {}", record.value, record.decimal);
        let _ = writeln!(out, "state     {}", record.state);
        if record.occurred {
            let _ = writeln!(out, "note      pattern already occurs inside the history");
        }
    }
    Ok(())
}

pub fn simulate(
    config: &RunConfig,
    args: &SimulateArgs,
    json: bool,
    out: &mut String,
) -> Result<(), CliError> {
    let d = &config.distribution;
    let w = config.word(&args.pattern)?;
    let predicted = expected_waiting_time(&w, d).expectation;
    let max_steps = args
        .max_steps
        .unwrap_or_else(|| default_max_steps(Some(&predicted)));
    let est = monte_carlo(&w, d, args.trials, args.seed, max_steps)?;
    let record = output::SimulateOutput {
        command: "simulate",
        distribution: distribution(config),
        pattern: config.format(&w),
        mean: est.mean,
        std_error: est.std_error,
        trials: est.trials,
        seed: est.seed,
        max_steps,
        truncated_count: est.truncated_count,
        predicted: exact(&predicted),
        predicted_decimal: decimal(&predicted),
    };
    if json {
        write_json(out, &record);
    } else {
        let _ = writeln!(out, "pattern    {}", record.pattern);
        let _ = writeln!(
            out,
            "trials     {} (seed {}, max_steps {})",
            record.trials, record.seed, record.max_steps
        );
        let _ = writeln!(out, "mean       {}", record.mean);
        let _ = writeln!(out, "std_error  {}", record.std_error);
        let _ = writeln!(out, "truncated  {}", record.truncated_count);
        let _ = writeln!(
            out,
            "predicted  {}  ~ {}",
            record.predicted, record.predicted_decimal
        );
    }
    Ok(())
}

fn subject(config: &RunConfig, s: &Subject) -> String {
    match s {
        Subject::Word(w) => shown(config, w),
        Subject::Length(n) => format!("n={n}"),
        Subject::WordLetter(w, x) => {
            format!("{} x={}", shown(config, w), config.alphabet.symbol(*x))
        }
        Subject::Split(w, k) => format!("{} | {}", shown(config, &w.prefix(*k)), shown(config, w)),
    }
}

fn sum_check(c: &IdentityCheckResult, n: usize) -> output::SumCheck {
    output::SumCheck {
        n,
        lhs: exact(&c.lhs),
        rhs: exact(&c.rhs),
        holds: c.holds,
        words_visited: c.words_visited.unwrap_or(0),
    }
}

pub fn identities(
    config: &RunConfig,
    args: &IdentitiesArgs,
    json: bool,
    out: &mut String,
) -> Result<(), CliError> {
    identities_with_source(
        config,
        args,
        json,
        out,
        Engine::new(config.distribution.clone()),
    )
}

/// [`identities`] evaluated against an arbitrary expectation source.
pub fn identities_with_source<S: ExpectationSource>(
    config: &RunConfig,
    args: &IdentitiesArgs,
    json: bool,
    out: &mut String,
    source: S,
) -> Result<(), CliError> {
    let checker = IdentityChecker::new(source).with_budget(args.budget);
    let mut results = checker.f1_sweep(args.max_len)?;
    let f2 = checker.check_f2(args.n)?;
    let s_rec = checker.check_s_recurrence(args.n)?;
    results.push(f2.clone());
    results.push(s_rec.clone());
    results.extend(checker.lemma_checks(args.max_len)?);

    let mut grouped: BTreeMap<Identity, Vec<&IdentityCheckResult>> =
        Identity::ALL.iter().map(|&i| (i, Vec::new())).collect();
    for r in &results {
        grouped.entry(r.identity).or_default().push(r);
    }
    let summaries: Vec<output::IdentitySummary> = grouped
        .iter()
        .map(|(identity, checks)| {
            let failing: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
            output::IdentitySummary {
                identity: identity.name(),
                instances: checks.len(),
                failures: failing.len(),
                passed: failing.is_empty(),
                counterexamples: failing
                    .iter()
                    .take(MAX_LISTED)
                    .map(|c| output::Counterexample {
                        subject: subject(config, &c.subject),
                        clause: c.clause,
                        lhs: exact(&c.lhs),
                        rhs: exact(&c.rhs),
                        word: c
                            .counterexample
                            .as_ref()
                            .map(|w| shown(config, w))
                            .unwrap_or_default(),
                    })
                    .collect(),
            }
        })
        .collect();
    let failures: usize = summaries.iter().map(|s| s.failures).sum();
    let record = output::IdentitiesOutput {
        command: "identities",
        distribution: distribution(config),
        max_len: args.max_len,
        n: args.n,
        all_passed: failures == 0,
        identities: summaries,
        f2: sum_check(&f2, args.n),
        s_recurrence: sum_check(&s_rec, args.n),
    };

    if json {
        write_json(out, &record);
    } else {
        let _ = writeln!(
            out,
            "{:<14} {:>9} {:>9}  status",
            "identity", "instances", "failures"
        );
        for s in &record.identities {
            let status = if s.passed { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:<14} {:>9} {:>9}  {status}",
                s.identity, s.instances, s.failures
            );
            for c in &s.counterexamples {
                let clause = c.clause.map(|l| format!(" ({l})")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "    {}{clause}: lhs {} != rhs {}",
                    c.subject, c.lhs, c.rhs
                );
            }
        }
        let _ = writeln!(out);
        let status = |h: bool| if h { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "F2 n={}: lhs {} rhs {} {}",
            record.n,
            record.f2.lhs,
            record.f2.rhs,
            status(record.f2.holds)
        );
        let _ = writeln!(
            out,
            "S_{{n+1}} - S_n, n={}: lhs {} rhs {} {}",
            record.n,
            record.s_recurrence.lhs,
            record.s_recurrence.rhs,
            status(record.s_recurrence.holds)
        );
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(CliError::IdentityFailure(failures))
    }
}
