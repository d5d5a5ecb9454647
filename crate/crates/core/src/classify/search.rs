use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::cv::{cross_validate, CvConfig};
use crate::error::{Error, Result};
use crate::graph::Network;
use crate::llna::{Rule, RULE_SPACE};
use crate::pipeline::{extract_dataset, ExtractConfig};
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct RuleScore {
    pub rule: Rule,
    pub mean_accuracy: f64,
    pub std_accuracy: f64,
}

/// `count` distinct rules drawn uniformly from the whole rule space.
pub fn sample_rules(count: usize, seed: u64) -> Result<Vec<Rule>> {
    if count > RULE_SPACE as usize {
        return Err(Error::param(format!(
            "cannot draw {count} distinct rules from {RULE_SPACE}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut seen = HashSet::with_capacity(count);
    let mut rules = Vec::with_capacity(count);
    while rules.len() < count {
        let rule = Rule::random(&mut rng);
        if seen.insert(rule.code()) {
            rules.push(rule);
        }
    }
    Ok(rules)
}

/// Scores each rule by the cross-validated accuracy of its features on the
/// given networks. `extract.rule` is ignored. Initial states depend only on
/// the network position, so every rule starts from the same states.
///
/// The result is sorted by mean accuracy, best first, with ties broken by
/// the canonical rule name.
pub fn rule_search<N, S>(
    networks: &[N],
    labels: &[S],
    rules: &[Rule],
    extract: &ExtractConfig,
    cv: &CvConfig,
) -> Result<Vec<RuleScore>>
where
    N: Borrow<Network> + Sync,
    S: AsRef<str> + Sync,
{
    let mut scores: Vec<RuleScore> = rules
        .par_iter()
        .map(|&rule| {
            let config = ExtractConfig {
                rule,
                ..extract.clone()
            };
            let dataset = extract_dataset(networks, labels, &config)?;
            let report = cross_validate(&dataset, cv)?;
            Ok(RuleScore {
                rule,
                mean_accuracy: report.mean_accuracy,
                std_accuracy: report.std_accuracy,
            })
        })
        .collect::<Result<_>>()?;
    scores.sort_by(|a, b| {
        b.mean_accuracy
            .total_cmp(&a.mean_accuracy)
            .then_with(|| a.rule.name().cmp(&b.rule.name()))
    });
    Ok(scores)
}

/// `rank,rule,mean,std` with ranks starting at 1.
pub fn scores_to_csv(scores: &[RuleScore]) -> String {
    let mut out = String::from("rank,rule,mean,std\n");
    for (i, s) in scores.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{}",
            i + 1,
            s.rule,
            s.mean_accuracy,
            s.std_accuracy
        )
        .unwrap();
    }
    out
}
