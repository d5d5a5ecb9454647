//! Settings file and flag merging. Every flag overrides the key of the same
//! name in the `--config` file, which overrides the built-in default.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use netautoma::classify::{
    Classifier, CvConfig, SvmParams, DEFAULT_C, DEFAULT_FOLDS, DEFAULT_REPETITIONS,
};
use netautoma::features::{DegreeWeighting, DEFAULT_BIN_SIZES};
use netautoma::llna::{Rule, DEFAULT_TIMESTEPS, DEFAULT_TRANSIENT};
use netautoma::pipeline::ExtractConfig;
use serde::Deserialize;

pub const DEFAULT_RULE: &str = "B135678-S03456";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifierKind {
    Svm,
    Knn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weighting {
    Unweighted,
    NodeWeighted,
}

impl From<Weighting> for DegreeWeighting {
    fn from(w: Weighting) -> Self {
        match w {
            Weighting::Unweighted => DegreeWeighting::Unweighted,
            Weighting::NodeWeighted => DegreeWeighting::NodeWeighted,
        }
    }
}

/// Keys accepted in the settings file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub rule: Option<String>,
    pub timesteps: Option<usize>,
    pub transient: Option<usize>,
    pub bins: Option<Vec<usize>>,
    pub weighting: Option<Weighting>,
    pub classifier: Option<ClassifierKind>,
    pub c: Option<f64>,
    pub k: Option<usize>,
    pub folds: Option<usize>,
    pub repetitions: Option<usize>,
    pub results: Option<PathBuf>,
    pub database: Option<String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    /// Life-Like rule, e.g. B135678-S03456 [default: B135678-S03456]
    #[arg(long)]
    pub rule: Option<String>,
    /// Evolution steps [default: 350]
    #[arg(long)]
    pub timesteps: Option<usize>,
    /// Leading rows dropped before feature extraction [default: 20]
    #[arg(long)]
    pub transient: Option<usize>,
    /// Comma-separated histogram bin counts [default: 40,100]
    #[arg(long, value_delimiter = ',')]
    pub bins: Option<Vec<usize>>,
    /// Averaging of per-degree histograms [default: unweighted]
    #[arg(long, value_enum)]
    pub weighting: Option<Weighting>,
}

#[derive(Debug, Clone, Args)]
pub struct ProtocolArgs {
    /// Classifier [default: svm]
    #[arg(long, value_enum)]
    pub classifier: Option<ClassifierKind>,
    /// SVM regularization [default: 1.0]
    #[arg(long)]
    pub c: Option<f64>,
    /// Neighbors for the k-NN classifier [default: 1]
    #[arg(long)]
    pub k: Option<usize>,
    /// Cross-validation folds [default: 10]
    #[arg(long)]
    pub folds: Option<usize>,
    /// Cross-validation repetitions [default: 10]
    #[arg(long)]
    pub repetitions: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct LedgerArgs {
    /// Results ledger CSV to append to [default: results.csv beside the output]
    #[arg(long)]
    pub results: Option<PathBuf>,
    /// Database name recorded in the ledger [default: input file stem]
    #[arg(long)]
    pub database: Option<String>,
}

pub fn parse_rule(text: &str) -> Result<Rule> {
    text.parse::<Rule>().map_err(anyhow::Error::from)
}

pub fn extract_config(args: &EvolveArgs, file: &FileConfig, seed: u64) -> Result<ExtractConfig> {
    let rule_text = args
        .rule
        .clone()
        .or_else(|| file.rule.clone())
        .unwrap_or(DEFAULT_RULE.into());
    let config = ExtractConfig {
        rule: parse_rule(&rule_text)?,
        timesteps: args
            .timesteps
            .or(file.timesteps)
            .unwrap_or(DEFAULT_TIMESTEPS),
        transient: args
            .transient
            .or(file.transient)
            .unwrap_or(DEFAULT_TRANSIENT),
        bin_sizes: args
            .bins
            .clone()
            .or_else(|| file.bins.clone())
            .unwrap_or(DEFAULT_BIN_SIZES.to_vec()),
        weighting: args
            .weighting
            .or(file.weighting)
            .unwrap_or(Weighting::Unweighted)
            .into(),
        seed,
    };
    config.validate()?;
    Ok(config)
}

pub fn cv_config(
    args: &ProtocolArgs,
    file: &FileConfig,
    seed: u64,
    default_repetitions: usize,
) -> Result<CvConfig> {
    let classifier = match args
        .classifier
        .or(file.classifier)
        .unwrap_or(ClassifierKind::Svm)
    {
        ClassifierKind::Svm => {
            let c = args.c.or(file.c).unwrap_or(DEFAULT_C);
            if c.is_nan() || c <= 0.0 {
                bail!("SVM regularization must be positive, got {c}");
            }
            Classifier::LinearSvm(SvmParams {
                c,
                ..SvmParams::default()
            })
        }
        ClassifierKind::Knn => Classifier::Knn {
            k: args.k.or(file.k).unwrap_or(1),
        },
    };
    Ok(CvConfig {
        folds: args.folds.or(file.folds).unwrap_or(DEFAULT_FOLDS),
        repetitions: args
            .repetitions
            .or(file.repetitions)
            .unwrap_or(default_repetitions),
        classifier,
        seed,
    })
}

pub fn default_repetitions() -> usize {
    DEFAULT_REPETITIONS
}
