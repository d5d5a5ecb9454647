//! Parallel feature extraction and the CSV formats that carry its results.
//!
//! A feature CSV has a `label,f0,f1,...` header and one row per network.
//! Values are written with the shortest representation that parses back to
//! the same `f64`, so a CSV round trip is exact and reruns are byte-identical.

use std::borrow::Borrow;
use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{ClassificationReport, LabeledDataset};
use crate::error::{Error, Result};
use crate::features::{canonical_bin_sizes, omega_with, DegreeWeighting, DEFAULT_BIN_SIZES};
use crate::graph::Network;
use crate::llna::{evolve, Rule, DEFAULT_TIMESTEPS, DEFAULT_TRANSIENT};
use crate::seed::derive_seed;

/// Evolution and histogram settings shared by every network of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractConfig {
    pub rule: Rule,
    pub timesteps: usize,
    pub transient: usize,
    pub bin_sizes: Vec<usize>,
    pub weighting: DegreeWeighting,
    /// Master seed for the initial states.
    pub seed: u64,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        Self {
            rule: "B135678-S03456".parse().expect("valid rule"),
            timesteps: DEFAULT_TIMESTEPS,
            transient: DEFAULT_TRANSIENT,
            bin_sizes: DEFAULT_BIN_SIZES.to_vec(),
            weighting: DegreeWeighting::default(),
            seed: 0,
        }
    }
}

impl ExtractConfig {
    pub fn validate(&self) -> Result<()> {
        if self.transient >= self.timesteps {
            return Err(Error::param(format!(
                "transient {} must be below the {} timesteps",
                self.transient, self.timesteps
            )));
        }
        canonical_bin_sizes(&self.bin_sizes)?;
        Ok(())
    }

    /// Length of every feature row this configuration produces.
    pub fn feature_len(&self) -> usize {
        6 * canonical_bin_sizes(&self.bin_sizes).map_or(0, |b| b.iter().sum())
    }

    pub fn describe(&self) -> String {
        format!(
            "omega rule={} T={} tau={} bins={}",
            self.rule,
            self.timesteps,
            self.transient,
            bins_label(&self.bin_sizes)
        )
    }
}

/// `40;100` style label for a bin set.
pub fn bins_label(bin_sizes: &[usize]) -> String {
    let mut sizes = bin_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// Initial-state seed of the network at position `index`. It does not depend
/// on the rule, so different rules see the same initial states.
pub fn evolution_seed(master: u64, index: usize) -> u64 {
    derive_seed(master, "evolve", index as u64)
}

/// Evolves one network and returns its combined feature vector.
pub fn network_features(net: &Network, config: &ExtractConfig, index: usize) -> Result<Vec<f64>> {
    let record = evolve(
        net,
        &config.rule,
        config.timesteps,
        evolution_seed(config.seed, index),
    )?
    .with_transient(config.transient);
    Ok(omega_with(&record, net.degrees(), &config.bin_sizes, config.weighting)?.values)
}

/// Feature rows for every network, computed in parallel and returned in
/// input order.
pub fn extract_dataset<N, S>(
    networks: &[N],
    labels: &[S],
    config: &ExtractConfig,
) -> Result<LabeledDataset>
where
    N: Borrow<Network> + Sync,
    S: AsRef<str>,
{
    extract_dataset_with_progress(networks, labels, config, |_, _| {})
}

/// [`extract_dataset`] calling `progress(done, total)` after each network.
/// Calls arrive from worker threads in completion order.
pub fn extract_dataset_with_progress<N, S, P>(
    networks: &[N],
    labels: &[S],
    config: &ExtractConfig,
    progress: P,
) -> Result<LabeledDataset>
where
    N: Borrow<Network> + Sync,
    S: AsRef<str>,
    P: Fn(usize, usize) + Sync,
{
    config.validate()?;
    if networks.len() != labels.len() {
        return Err(Error::param(format!(
            "{} networks but {} labels",
            networks.len(),
            labels.len()
        )));
    }
    let done = AtomicUsize::new(0);
    let rows: Vec<Vec<f64>> = networks
        .par_iter()
        .enumerate()
        .map(|(i, net)| {
            let row = network_features(net.borrow(), config, i);
            progress(done.fetch_add(1, Ordering::Relaxed) + 1, networks.len());
            row
        })
        .collect::<Result<_>>()?;
    Ok(LabeledDataset::from_named(rows, labels)?.with_descriptor(config.describe()))
}

pub fn features_to_csv(dataset: &LabeledDataset) -> Result<String> {
    let mut out = String::from("label");
    for j in 0..dataset.n_features() {
        out.push_str(&format!(",f{j}"));
    }
    out.push('\n');
    for (i, row) in dataset.rows.iter().enumerate() {
        let name = dataset.label_name(i);
        if name.contains([',', '"', '\n', '\r']) {
            return Err(Error::param(format!(
                "label `{name}` cannot be written to CSV"
            )));
        }
        out.push_str(name);
        for v in row {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_feature_csv(text: &str) -> Result<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| csv_error(1, e))?.clone();
    if headers.get(0) != Some("label") || headers.len() < 2 {
        return Err(Error::Parse {
            line: 1,
            message: "header must be `label,f0,...`".into(),
        });
    }
    let mut rows = Vec::new();
    let mut names = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| csv_error(line, e))?;
        let row = record
            .iter()
            .skip(1)
            .map(|t| {
                t.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad feature value `{t}`"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(v) = row.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line,
                message: format!("non-finite feature value {v}"),
            });
        }
        names.push(record[0].to_string());
        rows.push(row);
    }
    LabeledDataset::from_named(rows, &names)
}

fn csv_error(line: usize, e: csv::Error) -> Error {
    let line = e.position().map_or(line, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

pub fn write_feature_csv(path: &Path, dataset: &LabeledDataset) -> Result<()> {
    fs::write(path, features_to_csv(dataset)?).map_err(|e| Error::io(path, e))
}

pub fn read_feature_csv(path: &Path) -> Result<LabeledDataset> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_feature_csv(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Format {
            path: path.into(),
            message: format!("line {line}: {message}"),
        },
        other => other,
    })
}

/// One line of the results ledger.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub database: String,
    pub rule: String,
    pub bins: String,
    pub classifier: String,
    pub mean: f64,
    pub std: f64,
    pub repetitions: usize,
    pub seed: u64,
}

impl ResultRow {
    pub fn from_report(
        database: &str,
        rule: &str,
        bins: &str,
        report: &ClassificationReport,
    ) -> Self {
        Self {
            database: database.into(),
            rule: rule.into(),
            bins: bins.into(),
            classifier: report.classifier.clone(),
            mean: report.mean_accuracy,
            std: report.std_accuracy,
            repetitions: report.repetitions,
            seed: report.seed,
        }
    }
}

/// Appends `row` to the ledger at `path`, writing the header first when the
/// file is new or empty.
pub fn append_result(path: &Path, row: &ResultRow) -> Result<()> {
    let fresh = fs::metadata(path).map_or(true, |m| m.len() == 0);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    let mut writer = csv::WriterBuilder::new()
        .has_headers(fresh)
        .from_writer(file);
    writer.serialize(row).map_err(|e| Error::Format {
        path: path.into(),
        message: e.to_string(),
    })?;
    writer
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?
        .flush()
        .map_err(|e| Error::io(path, e))
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::Format {
        path: path.into(),
        message: e.to_string(),
    })?;
    reader
        .deserialize()
        .map(|r| {
            r.map_err(|e| Error::Format {
                path: path.into(),
                message: e.to_string(),
            })
        })
        .collect()
}
