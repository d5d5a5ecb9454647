//! Dataset manifests and the on-disk dataset layout.
//!
//! A manifest is TOML:
//!
//! ```toml
//! name = "four-models"
//! seed = 42
//! noise = [0.1, 0.3]
//!
//! [[class]]
//! label = "small-world"
//! model = "watts-strogatz"
//! p_rewire = 0.1
//! nodes = [500]
//! mean_degree = [4, 8]
//! samples = 25
//! ```
//!
//! [`write_dataset`] stores every network as an edge list under
//! `original/<label>/` and every noisy copy under `sigma<s>/<label>/`. Each
//! set gets an index CSV at the top of the output directory whose paths are
//! relative to that directory.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::netgen::{gen_dataset, perturb_dataset, ClassSpec, DatasetSpec, LabeledNetwork};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub name: String,
    pub seed: u64,
    /// Noise fractions; one perturbed copy of the dataset per entry.
    #[serde(default)]
    pub noise: Vec<f64>,
    #[serde(rename = "class")]
    pub classes: Vec<ClassSpec>,
}

impl Manifest {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let manifest: Manifest =
            toml::from_str(text).map_err(|e| Error::param(format!("manifest: {e}")))?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| Error::Format {
            path: path.into(),
            message: e.to_string(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.dataset_spec().validate()?;
        for class in &self.classes {
            check_path_component(&class.label)?;
        }
        for &s in &self.noise {
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::param(format!("noise fraction {s} outside (0, 1]")));
            }
        }
        Ok(())
    }

    /// The noise-free dataset described by this manifest.
    pub fn dataset_spec(&self) -> DatasetSpec {
        DatasetSpec {
            seed: self.seed,
            classes: self.classes.clone(),
            noise_sigma: None,
        }
    }
}

fn check_path_component(label: &str) -> Result<()> {
    let ok = !label.is_empty()
        && !label.starts_with('.')
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c));
    if ok {
        Ok(())
    } else {
        Err(Error::param(format!(
            "class label `{label}` must be ASCII letters, digits, `-`, `_` or `.`"
        )))
    }
}

/// One row of a dataset index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexEntry {
    /// Edge-list path relative to the index file's directory.
    pub path: String,
    pub label: String,
    pub class_index: usize,
    pub sample_index: usize,
    pub model: String,
    pub nodes: usize,
    pub mean_degree: f64,
    pub seed: u64,
    pub sigma: f64,
}

pub const ORIGINAL_INDEX: &str = "index.csv";

/// Index file name for a noise fraction; `0` names the originals.
pub fn index_file_name(sigma: f64) -> String {
    if sigma == 0.0 {
        ORIGINAL_INDEX.to_string()
    } else {
        format!("index-sigma{sigma}.csv")
    }
}

fn set_dir(sigma: f64) -> String {
    if sigma == 0.0 {
        "original".to_string()
    } else {
        format!("sigma{sigma}")
    }
}

/// Paths of the index files written for `manifest`, originals first.
pub fn index_paths(out_dir: &Path, manifest: &Manifest) -> Vec<PathBuf> {
    std::iter::once(0.0)
        .chain(manifest.noise.iter().copied())
        .map(|s| out_dir.join(index_file_name(s)))
        .collect()
}

/// Generates the manifest's networks (and noisy copies) and writes them with
/// their index files. Returns the index paths, originals first.
pub fn write_dataset(manifest: &Manifest, out_dir: &Path) -> Result<Vec<PathBuf>> {
    manifest.validate()?;
    let originals = gen_dataset(&manifest.dataset_spec())?;
    let mut written = vec![write_set(&originals, 0.0, out_dir)?];
    for &sigma in &manifest.noise {
        let noisy = perturb_dataset(&originals, sigma, manifest.seed)?;
        written.push(write_set(&noisy, sigma, out_dir)?);
    }
    Ok(written)
}

fn write_set(samples: &[LabeledNetwork], sigma: f64, out_dir: &Path) -> Result<PathBuf> {
    let dir = set_dir(sigma);
    let entries: Vec<IndexEntry> = samples
        .iter()
        .map(|s| IndexEntry {
            path: format!("{dir}/{}/{:04}.edges", s.label, s.sample_index),
            label: s.label.clone(),
            class_index: s.class_index,
            sample_index: s.sample_index,
            model: s.model.name().to_string(),
            nodes: s.n,
            mean_degree: s.k_avg,
            seed: s.seed,
            sigma: s.sigma,
        })
        .collect();
    for e in &entries {
        let parent = out_dir.join(&e.path);
        let parent = parent.parent().expect("entry paths have a directory");
        fs::create_dir_all(parent).map_err(|err| Error::io(parent, err))?;
    }
    entries.par_iter().zip(samples).try_for_each(|(e, s)| {
        let path = out_dir.join(&e.path);
        fs::write(&path, s.network.to_edge_list()).map_err(|err| Error::io(&path, err))
    })?;
    let index = out_dir.join(index_file_name(sigma));
    write_index(&index, &entries)?;
    Ok(index)
}

pub fn write_index(path: &Path, entries: &[IndexEntry]) -> Result<()> {
    let format_err = |e: csv::Error| Error::Format {
        path: path.into(),
        message: e.to_string(),
    };
    let mut writer = csv::Writer::from_path(path).map_err(format_err)?;
    for e in entries {
        writer.serialize(e).map_err(format_err)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

pub fn read_index(path: &Path) -> Result<Vec<IndexEntry>> {
    let format_err = |e: csv::Error| Error::Format {
        path: path.into(),
        message: e.to_string(),
    };
    let mut reader = csv::Reader::from_path(path).map_err(format_err)?;
    let entries: Vec<IndexEntry> = reader
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(format_err)?;
    if entries.is_empty() {
        return Err(Error::Format {
            path: path.into(),
            message: "index lists no networks".into(),
        });
    }
    Ok(entries)
}

pub fn read_network(path: &Path) -> Result<Network> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Network::from_edge_list(&text)
        .map(|ingested| ingested.network)
        .map_err(|e| Error::Format {
            path: path.into(),
            message: e.to_string(),
        })
}

/// Reads an index and every network it lists, in index order.
pub fn load_indexed(index_path: &Path) -> Result<(Vec<IndexEntry>, Vec<Network>)> {
    let entries = read_index(index_path)?;
    let base = index_path.parent().unwrap_or(Path::new("."));
    let networks = entries
        .par_iter()
        .map(|e| read_network(&base.join(&e.path)))
        .collect::<Result<_>>()?;
    Ok((entries, networks))
}
