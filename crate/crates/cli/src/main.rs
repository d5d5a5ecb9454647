mod config;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use netautoma::classify::{
    cross_validate, rule_search, sample_rules, scores_to_csv, ClassificationReport, CvConfig,
    LabeledDataset,
};
use netautoma::llna::dump::{to_pgm, to_text_matrix, GrayScale};
use netautoma::llna::{entropy_order, evolve, Rule};
use netautoma::manifest::{load_indexed, read_network, write_dataset, IndexEntry, Manifest};
use netautoma::pipeline::{
    append_result, bins_label, evolution_seed, extract_dataset_with_progress, read_feature_csv,
    write_feature_csv, ExtractConfig, ResultRow,
};
use netautoma::Network;

use config::{
    cv_config, default_repetitions, extract_config, parse_rule, EvolveArgs, FileConfig, LedgerArgs,
    ProtocolArgs,
};

/// Life-Like network automata: generate networks, extract density-pattern
/// features and classify them.
#[derive(Debug, Parser)]
#[command(name = "netautoma", version)]
struct Cli {
    /// TOML settings file; flags override its keys
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; outputs do not depend on it [default: all cores]
    #[arg(long, global = true, env = "NETAUTOMA_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the networks of a dataset manifest as edge-list files
    Generate {
        #[arg(long)]
        manifest: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve every indexed network and write one feature row per network
    Extract {
        /// Dataset index CSV written by `generate`
        #[arg(long)]
        index: PathBuf,
        #[command(flatten)]
        evolve: EvolveArgs,
        /// Feature CSV to write
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-validate a feature CSV and append the result to the ledger
    Classify {
        #[arg(long)]
        features: PathBuf,
        #[command(flatten)]
        protocol: ProtocolArgs,
        #[command(flatten)]
        ledger: LedgerArgs,
        /// Rule recorded in the ledger
        #[arg(long)]
        rule: Option<String>,
        /// Bin counts recorded in the ledger
        #[arg(long, value_delimiter = ',')]
        bins: Option<Vec<usize>>,
        /// Also write the report text here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write TEP, D-TEP and SD-TEP graymaps of one network
    Render {
        /// Edge-list file
        #[arg(long)]
        network: PathBuf,
        #[command(flatten)]
        evolve: EvolveArgs,
        /// Sort columns by ascending state entropy
        #[arg(long)]
        order_entropy: bool,
        /// Also write the matrices as text
        #[arg(long)]
        text: bool,
        /// Output prefix; files are <out>-tep.pgm, <out>-dtep.pgm, <out>-sdtep.pgm
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank rules by cross-validated accuracy on a dataset subset
    RuleSearch {
        #[arg(long)]
        index: PathBuf,
        /// Number of rules drawn uniformly from the rule space
        #[arg(long, default_value_t = 50, conflicts_with = "rules")]
        sample_size: usize,
        /// Explicit comma-separated rules, evaluated verbatim
        #[arg(long, value_delimiter = ',')]
        rules: Option<Vec<String>>,
        /// Networks kept per class, first in index order [default: all]
        #[arg(long)]
        per_class: Option<usize>,
        #[command(flatten)]
        evolve: EvolveArgs,
        /// Cross-validation settings; repetitions default to 2 here
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// Ranked CSV to write
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate, extract and classify in one run
    Pipeline {
        #[arg(long)]
        manifest: PathBuf,
        #[command(flatten)]
        evolve: EvolveArgs,
        #[command(flatten)]
        protocol: ProtocolArgs,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let seed = cli.seed.or(file.seed).unwrap_or(0);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = cli.threads.or(file.threads) {
        if threads == 0 {
            bail!("--threads must be at least 1");
        }
        pool = pool.num_threads(threads);
    }
    let pool = pool.build().context("starting the worker pool")?;
    pool.install(|| dispatch(cli.command, &file, seed))
}

fn dispatch(command: Command, file: &FileConfig, seed: u64) -> Result<()> {
    match command {
        Command::Generate { manifest, out } => cmd_generate(&manifest, &out).map(|_| ()),
        Command::Extract { index, evolve, out } => {
            let config = extract_config(&evolve, file, seed)?;
            cmd_extract(&index, &config, &out).map(|_| ())
        }
        Command::Classify {
            features,
            protocol,
            ledger,
            rule,
            bins,
            out,
        } => {
            let cv = cv_config(&protocol, file, seed, default_repetitions())?;
            let dataset = read_feature_csv(&features)?;
            let rule = match rule.or_else(|| file.rule.clone()) {
                Some(text) => parse_rule(&text)?.to_string(),
                None => "-".into(),
            };
            let bins = bins
                .or_else(|| file.bins.clone())
                .map_or("-".into(), |b| bins_label(&b));
            let report = classify_and_log(&dataset, &cv, &features, &ledger, file, &rule, &bins)?;
            if let Some(out) = out {
                write_file(&out, report.to_string().as_bytes())?;
            }
            Ok(())
        }
        Command::Render {
            network,
            evolve,
            order_entropy,
            text,
            out,
        } => {
            let config = extract_config(&evolve, file, seed)?;
            cmd_render(&network, &config, order_entropy, text, &out)
        }
        Command::RuleSearch {
            index,
            sample_size,
            rules,
            per_class,
            evolve,
            protocol,
            out,
        } => {
            let extract = extract_config(&evolve, file, seed)?;
            let cv = cv_config(&protocol, file, seed, 2)?;
            let rules = match rules {
                Some(list) => list
                    .iter()
                    .map(|r| parse_rule(r))
                    .collect::<Result<Vec<Rule>>>()?,
                None => sample_rules(sample_size, seed)?,
            };
            cmd_rule_search(&index, &rules, per_class, &extract, &cv, &out)
        }
        Command::Pipeline {
            manifest,
            evolve,
            protocol,
            out,
        } => {
            let extract = extract_config(&evolve, file, seed)?;
            let cv = cv_config(&protocol, file, seed, default_repetitions())?;
            cmd_pipeline(&manifest, &extract, &cv, file, &out)
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn cmd_generate(manifest_path: &Path, out: &Path) -> Result<Vec<PathBuf>> {
    let manifest = Manifest::load(manifest_path)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let indexes = write_dataset(&manifest, out)?;
    eprintln!(
        "generated {} networks in {} set(s) for `{}`",
        manifest.dataset_spec().sample_count(),
        indexes.len(),
        manifest.name
    );
    for index in &indexes {
        println!("{}", index.display());
    }
    Ok(indexes)
}

fn extract_indexed(
    entries: &[IndexEntry],
    networks: &[Network],
    config: &ExtractConfig,
) -> Result<LabeledDataset> {
    let labels: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
    let step = (networks.len() / 10).max(1);
    let dataset = extract_dataset_with_progress(networks, &labels, config, |done, total| {
        if done % step == 0 || done == total {
            eprintln!("extracted {done}/{total}");
        }
    })?;
    Ok(dataset)
}

fn cmd_extract(index: &Path, config: &ExtractConfig, out: &Path) -> Result<LabeledDataset> {
    let (entries, networks) = load_indexed(index)?;
    let dataset = extract_indexed(&entries, &networks, config)?;
    write_feature_csv(out, &dataset)?;
    eprintln!(
        "wrote {} rows x {} features to {}",
        dataset.len(),
        dataset.n_features(),
        out.display()
    );
    Ok(dataset)
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map_or("dataset".into(), |s| s.to_string_lossy().into_owned())
}

fn classify_and_log(
    dataset: &LabeledDataset,
    cv: &CvConfig,
    source: &Path,
    ledger: &LedgerArgs,
    file: &FileConfig,
    rule: &str,
    bins: &str,
) -> Result<ClassificationReport> {
    let report = cross_validate(dataset, cv)?;
    print!("{report}");
    std::io::stdout().flush()?;
    let database = ledger
        .database
        .clone()
        .or_else(|| file.database.clone())
        .unwrap_or_else(|| file_stem(source));
    let results = ledger
        .results
        .clone()
        .or_else(|| file.results.clone())
        .unwrap_or_else(|| source.with_file_name("results.csv"));
    append_result(
        &results,
        &ResultRow::from_report(&database, rule, bins, &report),
    )?;
    Ok(report)
}

fn cmd_render(
    network: &Path,
    config: &ExtractConfig,
    order_entropy: bool,
    text: bool,
    out: &Path,
) -> Result<()> {
    let net = read_network(network)?;
    let record = evolve(
        &net,
        &config.rule,
        config.timesteps,
        evolution_seed(config.seed, 0),
    )?;
    let sd = record.sd_tep();
    let order = order_entropy.then(|| entropy_order(record.tep.view()));
    let order = order.as_deref();
    let prefix = out.to_string_lossy();
    write_file(
        Path::new(&format!("{prefix}-tep.pgm")),
        &to_pgm(record.tep.view(), GrayScale::Unit, order),
    )?;
    write_file(
        Path::new(&format!("{prefix}-dtep.pgm")),
        &to_pgm(record.dtep.view(), GrayScale::Unit, order),
    )?;
    write_file(
        Path::new(&format!("{prefix}-sdtep.pgm")),
        &to_pgm(sd.view(), GrayScale::Signed, order),
    )?;
    if text {
        write_file(
            Path::new(&format!("{prefix}-tep.txt")),
            to_text_matrix(record.tep.view()).as_bytes(),
        )?;
        write_file(
            Path::new(&format!("{prefix}-dtep.txt")),
            to_text_matrix(record.dtep.view()).as_bytes(),
        )?;
        write_file(
            Path::new(&format!("{prefix}-sdtep.txt")),
            to_text_matrix(sd.view()).as_bytes(),
        )?;
    }
    eprintln!(
        "rendered {} steps x {} nodes under {}",
        record.timesteps(),
        net.node_count(),
        config.rule
    );
    Ok(())
}

fn cmd_rule_search(
    index: &Path,
    rules: &[Rule],
    per_class: Option<usize>,
    extract: &ExtractConfig,
    cv: &CvConfig,
    out: &Path,
) -> Result<()> {
    let (entries, networks) = load_indexed(index)?;
    let mut kept = std::collections::HashMap::new();
    let mut labels = Vec::new();
    let mut subset = Vec::new();
    for (e, net) in entries.iter().zip(&networks) {
        let seen = kept.entry(e.label.as_str()).or_insert(0usize);
        if per_class.is_none_or(|limit| *seen < limit) {
            *seen += 1;
            labels.push(e.label.as_str());
            subset.push(net);
        }
    }
    eprintln!(
        "evaluating {} rules on {} networks",
        rules.len(),
        subset.len()
    );
    let scores = rule_search(&subset, &labels, rules, extract, cv)?;
    write_file(out, scores_to_csv(&scores).as_bytes())?;
    if let Some(best) = scores.first() {
        println!(
            "best rule {} at {:.2} +/- {:.2} %",
            best.rule, best.mean_accuracy, best.std_accuracy
        );
    }
    Ok(())
}

fn cmd_pipeline(
    manifest: &Path,
    extract: &ExtractConfig,
    cv: &CvConfig,
    file: &FileConfig,
    out: &Path,
) -> Result<()> {
    let indexes = cmd_generate(manifest, &out.join("dataset"))?;
    let name = Manifest::load(manifest)?.name;
    let ledger = LedgerArgs {
        results: Some(
            file.results
                .clone()
                .unwrap_or_else(|| out.join("results.csv")),
        ),
        database: None,
    };
    for index in &indexes {
        let tag = file_stem(index).replacen("index", "features", 1);
        let csv = out.join(format!("{tag}.csv"));
        let dataset = cmd_extract(index, extract, &csv)?;
        let suffix = tag.strip_prefix("features").unwrap_or("");
        let ledger = LedgerArgs {
            database: Some(file.database.clone().unwrap_or_else(|| name.clone()) + suffix),
            ..ledger.clone()
        };
        let report = classify_and_log(
            &dataset,
            cv,
            &csv,
            &ledger,
            file,
            &extract.rule.to_string(),
            &bins_label(&extract.bin_sizes),
        )?;
        write_file(
            &out.join(format!("{}.txt", tag.replacen("features", "report", 1))),
            report.to_string().as_bytes(),
        )?;
    }
    Ok(())
}
