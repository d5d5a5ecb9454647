use std::fmt;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::dataset::LabeledDataset;
use super::knn::knn_predict;
use super::scale::Standardizer;
use super::svm::{LinearSvm, SvmParams};
use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from_seed, Rng64};

pub const DEFAULT_FOLDS: usize = 10;
pub const DEFAULT_REPETITIONS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Classifier {
    LinearSvm(SvmParams),
    Knn { k: usize },
}

impl Default for Classifier {
    fn default() -> Self {
        Classifier::LinearSvm(SvmParams::default())
    }
}

impl Classifier {
    pub fn name(&self) -> String {
        match self {
            Classifier::LinearSvm(p) => format!("svm(C={})", p.c),
            Classifier::Knn { k } => format!("knn(k={k})"),
        }
    }

    /// Trains on `train` and predicts `test`. Rows are used as given.
    pub fn fit_predict(
        &self,
        train: &[Vec<f64>],
        labels: &[usize],
        n_classes: usize,
        test: &[Vec<f64>],
    ) -> Result<Vec<usize>> {
        match self {
            Classifier::LinearSvm(params) => {
                let model = LinearSvm::train(train, labels, n_classes, params)?;
                Ok(test.iter().map(|x| model.predict(x)).collect())
            }
            Classifier::Knn { k } => test
                .iter()
                .map(|x| knn_predict(train, labels, x, *k))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvConfig {
    pub folds: usize,
    pub repetitions: usize,
    pub classifier: Classifier,
    pub seed: u64,
}

impl Default for CvConfig {
    fn default() -> Self {
        Self {
            folds: DEFAULT_FOLDS,
            repetitions: DEFAULT_REPETITIONS,
            classifier: Classifier::default(),
            seed: 0,
        }
    }
}

/// Mean accuracy and spread over repeated cross-validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    /// Percent.
    pub mean_accuracy: f64,
    /// Population standard deviation over repetitions, percent.
    pub std_accuracy: f64,
    pub per_repetition: Vec<f64>,
    /// `confusion[true][predicted]`, summed over all repetitions and folds.
    pub confusion: Vec<Vec<u64>>,
    pub class_names: Vec<String>,
    pub folds: usize,
    pub repetitions: usize,
    pub classifier: String,
    pub seed: u64,
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "classifier:   {}", self.classifier)?;
        writeln!(
            f,
            "protocol:     {}-fold x {} repetitions, seed {}",
            self.folds, self.repetitions, self.seed
        )?;
        writeln!(
            f,
            "accuracy:     {:.2} +/- {:.2} %",
            self.mean_accuracy, self.std_accuracy
        )?;
        let reps: Vec<String> = self
            .per_repetition
            .iter()
            .map(|a| format!("{a:.2}"))
            .collect();
        writeln!(f, "repetitions:  {}", reps.join(" "))?;
        writeln!(f, "confusion (rows true, columns predicted):")?;
        let width = self.class_names.iter().map(String::len).max().unwrap_or(0);
        for (name, row) in self.class_names.iter().zip(&self.confusion) {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>6}")).collect();
            writeln!(f, "  {name:<width$} {}", cells.join(""))?;
        }
        Ok(())
    }
}

/// Stratified fold assignment: every class is shuffled and dealt round-robin
/// across folds, continuing where the previous class stopped. Each fold then
/// holds `floor` or `ceil` of `count / folds` samples of every class.
pub fn stratified_folds(
    labels: &[usize],
    n_classes: usize,
    folds: usize,
    rng: &mut Rng64,
) -> Vec<usize> {
    let mut assignment = vec![0; labels.len()];
    let mut next = 0usize;
    for class in 0..n_classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(rng);
        for i in members {
            assignment[i] = next % folds;
            next += 1;
        }
    }
    assignment
}

pub fn repetition_seed(seed: u64, repetition: usize) -> u64 {
    derive_seed(seed, "cv-repetition", repetition as u64)
}

/// Repeated stratified k-fold cross-validation. Each training fold is
/// standardized with statistics of that fold alone.
pub fn cross_validate(dataset: &LabeledDataset, config: &CvConfig) -> Result<ClassificationReport> {
    dataset.validate()?;
    if config.folds < 2 {
        return Err(Error::param(format!(
            "need at least 2 folds, got {}",
            config.folds
        )));
    }
    if config.repetitions == 0 {
        return Err(Error::param("need at least one repetition"));
    }
    let counts = dataset.class_counts();
    for (name, &count) in dataset.class_names.iter().zip(&counts) {
        if count > 0 && count < config.folds {
            return Err(Error::param(format!(
                "class `{name}` has {count} samples, fewer than {} folds",
                config.folds
            )));
        }
    }
    let n_classes = dataset.n_classes();
    let outcomes: Vec<(f64, Vec<Vec<u64>>)> = (0..config.repetitions)
        .into_par_iter()
        .map(|r| run_repetition(dataset, config, r))
        .collect::<Result<_>>()?;

    let mut confusion = vec![vec![0u64; n_classes]; n_classes];
    let mut per_repetition = Vec::with_capacity(outcomes.len());
    for (acc, conf) in outcomes {
        per_repetition.push(acc);
        for (row, add) in confusion.iter_mut().zip(conf) {
            for (c, a) in row.iter_mut().zip(add) {
                *c += a;
            }
        }
    }
    let n = per_repetition.len() as f64;
    let mean = per_repetition.iter().sum::<f64>() / n;
    let var = per_repetition
        .iter()
        .map(|a| (a - mean) * (a - mean))
        .sum::<f64>()
        / n;
    Ok(ClassificationReport {
        mean_accuracy: mean,
        std_accuracy: var.sqrt(),
        per_repetition,
        confusion,
        class_names: dataset.class_names.clone(),
        folds: config.folds,
        repetitions: config.repetitions,
        classifier: config.classifier.name(),
        seed: config.seed,
    })
}

fn run_repetition(
    dataset: &LabeledDataset,
    config: &CvConfig,
    repetition: usize,
) -> Result<(f64, Vec<Vec<u64>>)> {
    let n_classes = dataset.n_classes();
    let mut rng = rng_from_seed(repetition_seed(config.seed, repetition));
    let fold_of = stratified_folds(&dataset.labels, n_classes, config.folds, &mut rng);
    let mut confusion = vec![vec![0u64; n_classes]; n_classes];
    let mut fold_accuracy_sum = 0.0;
    for fold in 0..config.folds {
        let (mut train, mut train_labels, mut test, mut test_labels) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (i, &f) in fold_of.iter().enumerate() {
            if f == fold {
                test.push(&dataset.rows[i]);
                test_labels.push(dataset.labels[i]);
            } else {
                train.push(dataset.rows[i].clone());
                train_labels.push(dataset.labels[i]);
            }
        }
        let scaler = Standardizer::fit(&train);
        let train = scaler.transform(&train);
        let test: Vec<Vec<f64>> = test.iter().map(|r| scaler.transform_row(r)).collect();
        let predicted = config
            .classifier
            .fit_predict(&train, &train_labels, n_classes, &test)?;
        let mut correct = 0usize;
        for (&truth, &guess) in test_labels.iter().zip(&predicted) {
            confusion[truth][guess] += 1;
            correct += usize::from(truth == guess);
        }
        fold_accuracy_sum += correct as f64 / test_labels.len() as f64;
    }
    Ok((100.0 * fold_accuracy_sum / config.folds as f64, confusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn blobs(per_class: usize, classes: usize, spread: f64, seed: u64) -> LabeledDataset {
        let mut rng = rng_from_seed(seed);
        let mut rows = Vec::new();
        let mut names = Vec::new();
        for c in 0..classes {
            for _ in 0..per_class {
                let mut r: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() * spread).collect();
                r[c % 4] += 10.0;
                rows.push(r);
                names.push(format!("class{c}"));
            }
        }
        LabeledDataset::from_named(rows, &names).unwrap()
    }

    #[test]
    fn separable_data_scores_perfectly() {
        let ds = blobs(12, 3, 1.0, 1);
        let report = cross_validate(
            &ds,
            &CvConfig {
                repetitions: 3,
                ..CvConfig::default()
            },
        )
        .unwrap();
        assert_eq!(report.mean_accuracy, 100.0);
        assert_eq!(report.std_accuracy, 0.0);
        assert_eq!(report.per_repetition.len(), 3);
        let total: u64 = report.confusion.iter().flatten().sum();
        assert_eq!(total, 3 * 36);
    }

    #[test]
    fn knn_runs_through_the_same_protocol() {
        let ds = blobs(10, 2, 1.0, 2);
        let cfg = CvConfig {
            classifier: Classifier::Knn { k: 1 },
            repetitions: 2,
            ..CvConfig::default()
        };
        assert_eq!(cross_validate(&ds, &cfg).unwrap().mean_accuracy, 100.0);
    }

    #[test]
    fn reports_are_deterministic() {
        let ds = blobs(10, 2, 30.0, 3);
        let cfg = CvConfig {
            seed: 7,
            repetitions: 4,
            ..CvConfig::default()
        };
        assert_eq!(
            cross_validate(&ds, &cfg).unwrap(),
            cross_validate(&ds, &cfg).unwrap()
        );
    }

    #[test]
    fn too_small_class_is_rejected() {
        let ds = blobs(9, 2, 1.0, 4);
        assert!(matches!(
            cross_validate(&ds, &CvConfig::default()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn folds_are_stratified() {
        let labels: Vec<usize> = (0..83)
            .map(|i| {
                if i < 40 {
                    0
                } else if i < 65 {
                    1
                } else {
                    2
                }
            })
            .collect();
        let mut rng = rng_from_seed(5);
        let folds = stratified_folds(&labels, 3, 10, &mut rng);
        let counts = [40.0, 25.0, 18.0];
        for f in 0..10 {
            let size = folds.iter().filter(|&&x| x == f).count();
            assert!((8..=9).contains(&size), "fold {f}: {size}");
            for (c, &n) in counts.iter().enumerate() {
                let in_fold = (0..83).filter(|&i| folds[i] == f && labels[i] == c).count() as f64;
                assert!(
                    (in_fold - n / 10.0).abs() <= 1.0,
                    "fold {f} class {c}: {in_fold}"
                );
            }
        }
    }
}
