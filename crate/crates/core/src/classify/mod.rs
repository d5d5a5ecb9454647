//! Classification of feature vectors: per-fold standardization, a linear
//! SVM trained by SMO, a k-NN baseline, repeated stratified
//! cross-validation and the rule search built on top of it.

mod cv;
mod dataset;
mod knn;
mod scale;
mod search;
mod svm;

pub use cv::{
    cross_validate, repetition_seed, stratified_folds, ClassificationReport, Classifier, CvConfig,
    DEFAULT_FOLDS, DEFAULT_REPETITIONS,
};
pub use dataset::LabeledDataset;
pub use knn::knn_predict;
pub use scale::{standardize, Standardizer};
pub use search::{rule_search, sample_rules, scores_to_csv, RuleScore};
pub use svm::{
    solve_dual, BinaryLinear, DualSolution, LinearSvm, SvmParams, DEFAULT_C, DEFAULT_MAX_ITER,
    DEFAULT_TOLERANCE,
};
