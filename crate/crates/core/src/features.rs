//! Histogram features of density time-evolution patterns.
//!
//! For one pattern matrix (rows = time after the transient, columns = nodes)
//! and one bin count `L` three normalized histograms are built:
//!
//! - global: every entry of the matrix;
//! - degree mean: one histogram per realized node degree, averaged;
//! - temporal mean: one histogram per row, averaged.
//!
//! Bins are half-open `[b/L, (b+1)/L)` with the top bin closed. Signed
//! patterns (SD-TEP, values in `[-1, 1]`) are mapped through `(v + 1) / 2`
//! before binning.
//!
//! Because every row holds exactly `N` entries, the temporal mean equals the
//! global histogram up to rounding. It is kept as a separate block so the
//! vector layout stays `[global, degree, temporal]`.

use std::collections::BTreeMap;

use ndarray::{ArrayView2, Axis};

use crate::error::{Error, Result};
use crate::llna::{discard_transient, EvolutionRecord};

pub const MIN_BINS: usize = 2;
pub const MAX_BINS: usize = 4096;
pub const MAX_PATTERN_WIDTH: usize = 16;

/// Bin counts used when none are configured.
pub const DEFAULT_BIN_SIZES: [usize; 2] = [40, 100];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `[0, 1]`.
    Unit,
    /// `[-1, 1]`.
    Signed,
    /// Integer codes of `D`-bit windows, `0..2^D`.
    BinaryPattern,
}

impl Domain {
    fn label(self) -> &'static str {
        match self {
            Domain::Unit => "[0, 1]",
            Domain::Signed => "[-1, 1]",
            Domain::BinaryPattern => "binary pattern codes",
        }
    }
}

/// Bin of `v` among `bins` equal-width bins of `domain`.
pub fn bin_index(v: f64, bins: usize, domain: Domain) -> Result<usize> {
    let u = match domain {
        Domain::Unit if (0.0..=1.0).contains(&v) => v,
        Domain::Signed if (-1.0..=1.0).contains(&v) => (v + 1.0) / 2.0,
        Domain::BinaryPattern if v >= 0.0 && v.fract() == 0.0 && v < bins as f64 => {
            return Ok(v as usize)
        }
        _ => {
            return Err(Error::Range {
                value: v,
                domain: domain.label(),
            })
        }
    };
    // `u * bins` can round across an edge; settle against the edges as
    // computed by division, so `j / bins` itself always opens bin `j`.
    let top = bins - 1;
    let mut b = ((u * bins as f64) as usize).min(top);
    while b > 0 && u < b as f64 / bins as f64 {
        b -= 1;
    }
    while b < top && u >= (b + 1) as f64 / bins as f64 {
        b += 1;
    }
    Ok(b)
}

/// A normalized histogram: non-negative entries summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bins: Vec<f64>,
    pub domain: Domain,
}

impl Histogram {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.bins.iter().sum()
    }

    fn from_counts(counts: &[u64], domain: Domain) -> Self {
        let total: u64 = counts.iter().sum();
        let bins = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Self { bins, domain }
    }
}

/// How per-degree histograms are averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeWeighting {
    /// Each realized degree counts once.
    #[default]
    Unweighted,
    /// Each degree class weighted by its share of nodes.
    NodeWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistogramKind {
    Global,
    DegreeMean,
    TemporalMean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternSource {
    DTep,
    SdTep,
    Both,
}

/// How a feature vector was assembled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureDescriptor {
    pub source: PatternSource,
    pub kinds: Vec<HistogramKind>,
    /// Ascending bin counts, one block per count (per source).
    pub bin_sizes: Vec<usize>,
}

impl FeatureDescriptor {
    /// Length implied by the descriptor.
    pub fn expected_len(&self) -> usize {
        let sources = if self.source == PatternSource::Both {
            2
        } else {
            1
        };
        sources * self.kinds.len() * self.bin_sizes.iter().sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub descriptor: FeatureDescriptor,
}

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_matrix(matrix: &ArrayView2<f64>) -> Result<()> {
    if matrix.is_empty() {
        return Err(Error::param("cannot build a histogram of an empty matrix"));
    }
    Ok(())
}

fn check_bins(bins: usize) -> Result<()> {
    if !(MIN_BINS..=MAX_BINS).contains(&bins) {
        return Err(Error::param(format!(
            "bin count {bins} outside [{MIN_BINS}, {MAX_BINS}]"
        )));
    }
    Ok(())
}

pub fn global_histogram(matrix: ArrayView2<f64>, bins: usize, domain: Domain) -> Result<Histogram> {
    check_matrix(&matrix)?;
    let mut counts = vec![0u64; bins];
    for &v in matrix.iter() {
        counts[bin_index(v, bins, domain)?] += 1;
    }
    Ok(Histogram::from_counts(&counts, domain))
}

/// Average of the per-degree histograms, `degrees[i]` being the degree of
/// the node in column `i`.
pub fn degree_histogram_mean(
    matrix: ArrayView2<f64>,
    degrees: &[usize],
    bins: usize,
    domain: Domain,
    weighting: DegreeWeighting,
) -> Result<Histogram> {
    check_matrix(&matrix)?;
    check_degrees(&matrix, degrees)?;
    let mut per_degree: BTreeMap<usize, (usize, Vec<u64>)> = BTreeMap::new();
    for (col, &k) in matrix.axis_iter(Axis(1)).zip(degrees) {
        let entry = per_degree.entry(k).or_insert_with(|| (0, vec![0; bins]));
        entry.0 += 1;
        for &v in col {
            entry.1[bin_index(v, bins, domain)?] += 1;
        }
    }
    Ok(average_degree_classes(
        per_degree.values(),
        degrees.len(),
        bins,
        domain,
        weighting,
    ))
}

fn check_degrees(matrix: &ArrayView2<f64>, degrees: &[usize]) -> Result<()> {
    if degrees.len() != matrix.ncols() {
        return Err(Error::param(format!(
            "{} degrees for {} pattern columns",
            degrees.len(),
            matrix.ncols()
        )));
    }
    Ok(())
}

fn average_degree_classes<'a>(
    classes: impl Iterator<Item = &'a (usize, Vec<u64>)>,
    nodes: usize,
    bins: usize,
    domain: Domain,
    weighting: DegreeWeighting,
) -> Histogram {
    let mut mean = vec![0.0; bins];
    let mut classes_seen = 0usize;
    for (members, counts) in classes {
        let h = Histogram::from_counts(counts, domain);
        let w = match weighting {
            DegreeWeighting::Unweighted => 1.0,
            DegreeWeighting::NodeWeighted => *members as f64 / nodes as f64,
        };
        for (m, b) in mean.iter_mut().zip(&h.bins) {
            *m += w * b;
        }
        classes_seen += 1;
    }
    if weighting == DegreeWeighting::Unweighted {
        for m in &mut mean {
            *m /= classes_seen as f64;
        }
    }
    Histogram { bins: mean, domain }
}

/// Average of the per-row histograms.
pub fn temporal_histogram_mean(
    matrix: ArrayView2<f64>,
    bins: usize,
    domain: Domain,
) -> Result<Histogram> {
    check_matrix(&matrix)?;
    let mut mean = vec![0.0; bins];
    let mut counts = vec![0u64; bins];
    for row in matrix.rows() {
        counts.iter_mut().for_each(|c| *c = 0);
        for &v in row {
            counts[bin_index(v, bins, domain)?] += 1;
        }
        for (m, &c) in mean.iter_mut().zip(&counts) {
            *m += c as f64 / row.len() as f64;
        }
    }
    let rows = matrix.nrows() as f64;
    mean.iter_mut().for_each(|m| *m /= rows);
    Ok(Histogram { bins: mean, domain })
}

/// The three histograms of one matrix at one bin count, built in a single
/// pass over the entries.
fn histogram_triplet(
    matrix: ArrayView2<f64>,
    degrees: &[usize],
    bins: usize,
    domain: Domain,
    weighting: DegreeWeighting,
) -> Result<[Histogram; 3]> {
    check_matrix(&matrix)?;
    check_degrees(&matrix, degrees)?;
    let mut class_of = Vec::with_capacity(degrees.len());
    let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in degrees {
        let next = class_index.len();
        class_of.push(*class_index.entry(k).or_insert(next));
    }
    let mut per_class: Vec<(usize, Vec<u64>)> = vec![(0, vec![0; bins]); class_index.len()];
    for &c in &class_of {
        per_class[c].0 += 1;
    }
    let mut global = vec![0u64; bins];
    let mut row_counts = vec![0u64; bins];
    let mut temporal = vec![0.0; bins];
    let cols = matrix.ncols() as f64;
    for row in matrix.rows() {
        row_counts.iter_mut().for_each(|c| *c = 0);
        for (&v, &c) in row.iter().zip(&class_of) {
            let b = bin_index(v, bins, domain)?;
            row_counts[b] += 1;
            per_class[c].1[b] += 1;
        }
        for b in 0..bins {
            global[b] += row_counts[b];
            temporal[b] += row_counts[b] as f64 / cols;
        }
    }
    let rows = matrix.nrows() as f64;
    temporal.iter_mut().for_each(|t| *t /= rows);
    // Average in ascending degree order, matching degree_histogram_mean.
    let ordered = class_index.values().map(|&c| &per_class[c]);
    let degree = average_degree_classes(ordered, degrees.len(), bins, domain, weighting);
    Ok([
        Histogram::from_counts(&global, domain),
        degree,
        Histogram {
            bins: temporal,
            domain,
        },
    ])
}

const ALL_KINDS: [HistogramKind; 3] = [
    HistogramKind::Global,
    HistogramKind::DegreeMean,
    HistogramKind::TemporalMean,
];

fn source_of(domain: Domain) -> PatternSource {
    match domain {
        Domain::Signed => PatternSource::SdTep,
        _ => PatternSource::DTep,
    }
}

/// `[global, degree mean, temporal mean]` at one bin count; length `3 L`.
pub fn upsilon(
    matrix: ArrayView2<f64>,
    degrees: &[usize],
    bins: usize,
    domain: Domain,
) -> Result<FeatureVector> {
    upsilon_with(matrix, degrees, bins, domain, DegreeWeighting::default())
}

pub fn upsilon_with(
    matrix: ArrayView2<f64>,
    degrees: &[usize],
    bins: usize,
    domain: Domain,
    weighting: DegreeWeighting,
) -> Result<FeatureVector> {
    check_bins(bins)?;
    let parts = histogram_triplet(matrix, degrees, bins, domain, weighting)?;
    Ok(FeatureVector {
        values: parts.iter().flat_map(|h| h.bins.iter().copied()).collect(),
        descriptor: FeatureDescriptor {
            source: source_of(domain),
            kinds: ALL_KINDS.to_vec(),
            bin_sizes: vec![bins],
        },
    })
}

/// Bin counts in canonical ascending order without repeats.
pub fn canonical_bin_sizes(bin_sizes: &[usize]) -> Result<Vec<usize>> {
    if bin_sizes.is_empty() {
        return Err(Error::param("at least one bin count is required"));
    }
    let mut sizes = bin_sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    for &b in &sizes {
        check_bins(b)?;
    }
    Ok(sizes)
}

/// Concatenated [`upsilon`] vectors over ascending bin counts.
pub fn theta(
    matrix: ArrayView2<f64>,
    degrees: &[usize],
    bin_sizes: &[usize],
    domain: Domain,
) -> Result<FeatureVector> {
    theta_with(
        matrix,
        degrees,
        bin_sizes,
        domain,
        DegreeWeighting::default(),
    )
}

pub fn theta_with(
    matrix: ArrayView2<f64>,
    degrees: &[usize],
    bin_sizes: &[usize],
    domain: Domain,
    weighting: DegreeWeighting,
) -> Result<FeatureVector> {
    let sizes = canonical_bin_sizes(bin_sizes)?;
    let mut values = Vec::with_capacity(3 * sizes.iter().sum::<usize>());
    for &b in &sizes {
        values.extend(upsilon_with(matrix, degrees, b, domain, weighting)?.values);
    }
    Ok(FeatureVector {
        values,
        descriptor: FeatureDescriptor {
            source: source_of(domain),
            kinds: ALL_KINDS.to_vec(),
            bin_sizes: sizes,
        },
    })
}

/// `[theta(D-TEP), theta(SD-TEP)]` after dropping the record's transient
/// rows; length `6 * sum(L)`.
pub fn omega(
    record: &EvolutionRecord,
    degrees: &[usize],
    bin_sizes: &[usize],
) -> Result<FeatureVector> {
    omega_with(record, degrees, bin_sizes, DegreeWeighting::default())
}

pub fn omega_with(
    record: &EvolutionRecord,
    degrees: &[usize],
    bin_sizes: &[usize],
    weighting: DegreeWeighting,
) -> Result<FeatureVector> {
    let sd = record.sd_tep();
    let dtep = discard_transient(record.dtep.view(), record.transient)?;
    let sd = discard_transient(sd.view(), record.transient)?;
    let mut d_part = theta_with(dtep, degrees, bin_sizes, Domain::Unit, weighting)?;
    let s_part = theta_with(sd, degrees, bin_sizes, Domain::Signed, weighting)?;
    d_part.values.extend(s_part.values);
    d_part.descriptor.source = PatternSource::Both;
    Ok(d_part)
}

/// Codes of all length-`width` windows sliding down each column of a binary
/// pattern; the earliest row is the most significant bit.
fn window_codes(tep: ArrayView2<u8>, width: usize) -> Result<Vec<(usize, usize)>> {
    if !(1..=MAX_PATTERN_WIDTH).contains(&width) {
        return Err(Error::param(format!(
            "window width {width} outside 1..={MAX_PATTERN_WIDTH}"
        )));
    }
    if width > tep.nrows() {
        return Err(Error::param(format!(
            "window width {width} exceeds the {} pattern rows",
            tep.nrows()
        )));
    }
    let mask = (1usize << width) - 1;
    let mut out = Vec::with_capacity(tep.ncols() * (tep.nrows() + 1 - width));
    for (node, col) in tep.axis_iter(Axis(1)).enumerate() {
        let mut code = 0usize;
        for (t, &bit) in col.iter().enumerate() {
            code = ((code << 1) | usize::from(bit & 1)) & mask;
            if t + 1 >= width {
                out.push((node, code));
            }
        }
    }
    Ok(out)
}

/// Normalized histogram of `width`-bit window codes over all columns;
/// `2^width` bins.
pub fn binary_pattern_histogram(tep: ArrayView2<u8>, width: usize) -> Result<Histogram> {
    let mut counts = vec![0u64; 1 << width.min(MAX_PATTERN_WIDTH)];
    for (_, code) in window_codes(tep, width)? {
        counts[code] += 1;
    }
    Ok(Histogram::from_counts(&counts, Domain::BinaryPattern))
}

/// Unweighted mean over realized degrees of per-degree window-code histograms.
pub fn binary_pattern_degree_histogram(
    tep: ArrayView2<u8>,
    degrees: &[usize],
    width: usize,
) -> Result<Histogram> {
    if degrees.len() != tep.ncols() {
        return Err(Error::param(format!(
            "{} degrees for {} pattern columns",
            degrees.len(),
            tep.ncols()
        )));
    }
    let bins = 1 << width.min(MAX_PATTERN_WIDTH);
    let mut per_degree: BTreeMap<usize, (usize, Vec<u64>)> = BTreeMap::new();
    for (node, code) in window_codes(tep, width)? {
        per_degree
            .entry(degrees[node])
            .or_insert_with(|| (0, vec![0; bins]))
            .1[code] += 1;
    }
    Ok(average_degree_classes(
        per_degree.values(),
        degrees.len(),
        bins,
        Domain::BinaryPattern,
        DegreeWeighting::Unweighted,
    ))
}

/// Binary-pattern baseline features: global and degree-mean window-code
/// histograms of the post-transient TEP.
pub fn binary_pattern_features(
    record: &EvolutionRecord,
    degrees: &[usize],
    width: usize,
) -> Result<Vec<f64>> {
    let tep = discard_transient(record.tep.view(), record.transient)?;
    let mut values = binary_pattern_histogram(tep, width)?.bins;
    values.extend(binary_pattern_degree_histogram(tep, degrees, width)?.bins);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::{array, Array2};

    #[test]
    fn bin_index_examples() {
        assert_eq!(bin_index(0.25, 4, Domain::Unit).unwrap(), 1);
        assert_eq!(bin_index(1.0, 4, Domain::Unit).unwrap(), 3);
        assert_eq!(bin_index(0.0, 4, Domain::Unit).unwrap(), 0);
        assert_eq!(bin_index(-1.0, 4, Domain::Signed).unwrap(), 0);
        assert_eq!(bin_index(1.0, 4, Domain::Signed).unwrap(), 3);
        assert_eq!(bin_index(0.0, 4, Domain::Signed).unwrap(), 2);
        assert!(matches!(
            bin_index(1.5, 4, Domain::Unit),
            Err(Error::Range { .. })
        ));
        assert!(bin_index(-0.1, 4, Domain::Unit).is_err());
        assert!(bin_index(f64::NAN, 4, Domain::Unit).is_err());
    }

    #[test]
    fn bin_edges_survive_multiplication_rounding() {
        // 0.29 * 100 rounds to 28.999999999999996.
        assert_eq!(bin_index(0.29, 100, Domain::Unit).unwrap(), 29);
        for bins in [3, 7, 40, 100] {
            for j in 0..bins {
                assert_eq!(
                    bin_index(j as f64 / bins as f64, bins, Domain::Unit).unwrap(),
                    j
                );
            }
        }
    }

    #[test]
    fn global_examples() {
        let m = array![[0.0, 0.25], [0.5, 1.0]];
        assert_eq!(
            global_histogram(m.view(), 4, Domain::Unit).unwrap().bins,
            vec![0.25; 4]
        );
        let c = Array2::from_elem((3, 5), 0.5);
        assert_eq!(
            global_histogram(c.view(), 2, Domain::Unit).unwrap().bins,
            vec![0.0, 1.0]
        );
        let empty = Array2::<f64>::zeros((0, 3));
        assert!(global_histogram(empty.view(), 2, Domain::Unit).is_err());
    }

    #[test]
    fn global_is_invariant_to_column_duplication() {
        let m = array![[0.1, 0.7, 0.3], [0.9, 0.2, 0.5]];
        let doubled = ndarray::concatenate(Axis(1), &[m.view(), m.view()]).unwrap();
        assert_eq!(
            global_histogram(m.view(), 5, Domain::Unit).unwrap(),
            global_histogram(doubled.view(), 5, Domain::Unit).unwrap()
        );
    }

    #[test]
    fn degree_mean_averages_classes() {
        let m = array![[0.1, 0.9, 0.8], [0.2, 0.6, 0.7]];
        let h = degree_histogram_mean(
            m.view(),
            &[1, 3, 3],
            2,
            Domain::Unit,
            DegreeWeighting::Unweighted,
        )
        .unwrap();
        assert_eq!(h.bins, vec![0.5, 0.5]);
        let w = degree_histogram_mean(
            m.view(),
            &[1, 3, 3],
            2,
            Domain::Unit,
            DegreeWeighting::NodeWeighted,
        )
        .unwrap();
        assert!((w.bins[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!(degree_histogram_mean(
            m.view(),
            &[1, 3],
            2,
            Domain::Unit,
            DegreeWeighting::Unweighted
        )
        .is_err());
    }

    #[test]
    fn degree_mean_on_regular_graph_equals_global() {
        let m = array![[0.1, 0.9, 0.3], [0.2, 0.6, 0.75]];
        let g = global_histogram(m.view(), 4, Domain::Unit).unwrap();
        let d = degree_histogram_mean(
            m.view(),
            &[4, 4, 4],
            4,
            Domain::Unit,
            DegreeWeighting::Unweighted,
        )
        .unwrap();
        assert_eq!(g, d);
    }

    #[test]
    fn temporal_mean_examples() {
        let row = array![[0.1, 0.5, 0.95]];
        assert_eq!(
            temporal_histogram_mean(row.view(), 3, Domain::Unit).unwrap(),
            global_histogram(row.view(), 3, Domain::Unit).unwrap()
        );
        let c = Array2::from_elem((4, 3), -0.2);
        let t = temporal_histogram_mean(c.view(), 5, Domain::Signed).unwrap();
        assert_eq!(t.bins.iter().filter(|&&b| b != 0.0).count(), 1);
        assert!((t.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn upsilon_and_theta_lengths() {
        let m = Array2::from_shape_fn((6, 5), |(t, i)| ((t * 5 + i) % 7) as f64 / 6.0);
        let deg = [2, 2, 2, 2, 2];
        let u = upsilon(m.view(), &deg, 20, Domain::Unit).unwrap();
        assert_eq!(u.len(), 60);
        assert_eq!(u.values[..20], u.values[20..40]);
        let t = theta(m.view(), &deg, &[100, 40], Domain::Unit).unwrap();
        assert_eq!(t.len(), 420);
        assert_eq!(t.descriptor.bin_sizes, vec![40, 100]);
        assert_eq!(t, theta(m.view(), &deg, &[40, 100], Domain::Unit).unwrap());
        let single = theta(m.view(), &deg, &[20], Domain::Unit).unwrap();
        assert_eq!(single.values, u.values);
        assert!(theta(m.view(), &deg, &[], Domain::Unit).is_err());
        assert!(theta(m.view(), &deg, &[1], Domain::Unit).is_err());
        assert!(theta(m.view(), &deg, &[5000], Domain::Unit).is_err());
    }

    #[test]
    fn triplet_matches_separate_histograms() {
        let m = Array2::from_shape_fn((7, 6), |(t, i)| {
            (((t * 13 + i * 7) % 11) as f64 / 10.0) * 2.0 - 1.0
        });
        let deg = [1, 3, 1, 2, 3, 3];
        for weighting in [DegreeWeighting::Unweighted, DegreeWeighting::NodeWeighted] {
            let [g, d, t] =
                histogram_triplet(m.view(), &deg, 9, Domain::Signed, weighting).unwrap();
            assert_eq!(g, global_histogram(m.view(), 9, Domain::Signed).unwrap());
            assert_eq!(
                d,
                degree_histogram_mean(m.view(), &deg, 9, Domain::Signed, weighting).unwrap()
            );
            let tm = temporal_histogram_mean(m.view(), 9, Domain::Signed).unwrap();
            for (a, b) in t.bins.iter().zip(&tm.bins) {
                assert!((a - b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn binary_patterns() {
        let tep = array![[0u8], [1], [0]];
        let h = binary_pattern_histogram(tep.view(), 3).unwrap();
        assert_eq!(h.len(), 8);
        assert_eq!(h.bins[2], 1.0);
        let dead = Array2::<u8>::zeros((10, 4));
        assert_eq!(
            binary_pattern_histogram(dead.view(), 4).unwrap().bins[0],
            1.0
        );
        assert!(binary_pattern_histogram(dead.view(), 11).is_err());
        assert!(binary_pattern_histogram(dead.view(), 0).is_err());
    }

    #[test]
    fn binary_pattern_window_count() {
        // A column of 6 rows has 6 - 3 + 1 = 4 windows of width 3.
        let tep = array![[1u8], [1], [0], [1], [0], [0]];
        let codes: Vec<usize> = window_codes(tep.view(), 3)
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert_eq!(codes, vec![0b110, 0b101, 0b010, 0b100]);
    }

    #[test]
    fn binary_pattern_degree_mean() {
        let tep = array![[0u8, 1], [0, 1]];
        let h = binary_pattern_degree_histogram(tep.view(), &[1, 2], 1).unwrap();
        assert_eq!(h.bins, vec![0.5, 0.5]);
    }
}
