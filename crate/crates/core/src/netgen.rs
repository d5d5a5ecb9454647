//! Synthetic network generators, edge-noise perturbation and labeled
//! dataset assembly.
//!
//! All generators are pure functions of their arguments, seed included.
//! Fractional edge counts are rounded half-up.

use std::collections::{BTreeSet, HashSet};

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::seed::{derive_seed, rng_from_seed, Rng64};

pub const DEFAULT_REWIRE_PROBABILITY: f64 = 0.1;
pub const DEFAULT_WAXMAN_ALPHA: f64 = 0.15;

/// Network model with its model-specific parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    /// `G(n, M)` with `M = round(n k / 2)`.
    ErdosRenyi,
    WattsStrogatz {
        #[serde(default = "default_rewire")]
        p_rewire: f64,
    },
    /// Growth with attachment probability proportional to `k_i^alpha`.
    BarabasiAlbert { alpha: f64 },
    /// Waxman geographic model; `beta = None` calibrates it to the target
    /// mean degree.
    Waxman {
        #[serde(default = "default_waxman_alpha")]
        alpha: f64,
        #[serde(default)]
        beta: Option<f64>,
    },
    /// Each arrival links to both endpoints of a uniformly chosen edge.
    DorogovtsevMendes,
}

fn default_rewire() -> f64 {
    DEFAULT_REWIRE_PROBABILITY
}

fn default_waxman_alpha() -> f64 {
    DEFAULT_WAXMAN_ALPHA
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::ErdosRenyi => "erdos-renyi",
            Model::WattsStrogatz { .. } => "watts-strogatz",
            Model::BarabasiAlbert { .. } => "barabasi-albert",
            Model::Waxman { .. } => "waxman",
            Model::DorogovtsevMendes => "dorogovtsev-mendes",
        }
    }

    pub fn uses_mean_degree(&self) -> bool {
        !matches!(self, Model::DorogovtsevMendes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub model: Model,
    pub n: usize,
    pub k_avg: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Network> {
        if self.n < 4 && !matches!(self.model, Model::DorogovtsevMendes) {
            return Err(Error::param(format!(
                "need at least 4 nodes, got {}",
                self.n
            )));
        }
        if self.model.uses_mean_degree() && !(self.k_avg > 0.0 && self.k_avg < self.n as f64) {
            return Err(Error::param(format!(
                "mean degree {} must lie in (0, {})",
                self.k_avg, self.n
            )));
        }
        match self.model {
            Model::ErdosRenyi => gen_erdos_renyi(self.n, self.k_avg, self.seed),
            Model::WattsStrogatz { p_rewire } => {
                let k = self.k_avg.round();
                if (k - self.k_avg).abs() > 1e-9 {
                    return Err(Error::param(format!(
                        "small-world degree {} is not an integer",
                        self.k_avg
                    )));
                }
                gen_watts_strogatz(self.n, k as usize, p_rewire, self.seed)
            }
            Model::BarabasiAlbert { alpha } => {
                gen_barabasi_albert(self.n, self.k_avg, alpha, self.seed)
            }
            Model::Waxman { alpha, beta } => gen_waxman(self.n, self.k_avg, alpha, beta, self.seed),
            Model::DorogovtsevMendes => gen_dorogovtsev_mendes(self.n, self.seed),
        }
    }
}

pub(crate) fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

fn max_edges(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Maps a linear index over the strict upper triangle to `(i, j)` with
/// `i < j`, enumerating column by column: index = j (j - 1) / 2 + i.
fn pair_from_index(p: usize) -> (u32, u32) {
    let mut j = ((1.0 + (1.0 + 8.0 * p as f64).sqrt()) / 2.0).floor() as usize;
    while j * (j - 1) / 2 > p {
        j -= 1;
    }
    while (j + 1) * j / 2 <= p {
        j += 1;
    }
    let i = p - j * (j - 1) / 2;
    (i as u32, j as u32)
}

/// `G(n, M)` random graph with `M = round(n k_avg / 2)` edges drawn
/// uniformly without replacement.
pub fn gen_erdos_renyi(n: usize, k_avg: f64, seed: u64) -> Result<Network> {
    let m = round_half_up(n as f64 * k_avg / 2.0);
    let max = max_edges(n);
    if m > max {
        return Err(Error::param(format!(
            "{m} edges exceed the maximum {max} for {n} nodes"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(u32, u32)> = index::sample(&mut rng, max, m)
        .into_iter()
        .map(pair_from_index)
        .collect();
    edges.sort_unstable();
    Ok(Network::from_canonical_edges(n, edges))
}

/// Ring lattice with `k` neighbors per node, each lattice edge rewired with
/// probability `p_rewire` to a uniformly chosen new endpoint.
pub fn gen_watts_strogatz(n: usize, k: usize, p_rewire: f64, seed: u64) -> Result<Network> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::param(format!(
            "small-world degree must be even and >= 2, got {k}"
        )));
    }
    if k >= n {
        return Err(Error::param(format!(
            "small-world degree {k} must be below n = {n}"
        )));
    }
    if !(0.0..=1.0).contains(&p_rewire) {
        return Err(Error::param(format!(
            "rewiring probability {p_rewire} outside [0, 1]"
        )));
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for i in 0..n {
        for j in 1..=k / 2 {
            let v = (i + j) % n;
            adj[i].insert(v);
            adj[v].insert(i);
        }
    }
    let mut rng = rng_from_seed(seed);
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(p_rewire) || adj[u].len() >= n - 1 || !adj[u].contains(&v) {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    Ok(from_adjacency_sets(n, &adj))
}

fn from_adjacency_sets(n: usize, adj: &[BTreeSet<usize>]) -> Network {
    let mut edges = Vec::new();
    for (u, set) in adj.iter().enumerate() {
        for &v in set.range(u + 1..) {
            edges.push((u as u32, v as u32));
        }
    }
    Network::from_canonical_edges(n, edges)
}

/// Growth with nonlinear preferential attachment.
///
/// Starts from a clique on `m + 1` nodes, `m = round(k_avg / 2)`. Every
/// arriving node links to `m` distinct existing nodes drawn without
/// replacement with probability proportional to `degree^alpha`.
pub fn gen_barabasi_albert(n: usize, k_avg: f64, alpha: f64, seed: u64) -> Result<Network> {
    let m = round_half_up(k_avg / 2.0);
    if m < 1 {
        return Err(Error::param(format!(
            "mean degree {k_avg} gives zero edges per arrival"
        )));
    }
    if m + 1 > n {
        return Err(Error::param(format!(
            "seed clique of {} nodes exceeds n = {n}",
            m + 1
        )));
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::param(format!(
            "attachment exponent {alpha} must be finite and >= 0"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m * n);
    let mut degree = vec![0usize; n];
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u as u32, v as u32));
        }
    }
    degree[..=m].fill(m);
    let attractiveness = |d: usize| (d as f64).powf(alpha);
    let mut weights: Vec<f64> = (0..n)
        .map(|i| if i <= m { attractiveness(m) } else { 0.0 })
        .collect();
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        for _ in 0..m {
            let total: f64 = weights[..v].iter().sum();
            let mut r = rng.gen::<f64>() * total;
            let mut pick = None;
            for (i, &w) in weights[..v].iter().enumerate() {
                if w <= 0.0 {
                    continue;
                }
                pick = Some(i);
                if r < w {
                    break;
                }
                r -= w;
            }
            let pick = pick.expect("at least m positive weights among existing nodes");
            targets.push(pick);
            // Excluded from the remaining draws of this arrival.
            weights[pick] = 0.0;
        }
        for &t in &targets {
            edges.push((t as u32, v as u32));
            degree[t] += 1;
            weights[t] = attractiveness(degree[t]);
        }
        degree[v] = m;
        weights[v] = attractiveness(m);
    }
    edges.sort_unstable();
    Ok(Network::from_canonical_edges(n, edges))
}

/// Waxman geographic graph on uniform points in the unit square.
///
/// Pairs connect with probability `beta * exp(-d / (alpha * d_max))`, where
/// `d_max` is the largest pairwise distance. Without an explicit `beta` the
/// expected edge count is matched to `round(n k_avg / 2)`: the expectation is
/// linear in `beta`, so the calibrated value is exact.
pub fn gen_waxman(
    n: usize,
    k_avg: f64,
    alpha: f64,
    beta: Option<f64>,
    seed: u64,
) -> Result<Network> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::param(format!(
            "Waxman alpha {alpha} must be positive"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    let dist = |a: usize, b: usize| {
        let (dx, dy) = (points[a].0 - points[b].0, points[a].1 - points[b].1);
        (dx * dx + dy * dy).sqrt()
    };
    let mut d_max = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            d_max = d_max.max(dist(i, j));
        }
    }
    if d_max <= 0.0 {
        return Err(Error::param("Waxman points are all coincident".to_string()));
    }
    let scale = alpha * d_max;
    let beta = match beta {
        Some(b) if (0.0..=1.0).contains(&b) => b,
        Some(b) => return Err(Error::param(format!("Waxman beta {b} outside [0, 1]"))),
        None => {
            let target = round_half_up(n as f64 * k_avg / 2.0) as f64;
            let mut expected_at_one = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    expected_at_one += (-dist(i, j) / scale).exp();
                }
            }
            let b = target / expected_at_one;
            if !(b.is_finite() && b <= 1.0) {
                return Err(Error::param(format!(
                    "cannot reach mean degree {k_avg} with alpha {alpha}: beta would be {b:.3}"
                )));
            }
            b
        }
    };
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = beta * (-dist(i, j) / scale).exp();
            if rng.gen::<f64>() < p {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Ok(Network::from_canonical_edges(n, edges))
}

/// Starts from a triangle; each arriving node connects to both endpoints of
/// a uniformly chosen existing edge. Ends with `3 + 2 (n - 3)` edges.
pub fn gen_dorogovtsev_mendes(n: usize, seed: u64) -> Result<Network> {
    if n < 3 {
        return Err(Error::param(format!(
            "Dorogovtsev-Mendes needs n >= 3, got {n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (1, 2)];
    edges.reserve(2 * (n - 3));
    for v in 3..n as u32 {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, v));
        edges.push((b, v));
    }
    edges.sort_unstable();
    Ok(Network::from_canonical_edges(n, edges))
}

/// Removes `a = round(sigma M / 2)` uniformly chosen edges and adds `a`
/// uniformly chosen pairs that are not edges of `net`. The edge count is
/// preserved and no removed pair is re-added.
pub fn perturb(net: &Network, sigma: f64, seed: u64) -> Result<Network> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::param(format!(
            "noise fraction {sigma} outside (0, 1]"
        )));
    }
    let m = net.edge_count();
    let a = round_half_up(sigma * m as f64 / 2.0);
    if a == 0 {
        return Ok(net.clone());
    }
    let n = net.node_count();
    let non_edges = max_edges(n) - m;
    if non_edges < a {
        return Err(Error::param(format!(
            "only {non_edges} non-edges available, need {a}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let removed: HashSet<usize> = index::sample(&mut rng, m, a).into_iter().collect();
    let added = sample_non_edges(net, a, &mut rng);
    let mut edges: Vec<(u32, u32)> = net
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, &e)| e)
        .chain(added)
        .collect();
    edges.sort_unstable();
    Ok(Network::from_canonical_edges(n, edges))
}

fn sample_non_edges(net: &Network, count: usize, rng: &mut Rng64) -> Vec<(u32, u32)> {
    let n = net.node_count();
    let max = max_edges(n);
    let non_edges = max - net.edge_count();
    // Rejection sampling is cheap while non-edges dominate the pair space.
    if non_edges * 4 < max {
        let pool: Vec<(u32, u32)> = (0..max)
            .map(pair_from_index)
            .filter(|&(u, v)| !net.has_edge(u as usize, v as usize))
            .collect();
        return index::sample(rng, pool.len(), count)
            .into_iter()
            .map(|i| pool[i])
            .collect();
    }
    let mut chosen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (u, v) = pair_from_index(rng.gen_range(0..max));
        if !net.has_edge(u as usize, v as usize) && chosen.insert((u, v)) {
            out.push((u, v));
        }
    }
    out
}

/// One class of a dataset: a model evaluated over a grid of node counts and
/// mean degrees, `samples` networks per grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub label: String,
    #[serde(flatten)]
    pub model: Model,
    pub nodes: Vec<usize>,
    #[serde(default)]
    pub mean_degree: Vec<f64>,
    pub samples: usize,
}

impl ClassSpec {
    /// `(n, k_avg)` grid cells in generation order: node count major.
    pub fn combinations(&self) -> Vec<(usize, f64)> {
        let ks: Vec<f64> = if self.model.uses_mean_degree() {
            self.mean_degree.clone()
        } else {
            vec![0.0]
        };
        self.nodes
            .iter()
            .flat_map(|&n| ks.iter().map(move |&k| (n, k)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub seed: u64,
    pub classes: Vec<ClassSpec>,
    pub noise_sigma: Option<f64>,
}

impl DatasetSpec {
    pub fn validate(&self) -> Result<()> {
        if self.classes.len() < 2 {
            return Err(Error::param("a dataset needs at least 2 classes"));
        }
        let mut labels = HashSet::new();
        for class in &self.classes {
            if !labels.insert(class.label.as_str()) {
                return Err(Error::param(format!(
                    "duplicate class label `{}`",
                    class.label
                )));
            }
            if class.samples == 0 || class.nodes.is_empty() {
                return Err(Error::param(format!(
                    "class `{}` generates no samples",
                    class.label
                )));
            }
            if class.model.uses_mean_degree() && class.mean_degree.is_empty() {
                return Err(Error::param(format!(
                    "class `{}` lists no mean degree",
                    class.label
                )));
            }
        }
        if let Some(s) = self.noise_sigma {
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::param(format!("noise fraction {s} outside (0, 1]")));
            }
        }
        Ok(())
    }

    pub fn sample_count(&self) -> usize {
        self.classes
            .iter()
            .map(|c| c.combinations().len() * c.samples)
            .sum()
    }
}

/// A generated network with its provenance.
#[derive(Debug, Clone)]
pub struct LabeledNetwork {
    pub label: String,
    pub class_index: usize,
    /// Position within its class across all grid cells.
    pub sample_index: usize,
    pub model: Model,
    pub n: usize,
    pub k_avg: f64,
    pub seed: u64,
    /// Noise fraction applied to this copy; 0 for originals.
    pub sigma: f64,
    pub network: Network,
}

/// Per-sample generator seed: `derive_seed(master, "class/<c>", i)`.
pub fn sample_seed(master: u64, class_index: usize, sample_index: usize) -> u64 {
    derive_seed(master, &format!("class/{class_index}"), sample_index as u64)
}

/// Per-sample perturbation seed for noise fraction `sigma`.
pub fn noise_seed(master: u64, sigma: f64, class_index: usize, sample_index: usize) -> u64 {
    derive_seed(
        master,
        &format!("noise/{sigma}/class/{class_index}"),
        sample_index as u64,
    )
}

/// Generates every sample of `spec` in class, grid-cell, sample order.
/// Samples are built in parallel; the result does not depend on the pool.
pub fn gen_dataset(spec: &DatasetSpec) -> Result<Vec<LabeledNetwork>> {
    spec.validate()?;
    let mut jobs = Vec::with_capacity(spec.sample_count());
    for (c, class) in spec.classes.iter().enumerate() {
        let mut i = 0;
        for (n, k) in class.combinations() {
            for _ in 0..class.samples {
                jobs.push((c, i, n, k));
                i += 1;
            }
        }
    }
    let mut samples: Vec<LabeledNetwork> = jobs
        .into_par_iter()
        .map(|(c, i, n, k)| {
            let class = &spec.classes[c];
            let seed = sample_seed(spec.seed, c, i);
            let network = GeneratorSpec {
                model: class.model,
                n,
                k_avg: k,
                seed,
            }
            .generate()?;
            Ok(LabeledNetwork {
                label: class.label.clone(),
                class_index: c,
                sample_index: i,
                model: class.model,
                n,
                k_avg: k,
                seed,
                sigma: 0.0,
                network,
            })
        })
        .collect::<Result<_>>()?;
    if let Some(sigma) = spec.noise_sigma {
        samples = perturb_dataset(&samples, sigma, spec.seed)?;
    }
    Ok(samples)
}

/// Noisy copies of `samples`, each perturbed with its own derived stream.
pub fn perturb_dataset(
    samples: &[LabeledNetwork],
    sigma: f64,
    master: u64,
) -> Result<Vec<LabeledNetwork>> {
    samples
        .par_iter()
        .map(|s| {
            let seed = noise_seed(master, sigma, s.class_index, s.sample_index);
            Ok(LabeledNetwork {
                network: perturb(&s.network, sigma, seed)?,
                sigma,
                ..s.clone()
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_decodes_upper_triangle() {
        let n = 7;
        let decoded: Vec<(u32, u32)> = (0..max_edges(n)).map(pair_from_index).collect();
        let mut expected = Vec::new();
        for j in 1..n as u32 {
            for i in 0..j {
                expected.push((i, j));
            }
        }
        assert_eq!(decoded, expected);
    }

    #[test]
    fn erdos_renyi_hits_edge_count_exactly() {
        let g = gen_erdos_renyi(500, 8.0, 3).unwrap();
        g.validate().unwrap();
        assert_eq!(g.edge_count(), 2000);
        assert_eq!(g.mean_degree(), 8.0);
    }

    #[test]
    fn erdos_renyi_dense_limit_is_complete() {
        let g = gen_erdos_renyi(4, 3.0, 11).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert!(gen_erdos_renyi(4, 3.5, 11).is_err());
    }

    #[test]
    fn erdos_renyi_is_deterministic() {
        assert_eq!(
            gen_erdos_renyi(200, 6.0, 5).unwrap(),
            gen_erdos_renyi(200, 6.0, 5).unwrap()
        );
        assert_ne!(
            gen_erdos_renyi(200, 6.0, 5).unwrap(),
            gen_erdos_renyi(200, 6.0, 6).unwrap()
        );
    }

    #[test]
    fn watts_strogatz_without_rewiring_is_a_ring_lattice() {
        let g = gen_watts_strogatz(50, 6, 0.0, 1).unwrap();
        assert!(g.degrees().iter().all(|&d| d == 6));
        assert!(g.has_edge(0, 49) && g.has_edge(0, 3) && !g.has_edge(0, 4));
    }

    #[test]
    fn watts_strogatz_preserves_edge_count() {
        let g = gen_watts_strogatz(500, 8, 0.1, 9).unwrap();
        g.validate().unwrap();
        assert_eq!(g.edge_count(), 2000);
        assert_eq!(g.mean_degree(), 8.0);
        assert_eq!(g, gen_watts_strogatz(500, 8, 0.1, 9).unwrap());
        // Some rewiring actually happened.
        let lattice = gen_watts_strogatz(500, 8, 0.0, 9).unwrap();
        assert_ne!(g, lattice);
    }

    #[test]
    fn watts_strogatz_rejects_odd_degree() {
        assert!(gen_watts_strogatz(50, 5, 0.1, 1).is_err());
        assert!(gen_watts_strogatz(50, 0, 0.1, 1).is_err());
    }

    #[test]
    fn barabasi_albert_edge_count_and_mean_degree() {
        let g = gen_barabasi_albert(1000, 8.0, 1.0, 4).unwrap();
        g.validate().unwrap();
        // m = 4: clique of 5 nodes (10 edges) plus 4 edges for each of 995 arrivals.
        assert_eq!(g.edge_count(), 10 + 4 * 995);
        let k = g.mean_degree();
        assert!((7.5..=8.0).contains(&k), "{k}");
        assert_eq!(g, gen_barabasi_albert(1000, 8.0, 1.0, 4).unwrap());
    }

    #[test]
    fn dorogovtsev_mendes_counts() {
        let t = gen_dorogovtsev_mendes(3, 0).unwrap();
        assert_eq!(t.edges(), &[(0, 1), (0, 2), (1, 2)]);
        let g = gen_dorogovtsev_mendes(1000, 8).unwrap();
        g.validate().unwrap();
        assert_eq!(g.edge_count(), 1997);
        assert_eq!(g, gen_dorogovtsev_mendes(1000, 8).unwrap());
    }

    #[test]
    fn waxman_zero_beta_is_empty_and_calibrated_degree_is_close() {
        let empty = gen_waxman(100, 8.0, 0.15, Some(0.0), 1).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let g = gen_waxman(500, 8.0, 0.15, None, 2).unwrap();
        g.validate().unwrap();
        let k = g.mean_degree();
        assert!((7.6..=8.4).contains(&k), "{k}");
        assert_eq!(g, gen_waxman(500, 8.0, 0.15, None, 2).unwrap());
    }

    #[test]
    fn waxman_unreachable_degree_fails_calibration() {
        assert!(matches!(
            gen_waxman(50, 45.0, 0.01, None, 1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn perturb_keeps_edge_count() {
        let g = gen_erdos_renyi(500, 8.0, 1).unwrap();
        let p = perturb(&g, 0.10, 2).unwrap();
        p.validate().unwrap();
        assert_eq!(p.edge_count(), 2000);
        let before: HashSet<_> = g.edges().iter().copied().collect();
        let after: HashSet<_> = p.edges().iter().copied().collect();
        assert_eq!(before.difference(&after).count(), 100);
        assert_eq!(after.difference(&before).count(), 100);
    }

    #[test]
    fn perturb_with_zero_modifications_is_identity() {
        let g = gen_erdos_renyi(10, 2.0, 1).unwrap();
        // 10 edges: round(0.05 * 10 / 2) = 0.
        assert_eq!(perturb(&g, 0.05, 3).unwrap(), g);
    }

    #[test]
    fn perturb_dense_graph_uses_remaining_non_edges() {
        // K5 minus one edge: a single non-edge.
        let pairs: Vec<_> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .filter(|&p| p != (0, 1))
            .collect();
        let g = Network::from_edges(5, pairs).unwrap();
        let p = perturb(&g, 0.2, 4).unwrap();
        assert!(p.has_edge(0, 1));
        assert_eq!(p.edge_count(), 9);
        assert!(perturb(&g, 0.5, 4).is_err());
    }

    fn four_models(samples: usize) -> DatasetSpec {
        let class = |label: &str, model| ClassSpec {
            label: label.into(),
            model,
            nodes: vec![60],
            mean_degree: vec![4.0, 6.0],
            samples,
        };
        DatasetSpec {
            seed: 17,
            classes: vec![
                class("random", Model::ErdosRenyi),
                class("small-world", Model::WattsStrogatz { p_rewire: 0.1 }),
                class("scale-free", Model::BarabasiAlbert { alpha: 1.0 }),
                class(
                    "geographic",
                    Model::Waxman {
                        alpha: 0.15,
                        beta: None,
                    },
                ),
            ],
            noise_sigma: None,
        }
    }

    #[test]
    fn dataset_counts_and_determinism() {
        let spec = four_models(3);
        let a = gen_dataset(&spec).unwrap();
        assert_eq!(a.len(), 4 * 2 * 3);
        let b = gen_dataset(&spec).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.network, y.network);
            assert_eq!(x.label, y.label);
        }
        let cells: HashSet<(usize, u64)> = a
            .iter()
            .map(|s| (s.class_index, s.k_avg.to_bits()))
            .collect();
        assert_eq!(cells.len(), 8);
    }

    #[test]
    fn dataset_spec_validation() {
        let mut spec = four_models(1);
        spec.classes.truncate(1);
        assert!(gen_dataset(&spec).is_err());
        let mut spec = four_models(1);
        spec.classes[1].label = "random".into();
        assert!(spec.validate().is_err());
    }

    #[test]
    fn noisy_dataset_preserves_edge_counts() {
        let mut spec = four_models(2);
        let clean = gen_dataset(&spec).unwrap();
        spec.noise_sigma = Some(0.3);
        let noisy = gen_dataset(&spec).unwrap();
        for (c, n) in clean.iter().zip(&noisy) {
            assert_eq!(c.network.edge_count(), n.network.edge_count());
            assert_ne!(c.network, n.network);
            assert_eq!(n.sigma, 0.3);
        }
    }
}
