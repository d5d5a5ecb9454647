//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the engine's stepping code: adjacency is a dense
//! boolean matrix, density levels come from exact integer comparisons and
//! rule sets are read off the rule's printed name.

#![allow(dead_code)]

pub struct DenseGraph {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl DenseGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Self { n, adj }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&a| a).count()
    }
}

/// Birth and survival tables parsed from a `B..-S..` name.
pub fn rule_tables(name: &str) -> ([bool; 9], [bool; 9]) {
    let (b, s) = name.split_once('-').expect("canonical rule name");
    let mut born = [false; 9];
    let mut survive = [false; 9];
    for c in b.trim_start_matches('B').chars() {
        born[c.to_digit(10).unwrap() as usize] = true;
    }
    for c in s.trim_start_matches('S').chars() {
        survive[c.to_digit(10).unwrap() as usize] = true;
    }
    (born, survive)
}

/// Largest `x <= 8` with `x / 9 <= alive / k`, decided in integers.
pub fn exact_level(alive: usize, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    (0..=8).rev().find(|&x| 9 * alive >= x * k).unwrap()
}

/// States and densities for `steps` steps, `steps + 1` rows each.
pub fn brute_force_evolve(
    g: &DenseGraph,
    rule_name: &str,
    initial: &[u8],
    steps: usize,
) -> (Vec<Vec<u8>>, Vec<Vec<f64>>) {
    let (born, survive) = rule_tables(rule_name);
    let mut states = vec![initial.to_vec()];
    let mut densities = Vec::new();
    for t in 0..=steps {
        let cur = &states[t];
        let mut rho_row = vec![0.0; g.n];
        let mut next = vec![0u8; g.n];
        for i in 0..g.n {
            let k = g.degree(i);
            let alive = (0..g.n).filter(|&j| g.adj[i][j] && cur[j] == 1).count();
            if k > 0 {
                rho_row[i] = alive as f64 / k as f64;
            }
            let level = exact_level(alive, k);
            let on = if cur[i] == 0 {
                born[level]
            } else {
                survive[level]
            };
            next[i] = u8::from(on);
        }
        densities.push(rho_row);
        if t < steps {
            states.push(next);
        }
    }
    (states, densities)
}

/// Normalized histogram counted one value at a time with an explicit search
/// over bin edges.
pub fn naive_histogram(values: &[f64], bins: usize, signed: bool) -> Vec<f64> {
    let mut counts = vec![0usize; bins];
    for &v in values {
        let u = if signed { (v + 1.0) / 2.0 } else { v };
        let mut b = bins - 1;
        for j in 0..bins {
            let hi = (j + 1) as f64 / bins as f64;
            if u < hi {
                b = j;
                break;
            }
        }
        counts[b] += 1;
    }
    counts
        .iter()
        .map(|&c| c as f64 / values.len() as f64)
        .collect()
}
