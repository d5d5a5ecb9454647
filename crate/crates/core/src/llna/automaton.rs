use std::ops::Deref;

use ndarray::{s, Array2, ArrayView2, Axis};
use rand::Rng;

use super::rule::{Rule, LEVELS};
use crate::error::{Error, Result};
use crate::graph::Network;
use crate::seed::rng_from_seed;

/// Timesteps of evolution used by the reference protocol.
pub const DEFAULT_TIMESTEPS: usize = 350;
/// Rows discarded from the start of each pattern before feature extraction.
pub const DEFAULT_TRANSIENT: usize = 20;

/// Binary cell states, one per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector(Vec<u8>);

impl StateVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::param("state entries must be 0 or 1"));
        }
        Ok(Self(bits))
    }

    pub fn alive_fraction(&self) -> f64 {
        self.0.iter().map(|&b| b as usize).sum::<usize>() as f64 / self.0.len() as f64
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.0
    }
}

impl Deref for StateVector {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

/// Independent fair coin per node.
pub fn init_state(n: usize, seed: u64) -> StateVector {
    let mut rng = rng_from_seed(seed);
    StateVector((0..n).map(|_| u8::from(rng.gen::<bool>())).collect())
}

/// Fraction of alive neighbors of every node; isolated nodes get 0.
pub fn density(net: &Network, state: &[u8]) -> Vec<f64> {
    let mut out = vec![0.0; net.node_count()];
    density_into(net, state, &mut out);
    out
}

fn density_into(net: &Network, state: &[u8], out: &mut [f64]) {
    assert_eq!(
        state.len(),
        net.node_count(),
        "state length must equal node count"
    );
    for (i, rho) in out.iter_mut().enumerate() {
        let adj = net.neighbors(i);
        *rho = if adj.is_empty() {
            0.0
        } else {
            let alive: u32 = adj.iter().map(|&j| u32::from(state[j as usize])).sum();
            f64::from(alive) / adj.len() as f64
        };
    }
}

/// Density level `x` with `x / 9 <= rho < (x + 1) / 9`; `rho = 1` maps to 8.
pub fn density_level(rho: f64) -> usize {
    let top = LEVELS - 1;
    let mut level = ((rho * LEVELS as f64).floor().max(0.0) as usize).min(top);
    while level > 0 && rho < level as f64 / LEVELS as f64 {
        level -= 1;
    }
    while level < top && rho >= (level + 1) as f64 / LEVELS as f64 {
        level += 1;
    }
    level
}

/// Next state of one cell: dead cells are born when their density level is
/// in the birth set, alive cells survive when it is in the survival set.
pub fn transition(state: u8, rho: f64, rule: &Rule) -> u8 {
    let level = density_level(rho);
    let next = if state == 0 {
        rule.born(level)
    } else {
        rule.survives(level)
    };
    u8::from(next)
}

/// Paired state and density patterns of one evolution.
///
/// Both matrices have `T + 1` rows (time) and `N` columns (nodes). Row 0 of
/// `tep` is the initial condition and `dtep[t]` holds the densities observed
/// in state row `t`, the values that produced row `t + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionRecord {
    pub tep: Array2<u8>,
    pub dtep: Array2<f64>,
    pub rule: Rule,
    pub seed: u64,
    pub transient: usize,
}

impl EvolutionRecord {
    pub fn timesteps(&self) -> usize {
        self.tep.nrows() - 1
    }

    /// `dtep * (2 tep - 1)`: densities signed by the cell state.
    pub fn sd_tep(&self) -> Array2<f64> {
        sd_tep(self.tep.view(), self.dtep.view())
    }

    /// Same record with a different number of discarded rows.
    pub fn with_transient(mut self, transient: usize) -> Self {
        self.transient = transient;
        self
    }
}

/// Evolves `net` for `timesteps` steps from a random half-alive state.
pub fn evolve(net: &Network, rule: &Rule, timesteps: usize, seed: u64) -> Result<EvolutionRecord> {
    let initial = init_state(net.node_count(), seed);
    let mut record = evolve_from(net, rule, &initial, timesteps)?;
    record.seed = seed;
    Ok(record)
}

/// Evolves from an explicit initial state. The record's seed is 0.
pub fn evolve_from(
    net: &Network,
    rule: &Rule,
    initial: &[u8],
    timesteps: usize,
) -> Result<EvolutionRecord> {
    if timesteps < 1 {
        return Err(Error::param("evolution needs at least one timestep"));
    }
    let n = net.node_count();
    if initial.len() != n {
        return Err(Error::param(format!(
            "initial state has {} cells for a network of {n} nodes",
            initial.len()
        )));
    }
    let mut tep = Array2::<u8>::zeros((timesteps + 1, n));
    let mut dtep = Array2::<f64>::zeros((timesteps + 1, n));
    tep.row_mut(0)
        .as_slice_mut()
        .expect("standard layout")
        .copy_from_slice(initial);
    for t in 0..=timesteps {
        let (done, mut rest) = tep.view_mut().split_at(Axis(0), t + 1);
        let current = done.row(t);
        let current = current.as_slice().expect("standard layout");
        let mut rho_row = dtep.row_mut(t);
        let rho = rho_row.as_slice_mut().expect("standard layout");
        density_into(net, current, rho);
        if t < timesteps {
            let mut next_row = rest.row_mut(0);
            for ((next, &s), &r) in next_row.iter_mut().zip(current).zip(rho.iter()) {
                *next = transition(s, r, rule);
            }
        }
    }
    Ok(EvolutionRecord {
        tep,
        dtep,
        rule: *rule,
        seed: 0,
        transient: DEFAULT_TRANSIENT,
    })
}

pub fn sd_tep(tep: ArrayView2<u8>, dtep: ArrayView2<f64>) -> Array2<f64> {
    assert_eq!(tep.dim(), dtep.dim(), "TEP and D-TEP shapes differ");
    let mut out = dtep.to_owned();
    out.zip_mut_with(&tep, |d, &s| {
        if s == 0 {
            *d = -*d;
        }
    });
    out
}

/// Rows `tau..` of a pattern.
pub fn discard_transient<T>(matrix: ArrayView2<'_, T>, tau: usize) -> Result<ArrayView2<'_, T>> {
    if tau >= matrix.nrows() {
        return Err(Error::param(format!(
            "transient {tau} leaves no rows of a {}-row pattern",
            matrix.nrows()
        )));
    }
    Ok(matrix.slice_move(s![tau.., ..]))
}

/// Binary Shannon entropy (bits) of each column's alive fraction.
pub fn column_entropy(tep: ArrayView2<u8>) -> Vec<f64> {
    let rows = tep.nrows() as f64;
    tep.axis_iter(Axis(1))
        .map(|col| {
            let p = col.iter().map(|&b| f64::from(b)).sum::<f64>() / rows;
            binary_entropy(p)
        })
        .collect()
}

fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Column indices sorted by ascending entropy, ties in node order.
pub fn entropy_order(tep: ArrayView2<u8>) -> Vec<usize> {
    let h = column_entropy(tep);
    let mut order: Vec<usize> = (0..h.len()).collect();
    order.sort_by(|&a, &b| h[a].total_cmp(&h[b]));
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn p3() -> Network {
        Network::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn gol() -> Rule {
        "B3/S23".parse().unwrap()
    }

    #[test]
    fn worked_example_birth() {
        assert_eq!(transition(0, 1.0 / 3.0, &gol()), 1);
    }

    #[test]
    fn worked_example_death() {
        assert_eq!(transition(1, 5.0 / 6.0, &gol()), 0);
    }

    #[test]
    fn full_density_is_top_level() {
        let r = Rule::from_levels(&[], &[8]);
        assert_eq!(transition(1, 1.0, &r), 1);
        assert_eq!(transition(1, 1.0, &Rule::from_levels(&[], &[7])), 0);
        assert_eq!(density_level(1.0), 8);
        assert_eq!(density_level(0.0), 0);
    }

    #[test]
    fn level_boundaries_are_half_open() {
        for x in 0..9 {
            assert_eq!(density_level(x as f64 / 9.0), x);
        }
        assert_eq!(density_level(4.0 / 9.0 - 1e-12), 3);
        assert_eq!(density_level(2.0 / 6.0), 3);
        assert_eq!(density_level(5.0 / 6.0), 7);
    }

    #[test]
    fn density_examples() {
        let g = p3();
        assert_eq!(density(&g, &[1, 0, 1]), vec![0.0, 1.0, 0.0]);
        assert_eq!(density(&g, &[1, 1, 1]), vec![1.0; 3]);
        let isolated = Network::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(density(&isolated, &[1, 1, 1])[2], 0.0);
    }

    #[test]
    fn isolated_dead_node_needs_b0() {
        let g = Network::from_edges(3, [(0, 1)]).unwrap();
        let rec = evolve_from(&g, &"B0/S".parse().unwrap(), &[0, 0, 0], 1).unwrap();
        assert_eq!(rec.tep.row(1).to_vec(), vec![1, 1, 1]);
        let rec = evolve_from(&g, &"B1/S".parse().unwrap(), &[0, 0, 0], 1).unwrap();
        assert_eq!(rec.tep.row(1).to_vec(), vec![0, 0, 0]);
    }

    #[test]
    fn path_graph_step() {
        let rec = evolve_from(&p3(), &gol(), &[1, 0, 1], 3).unwrap();
        assert_eq!(rec.tep.row(1).to_vec(), vec![0, 0, 0]);
        assert_eq!(rec.dtep.row(0).to_vec(), vec![0.0, 1.0, 0.0]);
        assert_eq!(rec.tep.dim(), (4, 3));
        assert_eq!(rec.dtep.dim(), (4, 3));
    }

    #[test]
    fn no_birth_from_all_dead_is_absorbing() {
        let g = crate::netgen::gen_erdos_renyi(40, 4.0, 1).unwrap();
        let rule = Rule::from_levels(&[], &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let rec = evolve_from(&g, &rule, &[0; 40], 10).unwrap();
        assert!(rec.tep.iter().all(|&b| b == 0));
        assert!(rec.dtep.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn evolve_is_deterministic() {
        let g = crate::netgen::gen_erdos_renyi(100, 6.0, 3).unwrap();
        let rule: Rule = "B135678-S03456".parse().unwrap();
        let a = evolve(&g, &rule, 50, 9).unwrap();
        let b = evolve(&g, &rule, 50, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, 9);
        assert_eq!(a.tep.row(0).to_vec(), init_state(100, 9).to_vec());
    }

    #[test]
    fn zero_timesteps_rejected() {
        assert!(evolve(&p3(), &gol(), 0, 1).is_err());
        assert!(evolve_from(&p3(), &gol(), &[1, 0], 2).is_err());
    }

    #[test]
    fn init_state_is_roughly_half_alive() {
        let s = init_state(10_000, 5);
        let f = s.alive_fraction();
        assert!((0.47..=0.53).contains(&f), "{f}");
        assert_eq!(s, init_state(10_000, 5));
        assert_eq!(init_state(1, 5).len(), 1);
    }

    #[test]
    fn sd_tep_signs() {
        let tep = array![[1u8, 0], [0, 0]];
        let dtep = array![[0.4, 0.4], [0.0, 0.0]];
        let sd = sd_tep(tep.view(), dtep.view());
        assert_eq!(sd, array![[0.4, -0.4], [0.0, 0.0]]);
    }

    #[test]
    fn transient_discard() {
        let m = Array2::<f64>::zeros((351, 4));
        assert_eq!(discard_transient(m.view(), 20).unwrap().nrows(), 331);
        assert_eq!(discard_transient(m.view(), 0).unwrap(), m.view());
        assert!(discard_transient(m.view(), 351).is_err());
    }

    #[test]
    fn entropy_values() {
        let tep = array![[0u8, 1, 1, 1], [0, 0, 0, 1], [0, 1, 0, 1], [0, 0, 0, 1]];
        let h = column_entropy(tep.view());
        assert_eq!(h[0], 0.0);
        assert_eq!(h[1], 1.0);
        assert!((h[2] - 0.811_278_124_459_132_8).abs() < 1e-12);
        assert_eq!(h[3], 0.0);
        assert_eq!(entropy_order(tep.view()), vec![0, 3, 2, 1]);
    }
}
