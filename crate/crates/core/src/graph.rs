//! Undirected simple graphs in compressed adjacency form.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An immutable undirected simple graph.
///
/// Nodes are `0..node_count`. Neighbor lists are stored in compressed form:
/// the neighbors of `i` are `neighbors[offsets[i]..offsets[i + 1]]`, sorted
/// ascending. Every edge `{u, v}` appears in both lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    node_count: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    degrees: Vec<usize>,
    /// Canonical edge list, `u < v`, sorted lexicographically.
    edges: Vec<(u32, u32)>,
}

impl Network {
    /// Builds a network from node pairs. Duplicate pairs (in either
    /// orientation) collapse into one edge.
    pub fn from_edges<I>(node_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if node_count == 0 {
            return Err(Error::Validation(
                "a network needs at least one node".into(),
            ));
        }
        if node_count > u32::MAX as usize {
            return Err(Error::Validation(format!(
                "{node_count} nodes exceed the u32 index range"
            )));
        }
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::Validation(format!("self-loop on node {u}")));
            }
            if u >= node_count || v >= node_count {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) references a node outside 0..{node_count}"
                )));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            edges.push((a as u32, b as u32));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical_edges(node_count, edges))
    }

    /// `edges` must already be canonical: `u < v`, sorted, no duplicates.
    pub(crate) fn from_canonical_edges(node_count: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut degrees = vec![0usize; node_count];
        for &(u, v) in &edges {
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degrees {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..node_count].to_vec();
        let mut neighbors = vec![0u32; 2 * edges.len()];
        // Edges are sorted by (u, v), so pushing v into u's list and u into v's
        // list in this order leaves every list ascending.
        for &(u, v) in &edges {
            neighbors[fill[u as usize]] = v;
            fill[u as usize] += 1;
        }
        for &(u, v) in &edges {
            neighbors[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for i in 0..node_count {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Self {
            node_count,
            offsets,
            neighbors,
            degrees,
            edges,
        }
    }

    /// Parses the edge-list text format.
    ///
    /// One edge per line as two whitespace-separated node tokens; blank lines
    /// and lines starting with `#` are skipped. Tokens are remapped to
    /// `0..N` in order of first appearance. A `# nodes <N>` comment line
    /// written by [`Network::to_edge_list`] switches to identity mapping when
    /// every token is an integer below `N`, which keeps isolated nodes.
    pub fn from_edge_list(text: &str) -> Result<IngestedNetwork> {
        let mut declared_nodes: Option<usize> = None;
        let mut records: Vec<(usize, &str, &str)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                let mut parts = comment.split_whitespace();
                if parts.next() == Some("nodes") {
                    if let (Some(n), None) = (parts.next(), parts.next()) {
                        declared_nodes = n.parse().ok();
                    }
                }
                continue;
            }
            let mut tokens = line.split_whitespace();
            match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => {
                    if a == b {
                        return Err(Error::Validation(format!(
                            "line {line_no}: self-loop on node `{a}`"
                        )));
                    }
                    records.push((line_no, a, b));
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected two node tokens, found `{line}`"),
                    })
                }
            }
        }

        if let Some(n) = declared_nodes.filter(|&n| n > 0) {
            let dense: Option<Vec<(usize, usize)>> = records
                .iter()
                .map(|(_, a, b)| match (a.parse::<usize>(), b.parse::<usize>()) {
                    (Ok(u), Ok(v)) if u < n && v < n => Some((u, v)),
                    _ => None,
                })
                .collect();
            if let Some(pairs) = dense {
                let network = Network::from_edges(n, pairs)?;
                let node_ids = (0..n).map(|i| i.to_string()).collect();
                return Ok(IngestedNetwork { network, node_ids });
            }
        }

        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut node_ids: Vec<String> = Vec::new();
        let mut pairs = Vec::with_capacity(records.len());
        for &(_, a, b) in &records {
            let mut ends = [0usize; 2];
            for (slot, tok) in ends.iter_mut().zip([a, b]) {
                *slot = *index.entry(tok).or_insert_with(|| {
                    node_ids.push(tok.to_string());
                    node_ids.len() - 1
                });
            }
            pairs.push((ends[0], ends[1]));
        }
        if node_ids.is_empty() {
            return Err(Error::Validation("edge list contains no edges".into()));
        }
        let network = Network::from_edges(node_ids.len(), pairs)?;
        Ok(IngestedNetwork { network, node_ids })
    }

    /// Serializes to the edge-list format with a leading `# nodes <N>` line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * self.edges.len() + 32);
        writeln!(out, "# nodes {}", self.node_count).unwrap();
        writeln!(out, "# edges {}", self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.neighbors[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.degrees[node]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Canonical edges, `u < v`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Mean degree `2M / N`.
    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.node_count as f64
    }

    /// Checks the structural invariants: no self-loops or duplicate edges,
    /// symmetric adjacency, degrees matching list lengths, and
    /// `sum(degrees) == 2M`.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count;
        if self.offsets.len() != n + 1 || self.degrees.len() != n {
            return Err(Error::Validation(
                "index arrays do not match node count".into(),
            ));
        }
        for i in 0..n {
            let adj = self.neighbors(i);
            if adj.len() != self.degrees[i] {
                return Err(Error::Validation(format!(
                    "degree of node {i} disagrees with its list"
                )));
            }
            for w in adj.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::Validation(format!(
                        "duplicate or unsorted neighbor at node {i}"
                    )));
                }
            }
            for &j in adj {
                let j = j as usize;
                if j == i {
                    return Err(Error::Validation(format!("self-loop on node {i}")));
                }
                if j >= n || !self.has_edge(j, i) {
                    return Err(Error::Validation(format!(
                        "asymmetric adjacency {i} -> {j}"
                    )));
                }
            }
        }
        let degree_sum: usize = self.degrees.iter().sum();
        if degree_sum != 2 * self.edges.len() {
            return Err(Error::Validation(format!(
                "degree sum {degree_sum} != 2 x {} edges",
                self.edges.len()
            )));
        }
        Ok(())
    }
}

/// A network read from an edge list together with the original node tokens,
/// `node_ids[i]` being the token that was mapped to node `i`.
#[derive(Debug, Clone)]
pub struct IngestedNetwork {
    pub network: Network,
    pub node_ids: Vec<String>,
}
