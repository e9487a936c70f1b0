//! n-level decomposed graphs and their summary statistics.
//!
//! After discarding hyperedges larger than `max_edge_size`, the level-n graph
//! has one vertex per n-subset of a surviving hyperedge and an edge between two
//! distinct subsets whenever their union lies inside some surviving hyperedge.
//! Level 1 is the clique expansion. Overlapping subsets such as {1,2} and
//! {1,3} are adjacent when {1,2,3} fits in a hyperedge.

use rayon::prelude::*;
use thiserror::Error;

use crate::distribution::EmpiricalDistribution;
use crate::hypergraph::{Hyperedge, Hypergraph, NodeId};
use crate::patterns::{self, par_chunks, DegreeHistogram, DiameterConfig, DiameterEstimate, PatternError};
use crate::spectral::{self, SingularSpectrum, SpectralConfig, SpectralError};

pub const DEFAULT_MAX_EDGE_SIZE: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecomposeError {
    #[error("level {level} outside 1..={max_edge_size}")]
    InvalidLevel { level: usize, max_edge_size: usize },
    #[error("decomposed graph has no vertices")]
    Empty,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecomposedGraph {
    level: usize,
    /// Vertex id → sorted node subset; ids follow lexicographic subset order.
    labels: Vec<Vec<NodeId>>,
    /// Sorted, deduplicated `(a, b)` with `a < b`.
    edges: Vec<(u32, u32)>,
}

impl DecomposedGraph {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[Vec<NodeId>] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &[NodeId] {
        &self.labels[v as usize]
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Vertex id of a sorted node subset, if present.
    pub fn vertex_of(&self, subset: &[NodeId]) -> Option<u32> {
        self.labels.binary_search_by(|l| l.as_slice().cmp(subset)).ok().map(|i| i as u32)
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The graph as a hypergraph of size-2 edges, so hyperedge-path distances
    /// coincide with graph distances.
    pub fn as_hypergraph(&self) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| Hyperedge::new(0, [a, b]).expect("two distinct endpoints"))
            .collect();
        Hypergraph::with_num_nodes(self.labels.len(), edges).expect("endpoints are vertex ids")
    }
}

/// Calls `f` on every `n`-subset of the sorted slice `items`, in lexicographic order.
fn for_each_subset(items: &[NodeId], n: usize, buf: &mut Vec<NodeId>, f: &mut impl FnMut(&[NodeId])) {
    let k = items.len();
    if n > k {
        return;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        f(buf);
        // advance the rightmost index that can still move
        let Some(pos) = (0..n).rev().find(|&p| idx[p] != p + k - n) else { return };
        idx[pos] += 1;
        for p in pos + 1..n {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

pub fn decompose(g: &Hypergraph, n: usize, max_edge_size: usize) -> Result<DecomposedGraph, DecomposeError> {
    if n == 0 || n > max_edge_size {
        return Err(DecomposeError::InvalidLevel { level: n, max_edge_size });
    }
    // repeated hyperedges add nothing to V or E
    let mut surviving: Vec<&[NodeId]> = g
        .edges()
        .iter()
        .map(Hyperedge::members)
        .filter(|m| m.len() >= n && m.len() <= max_edge_size)
        .collect();
    surviving.sort_unstable();
    surviving.dedup();

    let mut buf = Vec::with_capacity(n);
    let mut labels: Vec<Vec<NodeId>> = Vec::new();
    for m in &surviving {
        for_each_subset(m, n, &mut buf, &mut |s| labels.push(s.to_vec()));
    }
    labels.par_sort_unstable();
    labels.dedup();

    let find = |s: &[NodeId]| labels.binary_search_by(|l| l.as_slice().cmp(s)).expect("subset was collected") as u32;
    let mut edges: Vec<(u32, u32)> = surviving
        .par_iter()
        .filter(|m| m.len() > n)
        .flat_map_iter(|m| {
            let mut ids = Vec::new();
            let mut buf = Vec::with_capacity(n);
            for_each_subset(m, n, &mut buf, &mut |s| ids.push(find(s)));
            // ids are increasing since both subsets and labels are lexicographic
            let mut pairs = Vec::with_capacity(ids.len() * ids.len().saturating_sub(1) / 2);
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    pairs.push((ids[i], ids[j]));
                }
            }
            pairs
        })
        .collect();
    edges.par_sort_unstable();
    edges.dedup();
    Ok(DecomposedGraph { level: n, labels, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusteringMode {
    /// Mean of local coefficients, vertices of degree < 2 contributing 0.
    #[default]
    AvgLocal,
    /// 3 × triangles / connected triples.
    Global,
}

impl ClusteringMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ClusteringMode::AvgLocal => "avg_local",
            ClusteringMode::Global => "global",
        }
    }
}

impl std::str::FromStr for ClusteringMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "avg_local" => Ok(ClusteringMode::AvgLocal),
            "global" => Ok(ClusteringMode::Global),
            other => Err(format!("unknown clustering mode `{other}` (expected avg_local or global)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStatsConfig {
    pub clustering: ClusteringMode,
    pub diameter: DiameterConfig,
    pub spectral: SpectralConfig,
    pub top_k: usize,
    pub tolerance: f64,
}

impl Default for GraphStatsConfig {
    fn default() -> Self {
        Self {
            clustering: ClusteringMode::AvgLocal,
            diameter: DiameterConfig::default(),
            spectral: SpectralConfig::default(),
            top_k: spectral::DEFAULT_TOP_K,
            tolerance: spectral::DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub largest_cc_fraction: f64,
    /// `None` when no two vertices are connected.
    pub effective_diameter: Option<DiameterEstimate>,
    pub clustering: f64,
    pub clustering_mode: ClusteringMode,
    pub degree_distribution: DegreeHistogram,
    pub singular_spectrum: SingularSpectrum,
}

/// Per-vertex triangle counts over sorted adjacency lists.
fn triangles_per_vertex(adj: &[Vec<u32>]) -> Vec<u64> {
    let n = adj.len();
    let mut out = vec![0u64; n];
    let parts: Vec<(std::ops::Range<usize>, Vec<u64>)> = par_chunks(n)
        .map(|range| {
            let mut mark = vec![false; n];
            let counts = range
                .clone()
                .map(|v| {
                    for &u in &adj[v] {
                        mark[u as usize] = true;
                    }
                    let mut t = 0u64;
                    for &u in &adj[v] {
                        t += adj[u as usize].iter().filter(|&&w| w > u && mark[w as usize]).count() as u64;
                    }
                    for &u in &adj[v] {
                        mark[u as usize] = false;
                    }
                    t
                })
                .collect();
            (range, counts)
        })
        .collect();
    for (range, counts) in parts {
        out[range].copy_from_slice(&counts);
    }
    out
}

pub fn clustering_coefficient(adj: &[Vec<u32>], mode: ClusteringMode) -> f64 {
    if adj.is_empty() {
        return 0.0;
    }
    let tri = triangles_per_vertex(adj);
    let pairs = |v: usize| {
        let d = adj[v].len() as u64;
        d * d.saturating_sub(1) / 2
    };
    match mode {
        ClusteringMode::AvgLocal => {
            let sum: f64 = (0..adj.len())
                .filter(|&v| adj[v].len() >= 2)
                .map(|v| tri[v] as f64 / pairs(v) as f64)
                .sum();
            sum / adj.len() as f64
        }
        ClusteringMode::Global => {
            let triples: u64 = (0..adj.len()).map(pairs).sum();
            if triples == 0 {
                0.0
            } else {
                tri.iter().sum::<u64>() as f64 / triples as f64
            }
        }
    }
}

pub fn graph_stats(dg: &DecomposedGraph, config: &GraphStatsConfig) -> Result<GraphStats, DecomposeError> {
    let nv = dg.num_vertices();
    if nv == 0 {
        return Err(DecomposeError::Empty);
    }
    let hg = dg.as_hypergraph();
    let largest = patterns::connected_components(&hg).first().copied().unwrap_or(0);
    let effective_diameter = match patterns::effective_diameter(&hg, &config.diameter) {
        Ok(d) => Some(d),
        Err(PatternError::UndefinedDiameter) => None,
        Err(e) => return Err(e.into()),
    };
    let adj = dg.adjacency();
    let clustering = clustering_coefficient(&adj, config.clustering);
    let degrees = adj.iter().map(|a| a.len() as u64);
    let degree_distribution = DegreeHistogram {
        distribution: EmpiricalDistribution::from_integers(degrees),
        zero_degree: adj.iter().filter(|a| a.is_empty()).count(),
    };
    let matrix = spectral::adjacency_matrix(nv, dg.edges())?;
    let singular_spectrum = spectral::singular_values_with(&matrix, config.top_k, config.tolerance, &config.spectral)?;
    Ok(GraphStats {
        num_vertices: nv,
        num_edges: dg.num_edges(),
        largest_cc_fraction: largest as f64 / nv as f64,
        effective_diameter,
        clustering,
        clustering_mode: config.clustering,
        degree_distribution,
        singular_spectrum,
    })
}

/// Decomposes and summarizes several levels concurrently.
pub fn analyze_levels(
    g: &Hypergraph,
    levels: &[usize],
    max_edge_size: usize,
    config: &GraphStatsConfig,
) -> Result<Vec<(DecomposedGraph, GraphStats)>, DecomposeError> {
    levels
        .par_iter()
        .map(|&n| {
            let dg = decompose(g, n, max_edge_size)?;
            let stats = graph_stats(&dg, config)?;
            Ok((dg, stats))
        })
        .collect()
}
