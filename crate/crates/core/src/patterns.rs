//! Structural distributions and the pairwise-overlap / distance statistics
//! behind the dynamical patterns.
//!
//! Distances follow hyperedge paths: two nodes sharing a hyperedge are at
//! distance 1, and in general the distance is the fewest hyperedges in a chain
//! of pairwise-intersecting hyperedges linking them. This is computed as half
//! the BFS distance in the bipartite node–hyperedge graph.

use std::collections::{BTreeMap, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::distribution::EmpiricalDistribution;
use crate::hypergraph::{Hypergraph, NodeId};
use crate::union_find::UnionFind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PatternError {
    #[error("density of interactions needs at least two hyperedges")]
    UndefinedDoi,
    #[error("no reachable node pair; effective diameter undefined")]
    UndefinedDiameter,
    #[error("quantile {0} outside (0, 1]")]
    InvalidQuantile(f64),
}

/// Degree histogram over nodes of degree ≥ 1, plus the number of isolated nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeHistogram {
    pub distribution: EmpiricalDistribution,
    pub zero_degree: usize,
}

pub fn degree_distribution(g: &Hypergraph) -> DegreeHistogram {
    let degrees = (0..g.num_nodes() as NodeId).map(|v| g.degree(v) as u64);
    let zero_degree = (0..g.num_nodes() as NodeId).filter(|&v| g.degree(v) == 0).count();
    DegreeHistogram { distribution: EmpiricalDistribution::from_integers(degrees), zero_degree }
}

pub fn edge_size_distribution(g: &Hypergraph) -> EmpiricalDistribution {
    EmpiricalDistribution::from_integers(g.edges().iter().map(|e| e.len() as u64))
}

/// Exact pairwise-overlap counts over all unordered hyperedge pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairIntersectionStats {
    pub intersecting_pairs: u64,
    pub possible_pairs: u64,
    pub size_histogram: EmpiricalDistribution,
}

/// Splits `0..len` into a few contiguous ranges per worker thread.
pub(crate) fn par_chunks(len: usize) -> impl ParallelIterator<Item = std::ops::Range<usize>> {
    let parts = (rayon::current_num_threads() * 4).max(1);
    let step = len.div_ceil(parts).max(1);
    (0..len.div_ceil(step)).into_par_iter().map(move |c| c * step..((c + 1) * step).min(len))
}

pub(crate) fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Per-worker scratch for overlap counting: `stamp[j]` marks the last source
/// hyperedge that touched `j`, `overlap[j]` accumulates the shared-node count.
struct OverlapScratch {
    stamp: Vec<u32>,
    overlap: Vec<u32>,
    touched: Vec<u32>,
    histogram: BTreeMap<u64, u64>,
}

impl OverlapScratch {
    fn new(m: usize) -> Self {
        Self { stamp: vec![u32::MAX; m], overlap: vec![0; m], touched: Vec::new(), histogram: BTreeMap::new() }
    }

    /// Counts overlaps of edge `i` with every edge `j < i`.
    fn visit(&mut self, g: &Hypergraph, i: usize) {
        self.touched.clear();
        for &v in g.edge(i).members() {
            for &j in g.incident_edges(v) {
                if j as usize >= i {
                    break;
                }
                let j = j as usize;
                if self.stamp[j] != i as u32 {
                    self.stamp[j] = i as u32;
                    self.overlap[j] = 0;
                    self.touched.push(j as u32);
                }
                self.overlap[j] += 1;
            }
        }
        for &j in &self.touched {
            *self.histogram.entry(self.overlap[j as usize] as u64).or_insert(0) += 1;
        }
    }
}

pub fn intersection_stats(g: &Hypergraph) -> PairIntersectionStats {
    let m = g.num_edges();
    let histogram = par_chunks(m)
        .map(|range| {
            let mut s = OverlapScratch::new(m);
            for i in range {
                s.visit(g, i);
            }
            s.histogram
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let size_histogram = EmpiricalDistribution::from_integer_counts(&histogram);
    PairIntersectionStats {
        intersecting_pairs: size_histogram.total(),
        possible_pairs: choose2(m as u64),
        size_histogram,
    }
}

pub fn density_of_interactions(stats: &PairIntersectionStats) -> Result<f64, PatternError> {
    if stats.possible_pairs == 0 {
        return Err(PatternError::UndefinedDoi);
    }
    Ok(stats.intersecting_pairs as f64 / stats.possible_pairs as f64)
}

/// Connected component sizes (descending); isolated nodes count as size-1 components.
pub fn connected_components(g: &Hypergraph) -> Vec<usize> {
    let mut uf = UnionFind::new(g.num_nodes());
    for e in g.edges() {
        let m = e.members();
        for &other in &m[1..] {
            uf.union(m[0] as usize, other as usize);
        }
    }
    uf.component_sizes()
}

/// BFS over the bipartite incidence graph from node `source`.
///
/// Returns distances for node vertices (`0..num_nodes`) followed by hyperedge
/// vertices (`num_nodes..num_nodes+num_edges`); `u32::MAX` when unreachable.
pub fn bipartite_distances(g: &Hypergraph, source: NodeId) -> Vec<u32> {
    let n = g.num_nodes();
    let mut dist = vec![u32::MAX; n + g.num_edges()];
    let mut queue = VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source as usize);
    while let Some(x) = queue.pop_front() {
        let d = dist[x] + 1;
        if x < n {
            for &j in g.incident_edges(x as NodeId) {
                let y = n + j as usize;
                if dist[y] == u32::MAX {
                    dist[y] = d;
                    queue.push_back(y);
                }
            }
        } else {
            for &v in g.edge(x - n).members() {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = d;
                    queue.push_back(v as usize);
                }
            }
        }
    }
    dist
}

/// Hyperedge-path distances from `source` to every node (`None` if unreachable).
pub fn hyperedge_distances(g: &Hypergraph, source: NodeId) -> Vec<Option<u32>> {
    bipartite_distances(g, source)[..g.num_nodes()]
        .iter()
        .map(|&d| (d != u32::MAX).then_some(d / 2))
        .collect()
}

/// Level-synchronous BFS that only accumulates a distance histogram.
struct BfsScratch {
    node_seen: Vec<u32>,
    edge_seen: Vec<u32>,
    frontier: Vec<NodeId>,
    next: Vec<NodeId>,
    histogram: Vec<u64>,
    epoch: u32,
}

impl BfsScratch {
    fn new(n: usize, m: usize) -> Self {
        Self {
            node_seen: vec![0; n],
            edge_seen: vec![0; m],
            frontier: Vec::new(),
            next: Vec::new(),
            histogram: Vec::new(),
            epoch: 0,
        }
    }

    fn run(&mut self, g: &Hypergraph, source: NodeId) {
        self.epoch += 1;
        let epoch = self.epoch;
        self.frontier.clear();
        self.frontier.push(source);
        self.node_seen[source as usize] = epoch;
        let mut d = 0usize;
        while !self.frontier.is_empty() {
            d += 1;
            self.next.clear();
            for &v in &self.frontier {
                for &j in g.incident_edges(v) {
                    if self.edge_seen[j as usize] == epoch {
                        continue;
                    }
                    self.edge_seen[j as usize] = epoch;
                    for &w in g.edge(j as usize).members() {
                        if self.node_seen[w as usize] != epoch {
                            self.node_seen[w as usize] = epoch;
                            self.next.push(w);
                        }
                    }
                }
            }
            if !self.next.is_empty() {
                if self.histogram.len() <= d {
                    self.histogram.resize(d + 1, 0);
                }
                self.histogram[d] += self.next.len() as u64;
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterConfig {
    pub quantile: f64,
    /// Exact all-sources BFS when the number of active nodes is at most this.
    pub exact_threshold: usize,
    pub sample_sources: usize,
    pub seed: u64,
}

impl Default for DiameterConfig {
    fn default() -> Self {
        Self { quantile: 0.9, exact_threshold: 2_000, sample_sources: 1_000, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterMethod {
    Exact,
    Sampled,
}

impl DiameterMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DiameterMethod::Exact => "exact",
            DiameterMethod::Sampled => "sampled",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterEstimate {
    pub value: f64,
    pub method: DiameterMethod,
    pub sources: usize,
    /// `histogram[d]` = ordered reachable (source, target) pairs at distance `d`.
    pub histogram: Vec<u64>,
}

/// Pair-distance histogram accumulated from the given BFS sources.
pub fn distance_histogram(g: &Hypergraph, sources: &[NodeId]) -> Vec<u64> {
    let (n, m) = (g.num_nodes(), g.num_edges());
    par_chunks(sources.len())
        .map(|range| {
            let mut s = BfsScratch::new(n, m);
            for &src in &sources[range] {
                s.run(g, src);
            }
            s.histogram
        })
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
}

/// Interpolated quantile of a distance histogram.
///
/// With `F(d)` the fraction of pairs at distance ≤ `d`, returns
/// `d* + (q − F(d*)) / (F(d*+1) − F(d*))` for the largest `d*` with
/// `F(d*) < q`, or the minimum distance when it already reaches `q`.
pub fn interpolate_quantile(histogram: &[u64], quantile: f64) -> Result<f64, PatternError> {
    if !(quantile > 0.0 && quantile <= 1.0) {
        return Err(PatternError::InvalidQuantile(quantile));
    }
    let total: u64 = histogram.iter().sum();
    if total == 0 {
        return Err(PatternError::UndefinedDiameter);
    }
    let target = quantile * total as f64;
    let min_d = histogram.iter().position(|&c| c > 0).unwrap();
    let mut cum = histogram[min_d];
    if cum as f64 >= target {
        return Ok(min_d as f64);
    }
    for d in (min_d + 1)..histogram.len() {
        let next = cum + histogram[d];
        if next as f64 >= target {
            // d* = d - 1, F(d*) = cum / total
            return Ok((d - 1) as f64 + (target - cum as f64) / (next - cum) as f64);
        }
        cum = next;
    }
    Ok((histogram.len() - 1) as f64)
}

pub fn effective_diameter(g: &Hypergraph, config: &DiameterConfig) -> Result<DiameterEstimate, PatternError> {
    if !(config.quantile > 0.0 && config.quantile <= 1.0) {
        return Err(PatternError::InvalidQuantile(config.quantile));
    }
    let active: Vec<NodeId> = (0..g.num_nodes() as NodeId).filter(|&v| g.degree(v) > 0).collect();
    let (method, sources) = if active.len() <= config.exact_threshold {
        (DiameterMethod::Exact, active)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let k = config.sample_sources.min(active.len());
        let mut idx = rand::seq::index::sample(&mut rng, active.len(), k).into_vec();
        idx.sort_unstable();
        (DiameterMethod::Sampled, idx.into_iter().map(|i| active[i]).collect())
    };
    let histogram = distance_histogram(g, &sources);
    let value = interpolate_quantile(&histogram, config.quantile)?;
    Ok(DiameterEstimate { value, method, sources: sources.len(), histogram })
}
