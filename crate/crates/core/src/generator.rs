//! Hypergraph forest-fire growth and the size-preserving null model.
//!
//! Each arriving node `u` picks a uniformly random ambassador `w` among the
//! existing nodes and starts a fire there with burning probability `p`. Every
//! node `v` burned by that fire becomes the seed of a hyperedge: the tie
//! between `u` and `v` is strengthened, a second, independent fire with
//! expanding probability `q` is started at `v`, and the hyperedge is the
//! expansion fire's burned set plus `u`. All hyperedges of one arrival step are
//! committed together, so fires within a step see only earlier steps.
//!
//! # Random stream
//!
//! A single ChaCha8 stream seeded from [`HyperFFParams::seed`] is consumed in
//! this order per step: ambassador draw, then the first fire's draws in BFS
//! order, then for each burned node (in burn order) the expansion fire's
//! draws. Within a fire, each popped node draws its spread count, then the
//! tie-break shuffles for the candidates it enqueues.

use std::collections::{HashMap, VecDeque};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{Hyperedge, Hypergraph, NodeId, Timestamp, TimestampedHyperedgeSequence};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("probability {0} outside [0, 1)")]
    InvalidProbability(f64),

    #[error("node count must be at least 1")]
    NoNodes,

    #[error("source node {0} not in the hypergraph")]
    UnknownSource(NodeId),

    #[error("record {index} needs {size} distinct nodes but only {available} have appeared")]
    Infeasible { index: usize, size: usize, available: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperFFParams {
    pub burn_p: f64,
    pub expand_q: f64,
    /// Total node count including the seed node.
    pub num_nodes: usize,
    pub seed: u64,
}

impl HyperFFParams {
    pub fn new(burn_p: f64, expand_q: f64, num_nodes: usize, seed: u64) -> Self {
        Self { burn_p, expand_q, num_nodes, seed }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        check_probability(self.burn_p)?;
        check_probability(self.expand_q)?;
        if self.num_nodes == 0 {
            return Err(GeneratorError::NoNodes);
        }
        Ok(())
    }
}

fn check_probability(p: f64) -> Result<(), GeneratorError> {
    if (0.0..1.0).contains(&p) {
        Ok(())
    } else {
        Err(GeneratorError::InvalidProbability(p))
    }
}

/// Symmetric pair → closeness counter. Missing pairs have strength 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TieStrengthStore {
    ties: HashMap<(NodeId, NodeId), u32>,
}

fn pair_key(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl TieStrengthStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, a: NodeId, b: NodeId) -> u32 {
        self.ties.get(&pair_key(a, b)).copied().unwrap_or(0)
    }

    pub fn increment(&mut self, a: NodeId, b: NodeId) {
        *self.ties.entry(pair_key(a, b)).or_insert(0) += 1;
    }

    pub fn set(&mut self, a: NodeId, b: NodeId, strength: u32) {
        if strength == 0 {
            self.ties.remove(&pair_key(a, b));
        } else {
            self.ties.insert(pair_key(a, b), strength);
        }
    }

    pub fn len(&self) -> usize {
        self.ties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ties.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((NodeId, NodeId), u32)> + '_ {
        self.ties.iter().map(|(&k, &v)| (k, v))
    }
}

/// Nodes burned by one fire, in burn order; the first is the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnResult {
    pub burned: Vec<NodeId>,
}

/// Draws `n ≥ 0` with `P(n = k) = (1 − prob)·prob^k` (mean `prob / (1 − prob)`).
pub fn geometric_sample<R: Rng + ?Sized>(prob: f64, rng: &mut R) -> Result<usize, GeneratorError> {
    check_probability(prob)?;
    Ok(geometric_unchecked(prob, rng))
}

fn geometric_unchecked<R: Rng + ?Sized>(prob: f64, rng: &mut R) -> usize {
    if prob == 0.0 {
        return 0;
    }
    // inverse CDF: P(n >= k) = prob^k
    let u: f64 = 1.0 - rng.random::<f64>();
    let n = (u.ln() / prob.ln()).floor();
    if n >= u32::MAX as f64 {
        u32::MAX as usize
    } else {
        n as usize
    }
}

/// Sorted, duplicate-free neighbor lists of a growing hypergraph.
#[derive(Debug, Clone, Default)]
pub struct NeighborIndex {
    adj: Vec<Vec<NodeId>>,
}

impl NeighborIndex {
    pub fn with_nodes(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn from_hypergraph(g: &Hypergraph) -> Self {
        let mut idx = Self::with_nodes(g.num_nodes());
        for e in g.edges() {
            idx.add_hyperedge(e.members());
        }
        idx
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v as usize]
    }

    pub fn add_hyperedge(&mut self, members: &[NodeId]) {
        if let Some(&max) = members.iter().max() {
            if max as usize >= self.adj.len() {
                self.adj.resize(max as usize + 1, Vec::new());
            }
        }
        for &a in members {
            for &b in members {
                if a != b {
                    let list = &mut self.adj[a as usize];
                    if let Err(pos) = list.binary_search(&b) {
                        list.insert(pos, b);
                    }
                }
            }
        }
    }
}

/// Reusable visited marks for repeated fires over the same index.
#[derive(Debug, Default)]
pub struct FireScratch {
    mark: Vec<u32>,
    epoch: u32,
    queue: VecDeque<NodeId>,
    candidates: Vec<(u32, NodeId)>,
}

impl FireScratch {
    fn begin(&mut self, n: usize) -> u32 {
        if self.mark.len() < n {
            self.mark.resize(n, 0);
        }
        if self.epoch == u32::MAX {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.queue.clear();
        self.epoch
    }
}

/// Breadth-first fire from `source` whose per-node spread count comes from `draw_count`.
///
/// Each popped node `s` is burned, draws `n`, and enqueues up to `n` of its
/// not-yet-burned, not-yet-queued neighbors in descending tie strength with
/// `s`; equal-strength groups are ordered by a uniform random permutation.
pub fn burning_with<R, F>(
    source: NodeId,
    view: &NeighborIndex,
    ties: &TieStrengthStore,
    rng: &mut R,
    scratch: &mut FireScratch,
    mut draw_count: F,
) -> BurnResult
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> usize,
{
    let epoch = scratch.begin(view.num_nodes().max(source as usize + 1));
    let mut burned = Vec::new();
    scratch.mark[source as usize] = epoch;
    scratch.queue.push_back(source);
    while let Some(s) = scratch.queue.pop_front() {
        burned.push(s);
        let n = draw_count(rng);
        if n == 0 || s as usize >= view.num_nodes() {
            continue;
        }
        let cands = &mut scratch.candidates;
        cands.clear();
        cands.extend(
            view.neighbors(s)
                .iter()
                .filter(|&&x| scratch.mark[x as usize] != epoch)
                .map(|&x| (ties.get(s, x), x)),
        );
        if cands.is_empty() {
            continue;
        }
        cands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let take = n.min(cands.len());
        let mut start = 0;
        while start < take {
            let strength = cands[start].0;
            let end = start + cands[start..].iter().take_while(|c| c.0 == strength).count();
            let need = take - start;
            let group = &mut cands[start..end];
            if group.len() <= need {
                group.shuffle(rng);
                for &(_, x) in group.iter() {
                    scratch.mark[x as usize] = epoch;
                    scratch.queue.push_back(x);
                }
            } else {
                let (chosen, _) = group.partial_shuffle(rng, need);
                for &(_, x) in chosen.iter() {
                    scratch.mark[x as usize] = epoch;
                    scratch.queue.push_back(x);
                }
            }
            start = end;
        }
    }
    BurnResult { burned }
}

/// Fire with geometric spread counts of mean `prob / (1 − prob)`.
pub fn burning<R: Rng + ?Sized>(
    source: NodeId,
    prob: f64,
    view: &NeighborIndex,
    ties: &TieStrengthStore,
    rng: &mut R,
    scratch: &mut FireScratch,
) -> Result<BurnResult, GeneratorError> {
    check_probability(prob)?;
    Ok(burning_with(source, view, ties, rng, scratch, |r| geometric_unchecked(prob, r)))
}

/// [`burning`] on a built hypergraph snapshot.
pub fn burning_on<R: Rng + ?Sized>(
    source: NodeId,
    prob: f64,
    g: &Hypergraph,
    ties: &TieStrengthStore,
    rng: &mut R,
) -> Result<BurnResult, GeneratorError> {
    if source as usize >= g.num_nodes() {
        return Err(GeneratorError::UnknownSource(source));
    }
    let view = NeighborIndex::from_hypergraph(g);
    burning(source, prob, &view, ties, rng, &mut FireScratch::default())
}

/// Generated sequence plus the final tie strengths.
#[derive(Debug, Clone)]
pub struct HyperFFOutput {
    pub sequence: TimestampedHyperedgeSequence,
    pub ties: TieStrengthStore,
}

pub fn hyperff(params: &HyperFFParams) -> Result<TimestampedHyperedgeSequence, GeneratorError> {
    hyperff_with_ties(params).map(|o| o.sequence)
}

pub fn hyperff_with_ties(params: &HyperFFParams) -> Result<HyperFFOutput, GeneratorError> {
    params.validate()?;
    let total = params.num_nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut view = NeighborIndex::with_nodes(total);
    let mut ties = TieStrengthStore::new();
    let mut scratch = FireScratch::default();
    let mut records = Vec::new();
    let mut step_edges: Vec<Vec<NodeId>> = Vec::new();

    for t in 1..total {
        let u = t as NodeId;
        let ambassador = rng.random_range(0..u);
        let first = burning(ambassador, params.burn_p, &view, &ties, &mut rng, &mut scratch)?;
        step_edges.clear();
        for &v in &first.burned {
            ties.increment(u, v);
            let expansion = burning(v, params.expand_q, &view, &ties, &mut rng, &mut scratch)?;
            let mut members = expansion.burned;
            members.push(u);
            members.sort_unstable();
            step_edges.push(members);
        }
        for members in step_edges.drain(..) {
            view.add_hyperedge(&members);
            records.push(Hyperedge::from_sorted(t as Timestamp, members));
        }
    }
    Ok(HyperFFOutput { sequence: TimestampedHyperedgeSequence::from_records_unchecked(records), ties })
}

/// Size- and timestamp-preserving randomization.
///
/// Record `i` is replaced by a uniform random subset of the same size drawn
/// from every node that appears in records with timestamp ≤ its own.
pub fn null_model(seq: &TimestampedHyperedgeSequence, seed: u64) -> Result<TimestampedHyperedgeSequence, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records = seq.records();
    let mut seen_mark: Vec<bool> = Vec::new();
    let mut seen: Vec<NodeId> = Vec::new();
    let mut out = Vec::with_capacity(records.len());
    let mut start = 0;
    while start < records.len() {
        let t = records[start].timestamp();
        let end = start + records[start..].iter().take_while(|r| r.timestamp() == t).count();
        for rec in &records[start..end] {
            for &m in rec.members() {
                if m as usize >= seen_mark.len() {
                    seen_mark.resize(m as usize + 1, false);
                }
                if !seen_mark[m as usize] {
                    seen_mark[m as usize] = true;
                    seen.push(m);
                }
            }
        }
        for (offset, rec) in records[start..end].iter().enumerate() {
            let size = rec.len();
            if size > seen.len() {
                return Err(GeneratorError::Infeasible { index: start + offset, size, available: seen.len() });
            }
            let mut members: Vec<NodeId> =
                index::sample(&mut rng, seen.len(), size).into_iter().map(|i| seen[i]).collect();
            members.sort_unstable();
            out.push(Hyperedge::from_sorted(t, members));
        }
        start = end;
    }
    Ok(TimestampedHyperedgeSequence::from_records_unchecked(out))
}
