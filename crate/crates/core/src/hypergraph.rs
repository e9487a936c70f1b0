//! Static hypergraph snapshots and the node → hyperedge inverted index.
//!
//! A [`Hypergraph`] is built once from a [`TimestampedHyperedgeSequence`] and
//! never mutated afterwards. Hyperedges form a multiset: repeated records are
//! kept as separate entries, so a node's degree counts every occurrence.

use std::fmt;

use thiserror::Error;

/// Dense, zero-based node identifier.
pub type NodeId = u32;

/// Timestamp in dataset-defined units.
pub type Timestamp = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("record {index} has no members")]
    EmptyHyperedge { index: usize },

    #[error("record {index} members are not strictly increasing")]
    UnsortedMembers { index: usize },

    #[error("records are not ordered by timestamp at index {index}")]
    UnorderedTimestamps { index: usize },

    #[error("node {node} out of range (num_nodes = {num_nodes})")]
    NodeOutOfRange { node: NodeId, num_nodes: usize },

    #[error("prefix length {k} out of range 1..={len}")]
    PrefixOutOfRange { k: usize, len: usize },
}

/// One timestamped hyperedge. Members are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    members: Vec<NodeId>,
    timestamp: Timestamp,
}

impl Hyperedge {
    /// Builds a hyperedge from arbitrary node mentions, sorting them and
    /// collapsing repeats. Fails when no node is given.
    pub fn new(timestamp: Timestamp, members: impl IntoIterator<Item = NodeId>) -> Result<Self, HypergraphError> {
        let mut members: Vec<NodeId> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(HypergraphError::EmptyHyperedge { index: 0 });
        }
        Ok(Self { members, timestamp })
    }

    /// Builds a hyperedge whose members are already strictly increasing.
    pub(crate) fn from_sorted(timestamp: Timestamp, members: Vec<NodeId>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members, timestamp }
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn timestamp(&self) -> Timestamp {
        self.timestamp
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.members.binary_search(&node).is_ok()
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.timestamp)?;
        for m in &self.members {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

/// Hyperedge records ordered by nondecreasing timestamp.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TimestampedHyperedgeSequence {
    records: Vec<Hyperedge>,
}

impl TimestampedHyperedgeSequence {
    pub fn new(records: Vec<Hyperedge>) -> Result<Self, HypergraphError> {
        for (index, rec) in records.iter().enumerate() {
            if rec.members.is_empty() {
                return Err(HypergraphError::EmptyHyperedge { index });
            }
            if rec.members.windows(2).any(|w| w[0] >= w[1]) {
                return Err(HypergraphError::UnsortedMembers { index });
            }
        }
        if let Some(i) = records.windows(2).position(|w| w[0].timestamp > w[1].timestamp) {
            return Err(HypergraphError::UnorderedTimestamps { index: i + 1 });
        }
        Ok(Self { records })
    }

    /// Stable-sorts the records by timestamp, then validates them.
    pub fn from_unsorted(mut records: Vec<Hyperedge>) -> Result<Self, HypergraphError> {
        records.sort_by_key(|r| r.timestamp);
        Self::new(records)
    }

    pub(crate) fn from_records_unchecked(records: Vec<Hyperedge>) -> Self {
        Self { records }
    }

    /// Convenience constructor for tests and small fixtures.
    pub fn from_pairs<I, M>(pairs: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = (Timestamp, M)>,
        M: IntoIterator<Item = NodeId>,
    {
        let mut records = Vec::new();
        for (index, (t, m)) in pairs.into_iter().enumerate() {
            let edge = Hyperedge::new(t, m).map_err(|_| HypergraphError::EmptyHyperedge { index })?;
            records.push(edge);
        }
        Self::new(records)
    }

    pub fn records(&self) -> &[Hyperedge] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn into_records(self) -> Vec<Hyperedge> {
        self.records
    }

    /// Hypergraph of all records.
    pub fn build(&self) -> Hypergraph {
        Hypergraph::from_edges(self.records.clone())
    }

    /// Hypergraph built from the first `k` records, order preserved.
    pub fn prefix_snapshot(&self, k: usize) -> Result<Hypergraph, HypergraphError> {
        if k == 0 || k > self.records.len() {
            return Err(HypergraphError::PrefixOutOfRange { k, len: self.records.len() });
        }
        Ok(Hypergraph::from_edges(self.records[..k].to_vec()))
    }
}

/// Immutable hypergraph with an inverted incidence index.
///
/// `num_nodes` is one past the largest member id. Producers in this crate
/// (ingest, the generator) emit first-appearance dense ids, so this equals the
/// number of distinct members; ids that never occur are degree-zero nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    num_nodes: usize,
    edges: Vec<Hyperedge>,
    incidence: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn from_edges(edges: Vec<Hyperedge>) -> Self {
        let num_nodes = edges
            .iter()
            .filter_map(|e| e.members.last())
            .map(|&m| m as usize + 1)
            .max()
            .unwrap_or(0);
        Self::with_num_nodes(num_nodes, edges).expect("num_nodes derived from members")
    }

    /// Builds with an explicit node count, allowing trailing isolated nodes.
    pub fn with_num_nodes(num_nodes: usize, edges: Vec<Hyperedge>) -> Result<Self, HypergraphError> {
        let mut degree = vec![0u32; num_nodes];
        for e in &edges {
            for &m in &e.members {
                let slot = degree
                    .get_mut(m as usize)
                    .ok_or(HypergraphError::NodeOutOfRange { node: m, num_nodes })?;
                *slot += 1;
            }
        }
        let mut incidence: Vec<Vec<u32>> =
            degree.iter().map(|&d| Vec::with_capacity(d as usize)).collect();
        for (j, e) in edges.iter().enumerate() {
            for &m in &e.members {
                incidence[m as usize].push(j as u32);
            }
        }
        Ok(Self { num_nodes, edges, incidence })
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> &Hyperedge {
        &self.edges[j]
    }

    /// Indices of the hyperedges containing `v`, ascending.
    pub fn incident_edges(&self, v: NodeId) -> &[u32] {
        &self.incidence[v as usize]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.incidence[v as usize].len()
    }

    /// Number of nodes with degree ≥ 1.
    pub fn active_nodes(&self) -> usize {
        self.incidence.iter().filter(|l| !l.is_empty()).count()
    }

    /// Σ|e|, equal to Σ deg(v).
    pub fn total_incidences(&self) -> usize {
        self.edges.iter().map(Hyperedge::len).sum()
    }

    /// Nodes sharing at least one hyperedge with `v`, excluding `v`, ascending.
    pub fn neighbors(&self, v: NodeId) -> Result<Vec<NodeId>, HypergraphError> {
        if v as usize >= self.num_nodes {
            return Err(HypergraphError::NodeOutOfRange { node: v, num_nodes: self.num_nodes });
        }
        let mut out: Vec<NodeId> = self.incidence[v as usize]
            .iter()
            .flat_map(|&j| self.edges[j as usize].members.iter().copied())
            .filter(|&m| m != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}
