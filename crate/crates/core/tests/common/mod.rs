//! Samplers and brute-force oracles shared by the integration tests.
//!
//! Everything here is deliberately naive: oracles enumerate directly from the
//! raw member lists, never through the library's indexes.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use hyperff_core::fit::special::hurwitz_zeta;
use hyperff_core::{Hyperedge, Hypergraph, TimestampedHyperedgeSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random hypergraph with at most `max_edges` edges over at most `max_nodes` nodes.
pub fn random_hypergraph(seed: u64, max_edges: usize, max_nodes: usize) -> Hypergraph {
    random_sequence(seed, max_edges, max_nodes).build()
}

pub fn random_sequence(seed: u64, max_edges: usize, max_nodes: usize) -> TimestampedHyperedgeSequence {
    let mut r = rng(seed);
    let n = r.random_range(1..=max_nodes);
    let m = r.random_range(1..=max_edges);
    let mut edges = Vec::with_capacity(m);
    let mut t = 0i64;
    for _ in 0..m {
        t += r.random_range(0..3);
        let size = r.random_range(1..=n.min(6));
        let members: Vec<u32> = (0..size).map(|_| r.random_range(0..n as u32)).collect();
        edges.push(Hyperedge::new(t, members).unwrap());
    }
    TimestampedHyperedgeSequence::new(edges).unwrap()
}

pub fn member_sets(g: &Hypergraph) -> Vec<BTreeSet<u32>> {
    g.edges().iter().map(|e| e.members().iter().copied().collect()).collect()
}

/// (intersecting pairs, possible pairs, overlap-size histogram) by checking every pair.
pub fn brute_intersections(g: &Hypergraph) -> (u64, u64, BTreeMap<u64, u64>) {
    let sets = member_sets(g);
    let mut hist = BTreeMap::new();
    let mut pairs = 0;
    let mut possible = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            possible += 1;
            let k = sets[i].intersection(&sets[j]).count() as u64;
            if k > 0 {
                pairs += 1;
                *hist.entry(k).or_insert(0) += 1;
            }
        }
    }
    (pairs, possible, hist)
}

/// Node × node distance matrix by Floyd–Warshall over the bipartite
/// node/hyperedge graph, halved; `None` when unreachable.
pub fn brute_distances(g: &Hypergraph) -> Vec<Vec<Option<u32>>> {
    let n = g.num_nodes();
    let total = n + g.num_edges();
    const INF: u32 = u32::MAX / 4;
    let mut d = vec![vec![INF; total]; total];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (j, set) in member_sets(g).iter().enumerate() {
        for &v in set {
            d[v as usize][n + j] = 1;
            d[n + j][v as usize] = 1;
        }
    }
    for k in 0..total {
        for i in 0..total {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..total {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    (0..n).map(|a| (0..n).map(|b| (d[a][b] < INF).then_some(d[a][b] / 2)).collect()).collect()
}

/// Component sizes (descending) via BFS on the node-to-node co-membership relation.
pub fn brute_components(g: &Hypergraph) -> Vec<usize> {
    let n = g.num_nodes();
    let sets = member_sets(g);
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s as u32]);
        let mut size = 0;
        while let Some(v) = q.pop_front() {
            size += 1;
            for set in sets.iter().filter(|e| e.contains(&v)) {
                for &w in set {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Degree → count over nodes with degree ≥ 1.
pub fn brute_degrees(g: &Hypergraph) -> BTreeMap<u64, u64> {
    let sets = member_sets(g);
    let mut hist = BTreeMap::new();
    for v in 0..g.num_nodes() as u32 {
        let d = sets.iter().filter(|e| e.contains(&v)).count() as u64;
        if d > 0 {
            *hist.entry(d).or_insert(0) += 1;
        }
    }
    hist
}

pub fn brute_sizes(g: &Hypergraph) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for set in member_sets(g) {
        *hist.entry(set.len() as u64).or_insert(0) += 1;
    }
    hist
}

/// Inverse-CDF draws from the discrete power law on `xmin, xmin+1, …`,
/// bisecting on the Hurwitz-zeta survival function.
pub fn discrete_power_law(alpha: f64, xmin: u64, n: usize, seed: u64) -> Vec<u64> {
    let mut r = rng(seed);
    let z = hurwitz_zeta(alpha, xmin as f64);
    let sf = |x: u64| hurwitz_zeta(alpha, x as f64 + 1.0) / z;
    (0..n)
        .map(|_| {
            let u: f64 = r.random();
            let (mut lo, mut hi) = (xmin, xmin);
            while sf(hi) > u {
                hi *= 2;
            }
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if sf(mid) > u {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        })
        .collect()
}

/// Geometric draws on `xmin, xmin+1, …` with P(x) ∝ e^{−λ(x−xmin)}.
pub fn discrete_exponential(lambda: f64, xmin: u64, n: usize, seed: u64) -> Vec<u64> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let u: f64 = 1.0 - r.random::<f64>();
            xmin + (-u.ln() / lambda).floor() as u64
        })
        .collect()
}
