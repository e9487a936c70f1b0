//! Statistics over growing prefixes of a hyperedge sequence and log-log
//! slope fits for densification, interaction density and diameter trends.

use rayon::prelude::*;
use thiserror::Error;

use crate::hypergraph::{HypergraphError, NodeId, TimestampedHyperedgeSequence};
use crate::patterns::{self, choose2, DiameterConfig, DiameterEstimate, PatternError};

/// Checkpoints with fewer nodes than this get a low-confidence diameter flag.
pub const LOW_CONFIDENCE_NODES: usize = 10;
pub const DEFAULT_CHECKPOINTS: usize = 25;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TemporalError {
    #[error("need at least 2 records, got {0}")]
    TooFewRecords(usize),
    #[error("need at least 2 checkpoints requested, got {0}")]
    TooFewCheckpoints(usize),
    #[error("checkpoints must be increasing and within 1..={total}")]
    InvalidSchedule { total: usize },
    #[error("log-log fit needs positive values, got {0}")]
    NonPositive(f64),
    #[error("log-log fit needs at least two distinct x values")]
    DegenerateFit,
    #[error("xs and ys differ in length")]
    LengthMismatch,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Increasing record counts at which prefix statistics are taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapshotSchedule {
    checkpoints: Vec<usize>,
}

impl SnapshotSchedule {
    pub fn new(checkpoints: Vec<usize>, total: usize) -> Result<Self, TemporalError> {
        let ok = !checkpoints.is_empty()
            && checkpoints[0] >= 1
            && checkpoints.windows(2).all(|w| w[0] < w[1])
            && *checkpoints.last().unwrap() <= total;
        if !ok {
            return Err(TemporalError::InvalidSchedule { total });
        }
        Ok(Self { checkpoints })
    }

    pub fn checkpoints(&self) -> &[usize] {
        &self.checkpoints
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }
}

/// `m` log-spaced record counts over `[max(2, total/1000), total]`, deduplicated.
pub fn make_schedule(total: usize, m: usize) -> Result<SnapshotSchedule, TemporalError> {
    if total < 2 {
        return Err(TemporalError::TooFewRecords(total));
    }
    if m < 2 {
        return Err(TemporalError::TooFewCheckpoints(m));
    }
    let lo = (total / 1000).max(2) as f64;
    let ratio = (total as f64 / lo).ln();
    let mut checkpoints: Vec<usize> = (0..m)
        .map(|i| (lo * (ratio * i as f64 / (m - 1) as f64).exp()).round() as usize)
        .map(|k| k.clamp(1, total))
        .collect();
    checkpoints.push(total);
    checkpoints.sort_unstable();
    checkpoints.dedup();
    SnapshotSchedule::new(checkpoints, total)
}

/// `m` checkpoints at evenly spaced timestamps between the first and last
/// record; each checkpoint is the number of records at or before its time.
pub fn make_time_schedule(seq: &TimestampedHyperedgeSequence, m: usize) -> Result<SnapshotSchedule, TemporalError> {
    let total = seq.len();
    if total < 2 {
        return Err(TemporalError::TooFewRecords(total));
    }
    if m < 2 {
        return Err(TemporalError::TooFewCheckpoints(m));
    }
    let records = seq.records();
    let (t0, t1) = (records[0].timestamp() as f64, records[total - 1].timestamp() as f64);
    let mut checkpoints: Vec<usize> = (1..=m)
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / m as f64;
            records.partition_point(|r| (r.timestamp() as f64) <= t)
        })
        .filter(|&k| k >= 1)
        .collect();
    checkpoints.push(total);
    checkpoints.sort_unstable();
    checkpoints.dedup();
    SnapshotSchedule::new(checkpoints, total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointStats {
    pub k: usize,
    pub num_nodes: usize,
    pub num_edges: usize,
    pub intersecting_pairs: u64,
    pub possible_pairs: u64,
    pub effective_diameter: Option<DiameterEstimate>,
    /// Diameter computed on fewer than [`LOW_CONFIDENCE_NODES`] nodes.
    pub low_confidence: bool,
}

impl CheckpointStats {
    pub fn density_of_interactions(&self) -> Option<f64> {
        (self.possible_pairs > 0).then(|| self.intersecting_pairs as f64 / self.possible_pairs as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionSeries {
    pub rows: Vec<CheckpointStats>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// A slope fitted on a subset of checkpoints, with the row indices left out.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSlope {
    pub fit: SlopeFit,
    pub excluded: Vec<usize>,
}

impl EvolutionSeries {
    fn slope_where(
        &self,
        keep: impl Fn(&CheckpointStats) -> bool,
        x: impl Fn(&CheckpointStats) -> f64,
        y: impl Fn(&CheckpointStats) -> f64,
    ) -> Result<SeriesSlope, TemporalError> {
        let (mut xs, mut ys, mut excluded) = (Vec::new(), Vec::new(), Vec::new());
        for (i, r) in self.rows.iter().enumerate() {
            if keep(r) {
                xs.push(x(r));
                ys.push(y(r));
            } else {
                excluded.push(i);
            }
        }
        Ok(SeriesSlope { fit: loglog_slope(&xs, &ys)?, excluded })
    }

    /// Slope of ln |E_t| against ln |V_t|; above 1 means the average degree grows.
    pub fn densification_slope(&self) -> Result<SeriesSlope, TemporalError> {
        self.slope_where(|r| r.num_nodes > 0 && r.num_edges > 0, |r| r.num_nodes as f64, |r| r.num_edges as f64)
    }

    /// Slope of ln(intersecting pairs) against ln(possible pairs); below 1
    /// means the density of interactions shrinks. Checkpoints with no
    /// intersecting pair or fewer than two edges are excluded.
    pub fn interaction_slope(&self) -> Result<SeriesSlope, TemporalError> {
        self.slope_where(
            |r| r.intersecting_pairs > 0 && r.num_edges >= 2,
            |r| r.possible_pairs as f64,
            |r| r.intersecting_pairs as f64,
        )
    }

    /// Largest diameter over checkpoints with at least `min_nodes` nodes.
    pub fn max_diameter(&self, min_nodes: usize) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.num_nodes >= min_nodes)
            .filter_map(|r| r.effective_diameter.as_ref().map(|d| d.value))
            .max_by(f64::total_cmp)
    }

    pub fn final_diameter(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.effective_diameter.as_ref().map(|d| d.value))
    }
}

/// Prefix statistics at every checkpoint.
///
/// Intersecting pairs are counted in one pass: each new hyperedge adds the
/// number of distinct earlier hyperedges it meets. Diameters (when `diameter`
/// is given) are computed per checkpoint in parallel.
pub fn evolve(
    seq: &TimestampedHyperedgeSequence,
    schedule: &SnapshotSchedule,
    diameter: Option<&DiameterConfig>,
) -> Result<EvolutionSeries, TemporalError> {
    let records = seq.records();
    if schedule.checkpoints().last().is_some_and(|&k| k > records.len()) {
        return Err(TemporalError::InvalidSchedule { total: records.len() });
    }
    let max_node = records.iter().flat_map(|r| r.members().iter().copied()).max().map_or(0, |v| v as usize + 1);
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); max_node];
    let mut stamp: Vec<u32> = vec![u32::MAX; records.len()];
    let mut num_nodes = 0usize;
    let mut pairs = 0u64;
    let mut rows = Vec::with_capacity(schedule.len());
    let mut next = schedule.checkpoints().iter().peekable();
    for (i, r) in records.iter().enumerate() {
        let me = i as u32;
        for &v in r.members() {
            let list = &mut incident[v as usize];
            if list.is_empty() {
                num_nodes += 1;
            }
            for &j in list.iter() {
                if stamp[j as usize] != me {
                    stamp[j as usize] = me;
                    pairs += 1;
                }
            }
        }
        for &v in r.members() {
            incident[v as usize].push(me);
        }
        let k = i + 1;
        if next.peek() == Some(&&k) {
            next.next();
            rows.push(CheckpointStats {
                k,
                num_nodes,
                num_edges: k,
                intersecting_pairs: pairs,
                possible_pairs: choose2(k as u64),
                effective_diameter: None,
                low_confidence: num_nodes < LOW_CONFIDENCE_NODES,
            });
        }
    }
    if let Some(cfg) = diameter {
        let diameters: Vec<Result<Option<DiameterEstimate>, TemporalError>> = rows
            .par_iter()
            .map(|row| {
                let g = seq.prefix_snapshot(row.k)?;
                match patterns::effective_diameter(&g, cfg) {
                    Ok(d) => Ok(Some(d)),
                    Err(PatternError::UndefinedDiameter) => Ok(None),
                    Err(e) => Err(e.into()),
                }
            })
            .collect();
        for (row, d) in rows.iter_mut().zip(diameters) {
            row.effective_diameter = d?;
        }
    }
    Ok(EvolutionSeries { rows })
}

/// Ordinary least squares of ln y on ln x.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<SlopeFit, TemporalError> {
    if xs.len() != ys.len() {
        return Err(TemporalError::LengthMismatch);
    }
    if let Some(&bad) = xs.iter().chain(ys).find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(TemporalError::NonPositive(bad));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    if lx.len() < 2 {
        return Err(TemporalError::DegenerateFit);
    }
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(TemporalError::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    // a constant response is fitted exactly by a flat line
    let r_squared = if syy > 0.0 { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) } else { 1.0 };
    Ok(SlopeFit { slope, intercept, r_squared })
}

/// Distinct nodes among the first `k` records.
pub fn prefix_node_count(seq: &TimestampedHyperedgeSequence, k: usize) -> usize {
    let mut seen: Vec<NodeId> = seq.records()[..k].iter().flat_map(|r| r.members().iter().copied()).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}
