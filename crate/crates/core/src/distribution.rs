use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistributionError {
    #[error("value {0} is not a positive finite number")]
    NonPositive(f64),
    #[error("support must be strictly increasing")]
    Unsorted,
    #[error("support and counts differ in length")]
    LengthMismatch,
    #[error("zero count for value {0}")]
    ZeroCount(f64),
}

/// Value → count histogram over positive reals.
///
/// Integer-valued statistics (degrees, sizes, intersection sizes) are stored
/// as exact `f64`s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmpiricalDistribution {
    support: Vec<f64>,
    counts: Vec<u64>,
    total: u64,
}

impl EmpiricalDistribution {
    pub fn new(support: Vec<f64>, counts: Vec<u64>) -> Result<Self, DistributionError> {
        if support.len() != counts.len() {
            return Err(DistributionError::LengthMismatch);
        }
        for (&v, &c) in support.iter().zip(&counts) {
            if !(v.is_finite() && v > 0.0) {
                return Err(DistributionError::NonPositive(v));
            }
            if c == 0 {
                return Err(DistributionError::ZeroCount(v));
            }
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DistributionError::Unsorted);
        }
        let total = counts.iter().sum();
        Ok(Self { support, counts, total })
    }

    pub fn from_integer_counts(map: &BTreeMap<u64, u64>) -> Self {
        let (support, counts) = map
            .iter()
            .filter(|(&v, &c)| v > 0 && c > 0)
            .map(|(&v, &c)| (v as f64, c))
            .unzip();
        Self::new(support, counts).expect("BTreeMap keys are sorted positive integers")
    }

    pub fn from_integers<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let mut map = BTreeMap::new();
        for v in values {
            *map.entry(v).or_insert(0u64) += 1;
        }
        Self::from_integer_counts(&map)
    }

    /// Histogram of positive real samples; exact duplicates share a bin.
    pub fn from_reals<I: IntoIterator<Item = f64>>(values: I) -> Result<Self, DistributionError> {
        let mut vals: Vec<f64> = values.into_iter().collect();
        if let Some(&bad) = vals.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(DistributionError::NonPositive(bad));
        }
        vals.sort_by(f64::total_cmp);
        let mut support = Vec::new();
        let mut counts: Vec<u64> = Vec::new();
        for v in vals {
            if support.last() == Some(&v) {
                *counts.last_mut().unwrap() += 1;
            } else {
                support.push(v);
                counts.push(1);
            }
        }
        Self::new(support, counts)
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn distinct(&self) -> usize {
        self.support.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, u64)> + '_ {
        self.support.iter().copied().zip(self.counts.iter().copied())
    }

    /// Count for an exact value, 0 when absent.
    pub fn count_of(&self, value: f64) -> u64 {
        match self.support.binary_search_by(|v| v.total_cmp(&value)) {
            Ok(i) => self.counts[i],
            Err(_) => 0,
        }
    }

    /// Σ value·count.
    pub fn weighted_sum(&self) -> f64 {
        self.iter().map(|(v, c)| v * c as f64).sum()
    }

    /// The part of the histogram with value ≥ `xmin`.
    pub fn tail(&self, xmin: f64) -> EmpiricalDistribution {
        let start = self.support.partition_point(|&v| v < xmin);
        let support = self.support[start..].to_vec();
        let counts = self.counts[start..].to_vec();
        let total = counts.iter().sum();
        Self { support, counts, total }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_histogram() {
        let d = EmpiricalDistribution::from_integers([2, 1, 2, 5, 0]);
        assert_eq!(d.support(), &[1.0, 2.0, 5.0]);
        assert_eq!(d.counts(), &[1, 2, 1]);
        assert_eq!(d.total(), 4);
        assert_eq!(d.count_of(2.0), 2);
        assert_eq!(d.tail(2.0).total(), 3);
    }

    #[test]
    fn invalid_inputs() {
        assert!(EmpiricalDistribution::new(vec![2.0, 1.0], vec![1, 1]).is_err());
        assert!(EmpiricalDistribution::new(vec![1.0], vec![0]).is_err());
        assert!(EmpiricalDistribution::from_reals([1.0, -2.0]).is_err());
    }
}
