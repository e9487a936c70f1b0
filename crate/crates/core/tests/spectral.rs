mod common;

use common::*;
use hyperff_core::spectral::{
    incidence_matrix, singular_values, singular_values_with, SolverChoice, SparseBinaryMatrix, SpectralConfig,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_matrix(seed: u64, max_rows: usize, max_cols: usize) -> SparseBinaryMatrix {
    let mut r = rng(seed);
    let rows = r.random_range(1..=max_rows);
    let cols = r.random_range(1..=max_cols);
    let density: f64 = r.random_range(0.02..0.5);
    let mut entries = Vec::new();
    for i in 0..rows as u32 {
        for j in 0..cols as u32 {
            if r.random_bool(density) {
                entries.push((i, j));
            }
        }
    }
    SparseBinaryMatrix::from_entries(rows, cols, &entries).unwrap()
}

/// Full singular values from nalgebra's SVD, descending, zeros dropped.
/// The Gram-based solver resolves zero singular values only to about 1e-8.
fn oracle(m: &SparseBinaryMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.to_dense().svd(false, false).singular_values.iter().copied().filter(|&x| x > 1e-6).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.len(), b.len(), "{:?} vs {:?}", a, b);
    for (x, y) in a.iter().zip(b) {
        prop_assert!((x - y).abs() <= tol * y.max(1.0), "{} vs {}", x, y);
    }
    Ok(())
}

fn nonzero(v: &[f64]) -> Vec<f64> {
    v.iter().copied().filter(|&x| x > 1e-6).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dense_path_matches_full_svd(seed in any::<u64>()) {
        let m = random_matrix(seed, 30, 30);
        let got = singular_values(&m, 1_000, 1e-10).unwrap();
        assert_close(&nonzero(&got.values), &oracle(&m), 1e-8)?;
    }

    #[test]
    fn iterative_top_k_matches_full_svd(seed in any::<u64>(), k in 1usize..6) {
        let m = random_matrix(seed, 60, 60);
        let cfg = SpectralConfig { solver: SolverChoice::Iterative, ..Default::default() };
        let got = singular_values_with(&m, k, 1e-10, &cfg).unwrap();
        let want = oracle(&m);
        let want = &want[..k.min(want.len())];
        assert_close(&nonzero(&got.values)[..want.len().min(got.values.len())], want, 1e-6)?;
    }

    #[test]
    fn invariant_under_row_and_column_permutations(seed in any::<u64>()) {
        let m = random_matrix(seed, 25, 25);
        let mut r = rng(seed ^ 1);
        let mut rp: Vec<u32> = (0..m.rows() as u32).collect();
        let mut cp: Vec<u32> = (0..m.cols() as u32).collect();
        rp.shuffle(&mut r);
        cp.shuffle(&mut r);
        let entries: Vec<(u32, u32)> = m.entries().map(|(i, j)| (rp[i as usize], cp[j as usize])).collect();
        let p = SparseBinaryMatrix::from_entries(m.rows(), m.cols(), &entries).unwrap();
        let a = singular_values(&m, 100, 1e-10).unwrap().values;
        let b = singular_values(&p, 100, 1e-10).unwrap().values;
        assert_close(&nonzero(&a), &nonzero(&b), 1e-9)?;
        let t = singular_values(&m.transpose(), 100, 1e-10).unwrap().values;
        assert_close(&nonzero(&a), &nonzero(&t), 1e-9)?;
    }

    #[test]
    fn frobenius_and_max_row_bounds(seed in any::<u64>(), k in 1usize..10) {
        let g = random_hypergraph(seed, 30, 30);
        let m = incidence_matrix(&g);
        let s = singular_values(&m, k, 1e-10).unwrap().values;
        prop_assert!(s.windows(2).all(|w| w[0] >= w[1]));
        let energy: f64 = s.iter().map(|x| x * x).sum();
        prop_assert!(energy <= m.nnz() as f64 + 1e-8);
        let widest = (0..m.rows()).map(|i| m.row(i).len()).chain((0..m.cols()).map(|j| m.col(j).len())).max().unwrap();
        prop_assert!(s[0] + 1e-9 >= (widest as f64).sqrt());
        if k >= m.rows().min(m.cols()) {
            prop_assert!((energy - m.nnz() as f64).abs() < 1e-8);
        }
    }
}

#[test]
fn large_sparse_incidence_uses_iterative_solver() {
    let g = random_hypergraph(5, 3_000, 2_500);
    let m = incidence_matrix(&g);
    let s = singular_values(&m, 10, 1e-8).unwrap();
    assert_eq!(s.values.len(), 10);
    let dense = singular_values_with(&m, 10, 1e-8, &SpectralConfig { solver: SolverChoice::Dense, ..Default::default() })
        .unwrap();
    for (a, b) in s.values.iter().zip(&dense.values) {
        assert!((a - b).abs() < 1e-6 * b, "{a} vs {b}");
    }
}
