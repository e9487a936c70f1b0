//! Singular values of sparse 0/1 matrices (incidence and adjacency).
//!
//! Both routes work on the Gram operator of the smaller side (`M·Mᵀ` when
//! `rows ≤ cols`, else `Mᵀ·M`), whose eigenvalues are the squared singular
//! values. Small problems build the Gram matrix densely and use a symmetric
//! eigensolver; large ones run a thick-restarted Lanczos iteration with full
//! reorthogonalization, applying the Gram operator as two sparse products.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfRange { row: u32, col: u32, rows: usize, cols: usize },

    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: u32, col: u32 },

    #[error("k must be >= 1 and tol > 0 (k = {k}, tol = {tol})")]
    InvalidRequest { k: usize, tol: f64 },

    #[error("iterative solver did not converge after {restarts} restarts ({converged} of {requested} values converged)")]
    NotConverged { restarts: usize, converged: usize, requested: usize, partial: SingularSpectrum },
}

/// Sparse matrix with implicit unit entries, stored both row- and column-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBinaryMatrix {
    rows: usize,
    cols: usize,
    by_row: Vec<Vec<u32>>,
    by_col: Vec<Vec<u32>>,
}

impl SparseBinaryMatrix {
    pub fn from_entries(rows: usize, cols: usize, entries: &[(u32, u32)]) -> Result<Self, SpectralError> {
        let mut by_row = vec![Vec::new(); rows];
        let mut by_col = vec![Vec::new(); cols];
        for &(r, c) in entries {
            if r as usize >= rows || c as usize >= cols {
                return Err(SpectralError::OutOfRange { row: r, col: c, rows, cols });
            }
            by_row[r as usize].push(c);
            by_col[c as usize].push(r);
        }
        for (r, list) in by_row.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(SpectralError::DuplicateEntry { row: r as u32, col: w[0] });
            }
        }
        for list in &mut by_col {
            list.sort_unstable();
        }
        Ok(Self { rows, cols, by_row, by_col })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.by_row.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.by_row[r]
    }

    pub fn col(&self, c: usize) -> &[u32] {
        &self.by_col[c]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.by_row.iter().enumerate().flat_map(|(r, cs)| cs.iter().map(move |&c| (r as u32, c)))
    }

    pub fn transpose(&self) -> Self {
        Self { rows: self.cols, cols: self.rows, by_row: self.by_col.clone(), by_col: self.by_row.clone() }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (r, c) in self.entries() {
            m[(r as usize, c as usize)] = 1.0;
        }
        m
    }

    fn gram_side(&self) -> GramSide {
        if self.rows <= self.cols {
            GramSide::Rows
        } else {
            GramSide::Cols
        }
    }

    /// `out = G x` for the Gram operator of the smaller side.
    fn apply_gram(&self, x: &[f64], tmp: &mut [f64], out: &mut [f64]) {
        let (inner, outer) = match self.gram_side() {
            GramSide::Rows => (&self.by_col, &self.by_row),
            GramSide::Cols => (&self.by_row, &self.by_col),
        };
        // tmp = Mᵀ x (Rows side) or M x (Cols side)
        for (t, members) in tmp.iter_mut().zip(inner) {
            *t = members.iter().map(|&i| x[i as usize]).sum();
        }
        for (o, members) in out.iter_mut().zip(outer) {
            *o = members.iter().map(|&j| tmp[j as usize]).sum();
        }
    }

    fn dense_gram(&self) -> DMatrix<f64> {
        let (inner, n) = match self.gram_side() {
            GramSide::Rows => (&self.by_col, self.rows),
            GramSide::Cols => (&self.by_row, self.cols),
        };
        let mut g = DMatrix::zeros(n, n);
        for members in inner {
            for &a in members {
                for &b in members {
                    g[(a as usize, b as usize)] += 1.0;
                }
            }
        }
        g
    }
}

#[derive(Clone, Copy)]
enum GramSide {
    Rows,
    Cols,
}

/// Node × hyperedge incidence; duplicate hyperedges become identical columns.
pub fn incidence_matrix(g: &Hypergraph) -> SparseBinaryMatrix {
    let by_row: Vec<Vec<u32>> = (0..g.num_nodes() as u32).map(|v| g.incident_edges(v).to_vec()).collect();
    let by_col: Vec<Vec<u32>> = g.edges().iter().map(|e| e.members().to_vec()).collect();
    SparseBinaryMatrix { rows: g.num_nodes(), cols: g.num_edges(), by_row, by_col }
}

/// Symmetric adjacency of an undirected simple graph on `n` vertices.
pub fn adjacency_matrix(n: usize, edges: &[(u32, u32)]) -> Result<SparseBinaryMatrix, SpectralError> {
    let mut entries = Vec::with_capacity(edges.len() * 2);
    for &(a, b) in edges {
        entries.push((a, b));
        entries.push((b, a));
    }
    SparseBinaryMatrix::from_entries(n, n, &entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    Exact,
    Iterative,
}

impl SpectrumMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SpectrumMethod::Exact => "exact",
            SpectrumMethod::Iterative => "iterative",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    /// Descending, nonnegative.
    pub values: Vec<f64>,
    pub k_requested: usize,
    pub method: SpectrumMethod,
    pub residual_tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    /// Dense when `min(rows, cols) <= dense_threshold`, iterative otherwise.
    Auto,
    Dense,
    Iterative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    pub dense_threshold: usize,
    pub solver: SolverChoice,
    pub seed: u64,
    pub max_restarts: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self { dense_threshold: 1_000, solver: SolverChoice::Auto, seed: 0x51_6e_a1, max_restarts: 500 }
    }
}

pub const DEFAULT_TOP_K: usize = 500;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

pub fn singular_values(m: &SparseBinaryMatrix, k: usize, tol: f64) -> Result<SingularSpectrum, SpectralError> {
    singular_values_with(m, k, tol, &SpectralConfig::default())
}

pub fn singular_values_with(
    m: &SparseBinaryMatrix,
    k: usize,
    tol: f64,
    config: &SpectralConfig,
) -> Result<SingularSpectrum, SpectralError> {
    if k == 0 || !(tol > 0.0) {
        return Err(SpectralError::InvalidRequest { k, tol });
    }
    let n = m.rows.min(m.cols);
    let dense = match config.solver {
        SolverChoice::Dense => true,
        SolverChoice::Iterative => false,
        SolverChoice::Auto => n <= config.dense_threshold,
    };
    if n == 0 {
        let method = if dense { SpectrumMethod::Exact } else { SpectrumMethod::Iterative };
        return Ok(SingularSpectrum { values: Vec::new(), k_requested: k, method, residual_tolerance: tol });
    }
    if dense {
        let eig = SymmetricEigen::new(m.dense_gram());
        let mut values: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
        values.sort_by(|a, b| b.total_cmp(a));
        values.truncate(k);
        Ok(SingularSpectrum { values, k_requested: k, method: SpectrumMethod::Exact, residual_tolerance: tol })
    } else {
        lanczos_top(m, k.min(n), tol, config).map(|mut s| {
            s.k_requested = k;
            s
        })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthogonalizes `w` against `basis` twice; returns the accumulated coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut coeffs = vec![0.0; basis.len()];
    for _ in 0..2 {
        for (c, v) in coeffs.iter_mut().zip(basis) {
            let h = dot(v, w);
            *c += h;
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi -= h * vi;
            }
        }
    }
    coeffs
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng, basis: &[Vec<f64>]) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        orthogonalize(basis, &mut v);
        let nv = norm(&v);
        if nv > 1e-10 {
            v.iter_mut().for_each(|x| *x /= nv);
            return Some(v);
        }
    }
    None
}

/// Thick-restarted Lanczos for the top-`k` eigenpairs of the Gram operator.
///
/// Maintains an orthonormal basis `V` with `G·V = V·H + r·e_lastᵀ`, where
/// `H = Vᵀ·G·V` is assembled from explicit projections. At each restart the
/// basis is compressed to the leading Ritz vectors.
fn lanczos_top(
    m: &SparseBinaryMatrix,
    k: usize,
    tol: f64,
    config: &SpectralConfig,
) -> Result<SingularSpectrum, SpectralError> {
    let n = m.rows.min(m.cols);
    let other = m.rows.max(m.cols);
    let max_dim = n.min((2 * k + 20).max(k + 32));
    let keep = (k + (max_dim - k) / 2).min(max_dim - 1).max(k.min(max_dim - 1));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tmp = vec![0.0; other];
    let mut w = vec![0.0; n];

    let mut basis: Vec<Vec<f64>> = vec![random_unit(n, &mut rng, &[]).expect("n >= 1")];
    let mut h = DMatrix::<f64>::zeros(max_dim, max_dim);
    let mut residual = vec![0.0; n];
    let mut last_theta: Vec<f64> = Vec::new();
    let mut converged = 0;

    for restart in 0..=config.max_restarts {
        // expand the basis to max_dim columns
        let mut j = basis.len() - 1;
        loop {
            m.apply_gram(&basis[j], &mut tmp, &mut w);
            let coeffs = orthogonalize(&basis, &mut w);
            for (i, &c) in coeffs.iter().enumerate() {
                h[(i, j)] = c;
                h[(j, i)] = c;
            }
            residual.copy_from_slice(&w);
            if basis.len() == max_dim {
                break;
            }
            let beta = norm(&w);
            let scale = h.iter().fold(0.0f64, |a, &x| a.max(x.abs())).max(1.0);
            let next = if beta > 1e-12 * scale {
                w.iter().map(|x| x / beta).collect()
            } else {
                // invariant subspace found; continue with a fresh direction
                match random_unit(n, &mut rng, &basis) {
                    Some(v) => v,
                    None => break,
                }
            };
            basis.push(next);
            j += 1;
        }

        let dim = basis.len();
        let eig = SymmetricEigen::new(h.view((0, 0), (dim, dim)).into_owned());
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let beta = norm(&residual);
        let theta_max = eig.eigenvalues[order[0]].max(0.0);
        let top = k.min(dim);
        converged = order[..top]
            .iter()
            .take_while(|&&i| {
                let res = beta * eig.eigenvectors[(dim - 1, i)].abs();
                let theta = eig.eigenvalues[i].max(0.0);
                res <= tol * if theta > 0.0 { theta } else { theta_max.max(1.0) }
            })
            .count();
        last_theta = order[..top].iter().map(|&i| eig.eigenvalues[i]).collect();
        if converged == top || dim == n {
            break;
        }
        if restart == config.max_restarts {
            break;
        }

        // compress to the leading Ritz vectors
        let keep_now = keep.min(dim - 1);
        let mut new_basis = Vec::with_capacity(max_dim);
        for &i in &order[..keep_now] {
            let y = eig.eigenvectors.column(i);
            let mut x = vec![0.0; n];
            for (col, &c) in basis.iter().zip(y.iter()) {
                for (xi, vi) in x.iter_mut().zip(col) {
                    *xi += c * vi;
                }
            }
            new_basis.push(x);
        }
        h.fill(0.0);
        for (slot, &i) in order[..keep_now].iter().enumerate() {
            h[(slot, slot)] = eig.eigenvalues[i];
        }
        let mut next = residual.clone();
        orthogonalize(&new_basis, &mut next);
        let nb = norm(&next);
        let next = if nb > 1e-12 * theta_max.max(1.0) {
            next.iter().map(|x| x / nb).collect()
        } else {
            match random_unit(n, &mut rng, &new_basis) {
                Some(v) => v,
                None => {
                    basis = new_basis;
                    break;
                }
            }
        };
        new_basis.push(next);
        basis = new_basis;
    }

    let values: Vec<f64> = last_theta.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let spectrum =
        SingularSpectrum { values, k_requested: k, method: SpectrumMethod::Iterative, residual_tolerance: tol };
    if converged < spectrum.values.len() && basis.len() < n {
        return Err(SpectralError::NotConverged {
            restarts: config.max_restarts,
            converged,
            requested: k,
            partial: spectrum,
        });
    }
    Ok(spectrum)
}
