use nalgebra::{DMatrix, DVector};

use crate::embed::EmbeddingMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Pca2d {
    /// One `[pc1, pc2]` pair per input row.
    pub coords: Vec<[f64; 2]>,
    pub explained_variance: [f64; 2],
    /// Set when the data has fewer than two directions of variance (a single
    /// column, or numerically rank one). The second coordinate is then zero.
    pub second_degenerate: bool,
}

const MAX_ITER: usize = 100_000;
const CONVERGENCE: f64 = 1e-15;
// Eigenvalues below this fraction of the total variance count as zero.
const NEGLIGIBLE: f64 = 1e-12;

pub fn pca_2d(embedding: &EmbeddingMatrix) -> Result<Pca2d> {
    pca_2d_dense(&embedding.to_f64())
}

/// Projects the column-centered rows of `data` onto its top two principal
/// directions, found by power iteration with deflation on the covariance.
///
/// Each component is signed so that its largest-magnitude coordinate is positive.
pub fn pca_2d_dense(data: &DMatrix<f64>) -> Result<Pca2d> {
    let (n, d) = data.shape();
    if n < 2 || d == 0 {
        return Err(Error::validation(format!(
            "PCA needs at least two rows and one column, got {n}x{d}"
        )));
    }

    let mut centered = data.clone();
    for mut col in centered.column_iter_mut() {
        let mean = col.mean();
        col.add_scalar_mut(-mean);
    }
    let mut cov = centered.transpose() * &centered / (n as f64 - 1.0);
    let total = cov.trace();

    let mut components = Vec::with_capacity(2);
    let mut variances = [0.0; 2];
    let mut second_degenerate = d == 1;
    for (slot, variance) in variances.iter_mut().enumerate().take(d) {
        let (value, vector) = dominant_eigenpair(&cov);
        if slot == 1 && value <= NEGLIGIBLE * total.max(f64::MIN_POSITIVE) {
            second_degenerate = true;
            break;
        }
        cov -= &vector * vector.transpose() * value;
        *variance = value;
        components.push(vector);
    }

    let mut coords = vec![[0.0; 2]; n];
    for (slot, direction) in components.iter().enumerate() {
        let mut scores = &centered * direction;
        let pivot = scores.iter().fold(0.0f64, |best, &s| if s.abs() > best.abs() { s } else { best });
        if pivot < 0.0 {
            scores.neg_mut();
        }
        for (row, s) in coords.iter_mut().zip(scores.iter()) {
            row[slot] = *s;
        }
    }

    Ok(Pca2d {
        coords,
        explained_variance: variances,
        second_degenerate,
    })
}

/// Largest eigenvalue and unit eigenvector of a symmetric positive
/// semidefinite matrix.
fn dominant_eigenpair(m: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let d = m.nrows();
    // Start from the column with the largest diagonal entry, nudged off any
    // coordinate-aligned subspace.
    let k = (0..d).max_by(|&a, &b| m[(a, a)].total_cmp(&m[(b, b)])).unwrap_or(0);
    let mut v = m.column(k).into_owned() + DVector::from_fn(d, |i, _| 1e-3 / (i as f64 + 1.0));
    if v.norm() == 0.0 {
        v = DVector::from_element(d, 1.0);
    }
    v.normalize_mut();

    for _ in 0..MAX_ITER {
        let mut next = m * &v;
        let norm = next.norm();
        if norm == 0.0 {
            return (0.0, v);
        }
        next /= norm;
        let change = (&next - &v).amax();
        v = next;
        if change < CONVERGENCE {
            break;
        }
    }
    let value = v.dot(&(m * &v));
    (value, v)
}
