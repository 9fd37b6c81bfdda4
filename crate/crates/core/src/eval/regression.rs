use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embed::EmbeddingMatrix;
use crate::error::{Error, Result};

/// What the test-set MSE is divided by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Mean true target over the test nodes.
    #[default]
    TestMean,
    /// Mean true target over all nodes.
    GlobalMean,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionConfig {
    pub test_fraction: f64,
    pub seed: u64,
    pub normalization: Normalization,
}

impl Default for RegressionConfig {
    fn default() -> Self {
        RegressionConfig {
            test_fraction: 0.2,
            seed: 0,
            normalization: Normalization::TestMean,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionResult {
    pub nmse: f64,
    pub mse: f64,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
    /// Whether the normal equations needed the ridge term to be solvable.
    pub ridge_used: bool,
}

// Relative pivot below which the Gram matrix is treated as singular.
const SINGULAR_PIVOT: f64 = 1e-10;
const RIDGE_SCALE: f64 = 1e-8;

/// Ordinary least squares with intercept, trained on a seeded random split.
pub fn fit_regression(
    embedding: &EmbeddingMatrix,
    target: &[f64],
    config: &RegressionConfig,
) -> Result<RegressionResult> {
    fit_regression_dense(&embedding.to_f64(), target, config)
}

/// [`fit_regression`] on an arbitrary real feature matrix, one row per node.
pub fn fit_regression_dense(
    features: &DMatrix<f64>,
    target: &[f64],
    config: &RegressionConfig,
) -> Result<RegressionResult> {
    let n = features.nrows();
    if target.len() != n {
        return Err(Error::validation(format!(
            "{} targets for {} embedding rows",
            target.len(),
            n
        )));
    }
    if !(config.test_fraction > 0.0 && config.test_fraction < 1.0) {
        return Err(Error::validation("test fraction must lie strictly between 0 and 1"));
    }
    let num_test = (n as f64 * config.test_fraction).round() as usize;
    if num_test == 0 || num_test >= n {
        return Err(Error::validation(format!(
            "a test fraction of {} leaves an empty train or test set on {} nodes",
            config.test_fraction, n
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(config.seed));
    let mut test = order[..num_test].to_vec();
    let mut train = order[num_test..].to_vec();
    test.sort_unstable();
    train.sort_unstable();

    let design = |rows: &[usize]| {
        DMatrix::from_fn(rows.len(), features.ncols() + 1, |r, c| {
            if c == 0 {
                1.0
            } else {
                features[(rows[r], c - 1)]
            }
        })
    };
    let x_train = design(&train);
    let y_train = DVector::from_iterator(train.len(), train.iter().map(|&i| target[i]));
    let (coef, ridge_used) = solve_normal_equations(&x_train, &y_train)?;

    let x_test = design(&test);
    let predicted = &x_test * &coef;
    let mse = test
        .iter()
        .zip(predicted.iter())
        .map(|(&i, p)| (target[i] - p).powi(2))
        .sum::<f64>()
        / test.len() as f64;
    let scale = match config.normalization {
        Normalization::TestMean => test.iter().map(|&i| target[i]).sum::<f64>() / test.len() as f64,
        Normalization::GlobalMean => target.iter().sum::<f64>() / n as f64,
    };

    Ok(RegressionResult {
        nmse: mse / scale,
        mse,
        train,
        test,
        seed: config.seed,
        ridge_used,
    })
}

/// Runs `repeats` fits with seeds `config.seed, config.seed + 1, ...`.
pub fn repeated_regression(
    embedding: &EmbeddingMatrix,
    target: &[f64],
    config: &RegressionConfig,
    repeats: usize,
) -> Result<Vec<RegressionResult>> {
    let features = embedding.to_f64();
    (0..repeats as u64)
        .map(|r| {
            let cfg = RegressionConfig {
                seed: config.seed.wrapping_add(r),
                ..*config
            };
            fit_regression_dense(&features, target, &cfg)
        })
        .collect()
}

/// Solves `X'X b = X'y`. Falls back to adding `1e-8 * trace(X'X)` to the
/// non-intercept diagonal when the Gram matrix is numerically singular.
fn solve_normal_equations(x: &DMatrix<f64>, y: &DVector<f64>) -> Result<(DVector<f64>, bool)> {
    let xt = x.transpose();
    let gram = &xt * x;
    let rhs = &xt * y;
    let max_diag = gram.diagonal().max();

    if let Some(chol) = gram.clone().cholesky() {
        let min_pivot = chol.l_dirty().diagonal().iter().fold(f64::INFINITY, |m, &d| m.min(d * d));
        if min_pivot > SINGULAR_PIVOT * max_diag {
            return Ok((chol.solve(&rhs), false));
        }
    }

    let lambda = RIDGE_SCALE * gram.trace();
    let mut ridged = gram;
    for k in 1..ridged.nrows() {
        ridged[(k, k)] += lambda;
    }
    let chol = ridged
        .cholesky()
        .ok_or_else(|| Error::validation("normal equations are singular even with ridge term"))?;
    Ok((chol.solve(&rhs), true))
}
