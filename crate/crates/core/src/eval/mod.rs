//! Downstream evaluation: centrality targets, linear regression on
//! embeddings, and 2-D PCA coordinates for plotting.

mod centrality;
mod pca;
mod regression;

pub use centrality::{
    betweenness_centrality, betweenness_raw, eigenvector_centrality, CentralityVector,
    EigenvectorOutcome, Measure,
};
pub use pca::{pca_2d, pca_2d_dense, Pca2d};
pub use regression::{
    fit_regression, fit_regression_dense, repeated_regression, Normalization, RegressionConfig,
    RegressionResult,
};
