//! Block-count embeddings.
//!
//! Given a partition with blocks `B_0..B_{d-1}`, node `i` is embedded as the
//! vector whose `k`-th entry counts the edges from `i` into `B_k`. Columns
//! follow the canonical block order (smallest member first). Within a block,
//! the spread of a column is exactly the tolerance that block needs against
//! that column's block, which gives a direct checker for approximate
//! equitability.

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::Graph;
use crate::partition::{ensure_matches, Partition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingMatrix {
    values: Vec<u32>,
    num_rows: usize,
    num_cols: usize,
    node_labels: Vec<String>,
}

impl EmbeddingMatrix {
    /// Wraps a row-major `labels.len() x num_cols` matrix.
    pub fn from_rows(node_labels: Vec<String>, num_cols: usize, values: Vec<u32>) -> Result<Self> {
        if values.len() != node_labels.len() * num_cols {
            return Err(crate::Error::Validation(format!(
                "{} values do not fill {} rows of {} columns",
                values.len(),
                node_labels.len(),
                num_cols
            )));
        }
        Ok(EmbeddingMatrix {
            values,
            num_rows: node_labels.len(),
            num_cols,
            node_labels,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    /// The embedding dimension `d`.
    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.values[i * self.num_cols..(i + 1) * self.num_cols]
    }

    pub fn get(&self, i: usize, k: usize) -> u32 {
        self.values[i * self.num_cols + k]
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.values
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_iterator(
            self.num_rows,
            self.num_cols,
            self.values.iter().map(|&x| x as f64),
        )
    }
}

pub fn build_embedding(g: &Graph, p: &Partition) -> Result<EmbeddingMatrix> {
    ensure_matches(g, p)?;
    let d = p.num_blocks();
    let mut values = vec![0u32; g.num_nodes() * d];
    if d > 0 {
        values.par_chunks_mut(d).enumerate().for_each(|(i, row)| {
            for &j in g.neighbors(i) {
                row[p.block_of(j)] += 1;
            }
        });
    }
    EmbeddingMatrix::from_rows(g.labels().to_vec(), d, values)
}

/// A block whose rows disagree by more than the tolerance in one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub block: usize,
    pub column: usize,
    pub span: u32,
}

/// Lists every (block, column) pair whose within-block spread exceeds `eps`.
/// An empty list means `p` satisfies the tolerance against every block.
pub fn check_eps_be(g: &Graph, p: &Partition, eps: u32) -> Result<Vec<Violation>> {
    let e = build_embedding(g, p)?;
    let d = e.num_cols();
    let mut violations = Vec::new();
    for (block, members) in p.blocks().iter().enumerate() {
        let mut lo = e.row(members[0]).to_vec();
        let mut hi = lo.clone();
        for &i in &members[1..] {
            for (k, &x) in e.row(i).iter().enumerate() {
                lo[k] = lo[k].min(x);
                hi[k] = hi[k].max(x);
            }
        }
        for column in 0..d {
            let span = hi[column] - lo[column];
            if span > eps {
                violations.push(Violation { block, column, span });
            }
        }
    }
    Ok(violations)
}
