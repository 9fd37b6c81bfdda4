use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Eigenvector,
    Betweenness,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub measure: Measure,
    pub values: Vec<f64>,
}

/// Power-iteration output together with the conditions under which the
/// vector is meaningful.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorOutcome {
    pub centrality: CentralityVector,
    pub iterations: usize,
    pub converged: bool,
    /// On a disconnected graph the dominant eigenspace need not be simple and
    /// the returned vector depends on the starting point.
    pub connected: bool,
}

impl EigenvectorOutcome {
    pub fn is_reliable(&self) -> bool {
        self.converged && self.connected
    }
}

/// Leading eigenvector of the adjacency matrix, unit L2 norm, nonnegative.
///
/// Iterates `x <- (A + I) x / |(A + I) x|` from the all-ones vector until two
/// iterates differ by less than `tol` in the max norm. The identity shift
/// leaves the eigenvectors unchanged and makes the iteration converge on
/// bipartite graphs, where plain `A x` oscillates.
pub fn eigenvector_centrality(g: &Graph, tol: f64, max_iter: usize) -> Result<EigenvectorOutcome> {
    let n = g.num_nodes();
    if n == 0 {
        return Err(Error::validation("eigenvector centrality needs at least one node"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::validation("tolerance must be positive"));
    }

    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        for (v, out) in next.iter_mut().enumerate() {
            *out = x[v] + g.neighbors(v).iter().map(|&u| x[u]).sum::<f64>();
        }
        let norm = next.iter().map(|a| a * a).sum::<f64>().sqrt();
        next.iter_mut().for_each(|a| *a /= norm);
        let change = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if change < tol {
            converged = true;
            break;
        }
    }

    Ok(EigenvectorOutcome {
        centrality: CentralityVector {
            measure: Measure::Eigenvector,
            values: x,
        },
        iterations,
        converged,
        connected: g.is_connected(),
    })
}

/// Brandes accumulation of pair dependencies from one source, added into `acc`.
fn accumulate_source(g: &Graph, s: usize, acc: &mut [f64], scratch: &mut Scratch) {
    let Scratch {
        sigma,
        dist,
        delta,
        order,
        queue,
    } = scratch;
    sigma.fill(0.0);
    dist.fill(usize::MAX);
    delta.fill(0.0);
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    for &w in order.iter().rev() {
        for &v in g.neighbors(w) {
            if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
        }
        if w != s {
            acc[w] += delta[w];
        }
    }
}

struct Scratch {
    sigma: Vec<f64>,
    dist: Vec<usize>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            sigma: vec![0.0; n],
            dist: vec![0; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }
}

// Fixed so that summation order, and hence the result, is independent of the
// number of worker threads.
const SOURCES_PER_CHUNK: usize = 64;

/// Betweenness counts over unordered pairs `{s, t}` with `s != t`.
pub fn betweenness_raw(g: &Graph) -> Vec<f64> {
    let n = g.num_nodes();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCES_PER_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; n];
            let mut scratch = Scratch::new(n);
            for &s in chunk {
                accumulate_source(g, s, &mut acc, &mut scratch);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Every unordered pair was seen from both endpoints.
    total.iter_mut().for_each(|t| *t /= 2.0);
    total
}

/// Brandes betweenness, scaled by `2 / ((n-1)(n-2))` when `n >= 3`.
pub fn betweenness_centrality(g: &Graph) -> CentralityVector {
    let n = g.num_nodes();
    let mut values = betweenness_raw(g);
    if n >= 3 {
        let scale = 2.0 / ((n - 1) as f64 * (n - 2) as f64);
        values.iter_mut().for_each(|v| *v *= scale);
    }
    CentralityVector {
        measure: Measure::Betweenness,
        values,
    }
}
