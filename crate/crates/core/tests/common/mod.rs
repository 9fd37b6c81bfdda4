//! Oracles shared by the integration test targets.

use std::collections::HashMap;

use epsbe_core::Graph;

/// Betweenness by listing every shortest path between every pair.
pub fn betweenness_by_enumeration(g: &Graph) -> Vec<f64> {
    let n = g.num_nodes();
    let inf = usize::MAX / 4;
    let mut dist = vec![vec![inf; n]; n];
    for (u, row) in dist.iter_mut().enumerate() {
        row[u] = 0;
        for &v in g.neighbors(u) {
            if u != v {
                row[v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if dist[i][k] + dist[k][j] < dist[i][j] {
                    dist[i][j] = dist[i][k] + dist[k][j];
                }
            }
        }
    }

    fn walk(
        g: &Graph,
        dist: &[Vec<usize>],
        at: usize,
        target: usize,
        path: &mut Vec<usize>,
        visits: &mut HashMap<usize, u64>,
        total: &mut u64,
    ) {
        if at == target {
            *total += 1;
            for &v in &path[1..path.len() - 1] {
                *visits.entry(v).or_default() += 1;
            }
            return;
        }
        for &next in g.neighbors(at) {
            if next != at && dist[next][target] + 1 == dist[at][target] {
                path.push(next);
                walk(g, dist, next, target, path, visits, total);
                path.pop();
            }
        }
    }

    let mut out = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if dist[s][t] >= inf {
                continue;
            }
            let mut visits = HashMap::new();
            let mut total = 0;
            walk(g, &dist, s, t, &mut vec![s], &mut visits, &mut total);
            for (v, c) in visits {
                out[v] += c as f64 / total as f64;
            }
        }
    }
    out
}
