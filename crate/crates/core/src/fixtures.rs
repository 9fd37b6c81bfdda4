//! Small named graphs and seeded random graph families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::partition::Partition;

fn numbered(n: usize, edges: &[(usize, usize)]) -> Graph {
    let labels = (1..=n).map(|v| v.to_string()).collect();
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Graph::from_labeled_edges(labels, &edges).expect("fixture edges are in range")
}

fn numbered_blocks(n: usize, blocks: &[&[usize]]) -> Partition {
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|&v| v - 1).collect())
        .collect();
    Partition::from_blocks(n, blocks).expect("fixture blocks partition the nodes")
}

/// Three-level tree on nodes labelled `1..=11`: root 1 with children 2, 3, 4;
/// node 2 has leaves 5, 6, 7; node 3 has 8, 9; node 4 has 10, 11.
pub fn running_example() -> Graph {
    numbered(
        11,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 8),
            (3, 9),
            (4, 10),
            (4, 11),
        ],
    )
}

/// `{1},{2},{3,4},{5,6,7},{8..11}`.
pub fn running_example_exact_partition() -> Partition {
    numbered_blocks(11, &[&[1], &[2], &[3, 4], &[5, 6, 7], &[8, 9, 10, 11]])
}

/// `{1},{2,3,4},{5..11}`.
pub fn running_example_tolerant_partition() -> Partition {
    numbered_blocks(11, &[&[1], &[2, 3, 4], &[5, 6, 7, 8, 9, 10, 11]])
}

/// Two four-node cliques joined through two parallel bridge nodes.
///
/// Nodes 1..4 form a complete clique and 3 is its attachment node. Nodes
/// 7..10 form a clique missing the edges 7-8 and 8-9, with 7 as its
/// attachment node. Bridges 5 and 6 are each adjacent to 3 and 7.
pub fn two_cliques() -> Graph {
    numbered(
        10,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 4),
            (3, 5),
            (3, 6),
            (5, 7),
            (6, 7),
            (7, 9),
            (7, 10),
            (8, 10),
            (9, 10),
        ],
    )
}

/// Exact partition of [`two_cliques`]: `{1,2,4},{3},{5,6},{7},{8},{9},{10}`.
pub fn two_cliques_exact_partition() -> Partition {
    numbered_blocks(10, &[&[1, 2, 4], &[3], &[5, 6], &[7], &[8], &[9], &[10]])
}

/// Result of tolerances 0 then 1 on [`two_cliques`]:
/// `{1,2,4},{3},{5,6},{7},{8,9,10}`.
pub fn two_cliques_iterative_partition() -> Partition {
    numbered_blocks(10, &[&[1, 2, 4], &[3], &[5, 6], &[7], &[8, 9, 10]])
}

/// Result of a single pass at tolerance 1 on [`two_cliques`]:
/// `{1,2,4},{3},{5,6,8,9},{7,10}`.
pub fn two_cliques_one_shot_partition() -> Partition {
    numbered_blocks(10, &[&[1, 2, 4], &[3], &[5, 6, 8, 9], &[7, 10]])
}

pub fn complete(k: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    Graph::from_edges(k, &edges).unwrap()
}

/// Hub 0 with leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    if n > 2 {
        edges.push((n - 1, 0));
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Two `clique`-node cliques joined by a path of `path_len` extra nodes.
///
/// Nodes `0..clique` form the first clique with `clique - 1` attached to the
/// path; the path occupies `clique..clique + path_len`; the second clique
/// follows, attached through its first node.
pub fn barbell(clique: usize, path_len: usize) -> Graph {
    let n = 2 * clique + path_len;
    let second = clique + path_len;
    let mut edges = Vec::new();
    for offset in [0, second] {
        for u in 0..clique {
            for v in u + 1..clique {
                edges.push((offset + u, offset + v));
            }
        }
    }
    let mut prev = clique - 1;
    for v in clique..=second {
        edges.push((prev, v));
        prev = v;
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Erdős–Rényi graph: each of the `n(n-1)/2` pairs is an edge with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// [`gnp`] plus a random recursive tree, so the result is always connected.
pub fn connected_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}
