//! Slow reference implementations used to cross-check the refinement engine.
//!
//! Nothing here shares code with [`crate::refine`] or [`crate::embed`]: the
//! coarsest equitable partition is found by repeated whole-signature
//! regrouping, and tolerance validity is checked by a literal double loop
//! over node pairs.

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::partition::Partition;

fn count_into(g: &Graph, v: usize, block: &[usize]) -> u32 {
    block.iter().filter(|&&k| g.has_edge(v, k)).count() as u32
}

/// Coarsest equitable partition refining `init`, by naive fixpoint iteration.
///
/// Each round regroups every block by the full vector of member edge counts
/// into all current blocks, until a round leaves the block count unchanged.
pub fn coarsest_equitable_partition_naive(g: &Graph, init: &Partition) -> Partition {
    assert_eq!(g.num_nodes(), init.num_nodes(), "partition does not match graph");
    let mut current = init.clone();
    loop {
        let mut groups: BTreeMap<(usize, Vec<u32>), Vec<usize>> = BTreeMap::new();
        for v in 0..g.num_nodes() {
            let signature: Vec<u32> = current
                .blocks()
                .iter()
                .map(|block| count_into(g, v, block))
                .collect();
            groups
                .entry((current.block_of(v), signature))
                .or_default()
                .push(v);
        }
        let next = Partition::from_blocks(g.num_nodes(), groups.into_values().collect())
            .expect("signature groups cover every node once");
        if next.num_blocks() == current.num_blocks() {
            return next;
        }
        current = next;
    }
}

/// Checks that any two nodes sharing a block differ by at most `eps` in
/// their edge counts into every block.
pub fn validate_eps_be_naive(g: &Graph, p: &Partition, eps: u32) -> bool {
    assert_eq!(g.num_nodes(), p.num_nodes(), "partition does not match graph");
    for block in p.blocks() {
        for target in p.blocks() {
            for &i in block {
                for &j in block {
                    let a = count_into(g, i, target) as i64;
                    let b = count_into(g, j, target) as i64;
                    if (a - b).abs() > eps as i64 {
                        return false;
                    }
                }
            }
        }
    }
    true
}
