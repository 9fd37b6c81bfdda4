use crate::error::{Error, Result};
use crate::graph::Graph;

/// A partition of the nodes `0..n` into disjoint, non-empty blocks.
///
/// Always kept in canonical form: members of each block are sorted and blocks
/// are numbered by their smallest member. Two partitions are therefore equal
/// exactly when they have the same blocks as sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling `assignment[v] = block label`.
    pub fn from_assignment<T: Eq + std::hash::Hash>(assignment: &[T]) -> Partition {
        let mut renumber = std::collections::HashMap::new();
        let mut block_of = Vec::with_capacity(assignment.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, label) in assignment.iter().enumerate() {
            let b = *renumber.entry(label).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
            block_of.push(b);
        }
        Partition { block_of, blocks }
    }

    /// Builds a partition of `0..n` from explicit member lists, checking that
    /// they are disjoint, non-empty and cover every node.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut assignment = vec![usize::MAX; n];
        for (b, members) in blocks.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::validation(format!("block {b} is empty")));
            }
            for &v in members {
                if v >= n {
                    return Err(Error::NodeOutOfRange { node: v, num_nodes: n });
                }
                if assignment[v] != usize::MAX {
                    return Err(Error::validation(format!("node {v} appears in two blocks")));
                }
                assignment[v] = b;
            }
        }
        if let Some(v) = assignment.iter().position(|&b| b == usize::MAX) {
            return Err(Error::validation(format!("node {v} is not covered by any block")));
        }
        Ok(Partition::from_assignment(&assignment))
    }

    pub fn single_block(n: usize) -> Partition {
        Partition::from_assignment(&vec![0u8; n])
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            block_of: (0..n).collect(),
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.num_nodes() == coarser.num_nodes()
            && self.blocks.iter().all(|members| {
                let b = coarser.block_of(members[0]);
                members.iter().all(|&v| coarser.block_of(v) == b)
            })
    }

    /// `1 - d/n`, the fraction of dimensions saved by embedding into one
    /// column per block. Zero for the empty partition.
    pub fn reduction_ratio(&self) -> f64 {
        if self.num_nodes() == 0 {
            return 0.0;
        }
        1.0 - self.num_blocks() as f64 / self.num_nodes() as f64
    }
}

/// Initial partition for refinement: one block holding every node, or the
/// blocks given by `assignment` (one entry per node).
pub fn make_initial_partition(g: &Graph, assignment: Option<&[usize]>) -> Result<Partition> {
    match assignment {
        None => Ok(Partition::single_block(g.num_nodes())),
        Some(a) if a.len() != g.num_nodes() => Err(Error::validation(format!(
            "initial assignment covers {} nodes, graph has {}",
            a.len(),
            g.num_nodes()
        ))),
        Some(a) => Ok(Partition::from_assignment(a)),
    }
}

/// Checks that `p` is a partition of exactly the nodes of `g`.
pub(crate) fn ensure_matches(g: &Graph, p: &Partition) -> Result<()> {
    if g.num_nodes() != p.num_nodes() {
        return Err(Error::validation(format!(
            "partition covers {} nodes, graph has {}",
            p.num_nodes(),
            g.num_nodes()
        )));
    }
    Ok(())
}
