//! Tolerance-aware partition refinement.
//!
//! Starting from an initial partition, every block is used in turn as a
//! *splitter*: each node's number of edges into the splitter is counted, and
//! every block containing a node with a nonzero count is cut into runs whose
//! counts differ by at most `eps`. Any block that gets cut is replaced by its
//! parts, all of which are queued as future splitters. The loop ends when the
//! queue is empty.
//!
//! Unlike exact lumping algorithms, the largest part of a split block is not
//! skipped when re-queueing: with a nonzero tolerance, skipping it can leave
//! blocks that violate the tolerance against the skipped part.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::Graph;
use crate::partition::{ensure_matches, Partition};

/// FIFO worklist of block ids with O(1) membership and lazy removal.
#[derive(Debug, Clone, Default)]
pub struct SplitterQueue {
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    live: usize,
}

impl SplitterQueue {
    pub fn new() -> Self {
        Self::default()
    }

    /// Enqueues `block` unless it is already pending. Returns whether it was added.
    pub fn push(&mut self, block: usize) -> bool {
        if block >= self.queued.len() {
            self.queued.resize(block + 1, false);
        }
        if self.queued[block] {
            return false;
        }
        self.queued[block] = true;
        self.queue.push_back(block);
        self.live += 1;
        true
    }

    pub fn pop(&mut self) -> Option<usize> {
        while let Some(block) = self.queue.pop_front() {
            if self.queued[block] {
                self.queued[block] = false;
                self.live -= 1;
                return Some(block);
            }
        }
        None
    }

    /// Drops `block` from the queue if it is pending.
    pub fn remove(&mut self, block: usize) {
        if self.contains(block) {
            self.queued[block] = false;
            self.live -= 1;
        }
    }

    pub fn contains(&self, block: usize) -> bool {
        self.queued.get(block).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }
}

/// Per-node edge counts into the current splitter.
#[derive(Debug, Clone)]
pub struct WeightTable {
    weights: Vec<u32>,
    touched: Vec<usize>,
}

impl WeightTable {
    pub fn new(num_nodes: usize) -> Self {
        WeightTable {
            weights: vec![0; num_nodes],
            touched: Vec::new(),
        }
    }

    /// Adds one to `w[s]` for every edge between `s` and a splitter member.
    ///
    /// Nodes enter `touched` in the order they are first reached, scanning
    /// the splitter's members and their sorted neighbor lists in order.
    pub fn accumulate(&mut self, g: &Graph, splitter: &[usize]) {
        for &member in splitter {
            for &s in g.neighbors(member) {
                if self.weights[s] == 0 {
                    self.touched.push(s);
                }
                self.weights[s] += 1;
            }
        }
    }

    #[inline]
    pub fn weight(&self, s: usize) -> u32 {
        self.weights[s]
    }

    pub fn touched(&self) -> &[usize] {
        &self.touched
    }

    /// Zeroes every touched entry.
    pub fn reset(&mut self) {
        for &s in &self.touched {
            self.weights[s] = 0;
        }
        self.touched.clear();
    }
}

/// Edge counts from every node of `g` into `splitter`.
pub fn accumulate_weights(g: &Graph, splitter: &[usize]) -> WeightTable {
    let mut table = WeightTable::new(g.num_nodes());
    table.accumulate(g, splitter);
    table
}

/// Boyer-Moore vote. If some value fills more than half of `values` it is
/// returned; otherwise the result is some element of `values`.
pub fn possible_majority_candidate(values: &[u32]) -> Option<u32> {
    let mut candidate = *values.first()?;
    let mut count = 0usize;
    for &x in values {
        if count == 0 {
            candidate = x;
            count = 1;
        } else if x == candidate {
            count += 1;
        } else {
            count -= 1;
        }
    }
    Some(candidate)
}

/// Cuts one block into runs of nearly equal weight.
///
/// Members are ordered by `(weight, node id)` and grouped greedily: a new
/// group starts as soon as a weight exceeds the first weight of the current
/// group by more than `eps`. Members with weight zero take part like any
/// other. The result has a single group exactly when the block's weight span
/// is at most `eps`.
pub fn split_block(members: &[usize], weights: &WeightTable, eps: u32) -> Vec<Vec<usize>> {
    if members.is_empty() {
        return Vec::new();
    }
    let order = if eps == 0 {
        order_around_majority(members, weights)
    } else {
        order_by_weight(members, weights)
    };

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut anchor = weights.weight(order[0]);
    let mut current = Vec::new();
    for s in order {
        let w = weights.weight(s);
        if w - anchor > eps {
            groups.push(std::mem::take(&mut current));
            anchor = w;
        }
        current.push(s);
    }
    groups.push(current);
    groups
}

fn sorted_ids(mut ids: Vec<usize>) -> Vec<usize> {
    if !ids.is_sorted() {
        ids.sort_unstable();
    }
    ids
}

fn order_by_weight(members: &[usize], weights: &WeightTable) -> Vec<usize> {
    // The untouched prefix is already in id order; only touched members need sorting.
    let (zero, mut rest): (Vec<usize>, Vec<usize>) =
        members.iter().partition(|&&s| weights.weight(s) == 0);
    rest.sort_unstable_by_key(|&s| (weights.weight(s), s));
    let mut order = sorted_ids(zero);
    order.extend(rest);
    order
}

/// Exact-match ordering: members whose weight equals the possible majority
/// candidate skip the sort and are spliced in at their sorted position.
fn order_around_majority(members: &[usize], weights: &WeightTable) -> Vec<usize> {
    let values: Vec<u32> = members.iter().map(|&s| weights.weight(s)).collect();
    let pmc = possible_majority_candidate(&values).expect("members is non-empty");
    let (run, mut rest): (Vec<usize>, Vec<usize>) =
        members.iter().partition(|&&s| weights.weight(s) == pmc);
    rest.sort_unstable_by_key(|&s| (weights.weight(s), s));
    let at = rest.partition_point(|&s| weights.weight(s) < pmc);
    let tail = rest.split_off(at);
    rest.extend(sorted_ids(run));
    rest.extend(tail);
    rest
}

/// Refines `init` until every block has weight span at most `eps` against
/// every block, splitter by splitter.
///
/// The result refines `init`, is in canonical form and depends only on the
/// inputs.
pub fn refine(g: &Graph, init: &Partition, eps: u32) -> Result<Partition> {
    ensure_matches(g, init)?;
    let mut state = Refinement::new(g, init);
    state.run(eps);
    Ok(state.into_partition())
}

struct Refinement<'g> {
    graph: &'g Graph,
    block_of: Vec<usize>,
    // Indexed by block id. Retired blocks are left empty; ids are never reused.
    blocks: Vec<Vec<usize>>,
    queue: SplitterQueue,
    weights: WeightTable,
    marked: Vec<bool>,
}

impl<'g> Refinement<'g> {
    fn new(graph: &'g Graph, init: &Partition) -> Self {
        let blocks = init.blocks().to_vec();
        let mut queue = SplitterQueue::new();
        for b in 0..blocks.len() {
            queue.push(b);
        }
        Refinement {
            graph,
            block_of: init.assignment().to_vec(),
            marked: vec![false; blocks.len()],
            blocks,
            queue,
            weights: WeightTable::new(graph.num_nodes()),
        }
    }

    fn run(&mut self, eps: u32) {
        let mut affected = Vec::new();
        while let Some(splitter) = self.queue.pop() {
            let members = self.blocks[splitter].clone();
            self.weights.accumulate(self.graph, &members);

            for &s in self.weights.touched() {
                let b = self.block_of[s];
                if !self.marked[b] {
                    self.marked[b] = true;
                    affected.push(b);
                }
            }

            for &b in &affected {
                self.marked[b] = false;
                let groups = split_block(&self.blocks[b], &self.weights, eps);
                if groups.len() > 1 {
                    self.replace(b, groups);
                }
            }
            affected.clear();
            self.weights.reset();
        }
    }

    fn replace(&mut self, block: usize, groups: Vec<Vec<usize>>) {
        self.queue.remove(block);
        self.blocks[block] = Vec::new();
        for mut group in groups {
            group.sort_unstable();
            let id = self.blocks.len();
            for &v in &group {
                self.block_of[v] = id;
            }
            self.blocks.push(group);
            self.marked.push(false);
            self.queue.push(id);
        }
    }

    fn into_partition(self) -> Partition {
        Partition::from_assignment(&self.block_of)
    }
}
