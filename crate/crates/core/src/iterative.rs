//! Refinement over an increasing tolerance schedule.
//!
//! Each round refines at the current tolerance, then pools every node left
//! alone in a singleton block into one shared block that seeds the next round
//! at a larger tolerance. Groups found at small tolerances are kept, and only
//! the leftovers are offered the looser criterion.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{ensure_matches, Partition};
use crate::refine::refine;

/// Tolerances `eps0, eps0 + delta, ...` up to and including `max_eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsSchedule {
    eps0: u32,
    delta: u32,
    max_eps: u32,
}

impl EpsSchedule {
    pub fn new(eps0: u32, delta: u32, max_eps: u32) -> Result<Self> {
        if delta == 0 {
            return Err(Error::validation("tolerance step must be at least 1"));
        }
        if eps0 > max_eps {
            return Err(Error::validation(format!(
                "initial tolerance {eps0} exceeds maximum tolerance {max_eps}"
            )));
        }
        Ok(EpsSchedule { eps0, delta, max_eps })
    }

    /// A schedule with the single tolerance `eps`.
    pub fn once(eps: u32) -> Self {
        EpsSchedule {
            eps0: eps,
            delta: 1,
            max_eps: eps,
        }
    }

    pub fn eps0(&self) -> u32 {
        self.eps0
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn max_eps(&self) -> u32 {
        self.max_eps
    }

    pub fn num_iterations(&self) -> usize {
        ((self.max_eps - self.eps0) / self.delta) as usize + 1
    }

    pub fn tolerances(&self) -> impl Iterator<Item = u32> {
        let EpsSchedule { eps0, delta, .. } = *self;
        (0..self.num_iterations() as u32).map(move |i| eps0 + i * delta)
    }
}

/// Replaces all singleton blocks by their union.
pub fn join_singletons(p: &Partition) -> Partition {
    let pooled = p.num_blocks();
    let assignment: Vec<usize> = p
        .assignment()
        .iter()
        .map(|&b| if p.block(b).len() == 1 { pooled } else { b })
        .collect();
    Partition::from_assignment(&assignment)
}

/// Runs the schedule and returns the partition computed at the last tolerance.
///
/// Singletons of the final round are not pooled in the result.
pub fn iterative_refine(g: &Graph, init: &Partition, schedule: &EpsSchedule) -> Result<Partition> {
    iterative_refine_with(g, init, schedule, |_, _| {})
}

/// Like [`iterative_refine`], calling `observe(eps, partition)` after each round.
pub fn iterative_refine_with<F>(
    g: &Graph,
    init: &Partition,
    schedule: &EpsSchedule,
    mut observe: F,
) -> Result<Partition>
where
    F: FnMut(u32, &Partition),
{
    ensure_matches(g, init)?;
    let mut seed = init.clone();
    let mut last = None;
    for eps in schedule.tolerances() {
        let current = refine(g, &seed, eps)?;
        observe(eps, &current);
        seed = join_singletons(&current);
        last = Some(current);
    }
    Ok(last.expect("a schedule has at least one tolerance"))
}
