//! Approximate equitable partitions of undirected graphs and the structural
//! node embeddings they induce.
//!
//! The pipeline is:
//!
//! 1. load a [`Graph`] from an edge list ([`load_edge_list`]);
//! 2. compute a partition whose blocks tolerate edge-count differences up to
//!    `eps`, either in one pass ([`refine()`]) or over an increasing
//!    tolerance schedule ([`iterative_refine`]);
//! 3. embed each node as its edge counts into the blocks ([`build_embedding`]);
//! 4. evaluate the embedding ([`eval`]).
//!
//! ```
//! use epsbe_core::{fixtures, refine, build_embedding, Partition};
//!
//! let g = fixtures::running_example();
//! let p = refine(&g, &Partition::single_block(g.num_nodes()), 1).unwrap();
//! assert_eq!(p.num_blocks(), 3);
//! let e = build_embedding(&g, &p).unwrap();
//! assert_eq!(e.row(0), &[0, 3, 0]);
//! ```

pub mod embed;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod iterative;
pub mod oracle;
pub mod partition;
pub mod refine;

pub use embed::{build_embedding, check_eps_be, EmbeddingMatrix, Violation};
pub use error::{Error, Result};
pub use graph::{load_edge_list, Graph};
pub use iterative::{iterative_refine, iterative_refine_with, join_singletons, EpsSchedule};
pub use partition::{make_initial_partition, Partition};
pub use refine::{
    accumulate_weights, possible_majority_candidate, refine, split_block, SplitterQueue,
    WeightTable,
};
