//! Discretizable molecular distance geometry on small backbones.
//!
//! Candidate conformations of an `n`-vertex instance are indexed by
//! `n - 3` sign bits. The crate realizes them from internal coordinates,
//! enumerates the feasible ones with Branch-and-Prune, builds the 0/1
//! penalty oracle, and simulates Grover search over the `2^(n-3)` candidates.
//!
//! ```
//! use dmdgp::{branch_and_prune, example_topology, extract_internal, generate_from_topology, BpOptions};
//!
//! let (inst, _) = generate_from_topology(&example_topology(), &"0101".parse().unwrap(), 1).unwrap();
//! let internal = extract_internal(&inst).unwrap();
//! let solutions = branch_and_prune(&inst, &internal, BpOptions::default()).unwrap();
//! assert_eq!(solutions.indices(), vec![4, 5, 10, 11]);
//! ```

// `!(x > 0.0)` style checks are kept on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bits;
pub mod bp;
pub mod cli;
pub mod data;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod grover;
pub mod instance;
pub mod metrics;
pub mod oracle;
pub mod render;

pub use bits::BitString;
pub use bp::{branch_and_prune, expand_symmetry, symmetry_set, BpOptions, SearchMode, SolutionSet, SymmetrySet};
pub use error::{Error, Result};
pub use experiment::{run_grover, Iterations, RunOptions, RunReport};
pub use geometry::{extract_internal, penalty, realize, Conformation, InternalCoords};
pub use grover::{
    grover_distribution, iteration_count, mix_uniform, sample, success_probability, Distribution, GroverPlan,
    IterationMode, Statevector,
};
pub use instance::{
    example_topology, generate, generate_from_topology, parse_instance, validate, DmdgpInstance, InstanceDocument,
};
pub use metrics::{hellinger, selectivity, total_variation, MetricsReport};
pub use oracle::{marked_set, oracle_eval, Oracle, OracleParams};
