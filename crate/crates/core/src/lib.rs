//! Symmetric envy-freeness up to one good (symEF1) for indivisible goods.
//!
//! A partition of the items into `n` bundles is symEF1 when every agent would
//! be EF1-satisfied whichever bundle it received. The crate verifies the
//! property, builds partitions from agents' item rankings (round-robin, item
//! graph coloring), searches for them greedily or exhaustively, and runs
//! random-instance studies.
//!
//! ```
//! use symef1::{exact_symef1, is_symef1, ExactOutcome, Instance, SearchLimits};
//!
//! let inst: Instance = "2 3\n5 3 1\n1 3 5\n".parse().unwrap();
//! let ExactOutcome::Found(p) = exact_symef1(&inst, &SearchLimits::default()) else {
//!     panic!("two agents always admit a symEF1 partition");
//! };
//! assert!(is_symef1(&inst, &p).unwrap());
//! ```

pub mod cli;
pub mod constructive;
pub mod error;
pub mod exact;
pub mod fairness;
pub mod heuristic;
pub mod instance;
pub mod sim;
pub mod tuples;

pub use constructive::{agent_round_robin, detect_groups, grouped_allocation, GroupStructure};
pub use error::{Error, Result};
pub use exact::{
    enumerate_symef1, exact_symef1, export_ip, max_nash_welfare, ExactOutcome, NashOptimum,
    SearchLimits, Welfare,
};
pub use fairness::{
    bundle_value, ef1_violation, is_balanced, is_ef1_satisfied, is_symef1, is_symefx,
    items_distinct, nash_welfare, symef1_violation, symefx_violation, Violation,
};
pub use heuristic::{greedy_symef1, HeuristicOutcome, HeuristicResult, HeuristicStats, ItemOrder};
pub use instance::{Assignment, Instance, Partition};
pub use sim::{emit_csv, random_instance, run_simulation, SimConfig, SimReport};
pub use tuples::{
    build_item_graph, coloring_to_partition, components, count_lower_bound, graph_to_dot,
    indexed_tuples, k_color, ranking, separates_tuples, ColorOutcome, Coloring, IndexedTuples,
    ItemGraph,
};
