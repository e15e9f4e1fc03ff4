//! A small random-instance study printed as CSV.
//!
//! Pass a replication count as the first argument for tighter estimates.

use symef1::{emit_csv, run_simulation, SimConfig};

fn main() {
    let replications = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(500);
    let cfg = SimConfig {
        n_list: vec![3, 4],
        m_list: vec![5, 6, 8, 10],
        max_values: vec![10, 10_000],
        replications,
        ..SimConfig::default()
    };
    print!("{}", emit_csv(&run_simulation(&cfg)));
}
