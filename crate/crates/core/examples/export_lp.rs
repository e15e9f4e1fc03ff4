//! Writes the 0/1 feasibility program for an external MILP solver.
//!
//! `cargo run --example export_lp > model.lp`

use symef1::{export_ip, Instance};

fn main() -> symef1::Result<()> {
    let inst: Instance = "2 3\n100 50 51\n100 51 50\n".parse()?;
    print!("{}", export_ip(&inst));
    Ok(())
}
