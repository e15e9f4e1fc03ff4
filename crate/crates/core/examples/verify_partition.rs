//! Checks partitions against symEF1, symEFX and plain EF1.
//!
//! Run with `cargo run --example verify_partition`.

use symef1::{ef1_violation, is_symefx, symef1_violation, Assignment, Instance, Partition};

fn main() -> symef1::Result<()> {
    // Three agents, six items a..f. The item graph has a 5-clique, yet this
    // partition is symEF1.
    let inst: Instance = "3 6\n1 2 3 4 5 6\n1 2 4 3 5 6\n1 2 4 5 3 6\n".parse()?;
    let p = Partition::parse("1 6\n3 5\n2 4\n", 3, 6)?;
    println!(
        "({{a,f}},{{c,e}},{{b,d}}): symEF1 violation = {:?}",
        symef1_violation(&inst, &p)?
    );
    println!("symEFX: {}", is_symefx(&inst, &p)?);

    // No partition of this instance is symEF1.
    let t1: Instance = "3 4\n1 1 1 0\n1 1 0 1\n1 0 1 1\n".parse()?;
    let q = Partition::new(vec![vec![0, 3], vec![1], vec![2]], 4)?;
    if let Some(v) = symef1_violation(&t1, &q)? {
        println!(
            "agent {} holding bundle {} values it at {} but bundle {} minus its best item at {}",
            v.agent + 1,
            v.held + 1,
            v.held_value,
            v.envied + 1,
            v.envied_value
        );
    }

    // Plain EF1 only looks at the bundle each agent actually receives.
    let asg = Assignment::new(q, vec![1, 0, 2])?;
    println!("EF1 with owners (2,1,3): {:?}", ef1_violation(&t1, &asg)?);
    Ok(())
}
