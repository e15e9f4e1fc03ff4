//! Round-robin partitions and the grouped construction for agents that come
//! in identical groups over disjoint items.

use symef1::{agent_round_robin, detect_groups, grouped_allocation, is_symef1, Instance};

fn main() -> symef1::Result<()> {
    let inst: Instance = "2 6\n1 2 3 4 5 6\n3 1 3 1 3 1\n".parse()?;
    for agent in 0..inst.agents() {
        let p = agent_round_robin(&inst, agent)?;
        println!("round robin of agent {}:\n{p}", agent + 1);
    }

    let blocks: Instance = "3 7\n5 3 2 0 0 0 0\n0 0 0 4 4 1 0\n5 3 2 0 0 0 0\n".parse()?;
    match detect_groups(&blocks) {
        Some(gs) => {
            println!("groups {:?} with supports {:?}", gs.groups, gs.support);
            let p = grouped_allocation(&blocks, &gs)?;
            println!(
                "grouped partition (symEF1 = {}):\n{p}",
                is_symef1(&blocks, &p)?
            );
        }
        None => println!("not applicable"),
    }
    Ok(())
}
