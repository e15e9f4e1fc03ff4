//! Exhaustive search: existence, enumeration of all distinct partitions, and
//! the effect of pruning on the node count.

use symef1::exact::{enumerate_symef1_with, exact_symef1_with, EnumerateOptions, SearchOptions};
use symef1::{enumerate_symef1, exact_symef1, ExactOutcome, Instance, SearchLimits};

fn main() -> symef1::Result<()> {
    let lim = SearchLimits::default();

    let t1: Instance = "3 4\n1 1 1 0\n1 1 0 1\n1 0 1 1\n".parse()?;
    println!("three agents, four goods: {:?}", exact_symef1(&t1, &lim));

    let three: Instance = "2 3\n100 50 51\n100 51 50\n".parse()?;
    for p in enumerate_symef1(&three, &lim)? {
        println!("only partition:\n{p}");
    }

    let t4: Instance = "2 9\n40 40 40 36 33 33 33 33 32\n33 33 33 33 36 40 40 40 32\n".parse()?;
    if let ExactOutcome::Found(p) = exact_symef1(&t4, &lim) {
        println!("greedy trap:\n{p}");
    }

    let inst = symef1::random_instance(3, 9, 20, 11);
    for prune in [true, false] {
        let opts = SearchOptions {
            prune,
            ..SearchOptions::default()
        };
        let first = exact_symef1_with(&inst, &lim, opts);
        let all = enumerate_symef1_with(
            &inst,
            &lim,
            EnumerateOptions {
                search: opts,
                allow_large: false,
            },
        )?;
        println!(
            "prune={prune}: first answer after {} nodes, {} partitions after {} nodes",
            first.nodes,
            all.partitions.len(),
            all.nodes
        );
    }
    Ok(())
}
