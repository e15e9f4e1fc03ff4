//! Item graph of an instance, its exact n-coloring, and the partition and
//! counting bound it yields.

use symef1::{
    build_item_graph, coloring_to_partition, components, count_lower_bound, graph_to_dot,
    indexed_tuples, is_symef1, k_color, separates_tuples, ColorOutcome, Instance,
};

fn main() -> symef1::Result<()> {
    let inst: Instance = "3 6\n1 2 3 4 5 6\n1 2 4 3 5 6\n1 2 4 5 3 6\n".parse()?;
    let g = build_item_graph(&inst);
    print!("{}", graph_to_dot(&g));
    for k in 3..=5 {
        println!(
            "{k} colors: {}",
            if k_color(&g, k).is_colorable() {
                "yes"
            } else {
                "no"
            }
        );
    }

    // Identical agents: the tuples are disjoint triangles.
    let same: Instance =
        "3 9\n9 8 7 6 5 4 3 2 1\n9 8 7 6 5 4 3 2 1\n9 8 7 6 5 4 3 2 1\n".parse()?;
    let g = build_item_graph(&same);
    let ColorOutcome::Colorable(c) = k_color(&g, 3) else {
        unreachable!("disjoint triangles are 3-colorable");
    };
    let p = coloring_to_partition(&c, 3)?;
    println!("partition:\n{p}");
    println!(
        "separates tuples: {}",
        separates_tuples(&p, &indexed_tuples(&same))?
    );
    println!("symEF1: {}", is_symef1(&same, &p)?);
    println!(
        "{} components, at least {} distinct symEF1 partitions",
        components(&g).count,
        count_lower_bound(&g, 3).expect("colorable")
    );
    Ok(())
}
