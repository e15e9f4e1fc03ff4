//! The insert / relocate / swap heuristic, and a state it cannot escape.

use symef1::heuristic::{greedy_symef1, item_order, ItemOrder, PartialAllocation};
use symef1::Instance;

fn main() -> symef1::Result<()> {
    let inst: Instance = "3 6\n5 8 4 7 0 9\n4 8 1 2 7 1\n1 2 0 7 7 1\n".parse()?;
    for order in [
        ItemOrder::Ascending,
        ItemOrder::DescTotalValue,
        ItemOrder::Random(1),
    ] {
        let r = greedy_symef1(&inst, &item_order(&inst, order))?;
        match r.partition() {
            Some(p) => println!(
                "{order:?}: {} in {} passes\n{p}",
                r.stats.summary(),
                r.stats.passes
            ),
            None => println!("{order:?}: not found ({})", r.stats.summary()),
        }
    }

    // Items a..h placed, j left over: no single insert, relocation or swap helps.
    let t4: Instance = "2 9\n40 40 40 36 33 33 33 33 32\n33 33 33 33 36 40 40 40 32\n".parse()?;
    let mut state = PartialAllocation::from_bundles(&t4, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]])?;
    println!("stuck state places j via {:?}", state.try_place(8));
    Ok(())
}
