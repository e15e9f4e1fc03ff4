//! Maximum Nash welfare need not be symEF1.

use symef1::{is_symef1, max_nash_welfare, Instance, Partition, SearchLimits};

fn main() -> symef1::Result<()> {
    let lim = SearchLimits::default();
    let exact: Instance = "2 6\n1 2 3 4 5 6\n3 1 3 1 3 1\n".parse()?;
    let best = max_nash_welfare(&exact, &lim)?;
    println!(
        "eps = 0: welfare {}\n{}",
        best.welfare.product,
        best.assignment.partition()
    );

    let scaled: Instance = "2 6\n100 200 300 400 500 600\n300 101 300 100 300 102\n".parse()?;
    let best = max_nash_welfare(&scaled, &lim)?;
    let p = best.assignment.partition();
    println!(
        "eps = 1/100: welfare {}, symEF1 = {}",
        best.welfare.product,
        is_symef1(&scaled, p)?
    );

    let fair = Partition::new(vec![vec![2, 3, 5], vec![0, 1, 4]], 6)?;
    println!(
        "({{c,d,f}},{{a,b,e}}) symEF1 = {}",
        is_symef1(&scaled, &fair)?
    );
    Ok(())
}
