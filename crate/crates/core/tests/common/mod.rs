#![allow(dead_code)]

use std::collections::BTreeSet;

use symef1::{Instance, Partition};

/// Item letters as used in the worked examples: `a` is item 0, `j` item 8.
pub fn item(letter: char) -> usize {
    const LETTERS: &str = "abcdefghj";
    LETTERS
        .find(letter)
        .unwrap_or_else(|| panic!("no item {letter}"))
}

/// `"af,ce,bd"` -> bundles `[[a,f],[c,e],[b,d]]`.
pub fn bundles(spec: &str) -> Vec<Vec<usize>> {
    spec.split(',')
        .map(|b| b.chars().map(item).collect())
        .collect()
}

pub fn partition(spec: &str, m: usize) -> Partition {
    Partition::new(bundles(spec), m).unwrap()
}

pub fn no_symef1() -> Instance {
    Instance::from_rows(&[[1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1]]).unwrap()
}

pub fn five_clique() -> Instance {
    Instance::from_rows(&[[1, 2, 3, 4, 5, 6], [1, 2, 4, 3, 5, 6], [1, 2, 4, 5, 3, 6]]).unwrap()
}

/// Two agents, three items; the half-plus-epsilon values scaled by 100.
pub fn unique_three_items() -> Instance {
    Instance::from_rows(&[[100, 50, 51], [100, 51, 50]]).unwrap()
}

pub fn mnw_eps0() -> Instance {
    Instance::from_rows(&[[1, 2, 3, 4, 5, 6], [3, 1, 3, 1, 3, 1]]).unwrap()
}

pub fn mnw_eps_hundredth() -> Instance {
    Instance::from_rows(&[
        [100, 200, 300, 400, 500, 600],
        [300, 101, 300, 100, 300, 102],
    ])
    .unwrap()
}

/// `n` agents, `n + 1` items; 100 on the diagonal, 1 elsewhere.
pub fn diagonal(n: usize) -> Instance {
    let m = n + 1;
    let values = (0..n)
        .flat_map(|i| (0..m).map(move |j| if i == j { 100 } else { 1 }))
        .collect();
    Instance::new(n, m, values).unwrap()
}

pub fn greedy_trap() -> Instance {
    Instance::from_rows(&[
        [40, 40, 40, 36, 33, 33, 33, 33, 32],
        [33, 33, 33, 33, 36, 40, 40, 40, 32],
    ])
    .unwrap()
}

/// symEF1 written out directly from the definition over bundle lists.
pub fn naive_symef1(inst: &Instance, bundles: &[Vec<usize>]) -> bool {
    naive_symmetric(inst, bundles, |vals| {
        vals.iter().copied().max().unwrap_or(0)
    })
}

pub fn naive_symefx(inst: &Instance, bundles: &[Vec<usize>]) -> bool {
    naive_symmetric(inst, bundles, |vals| {
        vals.iter().copied().min().unwrap_or(0)
    })
}

fn naive_symmetric(
    inst: &Instance,
    bundles: &[Vec<usize>],
    removed: impl Fn(&[u64]) -> u64,
) -> bool {
    for i in 0..inst.agents() {
        for k in bundles {
            for l in bundles {
                let vk: u64 = k.iter().map(|&j| inst.value(i, j)).sum();
                let vals: Vec<u64> = l.iter().map(|&j| inst.value(i, j)).collect();
                let vl: u64 = vals.iter().sum();
                if vk + removed(&vals) < vl {
                    return false;
                }
            }
        }
    }
    true
}

/// Unordered family of bundles: each bundle sorted, bundles sorted.
pub type Family = Vec<Vec<usize>>;

pub fn family(bundles: &[Vec<usize>]) -> Family {
    let mut f: Family = bundles
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    f.sort();
    f
}

/// Every map of items to `n` bundles, filtered by `keep`, as unordered families.
pub fn brute_force(
    inst: &Instance,
    keep: impl Fn(&Instance, &[Vec<usize>]) -> bool,
) -> BTreeSet<Family> {
    let (n, m) = (inst.agents(), inst.items());
    let total = (n as u64).pow(m as u32);
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut bundles = vec![Vec::new(); n];
        let mut c = code;
        for j in 0..m {
            bundles[(c % n as u64) as usize].push(j);
            c /= n as u64;
        }
        if keep(inst, &bundles) {
            out.insert(family(&bundles));
        }
    }
    out
}

pub fn families_of<'a>(ps: impl IntoIterator<Item = &'a Partition>) -> BTreeSet<Family> {
    ps.into_iter().map(|p| family(p.bundles())).collect()
}

/// One-sided two-proportion z statistic for `x1/n1 > x2/n2`.
pub fn two_proportion_z(x1: usize, n1: usize, x2: usize, n2: usize) -> f64 {
    let (p1, p2) = (x1 as f64 / n1 as f64, x2 as f64 / n2 as f64);
    let pooled = (x1 + x2) as f64 / (n1 + n2) as f64;
    let se = (pooled * (1.0 - pooled) * (1.0 / n1 as f64 + 1.0 / n2 as f64)).sqrt();
    if se == 0.0 {
        return if p1 > p2 { f64::INFINITY } else { 0.0 };
    }
    (p1 - p2) / se
}

pub const Z_95_ONE_SIDED: f64 = 1.6449;
