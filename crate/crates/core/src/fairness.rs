//! Fairness predicates over partitions: EF1, symEF1, symEFX, balance and
//! Nash welfare.
//!
//! Conventions for empty bundles: the largest and smallest item value of an
//! empty bundle are both 0, so an empty envied bundle never causes envy.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, Partition};

/// Value, largest item and smallest item of a bundle for one agent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct BundleStats {
    pub value: u64,
    pub max_item: u64,
    /// `None` for an empty bundle.
    pub min_item: Option<u64>,
}

impl BundleStats {
    pub fn of(inst: &Instance, agent: usize, items: &[usize]) -> Self {
        let row = inst.row(agent);
        let mut stats = BundleStats::default();
        for &j in items {
            let v = row[j];
            stats.value += v;
            stats.max_item = stats.max_item.max(v);
            stats.min_item = Some(stats.min_item.map_or(v, |cur| cur.min(v)));
        }
        stats
    }

    /// Value left after removing the agent's favorite item.
    #[inline]
    pub fn without_max(&self) -> u64 {
        self.value - self.max_item
    }

    /// Value left after removing the agent's least valued item.
    #[inline]
    pub fn without_min(&self) -> u64 {
        self.value - self.min_item.unwrap_or(0)
    }
}

/// `v_i(A)`: sum of the agent's values over `items`.
pub fn bundle_value(inst: &Instance, agent: usize, items: &[usize]) -> Result<u64> {
    inst.check_agent(agent)?;
    for &j in items {
        inst.check_item(j)?;
    }
    Ok(BundleStats::of(inst, agent, items).value)
}

/// A failing inequality `v_i(A_held) >= v_i(A_envied) - removed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub agent: usize,
    pub held: usize,
    pub envied: usize,
    /// Left-hand side, `v_i(A_held)`.
    pub held_value: u64,
    /// Right-hand side, the envied bundle's value after the removal.
    pub envied_value: u64,
}

fn check_dims(inst: &Instance, p: &Partition) -> Result<()> {
    if p.len() != inst.agents() || p.items() != inst.items() {
        return Err(Error::DimensionMismatch(format!(
            "partition has {} bundles over {} items, instance is {}x{}",
            p.len(),
            p.items(),
            inst.agents(),
            inst.items()
        )));
    }
    Ok(())
}

/// Whether `agent` holding bundle `k` is EF1-satisfied against every other bundle.
pub fn is_ef1_satisfied(inst: &Instance, agent: usize, k: usize, p: &Partition) -> Result<bool> {
    check_dims(inst, p)?;
    inst.check_agent(agent)?;
    if k >= p.len() {
        return Err(Error::BundleOutOfRange {
            bundle: k,
            n: p.len(),
        });
    }
    let held = BundleStats::of(inst, agent, p.bundle(k)).value;
    Ok(p.bundles()
        .iter()
        .all(|other| held >= BundleStats::of(inst, agent, other).without_max()))
}

#[derive(Clone, Copy)]
enum Removal {
    Max,
    Min,
}

/// First `(agent, held, envied)` triple, in lexicographic order, that breaks
/// the symmetric inequality for the chosen removal rule.
fn symmetric_violation(
    inst: &Instance,
    bundles: &[Vec<usize>],
    removal: Removal,
) -> Option<Violation> {
    for agent in 0..inst.agents() {
        let stats: Vec<BundleStats> = bundles
            .iter()
            .map(|b| BundleStats::of(inst, agent, b))
            .collect();
        let reduced = |s: &BundleStats| match removal {
            Removal::Max => s.without_max(),
            Removal::Min => s.without_min(),
        };
        let worst_held = stats.iter().map(|s| s.value).min().unwrap_or(0);
        let worst_envied = stats.iter().map(reduced).max().unwrap_or(0);
        if worst_held >= worst_envied {
            continue;
        }
        for (held, hs) in stats.iter().enumerate() {
            for (envied, es) in stats.iter().enumerate() {
                if hs.value < reduced(es) {
                    return Some(Violation {
                        agent,
                        held,
                        envied,
                        held_value: hs.value,
                        envied_value: reduced(es),
                    });
                }
            }
        }
    }
    None
}

/// symEF1 check on raw bundles, which need not cover every item. Used for
/// partial allocations.
pub fn bundles_are_symef1(inst: &Instance, bundles: &[Vec<usize>]) -> bool {
    symmetric_violation(inst, bundles, Removal::Max).is_none()
}

/// First violated symEF1 inequality, if any.
pub fn symef1_violation(inst: &Instance, p: &Partition) -> Result<Option<Violation>> {
    check_dims(inst, p)?;
    Ok(symmetric_violation(inst, p.bundles(), Removal::Max))
}

/// Every agent is EF1-satisfied with every bundle.
pub fn is_symef1(inst: &Instance, p: &Partition) -> Result<bool> {
    Ok(symef1_violation(inst, p)?.is_none())
}

pub fn symefx_violation(inst: &Instance, p: &Partition) -> Result<Option<Violation>> {
    check_dims(inst, p)?;
    Ok(symmetric_violation(inst, p.bundles(), Removal::Min))
}

/// Every agent's envy toward any bundle disappears after removing that
/// bundle's least valued item.
pub fn is_symefx(inst: &Instance, p: &Partition) -> Result<bool> {
    Ok(symefx_violation(inst, p)?.is_none())
}

/// First EF1 violation of a concrete allocation, where each agent only
/// compares the bundle it owns.
pub fn ef1_violation(inst: &Instance, asg: &Assignment) -> Result<Option<Violation>> {
    let p = asg.partition();
    check_dims(inst, p)?;
    for held in 0..p.len() {
        let agent = asg.owner(held);
        let value = BundleStats::of(inst, agent, p.bundle(held)).value;
        for envied in 0..p.len() {
            let rhs = BundleStats::of(inst, agent, p.bundle(envied)).without_max();
            if value < rhs {
                return Ok(Some(Violation {
                    agent,
                    held,
                    envied,
                    held_value: value,
                    envied_value: rhs,
                }));
            }
        }
    }
    Ok(None)
}

/// Bundle sizes differ by at most one.
pub fn is_balanced(p: &Partition) -> bool {
    let sizes = p.bundles().iter().map(Vec::len);
    match (sizes.clone().min(), sizes.max()) {
        (Some(lo), Some(hi)) => hi - lo <= 1,
        _ => true,
    }
}

/// Product of each agent's value for the bundle it owns.
pub fn nash_welfare(inst: &Instance, asg: &Assignment) -> Result<BigUint> {
    check_dims(inst, asg.partition())?;
    let mut product = BigUint::from(1u32);
    for (k, bundle) in asg.partition().bundles().iter().enumerate() {
        product *= BundleStats::of(inst, asg.owner(k), bundle).value;
    }
    Ok(product)
}

/// Every item is valued by someone and no two items have identical columns.
pub fn items_distinct(inst: &Instance) -> bool {
    let columns: Vec<Vec<u64>> = (0..inst.items())
        .map(|j| (0..inst.agents()).map(|i| inst.value(i, j)).collect())
        .collect();
    if columns.iter().any(|c| c.iter().all(|&v| v == 0)) {
        return false;
    }
    let mut sorted = columns;
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}
