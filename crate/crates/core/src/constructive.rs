//! Closed-form constructions: an agent's own round-robin partition and the
//! union of per-group round-robins when agents split into groups of identical
//! valuations over disjoint item supports.

use crate::error::{Error, Result};
use crate::instance::{Instance, Partition};
use crate::tuples::{rank_items, ranking};

/// Deals `ranked` items over `n` bundles: the item at rank `r` goes to bundle `r mod n`.
fn deal(ranked: &[usize], n: usize, bundles: &mut [Vec<usize>]) {
    for (rank, &item) in ranked.iter().enumerate() {
        bundles[rank % n].push(item);
    }
}

/// The partition `n` copies of `agent` would produce by picking round-robin:
/// bundle `l` holds the agent's `l`-th pick of every round.
pub fn agent_round_robin(inst: &Instance, agent: usize) -> Result<Partition> {
    inst.check_agent(agent)?;
    let n = inst.agents();
    let mut bundles = vec![Vec::new(); n];
    deal(ranking(inst, agent).order(), n, &mut bundles);
    Partition::new(bundles, inst.items())
}

/// Agents grouped by identical valuation rows, with each group's support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    /// Agent indices per group, in order of first appearance.
    pub groups: Vec<Vec<usize>>,
    /// Items with positive value for the group.
    pub support: Vec<Vec<usize>>,
}

/// Groups agents by exact row equality. `None` when two groups value a
/// common item.
pub fn detect_groups(inst: &Instance) -> Option<GroupStructure> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for agent in 0..inst.agents() {
        match groups
            .iter_mut()
            .find(|g| inst.row(g[0]) == inst.row(agent))
        {
            Some(group) => group.push(agent),
            None => groups.push(vec![agent]),
        }
    }
    let support: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| {
            (0..inst.items())
                .filter(|&j| inst.value(g[0], j) > 0)
                .collect()
        })
        .collect();
    let mut claimed = vec![false; inst.items()];
    for items in &support {
        for &j in items {
            if std::mem::replace(&mut claimed[j], true) {
                return None;
            }
        }
    }
    Some(GroupStructure { groups, support })
}

/// Unions, bundle by bundle, one round-robin per group over the group's
/// support. Items nobody values go to the first bundle.
pub fn grouped_allocation(inst: &Instance, gs: &GroupStructure) -> Result<Partition> {
    validate_structure(inst, gs)?;
    let n = inst.agents();
    let mut bundles = vec![Vec::new(); n];
    let mut covered = vec![false; inst.items()];
    for (group, items) in gs.groups.iter().zip(&gs.support) {
        deal(&rank_items(inst, group[0], items), n, &mut bundles);
        for &j in items {
            covered[j] = true;
        }
    }
    bundles[0].extend((0..inst.items()).filter(|&j| !covered[j]));
    Partition::new(bundles, inst.items())
}

fn validate_structure(inst: &Instance, gs: &GroupStructure) -> Result<()> {
    let mismatch = |msg: String| Err(Error::StructureMismatch(msg));
    if gs.groups.len() != gs.support.len() {
        return mismatch("one support set per group".into());
    }
    let mut seen = vec![false; inst.agents()];
    for group in &gs.groups {
        let Some(&lead) = group.first() else {
            return mismatch("empty group".into());
        };
        for &agent in group {
            if agent >= inst.agents() || std::mem::replace(&mut seen[agent], true) {
                return mismatch(format!("agent {} listed twice or out of range", agent + 1));
            }
            if inst.row(agent) != inst.row(lead) {
                return mismatch(format!("agents {} and {} differ", lead + 1, agent + 1));
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return mismatch("some agent belongs to no group".into());
    }
    let mut claimed = vec![false; inst.items()];
    for (group, items) in gs.groups.iter().zip(&gs.support) {
        let expected: Vec<usize> = (0..inst.items())
            .filter(|&j| inst.value(group[0], j) > 0)
            .collect();
        if *items != expected {
            return mismatch(format!(
                "support of the group led by agent {} is wrong",
                group[0] + 1
            ));
        }
        for &j in items {
            if std::mem::replace(&mut claimed[j], true) {
                return mismatch(format!("item {} is in two supports", j + 1));
            }
        }
    }
    Ok(())
}
