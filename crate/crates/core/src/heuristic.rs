//! Greedy symEF1 construction with three local repair moves.
//!
//! A partial allocation that is symEF1 over the items placed so far is
//! extended one item at a time. For an item `j` the moves tried are, in order:
//!
//! 1. insert `j` into some bundle `k`;
//! 2. move one item `j_k` out of bundle `k` into bundle `l`, then insert `j` into `k`;
//! 3. swap `j_k` in bundle `k` with `j_l` in bundle `l`, then insert `j` into `k`.
//!
//! The first move that leaves the allocation symEF1 is kept; rejected moves
//! are undone exactly. Items that cannot be placed are retried in the next
//! pass, and the run stops once a full pass places nothing.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::{Instance, Partition};

/// The move that placed an item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Insert,
    Relocate,
    Swap,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::Insert => 1,
            Case::Relocate => 2,
            Case::Swap => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HeuristicStats {
    pub placed_case1: usize,
    pub placed_case2: usize,
    pub placed_case3: usize,
    pub failed: bool,
    /// Outer passes over the unallocated items.
    pub passes: usize,
}

impl HeuristicStats {
    fn record(&mut self, case: Case) {
        match case {
            Case::Insert => self.placed_case1 += 1,
            Case::Relocate => self.placed_case2 += 1,
            Case::Swap => self.placed_case3 += 1,
        }
    }

    pub fn placed(&self) -> usize {
        self.placed_case1 + self.placed_case2 + self.placed_case3
    }

    /// `case1=<c1> case2=<c2> case3=<c3>`
    pub fn summary(&self) -> String {
        format!(
            "case1={} case2={} case3={}",
            self.placed_case1, self.placed_case2, self.placed_case3
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeuristicOutcome {
    Found(Partition),
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicResult {
    pub outcome: HeuristicOutcome,
    pub stats: HeuristicStats,
}

impl HeuristicResult {
    pub fn partition(&self) -> Option<&Partition> {
        match &self.outcome {
            HeuristicOutcome::Found(p) => Some(p),
            HeuristicOutcome::NotFound => None,
        }
    }
}

/// Bundles over a subset of the items, with per-agent sums and maxima cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAllocation<'a> {
    inst: &'a Instance,
    bundles: Vec<Vec<usize>>,
    placed: Vec<bool>,
    /// `sums[k * n + i]` = `v_i(A_k)`
    sums: Vec<u64>,
    maxes: Vec<u64>,
}

impl<'a> PartialAllocation<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        let n = inst.agents();
        PartialAllocation {
            inst,
            bundles: vec![Vec::new(); n],
            placed: vec![false; inst.items()],
            sums: vec![0; n * n],
            maxes: vec![0; n * n],
        }
    }

    /// Starts from given bundles, which must be disjoint but need not cover
    /// every item.
    pub fn from_bundles(inst: &'a Instance, bundles: Vec<Vec<usize>>) -> Result<Self> {
        if bundles.len() != inst.agents() {
            return Err(Error::DimensionMismatch(format!(
                "{} bundles for {} agents",
                bundles.len(),
                inst.agents()
            )));
        }
        let mut state = PartialAllocation::new(inst);
        for (k, bundle) in bundles.into_iter().enumerate() {
            for j in bundle {
                inst.check_item(j)?;
                if state.placed[j] {
                    return Err(Error::InvalidPartition(format!(
                        "item {} placed twice",
                        j + 1
                    )));
                }
                state.placed[j] = true;
                state.add(k, j);
            }
            state.refresh(k);
        }
        Ok(state)
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn is_placed(&self, item: usize) -> bool {
        self.placed[item]
    }

    pub fn is_complete(&self) -> bool {
        self.placed.iter().all(|&p| p)
    }

    pub fn into_partition(self) -> Result<Partition> {
        Partition::new(self.bundles, self.inst.items())
    }

    fn add(&mut self, k: usize, j: usize) {
        let pos = self.bundles[k].binary_search(&j).unwrap_err();
        self.bundles[k].insert(pos, j);
    }

    fn remove(&mut self, k: usize, j: usize) {
        let pos = self.bundles[k]
            .binary_search(&j)
            .expect("item is in the bundle");
        self.bundles[k].remove(pos);
    }

    fn refresh(&mut self, k: usize) {
        let n = self.inst.agents();
        for i in 0..n {
            let row = self.inst.row(i);
            let (sum, max) = self.bundles[k]
                .iter()
                .fold((0, 0), |(s, mx), &j| (s + row[j], mx.max(row[j])));
            self.sums[k * n + i] = sum;
            self.maxes[k * n + i] = max;
        }
    }

    /// symEF1 over the items placed so far.
    pub fn is_symef1(&self) -> bool {
        let n = self.inst.agents();
        (0..n).all(|i| {
            let mut worst_held = u64::MAX;
            let mut worst_envied = 0;
            for k in 0..n {
                let s = self.sums[k * n + i];
                worst_held = worst_held.min(s);
                worst_envied = worst_envied.max(s - self.maxes[k * n + i]);
            }
            worst_held >= worst_envied
        })
    }

    /// Case 1: put `j` into the first bundle that keeps the allocation symEF1.
    pub fn try_insert(&mut self, j: usize) -> bool {
        debug_assert!(!self.placed[j]);
        for k in 0..self.bundles.len() {
            self.add(k, j);
            self.refresh(k);
            if self.is_symef1() {
                self.placed[j] = true;
                return true;
            }
            self.remove(k, j);
            self.refresh(k);
        }
        false
    }

    /// Case 2: move `j_k` from bundle `k` to bundle `l` and insert `j` into `k`.
    pub fn try_relocate(&mut self, j: usize) -> bool {
        debug_assert!(!self.placed[j]);
        let n = self.bundles.len();
        for k in 0..n {
            for l in (0..n).filter(|&l| l != k) {
                for idx in 0..self.bundles[k].len() {
                    let moved = self.bundles[k][idx];
                    self.remove(k, moved);
                    self.add(k, j);
                    self.add(l, moved);
                    self.refresh(k);
                    self.refresh(l);
                    if self.is_symef1() {
                        self.placed[j] = true;
                        return true;
                    }
                    self.remove(l, moved);
                    self.remove(k, j);
                    self.add(k, moved);
                    self.refresh(k);
                    self.refresh(l);
                }
            }
        }
        false
    }

    /// Case 3: swap `j_k` in bundle `k` with `j_l` in bundle `l`, then insert
    /// `j` into `k`.
    pub fn try_swap(&mut self, j: usize) -> bool {
        debug_assert!(!self.placed[j]);
        let n = self.bundles.len();
        for k in 0..n {
            for l in (0..n).filter(|&l| l != k) {
                for ik in 0..self.bundles[k].len() {
                    for il in 0..self.bundles[l].len() {
                        let out_k = self.bundles[k][ik];
                        let out_l = self.bundles[l][il];
                        self.remove(k, out_k);
                        self.remove(l, out_l);
                        self.add(k, out_l);
                        self.add(k, j);
                        self.add(l, out_k);
                        self.refresh(k);
                        self.refresh(l);
                        if self.is_symef1() {
                            self.placed[j] = true;
                            return true;
                        }
                        self.remove(l, out_k);
                        self.remove(k, j);
                        self.remove(k, out_l);
                        self.add(k, out_k);
                        self.add(l, out_l);
                        self.refresh(k);
                        self.refresh(l);
                    }
                }
            }
        }
        false
    }

    /// Tries the three moves in order.
    pub fn try_place(&mut self, j: usize) -> Option<Case> {
        if self.try_insert(j) {
            Some(Case::Insert)
        } else if self.try_relocate(j) {
            Some(Case::Relocate)
        } else if self.try_swap(j) {
            Some(Case::Swap)
        } else {
            None
        }
    }
}

/// Runs the greedy construction, visiting unplaced items in `item_order`.
pub fn greedy_symef1(inst: &Instance, item_order: &[usize]) -> Result<HeuristicResult> {
    validate_order(inst, item_order)?;
    let mut state = PartialAllocation::new(inst);
    let mut stats = HeuristicStats::default();
    let mut pending = item_order.to_vec();
    let mut progress = true;
    while !pending.is_empty() && progress {
        progress = false;
        stats.passes += 1;
        pending.retain(|&j| match state.try_place(j) {
            Some(case) => {
                stats.record(case);
                progress = true;
                false
            }
            None => true,
        });
    }
    let outcome = if pending.is_empty() {
        HeuristicOutcome::Found(state.into_partition()?)
    } else {
        stats.failed = true;
        HeuristicOutcome::NotFound
    };
    Ok(HeuristicResult { outcome, stats })
}

fn validate_order(inst: &Instance, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; inst.items()];
    for &j in order {
        if j >= inst.items() || std::mem::replace(&mut seen[j], true) {
            return Err(Error::InvalidOrder(format!(
                "item {} repeated or out of range",
                j + 1
            )));
        }
    }
    if order.len() != inst.items() {
        return Err(Error::InvalidOrder(format!(
            "{} items in order, instance has {}",
            order.len(),
            inst.items()
        )));
    }
    Ok(())
}

/// How the greedy run visits items.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ItemOrder {
    #[default]
    Ascending,
    /// Descending sum of agent values; ties by ascending index.
    DescTotalValue,
    /// Seeded shuffle.
    Random(u64),
}

/// Ascending item index.
pub fn default_item_order(inst: &Instance) -> Vec<usize> {
    (0..inst.items()).collect()
}

pub fn item_order(inst: &Instance, order: ItemOrder) -> Vec<usize> {
    let mut items = default_item_order(inst);
    match order {
        ItemOrder::Ascending => {}
        ItemOrder::DescTotalValue => {
            items.sort_by(|&a, &b| inst.item_total(b).cmp(&inst.item_total(a)).then(a.cmp(&b)));
        }
        ItemOrder::Random(seed) => items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::is_symef1;

    /// Two agents, nine items a..h, j.
    fn greedy_trap() -> Instance {
        Instance::from_rows(&[
            [40, 40, 40, 36, 33, 33, 33, 33, 32],
            [33, 33, 33, 33, 36, 40, 40, 40, 32],
        ])
        .unwrap()
    }

    #[test]
    fn stuck_state_cannot_place_the_last_item() {
        let inst = greedy_trap();
        let mut state =
            PartialAllocation::from_bundles(&inst, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]])
                .unwrap();
        assert!(state.is_symef1());
        let before = state.clone();
        assert!(!state.try_insert(8));
        assert_eq!(state, before);
        assert!(!state.try_relocate(8));
        assert_eq!(state, before);
        assert!(!state.try_swap(8));
        assert_eq!(state, before);
        assert_eq!(state.try_place(8), None);
    }

    #[test]
    fn few_items_are_all_inserted() {
        let inst = Instance::from_rows(&[[5, 1, 9], [2, 2, 2], [0, 7, 3], [1, 1, 1]]).unwrap();
        let r = greedy_symef1(&inst, &default_item_order(&inst)).unwrap();
        assert_eq!(r.stats.placed_case1, 3);
        assert_eq!(r.stats.placed(), 3);
        let p = r.partition().unwrap();
        assert!(p.bundles().iter().all(|b| b.len() <= 1));
    }

    #[test]
    fn full_trap_run_is_valid_if_found() {
        let inst = greedy_trap();
        let r = greedy_symef1(&inst, &default_item_order(&inst)).unwrap();
        if let Some(p) = r.partition() {
            assert!(is_symef1(&inst, p).unwrap());
            assert_eq!(r.stats.placed(), 9);
        } else {
            assert!(r.stats.failed);
        }
    }

    #[test]
    fn orders() {
        let inst = Instance::from_rows(&[[1, 5, 5], [2, 0, 1]]).unwrap();
        assert_eq!(default_item_order(&inst), vec![0, 1, 2]);
        assert_eq!(item_order(&inst, ItemOrder::DescTotalValue), vec![2, 1, 0]);
        let a = item_order(&inst, ItemOrder::Random(7));
        assert_eq!(a, item_order(&inst, ItemOrder::Random(7)));
        let mut sorted = a.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn bad_orders_are_rejected() {
        let inst = Instance::from_rows(&[[1, 5, 5]]).unwrap();
        assert!(greedy_symef1(&inst, &[0, 1]).is_err());
        assert!(greedy_symef1(&inst, &[0, 1, 1]).is_err());
        assert!(greedy_symef1(&inst, &[0, 1, 3]).is_err());
    }

    #[test]
    fn relocation_places_an_item() {
        let inst = Instance::from_rows(&[[6, 3, 5, 6], [1, 4, 6, 0]]).unwrap();
        let r = greedy_symef1(&inst, &default_item_order(&inst)).unwrap();
        let p = r.partition().unwrap();
        assert!(is_symef1(&inst, p).unwrap());
        assert_eq!(
            (
                r.stats.placed_case1,
                r.stats.placed_case2,
                r.stats.placed_case3
            ),
            (3, 1, 0)
        );
        assert_eq!(p.bundles(), &[vec![2, 3], vec![0, 1]]);
    }

    #[test]
    fn swap_places_an_item() {
        let inst =
            Instance::from_rows(&[[5, 8, 4, 7, 0, 9], [4, 8, 1, 2, 7, 1], [1, 2, 0, 7, 7, 1]])
                .unwrap();
        let r = greedy_symef1(&inst, &default_item_order(&inst)).unwrap();
        let p = r.partition().unwrap();
        assert!(is_symef1(&inst, p).unwrap());
        assert_eq!(r.stats.summary(), "case1=5 case2=0 case3=1");
        assert_eq!(r.stats.passes, 2);
    }
}
