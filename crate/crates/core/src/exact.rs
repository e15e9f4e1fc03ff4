//! Complete search for symEF1 partitions.
//!
//! Items are assigned depth first in descending order of their total value
//! across agents. Bundle labels are interchangeable, so an item may only open
//! the next unused bundle, never skip one. A node is cut when some agent
//! already values some bundle, after removing its favorite item, above what the
//! poorest bundle could ever reach:
//!
//! ```text
//! v_i(A_k) + R_i < v_i(A_l) - max_{j in A_l} v_ij
//! ```
//!
//! where `R_i` is the agent's value for the unassigned items. Adding an item to
//! a bundle never lowers `v(A) - max(A)`, and `A_k` gains at most `R_i`, so
//! the cut never discards a symEF1 completion.
//!
//! The same feasibility question written as a 0/1 integer program is produced
//! by [`export_ip`] in CPLEX LP format for use with external solvers.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instance::{Assignment, Instance, Partition};

/// Node and wall-clock limits for a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub node_budget: u64,
    pub time_budget: Duration,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_budget: 10_000_000,
            time_budget: Duration::from_secs(10),
        }
    }
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        SearchLimits {
            node_budget: u64::MAX,
            time_budget: Duration::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(Partition),
    ProvedInfeasible,
    BudgetExceeded,
}

impl ExactOutcome {
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            ExactOutcome::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// Switches for the search; both on by default. Turning either off never
/// changes an answer, only the amount of work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub prune: bool,
    pub break_symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            break_symmetry: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: ExactOutcome,
    pub nodes: u64,
}

/// Decides whether a symEF1 partition exists.
pub fn exact_symef1(inst: &Instance, lim: &SearchLimits) -> ExactOutcome {
    exact_symef1_with(inst, lim, SearchOptions::default()).outcome
}

pub fn exact_symef1_with(inst: &Instance, lim: &SearchLimits, opts: SearchOptions) -> SearchReport {
    let mut search = Search::new(inst, lim, opts, Mode::First);
    let outcome = match search.run() {
        Err(Halt::Budget) => ExactOutcome::BudgetExceeded,
        Ok(()) => match search.found.pop() {
            Some(labels) => ExactOutcome::Found(
                Partition::from_labels(&labels, inst.agents()).expect("labels are in range"),
            ),
            None => ExactOutcome::ProvedInfeasible,
        },
    };
    SearchReport {
        outcome,
        nodes: search.nodes,
    }
}

/// Refuse enumeration beyond this many raw item-to-bundle maps unless overridden.
pub const ENUMERATION_GUARD: f64 = 1e8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub search: SearchOptions,
    /// Skip the `n^m` size guard.
    pub allow_large: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub partitions: BTreeSet<Partition>,
    pub nodes: u64,
}

/// All symEF1 partitions in canonical form.
pub fn enumerate_symef1(inst: &Instance, lim: &SearchLimits) -> Result<BTreeSet<Partition>> {
    Ok(enumerate_symef1_with(inst, lim, EnumerateOptions::default())?.partitions)
}

pub fn enumerate_symef1_with(
    inst: &Instance,
    lim: &SearchLimits,
    opts: EnumerateOptions,
) -> Result<Enumeration> {
    let space = (inst.agents() as f64).powi(inst.items() as i32);
    if !opts.allow_large && space > ENUMERATION_GUARD {
        return Err(Error::SearchSpaceTooLarge {
            space,
            guard: ENUMERATION_GUARD,
        });
    }
    let mut search = Search::new(inst, lim, opts.search, Mode::All);
    if search.run().is_err() {
        return Err(Error::BudgetExceeded {
            nodes: search.nodes,
        });
    }
    let partitions = search
        .found
        .iter()
        .map(|labels| {
            Partition::from_labels(labels, inst.agents())
                .expect("labels are in range")
                .canonical()
        })
        .collect();
    Ok(Enumeration {
        partitions,
        nodes: search.nodes,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    First,
    All,
}

enum Halt {
    Budget,
}

struct Search<'a> {
    inst: &'a Instance,
    n: usize,
    opts: SearchOptions,
    mode: Mode,
    order: Vec<usize>,
    labels: Vec<usize>,
    /// `sums[k * n + i]` = `v_i(A_k)`
    sums: Vec<u64>,
    maxes: Vec<u64>,
    remaining: Vec<u64>,
    found: Vec<Vec<usize>>,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, lim: &SearchLimits, opts: SearchOptions, mode: Mode) -> Self {
        let n = inst.agents();
        let mut order: Vec<usize> = (0..inst.items()).collect();
        order.sort_by(|&a, &b| inst.item_total(b).cmp(&inst.item_total(a)).then(a.cmp(&b)));
        Search {
            inst,
            n,
            opts,
            mode,
            order,
            labels: vec![usize::MAX; inst.items()],
            sums: vec![0; n * n],
            maxes: vec![0; n * n],
            remaining: (0..n).map(|i| inst.total_value(i)).collect(),
            found: Vec::new(),
            nodes: 0,
            node_budget: lim.node_budget,
            deadline: Instant::now().checked_add(lim.time_budget),
        }
    }

    fn run(&mut self) -> std::result::Result<(), Halt> {
        if self.consistent(true) {
            self.descend(0, 0)?;
        }
        Ok(())
    }

    /// With `remaining` values folded in, no agent can be left behind.
    /// At a leaf this is exactly the symEF1 condition.
    fn consistent(&self, use_remaining: bool) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            let slack = if use_remaining { self.remaining[i] } else { 0 };
            let mut poorest = u64::MAX;
            let mut richest = 0;
            for k in 0..n {
                let s = self.sums[k * n + i];
                poorest = poorest.min(s);
                richest = richest.max(s - self.maxes[k * n + i]);
            }
            poorest + slack >= richest
        })
    }

    fn descend(&mut self, depth: usize, opened: usize) -> std::result::Result<bool, Halt> {
        if depth == self.order.len() {
            if self.consistent(false) {
                self.found.push(self.labels.clone());
                return Ok(self.mode == Mode::First);
            }
            return Ok(false);
        }
        let item = self.order[depth];
        let limit = if self.opts.break_symmetry {
            (opened + 1).min(self.n)
        } else {
            self.n
        };
        for k in 0..limit {
            self.nodes += 1;
            if self.nodes > self.node_budget {
                return Err(Halt::Budget);
            }
            if self.nodes & 0xfff == 0 {
                if let Some(deadline) = self.deadline {
                    if Instant::now() >= deadline {
                        return Err(Halt::Budget);
                    }
                }
            }
            let saved = self.place(item, k);
            let viable = !self.opts.prune || self.consistent(true);
            if viable && self.descend(depth + 1, opened.max(k + 1))? {
                return Ok(true);
            }
            self.unplace(item, k, saved);
        }
        Ok(false)
    }

    fn place(&mut self, item: usize, k: usize) -> Vec<u64> {
        let n = self.n;
        self.labels[item] = k;
        let saved = self.maxes[k * n..(k + 1) * n].to_vec();
        for i in 0..n {
            let v = self.inst.value(i, item);
            self.sums[k * n + i] += v;
            self.remaining[i] -= v;
            let slot = &mut self.maxes[k * n + i];
            *slot = (*slot).max(v);
        }
        saved
    }

    fn unplace(&mut self, item: usize, k: usize, saved: Vec<u64>) {
        let n = self.n;
        self.labels[item] = usize::MAX;
        for i in 0..n {
            let v = self.inst.value(i, item);
            self.sums[k * n + i] -= v;
            self.remaining[i] += v;
        }
        self.maxes[k * n..(k + 1) * n].copy_from_slice(&saved);
    }
}

/// CPLEX LP text of the 0/1 feasibility program.
///
/// `x_k_j` = bundle `k` holds item `j`; `y_i_j_l` = agent `i` discounts item
/// `j` from bundle `l`. Constraints, all indices 1-based:
///
/// * `one_bundle_j`: `sum_k x_k_j = 1`
/// * `remove_cap_i_l`: `sum_j y_i_j_l <= 1`
/// * `remove_link_i_j_l`: `y_i_j_l - x_l_j <= 0`
/// * `ef1_i_k_l` for `k != l`: `sum_j v_ij x_k_j - sum_j v_ij x_l_j + sum_j v_ij y_i_j_l >= 0`
pub fn export_ip(inst: &Instance) -> String {
    let (n, m) = (inst.agents(), inst.items());
    let mut out = String::new();
    let _ = writeln!(out, "\\ symEF1 feasibility: {n} agents, {m} items");
    out.push_str("Minimize\n obj: 0\nSubject To\n");
    for j in 1..=m {
        let terms: Vec<String> = (1..=n).map(|k| format!("x_{k}_{j}")).collect();
        let _ = writeln!(out, " one_bundle_{j}: {} = 1", terms.join(" + "));
    }
    if m > 0 {
        for i in 1..=n {
            for l in 1..=n {
                let terms: Vec<String> = (1..=m).map(|j| format!("y_{i}_{j}_{l}")).collect();
                let _ = writeln!(out, " remove_cap_{i}_{l}: {} <= 1", terms.join(" + "));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            for l in 1..=n {
                let _ = writeln!(
                    out,
                    " remove_link_{i}_{j}_{l}: y_{i}_{j}_{l} - x_{l}_{j} <= 0"
                );
            }
        }
    }
    if m > 0 {
        for i in 1..=n {
            for k in 1..=n {
                for l in (1..=n).filter(|&l| l != k) {
                    let mut expr = String::new();
                    for j in 1..=m {
                        let v = inst.value(i - 1, j - 1);
                        let _ =
                            write!(expr, "+ {v} x_{k}_{j} - {v} x_{l}_{j} + {v} y_{i}_{j}_{l} ");
                    }
                    let expr = expr.strip_prefix("+ ").unwrap_or(&expr);
                    let _ = writeln!(out, " ef1_{i}_{k}_{l}: {expr}>= 0");
                }
            }
        }
    }
    out.push_str("Binary\n");
    for k in 1..=n {
        for j in 1..=m {
            let _ = writeln!(out, " x_{k}_{j}");
        }
    }
    for i in 1..=n {
        for j in 1..=m {
            for l in 1..=n {
                let _ = writeln!(out, " y_{i}_{j}_{l}");
            }
        }
    }
    out.push_str("End\n");
    out
}

/// Welfare of an assignment: agents with positive value first, then the
/// product of those values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Welfare {
    pub served: usize,
    pub product: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashOptimum {
    pub assignment: Assignment,
    pub welfare: Welfare,
}

/// Exhaustive maximum Nash welfare over every item-to-agent map. Ties go to
/// the lexicographically smallest vector of owners (item order).
pub fn max_nash_welfare(inst: &Instance, lim: &SearchLimits) -> Result<NashOptimum> {
    let (n, m) = (inst.agents(), inst.items());
    let space = (n as f64).powi(m as i32);
    if space > lim.node_budget as f64 {
        return Err(Error::SearchSpaceTooLarge {
            space,
            guard: lim.node_budget as f64,
        });
    }
    let mut owner = vec![0usize; m];
    let mut sums = vec![0u64; n];
    for j in 0..m {
        sums[0] += inst.value(0, j);
    }
    let mut best_owner = owner.clone();
    let mut best = leaf_welfare(&sums);
    let deadline = Instant::now().checked_add(lim.time_budget);
    let mut visited: u64 = 1;
    // Odometer over owner vectors in lexicographic order.
    loop {
        let mut pos = m;
        loop {
            if pos == 0 {
                let partition = owners_to_partition(&best_owner, n);
                let assignment = Assignment::identity(partition);
                return Ok(NashOptimum {
                    assignment,
                    welfare: best.into_welfare(),
                });
            }
            pos -= 1;
            let j = pos;
            sums[owner[j]] -= inst.value(owner[j], j);
            if owner[j] + 1 < n {
                owner[j] += 1;
                sums[owner[j]] += inst.value(owner[j], j);
                break;
            }
            owner[j] = 0;
            sums[0] += inst.value(0, j);
        }
        visited += 1;
        if visited & 0xffff == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::BudgetExceeded { nodes: visited });
        }
        let w = leaf_welfare(&sums);
        if w > best {
            best = w;
            best_owner.copy_from_slice(&owner);
        }
    }
}

fn owners_to_partition(owner: &[usize], n: usize) -> Partition {
    Partition::from_labels(owner, n).expect("owners are in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Product {
    Small(u128),
    Big(BigUint),
}

impl Product {
    fn to_big(&self) -> BigUint {
        match self {
            Product::Small(v) => BigUint::from(*v),
            Product::Big(b) => b.clone(),
        }
    }
}

impl Ord for Product {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Product::Small(a), Product::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Product {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct LeafWelfare {
    served: usize,
    product: Product,
}

impl LeafWelfare {
    fn into_welfare(self) -> Welfare {
        Welfare {
            served: self.served,
            product: self.product.to_big(),
        }
    }
}

fn leaf_welfare(sums: &[u64]) -> LeafWelfare {
    let mut served = 0;
    let mut small: Option<u128> = Some(1);
    for &s in sums.iter().filter(|&&s| s > 0) {
        served += 1;
        small = small.and_then(|p| p.checked_mul(s as u128));
    }
    let product = match small {
        Some(p) => Product::Small(p),
        None => Product::Big(
            sums.iter()
                .filter(|&&s| s > 0)
                .map(|&s| BigUint::from(s))
                .product(),
        ),
    };
    LeafWelfare { served, product }
}
