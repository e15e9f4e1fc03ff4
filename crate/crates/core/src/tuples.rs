//! Rankings, indexed n-tuples and the item graph.
//!
//! Each agent ranks the items from most to least valued (ties go to the
//! smaller item index) and cuts the ranking into consecutive blocks of `n`
//! items, its *tuples*. The item graph joins two items whenever some agent has
//! them in the same tuple. Any proper coloring of the item graph with at most
//! `n` colors, read as a partition (one bundle per color), places no two items
//! of a tuple together and is therefore symEF1 and balanced. The converse does
//! not hold: symEF1 partitions exist for some instances whose item graph needs
//! more than `n` colors.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::instance::{Instance, Partition};

/// One agent's items from most to least valued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ranking {
    order: Vec<usize>,
}

impl Ranking {
    /// Items in rank order; `order()[0]` is the favorite.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }
}

/// Stable descending sort of `items` by the agent's values.
pub(crate) fn rank_items(inst: &Instance, agent: usize, items: &[usize]) -> Vec<usize> {
    let row = inst.row(agent);
    let mut order = items.to_vec();
    order.sort_by(|&a, &b| row[b].cmp(&row[a]).then(a.cmp(&b)));
    order
}

pub fn ranking(inst: &Instance, agent: usize) -> Ranking {
    let all: Vec<usize> = (0..inst.items()).collect();
    Ranking {
        order: rank_items(inst, agent, &all),
    }
}

/// Every agent's ranking cut into consecutive blocks of `n` items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedTuples {
    n: usize,
    m: usize,
    per_agent: Vec<Vec<Vec<usize>>>,
}

impl IndexedTuples {
    pub fn agents(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> usize {
        self.m
    }

    /// Tuples of one agent, best first. Items inside a tuple are in rank order.
    pub fn of_agent(&self, agent: usize) -> &[Vec<usize>] {
        &self.per_agent[agent]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> + '_ {
        self.per_agent.iter().flatten()
    }
}

pub fn indexed_tuples(inst: &Instance) -> IndexedTuples {
    let n = inst.agents();
    let per_agent = (0..n)
        .map(|i| {
            ranking(inst, i)
                .order
                .chunks(n)
                .map(<[usize]>::to_vec)
                .collect()
        })
        .collect();
    IndexedTuples {
        n,
        m: inst.items(),
        per_agent,
    }
}

/// Simple undirected graph on items.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemGraph {
    m: usize,
    adjacent: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl ItemGraph {
    /// Graph on `m` vertices. Self-loops are rejected and repeated pairs merged.
    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = ItemGraph {
            m,
            adjacent: vec![false; m * m],
            neighbors: vec![Vec::new(); m],
            edges: Vec::new(),
        };
        for (a, b) in edges {
            if a >= m || b >= m {
                return Err(Error::ItemOutOfRange { item: a.max(b), m });
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on item {}", a + 1)));
            }
            g.add_edge(a, b);
        }
        g.finish();
        Ok(g)
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        if !self.adjacent[a * self.m + b] {
            self.adjacent[a * self.m + b] = true;
            self.adjacent[b * self.m + a] = true;
            self.neighbors[a].push(b);
            self.neighbors[b].push(a);
            self.edges.push((a.min(b), a.max(b)));
        }
    }

    fn finish(&mut self) {
        self.edges.sort_unstable();
        for list in &mut self.neighbors {
            list.sort_unstable();
        }
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    /// Edges as `(low, high)` pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacent[a * self.m + b]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }
}

/// Item graph of the instance's indexed tuples.
pub fn build_item_graph(inst: &Instance) -> ItemGraph {
    item_graph_of(&indexed_tuples(inst))
}

pub fn item_graph_of(tuples: &IndexedTuples) -> ItemGraph {
    let mut g = ItemGraph {
        m: tuples.items(),
        adjacent: vec![false; tuples.items() * tuples.items()],
        neighbors: vec![Vec::new(); tuples.items()],
        edges: Vec::new(),
    };
    for tuple in tuples.iter() {
        for (x, &a) in tuple.iter().enumerate() {
            for &b in &tuple[x + 1..] {
                g.add_edge(a, b);
            }
        }
    }
    g.finish();
    g
}

/// Connected component labels, numbered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub labels: Vec<usize>,
}

pub fn components(g: &ItemGraph) -> Components {
    let mut labels = vec![usize::MAX; g.vertices()];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..g.vertices() {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = count;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if labels[w] == usize::MAX {
                    labels[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    Components { count, labels }
}

/// A proper vertex coloring with colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(g: &ItemGraph, colors: Vec<usize>, k: usize) -> Result<Self> {
        if colors.len() != g.vertices() {
            return Err(Error::DimensionMismatch("one color per vertex".into()));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::TooManyColors {
                colors: c + 1,
                bundles: k,
            });
        }
        if let Some(&(a, b)) = g.edges().iter().find(|&&(a, b)| colors[a] == colors[b]) {
            return Err(Error::InvalidGraph(format!(
                "items {} and {} are adjacent but share a color",
                a + 1,
                b + 1
            )));
        }
        Ok(Coloring { colors, k })
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Palette size the coloring was asked for.
    pub fn palette(&self) -> usize {
        self.k
    }

    /// Highest color index used plus one.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().max().map_or(0, |c| c + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorOutcome {
    Colorable(Coloring),
    /// The search exhausted every coloring.
    Infeasible,
}

impl ColorOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            ColorOutcome::Colorable(c) => Some(c),
            ColorOutcome::Infeasible => None,
        }
    }

    pub fn is_colorable(&self) -> bool {
        matches!(self, ColorOutcome::Colorable(_))
    }
}

/// Exact `k`-coloring by backtracking.
///
/// Branches on the uncolored vertex with the most distinct neighbor colors
/// (ties: most uncolored neighbors, then smallest index) and never opens color
/// `c + 1` before `c` is in use.
pub fn k_color(g: &ItemGraph, k: usize) -> ColorOutcome {
    assert!(k >= 1, "k must be positive");
    let mut search = ColorSearch {
        g,
        k,
        color: vec![usize::MAX; g.vertices()],
        blocked: vec![0; g.vertices() * k],
        saturation: vec![0; g.vertices()],
        free_degree: (0..g.vertices()).map(|v| g.degree(v)).collect(),
    };
    if search.extend(0, 0) {
        ColorOutcome::Colorable(Coloring {
            colors: search.color,
            k,
        })
    } else {
        ColorOutcome::Infeasible
    }
}

struct ColorSearch<'g> {
    g: &'g ItemGraph,
    k: usize,
    color: Vec<usize>,
    /// `blocked[v * k + c]`: colored neighbors of `v` using `c`.
    blocked: Vec<u32>,
    saturation: Vec<usize>,
    free_degree: Vec<usize>,
}

impl ColorSearch<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.g.vertices())
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by(|&a, &b| {
                self.saturation[a]
                    .cmp(&self.saturation[b])
                    .then(self.free_degree[a].cmp(&self.free_degree[b]))
                    .then(b.cmp(&a))
            })
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &w in self.g.neighbors(v) {
            self.free_degree[w] -= 1;
            let slot = &mut self.blocked[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        for &w in self.g.neighbors(v) {
            self.free_degree[w] += 1;
            let slot = &mut self.blocked[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn extend(&mut self, colored: usize, opened: usize) -> bool {
        if colored == self.g.vertices() {
            return true;
        }
        let v = self.pick().expect("an uncolored vertex remains");
        if self.saturation[v] >= self.k {
            return false;
        }
        let limit = (opened + 1).min(self.k);
        for c in 0..limit {
            if self.blocked[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.extend(colored + 1, opened.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// Bundle `c` holds the items of color `c`; unused colors give empty bundles.
pub fn coloring_to_partition(c: &Coloring, n: usize) -> Result<Partition> {
    let used = c.colors_used();
    if used > n {
        return Err(Error::TooManyColors {
            colors: used,
            bundles: n,
        });
    }
    Partition::from_labels(c.colors(), n)
}

/// No bundle holds two items of the same tuple of any agent.
pub fn separates_tuples(p: &Partition, tuples: &IndexedTuples) -> Result<bool> {
    if p.items() != tuples.items() {
        return Err(Error::DimensionMismatch(format!(
            "partition covers {} items, tuples cover {}",
            p.items(),
            tuples.items()
        )));
    }
    let labels = p.labels();
    let mut seen = vec![false; p.len()];
    for tuple in tuples.iter() {
        seen.iter_mut().for_each(|s| *s = false);
        for &item in tuple {
            if std::mem::replace(&mut seen[labels[item]], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(n!)^(C - 1)` distinct symEF1 partitions are guaranteed when the item graph
/// is `n`-colorable and items are distinct; `None` when it is not colorable.
pub fn count_lower_bound(g: &ItemGraph, n: usize) -> Option<BigUint> {
    if !k_color(g, n).is_colorable() {
        return None;
    }
    let c = components(g).count;
    let factorial: BigUint = (1..=n as u64).map(BigUint::from).product();
    Some(factorial.pow(c.saturating_sub(1) as u32))
}

/// DOT rendering with 1-based vertex labels.
pub fn graph_to_dot(g: &ItemGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertices() {
        let _ = writeln!(out, "  {};", v + 1);
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", a + 1, b + 1);
    }
    out.push_str("}\n");
    out
}
