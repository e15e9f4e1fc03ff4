//! Valuation instances, partitions and assignments, plus their text formats.
//!
//! Indices are 0-based in memory and 1-based in every file format.
//!
//! Instance file:
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 3 4
//! 1 1 1 0
//! 1 1 0 1
//! 1 0 1 1
//! ```
//!
//! Partition file: one line per bundle holding space-separated item indices;
//! an empty line is an empty bundle. Lines starting with `#` are skipped.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `n` agents with additive, nonnegative integer values for `m` items.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    n: usize,
    m: usize,
    values: Vec<u64>,
}

impl Instance {
    /// Builds an instance from a row-major `n × m` value matrix.
    pub fn new(n: usize, m: usize, values: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "an instance needs at least one agent".into(),
            ));
        }
        if values.len() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "expected {} values for {n}x{m}, got {}",
                n * m,
                values.len()
            )));
        }
        Ok(Instance { n, m, values })
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} values, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Instance::new(n, m, values)
    }

    /// Number of agents (and bundles).
    #[inline]
    pub fn agents(&self) -> usize {
        self.n
    }

    /// Number of items.
    #[inline]
    pub fn items(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn value(&self, agent: usize, item: usize) -> u64 {
        self.values[agent * self.m + item]
    }

    #[inline]
    pub fn row(&self, agent: usize) -> &[u64] {
        &self.values[agent * self.m..(agent + 1) * self.m]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> + '_ {
        (0..self.n).map(move |i| self.row(i))
    }

    /// Agent's value for the full item set.
    pub fn total_value(&self, agent: usize) -> u64 {
        self.row(agent).iter().sum()
    }

    /// Sum over agents of the item's value.
    pub fn item_total(&self, item: usize) -> u64 {
        (0..self.n).map(|i| self.value(i, item)).sum()
    }

    pub(crate) fn check_agent(&self, agent: usize) -> Result<()> {
        if agent < self.n {
            Ok(())
        } else {
            Err(Error::AgentOutOfRange { agent, n: self.n })
        }
    }

    pub(crate) fn check_item(&self, item: usize) -> Result<()> {
        if item < self.m {
            Ok(())
        } else {
            Err(Error::ItemOutOfRange { item, m: self.m })
        }
    }

    /// Parses the instance file format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(idx, line)| (idx + 1, line.trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: header_line,
                message: format!("header must be `n m`, found {} tokens", dims.len()),
            });
        }
        let n = parse_count(dims[0], header_line, "agent count")?;
        let m = parse_count(dims[1], header_line, "item count")?;
        if n == 0 {
            return Err(Error::Parse {
                line: header_line,
                message: "agent count must be at least 1".into(),
            });
        }

        let mut values = Vec::with_capacity(n * m);
        let mut rows = 0;
        if m > 0 {
            for (line_no, line) in lines.by_ref().take(n) {
                let before = values.len();
                for token in line.split_whitespace() {
                    values.push(parse_value(token, line_no)?);
                }
                let got = values.len() - before;
                if got != m {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected {m} values, found {got}"),
                    });
                }
                rows += 1;
            }
            if rows != n {
                return Err(Error::Parse {
                    line: text.lines().count().max(1),
                    message: format!("expected {n} value rows, found {rows}"),
                });
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected extra row after {n} agents"),
            });
        }
        Instance::new(n, m, values)
    }
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} `{token}`"),
    })
}

fn parse_value(token: &str, line: usize) -> Result<u64> {
    if token.starts_with('-') && token[1..].parse::<u64>().is_ok() {
        return Err(Error::Parse {
            line,
            message: format!("negative value `{token}`"),
        });
    }
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("`{token}` is not a nonnegative integer"),
    })
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Instance::parse(s)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m)?;
        if self.m == 0 {
            return Ok(());
        }
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `n` pairwise disjoint bundles covering items `0..m`. Bundles may be empty.
///
/// Items inside a bundle are kept sorted, so two partitions are equal exactly
/// when they have the same bundles in the same order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    bundles: Vec<Vec<usize>>,
    m: usize,
}

impl Partition {
    pub fn new(mut bundles: Vec<Vec<usize>>, m: usize) -> Result<Self> {
        let mut seen = vec![false; m];
        for (k, bundle) in bundles.iter_mut().enumerate() {
            bundle.sort_unstable();
            for &item in bundle.iter() {
                if item >= m {
                    return Err(Error::ItemOutOfRange { item, m });
                }
                if seen[item] {
                    return Err(Error::InvalidPartition(format!(
                        "item {} appears twice (again in bundle {})",
                        item + 1,
                        k + 1
                    )));
                }
                seen[item] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "item {} is not in any bundle",
                missing + 1
            )));
        }
        if bundles.is_empty() {
            return Err(Error::InvalidPartition(
                "a partition needs at least one bundle".into(),
            ));
        }
        Ok(Partition { bundles, m })
    }

    /// Builds a partition from a bundle label per item.
    pub fn from_labels(labels: &[usize], n: usize) -> Result<Self> {
        let mut bundles = vec![Vec::new(); n];
        for (item, &label) in labels.iter().enumerate() {
            if label >= n {
                return Err(Error::BundleOutOfRange { bundle: label, n });
            }
            bundles[label].push(item);
        }
        Partition::new(bundles, labels.len())
    }

    /// Number of bundles.
    #[inline]
    pub fn len(&self) -> usize {
        self.bundles.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bundles.is_empty()
    }

    /// Number of items covered.
    #[inline]
    pub fn items(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn bundle(&self, k: usize) -> &[usize] {
        &self.bundles[k]
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn into_bundles(self) -> Vec<Vec<usize>> {
        self.bundles
    }

    /// Bundle index of every item.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.m];
        for (k, bundle) in self.bundles.iter().enumerate() {
            for &item in bundle {
                labels[item] = k;
            }
        }
        labels
    }

    /// Same partition with bundles reordered.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch("bundle permutation length".into()));
        }
        let bundles = order.iter().map(|&k| self.bundles[k].clone()).collect();
        Ok(Partition { bundles, m: self.m })
    }

    /// Representative of the unordered family of bundles: nonempty bundles
    /// sorted by their smallest item, empty bundles last.
    pub fn canonical(&self) -> Self {
        let mut bundles = self.bundles.clone();
        bundles.sort_by_key(|b| b.first().copied().unwrap_or(usize::MAX));
        Partition { bundles, m: self.m }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Parses the partition file format for an instance with `n` bundles and
    /// `m` items. Surplus trailing blank lines are ignored.
    pub fn parse(text: &str, n: usize, m: usize) -> Result<Self> {
        let mut lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(idx, line)| (idx + 1, line.trim()))
            .filter(|(_, line)| !line.starts_with('#'))
            .collect();
        while lines.len() > n && lines.last().is_some_and(|(_, l)| l.is_empty()) {
            lines.pop();
        }
        if lines.len() != n {
            return Err(Error::Parse {
                line: lines.last().map_or(1, |(no, _)| *no),
                message: format!("expected {n} bundle lines, found {}", lines.len()),
            });
        }
        let mut bundles = Vec::with_capacity(n);
        for (line_no, line) in lines {
            let mut bundle = Vec::new();
            for token in line.split_whitespace() {
                let item: usize = token.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{token}` is not an item index"),
                })?;
                if item == 0 || item > m {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("item {item} outside 1..={m}"),
                    });
                }
                bundle.push(item - 1);
            }
            bundles.push(bundle);
        }
        Partition::new(bundles, m)
    }
}

impl fmt::Display for Partition {
    /// Partition file format, one line per bundle, 1-based items.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bundle in &self.bundles {
            let line: Vec<String> = bundle.iter().map(|j| (j + 1).to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A partition together with the agent that receives each bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    partition: Partition,
    owner: Vec<usize>,
}

impl Assignment {
    /// `owner[k]` is the agent receiving bundle `k`; it must be a permutation.
    pub fn new(partition: Partition, owner: Vec<usize>) -> Result<Self> {
        let n = partition.len();
        if owner.len() != n {
            return Err(Error::InvalidAssignment(format!(
                "{} owners for {n} bundles",
                owner.len()
            )));
        }
        let mut seen = vec![false; n];
        for &agent in &owner {
            if agent >= n || std::mem::replace(&mut seen[agent], true) {
                return Err(Error::InvalidAssignment(
                    "owner map is not a permutation".into(),
                ));
            }
        }
        Ok(Assignment { partition, owner })
    }

    /// Bundle `k` goes to agent `k`.
    pub fn identity(partition: Partition) -> Self {
        let owner = (0..partition.len()).collect();
        Assignment { partition, owner }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn owner(&self, bundle: usize) -> usize {
        self.owner[bundle]
    }

    pub fn owners(&self) -> &[usize] {
        &self.owner
    }

    /// The bundle held by `agent`.
    pub fn bundle_of(&self, agent: usize) -> &[usize] {
        let k = self
            .owner
            .iter()
            .position(|&a| a == agent)
            .expect("owner map is a permutation");
        self.partition.bundle(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NO_SYMEF1: &str = "3 4\n1 1 1 0\n1 1 0 1\n1 0 1 1";

    #[test]
    fn parses_the_three_agent_table() {
        let inst = Instance::parse(NO_SYMEF1).unwrap();
        assert_eq!((inst.agents(), inst.items()), (3, 4));
        assert_eq!(inst.row(0), &[1, 1, 1, 0]);
        assert_eq!(inst.row(1), &[1, 1, 0, 1]);
        assert_eq!(inst.row(2), &[1, 0, 1, 1]);
    }

    #[test]
    fn parses_degenerate_and_echo_inputs() {
        let empty = Instance::parse("1 0\n").unwrap();
        assert_eq!((empty.agents(), empty.items()), (1, 0));
        let small = Instance::parse("2 2\n5 3\n3 5").unwrap();
        assert_eq!(small.row(0), &[5, 3]);
        assert_eq!(small.row(1), &[3, 5]);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let inst = Instance::parse("# header next\n\n2 1\n  # row one\n4\n\n7\n").unwrap();
        assert_eq!(inst.row(1), &[7]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = Instance::parse("2 2\n1 2\n3 x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = Instance::parse("2 2\n1 -2\n3 4").unwrap_err();
        assert!(
            matches!(err, Error::Parse { line: 2, ref message } if message.contains("negative"))
        );
        let err = Instance::parse("2 2\n1 2 3\n3 4").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Instance::parse("2 2 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(Instance::parse("2 2\n1 2\n").is_err());
        assert!(Instance::parse("1 2\n1 2\n3 4\n").is_err());
        assert!(Instance::parse("").is_err());
        assert!(Instance::parse("1 2\n1.5 2\n").is_err());
    }

    #[test]
    fn instance_text_round_trips() {
        let inst = Instance::parse(NO_SYMEF1).unwrap();
        assert_eq!(Instance::parse(&inst.to_string()).unwrap(), inst);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![vec![0, 1], vec![2]], 3).is_ok());
        assert!(Partition::new(vec![vec![0, 1], vec![1, 2]], 3).is_err());
        assert!(Partition::new(vec![vec![0], vec![2]], 3).is_err());
        assert!(Partition::new(vec![vec![0, 5]], 3).is_err());
        let with_empty = Partition::new(vec![vec![], vec![1, 0]], 2).unwrap();
        assert_eq!(with_empty.bundle(1), &[0, 1]);
    }

    #[test]
    fn partition_file_round_trip_keeps_empty_bundles() {
        let p = Partition::new(vec![vec![2, 0], vec![], vec![1]], 3).unwrap();
        let text = p.to_string();
        assert_eq!(text, "1 3\n\n2\n");
        assert_eq!(Partition::parse(&text, 3, 3).unwrap(), p);
        let trailing = Partition::new(vec![vec![0, 1], vec![]], 2).unwrap();
        assert_eq!(
            Partition::parse(&trailing.to_string(), 2, 2).unwrap(),
            trailing
        );
        assert_eq!(
            Partition::parse("# stage=x\n1 2\n\n\n\n", 2, 2).unwrap(),
            trailing
        );
        assert!(Partition::parse("1 2\n", 2, 2).is_err());
        assert!(Partition::parse("1 2\n3\n", 2, 2).is_err());
        assert!(Partition::parse("1\n1 2\n", 2, 2).is_err());
    }

    #[test]
    fn canonical_form_sorts_by_smallest_item() {
        let p = Partition::new(vec![vec![], vec![3, 1], vec![0, 2]], 4).unwrap();
        let c = p.canonical();
        assert_eq!(c.bundles(), &[vec![0, 2], vec![1, 3], vec![]]);
        assert!(c.is_canonical());
        assert!(!p.is_canonical());
    }

    #[test]
    fn assignment_requires_permutation() {
        let p = Partition::new(vec![vec![0], vec![1]], 2).unwrap();
        assert!(Assignment::new(p.clone(), vec![1, 1]).is_err());
        let a = Assignment::new(p, vec![1, 0]).unwrap();
        assert_eq!(a.bundle_of(0), &[1]);
        assert_eq!(a.bundle_of(1), &[0]);
    }
}
