//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a negative verdict (violated, infeasible, not
//! found, not applicable), `2` usage, I/O or parse errors, `3` search budget
//! exhausted. On every path other than `0`, standard output carries at most a
//! single status token; details go to standard error.
//!
//! Metadata printed next to a partition uses `#` comment lines, which the
//! partition parser skips, so `solve` output can be fed back to `check`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use crate::constructive::{detect_groups, grouped_allocation};
use crate::error::Error;
use crate::exact::{
    enumerate_symef1_with, exact_symef1, export_ip, max_nash_welfare, EnumerateOptions,
    ExactOutcome, SearchLimits,
};
use crate::fairness::{
    ef1_violation, is_balanced, is_symef1, symef1_violation, symefx_violation, Violation,
};
use crate::heuristic::{greedy_symef1, item_order, ItemOrder};
use crate::instance::{Assignment, Instance, Partition};
use crate::sim::{emit_csv, run_simulation_with_progress, SimConfig};
use crate::tuples::{build_item_graph, coloring_to_partition, graph_to_dot, k_color, ColorOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "symef1",
    version,
    about = "Symmetric EF1 partitions of indivisible goods"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    Symef1,
    Symefx,
    /// Bundle k goes to agent k.
    Ef1,
    Balanced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Auto,
    Constructive,
    Coloring,
    Heuristic,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Ascending,
    DescTotalValue,
    Random,
}

#[derive(Clone, Debug, clap::Args)]
pub struct LimitArgs {
    /// Node budget for exhaustive searches.
    #[arg(long, default_value_t = 10_000_000)]
    pub nodes: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 10.0)]
    pub time_limit: f64,
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            node_budget: self.nodes,
            time_budget: Duration::try_from_secs_f64(self.time_limit).unwrap_or(Duration::MAX),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a partition against an instance.
    Check {
        instance: PathBuf,
        partition: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckMode::Symef1)]
        mode: CheckMode,
    },
    /// Find a symEF1 partition.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
        /// Item order for the heuristic.
        #[arg(long, value_enum, default_value_t = OrderArg::Ascending)]
        order: OrderArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Print the item graph in DOT.
    Graph { instance: PathBuf },
    /// Color the item graph with k colors (default: number of agents).
    Color {
        instance: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// List every symEF1 partition in canonical form.
    Enumerate {
        instance: PathBuf,
        /// Lift the guard on the size of the search space.
        #[arg(long)]
        allow_large: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Maximum Nash welfare assignment; bundle k is agent k's.
    Mnw {
        instance: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Write the 0/1 program in CPLEX LP format.
    ExportIp {
        instance: PathBuf,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the random-instance study and emit CSV.
    Simulate {
        /// Agent counts, e.g. `3,4,5`.
        #[arg(long, value_parser = parse_list)]
        n: NumList,
        /// Item counts, e.g. `5..10,15`.
        #[arg(long, value_parser = parse_list)]
        m: NumList,
        /// Maximum item values.
        #[arg(long, value_parser = parse_list, default_value = "10000")]
        max_value: NumList,
        #[arg(long, default_value_t = 2000)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write 0.000 in the wall_seconds column.
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

/// Comma-separated numbers and inclusive `a..b` ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumList(pub Vec<u64>);

pub fn parse_list(text: &str) -> Result<NumList, String> {
    let num = |s: &str| s.trim().parse::<u64>().map_err(|e| format!("`{s}`: {e}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        match part.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(NumList(out))
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

/// Parses `args` (program name first) and executes the command.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::BudgetExceeded { .. } | Error::SearchSpaceTooLarge { .. } => EXIT_BUDGET,
                _ => EXIT_ERROR,
            }
        }
    }
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Instance::parse(&read(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Check {
            instance,
            partition,
            mode,
        } => {
            let inst = load_instance(&instance)?;
            let p = Partition::parse(&read(&partition)?, inst.agents(), inst.items())
                .map_err(|e| Failure::Io(format!("{}: {e}", partition.display())))?;
            check(&inst, &p, mode, out, err)
        }
        Command::Solve {
            instance,
            strategy,
            order,
            seed,
            limits,
        } => {
            let inst = load_instance(&instance)?;
            let order = match order {
                OrderArg::Ascending => ItemOrder::Ascending,
                OrderArg::DescTotalValue => ItemOrder::DescTotalValue,
                OrderArg::Random => ItemOrder::Random(seed),
            };
            solve(&inst, strategy, order, &limits.limits(), out, err)
        }
        Command::Graph { instance } => {
            let inst = load_instance(&instance)?;
            write!(out, "{}", graph_to_dot(&build_item_graph(&inst)))?;
            Ok(EXIT_OK)
        }
        Command::Color { instance, k } => {
            let inst = load_instance(&instance)?;
            let k = k.unwrap_or(inst.agents());
            match k_color(&build_item_graph(&inst), k) {
                ColorOutcome::Colorable(c) => {
                    write!(out, "{}", coloring_to_partition(&c, k)?)?;
                    Ok(EXIT_OK)
                }
                ColorOutcome::Infeasible => {
                    writeln!(out, "INFEASIBLE k={k}")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Enumerate {
            instance,
            allow_large,
            limits,
        } => {
            let inst = load_instance(&instance)?;
            let opts = EnumerateOptions {
                allow_large,
                ..EnumerateOptions::default()
            };
            let all = enumerate_symef1_with(&inst, &limits.limits(), opts)?;
            writeln!(out, "# count={}", all.partitions.len())?;
            for (idx, p) in all.partitions.iter().enumerate() {
                writeln!(out, "# partition {}", idx + 1)?;
                write!(out, "{p}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Mnw { instance, limits } => {
            let inst = load_instance(&instance)?;
            let best = max_nash_welfare(&inst, &limits.limits())?;
            let p = best.assignment.partition();
            writeln!(out, "# nash_welfare={}", best.welfare.product)?;
            writeln!(out, "# agents_served={}", best.welfare.served)?;
            writeln!(out, "# symef1={}", is_symef1(&inst, p)?)?;
            write!(out, "{p}")?;
            Ok(EXIT_OK)
        }
        Command::ExportIp {
            instance,
            out: path,
        } => {
            let inst = load_instance(&instance)?;
            let lp = export_ip(&inst);
            match path {
                Some(path) => fs::write(&path, lp)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => write!(out, "{lp}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Simulate {
            n,
            m,
            max_value,
            reps,
            seed,
            out: path,
            no_timing,
            limits,
        } => {
            let to_sizes =
                |list: NumList| list.0.into_iter().map(|v| v as usize).collect::<Vec<_>>();
            if n.0.contains(&0) || reps == 0 {
                return Err(Failure::Io(
                    "agent counts and --reps must be positive".into(),
                ));
            }
            let cfg = SimConfig {
                n_list: to_sizes(n),
                m_list: to_sizes(m),
                max_values: max_value.0,
                replications: reps,
                master_seed: seed,
                limits: limits.limits(),
                timing: !no_timing,
            };
            let reports = run_simulation_with_progress(&cfg, |r| {
                let _ = writeln!(
                    err,
                    "n={} m={} M={} symef1={:.3}% ({:.2}s)",
                    r.n,
                    r.m,
                    r.max_value,
                    r.pct_symef1(),
                    r.wall_seconds
                );
            });
            let csv = emit_csv(&reports);
            match path {
                Some(path) => fs::write(&path, csv)
                    .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
                None => write!(out, "{csv}")?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn report_violation(err: &mut dyn Write, v: &Violation, removed: &str) -> std::io::Result<()> {
    writeln!(
        err,
        "agent {} holding bundle {} envies bundle {}: {} < {} (bundle {} without its {removed} item)",
        v.agent + 1,
        v.held + 1,
        v.envied + 1,
        v.held_value,
        v.envied_value,
        v.envied + 1
    )
}

fn check(
    inst: &Instance,
    p: &Partition,
    mode: CheckMode,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let violation = match mode {
        CheckMode::Symef1 => symef1_violation(inst, p)?.map(|v| (v, "most valued")),
        CheckMode::Symefx => symefx_violation(inst, p)?.map(|v| (v, "least valued")),
        CheckMode::Ef1 => {
            ef1_violation(inst, &Assignment::identity(p.clone()))?.map(|v| (v, "most valued"))
        }
        CheckMode::Balanced => {
            if is_balanced(p) {
                None
            } else {
                let sizes: Vec<String> = p.bundles().iter().map(|b| b.len().to_string()).collect();
                writeln!(
                    err,
                    "bundle sizes differ by more than one: {}",
                    sizes.join(" ")
                )?;
                writeln!(out, "VIOLATED")?;
                return Ok(EXIT_NEGATIVE);
            }
        }
    };
    match violation {
        None => {
            writeln!(out, "SATISFIED")?;
            Ok(EXIT_OK)
        }
        Some((v, removed)) => {
            report_violation(err, &v, removed)?;
            writeln!(out, "VIOLATED")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn emit_partition(
    out: &mut dyn Write,
    stage: &str,
    extra: Option<String>,
    p: &Partition,
) -> Result<i32, Failure> {
    writeln!(out, "# stage={stage}")?;
    if let Some(line) = extra {
        writeln!(out, "# {line}")?;
    }
    write!(out, "{p}")?;
    Ok(EXIT_OK)
}

fn constructive(inst: &Instance) -> Result<Option<Partition>, Error> {
    let Some(gs) = detect_groups(inst) else {
        return Ok(None);
    };
    let p = grouped_allocation(inst, &gs)?;
    Ok(is_symef1(inst, &p)?.then_some(p))
}

fn coloring(inst: &Instance) -> Result<Option<Partition>, Error> {
    match k_color(&build_item_graph(inst), inst.agents()) {
        ColorOutcome::Colorable(c) => Ok(Some(coloring_to_partition(&c, inst.agents())?)),
        ColorOutcome::Infeasible => Ok(None),
    }
}

fn solve(
    inst: &Instance,
    strategy: Strategy,
    order: ItemOrder,
    lim: &SearchLimits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let not_applicable = |out: &mut dyn Write| -> Result<i32, Failure> {
        writeln!(out, "NOT_APPLICABLE")?;
        Ok(EXIT_NEGATIVE)
    };
    match strategy {
        Strategy::Constructive => match constructive(inst)? {
            Some(p) => emit_partition(out, "constructive", None, &p),
            None => not_applicable(out),
        },
        Strategy::Coloring => match coloring(inst)? {
            Some(p) => emit_partition(out, "coloring", None, &p),
            None => not_applicable(out),
        },
        Strategy::Heuristic => {
            let r = greedy_symef1(inst, &item_order(inst, order))?;
            match r.partition() {
                Some(p) => emit_partition(out, "heuristic", Some(r.stats.summary()), p),
                None => {
                    writeln!(err, "{}", r.stats.summary())?;
                    writeln!(out, "NOT_FOUND")?;
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Strategy::Exact => exact_stage(inst, lim, out),
        Strategy::Auto => {
            if let Some(p) = constructive(inst)? {
                return emit_partition(out, "constructive", None, &p);
            }
            if let Some(p) = coloring(inst)? {
                return emit_partition(out, "coloring", None, &p);
            }
            let r = greedy_symef1(inst, &item_order(inst, order))?;
            if let Some(p) = r.partition() {
                return emit_partition(out, "heuristic", Some(r.stats.summary()), p);
            }
            writeln!(
                err,
                "heuristic gave up ({}), running exact search",
                r.stats.summary()
            )?;
            exact_stage(inst, lim, out)
        }
    }
}

fn exact_stage(inst: &Instance, lim: &SearchLimits, out: &mut dyn Write) -> Result<i32, Failure> {
    match exact_symef1(inst, lim) {
        ExactOutcome::Found(p) => emit_partition(out, "exact", None, &p),
        ExactOutcome::ProvedInfeasible => {
            writeln!(out, "INFEASIBLE")?;
            Ok(EXIT_NEGATIVE)
        }
        ExactOutcome::BudgetExceeded => {
            writeln!(out, "BUDGET_EXCEEDED")?;
            Ok(EXIT_BUDGET)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_syntax() {
        assert_eq!(
            parse_list("5..10,15").unwrap().0,
            vec![5, 6, 7, 8, 9, 10, 15]
        );
        assert_eq!(parse_list("3").unwrap().0, vec![3]);
        assert!(parse_list("4..2").is_err());
        assert!(parse_list("x").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(
            run_with(["symef1", "frobnicate"], &mut out, &mut err),
            EXIT_ERROR
        );
        assert!(out.is_empty());
    }

    #[test]
    fn missing_file_exits_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(
            ["symef1", "graph", "/nonexistent/instance.txt"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_ERROR);
        assert!(out.is_empty());
    }
}
