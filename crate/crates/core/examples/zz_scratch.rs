use symef1::sim::run_cell;
use symef1::*;
fn main() {
    for (n, m, reps) in [
        (3usize, 5usize, 2000usize),
        (3, 6, 2000),
        (4, 5, 2000),
        (4, 8, 2000),
        (5, 6, 1000),
        (5, 10, 1000),
        (3, 9, 2000),
        (3, 10, 2000),
        (3, 15, 2000),
        (4, 15, 2000),
        (5, 15, 1000),
    ] {
        let cfg = SimConfig {
            replications: reps,
            ..SimConfig::default()
        };
        let t = std::time::Instant::now();
        let r = run_cell(&cfg, n, m, 10000);
        println!(
            "n={n} m={m} pct={:.3} c1={:.2} fb={:.2} budget={} t={:.2}",
            r.pct_symef1(),
            r.pct_case(1),
            r.pct_exact_fallback(),
            r.budget_exceeded,
            t.elapsed().as_secs_f64()
        );
    }
}
