mod common;

use proptest::prelude::*;

use common::{naive_symef1, naive_symefx};
use symef1::exact::{export_ip, max_nash_welfare};
use symef1::heuristic::{greedy_symef1, item_order};
use symef1::tuples::ranking;
use symef1::*;

fn instance(max_n: usize, max_m: usize, max_value: u64) -> impl Strategy<Value = Instance> {
    (1..=max_n, 0..=max_m).prop_flat_map(move |(n, m)| {
        proptest::collection::vec(0..=max_value, n * m)
            .prop_map(move |values| Instance::new(n, m, values).unwrap())
    })
}

/// An instance together with a random map of its items to bundles.
fn with_partition(
    max_n: usize,
    max_m: usize,
    max_value: u64,
) -> impl Strategy<Value = (Instance, Partition)> {
    instance(max_n, max_m, max_value).prop_flat_map(|inst| {
        let (n, m) = (inst.agents(), inst.items());
        proptest::collection::vec(0..n, m)
            .prop_map(move |labels| (inst.clone(), Partition::from_labels(&labels, n).unwrap()))
    })
}

fn bundle_value_of(inst: &Instance, agent: usize, bundle: &[usize]) -> u64 {
    bundle.iter().map(|&j| inst.value(agent, j)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn instance_text_round_trips(inst in instance(5, 8, 1_000_000)) {
        let back: Instance = inst.to_string().parse().unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn partition_text_round_trips((inst, p) in with_partition(4, 8, 10)) {
        let back = Partition::parse(&p.to_string(), inst.agents(), inst.items()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn predicates_match_the_definition((inst, p) in with_partition(4, 7, 6)) {
        let ef1 = is_symef1(&inst, &p).unwrap();
        let efx = is_symefx(&inst, &p).unwrap();
        prop_assert_eq!(ef1, naive_symef1(&inst, p.bundles()));
        prop_assert_eq!(efx, naive_symefx(&inst, p.bundles()));
        prop_assert!(!efx || ef1);
        prop_assert_eq!(ef1, symef1_violation(&inst, &p).unwrap().is_none());
    }

    #[test]
    fn violations_are_genuine((inst, p) in with_partition(4, 7, 6)) {
        if let Some(v) = symef1_violation(&inst, &p).unwrap() {
            let held = bundle_value_of(&inst, v.agent, p.bundle(v.held));
            prop_assert_eq!(held, v.held_value);
            prop_assert!(v.held_value < v.envied_value);
        }
    }

    #[test]
    fn canonical_form_ignores_bundle_order((_inst, p) in with_partition(4, 7, 3), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut order: Vec<usize> = (0..p.len()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = p.permuted(&order).unwrap();
        prop_assert_eq!(shuffled.canonical(), p.canonical());
        prop_assert!(p.canonical().is_canonical());
    }

    #[test]
    fn heuristic_output_is_symef1(inst in instance(4, 9, 50), seed in any::<u64>()) {
        for order in [ItemOrder::Ascending, ItemOrder::DescTotalValue, ItemOrder::Random(seed)] {
            let r = greedy_symef1(&inst, &item_order(&inst, order)).unwrap();
            if let Some(p) = r.partition() {
                prop_assert!(naive_symef1(&inst, p.bundles()));
                prop_assert_eq!(r.stats.placed(), inst.items());
                prop_assert!(!r.stats.failed);
            } else {
                prop_assert!(r.stats.failed);
            }
        }
    }

    #[test]
    fn exact_agrees_with_heuristic_successes(inst in instance(4, 8, 20)) {
        let r = greedy_symef1(&inst, &item_order(&inst, ItemOrder::Ascending)).unwrap();
        match exact_symef1(&inst, &SearchLimits::unlimited()) {
            ExactOutcome::Found(p) => prop_assert!(naive_symef1(&inst, p.bundles())),
            ExactOutcome::ProvedInfeasible => prop_assert!(r.partition().is_none()),
            ExactOutcome::BudgetExceeded => prop_assert!(false, "unlimited search ran out"),
        }
    }

    #[test]
    fn colorings_give_separating_balanced_symef1(inst in instance(4, 12, 30)) {
        let n = inst.agents();
        let g = build_item_graph(&inst);
        if let ColorOutcome::Colorable(c) = k_color(&g, n) {
            for &(a, b) in g.edges() {
                prop_assert_ne!(c.color(a), c.color(b));
            }
            let p = coloring_to_partition(&c, n).unwrap();
            prop_assert!(separates_tuples(&p, &indexed_tuples(&inst)).unwrap());
            prop_assert!(is_balanced(&p));
            prop_assert!(naive_symef1(&inst, p.bundles()));
        }
    }

    #[test]
    fn two_agents_are_always_two_colorable(inst in instance(2, 14, 1000).prop_filter("two agents", |i| i.agents() == 2)) {
        prop_assert!(k_color(&build_item_graph(&inst), 2).is_colorable());
    }

    #[test]
    fn round_robin_bundles_descend_for_their_agent(inst in instance(4, 10, 40)) {
        let tuples = indexed_tuples(&inst);
        for agent in 0..inst.agents() {
            let p = agent_round_robin(&inst, agent).unwrap();
            let values: Vec<u64> = p.bundles().iter().map(|b| bundle_value_of(&inst, agent, b)).collect();
            prop_assert!(values.windows(2).all(|w| w[0] >= w[1]), "{:?}", values);
            let labels = p.labels();
            for tuple in tuples.of_agent(agent) {
                let mut seen: Vec<usize> = tuple.iter().map(|&j| labels[j]).collect();
                seen.sort_unstable();
                seen.dedup();
                prop_assert_eq!(seen.len(), tuple.len());
            }
        }
    }

    #[test]
    fn rankings_sort_by_value_then_index(inst in instance(3, 10, 5)) {
        for agent in 0..inst.agents() {
            let order = ranking(&inst, agent).into_order();
            for w in order.windows(2) {
                let (a, b) = (w[0], w[1]);
                let (va, vb) = (inst.value(agent, a), inst.value(agent, b));
                prop_assert!(va > vb || (va == vb && a < b));
            }
        }
    }

    #[test]
    fn identical_or_disjoint_groups_are_symef1(
        row in proptest::collection::vec(0u64..20, 1..8),
        other in proptest::collection::vec(0u64..20, 1..6),
        copies in 1usize..3,
        others in 0usize..3,
    ) {
        // group 1 values the first block, group 2 the second; shared zeros elsewhere
        let m = row.len() + other.len();
        let mut rows = Vec::new();
        for _ in 0..copies {
            let mut r = row.clone();
            r.resize(m, 0);
            rows.push(r);
        }
        for _ in 0..others {
            let mut r = vec![0; row.len()];
            r.extend(&other);
            rows.push(r);
        }
        let inst = Instance::from_rows(&rows).unwrap();
        if let Some(gs) = detect_groups(&inst) {
            let p = grouped_allocation(&inst, &gs).unwrap();
            prop_assert!(naive_symef1(&inst, p.bundles()));
        } else {
            prop_assert!(false, "block instance not grouped: {}", inst);
        }
    }

    #[test]
    fn mnw_beats_random_assignments(inst in instance(3, 6, 9), labels in proptest::collection::vec(0usize..3, 6)) {
        let (n, m) = (inst.agents(), inst.items());
        let best = max_nash_welfare(&inst, &SearchLimits::default()).unwrap();
        let labels: Vec<usize> = labels.into_iter().take(m).map(|l| l % n).collect();
        let other = Assignment::identity(Partition::from_labels(&labels, n).unwrap());
        let served = (0..n).filter(|&i| bundle_value_of(&inst, i, other.bundle_of(i)) > 0).count();
        let product = (0..n)
            .map(|i| bundle_value_of(&inst, i, other.bundle_of(i)))
            .filter(|&v| v > 0)
            .fold(num_bigint::BigUint::from(1u32), |acc, v| acc * v);
        prop_assert!((best.welfare.served, best.welfare.product.clone()) >= (served, product));
        prop_assert_eq!(nash_welfare(&inst, &best.assignment).unwrap() > num_bigint::BigUint::from(0u32), best.welfare.served == n);
    }

    #[test]
    fn lp_has_the_expected_rows(inst in instance(4, 6, 9)) {
        let (n, m) = (inst.agents(), inst.items());
        let lp = export_ip(&inst);
        let rows = |prefix: &str| lp.lines().filter(|l| l.trim_start().starts_with(prefix)).count();
        prop_assert_eq!(rows("one_bundle_"), m);
        prop_assert_eq!(rows("remove_link_"), n * m * n);
        if m > 0 {
            prop_assert_eq!(rows("remove_cap_"), n * n);
            prop_assert_eq!(rows("ef1_"), n * n * (n - 1));
        }
        let binaries = lp.split("Binary\n").nth(1).unwrap().lines().filter(|l| *l != "End").count();
        prop_assert_eq!(binaries, n * m + n * m * n);
    }
}
