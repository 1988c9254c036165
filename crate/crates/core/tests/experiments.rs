use subsel::experiments::{write_csv, Cell, Row};
use subsel::*;

fn disc(p: &PointSetF64, idx: &[usize]) -> f64 {
    bruteforce_discrepancy(&p.select(idx).unwrap()).unwrap()
}

/// All k-subsets of 0..n in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Independent 1-swap check on the branch-and-bound engine.
fn improvable(p: &PointSetF64, idx: &[usize]) -> bool {
    let v = exact_discrepancy(&p.select(idx).unwrap()).value;
    idx.iter().any(|&r| {
        (0..p.len()).filter(|h| !idx.contains(h)).any(|h| {
            let s: Vec<usize> = idx.iter().map(|&i| if i == r { h } else { i }).collect();
            exact_discrepancy(&p.select(&s).unwrap()).value < v - 1e-12
        })
    })
}

#[test]
fn adversarial_set_a_is_a_strict_local_minimum() {
    for k in 2..=5 {
        let alpha = 1e-3;
        let inst = adversarial_instance(k, alpha, 2).unwrap();
        let a = disc(&inst.points, &inst.set_a);
        let b = disc(&inst.points, &inst.set_b);
        assert!((a - (1.0 - alpha)).abs() < 1e-9, "k={k}: {a}");
        assert!(b < a);
        assert!(verify_local_minimum(&inst.points, &inst.set_a).unwrap());
    }
}

#[test]
fn padding_with_ones_keeps_the_values() {
    let flat = adversarial_instance(3, 1e-3, 2).unwrap();
    let padded = adversarial_instance(3, 1e-3, 4).unwrap();
    for set in [&flat.set_a, &flat.set_b] {
        let x = disc(&flat.points, set);
        let y = exact_discrepancy(&padded.points.select(set).unwrap()).value;
        assert!((x - y).abs() < 1e-12);
    }
    assert!(verify_local_minimum(&padded.points, &padded.set_a).unwrap());
}

#[test]
fn verifier_agrees_with_swap_enumeration() {
    let inst = adversarial_instance(3, 1e-3, 2).unwrap();
    let mut rejected = 0;
    for s in subsets(inst.n, 3) {
        let ok = verify_local_minimum(&inst.points, &s).unwrap();
        assert_eq!(ok, !improvable(&inst.points, &s), "{s:?}");
        rejected += !ok as usize;
    }
    assert!(rejected > 0);
}

#[test]
fn ten_point_sobol_local_minima() {
    let p = sobol_points::<f64>(10, 2).unwrap();
    let best = exhaustive_best_subset(&p, 8).unwrap();
    assert!((best.value() - 0.203).abs() < 5e-4);
    assert!(verify_local_minimum(&p, &best.chosen).unwrap());
    let traps: Vec<Vec<usize>> = subsets(10, 8)
        .into_iter()
        .filter(|s| (disc(&p, s) - 0.234).abs() < 5e-4)
        .filter(|s| verify_local_minimum(&p, s).unwrap())
        .collect();
    assert!(!traps.is_empty());
}

#[test]
fn inverse_search_table() {
    for (d, eps, n) in [(4, 0.30, 15), (4, 0.25, 17), (4, 0.20, 28), (5, 0.20, 38)] {
        let r = inverse_discrepancy_search(d, eps, 100, Engine::Exact).unwrap();
        assert_eq!(r.n, n, "d={d} eps={eps}");
        assert!(r.value <= eps);
        for probe in &r.probes {
            assert_eq!(probe.reached, probe.value <= eps);
            if probe.n < r.n {
                assert!(!probe.reached);
            }
        }
    }
}

#[test]
fn baseline_rows_match_calibration() {
    let spec = ExperimentSpec {
        cells: vec![
            Cell {
                d: 4,
                n: 100,
                k: 100,
                method: Method::Sobol,
                time_budget: None,
            },
            Cell {
                d: 4,
                n: 50,
                k: 50,
                method: Method::Sobol,
                time_budget: None,
            },
        ],
        ..Default::default()
    };
    let rows = comparison_run(&spec).unwrap();
    assert_eq!((rows[0].n, rows[1].n), (50, 100));
    assert!((rows[0].value - 0.13422).abs() < 1e-4);
    assert!((rows[1].value - 0.092688).abs() < 1e-4);
}

#[test]
fn desk_grid_is_close_to_the_reported_values() {
    let mut spec = ExperimentSpec::grid(&[4], &[50, 100], &[10, 20], &[Method::DemBf], None);
    spec.restarts = 5;
    let rows = comparison_run(&spec).unwrap();
    let reported = [(50, 40, 0.12236), (50, 30, 0.14020), (100, 90, 0.070093), (100, 80, 0.071985)];
    for (n, k, v) in reported {
        let row = rows.iter().find(|r| r.n == n && r.k == k && r.method == Method::DemBf).unwrap();
        assert!((row.value - v).abs() <= 0.1 * v, "n={n} k={k}: {}", row.value);
        assert!(row.exact && !row.interrupted);
    }
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().count(), rows.len() + 1);
    let parsed: Vec<Row> = csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(parsed.len(), rows.len());
    assert_eq!(parsed[0].method, rows[0].method);
}

#[test]
fn rows_are_deterministic_apart_from_timing() {
    let mut spec = ExperimentSpec::grid(&[2], &[30], &[5], &[Method::DemNbf, Method::Random], None);
    spec.restarts = 2;
    spec.random_trials = 50;
    let strip = |rows: Vec<Row>| -> Vec<Row> {
        rows.into_iter()
            .map(|r| Row { seconds: 0.0, ..r })
            .collect()
    };
    assert_eq!(strip(comparison_run(&spec).unwrap()), strip(comparison_run(&spec).unwrap()));
}
