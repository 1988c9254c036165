use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use serde::Serialize;
use subsel::discrepancy::{bruteforce_discrepancy, exact_discrepancy, ta_discrepancy, TaParams};
use subsel::energy::{energy_then_subset, energy_with, gradient_descent, EnergyParams};
use subsel::experiments::{
    adversarial_instance, comparison_run, default_engine, inverse_discrepancy_search, verify_local_minimum,
    write_csv, ExperimentSpec,
};
use subsel::pointset::{format_points, lift_sequence_to_set, random_points, sobol_points, SOBOL_MAX_DIMENSION};
use subsel::subset::{select_subset, Engine, HeuristicConfig, SelectionStats, SubsetSelection};
use subsel::{read_points, write_points, PointSetF64};

use crate::report::*;
use crate::{
    usage, AdversarialArgs, CompareArgs, DescentArgs, DiscArgs, DiscEngine, EnergyArgs, Format, GenArgs,
    HeuristicArgs, InverseArgs, Outcome, PipelineArgs, SearchEngine, SubsetArgs,
};

/// `println!` that reports a closed stdout as an error instead of panicking.
macro_rules! out {
    ($($t:tt)*) => {
        writeln!(io::stdout().lock(), $($t)*)?
    };
}

fn seed_or_default(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        eprintln!("seed: 0 (default)");
        0
    })
}

fn load(path: &Path) -> anyhow::Result<PointSetF64> {
    read_points(path).with_context(|| format!("reading {}", path.display()))
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            writeln!(io::stdout().lock(), "{text}")?;
            Ok(())
        }
    }
}

fn save_points(points: &PointSetF64, path: &Path) -> anyhow::Result<()> {
    write_points(points, path).with_context(|| format!("writing {}", path.display()))
}

pub fn gen(a: GenArgs) -> Outcome {
    if a.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let base_d = if a.lift { a.d.checked_sub(1) } else { Some(a.d) };
    let base_d = match base_d {
        Some(d) if d >= 1 => d,
        _ => return Err(usage("--d must be at least 1 (2 with --lift)")),
    };
    let points = if a.source.sobol {
        if base_d > SOBOL_MAX_DIMENSION {
            return Err(usage(format!("Sobol' points need dimension <= {SOBOL_MAX_DIMENSION}")));
        }
        sobol_points::<f64>(a.n, base_d)?
    } else {
        random_points::<f64>(a.n, base_d, seed_or_default(a.seed))?
    };
    let points = if a.lift { lift_sequence_to_set(&points) } else { points };
    match a.out {
        Some(p) => save_points(&points, &p)?,
        None => {
            let mut out = BufWriter::new(io::stdout().lock());
            format_points(&points, &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn disc(a: DiscArgs) -> Outcome {
    let points = load(&a.input)?;
    let report = match a.engine {
        DiscEngine::Exact => {
            let r = exact_discrepancy(&points);
            DiscReport {
                engine: "exact",
                n: points.len(),
                d: points.dim(),
                value: r.value,
                exact: true,
                witness: Some(r.witness),
                evaluations: Some(r.evaluations),
            }
        }
        DiscEngine::Ta => {
            let params = TaParams {
                budget: a.budget,
                seed: seed_or_default(a.seed),
                ..Default::default()
            };
            let r = ta_discrepancy(&points, &params);
            DiscReport {
                engine: "ta",
                n: points.len(),
                d: points.dim(),
                value: r.value,
                exact: false,
                witness: Some(r.witness),
                evaluations: Some(r.evaluations),
            }
        }
        DiscEngine::Brute => DiscReport {
            engine: "brute",
            n: points.len(),
            d: points.dim(),
            value: bruteforce_discrepancy(&points)?,
            exact: true,
            witness: None,
            evaluations: None,
        },
    };
    match a.format {
        Format::Json => write_json(&report, None)?,
        Format::Text => {
            out!("value {}", report.value);
            if let Some(w) = &report.witness {
                let corner: Vec<String> = w.corner.iter().map(|c| c.to_string()).collect();
                out!("corner {}", corner.join(" "));
                out!("closure {}", if w.closure == subsel::Closure::Open { "open" } else { "closed" });
            }
            out!("exact {}", report.exact);
            if let Some(e) = report.evaluations {
                out!("evaluations {e}");
            }
        }
    }
    Ok(())
}

fn heuristic_config(h: &HeuristicArgs) -> Result<HeuristicConfig, crate::Failure> {
    if h.restarts == 0 {
        return Err(usage("--restarts must be at least 1"));
    }
    let time_cutoff = match h.cutoff {
        Some(c) if !(c >= 0.0 && c.is_finite()) => return Err(usage("--cutoff must be a non-negative number")),
        c => c.map(Duration::from_secs_f64),
    };
    let seed = seed_or_default(h.seed);
    let engine = match h.engine {
        SearchEngine::Exact => Engine::Exact,
        SearchEngine::Ta => Engine::Ta(TaParams {
            budget: h.budget,
            rounds: 10,
            seed,
        }),
    };
    Ok(HeuristicConfig {
        engine,
        brute_force: !h.nbf,
        restarts: h.restarts,
        time_cutoff,
        seed,
        plateau_moves: h.plateau,
        full_neighborhood_check: h.full_check,
    })
}

fn check_k(k: usize, n: usize) -> Outcome {
    if k == 0 || k > n {
        return Err(usage(format!("--k must be between 1 and {n}")));
    }
    Ok(())
}

fn default_out(input: &Path, k: usize) -> PathBuf {
    let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    input.with_file_name(format!("{stem}.k{k}.txt"))
}

fn subset_report(sel: &SubsetSelection<'_, f64>, stats: &SelectionStats, cfg: &HeuristicConfig, out: &Path) -> SubsetReport {
    SubsetReport {
        n: sel.ground.len(),
        d: sel.ground.dim(),
        k: sel.k(),
        engine: if cfg.engine.is_exact() { "exact" } else { "ta" },
        brute_force: cfg.brute_force,
        restarts: cfg.restarts,
        seed: cfg.seed,
        value: sel.value(),
        exact: sel.report.exact,
        chosen: sel.chosen.clone(),
        witness: sel.report.witness.clone(),
        evaluations: stats.evaluations,
        interrupted: stats.interrupted,
        best_trial: stats.best_trial,
        trials: stats.trials.iter().map(Trial::from).collect(),
        output: out.display().to_string(),
    }
}

pub fn subset(a: SubsetArgs) -> Outcome {
    let points = load(&a.input)?;
    check_k(a.k, points.len())?;
    let cfg = heuristic_config(&a.heuristic)?;
    let (sel, stats) = select_subset(&points, a.k, &cfg)?;
    let out = a.out.unwrap_or_else(|| default_out(&a.input, a.k));
    save_points(&sel.points(), &out)?;
    write_json(&subset_report(&sel, &stats, &cfg, &out), a.report.as_deref())?;
    Ok(())
}

fn energy_params(d: &DescentArgs) -> Result<EnergyParams, crate::Failure> {
    if d.step.is_some_and(|s| !(s > 0.0)) {
        return Err(usage("--step must be positive"));
    }
    Ok(EnergyParams {
        max_iters: d.max_iters,
        step: d.step,
        convergence_tol: d.tol,
        ..Default::default()
    })
}

pub fn energy(a: EnergyArgs) -> Outcome {
    let points = load(&a.input)?;
    if points.len() < 2 {
        return Err(usage("energy needs at least two points"));
    }
    let params = energy_params(&a.descent)?;
    let e = energy_with(&points, params.clamp_eps)?;
    let optimized = if a.optimize {
        let (descended, trace) = gradient_descent(&points, &params)?;
        if let Some(p) = &a.out {
            save_points(&descended, p)?;
        }
        if let Some(p) = &a.trace {
            write_json(&trace, Some(p))?;
        }
        Some(Descent {
            energy: *trace.energies.last().expect("trace starts with the initial energy"),
            iterations: trace.iterations,
            converged: trace.converged,
            clamped: trace.clamped,
        })
    } else {
        None
    };
    let report = EnergyReport {
        n: points.len(),
        d: points.dim(),
        energy: e.value,
        clamped: e.clamped,
        optimized,
    };
    match a.format {
        Format::Json => write_json(&report, None)?,
        Format::Text => {
            out!("energy {}", report.energy);
            if let Some(o) = &report.optimized {
                out!("optimized {}", o.energy);
                out!("iterations {}", o.iterations);
                out!("converged {}", o.converged);
            }
        }
    }
    Ok(())
}

pub fn pipeline(a: PipelineArgs) -> Outcome {
    let points = load(&a.input)?;
    if points.len() < 2 {
        return Err(usage("the pipeline needs at least two points"));
    }
    check_k(a.k, points.len())?;
    let cfg = heuristic_config(&a.heuristic)?;
    let params = energy_params(&a.descent)?;
    let before = energy_with(&points, params.clamp_eps)?.value;
    let r = energy_then_subset(&points, a.k, &params, &cfg)?;
    let sel = SubsetSelection {
        ground: &r.descended,
        chosen: r.chosen.clone(),
        report: r.report.clone(),
    };
    let out = a.out.unwrap_or_else(|| default_out(&a.input, a.k));
    save_points(&sel.points(), &out)?;
    let report = PipelineReport {
        n: points.len(),
        d: points.dim(),
        k: a.k,
        energy_before: before,
        descent: Descent {
            energy: *r.trace.energies.last().expect("trace starts with the initial energy"),
            iterations: r.trace.iterations,
            converged: r.trace.converged,
            clamped: r.trace.clamped,
        },
        subset: subset_report(&sel, &r.stats, &cfg, &out),
    };
    write_json(&report, a.report.as_deref())?;
    Ok(())
}

pub fn inverse(a: InverseArgs) -> Outcome {
    if !(a.eps > 0.0 && a.eps <= 1.0) {
        return Err(usage("--eps must lie in (0, 1]"));
    }
    if a.d == 0 || a.d > SOBOL_MAX_DIMENSION {
        return Err(usage(format!("--d must be between 1 and {SOBOL_MAX_DIMENSION}")));
    }
    if a.nmax == 0 {
        return Err(usage("--nmax must be at least 1"));
    }
    let engine = match a.engine {
        None => default_engine(a.d),
        Some(SearchEngine::Exact) => Engine::Exact,
        Some(SearchEngine::Ta) => Engine::Ta(TaParams::default()),
    };
    let r = inverse_discrepancy_search(a.d, a.eps, a.nmax, engine)?;
    let log_path = a.log.unwrap_or_else(|| PathBuf::from(format!("inverse_d{}_eps{}.log", a.d, a.eps)));
    let mut log = BufWriter::new(File::create(&log_path).with_context(|| format!("writing {}", log_path.display()))?);
    writeln!(log, "# n value reached")?;
    for p in &r.probes {
        writeln!(log, "{} {} {}", p.n, p.value, p.reached)?;
    }
    log.flush()?;
    match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                result: &'a subsel::experiments::InverseResult,
                log: String,
            }
            write_json(
                &Out {
                    result: &r,
                    log: log_path.display().to_string(),
                },
                None,
            )?;
        }
        Format::Text => {
            out!("n {}", r.n);
            out!("value {}", r.value);
            out!("engine {}", if r.engine.is_exact() { "exact" } else { "ta" });
            out!("probe log: {}", log_path.display());
        }
    }
    Ok(())
}

pub fn adversarial(a: AdversarialArgs) -> Outcome {
    let inst = adversarial_instance(a.k, a.alpha, a.d)?;
    let disc = |idx: &[usize]| -> anyhow::Result<f64> { Ok(exact_discrepancy(&inst.points.select(idx)?).value) };
    let da = disc(&inst.set_a)?;
    let db = disc(&inst.set_b)?;
    let local = verify_local_minimum(&inst.points, &inst.set_a)?;
    if let Some(p) = &a.out {
        save_points(&inst.points, p)?;
    }
    let report = AdversarialReport {
        k: inst.k,
        n: inst.n,
        d: a.d,
        alpha: inst.alpha,
        delta: inst.delta,
        gamma: inst.gamma,
        discrepancy_a: da,
        discrepancy_b: db,
        set_a_local_min: local,
        b_below_a: db < da,
    };
    match a.format {
        Format::Json => write_json(&report, None)?,
        Format::Text => {
            out!("d*(A) {da}");
            out!("d*(B) {db}");
            out!("set_A local_min: {local}");
            out!("d*(B) < d*(A): {}", db < da);
        }
    }
    Ok(())
}

pub fn compare(a: CompareArgs) -> Outcome {
    let text = fs::read_to_string(&a.spec).with_context(|| format!("reading {}", a.spec.display()))?;
    let spec: ExperimentSpec = serde_json::from_str(&text).map_err(|e| usage(format!("invalid spec: {e}")))?;
    if spec.restarts == 0 {
        return Err(usage("restarts must be at least 1"));
    }
    if let Some(c) = spec.cells.iter().find(|c| c.k == 0 || c.k > c.n || c.d == 0 || c.d > SOBOL_MAX_DIMENSION) {
        return Err(usage(format!("invalid cell d={} n={} k={}", c.d, c.n, c.k)));
    }
    let rows = comparison_run(&spec)?;
    match a.out {
        Some(p) => {
            let f = File::create(&p).with_context(|| format!("writing {}", p.display()))?;
            write_csv(&rows, BufWriter::new(f))?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}
