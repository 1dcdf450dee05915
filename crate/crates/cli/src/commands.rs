//! Subcommand implementations. Every sampling command routes its draws
//! through labelled substreams so results are reproducible for a fixed
//! seed and shard count, independent of thread scheduling.

use crate::format::{render, OutputFormat, Provenance};
use cergen::analytic::{self, DegreeLaw};
use cergen::trajectory::{self, IntensityVector};
use cergen::verify::{self, CanonicalKey, DistributionTable};
use cergen::{
    generate_connected_gnm_detailed, generate_connected_gnp, generate_connected_gnp_detailed,
    Graph, RngStream,
};
use serde_json::json;
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

pub enum CmdError {
    /// Bad arguments or an I/O failure: exit code 2.
    Usage(String),
    /// A check ran to completion and failed: exit code 1.
    Verification,
}

pub type CmdResult = Result<(), CmdError>;

fn usage(err: impl std::fmt::Display) -> CmdError {
    CmdError::Usage(err.to_string())
}

/// Uses the given seed, or draws one from OS entropy and announces it on
/// stderr so the run can be reproduced.
pub fn resolve_seed(seed: Option<u64>) -> u64 {
    match seed {
        Some(seed) => seed,
        None => {
            let seed: u64 = rand::random();
            eprintln!("seed: {seed}");
            seed
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(usage)
        }
    }
}

/// Splits `total` work items over `jobs` worker threads, each with its own
/// substream, and returns the per-shard results in shard order.
fn run_sharded<T, F>(seed: u64, label: &str, total: u64, jobs: u32, worker: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RngStream, u64) -> T + Sync,
{
    let jobs = jobs.max(1) as u64;
    let root = RngStream::new(seed);
    let shares: Vec<(RngStream, u64)> = (0..jobs)
        .map(|i| {
            let stream = root.substream(&format!("{label}/{i}"));
            let share = total / jobs + u64::from(i < total % jobs);
            (stream, share)
        })
        .collect();
    let worker = &worker;
    std::thread::scope(|scope| {
        let handles: Vec<_> = shares
            .into_iter()
            .map(|(mut stream, share)| scope.spawn(move || worker(&mut stream, share)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

// ---------------------------------------------------------------------------
// gen

pub fn resolve_gnp_density(n: u32, p: Option<f64>, c: Option<f64>) -> Result<f64, CmdError> {
    match (p, c) {
        (Some(p), None) => Ok(p),
        (None, Some(c)) => {
            if n == 0 {
                return Err(usage("n must be positive"));
            }
            if !(c > 0.0 && c.is_finite()) {
                return Err(usage(format!(
                    "c must be a positive finite number, got {c}"
                )));
            }
            Ok(c / n as f64)
        }
        // clap enforces exactly one of --p / --c
        _ => Err(usage("exactly one of --p and --c is required")),
    }
}

pub fn gen_gnp(
    n: u32,
    p: Option<f64>,
    c: Option<f64>,
    seed: Option<u64>,
    fmt: OutputFormat,
    out: Option<&Path>,
) -> CmdResult {
    let density = resolve_gnp_density(n, p, c)?;
    let seed = resolve_seed(seed);
    let mut stream = RngStream::new(seed);
    let graph = generate_connected_gnp(&mut stream, n, density).map_err(usage)?;
    let params = match c {
        Some(c) => json!({ "c": c, "p": density }),
        None => json!({ "p": density }),
    };
    let provenance = Provenance {
        model: "gnp",
        params,
        seed,
    };
    write_output(out, &render(&graph, fmt, &provenance))
}

pub fn gen_gnm(
    n: u32,
    m: u64,
    seed: Option<u64>,
    fmt: OutputFormat,
    out: Option<&Path>,
) -> CmdResult {
    let seed = resolve_seed(seed);
    let mut stream = RngStream::new(seed);
    let (graph, _) = generate_connected_gnm_detailed(&mut stream, n, m).map_err(usage)?;
    let provenance = Provenance {
        model: "gnm",
        params: json!({ "m": m }),
        seed,
    };
    write_output(out, &render(&graph, fmt, &provenance))
}

// ---------------------------------------------------------------------------
// verify

struct Row {
    metric: String,
    observed: f64,
    expected: f64,
    tolerance: f64,
    pass: bool,
}

impl Row {
    fn within(metric: impl Into<String>, observed: f64, expected: f64, tolerance: f64) -> Self {
        Row {
            metric: metric.into(),
            observed,
            expected,
            tolerance,
            pass: (observed - expected).abs() <= tolerance,
        }
    }

    fn at_least(metric: impl Into<String>, observed: f64, threshold: f64) -> Self {
        Row {
            metric: metric.into(),
            observed,
            expected: threshold,
            tolerance: 0.0,
            pass: observed >= threshold,
        }
    }
}

fn report(rows: Vec<Row>) -> CmdResult {
    let mut text = String::from("metric,observed,expected,tolerance,pass\n");
    let mut all_pass = true;
    for row in &rows {
        all_pass &= row.pass;
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            row.metric, row.observed, row.expected, row.tolerance, row.pass
        ));
    }
    write_output(None, &text)?;
    if all_pass {
        Ok(())
    } else {
        Err(CmdError::Verification)
    }
}

fn merge_key_counts(shards: Vec<HashMap<CanonicalKey, u64>>) -> HashMap<CanonicalKey, u64> {
    let mut merged = HashMap::new();
    for shard in shards {
        for (key, count) in shard {
            *merged.entry(key).or_insert(0) += count;
        }
    }
    merged
}

pub fn verify_gnp_exact(n: u32, p: f64, samples: u64, seed: u64, jobs: u32) -> CmdResult {
    let exact = DistributionTable::exact_conditional_gnp(n, p).map_err(usage)?;
    let shards = run_sharded(seed, "verify-gnp-exact", samples, jobs, |stream, share| {
        let mut counts: HashMap<CanonicalKey, u64> = HashMap::new();
        for _ in 0..share {
            let graph = generate_connected_gnp(stream, n, p).expect("parameters already validated");
            *counts.entry(CanonicalKey::from_graph(&graph)).or_insert(0) += 1;
        }
        counts
    });
    let counts = merge_key_counts(shards);
    let empirical = DistributionTable::from_counts(&counts).map_err(usage)?;
    let tvd = verify::total_variation(&exact, &empirical);
    let tolerance = 3.0 * exact.sampling_noise_floor(samples) + 0.004;
    let off_support = counts
        .keys()
        .filter(|key| exact.probability(key) == 0.0)
        .count();
    report(vec![
        Row::within("total_variation", tvd, 0.0, tolerance),
        Row::within("off_support_cells", off_support as f64, 0.0, 0.0),
    ])
}

pub fn verify_gnm_uniform(n: u32, m: u64, samples: u64, seed: u64, jobs: u32) -> CmdResult {
    let graphs = verify::enumerate_connected_graphs(n, Some(m)).map_err(usage)?;
    if graphs.is_empty() {
        return Err(usage(format!("no connected graphs with n = {n}, m = {m}")));
    }
    let index: HashMap<CanonicalKey, usize> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| (CanonicalKey::from_graph(g), i))
        .collect();
    let cells = graphs.len();
    let shards = run_sharded(
        seed,
        "verify-gnm-uniform",
        samples,
        jobs,
        |stream, share| {
            let mut counts = vec![0u64; cells];
            for _ in 0..share {
                let (graph, _) = generate_connected_gnm_detailed(stream, n, m)
                    .expect("parameters already validated");
                let key = CanonicalKey::from_graph(&graph);
                let cell = index
                    .get(&key)
                    .expect("sampler produced a graph outside the enumerated support");
                counts[*cell] += 1;
            }
            counts
        },
    );
    let mut counts = vec![0u64; cells];
    for shard in shards {
        for (total, part) in counts.iter_mut().zip(shard) {
            *total += part;
        }
    }
    let chi = verify::chi_square_uniformity(&counts).map_err(usage)?;
    let seen = counts.iter().filter(|&&c| c > 0).count();
    report(vec![
        Row::at_least("chi_square_p_value", chi.p_value, 1e-3),
        Row::within("support_coverage", seen as f64, cells as f64, 0.0),
    ])
}

pub fn verify_lemma1(n: u32, p: f64) -> CmdResult {
    let intensities = IntensityVector::compute(n, p).map_err(usage)?;
    let positivity = trajectory::positivity_probability_exact(&intensities).map_err(usage)?;
    let q = 1.0 - p;
    let normalization = (1.0 - q.powi(n as i32)).powi(n as i32 - 1);
    let walk_side = normalization * positivity;
    let recursion_side = analytic::connectivity_probability_exact(n as u64, p).map_err(usage)?;
    report(vec![Row::within(
        "connectivity_probability",
        walk_side,
        recursion_side,
        1e-10 * recursion_side,
    )])
}

struct DegreeTally {
    histogram: Vec<u64>,
    vertices: u64,
    edge_sum: u64,
    graphs: u64,
}

/// Samples enough graphs to observe at least `samples` vertex degrees and
/// tallies them, clamping the histogram at `kmax + 1`.
fn sample_degree_tally(
    n: u32,
    p: f64,
    samples: u64,
    kmax: usize,
    seed: u64,
    label: &str,
    jobs: u32,
) -> DegreeTally {
    let graphs_needed = samples.div_ceil(n as u64).max(1);
    let shards = run_sharded(seed, label, graphs_needed, jobs, |stream, share| {
        let mut histogram = vec![0u64; kmax + 2];
        let mut edge_sum = 0u64;
        let mut degree = vec![0u32; n as usize + 1];
        for _ in 0..share {
            let graph = generate_connected_gnp(stream, n, p).expect("parameters already validated");
            degree.fill(0);
            for &(u, v) in graph.edges() {
                degree[u as usize] += 1;
                degree[v as usize] += 1;
            }
            for &d in &degree[1..] {
                histogram[(d as usize).min(kmax + 1)] += 1;
            }
            edge_sum += graph.edge_count();
        }
        (histogram, edge_sum, share)
    });
    let mut tally = DegreeTally {
        histogram: vec![0u64; kmax + 2],
        vertices: 0,
        edge_sum: 0,
        graphs: 0,
    };
    for (histogram, edge_sum, graphs) in shards {
        for (total, part) in tally.histogram.iter_mut().zip(histogram) {
            *total += part;
        }
        tally.edge_sum += edge_sum;
        tally.graphs += graphs;
    }
    tally.vertices = tally.graphs * n as u64;
    tally
}

fn degree_law_sd(law: &DegreeLaw) -> f64 {
    let mean = law.mean();
    let mut second = 0.0;
    for k in 0..=2000u64 {
        second += (k * k) as f64 * law.pmf(k);
    }
    (second - mean * mean).max(0.0).sqrt()
}

pub fn verify_degree(n: u32, c: f64, samples: u64, seed: u64, jobs: u32) -> CmdResult {
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let law = DegreeLaw::new(c).map_err(usage)?;
    let p = c / n as f64;
    IntensityVector::compute(n, p).map_err(usage)?;
    let kmax = 10usize;
    let tally = sample_degree_tally(n, p, samples, kmax, seed, "verify-degree", jobs);
    let total = tally.vertices as f64;
    let mut rows = Vec::new();
    for k in 0..=kmax {
        let observed = tally.histogram[k] as f64 / total;
        let expected = law.pmf(k as u64);
        // three standard errors of sampling noise plus slack for the
        // asymptotic reference at finite n
        let se = (expected * (1.0 - expected) / total).sqrt();
        rows.push(Row::within(
            format!("degree_pmf_{k}"),
            observed,
            expected,
            3.0 * se + 0.004,
        ));
    }
    let mean_observed = 2.0 * tally.edge_sum as f64 / total;
    let mean_expected = law.mean();
    let se_mean = degree_law_sd(&law) / total.sqrt();
    rows.push(Row::within(
        "mean_degree",
        mean_observed,
        mean_expected,
        3.0 * se_mean + 0.005 * mean_expected,
    ));
    report(rows)
}

pub fn verify_acceptance(n: u32, c: f64, trials: u64, seed: u64, jobs: u32) -> CmdResult {
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let p = c / n as f64;
    let intensities = IntensityVector::compute(n, p).map_err(usage)?;
    let expected = trajectory::acceptance_probability_asymptotic(c).map_err(usage)?;
    let shards = run_sharded(seed, "verify-acceptance", trials, jobs, |stream, share| {
        let mut restarts = 0u64;
        for _ in 0..share {
            let (_, rejected) = trajectory::sample_trajectory_gnp(stream, &intensities);
            restarts += rejected;
        }
        restarts
    });
    let restarts: u64 = shards.into_iter().sum();
    let observed = trials as f64 / (trials + restarts) as f64;
    report(vec![Row::within(
        "acceptance_rate",
        observed,
        expected,
        0.02,
    )])
}

// ---------------------------------------------------------------------------
// stats

pub fn stats_degree(n: u32, c: f64, samples: u64, kmax: usize, seed: u64, jobs: u32) -> CmdResult {
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let law = DegreeLaw::new(c).map_err(usage)?;
    let p = c / n as f64;
    IntensityVector::compute(n, p).map_err(usage)?;
    let tally = sample_degree_tally(n, p, samples, kmax, seed, "stats-degree", jobs);
    let total = tally.vertices as f64;
    let mut text = String::from("k,empirical,theoretical,stderr\n");
    for k in 0..=kmax {
        let empirical = tally.histogram[k] as f64 / total;
        let theoretical = law.pmf(k as u64);
        let se = (theoretical * (1.0 - theoretical) / total).sqrt();
        text.push_str(&format!("{k},{empirical},{theoretical},{se}\n"));
    }
    write_output(None, &text)
}

pub fn stats_walk(n: u32, c: f64, traces: u32, seed: u64) -> CmdResult {
    if n == 0 {
        return Err(usage("n must be positive"));
    }
    let p = c / n as f64;
    let intensities = IntensityVector::compute(n, p).map_err(usage)?;
    // mean of the unconditioned multinomial walk: each attempt places
    // n - 1 discoveries with cell weights lambda_i / n
    let scale = (n as f64 - 1.0) / n as f64;
    let mut expected = Vec::with_capacity(n as usize + 1);
    expected.push(0.0);
    let mut acc = 0.0;
    for &lambda in intensities.lambdas() {
        acc += scale * lambda - 1.0;
        expected.push(acc);
    }
    let mut stream = RngStream::new(seed).substream("stats-walk");
    let walks: Vec<Vec<i64>> = (0..traces)
        .map(|_| {
            let (trajectory, _) = trajectory::sample_trajectory_gnp(&mut stream, &intensities);
            trajectory.walk().to_vec()
        })
        .collect();
    let mut text = String::from("k,expected");
    for t in 1..=traces {
        text.push_str(&format!(",trace_{t}"));
    }
    text.push('\n');
    for k in 0..=n as usize {
        text.push_str(&format!("{k},{}", expected[k]));
        for walk in &walks {
            text.push_str(&format!(",{}", walk[k]));
        }
        text.push('\n');
    }
    write_output(None, &text)
}

pub fn stats_edges(n: u32, m: u64, samples: u64, seed: u64, jobs: u32) -> CmdResult {
    if n < 2 {
        return Err(usage("n must be at least 2"));
    }
    if m < n as u64 || m > Graph::max_edges(n) {
        return Err(usage(format!(
            "m must lie in ({}, {}] for an edge-count comparison",
            n - 1,
            Graph::max_edges(n)
        )));
    }
    let target_degree = 2.0 * m as f64 / (n as f64 - 1.0);
    let c_solved = analytic::solve_c_for_mean_degree(target_degree).map_err(usage)?;
    let p_solved = c_solved / n as f64;
    // what one would plug in without inverting the degree map
    let p_naive = target_degree / n as f64;
    let histogram = |label: &'static str, p: f64| -> HashMap<u64, u64> {
        let shards = run_sharded(seed, label, samples, jobs, |stream, share| {
            let mut counts: HashMap<u64, u64> = HashMap::new();
            for _ in 0..share {
                let graph =
                    generate_connected_gnp(stream, n, p).expect("parameters already validated");
                *counts.entry(graph.edge_count()).or_insert(0) += 1;
            }
            counts
        });
        let mut merged = HashMap::new();
        for shard in shards {
            for (edges, count) in shard {
                *merged.entry(edges).or_insert(0) += count;
            }
        }
        merged
    };
    let solved = histogram("stats-edges-solved", p_solved);
    let naive = histogram("stats-edges-naive", p_naive);
    let lo = solved
        .keys()
        .chain(naive.keys())
        .min()
        .copied()
        .unwrap_or(0);
    let hi = solved
        .keys()
        .chain(naive.keys())
        .max()
        .copied()
        .unwrap_or(0);
    let mut text = String::from("edges,count_step0,count_naive\n");
    for edges in lo..=hi {
        let a = solved.get(&edges).copied().unwrap_or(0);
        let b = naive.get(&edges).copied().unwrap_or(0);
        text.push_str(&format!("{edges},{a},{b}\n"));
    }
    write_output(None, &text)
}

// ---------------------------------------------------------------------------
// bench

pub fn bench(sizes: &[u64], c: f64, reps: u64, seed: u64, jobs: u32) -> CmdResult {
    if reps == 0 {
        return Err(usage("reps must be positive"));
    }
    let mut text = String::from("n,mean_ms,restarts_mean,edges_mean\n");
    for &size in sizes {
        let n = u32::try_from(size).map_err(|_| usage(format!("size {size} too large")))?;
        if n == 0 {
            return Err(usage("sizes must be positive"));
        }
        let p = c / n as f64;
        IntensityVector::compute(n, p).map_err(usage)?;
        let label = format!("bench-{n}");
        let shards = run_sharded(seed, &label, reps, jobs, |stream, share| {
            let mut millis = 0.0f64;
            let mut restarts = 0u64;
            let mut edges = 0u64;
            for _ in 0..share {
                let start = Instant::now();
                let (graph, rejected) = generate_connected_gnp_detailed(stream, n, p)
                    .expect("parameters already validated");
                millis += start.elapsed().as_secs_f64() * 1e3;
                restarts += rejected;
                edges += graph.edge_count();
            }
            (millis, restarts, edges)
        });
        let mut millis = 0.0;
        let mut restarts = 0u64;
        let mut edges = 0u64;
        for (ms, rs, es) in shards {
            millis += ms;
            restarts += rs;
            edges += es;
        }
        let reps_f = reps as f64;
        text.push_str(&format!(
            "{n},{},{},{}\n",
            millis / reps_f,
            restarts as f64 / reps_f,
            edges as f64 / reps_f
        ));
    }
    write_output(None, &text)
}
