//! Statistical acceptance of the stream primitives. Seeds are fixed, so
//! each check is deterministic; tolerances sit at 4+ standard deviations
//! of the sampled statistic.

use cergen::verify::{chi_square_gof, chi_square_uniformity};
use cergen::RngStream;

#[test]
fn uniform01_moments() {
    let mut stream = RngStream::new(11);
    let n = 1_000_000u64;
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n {
        let u = stream.uniform01();
        assert!((0.0..1.0).contains(&u));
        sum += u;
        sumsq += u * u;
    }
    let mean = sum / n as f64;
    let var = sumsq / n as f64 - mean * mean;
    assert!((mean - 0.5).abs() < 0.002, "mean={mean}");
    assert!((var - 1.0 / 12.0).abs() < 0.002, "var={var}");
}

#[test]
fn index_is_uniform() {
    let mut stream = RngStream::new(12);
    let mut counts = [0u64; 6];
    for _ in 0..600_000 {
        counts[stream.index(6) as usize] += 1;
    }
    let check = chi_square_uniformity(&counts).unwrap();
    assert!(check.p_value >= 1e-3, "p={}", check.p_value);
}

/// Exact binomial pmf by the multiplicative recurrence.
fn binomial_pmf(trials: u64, p: f64) -> Vec<f64> {
    let n = trials as f64;
    let q = 1.0 - p;
    let mut pmf = vec![0.0; trials as usize + 1];
    pmf[0] = q.powf(n);
    for k in 0..trials as usize {
        pmf[k + 1] = pmf[k] * (n - k as f64) / (k as f64 + 1.0) * (p / q);
    }
    pmf
}

fn binomial_gof(trials: u64, p: f64, samples: u64, seed: u64) {
    let mut stream = RngStream::new(seed);
    let mut counts = vec![0u64; trials as usize + 1];
    for _ in 0..samples {
        counts[stream.binomial(trials, p).unwrap() as usize] += 1;
    }
    let check = chi_square_gof(&counts, &binomial_pmf(trials, p)).unwrap();
    assert!(
        check.p_value >= 1e-3,
        "trials={trials} p={p}: chi2={} df={} p={}",
        check.statistic,
        check.degrees_of_freedom,
        check.p_value
    );
}

#[test]
fn binomial_small_mean_path() {
    // trials * p at the inversion cutoff
    binomial_gof(100, 0.3, 200_000, 13);
}

#[test]
fn binomial_large_mean_path() {
    // well above the cutoff: library path
    binomial_gof(500, 0.4, 200_000, 14);
}

#[test]
fn binomial_flipped_tail_path() {
    binomial_gof(100, 0.9, 200_000, 15);
}

#[test]
fn binomial_degenerate_parameters() {
    let mut stream = RngStream::new(16);
    assert_eq!(stream.binomial(0, 0.4).unwrap(), 0);
    assert_eq!(stream.binomial(10, 0.0).unwrap(), 0);
    assert_eq!(stream.binomial(10, 1.0).unwrap(), 10);
    assert!(stream.binomial(10, 1.5).is_err());
}

#[test]
fn multinomial_cells_match_marginals() {
    let weights = [0.5, 1.0 / 3.0, 1.0 / 6.0];
    let trials = 60u64;
    let samples = 100_000u64;
    let mut stream = RngStream::new(17);
    let mut cell0 = vec![0u64; trials as usize + 1];
    let mut means = [0.0f64; 3];
    for _ in 0..samples {
        let counts = stream.multinomial(trials, &weights).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), trials);
        for (m, &c) in means.iter_mut().zip(&counts) {
            *m += c as f64;
        }
        cell0[counts[0] as usize] += 1;
    }
    for (i, m) in means.iter().enumerate() {
        let expected = trials as f64 * weights[i];
        let freq = m / samples as f64;
        // variance of one cell is trials * w (1 - w)
        let sigma = (trials as f64 * weights[i] * (1.0 - weights[i]) / samples as f64).sqrt();
        assert!(
            (freq - expected).abs() < 4.0 * sigma,
            "cell {i}: {freq} vs {expected}"
        );
    }
    // first cell is exactly Binomial(60, 1/2)
    let check = chi_square_gof(&cell0, &binomial_pmf(trials, 0.5)).unwrap();
    assert!(check.p_value >= 1e-3, "p={}", check.p_value);
}

#[test]
fn permutations_are_uniform() {
    let mut stream = RngStream::new(18);
    let mut counts = std::collections::HashMap::new();
    for _ in 0..120_000 {
        *counts.entry(stream.permutation(3)).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 6);
    let cells: Vec<u64> = counts.values().copied().collect();
    let check = chi_square_uniformity(&cells).unwrap();
    assert!(check.p_value >= 1e-3, "p={}", check.p_value);
}

#[test]
fn subsets_are_uniform() {
    let mut stream = RngStream::new(19);
    let mut counts = std::collections::HashMap::new();
    for _ in 0..100_000 {
        let subset = stream.sample_without_replacement(2, 5).unwrap();
        assert_eq!(subset.len(), 2);
        assert!(subset[0] < subset[1]);
        *counts.entry(subset).or_insert(0u64) += 1;
    }
    assert_eq!(counts.len(), 10);
    let cells: Vec<u64> = counts.values().copied().collect();
    let check = chi_square_uniformity(&cells).unwrap();
    assert!(check.p_value >= 1e-3, "p={}", check.p_value);
}

#[test]
fn geometric_skip_distribution() {
    let p = 0.25f64;
    let samples = 400_000u64;
    let mut stream = RngStream::new(20);
    let mut counts = vec![0u64; 80];
    let mut sum = 0.0;
    for _ in 0..samples {
        let g = stream.geometric_skip(p).unwrap();
        sum += g as f64;
        let idx = (g as usize).min(counts.len() - 1);
        counts[idx] += 1;
    }
    let mean = sum / samples as f64;
    let expected = (1.0 - p) / p;
    let sigma = ((1.0 - p) / (p * p) / samples as f64).sqrt();
    assert!((mean - expected).abs() < 4.0 * sigma, "mean={mean}");
    // pmf of the skip count, last cell holding the tail mass
    let mut pmf: Vec<f64> = (0..counts.len() as u32 - 1)
        .map(|k| p * (1.0 - p).powi(k as i32))
        .collect();
    pmf.push(1.0 - pmf.iter().sum::<f64>());
    let check = chi_square_gof(&counts, &pmf).unwrap();
    assert!(check.p_value >= 1e-3, "p={}", check.p_value);
}

#[test]
fn substreams_decorrelate() {
    let parent = RngStream::new(21);
    let mut left = parent.substream("left");
    let mut right = parent.substream("right");
    let n = 200_000u64;
    let mut dot = 0.0;
    for _ in 0..n {
        dot += (left.uniform01() - 0.5) * (right.uniform01() - 0.5);
    }
    // correlation of two independent uniforms: sd of the mean product is
    // (1/12) / sqrt(n)
    let corr = dot / n as f64 / (1.0 / 12.0);
    assert!(corr.abs() < 4.0 / (n as f64).sqrt(), "corr={corr}");
}
