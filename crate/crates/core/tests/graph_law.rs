//! End-to-end distributional checks of the generators against the
//! enumeration oracle at desk scale.

use std::collections::HashMap;

use cergen::verify::{
    chi_square_uniformity, enumerate_connected_graphs, CanonicalKey, DistributionTable,
};
use cergen::{generate_connected_gnm, generate_connected_gnp, Graph, RngStream};

fn sample_gnp_counts(n: u32, p: f64, samples: u64, seed: u64) -> HashMap<CanonicalKey, u64> {
    let mut stream = RngStream::new(seed);
    let mut counts: HashMap<CanonicalKey, u64> = HashMap::new();
    for _ in 0..samples {
        let graph = generate_connected_gnp(&mut stream, n, p).unwrap();
        *counts.entry(CanonicalKey::from_graph(&graph)).or_default() += 1;
    }
    counts
}

#[test]
fn gnp_n3_splits_mass_evenly_at_half() {
    // three paths and the triangle each carry conditional mass 1/4
    let samples = 200_000u64;
    let counts = sample_gnp_counts(3, 0.5, samples, 2001);
    assert_eq!(counts.len(), 4);
    let sigma = (0.25 * 0.75 / samples as f64).sqrt();
    for (key, &count) in &counts {
        let freq = count as f64 / samples as f64;
        assert!((freq - 0.25).abs() < 4.0 * sigma, "key={key:?} freq={freq}");
    }
}

#[test]
fn gnp_n4_matches_exact_conditional_distribution() {
    let samples = 300_000u64;
    let counts = sample_gnp_counts(4, 0.3, samples, 2002);
    let exact = DistributionTable::exact_conditional_gnp(4, 0.3).unwrap();
    let empirical = DistributionTable::from_counts(&counts).unwrap();
    let tvd = cergen::verify::total_variation(&exact, &empirical);
    let floor = exact.sampling_noise_floor(samples);
    assert!(tvd < 3.0 * floor + 0.004, "tvd={tvd}, floor={floor}");
    // every sampled graph lies in the enumerated support
    for key in counts.keys() {
        assert!(exact.probability(key) > 0.0);
    }
}

#[test]
fn gnm_trees_are_uniform() {
    // n = 4, M = 3: the 16 labeled trees
    let samples = 160_000u64;
    let mut stream = RngStream::new(2003);
    let mut counts: HashMap<CanonicalKey, u64> = HashMap::new();
    for _ in 0..samples {
        let graph = generate_connected_gnm(&mut stream, 4, 3).unwrap();
        assert_eq!(graph.edge_count(), 3);
        *counts.entry(CanonicalKey::from_graph(&graph)).or_default() += 1;
    }
    assert_eq!(counts.len(), 16);
    let cells: Vec<u64> = counts.values().copied().collect();
    let check = chi_square_uniformity(&cells).unwrap();
    assert!(check.p_value >= 1e-3, "p={}", check.p_value);
}

#[test]
fn gnm_dense_support_is_uniform() {
    // n = 4, M = 4: all 15 four-edge graphs are connected
    let support = enumerate_connected_graphs(4, Some(4)).unwrap();
    assert_eq!(support.len(), 15);
    let samples = 150_000u64;
    let mut stream = RngStream::new(2004);
    let mut counts: HashMap<CanonicalKey, u64> = HashMap::new();
    for _ in 0..samples {
        let graph = generate_connected_gnm(&mut stream, 4, 4).unwrap();
        *counts.entry(CanonicalKey::from_graph(&graph)).or_default() += 1;
    }
    assert_eq!(counts.len(), 15);
    let cells: Vec<u64> = counts.values().copied().collect();
    let check = chi_square_uniformity(&cells).unwrap();
    assert!(check.p_value >= 1e-3, "p={}", check.p_value);
}

#[test]
fn gnp_edge_marginal_matches_enumeration() {
    // P((1,2) present | connected) at n = 5, p = 0.3, from the oracle
    let p = 0.3f64;
    let table = DistributionTable::exact_conditional_gnp(5, p).unwrap();
    let mut marginal = 0.0;
    for graph in enumerate_connected_graphs(5, None).unwrap() {
        if graph.edges().contains(&(1, 2)) {
            marginal += table.probability(&CanonicalKey::from_graph(&graph));
        }
    }
    let samples = 200_000u64;
    let mut stream = RngStream::new(2005);
    let mut hits = 0u64;
    for _ in 0..samples {
        let graph = generate_connected_gnp(&mut stream, 5, p).unwrap();
        if graph.edges().contains(&(1, 2)) {
            hits += 1;
        }
    }
    let freq = hits as f64 / samples as f64;
    let sigma = (marginal * (1.0 - marginal) / samples as f64).sqrt();
    assert!(
        (freq - marginal).abs() < 4.0 * sigma,
        "freq={freq}, marginal={marginal}"
    );
}

#[test]
fn degenerate_densities_yield_deterministic_graphs() {
    let mut stream = RngStream::new(2006);
    for n in [2u32, 3, 5, 9] {
        let complete = generate_connected_gnp(&mut stream, n, 1.0).unwrap();
        assert_eq!(complete.edge_count(), Graph::max_edges(n));
        let saturated = generate_connected_gnm(&mut stream, n, Graph::max_edges(n)).unwrap();
        assert_eq!(saturated.edge_count(), Graph::max_edges(n));
        let tree = generate_connected_gnm(&mut stream, n, u64::from(n) - 1).unwrap();
        assert_eq!(tree.edge_count(), u64::from(n) - 1);
        assert!(tree.is_connected());
    }
    let single = generate_connected_gnp(&mut stream, 1, 0.7).unwrap();
    assert_eq!(single.edge_count(), 0);
}
