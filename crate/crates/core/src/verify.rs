//! Distribution-exactness machinery: brute-force enumeration of small
//! connected graphs, exact conditional distributions, and the statistics
//! (total variation, chi-square) used to compare them against samples.

use crate::analytic::connectivity_probability_exact;
use crate::assembler::Graph;
use crate::error::{Error, Result};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use std::collections::HashMap;

/// Largest vertex count the enumeration oracle accepts (2^15 graphs).
pub const ENUMERATION_MAX_N: u32 = 6;

/// Canonical identity of a labeled graph: the sorted normalized edge
/// list, serialized to bytes. Two graphs compare equal iff they have the
/// same vertex pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn from_graph(graph: &Graph) -> Self {
        let mut bytes = Vec::with_capacity(graph.edges().len() * 8);
        for &(u, v) in graph.edges() {
            bytes.extend_from_slice(&u.to_be_bytes());
            bytes.extend_from_slice(&v.to_be_bytes());
        }
        CanonicalKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// All connected labeled graphs on n vertices, optionally restricted to a
/// fixed edge count. Exhaustive over the 2^(n(n-1)/2) edge subsets, so n
/// is capped at [`ENUMERATION_MAX_N`].
pub fn enumerate_connected_graphs(n: u32, edge_count: Option<u64>) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::OracleScale {
            what: "graph enumeration",
            n: n as u64,
            max: ENUMERATION_MAX_N as u64,
        });
    }
    let pairs: Vec<(u32, u32)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if let Some(m) = edge_count {
            if mask.count_ones() as u64 != m {
                continue;
            }
        }
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let graph = Graph::from_edges(n, edges).expect("pairs are valid");
        if graph.is_connected() {
            out.push(graph);
        }
    }
    Ok(out)
}

/// A probability distribution over labeled graphs.
#[derive(Debug, Clone)]
pub struct DistributionTable {
    probs: HashMap<CanonicalKey, f64>,
}

impl DistributionTable {
    /// Exact law of G(n, p) conditioned on connectivity, by enumeration.
    pub fn exact_conditional_gnp(n: u32, p: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::ProbabilityZero(p));
        }
        let graphs = enumerate_connected_graphs(n, None)?;
        let total_pairs = Graph::max_edges(n);
        let q = 1.0 - p;
        let mut probs = HashMap::with_capacity(graphs.len());
        let mut total = 0.0;
        for graph in &graphs {
            let m = graph.edge_count();
            let mass = p.powi(m as i32) * q.powi((total_pairs - m) as i32);
            total += mass;
            probs.insert(CanonicalKey::from_graph(graph), mass);
        }
        for mass in probs.values_mut() {
            *mass /= total;
        }
        Ok(DistributionTable { probs })
    }

    /// Uniform law over the given graphs.
    pub fn uniform(graphs: &[Graph]) -> Result<Self> {
        if graphs.is_empty() {
            return Err(Error::Undersampled {
                total: 0,
                cells: 0,
                min: 1,
            });
        }
        let mass = 1.0 / graphs.len() as f64;
        Ok(DistributionTable {
            probs: graphs
                .iter()
                .map(|g| (CanonicalKey::from_graph(g), mass))
                .collect(),
        })
    }

    /// Empirical frequencies from sample counts.
    pub fn from_counts(counts: &HashMap<CanonicalKey, u64>) -> Result<Self> {
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::Undersampled {
                total: 0,
                cells: counts.len() as u64,
                min: 1,
            });
        }
        Ok(DistributionTable {
            probs: counts
                .iter()
                .map(|(k, &c)| (k.clone(), c as f64 / total as f64))
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probability(&self, key: &CanonicalKey) -> f64 {
        self.probs.get(key).copied().unwrap_or(0.0)
    }

    /// Total conditional mass before normalization equals the exact
    /// connectivity probability; exposed for cross-checks.
    pub fn connectivity_mass(n: u32, p: f64) -> Result<f64> {
        connectivity_probability_exact(n as u64, p)
    }

    /// Expected total-variation distance between this table and the
    /// empirical frequency table of `samples` draws, by the normal
    /// approximation of each cell: sum_k sqrt(p_k (1 - p_k) / (2 pi N)).
    pub fn sampling_noise_floor(&self, samples: u64) -> f64 {
        let n = samples as f64;
        self.probs
            .values()
            .map(|&p| (p * (1.0 - p) / (2.0 * std::f64::consts::PI * n)).sqrt())
            .sum()
    }
}

/// Total variation distance: half the L1 distance over the key union.
pub fn total_variation(a: &DistributionTable, b: &DistributionTable) -> f64 {
    let mut keys: Vec<&CanonicalKey> = a.probs.keys().chain(b.probs.keys()).collect();
    keys.sort_unstable();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (a.probability(k) - b.probability(k)).abs())
        .sum::<f64>()
}

/// Outcome of a Pearson chi-square test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: u64,
    pub p_value: f64,
}

/// Pearson chi-square against the uniform distribution over the cells.
/// Requires at least 2 cells and an average of 5 observations per cell.
pub fn chi_square_uniformity(counts: &[u64]) -> Result<ChiSquare> {
    let cells = counts.len() as u64;
    let total: u64 = counts.iter().sum();
    if cells < 2 || total < 5 * cells {
        return Err(Error::Undersampled {
            total,
            cells,
            min: 5,
        });
    }
    let expected = total as f64 / cells as f64;
    let statistic = counts
        .iter()
        .map(|&o| {
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum();
    finish_chi_square(statistic, cells - 1)
}

/// Pearson chi-square against an arbitrary discrete law. Cells are pooled
/// greedily (in order) until each pooled cell has expected count >= 5.
pub fn chi_square_gof(counts: &[u64], probs: &[f64]) -> Result<ChiSquare> {
    assert_eq!(counts.len(), probs.len(), "counts and probs must align");
    let total: u64 = counts.iter().sum();
    let weight: f64 = probs.iter().sum();
    let mut pooled: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut acc_o = 0.0;
    let mut acc_e = 0.0;
    for (&o, &p) in counts.iter().zip(probs) {
        acc_o += o as f64;
        acc_e += p / weight * total as f64;
        if acc_e >= 5.0 {
            pooled.push((acc_o, acc_e));
            acc_o = 0.0;
            acc_e = 0.0;
        }
    }
    if acc_e > 0.0 || acc_o > 0.0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += acc_o;
                last.1 += acc_e;
            }
            None => pooled.push((acc_o, acc_e)),
        }
    }
    if pooled.len() < 2 {
        return Err(Error::Undersampled {
            total,
            cells: counts.len() as u64,
            min: 5,
        });
    }
    let statistic = pooled
        .iter()
        .map(|&(o, e)| {
            let d = o - e;
            d * d / e
        })
        .sum();
    finish_chi_square(statistic, pooled.len() as u64 - 1)
}

fn finish_chi_square(statistic: f64, degrees_of_freedom: u64) -> Result<ChiSquare> {
    let dist = ChiSquared::new(degrees_of_freedom as f64).expect("df >= 1");
    Ok(ChiSquare {
        statistic,
        degrees_of_freedom,
        p_value: dist.sf(statistic),
    })
}
