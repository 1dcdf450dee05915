//! Assembles connected graphs from accepted trajectories.
//!
//! A uniform permutation sigma assigns vertex labels to discovery
//! positions; slicing sigma by the trajectory's step counts yields the
//! exploration tree. The pairs the exploration left undecided — vertex
//! pairs that were simultaneously active — are indexed 1..=pset_size and
//! resolved by independent coins (G(n, p)) or by a uniform fixed-size
//! subset (G(n, M)).

use crate::analytic::solve_c_for_mean_degree;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::trajectory::{
    sample_trajectory_gnm, sample_trajectory_gnp, IntensityVector, Trajectory,
};

pub type Vertex = u32;
pub type Edge = (Vertex, Vertex);

/// A simple undirected graph on vertices 1..=n.
///
/// Edges are stored normalized (u < v) and sorted lexicographically;
/// no self-loops, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from arbitrary endpoint pairs, normalizing and
    /// sorting; rejects loops, duplicates, and out-of-range vertices.
    pub fn from_edges(n: u32, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::VertexCount(0));
        }
        let mut normalized: Vec<Edge> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Trajectory("self-loop"));
            }
            if a < 1 || b < 1 || a > n || b > n {
                return Err(Error::VertexCount(a.max(b) as u64));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Trajectory("duplicate edge"));
        }
        Ok(Graph {
            n,
            edges: normalized,
        })
    }

    fn from_parts(n: u32, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Graph { n, edges }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    /// Edges in normalized sorted order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Maximum possible number of edges, n(n-1)/2.
    pub fn max_edges(n: u32) -> u64 {
        n as u64 * (n as u64 - 1) / 2
    }

    /// Connectivity via disjoint-set union.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        if self.edge_count() < self.n as u64 - 1 {
            return false;
        }
        let mut parent: Vec<u32> = (0..self.n).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut components = self.n;
        for &(u, v) in &self.edges {
            let ru = find(&mut parent, u - 1);
            let rv = find(&mut parent, v - 1);
            if ru != rv {
                parent[ru as usize] = rv;
                components -= 1;
            }
        }
        components == 1
    }
}

/// The vertex labeling of one exploration, plus the undecided-pair index
/// space. Pair indices are grouped in blocks: the t-th explored vertex
/// contributes S_{t-1} pairs, one to each vertex active alongside it.
#[derive(Debug)]
pub struct ExplorationLayout<'a> {
    sigma: Vec<u32>,
    trajectory: &'a Trajectory,
    pset_size: u64,
}

impl<'a> ExplorationLayout<'a> {
    /// sigma(t) for 1-based t: the vertex explored at step t.
    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn trajectory(&self) -> &Trajectory {
        self.trajectory
    }

    /// Number of undecided pairs.
    pub fn pset_size(&self) -> u64 {
        self.pset_size
    }

    /// Maps a 1-based pair index to its vertex pair (normalized u < v).
    ///
    /// Index j within the block of explored step t corresponds to the pair
    /// (sigma(t), sigma(t + j)).
    pub fn pair(&self, index: u64) -> Result<Edge> {
        if index < 1 || index > self.pset_size {
            return Err(Error::PairIndex {
                index,
                size: self.pset_size,
            });
        }
        let walk = self.trajectory.walk();
        let mut cum = 0u64;
        for t in 1..self.sigma.len() {
            let block = walk[t - 1] as u64; // S_{t-1}, nonnegative here
            if index <= cum + block {
                let j = (index - cum) as usize;
                let a = self.sigma[t - 1];
                let b = self.sigma[t - 1 + j];
                return Ok((a.min(b), a.max(b)));
            }
            cum += block;
        }
        unreachable!("index bounded by pset_size");
    }

    /// Maps ascending indices in one pass over the blocks.
    fn pairs_ascending(&self, indices: &[u64]) -> Vec<Edge> {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let walk = self.trajectory.walk();
        let mut out = Vec::with_capacity(indices.len());
        let mut t = 1usize;
        let mut cum = 0u64;
        for &index in indices {
            debug_assert!(index >= 1 && index <= self.pset_size);
            while index > cum + walk[t - 1] as u64 {
                cum += walk[t - 1] as u64;
                t += 1;
            }
            let j = (index - cum) as usize;
            let a = self.sigma[t - 1];
            let b = self.sigma[t - 1 + j];
            out.push((a.min(b), a.max(b)));
        }
        out
    }
}

/// Step 2: labels the discovery order with a uniform permutation and
/// emits the exploration tree (n - 1 edges).
pub fn build_tree<'a>(
    stream: &mut RngStream,
    trajectory: &'a Trajectory,
) -> (Graph, ExplorationLayout<'a>) {
    let n = trajectory.n();
    let sigma = stream.permutation(n);
    let mut edges = Vec::with_capacity(n as usize - 1);
    let mut discovered = 1usize;
    for (t, &x) in trajectory.steps().iter().enumerate() {
        let parent = sigma[t];
        for &child in &sigma[discovered..discovered + x as usize] {
            edges.push((parent.min(child), parent.max(child)));
        }
        discovered += x as usize;
    }
    let layout = ExplorationLayout {
        sigma,
        trajectory,
        pset_size: trajectory.pset_size(),
    };
    (Graph::from_parts(n, edges), layout)
}

/// Step 3 for G(n, p): every undecided pair joins independently with
/// probability p, visited by geometric skips.
pub fn complete_gnp(
    stream: &mut RngStream,
    tree: Graph,
    layout: &ExplorationLayout<'_>,
    p: f64,
) -> Result<Graph> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ProbabilityZero(p));
    }
    let mut indices = Vec::new();
    let mut position = 0u64;
    loop {
        let skip = stream.geometric_skip(p).expect("p validated");
        position = match position.checked_add(skip + 1) {
            Some(next) if next <= layout.pset_size() => next,
            _ => break,
        };
        indices.push(position);
    }
    let mut edges = tree.edges;
    edges.extend(layout.pairs_ascending(&indices));
    Ok(Graph::from_parts(tree.n, edges))
}

/// Step 3 for G(n, M): exactly `extra` undecided pairs join, chosen
/// uniformly without replacement.
pub fn complete_gnm(
    stream: &mut RngStream,
    tree: Graph,
    layout: &ExplorationLayout<'_>,
    extra: u64,
) -> Result<Graph> {
    let indices = stream.sample_without_replacement(extra, layout.pset_size())?;
    let mut edges = tree.edges;
    edges.extend(layout.pairs_ascending(&indices));
    Ok(Graph::from_parts(tree.n, edges))
}

/// Samples G(n, p) conditioned on connectivity; also reports how many
/// trajectory attempts were rejected.
pub fn generate_connected_gnp_detailed(
    stream: &mut RngStream,
    n: u32,
    p: f64,
) -> Result<(Graph, u64)> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::ProbabilityZero(p));
    }
    if n == 1 {
        return Ok((Graph::from_parts(1, Vec::new()), 0));
    }
    if n == 2 {
        return Ok((Graph::from_parts(2, vec![(1, 2)]), 0));
    }
    let intensities = IntensityVector::compute(n, p)?;
    let (trajectory, restarts) = sample_trajectory_gnp(stream, &intensities);
    let (tree, layout) = build_tree(stream, &trajectory);
    let graph = complete_gnp(stream, tree, &layout, p)?;
    Ok((graph, restarts))
}

/// Samples G(n, p) conditioned on connectivity.
pub fn generate_connected_gnp(stream: &mut RngStream, n: u32, p: f64) -> Result<Graph> {
    generate_connected_gnp_detailed(stream, n, p).map(|(graph, _)| graph)
}

/// Samples G(n, M) conditioned on connectivity (uniform over all
/// connected graphs with exactly `edges` edges); also reports rejected
/// trajectory attempts.
///
/// The working edge density p = c/n is chosen so the asymptotic mean
/// degree zeta(c) matches 2M/(n-1); M = n - 1 degenerates to uniform
/// spanning trees via the p -> 0 limit.
pub fn generate_connected_gnm_detailed(
    stream: &mut RngStream,
    n: u32,
    edges: u64,
) -> Result<(Graph, u64)> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    let max = Graph::max_edges(n);
    if edges < n as u64 - 1 || edges > max {
        return Err(Error::EdgeCount {
            n: n as u64,
            m: edges,
            min: n as u64 - 1,
            max,
        });
    }
    if n == 1 {
        return Ok((Graph::from_parts(1, Vec::new()), 0));
    }
    if n == 2 {
        return Ok((Graph::from_parts(2, vec![(1, 2)]), 0));
    }
    let degree = 2.0 * edges as f64 / (n as f64 - 1.0);
    let c = solve_c_for_mean_degree(degree)?;
    let intensities = if c == 0.0 {
        IntensityVector::tree_limit(n)?
    } else {
        IntensityVector::compute(n, c / n as f64)?
    };
    let (trajectory, restarts) = sample_trajectory_gnm(stream, &intensities, edges)?;
    let (tree, layout) = build_tree(stream, &trajectory);
    let graph = complete_gnm(stream, tree, &layout, edges - (n as u64 - 1))?;
    Ok((graph, restarts))
}

/// Samples G(n, M) conditioned on connectivity.
pub fn generate_connected_gnm(stream: &mut RngStream, n: u32, edges: u64) -> Result<Graph> {
    generate_connected_gnm_detailed(stream, n, edges).map(|(graph, _)| graph)
}
