//! Exploration-walk trajectories conditioned to stay nonnegative.
//!
//! A trajectory records how many new vertices each exploration step
//! discovers. Conditioned on the graph being connected, the step counts
//! follow a multinomial law (total n-1, cell weights lambda_i / n) further
//! conditioned on the partial-sum walk S_k staying nonnegative for k < n.
//! Samplers here implement that conditioning by rejection and report how
//! many restarts it cost.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use statrs::function::gamma::ln_gamma;

/// Largest n the positivity DP oracle accepts.
pub const POSITIVITY_ORACLE_MAX_N: u32 = 500;

/// Per-step discovery intensities lambda_i = n p (1-p)^{i-1} / (1 - (1-p)^n).
///
/// The intensities sum to n exactly, so lambda_i / n is a probability
/// vector — the multinomial weights of the conditioned walk.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityVector {
    n: u32,
    p: f64,
    lambdas: Vec<f64>,
}

impl IntensityVector {
    /// Intensities for G(n, p); requires n >= 1 and p in (0, 1].
    pub fn compute(n: u32, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::VertexCount(n as u64));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::ProbabilityZero(p));
        }
        let q = 1.0 - p;
        let ln_q = (-p).ln_1p();
        // 1 - (1-p)^n without cancellation for small p
        let denom = -(n as f64 * ln_q).exp_m1();
        let mut lambdas = Vec::with_capacity(n as usize);
        let mut lambda = n as f64 * p / denom;
        for _ in 0..n {
            lambdas.push(lambda);
            lambda *= q;
        }
        Ok(IntensityVector { n, p, lambdas })
    }

    /// The p -> 0 limit (uniform intensities, lambda_i = 1), which drives
    /// uniform spanning-tree generation for G(n, M) at M = n - 1.
    pub fn tree_limit(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::VertexCount(n as u64));
        }
        Ok(IntensityVector {
            n,
            p: 0.0,
            lambdas: vec![1.0; n as usize],
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Edge probability the intensities were derived from (0 in the
    /// tree limit).
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }
}

/// A step sequence in J_n: S_k >= 0 for 0 < k < n and S_n = -1, where
/// S_k = sum_{i<=k} (X_i - 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    steps: Vec<u32>,
    walk: Vec<i64>,
}

impl Trajectory {
    /// Validates the walk identities and caches the partial sums.
    pub fn from_steps(steps: Vec<u32>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Trajectory("no steps"));
        }
        let n = steps.len();
        let mut walk = Vec::with_capacity(n + 1);
        walk.push(0i64);
        let mut s = 0i64;
        for (k, &x) in steps.iter().enumerate() {
            s += x as i64 - 1;
            if s < 0 && k + 1 < n {
                return Err(Error::Trajectory("walk drops below zero before the end"));
            }
            walk.push(s);
        }
        if s != -1 {
            return Err(Error::Trajectory("steps do not sum to n - 1"));
        }
        Ok(Trajectory { steps, walk })
    }

    pub fn n(&self) -> u32 {
        self.steps.len() as u32
    }

    /// Discovery counts X_1..X_n.
    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    /// Partial sums S_0..S_n (length n + 1, S_0 = 0, S_n = -1).
    pub fn walk(&self) -> &[i64] {
        &self.walk
    }

    /// Number of vertex pairs left undecided by the exploration:
    /// sum_{i=1}^{n-1} S_i.
    pub fn pset_size(&self) -> u64 {
        self.walk[1..self.walk.len() - 1]
            .iter()
            .map(|&s| s as u64)
            .sum()
    }
}

/// One multinomial attempt with early abort on a negative partial sum.
/// Returns the step vector only when the walk stays in J_n.
fn walk_attempt(stream: &mut RngStream, lambdas: &[f64]) -> Option<Vec<u32>> {
    let n = lambdas.len();
    let mut steps = vec![0u32; n];
    let mut remaining = (n - 1) as u64;
    let mut rho = n as f64;
    let mut s = 0i64;
    for t in 0..n {
        let w = lambdas[t];
        let x = if t + 1 == n || rho <= w {
            remaining
        } else if remaining == 0 {
            0
        } else {
            stream
                .binomial(remaining, (w / rho).clamp(0.0, 1.0))
                .expect("clamped probability")
        };
        steps[t] = x as u32;
        remaining -= x;
        rho -= w;
        s += x as i64 - 1;
        if s < 0 && t + 1 < n {
            return None;
        }
    }
    Some(steps)
}

/// Draws the conditioned trajectory for G(n, p) by rejection.
///
/// Returns the accepted trajectory and the number of rejected attempts.
/// At p = 1 the only member of J_n, (n-1, 0, ..., 0), is returned directly.
pub fn sample_trajectory_gnp(
    stream: &mut RngStream,
    intensities: &IntensityVector,
) -> (Trajectory, u64) {
    let n = intensities.n() as usize;
    if n == 1 {
        return (Trajectory::from_steps(vec![0]).expect("valid"), 0);
    }
    if intensities.p() == 1.0 {
        let mut steps = vec![0u32; n];
        steps[0] = (n - 1) as u32;
        return (Trajectory::from_steps(steps).expect("valid"), 0);
    }
    let mut restarts = 0u64;
    loop {
        match walk_attempt(stream, intensities.lambdas()) {
            Some(steps) => {
                return (
                    Trajectory::from_steps(steps).expect("walk checked"),
                    restarts,
                );
            }
            None => restarts += 1,
        }
    }
}

/// Draws the conditioned trajectory for G(n, M): rejection on both the
/// nonnegative walk and an edge-count coupling E_p ~ Binomial(pset, p)
/// that must hit exactly M - (n - 1).
///
/// Returns the accepted trajectory and the number of rejected attempts.
pub fn sample_trajectory_gnm(
    stream: &mut RngStream,
    intensities: &IntensityVector,
    edges: u64,
) -> Result<(Trajectory, u64)> {
    let n = intensities.n();
    let max = n as u64 * (n as u64 - 1) / 2;
    if edges < (n as u64 - 1) || edges > max {
        return Err(Error::EdgeCount {
            n: n as u64,
            m: edges,
            min: n as u64 - 1,
            max,
        });
    }
    let target = edges - (n as u64 - 1);
    if n == 1 {
        return Ok((Trajectory::from_steps(vec![0]).expect("valid"), 0));
    }
    let p = intensities.p();
    let mut restarts = 0u64;
    loop {
        if let Some(steps) = walk_attempt(stream, intensities.lambdas()) {
            let trajectory = Trajectory::from_steps(steps).expect("walk checked");
            let coupled = if p == 0.0 {
                0
            } else {
                stream
                    .binomial(trajectory.pset_size(), p)
                    .expect("p validated")
            };
            if coupled == target {
                return Ok((trajectory, restarts));
            }
        }
        restarts += 1;
    }
}

/// Exact P(S_k >= 0 for 0 < k < n | S_n = -1) where the increments of S
/// are independent Poisson(lambda_t) minus one.
///
/// Forward dynamic program over (step, walk value); the Poisson masses are
/// evaluated in log space and the conditioning divides by the Poisson(n)
/// point mass at n - 1. Supports n up to [`POSITIVITY_ORACLE_MAX_N`].
pub fn positivity_probability_exact(intensities: &IntensityVector) -> Result<f64> {
    let n = intensities.n();
    if n > POSITIVITY_ORACLE_MAX_N {
        return Err(Error::OracleScale {
            what: "positivity dynamic program",
            n: n as u64,
            max: POSITIVITY_ORACLE_MAX_N as u64,
        });
    }
    let n = n as usize;
    let lambdas = intensities.lambdas();
    if n == 1 {
        return Ok(1.0);
    }

    // ln(j!) for j = 0..n
    let ln_fact: Vec<f64> = (0..n).map(|j| ln_gamma(j as f64 + 1.0)).collect();
    let poisson_row = |lambda: f64| -> Vec<f64> {
        (0..n)
            .map(|j| {
                if lambda == 0.0 {
                    if j == 0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    (-lambda + j as f64 * lambda.ln() - ln_fact[j]).exp()
                }
            })
            .collect()
    };

    // f[s] = P(walk at value s after step t, nonnegative so far, total
    // discoveries feasible). Walk values are capped at n-1-t: above that
    // the remaining steps cannot bring S_n down to -1.
    let mut f = vec![0.0f64; n];
    f[0] = 1.0;
    let mut cap_prev = n - 1; // cap for t = 0
    for (t, &lambda) in lambdas.iter().enumerate().take(n - 1) {
        let pmf = poisson_row(lambda);
        let cap = n - 2 - t; // n - 1 - (t+1)
        let mut next = vec![0.0f64; cap + 1];
        for s in 0..=cap_prev.min(n - 1) {
            let mass = f[s];
            if mass == 0.0 {
                continue;
            }
            // new value s' = s + j - 1 must satisfy 0 <= s' <= cap
            let j_min = if s == 0 { 1 } else { 0 };
            let j_max = cap + 1 - s;
            for j in j_min..=j_max {
                next[s + j - 1] += mass * pmf[j];
            }
        }
        f = next;
        cap_prev = cap;
    }
    let numerator = f[0] * (-lambdas[n - 1]).exp();
    let total = n as f64;
    let ln_denominator = -total + (n as f64 - 1.0) * total.ln() - ln_fact[n - 1];
    Ok(numerator / ln_denominator.exp())
}

/// Limiting acceptance probability of the G(n, p) trajectory rejection at
/// p = c/n: (1 - e^{-c}) (1 - c e^{-c} / (1 - e^{-c})).
pub fn acceptance_probability_asymptotic(c: f64) -> Result<f64> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::MeanDegreeRange(c));
    }
    let one_minus_ec = -(-c).exp_m1();
    Ok(one_minus_ec * (1.0 - c * (-c).exp() / one_minus_ec))
}
