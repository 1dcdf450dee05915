//! Seed-deterministic random streams and the exact discrete samplers built
//! on top of them.
//!
//! Every generator in this crate draws from an [`RngStream`]: a ChaCha8
//! stream keyed by a 64-bit seed. The state advance is pure integer
//! arithmetic, so identical seeds produce identical draw sequences on every
//! platform. Named sub-streams let callers shard work (or separate
//! concerns) while staying reproducible from a single root seed.

use crate::error::{Error, Result};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; bijective on u64.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn expand_key(id: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    let mut h = id;
    for chunk in key.chunks_exact_mut(8) {
        h = mix64(h.wrapping_add(GOLDEN));
        chunk.copy_from_slice(&h.to_le_bytes());
    }
    key
}

/// A reproducible stream of randomness.
///
/// Cloning is deliberately not provided; derive independent
/// [`sub-streams`](RngStream::substream) instead of sharing state.
#[derive(Debug)]
pub struct RngStream {
    id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    /// Root stream for a user-supplied seed.
    pub fn new(seed: u64) -> Self {
        RngStream {
            id: seed,
            rng: ChaCha8Rng::from_seed(expand_key(seed)),
        }
    }

    /// Independent child stream identified by `label`.
    ///
    /// Derivation depends only on the parent's seed and the label, not on
    /// how much the parent has already been consumed.
    pub fn substream(&self, label: &str) -> Self {
        let mut h = mix64(self.id ^ GOLDEN);
        for &b in label.as_bytes() {
            h = mix64(h ^ u64::from(b));
        }
        h = mix64(h ^ label.len() as u64);
        RngStream {
            id: h,
            rng: ChaCha8Rng::from_seed(expand_key(h)),
        }
    }

    /// Seed (root) or derived identifier (sub-stream) of this stream.
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Uniform draw from [0, 1) on the 2^-53 grid.
    pub fn uniform01(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }

    /// Uniform integer in [0, bound).
    pub fn index(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.rng.random_range(0..bound)
    }

    /// Exact Binomial(trials, p) draw.
    ///
    /// Small-mean cases use CDF inversion; larger ones an exact
    /// accept–reject sampler. No normal approximation anywhere.
    pub fn binomial(&mut self, trials: u64, p: f64) -> Result<u64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityRange(p));
        }
        if trials == 0 || p == 0.0 {
            return Ok(0);
        }
        if p == 1.0 {
            return Ok(trials);
        }
        let flipped = p > 0.5;
        let q = if flipped { 1.0 - p } else { p };
        let x = if trials as f64 * q <= BINV_CUTOFF {
            self.binomial_inversion(trials, q)
        } else {
            rand_distr::Binomial::new(trials, q)
                .expect("validated parameters")
                .sample(self)
        };
        Ok(if flipped { trials - x } else { x })
    }

    /// BINV: walk the CDF with the pmf recurrence. Requires q <= 1/2 and a
    /// small mean, so the starting mass (1-q)^trials cannot underflow.
    fn binomial_inversion(&mut self, trials: u64, q: f64) -> u64 {
        let s = q / (1.0 - q);
        let a = (trials + 1) as f64 * s;
        let r0 = (trials as f64 * (-q).ln_1p()).exp();
        loop {
            let mut u = self.uniform01();
            let mut r = r0;
            let mut x = 0u64;
            loop {
                if u <= r {
                    return x;
                }
                u -= r;
                x += 1;
                if x > trials {
                    // Accumulated rounding pushed u past the total mass;
                    // redraw rather than return an out-of-range value.
                    break;
                }
                r *= a / x as f64 - s;
            }
        }
    }

    /// Exact Multinomial(trials; weights) draw by sequential conditional
    /// binomial splitting, O(len + trials) expected time.
    ///
    /// Weights must be nonnegative and sum to 1 within 1e-9; they are
    /// renormalized internally.
    pub fn multinomial(&mut self, trials: u64, weights: &[f64]) -> Result<Vec<u64>> {
        for (index, &value) in weights.iter().enumerate() {
            if value < 0.0 || !value.is_finite() {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::WeightSum(total));
        }
        let mut counts = vec![0u64; weights.len()];
        let mut remaining = trials;
        let mut rho = total;
        for (i, &w) in weights.iter().enumerate() {
            if remaining == 0 {
                break;
            }
            if i + 1 == weights.len() || rho <= w {
                counts[i] = remaining;
                break;
            }
            let x = self
                .binomial(remaining, (w / rho).clamp(0.0, 1.0))
                .expect("clamped probability");
            counts[i] = x;
            remaining -= x;
            rho -= w;
        }
        Ok(counts)
    }

    /// Uniform random permutation of 1..=n (Fisher–Yates).
    pub fn permutation(&mut self, n: u32) -> Vec<u32> {
        let mut sigma: Vec<u32> = (1..=n).collect();
        for i in (1..sigma.len()).rev() {
            let j = self.index(i as u64 + 1) as usize;
            sigma.swap(i, j);
        }
        sigma
    }

    /// Uniform m-subset of {1, ..., n}, returned ascending (Floyd's
    /// algorithm; expected O(m) draws plus the sort).
    pub fn sample_without_replacement(&mut self, m: u64, n: u64) -> Result<Vec<u64>> {
        if m > n {
            return Err(Error::SampleSize { m, n });
        }
        let mut chosen = std::collections::HashSet::with_capacity(m as usize);
        for j in (n - m + 1)..=n {
            let t = self.index(j) + 1;
            if !chosen.insert(t) {
                chosen.insert(j);
            }
        }
        let mut out: Vec<u64> = chosen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Number of failures before the first success at rate p, i.e. the
    /// count of consecutive indices skipped by an independent-coin scan.
    ///
    /// Exact inversion: floor(log(U) / log(1-p)) with U in (0, 1].
    pub fn geometric_skip(&mut self, p: f64) -> Result<u64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::ProbabilityZero(p));
        }
        if p == 1.0 {
            return Ok(0);
        }
        let u = self.uniform01();
        // 1-u is uniform on (0, 1], so the log never sees zero.
        let k = (1.0 - u).ln() / (-p).ln_1p();
        Ok(k as u64)
    }
}

const BINV_CUTOFF: f64 = 30.0;

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seeds_identical_sequences() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..64 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn different_seeds_diverge() {
        let mut a = RngStream::new(1);
        let mut b = RngStream::new(2);
        let same = (0..16).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn substreams_are_independent_of_parent_consumption() {
        let mut parent = RngStream::new(7);
        let mut early = parent.substream("walk");
        for _ in 0..100 {
            parent.next_u64();
        }
        let mut late = parent.substream("walk");
        for _ in 0..16 {
            assert_eq!(early.next_u64(), late.next_u64());
        }
    }

    #[test]
    fn substream_labels_separate() {
        let root = RngStream::new(7);
        let mut a = root.substream("a");
        let mut b = root.substream("b");
        assert_ne!(a.next_u64(), b.next_u64());
        let mut nested = root.substream("a").substream("b");
        let mut flat = root.substream("ab");
        assert_ne!(nested.next_u64(), flat.next_u64());
    }

    #[test]
    fn uniform01_stays_in_unit_interval() {
        let mut s = RngStream::new(11);
        for _ in 0..10_000 {
            let u = s.uniform01();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn binomial_degenerate_params() {
        let mut s = RngStream::new(3);
        assert_eq!(s.binomial(0, 0.4).unwrap(), 0);
        assert_eq!(s.binomial(10, 0.0).unwrap(), 0);
        assert_eq!(s.binomial(10, 1.0).unwrap(), 10);
        assert!(matches!(
            s.binomial(10, -0.1),
            Err(Error::ProbabilityRange(_))
        ));
        assert!(matches!(
            s.binomial(10, 1.5),
            Err(Error::ProbabilityRange(_))
        ));
    }

    #[test]
    fn binomial_within_range_both_paths() {
        let mut s = RngStream::new(9);
        for _ in 0..2_000 {
            let x = s.binomial(100, 0.25).unwrap(); // inversion path
            assert!(x <= 100);
            let y = s.binomial(400, 0.25).unwrap(); // accept-reject path
            assert!(y <= 400);
        }
    }

    #[test]
    fn multinomial_counts_sum_to_trials() {
        let mut s = RngStream::new(5);
        let w = [0.2, 0.3, 0.1, 0.4];
        for _ in 0..500 {
            let counts = s.multinomial(37, &w).unwrap();
            assert_eq!(counts.iter().sum::<u64>(), 37);
        }
    }

    #[test]
    fn multinomial_rejects_bad_weights() {
        let mut s = RngStream::new(5);
        assert!(matches!(
            s.multinomial(10, &[0.5, -0.5, 1.0]),
            Err(Error::NegativeWeight { index: 1, .. })
        ));
        assert!(matches!(
            s.multinomial(10, &[0.5, 0.4]),
            Err(Error::WeightSum(_))
        ));
    }

    #[test]
    fn multinomial_zero_weight_cells_stay_zero() {
        let mut s = RngStream::new(8);
        for _ in 0..200 {
            let counts = s.multinomial(20, &[0.5, 0.0, 0.5]).unwrap();
            assert_eq!(counts[1], 0);
        }
    }

    #[test]
    fn permutation_is_a_bijection() {
        let mut s = RngStream::new(13);
        for n in [1u32, 2, 7, 40] {
            let sigma = s.permutation(n);
            let mut sorted = sigma.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn sample_without_replacement_contract() {
        let mut s = RngStream::new(17);
        for _ in 0..500 {
            let subset = s.sample_without_replacement(4, 10).unwrap();
            assert_eq!(subset.len(), 4);
            assert!(subset.windows(2).all(|w| w[0] < w[1]));
            assert!(subset.iter().all(|&v| (1..=10).contains(&v)));
        }
        assert_eq!(
            s.sample_without_replacement(5, 5).unwrap(),
            vec![1, 2, 3, 4, 5]
        );
        assert_eq!(
            s.sample_without_replacement(0, 5).unwrap(),
            Vec::<u64>::new()
        );
        assert!(matches!(
            s.sample_without_replacement(6, 5),
            Err(Error::SampleSize { m: 6, n: 5 })
        ));
    }

    #[test]
    fn geometric_skip_degenerate_params() {
        let mut s = RngStream::new(19);
        assert_eq!(s.geometric_skip(1.0).unwrap(), 0);
        assert!(matches!(
            s.geometric_skip(0.0),
            Err(Error::ProbabilityZero(_))
        ));
        assert!(matches!(
            s.geometric_skip(-0.3),
            Err(Error::ProbabilityZero(_))
        ));
    }
}
