//! Closed-form identities for the sparse regime and exact small-n oracles.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

/// Largest vertex count the exact connectivity recursion supports.
pub const CONNECTIVITY_ORACLE_MAX_N: u64 = 400;

/// Up to this vertex count the recursion runs in exact integer arithmetic.
const EXACT_DYADIC_MAX_N: u64 = 64;

/// Asymptotic mean degree of a connected graph drawn at edge density c/n:
/// zeta(c) = c / tanh(c/2), with the limit value 2 at c = 0.
pub fn zeta(c: f64) -> Result<f64> {
    if !c.is_finite() || c < 0.0 {
        return Err(Error::MeanDegreeRange(c));
    }
    if c < 1e-8 {
        // Series around 0 avoids the 0/0 form: 2 + c^2/6 - c^4/360 + ...
        return Ok(2.0 + c * c / 6.0);
    }
    Ok(c / (c / 2.0).tanh())
}

fn zeta_derivative(c: f64) -> f64 {
    if c < 1e-4 {
        return c / 3.0 - c * c * c / 90.0;
    }
    if c > 40.0 {
        return 1.0;
    }
    let x = c / 2.0;
    let sh = x.sinh();
    1.0 / x.tanh() - x / (sh * sh)
}

/// Inverts zeta: finds c >= 0 with zeta(c) = d.
///
/// Bisection on the monotone bracket (0, d], then Newton polishing;
/// converges to |zeta(c) - d| <= 1e-12 * d.
pub fn solve_c_for_mean_degree(d: f64) -> Result<f64> {
    if !d.is_finite() || d < 2.0 {
        return Err(Error::MeanDegreeRange(d));
    }
    if d <= 2.0 + 1e-12 {
        return Ok(0.0);
    }
    let tol = 1e-12 * d;
    let (mut lo, mut hi) = (0.0f64, d);
    let mut c = d / 2.0;
    for _ in 0..64 {
        c = 0.5 * (lo + hi);
        if zeta(c)? < d {
            lo = c;
        } else {
            hi = c;
        }
    }
    for _ in 0..8 {
        let err = zeta(c)? - d;
        if err.abs() <= tol {
            return Ok(c);
        }
        let step = err / zeta_derivative(c);
        let next = c - step;
        c = if next.is_finite() && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(c)
}

/// Limiting vertex-degree law of a connected sparse graph at density c/n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeLaw {
    c: f64,
    gamma: f64,
}

impl DegreeLaw {
    /// Law for edge density c/n; requires c > 0.
    pub fn new(c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::MeanDegreeRange(c));
        }
        Ok(DegreeLaw {
            c,
            gamma: c / (-(-c).exp_m1()),
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Poisson-like rate gamma = c / (1 - e^{-c}).
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// P(degree = k): e^{-gamma} gamma^k / k! * (1 - e^{-ck}) / (1 - e^{-c})
    /// for k >= 1, and exactly 0 at k = 0 (a connected graph has no
    /// isolated vertices).
    pub fn pmf(&self, k: u64) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let kf = k as f64;
        let log_poisson = -self.gamma + kf * self.gamma.ln() - ln_gamma(kf + 1.0);
        let scale = (-(self.c * kf)).exp_m1() / (-self.c).exp_m1();
        log_poisson.exp() * scale
    }

    /// Mean of the law; coincides with zeta(c).
    pub fn mean(&self) -> f64 {
        zeta(self.c).expect("c validated at construction")
    }
}

/// Nonnegative dyadic rational mant * 2^exp. Every f64 probability is one,
/// so the connectivity recursion — a polynomial in p with integer
/// coefficients — closes over these exactly.
#[derive(Clone)]
struct Dyadic {
    mant: BigUint,
    exp: i64,
}

impl Dyadic {
    fn one() -> Self {
        Dyadic {
            mant: BigUint::one(),
            exp: 0,
        }
    }

    /// Exact value of a float in (0, 1).
    fn from_probability(p: f64) -> Self {
        debug_assert!(p > 0.0 && p < 1.0);
        let bits = p.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074) // subnormal
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let mut value = Dyadic {
            mant: BigUint::from(mant),
            exp,
        };
        value.trim();
        value
    }

    /// Strips trailing zero bits so mantissas stay minimal.
    fn trim(&mut self) {
        match self.mant.trailing_zeros() {
            None => self.exp = 0,
            Some(0) => {}
            Some(shift) => {
                self.mant >>= shift;
                self.exp += shift as i64;
            }
        }
    }

    fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    fn mul_uint(&self, factor: &BigUint) -> Dyadic {
        let mut value = Dyadic {
            mant: &self.mant * factor,
            exp: self.exp,
        };
        value.trim();
        value
    }

    fn add_assign(&mut self, other: &Dyadic) {
        if other.mant.is_zero() {
            return;
        }
        if self.mant.is_zero() {
            *self = other.clone();
            return;
        }
        let exp = self.exp.min(other.exp);
        let mut mant = &self.mant << (self.exp - exp) as usize;
        mant += &other.mant << (other.exp - exp) as usize;
        self.mant = mant;
        self.exp = exp;
    }

    /// 1 - self, for self strictly between 0 and 1.
    fn complement_from_one(&self) -> Dyadic {
        debug_assert!(self.exp <= 0);
        let one = BigUint::one() << (-self.exp) as usize;
        debug_assert!(self.mant < one);
        let mut value = Dyadic {
            mant: one - &self.mant,
            exp: self.exp,
        };
        value.trim();
        value
    }

    /// Nearest f64 (ties away from zero; sub-ulp from nearest-even at worst).
    fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        if bits <= 53 {
            let m = self.mant.to_u64().expect("mantissa fits 53 bits");
            return m as f64 * exp2_i64(self.exp);
        }
        let shift = bits - 54;
        let top = (&self.mant >> shift).to_u64().expect("54-bit slice");
        let rounded = (top >> 1) + (top & 1);
        rounded as f64 * exp2_i64(self.exp + shift as i64 + 1)
    }
}

fn exp2_i64(e: i64) -> f64 {
    if e < -1100 {
        0.0
    } else if e > 1024 {
        f64::INFINITY
    } else {
        (2.0f64).powi(e as i32)
    }
}

/// Recursion in exact dyadic arithmetic; returns P_1..=P_n rounded to f64.
fn connectivity_table_dyadic(n: usize, p: f64) -> Vec<f64> {
    let q = Dyadic::from_probability(p).complement_from_one();
    // q^e for every needed exponent e = k(m-k) <= n^2/4
    let mut q_pow = Vec::with_capacity(n * n / 4 + 1);
    q_pow.push(Dyadic::one());
    for e in 1..=(n * n / 4) {
        let mut next = q_pow[e - 1].mul(&q);
        next.trim();
        q_pow.push(next);
    }
    let mut choose = vec![vec![BigUint::zero(); n]; n];
    for a in 0..n {
        choose[a][0] = BigUint::one();
        for b in 1..=a {
            choose[a][b] = &choose[a - 1][b - 1]
                + if b < a {
                    choose[a - 1][b].clone()
                } else {
                    BigUint::zero()
                };
        }
    }
    let mut exact: Vec<Dyadic> = vec![Dyadic::one(); n + 1];
    let mut rounded = vec![0.0f64; n + 1];
    rounded[1] = 1.0;
    for m in 2..=n {
        let mut tail = Dyadic {
            mant: BigUint::zero(),
            exp: 0,
        };
        for k in 1..m {
            let term = exact[k]
                .mul(&q_pow[k * (m - k)])
                .mul_uint(&choose[m - 1][k - 1]);
            tail.add_assign(&term);
        }
        exact[m] = tail.complement_from_one();
        rounded[m] = exact[m].to_f64();
    }
    rounded
}

/// Recursion in f64 with log-space term assembly; returns P_1..=P_n.
fn connectivity_table_logspace(n: usize, p: f64) -> Vec<f64> {
    let ln_q = (-p).ln_1p();
    // ln_fact[i] = ln(i!)
    let ln_fact: Vec<f64> = (0..n).map(|i| ln_gamma(i as f64 + 1.0)).collect();
    let mut prob = vec![0.0f64; n + 1];
    prob[1] = 1.0;
    for nn in 2..=n {
        let mut tail = 0.0;
        for k in 1..nn {
            let ln_choose = ln_fact[nn - 1] - ln_fact[k - 1] - ln_fact[nn - k];
            let cut = (k * (nn - k)) as f64;
            tail += (ln_choose + cut * ln_q).exp() * prob[k];
        }
        prob[nn] = (1.0 - tail).max(0.0);
    }
    prob
}

/// Exact probability that G(n, p) is connected, by the classical
/// inclusion recursion over the component containing vertex 1:
/// P_1 = 1,  P_n = 1 - sum_{k<n} C(n-1, k-1) P_k (1-p)^{k(n-k)}.
///
/// Up to n = 64 the recursion runs in exact integer arithmetic (the result
/// is a polynomial in p, and any f64 p is a dyadic rational), so the
/// returned value is correct to the final rounding. Beyond that the terms
/// are assembled in log space so the binomial coefficients and the
/// (1-p)^{k(n-k)} factors survive n up to 400; in that regime relative
/// accuracy degrades when P_n is small, because the recursion reaches it
/// through cancellation, and deep in the subcritical range the result can
/// collapse to 0.
pub fn connectivity_probability_exact(n: u64, p: f64) -> Result<f64> {
    Ok(*connectivity_probability_exact_upto(n, p)?
        .last()
        .expect("table holds at least P_1"))
}

/// Table of connectivity probabilities P_1..=P_n at a fixed p, sharing one
/// pass of the recursion. `table[k - 1]` is P_k. Same accuracy contract as
/// [`connectivity_probability_exact`].
pub fn connectivity_probability_exact_upto(n: u64, p: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::VertexCount(n));
    }
    if n > CONNECTIVITY_ORACLE_MAX_N {
        return Err(Error::OracleScale {
            what: "connectivity recursion",
            n,
            max: CONNECTIVITY_ORACLE_MAX_N,
        });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    let n = n as usize;
    if p == 0.0 {
        let mut table = vec![0.0; n];
        table[0] = 1.0;
        return Ok(table);
    }
    if p == 1.0 {
        return Ok(vec![1.0; n]);
    }
    let mut table = if n as u64 <= EXACT_DYADIC_MAX_N {
        connectivity_table_dyadic(n, p)
    } else {
        connectivity_table_logspace(n, p)
    };
    table.remove(0); // drop the unused 0 slot
    Ok(table)
}

/// Sharp asymptotic for the connectivity probability at p = c/n:
/// (1 - c e^{-c} / (1 - e^{-c})) * (1 - (1 - c/n)^n)^n.
pub fn connectivity_probability_asymptotic(n: u64, c: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::VertexCount(n));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::MeanDegreeRange(c));
    }
    let one_minus_ec = -(-c).exp_m1();
    let prefactor = 1.0 - c * (-c).exp() / one_minus_ec;
    let base = (1.0 - c / n as f64).max(0.0);
    let inner = 1.0 - base.powi(n as i32);
    Ok(prefactor * inner.powi(n as i32))
}
