//! Closed-form evaluators: binary entropy, the Plotkin cap on `lambda`, the
//! weak-UP scan over primes, and the counting quantities used to build long
//! cyclic codes of distance `n^alpha`.
//!
//! Real-valued routines are generic over [`num_traits::Float`]; counts that
//! can be exact are [`BigUint`] or [`Ratio`].

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{Float, One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::cyclic::{min_distance, ht_bound, CyclicCode, DistanceLookup, DistanceOptions, DistanceResult};
use crate::error::{domain, Error, Result};
use crate::gf::{self, ord_mod, primes_between};
use crate::polyring::factor_xn_minus_1;

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("representable constant")
}

/// `H(x) = -x log2 x - (1 - x) log2 (1 - x)` on the open interval `(0, 1)`.
pub fn entropy<T: Float>(x: T) -> Result<T> {
    if !(x > T::zero() && x < T::one()) {
        return domain("entropy argument must lie in (0, 1)");
    }
    let y = T::one() - x;
    Ok(-(x * x.log2()) - y * y.log2())
}

/// `H` extended by its limit 0 at the endpoints.
pub fn entropy_closed<T: Float>(x: T) -> Result<T> {
    if x == T::zero() || x == T::one() {
        Ok(T::zero())
    } else {
        entropy(x)
    }
}

/// Piecewise majorant of `delta + alpha_q(delta)` from the asymptotic
/// Plotkin bound.
pub fn f_delta<T: Float>(delta: T, q: u64) -> Result<T> {
    if q < 2 {
        return domain("q must be at least 2");
    }
    if !(delta > T::zero() && delta < T::one()) {
        return domain("delta must lie in (0, 1)");
    }
    let q1 = c::<T>(q as f64 - 1.0);
    if delta < q1 / c(q as f64) {
        Ok(T::one() - delta / q1)
    } else {
        Ok(delta)
    }
}

/// `(q - 1) / q`, the minimum of [`f_delta`] over `(0, 1)`.
pub fn plotkin_lambda_cap(q: u64) -> Result<Ratio<u64>> {
    if q < 2 {
        return domain("q must be at least 2");
    }
    Ok(Ratio::new(q - 1, q))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeakUpRow {
    pub p: u64,
    pub ord: u64,
    pub mu_lower: usize,
    pub mu_upper: usize,
    pub exact: bool,
    /// `ord_p(q) < eps * p`.
    pub cond_order: bool,
    /// `mu > lambda * p`; `None` when the bracket straddles the threshold.
    pub cond_mu: Option<bool>,
    pub both: Option<bool>,
}

/// Rows for every prime `p <= p_max` coprime to `q`.
pub fn weak_up_scan<T: Float>(
    q: u64,
    eps: T,
    lambda: T,
    p_max: u64,
    opts: &DistanceOptions,
    cache: Option<&dyn DistanceLookup>,
) -> Result<Vec<WeakUpRow>> {
    if !(eps > T::zero() && eps < lambda && lambda <= T::one()) {
        return domain("need 0 < eps < lambda <= 1");
    }
    gf::PrimePower::new(q)?;
    let mut rows = Vec::new();
    for p in primes_between(2, p_max) {
        if gf::gcd(p, q) != 1 {
            continue;
        }
        let ord = ord_mod(q % p, p)?;
        let rec = crate::cyclic::mu(p as usize, q, opts, cache)?;
        let pf = c::<T>(p as f64);
        let cond_order = c::<T>(ord as f64) < eps * pf;
        let cond_mu = if c::<T>(rec.mu as f64) > lambda * pf {
            Some(true)
        } else if c::<T>(rec.mu_upper as f64) <= lambda * pf {
            Some(false)
        } else {
            None
        };
        rows.push(WeakUpRow {
            p,
            ord,
            mu_lower: rec.mu,
            mu_upper: rec.mu_upper,
            exact: rec.exact,
            cond_order,
            cond_mu,
            both: cond_mu.map(|m| m && cond_order),
        });
    }
    Ok(rows)
}

fn serialize_opt_big<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Bit-size cap for exact big-integer evaluations.
pub const MAX_EXACT_BITS: f64 = (1u64 << 18) as f64;
/// Radius cap for the log-space summation.
pub const MAX_LOG_RADIUS: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallVolume {
    pub n: u64,
    pub radius: u64,
    #[serde(serialize_with = "serialize_opt_big")]
    pub exact: Option<BigUint>,
    pub log2: f64,
}

/// `floor(n^alpha)`, nudged up when `n^alpha` is within rounding of an integer.
pub fn floor_pow(n: u64, alpha: f64) -> u64 {
    let x = (n as f64).powf(alpha);
    let r = x.floor();
    if r + 1.0 - x < 1e-9 * x.max(1.0) {
        r as u64 + 1
    } else {
        r as u64
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

pub fn log2_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).log2()).sum()
}

pub fn big_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().map_or(f64::NEG_INFINITY, f64::log2)
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().map_or(f64::NEG_INFINITY, f64::log2) + shift as f64
    }
}

/// `(1 + r) C(n, r) (q - 1)^r` with `r = floor(n^alpha)`.
pub fn ball_volume_upper(n: u64, alpha: f64, q: u64) -> Result<BallVolume> {
    if n < 2 || !(alpha > 0.0 && alpha < 1.0) || q < 2 {
        return domain("need n >= 2, 0 < alpha < 1 and q >= 2");
    }
    let r = floor_pow(n, alpha);
    if r > MAX_LOG_RADIUS {
        return Err(Error::Capacity(format!("radius {r} exceeds {MAX_LOG_RADIUS}")));
    }
    let log2 = ((1 + r) as f64).log2() + log2_binomial(n, r) + r as f64 * ((q - 1) as f64).log2();
    let exact = (log2 <= MAX_EXACT_BITS).then(|| {
        BigUint::from(1 + r) * binomial(n, r) * BigUint::from(q - 1).pow(r as u32)
    });
    Ok(BallVolume { n, radius: r, exact, log2 })
}

/// `((n - n^(1 - alpha)) / p) H(R)`, the base-2 exponent of the bound on the
/// number of generators `g_I` whose code contains a fixed low-weight word.
pub fn lambda_n_bound<T: Float>(n: T, p: T, alpha: T, rate: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) || p < c(2.0) {
        return domain("need 0 < alpha < 1 and p >= 2");
    }
    Ok((n - n.powf(T::one() - alpha)) / p * entropy(rate)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FAlpha<T> {
    pub p: u64,
    /// The two explicit leading terms of `f_{alpha,q,R}(p)`.
    pub leading: T,
    /// Natural log of the full left side of the final inequality.
    pub lhs_ln: T,
    /// `ln(1 / sqrt(R(1 - R)))`.
    pub rhs_ln: T,
    pub holds: bool,
}

/// `f_{alpha,q,R}(p)` with `n = q^p - 1`, evaluated in log space.
pub fn f_alpha<T: Float>(p: u64, alpha: T, q: u64, rate: T) -> Result<FAlpha<T>> {
    if !(alpha > T::zero() && alpha < T::one()) || q < 2 || p < 2 {
        return domain("need 0 < alpha < 1, q >= 2 and p >= 2");
    }
    let h = entropy(rate)?;
    let ln2 = c::<T>(std::f64::consts::LN_2);
    let qf = c::<T>(q as f64);
    let pf = c::<T>(p as f64);
    let qp = qf.powi(p as i32);
    let n = qp - T::one();
    let ln_n = n.ln();
    let na = n.powf(alpha);
    let one = T::one();
    let leading = (one - alpha) * ln_n * na - ln2 * h * qp / (pf * na);
    let q1 = qf - one;
    let ln_q1 = if q == 2 { T::zero() } else { q1.ln() };
    let lhs_ln = ln2 * h * (q1 - n.powf(one - alpha)) / pf
        + (-(na) * (alpha - one) + alpha / c(2.0)) * ln_n
        + na
        - n.powf(c::<T>(2.0) * alpha - one)
        + na * ln_q1
        + c::<T>(0.5) * ((qp - qf) / pf).ln();
    let rhs_ln = -c::<T>(0.5) * (rate * (one - rate)).ln();
    Ok(FAlpha {
        p,
        leading,
        lhs_ln,
        rhs_ln,
        holds: lhs_ln <= rhs_ln,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StirlingCheck {
    pub s: u64,
    pub s_prime: u64,
    pub exact_log2: f64,
    pub stirling_log2: f64,
    /// `stirling / exact`.
    pub ratio: f64,
}

/// Compares `C(s, s')`, `s' = floor(s(1 - R))`, with `2^{sH(R)} / sqrt(2 pi s R(1 - R))`.
pub fn stirling_check(s: u64, rate: f64) -> Result<StirlingCheck> {
    if s == 0 {
        return domain("s must be positive");
    }
    let h = entropy(rate)?;
    let s_prime = (s as f64 * (1.0 - rate)).floor() as u64;
    let exact_log2 = log2_binomial(s, s_prime);
    let stirling_log2 = s as f64 * h - 0.5 * (2.0 * std::f64::consts::PI * s as f64 * rate * (1.0 - rate)).log2();
    Ok(StirlingCheck {
        s,
        s_prime,
        exact_log2,
        stirling_log2,
        ratio: (stirling_log2 - exact_log2).exp2(),
    })
}

/// Largest `n = q^p - 1` accepted by [`construction_demo`].
pub const MAX_DEMO_N: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub q: u64,
    pub p: u64,
    pub n: u64,
    pub linear_factors: usize,
    pub s: usize,
    pub s_prime: usize,
    /// Indices into the degree-`p` factors, sorted.
    pub chosen: Vec<usize>,
    pub gen: String,
    pub dim: usize,
    pub rate: f64,
    pub designed_distance: usize,
    pub distance: DistanceResult,
    pub alpha: f64,
    pub lambda_exponent: f64,
    pub binomial_bound_log2: f64,
    pub ball: BallVolume,
    pub generator_count_log2: f64,
}

/// Builds `C(g_I)` for a seeded choice of `s'` degree-`p` factors of
/// `x^{q^p - 1} - 1` and reports the counting quantities beside it.
pub fn construction_demo(q: u64, p: u64, rate: f64, alpha: f64, seed: u64, budget: u64) -> Result<ConstructionReport> {
    if !gf::is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if !(rate > 0.0 && rate < 1.0) || !(alpha > 0.0 && alpha < 1.0) {
        return domain("need 0 < R < 1 and 0 < alpha < 1");
    }
    gf::PrimePower::new(q)?;
    let n = q
        .checked_pow(p as u32)
        .map(|x| x - 1)
        .filter(|&n| n <= MAX_DEMO_N)
        .ok_or_else(|| Error::Capacity(format!("{q}^{p} - 1 exceeds {MAX_DEMO_N}")))?;
    let fac = factor_xn_minus_1(n, q)?;
    let degs: Vec<usize> = fac.factors.iter().map(|f| f.degree().unwrap_or(0)).collect();
    let linear = degs.iter().filter(|&&d| d == 1).count();
    let big: Vec<usize> = (0..degs.len()).filter(|&j| degs[j] == p as usize).collect();
    let s = big.len();
    if linear as u64 != q - 1 || linear + big.len() != degs.len() || q - 1 + s as u64 * p != n {
        return Err(Error::Internal(format!(
            "factor census failed: {linear} linear and {s} degree-{p} factors for n = {n}"
        )));
    }
    let s_prime = (s as f64 * (1.0 - rate)).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = rand::seq::index::sample(&mut rng, s, s_prime).into_vec();
    chosen.sort_unstable();
    let subset: Vec<usize> = chosen.iter().map(|&i| big[i]).collect();
    let code = CyclicCode::from_factors(&fac, &subset)?;
    let designed = ht_bound(&code.zeros, n as usize);
    let distance = min_distance(&code, &DistanceOptions { budget, workers: 1 });
    let lambda_exponent = lambda_n_bound(n as f64, p as f64, alpha, rate)?;
    let top = ((n as f64 - (n as f64).powf(1.0 - alpha)) / p as f64).floor() as u64;
    let binomial_bound_log2 = if (s_prime as u64) <= top { log2_binomial(top, s_prime as u64) } else { f64::NEG_INFINITY };
    Ok(ConstructionReport {
        q,
        p,
        n,
        linear_factors: linear,
        s,
        s_prime,
        chosen,
        gen: code.gen_string(),
        dim: code.dim,
        rate: code.dim as f64 / n as f64,
        designed_distance: designed,
        distance,
        alpha,
        lambda_exponent,
        binomial_bound_log2,
        ball: ball_volume_upper(n, alpha, q)?,
        generator_count_log2: log2_binomial(s as u64, s_prime as u64),
    })
}
