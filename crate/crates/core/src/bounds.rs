//! Closed-form bounds: the facet-count bound, cube-slice volumes, the
//! Blichfeldt lattice-point bound, the alternating-sum envelope, and the
//! Pisot-unit height bound.
//!
//! The alternating sum
//!   A(n) = sum_{k=0}^{floor(n/2)} (-1)^k C(n,k) (n/2 - k)^(n-1)
//! cancels catastrophically in floating point by n ~ 20, so it is carried
//! exactly: 2^(n-1) A(n) is an integer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational carrier for the alternating sums.
pub type ExactRational = BigRational;

/// Friedman's universal lower bound on regulators.
pub const REGULATOR_LOWER_BOUND: f64 = 0.2052;

/// sqrt(e) / (2 pi), the asymptotic envelope constant.
pub fn envelope_constant() -> f64 {
    std::f64::consts::E.sqrt() / (2.0 * std::f64::consts::PI)
}

/// 1 + 1/(2e), the exponential rate of the envelope.
pub fn envelope_rate() -> f64 {
    1.0 + 1.0 / (2.0 * std::f64::consts::E)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k.min(n - k) {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn factorial_f64(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// A(n) as an exact rational; nonnegative for every n >= 1.
pub fn alternating_sum(n: u32) -> ExactRational {
    let mut acc = BigInt::zero();
    for k in 0..=(n / 2) {
        let term = binomial(n as u64, k as u64) * BigInt::from(n as i64 - 2 * k as i64).pow(n - 1);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    BigRational::new(acc, BigInt::from(2).pow(n - 1))
}

/// Volume of the central hyperplane section of the side-R cube by the
/// trace-zero hyperplane: R^(n-1) sqrt(n) / (n-1)! * A(n).
pub fn cube_slice_volume(side: f64, n: u32) -> Result<f64> {
    if !(side > 0.0) || !side.is_finite() {
        return Err(Error::Parameter(format!("cube side must be positive, got {side}")));
    }
    if n < 2 {
        return Err(Error::Parameter("cube slice needs dimension n >= 2".into()));
    }
    if n > 160 {
        return Err(Error::Overflow(format!("cube slice dimension {n} too large for f64")));
    }
    let a = alternating_sum(n)
        .to_f64()
        .ok_or_else(|| Error::Overflow("alternating sum".into()))?;
    Ok(side.powi(n as i32 - 1) * (n as f64).sqrt() / factorial_f64(n - 1) * a)
}

/// Blichfeldt: a convex 0-symmetric body of volume V in rank n holds at most
/// n! V + n integer points.
pub fn blichfeldt_bound(volume: f64, n: u32) -> Result<f64> {
    if volume < 0.0 || !volume.is_finite() {
        return Err(Error::Parameter(format!("volume must be nonnegative, got {volume}")));
    }
    if n == 0 || n > 160 {
        return Err(Error::Parameter(format!("rank {n} unsupported")));
    }
    Ok(factorial_f64(n) * volume + n as f64)
}

/// Signature and regulator feeding the facet bound.
#[derive(Debug, Clone, Copy)]
pub struct FacetBoundInput {
    pub r: usize,
    pub s: usize,
    pub regulator: f64,
}

impl FacetBoundInput {
    pub fn new(r: usize, s: usize, regulator: f64) -> Result<Self> {
        if r + s < 2 {
            return Err(Error::Parameter(format!(
                "facet bound needs r+s >= 2, got r = {r}, s = {s}"
            )));
        }
        if !(regulator > 0.0) || !regulator.is_finite() {
            return Err(Error::Parameter(format!("regulator must be positive, got {regulator}")));
        }
        Ok(Self { r, s, regulator })
    }
}

/// Exponent on the rank factor: 1/2 up to rank 10, then 1.
pub fn rank_exponent(rank: usize) -> f64 {
    if rank <= 10 {
        0.5
    } else {
        1.0
    }
}

/// Facet-count bound evaluation with the three bracket terms broken out.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FacetBoundReport {
    pub r: usize,
    pub s: usize,
    pub regulator: f64,
    pub delta_exponent: f64,
    /// (1/2) (r+s-1)^delta (r+s)^(1 -+ 1/(2(r+s-1))).
    pub term_power: f64,
    /// ((r+s-1)/2) log((r+s+1)/(r+s-1)) / R^(1/(r+s-1)).
    pub term_log_ratio: f64,
    /// log((r+s-1)/2) / R^(1/(r+s-1)).
    pub term_log_half: f64,
    pub bracket: f64,
    pub alternating_sum: f64,
    pub linear_term: f64,
    pub bound: f64,
    pub abstract_exponent: bool,
    /// Set when the regulator sits below Friedman's universal lower bound.
    pub low_regulator_warning: bool,
}

/// Evaluates the facet-count bound
///   2(r+s-1) + 2 * bracket^(r+s-1) * (r+s) * A(r+s).
///
/// `abstract_exponent` switches the power-term exponent from
/// 1 - 1/(2(r+s-1)) to the 1 + 1/(2(r+s-1)) variant.
pub fn facet_bound(input: FacetBoundInput, abstract_exponent: bool) -> Result<FacetBoundReport> {
    let m = (input.r + input.s) as f64;
    let rank = input.r + input.s - 1;
    let rankf = rank as f64;
    let delta = rank_exponent(rank);
    let sign = if abstract_exponent { 1.0 } else { -1.0 };
    let term_power = 0.5 * rankf.powf(delta) * m.powf(1.0 + sign / (2.0 * rankf));
    let r_pow = input.regulator.powf(1.0 / rankf);
    let term_log_ratio = (rankf / 2.0) * ((m + 1.0) / (m - 1.0)).ln() / r_pow;
    let term_log_half = (rankf / 2.0).ln() / r_pow;
    let bracket = term_power + term_log_ratio + term_log_half;
    let a = alternating_sum((input.r + input.s) as u32)
        .to_f64()
        .ok_or_else(|| Error::Overflow("alternating sum".into()))?;
    let linear_term = 2.0 * rankf;
    let bound = linear_term + 2.0 * bracket.powi(rank as i32) * m * a;
    Ok(FacetBoundReport {
        r: input.r,
        s: input.s,
        regulator: input.regulator,
        delta_exponent: delta,
        term_power,
        term_log_ratio,
        term_log_half,
        bracket,
        alternating_sum: a,
        linear_term,
        bound,
        abstract_exponent,
        low_regulator_warning: input.regulator <= REGULATOR_LOWER_BOUND,
    })
}

/// Bound on log(t_K) from the covering radius:
///   (r+s) rho + ((r+s-1)/2) log((r+s+1)/(r+s-1)) + log((r+s-1)/2).
pub fn log_tk_bound(r: usize, s: usize, rho_inf: f64) -> Result<f64> {
    if r + s < 2 {
        return Err(Error::Parameter(format!("log t_K bound needs r+s >= 2, got {}", r + s)));
    }
    if !(rho_inf > 0.0) || !rho_inf.is_finite() {
        return Err(Error::Parameter(format!("covering radius must be positive, got {rho_inf}")));
    }
    let m = (r + s) as f64;
    Ok(m * rho_inf + (m - 1.0) / 2.0 * ((m + 1.0) / (m - 1.0)).ln() + ((m - 1.0) / 2.0).ln())
}

fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 52;
    ((x >> shift).to_f64().unwrap()).ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| (k as f64).ln()).sum()
}

/// A(n) / ((e^(1 + 1/(2e)))^n (n-1)!); evaluated in the log domain past
/// n = 30 to dodge overflow.
pub fn alternating_sum_ratio(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Parameter("ratio needs n >= 2".into()));
    }
    let a = alternating_sum(n);
    if a.is_zero() {
        return Ok(0.0);
    }
    if a.is_negative() {
        return Err(Error::Parameter(format!("alternating sum negative at n = {n}")));
    }
    if n <= 30 {
        let af = a.to_f64().ok_or_else(|| Error::Overflow("alternating sum".into()))?;
        Ok(af / (envelope_rate().exp().powi(n as i32) * factorial_f64(n - 1)))
    } else {
        let ln_a = big_ln(a.numer()) - big_ln(a.denom());
        Ok((ln_a - n as f64 * envelope_rate() - ln_factorial(n - 1)).exp())
    }
}

/// Height bound for the shortest Pisot unit:
///   (1/n) ((gamma/2) (r+s-1)^(delta - 1/(2(r+s-1))) R^(1/(r+s-1)) + (r+s-1) eps).
///
/// gamma = 1 on totally real fields and 2 on totally complex ones; mixed
/// signatures are refused because gamma has no defined value there.
pub fn pisot_height_bound(
    r: usize,
    s: usize,
    regulator: f64,
    gamma: u8,
    epsilon: f64,
) -> Result<f64> {
    if r + s < 2 {
        return Err(Error::Parameter(format!("height bound needs r+s >= 2, got {}", r + s)));
    }
    if r > 0 && s > 0 {
        return Err(Error::MixedSignature { r, s });
    }
    if gamma != 1 && gamma != 2 {
        return Err(Error::Parameter(format!("gamma must be 1 or 2, got {gamma}")));
    }
    if !(regulator > 0.0) || !regulator.is_finite() {
        return Err(Error::Parameter(format!("regulator must be positive, got {regulator}")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let degree = (r + 2 * s) as f64;
    let rankf = (r + s - 1) as f64;
    let delta = rank_exponent(r + s - 1);
    let main = gamma as f64 / 2.0
        * rankf.powf(delta - 1.0 / (2.0 * rankf))
        * regulator.powf(1.0 / rankf);
    Ok((main + rankf * epsilon) / degree)
}
