//! Fundamental units of real quadratic fields by continued fractions.
//!
//! The expansion of sqrt(d) (or (1+sqrt(d))/2 when d = 1 mod 4) is eventually
//! periodic, and the product of the complete quotients over one period is the
//! fundamental unit of the maximal order.  All unit arithmetic is exact
//! integer arithmetic; only the regulator is a float.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Fundamental unit (p + q sqrt(d)) / denom of the ring of integers of
/// Q(sqrt(d)), with denom in {1, 2}.
#[derive(Debug, Clone)]
pub struct PellResult {
    pub d: u64,
    pub p: BigInt,
    pub q: BigInt,
    pub denom: u8,
    /// Field norm of the unit: +1 or -1; p^2 - d q^2 = norm * denom^2 exactly.
    pub norm: i8,
    pub regulator: f64,
}

pub fn is_squarefree(d: u64) -> bool {
    let mut m = d;
    let mut f = 2u64;
    while f * f <= m {
        if m.is_multiple_of(f) {
            m /= f;
            if m.is_multiple_of(f) {
                return false;
            }
        }
        f += 1;
    }
    true
}

fn isqrt(d: u64) -> u64 {
    let mut x = (d as f64).sqrt() as u64;
    while (x + 1) * (x + 1) <= d {
        x += 1;
    }
    while x * x > d {
        x -= 1;
    }
    x
}

/// Natural log of a positive big integer, exact to f64 precision.
fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 52;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.gcd(b).gcd(c)
}

/// Smallest unit > 1 of the ring of integers of Q(sqrt(d)).
pub fn pell_fundamental_unit(d: u64) -> Result<PellResult> {
    if !(2..=1_000_000).contains(&d) {
        return Err(Error::PellRange(d));
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let a0 = isqrt(d);
    // Complete quotients alpha_k = (p_k + sqrt(d)) / q_k.
    let (mut pk, mut qk): (i64, i64) = if d % 4 == 1 { (1, 2) } else { (0, 1) };
    let mut seen: HashMap<(i64, i64), usize> = HashMap::new();
    let mut quotients: Vec<(i64, i64)> = Vec::new();
    let (start, end) = loop {
        if let Some(&j) = seen.get(&(pk, qk)) {
            break (j, quotients.len());
        }
        seen.insert((pk, qk), quotients.len());
        quotients.push((pk, qk));
        debug_assert!(qk > 0);
        let ak = (pk + a0 as i64).div_euclid(qk);
        let pn = ak * qk - pk;
        let qn = (d as i64 - pn * pn) / qk;
        debug_assert_eq!((d as i64 - pn * pn) % qk, 0);
        pk = pn;
        qk = qn;
        if quotients.len() > 4_000_000 {
            return Err(Error::Parameter(format!("continued fraction of sqrt({d}) did not cycle")));
        }
    };

    // Unit = product over one period of (p_k + sqrt(d)) / q_k, carried as
    // (x + y sqrt(d)) / z in exact integers.
    let mut x = BigInt::from(1);
    let mut y = BigInt::from(0);
    let mut z = BigInt::from(1);
    let big_d = BigInt::from(d);
    for &(pk, qk) in &quotients[start..end] {
        let (px, qx) = (BigInt::from(pk), BigInt::from(qk));
        let nx = &x * &px + &y * &big_d;
        let ny = &x + &y * &px;
        x = nx;
        y = ny;
        z *= qx;
        let g = gcd3(&x, &y, &z);
        if !g.is_zero() {
            x /= &g;
            y /= &g;
            z /= &g;
        }
    }
    if z.is_negative() {
        x = -x;
        y = -y;
        z = -z;
    }

    let z_u8 = z
        .to_u8()
        .filter(|&v| v == 1 || v == 2)
        .ok_or_else(|| Error::Parameter(format!("unexpected unit denominator {z} for d = {d}")))?;
    let norm_num = &x * &x - &big_d * &y * &y;
    let denom_sq = BigInt::from((z_u8 as i64) * (z_u8 as i64));
    let norm = if norm_num == denom_sq {
        1i8
    } else if norm_num == -&denom_sq {
        -1i8
    } else {
        return Err(Error::Parameter(format!("unit for d = {d} fails the norm equation")));
    };

    let regulator = if x.bits() < 500 {
        let xf = x.to_f64().unwrap();
        let yf = y.to_f64().unwrap();
        ((xf + yf * (d as f64).sqrt()) / z_u8 as f64).ln()
    } else {
        // eps = (x + y sqrt d)/z with x ~ y sqrt d; the correction to
        // ln(2x/z) is below 2^-900 here.
        big_ln(&x) + std::f64::consts::LN_2 - (z_u8 as f64).ln()
    };

    Ok(PellResult { d, p: x, q: y, denom: z_u8, norm, regulator })
}
