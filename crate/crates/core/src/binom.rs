//! Exact partial sums of binomial coefficients.
//!
//! `binom(m, ≤t) = Σ_{i=0}^{t} C(m,i)` and `binom(m, >t) = Σ_{i=t+1}^{m} C(m,i)`
//! give the code lengths and dimensions of the whole family. The 128-bit
//! routines report overflow instead of wrapping; the `_big` variants never
//! overflow and [`binom_sum_le_wide`] picks whichever is needed.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Iterator over `C(m, 0), C(m, 1), …, C(m, m)` in 128-bit arithmetic,
/// yielding `None` from the first coefficient that overflows.
fn binomials_u128(m: u32) -> impl Iterator<Item = Option<u128>> {
    let mut c = Some(1u128);
    (0..=m).map(move |i| {
        let cur = c;
        c = cur.and_then(|c| {
            if i == m {
                return Some(0);
            }
            // C(m,i+1) = C(m,i) (m-i)/(i+1), reduced so the product stays exact
            let num = (m - i) as u128;
            let den = (i + 1) as u128;
            let g = gcd(c, den);
            (c / g).checked_mul(num / (den / g))
        });
        cur
    })
}

/// `C(m, i)` exactly in 128 bits.
pub fn binomial(m: u32, i: u32) -> Result<u128> {
    if i > m {
        return Ok(0);
    }
    let i = i.min(m - i);
    binomials_u128(m)
        .nth(i as usize)
        .flatten()
        .ok_or_else(|| Error::Overflow {
            what: format!("C({m},{i})"),
        })
}

/// `Σ_{i=0}^{min(t,m)} C(m,i)`; zero for `t < 0`.
pub fn binom_sum_le(m: u32, t: i64) -> Result<u128> {
    if t < 0 {
        return Ok(0);
    }
    let top = t.min(m as i64) as u32;
    let overflow = || Error::Overflow {
        what: format!("binom({m}, <= {t})"),
    };
    binomials_u128(m)
        .take(top as usize + 1)
        .try_fold(0u128, |acc, c| acc.checked_add(c?))
        .ok_or_else(overflow)
}

/// `Σ_{i=t+1}^{m} C(m,i)`; equals `2^m` for `t < 0`.
pub fn binom_sum_gt(m: u32, t: i64) -> Result<u128> {
    let first = (t + 1).max(0);
    if first > m as i64 {
        return Ok(0);
    }
    let overflow = || Error::Overflow {
        what: format!("binom({m}, > {t})"),
    };
    // C(m,i) = C(m,m-i): sum the mirrored head so large middle terms are
    // only touched when they belong to the sum.
    binomials_u128(m)
        .take((m as i64 - first) as usize + 1)
        .try_fold(0u128, |acc, c| acc.checked_add(c?))
        .ok_or_else(overflow)
}

fn binomials_big(m: u32) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(m as usize + 1);
    let mut c = BigUint::one();
    for i in 0..=m {
        out.push(c.clone());
        if i < m {
            c = c * (m - i) / (i + 1);
        }
    }
    out
}

pub fn binom_sum_le_big(m: u32, t: i64) -> BigUint {
    if t < 0 {
        return BigUint::zero();
    }
    let top = t.min(m as i64) as usize;
    binomials_big(m).into_iter().take(top + 1).sum()
}

pub fn binom_sum_gt_big(m: u32, t: i64) -> BigUint {
    let first = (t + 1).max(0);
    if first > m as i64 {
        return BigUint::zero();
    }
    binomials_big(m).into_iter().skip(first as usize).sum()
}

/// 128-bit fast path with automatic promotion to arbitrary precision.
pub fn binom_sum_le_wide(m: u32, t: i64) -> BigUint {
    binom_sum_le(m, t).map_or_else(|_| binom_sum_le_big(m, t), BigUint::from)
}

pub fn binom_sum_gt_wide(m: u32, t: i64) -> BigUint {
    binom_sum_gt(m, t).map_or_else(|_| binom_sum_gt_big(m, t), BigUint::from)
}

/// Natural logarithm of a nonnegative big integer, accurate to a few ulps.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        let v: u64 = x.try_into().expect("fits in 64 bits");
        return (v as f64).ln();
    }
    let shift = bits - 64;
    let top: u64 = (x >> shift).try_into().expect("top 64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
