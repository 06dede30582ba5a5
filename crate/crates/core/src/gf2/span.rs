//! Exhaustive enumeration of the row span of a generator set.
//!
//! The message space `0..2^k` is cut into chunks. Within a chunk the high
//! message bits are fixed and the low bits are walked in Gray-code order, so
//! every step costs a single row XOR. Chunks run on the rayon pool and their
//! partial results are merged with an order-independent `reduce`.

use rayon::prelude::*;

use super::BitVector;
use crate::error::{Error, Result};

/// Default enumeration budget, 2^22 codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

const CHUNK_BITS: usize = 14;

/// Fails unless `2^log2_count <= budget`.
pub fn check_budget(log2_count: usize, budget: u64) -> Result<()> {
    let fits = log2_count < 64 && (1u64 << log2_count) <= budget;
    if fits {
        Ok(())
    } else {
        Err(Error::BudgetExceeded {
            log2_count: log2_count as u32,
            budget,
        })
    }
}

/// Visits every element `Σ_{i: bit i of msg} rows[i]` of the span, including
/// zero, and folds the visits per chunk before reducing across chunks.
///
/// `visit` receives the accumulator, the message bits and the vector.
pub fn fold_span<T, I, V, R>(
    rows: &[BitVector],
    len: usize,
    budget: u64,
    identity: I,
    visit: V,
    reduce: R,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(T, u64, &BitVector) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let k = rows.len();
    check_budget(k, budget)?;
    debug_assert!(rows.iter().all(|r| r.len() == len));
    let low = k.min(CHUNK_BITS);
    let chunks = 1u64 << (k - low);
    let result = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut v = BitVector::zeros(len);
            for (j, row) in rows[low..].iter().enumerate() {
                if chunk >> j & 1 == 1 {
                    v.xor_assign(row);
                }
            }
            let high = chunk << low;
            let mut acc = visit(identity(), high, &v);
            let mut gray = 0u64;
            for step in 1u64..(1u64 << low) {
                let bit = step.trailing_zeros() as usize;
                gray ^= 1 << bit;
                v.xor_assign(&rows[bit]);
                acc = visit(acc, high | gray, &v);
            }
            acc
        })
        .reduce(&identity, &reduce);
    Ok(result)
}

/// Histogram of Hamming weights over the span, split by whether the message
/// bits at positions `>= split` are all zero. Returns `(inside, outside)`
/// where `inside[w]` counts vectors of weight `w` whose high message bits are
/// zero.
pub fn weight_histogram_split(
    rows: &[BitVector],
    len: usize,
    split: usize,
    budget: u64,
) -> Result<(Vec<u64>, Vec<u64>)> {
    fold_span(
        rows,
        len,
        budget,
        || (vec![0u64; len + 1], vec![0u64; len + 1]),
        |(mut a, mut b), msg, v| {
            if msg >> split == 0 {
                a[v.weight()] += 1;
            } else {
                b[v.weight()] += 1;
            }
            (a, b)
        },
        |(mut a, mut b), (c, d)| {
            a.iter_mut().zip(c).for_each(|(x, y)| *x += y);
            b.iter_mut().zip(d).for_each(|(x, y)| *x += y);
            (a, b)
        },
    )
}
