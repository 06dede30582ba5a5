//! Exhaustive oracles over Reed-Muller code spaces.

use super::{prm_generator, punctured_len, rm_generator, srm_generator};
use crate::error::{Error, Result};
use crate::gf2::span::fold_span;
use crate::gf2::{BitMatrix, BitVector};

/// Minimum over nonzero `f ∈ RM(r, m)` of the number of points `v` with
/// `f(v) = 1` and `|v| > w`, by enumerating all `2^dim` codewords.
///
/// Any `w < m` is accepted, including `w ≥ m - r` where the minimum is zero.
pub fn min_punctured_weight_brute(r: i32, m: u32, w: i32, budget: u64) -> Result<u64> {
    if r < 0 {
        return Err(Error::constraint("0 <= r"));
    }
    let rm = rm_generator(r, m)?;
    let len = rm.len();
    let dropped = punctured_len(m, w.min(m as i32));
    let kept = BitVector::from_indices(len, dropped..len);
    fold_span(
        rm.generator.rows(),
        len,
        budget,
        || u64::MAX,
        |best, msg, v| {
            if msg == 0 {
                best
            } else {
                best.min(v.overlap(&kept) as u64)
            }
        },
        u64::min,
    )
}

/// True when every vector in the span of `rows` has weight divisible by
/// `modulus`.
pub fn span_weights_divisible(
    rows: &[BitVector],
    len: usize,
    modulus: u64,
    budget: u64,
) -> Result<bool> {
    fold_span(
        rows,
        len,
        budget,
        || true,
        |ok, _, v| ok && (v.weight() as u64).is_multiple_of(modulus),
        |a, b| a && b,
    )
}

/// Exhaustively checks that every codeword of `RM(r, m)` has weight
/// divisible by `2^ν`. Requires `m > ν r`.
pub fn weight_divisibility_check(r: i32, m: u32, nu: u32, budget: u64) -> Result<bool> {
    if nu == 0 {
        return Err(Error::constraint("nu >= 1"));
    }
    if m as i64 <= nu as i64 * r as i64 {
        return Err(Error::constraint("m > nu*r"));
    }
    let rm = rm_generator(r, m)?;
    span_weights_divisible(rm.generator.rows(), rm.len(), 1 << nu, budget)
}

/// Checks `SRM(r,m,w) = PRM(m-r-1,m,w)^⊥ ⊆ PRM(r,m,w)` by orthogonality,
/// rank counting and row-space containment.
///
/// With `w = -1` this is the duality `RM(r,m)^⊥ = RM(m-r-1,m)`.
pub fn duality_check(r: i32, m: u32, w: i32) -> Result<bool> {
    if w < -1 {
        return Err(Error::constraint("-1 <= w"));
    }
    if w >= r {
        return Err(Error::constraint("w < r"));
    }
    if m as i32 - r <= w {
        return Err(Error::constraint("m - r > w"));
    }
    let srm = srm_generator(r, m, w)?.generator;
    let dual = prm_generator(m as i32 - r - 1, m, w)?.generator;
    let prm = prm_generator(r, m, w)?.generator;
    let orthogonal = srm.is_orthogonal_to(&dual)?;
    let ranks = srm.rank() + dual.rank() == srm.ncols();
    let contained = prm.row_space_contains(&srm)?;
    Ok(orthogonal && ranks && contained)
}

/// Minimum nonzero weight over the span of `generator`.
pub(crate) fn min_nonzero_weight(generator: &BitMatrix, budget: u64) -> Result<Option<u64>> {
    let best = fold_span(
        generator.rows(),
        generator.ncols(),
        budget,
        || u64::MAX,
        |best, msg, v| if msg == 0 { best } else { best.min(v.weight() as u64) },
        u64::min,
    )?;
    Ok((best != u64::MAX).then_some(best))
}
