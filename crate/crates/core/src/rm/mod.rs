//! Reed-Muller codes and their punctured and shortened variants.
//!
//! Every code here lives on the points of `F₂^m` listed in the canonical
//! [`CoordinateOrder`]: by Hamming weight, then by integer value with `x₁` as
//! the least significant bit. Puncturing the points with `|v| ≤ w` is then a
//! drop of the first `binom(m, ≤w)` coordinates.

mod oracle;

pub(crate) use oracle::min_nonzero_weight;
pub use oracle::{
    duality_check, min_punctured_weight_brute, span_weights_divisible, weight_divisibility_check,
};

use crate::binom;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest `m` for which generator matrices are materialized.
pub const MAX_MATERIALIZED_M: u32 = 20;

/// The points of `F₂^m`, sorted by Hamming weight and then by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateOrder {
    m: u32,
    points: Vec<u64>,
}

impl CoordinateOrder {
    pub fn new(m: u32) -> Result<Self> {
        if m > MAX_MATERIALIZED_M {
            return Err(Error::constraint(format!(
                "m <= {MAX_MATERIALIZED_M} (materialized coordinates)"
            )));
        }
        let mut points: Vec<u64> = (0..1u64 << m).collect();
        points.sort_by_key(|&v| (v.count_ones(), v));
        Ok(Self { m, points })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    /// Number of leading points with `|v| ≤ w`.
    pub fn punctured_count(&self, w: i32) -> usize {
        self.points
            .partition_point(|&v| (v.count_ones() as i64) <= w as i64)
    }
}

/// Degree bound, variable count and puncture threshold of one code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RmSpec {
    pub r: i32,
    pub m: u32,
    pub w: i32,
}

impl RmSpec {
    pub fn new(r: i32, m: u32, w: i32) -> Result<Self> {
        if r < -1 {
            return Err(Error::constraint("-1 <= r"));
        }
        if r > m as i32 {
            return Err(Error::constraint("r <= m"));
        }
        if w >= m as i32 {
            return Err(Error::constraint("w < m"));
        }
        Ok(Self { r, m, w })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    /// Full Reed-Muller code `RM(r,m)`.
    Rm,
    /// Punctured `PRM(r,m,w)`: coordinates with `|v| ≤ w` forgotten.
    Prm,
    /// Shortened `SRM(r,m,w)`: polynomials vanishing on `|v| ≤ w`, reported
    /// on the remaining coordinates.
    Srm,
}

/// A binary linear code with a full-rank generator matrix and the points of
/// `F₂^m` its coordinates correspond to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    pub spec: RmSpec,
    pub kind: CodeKind,
    pub generator: BitMatrix,
    pub coordinates: Vec<u64>,
}

impl LinearCode {
    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    pub fn len(&self) -> usize {
        self.generator.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Monomials `Π_{i∈S} x_i` with `|S| ≤ r` as bit masks, by degree and then
/// lexicographically by sorted index list.
pub fn monomials(r: i32, m: u32) -> Vec<u64> {
    fn extend(start: u32, m: u32, left: u32, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..m {
            extend(i + 1, m, left - 1, mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    for deg in 0..=r.min(m as i32) {
        if deg >= 0 {
            extend(0, m, deg as u32, 0, &mut out);
        }
    }
    out
}

/// Evaluation vector of a monomial mask over the given points.
pub fn evaluate_monomial(mask: u64, points: &[u64]) -> BitVector {
    points.iter().map(|&v| v & mask == mask).collect()
}

/// Number of coordinates removed by puncturing at threshold `w`.
pub fn punctured_len(m: u32, w: i32) -> usize {
    binom::binom_sum_le(m, w as i64).expect("m is small enough to materialize") as usize
}

/// Generator of `RM(r, m)`: one row per monomial of degree at most `r`,
/// columns in [`CoordinateOrder`]. `r = -1` gives the zero code.
pub fn rm_generator(r: i32, m: u32) -> Result<LinearCode> {
    let spec = RmSpec::new(r, m, -1)?;
    let order = CoordinateOrder::new(m)?;
    let rows = monomials(r, m)
        .into_iter()
        .map(|mask| evaluate_monomial(mask, order.points()))
        .collect();
    let generator = BitMatrix::from_rows(rows, order.points().len())?;
    Ok(LinearCode {
        spec,
        kind: CodeKind::Rm,
        generator,
        coordinates: order.points,
    })
}

/// Generator of `PRM(r, m, w)`: `RM(r, m)` with the points `|v| ≤ w` dropped.
///
/// Requires `m - r > w`, where no nonzero polynomial of degree `≤ r` is
/// supported on the dropped points and the rows stay independent.
pub fn prm_generator(r: i32, m: u32, w: i32) -> Result<LinearCode> {
    if r >= 0 && m as i32 - r <= w {
        return Err(Error::constraint("m - r > w"));
    }
    let rm = rm_generator(r, m)?;
    let spec = RmSpec::new(r, m, w)?;
    let dropped = punctured_len(m, w);
    Ok(LinearCode {
        spec,
        kind: CodeKind::Prm,
        generator: rm.generator.drop_leading_columns(dropped),
        coordinates: rm.coordinates[dropped..].to_vec(),
    })
}

/// Splits `RM(r, m)` into the block form `[I G_T; 0 G_0]` on the first
/// `dropped` coordinates by elimination with the natural priority.
///
/// Returns the full-length echelon rows and the number of rows whose pivot
/// falls among the dropped coordinates.
pub(crate) fn block_echelon(r: i32, m: u32, dropped: usize) -> Result<(BitMatrix, usize)> {
    let rm = rm_generator(r, m)?;
    let e = rm.generator.rref();
    let top = e.pivots.partition_point(|&p| p < dropped);
    Ok((e.matrix, top))
}

/// Generator of `SRM(r, m, w)`: the polynomials of degree `≤ r` vanishing on
/// every point with `|v| ≤ w`, reported on the remaining points.
pub fn srm_generator(r: i32, m: u32, w: i32) -> Result<LinearCode> {
    let spec = RmSpec::new(r, m, w)?;
    let dropped = punctured_len(m, w);
    let (echelon, top) = block_echelon(r, m, dropped)?;
    let bottom = echelon.select_rows(top..echelon.nrows());
    if let Some(bad) = bottom
        .rows()
        .iter()
        .position(|row| row.slice(0..dropped).weight() != 0)
    {
        return Err(Error::Construction(format!(
            "shortened row {bad} does not vanish on punctured coordinates"
        )));
    }
    let order = CoordinateOrder::new(m)?;
    Ok(LinearCode {
        spec,
        kind: CodeKind::Srm,
        generator: bottom.drop_leading_columns(dropped),
        coordinates: order.points[dropped..].to_vec(),
    })
}
