use num_bigint::BigUint;

use super::gamma;
use crate::css::CodeFamilyParams;
use crate::error::{Error, Result};

/// Which `(m, r, w)` triples a scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanConstraint {
    /// Every `m` up to `m_max` admitted by the other constraints.
    General { m_max: u32 },
    /// Only `m = 3r + 1`.
    ThreeRPlusOne,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub m: u32,
    pub r: u32,
    pub w: u32,
    pub nu: u32,
    pub n: BigUint,
    pub k: BigUint,
    pub d: BigUint,
    pub gamma: f64,
    /// `0 ≤ 2w < 2r < m`.
    pub hypothesis: bool,
    /// `m > ν_min r`.
    pub level_ok: bool,
}

/// Enumerates every admissible `(m, r, w)` with `1 ≤ r ≤ r_max` and
/// `m > ν_min r`, returning exact parameters sorted by `γ` ascending.
pub fn scan(r_max: u32, constraint: ScanConstraint, nu_min: u32) -> Result<Vec<ScanRow>> {
    if nu_min == 0 {
        return Err(Error::constraint("nu_min >= 1"));
    }
    let mut rows = Vec::new();
    for r in 1..=r_max {
        let m_range = match constraint {
            ScanConstraint::ThreeRPlusOne => (3 * r + 1)..=(3 * r + 1),
            ScanConstraint::General { m_max } => (2 * r + 1)..=m_max,
        };
        for m in m_range {
            if m as u64 <= nu_min as u64 * r as u64 {
                continue;
            }
            for w in 0..r {
                let p = CodeFamilyParams::new(m as i64, r as i64, w as i64)?;
                let (n, k, d) = (p.n(), p.k(), p.d());
                let gamma = gamma(n.clone(), k.clone(), d.clone())?;
                rows.push(ScanRow {
                    m,
                    r,
                    w,
                    nu: p.nu,
                    n,
                    k,
                    d,
                    gamma,
                    hypothesis: true,
                    level_ok: p.supports_level(nu_min),
                });
            }
        }
    }
    rows.sort_by(|a, b| {
        a.gamma
            .total_cmp(&b.gamma)
            .then((a.m, a.r, a.w).cmp(&(b.m, b.r, b.w)))
    });
    Ok(rows)
}
