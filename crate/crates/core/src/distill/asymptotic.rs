//! Large-`r` limit of the overhead exponent along `m = 3r + 1`, `w = 3rp`.

use crate::error::{Error, Result};

const SIXTH: f64 = 1.0 / 6.0;
const THIRD: f64 = 1.0 / 3.0;

/// Bracket for the optimizer, just inside `(1/6, 1/3)`.
pub const P_BRACKET: (f64, f64) = (SIXTH + 1e-9, THIRD - 1e-9);

/// Binary entropy `S(p) = -p log₂ p - (1-p) log₂(1-p)`, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::constraint("0 <= p <= 1"));
    }
    let h = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(h(p) + h(1.0 - p))
}

/// `3 (1 - S(p)) / S(3p)` for `1/6 ≤ p < 1/3`.
///
/// The left endpoint is admitted (`S(1/2) = 1`); `p → 1/3` sends `S(3p)` to
/// zero and is rejected.
pub fn asymptotic_gamma(p: f64) -> Result<f64> {
    if !(SIXTH - 1e-15..THIRD).contains(&p) {
        return Err(Error::constraint("1/6 < p < 1/3"));
    }
    let denom = binary_entropy((3.0 * p).min(1.0))?;
    if denom <= 0.0 {
        return Err(Error::constraint("1/6 < p < 1/3"));
    }
    Ok(3.0 * (1.0 - binary_entropy(p)?) / denom)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPoint {
    pub p: f64,
    pub gamma: f64,
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// Minimizes [`asymptotic_gamma`] over `(1/6, 1/3)` to bracket width `tol`.
pub fn optimize_p(tol: f64) -> Result<AsymptoticPoint> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::constraint("tol > 0"));
    }
    let f = |p: f64| asymptotic_gamma(p).unwrap_or(f64::INFINITY);
    let (p, gamma) = golden_section_min(f, P_BRACKET.0, P_BRACKET.1, tol);
    Ok(AsymptoticPoint { p, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // -p log2 p - (1-p) log2 (1-p) evaluated independently
        let p: f64 = 0.270629;
        let direct = -(p * p.ln() + (1.0 - p) * (1.0 - p).ln()) / 2f64.ln();
        assert!((binary_entropy(p).unwrap() - direct).abs() < 1e-15);
        assert!((binary_entropy(p).unwrap() - 0.842_365_764_355_560).abs() < 1e-12);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn asymptotic_examples() {
        assert!((asymptotic_gamma(0.270629).unwrap() - 0.67799).abs() < 1e-5);
        let left = asymptotic_gamma(1.0 / 6.0).unwrap();
        assert!((left - 1.049_932_735).abs() < 1e-8);
        assert!(asymptotic_gamma(1.0 / 3.0).is_err());
        assert!(asymptotic_gamma(0.4).is_err());
        assert!(asymptotic_gamma(0.1).is_err());
    }

    #[test]
    fn optimizer() {
        let best = optimize_p(1e-6).unwrap();
        assert!((best.p - 0.270629).abs() < 1e-5, "{best:?}");
        assert!((best.gamma - 0.67799).abs() < 1e-5);
        let coarse = optimize_p(1e-2).unwrap();
        assert!((coarse.gamma - 0.678).abs() < 1e-3);
        for dp in [-0.05, 0.05] {
            assert!(asymptotic_gamma(best.p + dp).unwrap() > best.gamma);
        }
        assert!(optimize_p(0.0).is_err());
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, fx) = golden_section_min(|x| (x - 0.3).powi(2), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(fx < 1e-16);
    }
}
