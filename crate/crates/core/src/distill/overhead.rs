use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::binom::ln_big;
use crate::error::{Error, Result};

/// The overhead exponent `γ = log(n/k) / log d`.
///
/// Logarithms are taken of the exact integers, so the result keeps full
/// double precision even when `n` and `k` exceed 2^53.
pub fn gamma(n: impl Into<BigUint>, k: impl Into<BigUint>, d: impl Into<BigUint>) -> Result<f64> {
    let (n, k, d) = (n.into(), k.into(), d.into());
    if k < BigUint::one() {
        return Err(Error::constraint("k >= 1"));
    }
    if n <= k {
        return Err(Error::constraint("n > k"));
    }
    if d < BigUint::from(2u32) {
        return Err(Error::constraint("d >= 2"));
    }
    Ok((ln_big(&n) - ln_big(&k)) / ln_big(&d))
}

/// Per-level error map `ε ↦ A (n ε)^d` of a distillation code that outputs
/// `k` states from `n` inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct OverheadModel {
    pub n: BigUint,
    pub k: BigUint,
    pub d: BigUint,
    /// The prefactor `A`, 1 unless set otherwise.
    pub prefactor: f64,
}

impl OverheadModel {
    pub fn new(n: impl Into<BigUint>, k: impl Into<BigUint>, d: impl Into<BigUint>) -> Result<Self> {
        Self::with_prefactor(n, k, d, 1.0)
    }

    pub fn with_prefactor(
        n: impl Into<BigUint>,
        k: impl Into<BigUint>,
        d: impl Into<BigUint>,
        prefactor: f64,
    ) -> Result<Self> {
        let model = Self {
            n: n.into(),
            k: k.into(),
            d: d.into(),
            prefactor,
        };
        gamma(model.n.clone(), model.k.clone(), model.d.clone())?;
        if !(prefactor > 0.0 && prefactor.is_finite()) {
            return Err(Error::constraint("A > 0"));
        }
        Ok(model)
    }

    pub fn gamma(&self) -> f64 {
        gamma(self.n.clone(), self.k.clone(), self.d.clone()).expect("validated on construction")
    }

    /// `ln ε'` for `ln ε`, in the log domain so deep levels do not underflow.
    pub fn step_ln(&self, ln_eps: f64) -> f64 {
        let d = self.d.to_f64().expect("finite");
        self.prefactor.ln() + d * (ln_big(&self.n) + ln_eps)
    }
}

/// One level of a concatenated protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub z: u32,
    /// Error rate after `z` rounds; may underflow to zero, see `ln_eps`.
    pub eps: f64,
    pub ln_eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcatenationTrace {
    pub levels: Vec<Level>,
    pub z_final: u32,
    /// `n^z` noisy inputs.
    pub input_count: BigUint,
    /// `k^z` outputs.
    pub output_count: BigUint,
    /// `(n/k)^z` as a float.
    pub ratio: f64,
}

impl ConcatenationTrace {
    pub fn final_level(&self) -> Level {
        *self.levels.last().expect("trace has level 0")
    }
}

const MAX_LEVELS: u32 = 256;

/// Concatenates the code until the output error is at most `eps_target`.
pub fn concat_trace(model: &OverheadModel, eps_in: f64, eps_target: f64) -> Result<ConcatenationTrace> {
    if !(eps_in > 0.0 && eps_in < 1.0) {
        return Err(Error::InvalidArgument("0 < eps_in < 1 required".into()));
    }
    if eps_target.is_nan() || eps_target <= 0.0 {
        return Err(Error::InvalidArgument("eps_target > 0 required".into()));
    }
    let ln_target = eps_target.ln();
    let mut levels = vec![Level {
        z: 0,
        eps: eps_in,
        ln_eps: eps_in.ln(),
    }];
    if eps_in > eps_target {
        let first = model.step_ln(eps_in.ln());
        if first >= eps_in.ln() {
            return Err(Error::BelowThreshold(format!(
                "A*(n*eps_in)^d < eps_in fails at eps_in = {eps_in:e}"
            )));
        }
    }
    while levels.last().expect("nonempty").ln_eps > ln_target {
        let last = *levels.last().expect("nonempty");
        if last.z == MAX_LEVELS {
            return Err(Error::InvalidArgument(format!(
                "target not reached within {MAX_LEVELS} levels"
            )));
        }
        let ln_eps = model.step_ln(last.ln_eps);
        levels.push(Level {
            z: last.z + 1,
            eps: ln_eps.exp(),
            ln_eps,
        });
    }
    let z = levels.last().expect("nonempty").z;
    let input_count = model.n.pow(z);
    let output_count = model.k.pow(z);
    let ratio = match (input_count.to_f64(), output_count.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => ((ln_big(&model.n) - ln_big(&model.k)) * z as f64).exp(),
    };
    Ok(ConcatenationTrace {
        levels,
        z_final: z,
        input_count,
        output_count,
        ratio,
    })
}

/// Least-squares slope of `log(input/output ratio)` against
/// `log log(1/ε_out)` over the traces for each target, where `ε_out` is the
/// error rate actually reached. Approaches `γ` as the targets shrink.
pub fn overhead_scaling_exponent(model: &OverheadModel, eps_in: f64, targets: &[f64]) -> Result<f64> {
    if targets.len() < 3 {
        return Err(Error::InvalidArgument("at least 3 targets required".into()));
    }
    if targets.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("targets must be strictly decreasing".into()));
    }
    let ln_nk = ln_big(&model.n) - ln_big(&model.k);
    let mut points = Vec::with_capacity(targets.len());
    for &t in targets {
        let trace = concat_trace(model, eps_in, t)?;
        let out = trace.final_level();
        points.push(((-out.ln_eps).ln(), trace.z_final as f64 * ln_nk));
    }
    Ok(least_squares_slope(&points))
}

/// Slope of the ordinary least-squares line; zero when all abscissae agree.
pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let g = gamma(15u32, 1u32, 3u32).unwrap();
        assert!((g - 15f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!((g - 2.464_973_520_717_927).abs() < 1e-12);
        assert_eq!(gamma(3u32, 1u32, 3u32).unwrap(), 1.0);
        let g = gamma(288_215_893_050_995_568u64, 14_483_100_716_176u64, 21_700u32).unwrap();
        assert!(g < 1.0);
        assert!((g - 0.991_328_557_955_125).abs() < 1e-12);
    }

    #[test]
    fn gamma_rejects_degenerate() {
        assert!(gamma(15u32, 1u32, 1u32).is_err());
        assert!(gamma(3u32, 3u32, 3u32).is_err());
        assert!(gamma(3u32, 0u32, 3u32).is_err());
    }

    #[test]
    fn trace_fifteen_qubit() {
        let model = OverheadModel::new(15u32, 1u32, 3u32).unwrap();
        let t = concat_trace(&model, 1e-3, 1e-12).unwrap();
        assert_eq!(t.z_final, 2);
        assert_eq!(t.input_count, 225u32.into());
        assert_eq!(t.output_count, 1u32.into());
        assert!((t.ratio - 225.0).abs() < 1e-9);
        assert!((t.levels[1].eps - 3.375e-6).abs() < 1e-18);
        assert!((t.levels[2].eps - 1.297_463_378_906_25e-13).abs() < 1e-24);
    }

    #[test]
    fn trace_recurrence_holds_at_every_level() {
        let model = OverheadModel::with_prefactor(26u32, 6u32, 4u32, 2.5).unwrap();
        let t = concat_trace(&model, 1e-3, 1e-200).unwrap();
        for pair in t.levels.windows(2) {
            let want = 2.5 * (26.0 * pair[0].eps).powi(4);
            assert!((pair[1].ln_eps - want.ln()).abs() < 1e-9);
            assert!(pair[1].eps < pair[0].eps);
        }
        assert_eq!(t.input_count, BigUint::from(26u32).pow(t.z_final));
    }

    #[test]
    fn trace_edge_cases() {
        let model = OverheadModel::new(15u32, 1u32, 3u32).unwrap();
        let t = concat_trace(&model, 1e-6, 1e-3).unwrap();
        assert_eq!((t.z_final, t.ratio), (0, 1.0));
        assert!(matches!(concat_trace(&model, 0.2, 1e-9), Err(Error::BelowThreshold(_))));
    }

    #[test]
    fn slope_examples() {
        let model = OverheadModel::new(15u32, 1u32, 3u32).unwrap();
        // every target reached after one level: constant ratio
        let flat = overhead_scaling_exponent(&model, 1e-3, &[1e-4, 1e-5, 5e-6]).unwrap();
        assert_eq!(flat, 0.0);
        assert!(overhead_scaling_exponent(&model, 1e-3, &[1e-4, 1e-5]).is_err());
        assert!(overhead_scaling_exponent(&model, 1e-3, &[1e-4, 1e-5, 1e-5]).is_err());

        let two = OverheadModel::new(2u32, 1u32, 2u32).unwrap();
        let targets: Vec<f64> = (1..=25).map(|i| 10f64.powi(-12 * i)).collect();
        let slope = overhead_scaling_exponent(&two, 1e-3, &targets).unwrap();
        assert!((slope - 1.0).abs() < 0.05, "slope {slope}");
    }
}
