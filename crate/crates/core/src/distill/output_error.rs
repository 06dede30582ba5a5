//! Output error of one round of detect-and-postselect distillation under
//! iid Z errors on the input magic states.
//!
//! A Z error pattern `e` passes the X-stabilizer measurements iff `e` lies in
//! `PRM(m-r-1, m, w)`; it leaves the output intact iff `e` is itself a Z
//! stabilizer, i.e. lies in `SRM(m-r-1, m, w)`.

use rand::Rng;
use rayon::prelude::*;

use crate::css::CssCode;
use crate::error::{Error, Result};
use crate::gf2::span::weight_histogram_split;
use crate::gf2::BitVector;
use crate::trial_rng;

/// Weight enumerators of the Z stabilizer group and of the nontrivial Z
/// logical classes, indexed by Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerators {
    pub stabilizer: Vec<u64>,
    pub logical: Vec<u64>,
}

pub fn z_weight_enumerators(code: &CssCode, budget: u64) -> Result<WeightEnumerators> {
    let rows = code.z_stabilizers.stack(&code.logical_z)?;
    let (stabilizer, logical) =
        weight_histogram_split(rows.rows(), code.n(), code.z_stabilizers.nrows(), budget)?;
    Ok(WeightEnumerators { stabilizer, logical })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputError {
    /// Probability that every stabilizer measurement passes.
    pub p_accept: f64,
    /// Probability that an accepted block carries a logical error.
    pub eps_block: f64,
}

fn check_eps(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::constraint("0 <= eps <= 1"))
    }
}

/// Exact acceptance probability and block error from the weight enumerators.
pub fn exact_output_error(code: &CssCode, eps: f64, budget: u64) -> Result<OutputError> {
    check_eps(eps)?;
    let en = z_weight_enumerators(code, budget)?;
    Ok(output_error_from_enumerators(&en, code.n(), eps))
}

/// Evaluates the enumerators at `eps`; reuse it for sweeps over `eps`.
pub fn output_error_from_enumerators(en: &WeightEnumerators, n: usize, eps: f64) -> OutputError {
    let prob = |w: usize| eps.powi(w as i32) * (1.0 - eps).powi((n - w) as i32);
    let sum = |hist: &[u64]| -> f64 {
        hist.iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| c as f64 * prob(w))
            .sum()
    };
    let good = sum(&en.stabilizer);
    let bad = sum(&en.logical);
    let p_accept = good + bad;
    OutputError {
        p_accept,
        eps_block: if p_accept > 0.0 { bad / p_accept } else { 0.0 },
    }
}

/// Monte Carlo counts with binomial standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub trials: u64,
    pub accepted: u64,
    pub logical_errors: u64,
    pub p_accept: f64,
    pub p_accept_sigma: f64,
    pub eps_block: f64,
    pub eps_block_sigma: f64,
    pub seed: u64,
}

/// Samples iid Z error patterns, rejects those with a nontrivial X syndrome
/// and counts accepted patterns that anticommute with some logical X.
///
/// Trial `t` draws from its own stream derived from `(seed, t)`, so the
/// result is identical for any thread count.
pub fn mc_output_error(code: &CssCode, eps: f64, trials: u64, seed: u64) -> Result<McEstimate> {
    check_eps(eps)?;
    if trials == 0 {
        return Err(Error::constraint("trials >= 1"));
    }
    let n = code.n();
    let (accepted, logical_errors) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut e = BitVector::zeros(n);
            for i in 0..n {
                if rng.gen_bool(eps) {
                    e.set(i, true);
                }
            }
            let rejected = code.x_stabilizers.rows().iter().any(|s| s.dot(&e));
            if rejected {
                (0u64, 0u64)
            } else {
                let flipped = code.logical_x.rows().iter().any(|l| l.dot(&e));
                (1, flipped as u64)
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let p_accept = accepted as f64 / trials as f64;
    let p_accept_sigma = (p_accept * (1.0 - p_accept) / trials as f64).sqrt();
    let (eps_block, eps_block_sigma) = if accepted > 0 {
        let q = logical_errors as f64 / accepted as f64;
        (q, (q * (1.0 - q) / accepted as f64).sqrt())
    } else {
        (0.0, 0.0)
    };
    Ok(McEstimate {
        trials,
        accepted,
        logical_errors,
        p_accept,
        p_accept_sigma,
        eps_block,
        eps_block_sigma,
        seed,
    })
}
