//! Punctured quantum Reed-Muller codes and magic state distillation overhead.
//!
//! The crate is organized bottom-up:
//!
//! * [`gf2`]: packed vectors and matrices over GF(2), Gauss-Jordan elimination
//!   with a column priority, kernels and exhaustive span enumeration.
//! * [`binom`]: exact partial binomial sums with big-integer promotion.
//! * [`rm`]: Reed-Muller generators in a weight-sorted coordinate order, their
//!   punctured and shortened variants, and brute-force weight oracles.
//! * [`css`]: the quantum code built from two shortened Reed-Muller codes,
//!   its paired logical bases, distance and transversal-gate checks.
//! * [`distill`]: the overhead exponent `γ = log(n/k)/log d`, concatenation
//!   traces, postselected output error, the large-`r` exponent and a scanner
//!   over the parameter space.
//!
//! ```
//! use prm::css::{build_code, distance_brute};
//! use prm::gf2::span::DEFAULT_BUDGET;
//!
//! let code = build_code(4, 1, 0)?;
//! assert_eq!((code.n(), code.k()), (15, 1));
//! assert_eq!(distance_brute(&code, DEFAULT_BUDGET)?.min(), 3);
//! # Ok::<(), prm::Error>(())
//! ```

pub mod binom;
pub mod css;
pub mod distill;
pub mod error;
pub mod gf2;
pub mod rm;

pub use error::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random stream for trial `index` under `seed`, so sampled
/// results do not depend on how trials are scheduled across threads.
pub(crate) fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/gf2.md")]
    mod gf2 {}
    #[doc = include_str!("../../../book/src/reed-muller.md")]
    mod reed_muller {}
    #[doc = include_str!("../../../book/src/css-code.md")]
    mod css_code {}
    #[doc = include_str!("../../../book/src/distillation.md")]
    mod distillation {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    mod asymptotics {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
