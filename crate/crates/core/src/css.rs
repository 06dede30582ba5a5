//! The punctured quantum Reed-Muller CSS code.
//!
//! For `0 ≤ 2w < 2r < m` the X stabilizers span `SRM(r, m, w)` and the Z
//! stabilizers span `SRM(m-r-1, m, w)`. Logical operators come from the block
//! form `[I_k G_T; 0 G_0]` of `RM(r, m)` (X side) and `RM(m-r-1, m)` (Z side)
//! with the punctured coordinates first: row `i` of `G_T` is logical X on
//! qubit `i`, row `i` of `G_T'` is the paired logical Z. Duality of the two
//! Reed-Muller codes gives `G_T · G_T'ᵀ = I_k`.

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;

use crate::binom::{binom_sum_gt_wide, binom_sum_le_wide};
use crate::distill::gamma;
use crate::error::{Error, Result};
use crate::gf2::span::{check_budget, fold_span};
use crate::gf2::{BitMatrix, BitVector};
use crate::rm::{block_echelon, punctured_len};
use crate::trial_rng;

/// Exhaustive checks run up to this many enumerated elements; larger
/// transversality checks fall back to sampling.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 24;

pub const DEFAULT_TRIALS: u64 = 1_000_000;

/// One member `(m, r, w)` of the code family and its Clifford level `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeFamilyParams {
    pub m: u32,
    pub r: u32,
    pub w: u32,
    /// Largest `ν` with `m > ν r`.
    pub nu: u32,
}

impl CodeFamilyParams {
    /// Validates `0 ≤ 2w < 2r < m`, naming the first violated inequality.
    pub fn new(m: i64, r: i64, w: i64) -> Result<Self> {
        if w < 0 {
            return Err(Error::constraint("0 <= 2w"));
        }
        if w >= r {
            return Err(Error::constraint("2w < 2r"));
        }
        if 2 * r >= m {
            return Err(Error::constraint("2r < m"));
        }
        if m > 4096 {
            return Err(Error::constraint("m <= 4096"));
        }
        let (m, r, w) = (m as u32, r as u32, w as u32);
        Ok(Self {
            m,
            r,
            w,
            nu: (m - 1) / r,
        })
    }

    /// True when `m > ν r`, i.e. the transversal phase gate at level `ν` is
    /// expected to be logical.
    pub fn supports_level(&self, nu: u32) -> bool {
        self.m as u64 > nu as u64 * self.r as u64
    }

    pub fn n(&self) -> BigUint {
        binom_sum_gt_wide(self.m, self.w as i64)
    }

    pub fn k(&self) -> BigUint {
        binom_sum_le_wide(self.m, self.w as i64)
    }

    pub fn d(&self) -> BigUint {
        binom_sum_gt_wide(self.r + 1, self.w as i64)
    }

    /// Weight of the lightest nontrivial X logical, `binom(m-r, >w)`.
    pub fn d_x(&self) -> BigUint {
        binom_sum_gt_wide(self.m - self.r, self.w as i64)
    }
}

/// `[[n, k, d]]`, the Clifford level and the overhead exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeParams {
    pub n: BigUint,
    pub k: BigUint,
    pub d: BigUint,
    pub nu: u32,
    pub gamma: f64,
}

/// Code parameters from the closed-form binomial sums.
pub fn params_formula(m: i64, r: i64, w: i64) -> Result<CodeParams> {
    let p = CodeFamilyParams::new(m, r, w)?;
    let (n, k, d) = (p.n(), p.k(), p.d());
    let gamma = gamma(n.clone(), k.clone(), d.clone())?;
    Ok(CodeParams {
        n,
        k,
        d,
        nu: p.nu,
        gamma,
    })
}

/// A constructed code with explicit stabilizer generators and paired
/// logical bases, all on the `n` unpunctured coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    pub params: CodeFamilyParams,
    pub x_stabilizers: BitMatrix,
    pub z_stabilizers: BitMatrix,
    pub logical_x: BitMatrix,
    pub logical_z: BitMatrix,
}

impl CssCode {
    /// Assembles a code from parts, checking shapes only.
    pub fn from_parts(
        params: CodeFamilyParams,
        x_stabilizers: BitMatrix,
        z_stabilizers: BitMatrix,
        logical_x: BitMatrix,
        logical_z: BitMatrix,
    ) -> Result<Self> {
        let n = punctured_len_total(&params)?;
        let k = punctured_len(params.m, params.w as i32);
        for (name, mat) in [
            ("x_stabilizers", &x_stabilizers),
            ("z_stabilizers", &z_stabilizers),
            ("logical_x", &logical_x),
            ("logical_z", &logical_z),
        ] {
            if mat.ncols() != n {
                return Err(Error::InvalidArgument(format!(
                    "{name} has {} columns, expected n = {n}",
                    mat.ncols()
                )));
            }
        }
        if logical_x.nrows() != k || logical_z.nrows() != k {
            return Err(Error::InvalidArgument(format!(
                "expected k = {k} logical pairs, found {} X and {} Z",
                logical_x.nrows(),
                logical_z.nrows()
            )));
        }
        Ok(Self {
            params,
            x_stabilizers,
            z_stabilizers,
            logical_x,
            logical_z,
        })
    }

    pub fn n(&self) -> usize {
        self.x_stabilizers.ncols()
    }

    pub fn k(&self) -> usize {
        self.logical_x.nrows()
    }

    /// Rows of `[G_T; G_0]` on all `2^m` points: logical X row `i` gets the
    /// unit vector `e_i` on the punctured block, X stabilizers get zeros.
    pub fn full_x_rows(&self) -> Vec<BitVector> {
        let k = self.k();
        let lx = self
            .logical_x
            .rows()
            .iter()
            .enumerate()
            .map(|(i, row)| BitVector::unit(k, i).concat(row));
        let zero = BitVector::zeros(k);
        let xs = self.x_stabilizers.rows().iter().map(|row| zero.concat(row));
        lx.chain(xs).collect()
    }
}

fn punctured_len_total(p: &CodeFamilyParams) -> Result<usize> {
    if p.m > crate::rm::MAX_MATERIALIZED_M {
        return Err(Error::constraint(format!(
            "m <= {} (materialized codes)",
            crate::rm::MAX_MATERIALIZED_M
        )));
    }
    Ok((1usize << p.m) - punctured_len(p.m, p.w as i32))
}

/// Splits `RM(degree, m)` into logical rows `G_T` and stabilizer rows `G_0`,
/// both restricted to the unpunctured coordinates.
fn split_logicals(degree: i32, m: u32, k: usize) -> Result<(BitMatrix, BitMatrix)> {
    let (echelon, top) = block_echelon(degree, m, k)?;
    if top != k {
        return Err(Error::Construction(format!(
            "RM({degree},{m}) has {top} pivots among the {k} punctured coordinates"
        )));
    }
    let logical = echelon.select_rows(0..k).drop_leading_columns(k);
    let stabilizers = echelon
        .select_rows(k..echelon.nrows())
        .drop_leading_columns(k);
    Ok((logical, stabilizers))
}

/// Builds the `[[binom(m,>w), binom(m,≤w), binom(r+1,>w)]]` code and verifies
/// the commutation relations before returning it.
pub fn build_code(m: i64, r: i64, w: i64) -> Result<CssCode> {
    let params = CodeFamilyParams::new(m, r, w)?;
    punctured_len_total(&params)?;
    let k = punctured_len(params.m, params.w as i32);
    let (logical_x, x_stabilizers) = split_logicals(params.r as i32, params.m, k)?;
    let (logical_z, z_stabilizers) =
        split_logicals((params.m - params.r - 1) as i32, params.m, k)?;
    let code = CssCode::from_parts(params, x_stabilizers, z_stabilizers, logical_x, logical_z)?;
    if !commutation_check(&code) {
        return Err(Error::Construction(
            "logical pairing G_T G_T'ᵀ is not the identity".into(),
        ));
    }
    Ok(code)
}

/// Checks the CSS condition, that logicals commute with the opposite
/// stabilizers, and the pairing `logical_x[i] · logical_z[j] = δ_ij`.
pub fn commutation_check(code: &CssCode) -> bool {
    let orth = |a: &BitMatrix, b: &BitMatrix| a.is_orthogonal_to(b).unwrap_or(false);
    let pairing = code
        .logical_x
        .mul_transpose(&code.logical_z)
        .is_ok_and(|g| g == BitMatrix::identity(code.k()));
    orth(&code.x_stabilizers, &code.z_stabilizers)
        && orth(&code.logical_x, &code.z_stabilizers)
        && orth(&code.logical_z, &code.x_stabilizers)
        && pairing
}

/// Minimum weights of nontrivial logical operators on each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distances {
    /// Lightest element of `PRM(m-r-1,m,w) \ SRM(m-r-1,m,w)`.
    pub z: u64,
    /// Lightest element of `PRM(r,m,w) \ SRM(r,m,w)`.
    pub x: u64,
}

impl Distances {
    pub fn min(&self) -> u64 {
        self.z.min(self.x)
    }
}

fn min_logical_weight(stabilizers: &BitMatrix, logicals: &BitMatrix, budget: u64) -> Result<u64> {
    let split = stabilizers.nrows();
    let rows = stabilizers.stack(logicals)?;
    fold_span(
        rows.rows(),
        rows.ncols(),
        budget,
        || u64::MAX,
        |best, msg, v| {
            if msg >> split == 0 {
                best
            } else {
                best.min(v.weight() as u64)
            }
        },
        u64::min,
    )
}

/// Exhaustive minimum weight of nontrivial Z and X logical operators.
pub fn distance_brute(code: &CssCode, budget: u64) -> Result<Distances> {
    Ok(Distances {
        z: min_logical_weight(&code.z_stabilizers, &code.logical_z, budget)?,
        x: min_logical_weight(&code.x_stabilizers, &code.logical_x, budget)?,
    })
}

/// Minimum nonzero weight over both stabilizer groups.
pub fn min_stabilizer_weight(code: &CssCode, budget: u64) -> Result<Option<u64>> {
    use crate::rm::min_nonzero_weight;
    let x = min_nonzero_weight(&code.x_stabilizers, budget)?;
    let z = min_nonzero_weight(&code.z_stabilizers, budget)?;
    Ok(match (x, z) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    })
}

/// How a check covered its search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive { count: u64 },
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub violations: u64,
    pub mode: CheckMode,
}

/// Limits for checks that may fall back to sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub exhaustive_limit: u64,
    /// Sampling trials when the exhaustive limit is exceeded; zero refuses.
    pub trials: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            exhaustive_limit: EXHAUSTIVE_LIMIT,
            trials: DEFAULT_TRIALS,
            seed: 0,
        }
    }
}

/// Checks that the transversal `diag(1, e^{2πi/2^ν})` acts as the inverse
/// phase on every logical qubit: for every subset `S` of logical indices and
/// every X stabilizer `s`,
/// `|Σ_{i∈S} logical_x[i] + s| + |S| ≡ 0 (mod 2^ν)`.
///
/// Requires `m > ν r`; see [`transversal_phase_check_forced`] for negative
/// controls.
pub fn transversal_phase_check(code: &CssCode, nu: u32, budget: SearchBudget) -> Result<CheckOutcome> {
    if !code.params.supports_level(nu) {
        return Err(Error::constraint("m > nu*r"));
    }
    transversal_phase_check_forced(code, nu, budget)
}

/// [`transversal_phase_check`] without the `m > ν r` guard.
pub fn transversal_phase_check_forced(
    code: &CssCode,
    nu: u32,
    budget: SearchBudget,
) -> Result<CheckOutcome> {
    if nu == 0 || nu >= 64 {
        return Err(Error::constraint("1 <= nu < 64"));
    }
    let modulus = 1u64 << nu;
    let nx = code.x_stabilizers.nrows();
    let dim = nx + code.k();
    let exhaustive = dim < 64 && (1u64 << dim) <= budget.exhaustive_limit;
    if exhaustive {
        let rows = code.x_stabilizers.stack(&code.logical_x)?;
        let violations = fold_span(
            rows.rows(),
            code.n(),
            budget.exhaustive_limit,
            || 0u64,
            |bad, msg, v| {
                let s = (msg >> nx).count_ones() as u64;
                bad + !(v.weight() as u64 + s).is_multiple_of(modulus) as u64
            },
            |a, b| a + b,
        )?;
        return Ok(CheckOutcome {
            passed: violations == 0,
            violations,
            mode: CheckMode::Exhaustive { count: 1 << dim },
        });
    }
    if budget.trials == 0 {
        check_budget(dim, budget.exhaustive_limit)?;
    }
    let violations: u64 = (0..budget.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(budget.seed, t);
            let mut v = BitVector::zeros(code.n());
            for row in code.x_stabilizers.rows() {
                if rng.gen::<bool>() {
                    v.xor_assign(row);
                }
            }
            let mut s = 0u64;
            for row in code.logical_x.rows() {
                if rng.gen::<bool>() {
                    v.xor_assign(row);
                    s += 1;
                }
            }
            !(v.weight() as u64 + s).is_multiple_of(modulus) as u64
        })
        .sum();
    Ok(CheckOutcome {
        passed: violations == 0,
        violations,
        mode: CheckMode::Sampled {
            trials: budget.trials,
            seed: budget.seed,
        },
    })
}

/// Every `ℓ`-subset (`2 ≤ ℓ ≤ ℓ_max`) of the rows of `[G_T; G_0]`, taken as
/// full-length codewords, has common support divisible by `2^{ν-ℓ+1}`.
pub fn overlap_divisibility_check(code: &CssCode, nu: u32, l_max: u32, budget: u64) -> Result<bool> {
    if l_max < 2 {
        return Err(Error::constraint("2 <= l_max"));
    }
    if l_max > nu {
        return Err(Error::constraint("l_max <= nu"));
    }
    let rows = code.full_x_rows();
    let subsets: u128 = (2..=l_max)
        .map(|l| crate::binom::binomial(rows.len() as u32, l).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if subsets > budget as u128 {
        let log2 = 128 - subsets.leading_zeros() - u32::from(subsets.is_power_of_two());
        return Err(Error::BudgetExceeded {
            log2_count: log2,
            budget,
        });
    }

    fn descend(rows: &[BitVector], start: usize, depth: u32, acc: &BitVector, nu: u32, l_max: u32) -> bool {
        for j in start..rows.len() {
            let common = acc.and(&rows[j]);
            let l = depth + 1;
            if l >= 2 {
                let modulus = 1u64 << (nu - l + 1);
                if !(common.weight() as u64).is_multiple_of(modulus) {
                    return false;
                }
            }
            if l < l_max && !descend(rows, j + 1, l, &common, nu, l_max) {
                return false;
            }
        }
        true
    }

    let all = BitVector::ones(rows.first().map_or(0, BitVector::len));
    Ok((0..rows.len()).into_par_iter().all(|i| {
        let first = all.and(&rows[i]);
        descend(&rows, i + 1, 1, &first, nu, l_max)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::span::DEFAULT_BUDGET;

    #[test]
    fn params_examples() {
        let p = params_formula(4, 1, 0).unwrap();
        assert_eq!((p.n, p.k, p.d, p.nu), (15u32.into(), 1u32.into(), 3u32.into(), 3));
        let p = params_formula(5, 2, 1).unwrap();
        assert_eq!((p.n, p.k, p.d, p.nu), (26u32.into(), 6u32.into(), 4u32.into(), 2));
        let p = params_formula(58, 19, 14).unwrap();
        assert_eq!(p.n, 288_215_893_050_995_568u64.into());
        assert_eq!(p.k, 14_483_100_716_176u64.into());
        assert_eq!(p.d, 21_700u32.into());
        assert_eq!(p.nu, 3);
        assert!(p.gamma < 1.0);
    }

    #[test]
    fn hypothesis_violations_are_named() {
        assert_eq!(params_formula(4, 2, 1), Err(Error::Constraint("2r < m".into())));
        assert_eq!(params_formula(9, 2, 2), Err(Error::Constraint("2w < 2r".into())));
        assert_eq!(params_formula(9, 2, -1), Err(Error::Constraint("0 <= 2w".into())));
        assert!(build_code(4, 2, 1).is_err());
    }

    #[test]
    fn fifteen_qubit_code() {
        let code = build_code(4, 1, 0).unwrap();
        assert_eq!((code.n(), code.k()), (15, 1));
        assert_eq!(code.x_stabilizers.nrows(), 4);
        assert_eq!(code.z_stabilizers.nrows(), 10);
        assert!(commutation_check(&code));
        // logical X lies in PRM(1,4,0) but not in SRM(1,4,0)
        let prm = crate::rm::prm_generator(1, 4, 0).unwrap().generator;
        assert!(prm.row_space_contains(&code.logical_x).unwrap());
        assert!(!code.x_stabilizers.row_space_contains(&code.logical_x).unwrap());
        assert_eq!(distance_brute(&code, DEFAULT_BUDGET).unwrap(), Distances { z: 3, x: 7 });
    }

    #[test]
    fn corrupted_code_fails_commutation() {
        let code = build_code(4, 1, 0).unwrap();
        let mut rows = code.logical_x.clone().into_rows();
        rows[0].flip(3);
        let bad = CssCode::from_parts(
            code.params,
            code.x_stabilizers.clone(),
            code.z_stabilizers.clone(),
            BitMatrix::from_rows(rows, 15).unwrap(),
            code.logical_z.clone(),
        )
        .unwrap();
        assert!(!commutation_check(&bad));
    }

    #[test]
    fn phase_check_fifteen_qubit() {
        let code = build_code(4, 1, 0).unwrap();
        let out = transversal_phase_check(&code, 3, SearchBudget::default()).unwrap();
        assert_eq!(
            out,
            CheckOutcome {
                passed: true,
                violations: 0,
                mode: CheckMode::Exhaustive { count: 32 }
            }
        );
        assert!(transversal_phase_check(&code, 4, SearchBudget::default()).is_err());
        let forced = transversal_phase_check_forced(&code, 4, SearchBudget::default()).unwrap();
        assert!(!forced.passed);
        // the 16 logical-coset elements have weight 7 mod 16 or 15 mod 16
        assert!(forced.violations > 0);
    }

    #[test]
    fn phase_check_sampling_fallback() {
        let code = build_code(5, 2, 1).unwrap();
        let budget = SearchBudget {
            exhaustive_limit: 1 << 10,
            trials: 5_000,
            seed: 7,
        };
        let out = transversal_phase_check(&code, 2, budget).unwrap();
        assert!(out.passed);
        assert_eq!(out.mode, CheckMode::Sampled { trials: 5_000, seed: 7 });
        let refused = SearchBudget { trials: 0, ..budget };
        assert!(transversal_phase_check(&code, 2, refused).unwrap_err().is_budget());
    }

    #[test]
    fn overlap_guards() {
        let code = build_code(4, 1, 0).unwrap();
        assert!(overlap_divisibility_check(&code, 3, 2, 1000).unwrap());
        assert!(overlap_divisibility_check(&code, 3, 3, 1000).unwrap());
        assert!(overlap_divisibility_check(&code, 3, 1, 1000).is_err());
        assert!(overlap_divisibility_check(&code, 3, 4, 1000).is_err());
        assert!(overlap_divisibility_check(&code, 3, 3, 5).unwrap_err().is_budget());
    }
}
