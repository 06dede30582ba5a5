use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prm::binom::{binom_sum_gt, binom_sum_le};
use prm::gf2::span::DEFAULT_BUDGET;
use prm::gf2::BitVector;
use prm::rm::{
    duality_check, min_punctured_weight_brute, prm_generator, rm_generator,
    weight_divisibility_check, CoordinateOrder,
};

#[test]
fn punctured_minimum_weight_matches_binomial_tail() {
    for m in 0..=5u32 {
        for r in 0..=m as i32 {
            let dim = binom_sum_le(m, r as i64).unwrap();
            if dim > 22 {
                continue;
            }
            for w in -1..m as i32 {
                let got = min_punctured_weight_brute(r, m, w, DEFAULT_BUDGET).unwrap();
                let want = binom_sum_gt(m - r as u32, w as i64).unwrap();
                assert_eq!(got as u128, want, "D({r},{m},{w})");
            }
        }
    }
}

#[test]
fn prm_keeps_full_rank_in_injective_regime() {
    for m in 1..=8u32 {
        for r in 0..=m as i32 {
            for w in -1..(m as i32 - r) {
                let p = prm_generator(r, m, w).unwrap();
                assert_eq!(p.generator.rank() as u128, binom_sum_le(m, r as i64).unwrap());
                assert_eq!(p.len() as u128, binom_sum_gt(m, w as i64).unwrap());
            }
        }
    }
}

#[test]
fn ward_divisibility_small_codes() {
    for m in 1..=8u32 {
        for r in 1..=m as i32 {
            if binom_sum_le(m, r as i64).unwrap() > 22 {
                continue;
            }
            let mut nu = 1;
            while (m as i64) > nu as i64 * r as i64 {
                assert!(weight_divisibility_check(r, m, nu, DEFAULT_BUDGET).unwrap());
                nu += 1;
            }
        }
    }
}

#[test]
fn duality_in_regime() {
    for m in 1..=8u32 {
        for r in 0..m as i32 {
            for w in -1..r.min(m as i32 - r) {
                assert!(duality_check(r, m, w).unwrap(), "({r},{m},{w})");
            }
        }
    }
}

/// f(x_1..x_m) = g(x_1..x_{m-1}) + x_m h(x_1..x_{m-1}) with g ∈ RM(r, m-1),
/// h ∈ RM(r-1, m-1): recover g and h from a random codeword by restricting to
/// x_m = 0 and x_m = 1 and check their membership by rank.
#[test]
fn recursive_decomposition_spot_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=5u32 {
        let order = CoordinateOrder::new(m).unwrap();
        let sub = CoordinateOrder::new(m - 1).unwrap();
        let index_of = |v: u64| order.points().iter().position(|&p| p == v).unwrap();
        for r in 1..m as i32 {
            let code = rm_generator(r, m).unwrap();
            let g_code = rm_generator(r, m - 1).unwrap().generator;
            let h_code = rm_generator(r - 1, m - 1).unwrap().generator;
            for _ in 0..20 {
                let mut f = BitVector::zeros(code.len());
                for row in code.generator.rows() {
                    if rng.gen::<bool>() {
                        f.xor_assign(row);
                    }
                }
                let top = 1u64 << (m - 1);
                let g: BitVector = sub.points().iter().map(|&v| f.get(index_of(v))).collect();
                let g1: BitVector = sub.points().iter().map(|&v| f.get(index_of(v | top))).collect();
                let h = &g ^ &g1;
                let single = |v: BitVector| prm::gf2::BitMatrix::from_rows(vec![v], sub.points().len()).unwrap();
                assert!(g_code.row_space_contains(&single(g)).unwrap());
                assert!(h_code.row_space_contains(&single(h)).unwrap());
            }
        }
    }
}
