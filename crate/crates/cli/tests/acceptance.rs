//! Acceptance criteria, one PASS/FAIL line each on stderr:
//! `cargo test -p prm-cli --test acceptance`.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use prm::binom::{binom_sum_gt, binom_sum_le};
use prm::css::{
    build_code, commutation_check, distance_brute, overlap_divisibility_check, params_formula,
    transversal_phase_check, CheckMode, SearchBudget,
};
use prm::distill::{
    concat_trace, exact_output_error, loglog_slope, mc_output_error, optimize_p,
    overhead_scaling_exponent, scan, OverheadModel, ScanConstraint,
};
use prm::gf2::span::DEFAULT_BUDGET;
use prm::rm::{duality_check, min_punctured_weight_brute, rm_generator, span_weights_divisible, weight_divisibility_check};

type Check = Result<(), String>;

/// Id, name, runtime limit, check.
type Criterion = (u32, &'static str, Option<Duration>, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn headline_parameters() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_prm"))
        .args(["params", "--m", "58", "--r", "19", "--w", "14", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit {:?}", out.status.code()))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let res = &v["results"];
    let triple = (&res["n"]["value"], &res["k"]["value"], &res["d"]["value"]);
    ensure(
        triple.0 == "288215893050995568" && triple.1 == "14483100716176" && triple.2 == "21700",
        || format!("got [[{}, {}, {}]]", triple.0, triple.1, triple.2),
    )?;
    let gamma = res["gamma"]["value"].as_f64().unwrap_or(f64::NAN);
    ensure(gamma < 1.0, || format!("gamma = {gamma}"))
}

fn minimality() -> Check {
    let rows = scan(19, ScanConstraint::ThreeRPlusOne, 3).map_err(|e| e.to_string())?;
    let below: Vec<_> = rows.iter().filter(|r| r.gamma < 1.0).map(|r| (r.m, r.r, r.w)).collect();
    ensure(below == [(58, 19, 14)], || format!("gamma < 1 at {below:?}"))?;
    ensure(rows.iter().any(|r| r.r == 18), || "no r = 18 rows scanned".into())
}

fn asymptotic_optimum() -> Check {
    let best = optimize_p(1e-9).map_err(|e| e.to_string())?;
    ensure(
        (best.p - 0.270629).abs() <= 1e-4 && (best.gamma - 0.67799).abs() <= 1e-4,
        || format!("p* = {}, gamma* = {}", best.p, best.gamma),
    )
}

fn punctured_weight_oracle() -> Check {
    let mut cases = 0;
    for m in 0..=5u32 {
        for r in 0..=m as i32 {
            if binom_sum_le(m, r as i64).unwrap() > 22 {
                continue;
            }
            for w in -1..m as i32 {
                let got = min_punctured_weight_brute(r, m, w, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                let want = binom_sum_gt(m - r as u32, w as i64).unwrap();
                ensure(got as u128 == want, || format!("(r,m,w) = ({r},{m},{w}): {got} != {want}"))?;
                cases += 1;
            }
        }
    }
    ensure(cases > 0, || "no cases".into())
}

fn fifteen_qubit_code() -> Check {
    let code = build_code(4, 1, 0).map_err(|e| e.to_string())?;
    ensure((code.n(), code.k()) == (15, 1), || format!("[[{}, {}]]", code.n(), code.k()))?;
    ensure(commutation_check(&code), || "commutation".into())?;
    let d = distance_brute(&code, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure((d.z, d.x) == (3, 7), || format!("distances {d:?}"))?;
    let t = transversal_phase_check(&code, 3, SearchBudget { trials: 0, ..SearchBudget::default() })
        .map_err(|e| e.to_string())?;
    ensure(t.passed && matches!(t.mode, CheckMode::Exhaustive { .. }), || format!("{t:?}"))?;
    let o = overlap_divisibility_check(&code, 3, 3, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(o, || "overlap".into())
}

fn second_code() -> Check {
    let code = build_code(5, 2, 1).map_err(|e| e.to_string())?;
    let d_formula = params_formula(5, 2, 1).map_err(|e| e.to_string())?.d;
    ensure(
        (code.n(), code.k()) == (26, 6) && d_formula == 4u32.into(),
        || format!("[[{}, {}, {d_formula}]]", code.n(), code.k()),
    )?;
    let d = distance_brute(&code, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure((d.z, d.x) == (4, 4), || format!("distances {d:?}"))?;
    let t = transversal_phase_check(&code, 2, SearchBudget { trials: 0, ..SearchBudget::default() })
        .map_err(|e| e.to_string())?;
    ensure(
        t.passed && t.mode == (CheckMode::Exhaustive { count: 65536 }),
        || format!("{t:?}"),
    )
}

/// `m ≤ 16` bounds the `r = 1` family, the only one with unbounded `m` at
/// `dim ≤ 22` once the degenerate `r = 0` is set aside.
fn ward_divisibility() -> Check {
    let mut cases = 0;
    for m in 1..=16u32 {
        for r in 1..=m as i32 {
            if binom_sum_le(m, r as i64).unwrap() > 22 {
                continue;
            }
            let mut nu = 1;
            while m as i64 > nu as i64 * r as i64 {
                let ok = weight_divisibility_check(r, m, nu, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                ensure(ok, || format!("(r,m,nu) = ({r},{m},{nu})"))?;
                cases += 1;
                nu += 1;
            }
        }
    }
    let rm14 = rm_generator(1, 4).map_err(|e| e.to_string())?;
    let forced = span_weights_divisible(rm14.generator.rows(), rm14.len(), 1 << 4, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(!forced, || "RM(1,4) divisible by 2^4".into())?;
    ensure(cases > 0, || "no cases".into())
}

fn duality() -> Check {
    let mut negative_w = 0;
    for m in 1..=8u32 {
        for r in 0..m as i32 {
            for w in -1..r.min(m as i32 - r) {
                let ok = duality_check(r, m, w).map_err(|e| e.to_string())?;
                ensure(ok, || format!("(r,m,w) = ({r},{m},{w})"))?;
                negative_w += (w < 0) as u32;
            }
        }
    }
    ensure(negative_w > 0, || "w = -1 not covered".into())
}

fn distillation_scaling() -> Check {
    let code = build_code(4, 1, 0).map_err(|e| e.to_string())?;
    let points = (0..=10)
        .map(|i| {
            let eps = 1e-4 * 10f64.powf(i as f64 / 10.0);
            exact_output_error(&code, eps, DEFAULT_BUDGET).map(|o| (eps, o.eps_block))
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let slope = loglog_slope(&points);
    ensure((slope - 3.0).abs() <= 0.05, || format!("slope {slope}"))?;
    let exact = exact_output_error(&code, 0.05, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let mc = mc_output_error(&code, 0.05, 1_000_000, 0).map_err(|e| e.to_string())?;
    ensure(
        (mc.eps_block - exact.eps_block).abs() <= 3.0 * mc.eps_block_sigma
            && (mc.p_accept - exact.p_accept).abs() <= 3.0 * mc.p_accept_sigma,
        || format!("mc {mc:?} vs exact {exact:?}"),
    )
}

fn overhead_exponent() -> Check {
    let model = OverheadModel::new(15u32, 1u32, 3u32).map_err(|e| e.to_string())?;
    let targets: Vec<f64> = (12..=48).map(|e| 10f64.powi(-e)).collect();
    let fit = overhead_scaling_exponent(&model, 1e-3, &targets).map_err(|e| e.to_string())?;
    ensure((fit - 2.465).abs() <= 0.2, || format!("exponent {fit}"))?;
    let tr = concat_trace(&model, 1e-3, 1e-12).map_err(|e| e.to_string())?;
    ensure(
        tr.z_final == 2 && tr.ratio == 225.0 && tr.input_count == 225u32.into() && tr.output_count == 1u32.into(),
        || format!("z = {}, ratio = {}", tr.z_final, tr.ratio),
    )
}

fn family_convergence() -> Check {
    let best = optimize_p(1e-9).map_err(|e| e.to_string())?;
    let mut prev: Option<f64> = None;
    for r in 19..=40i64 {
        let w = (3.0 * r as f64 * best.p).round() as i64;
        let g = params_formula(3 * r + 1, r, w).map_err(|e| e.to_string())?.gamma;
        if let Some(p) = prev {
            ensure(g < p, || format!("r = {r}: {g} >= {p}"))?;
            ensure((g - 0.67799).abs() < (p - 0.67799).abs(), || format!("gap grows at r = {r}"))?;
        }
        prev = Some(g);
    }
    Ok(())
}

/// Written to the stderr handle directly so the lines survive output capture.
fn report(line: std::fmt::Arguments) {
    writeln!(std::io::stderr(), "{line}").ok();
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        (1, "headline parameters", Some(Duration::from_secs(1)), headline_parameters),
        (2, "minimality of (58,19,14)", Some(Duration::from_secs(10)), minimality),
        (3, "asymptotic optimum", Some(Duration::from_secs(1)), asymptotic_optimum),
        (4, "punctured weight oracle", Some(Duration::from_secs(120)), punctured_weight_oracle),
        (5, "[[15,1,3]] construction", Some(Duration::from_secs(1)), fifteen_qubit_code),
        (6, "[[26,6,4]] construction", Some(Duration::from_secs(5)), second_code),
        (7, "weight divisibility", None, ward_divisibility),
        (8, "duality", None, duality),
        (9, "distillation scaling", Some(Duration::from_secs(30)), distillation_scaling),
        (10, "overhead exponent", None, overhead_exponent),
        (11, "family convergence", None, family_convergence),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(limit)) = (&result, limit) {
            if elapsed > limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match &result {
            Ok(()) => report(format_args!("criterion {id:>2} PASS  {name} ({elapsed:.2?})")),
            Err(why) => {
                report(format_args!("criterion {id:>2} FAIL  {name} ({elapsed:.2?}): {why}"));
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
