//! Subcommand implementations.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use prm::css::{
    build_code, commutation_check, distance_brute, overlap_divisibility_check, params_formula,
    transversal_phase_check, transversal_phase_check_forced, CheckMode, CheckOutcome, CssCode,
    SearchBudget, DEFAULT_TRIALS, EXHAUSTIVE_LIMIT,
};
use prm::distill::{
    asymptotic_gamma, concat_trace, exact_output_error, loglog_slope, mc_output_error, optimize_p,
    overhead_scaling_exponent, scan, OverheadModel, ScanConstraint,
};
use prm::gf2::span::DEFAULT_BUDGET;
use prm::rm::span_weights_divisible;
use prm::Error;

use crate::codefile::CodeFile;
use crate::report::{Field, Format, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "prm", version, about = "Punctured Reed-Muller magic state distillation codes")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    pub format: Format,
    /// Enumeration budget (number of vectors or cosets visited exhaustively).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Sample count for randomized checks and Monte Carlo estimates.
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Suppress the report on stdout; only the exit code and errors remain.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form parameters of the (m, r, w) code.
    Params(FamilyArgs),
    /// Build the code and write it as JSON.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run checks on a code file.
    Verify {
        code: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',')]
        checks: Vec<CheckKind>,
        /// Level for the transversal and overlap checks. Levels the code does
        /// not support are run anyway.
        #[arg(long)]
        nu: Option<u32>,
        /// Largest subset size for the overlap check (default: the level).
        #[arg(long)]
        l_max: Option<u32>,
    },
    /// Tabulate exact parameters over a range of (m, r, w).
    Scan {
        #[arg(long)]
        r_max: u32,
        #[arg(long, value_enum, default_value = "general")]
        constraint: ConstraintKind,
        #[arg(long, default_value_t = 3)]
        nu_min: u32,
        /// Largest m for the general constraint (default (nu_min+1)*r_max+1).
        #[arg(long)]
        m_max: Option<u32>,
        /// Keep only rows with gamma strictly below this value.
        #[arg(long)]
        gamma_below: Option<f64>,
    },
    /// Large-r limit of the overhead exponent.
    Asymptotic {
        #[arg(long)]
        optimize: bool,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Output error and concatenated overhead of a code file.
    Distill {
        code: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        #[arg(long, value_delimiter = ',')]
        targets: Vec<f64>,
        #[arg(long, default_value_t = 1e-3)]
        eps_in: f64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct FamilyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub r: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub w: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Commutation,
    Distance,
    Transversal,
    Overlap,
    Divisibility,
}

impl CheckKind {
    const ALL: [CheckKind; 5] = [
        CheckKind::Commutation,
        CheckKind::Distance,
        CheckKind::Transversal,
        CheckKind::Overlap,
        CheckKind::Divisibility,
    ];

    fn name(self) -> &'static str {
        match self {
            CheckKind::Commutation => "commutation",
            CheckKind::Distance => "distance",
            CheckKind::Transversal => "transversal",
            CheckKind::Overlap => "overlap",
            CheckKind::Divisibility => "divisibility",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstraintKind {
    General,
    M3r1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Mc,
}

/// A failed command: exit code plus the message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE };
        Failure::new(code, e.to_string())
    }
}

/// A completed command: the report and the exit code it implies.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, code: EXIT_OK }
    }
}

/// Parses `args`, runs the command and returns (exit code, stdout, stderr).
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(mut out) => {
            out.report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let stdout = if cli.global.quiet {
                String::new()
            } else {
                out.report.render(cli.global.format)
            };
            (out.code, stdout, String::new())
        }
        Err(f) => (f.code, String::new(), format!("error: {}\n", f.message)),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Params(a) => cmd_params(*a).map(Outcome::from),
        Command::Construct { family, out } => cmd_construct(*family, out).map(Outcome::from),
        Command::Verify {
            code,
            checks,
            nu,
            l_max,
        } => cmd_verify(code, checks, *nu, *l_max, g),
        Command::Scan {
            r_max,
            constraint,
            nu_min,
            m_max,
            gamma_below,
        } => cmd_scan(*r_max, *constraint, *nu_min, *m_max, *gamma_below).map(Outcome::from),
        Command::Asymptotic { optimize, p, tol } => cmd_asymptotic(*optimize, *p, *tol).map(Outcome::from),
        Command::Distill {
            code,
            eps,
            method,
            targets,
            eps_in,
        } => cmd_distill(code, eps, *method, targets, *eps_in, g).map(Outcome::from),
    }
}

fn family_params(report: &mut Report, a: FamilyArgs) {
    report.param("m", a.m).param("r", a.r).param("w", a.w);
}

pub fn cmd_params(a: FamilyArgs) -> Result<Report, Failure> {
    let p = params_formula(a.m, a.r, a.w)?;
    let mut report = Report::new("params");
    family_params(&mut report, a);
    report
        .result("n", Field::wide(&p.n))
        .result("k", Field::wide(&p.k))
        .result("d", Field::wide(&p.d))
        .result("nu", Field::exact(p.nu))
        .result("gamma", Field::approx(p.gamma));
    Ok(report)
}

pub fn cmd_construct(a: FamilyArgs, out: &Path) -> Result<Report, Failure> {
    let code = build_code(a.m, a.r, a.w)?;
    let json = CodeFile::from_code(&code).to_json();
    std::fs::write(out, &json).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", out.display())))?;
    let back = load_code(out)?;
    if back != code || !commutation_check(&back) {
        return Err(Failure::new(EXIT_CHECK_FAILED, "written file does not reproduce the code"));
    }
    let mut report = Report::new("construct");
    family_params(&mut report, a);
    report.param("out", out.display().to_string());
    report
        .result("n", Field::exact(code.n()))
        .result("k", Field::exact(code.k()))
        .result("x_stabilizers", Field::exact(code.x_stabilizers.nrows()))
        .result("z_stabilizers", Field::exact(code.z_stabilizers.nrows()))
        .result("logical_pairs", Field::exact(code.logical_x.nrows()))
        .result("commutation", Field::exact(true));
    Ok(report)
}

pub fn load_code(path: &Path) -> Result<CssCode, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    CodeFile::from_json(&text)
        .and_then(|f| f.to_code())
        .map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// Result of one check inside `verify`.
enum Verdict {
    Pass(String),
    Fail(String),
    Refused(String),
}

fn mode_name(mode: &CheckMode) -> String {
    match mode {
        CheckMode::Exhaustive { count } => format!("exhaustive:{count}"),
        CheckMode::Sampled { trials, seed } => format!("sampled:{trials}:seed={seed}"),
    }
}

fn outcome_verdict(o: CheckOutcome) -> Verdict {
    let mode = mode_name(&o.mode);
    if o.passed {
        Verdict::Pass(mode)
    } else {
        Verdict::Fail(format!("{mode}:violations={}", o.violations))
    }
}

fn refuse_or(e: Error) -> Result<Verdict, Failure> {
    if e.is_budget() {
        Ok(Verdict::Refused(e.to_string()))
    } else {
        Err(e.into())
    }
}

pub fn cmd_verify(
    path: &Path,
    checks: &[CheckKind],
    nu: Option<u32>,
    l_max: Option<u32>,
    g: &Global,
) -> Result<Outcome, Failure> {
    let code = load_code(path)?;
    let checks: &[CheckKind] = if checks.is_empty() { &CheckKind::ALL } else { checks };
    let level = nu.unwrap_or(code.params.nu);
    let span_budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    let search = SearchBudget {
        exhaustive_limit: g.budget.unwrap_or(EXHAUSTIVE_LIMIT),
        trials: g.trials.unwrap_or(DEFAULT_TRIALS),
        seed: g.seed,
    };

    let mut report = Report::new("verify");
    report.param("code", path.display().to_string()).param("nu", level);
    report.seed = Some(g.seed);
    let mut table = Table::new(&[("check", true), ("status", true), ("detail", true)]);
    let (mut failed, mut refused) = (false, false);

    for &check in checks {
        let verdict = match check {
            CheckKind::Commutation => {
                if commutation_check(&code) {
                    Verdict::Pass("exhaustive".into())
                } else {
                    Verdict::Fail("some X and Z rows anticommute".into())
                }
            }
            CheckKind::Distance => match distance_brute(&code, span_budget) {
                Ok(d) => {
                    let want = (code.params.d().to_string(), code.params.d_x().to_string());
                    let got = (d.z.to_string(), d.x.to_string());
                    let detail = format!("exhaustive:d_z={}:d_x={}", got.0, got.1);
                    if got == want {
                        Verdict::Pass(detail)
                    } else {
                        Verdict::Fail(format!("{detail}:expected d_z={}:d_x={}", want.0, want.1))
                    }
                }
                Err(e) => refuse_or(e)?,
            },
            CheckKind::Transversal => {
                let run = if code.params.supports_level(level) {
                    transversal_phase_check(&code, level, search)
                } else {
                    transversal_phase_check_forced(&code, level, search)
                };
                match run {
                    Ok(o) => outcome_verdict(o),
                    Err(e) => refuse_or(e)?,
                }
            }
            CheckKind::Overlap => {
                let l = l_max.unwrap_or(level);
                if level < 2 && l_max.is_none() {
                    Verdict::Pass("vacuous:nu<2".into())
                } else {
                    match overlap_divisibility_check(&code, level, l, span_budget) {
                        Ok(true) => Verdict::Pass(format!("exhaustive:l_max={l}")),
                        Ok(false) => Verdict::Fail(format!("exhaustive:l_max={l}")),
                        Err(e) => refuse_or(e)?,
                    }
                }
            }
            CheckKind::Divisibility => {
                if level >= 64 {
                    return Err(Failure::new(EXIT_USAGE, "nu < 64 violated"));
                }
                match span_weights_divisible(code.x_stabilizers.rows(), code.n(), 1 << level, span_budget) {
                    Ok(true) => Verdict::Pass(format!("exhaustive:modulus={}", 1u64 << level)),
                    Ok(false) => Verdict::Fail(format!("exhaustive:modulus={}", 1u64 << level)),
                    Err(e) => refuse_or(e)?,
                }
            }
        };
        let (status, detail) = match verdict {
            Verdict::Pass(d) => ("pass", d),
            Verdict::Fail(d) => {
                failed = true;
                ("fail", d)
            }
            Verdict::Refused(d) => {
                refused = true;
                ("refused", d)
            }
        };
        report.result(check.name(), Field::exact(status));
        table.push(vec![check.name().into(), status.into(), detail.into()]);
    }
    report.tables.insert("checks".into(), table);
    let code = if failed {
        EXIT_CHECK_FAILED
    } else if refused {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok(Outcome { report, code })
}

pub fn cmd_scan(
    r_max: u32,
    constraint: ConstraintKind,
    nu_min: u32,
    m_max: Option<u32>,
    gamma_below: Option<f64>,
) -> Result<Report, Failure> {
    let kind = match constraint {
        ConstraintKind::M3r1 => ScanConstraint::ThreeRPlusOne,
        ConstraintKind::General => ScanConstraint::General {
            m_max: m_max.unwrap_or_else(|| nu_min.saturating_add(1).saturating_mul(r_max).saturating_add(1)),
        },
    };
    let rows = scan(r_max, kind, nu_min)?;
    let mut report = Report::new("scan");
    report
        .param("r_max", r_max)
        .param("constraint", constraint_name(constraint))
        .param("nu_min", nu_min);
    if let ScanConstraint::General { m_max } = kind {
        report.param("m_max", m_max);
    }
    if let Some(g) = gamma_below {
        report.param("gamma_below", g);
    }
    let mut table = Table::new(&[
        ("m", true),
        ("r", true),
        ("w", true),
        ("nu", true),
        ("n", true),
        ("k", true),
        ("d", true),
        ("gamma", false),
    ]);
    for row in rows.iter().filter(|row| gamma_below.is_none_or(|g| row.gamma < g)) {
        table.push(vec![
            row.m.into(),
            row.r.into(),
            row.w.into(),
            row.nu.into(),
            row.n.to_string().into(),
            row.k.to_string().into(),
            row.d.to_string().into(),
            row.gamma.into(),
        ]);
    }
    report.result("rows", Field::exact(table.rows.len()));
    report.tables.insert("rows".into(), table);
    Ok(report)
}

fn constraint_name(c: ConstraintKind) -> &'static str {
    match c {
        ConstraintKind::General => "general",
        ConstraintKind::M3r1 => "m3r1",
    }
}

pub fn cmd_asymptotic(optimize: bool, p: Option<f64>, tol: f64) -> Result<Report, Failure> {
    if !optimize && p.is_none() {
        return Err(Failure::new(EXIT_USAGE, "one of --optimize or --p is required"));
    }
    let mut report = Report::new("asymptotic");
    report.param("tol", tol);
    if optimize {
        let best = optimize_p(tol)?;
        report
            .result("p_opt", Field::approx(best.p))
            .result("gamma_opt", Field::approx(best.gamma));
    }
    if let Some(p) = p {
        report.param("p", p);
        report.result("gamma", Field::approx(asymptotic_gamma(p)?));
    }
    Ok(report)
}

pub fn cmd_distill(
    path: &Path,
    eps: &[f64],
    method: Method,
    targets: &[f64],
    eps_in: f64,
    g: &Global,
) -> Result<Report, Failure> {
    let code = load_code(path)?;
    let mut report = Report::new("distill");
    report.param("code", path.display().to_string());
    report.param("eps", eps.iter().map(|&e| Value::from(e)).collect::<Vec<_>>());

    let exact = method == Method::Exact;
    let mut table = if exact {
        report.mode = Some("exhaustive".into());
        Table::new(&[("eps", false), ("p_accept", false), ("eps_block", false)])
    } else {
        let trials = g.trials.unwrap_or(DEFAULT_TRIALS);
        report.mode = Some(format!("sampled:{trials}"));
        report.seed = Some(g.seed);
        Table::new(&[
            ("eps", false),
            ("p_accept", false),
            ("p_accept_sigma", false),
            ("eps_block", false),
            ("eps_block_sigma", false),
        ])
    };
    let mut points = Vec::new();
    for &e in eps {
        if exact {
            let out = exact_output_error(&code, e, g.budget.unwrap_or(DEFAULT_BUDGET)).map_err(|err| {
                let f = Failure::from(err);
                if f.code == EXIT_BUDGET {
                    Failure::new(EXIT_BUDGET, format!("{}; rerun with --method mc", f.message))
                } else {
                    f
                }
            })?;
            points.push((e, out.eps_block));
            table.push(vec![e.into(), out.p_accept.into(), out.eps_block.into()]);
        } else {
            let out = mc_output_error(&code, e, g.trials.unwrap_or(DEFAULT_TRIALS), g.seed)?;
            points.push((e, out.eps_block));
            table.push(vec![
                e.into(),
                out.p_accept.into(),
                out.p_accept_sigma.into(),
                out.eps_block.into(),
                out.eps_block_sigma.into(),
            ]);
        }
    }
    report.tables.insert("output_error".into(), table);
    if exact && points.len() >= 2 && points.iter().all(|&(_, y)| y > 0.0) {
        report.result("loglog_slope", Field::approx(loglog_slope(&points)));
    }

    if !targets.is_empty() {
        let p = code.params;
        let model = OverheadModel::new(p.n(), p.k(), p.d())?;
        report.param("eps_in", eps_in);
        report.param("targets", targets.iter().map(|&t| Value::from(t)).collect::<Vec<_>>());
        report.result("gamma", Field::approx(model.gamma()));
        let mut trace_table = Table::new(&[
            ("target", false),
            ("z", true),
            ("eps_out", false),
            ("input_count", true),
            ("output_count", true),
            ("ratio", false),
        ]);
        for &t in targets {
            let tr = concat_trace(&model, eps_in, t)?;
            trace_table.push(vec![
                t.into(),
                tr.z_final.into(),
                tr.final_level().eps.into(),
                tr.input_count.to_string().into(),
                tr.output_count.to_string().into(),
                tr.ratio.into(),
            ]);
        }
        report.tables.insert("concat_trace".into(), trace_table);
        if targets.len() >= 3 {
            let fit = overhead_scaling_exponent(&model, eps_in, targets)?;
            report.result("scaling_exponent", Field::approx(fit));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let (code, out, err) = run(std::iter::once("prm").chain(args.iter().copied()));
        assert_eq!(code, 0, "{err}");
        out
    }

    #[test]
    fn params_small() {
        let out = run_ok(&["params", "--m", "4", "--r", "1", "--w", "0", "--format", "csv"]);
        assert_eq!(out.lines().next().unwrap(), "d,gamma,k,n,nu");
        assert!(out.lines().nth(1).unwrap().starts_with("3,2.4649"));
    }

    #[test]
    fn params_guard() {
        let (code, _, err) = run(["prm", "params", "--m", "4", "--r", "2", "--w", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("2r < m violated"), "{err}");
    }

    #[test]
    fn asymptotic_requires_mode() {
        let (code, _, _) = run(["prm", "asymptotic"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, err) = run(["prm", "asymptotic", "--p", "0.4"]);
        assert_eq!(code, EXIT_USAGE, "{err}");
    }

    #[test]
    fn scan_empty() {
        let out = run_ok(&["scan", "--r-max", "0", "--format", "csv"]);
        assert_eq!(out, "rows\n0\n\nm,r,w,nu,n,k,d,gamma\n");
    }
}
