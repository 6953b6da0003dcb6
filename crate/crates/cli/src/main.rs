use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use g4maxwell::maxwell::{algebraic_residual, normalized_residual, pde_residual};
use g4maxwell::report::{build_report, ReportConfig};
use g4maxwell::sampling::{purpose, random_point, stream, SignatureClass};
use g4maxwell::scan::with_workers;
use g4maxwell::solutions::{certify_no_go, enumerate_branches, verify_branch};
use g4maxwell::{
    scan_classify, solve_alpha, structure_constants, verify_frame, verify_jacobi, CoreError, FrameMetric, GroupId,
    PotentialConstants, ScanConfig,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "g4maxwell", version, about = "Invariant Maxwell fields on G4 group manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Group selector, e.g. G4-II, G4-I:c=0.5, G4-III:alpha=1.0
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Frame relations and Jacobi identity at random points.
    CatalogCheck,
    /// Solve the Maxwell system for one frame metric.
    Solve {
        #[arg(long)]
        eta: PathBuf,
    },
    /// Verify every solution branch, falling back to certified forms.
    VerifyPaper,
    /// Histogram of field dimensions over random frame metrics.
    Scan {
        #[arg(long, default_value = "lorentzian")]
        signature: SignatureClass,
    },
    /// Certify the groups without nontrivial Lorentzian fields.
    Nogo,
    /// Full classification report.
    Report,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

enum Failure {
    Invalid(String),
    Infeasible(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Infeasible { .. } => Failure::Infeasible(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.samples == Some(0) {
        eprintln!("error: --samples must be at least 1");
        return ExitCode::from(2);
    }
    if cli.tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
        eprintln!("error: --tol must be a positive real");
        return ExitCode::from(2);
    }
    let result = with_workers(cli.workers, || run(&cli));
    match result {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Scan { .. }) {
        return Err(Failure::Invalid("csv output is only available for scan".into()));
    }
    match &cli.command {
        Command::CatalogCheck => catalog_check(cli),
        Command::Solve { eta } => solve(cli, eta),
        Command::VerifyPaper => verify(cli),
        Command::Scan { signature } => scan(cli, *signature),
        Command::Nogo => nogo(cli),
        Command::Report => report(cli),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable document");
    s.push('\n');
    s
}

/// Explicit group, or every representative when none is given.
fn groups(cli: &Cli) -> Result<Vec<GroupId>, Failure> {
    match &cli.group {
        Some(s) => Ok(vec![s.parse()?]),
        None => Ok(GroupId::representatives()),
    }
}

fn one_group(cli: &Cli) -> Result<GroupId, Failure> {
    match &cli.group {
        Some(s) => Ok(s.parse()?),
        None => Err(Failure::Invalid("--group is required for this command".into())),
    }
}

#[derive(Serialize)]
struct CatalogCheck {
    group: String,
    points: usize,
    max_duality: f64,
    max_completeness: f64,
    max_commutation: f64,
    jacobi_residual: f64,
    passed: bool,
}

fn catalog_check(cli: &Cli) -> Outcome {
    let tol = cli.tol.unwrap_or(1e-10);
    let n = cli.samples.unwrap_or(100);
    let mut rows = Vec::new();
    for (gi, g) in groups(cli)?.iter().enumerate() {
        let mut r = CatalogCheck {
            group: g.to_string(),
            points: n,
            max_duality: 0.0,
            max_completeness: 0.0,
            max_commutation: 0.0,
            jacobi_residual: verify_jacobi(&structure_constants(g)).max_residual,
            passed: false,
        };
        for k in 0..n {
            let mut rng = stream(cli.seed, purpose::CATALOG, ((gi as u64) << 32) | k as u64);
            let f = verify_frame(g, &random_point(g, &mut rng))?;
            r.max_duality = r.max_duality.max(f.duality);
            r.max_completeness = r.max_completeness.max(f.completeness);
            r.max_commutation = r.max_commutation.max(f.commutation);
        }
        r.passed = r.max_duality.max(r.max_completeness).max(r.max_commutation) <= tol && r.jacobi_residual <= 1e-14;
        rows.push(r);
    }
    let ok = rows.iter().all(|r| r.passed);
    let out = match cli.format {
        Format::Json => json(&rows),
        _ => {
            let mut s = String::new();
            for r in &rows {
                s += &format!(
                    "{}: {} points, max duality {:.3e}, max completeness {:.3e}, max commutation residual {:.3e}, jacobi {:.3e} [{}]\n",
                    r.group,
                    r.points,
                    r.max_duality,
                    r.max_completeness,
                    r.max_commutation,
                    r.jacobi_residual,
                    if r.passed { "ok" } else { "FAIL" }
                );
            }
            s
        }
    };
    Ok((out, ok))
}

/// Parse `{"eta_upper_triangle":[10 reals]}` with messages that name the offending position.
fn parse_eta(text: &str) -> Result<[f64; 10], String> {
    let doc: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| format!("η file is not valid JSON at line {}, column {}: {e}", e.line(), e.column()))?;
    let arr = doc
        .get("eta_upper_triangle")
        .ok_or("η file: missing key `eta_upper_triangle`")?
        .as_array()
        .ok_or("η file: `eta_upper_triangle` must be an array of 10 reals")?;
    if arr.len() != 10 {
        return Err(format!("η file: `eta_upper_triangle` has {} entries, expected 10", arr.len()));
    }
    let mut out = [0.0; 10];
    for (k, v) in arr.iter().enumerate() {
        out[k] = v
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("η file: `eta_upper_triangle[{k}]` = {v} is not a finite real"))?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct SolveDoc {
    group: String,
    eta_upper_triangle: [f64; 10],
    det_eta: f64,
    lorentzian: bool,
    nullspace_dim: usize,
    gauge_dim: usize,
    field_dim: usize,
    field_basis: Vec<[f64; 4]>,
    algebraic_residuals: Vec<f64>,
    pde_residuals: Vec<f64>,
}

fn solve(cli: &Cli, path: &PathBuf) -> Outcome {
    let g = one_group(cli)?;
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let tri = parse_eta(&text).map_err(Failure::Invalid)?;
    let eta = FrameMetric::from_upper_triangle(&tri)?;
    let c = structure_constants(&g);
    let sol = solve_alpha(&c, &eta, cli.tol.unwrap_or(1e-9));
    let p = random_point(&g, &mut stream(cli.seed, purpose::SOLVE, 0));
    let mut alg = Vec::new();
    let mut pde = Vec::new();
    for v in &sol.field {
        let a = PotentialConstants(*v);
        alg.push(normalized_residual(&algebraic_residual(&c, &eta, &a), &c, &eta, &a));
        pde.push(normalized_residual(&pde_residual(&g, &eta, &a, &p)?, &c, &eta, &a));
    }
    let doc = SolveDoc {
        group: g.to_string(),
        eta_upper_triangle: tri,
        det_eta: eta.det(),
        lorentzian: eta.is_lorentzian(),
        nullspace_dim: sol.nullspace.len(),
        gauge_dim: sol.gauge.len(),
        field_dim: sol.field_dim(),
        field_basis: sol.field.clone(),
        algebraic_residuals: alg,
        pde_residuals: pde,
    };
    let ok = doc.algebraic_residuals.iter().chain(&doc.pde_residuals).all(|r| *r <= 1e-9);
    let out = match cli.format {
        Format::Json => json(&doc),
        _ => {
            let mut s = format!(
                "{}: det η = {:.6e}, lorentzian = {}\nnullspace dim {} (gauge {}, field-relevant {})\n",
                doc.group, doc.det_eta, doc.lorentzian, doc.nullspace_dim, doc.gauge_dim, doc.field_dim
            );
            for (k, v) in doc.field_basis.iter().enumerate() {
                s += &format!(
                    "  α = [{:.9}, {:.9}, {:.9}, {:.9}]  residual algebraic {:.2e}, pde {:.2e}\n",
                    v[0], v[1], v[2], v[3], doc.algebraic_residuals[k], doc.pde_residuals[k]
                );
            }
            s
        }
    };
    Ok((out, ok))
}

fn verify(cli: &Cli) -> Outcome {
    let family = match &cli.group {
        Some(s) => Some(s.parse::<GroupId>()?.family()),
        None => None,
    };
    let (branches, _, _) = enumerate_branches();
    let mut reports = Vec::new();
    for b in branches.iter().filter(|b| family.is_none_or(|f| b.group.split(':').next() == Some(f))) {
        reports.push(verify_branch(b, cli.samples.unwrap_or(200), cli.tol.unwrap_or(1e-9), cli.seed)?);
    }
    if reports.is_empty() {
        return Err(Failure::Invalid(format!("no solution branches for {}", cli.group.as_deref().unwrap_or(""))));
    }
    reports.sort_by(|a, b| a.branch_id.cmp(&b.branch_id));
    let ok = reports.iter().all(|r| r.passed());
    let out = match cli.format {
        Format::Json => json(&reports),
        _ => {
            let mut s = String::new();
            for r in &reports {
                let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(str::to_string));
                s += &format!(
                    "{} [{}] {}: max residual {:.3e}, constraints {:.3e}, free params {}\n",
                    r.branch_id,
                    r.group,
                    status.unwrap_or_default(),
                    r.field_residual_max,
                    r.constraints_residual_max,
                    r.free_params
                );
                s += &format!("  relation: {}\n", r.relation);
                for l in &r.ledger {
                    s += &format!(
                        "  ledger: printed `{}` residual {:.3e}; certified residual {:.3e}\n",
                        l.printed, l.evidence.printed_residual, l.evidence.certified_residual
                    );
                }
                for w in &r.warnings {
                    s += &format!("  warning: {w}\n");
                }
            }
            s
        }
    };
    Ok((out, ok))
}

fn scan(cli: &Cli, class: SignatureClass) -> Outcome {
    let g = one_group(cli)?;
    let cfg = ScanConfig {
        count: cli.samples.unwrap_or(1000),
        seed: cli.seed,
        class,
        workers: cli.workers,
        tol: cli.tol.unwrap_or(1e-9),
    };
    let res = scan_classify(&g, &cfg);
    let out = match cli.format {
        Format::Json => json(&res),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Invalid(e.to_string());
            w.write_record(["group", "field_dim", "count"]).map_err(io)?;
            for (d, n) in &res.histogram {
                w.write_record([res.group.clone(), d.to_string(), n.to_string()]).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Invalid(e.to_string()))?;
            String::from_utf8(bytes).expect("csv is utf-8")
        }
        Format::Text => {
            let mut s = format!("{}: {} samples ({:?})\n", res.group, cfg.count, class);
            for (d, n) in &res.histogram {
                s += &format!("  field dim {d}: {n}\n");
            }
            s
        }
    };
    Ok((out, true))
}

fn nogo(cli: &Cli) -> Outcome {
    let (_, certs, _) = enumerate_branches();
    let selected: Vec<_> = match &cli.group {
        None => certs,
        Some(s) => {
            let g: GroupId = s.parse()?;
            let mut hit: Vec<_> = certs.into_iter().filter(|c| c.group.family() == g.family()).collect();
            if hit.is_empty() {
                return Err(Failure::Invalid(format!("{g} has no no-go certificate")));
            }
            for c in &mut hit {
                c.group = g;
            }
            hit
        }
    };
    let mut reports = Vec::new();
    for c in &selected {
        reports.push(certify_no_go(c, cli.samples.unwrap_or(10_000), cli.seed)?);
    }
    let ok = reports.iter().all(|r| r.passed);
    let out = match cli.format {
        Format::Json => json(&reports),
        _ => {
            let mut s = String::new();
            for r in &reports {
                let hist: BTreeMap<_, _> = r.field_dim_histogram.iter().collect();
                s += &format!(
                    "{}: {} nontrivial solutions in {} samples (field dims {:?})\n",
                    r.group, r.nontrivial, r.samples, hist
                );
                s += &format!("  printed relation: {}\n  forced relation: {}\n", r.printed_relation, r.forced_relation);
                s += &format!(
                    "  factorization error {:.3e}; full-rank samples {}/{}; {}\n",
                    r.factorization_max_rel_err,
                    r.full_rank_samples,
                    r.samples,
                    if r.passed { "certified" } else { "NOT certified" }
                );
                s += &format!("  {}\n", r.contradiction);
            }
            s
        }
    };
    Ok((out, ok))
}

fn report(cli: &Cli) -> Outcome {
    let d = ReportConfig::default();
    let cfg = ReportConfig {
        branch_samples: cli.samples.unwrap_or(d.branch_samples),
        nogo_samples: cli.samples.unwrap_or(d.nogo_samples),
        seed: cli.seed,
        tol: cli.tol.unwrap_or(d.tol),
    };
    let r = build_report(&cfg)?;
    let out = match cli.format {
        Format::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        _ => r.to_text(),
    };
    Ok((out, r.passed()))
}
