//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use g4maxwell::linalg::subspace_distance;
use g4maxwell::maxwell::{frame_projection, pde_residual_fd};
use g4maxwell::sampling::{random_alpha, random_point, sample_metric, stream, SignatureClass};
use g4maxwell::solutions::{certify_no_go, enumerate_branches, sample_branch, verify_branch, BranchStatus};
use g4maxwell::{
    algebraic_residual, field_strength_frame, field_strength_holonomic, pde_residual, solve_alpha, structure_constants,
    verify_frame, verify_jacobi, GroupId,
};

const SEED: u64 = 20_261_015;
const TEST_STREAM: u64 = 99;

fn groups() -> Vec<GroupId> {
    let mut g: Vec<GroupId> = [-1.0, 0.0, 0.5, 1.0, 2.7].iter().map(|&c| GroupId::G4I { c }).collect();
    g.push(GroupId::G4II);
    g.push(GroupId::G4III { alpha: PI / 6.0 });
    g.push(GroupId::G4III { alpha: PI / 3.0 });
    g.extend([GroupId::G4IV, GroupId::G4V, GroupId::G4VII, GroupId::G4VIII]);
    g
}

fn rng(gi: usize, k: usize) -> g4maxwell::sampling::SampleRng {
    stream(SEED, TEST_STREAM, ((gi as u64) << 32) | k as u64)
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let t = Instant::now();
    let mut v = f();
    let dt = t.elapsed();
    v.detail = format!("{}; {:.2}s", v.detail, dt.as_secs_f64());
    if let Some(l) = limit {
        if dt > l {
            v.pass = false;
            v.detail += &format!(" exceeds {}s", l.as_secs());
        }
    }
    v
}

fn frames() -> Verdict {
    let mut worst = 0.0f64;
    for (gi, g) in groups().iter().enumerate() {
        for k in 0..100 {
            let p = random_point(g, &mut rng(gi, k));
            worst = worst.max(verify_frame(g, &p).map(|r| r.max()).unwrap_or(f64::INFINITY));
        }
    }
    Verdict { pass: worst <= 1e-10, detail: format!("max frame residual {worst:.3e} (tol 1e-10)") }
}

fn jacobi() -> Verdict {
    let worst = groups().iter().map(|g| verify_jacobi(&structure_constants(g)).max_residual).fold(0.0, f64::max);
    Verdict { pass: worst <= 1e-14, detail: format!("max Jacobi residual {worst:.3e} (tol 1e-14)") }
}

fn projection() -> Verdict {
    let mut worst = 0.0f64;
    for (gi, g) in groups().iter().enumerate() {
        let c = structure_constants(g);
        for k in 0..20 {
            let mut r = rng(gi, 1000 + k);
            let a = random_alpha(&mut r);
            let p = random_point(g, &mut r);
            let err = field_strength_holonomic(g, &a, &p)
                .and_then(|f| frame_projection(g, &f, &p))
                .map(|f| f.sub(&field_strength_frame(&c, &a)).max_abs())
                .unwrap_or(f64::INFINITY);
            worst = worst.max(err);
        }
    }
    Verdict { pass: worst <= 1e-10, detail: format!("max |E F Eᵀ - Cα| {worst:.3e} (tol 1e-10)") }
}

fn oracles() -> Verdict {
    let (mut alg_pde, mut pde_fd) = (0.0f64, 0.0f64);
    for (gi, g) in groups().iter().enumerate() {
        let c = structure_constants(g);
        for k in 0..50 {
            let mut r = rng(gi, 2000 + k);
            let eta = sample_metric(&mut r, SignatureClass::Lorentzian);
            let a = random_alpha(&mut r);
            let p = random_point(g, &mut r);
            let alg = algebraic_residual(&c, &eta, &a);
            let (Ok(pde), Ok(fd)) = (pde_residual(g, &eta, &a, &p), pde_residual_fd(g, &eta, &a, &p, 1e-5)) else {
                return Verdict { pass: false, detail: format!("{g}: residual evaluation failed") };
            };
            for i in 0..4 {
                alg_pde = alg_pde.max((alg[i] - pde[i]).abs());
                pde_fd = pde_fd.max((pde[i] - fd[i]).abs());
            }
        }
    }
    Verdict {
        pass: alg_pde <= 1e-9 && pde_fd <= 1e-6,
        detail: format!("algebraic vs pde {alg_pde:.3e} (tol 1e-9), pde vs fd {pde_fd:.3e} (tol 1e-6)"),
    }
}

fn homogeneity() -> Verdict {
    let mut worst = 0.0f64;
    for (gi, g) in groups().iter().enumerate() {
        let mut r = rng(gi, 3000);
        let eta = sample_metric(&mut r, SignatureClass::Lorentzian);
        let a = random_alpha(&mut r);
        let mut lo = [f64::INFINITY; 4];
        let mut hi = [f64::NEG_INFINITY; 4];
        for _ in 0..20 {
            let p = random_point(g, &mut r);
            let Ok(v) = pde_residual(g, &eta, &a, &p) else {
                return Verdict { pass: false, detail: format!("{g}: residual evaluation failed") };
            };
            for i in 0..4 {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        for i in 0..4 {
            worst = worst.max(hi[i] - lo[i]);
        }
    }
    Verdict { pass: worst <= 1e-9, detail: format!("max spread over 20 points {worst:.3e} (tol 1e-9)") }
}

fn branches() -> Verdict {
    let (all, _, _) = enumerate_branches();
    let mut worst = 0.0f64;
    let mut failed = Vec::new();
    let mut statuses = Vec::new();
    for b in &all {
        match verify_branch(b, 200, 1e-9, SEED) {
            Ok(r) => {
                worst = worst.max(r.field_residual_max);
                if !r.passed() || (r.status == BranchStatus::Certified && r.ledger.is_empty()) {
                    failed.push(r.branch_id.clone());
                }
                statuses.push(format!("{}={:?}", r.branch_id, r.status));
            }
            Err(e) => failed.push(format!("{} ({e})", b.id)),
        }
    }
    Verdict {
        pass: failed.is_empty() && all.len() == 7 && worst <= 1e-9,
        detail: format!("max residual {worst:.3e} (tol 1e-9); {}; failed {:?}", statuses.join(", "), failed),
    }
}

fn no_go() -> Verdict {
    let (_, certs, _) = enumerate_branches();
    let mut parts = Vec::new();
    let mut pass = certs.len() == 4;
    for c in &certs {
        match certify_no_go(c, 10_000, SEED) {
            Ok(r) => {
                pass &= r.passed && r.nontrivial == 0 && r.full_rank_samples == r.samples;
                parts.push(format!("{}: {} nontrivial, forced {}", r.group, r.nontrivial, r.forced_relation));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{}: {e}", c.group));
            }
        }
    }
    Verdict { pass, detail: parts.join("; ") }
}

fn scale_invariance() -> Verdict {
    let mut worst = 0.0f64;
    let mut metrics = Vec::new();
    for (gi, g) in groups().iter().enumerate() {
        for k in 0..10 {
            metrics.push((*g, sample_metric(&mut rng(gi, 4000 + k), SignatureClass::Lorentzian)));
        }
    }
    let (all, _, _) = enumerate_branches();
    for b in &all {
        for k in 0..10 {
            if let Ok(s) = sample_branch(b, SEED, k) {
                metrics.push((s.group, s.eta));
            }
        }
    }
    for (g, eta) in &metrics {
        let c = structure_constants(g);
        let base = solve_alpha(&c, eta, 1e-9).nullspace;
        for lambda in [0.1, 10.0] {
            let Ok(scaled) = eta.scaled(lambda) else {
                return Verdict { pass: false, detail: format!("{g}: scaling failed") };
            };
            worst = worst.max(subspace_distance(&base, &solve_alpha(&c, &scaled, 1e-9).nullspace));
        }
    }
    Verdict {
        pass: worst <= 1e-8,
        detail: format!("{} metrics, max projection residual {worst:.3e} (tol 1e-8)", metrics.len()),
    }
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_g4maxwell")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Verdict {
    let report = ["report", "--samples", "100", "--seed", "11", "--format", "json"];
    let scan = ["scan", "--group", "G4-I:c=0.5", "--samples", "500", "--seed", "11", "--format", "json"];
    let run = || -> Result<bool, String> {
        let a = cli(&report)?;
        let b = cli(&report)?;
        let one = cli(&[&report[..], &["--workers", "1"]].concat())?;
        let four = cli(&[&report[..], &["--workers", "4"]].concat())?;
        let s1 = cli(&[&scan[..], &["--workers", "1"]].concat())?;
        let s4 = cli(&[&scan[..], &["--workers", "4"]].concat())?;
        Ok(a == b && a == one && one == four && s1 == s4)
    };
    match run() {
        Ok(same) => Verdict { pass: same, detail: format!("report and scan documents identical: {same}") },
        Err(e) => Verdict { pass: false, detail: e },
    }
}

fn main() {
    type Criterion = (&'static str, Option<u64>, fn() -> Verdict);
    let criteria: Vec<Criterion> = vec![
        ("frame validity", Some(5), frames),
        ("Jacobi identity", None, jacobi),
        ("frame projection of F", None, projection),
        ("oracle equivalence", None, oracles),
        ("homogeneity", None, homogeneity),
        ("branch verification", Some(60), branches),
        ("no-go certification", Some(120), no_go),
        ("scale invariance", None, scale_invariance),
        ("determinism", None, determinism),
    ];
    let mut failures = 0;
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        let v = timed(limit.map(Duration::from_secs), f);
        println!("{} criterion {} ({name}): {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
        failures += usize::from(!v.pass);
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
