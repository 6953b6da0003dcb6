//! Registry of solution families and no-go results, with constrained
//! samplers and the verification harness.

mod branches;
mod nogo;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{structure_constants, GroupId, G4VI_EXCLUSION};
use crate::error::CoreError;
use crate::linalg::{norm, orthonormal_span, rank, reject, subspace_distance, Matrix4, Vec4};
use crate::maxwell::{
    gauge_basis, maxwell_matrix, normalized_residual, pde_residual, solve_alpha, FrameMetric, PotentialConstants,
};
use crate::sampling::{
    nonzero_uniform, purpose, random_point, retry, sample_metric, stream, SampleRng, SignatureClass,
};

/// Attempts allowed per constrained draw.
pub const MAX_ATTEMPTS: usize = 100_000;
/// PDE evaluation points per sampled member.
pub const POINTS_PER_SAMPLE: usize = 5;
/// Constraint tolerance for sampled members.
pub const CONSTRAINT_TOL: f64 = 1e-10;
/// Branch-closure tolerance.
pub const CLOSURE_TOL: f64 = 1e-8;

pub type EtaFn = fn(&FrameMetric, &GroupId) -> f64;
pub type AlphaFn = fn(&FrameMetric, &GroupId, &[f64]) -> Vec4;
/// One constrained draw; `None` rejects it.
pub type MetricSampler = fn(&mut SampleRng, &GroupId) -> Option<FrameMetric>;

#[derive(Clone, Copy)]
pub struct Constraint {
    pub label: &'static str,
    pub f: EtaFn,
}

/// Constraint variety on η plus a linear α family over it.
#[derive(Clone)]
pub struct BranchForm {
    pub relation: &'static str,
    pub eta_constraints: Vec<Constraint>,
    pub sampler: MetricSampler,
    pub alpha_map: AlphaFn,
    pub free_param_count: usize,
}

#[derive(Clone)]
pub struct SolutionBranch {
    pub id: &'static str,
    pub group: &'static str,
    pub admits: fn(&GroupId) -> bool,
    pub group_sampler: fn(&mut SampleRng) -> GroupId,
    /// Whether members are required to be Lorentzian; otherwise `det η > 0`.
    pub lorentzian: bool,
    pub printed: BranchForm,
    pub certified: Option<BranchForm>,
}

impl SolutionBranch {
    /// The form shipped as the branch's constants.
    pub fn shipped(&self) -> &BranchForm {
        self.certified.as_ref().unwrap_or(&self.printed)
    }
}

#[derive(Clone)]
pub struct NoGoCertificate {
    pub group: GroupId,
    pub printed_relation: &'static str,
    pub forced_relation_text: &'static str,
    /// Vanishes whenever the field block is singular.
    pub forced_relation: EtaFn,
    /// `det(field block) = det_prefactor · forced_relation`.
    pub det_prefactor: EtaFn,
    /// `det η` demanded by a zero of the forced relation, when it can be solved for.
    pub required_det: Option<EtaFn>,
    pub contradiction: &'static str,
    pub stratum_text: &'static str,
    /// Measure-zero stratum where the no-go fails.
    pub stratum: MetricSampler,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub printed_residual: f64,
    pub certified_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypoLedgerEntry {
    pub location: String,
    pub printed: String,
    pub certified: String,
    pub evidence: Evidence,
}

/// One member of a branch.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSample {
    pub group: GroupId,
    pub eta: FrameMetric,
    pub alpha: PotentialConstants,
    pub free: Vec<f64>,
}

fn admissible(b: &SolutionBranch, eta: &FrameMetric) -> bool {
    if b.lorentzian {
        eta.is_lorentzian()
    } else {
        eta.det() > 0.0
    }
}

fn constraint_max(form: &BranchForm, eta: &FrameMetric, g: &GroupId) -> f64 {
    form.eta_constraints.iter().map(|c| (c.f)(eta, g).abs()).fold(0.0, f64::max)
}

/// Draw one member of `form` from `rng`.
pub fn sample_form(b: &SolutionBranch, form: &BranchForm, rng: &mut SampleRng) -> Result<BranchSample, CoreError> {
    let (group, eta) = retry(b.id, MAX_ATTEMPTS, || {
        let g = (b.group_sampler)(rng);
        let eta = (form.sampler)(rng, &g)?;
        (admissible(b, &eta) && constraint_max(form, &eta, &g) <= CONSTRAINT_TOL).then_some((g, eta))
    })?;
    let free: Vec<f64> = (0..form.free_param_count).map(|_| nonzero_uniform(rng)).collect();
    let alpha = PotentialConstants((form.alpha_map)(&eta, &group, &free));
    Ok(BranchSample { group, eta, alpha, free })
}

/// Member `index` of the shipped form, from the stream of `seed`.
pub fn sample_branch(b: &SolutionBranch, seed: u64, index: u64) -> Result<BranchSample, CoreError> {
    let mut rng = stream(seed, purpose::BRANCH, index);
    sample_form(b, b.shipped(), &mut rng)
}

/// Span of the α family at fixed η, gauge directions removed.
fn family_span(form: &BranchForm, eta: &FrameMetric, g: &GroupId, gauge: &[Vec4]) -> Vec<Vec4> {
    let vs: Vec<Vec4> = (0..form.free_param_count)
        .map(|k| {
            let mut e = vec![0.0; form.free_param_count];
            e[k] = 1.0;
            let v = (form.alpha_map)(eta, g, &e);
            let n = norm(&v);
            if n == 0.0 {
                v
            } else {
                reject(&v, gauge).map(|x| x / n)
            }
        })
        .collect();
    orthonormal_span(&vs, 1e-6)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormCheck {
    pub relation: String,
    pub samples: usize,
    pub constraints_residual_max: f64,
    /// Normalized PDE residual, max over members and points.
    pub field_residual_max: f64,
    pub raw_residual_max: f64,
    /// Field-relevant nullspace dimensions seen.
    pub nullspace_dim: BTreeSet<usize>,
    /// Mutual projection distance between the α family and the solver's field nullspace.
    pub closure_max: f64,
    pub trivial: bool,
}

pub fn check_form(
    b: &SolutionBranch,
    form: &BranchForm,
    n_samples: usize,
    seed: u64,
    tag: u64,
) -> Result<FormCheck, CoreError> {
    struct One {
        cons: f64,
        norm_max: f64,
        raw_max: f64,
        dim: usize,
        closure: f64,
        trivial: bool,
    }
    let per_sample: Vec<Result<One, CoreError>> = (0..n_samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(seed, purpose::BRANCH, (tag << 24) | k as u64);
            let s = sample_form(b, form, &mut rng)?;
            let c = structure_constants(&s.group);
            let cons = constraint_max(form, &s.eta, &s.group);
            let mut norm_max = 0.0f64;
            let mut raw_max = 0.0f64;
            for _ in 0..POINTS_PER_SAMPLE {
                let p = random_point(&s.group, &mut rng);
                let r = pde_residual(&s.group, &s.eta, &s.alpha, &p)?;
                raw_max = raw_max.max(norm(&r));
                norm_max = norm_max.max(normalized_residual(&r, &c, &s.eta, &s.alpha));
            }
            let sol = solve_alpha(&c, &s.eta, 1e-9);
            let fam = family_span(form, &s.eta, &s.group, &sol.gauge);
            let closure = subspace_distance(&sol.field, &fam);
            let trivial = fam.is_empty();
            Ok(One { cons, norm_max, raw_max, dim: sol.field_dim(), closure, trivial })
        })
        .collect();
    let mut out = FormCheck {
        relation: form.relation.to_string(),
        samples: n_samples,
        constraints_residual_max: 0.0,
        field_residual_max: 0.0,
        raw_residual_max: 0.0,
        nullspace_dim: BTreeSet::new(),
        closure_max: 0.0,
        trivial: n_samples > 0,
    };
    for r in per_sample {
        let One { cons, norm_max: nr, raw_max: raw, dim, closure, trivial } = r?;
        out.constraints_residual_max = out.constraints_residual_max.max(cons);
        out.field_residual_max = out.field_residual_max.max(nr);
        out.raw_residual_max = out.raw_residual_max.max(raw);
        out.nullspace_dim.insert(dim);
        out.closure_max = out.closure_max.max(closure);
        out.trivial &= trivial;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchStatus {
    Printed,
    Certified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchReport {
    pub branch_id: String,
    pub group: String,
    pub status: BranchStatus,
    pub lorentzian: bool,
    pub relation: String,
    pub constraints_residual_max: f64,
    pub field_residual_max: f64,
    pub nullspace_dim: BTreeSet<usize>,
    pub free_params: usize,
    pub closure_max: f64,
    pub samples: usize,
    pub printed_check: FormCheck,
    pub warnings: Vec<String>,
    pub ledger: Vec<TypoLedgerEntry>,
}

impl BranchReport {
    pub fn passed(&self) -> bool {
        self.status != BranchStatus::Failed
    }
}

fn form_ok(c: &FormCheck, tol: f64) -> bool {
    c.field_residual_max <= tol && c.constraints_residual_max <= CONSTRAINT_TOL
}

/// Verify the printed form; when it fails, verify the certified form and
/// record the divergence in the ledger.
pub fn verify_branch(b: &SolutionBranch, n_samples: usize, tol: f64, seed: u64) -> Result<BranchReport, CoreError> {
    let printed = check_form(b, &b.printed, n_samples, seed, 0)?;
    let mut warnings = Vec::new();
    if !b.lorentzian {
        warnings.push("branch admits no Lorentzian member; sampled with det η > 0".to_string());
    }
    let (status, accepted, relation, free, ledger) = if form_ok(&printed, tol) {
        (BranchStatus::Printed, printed.clone(), b.printed.relation, b.printed.free_param_count, Vec::new())
    } else if let Some(cert_form) = &b.certified {
        let cert = check_form(b, cert_form, n_samples, seed, 1)?;
        let entry = TypoLedgerEntry {
            location: format!("{} ({})", b.id, b.group),
            printed: b.printed.relation.to_string(),
            certified: cert_form.relation.to_string(),
            evidence: Evidence {
                printed_residual: printed.field_residual_max,
                certified_residual: cert.field_residual_max,
            },
        };
        let status = if form_ok(&cert, tol) { BranchStatus::Certified } else { BranchStatus::Failed };
        (status, cert, cert_form.relation, cert_form.free_param_count, vec![entry])
    } else {
        (BranchStatus::Failed, printed.clone(), b.printed.relation, b.printed.free_param_count, Vec::new())
    };
    if accepted.trivial {
        warnings.push("branch is trivial: the α family is pure gauge or zero".to_string());
    }
    if accepted.closure_max > CLOSURE_TOL {
        warnings.push(format!("α family and solver nullspace differ (distance {:e})", accepted.closure_max));
    }
    Ok(BranchReport {
        branch_id: b.id.to_string(),
        group: b.group.to_string(),
        status,
        lorentzian: b.lorentzian,
        relation: relation.to_string(),
        constraints_residual_max: accepted.constraints_residual_max,
        field_residual_max: accepted.field_residual_max,
        nullspace_dim: accepted.nullspace_dim.clone(),
        free_params: free,
        closure_max: accepted.closure_max,
        samples: n_samples,
        printed_check: printed,
        warnings,
        ledger,
    })
}

/// Restriction of the Maxwell matrix to `α_1..α_3` and `R^1..R^3`.
pub fn field_block(c: &crate::catalog::StructureConstants, eta: &FrameMetric) -> Matrix4 {
    let mut m = maxwell_matrix(c, eta).m;
    for k in 1..=4 {
        m.set(4, k, 0.0);
        m.set(k, 4, 0.0);
    }
    m
}

fn det3(m: &Matrix4) -> f64 {
    m.cofactor(4, 4)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumWitness {
    pub relation: String,
    pub eta_upper_triangle: [f64; 10],
    pub field_dim: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoGoReport {
    pub group: String,
    pub samples: usize,
    pub seed: u64,
    pub nontrivial: usize,
    pub field_dim_histogram: BTreeMap<usize, usize>,
    pub printed_relation: String,
    pub forced_relation: String,
    /// Max relative error of `det(field block) = prefactor · forced`.
    pub factorization_max_rel_err: f64,
    /// Samples whose field block has full rank 3.
    pub full_rank_samples: usize,
    /// Samples where the forced relation is nonzero with one fixed sign.
    pub forced_sign_consistent: usize,
    pub forced_sign: i8,
    /// Samples whose required `det η` is ≥ 0 while the actual one is < 0.
    pub det_sign_flips: Option<usize>,
    /// Block-diagonal samples (η^{α4} = 0) with full-rank field block.
    pub block_full_rank_samples: usize,
    pub contradiction: String,
    pub exceptional_stratum: Option<StratumWitness>,
    pub passed: bool,
}

pub fn certify_no_go(cert: &NoGoCertificate, n_samples: usize, seed: u64) -> Result<NoGoReport, CoreError> {
    let g = cert.group;
    let c = structure_constants(&g);
    let gauge = gauge_basis(&c);
    struct One {
        field_dim: usize,
        rel_err: f64,
        full_rank: bool,
        forced: f64,
        flip: Option<bool>,
        block_full_rank: bool,
    }
    let rows: Vec<One> = (0..n_samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(seed, purpose::NOGO, k as u64);
            let eta = sample_metric(&mut rng, SignatureClass::Lorentzian);
            let sol = solve_alpha(&c, &eta, 1e-9);
            let fb = field_block(&c, &eta);
            let det = det3(&fb);
            let pred = (cert.det_prefactor)(&eta, &g) * (cert.forced_relation)(&eta, &g);
            let rel_err = (det - pred).abs() / pred.abs().max(f64::MIN_POSITIVE);
            let full_rank = rank(&fb, 1e-9) == 3;
            let forced = (cert.forced_relation)(&eta, &g);
            let flip = cert.required_det.map(|f| f(&eta, &g) >= 0.0 && eta.det() < 0.0);
            // block-diagonal companion: drop the η^{α4} couplings
            let mut up = *eta.up();
            for i in 1..=3 {
                up.set(i, 4, 0.0);
                up.set(4, i, 0.0);
            }
            let block_full_rank =
                FrameMetric::from_up(up).map(|b| rank(&field_block(&c, &b), 1e-9) == 3).unwrap_or(false);
            One { field_dim: sol.field_dim(), rel_err, full_rank, forced, flip, block_full_rank }
        })
        .collect();
    let mut hist = BTreeMap::new();
    for r in &rows {
        *hist.entry(r.field_dim).or_insert(0) += 1;
    }
    let nontrivial = rows.iter().filter(|r| r.field_dim > 0).count();
    let fact = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    let full_rank_samples = rows.iter().filter(|r| r.full_rank).count();
    let sign = rows.first().map(|r| r.forced.signum() as i8).unwrap_or(0);
    let forced_sign_consistent = rows.iter().filter(|r| r.forced != 0.0 && r.forced.signum() as i8 == sign).count();
    let det_sign_flips = cert.required_det.map(|_| rows.iter().filter(|r| r.flip == Some(true)).count());
    let block_full_rank_samples = rows.iter().filter(|r| r.block_full_rank).count();

    let mut rng = stream(seed, purpose::NOGO, u64::MAX >> 16);
    let witness = retry("no-go stratum witness", MAX_ATTEMPTS, || (cert.stratum)(&mut rng, &g)).ok().map(|eta| {
        let sol = solve_alpha(&c, &eta, 1e-9);
        let residual = sol
            .field
            .iter()
            .map(|v| {
                let a = PotentialConstants(*v);
                let p = random_point(&g, &mut rng);
                pde_residual(&g, &eta, &a, &p).map(|r| normalized_residual(&r, &c, &eta, &a)).unwrap_or(f64::NAN)
            })
            .fold(0.0, f64::max);
        StratumWitness {
            relation: cert.stratum_text.to_string(),
            eta_upper_triangle: eta.upper_triangle(),
            field_dim: sol.field_dim(),
            residual,
        }
    });
    let _ = gauge;
    let passed = nontrivial == 0
        && fact <= 1e-8
        && full_rank_samples == n_samples
        && forced_sign_consistent == n_samples
        && det_sign_flips.is_none_or(|f| f == n_samples)
        && block_full_rank_samples == n_samples;
    Ok(NoGoReport {
        group: g.to_string(),
        samples: n_samples,
        seed,
        nontrivial,
        field_dim_histogram: hist,
        printed_relation: cert.printed_relation.to_string(),
        forced_relation: cert.forced_relation_text.to_string(),
        factorization_max_rel_err: fact,
        full_rank_samples,
        forced_sign_consistent,
        forced_sign: sign,
        det_sign_flips,
        block_full_rank_samples,
        contradiction: cert.contradiction.to_string(),
        exceptional_stratum: witness,
        passed,
    })
}

/// The registry: seven branches, four no-go certificates and the G4(VI) exclusion.
pub fn enumerate_branches() -> (Vec<SolutionBranch>, Vec<NoGoCertificate>, &'static str) {
    (branches::all(), nogo::all(), G4VI_EXCLUSION)
}

pub fn find_branch(id: &str) -> Option<SolutionBranch> {
    branches::all().into_iter().find(|b| b.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_shape() {
        let (b, n, excl) = enumerate_branches();
        assert_eq!(b.len(), 7);
        assert_eq!(n.len(), 4);
        assert!(excl.contains("G4_VI"));
        let generic = find_branch("G4I-generic").unwrap();
        for c in [0.0, 0.5, -1.0] {
            assert!(!(generic.admits)(&GroupId::G4I { c }));
        }
        assert!((generic.admits)(&GroupId::G4I { c: 2.0 }));
        let v = find_branch("G4V-main").unwrap();
        assert_eq!(v.printed.free_param_count, 1);
        assert!(v.printed.eta_constraints.iter().any(|c| c.label.starts_with("η^{44}")));
    }

    #[test]
    fn sampled_members_satisfy_constraints() {
        for b in enumerate_branches().0 {
            for k in 0..20 {
                let s = sample_branch(&b, 5, k).unwrap();
                assert!(constraint_max(b.shipped(), &s.eta, &s.group) <= CONSTRAINT_TOL, "{}", b.id);
                assert!((b.admits)(&s.group));
                if b.lorentzian {
                    assert!(s.eta.det() < 0.0, "{}", b.id);
                }
                assert!(s.free.iter().all(|x| x.abs() >= 1e-3 && x.abs() <= 1.0));
            }
        }
    }

    #[test]
    fn g4iv_b2_and_g4i_c0_verify() {
        for id in ["G4IV-b2", "G4I-c0"] {
            let r = verify_branch(&find_branch(id).unwrap(), 30, 1e-9, 1).unwrap();
            assert!(r.passed(), "{id}: {r:?}");
            assert!(r.field_residual_max <= 1e-9);
        }
    }

    #[test]
    fn forced_zero_family_is_flagged_trivial() {
        let mut b = find_branch("G4IV-b2").unwrap();
        b.printed.alpha_map = |_, _, _| [0.0; 4];
        let r = verify_branch(&b, 10, 1e-9, 2).unwrap();
        assert_eq!(r.field_residual_max, 0.0);
        assert!(r.warnings.iter().any(|w| w.contains("trivial")));
    }

    #[test]
    fn contravariant_reading_of_iv_b1_fails() {
        let mut b = find_branch("G4IV-b1").unwrap();
        b.printed.sampler = branches::iv_b1_upper_sampler;
        b.printed.eta_constraints = vec![Constraint { label: "η^{23}", f: |e, _| e.hi(2, 3) }];
        let upper = check_form(&b, &b.printed, 30, 3, 0).unwrap();
        let lower = check_form(&find_branch("G4IV-b1").unwrap(), &branches::all()[4].printed, 30, 3, 0).unwrap();
        assert!(lower.field_residual_max <= 1e-9);
        assert!(upper.field_residual_max > 1e-6, "{upper:?}");
    }

    #[test]
    fn generic_constraint_is_continuous_in_c() {
        let b = find_branch("G4I-generic").unwrap();
        let cert = b.certified.as_ref().unwrap();
        let h = cert.eta_constraints[3].f;
        let mut rng = stream(9, purpose::BRANCH, 0);
        let eta = sample_metric(&mut rng, SignatureClass::Lorentzian);
        for c0 in [0.5, -1.0] {
            let mid = h(&eta, &GroupId::G4I { c: c0 });
            for dc in [-0.01, 0.01] {
                let v = h(&eta, &GroupId::G4I { c: c0 + dc });
                assert!(
                    (v - mid).abs()
                        <= 0.03 * (1.0 + mid.abs()) * eta.hi(4, 4).powi(2).max(1.0) * eta.det().abs().max(1.0)
                );
            }
        }
        // certified stratum stays a solution on either side of the special values
        let samplers: [fn(&mut SampleRng) -> GroupId; 4] = [
            |_| GroupId::G4I { c: 0.49 },
            |_| GroupId::G4I { c: 0.51 },
            |_| GroupId::G4I { c: -0.99 },
            |_| GroupId::G4I { c: -1.01 },
        ];
        for (c, sampler) in [0.49, 0.51, -0.99, -1.01].into_iter().zip(samplers) {
            let mut b2 = b.clone();
            b2.group_sampler = sampler;
            let r = check_form(&b2, b2.certified.as_ref().unwrap(), 20, 4, 1).unwrap();
            assert!(r.field_residual_max <= 1e-9, "c={c}: {r:?}");
        }
    }

    #[test]
    fn no_go_small() {
        for cert in enumerate_branches().1 {
            let r = certify_no_go(&cert, 300, 1).unwrap();
            assert!(r.passed, "{r:#?}");
            let w = r.exceptional_stratum.unwrap();
            assert!(w.field_dim >= 1, "{}", r.group);
            assert!(w.residual < 1e-9);
        }
    }
}
