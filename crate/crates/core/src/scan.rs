//! Randomized classification of field-relevant nullspace dimensions.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{structure_constants, GroupId};
use crate::linalg::Vec4;
use crate::maxwell::{algebraic_residual, normalized_residual, pde_residual, solve_alpha, PotentialConstants};
use crate::sampling::{purpose, random_point, sample_metric, stream, SignatureClass};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub count: usize,
    pub seed: u64,
    pub class: SignatureClass,
    /// Worker threads; 0 uses the global pool. Not part of the output document.
    #[serde(skip)]
    pub workers: usize,
    /// Relative rank threshold for the Maxwell matrix.
    pub tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { count: 1000, seed: 0, class: SignatureClass::Lorentzian, workers: 0, tol: 1e-9 }
    }
}

/// First sample that produced a given field dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub field_dim: usize,
    pub gauge_dim: usize,
    pub eta_upper_triangle: [f64; 10],
    pub alpha_basis: Vec<Vec4>,
    /// Normalized algebraic residual of each basis vector.
    pub algebraic_residuals: Vec<f64>,
    /// Normalized PDE residual of each basis vector at one random point.
    pub pde_residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub group: String,
    pub config: ScanConfig,
    /// Field-relevant nullspace dimension → number of samples.
    pub histogram: BTreeMap<usize, usize>,
    pub witnesses: Vec<Witness>,
}

impl ScanResult {
    pub fn nontrivial(&self) -> usize {
        self.histogram.iter().filter(|(d, _)| **d > 0).map(|(_, n)| n).sum()
    }
}

struct Sample {
    field_dim: usize,
    witness: Witness,
}

fn classify_one(g: &GroupId, cfg: &ScanConfig, index: usize) -> Sample {
    let mut rng = stream(cfg.seed, purpose::SCAN, index as u64);
    let eta = sample_metric(&mut rng, cfg.class);
    let c = structure_constants(g);
    let sol = solve_alpha(&c, &eta, cfg.tol);
    let p = random_point(g, &mut rng);
    let mut alg = Vec::new();
    let mut pde = Vec::new();
    for v in &sol.field {
        let a = PotentialConstants(*v);
        alg.push(normalized_residual(&algebraic_residual(&c, &eta, &a), &c, &eta, &a));
        let r = pde_residual(g, &eta, &a, &p).map(|r| normalized_residual(&r, &c, &eta, &a)).unwrap_or(f64::NAN);
        pde.push(r);
    }
    Sample {
        field_dim: sol.field_dim(),
        witness: Witness {
            index,
            field_dim: sol.field_dim(),
            gauge_dim: sol.gauge.len(),
            eta_upper_triangle: eta.upper_triangle(),
            alpha_basis: sol.field,
            algebraic_residuals: alg,
            pde_residuals: pde,
        },
    }
}

/// Run `f` on a pool with `workers` threads (0 = global pool).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

pub fn scan_classify(g: &GroupId, cfg: &ScanConfig) -> ScanResult {
    let samples: Vec<Sample> =
        with_workers(cfg.workers, || (0..cfg.count).into_par_iter().map(|i| classify_one(g, cfg, i)).collect());
    let mut histogram = BTreeMap::new();
    let mut witnesses: BTreeMap<usize, Witness> = BTreeMap::new();
    for s in samples {
        *histogram.entry(s.field_dim).or_insert(0) += 1;
        witnesses.entry(s.field_dim).or_insert(s.witness);
    }
    ScanResult { group: g.to_string(), config: *cfg, histogram, witnesses: witnesses.into_values().collect() }
}
