//! Seed-derived random streams and samplers for points, metrics and potentials.
//!
//! Every sample draws from its own ChaCha stream keyed by `(seed, stream)`,
//! so results do not depend on evaluation order or worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::{domain_guard, GroupId};
use crate::error::CoreError;
use crate::jet::Point;
use crate::linalg::Matrix4;
use crate::maxwell::{FrameMetric, PotentialConstants};

pub type SampleRng = ChaCha8Rng;

/// Purpose tags keep streams of different consumers disjoint.
pub mod purpose {
    pub const SCAN: u64 = 1;
    pub const BRANCH: u64 = 2;
    pub const NOGO: u64 = 3;
    pub const CATALOG: u64 = 4;
    pub const SOLVE: u64 = 5;
}

pub fn stream(seed: u64, purpose: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((purpose << 48) ^ index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignatureClass {
    /// One negative eigenvalue.
    Lorentzian,
    /// Positive definite.
    Riemannian,
    /// Two negative eigenvalues.
    Split,
}

impl std::str::FromStr for SignatureClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lorentzian" => Ok(SignatureClass::Lorentzian),
            "riemannian" => Ok(SignatureClass::Riemannian),
            "split" => Ok(SignatureClass::Split),
            _ => Err(format!("unknown signature class `{s}` (lorentzian, riemannian, split)")),
        }
    }
}

/// Uniform in `[-1, 1]` outside `(-1e-3, 1e-3)`.
pub fn nonzero_uniform(rng: &mut SampleRng) -> f64 {
    loop {
        let x: f64 = rng.random_range(-1.0..=1.0);
        if x.abs() >= 1e-3 {
            return x;
        }
    }
}

pub fn uniform(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Random in-domain point: uniform in `[-1,1]⁴`, with `u¹ ∈ [0.2, π−0.2]` for G4(VIII).
pub fn random_point(g: &GroupId, rng: &mut SampleRng) -> Point {
    loop {
        let mut u = [0.0; 4];
        for x in &mut u {
            *x = rng.random_range(-1.0..=1.0);
        }
        if let GroupId::G4VIII = g {
            u[0] = rng.random_range(0.2..=std::f64::consts::PI - 0.2);
        }
        let p = Point::new(u);
        if domain_guard(g, &p).is_ok() {
            return p;
        }
    }
}

/// Potential with components uniform in `[-1, 1]`.
pub fn random_alpha(rng: &mut SampleRng) -> PotentialConstants {
    let mut a = [0.0; 4];
    for x in &mut a {
        *x = rng.random_range(-1.0..=1.0);
    }
    PotentialConstants(a)
}

/// `L·D·Lᵀ` with `L` lower triangular (off-diagonal uniform in `[-1,1]`,
/// diagonal uniform in `[0.5,1.5]`) and `D` a diagonal sign matrix whose
/// negative slots are placed uniformly at random.
pub fn sample_metric(rng: &mut SampleRng, class: SignatureClass) -> FrameMetric {
    loop {
        let mut l = Matrix4::zeros();
        for r in 1..=4 {
            for c in 1..r {
                l.set(r, c, rng.random_range(-1.0..=1.0));
            }
            l.set(r, r, rng.random_range(0.5..=1.5));
        }
        let mut d = [1.0; 4];
        let negatives = match class {
            SignatureClass::Lorentzian => 1,
            SignatureClass::Riemannian => 0,
            SignatureClass::Split => 2,
        };
        let mut placed = 0;
        while placed < negatives {
            let k = rng.random_range(0..4);
            if d[k] > 0.0 {
                d[k] = -1.0;
                placed += 1;
            }
        }
        let eta = l.matmul(&Matrix4::diag(d)).matmul(&l.transpose());
        // exact symmetry despite rounding
        let eta = eta.add(&eta.transpose()).scale(0.5);
        if let Ok(m) = FrameMetric::new(eta) {
            return m;
        }
    }
}

/// Random symmetric matrix with entries uniform in `[-1, 1]`.
pub fn random_symmetric(rng: &mut SampleRng) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for r in 1..=4 {
        for c in r..=4 {
            let x = rng.random_range(-1.0..=1.0);
            m.set(r, c, x);
            m.set(c, r, x);
        }
    }
    m
}

/// Retry `attempt` until it yields a value, at most `max_attempts` times.
pub fn retry<T>(what: &str, max_attempts: usize, mut attempt: impl FnMut() -> Option<T>) -> Result<T, CoreError> {
    for _ in 0..max_attempts {
        if let Some(v) = attempt() {
            return Ok(v);
        }
    }
    Err(CoreError::Infeasible { what: what.to_string(), attempts: max_attempts })
}
