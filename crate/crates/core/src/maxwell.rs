//! Invariant potentials, field strengths and the vacuum Maxwell residual.
//!
//! The residual is computed twice: as the covariant divergence of `F^{ij}`
//! using jets of the tetrad, and as a point-free contraction of the
//! structure constants with the frame field.

use serde::{Deserialize, Serialize};

use crate::catalog::{evaluate_values, frame, structure_constants, FrameField, GroupId, StructureConstants};
use crate::error::CoreError;
use crate::jet::{Jet1, Point};
use crate::linalg::{nullspace, orthonormal_span, reject, signature, Matrix4, Signature, Vec4};

/// Constant frame metric `η_{αβ}` with its inverse `η^{αβ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameMetric {
    down: Matrix4,
    up: Matrix4,
    det: f64,
}

impl FrameMetric {
    /// From `η_{αβ}`; must be symmetric and invertible.
    pub fn new(down: Matrix4) -> Result<Self, CoreError> {
        if !down.is_finite() {
            return Err(CoreError::InvalidMetric("entries must be finite".into()));
        }
        if !down.is_symmetric(1e-12 * down.max_abs().max(1.0)) {
            return Err(CoreError::InvalidMetric("matrix is not symmetric".into()));
        }
        let up = down.inverse(1e-12).ok_or_else(|| CoreError::InvalidMetric("matrix is singular".into()))?;
        Ok(FrameMetric { down, up, det: down.det() })
    }

    /// From `η^{αβ}`.
    pub fn from_up(up: Matrix4) -> Result<Self, CoreError> {
        let inv = FrameMetric::new(up)?;
        Ok(FrameMetric { down: inv.up, up, det: inv.up.det() })
    }

    /// From the row-major upper triangle of `η_{αβ}`.
    pub fn from_upper_triangle(v: &[f64; 10]) -> Result<Self, CoreError> {
        FrameMetric::new(Matrix4::from_upper_triangle(v))
    }

    pub fn down(&self) -> &Matrix4 {
        &self.down
    }

    pub fn up(&self) -> &Matrix4 {
        &self.up
    }

    /// `η = det η_{αβ}`.
    pub fn det(&self) -> f64 {
        self.det
    }

    /// `η_{ab}`, 1-based.
    pub fn lo(&self, a: usize, b: usize) -> f64 {
        self.down.get(a, b)
    }

    /// `η^{ab}`, 1-based.
    pub fn hi(&self, a: usize, b: usize) -> f64 {
        self.up.get(a, b)
    }

    pub fn signature(&self) -> Signature {
        signature(&self.down, 1e-12)
    }

    /// Physical admissibility: Lorentzian signature, i.e. `det < 0`.
    pub fn is_lorentzian(&self) -> bool {
        self.det < 0.0 && self.signature().is_lorentzian()
    }

    /// `max|η_{..}| · max|η^{..}|`, a cheap condition estimate.
    pub fn condition(&self) -> f64 {
        self.down.max_abs() * self.up.max_abs()
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self, CoreError> {
        FrameMetric::new(self.down.scale(lambda))
    }

    pub fn upper_triangle(&self) -> [f64; 10] {
        self.down.upper_triangle()
    }
}

/// Constant frame components `α_α` of the potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PotentialConstants(pub [f64; 4]);

impl PotentialConstants {
    pub fn norm(&self) -> f64 {
        crate::linalg::norm(&self.0)
    }
}

/// `F_{αβ}` and `F^{αβ} = η^{αμ} η^{βν} F_{μν}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldStrength {
    pub down: Matrix4,
    pub up: Matrix4,
}

impl FieldStrength {
    pub fn new(c: &StructureConstants, eta: &FrameMetric, alpha: &PotentialConstants) -> Self {
        let down = field_strength_frame(c, alpha);
        let up = eta.up().matmul(&down).matmul(&eta.up().transpose());
        FieldStrength { down, up }
    }
}

/// `F_{αβ} = C^γ_{αβ} α_γ`.
pub fn field_strength_frame(c: &StructureConstants, alpha: &PotentialConstants) -> Matrix4 {
    let mut f = Matrix4::zeros();
    for g in 1..=4 {
        f = f.add(&c.slice(g).scale(alpha.0[g - 1]));
    }
    f
}

/// `R^γ = M[γ][ρ] α_ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxwellMatrix {
    pub m: Matrix4,
}

/// `R^γ = F^{γβ} C^μ_{μβ} − ½ C^γ_{αβ} F^{αβ}`.
pub fn algebraic_residual(c: &StructureConstants, eta: &FrameMetric, alpha: &PotentialConstants) -> Vec4 {
    let fu = FieldStrength::new(c, eta, alpha).up;
    let t = c.trace();
    let mut r = fu.mul_vec(&t);
    for (g, rg) in r.iter_mut().enumerate() {
        let cg = c.slice(g + 1);
        let mut s = 0.0;
        for a in 1..=4 {
            for b in 1..=4 {
                s += cg.get(a, b) * fu.get(a, b);
            }
        }
        *rg -= 0.5 * s;
    }
    r
}

pub fn maxwell_matrix(c: &StructureConstants, eta: &FrameMetric) -> MaxwellMatrix {
    let mut m = Matrix4::zeros();
    for rho in 1..=4 {
        let mut e = [0.0; 4];
        e[rho - 1] = 1.0;
        let col = algebraic_residual(c, eta, &PotentialConstants(e));
        for g in 1..=4 {
            m.set(g, rho, col[g - 1]);
        }
    }
    MaxwellMatrix { m }
}

/// `‖R‖ / (‖η^{..}‖² ‖C‖ ‖α‖)`, zero when the denominator vanishes.
pub fn normalized_residual(r: &Vec4, c: &StructureConstants, eta: &FrameMetric, alpha: &PotentialConstants) -> f64 {
    let den = eta.up().frobenius().powi(2) * c.frobenius() * alpha.norm();
    if den == 0.0 {
        0.0
    } else {
        crate::linalg::norm(r) / den
    }
}

/// Holonomic metric `g_{ik} = e^α_i e^β_k η_{αβ}` with first derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolonomicMetric {
    pub g_down: Matrix4<Jet1>,
    pub g_up: Matrix4<Jet1>,
    pub det_g: Jet1,
}

fn contract_frame(e: &Matrix4<Jet1>, k: &Matrix4) -> Matrix4<Jet1> {
    // out_{ij} = Σ e[a][i] k[a][b] e[b][j]
    let kj = e.map(|x| x);
    let mut out = Matrix4::<Jet1>::zeros();
    for i in 1..=4 {
        for j in 1..=4 {
            let mut s = Jet1::zero();
            for a in 1..=4 {
                for b in 1..=4 {
                    let w = k.get(a, b);
                    if w != 0.0 {
                        s = s + kj.get(a, i) * kj.get(b, j) * w;
                    }
                }
            }
            out.set(i, j, s);
        }
    }
    out
}

pub fn metric_holonomic(g: &GroupId, eta: &FrameMetric, p: &Point) -> Result<HolonomicMetric, CoreError> {
    let f = frame(g, p)?;
    let g_down = contract_frame(&f.e_down, eta.down());
    let g_up = contract_frame(&f.e_up, eta.up());
    let de = f.e_down.det();
    let det_g = de * de * eta.det();
    Ok(HolonomicMetric { g_down, g_up, det_g })
}

/// `A_i = e^α_i α_α` with first derivatives.
pub fn potential_holonomic(g: &GroupId, alpha: &PotentialConstants, p: &Point) -> Result<[Jet1; 4], CoreError> {
    let f = frame(g, p)?;
    Ok(potential_from_frame(&f, alpha))
}

fn potential_from_frame(f: &FrameField, alpha: &PotentialConstants) -> [Jet1; 4] {
    let mut a = [Jet1::zero(); 4];
    for (i, ai) in a.iter_mut().enumerate() {
        for k in 0..4 {
            *ai = *ai + f.e_down.get(k + 1, i + 1) * alpha.0[k];
        }
    }
    a
}

/// Holonomic field tensor `F_ij = ∂_j A_i − ∂_i A_j`.
///
/// The sign matches `F_{αβ} = C^γ_{αβ} α_γ` under the bracket convention
/// `[e_α, e_β]^k = e_α^i ∂_i e_β^k − e_β^i ∂_i e_α^k`.
pub fn field_strength_holonomic(g: &GroupId, alpha: &PotentialConstants, p: &Point) -> Result<Matrix4, CoreError> {
    let a = potential_holonomic(g, alpha, p)?;
    let mut f = Matrix4::zeros();
    for i in 1..=4 {
        for j in 1..=4 {
            f.set(i, j, a[i - 1].d(j) - a[j - 1].d(i));
        }
    }
    Ok(f)
}

/// `e_α^i e_β^j F_ij` at `p`.
pub fn frame_projection(g: &GroupId, f_hol: &Matrix4, p: &Point) -> Result<Matrix4, CoreError> {
    let e = frame(g, p)?.e_up.values();
    Ok(e.matmul(f_hol).matmul(&e.transpose()))
}

/// `X^{ij} = F^{αβ} e_α^i e_β^j`.
fn raise_to_holonomic(e_up: &Matrix4<Jet1>, fu: &Matrix4) -> Matrix4<Jet1> {
    contract_frame(e_up, fu)
}

fn project_to_frame(e_down: &Matrix4, r: &Vec4) -> Vec4 {
    e_down.mul_vec(r)
}

/// Covariant divergence `(1/√|g|) ∂_j(√|g| F^{ij})` projected with `e^γ_i`.
pub fn pde_residual(g: &GroupId, eta: &FrameMetric, alpha: &PotentialConstants, p: &Point) -> Result<Vec4, CoreError> {
    let f = frame(g, p)?;
    let fu = FieldStrength::new(&structure_constants(g), eta, alpha).up;
    let x = raise_to_holonomic(&f.e_up, &fu);
    // √|g| = |det e^α_i| √|η|; the constant factor drops out of the log-derivative.
    let log_vol = f.e_down.det().ln_abs()?;
    let mut r = [0.0; 4];
    for (i, ri) in r.iter_mut().enumerate() {
        for j in 1..=4 {
            let xij = x.get(i + 1, j);
            *ri += xij.d(j) + xij.value * log_vol.d(j);
        }
    }
    Ok(project_to_frame(&f.e_down.values(), &r))
}

/// The same divergence with central differences of step `h` on tetrad values.
pub fn pde_residual_fd(
    g: &GroupId,
    eta: &FrameMetric,
    alpha: &PotentialConstants,
    p: &Point,
    h: f64,
) -> Result<Vec4, CoreError> {
    let f0 = frame(g, p)?;
    let fu = FieldStrength::new(&structure_constants(g), eta, alpha).up;
    let density = |q: &Point| -> Matrix4 {
        let f = evaluate_values(g, &q.u);
        let e = f.e_up.values();
        e.transpose().matmul(&fu).matmul(&e).scale(f.e_down.values().det().abs())
    };
    let mut r = [0.0; 4];
    for j in 1..=4 {
        let d = density(&p.shifted(j, h)).sub(&density(&p.shifted(j, -h))).scale(0.5 / h);
        for (i, ri) in r.iter_mut().enumerate() {
            *ri += d.get(i + 1, j);
        }
    }
    let vol = f0.e_down.values().det().abs();
    let r = r.map(|x| x / vol);
    Ok(project_to_frame(&f0.e_down.values(), &r))
}

/// Orthonormal basis of `ker(α ↦ F_{αβ})`, the pure-gauge directions.
pub fn gauge_basis(c: &StructureConstants) -> Vec<Vec4> {
    let mut gram = Matrix4::zeros();
    for r in 1..=4 {
        for s in 1..=4 {
            let (cr, cs) = (c.slice(r), c.slice(s));
            let mut v = 0.0;
            for a in 1..=4 {
                for b in 1..=4 {
                    v += cr.get(a, b) * cs.get(a, b);
                }
            }
            gram.set(r, s, v);
        }
    }
    nullspace(&gram, 1e-12)
}

/// Nullspace of the Maxwell matrix split into gauge and field-relevant parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSolution {
    /// Full nullspace of `M`.
    pub nullspace: Vec<Vec4>,
    /// Pure-gauge directions (always inside the nullspace).
    pub gauge: Vec<Vec4>,
    /// Orthonormal basis of the nullspace modulo gauge.
    pub field: Vec<Vec4>,
}

impl AlphaSolution {
    pub fn field_dim(&self) -> usize {
        self.field.len()
    }
}

pub fn solve_alpha(c: &StructureConstants, eta: &FrameMetric, tol: f64) -> AlphaSolution {
    let m = maxwell_matrix(c, eta).m;
    let ns = nullspace(&m, tol);
    let gauge = gauge_basis(c);
    let rejected: Vec<Vec4> = ns.iter().map(|v| reject(v, &gauge)).collect();
    let field = orthonormal_span(&rejected, 1e-6);
    AlphaSolution { nullspace: ns, gauge, field }
}

/// Residual document for one `(group, η, α)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub group: String,
    pub params: serde_json::Value,
    pub eta: [f64; 10],
    pub alpha: [f64; 4],
    pub residual_norm: f64,
    pub points_tested: usize,
}
