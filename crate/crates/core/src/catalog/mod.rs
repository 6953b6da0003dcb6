//! The seven simply transitive G4 group manifolds: tetrads, structure
//! constants, domain guards and frame self-checks.

mod tetrads;

use tetrads::evaluate_printed;
pub(crate) use tetrads::evaluate_values;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::jet::{lift_all, Jet1, Point};
use crate::linalg::Matrix4;

/// Margin used by [`domain_guard`].
pub const GUARD_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum GroupId {
    #[serde(rename = "G4_I")]
    G4I { c: f64 },
    #[serde(rename = "G4_II")]
    G4II,
    #[serde(rename = "G4_III")]
    G4III { alpha: f64 },
    #[serde(rename = "G4_IV")]
    G4IV,
    #[serde(rename = "G4_V")]
    G4V,
    #[serde(rename = "G4_VII")]
    G4VII,
    #[serde(rename = "G4_VIII")]
    G4VIII,
}

/// Why G4(VI) has no catalog entry.
pub const G4VI_EXCLUSION: &str = "G4_VI omitted: its admissible electromagnetic fields vanish identically";

impl GroupId {
    pub fn g4i(c: f64) -> Result<Self, CoreError> {
        if !c.is_finite() {
            return Err(CoreError::InvalidGroup { input: format!("G4-I:c={c}"), reason: "c must be finite".into() });
        }
        Ok(GroupId::G4I { c })
    }

    pub fn g4iii(alpha: f64) -> Result<Self, CoreError> {
        if !alpha.is_finite() || alpha.sin().abs() <= GUARD_MARGIN {
            return Err(CoreError::InvalidGroup {
                input: format!("G4-III:alpha={alpha}"),
                reason: "alpha must be finite with sin(alpha) != 0".into(),
            });
        }
        Ok(GroupId::G4III { alpha })
    }

    /// One representative of each family, in catalog order.
    pub fn representatives() -> Vec<GroupId> {
        vec![
            GroupId::G4I { c: 2.7 },
            GroupId::G4II,
            GroupId::G4III { alpha: PI / 3.0 },
            GroupId::G4IV,
            GroupId::G4V,
            GroupId::G4VII,
            GroupId::G4VIII,
        ]
    }

    /// Short family name without parameters.
    pub fn family(&self) -> &'static str {
        match self {
            GroupId::G4I { .. } => "G4-I",
            GroupId::G4II => "G4-II",
            GroupId::G4III { .. } => "G4-III",
            GroupId::G4IV => "G4-IV",
            GroupId::G4V => "G4-V",
            GroupId::G4VII => "G4-VII",
            GroupId::G4VIII => "G4-VIII",
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::G4I { c } => write!(f, "G4-I:c={c}"),
            GroupId::G4III { alpha } => write!(f, "G4-III:alpha={alpha}"),
            other => f.write_str(other.family()),
        }
    }
}

impl FromStr for GroupId {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| CoreError::InvalidGroup { input: s.to_string(), reason: reason.to_string() };
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.trim(), None),
        };
        let value = |key: &str| -> Result<f64, CoreError> {
            let p = param.ok_or_else(|| bad(&format!("expected `:{key}=<real>`")))?;
            let (k, v) = p.split_once('=').ok_or_else(|| bad(&format!("expected `{key}=<real>`")))?;
            if k.trim() != key {
                return Err(bad(&format!("unknown parameter `{}`, expected `{key}`", k.trim())));
            }
            v.trim().parse::<f64>().map_err(|_| bad(&format!("`{}` is not a real number", v.trim())))
        };
        let no_param = |g: GroupId| if param.is_some() { Err(bad("this group takes no parameters")) } else { Ok(g) };
        match name {
            "G4-I" => GroupId::g4i(value("c")?).map_err(|e| match e {
                CoreError::InvalidGroup { reason, .. } => bad(&reason),
                e => e,
            }),
            "G4-II" => no_param(GroupId::G4II),
            "G4-III" => GroupId::g4iii(value("alpha")?).map_err(|e| match e {
                CoreError::InvalidGroup { reason, .. } => bad(&reason),
                e => e,
            }),
            "G4-IV" => no_param(GroupId::G4IV),
            "G4-V" => no_param(GroupId::G4V),
            "G4-VI" => Err(bad(G4VI_EXCLUSION)),
            "G4-VII" => no_param(GroupId::G4VII),
            "G4-VIII" => no_param(GroupId::G4VIII),
            _ => Err(bad("unknown group; expected one of G4-I, G4-II, G4-III, G4-IV, G4-V, G4-VII, G4-VIII")),
        }
    }
}

/// Tetrad and co-tetrad evaluated at a point, with first derivatives.
///
/// `e_up.get(α, i) = e_α^i` (frame vectors as rows) and
/// `e_down.get(α, i) = e^α_i` (coframe covectors as rows).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameField {
    pub e_up: Matrix4<Jet1>,
    pub e_down: Matrix4<Jet1>,
}

/// `C^γ_{αβ}`; accessors are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureConstants {
    c: [[[f64; 4]; 4]; 4],
}

impl StructureConstants {
    pub fn zero() -> Self {
        StructureConstants { c: [[[0.0; 4]; 4]; 4] }
    }

    /// Sum of `coeff · δ^γ_g ε^{μν}_{αβ}` terms, given as `(g, coeff, μ, ν)`.
    pub fn from_terms(terms: &[(usize, f64, usize, usize)]) -> Self {
        let mut s = Self::zero();
        for &(g, k, m, n) in terms {
            s.c[g - 1][m - 1][n - 1] += k;
            s.c[g - 1][n - 1][m - 1] -= k;
        }
        s
    }

    pub fn get(&self, gamma: usize, alpha: usize, beta: usize) -> f64 {
        self.c[gamma - 1][alpha - 1][beta - 1]
    }

    /// Raw table indexed `[γ][α][β]` from zero.
    pub(crate) fn raw(&self) -> &[[[f64; 4]; 4]; 4] {
        &self.c
    }

    /// The antisymmetric matrix `C^γ_{··}` for fixed γ.
    pub fn slice(&self, gamma: usize) -> Matrix4 {
        Matrix4::from_rows(self.c[gamma - 1])
    }

    /// Trace vector `t_β = C^μ_{μβ}`.
    pub fn trace(&self) -> [f64; 4] {
        let mut t = [0.0; 4];
        for (b, tb) in t.iter_mut().enumerate() {
            *tb = (0..4).map(|m| self.c[m][m][b]).sum();
        }
        t
    }

    pub fn frobenius(&self) -> f64 {
        self.c.iter().flatten().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Nonzero entries with α < β as `(γ, α, β, value)`, 1-based.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for g in 0..4 {
            for a in 0..4 {
                for b in a + 1..4 {
                    let v = self.c[g][a][b];
                    if v != 0.0 {
                        out.push((g + 1, a + 1, b + 1, v));
                    }
                }
            }
        }
        out
    }

    pub fn max_antisymmetry_defect(&self) -> f64 {
        let mut m = 0.0f64;
        for g in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    m = m.max((self.c[g][a][b] + self.c[g][b][a]).abs());
                }
            }
        }
        m
    }
}

pub fn structure_constants(g: &GroupId) -> StructureConstants {
    match *g {
        GroupId::G4I { c } => {
            StructureConstants::from_terms(&[(1, 1.0, 2, 3), (1, c, 1, 4), (2, 1.0, 2, 4), (3, c - 1.0, 3, 4)])
        }
        GroupId::G4II => StructureConstants::from_terms(&[
            (1, 2.0, 1, 4),
            (1, -1.0, 2, 3),
            (2, 1.0, 2, 4),
            (2, 1.0, 3, 4),
            (3, 1.0, 3, 4),
        ]),
        GroupId::G4III { alpha } => {
            let (s, c) = alpha.sin_cos();
            StructureConstants::from_terms(&[
                (1, 1.0, 2, 3),
                (1, 2.0 * c, 1, 4),
                (2, c, 2, 4),
                (2, -s, 3, 4),
                (3, s, 2, 4),
                (3, c, 3, 4),
            ])
        }
        GroupId::G4IV => StructureConstants::from_terms(&[(2, 1.0, 1, 2), (3, 1.0, 3, 4)]),
        GroupId::G4V => {
            StructureConstants::from_terms(&[(2, -1.0, 1, 2), (2, -1.0, 3, 4), (3, -1.0, 1, 3), (3, 1.0, 2, 4)])
        }
        GroupId::G4VII => StructureConstants::from_terms(&[(1, 1.0, 1, 2), (2, 2.0, 1, 3), (3, 1.0, 2, 3)]),
        GroupId::G4VIII => StructureConstants::from_terms(&[(1, 1.0, 2, 3), (2, 1.0, 3, 1), (3, 1.0, 1, 2)]),
    }
}

/// Rejects points where a tetrad entry or `det e^α_i` is singular.
pub fn domain_guard(g: &GroupId, p: &Point) -> Result<(), CoreError> {
    if !p.is_finite() {
        return Err(CoreError::Domain(format!("{g}: non-finite point {:?}", p.u)));
    }
    if let GroupId::G4III { alpha } = g {
        if alpha.sin().abs() <= GUARD_MARGIN {
            return Err(CoreError::Domain(format!("{g}: sin(alpha) vanishes")));
        }
    }
    if let GroupId::G4VIII = g {
        if p.coord(1).sin().abs() <= GUARD_MARGIN {
            return Err(CoreError::Domain(format!("{g}: sin(u1) vanishes at u1 = {}", p.coord(1))));
        }
    }
    let f = tetrads::evaluate(g, &lift_all(p));
    let finite = |m: &Matrix4<Jet1>| {
        m.rows().iter().flatten().all(|j| j.value.is_finite() && j.partials.iter().all(|d| d.is_finite()))
    };
    if !finite(&f.e_up) || !finite(&f.e_down) {
        return Err(CoreError::Domain(format!("{g}: tetrad not finite at {:?}", p.u)));
    }
    let d = f.e_down.values().det();
    if d.abs() <= GUARD_MARGIN {
        return Err(CoreError::Domain(format!("{g}: det(e) = {d:e} too close to zero at {:?}", p.u)));
    }
    Ok(())
}

pub fn frame(g: &GroupId, p: &Point) -> Result<FrameField, CoreError> {
    domain_guard(g, p)?;
    Ok(tetrads::evaluate(g, &lift_all(p)))
}

/// Residuals of the frame relations at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub duality: f64,
    pub completeness: f64,
    pub commutation: f64,
}

impl FrameReport {
    pub fn max(&self) -> f64 {
        self.duality.max(self.completeness).max(self.commutation)
    }
}

/// Max over (α, β) of `|e^α_i e_β^i − δ^α_β|` and over (i, k) of `|e^α_i e_α^k − δ^k_i|`.
pub fn duality_residuals(f: &FrameField) -> (f64, f64) {
    let up = f.e_up.values();
    let down = f.e_down.values();
    let dual = down.matmul(&up.transpose()).sub(&Matrix4::identity()).max_abs();
    let comp = down.transpose().matmul(&up).sub(&Matrix4::identity()).max_abs();
    (dual, comp)
}

/// `[e_α, e_β]^k = e_α^i ∂_i e_β^k − e_β^i ∂_i e_α^k`, indexed `[α][β][k]` from zero.
pub fn frame_brackets(f: &FrameField) -> [[[f64; 4]; 4]; 4] {
    let e = f.e_up.rows();
    let mut out = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for k in 0..4 {
                let mut s = 0.0;
                for i in 0..4 {
                    s += e[a][i].value * e[b][k].partials[i] - e[b][i].value * e[a][k].partials[i];
                }
                out[a][b][k] = s;
            }
        }
    }
    out
}

/// Max over (α, β, k) of `|[e_α, e_β]^k − C^γ_{αβ} e_γ^k|`.
pub fn commutation_residual(f: &FrameField, c: &StructureConstants) -> f64 {
    let br = frame_brackets(f);
    let e = f.e_up.values();
    let c = c.raw();
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            for k in 0..4 {
                let rhs: f64 = (0..4).map(|g| c[g][a][b] * e.rows()[g][k]).sum();
                worst = worst.max((br[a][b][k] - rhs).abs());
            }
        }
    }
    worst
}

/// Max commutation residual report; passing means `commutation <= tol`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutationReport {
    pub max_residual: f64,
    pub passed: bool,
}

pub fn verify_commutation(g: &GroupId, p: &Point, tol: f64) -> Result<CommutationReport, CoreError> {
    let f = frame(g, p)?;
    let r = commutation_residual(&f, &structure_constants(g));
    Ok(CommutationReport { max_residual: r, passed: r <= tol })
}

/// Duality, completeness and commutation residuals at `p`.
pub fn verify_frame(g: &GroupId, p: &Point) -> Result<FrameReport, CoreError> {
    let f = frame(g, p)?;
    let (duality, completeness) = duality_residuals(&f);
    let commutation = commutation_residual(&f, &structure_constants(g));
    Ok(FrameReport { duality, completeness, commutation })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub holds: bool,
    pub max_residual: f64,
}

/// `C^μ_{αβ}C^ν_{μγ} + C^μ_{βγ}C^ν_{μα} + C^μ_{γα}C^ν_{μβ}` over all indices.
pub fn verify_jacobi(c: &StructureConstants) -> JacobiReport {
    let t = c.raw();
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in 0..4 {
            for g in 0..4 {
                for n in 0..4 {
                    let mut s = 0.0;
                    for m in 0..4 {
                        s += t[m][a][b] * t[n][m][g] + t[m][b][g] * t[n][m][a] + t[m][g][a] * t[n][m][b];
                    }
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    JacobiReport { holds: worst <= 1e-14, max_residual: worst }
}

/// Killing fields X_1..X_4 of G4(VII) with ε = 0, as jet rows `[a][k]`.
pub fn killing_fields_g4vii(p: &Point) -> [[Jet1; 4]; 4] {
    let u = lift_all(p);
    let z = Jet1::zero();
    let one = Jet1::one();
    let em = (-u[2]).exp();
    [[em, -(u[1] * u[1]) * em, -2.0 * u[1] * em, z], [z, z, one, z], [z, u[2].exp(), z, z], [one, z, z, z]]
}

/// Max over (a, b, k) of `|[X_a, X_b]^k − C^γ_{ab} X_γ^k|` with the G4(VII) constants.
pub fn killing_bracket_residual(p: &Point) -> f64 {
    let x = killing_fields_g4vii(p);
    let up = Matrix4::from_rows(x);
    let f = FrameField { e_up: up, e_down: up };
    commutation_residual(&f, &structure_constants(&GroupId::G4VII))
}

/// A place where the printed tetrad or constant table had to be corrected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogCorrection {
    pub group: String,
    pub location: String,
    pub printed: String,
    pub certified: String,
    /// Max frame-relation residual (duality, completeness, commutation) of the printed data.
    pub printed_residual: f64,
    pub certified_residual: f64,
}

fn max_frame_residual(f: &FrameField, c: &StructureConstants) -> f64 {
    let (d, k) = duality_residuals(f);
    d.max(k).max(commutation_residual(f, c))
}

/// Printed-versus-certified residuals over a fixed set of points.
pub fn catalog_corrections() -> Vec<CatalogCorrection> {
    let pts = [[0.2, -0.1, 0.7, 0.3], [0.9, 0.4, -0.6, -0.8], [-0.5, 0.3, 0.1, 0.6]].map(Point::new);
    let worst = |f: &dyn Fn(&Point) -> f64| pts.iter().map(f).fold(0.0, f64::max);
    let certified = |g: &GroupId| worst(&|p| verify_frame(g, p).map(|r| r.max()).unwrap_or(f64::NAN));
    let printed = |g: &GroupId, c: &StructureConstants| {
        worst(&|p| {
            let f = evaluate_printed(g, &lift_all(p)).unwrap_or_else(|| tetrads::evaluate(g, &lift_all(p)));
            max_frame_residual(&f, c)
        })
    };
    let g1 = GroupId::G4I { c: 2.7 };
    let g3 = GroupId::G4III { alpha: PI / 3.0 };
    let g5 = GroupId::G4V;
    let printed_ii = StructureConstants::from_terms(&[(1, 2.0, 1, 4), (1, -1.0, 2, 3), (2, 1.0, 2, 4), (3, 1.0, 3, 4)]);
    vec![
        CatalogCorrection {
            group: "G4-I".into(),
            location: "tetrad e_3".into(),
            printed: "e_3 = exp(c_1 u^1) ∂_1".into(),
            certified: "e_3 = exp(c_1 u^4) ∂_1 (inverse pair of e^3 = exp(-c_1 u^4) du^1)".into(),
            printed_residual: printed(&g1, &structure_constants(&g1)),
            certified_residual: certified(&g1),
        },
        CatalogCorrection {
            group: "G4-II".into(),
            location: "structure constants".into(),
            printed: "C^γ_{αβ} = δ^γ_1(2ε^{14} - ε^{23}) + δ^γ_2 ε^{24} + δ^γ_3 ε^{34}".into(),
            certified: "adds δ^γ_2 ε^{34}, i.e. C^2_{34} = 1".into(),
            printed_residual: printed(&GroupId::G4II, &printed_ii),
            certified_residual: certified(&GroupId::G4II),
        },
        CatalogCorrection {
            group: "G4-III".into(),
            location: "tetrad e_2, p = u^4 sin α, q = u^4 cos α".into(),
            printed: "e_2^1 = exp(q) cos p".into(),
            certified: "e_2^1 = -exp(q) cos p (matches the printed co-tetrad)".into(),
            printed_residual: printed(&g3, &structure_constants(&g3)),
            certified_residual: certified(&g3),
        },
        CatalogCorrection {
            group: "G4-V".into(),
            location: "tetrad labels".into(),
            printed: "e_α^i carries exp(u^1), e^α_i carries exp(-u^1)".into(),
            certified: "e_α^i carries exp(-u^1), e^α_i carries exp(u^1); trace C^γ_{γβ} = 2δ^1_β".into(),
            printed_residual: printed(&g5, &structure_constants(&g5)),
            certified_residual: certified(&g5),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_groups() -> Vec<GroupId> {
        let mut v: Vec<GroupId> = [-1.0, 0.0, 0.5, 1.0, 2.7].iter().map(|&c| GroupId::G4I { c }).collect();
        v.extend([
            GroupId::G4II,
            GroupId::G4III { alpha: PI / 6.0 },
            GroupId::G4III { alpha: PI / 3.0 },
            GroupId::G4IV,
            GroupId::G4V,
            GroupId::G4VII,
            GroupId::G4VIII,
        ]);
        v
    }

    fn pts() -> Vec<Point> {
        vec![Point::new([0.2, -0.1, 0.7, 0.3]), Point::new([0.9, 0.4, -0.6, -0.8]), Point::new([1.1, 0.0, 0.25, 0.5])]
    }

    #[test]
    fn parse_round_trip() {
        for g in all_groups() {
            let s = g.to_string();
            assert_eq!(s.parse::<GroupId>().unwrap(), g, "{s}");
        }
        assert!("G4-III:alpha=0".parse::<GroupId>().is_err());
        assert!("G4-VI".parse::<GroupId>().is_err());
        assert!("G4-I".parse::<GroupId>().is_err());
        assert!("G4-I:k=2".parse::<GroupId>().is_err());
        assert!("G4-II:c=1".parse::<GroupId>().is_err());
    }

    #[test]
    fn g4iv_frame_is_diagonal_exponential() {
        let p = Point::new([0.4, 0.1, -0.2, 0.7]);
        let f = frame(&GroupId::G4IV, &p).unwrap().e_up.values();
        let want = Matrix4::diag([1.0, 0.4f64.exp(), (-0.7f64).exp(), 1.0]);
        assert!(f.sub(&want).max_abs() < 1e-15);
        let o = frame(&GroupId::G4IV, &Point::new([0.0; 4])).unwrap().e_up.values();
        assert_eq!(o, Matrix4::identity());
    }

    #[test]
    fn g4ii_duality_at_fixed_point() {
        let f = frame(&GroupId::G4II, &Point::new([0.2, -0.1, 0.7, 0.3])).unwrap();
        let prod = f.e_down.values().matmul(&f.e_up.values().transpose());
        assert!(prod.sub(&Matrix4::identity()).max_abs() < 1e-12);
    }

    #[test]
    fn printed_constant_tables() {
        let c = structure_constants(&GroupId::G4VIII);
        assert_eq!(c.get(1, 2, 3), 1.0);
        assert_eq!(c.get(2, 3, 1), 1.0);
        assert_eq!(c.get(3, 1, 2), 1.0);
        assert_eq!(c.nonzero_entries().len(), 3);

        let c = structure_constants(&GroupId::G4I { c: 2.0 });
        assert_eq!((c.get(1, 2, 3), c.get(1, 1, 4), c.get(2, 2, 4), c.get(3, 3, 4)), (1.0, 2.0, 1.0, 1.0));

        let c = structure_constants(&GroupId::G4II);
        assert_eq!((c.get(1, 1, 4), c.get(1, 2, 3), c.get(2, 2, 4), c.get(3, 3, 4)), (2.0, -1.0, 1.0, 1.0));
        // the Jordan-block entry required by the tetrad
        assert_eq!(c.get(2, 3, 4), 1.0);
    }

    #[test]
    fn frames_satisfy_relations() {
        for g in all_groups() {
            for p in pts() {
                let r = verify_frame(&g, &p).unwrap();
                assert!(r.max() <= 1e-10, "{g} at {:?}: {r:?}", p.u);
            }
        }
    }

    #[test]
    fn g4viii_commutation_against_finite_differences() {
        let g = GroupId::G4VIII;
        let p = Point::new([PI / 3.0, 0.3, -0.4, 0.1]);
        assert!(verify_commutation(&g, &p, 1e-10).unwrap().passed);
        // oracle: brackets from central differences of tetrad values only
        let h = 1e-6;
        let e = |q: &Point| frame(&g, q).unwrap().e_up.values();
        let e0 = e(&p);
        let de: Vec<Matrix4> = (1..=4).map(|i| e(&p.shifted(i, h)).sub(&e(&p.shifted(i, -h))).scale(0.5 / h)).collect();
        let c = structure_constants(&g);
        for a in 1..=4 {
            for b in 1..=4 {
                for k in 1..=4 {
                    let mut lhs = 0.0;
                    for i in 1..=4 {
                        lhs += e0.get(a, i) * de[i - 1].get(b, k) - e0.get(b, i) * de[i - 1].get(a, k);
                    }
                    let rhs: f64 = (1..=4).map(|gm| c.get(gm, a, b) * e0.get(gm, k)).sum();
                    assert!((lhs - rhs).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn zero_constants_expose_the_commutator() {
        for g in all_groups() {
            let f = frame(&g, &pts()[0]).unwrap();
            let br = frame_brackets(&f);
            let biggest = br.iter().flatten().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
            let r = commutation_residual(&f, &StructureConstants::zero());
            assert!(biggest > 0.0);
            assert!((r - biggest).abs() < 1e-15, "{g}");
        }
    }

    #[test]
    fn jacobi_for_all_tables() {
        for g in all_groups() {
            let c = structure_constants(&g);
            assert!(c.max_antisymmetry_defect() == 0.0);
            assert!(verify_jacobi(&c).holds, "{g}");
        }
        let broken = StructureConstants::from_terms(&[(1, 1.0, 1, 2), (2, 1.0, 3, 4), (3, 1.0, 1, 4)]);
        assert!(!verify_jacobi(&broken).holds);
    }

    #[test]
    fn c_equal_one_is_the_parametric_entry() {
        let c = structure_constants(&GroupId::G4I { c: 1.0 });
        assert_eq!(c.get(3, 3, 4), 0.0);
        assert_eq!(c.get(1, 1, 4), 1.0);
    }

    #[test]
    fn g4viii_guard() {
        assert!(frame(&GroupId::G4VIII, &Point::new([0.0, 0.1, 0.2, 0.3])).is_err());
        assert!(frame(&GroupId::G4VIII, &Point::new([PI, 0.1, 0.2, 0.3])).is_err());
        assert!(frame(&GroupId::G4II, &Point::new([f64::NAN, 0.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn printed_variants_fail_and_corrections_hold() {
        for c in catalog_corrections() {
            assert!(c.certified_residual <= 1e-10, "{c:?}");
            assert!(c.printed_residual >= 1e-3, "{c:?}");
        }
    }

    #[test]
    fn killing_fields() {
        let p = Point::new([0.3, -0.5, 0.8, 0.1]);
        let x = killing_fields_g4vii(&p);
        let vals = |r: &[Jet1; 4]| r.map(|j| j.value);
        assert_eq!(vals(&x[1]), [0.0, 0.0, 1.0, 0.0]);
        assert_eq!(vals(&x[3]), [1.0, 0.0, 0.0, 0.0]);
        assert!(killing_bracket_residual(&p) < 1e-10);
    }
}
