//! Closed-form tetrads. Rows of `e_up` are the frame vectors e_α, rows of
//! `e_down` the coframe covectors e^α.

use super::{FrameField, GroupId};
use crate::jet::Jet1;
use crate::linalg::Matrix4;

fn m(rows: [[Jet1; 4]; 4]) -> Matrix4<Jet1> {
    Matrix4::from_rows(rows)
}

pub(super) fn evaluate(g: &GroupId, u: &[Jet1; 4]) -> FrameField {
    let z = Jet1::zero();
    let one = Jet1::one();
    let [u1, u2, u3, u4] = *u;
    match *g {
        GroupId::G4I { c } => {
            let c1 = c - 1.0;
            let e4 = u4.exp();
            let e_up =
                m([[z, (c * u4).exp(), z, z], [z, -(u1 * e4), e4, z], [(c1 * u4).exp(), z, z, z], [z, z, z, -one]]);
            let ec = (-c * u4).exp();
            let e_down = m([[z, ec, u1 * ec, z], [z, z, (-u4).exp(), z], [(-c1 * u4).exp(), z, z, z], [z, z, z, -one]]);
            FrameField { e_up, e_down }
        }
        GroupId::G4II => {
            let e = u4.exp();
            let e_up = m([
                [z, (2.0 * u4).exp(), z, z],
                [z, -(u1 * e), e, z],
                [-e, -(u1 * u4 * e), u4 * e, z],
                [z, z, z, -one],
            ]);
            let em = (-u4).exp();
            let em2 = (-2.0 * u4).exp();
            let e_down = m([[z, em2, u1 * em2, z], [u4 * em, z, em, z], [-em, z, z, z], [z, z, z, -one]]);
            FrameField { e_up, e_down }
        }
        GroupId::G4III { alpha } => {
            let (s, co) = alpha.sin_cos();
            let p = u4 * s;
            let q = u4 * co;
            let eq = q.exp();
            let (sp, cp) = (p.sin(), p.cos());
            let (spa, cpa) = ((p - alpha).sin(), (p - alpha).cos());
            let e_up = m([
                [z, (2.0 * q).exp() * s, z, z],
                [-(eq * cp), -(u1 * eq * cpa), eq * cpa, z],
                [eq * sp, u1 * eq * spa, -(eq * spa), z],
                [z, z, z, -one],
            ]);
            let inv_s = 1.0 / s;
            let emq = (-q).exp() * inv_s;
            let em2q = (-2.0 * q).exp() * inv_s;
            let e_down =
                m([[z, em2q, u1 * em2q, z], [emq * spa, z, emq * sp, z], [emq * cpa, z, emq * cp, z], [z, z, z, -one]]);
            FrameField { e_up, e_down }
        }
        GroupId::G4IV => {
            let e_up = Matrix4::diag([one, u1.exp(), (-u4).exp(), one]);
            let e_down = Matrix4::diag([one, (-u1).exp(), u4.exp(), one]);
            FrameField { e_up, e_down }
        }
        GroupId::G4V => {
            let (s4, c4) = (u4.sin(), u4.cos());
            let em = (-u1).exp();
            let ep = u1.exp();
            let e_up = m([[one, z, z, z], [z, c4 * em, s4 * em, z], [z, s4 * em, -(c4 * em), z], [z, z, z, one]]);
            let e_down = m([[one, z, z, z], [z, c4 * ep, s4 * ep, z], [z, s4 * ep, -(c4 * ep), z], [z, z, z, one]]);
            FrameField { e_up, e_down }
        }
        GroupId::G4VII => {
            let e_up =
                m([[one, z, z, z], [u1, -u2, -one, z], [u1 * u1, 1.0 - 2.0 * u1 * u2, -2.0 * u1, z], [z, z, z, -one]]);
            let e_down = m([
                [one, u1 * u1, u1 * (1.0 - u1 * u2), z],
                [z, -2.0 * u1, 2.0 * u1 * u2 - 1.0, z],
                [z, one, -u2, z],
                [z, z, z, -one],
            ]);
            FrameField { e_up, e_down }
        }
        GroupId::G4VIII => {
            let (s1, c1) = (u1.sin(), u1.cos());
            let (s3, c3) = (u3.sin(), u3.cos());
            let cot = c1 / s1;
            let e_up =
                m([[c3, s3 / s1, -(s3 * cot), z], [-s3, c3 / s1, -(c3 * cot), z], [z, z, one, z], [z, z, z, one]]);
            let e_down = m([[c3, s1 * s3, z, z], [-s3, s1 * c3, z, z], [z, c1, one, z], [z, z, z, one]]);
            FrameField { e_up, e_down }
        }
    }
}

/// Frame at plain coordinate values, derivatives dropped.
pub(crate) fn evaluate_values(g: &GroupId, u: &[f64; 4]) -> FrameField {
    evaluate(g, &u.map(Jet1::constant))
}

/// Frames exactly as printed, for the groups where the printed tetrad differs.
pub(super) fn evaluate_printed(g: &GroupId, u: &[Jet1; 4]) -> Option<FrameField> {
    let fixed = evaluate(g, u);
    let [u1, _, _, u4] = *u;
    match *g {
        GroupId::G4I { c } => {
            let mut e_up = fixed.e_up;
            e_up.set(3, 1, ((c - 1.0) * u1).exp());
            Some(FrameField { e_up, ..fixed })
        }
        GroupId::G4III { alpha } => {
            let q = u4 * alpha.cos();
            let p = u4 * alpha.sin();
            let mut e_up = fixed.e_up;
            e_up.set(2, 1, q.exp() * p.cos());
            Some(FrameField { e_up, ..fixed })
        }
        GroupId::G4V => Some(FrameField { e_up: fixed.e_down, e_down: fixed.e_up }),
        _ => None,
    }
}
