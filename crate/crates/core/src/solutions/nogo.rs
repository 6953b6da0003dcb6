//! No-go certificates for G4(II), G4(III), G4(VII) and G4(VIII).

use std::f64::consts::PI;

use super::NoGoCertificate;
use crate::catalog::GroupId;
use crate::maxwell::FrameMetric;
use crate::sampling::{random_symmetric, SampleRng};

fn cos_alpha(g: &GroupId) -> f64 {
    match g {
        GroupId::G4III { alpha } => alpha.cos(),
        _ => f64::NAN,
    }
}

/// η_{11} = η_{12} = η_{13} = 0: e_1 null and orthogonal to e_2, e_3.
fn null_e1_stratum(rng: &mut SampleRng, _g: &GroupId) -> Option<FrameMetric> {
    let mut e = random_symmetric(rng);
    for k in 1..=3 {
        e.set(1, k, 0.0);
        e.set(k, 1, 0.0);
    }
    FrameMetric::new(e).ok().filter(|m| m.is_lorentzian() && m.condition() < 1e3)
}

/// η_{44} = 0: e_4 null.
fn null_e4_stratum(rng: &mut SampleRng, _g: &GroupId) -> Option<FrameMetric> {
    let mut e = random_symmetric(rng);
    e.set(4, 4, 0.0);
    FrameMetric::new(e).ok().filter(|m| m.is_lorentzian() && m.condition() < 1e3)
}

pub(super) fn all() -> Vec<NoGoCertificate> {
    vec![
        NoGoCertificate {
            group: GroupId::G4II,
            printed_relation: "2ηη_{44} = η_{11}² ⇒ g > 0",
            forced_relation_text: "4η(η^{44})² - η_{11}² = 0",
            forced_relation: |e, _| 4.0 * e.det() * e.hi(4, 4).powi(2) - e.lo(1, 1).powi(2),
            det_prefactor: |e, _| 9.0 / e.det().powi(2),
            required_det: Some(|e, _| e.lo(1, 1).powi(2) / (4.0 * e.hi(4, 4).powi(2))),
            contradiction: "a nontrivial field needs η = η_{11}²/(4(η^{44})²) ≥ 0, i.e. det g ≥ 0, against det g < 0",
            stratum_text: "η_{11} = η_{12} = η_{13} = 0",
            stratum: null_e1_stratum,
        },
        NoGoCertificate {
            group: GroupId::G4III { alpha: PI / 3.0 },
            printed_relation: "4ηη^{44}cos²α - η_{11}² = 0",
            forced_relation_text: "4cos²α·η(η^{44})² - η_{11}² = 0",
            forced_relation: |e, g| 4.0 * cos_alpha(g).powi(2) * e.det() * e.hi(4, 4).powi(2) - e.lo(1, 1).powi(2),
            det_prefactor: |e, g| (1.0 + 8.0 * cos_alpha(g).powi(2)) / e.det().powi(2),
            required_det: Some(|e, g| e.lo(1, 1).powi(2) / (4.0 * cos_alpha(g).powi(2) * e.hi(4, 4).powi(2))),
            contradiction: "a nontrivial field needs η = η_{11}²/(4cos²α(η^{44})²) ≥ 0, i.e. det g ≥ 0, against det g < 0",
            stratum_text: "η_{11} = η_{12} = η_{13} = 0",
            stratum: null_e1_stratum,
        },
        NoGoCertificate {
            group: GroupId::G4VII,
            printed_relation: "η(α_1² + α_2² + α_3²) = 0",
            forced_relation_text: "(η_{44})² = 0",
            forced_relation: |e, _| e.lo(4, 4).powi(2),
            det_prefactor: |e, _| -4.0 / e.det().powi(2),
            required_det: None,
            contradiction: "the field block has rank 3 unless e_4 is null; with η^{α4} = 0 that is impossible, so α_1 = α_2 = α_3 = 0",
            stratum_text: "η_{44} = 0",
            stratum: null_e4_stratum,
        },
        NoGoCertificate {
            group: GroupId::G4VIII,
            printed_relation: "η(α_1² + α_2² + α_3²) = 0",
            forced_relation_text: "(η_{44})² = 0",
            forced_relation: |e, _| e.lo(4, 4).powi(2),
            det_prefactor: |e, _| -1.0 / e.det().powi(2),
            required_det: None,
            contradiction: "the field block has rank 3 unless e_4 is null; with η^{α4} = 0 that is impossible, so α_1 = α_2 = α_3 = 0",
            stratum_text: "η_{44} = 0",
            stratum: null_e4_stratum,
        },
    ]
}
