//! The seven solution families with their printed and certified forms.

use super::{BranchForm, Constraint, SolutionBranch};
use crate::catalog::GroupId;
use crate::linalg::Matrix4;
use crate::maxwell::FrameMetric;
use crate::sampling::{nonzero_uniform, random_symmetric, uniform, SampleRng};

const MAX_CONDITION: f64 = 1e3;

fn param_c(g: &GroupId) -> f64 {
    match g {
        GroupId::G4I { c } => *c,
        _ => f64::NAN,
    }
}

fn accept(m: Option<FrameMetric>) -> Option<FrameMetric> {
    m.filter(|m| m.condition() <= MAX_CONDITION)
}

fn block_zero(m: &mut Matrix4) {
    for k in 1..=3 {
        m.set(k, 4, 0.0);
        m.set(4, k, 0.0);
    }
}

/// Symmetric matrix with vanishing (k,4) entries and a diagonal (4,4) entry away from zero.
fn random_block(rng: &mut SampleRng) -> Matrix4 {
    let mut m = random_symmetric(rng);
    block_zero(&mut m);
    let d = nonzero_uniform(rng);
    m.set(4, 4, d.signum() * (0.2 + 1.8 * d.abs()));
    m
}

fn block_up_constraints() -> Vec<Constraint> {
    vec![
        Constraint { label: "η^{14}", f: |e, _| e.hi(1, 4) },
        Constraint { label: "η^{24}", f: |e, _| e.hi(2, 4) },
        Constraint { label: "η^{34}", f: |e, _| e.hi(3, 4) },
    ]
}

fn with_block(extra: Vec<Constraint>) -> Vec<Constraint> {
    let mut v = block_up_constraints();
    v.extend(extra);
    v
}

fn c_generic(rng: &mut SampleRng) -> GroupId {
    loop {
        let c = uniform(rng, -3.0, 3.0);
        if [0.0, 0.5, -1.0, 1.0].iter().all(|s| (c - s).abs() > 0.05) {
            return GroupId::G4I { c };
        }
    }
}

// G4(I), generic c

fn generic_printed_sampler(rng: &mut SampleRng, g: &GroupId) -> Option<FrameMetric> {
    // Solve η^{44} = η_{11}²/(η c²) for η^{11} with the block assumption:
    // it reduces to det h = (cof₁₁ h)² / c² for the spatial block h of η^{..}.
    let c = param_c(g);
    let mut h = random_block(rng);
    let cof11 = h.get(2, 2) * h.get(3, 3) - h.get(2, 3) * h.get(2, 3);
    if cof11.abs() < 1e-2 {
        return None;
    }
    // spatial determinant is affine in h₁₁: det h = h₁₁·cof₁₁ + rest
    h.set(1, 1, 0.0);
    let rest = h.cofactor(4, 4);
    h.set(1, 1, (cof11 * cof11 / (c * c) - rest) / cof11);
    accept(FrameMetric::from_up(h).ok())
}

fn generic_certified_sampler(rng: &mut SampleRng, _g: &GroupId) -> Option<FrameMetric> {
    let mut e = random_symmetric(rng);
    for k in 1..=3 {
        e.set(1, k, 0.0);
        e.set(k, 1, 0.0);
    }
    accept(FrameMetric::new(e).ok())
}

fn generic() -> SolutionBranch {
    SolutionBranch {
        id: "G4I-generic",
        group: "G4-I:c∉{0,1/2,-1}",
        admits: |g| matches!(g, GroupId::G4I { c } if ![0.0, 0.5, -1.0].contains(c)),
        group_sampler: c_generic,
        lorentzian: true,
        printed: BranchForm {
            relation: "block η^{α4}=0, η^{44} = η_{11}²/(η c²); α = (fη_{11}/c, fη_{12}, fη_{13}/(c-1), 0)",
            eta_constraints: with_block(vec![Constraint {
                label: "η^{44} - η_{11}²/(η c²)",
                f: |e, g| {
                    let c = param_c(g);
                    e.hi(4, 4) - e.lo(1, 1).powi(2) / (e.det() * c * c)
                },
            }]),
            sampler: generic_printed_sampler,
            alpha_map: |e, g, f| {
                let c = param_c(g);
                [f[0] * e.lo(1, 1) / c, f[0] * e.lo(1, 2), f[0] * e.lo(1, 3) / (c - 1.0), 0.0]
            },
            free_param_count: 1,
        },
        certified: Some(BranchForm {
            relation: "c²η(η^{44})² = η_{11}², which for η<0 forces η_{11} = η_{12} = η_{13} = 0 (e_1 null, orthogonal to e_2, e_3); α = (0, f_2, f_3, 0)",
            eta_constraints: vec![
                Constraint { label: "η_{11}", f: |e, _| e.lo(1, 1) },
                Constraint { label: "η_{12}", f: |e, _| e.lo(1, 2) },
                Constraint { label: "η_{13}", f: |e, _| e.lo(1, 3) },
                Constraint {
                    label: "c²η(η^{44})² - η_{11}²",
                    f: |e, g| param_c(g).powi(2) * e.det() * e.hi(4, 4).powi(2) - e.lo(1, 1).powi(2),
                },
            ],
            sampler: generic_certified_sampler,
            alpha_map: |_, _, f| [0.0, f[0], f[1], 0.0],
            free_param_count: 2,
        }),
    }
}

// G4(I), c = 0

fn c0() -> SolutionBranch {
    SolutionBranch {
        id: "G4I-c0",
        group: "G4-I:c=0",
        admits: |g| matches!(g, GroupId::G4I { c } if *c == 0.0),
        group_sampler: |_| GroupId::G4I { c: 0.0 },
        lorentzian: true,
        printed: BranchForm {
            relation: "block η^{α4}=0, η^{11} = 0; α = (α_1, fη_{12}, -fη_{13}, 0)",
            eta_constraints: with_block(vec![Constraint { label: "η^{11}", f: |e, _| e.hi(1, 1) }]),
            sampler: |rng, _| {
                let mut h = random_block(rng);
                h.set(1, 1, 0.0);
                accept(FrameMetric::from_up(h).ok())
            },
            alpha_map: |e, _, f| [f[0], f[1] * e.lo(1, 2), -f[1] * e.lo(1, 3), 0.0],
            free_param_count: 2,
        },
        certified: Some(BranchForm {
            relation: "block η^{α4}=0, η_{11} = 0; α = (α_1, fη_{12}, -fη_{13}, 0)",
            eta_constraints: with_block(vec![Constraint { label: "η_{11}", f: |e, _| e.lo(1, 1) }]),
            sampler: |rng, _| {
                let mut e = random_block(rng);
                e.set(1, 1, 0.0);
                accept(FrameMetric::new(e).ok())
            },
            alpha_map: |e, _, f| [f[0], f[1] * e.lo(1, 2), -f[1] * e.lo(1, 3), 0.0],
            free_param_count: 2,
        }),
    }
}

fn lower_block_sampler(rng: &mut SampleRng, _g: &GroupId) -> Option<FrameMetric> {
    accept(FrameMetric::new(random_block(rng)).ok())
}

// G4(I), c = 1/2

fn c_half() -> SolutionBranch {
    SolutionBranch {
        id: "G4I-c1/2",
        group: "G4-I:c=1/2",
        admits: |g| matches!(g, GroupId::G4I { c } if *c == 0.5),
        group_sampler: |_| GroupId::G4I { c: 0.5 },
        lorentzian: true,
        printed: BranchForm {
            relation: "block η^{α4}=0; α = (2aη_{12}η^{44}, aη(η_{22}η^{44} - 4η_{11}η^{33}), -2a(η_{23}η^{44} + 4η_{11}η^{23}), 0)",
            eta_constraints: block_up_constraints(),
            sampler: lower_block_sampler,
            alpha_map: |e, _, f| {
                let a = f[0];
                [
                    2.0 * a * e.lo(1, 2) * e.hi(4, 4),
                    a * e.det() * (e.lo(2, 2) * e.hi(4, 4) - 4.0 * e.lo(1, 1) * e.hi(3, 3)),
                    -2.0 * a * (e.lo(2, 3) * e.hi(4, 4) + 4.0 * e.lo(1, 1) * e.hi(2, 3)),
                    0.0,
                ]
            },
            free_param_count: 1,
        },
        certified: Some(BranchForm {
            relation: "block η^{α4}=0; f¹ = 4aη_{11}η_{12}, f² = a(η(η^{44})² - 4η_{11}²), α = (2(η_{11}f¹+η_{12}f²), η_{12}f¹+η_{22}f², -2(η_{13}f¹+η_{23}f²), 0)",
            eta_constraints: block_up_constraints(),
            sampler: lower_block_sampler,
            alpha_map: |e, _, f| {
                let a = f[0];
                let q = e.det() * e.hi(4, 4).powi(2);
                let f1 = 4.0 * a * e.lo(1, 1) * e.lo(1, 2);
                let f2 = a * (q - 4.0 * e.lo(1, 1).powi(2));
                [
                    2.0 * (e.lo(1, 1) * f1 + e.lo(1, 2) * f2),
                    e.lo(1, 2) * f1 + e.lo(2, 2) * f2,
                    -2.0 * (e.lo(1, 3) * f1 + e.lo(2, 3) * f2),
                    0.0,
                ]
            },
            free_param_count: 1,
        }),
    }
}

// G4(I), c = -1

fn c_minus_one() -> SolutionBranch {
    SolutionBranch {
        id: "G4I-c-1",
        group: "G4-I:c=-1",
        admits: |g| matches!(g, GroupId::G4I { c } if *c == -1.0),
        group_sampler: |_| GroupId::G4I { c: -1.0 },
        lorentzian: true,
        printed: BranchForm {
            relation: "block η^{α4}=0; α = (2aη_{13}η^{44}, -2a(η_{11}η^{23} + η_{23}η^{44}), a(η_{11}η^{22} + η_{33}η^{44}), 0)",
            eta_constraints: block_up_constraints(),
            sampler: lower_block_sampler,
            alpha_map: |e, _, f| {
                let a = f[0];
                [
                    2.0 * a * e.lo(1, 3) * e.hi(4, 4),
                    -2.0 * a * (e.lo(1, 1) * e.hi(2, 3) + e.lo(2, 3) * e.hi(4, 4)),
                    a * (e.lo(1, 1) * e.hi(2, 2) + e.lo(3, 3) * e.hi(4, 4)),
                    0.0,
                ]
            },
            free_param_count: 1,
        },
        certified: Some(BranchForm {
            relation: "block η^{α4}=0; f¹ = aη_{11}η_{13}, f³ = a(η(η^{44})² - η_{11}²), α = (-(η_{11}f¹+η_{13}f³), η_{12}f¹+η_{23}f³, -(η_{13}f¹+η_{33}f³)/2, 0)",
            eta_constraints: block_up_constraints(),
            sampler: lower_block_sampler,
            alpha_map: |e, _, f| {
                let a = f[0];
                let q = e.det() * e.hi(4, 4).powi(2);
                let f1 = a * e.lo(1, 1) * e.lo(1, 3);
                let f3 = a * (q - e.lo(1, 1).powi(2));
                [
                    -(e.lo(1, 1) * f1 + e.lo(1, 3) * f3),
                    e.lo(1, 2) * f1 + e.lo(2, 3) * f3,
                    -0.5 * (e.lo(1, 3) * f1 + e.lo(3, 3) * f3),
                    0.0,
                ]
            },
            free_param_count: 1,
        }),
    }
}

// G4(IV)

pub(super) fn iv_b1_lower_sampler(rng: &mut SampleRng, _g: &GroupId) -> Option<FrameMetric> {
    let mut e = random_block(rng);
    e.set(2, 3, 0.0);
    e.set(3, 2, 0.0);
    accept(FrameMetric::new(e).ok())
}

#[cfg(test)]
pub(super) fn iv_b1_upper_sampler(rng: &mut SampleRng, _g: &GroupId) -> Option<FrameMetric> {
    let mut h = random_block(rng);
    h.set(2, 3, 0.0);
    h.set(3, 2, 0.0);
    accept(FrameMetric::from_up(h).ok())
}

pub(super) fn iv_b1_alpha(_: &FrameMetric, _: &GroupId, f: &[f64]) -> [f64; 4] {
    [0.0, f[0], 0.0, 0.0]
}

fn iv_b1() -> SolutionBranch {
    SolutionBranch {
        id: "G4IV-b1",
        group: "G4-IV",
        admits: |g| matches!(g, GroupId::G4IV),
        group_sampler: |_| GroupId::G4IV,
        lorentzian: true,
        printed: BranchForm {
            relation: "block η^{α4}=0, η_{23} = 0; α_3 = 0, α_2 free",
            eta_constraints: with_block(vec![Constraint { label: "η_{23}", f: |e, _| e.lo(2, 3) }]),
            sampler: iv_b1_lower_sampler,
            alpha_map: iv_b1_alpha,
            free_param_count: 1,
        },
        certified: None,
    }
}

fn iv_b2() -> SolutionBranch {
    SolutionBranch {
        id: "G4IV-b2",
        group: "G4-IV",
        admits: |g| matches!(g, GroupId::G4IV),
        group_sampler: |_| GroupId::G4IV,
        lorentzian: true,
        printed: BranchForm {
            relation: "block η^{α4}=0, η^{13} = η^{23} = 0; α_2, α_3 free",
            eta_constraints: with_block(vec![
                Constraint { label: "η^{13}", f: |e, _| e.hi(1, 3) },
                Constraint { label: "η^{23}", f: |e, _| e.hi(2, 3) },
            ]),
            sampler: |rng, _| {
                let mut h = random_block(rng);
                for (r, c) in [(1, 3), (3, 1), (2, 3), (3, 2)] {
                    h.set(r, c, 0.0);
                }
                accept(FrameMetric::from_up(h).ok())
            },
            alpha_map: |_, _, f| [0.0, f[0], f[1], 0.0],
            free_param_count: 2,
        },
        certified: None,
    }
}

// G4(V)

fn v_param_a(e: &FrameMetric) -> f64 {
    e.hi(1, 3) / e.hi(1, 2)
}

fn v_main() -> SolutionBranch {
    SolutionBranch {
        id: "G4V-main",
        group: "G4-V",
        admits: |g| matches!(g, GroupId::G4V),
        group_sampler: |_| GroupId::G4V,
        lorentzian: false,
        printed: BranchForm {
            relation: "block η^{α4}=0, η^{13} = aη^{12}, η^{33} = η^{22} + ((a²-1)/a)η^{23}, η^{44} = a(η^{11}(η^{22}+aη^{23}) - (a²+1)(η^{12})²)/(aη^{22} - η^{23}); α = (0, f, af, 0)",
            eta_constraints: with_block(vec![
                Constraint {
                    label: "η^{33} - η^{22} - ((a²-1)/a)η^{23}",
                    f: |e, _| {
                        let a = v_param_a(e);
                        e.hi(3, 3) - e.hi(2, 2) - (a * a - 1.0) / a * e.hi(2, 3)
                    },
                },
                Constraint {
                    label: "η^{44} - a(η^{11}(η^{22}+aη^{23}) - (a²+1)(η^{12})²)/(aη^{22} - η^{23})",
                    f: |e, _| {
                        let a = v_param_a(e);
                        let num = e.hi(1, 1) * (e.hi(2, 2) + a * e.hi(2, 3)) - (a * a + 1.0) * e.hi(1, 2).powi(2);
                        e.hi(4, 4) - a * num / (a * e.hi(2, 2) - e.hi(2, 3))
                    },
                },
            ]),
            sampler: |rng, _| {
                let mut h = random_symmetric(rng);
                block_zero(&mut h);
                let a = nonzero_uniform(rng);
                if a.abs() < 0.05 || h.get(1, 2).abs() < 0.05 {
                    return None;
                }
                h.set(1, 3, a * h.get(1, 2));
                h.set(3, 1, a * h.get(1, 2));
                let h33 = h.get(2, 2) + (a * a - 1.0) / a * h.get(2, 3);
                h.set(3, 3, h33);
                let den = a * h.get(2, 2) - h.get(2, 3);
                if den.abs() < 0.05 {
                    return None;
                }
                let num = h.get(1, 1) * (h.get(2, 2) + a * h.get(2, 3)) - (a * a + 1.0) * h.get(1, 2).powi(2);
                h.set(4, 4, a * num / den);
                accept(FrameMetric::from_up(h).ok())
            },
            alpha_map: |e, _, f| [0.0, f[0], v_param_a(e) * f[0], 0.0],
            free_param_count: 1,
        },
        certified: None,
    }
}

pub(super) fn all() -> Vec<SolutionBranch> {
    vec![generic(), c0(), c_half(), c_minus_one(), iv_b1(), iv_b2(), v_main()]
}
