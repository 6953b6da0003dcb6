//! Invariant electromagnetic fields on spacetimes with a simply transitive
//! four-parameter group of motions.
//!
//! The crate encodes seven group manifolds, checks their frame relations,
//! evaluates the vacuum Maxwell residual of constant-frame potentials in two
//! independent ways, and classifies the admissible `(η, α)` pairs.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod maxwell;
pub mod report;
pub mod sampling;
pub mod scan;
pub mod solutions;

pub use catalog::{
    domain_guard, frame, killing_fields_g4vii, structure_constants, verify_commutation, verify_frame, verify_jacobi,
    FrameField, GroupId, StructureConstants,
};
pub use error::CoreError;
pub use jet::{jet_lift, Jet1, Point};
pub use linalg::{det4, inv4, nullspace, signature, Matrix4, Signature, Vec4};
pub use maxwell::{
    algebraic_residual, field_strength_frame, field_strength_holonomic, maxwell_matrix, metric_holonomic, pde_residual,
    pde_residual_fd, potential_holonomic, solve_alpha, AlphaSolution, FieldStrength, FrameMetric, MaxwellMatrix,
    PotentialConstants,
};
pub use report::{build_report, ClassificationReport, ReportConfig};
pub use scan::{scan_classify, ScanConfig, ScanResult};
pub use solutions::{
    certify_no_go, enumerate_branches, sample_branch, verify_branch, NoGoCertificate, SolutionBranch, TypoLedgerEntry,
};
