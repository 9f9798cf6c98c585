//! Axiom checks against the twined operators, producing [`CheckResult`]s.

pub mod category;
pub mod quasi;
pub mod result;
pub mod ribbon;

pub use category::{
    check_hexagon_i, check_hexagon_ii, check_naturality, check_pentagon, check_q_sigma_square, check_symmetry,
    NaturalityKind,
};
pub use quasi::{
    check_coassociativity, check_drinfeld_twist_trivial, check_fusion_left, check_fusion_right,
    check_fusion_right_variant, check_triangularity,
};
pub use result::{compare_identity, compare_paths, spectrum_defect, CheckResult, Defect, DefectKind, Outcome, Status};
pub use ribbon::{check_ribbon, compute_s_u, compute_u, compute_v, UMethod};
