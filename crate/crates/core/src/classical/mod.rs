//! Classical groups as matrix and permutation groups: transvections, the
//! linear families, Steinberg relations, the Dieudonné determinant, isometry
//! groups of pseudo-quadratic forms, Moufang sets and line reconstruction.

mod linear;
mod moufang;
mod named;
mod transvection;
mod unitary;

pub use linear::{
    build_el, build_gl, build_linear, build_pel, build_pgl, count_det_one, expected_order, gl_order,
    linear_generators, subspace_action, LinearGroup, LinearKind, MatrixAction,
};
pub use moufang::{check_moufang, moufang_set_projective_line, reconstruct_lines, MoufangReport, MoufangSetData};
pub use named::{classical_form, parse_named_group, GROUP_FAMILIES};
pub use transvection::{
    check_steinberg_field, check_steinberg_pairs, check_steinberg_quaternions, dieudonne_det, random_quaternion,
    same_quaternion_class, transvection, transvections_commute_iff, SteinbergReport, Transvection,
};
pub use unitary::{build_unitary, IsometryGroup, GL_FILTER_LIMIT};
