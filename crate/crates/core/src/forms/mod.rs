//! Sesquilinear, hermitian and pseudo-quadratic forms over finite fields,
//! form parameters, and Witt decomposition.

mod descriptor;
mod param;
mod pq;
mod witt;

pub use descriptor::FormDescriptor;
pub use param::{
    fixed_group, trace_group, Classification, FormCase, FormParameter, LambdaSpec, ParameterCheck,
    ParameterReport,
};
pub use pq::{hermitianize, reduce_slightly_degenerate, PseudoQuadraticForm, Reduction, SesquilinearForm};
pub use witt::{isotropic_grassmannian, singular_points, witt_decompose, witt_index, WittDecomposition};
