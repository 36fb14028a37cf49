//! Projective geometries, abstract point-line geometries and their axioms,
//! subspace closure and rank, and polarities.

mod geometry;
mod pg;

pub use geometry::{AxiomReport, AxiomResult, PointLineGeometry, Witness};
pub use pg::{subspace_points, Polarity, ProjectiveGeometry};

use crate::budget::Budget;
use crate::error::Result;
use crate::scalar::FiniteField;

/// `PG(n, F)`: the projective geometry of rank `n` over `F`.
pub fn build_pg(n: usize, field: &FiniteField, budget: &Budget) -> Result<ProjectiveGeometry> {
    ProjectiveGeometry::build(n, field, budget)
}
