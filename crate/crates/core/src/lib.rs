//! Exact constructions of the classical groups and their geometries over
//! finite fields (and, where it makes sense, the rational quaternions):
//! projective spaces, polar spaces from pseudo-quadratic forms, buildings
//! with BN-pairs, together with checkers for their axiom systems.

pub mod budget;
pub mod building;
pub mod classical;
pub mod error;
pub mod forms;
pub mod matvec;
pub mod permgrp;
pub mod polar;
pub mod projgeom;
pub mod scalar;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
