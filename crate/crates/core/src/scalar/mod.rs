//! Exact coefficient arithmetic.
//!
//! Two coefficient structures are supported: finite fields `GF(p^k)` (with
//! their Frobenius automorphisms) and the rational Hamilton quaternions, the
//! one non-commutative skew field used here. Elements are plain values; all
//! arithmetic goes through a ring object implementing [`DivisionRing`], which
//! lets the linear algebra in [`crate::matvec`] be written once.

mod field;
mod quaternion;

use std::fmt::Debug;
use std::hash::Hash;

pub use field::{FieldAuto, FiniteField, Gf, FIELD_SIZE_LIMIT};
pub use quaternion::{parse_rational, quat_norm, Quaternions, RationalQuaternion};

use crate::error::{Error, Result};

/// A skew field with exact arithmetic.
pub trait DivisionRing: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_commutative(&self) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u32;
    /// Literal syntax for reports and the matrix text format.
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a * b^{-1}`; panics on division by zero, which callers rule out.
    fn div_right(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }
}

/// An anti-automorphism of a coefficient structure.
///
/// On a commutative field anti-automorphisms are automorphisms, so the field
/// case is a Frobenius power. The quaternions carry standard conjugation; the
/// identity is not an anti-automorphism of a non-commutative ring, which is
/// why no identity variant exists for them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sigma {
    Field(FieldAuto),
    QuatConjugation,
}

/// A scalar tagged with its coefficient structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkewScalar {
    Field { field: FiniteField, value: Gf },
    Quat(RationalQuaternion),
}

impl SkewScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            SkewScalar::Field { value, .. } => value.0 == 0,
            SkewScalar::Quat(x) => x.is_zero(),
        }
    }

    pub fn mul(&self, other: &SkewScalar) -> Result<SkewScalar> {
        match (self, other) {
            (SkewScalar::Field { field, value }, SkewScalar::Field { field: g, value: w })
                if field == g =>
            {
                Ok(SkewScalar::Field {
                    field: field.clone(),
                    value: field.mul(value, w),
                })
            }
            (SkewScalar::Quat(x), SkewScalar::Quat(y)) => Ok(SkewScalar::Quat(Quaternions.mul(x, y))),
            _ => Err(Error::Mismatch("scalars from different structures".into())),
        }
    }

    pub fn add(&self, other: &SkewScalar) -> Result<SkewScalar> {
        match (self, other) {
            (SkewScalar::Field { field, value }, SkewScalar::Field { field: g, value: w })
                if field == g =>
            {
                Ok(SkewScalar::Field {
                    field: field.clone(),
                    value: field.add(value, w),
                })
            }
            (SkewScalar::Quat(x), SkewScalar::Quat(y)) => Ok(SkewScalar::Quat(Quaternions.add(x, y))),
            _ => Err(Error::Mismatch("scalars from different structures".into())),
        }
    }

    pub fn inv(&self) -> Option<SkewScalar> {
        match self {
            SkewScalar::Field { field, value } => field.inv(value).map(|v| SkewScalar::Field {
                field: field.clone(),
                value: v,
            }),
            SkewScalar::Quat(x) => Quaternions.inv(x).map(SkewScalar::Quat),
        }
    }
}

impl std::fmt::Display for SkewScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SkewScalar::Field { value, .. } => write!(f, "{}", value.0),
            SkewScalar::Quat(x) => write!(f, "{x}"),
        }
    }
}

/// Applies an anti-automorphism: additive, and `(xy)^σ = y^σ x^σ`.
pub fn apply_sigma(a: &SkewScalar, sigma: &Sigma) -> Result<SkewScalar> {
    match (a, sigma) {
        (SkewScalar::Field { field, value }, Sigma::Field(auto)) => {
            if auto.exponent() >= field.degree() {
                return Err(Error::Mismatch(format!(
                    "Frobenius exponent {} out of range for GF({})",
                    auto.exponent(),
                    field.size()
                )));
            }
            Ok(SkewScalar::Field {
                field: field.clone(),
                value: auto.apply(field, *value),
            })
        }
        (SkewScalar::Quat(x), Sigma::QuatConjugation) => Ok(SkewScalar::Quat(x.conj())),
        (SkewScalar::Field { .. }, Sigma::QuatConjugation) => Err(Error::Mismatch(
            "quaternion conjugation applied to a finite-field element".into(),
        )),
        (SkewScalar::Quat(_), Sigma::Field(_)) => Err(Error::Mismatch(
            "field automorphism applied to a quaternion".into(),
        )),
    }
}
