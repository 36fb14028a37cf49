//! Polar spaces: construction from pseudo-quadratic forms, the
//! Buekenhout-Shult axioms, `A_{3,2}` and the oriflamme complex.

mod lattice;
mod space;

pub use lattice::{check_polar_axioms, PolarKind, PolarReport, SubspaceLattice};
pub use space::{
    a32_oriflamme_certificate, build_a32, build_polar, oriflamme_complex, Oriflamme,
    OriflammeCertificate, PolarSource, PolarSpace,
};

#[cfg(test)]
mod tests;
