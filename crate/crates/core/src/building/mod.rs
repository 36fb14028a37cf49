//! Flag complexes of projective and polar spaces, apartments, Tits systems,
//! Weyl groups and the root system of type `A_n`.

mod apartment;
mod complex;
mod roots;
mod tits;
mod weyl;

pub use apartment::{
    apartment, apartment_chambers_in, common_frame, count_apartments_containing, standard_flag, standard_frame,
    Apartment,
};
pub use complex::{polar_flag_complex, projective_flag_complex, FlagComplex};
pub use roots::{
    check_root_system, root_commutator_correspondence, RatVec, RootCommutatorReport, RootPairCheck, RootSystemAn,
    RootSystemReport,
};
pub use tits::{extract_tits_system, simple_reflection, verify_tits, TitsReport, TitsSystemData};
pub use weyl::{coxeter_check, coxeter_m, weyl_group, CoxeterCertificate, CoxeterRelation};
