use super::*;
use crate::budget::Budget;
use crate::forms::FormDescriptor;
use crate::projgeom::PointLineGeometry;
use crate::scalar::FiniteField;

fn form(json: &str) -> crate::forms::PseudoQuadraticForm {
    FormDescriptor::from_json(json).unwrap().build().unwrap()
}

fn symplectic4(q: u32) -> crate::forms::PseudoQuadraticForm {
    form(&format!(
        r#"{{"scalar":"GF({q})","epsilon":"-1","lambda":"full","gram":[[0,1,0,0],[0,0,0,0],[0,0,0,1],[0,0,0,0]]}}"#
    ))
}

#[test]
fn symplectic_quadrangles_are_thick() {
    let b = Budget::default();
    for (q, n) in [(2, 15), (3, 40)] {
        let p = build_polar(&symplectic4(q), &b).unwrap();
        assert_eq!(p.geometry.num_points(), n);
        assert_eq!(p.geometry.num_lines(), n);
        let r = p.check_axioms(&b).unwrap();
        assert_eq!(r.kind, PolarKind::Thick, "{r:?}");
        assert_eq!((r.lattice_rank, r.witt_index), (2, Some(2)));
    }
}

#[test]
fn hyperbolic_quadric_is_weak() {
    let b = Budget::default();
    let p = build_polar(
        &form(r#"{"scalar":"GF(2)","epsilon":1,"lambda":"zero","gram":[[0,1,0,0],[0,0,0,0],[0,0,0,1],[0,0,0,0]]}"#),
        &b,
    )
    .unwrap();
    assert!((0..p.geometry.num_points() as u32).all(|x| p.geometry.lines_through(x).len() == 2));
    assert_eq!(p.check_axioms(&b).unwrap().kind, PolarKind::Weak);
}

#[test]
fn grid_is_weak() {
    let b = Budget::default();
    let r = check_polar_axioms(&PointLineGeometry::grid(3, 3), &b).unwrap();
    assert!(["PS1", "PS2", "PS3", "PS4"].iter().all(|a| r.passed(a)));
    assert!(!r.passed("PS5"));
    assert_eq!((r.kind, r.min_cover), (PolarKind::Weak, 2));
}

#[test]
fn fano_is_not_polar() {
    let b = Budget::default();
    let f2 = FiniteField::new(2, 1).unwrap();
    let pg = crate::projgeom::build_pg(2, &f2, &b).unwrap();
    let r = check_polar_axioms(&pg.point_line(), &b).unwrap();
    assert!(!r.passed("PS2"));
    assert_eq!(r.kind, PolarKind::NotPolar);
}

#[test]
fn a32_over_gf2() {
    let b = Budget::default();
    let f2 = FiniteField::new(2, 1).unwrap();
    let a = build_a32(&f2, &b).unwrap();
    assert_eq!(a.geometry.num_points(), 35);
    let r = a.check_axioms(&b).unwrap();
    assert_eq!((r.kind, r.lattice_rank, r.min_cover), (PolarKind::Weak, 3, 2));
    let lat = SubspaceLattice::build(&a.geometry, &b).unwrap();
    let planes = lat.of_rank(2);
    for l in lat.of_rank(1) {
        let c = planes.iter().filter(|p| l.iter().all(|x| p.contains(x))).count();
        assert_eq!(c, 2);
    }
}

#[test]
fn oriflamme_matches_delta() {
    let b = Budget::default();
    let f2 = FiniteField::new(2, 1).unwrap();
    let c = a32_oriflamme_certificate(&f2, &b).unwrap();
    assert_eq!((c.oriflamme_vertices, c.delta_vertices), (65, 65));
    assert_eq!((c.oriflamme_chambers, c.delta_chambers), (315, 315));
    assert_eq!(c.class_sizes, [15, 15]);
    assert!(c.isomorphic);
}
