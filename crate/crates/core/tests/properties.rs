use geomforge::budget::Budget;
use geomforge::classical::{classical_form, dieudonne_det, Transvection};
use geomforge::error::Error;
use geomforge::forms::witt_index;
use geomforge::matvec::{annihilator, Grassmannian, Mat, Subspace};
use geomforge::permgrp::{Perm, PermGroup};
use geomforge::scalar::{quat_norm, DivisionRing, FiniteField, Gf, Quaternions, RationalQuaternion};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn field() -> impl Strategy<Value = FiniteField> {
    prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]).prop_map(|q| FiniteField::with_order(q).unwrap())
}

fn matrix(q: u32, n: usize) -> impl Strategy<Value = Mat<Gf>> {
    prop::collection::vec(0..q, n * n).prop_map(move |v| {
        Mat::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| Gf(x)).collect()).collect()).unwrap()
    })
}

fn quaternion() -> impl Strategy<Value = RationalQuaternion> {
    prop::array::uniform4(-6i64..=6).prop_map(|[a, b, c, d]| RationalQuaternion::from_ints(a, b, c, d))
}

fn det_or_zero(f: &FiniteField, m: &Mat<Gf>) -> Gf {
    match dieudonne_det(f, m) {
        Ok(d) => d,
        Err(Error::Singular) => f.zero(),
        Err(e) => panic!("{e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_group_laws(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.mul(&b).conjugate_by(&c), a.conjugate_by(&c).mul(&b.conjugate_by(&c)));
        prop_assert!(a.commutator(&b).mul(&b.commutator(&a)).is_identity());
    }

    #[test]
    fn generated_groups_are_consistent(a in perm(6), b in perm(6)) {
        let g = PermGroup::new(6, vec![a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(720 % g.order(), 0);
        prop_assert!(g.contains(&a.mul(&b)) && g.contains(&b.inverse()));
        let orbit_total: usize = g.orbits().iter().map(Vec::len).sum();
        prop_assert_eq!(orbit_total, 6);
        let stab = g.stabilizer(0);
        prop_assert_eq!(stab.order() * g.orbit(0).len() as u128, g.order());
        prop_assert!(g.derived_subgroup().is_normal_in(&g));
    }

    #[test]
    fn field_axioms(f in field(), a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let q = f.size();
        let (a, b, c) = (Gf(a % q), Gf(b % q), Gf(c % q));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        if let Some(i) = f.inv(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &i)));
        } else {
            prop_assert!(f.is_zero(&a));
        }
    }

    #[test]
    fn determinant_is_multiplicative(
        (q, a, b) in prop::sample::select(vec![2u32, 3, 4, 5, 9])
            .prop_flat_map(|q| (Just(q), matrix(q, 3), matrix(q, 3)))
    ) {
        let f = FiniteField::with_order(q).unwrap();
        let ab = a.mul(&f, &b).unwrap();
        prop_assert_eq!(det_or_zero(&f, &ab), f.mul(&det_or_zero(&f, &a), &det_or_zero(&f, &b)));
    }

    #[test]
    fn quaternion_norm_is_multiplicative(x in quaternion(), y in quaternion()) {
        let h = Quaternions;
        prop_assert_eq!(quat_norm(&h.mul(&x, &y)), quat_norm(&x) * quat_norm(&y));
    }

    #[test]
    fn transvections_commute_exactly_with_shared_center_or_axis(
        u1 in prop::collection::vec(0u32..3, 3),
        r1 in prop::collection::vec(0u32..3, 2),
        u2 in prop::collection::vec(0u32..3, 3),
        r2 in prop::collection::vec(0u32..3, 2),
    ) {
        let f = FiniteField::with_order(3).unwrap();
        let make = |u: &[u32], r: &[u32]| -> Option<Transvection<Gf>> {
            let u: Vec<Gf> = u.iter().map(|&x| Gf(x)).collect();
            let p = u.iter().rposition(|x| !f.is_zero(x))?;
            let mut rho = vec![f.zero(); 3];
            let mut k = 0;
            for (i, slot) in rho.iter_mut().enumerate() {
                if i != p {
                    *slot = Gf(r[k]);
                    k += 1;
                }
            }
            let partial = (0..3).filter(|&i| i != p).fold(f.zero(), |s, i| f.add(&s, &f.mul(&rho[i], &u[i])));
            rho[p] = f.neg(&f.mul(&partial, &f.inv(&u[p]).unwrap()));
            let t = Transvection::new(&f, u, rho).ok()?;
            (!t.is_trivial(&f)).then_some(t)
        };
        if let (Some(a), Some(b)) = (make(&u1, &r1), make(&u2, &r2)) {
            let (commute, shared) = geomforge::classical::transvections_commute_iff(&f, &a, &b).unwrap();
            prop_assert_eq!(commute, shared);
        }
    }

    #[test]
    fn subspace_dimension_formula(
        a in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4),
        b in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4),
    ) {
        let f = FiniteField::with_order(3).unwrap();
        let gf = |vs: &Vec<Vec<u32>>| vs.iter().map(|v| v.iter().map(|&x| Gf(x)).collect()).collect::<Vec<Vec<Gf>>>();
        let u = Subspace::from_vectors(&f, 4, &gf(&a));
        let w = Subspace::from_vectors(&f, 4, &gf(&b));
        let join = u.join(&f, &w).unwrap();
        let meet = u.meet(&f, &w).unwrap();
        prop_assert_eq!(join.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(join.contains(&f, &u) && u.contains(&f, &meet));
        prop_assert_eq!(annihilator(&f, &u).unwrap().dim(), 4 - u.dim());
    }

    #[test]
    fn witt_index_is_a_base_change_invariant(g in matrix(3, 4)) {
        let f = FiniteField::with_order(3).unwrap();
        prop_assume!(g.rank(&f) == 4);
        let sp = classical_form("sp", 4, 3).unwrap();
        let budget = Budget::default();
        prop_assert_eq!(witt_index(&sp.base_change(&g).unwrap(), &budget).unwrap().0, 2);
    }
}

#[test]
fn grassmannian_iteration_matches_count() {
    for q in [2, 3, 4] {
        let f = FiniteField::with_order(q).unwrap();
        for n in 0..=4 {
            for k in 0..=n {
                let g = Grassmannian::new(&f, n, k);
                assert_eq!(g.iter().count() as u128, g.count());
            }
        }
    }
}
