use std::collections::HashSet;

use serde::Serialize;

use super::pq::PseudoQuadraticForm;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::{all_vectors, normalize_point, Mat, Subspace};
use crate::scalar::{DivisionRing, Gf};

/// Normalized vectors of the points where `q` vanishes.
pub fn singular_points(pq: &PseudoQuadraticForm, budget: &Budget) -> Result<Vec<Vec<Gf>>> {
    let field = pq.field();
    let n = pq.dim();
    let total = (field.size() as u128).saturating_pow(n as u32);
    budget.check_enumeration("vectors", total)?;
    Ok(all_vectors(field, n)
        .filter(|v| normalize_point(field, v).as_deref() == Some(v.as_slice()))
        .filter(|v| pq.q_vanishes(v))
        .collect())
}

fn perp_candidates<'a>(
    pq: &'a PseudoQuadraticForm,
    u: &'a Subspace<Gf>,
    points: &'a [Vec<Gf>],
) -> impl Iterator<Item = &'a Vec<Gf>> + 'a {
    let basis = u.basis_vectors();
    points.iter().filter(move |p| {
        !u.contains_vector(pq.field(), p)
            && basis.iter().all(|b| pq.field().is_zero(&pq.h(b, p)))
    })
}

/// Largest totally isotropic dimension with a witness, by depth-first
/// extension of isotropic flags; subspaces already explored are memoized.
pub fn witt_index(pq: &PseudoQuadraticForm, budget: &Budget) -> Result<(usize, Subspace<Gf>)> {
    let n = pq.dim();
    let points = singular_points(pq, budget)?;
    let bound = (n + pq.radical().dim()) / 2;
    let mut seen: HashSet<Subspace<Gf>> = HashSet::new();
    let mut best = Subspace::zero(n);
    fn dfs(
        pq: &PseudoQuadraticForm,
        u: Subspace<Gf>,
        points: &[Vec<Gf>],
        bound: usize,
        seen: &mut HashSet<Subspace<Gf>>,
        best: &mut Subspace<Gf>,
        budget: &Budget,
    ) -> Result<()> {
        if u.dim() > best.dim() {
            *best = u.clone();
        }
        if best.dim() >= bound {
            return Ok(());
        }
        budget.check_time()?;
        let next: Vec<Vec<Gf>> = perp_candidates(pq, &u, points).cloned().collect();
        for p in next {
            let w = u.join(pq.field(), &Subspace::from_vectors(pq.field(), u.ambient_dim(), &[p]))?;
            if seen.insert(w.clone()) {
                budget.check_enumeration("isotropic flags", seen.len() as u128)?;
                dfs(pq, w, points, bound, seen, best, budget)?;
                if best.dim() >= bound {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
    dfs(pq, Subspace::zero(n), &points, bound, &mut seen, &mut best, budget)?;
    Ok((best.dim(), best))
}

/// All totally isotropic `k`-subspaces, sorted.
pub fn isotropic_grassmannian(pq: &PseudoQuadraticForm, k: usize, budget: &Budget) -> Result<Vec<Subspace<Gf>>> {
    let n = pq.dim();
    let points = singular_points(pq, budget)?;
    let mut level: Vec<Subspace<Gf>> = vec![Subspace::zero(n)];
    for _ in 0..k {
        let mut next: HashSet<Subspace<Gf>> = HashSet::new();
        for u in &level {
            budget.check_time()?;
            for p in perp_candidates(pq, u, &points) {
                let w = u.join(pq.field(), &Subspace::from_vectors(pq.field(), n, &[p.clone()]))?;
                next.insert(w);
            }
            budget.check_grassmannian("isotropic subspaces", next.len() as u128)?;
        }
        level = next.into_iter().collect();
        level.sort();
    }
    Ok(level)
}

#[derive(Debug, Clone, Serialize)]
pub struct WittDecomposition {
    /// `(e_i, f_i)` with `h(e_i, f_i) = 1` and `q(e_i) = q(f_i) = 0`.
    pub hyperbolic_pairs: Vec<(Vec<Gf>, Vec<Gf>)>,
    pub anisotropic_basis: Vec<Vec<Gf>>,
    pub index: usize,
}

impl WittDecomposition {
    /// Columns `e_1, f_1, ..., e_m, f_m, V_0`.
    pub fn basis_matrix(&self, n: usize) -> Mat<Gf> {
        let mut cols = Vec::new();
        for (e, f) in &self.hyperbolic_pairs {
            cols.push(e.clone());
            cols.push(f.clone());
        }
        cols.extend(self.anisotropic_basis.iter().cloned());
        Mat::from_columns(n, &cols)
    }
}

/// Splits off hyperbolic pairs until the remaining space is anisotropic.
pub fn witt_decompose(pq: &PseudoQuadraticForm, budget: &Budget) -> Result<WittDecomposition> {
    if !pq.is_nondegenerate() {
        return Err(Error::Degenerate("Witt decomposition needs a non-degenerate form".into()));
    }
    let field = pq.field();
    let n = pq.dim();
    let sigma = pq.param().sigma();
    budget.check_enumeration("vectors", (field.size() as u128).saturating_pow(n as u32))?;
    let mut space = Subspace::full(field, n);
    let mut pairs = Vec::new();
    loop {
        budget.check_time()?;
        let basis = space.basis_vectors();
        let d = basis.len();
        let combine = |c: &[Gf]| -> Vec<Gf> {
            let mut v = vec![Gf(0); n];
            for (coef, b) in c.iter().zip(&basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.add(x, &field.mul(y, coef));
                }
            }
            v
        };
        let u = all_vectors(field, d)
            .filter(|c| c.iter().any(|x| x.0 != 0))
            .map(|c| combine(&c))
            .find(|v| pq.q_vanishes(v));
        let Some(u) = u else { break };
        let (w, t) = basis
            .iter()
            .map(|b| (b.clone(), pq.h(&u, b)))
            .find(|(_, t)| !field.is_zero(t))
            .ok_or_else(|| Error::Degenerate("isotropic vector in the radical".into()))?;
        let tinv = field.inv(&t).unwrap();
        let w: Vec<Gf> = w.iter().map(|x| field.mul(x, &tinv)).collect();
        // h(u, w) = 1 now. With c = f(w,w)^{sigma^{-1}},
        // f(w - uc, w - uc) = f(w,w) - c^sigma + (a - a^sigma eps) + c^sigma f(u,u) c
        // for a = f(w,u) c, and the last two terms lie in Lambda.
        let c = sigma.inverse(field).apply(field, pq.form().eval(&w, &w));
        let w2: Vec<Gf> = w.iter().zip(&u).map(|(x, y)| field.sub(x, &field.mul(y, &c))).collect();
        debug_assert!(pq.q_vanishes(&w2));
        // restrict to {u, w2}^perp inside the current space
        let hb = Mat::from_fn(2, d, |i, j| {
            let x = if i == 0 { &u } else { &w2 };
            pq.h(x, &basis[j])
        });
        let ker = hb.kernel(field);
        let vs: Vec<Vec<Gf>> = ker.columns().iter().map(|c| combine(c)).collect();
        space = Subspace::from_vectors(field, n, &vs);
        pairs.push((u, w2));
    }
    Ok(WittDecomposition {
        index: pairs.len(),
        hyperbolic_pairs: pairs,
        anisotropic_basis: space.basis_vectors(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::param::{FormParameter, LambdaSpec};
    use super::super::pq::tests::{gram, o5_form};
    use super::super::pq::SesquilinearForm;
    use super::*;
    use crate::scalar::{FieldAuto, FiniteField};

    fn pq(q: u32, g: &[&[u32]], eps: u32, lam: LambdaSpec) -> PseudoQuadraticForm {
        let f = FiniteField::with_order(q).unwrap();
        let sf = SesquilinearForm::new(&f, gram(&f, g), FieldAuto::identity()).unwrap();
        let p = FormParameter::new(&f, FieldAuto::identity(), Gf(eps), lam).unwrap();
        PseudoQuadraticForm::new(sf, p).unwrap()
    }

    fn symplectic4(q: u32) -> PseudoQuadraticForm {
        pq(q, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]], q - 1, LambdaSpec::Full)
    }

    #[test]
    fn symplectic_index() {
        let b = Budget::default();
        for q in [2, 3, 5] {
            let (m, w) = witt_index(&symplectic4(q), &b).unwrap();
            assert_eq!(m, 2);
            assert!(symplectic4(q).is_totally_isotropic(&w));
        }
    }

    #[test]
    fn anisotropic_binary_part() {
        // x^2 + xy + y^2 plus a hyperbolic pair over GF(2)
        let f = pq(2, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]], 1, LambdaSpec::Zero);
        let b = Budget::default();
        assert_eq!(witt_index(&f, &b).unwrap().0, 1);
        let d = witt_decompose(&f, &b).unwrap();
        assert_eq!((d.index, d.anisotropic_basis.len()), (1, 2));
    }

    #[test]
    fn decomposition_gf3_identity() {
        let f = pq(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 1, LambdaSpec::Zero);
        let d = witt_decompose(&f, &Budget::default()).unwrap();
        assert_eq!((d.index, d.anisotropic_basis.len()), (1, 1));
        let (e, g) = &d.hyperbolic_pairs[0];
        assert!(f.q_vanishes(e) && f.q_vanishes(g));
        assert_eq!(f.h(e, g), Gf(1));
    }

    #[test]
    fn hyperbolic_module_has_no_kernel() {
        let f = pq(3, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0]], 1, LambdaSpec::Zero);
        let d = witt_decompose(&f, &Budget::default()).unwrap();
        assert_eq!(d.index, 2);
        assert!(d.anisotropic_basis.is_empty());
    }

    #[test]
    fn o5_points_match_symplectic_points() {
        let b = Budget::default();
        let o5 = o5_form(2);
        let pts = isotropic_grassmannian(&o5, 1, &b).unwrap();
        assert_eq!(pts.len(), 15);
        let red = super::super::pq::reduce_slightly_degenerate(&o5).unwrap();
        assert_eq!(isotropic_grassmannian(&red.reduced, 1, &b).unwrap().len(), 15);
        assert_eq!(isotropic_grassmannian(&o5, 2, &b).unwrap().len(), 15);
        assert_eq!(isotropic_grassmannian(&red.reduced, 2, &b).unwrap().len(), 15);
        let images: HashSet<_> = pts.iter().map(|p| red.project(p)).collect();
        assert_eq!(images.len(), 15);
    }

    #[test]
    fn zero_dimensional() {
        let f = FiniteField::with_order(2).unwrap();
        let sf = SesquilinearForm::new(&f, Mat::zeros(&f, 0, 0), FieldAuto::identity()).unwrap();
        let p = FormParameter::new(&f, FieldAuto::identity(), Gf(1), LambdaSpec::Zero).unwrap();
        let z = PseudoQuadraticForm::new(sf, p).unwrap();
        assert_eq!(witt_index(&z, &Budget::default()).unwrap().0, 0);
    }
}
