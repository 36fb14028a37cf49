use std::collections::HashMap;

use super::geometry::PointLineGeometry;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::{enumerate_grassmannian, normalize_point, Mat, Subspace};
use crate::scalar::{DivisionRing, FieldAuto, FiniteField, Gf};

/// `PG(V)` for `V = GF(q)^{n+1}`: the Grassmannians `Gr_1 .. Gr_n`.
#[derive(Debug, Clone)]
pub struct ProjectiveGeometry {
    field: FiniteField,
    rank: usize,
    grassmannians: Vec<Vec<Subspace<Gf>>>,
    point_index: HashMap<Vec<Gf>, u32>,
}

/// The normalized vectors of all points of `s`, in coefficient order.
pub fn subspace_points(field: &FiniteField, s: &Subspace<Gf>) -> Vec<Vec<Gf>> {
    let basis = s.basis_vectors();
    let k = basis.len();
    let q = field.size() as u64;
    let n = s.ambient_dim();
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        for code in 0..q.pow(free as u32) {
            let mut v = basis[lead].clone();
            let mut c = code;
            for t in (lead + 1..k).rev() {
                let a = Gf((c % q) as u32);
                c /= q;
                for i in 0..n {
                    v[i] = field.add(&v[i], &field.mul(&basis[t][i], &a));
                }
            }
            out.push(v);
        }
    }
    out
}

impl ProjectiveGeometry {
    /// The projective geometry of rank `n` over `field`.
    pub fn build(n: usize, field: &FiniteField, budget: &Budget) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        let mut grassmannians = Vec::with_capacity(n);
        for k in 1..=n {
            grassmannians.push(enumerate_grassmannian(field, n + 1, k, budget)?);
        }
        let point_index = grassmannians[0]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.basis_vectors().remove(0), i as u32))
            .collect();
        Ok(ProjectiveGeometry { field: field.clone(), rank: n, grassmannians, point_index })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.rank + 1
    }

    /// `Gr_k` for `1 <= k <= n`.
    pub fn grassmannian(&self, k: usize) -> &[Subspace<Gf>] {
        &self.grassmannians[k - 1]
    }

    pub fn points(&self) -> &[Subspace<Gf>] {
        &self.grassmannians[0]
    }

    pub fn point_of_vector(&self, v: &[Gf]) -> Option<u32> {
        let v = normalize_point(&self.field, v)?;
        self.point_index.get(&v).copied()
    }

    /// Point ids lying in `s`, sorted.
    pub fn points_of(&self, s: &Subspace<Gf>) -> Vec<u32> {
        let mut out: Vec<u32> = subspace_points(&self.field, s)
            .iter()
            .map(|v| self.point_index[v])
            .collect();
        out.sort_unstable();
        out
    }

    /// The truncation `PG(V)_{1,2}`; for rank 1 there are no lines.
    pub fn point_line(&self) -> PointLineGeometry {
        let lines = if self.rank >= 2 {
            self.grassmannians[1].iter().map(|l| self.points_of(l)).collect()
        } else {
            Vec::new()
        };
        PointLineGeometry::new(self.points().len(), lines).expect("valid incidence")
    }

    pub fn subspace_of_points(&self, pts: &[u32]) -> Subspace<Gf> {
        let vs: Vec<Vec<Gf>> = pts
            .iter()
            .map(|&p| self.points()[p as usize].basis_vectors().remove(0))
            .collect();
        Subspace::from_vectors(&self.field, self.ambient_dim(), &vs)
    }
}

/// The correspondence `U -> U^perp` induced by a sesquilinear Gram matrix
/// `H` with `h(u, v) = u^{sigma T} H v`.
#[derive(Debug, Clone)]
pub struct Polarity {
    field: FiniteField,
    gram: Mat<Gf>,
    sigma: FieldAuto,
}

impl Polarity {
    pub fn new(field: &FiniteField, gram: Mat<Gf>, sigma: FieldAuto) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        if gram.rank(field) != gram.rows() {
            return Err(Error::Degenerate("Gram matrix is singular".into()));
        }
        Ok(Polarity { field: field.clone(), gram, sigma })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn form(&self, u: &[Gf], v: &[Gf]) -> Gf {
        let f = &self.field;
        let hv = self.gram.apply(f, v);
        u.iter()
            .zip(&hv)
            .fold(Gf(0), |acc, (a, b)| f.add(&acc, &f.mul(&self.sigma.apply(f, *a), b)))
    }

    pub fn perp(&self, u: &Subspace<Gf>) -> Subspace<Gf> {
        let f = &self.field;
        let b = u.basis().map(|x| self.sigma.apply(f, *x)).transpose();
        let m = b.mul(f, &self.gram).expect("dimensions agree");
        Subspace::span(f, &m.kernel(f))
    }

    /// `p` lies in `p^perp`.
    pub fn is_absolute(&self, p: &Subspace<Gf>) -> bool {
        self.perp(p).contains(&self.field, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_projective_geometries() {
        let b = Budget::default();
        let f2 = FiniteField::new(2, 1).unwrap();
        let f3 = FiniteField::new(3, 1).unwrap();
        let fano = ProjectiveGeometry::build(2, &f2, &b).unwrap();
        assert_eq!((fano.points().len(), fano.grassmannian(2).len()), (7, 7));
        let pg32 = ProjectiveGeometry::build(3, &f2, &b).unwrap();
        assert_eq!(
            (pg32.points().len(), pg32.grassmannian(2).len(), pg32.grassmannian(3).len()),
            (15, 35, 15)
        );
        let pg23 = ProjectiveGeometry::build(2, &f3, &b).unwrap();
        assert_eq!((pg23.points().len(), pg23.grassmannian(2).len()), (13, 13));
        assert!(pg23.point_line().check_pg_axioms().all_pass());
        assert!(pg32.point_line().lines().iter().all(|l| l.len() == 3));
    }

    #[test]
    fn triangle_closure_is_a_plane() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let pg = ProjectiveGeometry::build(3, &f2, &Budget::default()).unwrap();
        let g = pg.point_line();
        let c = g.subspace_closure(&[pg.point_of_vector(&[Gf(1), Gf(0), Gf(0), Gf(0)]).unwrap(),
            pg.point_of_vector(&[Gf(0), Gf(1), Gf(0), Gf(0)]).unwrap(),
            pg.point_of_vector(&[Gf(0), Gf(0), Gf(1), Gf(0)]).unwrap()]);
        assert_eq!(c.len(), 7);
        assert_eq!(g.subspace_rank(&c).unwrap(), 2);
    }

    #[test]
    fn polarity_examples() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let id = Mat::identity(&f3, 3);
        let pol = Polarity::new(&f3, id, FieldAuto::identity()).unwrap();
        let p = Subspace::from_vectors(&f3, 3, &[vec![Gf(1), Gf(0), Gf(0)]]);
        let h = Subspace::from_vectors(&f3, 3, &[vec![Gf(0), Gf(1), Gf(0)], vec![Gf(0), Gf(0), Gf(1)]]);
        assert_eq!(pol.perp(&p), h);
        assert_eq!(pol.perp(&h), p);

        let f2 = FiniteField::new(2, 1).unwrap();
        let j = Mat::from_rows(vec![
            vec![Gf(0), Gf(1), Gf(0), Gf(0)],
            vec![Gf(1), Gf(0), Gf(0), Gf(0)],
            vec![Gf(0), Gf(0), Gf(0), Gf(1)],
            vec![Gf(0), Gf(0), Gf(1), Gf(0)],
        ])
        .unwrap();
        let sp = Polarity::new(&f2, j, FieldAuto::identity()).unwrap();
        let pg = ProjectiveGeometry::build(3, &f2, &Budget::default()).unwrap();
        assert!(pg.points().iter().all(|p| sp.is_absolute(p)));
        assert!(Polarity::new(&f2, Mat::zeros(&f2, 2, 2), FieldAuto::identity()).is_err());
    }
}
