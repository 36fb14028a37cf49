use std::cmp::Ordering;

use super::Mat;
use crate::error::{Error, Result};
use crate::scalar::DivisionRing;

/// A right subspace of `D^n`, stored as its unique column-reduced echelon
/// basis: in column `t` the topmost nonzero entry is a `1` in pivot row
/// `r_t`, pivot rows strictly increase, and every other column vanishes in
/// row `r_t`. Equal subspaces therefore compare and hash equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Mat<E>,
    pivots: Vec<usize>,
}

impl<E: Clone + Ord> PartialOrd for Subspace<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E: Clone + Ord> Ord for Subspace<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), &self.pivots, self.basis.entries()).cmp(&(
            other.ambient,
            other.dim(),
            &other.pivots,
            other.basis.entries(),
        ))
    }
}

/// Column span of `m` in canonical form, together with its rank.
pub fn echelonize<R: DivisionRing>(ring: &R, m: &Mat<R::Elem>) -> (Subspace<R::Elem>, usize) {
    let s = Subspace::span(ring, m);
    let d = s.dim();
    (s, d)
}

/// Column-reduced echelon form via right scalar multiplications and column
/// additions, both of which preserve the right column span.
fn column_reduce<R: DivisionRing>(ring: &R, n: usize, mut cols: Vec<Vec<R::Elem>>) -> (Vec<Vec<R::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for r in 0..n {
        if rank == cols.len() {
            break;
        }
        let Some(c) = (rank..cols.len()).find(|&c| !ring.is_zero(&cols[c][r])) else {
            continue;
        };
        cols.swap(rank, c);
        let inv = ring.inv(&cols[rank][r]).expect("pivot is nonzero");
        for x in cols[rank].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        let pivot_col = cols[rank].clone();
        for (j, col) in cols.iter_mut().enumerate() {
            if j == rank {
                continue;
            }
            let factor = col[r].clone();
            if ring.is_zero(&factor) {
                continue;
            }
            for (x, p) in col.iter_mut().zip(&pivot_col) {
                if !ring.is_zero(p) {
                    *x = ring.sub(x, &ring.mul(p, &factor));
                }
            }
        }
        pivots.push(r);
        rank += 1;
    }
    cols.truncate(rank);
    (cols, pivots)
}

impl<E: Clone + Eq> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::from_fn(ambient, 0, |_, _| unreachable!()),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical basis; its columns span the subspace.
    pub fn basis(&self) -> &Mat<E> {
        &self.basis
    }

    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<E>> {
        self.basis.columns()
    }

    /// Builds a subspace from an already reduced basis; used by the
    /// Grassmannian enumerator which produces canonical forms directly.
    pub(crate) fn from_canonical(ambient: usize, basis: Mat<E>, pivots: Vec<usize>) -> Self {
        Subspace { ambient, basis, pivots }
    }
}

impl<E: Clone + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync> Subspace<E> {
    pub fn full<R: DivisionRing<Elem = E>>(ring: &R, n: usize) -> Self {
        Subspace::span(ring, &Mat::identity(ring, n))
    }

    pub fn span<R: DivisionRing<Elem = E>>(ring: &R, m: &Mat<E>) -> Self {
        let n = m.rows();
        let (cols, pivots) = column_reduce(ring, n, m.columns());
        Subspace {
            ambient: n,
            basis: Mat::from_columns(n, &cols),
            pivots,
        }
    }

    pub fn from_vectors<R: DivisionRing<Elem = E>>(ring: &R, n: usize, vs: &[Vec<E>]) -> Self {
        Subspace::span(ring, &Mat::from_columns(n, vs))
    }

    /// Reduces `v` against the canonical basis; the result is zero iff `v`
    /// lies in the subspace.
    pub fn reduce_vector<R: DivisionRing<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        let mut w = v.to_vec();
        for (t, &r) in self.pivots.iter().enumerate() {
            let c = w[r].clone();
            if ring.is_zero(&c) {
                continue;
            }
            for i in 0..self.ambient {
                let b = self.basis.get(i, t);
                if !ring.is_zero(b) {
                    w[i] = ring.sub(&w[i], &ring.mul(b, &c));
                }
            }
        }
        w
    }

    pub fn contains_vector<R: DivisionRing<Elem = E>>(&self, ring: &R, v: &[E]) -> bool {
        self.reduce_vector(ring, v).iter().all(|x| ring.is_zero(x))
    }

    pub fn contains<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Subspace<E>) -> bool {
        self.ambient == other.ambient
            && other.dim() <= self.dim()
            && other.basis_vectors().iter().all(|v| self.contains_vector(ring, v))
    }

    fn check_ambient(&self, other: &Subspace<E>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of D^{} and D^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn join<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Subspace<E>) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Subspace::span(ring, &self.basis.hcat(&other.basis)?))
    }

    /// Intersection, from the right kernel of `[A | -B]`.
    pub fn meet<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Subspace<E>) -> Result<Self> {
        self.check_ambient(other)?;
        let neg_b = other.basis.map(|x| ring.neg(x));
        let k = self.basis.hcat(&neg_b)?.kernel(ring);
        let a_part = Mat::from_fn(self.dim(), k.cols(), |i, j| k.get(i, j).clone());
        Ok(Subspace::span(ring, &self.basis.mul(ring, &a_part)?))
    }

    /// Symmetrized inclusion.
    pub fn incident<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Subspace<E>) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.contains(ring, other) || other.contains(ring, self))
    }

    /// Image under a linear map.
    pub fn image<R: DivisionRing<Elem = E>>(&self, ring: &R, g: &Mat<E>) -> Result<Self> {
        Ok(Subspace::span(ring, &g.mul(ring, &self.basis)?))
    }
}

/// `Ann(U) = {λ : λ(u) = 0 for all u ∈ U}` inside the dual space, with a
/// functional `λ` stored as the column `λᵀ`. Over a non-commutative ring the
/// annihilator is a left subspace and has no canonical form in this type, so
/// only commutative rings are accepted.
pub fn annihilator<R: DivisionRing>(ring: &R, u: &Subspace<R::Elem>) -> Result<Subspace<R::Elem>> {
    if !ring.is_commutative() {
        return Err(Error::Unsupported(
            "annihilators over a non-commutative ring are left subspaces".into(),
        ));
    }
    let n = u.ambient_dim();
    if u.dim() == 0 {
        return Ok(Subspace::full(ring, n));
    }
    // λ U = 0  ⇔  Uᵀ λᵀ = 0
    let k = u.basis().transpose().kernel(ring);
    Ok(Subspace::span(ring, &k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FiniteField, Gf, Quaternions, RationalQuaternion};

    fn gf(p: u32) -> FiniteField {
        FiniteField::new(p, 1).unwrap()
    }

    fn vecs(vs: &[&[u32]]) -> Vec<Vec<Gf>> {
        vs.iter().map(|v| v.iter().map(|&x| Gf(x)).collect()).collect()
    }

    #[test]
    fn identity_and_zero() {
        let f = gf(2);
        let (s, r) = echelonize(&f, &Mat::identity(&f, 3));
        assert_eq!(r, 3);
        assert_eq!(s, Subspace::full(&f, 3));
        let (z, r0) = echelonize(&f, &Mat::zeros(&f, 3, 3));
        assert_eq!(r0, 0);
        assert_eq!(z, Subspace::zero(3));
    }

    #[test]
    fn dependent_triple_over_gf2_has_rank_two() {
        let f = gf(2);
        let m = Mat::from_columns(3, &vecs(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
        let (s, r) = echelonize(&f, &m);
        assert_eq!(r, 2);
        assert_eq!(s.pivot_rows(), &[0, 1]);
        // canonical basis is (1,0,1), (0,1,1)
        assert_eq!(s.basis_vectors(), vecs(&[&[1, 0, 1], &[0, 1, 1]]));
    }

    #[test]
    fn join_of_two_points_is_their_line() {
        let f = gf(2);
        let p = Subspace::from_vectors(&f, 3, &vecs(&[&[1, 0, 0]]));
        let q = Subspace::from_vectors(&f, 3, &vecs(&[&[0, 1, 1]]));
        let l = p.join(&f, &q).unwrap();
        assert_eq!(l.dim(), 2);
        assert!(l.contains_vector(&f, &vecs(&[&[1, 1, 1]])[0]));
        assert!(l.incident(&f, &p).unwrap());
        assert_eq!(p.meet(&f, &q).unwrap(), Subspace::zero(3));
        assert_eq!(l.meet(&f, &l).unwrap(), l);
        assert_eq!(l.join(&f, &l).unwrap(), l);
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let f = gf(2);
        let a = Subspace::full(&f, 2);
        let b = Subspace::full(&f, 3);
        assert!(a.join(&f, &b).is_err());
        assert!(a.meet(&f, &b).is_err());
    }

    #[test]
    fn annihilator_dimensions_and_involution() {
        let f = gf(3);
        let z = Subspace::zero(4);
        assert_eq!(annihilator(&f, &z).unwrap(), Subspace::full(&f, 4));
        let h = Subspace::from_vectors(&f, 3, &vecs(&[&[1, 0, 2], &[0, 1, 1]]));
        let a = annihilator(&f, &h).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(annihilator(&f, &a).unwrap(), h);
        assert!(annihilator(&Quaternions, &Subspace::zero(2)).is_err());
    }

    #[test]
    fn skew_span_is_a_right_span() {
        let h = Quaternions;
        let q = |s: &str| s.parse::<RationalQuaternion>().unwrap();
        let v = vec![q("1"), q("i")];
        let w: Vec<_> = v.iter().map(|x| h.mul(x, &q("j"))).collect();
        let s = Subspace::from_vectors(&h, 2, &[v.clone()]);
        assert!(s.contains_vector(&h, &w));
        // a left multiple is generally not in the right span
        let left: Vec<_> = v.iter().map(|x| h.mul(&q("j"), x)).collect();
        assert!(!s.contains_vector(&h, &left));
        assert_eq!(s, Subspace::from_vectors(&h, 2, &[w]));
    }
}
