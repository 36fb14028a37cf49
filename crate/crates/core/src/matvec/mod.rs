//! Matrices and subspaces over a (possibly skew) scalar ring.
//!
//! Conventions: vectors are columns, matrices act from the left, scalars act
//! on the right. Column spans are therefore right subspaces, and every
//! elimination step below multiplies by pivot inverses on the side that keeps
//! the relevant span unchanged.

pub mod gf2;
mod grassmannian;
mod subspace;

use std::fmt::Debug;

pub use grassmannian::{
    all_vectors, enumerate_grassmannian, gaussian_binomial, normalize_point, vector_from_index,
    vector_index, Grassmannian,
};
pub use subspace::{annihilator, echelonize, Subspace};

use crate::error::{Error, Result};
use crate::scalar::DivisionRing;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_columns(n: usize, columns: &[Vec<E>]) -> Self {
        Mat::from_fn(n, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn zeros<R: DivisionRing<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: DivisionRing<Elem = E>>(ring: &R, n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<E> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&E) -> E) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Mat<E>) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hcat of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Columns `start..end`.
    pub fn col_range(&self, start: usize, end: usize) -> Self {
        Mat::from_fn(self.rows, end - start, |i, j| self.get(i, start + j).clone())
    }

    pub fn mul<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Result<Self> {
        self.zip_with(other, |a, b| ring.add(a, b))
    }

    pub fn sub<R: DivisionRing<Elem = E>>(&self, ring: &R, other: &Mat<E>) -> Result<Self> {
        self.zip_with(other, |a, b| ring.sub(a, b))
    }

    fn zip_with(&self, other: &Mat<E>, f: impl Fn(&E, &E) -> E) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("shape mismatch".into()));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// `M v` for a column vector `v`.
    pub fn apply<R: DivisionRing<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !ring.is_zero(a) && !ring.is_zero(x) {
                        acc = ring.add(&acc, &ring.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    /// Left scalar multiple `a·M`.
    pub fn scale_left<R: DivisionRing<Elem = E>>(&self, ring: &R, a: &E) -> Self {
        self.map(|x| ring.mul(a, x))
    }

    /// Right scalar multiple `M·a`.
    pub fn scale_right<R: DivisionRing<Elem = E>>(&self, ring: &R, a: &E) -> Self {
        self.map(|x| ring.mul(x, a))
    }

    pub fn is_identity<R: DivisionRing<Elem = E>>(&self, ring: &R) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        ring.is_one(x)
                    } else {
                        ring.is_zero(x)
                    }
                })
            })
    }

    /// Rank via row reduction.
    pub fn rank<R: DivisionRing<Elem = E>>(&self, ring: &R) -> usize {
        row_reduce(ring, self.clone()).1.len()
    }

    /// Inverse via Gauss-Jordan with row operations.
    pub fn inverse<R: DivisionRing<Elem = E>>(&self, ring: &R) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hcat(&Mat::identity(ring, n))?;
        let (red, pivots) = row_reduce(ring, aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(red_block(&red, n))
    }

    /// Basis (as matrix columns) of the right solution space `{x : M x = 0}`.
    pub fn kernel<R: DivisionRing<Elem = E>>(&self, ring: &R) -> Mat<E> {
        let (red, pivots) = row_reduce(ring, self.clone());
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![ring.zero(); n];
            v[f] = ring.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = ring.neg(red.get(i, f));
            }
            basis.push(v);
        }
        Mat::from_columns(n, &basis)
    }

    /// Plain-text form: one row per line, entries separated by spaces.
    pub fn to_text<R: DivisionRing<Elem = E>>(&self, ring: &R) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| ring.format_elem(self.get(i, j))).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text<R: DivisionRing<Elem = E>>(ring: &R, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(|t| ring.parse_elem(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(rows)
    }
}

fn red_block<E: Clone>(red: &Mat<E>, n: usize) -> Mat<E> {
    Mat::from_fn(n, n, |i, j| red.get(i, n + j).clone())
}

/// Reduced row echelon form using only left multiplications, so the right
/// solution space of `M x = 0` is preserved. Returns the reduced matrix and
/// the pivot column of each nonzero row.
pub(crate) fn row_reduce<R: DivisionRing>(ring: &R, mut m: Mat<R::Elem>) -> (Mat<R::Elem>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !ring.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = ring.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in 0..m.cols {
            let v = ring.mul(&inv, m.get(r, j));
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if ring.is_zero(&factor) {
                continue;
            }
            for j in 0..m.cols {
                let v = ring.sub(m.get(i, j), &ring.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Elementary matrix `id + a·E_ij` (`i ≠ j`).
pub fn elementary<R: DivisionRing>(ring: &R, n: usize, i: usize, j: usize, a: &R::Elem) -> Mat<R::Elem> {
    let mut m = Mat::identity(ring, n);
    m.set(i, j, a.clone());
    m
}

/// `diag(d_0, ..., d_{n-1})`.
pub fn diagonal<R: DivisionRing>(ring: &R, d: &[R::Elem]) -> Mat<R::Elem> {
    let n = d.len();
    Mat::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { ring.zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FiniteField, Gf, Quaternions, RationalQuaternion};

    fn gf(p: u32) -> FiniteField {
        FiniteField::new(p, 1).unwrap()
    }

    fn m(rows: &[&[u32]]) -> Mat<Gf> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Gf(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(5);
        let a = m(&[&[1, 2, 0], &[0, 1, 4], &[3, 0, 2]]);
        let ai = a.inverse(&f).unwrap();
        assert!(a.mul(&f, &ai).unwrap().is_identity(&f));
        assert!(ai.mul(&f, &a).unwrap().is_identity(&f));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(&f), Err(Error::Singular));
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = gf(3);
        let a = m(&[&[1, 2, 0, 1], &[2, 1, 0, 2]]);
        let k = a.kernel(&f);
        assert_eq!(k.cols(), 3);
        let z = a.mul(&f, &k).unwrap();
        assert!(z.entries().iter().all(|x| x.0 == 0));
    }

    #[test]
    fn text_round_trip() {
        let f = gf(7);
        let a = m(&[&[1, 6, 0], &[3, 2, 5]]);
        assert_eq!(Mat::parse_text(&f, &a.to_text(&f)).unwrap(), a);
        assert!(Mat::parse_text(&f, "1 2\n3").is_err());
        assert!(Mat::parse_text(&f, "9").is_err());
    }

    #[test]
    fn skew_inverse_and_right_action() {
        let h = Quaternions;
        let q = |s: &str| s.parse::<RationalQuaternion>().unwrap();
        let a = Mat::from_rows(vec![vec![q("i"), q("j")], vec![q("1"), q("k")]]).unwrap();
        let ai = a.inverse(&h).unwrap();
        assert!(a.mul(&h, &ai).unwrap().is_identity(&h));
        // M(v·c) = (Mv)·c
        let v = vec![q("1+i"), q("2-j")];
        let c = q("1/2+k");
        let lhs = a.apply(&h, &v.iter().map(|x| h.mul(x, &c)).collect::<Vec<_>>());
        let rhs: Vec<_> = a.apply(&h, &v).iter().map(|x| h.mul(x, &c)).collect();
        assert_eq!(lhs, rhs);
    }
}
