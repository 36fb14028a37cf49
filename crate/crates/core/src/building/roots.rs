use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matvec::elementary;
use crate::scalar::{DivisionRing, FiniteField};

pub type RatVec = Vec<BigRational>;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// The root system `A_n` inside `E = (1,…,1)^⊥ ⊂ ℚ^{n+1}`.
#[derive(Debug, Clone)]
pub struct RootSystemAn {
    pub n: usize,
}

impl RootSystemAn {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        Ok(RootSystemAn { n })
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `ε_ij = e_i − e_j`.
    pub fn root(&self, i: usize, j: usize) -> RatVec {
        let mut v = vec![BigRational::zero(); self.dim()];
        v[i] += BigRational::one();
        v[j] -= BigRational::one();
        v
    }

    pub fn roots(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        (0..d).flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j))).collect()
    }

    pub fn positive_roots(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
    }

    pub fn fundamental_roots(&self) -> Vec<(usize, usize)> {
        (0..self.n).map(|i| (i, i + 1)).collect()
    }

    /// The root pair `(i, j)` equal to `v`, if any.
    pub fn as_root(&self, v: &[BigRational]) -> Option<(usize, usize)> {
        self.roots().into_iter().find(|&(i, j)| self.root(i, j) == v)
    }

    /// Coefficients of `v` in the fundamental roots: the partial sums of its
    /// coordinates.
    pub fn fundamental_coefficients(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        (0..self.n)
            .map(|k| {
                acc += &v[k];
                acc.clone()
            })
            .collect()
    }

    /// `p_i = e_i − v/(n+1)` with `v = (1,…,1)`, the projection of `e_i` to `E`.
    pub fn point(&self, i: usize) -> RatVec {
        let d = self.dim() as i64;
        (0..self.dim())
            .map(|k| if k == i { rat(1) } else { rat(0) } - BigRational::new(BigInt::one(), BigInt::from(d)))
            .collect()
    }

    /// `r_ij(x) = x − (x·ε_ij) ε_ij`.
    pub fn reflect(&self, i: usize, j: usize, x: &[BigRational]) -> RatVec {
        let r = self.root(i, j);
        let c = dot(x, &r) * rat(2) / dot(&r, &r);
        x.iter().zip(&r).map(|(a, b)| a - &c * b).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemReport {
    pub n: usize,
    pub roots: usize,
    pub positive: usize,
    pub in_hyperplane: bool,
    pub uniform_integral_signs: bool,
    pub points_in_hyperplane: bool,
    pub reflections_permute_points: bool,
}

impl RootSystemReport {
    pub fn all_pass(&self) -> bool {
        self.roots == self.n * (self.n + 1)
            && self.in_hyperplane
            && self.uniform_integral_signs
            && self.points_in_hyperplane
            && self.reflections_permute_points
    }
}

pub fn check_root_system(rs: &RootSystemAn) -> RootSystemReport {
    let ones = vec![rat(1); rs.dim()];
    let roots = rs.roots();
    let in_hyperplane = roots.iter().all(|&(i, j)| dot(&rs.root(i, j), &ones).is_zero());
    let uniform_integral_signs = roots.iter().all(|&(i, j)| {
        let c = rs.fundamental_coefficients(&rs.root(i, j));
        let integral = c.iter().all(|x| x.is_integer());
        let nonneg = c.iter().all(|x| *x >= BigRational::zero());
        let nonpos = c.iter().all(|x| *x <= BigRational::zero());
        integral && (nonneg || nonpos) && (nonneg == (i < j))
    });
    let points: Vec<RatVec> = (0..rs.dim()).map(|i| rs.point(i)).collect();
    let points_in_hyperplane = points.iter().all(|p| dot(p, &ones).is_zero());
    let reflections_permute_points = rs.positive_roots().iter().all(|&(i, j)| {
        (0..rs.dim()).all(|k| {
            let want = if k == i { j } else if k == j { i } else { k };
            rs.reflect(i, j, &points[k]) == points[want]
        })
    });
    RootSystemReport {
        n: rs.n,
        roots: roots.len(),
        positive: rs.positive_roots().len(),
        in_hyperplane,
        uniform_integral_signs,
        points_in_hyperplane,
        reflections_permute_points,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootPairCheck {
    pub alpha: (usize, usize),
    pub beta: (usize, usize),
    /// Positive root `aα + bβ` with `a, b > 0`, if one exists.
    pub combination: Option<(usize, usize)>,
    pub groups_commute: bool,
    /// For three distinct indices: the commutator is non-trivial and equals
    /// the predicted element of the combined root group.
    pub commutator_matches: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootCommutatorReport {
    pub n: usize,
    pub q: u32,
    pub pairs: Vec<RootPairCheck>,
    pub holds: bool,
}

/// Compares, for every ordered pair of positive roots, the geometric
/// condition (some positive combination is a root) with commutation of the
/// root groups `U_ij = {τ_ij(t)}` in `EL_{n+1}(F)`.
pub fn root_commutator_correspondence(n: usize, field: &FiniteField) -> Result<RootCommutatorReport> {
    if n < 2 {
        return Err(Error::InvalidInput("need n >= 2".into()));
    }
    let rs = RootSystemAn::new(n)?;
    let dim = rs.dim();
    let pos = rs.positive_roots();
    let tau = |(i, j): (usize, usize), t| elementary(field, dim, i, j, &t);
    let mut pairs = Vec::new();
    let mut holds = true;
    for &alpha in &pos {
        for &beta in &pos {
            let mut combination = None;
            for a in 1..=3i64 {
                for b in 1..=3i64 {
                    let v: RatVec = rs
                        .root(alpha.0, alpha.1)
                        .iter()
                        .zip(rs.root(beta.0, beta.1))
                        .map(|(x, y)| x * rat(a) + y * rat(b))
                        .collect();
                    if let Some(r) = rs.as_root(&v) {
                        if r.0 < r.1 {
                            combination.get_or_insert(r);
                        }
                    }
                }
            }
            let mut groups_commute = true;
            let mut matches = true;
            for x in field.nonzero_elements() {
                for y in field.nonzero_elements() {
                    let p = tau(alpha, x);
                    let q = tau(beta, y);
                    let c = p
                        .mul(field, &q)?
                        .mul(field, &p.inverse(field)?)?
                        .mul(field, &q.inverse(field)?)?;
                    if !c.is_identity(field) {
                        groups_commute = false;
                    }
                    let predicted = if alpha.1 == beta.0 {
                        Some(tau((alpha.0, beta.1), field.mul(&x, &y)))
                    } else if beta.1 == alpha.0 {
                        Some(tau((beta.0, alpha.1), field.neg(&field.mul(&y, &x))))
                    } else {
                        None
                    };
                    if let Some(pr) = predicted {
                        matches &= !c.is_identity(field) && c == pr;
                    }
                }
            }
            let distinct: std::collections::BTreeSet<usize> = [alpha.0, alpha.1, beta.0, beta.1].into();
            let commutator_matches = (distinct.len() == 3 && combination.is_some()).then_some(matches);
            if groups_commute == combination.is_some() || commutator_matches == Some(false) {
                holds = false;
            }
            pairs.push(RootPairCheck { alpha, beta, combination, groups_commute, commutator_matches });
        }
    }
    Ok(RootCommutatorReport { n, q: field.size(), pairs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_system_facts() {
        for n in 1..=4 {
            let rs = RootSystemAn::new(n).unwrap();
            let r = check_root_system(&rs);
            assert!(r.all_pass(), "{r:?}");
            assert_eq!(r.roots, n * (n + 1));
        }
        let rs = RootSystemAn::new(2).unwrap();
        let sum: RatVec = rs.root(0, 1).iter().zip(rs.root(1, 2)).map(|(a, b)| a + b).collect();
        assert_eq!(sum, rs.root(0, 2));
    }

    #[test]
    fn a2_and_a3_commutators() {
        let f2 = FiniteField::with_order(2).unwrap();
        let r = root_commutator_correspondence(2, &f2).unwrap();
        assert!(r.holds);
        let p = r.pairs.iter().find(|p| p.alpha == (0, 1) && p.beta == (1, 2)).unwrap();
        assert_eq!(p.combination, Some((0, 2)));
        assert!(!p.groups_commute);
        assert_eq!(p.commutator_matches, Some(true));
        let f3 = FiniteField::with_order(3).unwrap();
        let r3 = root_commutator_correspondence(3, &f3).unwrap();
        assert!(r3.holds);
        let d = r3.pairs.iter().find(|p| p.alpha == (0, 1) && p.beta == (2, 3)).unwrap();
        assert!(d.groups_commute && d.combination.is_none());
    }
}
