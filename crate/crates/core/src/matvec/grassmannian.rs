use super::{Mat, Subspace};
use crate::budget::Budget;
use crate::error::Result;
use crate::scalar::{DivisionRing, FiniteField, Gf};

/// `[n choose k]_q`, the number of `k`-subspaces of `GF(q)^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    // Pascal rule [m, j] = [m-1, j-1] + q^j [m-1, j], saturating at u128::MAX.
    let q = q as u128;
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = row[j - 1].saturating_add(q.saturating_pow(j as u32).saturating_mul(row[j]));
        }
    }
    row[k]
}

/// The vector of `GF(q)^n` with the given index; coordinate 0 is the most
/// significant digit.
pub fn vector_from_index(field: &FiniteField, n: usize, mut idx: u64) -> Vec<Gf> {
    let q = field.size() as u64;
    let mut v = vec![Gf(0); n];
    for i in (0..n).rev() {
        v[i] = Gf((idx % q) as u32);
        idx /= q;
    }
    v
}

pub fn vector_index(field: &FiniteField, v: &[Gf]) -> u64 {
    let q = field.size() as u64;
    v.iter().fold(0, |acc, x| acc * q + x.0 as u64)
}

/// All `q^n` vectors in index order.
pub fn all_vectors(field: &FiniteField, n: usize) -> impl Iterator<Item = Vec<Gf>> + '_ {
    let total = (field.size() as u64).pow(n as u32);
    (0..total).map(move |i| vector_from_index(field, n, i))
}

/// Scales a nonzero vector so its first nonzero coordinate is 1 (right
/// multiplication), giving the canonical representative of its point.
pub fn normalize_point<R: DivisionRing>(ring: &R, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let lead = v.iter().find(|x| !ring.is_zero(x))?;
    let inv = ring.inv(lead)?;
    Some(v.iter().map(|x| ring.mul(x, &inv)).collect())
}

/// `Gr_k(GF(q)^n)`, enumerated by pivot pattern: for each increasing pivot
/// row set, every assignment of the free entries below the pivots and off the
/// pivot rows gives exactly one canonical basis.
#[derive(Debug, Clone)]
pub struct Grassmannian {
    field: FiniteField,
    n: usize,
    k: usize,
}

impl Grassmannian {
    pub fn new(field: &FiniteField, n: usize, k: usize) -> Self {
        Grassmannian {
            field: field.clone(),
            n,
            k,
        }
    }

    pub fn count(&self) -> u128 {
        gaussian_binomial(self.n, self.k, self.field.size())
    }

    pub fn iter(&self) -> impl Iterator<Item = Subspace<Gf>> + '_ {
        pivot_sets(self.n, self.k)
            .into_iter()
            .flat_map(move |piv| self.pattern_iter(piv))
    }

    fn pattern_iter(&self, pivots: Vec<usize>) -> impl Iterator<Item = Subspace<Gf>> + '_ {
        let n = self.n;
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(t, &r)| {
                let pv = pivots.clone();
                ((r + 1)..n).filter(move |i| !pv.contains(i)).map(move |i| (i, t))
            })
            .collect();
        let q = self.field.size() as u64;
        let total = q.pow(free.len() as u32);
        (0..total).map(move |mut code| {
            let mut m = Mat::from_fn(n, pivots.len(), |i, t| Gf((i == pivots[t]) as u32));
            for &(i, t) in free.iter().rev() {
                m.set(i, t, Gf((code % q) as u32));
                code /= q;
            }
            Subspace::from_canonical(n, m, pivots.clone())
        })
    }
}

fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every `k`-subspace of `GF(q)^n` exactly once, in a fixed order.
pub fn enumerate_grassmannian(
    field: &FiniteField,
    n: usize,
    k: usize,
    budget: &Budget,
) -> Result<Vec<Subspace<Gf>>> {
    if k > n {
        return crate::error::invalid(format!("k = {k} exceeds n = {n}"));
    }
    let g = Grassmannian::new(field, n, k);
    budget.check_grassmannian(&format!("Gr_{k}(GF({})^{n})", field.size()), g.count())?;
    Ok(g.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use std::collections::HashSet;

    #[test]
    fn fano_points_and_lines() {
        let f = FiniteField::new(2, 1).unwrap();
        let b = Budget::default();
        assert_eq!(enumerate_grassmannian(&f, 3, 1, &b).unwrap().len(), 7);
        assert_eq!(enumerate_grassmannian(&f, 4, 2, &b).unwrap().len(), 35);
        let z = enumerate_grassmannian(&f, 5, 0, &b).unwrap();
        assert_eq!(z, vec![Subspace::zero(5)]);
    }

    #[test]
    fn enumerated_forms_are_canonical_and_distinct() {
        let f = FiniteField::new(3, 1).unwrap();
        let all = enumerate_grassmannian(&f, 4, 2, &Budget::default()).unwrap();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            assert_eq!(&Subspace::span(&f, s.basis()), s);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = FiniteField::new(2, 1).unwrap();
        let b = Budget::parse("max_grassmannian=10").unwrap();
        assert!(matches!(
            enumerate_grassmannian(&f, 4, 2, &b),
            Err(Error::BudgetExceeded { needed: 35, .. })
        ));
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(3, 4, 5), 0);
    }
}
