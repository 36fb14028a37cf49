//! Brute-force reference computations, deliberately independent of the
//! algorithms they check.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::matvec::{vector_from_index, vector_index, Mat};
use crate::permgrp::Perm;
use crate::scalar::{DivisionRing, FiniteField, Gf};

/// Group order by breadth-first closure of the generators on raw image
/// vectors. Fails once more than `limit` elements appear.
pub fn closure_order(degree: usize, gens: &[Perm], limit: usize) -> Result<usize> {
    let id: Vec<u32> = (0..degree as u32).collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g.images()[i as usize]).collect();
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(Error::BudgetExceeded {
                        what: "closure".into(),
                        needed: seen.len() as u128,
                        limit: limit as u128,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

/// Determinant by the Leibniz expansion over all permutations.
pub fn leibniz_det(field: &FiniteField, m: &Mat<Gf>) -> Gf {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = field.zero();
    loop {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = field.one();
        for (i, &p) in perm.iter().enumerate() {
            term = field.mul(&term, m.get(i, p));
        }
        total = if inversions % 2 == 0 { field.add(&total, &term) } else { field.sub(&total, &term) };
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of `k`-dimensional subspaces of `GF(q)^n` for every `k`, found by
/// growing vector sets one generator at a time and deduplicating the sets.
pub fn subspace_counts_by_span(field: &FiniteField, n: usize) -> Vec<u128> {
    let size = (field.size() as usize).pow(n as u32);
    assert!(size <= 128, "span oracle supports at most 128 vectors");
    let vecs: Vec<Vec<Gf>> = (0..size as u64).map(|i| vector_from_index(field, n, i)).collect();
    let mut level: HashSet<u128> = HashSet::from([1u128]);
    let mut counts = vec![1u128];
    for _ in 0..n {
        let mut next = HashSet::new();
        for &s in &level {
            for (c, v) in vecs.iter().enumerate() {
                if s >> c & 1 == 1 {
                    continue;
                }
                let mut t = 0u128;
                for (x, u) in vecs.iter().enumerate() {
                    if s >> x & 1 == 0 {
                        continue;
                    }
                    for a in field.elements() {
                        let w: Vec<Gf> = u.iter().zip(v).map(|(p, q)| field.add(p, &field.mul(q, &a))).collect();
                        t |= 1u128 << vector_index(field, &w);
                    }
                }
                next.insert(t);
            }
        }
        counts.push(next.len() as u128);
        level = next;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_with_known_values() {
        let f3 = FiniteField::with_order(3).unwrap();
        assert_eq!(subspace_counts_by_span(&f3, 3), vec![1, 13, 13, 1]);
        let m = Mat::from_rows(vec![vec![Gf(1), Gf(2)], vec![Gf(1), Gf(1)]]).unwrap();
        assert_eq!(leibniz_det(&f3, &m), Gf(2));
        let s3 = [Perm::from_cycles(3, &[&[0, 1]]).unwrap(), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()];
        assert_eq!(closure_order(3, &s3, 100).unwrap(), 6);
        assert!(closure_order(3, &s3, 3).is_err());
    }
}
