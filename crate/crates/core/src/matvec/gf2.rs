//! Bit-packed linear algebra over GF(2).
//!
//! A vector of `GF(2)^n` (n ≤ 64) is a `u64` with coordinate `i` in bit `i`.
//! Matrices are stored as column words, which makes `M·v` an XOR of the
//! columns selected by `v` and elimination word-parallel.

use super::Mat;
use crate::scalar::Gf;

/// Square or rectangular GF(2) matrix with `cols[j]` the bit-packed column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    pub rows: usize,
    pub cols: Vec<u64>,
}

impl BitMatrix {
    pub fn from_mat(m: &Mat<Gf>) -> Self {
        assert!(m.rows() <= 64);
        let cols = (0..m.cols())
            .map(|j| (0..m.rows()).fold(0u64, |w, i| w | ((m.get(i, j).0 as u64 & 1) << i)))
            .collect();
        BitMatrix { rows: m.rows(), cols }
    }

    pub fn to_mat(&self) -> Mat<Gf> {
        Mat::from_fn(self.rows, self.cols.len(), |i, j| Gf(((self.cols[j] >> i) & 1) as u32))
    }

    #[inline]
    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut bits = v;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            out ^= self.cols[j];
            bits &= bits - 1;
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank(&self.cols)
    }
}

/// Rank of the span of the given words.
pub fn rank(words: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::with_capacity(64);
    for &w in words {
        let mut x = w;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// `|GL_n(2)| = ∏ (2^n − 2^i)`.
pub fn gl_order(n: usize) -> u128 {
    (0..n).map(|i| (1u128 << n) - (1u128 << i)).product()
}

/// Calls `visit` with the column words of every invertible `n×n` matrix over
/// GF(2), choosing each column outside the span of the previous ones. Stops
/// early when `visit` returns `false`. Returns the number of matrices visited.
pub fn for_each_invertible(n: usize, mut visit: impl FnMut(&[u64]) -> bool) -> u64 {
    assert!((1..=16).contains(&n), "GL_n(2) enumeration supports 1 ≤ n ≤ 16");
    let size = 1usize << n;
    let mut in_span = vec![false; size];
    in_span[0] = true;
    let mut cols = Vec::with_capacity(n);
    let mut count = 0u64;
    rec(n, &mut in_span, &mut cols, &mut visit, &mut count);
    count
}

fn rec(
    n: usize,
    in_span: &mut Vec<bool>,
    cols: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]) -> bool,
    count: &mut u64,
) -> bool {
    if cols.len() == n {
        *count += 1;
        return visit(cols);
    }
    let size = in_span.len();
    for c in 1..size as u64 {
        if in_span[c as usize] {
            continue;
        }
        let members: Vec<usize> = (0..size).filter(|&x| in_span[x]).collect();
        for &x in &members {
            in_span[x ^ c as usize] = true;
        }
        cols.push(c);
        let go_on = rec(n, in_span, cols, visit, count);
        cols.pop();
        for &x in &members {
            in_span[x ^ c as usize] = false;
        }
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FiniteField;

    #[test]
    fn gl_counts_match_formula() {
        for n in 1..=4 {
            assert_eq!(for_each_invertible(n, |_| true) as u128, gl_order(n));
        }
        assert_eq!(gl_order(5), 9_999_360);
    }

    #[test]
    fn bit_rank_matches_generic_rank() {
        let f = FiniteField::new(2, 1).unwrap();
        let mut seen = 0;
        // all 3x3 GF(2) matrices
        for code in 0u32..512 {
            let m = Mat::from_fn(3, 3, |i, j| Gf((code >> (3 * i + j)) & 1));
            let b = BitMatrix::from_mat(&m);
            assert_eq!(b.rank(), m.rank(&f));
            assert_eq!(b.to_mat(), m);
            if b.rank() == 3 {
                seen += 1;
            }
        }
        assert_eq!(seen as u128, gl_order(3));
    }

    #[test]
    fn apply_matches_generic_product() {
        let f = FiniteField::new(2, 1).unwrap();
        let m = Mat::from_fn(4, 4, |i, j| Gf(((i * 3 + j * 5) % 3 == 1) as u32));
        let b = BitMatrix::from_mat(&m);
        for v in 0u64..16 {
            let gv: Vec<Gf> = (0..4).map(|i| Gf(((v >> i) & 1) as u32)).collect();
            let w = m.apply(&f, &gv);
            let bw = (0..4).fold(0u64, |acc, i| acc | ((w[i].0 as u64) << i));
            assert_eq!(b.apply(v), bw);
        }
    }
}
