use std::collections::{HashMap, HashSet};

use super::complex::FlagComplex;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::{Mat, Subspace};
use crate::scalar::{DivisionRing, FiniteField, Gf};

/// The thin subcomplex spanned by a frame `p_0, ..., p_n`: one vertex
/// `V_J = ⊕_{j∈J} p_j` for each `∅ ≠ J ⊊ {0..n}`.
#[derive(Debug, Clone)]
pub struct Apartment {
    pub frame: Vec<Vec<Gf>>,
    /// Index sets `J`, sorted, in the same order as `vertices`.
    pub subsets: Vec<Vec<usize>>,
    pub vertices: Vec<Subspace<Gf>>,
    pub complex: FlagComplex,
}

impl Apartment {
    /// Chambers as ascending chains of subspaces.
    pub fn chamber_flags(&self) -> Vec<Vec<Subspace<Gf>>> {
        self.complex
            .chambers()
            .iter()
            .map(|c| {
                let mut flag: Vec<&Subspace<Gf>> = c.iter().map(|&v| &self.vertices[v as usize]).collect();
                flag.sort_by_key(|s| s.dim());
                flag.into_iter().cloned().collect()
            })
            .collect()
    }

    pub fn contains_flag(&self, flag: &[Subspace<Gf>]) -> bool {
        flag.iter().all(|s| self.vertices.contains(s))
    }

    /// Order in which a chamber adds the frame points.
    fn chamber_word(&self, c: &[u32]) -> Vec<usize> {
        let mut sets: Vec<&Vec<usize>> = c.iter().map(|&v| &self.subsets[v as usize]).collect();
        sets.sort_by_key(|s| s.len());
        let mut word = Vec::new();
        let mut prev: &[usize] = &[];
        for s in sets {
            word.extend(s.iter().copied().filter(|x| !prev.contains(x)));
            prev = s;
        }
        let n = self.frame.len();
        let rest: Vec<usize> = (0..n).filter(|x| !word.contains(x)).collect();
        word.extend(rest);
        word
    }

    /// Whether the chamber graph equals the Cayley graph of `Sym(n+1)` for the
    /// adjacent transpositions, under chamber ↦ order of adding frame points.
    pub fn is_coxeter_complex(&self) -> bool {
        let chambers = self.complex.chambers();
        let words: Vec<Vec<usize>> = chambers.iter().map(|c| self.chamber_word(c)).collect();
        let distinct: HashSet<&Vec<usize>> = words.iter().collect();
        let n = self.frame.len();
        if distinct.len() != words.len() || (words.len() as u128) != (1..=n as u128).product::<u128>() {
            return false;
        }
        for (a, ca) in chambers.iter().enumerate() {
            for (b, cb) in chambers.iter().enumerate().skip(a + 1) {
                let adjacent = self.complex.adjacent_chambers(ca, cb);
                let diff: Vec<usize> = (0..n).filter(|&i| words[a][i] != words[b][i]).collect();
                let cayley = diff.len() == 2
                    && diff[1] == diff[0] + 1
                    && words[a][diff[0]] == words[b][diff[1]]
                    && words[a][diff[1]] == words[b][diff[0]];
                if adjacent != cayley {
                    return false;
                }
            }
        }
        true
    }
}

pub fn apartment(field: &FiniteField, frame: &[Vec<Gf>], budget: &Budget) -> Result<Apartment> {
    let k = frame.len();
    if k < 2 {
        return Err(Error::InvalidInput("a frame needs at least two points".into()));
    }
    if frame.iter().any(|v| v.len() != k) {
        return Err(Error::DimensionMismatch("frame vectors must live in a space of dimension |frame|".into()));
    }
    if Mat::from_columns(k, frame).rank(field) != k {
        return Err(Error::InvalidInput("degenerate frame: points do not form a basis".into()));
    }
    budget.check_enumeration("apartment vertices", (1u128 << k) - 2)?;
    let mut subsets = Vec::new();
    let mut vertices = Vec::new();
    for mask in 1..(1usize << k) - 1 {
        let j: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let vs: Vec<Vec<Gf>> = j.iter().map(|&i| frame[i].clone()).collect();
        vertices.push(Subspace::from_vectors(field, k, &vs));
        subsets.push(j);
    }
    let types: Vec<usize> = subsets.iter().map(Vec::len).collect();
    let complex = FlagComplex::from_relation(types, budget, |a, b| {
        let (x, y) = if subsets[a].len() < subsets[b].len() { (a, b) } else { (b, a) };
        subsets[x].len() != subsets[y].len() && subsets[x].iter().all(|i| subsets[y].contains(i))
    })?;
    Ok(Apartment { frame: frame.to_vec(), subsets, vertices, complex })
}

/// The standard frame `e_0, ..., e_n`.
pub fn standard_frame(field: &FiniteField, dim: usize) -> Vec<Vec<Gf>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

/// The standard chamber `⟨e_0⟩ ⊂ ⟨e_0, e_1⟩ ⊂ ...`.
pub fn standard_flag(field: &FiniteField, dim: usize) -> Vec<Subspace<Gf>> {
    let frame = standard_frame(field, dim);
    (1..dim).map(|k| Subspace::from_vectors(field, dim, &frame[..k])).collect()
}

/// A basis adapted to two complete flags of `F^{n+1}`: for each step `k` of
/// the first flag, take the least `j` where `V_k ∩ W_j` grows, and a vector of
/// `V_k ∩ W_j` outside `V_{k-1} + V_k ∩ W_{j-1}`.
pub fn common_frame(field: &FiniteField, c1: &[Subspace<Gf>], c2: &[Subspace<Gf>]) -> Result<Vec<Vec<Gf>>> {
    let dim = c1.first().map(|s| s.ambient_dim()).unwrap_or(0);
    if c1.len() + 1 != dim || c2.len() + 1 != dim {
        return Err(Error::InvalidInput("chambers must be complete flags".into()));
    }
    let chain = |c: &[Subspace<Gf>]| -> Vec<Subspace<Gf>> {
        let mut v = vec![Subspace::zero(dim)];
        v.extend(c.iter().cloned());
        v.push(Subspace::full(field, dim));
        v
    };
    let v = chain(c1);
    let w = chain(c2);
    for f in [&v, &w] {
        if (0..dim).any(|i| f[i].dim() != i || !f[i + 1].contains(field, &f[i])) {
            return Err(Error::InvalidInput("not a flag".into()));
        }
    }
    let mut frame = Vec::with_capacity(dim);
    for k in 1..=dim {
        let j = (1..=dim)
            .find(|&j| v[k].meet(field, &w[j]).unwrap().dim() > v[k - 1].meet(field, &w[j]).unwrap().dim())
            .ok_or_else(|| Error::Mismatch("flag intersection never grows".into()))?;
        let top = v[k].meet(field, &w[j])?;
        let avoid = v[k - 1].join(field, &v[k].meet(field, &w[j - 1])?)?;
        let vec = top
            .basis_vectors()
            .into_iter()
            .find(|x| !avoid.contains_vector(field, x))
            .ok_or_else(|| Error::Mismatch("no adapted vector".into()))?;
        frame.push(vec);
    }
    Ok(frame)
}

/// Number of apartments (frames up to order and scalars) containing `flag`.
pub fn count_apartments_containing(field: &FiniteField, flag: &[Subspace<Gf>], budget: &Budget) -> Result<usize> {
    let dim = flag.len() + 1;
    let points: Vec<Vec<Gf>> = crate::matvec::Grassmannian::new(field, dim, 1)
        .iter()
        .map(|s| s.basis_vectors().remove(0))
        .collect();
    let np = points.len() as u128;
    let combos: u128 = (0..dim as u128).fold(1, |acc, i| acc * (np - i) / (i + 1));
    budget.check_enumeration("frames", combos)?;
    let mut count = 0;
    let mut pick = Vec::with_capacity(dim);
    frames_rec(field, &points, 0, dim, &mut pick, &mut |frame: &[Vec<Gf>]| -> Result<()> {
        let ap = apartment(field, frame, budget)?;
        if ap.contains_flag(flag) {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

fn frames_rec(
    field: &FiniteField,
    points: &[Vec<Gf>],
    start: usize,
    dim: usize,
    pick: &mut Vec<Vec<Gf>>,
    visit: &mut impl FnMut(&[Vec<Gf>]) -> Result<()>,
) -> Result<()> {
    if pick.len() == dim {
        return visit(pick);
    }
    for i in start..points.len() {
        pick.push(points[i].clone());
        if Mat::from_columns(dim, pick).rank(field) == pick.len() {
            frames_rec(field, points, i + 1, dim, pick, visit)?;
        }
        pick.pop();
    }
    Ok(())
}

/// Maps each apartment chamber to the chamber index of a flag complex whose
/// vertices are `verts`.
pub fn apartment_chambers_in(ap: &Apartment, delta: &FlagComplex, verts: &[Subspace<Gf>]) -> Result<Vec<u32>> {
    let vindex: HashMap<&Subspace<Gf>, u32> = verts.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let cindex = delta.chamber_index();
    ap.complex
        .chambers()
        .iter()
        .map(|c| {
            let mut img = c
                .iter()
                .map(|&v| vindex.get(&ap.vertices[v as usize]).copied())
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::Mismatch("apartment vertex outside the building".into()))?;
            img.sort_unstable();
            cindex.get(&img).copied().ok_or_else(|| Error::Mismatch("apartment chamber is not a chamber".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::projective_flag_complex;
    use crate::projgeom::build_pg;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    #[test]
    fn sizes() {
        let b = Budget::default();
        for (dim, v, c) in [(3, 6, 6), (4, 14, 24)] {
            let f = gf(2);
            let ap = apartment(&f, &standard_frame(&f, dim), &b).unwrap();
            assert_eq!(ap.vertices.len(), v);
            assert_eq!(ap.complex.chambers().len(), c);
            assert!(ap.is_coxeter_complex());
        }
    }

    #[test]
    fn degenerate_frame_is_rejected() {
        let f = gf(2);
        let frame = vec![vec![Gf(1), Gf(0), Gf(0)], vec![Gf(0), Gf(1), Gf(0)], vec![Gf(1), Gf(1), Gf(0)]];
        assert!(apartment(&f, &frame, &Budget::default()).is_err());
    }

    #[test]
    fn apartment_lies_in_the_building() {
        let b = Budget::default();
        let f = gf(3);
        let pg = build_pg(2, &f, &b).unwrap();
        let (delta, verts) = projective_flag_complex(&pg, &b).unwrap();
        let frame = vec![vec![Gf(1), Gf(2), Gf(0)], vec![Gf(0), Gf(1), Gf(1)], vec![Gf(1), Gf(0), Gf(2)]];
        let ap = apartment(&f, &frame, &b).unwrap();
        let ids = apartment_chambers_in(&ap, &delta, &verts).unwrap();
        assert_eq!(ids.len(), 6);
    }

    #[test]
    fn eight_apartments_through_standard_chamber() {
        let f = gf(2);
        let c = standard_flag(&f, 3);
        assert_eq!(count_apartments_containing(&f, &c, &Budget::default()).unwrap(), 8);
    }

    #[test]
    fn random_chamber_pairs_share_an_apartment() {
        let b = Budget::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (n, q) in [(2, 3), (3, 2)] {
            let f = gf(q);
            let pg = build_pg(n, &f, &b).unwrap();
            let (delta, verts) = projective_flag_complex(&pg, &b).unwrap();
            let flags: Vec<Vec<Subspace<Gf>>> = delta
                .chambers()
                .iter()
                .map(|c| {
                    let mut fl: Vec<Subspace<Gf>> = c.iter().map(|&v| verts[v as usize].clone()).collect();
                    fl.sort_by_key(|s| s.dim());
                    fl
                })
                .collect();
            for _ in 0..40 {
                let a = &flags[rng.gen_range(0..flags.len())];
                let c = &flags[rng.gen_range(0..flags.len())];
                let frame = common_frame(&f, a, c).unwrap();
                let ap = apartment(&f, &frame, &b).unwrap();
                assert!(ap.contains_flag(a) && ap.contains_flag(c));
            }
        }
    }
}
