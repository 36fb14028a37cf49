use std::collections::BTreeMap;

use super::chain::StabChain;
use super::group::{ConjugacyClass, PermGroup};
use super::perm::Perm;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Isomorphism invariants used to reject quickly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub order: u128,
    /// `(element order, class size) -> number of classes`.
    pub class_signature: BTreeMap<(u64, usize), usize>,
    pub derived_series: Vec<u128>,
}

impl Invariants {
    pub fn of(g: &PermGroup, budget: &Budget) -> Result<Self> {
        let classes = g.conjugacy_classes(budget)?;
        Ok(Self::from_classes(g, &classes))
    }

    fn from_classes(g: &PermGroup, classes: &[ConjugacyClass]) -> Self {
        let mut sig = BTreeMap::new();
        for c in classes {
            *sig.entry((c.element_order, c.size())).or_insert(0) += 1;
        }
        Invariants { order: g.order(), class_signature: sig, derived_series: g.derived_series_orders() }
    }
}

/// An explicit isomorphism, stored as the graph of the map inside `G x H`.
#[derive(Debug, Clone)]
pub struct Isomorphism {
    pub source_generators: Vec<Perm>,
    pub target_images: Vec<Perm>,
    source_degree: usize,
    target_degree: usize,
    graph: StabChain,
}

impl Isomorphism {
    /// Image of `x` under the isomorphism.
    pub fn apply(&self, x: &Perm) -> Result<Perm> {
        if x.degree() != self.source_degree {
            return Err(Error::DimensionMismatch("element not in source domain".into()));
        }
        let lifted = x.direct_sum(&Perm::identity(self.target_degree));
        let (res, _) = self.graph.sift(&lifted);
        if !res.restrict(0, self.source_degree).is_identity() {
            return Err(Error::InvalidInput("element is not in the source group".into()));
        }
        Ok(res.restrict(self.source_degree, self.target_degree).inverse())
    }

    /// Checks the homomorphism property and order preservation on all words
    /// of length at most 3 in the generators and their inverses.
    pub fn verify_words(&self) -> Result<bool> {
        let mut letters: Vec<(Perm, Perm)> = Vec::new();
        for (g, h) in self.source_generators.iter().zip(&self.target_images) {
            letters.push((g.clone(), h.clone()));
            letters.push((g.inverse(), h.inverse()));
        }
        let mut words: Vec<(Perm, Perm)> = letters.clone();
        let mut frontier = letters.clone();
        for _ in 1..3 {
            let mut next = Vec::new();
            for (wg, wh) in &frontier {
                for (lg, lh) in &letters {
                    next.push((wg.mul(lg), wh.mul(lh)));
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        for (wg, wh) in &words {
            if self.apply(wg)? != *wh || wg.order() != wh.order() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone)]
pub enum IsoResult {
    Isomorphic(Isomorphism),
    /// Names the first invariant that separates the groups.
    NotIsomorphic(String),
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

fn small_words(a: &Perm, b: &Perm) -> [u64; 5] {
    [
        a.mul(b).order(),
        a.mul(&b.inverse()).order(),
        a.commutator(b).order(),
        a.mul(a).mul(b).order(),
        a.mul(b).mul(b).order(),
    ]
}

/// Decides whether two small permutation groups are isomorphic.
pub fn iso_small(g: &PermGroup, h: &PermGroup, budget: &Budget) -> Result<IsoResult> {
    budget.check_group_order("isomorphism test", g.order().max(h.order()))?;
    if g.order() != h.order() {
        return Ok(IsoResult::NotIsomorphic(format!("order {} vs {}", g.order(), h.order())));
    }
    let cg = g.conjugacy_classes(budget)?;
    let ch = h.conjugacy_classes(budget)?;
    let ig = Invariants::from_classes(g, &cg);
    let ih = Invariants::from_classes(h, &ch);
    if ig.class_signature != ih.class_signature {
        return Ok(IsoResult::NotIsomorphic("class signature".into()));
    }
    if ig.derived_series != ih.derived_series {
        return Ok(IsoResult::NotIsomorphic("derived series".into()));
    }
    let n = g.order();
    let (dg, dh) = (g.degree(), h.degree());
    if n == 1 {
        let graph = StabChain::new(dg + dh, &[]);
        return Ok(IsoResult::Isomorphic(Isomorphism {
            source_generators: vec![],
            target_images: vec![],
            source_degree: dg,
            target_degree: dh,
            graph,
        }));
    }

    let mut by_size: Vec<usize> = (0..cg.len()).collect();
    by_size.sort_by_key(|&i| (cg[i].size(), std::cmp::Reverse(cg[i].element_order)));
    let mut pair = None;
    'search: for &i in &by_size {
        if cg[i].representative.is_identity() {
            continue;
        }
        let g1 = &cg[i].representative;
        for &j in &by_size {
            for g2 in &cg[j].members {
                budget.check_time()?;
                let c = StabChain::from_generators(dg, &[], &[g1.clone(), g2.clone()]);
                if c.order() == n {
                    pair = Some((i, j, g1.clone(), g2.clone()));
                    break 'search;
                }
            }
        }
    }
    let (ci, cj, g1, g2) = pair.ok_or_else(|| {
        Error::Unsupported("source group is not generated by two elements".into())
    })?;
    let sig = |c: &ConjugacyClass| (c.element_order, c.size());
    let target_words = small_words(&g1, &g2);
    let prefix: Vec<u32> = (0..dg as u32).collect();
    for c1 in ch.iter().filter(|c| sig(c) == sig(&cg[ci])) {
        let h1 = &c1.representative;
        for c2 in ch.iter().filter(|c| sig(c) == sig(&cg[cj])) {
            for h2 in &c2.members {
                if small_words(h1, h2) != target_words {
                    continue;
                }
                budget.check_time()?;
                let graph = StabChain::from_generators(
                    dg + dh,
                    &prefix,
                    &[g1.direct_sum(h1), g2.direct_sum(h2)],
                );
                if graph.order() != n {
                    continue;
                }
                if StabChain::from_generators(dh, &[], &[h1.clone(), h2.clone()]).order() != n {
                    continue;
                }
                return Ok(IsoResult::Isomorphic(Isomorphism {
                    source_generators: vec![g1.clone(), g2.clone()],
                    target_images: vec![h1.clone(), h2.clone()],
                    source_degree: dg,
                    target_degree: dh,
                    graph,
                }));
            }
        }
    }
    Ok(IsoResult::NotIsomorphic("no images for a generating pair".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::group::{alternating, symmetric};

    #[test]
    fn s3_acting_differently() {
        // Sym(3) on 3 points vs its regular action on 6 points.
        let s3 = symmetric(3);
        let els = s3.elements(&Budget::default()).unwrap();
        let reg = |g: &Perm| {
            let imgs = els.iter().map(|e| els.iter().position(|f| *f == g.mul(e)).unwrap() as u32);
            Perm::from_images(imgs.collect()).unwrap()
        };
        let r = PermGroup::new(6, s3.generators().iter().map(reg).collect()).unwrap();
        let res = iso_small(&s3, &r, &Budget::default()).unwrap();
        let IsoResult::Isomorphic(iso) = res else { panic!("expected isomorphic") };
        assert!(iso.verify_words().unwrap());
        let mut images = std::collections::HashSet::new();
        for a in &els {
            for b in &els {
                let ab = iso.apply(&a.mul(b)).unwrap();
                assert_eq!(ab, iso.apply(a).unwrap().mul(&iso.apply(b).unwrap()));
            }
            let img = iso.apply(a).unwrap();
            assert!(r.contains(&img));
            images.insert(img);
        }
        assert_eq!(images.len(), 6);
    }

    #[test]
    fn distinguishes_orders_and_signatures() {
        let b = Budget::default();
        assert!(!iso_small(&symmetric(4), &alternating(5), &b).unwrap().is_isomorphic());
        // Sym(4) vs Alt(4) x C2 share order 24.
        let a4c2 = PermGroup::new(
            6,
            vec![
                Perm::from_cycles(6, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(6, &[&[1, 2, 3]]).unwrap(),
                Perm::from_cycles(6, &[&[4, 5]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(!iso_small(&symmetric(4), &a4c2, &b).unwrap().is_isomorphic());
    }
}
