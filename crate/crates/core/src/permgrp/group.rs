use std::collections::HashMap;

use super::chain::StabChain;
use super::perm::Perm;
use crate::budget::Budget;
use crate::error::{Error, Result};

/// A permutation group given by generators, with its stabiliser chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
}

/// A conjugacy class with its members in enumeration order.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub representative: Perm,
    pub element_order: u64,
    pub members: Vec<Perm>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::with_base(degree, gens, &[])
    }

    /// Like [`PermGroup::new`], with the chain's base starting at `prefix`.
    pub fn with_base(degree: usize, gens: Vec<Perm>, prefix: &[u32]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch(format!(
                "generator of degree {} in group of degree {degree}",
                g.degree()
            )));
        }
        if prefix.iter().any(|&b| b as usize >= degree) {
            return Err(Error::InvalidInput("base point out of range".into()));
        }
        let chain = StabChain::from_generators(degree, prefix, &gens);
        Ok(PermGroup { degree, gens, chain })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: StabChain::new(degree, &[]) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .gens
                .iter()
                .all(|g| self.gens.iter().all(|n| self.contains(&n.conjugate_by(g))))
    }

    pub fn orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut orb = vec![x];
        let mut i = 0;
        while i < orb.len() {
            let y = orb[i];
            i += 1;
            for g in &self.gens {
                let z = g.apply(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orb.push(z);
                }
            }
        }
        orb
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut o = self.orbit(x);
            for &y in &o {
                seen[y as usize] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Pointwise stabiliser of `points`.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let chain = StabChain::from_generators(self.degree, points, &self.gens);
        let gens = chain.stabilizer_generators(points.len());
        let sub = StabChain::from_generators(self.degree, &[], &gens);
        PermGroup { degree: self.degree, gens, chain: sub }
    }

    pub fn stabilizer(&self, x: u32) -> PermGroup {
        self.pointwise_stabilizer(&[x])
    }

    /// Subgroup generated by `gens` (which must lie in this group's domain).
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    pub fn elements(&self, budget: &Budget) -> Result<Vec<Perm>> {
        budget.check_enumeration("group elements", self.order())?;
        Ok(self.chain.elements())
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> PermGroup {
        let mut chain = StabChain::new(self.degree, &[]);
        let mut ngens = Vec::new();
        let mut work: Vec<Perm> = gens.to_vec();
        while let Some(x) = work.pop() {
            if chain.add_generator(&x) {
                for g in &self.gens {
                    work.push(x.conjugate_by(g));
                }
                ngens.push(x);
            }
        }
        PermGroup { degree: self.degree, gens: ngens, chain }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Orders of `G, G', G'', ...` until the series stabilises.
    pub fn derived_series_orders(&self) -> Vec<u128> {
        let mut out = vec![self.order()];
        let mut cur = self.clone();
        loop {
            let next = cur.derived_subgroup();
            if next.order() == cur.order() {
                return out;
            }
            out.push(next.order());
            cur = next;
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    pub fn conjugacy_classes(&self, budget: &Budget) -> Result<Vec<ConjugacyClass>> {
        let elements = self.elements(budget)?;
        let index: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        // Identity first, then by first appearance.
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| !elements[i].is_identity());
        let mut classes = Vec::new();
        for start in order {
            if class_of[start] != usize::MAX {
                continue;
            }
            budget.check_time()?;
            let cid = classes.len();
            class_of[start] = cid;
            let mut members = vec![elements[start].clone()];
            let mut i = 0;
            while i < members.len() {
                let y = members[i].clone();
                i += 1;
                for g in &self.gens {
                    let z = y.conjugate_by(g);
                    let zi = index[&z];
                    if class_of[zi] == usize::MAX {
                        class_of[zi] = cid;
                        members.push(z);
                    }
                }
            }
            let rep = elements[start].clone();
            classes.push(ConjugacyClass { element_order: rep.order(), representative: rep, members });
        }
        Ok(classes)
    }

    pub fn is_simple(&self, budget: &Budget) -> Result<bool> {
        let n = self.order();
        if n == 1 {
            return Ok(false);
        }
        if is_prime(n) {
            return Ok(true);
        }
        if !self.is_perfect() {
            return Ok(false);
        }
        for c in self.conjugacy_classes(budget)? {
            if c.representative.is_identity() {
                continue;
            }
            if self.normal_closure(&[c.representative]).order() != n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest `t` such that the group is `t`-transitive (0 if intransitive).
    pub fn transitivity_degree(&self) -> usize {
        if !self.is_transitive() || self.degree == 0 {
            return 0;
        }
        let mut t = 1;
        let mut fixed: Vec<u32> = Vec::new();
        loop {
            let next = (0..self.degree as u32).find(|x| !fixed.contains(x)).unwrap();
            fixed.push(next);
            if fixed.len() == self.degree {
                return t;
            }
            let stab = self.pointwise_stabilizer(&fixed);
            let rest = self.degree - fixed.len();
            let y = (0..self.degree as u32).find(|x| !fixed.contains(x)).unwrap();
            if stab.orbit(y).len() == rest {
                t += 1;
            } else {
                return t;
            }
        }
    }

    /// All normal subgroups: joins of normal closures of class representatives.
    pub fn normal_subgroups(&self, budget: &Budget) -> Result<Vec<PermGroup>> {
        let classes = self.conjugacy_classes(budget)?;
        let mut subs: Vec<PermGroup> = vec![PermGroup::trivial(self.degree)];
        let push = |subs: &mut Vec<PermGroup>, h: PermGroup| -> bool {
            if subs.iter().any(|s| s.same_group(&h)) {
                false
            } else {
                subs.push(h);
                true
            }
        };
        for c in &classes {
            if !c.representative.is_identity() {
                let h = self.normal_closure(&[c.representative.clone()]);
                push(&mut subs, h);
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = subs.clone();
            for (i, a) in snapshot.iter().enumerate() {
                for b in &snapshot[i + 1..] {
                    if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
                        continue;
                    }
                    budget.check_time()?;
                    let mut g = a.gens.clone();
                    g.extend(b.gens.iter().cloned());
                    let j = self.normal_closure(&g);
                    changed |= push(&mut subs, j);
                }
            }
        }
        subs.sort_by_key(|s| s.order());
        Ok(subs)
    }

    /// Normal subgroups of the stabiliser `G_x` acting regularly on the
    /// remaining points.
    pub fn regular_normal_subgroups(&self, x: u32, budget: &Budget) -> Result<Vec<PermGroup>> {
        if x as usize >= self.degree {
            return Err(Error::InvalidInput(format!("point {x} out of range")));
        }
        let rest = self.degree - 1;
        let stab = self.stabilizer(x);
        let Some(y) = (0..self.degree as u32).find(|&y| y != x) else {
            return Ok(vec![stab]);
        };
        Ok(stab
            .normal_subgroups(budget)?
            .into_iter()
            .filter(|n| n.order() == rest as u128 && n.orbit(y).len() == rest)
            .collect())
    }
}

fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Symmetric group on `n` points.
pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        let cyc: Vec<u32> = (0..n as u32).collect();
        gens.push(Perm::from_cycles(n, &[&cyc]).unwrap());
    }
    PermGroup::new(n, gens).unwrap()
}

/// Alternating group on `n` points, generated by 3-cycles `(0 1 k)`.
pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n as u32)
        .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap())
        .collect();
    PermGroup::new(n, gens).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_alternating() {
        assert_eq!(symmetric(6).order(), 720);
        assert_eq!(alternating(6).order(), 360);
        assert_eq!(symmetric(5).transitivity_degree(), 5);
        assert_eq!(alternating(6).transitivity_degree(), 4);
    }

    #[test]
    fn derived_and_perfect() {
        assert_eq!(symmetric(5).derived_subgroup().order(), 60);
        assert!(alternating(5).is_perfect());
        assert!(!symmetric(4).is_perfect());
        assert_eq!(symmetric(4).derived_series_orders(), vec![24, 12, 4, 1]);
    }

    #[test]
    fn classes_of_s5() {
        let cl = symmetric(5).conjugacy_classes(&Budget::default()).unwrap();
        let mut sizes: Vec<usize> = cl.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 10, 15, 20, 20, 24, 30]);
        assert!(cl[0].representative.is_identity());
    }

    #[test]
    fn simplicity() {
        let b = Budget::default();
        assert!(alternating(5).is_simple(&b).unwrap());
        assert!(!alternating(4).is_simple(&b).unwrap());
        assert!(!symmetric(5).is_simple(&b).unwrap());
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let ns = symmetric(4).normal_subgroups(&Budget::default()).unwrap();
        let orders: Vec<u128> = ns.iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn stabilizers() {
        let s = symmetric(6);
        assert_eq!(s.stabilizer(3).order(), 120);
        assert_eq!(s.pointwise_stabilizer(&[0, 5]).order(), 24);
        let st = s.stabilizer(3);
        assert!(st.generators().iter().all(|g| g.apply(3) == 3));
    }
}
