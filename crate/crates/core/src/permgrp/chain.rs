use super::perm::Perm;

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// `trans[x]` maps the base point to `x`; `trans_inv` holds inverses.
    trans: Vec<Option<Perm>>,
    trans_inv: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, base: u32) -> Self {
        let mut trans = vec![None; degree];
        trans[base as usize] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            trans_inv: trans.clone(),
            trans,
        }
    }

    /// Closes the orbit under the current generators; returns the newly reached points.
    fn grow_orbit(&mut self) -> Vec<u32> {
        let mut fresh = Vec::new();
        let mut i = 0;
        let mut frontier: Vec<u32> = self.orbit.clone();
        while i < frontier.len() {
            let x = frontier[i];
            i += 1;
            for s in &self.gens {
                let y = s.apply(x);
                if self.trans[y as usize].is_none() {
                    let t = s.mul(self.trans[x as usize].as_ref().unwrap());
                    self.trans_inv[y as usize] = Some(t.inverse());
                    self.trans[y as usize] = Some(t);
                    self.orbit.push(y);
                    fresh.push(y);
                    frontier.push(y);
                }
            }
        }
        fresh
    }
}

/// Stabiliser chain built by a deterministic incremental Schreier-Sims.
///
/// Base points come from `prefix` first, then the smallest point moved by
/// the generator that forced a new level.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    prefix: Vec<u32>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, prefix: &[u32]) -> Self {
        StabChain { degree, prefix: prefix.to_vec(), levels: Vec::new() }
    }

    pub fn from_generators(degree: usize, prefix: &[u32], gens: &[Perm]) -> Self {
        let mut c = StabChain::new(degree, prefix);
        for g in gens {
            c.add_generator(g);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `g` from level `from`; returns the residue and the level where it stopped.
    fn sift_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, lvl) in self.levels.iter().enumerate().skip(from) {
            let y = h.apply(lvl.base);
            match &lvl.trans_inv[y as usize] {
                Some(ti) => h = ti.mul(&h),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    /// Sifts `g` through the chain; returns the residue and the level where it stopped.
    pub fn sift(&self, g: &Perm) -> (Perm, usize) {
        self.sift_from(g, 0)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    /// Adds `g` to the group; returns whether the group grew.
    pub fn add_generator(&mut self, g: &Perm) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        if self.sift_from(g, 0).0.is_identity() {
            return false;
        }
        let top = self.insert_strong(g.clone());
        self.complete(top);
        true
    }

    /// Number of leading base points fixed by `g`, adding base points if it fixes all.
    fn insert_strong(&mut self, g: Perm) -> usize {
        while self.levels.iter().all(|l| g.apply(l.base) == l.base) {
            let k = self.levels.len();
            let base = match self.prefix.get(k) {
                Some(&b) => b,
                None => g.smallest_moved_point().expect("nontrivial strong generator"),
            };
            self.levels.push(Level::new(self.degree, base));
        }
        let depth = self
            .levels
            .iter()
            .position(|l| g.apply(l.base) != l.base)
            .expect("moves some base point");
        for l in &mut self.levels[..=depth] {
            l.gens.push(g.clone());
            l.grow_orbit();
        }
        depth
    }

    /// Runs the Schreier test from level `start` upwards until the chain is complete.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let ngens = self.levels[lvl].gens.len();
            for &x in &orbit {
                for s in 0..ngens {
                    let l = &self.levels[lvl];
                    let sg = &l.gens[s];
                    let y = sg.apply(x);
                    let schreier = l.trans_inv[y as usize]
                        .as_ref()
                        .unwrap()
                        .mul(sg)
                        .mul(l.trans[x as usize].as_ref().unwrap());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (res, _) = self.sift_from(&schreier, lvl + 1);
                    if !res.is_identity() {
                        i = self.insert_strong(res) as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    /// All elements, as products of transversal elements, in a fixed order.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for &x in &lvl.orbit {
                let t = lvl.trans[x as usize].as_ref().unwrap();
                for e in &out {
                    next.push(t.mul(e));
                }
            }
            out = next;
        }
        out
    }

    /// Strong generators; they generate the whole group.
    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Generators of the pointwise stabiliser of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Perm> {
        self.levels.get(k).map(|l| l.gens.clone()).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![
            Perm::from_cycles(n, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(n, &[&cyc]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..=8 {
            let c = StabChain::from_generators(n, &[], &sym(n));
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(c.order(), fact);
        }
    }

    #[test]
    fn elements_are_distinct_and_members() {
        let c = StabChain::from_generators(5, &[], &sym(5));
        let els = c.elements();
        assert_eq!(els.len(), 120);
        let set: std::collections::HashSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), 120);
        assert!(els.iter().all(|e| c.contains(e)));
    }

    #[test]
    fn prefix_is_respected() {
        let c = StabChain::from_generators(6, &[5, 4], &sym(6));
        assert_eq!(&c.base()[..2], &[5, 4]);
        assert_eq!(c.order(), 720);
        let stab = StabChain::from_generators(6, &[], &c.stabilizer_generators(2));
        assert_eq!(stab.order(), 24);
    }

    #[test]
    fn non_member_detected() {
        // Alt(4) does not contain a transposition.
        let a4 = vec![
            Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
            Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
        ];
        let c = StabChain::from_generators(4, &[], &a4);
        assert_eq!(c.order(), 12);
        assert!(!c.contains(&Perm::from_cycles(4, &[&[0, 1]]).unwrap()));
    }
}
