use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::projgeom::{AxiomResult, PointLineGeometry};

/// Singular subspaces of a point-line geometry (pairwise collinear and
/// closed under lines), graded by rank. `levels[r]` holds rank `r`.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    pub levels: Vec<Vec<Vec<u32>>>,
}

impl SubspaceLattice {
    /// Breadth-first: extend each subspace by a point collinear with all of
    /// it and close; keep the result when it is again singular.
    pub fn build(g: &PointLineGeometry, budget: &Budget) -> Result<Self> {
        let n = g.num_points();
        let collinear: Vec<FixedBitSet> = (0..n as u32)
            .map(|p| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(p as usize);
                for &l in g.lines_through(p) {
                    for &q in g.line(l) {
                        s.insert(q as usize);
                    }
                }
                s
            })
            .collect();
        let mut levels: Vec<Vec<Vec<u32>>> = vec![(0..n as u32).map(|p| vec![p]).collect()];
        let mut total = n as u128;
        loop {
            let mut next: HashSet<Vec<u32>> = HashSet::new();
            for x in levels.last().unwrap() {
                budget.check_time()?;
                let mut perp = FixedBitSet::with_capacity(n);
                perp.insert_range(..);
                for &p in x {
                    perp.intersect_with(&collinear[p as usize]);
                }
                for &p in x {
                    perp.set(p as usize, false);
                }
                for q in perp.ones() {
                    let mut pts = x.clone();
                    pts.push(q as u32);
                    let closed = g.subspace_closure(&pts);
                    if next.contains(&closed) {
                        continue;
                    }
                    let singular = closed.iter().all(|&a| {
                        closed.iter().all(|&b| collinear[a as usize].contains(b as usize))
                    });
                    if singular {
                        next.insert(closed);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            total += next.len() as u128;
            budget.check_enumeration("singular subspaces", total)?;
            let mut v: Vec<Vec<u32>> = next.into_iter().collect();
            v.sort();
            levels.push(v);
        }
        Ok(SubspaceLattice { levels })
    }

    /// `m` = largest subspace rank plus one.
    pub fn polar_rank(&self) -> usize {
        self.levels.len()
    }

    pub fn rank_of(&self, x: &[u32]) -> Option<usize> {
        self.levels.iter().position(|lvl| lvl.binary_search(&x.to_vec()).is_ok())
    }

    /// Subspaces of rank `r`; rank `-1` is the empty subspace.
    pub fn of_rank(&self, r: i64) -> Vec<Vec<u32>> {
        if r < 0 {
            vec![Vec::new()]
        } else {
            self.levels.get(r as usize).cloned().unwrap_or_default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PolarKind {
    Thick,
    Weak,
    NotPolar,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolarReport {
    pub results: Vec<AxiomResult>,
    /// Rank from the subspace lattice.
    pub lattice_rank: usize,
    /// Witt index of the source form, when there is one.
    pub witt_index: Option<usize>,
    /// Least number of rank `m-1` subspaces over a rank `m-2` subspace.
    pub min_cover: usize,
    pub kind: PolarKind,
}

impl PolarReport {
    pub fn passed(&self, axiom: &str) -> bool {
        self.results.iter().any(|r| r.axiom == axiom && r.passed)
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Checks PS1-PS5 exhaustively and classifies the geometry as thick or weak.
pub fn check_polar_axioms(g: &PointLineGeometry, budget: &Budget) -> Result<PolarReport> {
    let mut results = Vec::new();
    // PS1
    let ps1 = if g.num_lines() < 2 {
        AxiomResult::fail("PS1", vec![], (0..g.num_lines() as u32).collect())
    } else if let Some(l) = (0..g.num_lines()).find(|&l| g.line(l as u32).len() < 3) {
        AxiomResult::fail("PS1", g.line(l as u32).to_vec(), vec![l as u32])
    } else {
        let mut bad = None;
        'outer: for a in 0..g.num_lines() as u32 {
            for b in a + 1..g.num_lines() as u32 {
                let common: Vec<u32> = g.line(a).iter().copied().filter(|&p| g.incident(p, b)).collect();
                if common.len() > 1 {
                    bad = Some(AxiomResult::fail("PS1", common, vec![a, b]));
                    break 'outer;
                }
            }
        }
        bad.unwrap_or_else(|| AxiomResult::pass("PS1"))
    };
    results.push(ps1);
    // PS2
    let n = g.num_points() as u32;
    let ps2 = match (0..n).find(|&p| (0..n).all(|q| g.collinear(p, q))) {
        Some(p) => AxiomResult::fail("PS2", vec![p], vec![]),
        None => AxiomResult::pass("PS2"),
    };
    results.push(ps2);
    // PS3
    let mut ps3 = AxiomResult::pass("PS3");
    'ps3: for p in 0..n {
        for l in 0..g.num_lines() as u32 {
            let row = g.line(l);
            let c = row.iter().filter(|&&q| g.collinear(p, q)).count();
            if c != 1 && c != row.len() {
                ps3 = AxiomResult::fail("PS3", vec![p], vec![l]);
                break 'ps3;
            }
        }
    }
    results.push(ps3);
    // PS4 and PS5 from the lattice
    let lattice = SubspaceLattice::build(g, budget)?;
    let m = lattice.polar_rank();
    results.push(AxiomResult::pass("PS4"));
    let lower = lattice.of_rank(m as i64 - 2);
    let upper = lattice.of_rank(m as i64 - 1);
    let mut min_cover = usize::MAX;
    let mut ps5 = AxiomResult::pass("PS5");
    for x in &lower {
        let c = upper.iter().filter(|y| is_subset(x, y)).count();
        if c < min_cover {
            min_cover = c;
        }
        if c < 3 && ps5.passed {
            ps5 = AxiomResult::fail("PS5", x.clone(), vec![]);
        }
    }
    if lower.is_empty() {
        min_cover = 0;
    }
    results.push(ps5);
    let first_four = results[..4].iter().all(|r| r.passed);
    let kind = if first_four && results[4].passed {
        PolarKind::Thick
    } else if first_four && min_cover >= 2 {
        PolarKind::Weak
    } else {
        PolarKind::NotPolar
    };
    Ok(PolarReport { results, lattice_rank: m, witt_index: None, min_cover, kind })
}
