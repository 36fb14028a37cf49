use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::Subspace;
use crate::polar::{PolarSpace, SubspaceLattice};
use crate::projgeom::ProjectiveGeometry;
use crate::scalar::Gf;

/// A flag complex: typed vertices, a symmetric incidence relation, and the
/// chambers (maximal sets of pairwise incident vertices) as sorted tuples.
#[derive(Debug, Clone)]
pub struct FlagComplex {
    types: Vec<usize>,
    adjacency: Vec<FixedBitSet>,
    chambers: Vec<Vec<u32>>,
}

impl FlagComplex {
    /// Builds the complex and enumerates its chambers by Bron-Kerbosch with pivoting.
    pub fn new(types: Vec<usize>, adjacency: Vec<FixedBitSet>, budget: &Budget) -> Result<Self> {
        let n = types.len();
        if adjacency.len() != n {
            return Err(Error::DimensionMismatch("adjacency size".into()));
        }
        let mut chambers = Vec::new();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        let x = FixedBitSet::with_capacity(n);
        let mut r = Vec::new();
        bron_kerbosch(&adjacency, &mut r, p, x, &mut chambers, budget)?;
        for c in &mut chambers {
            c.sort_unstable();
        }
        chambers.sort();
        Ok(FlagComplex { types, adjacency, chambers })
    }

    /// `incident(i, j)` given as a predicate on vertex indices.
    pub fn from_relation(
        types: Vec<usize>,
        budget: &Budget,
        incident: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = types.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if incident(i, j) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        Self::new(types, adjacency, budget)
    }

    pub fn num_vertices(&self) -> usize {
        self.types.len()
    }

    pub fn vertex_type(&self, v: u32) -> usize {
        self.types[v as usize]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn incident(&self, a: u32, b: u32) -> bool {
        a == b || self.adjacency[a as usize].contains(b as usize)
    }

    pub fn chambers(&self) -> &[Vec<u32>] {
        &self.chambers
    }

    pub fn chamber_index(&self) -> HashMap<Vec<u32>, u32> {
        self.chambers.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect()
    }

    /// Size of the largest chamber.
    pub fn rank(&self) -> usize {
        self.chambers.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let r = self.rank();
        self.chambers.iter().all(|c| c.len() == r)
    }

    /// Chambers sharing all but one vertex.
    pub fn adjacent_chambers(&self, a: &[u32], b: &[u32]) -> bool {
        a.len() == b.len() && a.iter().filter(|v| b.contains(v)).count() + 1 == a.len()
    }

    /// Whether the chamber graph (codimension-one adjacency) is connected.
    pub fn is_chamber_connected(&self) -> bool {
        let n = self.chambers.len();
        if n == 0 {
            return true;
        }
        // index panels: chamber minus one vertex
        let mut panels: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for (i, c) in self.chambers.iter().enumerate() {
            for k in 0..c.len() {
                let mut p = c.clone();
                p.remove(k);
                panels.entry(p).or_default().push(i);
            }
        }
        let mut nbrs = vec![Vec::new(); n];
        for cs in panels.values() {
            for &a in cs {
                for &b in cs {
                    if a != b {
                        nbrs[a].push(b);
                    }
                }
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(a) = stack.pop() {
            for &b in &nbrs[a] {
                if !seen[b] {
                    seen[b] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count == n
    }

    /// Plain-text edge list `u v` for external viewers.
    pub fn edge_list(&self) -> String {
        let mut s = String::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            for j in adj.ones().filter(|&j| j > i) {
                s.push_str(&format!("{i} {j}\n"));
            }
        }
        s
    }
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut Vec<u32>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<u32>>,
    budget: &Budget,
) -> Result<()> {
    if p.is_clear() && x.is_clear() {
        out.push(r.clone());
        budget.check_enumeration("chambers", out.len() as u128)?;
        return Ok(());
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| adj[u].intersection(&p).count())
        .unwrap();
    let cands: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in cands {
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        r.push(v as u32);
        bron_kerbosch(adj, r, np, nx, out, budget)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}

/// `Delta(V)` of a projective geometry: vertices are the subspaces of all
/// ranks, typed by dimension, incident when one contains the other.
pub fn projective_flag_complex(pg: &ProjectiveGeometry, budget: &Budget) -> Result<(FlagComplex, Vec<Subspace<Gf>>)> {
    let mut verts: Vec<Subspace<Gf>> = Vec::new();
    let mut types = Vec::new();
    for k in 1..=pg.rank() {
        for s in pg.grassmannian(k) {
            verts.push(s.clone());
            types.push(k);
        }
    }
    budget.check_enumeration("flag complex vertices", verts.len() as u128)?;
    let field = pg.field();
    let fc = FlagComplex::from_relation(types.clone(), budget, |i, j| {
        types[i] != types[j] && {
            let (a, b) = if types[i] < types[j] { (&verts[i], &verts[j]) } else { (&verts[j], &verts[i]) };
            b.contains(field, a)
        }
    })?;
    Ok((fc, verts))
}

/// Flag complex of a polar space: singular subspaces typed by rank, incident
/// when one contains the other.
pub fn polar_flag_complex(p: &PolarSpace, budget: &Budget) -> Result<(FlagComplex, Vec<Vec<u32>>)> {
    let lattice = SubspaceLattice::build(&p.geometry, budget)?;
    let mut verts = Vec::new();
    let mut types = Vec::new();
    for (r, lvl) in lattice.levels.iter().enumerate() {
        for x in lvl {
            verts.push(x.clone());
            types.push(r);
        }
    }
    let contains = |big: &[u32], small: &[u32]| small.iter().all(|x| big.binary_search(x).is_ok());
    let fc = FlagComplex::from_relation(types.clone(), budget, |i, j| {
        types[i] != types[j] && {
            let (a, b) = if types[i] < types[j] { (&verts[i], &verts[j]) } else { (&verts[j], &verts[i]) };
            contains(b, a)
        }
    })?;
    Ok((fc, verts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FiniteField;

    #[test]
    fn flag_counts() {
        let b = Budget::default();
        let f2 = FiniteField::new(2, 1).unwrap();
        let pg = ProjectiveGeometry::build(2, &f2, &b).unwrap();
        let (fc, _) = projective_flag_complex(&pg, &b).unwrap();
        assert_eq!(fc.chambers().len(), 21);
        assert!(fc.is_pure() && fc.is_chamber_connected());
        let pg = ProjectiveGeometry::build(3, &f2, &b).unwrap();
        let (fc, _) = projective_flag_complex(&pg, &b).unwrap();
        assert_eq!(fc.chambers().len(), 315);
        assert_eq!(fc.rank(), 3);
        let pg = ProjectiveGeometry::build(1, &f2, &b).unwrap();
        let (fc, _) = projective_flag_complex(&pg, &b).unwrap();
        assert_eq!(fc.chambers().len(), 3);
        assert!(fc.chambers().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn generalized_quadrangle_flags() {
        // W(2): 15 points, 15 lines, 3 lines per point.
        let b = Budget::default();
        let pq = crate::classical::classical_form("sp", 4, 2).unwrap();
        let ps = crate::polar::build_polar(&pq, &b).unwrap();
        let (fc, _) = polar_flag_complex(&ps, &b).unwrap();
        assert_eq!(fc.chambers().len(), 45);
        assert!(fc.is_pure() && fc.is_chamber_connected());
    }
}
