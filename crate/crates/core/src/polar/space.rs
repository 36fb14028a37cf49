use std::collections::HashMap;

use serde::Serialize;

use super::lattice::{check_polar_axioms, PolarKind, PolarReport, SubspaceLattice};
use crate::budget::Budget;
use crate::building::{projective_flag_complex, FlagComplex};
use crate::error::{Error, Result};
use crate::forms::{isotropic_grassmannian, witt_index, PseudoQuadraticForm};
use crate::matvec::{enumerate_grassmannian, Subspace};
use crate::projgeom::{subspace_points, PointLineGeometry, ProjectiveGeometry};
use crate::scalar::{FiniteField, Gf};

#[derive(Debug, Clone)]
pub enum PolarSource {
    Form {
        pq: Box<PseudoQuadraticForm>,
        /// `Gr_k^{[f]}` for `k = 1..m`.
        grassmannians: Vec<Vec<Subspace<Gf>>>,
    },
    /// `A_{3,2}(F)`: points are 2-spaces, lines are incident (point, plane) pairs.
    A32 {
        field: FiniteField,
        points: Vec<Subspace<Gf>>,
        lines: Vec<(Subspace<Gf>, Subspace<Gf>)>,
    },
}

#[derive(Debug, Clone)]
pub struct PolarSpace {
    pub source: PolarSource,
    pub geometry: PointLineGeometry,
}

impl PolarSpace {
    pub fn witt_index(&self) -> Option<usize> {
        match &self.source {
            PolarSource::Form { grassmannians, .. } => Some(grassmannians.len()),
            PolarSource::A32 { .. } => None,
        }
    }

    pub fn check_axioms(&self, budget: &Budget) -> Result<PolarReport> {
        let mut r = check_polar_axioms(&self.geometry, budget)?;
        r.witt_index = self.witt_index();
        Ok(r)
    }
}

fn point_index(field: &FiniteField, pts: &[Subspace<Gf>]) -> HashMap<Vec<Gf>, u32> {
    let _ = field;
    pts.iter().enumerate().map(|(i, p)| (p.basis_vectors().remove(0), i as u32)).collect()
}

/// The polar space of totally isotropic subspaces of `[f]`.
pub fn build_polar(pq: &PseudoQuadraticForm, budget: &Budget) -> Result<PolarSpace> {
    let (m, _) = witt_index(pq, budget)?;
    if m == 0 {
        return Err(Error::InvalidInput("Witt index 0: no singular points".into()));
    }
    let mut grassmannians = Vec::new();
    for k in 1..=m {
        grassmannians.push(isotropic_grassmannian(pq, k, budget)?);
    }
    let field = pq.field();
    let idx = point_index(field, &grassmannians[0]);
    let lines = if m >= 2 {
        grassmannians[1]
            .iter()
            .map(|l| {
                let mut row: Vec<u32> = subspace_points(field, l).iter().map(|v| idx[v]).collect();
                row.sort_unstable();
                row
            })
            .collect()
    } else {
        Vec::new()
    };
    let geometry = PointLineGeometry::new(grassmannians[0].len(), lines)?;
    Ok(PolarSpace { source: PolarSource::Form { pq: Box::new(pq.clone()), grassmannians }, geometry })
}

/// `A_{3,2}(F)` on `F^4`.
pub fn build_a32(field: &FiniteField, budget: &Budget) -> Result<PolarSpace> {
    let pts = enumerate_grassmannian(field, 4, 2, budget)?;
    let ones = enumerate_grassmannian(field, 4, 1, budget)?;
    let threes = enumerate_grassmannian(field, 4, 3, budget)?;
    let index: HashMap<&Subspace<Gf>, u32> = pts.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for p in &ones {
        for a in &threes {
            if !a.contains(field, p) {
                continue;
            }
            budget.check_time()?;
            let mut row: Vec<u32> = pts
                .iter()
                .filter(|l| l.contains(field, p) && a.contains(field, l))
                .map(|l| index[l])
                .collect();
            row.sort_unstable();
            rows.push(row);
            lines.push((p.clone(), a.clone()));
        }
    }
    let geometry = PointLineGeometry::new(pts.len(), rows)?;
    Ok(PolarSpace { source: PolarSource::A32 { field: field.clone(), points: pts, lines }, geometry })
}

/// The `D_m` oriflamme complex of a weak polar space.
#[derive(Debug, Clone)]
pub struct Oriflamme {
    /// Vertices as point sets: subspaces of every rank except `m-2`.
    pub vertices: Vec<Vec<u32>>,
    pub ranks: Vec<usize>,
    /// For maximal subspaces, their class (0 or 1); `None` otherwise.
    pub classes: Vec<Option<u8>>,
    pub complex: FlagComplex,
    pub m: usize,
}

fn intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

pub fn oriflamme_complex(p: &PolarSpace, budget: &Budget) -> Result<Oriflamme> {
    let report = p.check_axioms(budget)?;
    if report.kind != PolarKind::Weak {
        return Err(Error::InvalidInput(format!("polar space is {:?}, not weak", report.kind)));
    }
    let lattice = SubspaceLattice::build(&p.geometry, budget)?;
    let m = lattice.polar_rank();
    if m < 2 {
        return Err(Error::InvalidInput("oriflamme needs rank at least 2".into()));
    }
    let mut vertices = Vec::new();
    let mut ranks = Vec::new();
    for (r, lvl) in lattice.levels.iter().enumerate() {
        if r + 2 == m {
            continue;
        }
        for x in lvl {
            vertices.push(x.clone());
            ranks.push(r);
        }
    }
    let rank_of = |x: &[u32]| -> i64 {
        if x.is_empty() {
            -1
        } else {
            p.geometry.subspace_rank(x).expect("intersection of subspaces is closed")
        }
    };
    // Maximals in the same class meet in rank congruent to m-1 mod 2.
    let maximal: Vec<usize> = (0..vertices.len()).filter(|&i| ranks[i] + 1 == m).collect();
    let base = maximal[0];
    let mut classes = vec![None; vertices.len()];
    for &i in &maximal {
        let r = rank_of(&intersection(&vertices[i], &vertices[base]));
        classes[i] = Some(((m as i64 - 1 - r).rem_euclid(2)) as u8);
    }
    let types: Vec<usize> = (0..vertices.len())
        .map(|i| match classes[i] {
            Some(c) => m - 2 + c as usize,
            None => ranks[i],
        })
        .collect();
    let complex = FlagComplex::from_relation(types, budget, |i, j| {
        let (a, b) = (&vertices[i], &vertices[j]);
        if ranks[i] + 1 == m && ranks[j] + 1 == m {
            rank_of(&intersection(a, b)) == m as i64 - 2
        } else if a.len() < b.len() {
            intersection(a, b).len() == a.len()
        } else {
            intersection(a, b).len() == b.len()
        }
    })?;
    Ok(Oriflamme { vertices, ranks, classes, complex, m })
}

#[derive(Debug, Clone, Serialize)]
pub struct OriflammeCertificate {
    pub oriflamme_vertices: usize,
    pub delta_vertices: usize,
    pub oriflamme_chambers: usize,
    pub delta_chambers: usize,
    pub class_sizes: [usize; 2],
    pub vertex_map_bijective: bool,
    pub chambers_map_to_chambers: bool,
    pub isomorphic: bool,
}

/// Explicit isomorphism from the oriflamme complex of `A_{3,2}(F)` to `Delta(F^4)`:
/// a point (2-space) maps to itself, a maximal subspace to the common
/// 1-space of its members or to the 3-space they span.
pub fn a32_oriflamme_certificate(field: &FiniteField, budget: &Budget) -> Result<OriflammeCertificate> {
    let a32 = build_a32(field, budget)?;
    let PolarSource::A32 { points, .. } = &a32.source else { unreachable!() };
    let ori = oriflamme_complex(&a32, budget)?;
    let pg = ProjectiveGeometry::build(3, field, budget)?;
    let (delta, dverts) = projective_flag_complex(&pg, budget)?;
    let dindex: HashMap<&Subspace<Gf>, u32> = dverts.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let mut map = Vec::with_capacity(ori.vertices.len());
    for (i, v) in ori.vertices.iter().enumerate() {
        let image = if ori.ranks[i] == 0 {
            points[v[0] as usize].clone()
        } else {
            let mut meet = points[v[0] as usize].clone();
            let mut join = meet.clone();
            for &x in &v[1..] {
                meet = meet.meet(field, &points[x as usize])?;
                join = join.join(field, &points[x as usize])?;
            }
            if meet.dim() == 1 {
                meet
            } else if join.dim() == 3 {
                join
            } else {
                return Err(Error::Mismatch("maximal subspace is neither a star nor a plane".into()));
            }
        };
        map.push(*dindex.get(&image).ok_or_else(|| Error::Mismatch("image not a vertex".into()))?);
    }
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective = sorted.len() == map.len() && map.len() == delta.num_vertices();
    let dch = delta.chamber_index();
    let mut hit = vec![false; delta.chambers().len()];
    let mut all_map = true;
    for c in ori.complex.chambers() {
        let mut img: Vec<u32> = c.iter().map(|&v| map[v as usize]).collect();
        img.sort_unstable();
        match dch.get(&img) {
            Some(&k) => hit[k as usize] = true,
            None => all_map = false,
        }
    }
    let onto = hit.iter().all(|&h| h);
    let c0 = ori.classes.iter().filter(|c| **c == Some(0)).count();
    let c1 = ori.classes.iter().filter(|c| **c == Some(1)).count();
    let chambers_equal = ori.complex.chambers().len() == delta.chambers().len();
    Ok(OriflammeCertificate {
        oriflamme_vertices: ori.vertices.len(),
        delta_vertices: delta.num_vertices(),
        oriflamme_chambers: ori.complex.chambers().len(),
        delta_chambers: delta.chambers().len(),
        class_sizes: [c0, c1],
        vertex_map_bijective: bijective,
        chambers_map_to_chambers: all_map && onto,
        isomorphic: bijective && all_map && onto && chambers_equal,
    })
}
