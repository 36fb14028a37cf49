use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::linear::LinearKind;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::{diagonal, elementary, Mat};
use crate::permgrp::{Perm, PermGroup};
use crate::projgeom::PointLineGeometry;
use crate::scalar::{DivisionRing, FiniteField, Gf};

/// `(G, U, X)` with `G` acting on `X`, a distinguished point `x` and the
/// candidate root group `U` fixing `x`.
#[derive(Debug, Clone)]
pub struct MoufangSetData {
    pub group: PermGroup,
    pub point: u32,
    pub root_group: PermGroup,
}

/// The projective line `X = D ∪ {∞}`: index `i < q` is the point `(i, 1)`
/// and index `q` is `∞ = (1, 0)`.
fn line_index(field: &FiniteField, v: &[Gf]) -> u32 {
    if field.is_zero(&v[1]) {
        field.size()
    } else {
        field.div_right(&v[0], &v[1]).0
    }
}

fn line_perm(field: &FiniteField, m: &Mat<Gf>) -> Result<Perm> {
    let q = field.size();
    let images = (0..=q)
        .map(|i| {
            let v = if i == q { vec![field.one(), field.zero()] } else { vec![Gf(i), field.one()] };
            line_index(field, &m.apply(field, &v))
        })
        .collect();
    Perm::from_images(images)
}

/// `PEL_2` (level `El`) or `PGL_2` (level `Gl`) on the projective line, with
/// `U_∞` the translations `x ↦ x + t`.
pub fn moufang_set_projective_line(field: &FiniteField, level: LinearKind) -> Result<MoufangSetData> {
    let with_diag = match level {
        LinearKind::El | LinearKind::Sl | LinearKind::Pel | LinearKind::Psl => false,
        LinearKind::Gl | LinearKind::Pgl => true,
    };
    let mut gens = Vec::new();
    let mut root = Vec::new();
    for a in field.additive_basis() {
        let up = line_perm(field, &elementary(field, 2, 0, 1, &a))?;
        root.push(up.clone());
        gens.push(up);
        gens.push(line_perm(field, &elementary(field, 2, 1, 0, &a))?);
    }
    if with_diag && field.size() > 2 {
        gens.push(line_perm(field, &diagonal(field, &[field.primitive_element(), field.one()]))?);
    }
    let degree = field.size() as usize + 1;
    Ok(MoufangSetData {
        group: PermGroup::new(degree, gens)?,
        point: field.size(),
        root_group: PermGroup::new(degree, root)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MoufangReport {
    pub ms1: bool,
    pub ms2: bool,
    pub ms3: bool,
    pub group_order: u128,
    pub stabilizer_order: u128,
    pub root_group_order: u128,
    pub regular_normal_subgroups: usize,
    /// `U` is the only regular normal subgroup of `G_x`.
    pub unique: bool,
    /// `G_x = U`, i.e. `G` is sharply 2-transitive.
    pub sharply_two_transitive: bool,
}

impl MoufangReport {
    pub fn all_pass(&self) -> bool {
        self.ms1 && self.ms2 && self.ms3
    }
}

pub fn check_moufang(ms: &MoufangSetData, budget: &Budget) -> Result<MoufangReport> {
    let g = &ms.group;
    let x = ms.point;
    let n = g.degree();
    let u = &ms.root_group;
    let stab = g.stabilizer(x);
    let ms1 = g.transitivity_degree() >= 2;
    let fixes = u.generators().iter().all(|p| p.apply(x) == x);
    let y = (0..n as u32).find(|&y| y != x);
    let ms2 = fixes && u.order() == (n - 1) as u128 && y.is_some_and(|y| u.orbit(y).len() == n - 1);
    let ms3 = u.is_subgroup_of(&stab) && u.is_normal_in(&stab);
    let regular = g.regular_normal_subgroups(x, budget)?;
    let unique = regular.len() == 1 && regular[0].same_group(u);
    Ok(MoufangReport {
        ms1,
        ms2,
        ms3,
        group_order: g.order(),
        stabilizer_order: stab.order(),
        root_group_order: u.order(),
        regular_normal_subgroups: regular.len(),
        unique,
        sharply_two_transitive: ms1 && stab.order() == u.order(),
    })
}

/// Recovers the lines of a projective space from a 2-transitive action on its
/// points. For the pair `(0, 1)` the orbit `X` of `G_{0,1}` whose pointwise
/// stabiliser is trivial is the set of points off the line; the line is the
/// complement, and the other lines are its images.
pub fn reconstruct_lines(g: &PermGroup, budget: &Budget) -> Result<PointLineGeometry> {
    let n = g.degree();
    if n < 3 || g.transitivity_degree() < 2 {
        return Err(Error::Mismatch("action is not 2-transitive".into()));
    }
    let h = g.pointwise_stabilizer(&[0, 1]);
    let witness: Vec<Vec<u32>> = h
        .orbits()
        .into_iter()
        .filter(|o| g.pointwise_stabilizer(o).is_trivial())
        .collect();
    let off = match witness.as_slice() {
        [o] => o,
        [] => return Err(Error::Mismatch("no orbit of the two-point stabiliser has trivial pointwise stabiliser".into())),
        _ => return Err(Error::Mismatch("several orbits qualify; the line is not determined".into())),
    };
    let line: Vec<u32> = (0..n as u32).filter(|p| !off.contains(p)).collect();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut queue = VecDeque::from([line.clone()]);
    seen.insert(line);
    while let Some(l) = queue.pop_front() {
        budget.check_time()?;
        for s in g.generators() {
            let mut img: Vec<u32> = l.iter().map(|&p| s.apply(p)).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                budget.check_enumeration("reconstructed lines", seen.len() as u128)?;
                queue.push_back(img);
            }
        }
    }
    PointLineGeometry::new(n, seen.into_iter().collect())
}
