use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::apartment::{apartment, apartment_chambers_in, standard_flag, standard_frame};
use super::complex::projective_flag_complex;
use super::weyl::{coxeter_check, CoxeterCertificate};
use crate::budget::Budget;
use crate::classical::{expected_order, linear_generators, LinearKind};
use crate::error::{Error, Result};
use crate::matvec::{diagonal, elementary, Mat, Subspace};
use crate::permgrp::{Perm, PermGroup};
use crate::projgeom::build_pg;
use crate::scalar::{DivisionRing, FiniteField, Gf};

/// `EL_{n+1}(F)` acting on the chambers of `Δ(F^{n+1})`, with the matrix
/// carriers of `B`, `N`, `T`, `U` and `S` and their permutation images.
#[derive(Debug, Clone)]
pub struct TitsSystemData {
    pub n: usize,
    pub field: FiniteField,
    pub chambers: usize,
    /// Index of the standard chamber `⟨e_0⟩ ⊂ ⟨e_0,e_1⟩ ⊂ ...`.
    pub standard_chamber: u32,
    /// Chamber indices of the standard apartment.
    pub apartment: Vec<u32>,
    pub g: PermGroup,
    pub b: PermGroup,
    pub n_group: PermGroup,
    pub t: PermGroup,
    pub u: PermGroup,
    pub s: Vec<Perm>,
    pub t_matrices: Vec<Mat<Gf>>,
    pub u_matrices: Vec<Mat<Gf>>,
    pub s_matrices: Vec<Mat<Gf>>,
}

struct ChamberAction {
    field: FiniteField,
    flags: Vec<Vec<u32>>,
    verts: Vec<Subspace<Gf>>,
    vindex: HashMap<Subspace<Gf>, u32>,
    cindex: HashMap<Vec<u32>, u32>,
}

impl ChamberAction {
    fn perm(&self, m: &Mat<Gf>) -> Result<Perm> {
        let images = self
            .flags
            .iter()
            .map(|c| {
                let mut img = c
                    .iter()
                    .map(|&v| {
                        let t = self.verts[v as usize].image(&self.field, m)?;
                        self.vindex.get(&t).copied().ok_or(Error::Singular)
                    })
                    .collect::<Result<Vec<u32>>>()?;
                img.sort_unstable();
                self.cindex.get(&img).copied().ok_or_else(|| Error::Mismatch("image is not a chamber".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(images)
    }
}

/// The monomial matrix acting as the transposition of `e_i, e_{i+1}` up to sign.
pub fn simple_reflection(field: &FiniteField, dim: usize, i: usize) -> Mat<Gf> {
    let mut m = Mat::identity(field, dim);
    m.set(i, i, field.zero());
    m.set(i + 1, i + 1, field.zero());
    m.set(i, i + 1, field.one());
    m.set(i + 1, i, field.neg(&field.one()));
    m
}

pub fn extract_tits_system(n: usize, field: &FiniteField, budget: &Budget) -> Result<TitsSystemData> {
    if n == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    let dim = n + 1;
    budget.check_group_order("EL", expected_order(LinearKind::El, dim, field.size()))?;
    let pg = build_pg(n, field, budget)?;
    let (delta, verts) = projective_flag_complex(&pg, budget)?;
    let vindex = verts.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
    let act = ChamberAction {
        field: field.clone(),
        flags: delta.chambers().to_vec(),
        verts: verts.clone(),
        vindex,
        cindex: delta.chamber_index(),
    };
    let degree = delta.chambers().len();
    let perms = |ms: &[Mat<Gf>]| ms.iter().map(|m| act.perm(m)).collect::<Result<Vec<Perm>>>();

    let g = PermGroup::new(degree, perms(&linear_generators(LinearKind::El, dim, field))?)?;
    let omega = field.primitive_element();
    let omega_inv = field.inv(&omega).ok_or(Error::Singular)?;
    let t_matrices: Vec<Mat<Gf>> = if field.size() > 2 {
        (0..n)
            .map(|i| {
                let mut d = vec![field.one(); dim];
                d[i] = omega;
                d[i + 1] = omega_inv;
                diagonal(field, &d)
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut u_matrices = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for a in field.additive_basis() {
                u_matrices.push(elementary(field, dim, i, j, &a));
            }
        }
    }
    let s_matrices: Vec<Mat<Gf>> = (0..n).map(|i| simple_reflection(field, dim, i)).collect();
    let t_perms = perms(&t_matrices)?;
    let u_perms = perms(&u_matrices)?;
    let s = perms(&s_matrices)?;
    let t = PermGroup::new(degree, t_perms.clone())?;
    let u = PermGroup::new(degree, u_perms.clone())?;
    let b = PermGroup::new(degree, [t_perms.clone(), u_perms].concat())?;
    let n_group = PermGroup::new(degree, [t_perms, s.clone()].concat())?;

    let std = standard_flag(field, dim);
    let mut c0: Vec<u32> = std.iter().map(|x| act.vindex[x]).collect();
    c0.sort_unstable();
    let standard_chamber = act.cindex[&c0];
    let ap = apartment(field, &standard_frame(field, dim), budget)?;
    let mut apartment_ids = apartment_chambers_in(&ap, &delta, &verts)?;
    apartment_ids.sort_unstable();
    Ok(TitsSystemData {
        n,
        field: field.clone(),
        chambers: degree,
        standard_chamber,
        apartment: apartment_ids,
        g,
        b,
        n_group,
        t,
        u,
        s,
        t_matrices,
        u_matrices,
        s_matrices,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TitsReport {
    pub n: usize,
    pub q: u32,
    pub group_order: u128,
    pub borel_order: u128,
    pub chambers: usize,
    pub weyl_order: u128,
    pub b_is_chamber_stabilizer: bool,
    pub t_is_b_cap_n: bool,
    pub ts1: bool,
    pub ts2: bool,
    pub ts3: bool,
    /// `sBs ≠ B` for every `s ∈ S`.
    pub ts4: bool,
    pub ts5: bool,
    pub bruhat_cells: usize,
    /// `|BwB| / |B|`, i.e. chambers per cell, in the order of `W`'s elements.
    pub cell_sizes: Vec<usize>,
    pub bruhat_disjoint_cover: bool,
    pub coxeter: CoxeterCertificate,
    pub t_order: u128,
    pub u_order: u128,
    /// `B = T ⋉ U`: `U ⊴ B`, `T ∩ U = 1`, `|T||U| = |B|`.
    pub split: bool,
}

impl TitsReport {
    pub fn all_pass(&self) -> bool {
        self.b_is_chamber_stabilizer
            && self.t_is_b_cap_n
            && self.ts1
            && self.ts2
            && self.ts3
            && self.ts4
            && self.ts5
            && self.bruhat_cells as u128 == self.weyl_order
            && self.bruhat_disjoint_cover
            && self.coxeter.holds
            && self.split
    }
}

fn restrict(p: &Perm, set: &[u32]) -> Option<Perm> {
    let images = set
        .iter()
        .map(|&x| set.binary_search(&p.apply(x)).ok().map(|i| i as u32))
        .collect::<Option<Vec<u32>>>()?;
    Perm::from_images(images).ok()
}

pub fn verify_tits(ts: &TitsSystemData, budget: &Budget) -> Result<TitsReport> {
    let deg = ts.chambers;
    let c0 = ts.standard_chamber;
    let b_is_chamber_stabilizer = ts.g.stabilizer(c0).same_group(&ts.b);

    let n_elems = ts.n_group.elements(budget)?;
    let t_elems = ts.t.elements(budget)?;
    let b_cap_n: Vec<&Perm> = n_elems.iter().filter(|x| ts.b.contains(x)).collect();
    let t_is_b_cap_n = b_cap_n.len() as u128 == ts.t.order() && b_cap_n.iter().all(|x| ts.t.contains(x));

    let mut all_gens = ts.b.generators().to_vec();
    all_gens.extend(ts.n_group.generators().iter().cloned());
    let ts1 = PermGroup::new(deg, all_gens)?.same_group(&ts.g);
    let ts2 = ts.t.is_normal_in(&ts.n_group);

    // W = N/T as the action of N on the standard apartment.
    let ap = &ts.apartment;
    let w_of = |x: &Perm| restrict(x, ap).ok_or_else(|| Error::Mismatch("N does not stabilise the apartment".into()));
    let s_w = ts.s.iter().map(w_of).collect::<Result<Vec<Perm>>>()?;
    let n_w = ts.n_group.generators().iter().map(w_of).collect::<Result<Vec<Perm>>>()?;
    let w_from_s = PermGroup::new(ap.len(), s_w.clone())?;
    let w_from_n = PermGroup::new(ap.len(), n_w)?;
    let t_trivial = ts.t.generators().iter().map(w_of).collect::<Result<Vec<Perm>>>()?.iter().all(Perm::is_identity);
    let weyl_order = w_from_n.order();
    let ts3 = w_from_s.same_group(&w_from_n)
        && s_w.iter().all(|s| !s.is_identity() && s.mul(s).is_identity())
        && t_trivial
        && weyl_order * ts.t.order() == ts.n_group.order();
    let coxeter = coxeter_check(&s_w)?;

    let ts4 = ts.s.iter().all(|s| {
        let conj: Vec<Perm> = ts.b.generators().iter().map(|x| x.conjugate_by(s)).collect();
        !PermGroup::new(deg, conj).map(|c| c.same_group(&ts.b)).unwrap_or(true)
    });

    // Double cosets BwB/B are B-orbits on chambers.
    let orbits = ts.b.orbits();
    let mut orbit_of = vec![0usize; deg];
    for (k, o) in orbits.iter().enumerate() {
        for &c in o {
            orbit_of[c as usize] = k;
        }
    }
    let mut reps: Vec<(Perm, Perm)> = Vec::new();
    let mut seen_w: BTreeSet<Vec<u32>> = BTreeSet::new();
    for x in &n_elems {
        budget.check_time()?;
        let w = w_of(x)?;
        if seen_w.insert(w.images().to_vec()) {
            reps.push((w, x.clone()));
        }
    }
    let cell_of: Vec<usize> = reps.iter().map(|(_, x)| orbit_of[x.apply(c0) as usize]).collect();
    let distinct: BTreeSet<usize> = cell_of.iter().copied().collect();
    let bruhat_disjoint_cover = distinct.len() == reps.len() && distinct.len() == orbits.len();
    let cell_sizes: Vec<usize> = cell_of.iter().map(|&k| orbits[k].len()).collect();

    let mut ts5 = true;
    for s in &ts.s {
        for (_, nw) in &reps {
            let ow = orbit_of[nw.apply(c0) as usize];
            let osw = orbit_of[s.mul(nw).apply(c0) as usize];
            let hit: BTreeSet<usize> = orbits[ow].iter().map(|&c| orbit_of[s.apply(c) as usize]).collect();
            if hit.iter().any(|&k| k != ow && k != osw) {
                ts5 = false;
            }
        }
    }

    let split = ts.u.is_normal_in(&ts.b)
        && ts.u.is_subgroup_of(&ts.b)
        && ts.t.order() * ts.u.order() == ts.b.order()
        && t_elems.iter().filter(|x| ts.u.contains(x)).count() == 1;

    Ok(TitsReport {
        n: ts.n,
        q: ts.field.size(),
        group_order: ts.g.order(),
        borel_order: ts.b.order(),
        chambers: deg,
        weyl_order,
        b_is_chamber_stabilizer,
        t_is_b_cap_n,
        ts1,
        ts2,
        ts3,
        ts4,
        ts5,
        bruhat_cells: orbits.len(),
        cell_sizes,
        bruhat_disjoint_cover,
        coxeter,
        t_order: ts.t.order(),
        u_order: ts.u.order(),
        split,
    })
}
