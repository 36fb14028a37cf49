use std::collections::HashMap;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matvec::{
    diagonal, elementary, normalize_point, vector_from_index, vector_index, Grassmannian, Mat, Subspace,
};
use crate::permgrp::{Perm, PermGroup};
use crate::scalar::{DivisionRing, FiniteField, Gf};

/// Which linear group, and whether it acts on vectors or on points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LinearKind {
    El,
    Sl,
    Gl,
    Pel,
    Psl,
    Pgl,
}

impl LinearKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "el" => LinearKind::El,
            "sl" => LinearKind::Sl,
            "gl" => LinearKind::Gl,
            "pel" => LinearKind::Pel,
            "psl" => LinearKind::Psl,
            "pgl" => LinearKind::Pgl,
            other => return Err(Error::Parse(format!("unknown linear group '{other}'"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            LinearKind::El => "EL",
            LinearKind::Sl => "SL",
            LinearKind::Gl => "GL",
            LinearKind::Pel => "PEL",
            LinearKind::Psl => "PSL",
            LinearKind::Pgl => "PGL",
        }
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, LinearKind::Pel | LinearKind::Psl | LinearKind::Pgl)
    }

    fn has_diagonal(&self) -> bool {
        matches!(self, LinearKind::Gl | LinearKind::Pgl)
    }
}

/// `|GL_n(q)|`.
pub fn gl_order(n: usize, q: u32) -> u128 {
    let q = q as u128;
    (0..n as u32).fold(1u128, |acc, i| acc.saturating_mul(q.saturating_pow(n as u32) - q.pow(i)))
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The order the construction must reach.
pub fn expected_order(kind: LinearKind, n: usize, q: u32) -> u128 {
    let gl = gl_order(n, q);
    let qm = q as u128 - 1;
    match kind {
        LinearKind::Gl => gl,
        LinearKind::El | LinearKind::Sl | LinearKind::Pgl => gl / qm,
        LinearKind::Pel | LinearKind::Psl => gl / qm / gcd(n as u128, qm),
    }
}

/// How matrices are turned into permutations: on nonzero vectors (indexed by
/// `vector_index − 1`) or on the canonical point enumeration.
#[derive(Debug, Clone)]
pub struct MatrixAction {
    field: FiniteField,
    n: usize,
    projective: bool,
    points: Vec<Vec<Gf>>,
    point_index: HashMap<Vec<Gf>, u32>,
}

impl MatrixAction {
    pub fn on_vectors(field: &FiniteField, n: usize) -> Self {
        MatrixAction { field: field.clone(), n, projective: false, points: Vec::new(), point_index: HashMap::new() }
    }

    pub fn on_points(field: &FiniteField, n: usize) -> Self {
        let points: Vec<Vec<Gf>> = Grassmannian::new(field, n, 1)
            .iter()
            .map(|s| s.basis_vectors().remove(0))
            .collect();
        let point_index = points.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        MatrixAction { field: field.clone(), n, projective: true, points, point_index }
    }

    pub fn degree(&self) -> usize {
        if self.projective {
            self.points.len()
        } else {
            (self.field.size() as usize).pow(self.n as u32) - 1
        }
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// The vector (or normalized point representative) with index `i`.
    pub fn element(&self, i: u32) -> Vec<Gf> {
        if self.projective {
            self.points[i as usize].clone()
        } else {
            vector_from_index(&self.field, self.n, i as u64 + 1)
        }
    }

    pub fn index_of(&self, v: &[Gf]) -> Option<u32> {
        if self.projective {
            let p = normalize_point(&self.field, v)?;
            self.point_index.get(&p).copied()
        } else {
            let i = vector_index(&self.field, v);
            (i > 0).then(|| (i - 1) as u32)
        }
    }

    pub fn perm(&self, m: &Mat<Gf>) -> Result<Perm> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::DimensionMismatch("matrix size does not match the action".into()));
        }
        let images = (0..self.degree() as u32)
            .map(|i| self.index_of(&m.apply(&self.field, &self.element(i))).ok_or(Error::Singular))
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(images)
    }
}

/// A matrix group together with its faithful (or projective) permutation image.
#[derive(Debug, Clone)]
pub struct LinearGroup {
    pub kind: LinearKind,
    pub n: usize,
    pub field: FiniteField,
    pub matrices: Vec<Mat<Gf>>,
    pub action: MatrixAction,
    pub group: PermGroup,
}

impl LinearGroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }
}

/// `τ_ij(a)` for `a` in an additive basis of the field, plus `diag(ω,1,…,1)`
/// for GL and PGL.
pub fn linear_generators(kind: LinearKind, n: usize, field: &FiniteField) -> Vec<Mat<Gf>> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for a in field.additive_basis() {
                    gens.push(elementary(field, n, i, j, &a));
                }
            }
        }
    }
    if kind.has_diagonal() && field.size() > 2 {
        let mut d = vec![field.one(); n];
        d[0] = field.primitive_element();
        gens.push(diagonal(field, &d));
    }
    gens
}

pub fn build_linear(kind: LinearKind, n: usize, field: &FiniteField, budget: &Budget) -> Result<LinearGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let q = field.size();
    budget.check_group_order(kind.name(), expected_order(kind, n, q))?;
    let domain = if kind.is_projective() {
        ((q as u128).saturating_pow(n as u32) - 1) / (q as u128 - 1)
    } else {
        (q as u128).saturating_pow(n as u32) - 1
    };
    budget.check_enumeration("permutation domain", domain)?;
    let action = if kind.is_projective() {
        MatrixAction::on_points(field, n)
    } else {
        MatrixAction::on_vectors(field, n)
    };
    let matrices = linear_generators(kind, n, field);
    let perms = matrices.iter().map(|m| action.perm(m)).collect::<Result<Vec<_>>>()?;
    let group = PermGroup::new(action.degree(), perms)?;
    Ok(LinearGroup { kind, n, field: field.clone(), matrices, action, group })
}

pub fn build_el(n: usize, field: &FiniteField, budget: &Budget) -> Result<LinearGroup> {
    build_linear(LinearKind::El, n, field, budget)
}

pub fn build_gl(n: usize, field: &FiniteField, budget: &Budget) -> Result<LinearGroup> {
    build_linear(LinearKind::Gl, n, field, budget)
}

pub fn build_pel(n: usize, field: &FiniteField, budget: &Budget) -> Result<LinearGroup> {
    build_linear(LinearKind::Pel, n, field, budget)
}

pub fn build_pgl(n: usize, field: &FiniteField, budget: &Budget) -> Result<LinearGroup> {
    build_linear(LinearKind::Pgl, n, field, budget)
}

/// Action of `gens` on `Gr_k(GF(q)^n)` in enumeration order.
pub fn subspace_action(
    field: &FiniteField,
    n: usize,
    k: usize,
    gens: &[Mat<Gf>],
    budget: &Budget,
) -> Result<(PermGroup, Vec<Subspace<Gf>>)> {
    let gr = Grassmannian::new(field, n, k);
    budget.check_grassmannian("Gr_k", gr.count())?;
    let subs: Vec<Subspace<Gf>> = gr.iter().collect();
    let index: HashMap<&Subspace<Gf>, u32> = subs.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
    let mut perms = Vec::with_capacity(gens.len());
    for g in gens {
        let images = subs
            .iter()
            .map(|s| {
                let t = s.image(field, g)?;
                index.get(&t).copied().ok_or(Error::Singular)
            })
            .collect::<Result<Vec<u32>>>()?;
        perms.push(Perm::from_images(images)?);
    }
    Ok((PermGroup::new(subs.len(), perms)?, subs))
}

/// Number of `n×n` matrices over the field with determinant 1, counted
/// through the column-by-column enumeration of GL.
pub fn count_det_one(field: &FiniteField, n: usize, budget: &Budget) -> Result<u128> {
    let gl = gl_order(n, field.size());
    budget.check_enumeration("GL enumeration", gl)?;
    let mut count = 0u128;
    let mut cols: Vec<Vec<Gf>> = Vec::with_capacity(n);
    count_rec(field, n, &mut cols, &mut count, budget)?;
    Ok(count)
}

fn count_rec(field: &FiniteField, n: usize, cols: &mut Vec<Vec<Gf>>, count: &mut u128, budget: &Budget) -> Result<()> {
    if cols.len() == n {
        let m = Mat::from_columns(n, cols);
        if super::dieudonne_det(field, &m)? == field.one() {
            *count += 1;
        }
        return Ok(());
    }
    budget.check_time()?;
    let total = (field.size() as u64).pow(n as u32);
    for idx in 1..total {
        let v = vector_from_index(field, n, idx);
        let mut trial = cols.clone();
        trial.push(v.clone());
        if Mat::from_columns(n, &trial).rank(field) < trial.len() {
            continue;
        }
        cols.push(v);
        count_rec(field, n, cols, count, budget)?;
        cols.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    #[test]
    fn small_orders() {
        let b = Budget::default();
        assert_eq!(build_el(2, &gf(2), &b).unwrap().order(), 6);
        assert_eq!(build_pel(3, &gf(2), &b).unwrap().order(), 168);
        assert_eq!(build_pgl(2, &gf(5), &b).unwrap().order(), 120);
        assert_eq!(build_linear(LinearKind::Psl, 2, &gf(9), &b).unwrap().order(), 360);
        assert_eq!(build_gl(2, &gf(3), &b).unwrap().order(), 48);
    }

    #[test]
    fn el_equals_sl_over_gf3() {
        let b = Budget::default();
        let el = build_el(3, &gf(3), &b).unwrap();
        assert_eq!(el.order(), count_det_one(&gf(3), 3, &b).unwrap());
        assert_eq!(el.order(), 5616);
    }

    #[test]
    fn point_order_matches_pg() {
        let f = gf(3);
        let a = MatrixAction::on_points(&f, 3);
        let pg = crate::projgeom::build_pg(2, &f, &Budget::default()).unwrap();
        for i in 0..a.degree() as u32 {
            assert_eq!(pg.point_of_vector(&a.element(i)), Some(i));
        }
    }

    #[test]
    fn two_transitive_on_points_and_hyperplanes() {
        let b = Budget::default();
        for (n, q) in [(3, 2), (3, 3), (4, 2)] {
            let g = build_pel(n, &gf(q), &b).unwrap();
            assert!(g.group.transitivity_degree() >= 2);
            let (h, _) = subspace_action(&gf(q), n, n - 1, &g.matrices, &b).unwrap();
            assert!(h.transitivity_degree() >= 2);
        }
    }

    #[test]
    fn not_two_transitive_on_lines_of_pg3() {
        let b = Budget::default();
        let g = build_el(4, &gf(2), &b).unwrap();
        let (h, subs) = subspace_action(&gf(2), 4, 2, &g.matrices, &b).unwrap();
        assert_eq!(subs.len(), 35);
        assert!(h.is_transitive());
        assert_eq!(h.transitivity_degree(), 1);
    }

    #[test]
    fn budget_refuses_large_groups() {
        let tiny = Budget::parse("max_group_order=100").unwrap();
        assert!(matches!(build_pel(3, &gf(2), &tiny), Err(Error::BudgetExceeded { .. })));
    }
}
