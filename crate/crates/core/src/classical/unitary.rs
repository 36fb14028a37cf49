use std::collections::HashMap;

use super::linear::{gl_order, MatrixAction};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forms::{singular_points, PseudoQuadraticForm};
use crate::matvec::{gf2, normalize_point, vector_from_index, vector_index, Mat};
use crate::permgrp::{Perm, PermGroup, StabChain};
use crate::scalar::{DivisionRing, Gf};

/// Largest `|GL(V)|` the brute filter will scan.
pub const GL_FILTER_LIMIT: u128 = 10_000_000;

/// The isometry group `U([f])` of a pseudo-quadratic form.
#[derive(Debug, Clone)]
pub struct IsometryGroup {
    pub matrices: Vec<Mat<Gf>>,
    /// Matrices (GF(2)) or search nodes (other fields) visited.
    pub scanned: u64,
    /// Faithful action on the nonzero vectors.
    pub vector_action: PermGroup,
    pub singular_points: Vec<Vec<Gf>>,
    /// Action on the singular points.
    pub point_action: PermGroup,
}

impl IsometryGroup {
    pub fn order(&self) -> u128 {
        self.matrices.len() as u128
    }
}

struct Tables {
    size: usize,
    qrep: Vec<u32>,
    h: Vec<u32>,
}

impl Tables {
    fn new(pq: &PseudoQuadraticForm) -> Self {
        let field = pq.field();
        let n = pq.dim();
        let size = (field.size() as usize).pow(n as u32);
        let vecs: Vec<Vec<Gf>> = (0..size as u64).map(|i| vector_from_index(field, n, i)).collect();
        let qrep = vecs.iter().map(|v| pq.q(v).0).collect();
        let mut h = vec![0u32; size * size];
        for (i, u) in vecs.iter().enumerate() {
            for (j, v) in vecs.iter().enumerate() {
                h[i * size + j] = pq.h(u, v).0;
            }
        }
        Tables { size, qrep, h }
    }

    fn h(&self, a: usize, b: usize) -> u32 {
        self.h[a * self.size + b]
    }
}

/// All matrices preserving `q` modulo `Λ` and `h`, by filtering `GL(V)`.
/// Checking the basis suffices: `q(u+v) ≡ q(u) + q(v) + h(u,v)` modulo `Λ`.
pub fn build_unitary(pq: &PseudoQuadraticForm, budget: &Budget) -> Result<IsometryGroup> {
    let field = pq.field().clone();
    let n = pq.dim();
    let gl = gl_order(n, field.size());
    if gl > GL_FILTER_LIMIT {
        return Err(Error::BudgetExceeded { what: "GL filter".into(), needed: gl, limit: GL_FILTER_LIMIT });
    }
    budget.check_enumeration("GL filter", gl)?;
    let t = Tables::new(pq);
    let basis: Vec<usize> = (0..n)
        .map(|i| {
            let mut e = vec![Gf(0); n];
            e[i] = field.one();
            vector_index(&field, &e) as usize
        })
        .collect();
    let (matrices, scanned) = if field.size() == 2 {
        filter_gf2(n, &t, &basis, budget)?
    } else {
        backtrack(pq, &t, &basis, budget)?
    };

    let vectors = MatrixAction::on_vectors(&field, n);
    let vector_action = closure(&matrices, |m| vectors.perm(m))?;
    let points = singular_points(pq, budget)?;
    let index: HashMap<Vec<Gf>, u32> = points.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    let on_points = |m: &Mat<Gf>| -> Result<Perm> {
        let images = points
            .iter()
            .map(|p| {
                let img = normalize_point(&field, &m.apply(&field, p)).ok_or(Error::Singular)?;
                index
                    .get(&img)
                    .copied()
                    .ok_or_else(|| Error::Mismatch("isometry moved a singular point off the quadric".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(images)
    };
    let point_action = closure(&matrices, on_points)?;
    Ok(IsometryGroup { matrices, scanned, vector_action, singular_points: points, point_action })
}

/// The group generated by the images, adding only generators that enlarge it.
fn closure(matrices: &[Mat<Gf>], act: impl Fn(&Mat<Gf>) -> Result<Perm>) -> Result<PermGroup> {
    let first = match matrices.first() {
        Some(m) => act(m)?,
        None => return Err(Error::Mismatch("empty isometry group".into())),
    };
    let degree = first.degree();
    let mut chain = StabChain::new(degree, &[]);
    let mut gens = Vec::new();
    for m in matrices {
        let p = act(m)?;
        if chain.add_generator(&p) {
            gens.push(p);
        }
        if chain.order() == matrices.len() as u128 {
            break;
        }
    }
    PermGroup::new(degree, gens)
}

fn columns_ok(t: &Tables, basis: &[usize], cols: &[usize], i: usize) -> bool {
    let c = cols[i];
    if t.qrep[c] != t.qrep[basis[i]] || t.h(c, c) != t.h(basis[i], basis[i]) {
        return false;
    }
    (0..i).all(|j| {
        t.h(c, cols[j]) == t.h(basis[i], basis[j]) && t.h(cols[j], c) == t.h(basis[j], basis[i])
    })
}

fn filter_gf2(n: usize, t: &Tables, basis: &[usize], budget: &Budget) -> Result<(Vec<Mat<Gf>>, u64)> {
    // Over GF(2) the vector index of a column word reverses the bit order.
    let to_index = |w: u64| -> usize { (0..n).fold(0usize, |acc, i| (acc << 1) | ((w >> i) & 1) as usize) };
    let mut out = Vec::new();
    let mut timed_out = None;
    let mut cols = vec![0usize; n];
    let scanned = gf2::for_each_invertible(n, |words| {
        for (i, &w) in words.iter().enumerate() {
            cols[i] = to_index(w);
            if !columns_ok(t, basis, &cols, i) {
                return true;
            }
        }
        out.push(gf2::BitMatrix { rows: n, cols: words.to_vec() }.to_mat());
        if out.len() % 64 == 0 {
            if let Err(e) = budget.check_time() {
                timed_out = Some(e);
                return false;
            }
        }
        true
    });
    match timed_out {
        Some(e) => Err(e),
        None => Ok((out, scanned)),
    }
}

struct Search<'a> {
    pq: &'a PseudoQuadraticForm,
    t: &'a Tables,
    basis: &'a [usize],
    vecs: Vec<Vec<Gf>>,
    in_span: Vec<bool>,
    cols: Vec<usize>,
    out: Vec<Mat<Gf>>,
    nodes: u64,
}

fn backtrack(pq: &PseudoQuadraticForm, t: &Tables, basis: &[usize], budget: &Budget) -> Result<(Vec<Mat<Gf>>, u64)> {
    let field = pq.field();
    let n = pq.dim();
    let vecs: Vec<Vec<Gf>> = (0..t.size as u64).map(|i| vector_from_index(field, n, i)).collect();
    let mut in_span = vec![false; t.size];
    in_span[0] = true;
    let mut s = Search { pq, t, basis, vecs, in_span, cols: Vec::new(), out: Vec::new(), nodes: 0 };
    search(&mut s, budget)?;
    Ok((s.out, s.nodes))
}

fn search(s: &mut Search, budget: &Budget) -> Result<()> {
    let field = s.pq.field();
    let n = s.pq.dim();
    if s.cols.len() == n {
        let cols: Vec<Vec<Gf>> = s.cols.iter().map(|&c| s.vecs[c].clone()).collect();
        s.out.push(Mat::from_columns(n, &cols));
        return Ok(());
    }
    budget.check_time()?;
    let i = s.cols.len();
    for c in 1..s.t.size {
        if s.in_span[c] {
            continue;
        }
        s.nodes += 1;
        s.cols.push(c);
        if columns_ok(s.t, s.basis, &s.cols, i) {
            let members: Vec<usize> = (0..s.t.size).filter(|&x| s.in_span[x]).collect();
            let mut added = Vec::new();
            for &x in &members {
                for a in field.nonzero_elements() {
                    let v: Vec<Gf> = s.vecs[x]
                        .iter()
                        .zip(&s.vecs[c])
                        .map(|(p, q)| field.add(p, &field.mul(q, &a)))
                        .collect();
                    let k = vector_index(field, &v) as usize;
                    if !s.in_span[k] {
                        s.in_span[k] = true;
                        added.push(k);
                    }
                }
            }
            search(s, budget)?;
            for k in added {
                s.in_span[k] = false;
            }
        }
        s.cols.pop();
    }
    Ok(())
}
