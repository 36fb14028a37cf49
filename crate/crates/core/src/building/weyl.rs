use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgrp::{Perm, PermGroup};

#[derive(Debug, Clone, Serialize)]
pub struct CoxeterRelation {
    pub i: usize,
    pub j: usize,
    pub m: u64,
    pub observed: u64,
}

/// Evidence that `(W, S)` is a Coxeter system of type `A_n`: each `s_i s_j`
/// has order exactly `m(i,j)`, so `W` is a quotient of the Coxeter group, and
/// `|W| = (n+1)!` equals the order of that Coxeter group, so the quotient map
/// is an isomorphism.
#[derive(Debug, Clone, Serialize)]
pub struct CoxeterCertificate {
    pub rank: usize,
    pub relations: Vec<CoxeterRelation>,
    pub group_order: u128,
    pub coxeter_order: u128,
    pub holds: bool,
}

/// `m(i,j)` for the `A_n` diagram: 1 on the diagonal, 3 for neighbours, 2 otherwise.
pub fn coxeter_m(i: usize, j: usize) -> u64 {
    match i.abs_diff(j) {
        0 => 1,
        1 => 3,
        _ => 2,
    }
}

pub fn coxeter_check(gens: &[Perm]) -> Result<CoxeterCertificate> {
    let n = gens.len();
    let degree = gens.first().map(Perm::degree).ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i..n {
            let m = coxeter_m(i, j);
            relations.push(CoxeterRelation { i, j, m, observed: gens[i].mul(&gens[j]).order() });
        }
    }
    let group_order = PermGroup::new(degree, gens.to_vec())?.order();
    let coxeter_order: u128 = (1..=n as u128 + 1).product();
    let holds = relations.iter().all(|r| r.m == r.observed) && group_order == coxeter_order;
    Ok(CoxeterCertificate { rank: n, relations, group_order, coxeter_order, holds })
}

/// `Sym(n+1)` with `s_i = (i, i+1)`.
pub fn weyl_group(n: usize) -> Result<(PermGroup, CoxeterCertificate)> {
    if n == 0 {
        return Err(Error::InvalidInput("rank must be at least 1".into()));
    }
    let gens: Vec<Perm> = (0..n as u32).map(|i| Perm::from_cycles(n + 1, &[&[i, i + 1]])).collect::<Result<_>>()?;
    let cert = coxeter_check(&gens)?;
    Ok((PermGroup::new(n + 1, gens)?, cert))
}
