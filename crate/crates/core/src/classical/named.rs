use super::linear::{build_linear, LinearKind};
use super::unitary::build_unitary;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::forms::{FormParameter, LambdaSpec, PseudoQuadraticForm, SesquilinearForm};
use crate::matvec::Mat;
use crate::permgrp::{alternating, symmetric, PermGroup};
use crate::scalar::{DivisionRing, FieldAuto, FiniteField};

/// Families accepted by [`parse_named_group`].
pub const GROUP_FAMILIES: [&str; 11] = ["sym", "alt", "psl", "pgl", "pel", "el", "sl", "gl", "sp", "o", "u"];

fn split_spec(spec: &str) -> Result<(String, Vec<u32>)> {
    let s = spec.trim();
    let open = s.find('(').ok_or_else(|| Error::Parse(format!("expected name(params), got '{s}'")))?;
    let body = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("missing ')' in '{s}'")))?;
    let name = s[..open].trim().to_ascii_lowercase();
    let params = body
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad parameter '{p}' in '{s}'"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((name, params))
}

fn two(name: &str, p: &[u32]) -> Result<(usize, u32)> {
    match p {
        [n, q] if *n >= 1 => Ok((*n as usize, *q)),
        _ => Err(Error::Parse(format!("{name} takes (n, q)"))),
    }
}

/// Builds a group from `name(params)`: `sym(n)`, `alt(n)`, `psl(n,q)` and the
/// other linear families, `sp(2m,q)`, `o(n,q)`, `u(n,q)`. Projective families
/// act on points, the others on nonzero vectors.
pub fn parse_named_group(spec: &str, budget: &Budget) -> Result<PermGroup> {
    let (name, p) = split_spec(spec)?;
    match name.as_str() {
        "sym" | "alt" => {
            let n = match p.as_slice() {
                [n] if *n >= 1 => *n as usize,
                _ => return Err(Error::Parse(format!("{name} takes one degree"))),
            };
            let order: u128 = (1..=n as u128).product::<u128>() / if name == "alt" && n >= 2 { 2 } else { 1 };
            budget.check_group_order(&name, order)?;
            Ok(if name == "sym" { symmetric(n) } else { alternating(n) })
        }
        "psl" | "pgl" | "pel" | "el" | "sl" | "gl" => {
            let (n, q) = two(&name, &p)?;
            let field = FiniteField::with_order(q)?;
            Ok(build_linear(LinearKind::parse(&name)?, n, &field, budget)?.group)
        }
        "sp" | "o" | "u" => {
            let (n, q) = two(&name, &p)?;
            let pq = classical_form(&name, n, q)?;
            Ok(build_unitary(&pq, budget)?.vector_action)
        }
        _ => Err(Error::Parse(format!("unknown group family '{name}'"))),
    }
}

/// The standard form behind `sp`, `o` and `u`: hyperbolic pairs, plus one
/// anisotropic coordinate when `n` is odd.
pub fn classical_form(family: &str, n: usize, q: u32) -> Result<PseudoQuadraticForm> {
    let field = match family {
        "u" => FiniteField::with_order(q.checked_mul(q).ok_or_else(|| Error::Parse("q too large".into()))?)?,
        _ => FiniteField::with_order(q)?,
    };
    let (sigma, epsilon, lambda, odd_entry) = match family {
        "sp" => {
            if n % 2 == 1 {
                return Err(Error::InvalidInput("sp needs even dimension".into()));
            }
            (FieldAuto::identity(), field.neg(&field.one()), LambdaSpec::Full, field.zero())
        }
        "o" => (FieldAuto::identity(), field.one(), LambdaSpec::Zero, field.one()),
        "u" => (FieldAuto::new(field.degree() / 2), field.one(), LambdaSpec::FixedSet, field.primitive_element()),
        other => return Err(Error::Parse(format!("no standard form for '{other}'"))),
    };
    let mut gram = Mat::zeros(&field, n, n);
    for i in 0..n / 2 {
        gram.set(2 * i, 2 * i + 1, field.one());
    }
    if n % 2 == 1 {
        gram.set(n - 1, n - 1, odd_entry);
    }
    let f = SesquilinearForm::new(&field, gram, sigma)?;
    let param = FormParameter::new(&field, sigma, epsilon, lambda)?;
    PseudoQuadraticForm::new(f, param)
}
