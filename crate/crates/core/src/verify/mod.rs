//! The reproducible verification suite: ten exact checks covering the whole
//! crate, each reported as a pass/fail line with structured details.

pub mod oracle;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::building::{extract_tits_system, verify_tits};
use crate::classical::{
    build_linear, build_unitary, check_moufang, check_steinberg_field, check_steinberg_quaternions, dieudonne_det,
    moufang_set_projective_line, parse_named_group, random_quaternion, reconstruct_lines, LinearKind,
};
use crate::error::{Error, Result};
use crate::forms::{
    reduce_slightly_degenerate, singular_points, witt_decompose, witt_index, FormParameter, LambdaSpec,
    PseudoQuadraticForm, SesquilinearForm,
};
use crate::matvec::{enumerate_grassmannian, Grassmannian, Mat};
use crate::permgrp::iso_small;
use crate::polar::{a32_oriflamme_certificate, build_a32, build_polar, PolarKind, SubspaceLattice};
use crate::projgeom::{build_pg, PointLineGeometry};
use crate::scalar::{quat_norm, DivisionRing, FieldAuto, FiniteField, Gf, Quaternions};

/// Default seed for every randomized criterion.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "exceptional isomorphisms"),
    (2, "perfectness"),
    (3, "Steinberg relations"),
    (4, "Dieudonne determinant"),
    (5, "O(5,2) and Sp(4,2)"),
    (6, "Tits systems"),
    (7, "geometry axioms"),
    (8, "Moufang sets and reconstruction"),
    (9, "Witt decomposition"),
    (10, "oracle equivalences"),
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub details: Value,
    pub error: Option<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("[{}] criterion {:>2}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

fn f(q: u32) -> Result<FiniteField> {
    FiniteField::with_order(q)
}

pub fn run_criterion(id: u8, budget: &Budget, seed: u64) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| n.to_string())
        .unwrap_or_else(|| "unknown".into());
    let outcome = match id {
        1 => isomorphisms(budget),
        2 => perfectness(budget),
        3 => steinberg(budget, seed),
        4 => determinants(seed),
        5 => o5_sp4(budget),
        6 => tits(budget),
        7 => axioms(budget),
        8 => moufang(budget),
        9 => witt(budget, seed),
        10 => oracles(budget),
        _ => Err(Error::InvalidInput(format!("no criterion {id}"))),
    };
    match outcome {
        Ok((passed, details)) => CriterionResult { id, name, passed, details, error: None },
        Err(e) => CriterionResult { id, name, passed: false, details: Value::Null, error: Some(e.to_string()) },
    }
}

pub fn run_suite(budget: &Budget, seed: u64) -> SuiteReport {
    let criteria: Vec<CriterionResult> = CRITERIA.iter().map(|(id, _)| run_criterion(*id, budget, seed)).collect();
    let passed = criteria.iter().all(|c| c.passed);
    SuiteReport { seed, criteria, passed }
}

type Outcome = Result<(bool, Value)>;

pub const ISOMORPHIC_PAIRS: [(&str, &str); 7] = [
    ("psl(2,2)", "sym(3)"),
    ("psl(2,3)", "alt(4)"),
    ("psl(2,4)", "alt(5)"),
    ("psl(2,5)", "alt(5)"),
    ("psl(2,7)", "psl(3,2)"),
    ("psl(2,9)", "alt(6)"),
    ("psl(4,2)", "alt(8)"),
];

fn isomorphisms(budget: &Budget) -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for (a, b) in ISOMORPHIC_PAIRS {
        let g = parse_named_group(a, budget)?;
        let h = parse_named_group(b, budget)?;
        let r = iso_small(&g, &h, budget)?;
        let certified = match &r {
            crate::permgrp::IsoResult::Isomorphic(iso) => iso.verify_words()?,
            _ => false,
        };
        ok &= certified;
        rows.push(json!({"a": a, "b": b, "order": g.order().to_string(), "isomorphic": certified}));
    }
    let g = parse_named_group("psl(3,4)", budget)?;
    let h = parse_named_group("psl(4,2)", budget)?;
    let r = iso_small(&g, &h, budget)?;
    let reason = match &r {
        crate::permgrp::IsoResult::NotIsomorphic(s) => s.clone(),
        _ => String::new(),
    };
    let distinct = !r.is_isomorphic() && g.order() == 20160 && h.order() == 20160;
    ok &= distinct;
    rows.push(json!({"a": "psl(3,4)", "b": "psl(4,2)", "order": "20160", "isomorphic": r.is_isomorphic(), "reason": reason}));
    Ok((ok, json!({ "pairs": rows })))
}

fn perfectness(budget: &Budget) -> Outcome {
    let cases: [(&str, bool); 8] = [
        ("psl(2,2)", false),
        ("psl(2,3)", false),
        ("psl(2,4)", true),
        ("psl(2,5)", true),
        ("psl(2,7)", true),
        ("psl(2,9)", true),
        ("pel(3,2)", true),
        ("pel(3,3)", true),
    ];
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, want) in cases {
        let g = parse_named_group(name, budget)?;
        let perfect = g.is_perfect();
        ok &= perfect == want;
        rows.push(json!({"group": name, "order": g.order().to_string(), "perfect": perfect, "expected": want}));
    }
    Ok((ok, json!({ "groups": rows })))
}

fn steinberg(budget: &Budget, seed: u64) -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for q in [2, 3, 5] {
        for n in [3, 4] {
            let r = check_steinberg_field(&f(q)?, n, budget)?;
            ok &= r.all_pass() && r.sr3_conventions.iter().any(|c| c == "ab");
            rows.push(json!({"scalars": format!("GF({q})"), "n": n, "report": r}));
        }
    }
    let r = check_steinberg_quaternions(3, 200, seed, budget)?;
    ok &= r.all_pass() && r.sr3_conventions == ["ab"] && r.noncommuting_pairs > 0;
    rows.push(json!({"scalars": "H(Q)", "n": 3, "samples": 200, "report": r}));
    Ok((ok, json!({ "runs": rows })))
}

fn random_matrix(field: &FiniteField, n: usize, rng: &mut impl Rng) -> Mat<Gf> {
    Mat::from_fn(n, n, |_, _| Gf(rng.gen_range(0..field.size())))
}

fn random_quat_matrix(n: usize, rng: &mut impl Rng) -> Mat<crate::scalar::RationalQuaternion> {
    Mat::from_fn(n, n, |_, _| random_quaternion(rng))
}

fn determinants(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [f(2)?, f(3)?, f(4)?, f(5)?, f(7)?, f(9)?];
    let mut mismatches = 0usize;
    let mut singular = 0usize;
    for t in 0..10_000 {
        let field = &fields[t % fields.len()];
        let n = 1 + t % 5;
        let m = random_matrix(field, n, &mut rng);
        let want = oracle::leibniz_det(field, &m);
        match dieudonne_det(field, &m) {
            Ok(d) => mismatches += usize::from(d != want),
            Err(Error::Singular) => {
                singular += 1;
                mismatches += usize::from(!field.is_zero(&want));
            }
            Err(e) => return Err(e),
        }
    }
    let q = Quaternions;
    let mut norm_failures = 0usize;
    let mut pairs = 0usize;
    while pairs < 100 {
        let a = random_quat_matrix(3, &mut rng);
        let b = random_quat_matrix(3, &mut rng);
        let (Ok(da), Ok(db)) = (dieudonne_det(&q, &a), dieudonne_det(&q, &b)) else { continue };
        let dab = dieudonne_det(&q, &a.mul(&q, &b)?)?;
        norm_failures += usize::from(quat_norm(&dab) != quat_norm(&da) * quat_norm(&db));
        pairs += 1;
    }
    let mut transvection_failures = 0usize;
    let mut count = 0usize;
    while count < 100 {
        let u: Vec<_> = (0..3).map(|_| random_quaternion(&mut rng)).collect();
        let Some(u2inv) = q.inv(&u[2]) else { continue };
        let r0 = random_quaternion(&mut rng);
        let r1 = random_quaternion(&mut rng);
        let partial = q.add(&q.mul(&r0, &u[0]), &q.mul(&r1, &u[1]));
        let r2 = q.neg(&q.mul(&partial, &u2inv));
        let t = crate::classical::transvection(&q, &u, &[r0, r1, r2])?;
        let d = dieudonne_det(&q, &t)?;
        transvection_failures += usize::from(!quat_norm(&d).is_one_value());
        count += 1;
    }
    let ok = mismatches == 0 && norm_failures == 0 && transvection_failures == 0;
    Ok((
        ok,
        json!({
            "finite_field_matrices": 10_000,
            "singular": singular,
            "mismatches": mismatches,
            "quaternion_pairs": pairs,
            "norm_failures": norm_failures,
            "transvections": count,
            "transvection_failures": transvection_failures,
        }),
    ))
}

trait OneValue {
    fn is_one_value(&self) -> bool;
}

impl OneValue for num_rational::BigRational {
    fn is_one_value(&self) -> bool {
        num_traits::One::is_one(self)
    }
}

/// `x1 x2 + x3 x4 + x5²` over `GF(q)`.
pub fn o5_form(q: u32) -> Result<PseudoQuadraticForm> {
    let field = f(q)?;
    let mut g = Mat::zeros(&field, 5, 5);
    g.set(0, 1, field.one());
    g.set(2, 3, field.one());
    g.set(4, 4, field.one());
    let sf = SesquilinearForm::new(&field, g, FieldAuto::identity())?;
    let p = FormParameter::new(&field, FieldAuto::identity(), field.one(), LambdaSpec::Zero)?;
    PseudoQuadraticForm::new(sf, p)
}

fn o5_sp4(budget: &Budget) -> Outcome {
    let pq = o5_form(2)?;
    let slightly = pq.is_slightly_degenerate();
    let red = reduce_slightly_degenerate(&pq)?;
    let r = &red.reduced;
    let field = r.field();
    let hg = r.h_gram();
    let alternating = (0..r.dim()).all(|i| field.is_zero(hg.get(i, i)))
        && (0..r.dim()).all(|i| (0..r.dim()).all(|j| hg.get(i, j) == hg.get(j, i)));
    let standard = r.dim() == 4 && r.is_nondegenerate() && alternating;
    let sp = crate::classical::classical_form("sp", 4, 2)?;
    let o_points = singular_points(&pq, budget)?.len();
    let sp_points = singular_points(&sp, budget)?.len();
    let o_group = build_unitary(&pq, budget)?;
    let sp_group = build_unitary(&sp, budget)?;
    let iso = iso_small(&o_group.vector_action, &sp_group.vector_action, budget)?;
    let ok = slightly
        && standard
        && o_points == 15
        && sp_points == 15
        && o_group.order() == 720
        && sp_group.order() == 720
        && o_group.vector_action.order() == 720
        && iso.is_isomorphic();
    Ok((
        ok,
        json!({
            "slightly_degenerate": slightly,
            "reduced_dim": r.dim(),
            "reduced_is_standard_symplectic": standard,
            "singular_points": [o_points, sp_points],
            "orders": [o_group.order().to_string(), sp_group.order().to_string()],
            "gl_scanned": [o_group.scanned, sp_group.scanned],
            "isomorphic": iso.is_isomorphic(),
        }),
    ))
}

fn tits(budget: &Budget) -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for (n, q, cells) in [(2, 2, 6), (2, 3, 6), (3, 2, 24)] {
        let ts = extract_tits_system(n, &f(q)?, budget)?;
        let r = verify_tits(&ts, budget)?;
        ok &= r.all_pass() && r.bruhat_cells == cells;
        rows.push(json!({"group": format!("EL_{}(GF({q}))", n + 1), "report": r}));
    }
    Ok((ok, json!({ "systems": rows })))
}

fn precisely_two(g: &PointLineGeometry, budget: &Budget) -> Result<bool> {
    let lat = SubspaceLattice::build(g, budget)?;
    let m = lat.polar_rank() as i64;
    let tops = lat.of_rank(m - 1);
    Ok(lat.of_rank(m - 2).iter().all(|x| {
        tops.iter().filter(|t| x.iter().all(|p| t.binary_search(p).is_ok())).count() == 2
    }))
}

fn axioms(budget: &Budget) -> Outcome {
    let mut ok = true;
    let mut pg_rows = Vec::new();
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        let rep = build_pg(n, &f(q)?, budget)?.point_line().check_pg_axioms();
        ok &= rep.all_pass();
        pg_rows.push(json!({"geometry": format!("PG({n},{q})"), "pass": rep.all_pass()}));
    }
    let mut ps_rows = Vec::new();
    for q in [2, 3] {
        let ps = build_polar(&crate::classical::classical_form("sp", 4, q)?, budget)?;
        let r = ps.check_axioms(budget)?;
        ok &= r.kind == PolarKind::Thick;
        ps_rows.push(json!({"space": format!("W(3,{q})"), "kind": r.kind, "points": ps.geometry.num_points()}));
    }
    let mut weak_rows = Vec::new();
    for (label, g) in [
        ("grid(3,3)".to_string(), PointLineGeometry::grid(3, 3)),
        ("grid(4,5)".to_string(), PointLineGeometry::grid(4, 5)),
        ("A32(GF(2))".to_string(), build_a32(&f(2)?, budget)?.geometry),
    ] {
        let r = crate::polar::check_polar_axioms(&g, budget)?;
        let two = precisely_two(&g, budget)?;
        ok &= r.kind == PolarKind::Weak && two;
        weak_rows.push(json!({"geometry": label, "kind": r.kind, "precisely_two": two}));
    }
    let cert = a32_oriflamme_certificate(&f(2)?, budget)?;
    ok &= cert.isomorphic && cert.oriflamme_chambers == 315 && cert.delta_chambers == 315;
    Ok((ok, json!({"projective": pg_rows, "thick": ps_rows, "weak": weak_rows, "oriflamme": cert})))
}

fn moufang(budget: &Budget) -> Outcome {
    let mut ok = true;
    let mut sets = Vec::new();
    for q in [2, 3, 4, 5, 7] {
        let ms = moufang_set_projective_line(&f(q)?, LinearKind::Gl)?;
        let r = check_moufang(&ms, budget)?;
        ok &= r.all_pass();
        if q >= 4 {
            ok &= r.unique;
        }
        sets.push(json!({"q": q, "report": r}));
    }
    let mut absent = Vec::new();
    for q in [2, 3] {
        let g = build_linear(LinearKind::Pgl, 3, &f(q)?, budget)?;
        let count = g.group.regular_normal_subgroups(0, budget)?.len();
        ok &= count == 0;
        absent.push(json!({"group": format!("PGL_3({q})"), "regular_normal_subgroups": count}));
    }
    let mut rebuilt = Vec::new();
    for q in [2, 3] {
        let field = f(q)?;
        let g = build_linear(LinearKind::Pgl, 3, &field, budget)?;
        let geo = reconstruct_lines(&g.group, budget)?;
        let pg = build_pg(2, &field, budget)?.point_line();
        let mut a = geo.lines().to_vec();
        let mut b = pg.lines().to_vec();
        a.sort();
        b.sort();
        let same = a == b;
        ok &= same;
        rebuilt.push(json!({"plane": format!("PG(2,{q})"), "lines": a.len(), "exact": same}));
    }
    let sym5 = reconstruct_lines(&crate::permgrp::symmetric(5), budget).is_err();
    ok &= sym5;
    Ok((ok, json!({"moufang_sets": sets, "no_regular_normal": absent, "reconstruction": rebuilt, "sym5_rejected": sym5})))
}

/// Form parameters available over `field`: orthogonal, symplectic, and
/// unitary when the field has an involution.
fn parameter_choices(field: &FiniteField) -> Result<Vec<(&'static str, FormParameter)>> {
    let id = FieldAuto::identity();
    let mut out = vec![
        ("orthogonal", FormParameter::new(field, id, field.one(), LambdaSpec::Zero)?),
        ("symplectic", FormParameter::new(field, id, field.neg(&field.one()), LambdaSpec::Full)?),
    ];
    if field.degree() % 2 == 0 {
        let s = FieldAuto::new(field.degree() / 2);
        out.push(("unitary", FormParameter::new(field, s, field.one(), LambdaSpec::FixedSet)?));
    }
    Ok(out)
}

/// A random non-degenerate form of dimension 2 to 4 with a parameter drawn
/// from [`parameter_choices`].
pub fn random_form(field: &FiniteField, rng: &mut impl Rng) -> Result<(&'static str, PseudoQuadraticForm)> {
    let choices = parameter_choices(field)?;
    loop {
        let (label, p) = &choices[rng.gen_range(0..choices.len())];
        let n = rng.gen_range(2..=4);
        let g = random_matrix(field, n, rng);
        let pq = PseudoQuadraticForm::new(SesquilinearForm::new(field, g, p.sigma())?, p.clone())?;
        if pq.is_nondegenerate() {
            return Ok((label, pq));
        }
    }
}

fn random_invertible(field: &FiniteField, n: usize, rng: &mut impl Rng) -> Mat<Gf> {
    loop {
        let m = random_matrix(field, n, rng);
        if m.rank(field) == n {
            return m;
        }
    }
}

fn check_decomposition(pq: &PseudoQuadraticForm, budget: &Budget) -> Result<(usize, bool)> {
    let field = pq.field();
    let n = pq.dim();
    let wd = witt_decompose(pq, budget)?;
    let m = wd.index;
    let v0 = &wd.anisotropic_basis;
    let mut ok = 2 * m + v0.len() == n && wd.basis_matrix(n).rank(field) == n;
    for (a, (e, fv)) in wd.hyperbolic_pairs.iter().enumerate() {
        ok &= pq.q_vanishes(e) && pq.q_vanishes(fv) && field.is_one(&pq.h(e, fv));
        for (b, (e2, f2)) in wd.hyperbolic_pairs.iter().enumerate() {
            if a != b {
                for x in [e, fv] {
                    for y in [e2, f2] {
                        ok &= field.is_zero(&pq.h(x, y));
                    }
                }
            }
        }
        for w in v0 {
            ok &= [e, fv].iter().all(|x| field.is_zero(&pq.h(x, w)));
        }
    }
    let q = field.size() as u64;
    for code in 1..q.pow(v0.len() as u32) {
        let mut c = code;
        let mut v = vec![Gf(0); n];
        for b in v0 {
            let a = Gf((c % q) as u32);
            c /= q;
            for (x, y) in v.iter_mut().zip(b) {
                *x = field.add(x, &field.mul(y, &a));
            }
        }
        ok &= !pq.q_vanishes(&v);
    }
    Ok((m, ok))
}

fn witt(budget: &Budget, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut rows = Vec::new();
    for q in [2, 3, 4] {
        let field = f(q)?;
        let mut cases: BTreeMap<&str, usize> = BTreeMap::new();
        let mut failures = 0usize;
        let mut indices: BTreeMap<usize, usize> = BTreeMap::new();
        for _ in 0..50 {
            budget.check_time()?;
            let (label, pq) = random_form(&field, &mut rng)?;
            *cases.entry(label).or_default() += 1;
            let (m, good) = check_decomposition(&pq, budget)?;
            let (idx, _) = witt_index(&pq, budget)?;
            let mut good = good && idx == m;
            for _ in 0..20 {
                let g = random_invertible(&field, pq.dim(), &mut rng);
                good &= witt_index(&pq.base_change(&g)?, budget)?.0 == m;
            }
            *indices.entry(m).or_default() += 1;
            failures += usize::from(!good);
        }
        ok &= failures == 0;
        rows.push(json!({"field": format!("GF({q})"), "forms": 50, "cases": cases, "witt_indices": indices, "failures": failures}));
    }
    Ok((ok, json!({ "fields": rows })))
}

/// Groups of order at most 5000 appearing in the suite.
pub const ORACLE_GROUPS: [&str; 16] = [
    "sym(3)",
    "alt(4)",
    "alt(5)",
    "alt(6)",
    "psl(2,2)",
    "psl(2,3)",
    "psl(2,4)",
    "psl(2,5)",
    "psl(2,7)",
    "psl(2,9)",
    "psl(3,2)",
    "pgl(2,4)",
    "pgl(2,5)",
    "pgl(2,7)",
    "sp(4,2)",
    "o(5,2)",
];

fn oracles(budget: &Budget) -> Outcome {
    let mut ok = true;
    let mut groups = Vec::new();
    for name in ORACLE_GROUPS {
        let g = parse_named_group(name, budget)?;
        let bfs = oracle::closure_order(g.degree(), g.generators(), 5000)?;
        let same = bfs as u128 == g.order();
        ok &= same;
        groups.push(json!({"group": name, "chain_order": g.order().to_string(), "closure_order": bfs}));
    }
    let mut grass = Vec::new();
    for q in [2, 3] {
        let field = f(q)?;
        for n in 1..=4 {
            let span = oracle::subspace_counts_by_span(&field, n);
            for (k, &want) in span.iter().enumerate() {
                let formula = Grassmannian::new(&field, n, k).count();
                let listed = enumerate_grassmannian(&field, n, k, budget)?.len() as u128;
                let same = formula == want && listed == want;
                ok &= same;
                grass.push(json!({"q": q, "n": n, "k": k, "span_count": want.to_string(), "enumerated": listed.to_string()}));
            }
        }
    }
    Ok((ok, json!({"groups": groups, "grassmannians": grass})))
}
