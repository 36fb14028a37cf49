use std::fs;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};

use geomforge::budget::Budget;
use geomforge::building::{
    apartment, check_root_system, extract_tits_system, projective_flag_complex, root_commutator_correspondence,
    standard_frame, verify_tits, RootSystemAn,
};
use geomforge::classical::{
    build_linear, check_moufang, check_steinberg_field, check_steinberg_quaternions, classical_form, dieudonne_det,
    moufang_set_projective_line, parse_named_group, reconstruct_lines, LinearKind,
};
use geomforge::error::{Error, Result};
use geomforge::forms::{reduce_slightly_degenerate, witt_decompose, FormDescriptor, PseudoQuadraticForm};
use geomforge::matvec::Mat;
use geomforge::permgrp::{iso_small, IsoResult};
use geomforge::polar::{a32_oriflamme_certificate, build_a32, build_polar, PolarKind, PolarSpace};
use geomforge::projgeom::{build_pg, PointLineGeometry};
use geomforge::scalar::{quat_norm, DivisionRing, FiniteField, Quaternions};
use geomforge::verify::{run_criterion, CRITERIA};

use crate::args::*;
use crate::report::{ExitKind, RunReport, SCHEMA};

struct Outcome {
    passed: bool,
    results: Value,
    summary: Vec<String>,
    budget_hit: bool,
}

impl Outcome {
    fn ok(results: Value) -> Self {
        Outcome { passed: true, results, summary: Vec::new(), budget_hit: false }
    }

    fn check(passed: bool, results: Value) -> Self {
        Outcome { passed, results, summary: Vec::new(), budget_hit: false }
    }
}

fn command_name(c: &Command) -> String {
    let sub = |v: Value| v.as_object().and_then(|o| o.keys().next().cloned()).unwrap_or_default();
    let json = serde_json::to_value(c).unwrap_or(Value::Null);
    match c {
        Command::Verify(_) => "verify".into(),
        _ => {
            let top = sub(json.clone());
            let inner = json.get(&top).cloned().map(sub).unwrap_or_default();
            format!("{top} {inner}")
        }
    }
}

fn inputs(c: &Command) -> Value {
    let v = serde_json::to_value(c).unwrap_or(Value::Null);
    let top = v.as_object().and_then(|o| o.values().next().cloned()).unwrap_or(Value::Null);
    match (c, top.as_object()) {
        (Command::Verify(_), _) => top,
        (_, Some(o)) => o.values().next().cloned().unwrap_or(Value::Null),
        _ => top,
    }
}

pub fn run(cli: &Cli) -> RunReport {
    let command = command_name(&cli.command);
    let inputs = inputs(&cli.command);
    let budget = match &cli.budget {
        Some(s) => Budget::parse(s),
        None => Budget::from_env(),
    };
    let start = Instant::now();
    let (outcome, budget_json) = match budget {
        Ok(b) => (dispatch(&cli.command, &b, cli.seed), serde_json::to_value(&b).ok()),
        Err(e) => (Err(e), None),
    };
    let timing_ms = cli.timing.then(|| start.elapsed().as_millis());
    match outcome {
        Ok(o) => RunReport {
            schema: SCHEMA,
            command,
            inputs,
            results: o.results,
            passed: o.passed,
            exit: if o.budget_hit {
                ExitKind::Budget
            } else if o.passed {
                ExitKind::Ok
            } else {
                ExitKind::CheckFailed
            },
            error: None,
            budget: budget_json,
            timing_ms,
            summary: o.summary,
        },
        Err(e) => RunReport {
            schema: SCHEMA,
            command,
            inputs,
            results: Value::Null,
            passed: false,
            exit: ExitKind::of_error(&e),
            error: Some(e.to_string()),
            budget: budget_json,
            timing_ms,
            summary: Vec::new(),
        },
    }
}

fn dispatch(c: &Command, budget: &Budget, seed: u64) -> Result<Outcome> {
    match c {
        Command::Geometry(g) => geometry(g, budget),
        Command::Polar(p) => polar(p, budget),
        Command::Forms(f) => forms(f, budget),
        Command::Group(g) => group(g, budget),
        Command::Classical(k) => classical(k, budget, seed),
        Command::Building(b) => building(b, budget),
        Command::Verify(v) => verify(v, budget, seed),
    }
}

fn field(q: u32) -> Result<FiniteField> {
    FiniteField::with_order(q)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("missing --{flag}")))
}

fn geometry(c: &GeometryCmd, budget: &Budget) -> Result<Outcome> {
    match c {
        GeometryCmd::Build { n, q, out } => {
            let pg = build_pg(*n, &field(*q)?, budget)?;
            let pl = pg.point_line();
            let counts: Vec<usize> = (1..=*n).map(|k| pg.grassmannian(k).len()).collect();
            if let Some(path) = out {
                write(path, &pl.to_text())?;
            }
            Ok(Outcome::ok(json!({
                "points": pl.num_points(),
                "lines": pl.num_lines(),
                "subspaces_by_dimension": counts,
                "points_per_line": pl.lines().first().map_or(0, Vec::len),
            })))
        }
        GeometryCmd::Check(a) => {
            let g = match (&a.file, a.n, a.q) {
                (Some(path), _, _) => PointLineGeometry::parse_text(&read(path)?)?,
                (None, Some(n), Some(q)) => build_pg(n, &field(q)?, budget)?.point_line(),
                _ => return Err(Error::Parse("give --file or both --n and --q".into())),
            };
            let r = g.check_pg_axioms();
            let summary = r
                .results
                .iter()
                .map(|x| format!("{}: {}", x.axiom, if x.passed { "pass" } else { "fail" }))
                .collect();
            Ok(Outcome {
                passed: r.all_pass(),
                results: json!({"points": g.num_points(), "lines": g.num_lines(), "axioms": r}),
                summary,
                budget_hit: false,
            })
        }
    }
}

fn load_form(path: &Path) -> Result<PseudoQuadraticForm> {
    FormDescriptor::from_json(&read(path)?)?.build()
}

fn polar_space(src: &FormSource, budget: &Budget) -> Result<PolarSpace> {
    if src.a32 {
        return build_a32(&field(need(src.q, "q")?)?, budget);
    }
    let pq = match (&src.file, &src.family) {
        (Some(path), _) => load_form(path)?,
        (None, Some(fam)) => classical_form(fam, need(src.n, "n")?, need(src.q, "q")?)?,
        _ => return Err(Error::Parse("give --file, --family with --n and --q, or --a32 with --q".into())),
    };
    build_polar(&pq, budget)
}

fn polar(c: &PolarCmd, budget: &Budget) -> Result<Outcome> {
    match c {
        PolarCmd::Build(src) => {
            let ps = polar_space(src, budget)?;
            let g = &ps.geometry;
            Ok(Outcome::ok(json!({
                "points": g.num_points(),
                "lines": g.num_lines(),
                "points_per_line": g.lines().first().map_or(0, Vec::len),
                "witt_index": ps.witt_index(),
            })))
        }
        PolarCmd::Check(src) => {
            let ps = polar_space(src, budget)?;
            let r = ps.check_axioms(budget)?;
            let summary = vec![format!("kind: {:?}", r.kind)];
            Ok(Outcome {
                passed: r.kind != PolarKind::NotPolar,
                results: json!({"points": ps.geometry.num_points(), "lines": ps.geometry.num_lines(), "report": r}),
                summary,
                budget_hit: false,
            })
        }
        PolarCmd::Oriflamme { q } => {
            let cert = a32_oriflamme_certificate(&field(*q)?, budget)?;
            Ok(Outcome::check(cert.isomorphic, json!(cert)))
        }
    }
}

fn forms(c: &FormsCmd, budget: &Budget) -> Result<Outcome> {
    match c {
        FormsCmd::Classify(f) => {
            let pq = load_form(&f.file)?;
            let cl = pq.param().classify()?;
            Ok(Outcome::ok(json!({"dim": pq.dim(), "classification": cl})))
        }
        FormsCmd::Witt(f) => {
            let pq = load_form(&f.file)?;
            let wd = witt_decompose(&pq, budget)?;
            Ok(Outcome::ok(json!({
                "dim": pq.dim(),
                "index": wd.index,
                "anisotropic_dim": wd.anisotropic_basis.len(),
                "decomposition": wd,
            })))
        }
        FormsCmd::Reduce(f) => {
            let pq = load_form(&f.file)?;
            let red = reduce_slightly_degenerate(&pq)?;
            let r = &red.reduced;
            let field = r.field();
            Ok(Outcome::ok(json!({
                "dim": pq.dim(),
                "radical_dim": red.radical().dim(),
                "reduced_dim": r.dim(),
                "reduced_nondegenerate": r.is_nondegenerate(),
                "complement": red.complement,
                "reduced_h_gram": r.h_gram().to_text(field).lines().collect::<Vec<_>>(),
                "reduced_lambda": r.param().lambda(),
            })))
        }
        FormsCmd::Paramcheck(f) => {
            let pq = load_form(&f.file)?;
            let r = pq.param().check();
            Ok(Outcome::check(r.all_pass(), json!(r)))
        }
    }
}

fn group(c: &GroupCmd, budget: &Budget) -> Result<Outcome> {
    let load = |s: &str| parse_named_group(s, budget);
    match c {
        GroupCmd::Order(a) => {
            let g = load(&a.group)?;
            Ok(Outcome::ok(json!({"group": a.group, "degree": g.degree(), "order": g.order().to_string()})))
        }
        GroupCmd::Transitivity(a) => {
            let g = load(&a.group)?;
            Ok(Outcome::ok(json!({
                "group": a.group,
                "degree": g.degree(),
                "orbits": g.orbits().len(),
                "transitivity_degree": g.transitivity_degree(),
            })))
        }
        GroupCmd::Perfect(a) => {
            let g = load(&a.group)?;
            let series: Vec<String> = g.derived_series_orders().iter().map(u128::to_string).collect();
            Ok(Outcome::ok(json!({"group": a.group, "perfect": g.is_perfect(), "derived_series": series})))
        }
        GroupCmd::Simple(a) => {
            let g = load(&a.group)?;
            Ok(Outcome::ok(json!({"group": a.group, "order": g.order().to_string(), "simple": g.is_simple(budget)?})))
        }
        GroupCmd::Iso { a, b } => {
            let g = load(a)?;
            let h = load(b)?;
            let r = iso_small(&g, &h, budget)?;
            let detail = match &r {
                IsoResult::Isomorphic(iso) => json!({
                    "isomorphic": true,
                    "certificate_verified": iso.verify_words()?,
                    "generator_images": iso.target_images.iter().map(|p| p.to_text()).collect::<Vec<_>>(),
                }),
                IsoResult::NotIsomorphic(reason) => json!({"isomorphic": false, "reason": reason}),
            };
            let mut out = json!({"a": a, "b": b, "orders": [g.order().to_string(), h.order().to_string()]});
            out.as_object_mut().unwrap().extend(detail.as_object().unwrap().clone());
            Ok(Outcome::ok(out))
        }
    }
}

fn parse_matrix<R: DivisionRing>(ring: &R, inline: &Option<String>, file: &Option<std::path::PathBuf>) -> Result<Mat<R::Elem>> {
    let text = match (inline, file) {
        (Some(s), _) => s.replace(';', "\n"),
        (None, Some(p)) => read(p)?,
        _ => return Err(Error::Parse("give --matrix or --file".into())),
    };
    Mat::parse_text(ring, &text)
}

fn singular_as_zero<E>(d: Result<E>, zero: E) -> Result<E> {
    match d {
        Err(Error::Singular) => Ok(zero),
        other => other,
    }
}

fn classical(c: &ClassicalCmd, budget: &Budget, seed: u64) -> Result<Outcome> {
    match c {
        ClassicalCmd::Build(a) => {
            let kind = LinearKind::parse(&a.kind)?;
            let g = build_linear(kind, a.n, &field(a.q)?, budget)?;
            Ok(Outcome::ok(json!({
                "group": format!("{}_{}({})", kind.name(), a.n, a.q),
                "order": g.order().to_string(),
                "matrices": g.matrices.len(),
                "degree": g.group.degree(),
                "acts_on": if kind.is_projective() { "points" } else { "nonzero vectors" },
                "transitivity_degree": g.group.transitivity_degree(),
            })))
        }
        ClassicalCmd::Steinberg { n, q, quaternions, samples } => {
            let r = if *quaternions {
                check_steinberg_quaternions(*n, *samples, seed, budget)?
            } else {
                check_steinberg_field(&field(need(*q, "q")?)?, *n, budget)?
            };
            Ok(Outcome::check(r.all_pass(), json!(r)))
        }
        ClassicalCmd::Det { scalars, matrix, file } => {
            let s = scalars.trim();
            if s.eq_ignore_ascii_case("h") {
                let h = Quaternions;
                let m = parse_matrix(&h, matrix, file)?;
                let d = singular_as_zero(dieudonne_det(&h, &m), h.zero())?;
                Ok(Outcome::ok(json!({
                    "scalars": "H(Q)",
                    "representative": h.format_elem(&d),
                    "norm": quat_norm(&d).to_string(),
                })))
            } else {
                let q: u32 = s
                    .trim_start_matches("GF(")
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad scalars '{s}'")))?;
                let f = field(q)?;
                let m = parse_matrix(&f, matrix, file)?;
                let d = singular_as_zero(dieudonne_det(&f, &m), f.zero())?;
                Ok(Outcome::ok(json!({"scalars": format!("GF({q})"), "determinant": f.format_elem(&d)})))
            }
        }
        ClassicalCmd::Moufang { q, level } => {
            let ms = moufang_set_projective_line(&field(*q)?, LinearKind::parse(level)?)?;
            let r = check_moufang(&ms, budget)?;
            Ok(Outcome::check(r.all_pass(), json!(r)))
        }
        ClassicalCmd::Reconstruct(a) => {
            let kind = LinearKind::parse(&a.kind)?;
            if !kind.is_projective() {
                return Err(Error::InvalidInput("reconstruction needs a projective kind (pel, psl or pgl)".into()));
            }
            let f = field(a.q)?;
            let g = build_linear(kind, a.n, &f, budget)?;
            let geo = reconstruct_lines(&g.group, budget)?;
            let pg = build_pg(a.n - 1, &f, budget)?.point_line();
            let mut got = geo.lines().to_vec();
            let mut want = pg.lines().to_vec();
            got.sort();
            want.sort();
            let exact = got == want;
            Ok(Outcome::check(
                exact,
                json!({"points": geo.num_points(), "lines": got.len(), "matches_projective_space": exact}),
            ))
        }
    }
}

fn building(c: &BuildingCmd, budget: &Budget) -> Result<Outcome> {
    match c {
        BuildingCmd::Flags { n, q, edges } => {
            let pg = build_pg(*n, &field(*q)?, budget)?;
            let (delta, verts) = projective_flag_complex(&pg, budget)?;
            if let Some(path) = edges {
                write(path, &delta.edge_list())?;
            }
            Ok(Outcome::check(
                delta.is_pure() && delta.is_chamber_connected(),
                json!({
                    "vertices": verts.len(),
                    "chambers": delta.chambers().len(),
                    "rank": delta.rank(),
                    "pure": delta.is_pure(),
                    "chamber_connected": delta.is_chamber_connected(),
                }),
            ))
        }
        BuildingCmd::Apartment { n, q } => {
            let f = field(*q)?;
            let ap = apartment(&f, &standard_frame(&f, n + 1), budget)?;
            let vertices = ap.vertices.len();
            let chambers = ap.complex.chambers().len();
            let coxeter = ap.is_coxeter_complex();
            let factorial: usize = (1..=n + 1).product();
            let passed = vertices == (1 << (n + 1)) - 2 && chambers == factorial && coxeter;
            Ok(Outcome::check(
                passed,
                json!({"vertices": vertices, "chambers": chambers, "coxeter_complex": coxeter}),
            ))
        }
        BuildingCmd::Tits { n, q } => {
            let ts = extract_tits_system(*n, &field(*q)?, budget)?;
            let r = verify_tits(&ts, budget)?;
            Ok(Outcome::check(r.all_pass(), json!(r)))
        }
        BuildingCmd::Roots { n, q } => {
            let rs = RootSystemAn::new(*n)?;
            let r = check_root_system(&rs);
            let mut passed = r.all_pass();
            let corr = if *n >= 2 {
                let c = root_commutator_correspondence(*n, &field(*q)?)?;
                passed &= c.holds;
                json!(c)
            } else {
                Value::Null
            };
            Ok(Outcome::check(passed, json!({"root_system": r, "commutators": corr})))
        }
    }
}

fn verify(v: &VerifyArgs, budget: &Budget, seed: u64) -> Result<Outcome> {
    if v.suite != "paper" {
        return Err(Error::Parse(format!("unknown suite '{}'", v.suite)));
    }
    let ids: Vec<u8> = if v.criterion.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { v.criterion.clone() };
    if let Some(bad) = ids.iter().find(|i| !CRITERIA.iter().any(|c| c.0 == **i)) {
        return Err(Error::Parse(format!("no criterion {bad}")));
    }
    let results: Vec<_> = ids.into_iter().map(|id| run_criterion(id, budget, seed)).collect();
    let passed = results.iter().all(|r| r.passed);
    let budget_hit = results
        .iter()
        .filter_map(|r| r.error.as_deref())
        .any(|e| e.starts_with("budget exceeded") || e.starts_with("time ceiling"));
    let summary = results.iter().map(|r| r.line()).collect();
    Ok(Outcome { passed, results: json!({"seed": seed, "criteria": results}), summary, budget_hit })
}
