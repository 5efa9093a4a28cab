use std::path::Path;
use std::time::Instant;

use fanolab::cubic_model::{sigma_singular_points, Instance};
use fanolab::fano_charts::{
    equivariance_check, gamma_local_model, plane_search, residual_line, sample_secants, sample_tangents, Xi,
};
use fanolab::lattice::{self, verify_table, verify_table_row};
use fanolab::polyring::{parse_auto, Poly, Rational};
use fanolab::singclass::{classify_poly, milnor_number, wall_rows, wall_table, MilnorNumber, SingularityKind, DEFAULT_MU_MAX};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::Report;
use crate::source::{self, Loaded};
use crate::{Common, InputError};

fn config(common: &Common, extra: Value) -> Value {
    let mut v = serde_json::to_value(common).expect("config serializes");
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn kind_report(p: &Poly<Rational>, jet_order: u32) -> Result<Value, InputError> {
    let st = classify_poly(p, jet_order)?;
    let mu = milnor_number(p, DEFAULT_MU_MAX);
    Ok(json!({
        "kind": st.kind,
        "corank": st.certificate.corank,
        "milnor": mu,
        "weights": st.certificate.weights,
        "jet_order_used": jet_order,
        "certificate": st.certificate,
    }))
}

fn milnor_agrees(kind: SingularityKind, mu: &MilnorNumber) -> bool {
    match (kind.milnor(), mu) {
        (Some(k), MilnorNumber::Finite { mu }) => k == *mu,
        (None, _) => true,
        _ => false,
    }
}

pub fn classify(poly: Option<&str>, common: &Common) -> Result<Report, InputError> {
    let mut r = Report::new("classify", config(common, json!({ "poly": poly })));
    let start = Instant::now();
    match poly {
        Some(text) => {
            let p = parse_auto(text)?;
            r.provenance = json!({ "source": "inline", "poly": p.to_string() });
            let st = classify_poly(&p, common.jet_order)?;
            let mu = milnor_number(&p, DEFAULT_MU_MAX);
            r.check("milnor oracle agrees with the type", milnor_agrees(st.kind, &mu), json!({ "kind": st.kind, "milnor": mu }));
            r.result = kind_report(&p, common.jet_order)?;
        }
        None => {
            let loaded = match source::load(common)? {
                Ok(l) => l,
                Err(e) => {
                    r.check("sampling", false, e);
                    return Ok(r);
                }
            };
            r.provenance = loaded.provenance.clone();
            let germ = loaded.instance.threefold()?.affine_germ()?;
            let st = classify_poly(&germ, common.jet_order)?;
            let mu = milnor_number(&germ, DEFAULT_MU_MAX);
            r.check(
                "type at p matches the claim",
                st.kind == loaded.instance.claimed_type,
                json!({ "claimed": loaded.instance.claimed_type, "computed": st.kind }),
            );
            r.check("milnor oracle agrees with the type", milnor_agrees(st.kind, &mu), &mu);
            r.result = kind_report(&germ, common.jet_order)?;
            r.result["germ"] = json!(germ.to_string());
        }
    }
    r.time("classify", start);
    Ok(r)
}

/// The type of the fourfold at `p`, and of the surface germ, for a threefold of type `A_i`.
fn expected_type(claimed: SingularityKind) -> Result<SingularityKind, InputError> {
    match claimed {
        SingularityKind::A(2) => Ok(SingularityKind::D(4)),
        SingularityKind::A(3) => Ok(SingularityKind::E(6)),
        SingularityKind::A(4) => Ok(SingularityKind::E(8)),
        other => Err(InputError(format!("claimed type must be A2, A3 or A4, not {other}"))),
    }
}

fn sigma_point(inst: &Instance) -> Result<Vec<Rational>, InputError> {
    inst.sigma_point
        .clone()
        .ok_or_else(|| InputError("instance has no sigma_point (a rational smooth point of Sigma)".into()))
}

fn gamma_pipeline(loaded: &Loaded, jet_order: u32) -> Result<Report, InputError> {
    let inst = &loaded.instance;
    let expected = expected_type(inst.claimed_type)?;
    let point = sigma_point(inst)?;
    let mut r = Report::new("gamma", Value::Null);
    r.provenance = loaded.provenance.clone();

    let t = Instant::now();
    let germ = inst.threefold()?.affine_germ()?;
    let c3 = classify_poly(&germ, jet_order)?;
    r.check(
        "threefold type at p",
        c3.kind == inst.claimed_type,
        json!({ "claimed": inst.claimed_type, "computed": c3.kind, "milnor": milnor_number(&germ, DEFAULT_MU_MAX) }),
    );
    let y = inst.fourfold()?;
    let c4 = classify_poly(&y.affine_germ_at_p()?, jet_order)?;
    r.check("fourfold type at p", c4.kind == expected, json!({ "expected": expected, "computed": c4.kind }));
    r.time("classify", t);

    let t = Instant::now();
    let sigma = sigma_singular_points(&y, jet_order)?;
    let wall = wall_table(expected)?;
    r.check(
        "singularities of Sigma follow the table",
        sigma.unresolved.is_none() && sigma.multiset == wall,
        json!({ "expected": fanolab::singclass::format_multiset(&wall), "computed": sigma.multiset_label }),
    );
    r.time("sigma", t);

    let t = Instant::now();
    let result = gamma_local_model(&y, &point, jet_order);
    r.time("gamma", t);
    match result {
        Ok(g) => {
            r.check("surface germ type", g.singularity.kind == expected, json!({ "expected": expected, "computed": g.singularity.kind }));
            r.check(
                "surface germ milnor number",
                expected.milnor().map(|m| MilnorNumber::Finite { mu: m }) == Some(g.milnor.clone()),
                &g.milnor,
            );
            r.result = json!({
                "instance": loaded.provenance,
                "center_point": point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "gamma_poly": g.gamma,
                "classified_type": g.singularity.kind,
                "jet_order": jet_order,
                "expected_type": expected,
                "milnor": g.milnor,
                "certificate": g.singularity.certificate,
                "chart_equation": g.chart_equation,
                "sigma": sigma,
            });
        }
        Err(e) => {
            r.check("surface germ type", false, e.to_string());
            r.result = json!({ "instance": loaded.provenance, "sigma": sigma });
        }
    }
    Ok(r)
}

fn with_loaded(name: &str, common: &Common, extra: Value, f: impl FnOnce(&Loaded) -> Result<Report, InputError>) -> Result<Report, InputError> {
    let mut r = Report::new(name, config(common, extra));
    match source::load(common)? {
        Ok(l) => {
            let sub = f(&l)?;
            r.provenance = sub.provenance;
            r.checks = sub.checks;
            r.pass = sub.pass;
            r.result = sub.result;
            r.timings_ms = sub.timings_ms;
        }
        Err(e) => r.check("sampling", false, e),
    }
    Ok(r)
}

pub fn gamma(common: &Common) -> Result<Report, InputError> {
    with_loaded("gamma", common, json!({}), |l| gamma_pipeline(l, common.jet_order))
}

fn plane_pipeline(loaded: &Loaded, primes: &[u32]) -> Result<Report, InputError> {
    let mut r = Report::new("plane-check", Value::Null);
    r.provenance = loaded.provenance.clone();
    let y = loaded.instance.fourfold()?;
    let t = Instant::now();
    let found: Vec<_> = primes
        .par_iter()
        .map(|&q| plane_search(&y, q).map_err(InputError::from))
        .collect::<Result<_, _>>()?;
    r.time("search", t);
    let mut out = Vec::new();
    for s in found {
        let lines: Vec<Value> = s
            .lines
            .iter()
            .map(|[u, v]| {
                let six = |x: &[u32]| std::iter::once(0).chain(x.iter().copied()).collect::<Vec<u32>>();
                json!({ "point_a": six(u), "point_b": six(v) })
            })
            .collect();
        r.check(
            format!("no plane through p over F_{}", s.q),
            s.lines.is_empty(),
            json!({ "lines": lines.len(), "caveats": s.caveats }),
        );
        out.push(json!({ "q": s.q, "sigma_points": s.sigma_points, "lines": lines, "caveats": s.caveats }));
    }
    r.result = json!({ "instance": loaded.provenance, "searches": out });
    Ok(r)
}

pub fn plane_check(common: &Common) -> Result<Report, InputError> {
    with_loaded("plane-check", common, json!({}), |l| plane_pipeline(l, &common.primes))
}

fn equivariance_pipeline(loaded: &Loaded, count: usize, seed: u64) -> Result<Report, InputError> {
    let mut r = Report::new("equivariance", Value::Null);
    r.provenance = loaded.provenance.clone();
    let y = loaded.instance.fourfold()?;
    let known = loaded.instance.sigma_point.as_deref();
    let n_tan = count / 5;
    let t = Instant::now();
    let mut xs = sample_secants(&y, known, seed, count - n_tan)?;
    xs.extend(sample_tangents(&y, known, seed, n_tan)?);
    r.time("sample", t);
    let t = Instant::now();
    let results: Vec<_> = xs
        .par_iter()
        .map(|xi| {
            let rep = equivariance_check(&y, xi);
            let line = residual_line(&y, xi).ok().map(|l| serde_json::to_value(&l.line).expect("line"));
            (matches!(xi, Xi::Tangent { .. }), rep, line)
        })
        .collect();
    r.time("check", t);
    let mut items = Vec::new();
    let (mut on_y, mut meets, mut eq, mut through) = (0, 0, 0, 0);
    let mut errors = Vec::new();
    for (tangent, rep, line) in results {
        match rep {
            Ok(e) => {
                on_y += usize::from(e.on_fourfold);
                meets += usize::from(e.meets_cone);
                eq += usize::from(e.equivariant);
                through += usize::from(e.through_p);
                items.push(json!({ "tangent": tangent, "report": e, "residual_line": line }));
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let n = xs.len();
    r.check("no degenerate samples", errors.is_empty(), &errors);
    r.check("residual lines lie on Y", on_y == n, json!({ "ok": on_y, "of": n }));
    r.check("residual lines meet the cone at xi", meets == n, json!({ "ok": meets, "of": n }));
    r.check("residual line commutes with sigma", eq == n, json!({ "ok": eq, "of": n }));
    r.result = json!({
        "instance": loaded.provenance,
        "secants": n - n_tan,
        "tangents": n_tan,
        "through_p": through,
        "samples": items,
    });
    Ok(r)
}

pub fn equivariance(count: usize, common: &Common) -> Result<Report, InputError> {
    if count == 0 {
        return Err(InputError("--count must be positive".into()));
    }
    with_loaded("equivariance", common, json!({ "count": count }), |l| {
        equivariance_pipeline(l, count, common.seed)
    })
}

fn root_determinants() -> (bool, Value) {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut push = |name: String, l: lattice::IntegralLattice, want: i64| {
        let got = l.det();
        ok &= got == want.into();
        rows.push(json!({ "lattice": name, "det": got.to_string(), "expected": want }));
    };
    for n in 1..=8 {
        push(format!("A{n}"), lattice::a(n).expect("valid"), n as i64 + 1);
    }
    for n in 4..=8 {
        push(format!("D{n}"), lattice::d(n).expect("valid"), 4);
    }
    for (n, want) in [(6, 3), (7, 2), (8, 1)] {
        push(format!("E{n}"), lattice::e(n).expect("valid"), want);
    }
    (ok, Value::Array(rows))
}

fn lattice_report(only: Option<u32>) -> Result<Report, InputError> {
    let mut r = Report::new("lattice-table", Value::Null);
    let t = Instant::now();
    let rows = match only {
        Some(i) => vec![verify_table_row(i)?],
        None => verify_table(),
    };
    let mut table = serde_json::Map::new();
    for row in &rows {
        r.check(
            format!("i = {}: |disc| = |det| and rank T <= rank R", row.i),
            row.pass(),
            json!({ "rank_t": row.t.rank, "rank_r": row.r.rank }),
        );
        table.insert(row.i.to_string(), serde_json::to_value(row).expect("row"));
    }
    let (ok, dets) = root_determinants();
    r.check("root lattice determinants", ok, &dets);
    r.time("table", t);
    r.result = Value::Object(table);
    Ok(r)
}

pub fn lattice_table(common: &Common) -> Result<Report, InputError> {
    let mut r = lattice_report(common.i)?;
    r.config = config(common, json!({}));
    Ok(r)
}

/// Evaluates a label such as `A1+D_{n-2}` or `3A1` at `n`.
fn eval_label(label: &str, n: u32) -> Option<Vec<SingularityKind>> {
    if label == "smooth" {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for part in label.split('+') {
        let part = part.replace("_{n-2}", &(n - 2).to_string());
        let digits = part.chars().take_while(char::is_ascii_digit).count();
        let count: usize = if digits == 0 { 1 } else { part[..digits].parse().ok()? };
        let body = &part[digits..];
        let kind = if body == "D3" { SingularityKind::A(3) } else { body.parse().ok()? };
        out.extend(std::iter::repeat(kind).take(count));
    }
    out.sort();
    Some(out)
}

fn wall_report(max_n: u32) -> Result<Report, InputError> {
    if max_n < 5 {
        return Err(InputError("--max-n must be at least 5".into()));
    }
    let mut r = Report::new("wall", json!({ "max_n": max_n }));
    let t = Instant::now();
    let mut rows = Vec::new();
    for row in wall_rows(max_n) {
        let mut ok = true;
        let mut checked = Vec::new();
        for (k, ms) in &row.checked {
            let n = match k {
                SingularityKind::A(n) | SingularityKind::D(n) | SingularityKind::E(n) => *n,
                _ => 0,
            };
            ok &= eval_label(&row.t_hat, n).as_ref() == Some(ms);
            checked.push(json!({ "t": k, "t_hat": fanolab::singclass::format_multiset(ms) }));
        }
        r.check(format!("row {}", row.t), ok, json!({ "t_hat": row.t_hat, "instances": checked.len() }));
        rows.push(json!({ "t": row.t, "t_hat": row.t_hat, "checked": checked }));
    }
    r.time("table", t);
    r.result = json!({ "rows": rows });
    Ok(r)
}

pub fn wall(max_n: u32) -> Result<Report, InputError> {
    wall_report(max_n)
}

pub fn report_all(corpus: Option<&Path>, count: usize, common: &Common) -> Result<Report, InputError> {
    let mut r = Report::new("report-all", config(common, json!({ "corpus": corpus, "count": count })));
    let loaded: Vec<(String, Loaded)> = match corpus {
        Some(dir) => source::corpus_files(dir)?
            .iter()
            .map(|p| {
                let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                source::from_file(p).map(|l| (name, l))
            })
            .collect::<Result<_, _>>()?,
        None => match source::load(common)? {
            Ok(l) => vec![("instance".to_string(), l)],
            Err(e) => {
                r.check("sampling", false, e);
                return Ok(r);
            }
        },
    };
    let runs: Vec<Result<(String, Report, Report, Report), InputError>> = loaded
        .par_iter()
        .map(|(name, l)| {
            Ok((
                name.clone(),
                gamma_pipeline(l, common.jet_order)?,
                plane_pipeline(l, &common.primes)?,
                equivariance_pipeline(l, count, common.seed)?,
            ))
        })
        .collect();
    let mut results = Vec::new();
    for run in runs {
        let (name, g, p, e) = run?;
        results.push(json!({ "name": name, "gamma": g.result, "plane_check": p.result, "equivariance": e.result }));
        r.absorb(&format!("{name}/gamma"), g);
        r.absorb(&format!("{name}/plane-check"), p);
        r.absorb(&format!("{name}/equivariance"), e);
    }
    let w = wall_report(12)?;
    let wall_result = w.result.clone();
    r.absorb("wall", w);
    let lt = lattice_report(None)?;
    let lattice_result = lt.result.clone();
    r.absorb("lattice-table", lt);
    r.result = json!({ "instances": results, "wall": wall_result, "lattice_table": lattice_result });
    Ok(r)
}
