//! Subcommand implementations. Each returns a report and the list of contract
//! violations it found; `main` turns a nonempty list into exit code 3.

use std::io::Read;
use std::path::Path;

use gwconics_core::covmoduli::{
    boundary_check, classification_report, half_twist_identity, DiscriminantPoint, QuadraticPencil,
};
use gwconics_core::cubics::{am_weight_check, cubic_contribution_class, decompose3};
use gwconics_core::dcover::{contribution_class, decompose2_with_table, proof_form_class, valid_triples, DecompositionReport};
use gwconics_core::exactpoly::{Field, NumberField};
use gwconics_core::grassmann::{ctop_sym_power, integrate, sigma};
use gwconics_core::json::{line_to_json, parse_field, parse_line, parse_multipoly, parse_nf, parse_rat, AnyLine, FieldSpec, JsonElem};
use gwconics_core::linegeom::{
    adapt_line, cover_cohomology, expected_generic_splitting, octic_example, octic_twisted_line, random_line,
    splitting_type, LineData,
};
use gwconics_core::vsc::{gw2_3pt, gw2_insertions, gw2_m_range, Hypersurface, VscTable};
use gwconics_core::{NfElem, Rat};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{Report, Table};
use crate::{CliError, Command, Ctx, LineSource, Nk, NkOrGrid, PencilArgs};

type Outcome = Result<(Report, Vec<String>), CliError>;

const INDEX_NOTE: &str = "right-hand index of the degree-2 formula read as m";

fn ok(report: Report) -> Outcome {
    Ok((report, Vec::new()))
}

fn parse_rat_str(s: &str) -> Result<Rat, CliError> {
    s.trim().parse::<Rat>().map_err(|e| CliError::Usage(format!("{s:?}: {e}")))
}

fn parse_list(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',').map(parse_rat_str).collect()
}

fn parse_triple_rat(s: &str) -> Result<[Rat; 3], CliError> {
    parse_list(s)?.try_into().map_err(|_| CliError::Usage(format!("{s:?}: expected three comma-separated values")))
}

fn parse_abc(s: &str) -> Result<[u32; 3], CliError> {
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| CliError::Usage(format!("{s:?}: {e}"))))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|_| CliError::Usage(format!("{s:?}: expected a,b,c")))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(x)?)
}

/// `(N, k)` pairs of the sweep in a fixed order.
fn pairs(ctx: &Ctx, g: &NkOrGrid, min_excess: i64) -> Result<Vec<Hypersurface>, CliError> {
    match (g.n, g.k, g.n_max) {
        (Some(n), Some(k), _) => Ok(vec![ctx.surface(n, k)?]),
        (None, None, Some(n_max)) => {
            let mut out = Vec::new();
            for n in 4..=n_max {
                for k in 2..=2 * n {
                    let s = Hypersurface { n, k };
                    if s.in_standard_range() && s.excess() >= min_excess {
                        out.push(s);
                    }
                }
            }
            Ok(out)
        }
        _ => Err(CliError::Usage("give --N and --k, or --n-max".into())),
    }
}

pub fn run(ctx: &Ctx, cmd: &Command) -> Outcome {
    match cmd {
        Command::Lines(g) => lines(ctx, g),
        Command::Vsc { nk, d } => vsc(ctx, *nk, *d),
        Command::Gw2 { nk, m } => gw2(ctx, *nk, *m),
        Command::Decompose2 { grid, abc, gw } => decompose2(ctx, grid, abc.as_deref(), gw.as_deref()),
        Command::DcoverClass(nk) => {
            ctx.surface(nk.n, nk.k)?;
            ok(Report::single(to_value(&contribution_class(nk.n, nk.k))?))
        }
        Command::ProofFormCheck(g) => proof_form_check(ctx, g),
        Command::Splitting(src) => splitting(ctx, src),
        Command::AdaptLine { input, octic, twisted } => adapt(input.as_deref(), *octic, *twisted),
        Command::CoverCohomology { line, pencil } => cover(ctx, line, pencil),
        Command::Stability(p) => {
            let pencil = QuadraticPencil::from_triples(parse_triple_rat(&p.phi1)?, parse_triple_rat(&p.phi2)?)?;
            ok(Report::single(to_value(&classification_report(&pencil)?)?))
        }
        Command::Boundary { d } => {
            let [d0, d1, d2] = parse_triple_rat(d)?;
            let point = DiscriminantPoint { d0, d1, d2 };
            let on = boundary_check(&point)?;
            ok(Report::single(json!({
                "D": [&point.d0, &point.d1, &point.d2],
                "value": point.boundary_value(),
                "boundary": on,
            })))
        }
        Command::HalfTwist { lambda, nu } => {
            let (lambda, nu) = (parse_rat_str(lambda)?, parse_rat_str(nu)?);
            let h = half_twist_identity(&lambda, &nu)?;
            let violations = if h.holds { vec![] } else { vec!["half-twist identity fails".to_string()] };
            let json = json!({"lambda": lambda, "nu": nu, "p": h.p, "q": h.q, "delta": h.delta, "holds": h.holds});
            Ok((Report::single(json), violations))
        }
        Command::CubicClass { k } => ok(Report::single(to_value(&cubic_contribution_class(*k)?)?)),
        Command::CubicDecompose { nk, abc, gw3 } => {
            let report = decompose3(nk.n, nk.k, parse_abc(abc)?, parse_rat_str(gw3)?)?;
            ok(Report::single(to_value(&report)?))
        }
        Command::AmCheck => am_check(),
        Command::Selftest => selftest(ctx),
    }
}

fn line_count(s: Hypersurface) -> (i64, Rat) {
    let dim = 2 * i64::from(s.n) - i64::from(s.k) - 5;
    if dim < 0 {
        return (dim, Rat::zero());
    }
    let top = 2 * (s.n - 2);
    let integrand = ctop_sym_power(s.k).mul_truncated(&sigma(1).pow_truncated(dim as u32, top), top);
    (dim, integrate(&integrand, s.n))
}

fn lines(ctx: &Ctx, g: &NkOrGrid) -> Outcome {
    let surfaces = pairs(ctx, g, i64::MIN)?;
    let rows: Vec<(Hypersurface, i64, Rat)> = surfaces
        .par_iter()
        .map(|&s| {
            let (dim, v) = line_count(s);
            (s, dim, v)
        })
        .collect();
    let json_rows: Vec<Value> =
        rows.iter().map(|(s, dim, v)| json!({"N": s.n, "k": s.k, "lines": v, "dim_G": dim})).collect();
    let table = Table {
        header: ["N", "k", "lines", "dim_G"].map(String::from).to_vec(),
        rows: rows.iter().map(|(s, d, v)| vec![s.n.to_string(), s.k.to_string(), v.to_string(), d.to_string()]).collect(),
    };
    let json = if g.n_max.is_some() { json!({ "rows": json_rows }) } else { json_rows[0].clone() };
    ok(Report { json, table: Some(table) })
}

fn vsc(ctx: &Ctx, nk: Nk, d: u32) -> Outcome {
    if d == 0 {
        return Err(CliError::Usage("--d must be at least 1".into()));
    }
    let s = ctx.surface(nk.n, nk.k)?;
    let (table, _) = ctx.cache.table(s, d)?;
    let mut rows = Vec::new();
    for deg in 1..=d {
        for (m, v) in table.level(deg).unwrap_or(&[]).iter().enumerate() {
            rows.push(vec![deg.to_string(), m.to_string(), v.to_string()]);
        }
    }
    let header = ["d", "m", "L"].map(String::from).to_vec();
    ok(Report { json: to_value(&table)?, table: Some(Table { header, rows }) })
}

fn gw2_row(table: &VscTable, s: Hypersurface, m: i64) -> Result<Value, CliError> {
    let (a, b, c) = gw2_insertions(s, m);
    Ok(json!({"N": s.n, "k": s.k, "m": m, "insertions": [a, b, c], "gw": gw2_3pt(table, m)?}))
}

fn gw2(ctx: &Ctx, nk: Nk, m: Option<i64>) -> Outcome {
    let s = ctx.surface(nk.n, nk.k)?;
    let (table, _) = ctx.cache.table(s, 2)?;
    let ms: Vec<i64> = match m {
        Some(m) => vec![m],
        None => {
            let (lo, hi) = gw2_m_range(s);
            (lo..=hi).collect()
        }
    };
    let rows = ms.iter().map(|&m| gw2_row(&table, s, m)).collect::<Result<Vec<_>, _>>()?;
    let table_rows = rows
        .iter()
        .map(|r| {
            let ins = r["insertions"].as_array().expect("array");
            let ins = ins.iter().map(Value::to_string).collect::<Vec<_>>().join(",");
            vec![r["m"].to_string(), ins, r["gw"].as_str().unwrap_or_default().to_string()]
        })
        .collect();
    let json = match m {
        Some(_) => {
            let mut one = rows[0].clone();
            one["note"] = json!(INDEX_NOTE);
            one
        }
        None => json!({"N": s.n, "k": s.k, "rows": rows, "note": INDEX_NOTE}),
    };
    let header = ["m", "insertions", "gw"].map(String::from).to_vec();
    ok(Report { json, table: Some(Table { header, rows: table_rows }) })
}

fn decomposition_row(r: &DecompositionReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.k.to_string(),
        r.a.to_string(),
        r.b.to_string(),
        r.c.to_string(),
        r.gw.to_string(),
        r.dcover_term.to_string(),
        r.conic_count.to_string(),
    ]
}

fn decompose2(ctx: &Ctx, g: &NkOrGrid, abc: Option<&str>, gw: Option<&str>) -> Outcome {
    let gw = gw.map(parse_rat_str).transpose()?;
    let surfaces = pairs(ctx, g, 0)?;
    let mut jobs = Vec::new();
    for &s in &surfaces {
        let triples = match abc {
            Some(t) => vec![parse_abc(t)?],
            None => valid_triples(s).into_iter().filter(|t| t.contains(&1)).collect(),
        };
        let table = if gw.is_none() && !triples.is_empty() { Some(ctx.cache.table(s, 2)?.0) } else { None };
        jobs.push((s, table, triples));
    }
    let flat: Vec<(Hypersurface, Option<&VscTable>, [u32; 3])> =
        jobs.iter().flat_map(|(s, t, ts)| ts.iter().map(move |&abc| (*s, t.as_ref(), abc))).collect();
    let reports = flat
        .par_iter()
        .map(|&(s, table, abc)| decompose2_with_table(table, s, abc, gw.clone()))
        .collect::<Result<Vec<_>, _>>()?;

    let mut violations = Vec::new();
    for r in &reports {
        for v in r.violations() {
            violations.push(format!("({}, {}, {}, {}, {}): {v}", r.n, r.k, r.a, r.b, r.c));
        }
    }
    let with_note = |r: &DecompositionReport| -> Result<Value, CliError> {
        let mut v = to_value(r)?;
        if r.m.is_some() {
            v["note"] = json!(INDEX_NOTE);
        }
        Ok(v)
    };
    let json = if abc.is_some() && reports.len() == 1 {
        with_note(&reports[0])?
    } else {
        json!({ "rows": reports.iter().map(with_note).collect::<Result<Vec<_>, _>>()? })
    };
    let header = ["N", "k", "a", "b", "c", "gw", "dcover", "conics"].map(String::from).to_vec();
    let table = Table { header, rows: reports.iter().map(decomposition_row).collect() };
    Ok((Report { json, table: Some(table) }, violations))
}

fn proof_form_check(ctx: &Ctx, g: &NkOrGrid) -> Outcome {
    let surfaces = pairs(ctx, g, 0)?;
    if surfaces.iter().any(|s| s.k < s.n) {
        return Err(CliError::Usage("the contribution class needs k >= N".into()));
    }
    let results: Vec<(Hypersurface, bool)> = surfaces
        .par_iter()
        .map(|&s| (s, contribution_class(s.n, s.k).value == proof_form_class(s.n, s.k)))
        .collect();
    let violations =
        results.iter().filter(|(_, ok)| !ok).map(|(s, _)| format!("({}, {}): derivations differ", s.n, s.k)).collect();
    let rows: Vec<Value> = results.iter().map(|(s, ok)| json!({"N": s.n, "k": s.k, "agree": ok})).collect();
    let json = if g.n_max.is_some() { json!({ "rows": rows }) } else { rows[0].clone() };
    let table = Table {
        header: ["N", "k", "agree"].map(String::from).to_vec(),
        rows: results.iter().map(|(s, ok)| vec![s.n.to_string(), s.k.to_string(), ok.to_string()]).collect(),
    };
    Ok((Report { json, table: Some(table) }, violations))
}

/// A loaded line plus the JSON describing where it came from.
enum Loaded {
    Rational(LineData<Rat>, Value),
    NumberField(LineData<NfElem>, FieldSpec, Value),
}

fn octic_line(twisted: bool) -> Result<Loaded, CliError> {
    let poly = octic_example();
    if twisted {
        let kf = NumberField::cyclotomic_power_of_two(8);
        let (p, q) = octic_twisted_line(&kf.generator());
        let lifted = poly.map_coeffs(|c| kf.from_rat(c.clone()));
        let line = adapt_line(&lifted, &p, &q)?;
        Ok(Loaded::NumberField(line, FieldSpec::NumberField(kf), json!("octic, twisted line")))
    } else {
        let unit = |i: usize| (0..7).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect::<Vec<_>>();
        Ok(Loaded::Rational(adapt_line(&poly, &unit(0), &unit(1))?, json!("octic, coordinate line")))
    }
}

fn load_line(ctx: &Ctx, src: &LineSource) -> Result<Loaded, CliError> {
    if let Some(path) = &src.line {
        let source = json!({ "file": path.display().to_string() });
        return Ok(match parse_line(&read_json(path)?)? {
            AnyLine::Rational(l) => Loaded::Rational(l, source),
            AnyLine::NumberField(l) => {
                let spec = FieldSpec::NumberField(l.f[0].coeff(0).field().clone());
                Loaded::NumberField(l, spec, source)
            }
        });
    }
    if src.random {
        let (n, k) = (src.n.expect("required by clap"), src.k.expect("required by clap"));
        ctx.surface(n, k)?;
        let source = json!({ "random": { "seed": src.seed } });
        return Ok(Loaded::Rational(random_line(n, k, src.seed)?, source));
    }
    if src.octic {
        return octic_line(src.twisted);
    }
    Err(CliError::Usage("give --line, --random or --octic".into()))
}

fn splitting_json<F: Field>(line: &LineData<F>, source: Value) -> Result<Value, CliError> {
    let split = splitting_type(line)?;
    Ok(json!({
        "N": line.n,
        "k": line.k,
        "splitting": split.0,
        "display": split.to_string(),
        "source": source,
    }))
}

fn splitting(ctx: &Ctx, src: &LineSource) -> Outcome {
    let mut json = match load_line(ctx, src)? {
        Loaded::Rational(l, s) => splitting_json(&l, s)?,
        Loaded::NumberField(l, _, s) => splitting_json(&l, s)?,
    };
    if src.random {
        let (n, k) = (json["N"].as_u64().unwrap_or(0) as u32, json["k"].as_u64().unwrap_or(0) as u32);
        json["generic"] = json!(expected_generic_splitting(n, k).0);
    }
    ok(Report::single(json))
}

fn adapt(input: Option<&Path>, octic: bool, twisted: bool) -> Outcome {
    if octic {
        return ok(Report::single(match octic_line(twisted)? {
            Loaded::Rational(l, _) => line_to_json(&l, &FieldSpec::Rationals),
            Loaded::NumberField(l, spec, _) => line_to_json(&l, &spec),
        }));
    }
    let path = input.ok_or_else(|| CliError::Usage("give --input or --octic".into()))?;
    let v = read_json(path)?;
    let nvars = v
        .get("nvars")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Usage("input needs \"nvars\"".into()))? as usize;
    let field = parse_field(v.get("field"))?;
    let member = |key: &str| v.get(key).ok_or_else(|| CliError::Usage(format!("input needs {key:?}")));
    let (poly_v, p_v, q_v) = (member("poly")?, member("p")?, member("q")?);
    let json = match &field {
        FieldSpec::Rationals => {
            let elem = |x: &Value| parse_rat(x);
            let poly = parse_multipoly(poly_v, nvars, &elem)?;
            let point = |x: &Value| -> Result<Vec<Rat>, CliError> {
                x.as_array().ok_or_else(|| CliError::Usage("points are arrays".into()))?.iter().map(|c| Ok(parse_rat(c)?)).collect()
            };
            line_to_json(&adapt_line(&poly, &point(p_v)?, &point(q_v)?)?, &field)
        }
        FieldSpec::NumberField(kf) => {
            let elem = |x: &Value| parse_nf(kf, x);
            let poly = parse_multipoly(poly_v, nvars, &elem)?;
            let point = |x: &Value| -> Result<Vec<NfElem>, CliError> {
                x.as_array().ok_or_else(|| CliError::Usage("points are arrays".into()))?.iter().map(|c| Ok(parse_nf(kf, c)?)).collect()
            };
            line_to_json(&adapt_line(&poly, &point(p_v)?, &point(q_v)?)?, &field)
        }
    };
    ok(Report::single(json))
}

fn cover_json<F: JsonElem>(line: &LineData<F>, pencil: &QuadraticPencil<F>) -> Result<Value, CliError> {
    let c = cover_cohomology(line, pencil)?;
    let kernel: Vec<Vec<Value>> = c.kernel_basis.iter().map(|v| v.iter().map(JsonElem::to_json).collect()).collect();
    Ok(json!({"N": line.n, "k": line.k, "h0": c.h0, "h1": c.h1, "kernel": kernel}))
}

fn cover(ctx: &Ctx, src: &LineSource, p: &PencilArgs) -> Outcome {
    let (a, b) = (parse_triple_rat(&p.phi1)?, parse_triple_rat(&p.phi2)?);
    let json = match load_line(ctx, src)? {
        Loaded::Rational(l, _) => cover_json(&l, &QuadraticPencil::from_triples(a, b)?)?,
        Loaded::NumberField(l, _, _) => {
            let like = l.f[0].coeff(0).clone();
            let lift = |t: [Rat; 3]| t.map(|c| like.from_rat_like(&c));
            cover_json(&l, &QuadraticPencil::from_triples(lift(a), lift(b))?)?
        }
    };
    ok(Report::single(json))
}

fn am_check() -> Outcome {
    let t = am_weight_check()?;
    let rows = t
        .patterns
        .iter()
        .map(|p| {
            let names: Vec<&str> = p.on_cover.iter().map(|&i| ["a", "b", "c"][i]).collect();
            vec![names.join(","), p.arity.to_string(), p.weight.to_string()]
        })
        .collect();
    let header = ["on_cover", "arity", "weight"].map(String::from).to_vec();
    ok(Report { json: to_value(&t)?, table: Some(Table { header, rows }) })
}

fn selftest(ctx: &Ctx) -> Outcome {
    let mut checks: Vec<(&str, bool, String)> = Vec::new();
    let mut record = |name, r: Result<(bool, String), CliError>| match r {
        Ok((pass, detail)) => checks.push((name, pass, detail)),
        Err(e) => checks.push((name, false, e.to_string())),
    };

    record("cubic surface lines", Ok({
        let (_, v) = line_count(Hypersurface { n: 4, k: 3 });
        (v == Rat::from(27), v.to_string())
    }));
    record("quintic lines", Ok({
        let (_, v) = line_count(Hypersurface { n: 5, k: 5 });
        (v == Rat::from(2875), v.to_string())
    }));
    record("quintic conics", (|| {
        let s = Hypersurface::new(5, 5)?;
        let (table, _) = ctx.cache.table(s, 2)?;
        let r = decompose2_with_table(Some(&table), s, [1, 1, 1], None)?;
        let pass = r.gw == Rat::from(4876875) && r.dcover_term == Rat::from(2875) && r.unweighted == Some(Rat::from(609250));
        Ok((pass, format!("{} = {} + {}", r.gw, r.conic_count, r.dcover_term)))
    })());
    record("contribution class derivations", Ok({
        let bad: Vec<String> = (4..=7u32)
            .flat_map(|n| (n..=2 * n - 5).map(move |k| (n, k)))
            .filter(|&(n, k)| contribution_class(n, k).value != proof_form_class(n, k))
            .map(|(n, k)| format!("({n},{k})"))
            .collect();
        (bad.is_empty(), if bad.is_empty() { "agree".into() } else { bad.join(" ") })
    }));
    record("placement weights", am_weight_check().map(|_| (true, "9/4, 3/2".to_string())).map_err(CliError::from));
    record("unstable pencil", (|| {
        let p = QuadraticPencil::from_triples([1, 0, 0].map(Rat::from), [1, 0, 0].map(Rat::from))?;
        let r = classification_report(&p)?;
        let class = to_value(&r.class)?;
        Ok((class == json!("unstable"), class.as_str().unwrap_or_default().to_string()))
    })());

    let violations: Vec<String> =
        checks.iter().filter(|c| !c.1).map(|(n, _, d)| format!("{n}: {d}")).collect();
    let rows: Vec<Value> = checks.iter().map(|(n, p, d)| json!({"check": n, "pass": p, "detail": d})).collect();
    let table = Table {
        header: ["check", "pass", "detail"].map(String::from).to_vec(),
        rows: checks.iter().map(|(n, p, d)| vec![n.to_string(), p.to_string(), d.clone()]).collect(),
    };
    Ok((Report { json: json!({"checks": rows, "pass": violations.is_empty()}), table: Some(table) }, violations))
}
