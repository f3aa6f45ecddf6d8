use std::collections::BTreeMap;
use std::io::Read;

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use swhw_core::arith::parse_rational;
use swhw_core::coh::{boundary as residue, cup, sqclass, BaseField, CharClass, H2Class, SquareClass};
use swhw_core::orthorep::{Hyperbolic, OrthRep};
use swhw_core::poly::Poly;
use swhw_core::profile::real::{real_identity_check, RealVariety};
use swhw_core::profile::{
    abelian_surface, congruence_checks, conjecture_sides, crystalline_boundary_check, derive_invariants, det_formula_check,
    hypersurface_profile, solve_sw2, CohomProfile, Formulation,
};
use swhw_core::quadform::{diagonalize_by, signature, PivotStrategy, QuadSpace};
use swhw_core::traceform::{serre_check, AbelianSplitting, EtaleAlgebra, SerreStatus};
use swhw_symcx::{law_suite, SymCx, LAW_NAMES};

/// What a command prints, in both renderings, and whether its checks held.
pub struct Outcome {
    pub lines: Vec<String>,
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    fn new(lines: Vec<String>, json: Value, ok: bool) -> Self {
        Outcome { lines, json, ok }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "HOLDS"
    } else {
        "FAILS"
    }
}

fn field(s: &str) -> Result<BaseField> {
    s.parse().with_context(|| format!("reading field {s:?}"))
}

fn square_class(f: BaseField, s: &str) -> Result<SquareClass> {
    let a = parse_rational(s.trim())?;
    Ok(sqclass(f, &a)?)
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

pub fn symbol(a: &str, b: &str, f: &str) -> Result<Outcome> {
    let f = field(f)?;
    let class = cup(&square_class(f, a)?, &square_class(f, b)?)?;
    let json = json!({ "a": a, "b": b, "field": f.to_string(), "class": class.to_string() });
    Ok(Outcome::new(vec![class.to_string()], json, true))
}

pub fn hw(path: &str, f: &str, strategy: &str) -> Result<Outcome> {
    let f = field(f)?;
    let strategy = match strategy {
        "first" => PivotStrategy::First,
        "last" => PivotStrategy::Last,
        "smallest" => PivotStrategy::SmallestHeight,
        other => bail!("unknown pivot strategy {other:?}"),
    };
    let space = QuadSpace::from_json(&read_input(path)?, f)?;
    let d = diagonalize_by(&space, strategy)?;
    let entries: Vec<String> = d.entries().iter().map(ToString::to_string).collect();
    let (hw1, hw2) = (d.hw1(), d.hw2()?);
    let mut lines = vec![
        format!("dim={}", d.dim()),
        format!("diagonal=<{}>", entries.join(", ")),
        format!("hw1={hw1}"),
        format!("hw2={hw2}"),
    ];
    let mut json = json!({
        "field": f.to_string(), "dim": d.dim(), "diagonal": entries, "hw1": hw1.to_string(), "hw2": hw2.to_string(),
    });
    if matches!(f, BaseField::Rationals | BaseField::Reals) {
        let (pos, neg) = signature(&space)?;
        lines.push(format!("signature=({pos}, {neg})"));
        json["signature"] = json!([pos, neg]);
    }
    Ok(Outcome::new(lines, json, true))
}

fn hyperbolic(f: BaseField, ell: u64, spec: &str) -> Result<Hyperbolic> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.is_empty() || parts.len() > 3 {
        bail!("hyperbolic summand must look like det:k[:rank], got {spec:?}");
    }
    let eps = square_class(f, parts[0])?;
    let k: i64 = match parts.get(1) {
        Some(k) => k.trim().parse().with_context(|| format!("bad exponent in {spec:?}"))?,
        None => 0,
    };
    let rank: u32 = match parts.get(2) {
        Some(r) => r.trim().parse().with_context(|| format!("bad rank in {spec:?}"))?,
        None => 1,
    };
    Ok(Hyperbolic { det: CharClass::new(eps, k, ell), rank })
}

pub fn sw(chars: &[String], hyps: &[String], ell: u64, f: &str, twist: Option<&str>) -> Result<Outcome> {
    let f = field(f)?;
    let chars = chars.iter().filter(|c| !c.trim().is_empty()).map(|c| square_class(f, c)).collect::<Result<Vec<_>>>()?;
    let hyps = hyps.iter().map(|h| hyperbolic(f, ell, h)).collect::<Result<Vec<_>>>()?;
    let rep = OrthRep::new(f, chars, hyps)?;
    let (sw1, sw2) = (rep.sw1(), rep.sw2()?);
    let mut lines = vec![format!("dim={}", rep.dim()), format!("sw1={sw1}"), format!("sw2={sw2}")];
    let mut json = json!({ "field": f.to_string(), "dim": rep.dim(), "sw1": sw1.to_string(), "sw2": sw2.to_string() });
    let mut ok = true;
    if let Some(chi) = twist {
        let chi = square_class(f, chi)?;
        let direct = rep.twist(&chi)?.sw2()?;
        let formula = rep.twist_sw2_formula(&chi)?;
        ok = direct == formula;
        lines.push(format!("twist by {chi}: direct={direct} formula={formula} {}", if ok { "EQUAL" } else { "NOT EQUAL" }));
        json["twist"] = json!({ "chi": chi.to_string(), "direct": direct.to_string(), "formula": formula.to_string(), "equal": ok });
    }
    Ok(Outcome::new(lines, json, ok))
}

pub fn serre(poly: &str, split: Option<&str>, max_degree: usize) -> Result<Outcome> {
    let alg = EtaleAlgebra::with_cap(Poly::parse(poly)?, max_degree)?;
    let split = split.map(AbelianSplitting::parse).transpose()?;
    let report = serre_check(&alg, split.as_ref())?;
    let lhs = report.lhs.as_ref().map_or_else(|| "?".to_string(), ToString::to_string);
    let line = format!("lhs={lhs} rhs={} {}", report.rhs, report.status);
    let json = json!({
        "poly": poly, "degree": alg.degree(), "disc": report.disc.to_string(),
        "lhs": report.lhs.as_ref().map(ToString::to_string), "rhs": report.rhs.to_string(),
        "status": report.status.to_string(),
    });
    Ok(Outcome::new(vec![line], json, report.status != SerreStatus::NotEqual))
}

fn invariants_json(p: &CohomProfile) -> Result<(String, Value)> {
    let inv = derive_invariants(p)?;
    let line = format!(
        "invariants: r={} beta={} eta={} h={} r'={} s={} e={}",
        inv.r, inv.beta, inv.eta, inv.h, inv.rprime, inv.s, inv.e
    );
    let json = json!({
        "r": inv.r, "beta": inv.beta, "eta": inv.eta, "h": inv.h, "rprime": inv.rprime, "s": inv.s, "e": inv.e.to_string(),
    });
    Ok((line, json))
}

const FORMS: [(&str, Formulation); 3] =
    [("plain", Formulation::Plain), ("primed", Formulation::Primed), ("graded", Formulation::Graded)];

pub fn profile_eval(path: &str, form: &str) -> Result<Outcome> {
    let p = CohomProfile::from_json(&read_input(path)?)?;
    let forms: Vec<(&str, Formulation)> = match form {
        "all" => FORMS.to_vec(),
        other => vec![(other, other.parse()?)],
    };
    let (inv_line, inv_json) = invariants_json(&p)?;
    let mut lines = vec![format!("profile: n={} field={} ell={}", p.n, p.field, p.ell), inv_line];
    let mut json = json!({ "n": p.n, "field": p.field.to_string(), "ell": p.ell, "invariants": inv_json });
    let mut ok = true;
    let solved = solve_sw2(&p)?;
    if p.sw2_in.is_none() {
        lines.push(format!("sw2 (solved)={solved}"));
        json["sw2_solved"] = json!(solved.to_string());
    } else {
        let mut results = serde_json::Map::new();
        for (name, f) in forms {
            let sides = conjecture_sides(&p, f)?;
            ok &= sides.holds();
            lines.push(format!("{name}: lhs={} rhs={} {}", sides.lhs, sides.rhs, verdict(sides.holds())));
            results.insert(
                name.to_string(),
                json!({ "lhs": sides.lhs.to_string(), "rhs": sides.rhs.to_string(), "holds": sides.holds(),
                        "difference": sides.difference().to_string() }),
            );
        }
        json["formulations"] = Value::Object(results);
        json["sw2_solved"] = json!(solved.to_string());
    }
    if p.e_n().is_some() {
        let det = det_formula_check(&p)?;
        ok &= det;
        lines.push(format!("determinant formula: {}", verdict(det)));
        json["determinant_formula"] = json!(det);
    }
    if p.lef.is_some() {
        let (cong_lines, cong_json, cong_ok) = congruence_report(&p)?;
        ok &= cong_ok;
        lines.extend(cong_lines);
        json["congruences"] = cong_json;
    }
    Ok(Outcome::new(lines, json, ok))
}

fn congruence_report(p: &CohomProfile) -> Result<(Vec<String>, Value, bool)> {
    let checks = congruence_checks(p)?;
    let ok = checks.iter().all(|c| c.holds);
    let lines = checks.iter().map(|c| format!("  {}: {} vs {} {}", c.name, c.lhs, c.rhs, verdict(c.holds))).collect();
    let json = checks
        .iter()
        .map(|c| json!({ "name": c.name, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds }))
        .collect::<Vec<_>>();
    Ok((lines, Value::Array(json), ok))
}

pub fn profile_hypersurface(n: usize, d: usize, ell: u64, f: &str, checks: &[String]) -> Result<Outcome> {
    let f = field(f)?;
    let p = hypersurface_profile(n, d, ell, f)?;
    let middle: Vec<String> = (0..=n).map(|q| p.hodge[n - q][q].to_string()).collect();
    let (inv_line, inv_json) = invariants_json(&p)?;
    let mut lines = vec![
        format!("hypersurface n={n} d={d} field={f} ell={ell}"),
        format!("b_n={}", p.betti[n]),
        format!("middle hodge (h^{{n,0}} .. h^{{0,n}})=[{}]", middle.join(", ")),
        inv_line,
    ];
    let mut json = json!({
        "n": n, "d": d, "field": f.to_string(), "ell": ell, "betti": p.betti, "hodge": p.hodge, "invariants": inv_json,
    });
    let mut ok = true;
    for check in checks {
        match check.as_str() {
            "congruences" => {
                let (l, j, c) = congruence_report(&p)?;
                ok &= c;
                lines.push(format!("congruences: {}", verdict(c)));
                lines.extend(l);
                json["congruences"] = j;
            }
            "crystalline" => {
                let c = crystalline_boundary_check(&p)?;
                ok &= c;
                lines.push(format!("crystalline boundary: {}", verdict(c)));
                json["crystalline"] = json!(c);
            }
            other => bail!("unknown check {other:?}; expected congruences or crystalline"),
        }
    }
    Ok(Outcome::new(lines, json, ok))
}

pub fn profile_congruences(path: Option<&str>) -> Result<Outcome> {
    let mut profiles: Vec<(String, CohomProfile)> = Vec::new();
    match path {
        Some(path) => profiles.push((path.to_string(), CohomProfile::from_json(&read_input(path)?)?)),
        None => {
            for n in [2, 4] {
                for d in 2..=6 {
                    profiles.push((format!("hypersurface n={n} d={d}"), hypersurface_profile(n, d, 2, BaseField::Rationals)?));
                }
            }
            profiles.push(("abelian surface".into(), abelian_surface(BaseField::Rationals, 2)));
        }
    }
    let mut lines = Vec::new();
    let mut out = Vec::new();
    let mut ok = true;
    for (name, p) in &profiles {
        let (l, j, c) = congruence_report(p)?;
        ok &= c;
        let held = j.as_array().map_or(0, |a| a.iter().filter(|x| x["holds"] == json!(true)).count());
        let total = j.as_array().map_or(0, Vec::len);
        lines.push(format!("{name}: {held}/{total} hold"));
        if !c {
            lines.extend(l);
        }
        out.push(json!({ "profile": name, "checks": j, "holds": c }));
    }
    Ok(Outcome::new(lines, json!({ "profiles": out, "all_hold": ok }), ok))
}

pub fn real_selftest(count: u64, seed: u64) -> Result<Outcome> {
    let mut failures = Vec::new();
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let n = 2 * (i % 3) as usize;
        let x = RealVariety::random(&mut rng, n)?;
        let report = real_identity_check(&x)?;
        if !report.holds() {
            failures.push(json!({ "index": i, "n": n, "lhs": report.lhs.to_string(), "rhs": report.rhs.to_string() }));
        }
    }
    let ok = failures.is_empty();
    let mut lines = vec![format!("real identity: {}/{count} hold", count - failures.len() as u64)];
    lines.extend(failures.iter().map(|f| format!("  failure: {f}")));
    Ok(Outcome::new(lines, json!({ "count": count, "seed": seed, "failures": failures }), ok))
}

pub fn symcx_selftest(start: u64, seeds: u64, max_dim: usize) -> Result<Outcome> {
    let results: Vec<(u64, Vec<swhw_symcx::LawResult>)> =
        (start..start + seeds).into_par_iter().map(|s| (s, law_suite(s, max_dim))).collect();
    let mut passed: BTreeMap<&str, u64> = LAW_NAMES.iter().map(|&n| (n, 0)).collect();
    let mut failures = Vec::new();
    for (seed, rs) in &results {
        for r in rs {
            if r.passed {
                *passed.entry(r.name).or_default() += 1;
            } else {
                failures.push(json!({ "seed": seed, "law": r.name, "detail": r.detail }));
            }
        }
    }
    let mut lines: Vec<String> = LAW_NAMES.iter().map(|n| format!("{n}: {}/{seeds}", passed[n])).collect();
    lines.push(format!("seeds={seeds} max_dim={max_dim} failures={}", failures.len()));
    lines.extend(failures.iter().map(|f| format!("  failure: {f}")));
    let json = json!({ "seeds": seeds, "start": start, "max_dim": max_dim, "passed": passed, "failures": failures });
    Ok(Outcome::new(lines, json, failures.is_empty()))
}

pub fn symcx_w(path: &str) -> Result<Outcome> {
    let v: Value = serde_json::from_str(&read_input(path)?).context("parsing JSON")?;
    let s = SymCx::from_json(&v)?;
    let w = swhw_symcx::w(&s)?;
    let (_, e) = swhw_symcx::k_natural(&s)?;
    let lines = vec![format!("euler={} rank H^0={}", s.k.euler_char(), e.rank()), format!("w={w}")];
    let json = json!({ "euler": s.k.euler_char(), "h0_rank": e.rank(), "w1": w.s1.to_string(), "w2": w.s2.to_string() });
    Ok(Outcome::new(lines, json, true))
}

pub fn boundary(a: &str, b: &str, p: u64) -> Result<Outcome> {
    let f = BaseField::padic(p)?;
    let class: H2Class = cup(&square_class(f, a)?, &square_class(f, b)?)?;
    let r = residue(&class)?;
    let json = json!({ "a": a, "b": b, "p": p, "symbol": class.to_string(), "boundary": r.to_string() });
    Ok(Outcome::new(vec![format!("{{{a}, {b}}} over Q_{p} = {class}; boundary = {r}")], json, true))
}
