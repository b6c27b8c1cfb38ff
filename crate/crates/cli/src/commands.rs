//! One function per verb. Each returns a JSON report, a text summary and
//! whether the check it performs passed.

use arroids::arrangement::{
    arroid_of, checks, cluster_analysis, inf_family, inf_family_explicit, maximality_report, picard_fan, picard_rays,
    sufficient_unique_balance, CurveArrangement,
};
use arroids::exactlin::{Int, MatZ};
use arroids::fan::{build_arroid_fan, check_balanced, reduced_star, support_equal, unique_balance_at_ray, verify_modification};
use arroids::tropohom::{bm_homology, check_thm, check_tpd, ses_dim_check, Coefficients, ThmReport};
use arroids::{Error, Result, WeightedFan};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::input::Input;

pub struct Outcome {
    pub report: Value,
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn pass(report: Value, text: String) -> Self {
        Self { report, text, ok: true }
    }
}

fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn matrix_json(m: &MatZ) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn element<'a>(e: Option<&'a str>) -> Result<&'a str> {
    e.ok_or_else(|| Error::InvalidInput("this verb needs --element".into()))
}

pub fn validate(input: &Input) -> Result<Outcome> {
    if let Input::Fan(f) = input {
        let b = check_balanced(f);
        let text = format!("balanced: {}", yes(b.ok()));
        return Ok(Outcome { report: json!({"input": "fan", "balanced": b.ok(), "balance": b}), text, ok: b.ok() });
    }
    let a = match input {
        Input::Arroid(a) => a.clone(),
        Input::Arrangement(arr) => match arroid_of(arr) {
            Ok(a) => a,
            Err(Error::ValidationFailed(r)) => {
                let text = format!("bezout: {r}");
                return Ok(Outcome { report: json!({"input": "arrangement", "valid": false, "validation": r}), text, ok: false });
            }
            Err(e) => return Err(e),
        },
        Input::Fan(_) => unreachable!(),
    };
    let report = a.validate();
    let mut out = json!({
        "input": input.kind(),
        "valid": report.ok(),
        "validation": report,
        "transversal": a.is_transversal(),
        "very_affine": a.is_very_affine(),
    });
    let mut text = format!("bezout: {report}, transversal: {}", yes(a.is_transversal()));
    if let Input::Arrangement(arr) = input {
        let c = checks(arr)?;
        text.push_str(&format!(", very affine: {}, simple: {}", yes(c.very_affine), yes(c.simple)));
        out["checks"] = json!(c);
    }
    Ok(Outcome { report: out, text, ok: report.ok() })
}

pub fn fan(input: &Input) -> Result<Outcome> {
    let f = input.fan()?;
    let text = format!("fan: {} rays, {} cones, dimension {}", f.rays.len(), f.cones.len(), f.dim);
    Ok(Outcome::pass(f.to_json(), text))
}

fn thm_text(r: &ThmReport) -> String {
    if r.verdict {
        return "thm: true, per-ray balancing dims all 1".into();
    }
    let bad: Vec<String> = r
        .balancing_dims
        .iter()
        .filter(|(_, d)| *d != 1)
        .map(|(ray, d)| format!("{ray} ({d})"))
        .collect();
    format!("thm: false, rays not uniquely balanced: {}", bad.join(", "))
}

pub fn homology(input: &Input, coefficients: Coefficients) -> Result<Outcome> {
    let f = input.fan()?;
    let h = bm_homology(&f, coefficients);
    let balanced = check_balanced(&f).ok();
    let pd = if balanced && (f.dim == 1 || f.dim == 2) { Some(check_tpd(&f)?) } else { None };
    let thm = if balanced && f.dim == 2 { Some(check_thm(&f)?) } else { None };
    let mut text = format!("coefficients: {}\n", if coefficients == Coefficients::Rational { "rational" } else { "integer" });
    for (p, row) in h.dims.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        text.push_str(&format!("H_{p},q: {}\n", cells.join(" ")));
    }
    text.push_str(&format!("torsion: {}\n", if h.has_torsion() { "yes" } else { "none" }));
    if let Some(pd) = &pd {
        text.push_str(&format!("poincare duality: {}\n", yes(pd.holds)));
    }
    if let Some(t) = &thm {
        text.push_str(&thm_text(t));
        text.push('\n');
    }
    let report = json!({
        "homology": h,
        "balanced": balanced,
        "poincare_duality": pd,
        "thm": thm,
    });
    Ok(Outcome::pass(report, text.trim_end().to_string()))
}

pub fn thm(input: &Input) -> Result<Outcome> {
    let f = input.fan()?;
    let r = check_thm(&f)?;
    Ok(Outcome::pass(json!(r), thm_text(&r)))
}

/// Accepts a ray label or, for fans with element rays, an element id.
fn ray_label(f: &WeightedFan, id: &str) -> Result<String> {
    if f.ray_index(id).is_ok() {
        return Ok(id.to_string());
    }
    match f.element_ray(id) {
        Some(k) => Ok(f.rays[k].label.clone()),
        None => Err(Error::UnknownRay(id.to_string())),
    }
}

pub fn star(input: &Input, id: Option<&str>) -> Result<Outcome> {
    let f = input.fan()?;
    let label = ray_label(&f, element(id)?)?;
    let s = reduced_star(&f, &label)?;
    let text = format!("star at {label}: {} rays, {} cones", s.rays.len(), s.cones.len());
    Ok(Outcome::pass(s.to_json(), text))
}

pub fn contract(input: &Input, id: Option<&str>, delete: bool) -> Result<Outcome> {
    let a = input.arroid()?;
    let i = element(id)?;
    let b = if delete { a.delete(i)? } else { a.contract(i)? };
    let text = format!(
        "{} {i}: rank {}, {} elements, {} points",
        if delete { "deletion of" } else { "contraction at" },
        b.rank(),
        b.len(),
        b.points().len()
    );
    Ok(Outcome::pass(b.to_json(), text))
}

pub fn modify_check(input: &Input, id: Option<&str>) -> Result<Outcome> {
    let a = input.arroid()?;
    let i = element(id)?;
    let m = verify_modification(&a, i)?;
    let s = ses_dim_check(&a, i)?;
    let ok = m.ok() && s.holds;
    let text = format!(
        "star = contraction: {}, fibers: {}, short exact sequences: {}",
        yes(m.star_matches),
        yes(m.fibers_ok && m.cone_cases_ok),
        yes(s.holds)
    );
    Ok(Outcome { report: json!({"modification": m, "short_exact_sequence": s, "ok": ok}), text, ok })
}

pub fn tropicalize(input: &Input) -> Result<Outcome> {
    let arr = input.arrangement()?;
    let p = picard_rays(arr)?;
    let pf = picard_fan(arr)?;
    let af = build_arroid_fan(&arroid_of(arr)?)?;
    let support = support_equal(&pf, &af)?;
    let edges = |e: &[(usize, usize)], labels: &[String]| -> Value {
        json!(e.iter().map(|&(x, y)| [labels[x].clone(), labels[y].clone()]).collect::<Vec<_>>())
    };
    let report = json!({
        "divisors": p.labels,
        "exceptional": p.exceptional,
        "phi": matrix_json(&p.phi),
        "ray_matrix": matrix_json(&p.ray_matrix),
        "edges": edges(&p.edges, &p.labels),
        "minimal_labels": p.minimal_labels,
        "minimal_rays": matrix_json(&p.minimal_rays),
        "minimal_edges": edges(&p.minimal_edges, &p.minimal_labels),
        "support_matches_arroid_fan": support,
    });
    let mut text = format!("{} boundary divisors, {} minimal rays\n", p.labels.len(), p.minimal_labels.len());
    for (k, l) in p.minimal_labels.iter().enumerate() {
        let v: Vec<String> = p.minimal_rays.col(k).iter().map(Int::to_string).collect();
        text.push_str(&format!("  {l}: ({})\n", v.join(", ")));
    }
    text.push_str(&format!("support matches arroid fan: {}", yes(support)));
    Ok(Outcome { report, text, ok: support })
}

pub fn clusters(input: &Input, id: Option<&str>) -> Result<Outcome> {
    let arr = input.arrangement()?;
    let ids: Vec<String> = match id {
        Some(i) => vec![i.to_string()],
        None => arr.elements().into_iter().map(|e| e.id).collect(),
    };
    let fan = build_arroid_fan(&arroid_of(arr)?).ok();
    let mut reports = Vec::new();
    let mut text = Vec::new();
    for c in &ids {
        let an = cluster_analysis(arr, c)?;
        let g = sufficient_unique_balance(arr, c)?;
        let dim = match &fan {
            Some(f) => Some(unique_balance_at_ray(f, &format!("r:{c}"))?.dim()),
            None => None,
        };
        let sets: Vec<String> = an.clusters.iter().map(|cl| format!("{{{}}}", cl.curves.join(","))).collect();
        text.push(format!(
            "{c}: {} | {} | balancing dim {}",
            sets.join(" "),
            serde_json::to_value(g)?.as_str().unwrap_or_default(),
            dim.map_or("n/a".to_string(), |d| d.to_string())
        ));
        reports.push(json!({"analysis": an, "guarantee": g, "balancing_dim": dim}));
    }
    Ok(Outcome::pass(json!({"curves": reports}), text.join("\n")))
}

pub fn maximality(input: &Input) -> Result<Outcome> {
    let r = maximality_report(input.arrangement()?)?;
    let mut text = format!("verdict: {}", r.verdict);
    if !r.failing.is_empty() {
        text.push_str(&format!(" (failing: {})", r.failing.join(", ")));
    }
    if let (Some(b0), Some(betti)) = (r.real_b0, &r.tropical_betti) {
        let parts: Vec<String> = betti.iter().map(usize::to_string).collect();
        text.push_str(&format!("\nreal components: {b0}, tropical: {} = {}", parts.join("+"), betti.iter().sum::<usize>()));
    }
    text.push_str(&format!("\nsimple means: {}", r.simple_reading));
    Ok(Outcome::pass(json!(r), text))
}

pub fn gen_inf_family(k: i64, explicit: bool) -> Result<Outcome> {
    let k = usize::try_from(k).map_err(|_| Error::InvalidInput(format!("k must be non-negative, got {k}")))?;
    let arr: CurveArrangement = if explicit { inf_family_explicit(k) } else { inf_family(k) };
    let text = format!("inf family: {} curves, {} records", 6 + k, arr.records()?.len());
    Ok(Outcome::pass(arr.to_json(), text))
}
