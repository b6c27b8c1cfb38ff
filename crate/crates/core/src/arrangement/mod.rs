//! Plane arrangements of lines and conics, given by equations or by
//! incidence data, and the invariants computed from them.

mod clusters;
mod families;
mod geometry;
mod picard;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::arroid::{Arroid, Element, MultTable, Point};
use crate::error::{Error, Result};
use crate::exactlin::{format_rational, parse_rational, Rational};
use crate::fan::build_arroid_fan;
use crate::tropohom::{check_thm, cohomology_dims};

pub use clusters::{cluster_analysis, sufficient_unique_balance, Aqueduct, BalanceGuarantee, Cluster, ClusterAnalysis};
pub use families::{
    complete_generic, concurrent_chords_explicit, fourlines_explicit, generic_lines_conic_explicit, inf_family,
    inf_family_explicit, lines_and_conic_explicit, supply_system_conic, tangent_line_conic, three_cluster_line,
};
pub use geometry::{intersect_pair, normalize, CurveKind, LocalIntersection, PlaneCurve};
pub use picard::{picard_fan, picard_rays, unimodular_equivalence, PicardRays, UnimodularWitness};

/// One intersection point: its coordinates in explicit mode, the curves
/// through it, and pairwise intersection multiplicities keyed `"a,b"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRecord {
    pub point: Option<Vec<Rational>>,
    pub members: Vec<String>,
    pub mults: BTreeMap<String, u64>,
}

impl IntersectionRecord {
    /// A record where every pair meets transversally.
    pub fn transverse(members: &[&str]) -> Self {
        let mut mults = BTreeMap::new();
        for (a, x) in members.iter().enumerate() {
            for y in &members[a + 1..] {
                mults.insert(MultTable::key(&[x, y]), 1);
            }
        }
        Self {
            point: None,
            members: members.iter().map(|s| s.to_string()).collect(),
            mults,
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.members.iter().any(|m| m == id)
    }

    pub fn mult(&self, a: &str, b: &str) -> u64 {
        self.mults.get(&MultTable::key(&[a, b])).copied().unwrap_or(1)
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "members": self.members,
            "mults": self.mults,
        });
        if let Some(p) = &self.point {
            v["point"] = json!(p.iter().map(format_rational).collect::<Vec<_>>());
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrangementData {
    Explicit(Vec<PlaneCurve>),
    Abstract {
        elements: Vec<Element>,
        records: Vec<IntersectionRecord>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveArrangement {
    pub data: ArrangementData,
    /// Whether all curves and all intersection points are real. Explicit
    /// arrangements have rational points, so this only matters in abstract
    /// mode.
    pub all_real_points: bool,
}

impl CurveArrangement {
    pub fn explicit(curves: Vec<PlaneCurve>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, c) in curves.iter().enumerate() {
            if !seen.insert(c.id.clone()) {
                return Err(Error::InvalidInput(format!("duplicate curve id `{}`", c.id)));
            }
            if let Some(d) = curves[..i].iter().find(|d| d.same_curve(c)) {
                return Err(Error::InvalidInput(format!("curves `{}` and `{}` coincide", d.id, c.id)));
            }
        }
        Ok(Self {
            data: ArrangementData::Explicit(curves),
            all_real_points: true,
        })
    }

    pub fn from_incidence(elements: Vec<Element>, records: Vec<IntersectionRecord>, all_real_points: bool) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &elements {
            if CurveKind::from_degree(e.degree).is_none() {
                return Err(Error::InvalidInput(format!("curve `{}` must have degree 1 or 2", e.id)));
            }
            if !seen.insert(e.id.clone()) {
                return Err(Error::InvalidInput(format!("duplicate curve id `{}`", e.id)));
            }
        }
        for r in &records {
            if r.members.len() < 2 {
                return Err(Error::InvalidInput("an intersection record needs at least two curves".into()));
            }
            for m in &r.members {
                if !seen.contains(m) {
                    return Err(Error::UnknownCurve(m.clone()));
                }
            }
        }
        Ok(Self {
            data: ArrangementData::Abstract { elements, records },
            all_real_points,
        })
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.data, ArrangementData::Explicit(_))
    }

    pub fn elements(&self) -> Vec<Element> {
        match &self.data {
            ArrangementData::Explicit(c) => c.iter().map(|c| Element::new(c.id.clone(), c.kind.degree())).collect(),
            ArrangementData::Abstract { elements, .. } => elements.clone(),
        }
    }

    pub fn kind(&self, id: &str) -> Result<CurveKind> {
        self.elements()
            .iter()
            .find(|e| e.id == id)
            .and_then(|e| CurveKind::from_degree(e.degree))
            .ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    /// Intersection records: computed in explicit mode, stored otherwise.
    pub fn records(&self) -> Result<Vec<IntersectionRecord>> {
        match &self.data {
            ArrangementData::Explicit(_) => intersect(self),
            ArrangementData::Abstract { records, .. } => Ok(records.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.data {
            ArrangementData::Explicit(curves) => json!({
                "curves": curves.iter().map(|c| json!({
                    "id": c.id,
                    "kind": c.kind.name(),
                    "coeffs": c.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "real": true,
            }),
            ArrangementData::Abstract { elements, records } => json!({
                "elements": elements.iter().map(|e| json!({
                    "id": e.id,
                    "kind": CurveKind::from_degree(e.degree).map_or("curve", CurveKind::name),
                    "degree": e.degree,
                })).collect::<Vec<_>>(),
                "records": records.iter().map(IntersectionRecord::to_json).collect::<Vec<_>>(),
                "flags": {"all_real_points": self.all_real_points},
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("arrangement must be a JSON object"))?;
        if let Some(curves) = obj.get("curves") {
            let curves = curves.as_array().ok_or_else(|| bad("`curves` must be an array"))?;
            let mut out = Vec::new();
            for c in curves {
                let id = c["id"].as_str().ok_or_else(|| bad("curve needs a string `id`"))?;
                let kind = match c["kind"].as_str() {
                    Some("line") => CurveKind::Line,
                    Some("conic") => CurveKind::Conic,
                    _ => return Err(bad("curve `kind` must be `line` or `conic`")),
                };
                let coeffs = c["coeffs"]
                    .as_array()
                    .ok_or_else(|| bad("curve needs `coeffs`"))?
                    .iter()
                    .map(parse_coefficient)
                    .collect::<Result<Vec<_>>>()?;
                out.push(PlaneCurve::new(id, kind, coeffs)?);
            }
            return Self::explicit(out);
        }
        let elements = obj
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("arrangement needs `curves` or `elements`"))?;
        let mut els = Vec::new();
        for e in elements {
            let id = e["id"].as_str().ok_or_else(|| bad("element needs a string `id`"))?;
            let degree = match (e.get("degree").and_then(Value::as_u64), e.get("kind").and_then(Value::as_str)) {
                (Some(d), _) => d,
                (None, Some("line")) => 1,
                (None, Some("conic")) => 2,
                _ => return Err(bad("element needs `degree` or `kind`")),
            };
            els.push(Element::new(id, degree));
        }
        let mut records = Vec::new();
        for r in obj.get("records").and_then(Value::as_array).ok_or_else(|| bad("abstract arrangement needs `records`"))? {
            let members: Vec<String> = serde_json::from_value(r["members"].clone())?;
            let refs: Vec<&str> = members.iter().map(String::as_str).collect();
            let mut rec = IntersectionRecord::transverse(&refs);
            if let Some(m) = r.get("mults") {
                let m = m.as_object().ok_or_else(|| bad("`mults` must be an object"))?;
                for (k, v) in m {
                    let ids: Vec<&str> = k.split(',').map(str::trim).collect();
                    if ids.len() != 2 || !ids.iter().all(|i| refs.contains(i)) {
                        return Err(bad(&format!("multiplicity key `{k}` must name two members")));
                    }
                    let n = v.as_u64().ok_or_else(|| bad("multiplicities must be positive integers"))?;
                    rec.mults.insert(MultTable::key(&ids), n);
                }
            }
            records.push(rec);
        }
        let real = obj
            .get("flags")
            .and_then(|f| f.get("all_real_points"))
            .and_then(Value::as_bool)
            .unwrap_or(false);
        Self::from_incidence(els, records, real)
    }
}

fn parse_coefficient(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| Error::InvalidInput(format!("bad rational `{s}`"))),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Rational::from_integer(x.into()))
            .ok_or_else(|| Error::InvalidInput(format!("bad coefficient {n}; use \"p/q\" strings"))),
        _ => Err(Error::InvalidInput("coefficients must be rational strings".into())),
    }
}

/// All intersection points of an explicit arrangement, merged by exact
/// coordinates. Members follow the arrangement order.
pub fn intersect(arr: &CurveArrangement) -> Result<Vec<IntersectionRecord>> {
    let ArrangementData::Explicit(curves) = &arr.data else {
        return Err(Error::PreconditionFailed("intersect needs an explicit arrangement".into()));
    };
    let lines: Vec<&PlaneCurve> = curves.iter().filter(|c| c.kind == CurveKind::Line).collect();
    let mut by_point: BTreeMap<Vec<Rational>, (BTreeSet<usize>, BTreeMap<String, u64>)> = BTreeMap::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            for x in intersect_pair(&curves[i], &curves[j], &lines)? {
                let e = by_point.entry(x.point).or_default();
                e.0.insert(i);
                e.0.insert(j);
                e.1.insert(MultTable::key(&[&curves[i].id, &curves[j].id]), x.mult);
            }
        }
    }
    let mut out: Vec<IntersectionRecord> = by_point
        .into_iter()
        .map(|(point, (members, mults))| IntersectionRecord {
            point: Some(point),
            members: members.iter().map(|&k| curves[k].id.clone()).collect(),
            mults,
        })
        .collect();
    // deterministic order: by member positions, then coordinates
    out.sort_by_cached_key(|r| {
        let pos: Vec<usize> = r.members.iter().map(|m| curves.iter().position(|c| &c.id == m).unwrap()).collect();
        (pos, r.point.clone())
    });
    Ok(out)
}

/// The rank-two arroid of the arrangement: one point per record.
pub fn arroid_of(arr: &CurveArrangement) -> Result<Arroid> {
    let elements = arr.elements();
    let points = arr
        .records()?
        .iter()
        .map(|r| {
            let mut t = MultTable::constant(1);
            for (k, &v) in &r.mults {
                let ids: Vec<&str> = k.split(',').collect();
                t.set(&ids, v);
            }
            let refs: Vec<&str> = r.members.iter().map(String::as_str).collect();
            Point::with_mult(&refs, t)
        })
        .collect();
    Arroid::from_incidence(2, elements, points)
}

/// The reading of "simple" used throughout: transverse, and no two distinct
/// intersection points lie on exactly the same set of curves.
pub const SIMPLE_READING: &str = "transverse, and distinct intersection points have distinct member sets";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementChecks {
    pub very_affine: bool,
    pub transverse: bool,
    pub simple: bool,
    pub simple_reading: &'static str,
}

pub fn checks(arr: &CurveArrangement) -> Result<ArrangementChecks> {
    let a = arroid_of(arr)?;
    let transverse = a.is_transversal();
    let mut sets = BTreeSet::new();
    let injective = a.points().iter().all(|p| {
        let mut m = p.members.clone();
        m.sort();
        sets.insert(m)
    });
    Ok(ArrangementChecks {
        very_affine: a.is_very_affine(),
        transverse,
        simple: transverse && injective,
        simple_reading: SIMPLE_READING,
    })
}

/// Three lines whose pairwise intersection points are distinct.
fn generic_triple(a: &Arroid) -> Option<[String; 3]> {
    let lines: Vec<&str> = a.elements().iter().filter(|e| e.degree == 1).map(|e| e.id.as_str()).collect();
    for x in 0..lines.len() {
        for y in x + 1..lines.len() {
            for z in y + 1..lines.len() {
                let t = [lines[x], lines[y], lines[z]];
                if !a.points().iter().any(|p| t.iter().all(|id| p.contains(id))) {
                    return Some(t.map(str::to_string));
                }
            }
        }
    }
    None
}

/// Connected components of the real complement: three generic lines give
/// four regions, and each further curve adds one region per distinct
/// point it shares with the curves already placed.
pub fn real_b0(arr: &CurveArrangement) -> Result<u64> {
    let c = checks(arr)?;
    if !c.simple {
        return Err(Error::PreconditionFailed("real_b0 needs a simple arrangement".into()));
    }
    if !arr.all_real_points {
        return Err(Error::PreconditionFailed(
            "real_b0 needs all curves and intersection points to be real".into(),
        ));
    }
    let a = arroid_of(arr)?;
    let base = generic_triple(&a)
        .ok_or_else(|| Error::PreconditionFailed("real_b0 needs three generically intersecting lines".into()))?;
    let mut placed: BTreeSet<String> = base.iter().cloned().collect();
    let mut order: Vec<&Element> = a.elements().iter().filter(|e| !placed.contains(&e.id)).collect();
    order.sort_by_key(|e| e.degree);
    let mut b0 = 4u64;
    for e in order {
        let n = a
            .points()
            .iter()
            .filter(|p| p.contains(&e.id) && p.members.iter().any(|m| placed.contains(m)))
            .count() as u64;
        if n == 0 {
            return Err(Error::PreconditionFailed(format!("curve `{}` meets no earlier curve", e.id)));
        }
        b0 += n;
        placed.insert(e.id.clone());
    }
    Ok(b0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub simple: bool,
    pub simple_reading: &'static str,
    pub curves_real: bool,
    pub points_real: bool,
    /// `None` when the fan could not be built.
    pub thm: Option<bool>,
    pub failing: Vec<String>,
    /// `"maximal"` when every hypothesis holds, otherwise `"no claim"`.
    pub verdict: &'static str,
    pub cohomologically_tropical: bool,
    pub wunderschoen_preconditions: bool,
    pub real_b0: Option<u64>,
    pub tropical_betti: Option<Vec<usize>>,
    pub smith_thom_equality: Option<bool>,
}

/// Sufficient test for maximality of the complement. A failed hypothesis
/// leads to no claim, never to "not maximal".
pub fn maximality_report(arr: &CurveArrangement) -> Result<MaximalityReport> {
    let c = checks(arr)?;
    let real = arr.all_real_points;
    let a = arroid_of(arr)?;
    let fan = build_arroid_fan(&a).ok();
    let thm = match &fan {
        Some(f) => Some(check_thm(f)?.verdict),
        None => None,
    };
    let mut failing = Vec::new();
    if !c.simple {
        failing.push("simple".to_string());
    }
    if !real {
        failing.push("curves_real".to_string());
        failing.push("points_real".to_string());
    }
    match thm {
        Some(true) => {}
        Some(false) => failing.push("thm".to_string()),
        None => failing.push("fan".to_string()),
    }
    let ok = failing.is_empty();
    let (real_b0, tropical_betti, smith_thom_equality) = if ok {
        let b0 = real_b0(arr)?;
        let dims = cohomology_dims(fan.as_ref().expect("fan exists when thm holds"));
        let total: usize = dims.iter().sum();
        (Some(b0), Some(dims), Some(b0 == total as u64))
    } else {
        (None, None, None)
    };
    Ok(MaximalityReport {
        simple: c.simple,
        simple_reading: SIMPLE_READING,
        curves_real: real,
        points_real: real,
        thm,
        failing,
        verdict: if ok { "maximal" } else { "no claim" },
        cohomologically_tropical: ok,
        wunderschoen_preconditions: ok,
        real_b0,
        tropical_betti,
        smith_thom_equality,
    })
}
