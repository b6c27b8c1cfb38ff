//! Arroids of rank one and two: validation, transversality, contraction and
//! deletion.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub id: String,
    pub degree: u64,
}

impl Element {
    pub fn new(id: impl Into<String>, degree: u64) -> Self {
        Self {
            id: id.into(),
            degree,
        }
    }
}

/// Symmetric multiplicity table of a point: a default value plus overrides
/// keyed by the sorted, comma-joined argument ids.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultTable {
    pub default: u64,
    pub entries: BTreeMap<String, u64>,
}

impl MultTable {
    pub fn constant(v: u64) -> Self {
        Self {
            default: v,
            entries: BTreeMap::new(),
        }
    }

    pub fn key(ids: &[&str]) -> String {
        let mut v: Vec<&str> = ids.to_vec();
        v.sort_unstable();
        v.join(",")
    }

    pub fn get(&self, ids: &[&str]) -> u64 {
        *self.entries.get(&Self::key(ids)).unwrap_or(&self.default)
    }

    pub fn set(&mut self, ids: &[&str], v: u64) {
        let k = Self::key(ids);
        if v == self.default {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("default".into(), Value::from(self.default));
        for (k, v) in &self.entries {
            m.insert(k.clone(), Value::from(*v));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("multiplicity table must be an object".into()))?;
        let mut t = MultTable::constant(1);
        if let Some(d) = obj.get("default") {
            t.default = d
                .as_u64()
                .ok_or_else(|| Error::InvalidInput("multiplicity default must be a non-negative integer".into()))?;
        }
        for (k, v) in obj {
            if k == "default" {
                continue;
            }
            let n = v
                .as_u64()
                .ok_or_else(|| Error::InvalidInput(format!("multiplicity `{k}` must be a non-negative integer")))?;
            let ids: Vec<&str> = k.split(',').map(str::trim).collect();
            t.entries.insert(Self::key(&ids), n);
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    /// Member ids, ordered as in the arroid's element list.
    pub members: Vec<String>,
    pub mult: MultTable,
}

impl Point {
    pub fn new(members: &[&str]) -> Self {
        Self {
            members: members.iter().map(|s| s.to_string()).collect(),
            mult: MultTable::constant(1),
        }
    }

    pub fn with_mult(members: &[&str], mult: MultTable) -> Self {
        Self {
            members: members.iter().map(|s| s.to_string()).collect(),
            mult,
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.members.iter().any(|m| m == id)
    }

    fn table_is_one(&self) -> bool {
        self.mult.default == 1 && self.mult.entries.values().all(|&v| v == 1)
    }
}

/// A point of the multiset together with its repetition count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniquePoint {
    pub members: Vec<String>,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutViolation {
    pub tuple: Vec<String>,
    pub expected: u64,
    pub achieved: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub point: usize,
    pub tuple: Vec<String>,
    pub value: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub bezout: Vec<BezoutViolation>,
    pub bounds: Vec<BoundViolation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.bezout.is_empty() && self.bounds.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        for v in &self.bezout {
            parts.push(format!(
                "({}) sums to {} != {}",
                v.tuple.join(","),
                v.achieved,
                v.expected
            ));
        }
        for b in &self.bounds {
            parts.push(format!(
                "point {} has m({}) = {} out of bounds",
                b.point,
                b.tuple.join(","),
                b.value
            ));
        }
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arroid {
    rank: u8,
    elements: Vec<Element>,
    points: Vec<Point>,
    index: HashMap<String, usize>,
}

impl Arroid {
    /// Builds an arroid after checking structural invariants (not Bézout).
    pub fn new(rank: u8, elements: Vec<Element>, points: Vec<Point>) -> Result<Self> {
        if rank != 1 && rank != 2 {
            return Err(Error::InvalidInput(format!("rank must be 1 or 2, got {rank}")));
        }
        let mut index = HashMap::new();
        for (k, e) in elements.iter().enumerate() {
            if e.id.is_empty() || e.id.contains(',') {
                return Err(Error::InvalidInput(format!(
                    "element id `{}` must be non-empty and contain no commas",
                    e.id
                )));
            }
            if e.degree == 0 {
                return Err(Error::InvalidInput(format!("element `{}` has degree 0", e.id)));
            }
            if index.insert(e.id.clone(), k).is_some() {
                return Err(Error::InvalidInput(format!("duplicate element id `{}`", e.id)));
            }
        }
        let mut canon = Vec::with_capacity(points.len());
        for p in points {
            let mut idx = Vec::with_capacity(p.members.len());
            for m in &p.members {
                idx.push(*index.get(m).ok_or_else(|| Error::UnknownElement(m.clone()))?);
            }
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!(
                    "point {:?} repeats a member",
                    p.members
                )));
            }
            if idx.len() < rank as usize {
                return Err(Error::DegeneratePoint(p.members));
            }
            canon.push(Point {
                members: idx.iter().map(|&i| elements[i].id.clone()).collect(),
                mult: p.mult,
            });
        }
        Ok(Self {
            rank,
            elements,
            points: canon,
            index,
        })
    }

    /// Builds and validates.
    pub fn from_incidence(rank: u8, elements: Vec<Element>, points: Vec<Point>) -> Result<Self> {
        let a = Self::new(rank, elements, points)?;
        let report = a.validate();
        if report.ok() {
            Ok(a)
        } else {
            Err(Error::ValidationFailed(Box::new(report)))
        }
    }

    /// Arroid of a simple loop-free matroid of rank three: every element has
    /// degree one and the points are the rank-two flats. `lines` lists the
    /// flats with three or more elements; two-element flats are filled in.
    pub fn from_rank3_matroid(ground: &[&str], lines: &[Vec<&str>]) -> Result<Self> {
        let elements: Vec<Element> = ground.iter().map(|id| Element::new(*id, 1)).collect();
        let mut covered = HashSet::new();
        let mut points = Vec::new();
        for l in lines {
            for (a, x) in l.iter().enumerate() {
                for y in &l[a + 1..] {
                    covered.insert(MultTable::key(&[x, y]));
                }
            }
            points.push(Point::new(l));
        }
        for (a, x) in ground.iter().enumerate() {
            for y in &ground[a + 1..] {
                if !covered.contains(&MultTable::key(&[x, y])) {
                    points.push(Point::new(&[x, y]));
                }
            }
        }
        Self::from_incidence(2, elements, points)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(|e| e.id.as_str())
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn degree(&self, id: &str) -> Result<u64> {
        Ok(self.elements[self.position(id)?].degree)
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.elements.iter().map(|e| e.degree).collect()
    }

    /// Element indices of a point's members.
    pub fn member_indices(&self, p: &Point) -> Vec<usize> {
        p.members.iter().map(|m| self.index[m]).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.elements.len();
        match self.rank {
            1 => {
                for e in &self.elements {
                    let achieved: u64 = self
                        .points
                        .iter()
                        .filter(|p| p.contains(&e.id))
                        .map(|p| p.mult.get(&[&e.id]))
                        .sum();
                    if achieved != e.degree {
                        report.bezout.push(BezoutViolation {
                            tuple: vec![e.id.clone()],
                            expected: e.degree,
                            achieved,
                        });
                    }
                }
            }
            _ => {
                for a in 0..n {
                    for b in a + 1..n {
                        let (x, y) = (&self.elements[a], &self.elements[b]);
                        let achieved: u64 = self
                            .points
                            .iter()
                            .filter(|p| p.contains(&x.id) && p.contains(&y.id))
                            .map(|p| p.mult.get(&[&x.id, &y.id]))
                            .sum();
                        let expected = x.degree * y.degree;
                        if achieved != expected {
                            report.bezout.push(BezoutViolation {
                                tuple: vec![x.id.clone(), y.id.clone()],
                                expected,
                                achieved,
                            });
                        }
                    }
                }
            }
        }
        for (k, p) in self.points.iter().enumerate() {
            for tuple in self.tuples(p) {
                let refs: Vec<&str> = tuple.iter().map(String::as_str).collect();
                let v = p.mult.get(&refs);
                let max_deg = refs
                    .iter()
                    .map(|id| self.elements[self.index[*id]].degree)
                    .max()
                    .unwrap_or(1);
                if v < 1 || v > max_deg {
                    report.bounds.push(BoundViolation {
                        point: k,
                        tuple,
                        value: v,
                    });
                }
            }
        }
        report
    }

    /// Distinct-element argument tuples of a point's multiplicity function.
    fn tuples(&self, p: &Point) -> Vec<Vec<String>> {
        match self.rank {
            1 => p.members.iter().map(|m| vec![m.clone()]).collect(),
            _ => {
                let mut out = Vec::new();
                for (a, x) in p.members.iter().enumerate() {
                    for y in &p.members[a + 1..] {
                        out.push(vec![x.clone(), y.clone()]);
                    }
                }
                out
            }
        }
    }

    pub fn is_transversal(&self) -> bool {
        self.points.iter().all(|p| {
            self.tuples(p).iter().all(|t| {
                let refs: Vec<&str> = t.iter().map(String::as_str).collect();
                p.mult.get(&refs) == 1
            })
        })
    }

    /// Rank two with three degree-one elements that share no point.
    pub fn is_very_affine(&self) -> bool {
        if self.rank != 2 {
            return false;
        }
        let lines: Vec<&str> = self
            .elements
            .iter()
            .filter(|e| e.degree == 1)
            .map(|e| e.id.as_str())
            .collect();
        for a in 0..lines.len() {
            for b in a + 1..lines.len() {
                for c in b + 1..lines.len() {
                    let triple = [lines[a], lines[b], lines[c]];
                    if !self
                        .points
                        .iter()
                        .any(|p| triple.iter().all(|id| p.contains(id)))
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Points with identical member sets and all multiplicities one are
    /// merged; order follows first occurrence.
    pub fn unique_points(&self) -> Vec<UniquePoint> {
        let mut out: Vec<UniquePoint> = Vec::new();
        let mut seen: HashMap<Vec<String>, usize> = HashMap::new();
        for p in &self.points {
            let mergeable = p.table_is_one();
            if mergeable {
                if let Some(&k) = seen.get(&p.members) {
                    out[k].weight += 1;
                    continue;
                }
                seen.insert(p.members.clone(), out.len());
            }
            out.push(UniquePoint {
                members: p.members.clone(),
                weight: 1,
            });
        }
        out
    }

    fn require_rank2(&self) -> Result<()> {
        if self.rank != 2 {
            return Err(Error::RankMismatch {
                expected: 2,
                found: self.rank,
            });
        }
        Ok(())
    }

    /// Rank-one arroid on `A ∖ {i}` recording the points on `i`.
    pub fn contract(&self, i: &str) -> Result<Arroid> {
        self.require_rank2()?;
        let di = self.degree(i)?;
        let elements: Vec<Element> = self
            .elements
            .iter()
            .filter(|e| e.id != i)
            .map(|e| Element::new(e.id.clone(), di * e.degree))
            .collect();
        let points: Vec<Point> = self
            .points
            .iter()
            .filter(|p| p.contains(i))
            .map(|p| {
                let members: Vec<String> = p.members.iter().filter(|m| *m != i).cloned().collect();
                let mut mult = MultTable::constant(1);
                for j in &members {
                    mult.set(&[j], p.mult.get(&[i, j]));
                }
                Point { members, mult }
            })
            .collect();
        Self::from_incidence(1, elements, points)
    }

    /// Rank-two arroid on `A ∖ {i}` with the points that survive removing `i`.
    pub fn delete(&self, i: &str) -> Result<Arroid> {
        self.require_rank2()?;
        self.position(i)?;
        let elements: Vec<Element> = self.elements.iter().filter(|e| e.id != i).cloned().collect();
        let mut points = Vec::new();
        for p in &self.points {
            if !p.contains(i) {
                points.push(p.clone());
                continue;
            }
            if p.members.len() == 2 {
                continue;
            }
            let members: Vec<String> = p.members.iter().filter(|m| *m != i).cloned().collect();
            if members.len() < 2 {
                return Err(Error::DegeneratePoint(members));
            }
            let mut mult = MultTable::constant(p.mult.default);
            for (k, v) in &p.mult.entries {
                if !k.split(',').any(|x| x == i) {
                    mult.entries.insert(k.clone(), *v);
                }
            }
            points.push(Point { members, mult });
        }
        Self::from_incidence(2, elements, points)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "rank": self.rank,
            "elements": self.elements.iter().map(|e| serde_json::json!({"id": e.id, "degree": e.degree})).collect::<Vec<_>>(),
            "points": self.points.iter().map(|p| serde_json::json!({"members": p.members, "mult": p.mult.to_json()})).collect::<Vec<_>>(),
        })
    }

    /// Parses the arroid schema without validating the Bézout property.
    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            rank: u8,
            elements: Vec<Element>,
            points: Vec<RawPoint>,
        }
        #[derive(Deserialize)]
        struct RawPoint {
            members: Vec<String>,
            #[serde(default)]
            mult: Option<Value>,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        let mut points = Vec::with_capacity(raw.points.len());
        for p in raw.points {
            let mult = match &p.mult {
                Some(m) => MultTable::from_json(m)?,
                None => MultTable::constant(1),
            };
            points.push(Point {
                members: p.members,
                mult,
            });
        }
        Self::new(raw.rank, raw.elements, points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(ids: &[&str]) -> Vec<Element> {
        ids.iter().map(|id| Element::new(*id, 1)).collect()
    }

    fn generic_lines_conic() -> Arroid {
        let mut el = lines(&["1", "2", "3"]);
        el.push(Element::new("4", 2));
        let pts = [
            vec!["1", "2"],
            vec!["1", "3"],
            vec!["2", "3"],
            vec!["1", "4"],
            vec!["1", "4"],
            vec!["2", "4"],
            vec!["2", "4"],
            vec!["3", "4"],
            vec!["3", "4"],
        ];
        Arroid::from_incidence(2, el, pts.iter().map(|p| Point::new(p)).collect()).unwrap()
    }

    #[test]
    fn generic_lines_and_conic_validates() {
        let a = generic_lines_conic();
        assert!(a.validate().ok());
        assert!(a.is_transversal());
        let u = a.unique_points();
        assert_eq!(u.len(), 6);
        assert_eq!(u[3].weight, 2);
    }

    #[test]
    fn missing_point_reports_pair() {
        let a = Arroid::new(
            2,
            lines(&["1", "2", "3"]),
            vec![Point::new(&["1", "3"]), Point::new(&["2", "3"])],
        )
        .unwrap();
        let r = a.validate();
        assert_eq!(
            r.bezout,
            vec![BezoutViolation {
                tuple: vec!["1".into(), "2".into()],
                expected: 1,
                achieved: 0
            }]
        );
    }

    #[test]
    fn empty_arroid_is_transversal() {
        let a = Arroid::new(2, vec![], vec![]).unwrap();
        assert!(a.validate().ok());
        assert!(a.is_transversal());
    }

    #[test]
    fn tangency_is_not_transversal() {
        let el = vec![Element::new("L", 1), Element::new("C", 2)];
        let mut m = MultTable::constant(1);
        m.set(&["L", "C"], 2);
        let a = Arroid::from_incidence(2, el, vec![Point::with_mult(&["L", "C"], m)]).unwrap();
        assert!(!a.is_transversal());
    }

    #[test]
    fn contract_conic() {
        let c = generic_lines_conic().contract("4").unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.degrees(), vec![2, 2, 2]);
        assert_eq!(c.points().len(), 6);
        assert!(c.unique_points().iter().all(|u| u.weight == 2 && u.members.len() == 1));
    }

    #[test]
    fn delete_conic_gives_three_lines() {
        let d = generic_lines_conic().delete("4").unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.points().len(), 3);
        assert!(d.is_transversal());
    }

    #[test]
    fn errors() {
        let a = generic_lines_conic();
        assert!(matches!(a.contract("9"), Err(Error::UnknownElement(_))));
        let c = a.contract("4").unwrap();
        assert!(matches!(c.delete("1"), Err(Error::RankMismatch { .. })));
        let bad = Arroid::from_incidence(2, lines(&["1", "2"]), vec![]);
        assert!(matches!(bad, Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn lines_and_conic_through_triple_points() {
        let mut el = lines(&["1", "2", "3"]);
        el.push(Element::new("4", 2));
        let a = Arroid::from_incidence(
            2,
            el,
            vec![
                Point::new(&["1", "2", "4"]),
                Point::new(&["1", "3", "4"]),
                Point::new(&["2", "3", "4"]),
            ],
        )
        .unwrap();
        assert!(a.is_transversal());
    }

    #[test]
    fn matroid_constructor() {
        // uniform matroid U(3,4): four generic lines
        let a = Arroid::from_rank3_matroid(&["1", "2", "3", "4"], &[]).unwrap();
        assert_eq!(a.points().len(), 6);
        // a triple point plus a generic line
        let b = Arroid::from_rank3_matroid(&["1", "2", "3", "4"], &[vec!["1", "2", "3"]]).unwrap();
        assert_eq!(b.points().len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let a = generic_lines_conic();
        let b = Arroid::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
    }
}
