//! Weighted rational fans of dimension one and two in a quotient lattice.

mod balance;
mod build;
mod modification;
mod star;
mod support;

pub use balance::{check_balanced, unique_balance_at_ray, BalanceReport, BalancingSpace};
pub use build::build_arroid_fan;
pub use modification::{verify_modification, ModificationReport};
pub use star::{fans_isomorphic, reduced_star};
pub use support::{cone_contains, support_contains, support_equal};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlin::{primitive, quotient_basis, Int, QuotientBasis};

/// `Z^n / <g>` for a primitive vector `g`, with its canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLattice {
    /// Labels of the ambient coordinates.
    pub labels: Vec<String>,
    /// The degree vector as given (possibly non-primitive).
    pub degrees: Vec<Int>,
    /// Primitive generator actually divided out.
    pub generator: Vec<Int>,
    pub basis: QuotientBasis,
}

impl QuotientLattice {
    /// Quotient by the saturation of the line through `degrees`.
    pub fn new(labels: Vec<String>, degrees: Vec<Int>) -> Result<Self> {
        if labels.len() != degrees.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: degrees.len(),
            });
        }
        if degrees.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("degree vector is zero".into()));
        }
        let generator = primitive(&degrees);
        let basis = quotient_basis(labels.len(), std::slice::from_ref(&generator))?;
        Ok(Self {
            labels,
            degrees,
            generator,
            basis,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn eliminated(&self) -> Option<&str> {
        self.basis.eliminated.map(|k| self.labels[k].as_str())
    }

    /// Class of an ambient vector.
    pub fn class(&self, v: &[Int]) -> Vec<Int> {
        self.basis.project(v)
    }

    /// An ambient representative of a quotient vector.
    pub fn lift(&self, v: &[Int]) -> Vec<Int> {
        self.basis.lift(v)
    }

    /// Class of the ambient indicator vector of `idx`.
    pub fn class_of_sum(&self, idx: &[usize]) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.ambient_dim()];
        for &i in idx {
            v[i] += 1;
        }
        self.class(&v)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Names of the quotient coordinates.
    pub fn coordinate_labels(&self) -> Vec<String> {
        match self.basis.eliminated {
            Some(k) => self
                .labels
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, l)| l.clone())
                .collect(),
            None => (0..self.dim()).map(|k| format!("q{k}")).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub label: String,
    /// Primitive vector in quotient coordinates.
    pub vector: Vec<Int>,
    /// Element id when this is the ray `[e_i]` of an arroid fan.
    pub element: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub label: String,
    /// Ordered ray indices; the order fixes the orientation.
    pub rays: Vec<usize>,
    pub weight: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFan {
    pub lattice: QuotientLattice,
    pub rays: Vec<Ray>,
    /// Maximal cones (facets), each with `dim` rays.
    pub cones: Vec<Cone>,
    pub dim: usize,
}

impl WeightedFan {
    /// Checks primitivity, independence and label uniqueness.
    pub fn new(lattice: QuotientLattice, rays: Vec<Ray>, cones: Vec<Cone>, dim: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidInput(format!("fan dimension must be 1 or 2, got {dim}")));
        }
        let m = lattice.dim();
        let mut labels = BTreeSet::new();
        for r in &rays {
            if r.vector.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: r.vector.len(),
                });
            }
            if r.vector.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput(format!("ray `{}` is zero", r.label)));
            }
            if primitive(&r.vector) != r.vector {
                return Err(Error::InvalidInput(format!("ray `{}` is not primitive", r.label)));
            }
            if !labels.insert(r.label.clone()) {
                return Err(Error::InvalidInput(format!("duplicate ray label `{}`", r.label)));
            }
        }
        let mut cone_labels = BTreeSet::new();
        for c in &cones {
            if c.rays.len() != dim || c.rays.iter().any(|&k| k >= rays.len()) {
                return Err(Error::InvalidInput(format!("cone `{}` is malformed", c.label)));
            }
            if dim == 2 && !independent(&rays[c.rays[0]].vector, &rays[c.rays[1]].vector) {
                return Err(Error::InvalidInput(format!(
                    "cone `{}` has dependent rays",
                    c.label
                )));
            }
            if !cone_labels.insert(c.label.clone()) {
                return Err(Error::InvalidInput(format!("duplicate cone label `{}`", c.label)));
            }
        }
        Ok(Self {
            lattice,
            rays,
            cones,
            dim,
        })
    }

    /// Dimension of the ambient quotient space.
    pub fn ambient_dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn ray_index(&self, label: &str) -> Result<usize> {
        self.rays
            .iter()
            .position(|r| r.label == label)
            .ok_or_else(|| Error::UnknownRay(label.to_string()))
    }

    pub fn cone_index(&self, label: &str) -> Result<usize> {
        self.cones
            .iter()
            .position(|c| c.label == label)
            .ok_or_else(|| Error::UnknownCone(label.to_string()))
    }

    /// Ray of the element `id`, if the fan has one.
    pub fn element_ray(&self, id: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.element.as_deref() == Some(id))
    }

    /// Facets containing ray `k`.
    pub fn facets_at(&self, k: usize) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&c| self.cones[c].rays.contains(&k))
            .collect()
    }

    /// For a 2-cone and one of its rays, the other ray.
    pub fn other_ray(&self, cone: usize, k: usize) -> usize {
        let r = &self.cones[cone].rays;
        if r[0] == k {
            r[1]
        } else {
            r[0]
        }
    }

    pub fn with_weight(&self, cone: usize, w: Int) -> Self {
        let mut f = self.clone();
        f.cones[cone].weight = w;
        f
    }

    /// Facets form a connected graph when adjacent through a shared ray.
    pub fn connected_in_codim_one(&self) -> bool {
        let n = self.cones.len();
        if n <= 1 {
            return true;
        }
        if self.dim == 1 {
            // facets of a 1-dimensional fan meet only at the origin
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &r in &self.cones[c].rays {
                for d in self.facets_at(r) {
                    if !seen[d] {
                        seen[d] = true;
                        stack.push(d);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Facets as (sorted ray vectors, total weight), merging coincident cones.
    pub fn facet_signature(&self) -> BTreeMap<Vec<Vec<Int>>, Int> {
        let mut out: BTreeMap<Vec<Vec<Int>>, Int> = BTreeMap::new();
        for c in &self.cones {
            let mut key: Vec<Vec<Int>> = c.rays.iter().map(|&k| self.rays[k].vector.clone()).collect();
            key.sort();
            *out.entry(key).or_insert_with(Int::zero) += &c.weight;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "quotient": {
                "labels": self.lattice.labels,
                "degrees": self.lattice.degrees.iter().map(int_json).collect::<Vec<_>>(),
                "eliminated": self.lattice.eliminated(),
            },
            "rays": self.rays.iter().map(|r| {
                let mut v = json!({
                    "label": r.label,
                    "vector": r.vector.iter().map(int_json).collect::<Vec<_>>(),
                });
                if let Some(e) = &r.element {
                    v["element"] = json!(e);
                }
                v
            }).collect::<Vec<_>>(),
            "cones": self.cones.iter().map(|c| json!({
                "label": c.label,
                "rays": c.rays.iter().map(|&k| self.rays[k].label.clone()).collect::<Vec<_>>(),
                "weight": int_json(&c.weight),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("fan json: {what}"));
        let q = v.get("quotient").ok_or_else(|| bad("missing quotient"))?;
        let labels: Vec<String> = serde_json::from_value(q.get("labels").cloned().ok_or_else(|| bad("missing labels"))?)?;
        let degrees = int_list(q.get("degrees").ok_or_else(|| bad("missing degrees"))?)?;
        let lattice = QuotientLattice::new(labels, degrees)?;
        let mut rays = Vec::new();
        for r in v.get("rays").and_then(Value::as_array).ok_or_else(|| bad("missing rays"))? {
            rays.push(Ray {
                label: r.get("label").and_then(Value::as_str).ok_or_else(|| bad("ray label"))?.to_string(),
                vector: int_list(r.get("vector").ok_or_else(|| bad("ray vector"))?)?,
                element: r.get("element").and_then(Value::as_str).map(str::to_string),
            });
        }
        let mut cones = Vec::new();
        for c in v.get("cones").and_then(Value::as_array).ok_or_else(|| bad("missing cones"))? {
            let names: Vec<String> = serde_json::from_value(c.get("rays").cloned().ok_or_else(|| bad("cone rays"))?)?;
            let mut idx = Vec::new();
            for n in &names {
                idx.push(rays.iter().position(|r| &r.label == n).ok_or_else(|| Error::UnknownRay(n.clone()))?);
            }
            cones.push(Cone {
                label: c.get("label").and_then(Value::as_str).ok_or_else(|| bad("cone label"))?.to_string(),
                rays: idx,
                weight: int_from_json(c.get("weight").ok_or_else(|| bad("cone weight"))?)?,
            });
        }
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .unwrap_or_else(|| cones.first().map_or(1, |c| c.rays.len()));
        Self::new(lattice, rays, cones, dim)
    }
}

pub(crate) fn independent(a: &[Int], b: &[Int]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return true;
            }
        }
    }
    false
}

/// Integers as JSON numbers when they fit, strings otherwise.
pub(crate) fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub(crate) fn int_from_json(v: &Value) -> Result<Int> {
    if let Some(i) = v.as_i64() {
        return Ok(Int::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidInput(format!("expected an integer, got {v}")))
}

pub(crate) fn int_list(v: &Value) -> Result<Vec<Int>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput(format!("expected an integer list, got {v}")))?
        .iter()
        .map(int_from_json)
        .collect()
}
