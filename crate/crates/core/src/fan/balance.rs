use num_traits::Zero;
use serde::Serialize;

use super::WeightedFan;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, rank_z, Int, MatZ, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    /// Labels of rays where balancing fails (`"origin"` for 1-dimensional fans).
    pub failures: Vec<String>,
}

impl BalanceReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_balanced(f: &WeightedFan) -> BalanceReport {
    let m = f.ambient_dim();
    let mut failures = Vec::new();
    if f.dim == 1 {
        let mut s = vec![Int::zero(); m];
        for c in &f.cones {
            for (x, v) in s.iter_mut().zip(&f.rays[c.rays[0]].vector) {
                *x += &c.weight * v;
            }
        }
        if s.iter().any(|x| !x.is_zero()) {
            failures.push("origin".to_string());
        }
        return BalanceReport { failures };
    }
    for (k, ray) in f.rays.iter().enumerate() {
        let mut s = vec![Int::zero(); m];
        for c in f.facets_at(k) {
            let u = &f.rays[f.other_ray(c, k)].vector;
            for (x, v) in s.iter_mut().zip(u) {
                *x += &f.cones[c].weight * v;
            }
        }
        let pair = MatZ::from_rows(&[ray.vector.clone(), s], m);
        if rank_z(&pair) > 1 {
            failures.push(ray.label.clone());
        }
    }
    BalanceReport { failures }
}

/// Weights on the facets at a ray that satisfy balancing there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingSpace {
    pub ray: String,
    pub facet_labels: Vec<String>,
    pub solution_basis: Vec<Vec<Rational>>,
}

impl BalancingSpace {
    pub fn dim(&self) -> usize {
        self.solution_basis.len()
    }

    pub fn is_unique(&self) -> bool {
        self.dim() == 1
    }
}

/// Kernel of `α ↦ Σ α_σ v_{σ/ρ}` modulo the span of the ray.
pub fn unique_balance_at_ray(f: &WeightedFan, ray: &str) -> Result<BalancingSpace> {
    let k = f.ray_index(ray)?;
    if f.dim != 2 {
        return Err(Error::PreconditionFailed(
            "unique balancing is defined for 2-dimensional fans".into(),
        ));
    }
    let facets = f.facets_at(k);
    let m = f.ambient_dim();
    let mut cols: Vec<Vec<Int>> = facets
        .iter()
        .map(|&c| f.rays[f.other_ray(c, k)].vector.clone())
        .collect();
    cols.push(f.rays[k].vector.clone());
    let a = MatZ::from_cols(&cols, m).to_q();
    let kernel = kernel_basis(&a);
    let n = facets.len();
    let solution_basis = kernel.into_iter().map(|v| v[..n].to_vec()).collect();
    Ok(BalancingSpace {
        ray: ray.to_string(),
        facet_labels: facets.iter().map(|&c| f.cones[c].label.clone()).collect(),
        solution_basis,
    })
}
