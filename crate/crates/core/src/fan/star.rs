use std::collections::HashMap;

use num_traits::Zero;

use super::{Cone, QuotientLattice, Ray, WeightedFan};
use crate::error::{Error, Result};
use crate::exactlin::{primitive, Int};

/// The star of a ray projected to `N / span(ray)`: a 1-dimensional fan with
/// one ray per facet containing the ray (coincident directions merged).
///
/// At an element ray `[e_i]` the quotient is written in the coordinates of
/// `Z^{A∖i} / <d|_{A∖i}>`, the same coordinates as the contraction's fan.
pub fn reduced_star(f: &WeightedFan, ray: &str) -> Result<WeightedFan> {
    let k = f.ray_index(ray)?;
    if f.dim != 2 {
        return Err(Error::PreconditionFailed(
            "reduced stars are taken in 2-dimensional fans".into(),
        ));
    }
    let element_coord = f.rays[k]
        .element
        .as_deref()
        .and_then(|id| f.lattice.position(id))
        .filter(|_| f.lattice.ambient_dim() >= 2);

    let (lattice, map): (QuotientLattice, Box<dyn Fn(&[Int]) -> Vec<Int>>) = match element_coord {
        Some(c) => {
            let drop = move |v: &[Int]| -> Vec<Int> {
                v.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            };
            let labels: Vec<String> = f
                .lattice
                .labels
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != c)
                .map(|(_, l)| l.clone())
                .collect();
            let lat = QuotientLattice::new(labels, drop(&f.lattice.degrees))?;
            let parent = f.lattice.clone();
            let inner = lat.clone();
            (
                lat,
                Box::new(move |u: &[Int]| inner.class(&drop(&parent.lift(u)))),
            )
        }
        None => {
            let lat = QuotientLattice::new(
                f.lattice.coordinate_labels(),
                f.rays[k].vector.clone(),
            )?;
            let inner = lat.clone();
            (lat, Box::new(move |u: &[Int]| inner.class(u)))
        }
    };

    let mut rays: Vec<Ray> = Vec::new();
    let mut cones: Vec<Cone> = Vec::new();
    let mut by_dir: HashMap<Vec<Int>, usize> = HashMap::new();
    for c in f.facets_at(k) {
        let other = &f.rays[f.other_ray(c, k)];
        let v = primitive(&map(&other.vector));
        if v.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput(format!(
                "cone `{}` degenerates in the star of `{ray}`",
                f.cones[c].label
            )));
        }
        match by_dir.get(&v) {
            Some(&j) => cones[j].weight += &f.cones[c].weight,
            None => {
                by_dir.insert(v.clone(), rays.len());
                let suffix = other.label.strip_prefix("r:").unwrap_or(&other.label);
                cones.push(Cone {
                    label: format!("c:{suffix}"),
                    rays: vec![rays.len()],
                    weight: f.cones[c].weight.clone(),
                });
                rays.push(Ray {
                    label: other.label.clone(),
                    vector: v,
                    element: other.element.clone(),
                });
            }
        }
    }
    WeightedFan::new(lattice, rays, cones, 1)
}

/// Same coordinates, and a bijection of rays by exact vector equality that
/// carries facets to facets with equal weights.
pub fn fans_isomorphic(f: &WeightedFan, g: &WeightedFan) -> bool {
    f.dim == g.dim
        && f.lattice.labels == g.lattice.labels
        && f.lattice.generator == g.lattice.generator
        && f.lattice.basis == g.lattice.basis
        && f.facet_signature() == g.facet_signature()
}
