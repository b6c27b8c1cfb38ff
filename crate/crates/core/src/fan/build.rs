use num_traits::Zero;

use super::{Cone, QuotientLattice, Ray, WeightedFan};
use crate::arroid::Arroid;
use crate::error::{Error, Result};
use crate::exactlin::{primitive, Int};

/// The weighted fan of a transversal arroid.
///
/// Rank 2: rays `[e_i]` for elements and `v_p = Σ_{j∈p} [e_j]` for unique
/// points, with a cone `(ρ_i, ρ_p)` of weight `w(p)` for each `i ∈ p`.
/// Rank 1: one ray `v_p` of weight `w(p)` per unique point.
pub fn build_arroid_fan(a: &Arroid) -> Result<WeightedFan> {
    let report = a.validate();
    if !report.ok() {
        return Err(Error::ValidationFailed(Box::new(report)));
    }
    if !a.is_transversal() {
        return Err(Error::NotTransversal);
    }
    let labels: Vec<String> = a.ids().map(str::to_string).collect();
    let degrees: Vec<Int> = a.degrees().into_iter().map(Int::from).collect();
    let lattice = QuotientLattice::new(labels, degrees)?;

    let uniq = a.unique_points();
    let point_vec = |members: &[String]| -> Result<Vec<Int>> {
        let idx: Vec<usize> = members.iter().map(|m| a.position(m)).collect::<Result<_>>()?;
        ray_class(lattice.class_of_sum(&idx), &format!("point {members:?}"))
    };

    let mut rays = Vec::new();
    let mut cones = Vec::new();
    if a.rank() == 1 {
        for (k, u) in uniq.iter().enumerate() {
            rays.push(Ray {
                label: format!("r:p{k}"),
                vector: point_vec(&u.members)?,
                element: None,
            });
            cones.push(Cone {
                label: format!("c:p{k}"),
                rays: vec![k],
                weight: Int::from(u.weight),
            });
        }
        return WeightedFan::new(lattice, rays, cones, 1);
    }

    let n = a.len();
    for (i, e) in a.elements().iter().enumerate() {
        rays.push(Ray {
            label: format!("r:{}", e.id),
            vector: ray_class(lattice.class_of_sum(&[i]), &format!("element `{}`", e.id))?,
            element: Some(e.id.clone()),
        });
    }
    for (k, u) in uniq.iter().enumerate() {
        rays.push(Ray {
            label: format!("r:p{k}"),
            vector: point_vec(&u.members)?,
            element: None,
        });
    }
    for (i, e) in a.elements().iter().enumerate() {
        for (k, u) in uniq.iter().enumerate() {
            if u.members.contains(&e.id) {
                cones.push(Cone {
                    label: format!("c:{}|p{k}", e.id),
                    rays: vec![i, n + k],
                    weight: Int::from(u.weight),
                });
            }
        }
    }
    WeightedFan::new(lattice, rays, cones, 2)
}

/// Ray classes must be nonzero and primitive; both hold for very affine
/// arroids and their contractions.
fn ray_class(v: Vec<Int>, what: &str) -> Result<Vec<Int>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::PreconditionFailed(format!(
            "{what} has zero class in the quotient"
        )));
    }
    if primitive(&v) != v {
        return Err(Error::PreconditionFailed(format!(
            "{what} has a non-primitive class in the quotient"
        )));
    }
    Ok(v)
}
