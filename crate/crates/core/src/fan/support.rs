use num_traits::{Signed, Zero};

use super::WeightedFan;
use crate::error::{Error, Result};
use crate::exactlin::{rank_z, to_q, MatQ, MatZ, Rational, RowSolver};

/// Coefficients of `v` on the generators of a cone, if `v` lies in their span.
fn coefficients(f: &WeightedFan, cone: usize, v: &[Rational]) -> Option<Vec<Rational>> {
    let gens: Vec<Vec<Rational>> = f.cones[cone]
        .rays
        .iter()
        .map(|&k| to_q(&f.rays[k].vector))
        .collect();
    let b = MatQ::from_rows(&gens, f.ambient_dim());
    RowSolver::new(b).solve(v)
}

pub fn cone_contains(f: &WeightedFan, cone: usize, v: &[Rational]) -> bool {
    coefficients(f, cone, v).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
}

pub fn support_contains(f: &WeightedFan, v: &[Rational]) -> Result<bool> {
    if v.len() != f.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: v.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    Ok((0..f.cones.len()).any(|c| cone_contains(f, c, v)))
}

/// Equality of supports, by refining each facet of one fan with the rays of
/// the other and locating every piece in a facet of the other fan.
pub fn support_equal(f: &WeightedFan, g: &WeightedFan) -> Result<bool> {
    if f.ambient_dim() != g.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_dim(),
            found: g.ambient_dim(),
        });
    }
    if f.dim != g.dim {
        return Ok(false);
    }
    Ok(covered_by(f, g)? && covered_by(g, f)?)
}

fn covered_by(f: &WeightedFan, g: &WeightedFan) -> Result<bool> {
    if f.dim == 1 {
        for r in &f.rays {
            if !support_contains(g, &to_q(&r.vector))? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let m = f.ambient_dim();
    for c in 0..f.cones.len() {
        let u1 = to_q(&f.rays[f.cones[c].rays[0]].vector);
        let u2 = to_q(&f.rays[f.cones[c].rays[1]].vector);
        let mut ts = vec![Rational::zero(), Rational::from_integer(1.into())];
        for w in &g.rays {
            if let Some(ab) = coefficients(f, c, &to_q(&w.vector)) {
                if ab.iter().all(|x| !x.is_negative()) {
                    ts.push(&ab[1] / (&ab[0] + &ab[1]));
                }
            }
        }
        ts.sort();
        ts.dedup();
        let plane = [f.rays[f.cones[c].rays[0]].vector.clone(), f.rays[f.cones[c].rays[1]].vector.clone()];
        for w in ts.windows(2) {
            let t = (&w[0] + &w[1]) / Rational::from_integer(2.into());
            let one_minus = Rational::from_integer(1.into()) - &t;
            let mid: Vec<Rational> = u1.iter().zip(&u2).map(|(a, b)| &one_minus * a + &t * b).collect();
            let found = (0..g.cones.len()).any(|d| {
                let mut rows = plane.to_vec();
                rows.extend(g.cones[d].rays.iter().map(|&k| g.rays[k].vector.clone()));
                rank_z(&MatZ::from_rows(&rows, m)) == 2 && cone_contains(g, d, &mid)
            });
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
