use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{build_arroid_fan, fans_isomorphic, independent, reduced_star, WeightedFan};
use crate::arroid::Arroid;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, primitive, rref, to_q, Int, MatQ, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModificationReport {
    pub element: String,
    /// Reduced star at `[e_i]` equals the contraction's fan.
    pub star_matches: bool,
    /// Every cone maps onto a deletion facet (weights preserved, bijectively)
    /// or onto a deletion ray.
    pub cone_cases_ok: bool,
    /// Every sampled fiber is a point or a half-line in the `e_i` direction.
    pub fibers_ok: bool,
    pub problems: Vec<String>,
}

impl ModificationReport {
    pub fn ok(&self) -> bool {
        self.star_matches && self.cone_cases_ok && self.fibers_ok
    }
}

/// Checks that the arroid fan is a tropical modification of the deletion's
/// fan along the contraction's fan, via the projection forgetting `e_i`.
pub fn verify_modification(a: &Arroid, i: &str) -> Result<ModificationReport> {
    let fa = build_arroid_fan(a)?;
    let fd = build_arroid_fan(&a.delete(i)?)?;
    let fc = build_arroid_fan(&a.contract(i)?)?;
    let mut problems = Vec::new();

    let ri = fa
        .element_ray(i)
        .ok_or_else(|| Error::UnknownElement(i.to_string()))?;
    let star = reduced_star(&fa, &fa.rays[ri].label)?;
    let star_matches = fans_isomorphic(&star, &fc);
    if !star_matches {
        problems.push("reduced star differs from the contraction fan".into());
    }

    let c = fa
        .lattice
        .position(i)
        .ok_or_else(|| Error::UnknownElement(i.to_string()))?;
    let proj = |u: &[Int]| -> Vec<Int> {
        let lifted = fa.lattice.lift(u);
        let dropped: Vec<Int> = lifted
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != c)
            .map(|(_, x)| x.clone())
            .collect();
        fd.lattice.class(&dropped)
    };

    // Case analysis on cones.
    let deletion_rays: BTreeSet<Vec<Int>> = fd.rays.iter().map(|r| r.vector.clone()).collect();
    let mut image: BTreeMap<Vec<Vec<Int>>, Int> = BTreeMap::new();
    let mut cone_cases_ok = true;
    for cone in &fa.cones {
        let p: Vec<Vec<Int>> = cone.rays.iter().map(|&k| proj(&fa.rays[k].vector)).collect();
        if independent(&p[0], &p[1]) {
            let mut key = vec![primitive(&p[0]), primitive(&p[1])];
            key.sort();
            *image.entry(key).or_insert_with(Int::zero) += &cone.weight;
            continue;
        }
        let dirs: BTreeSet<Vec<Int>> = p
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .map(|v| primitive(v))
            .collect();
        if dirs.len() != 1 || !deletion_rays.contains(dirs.iter().next().unwrap()) {
            cone_cases_ok = false;
            problems.push(format!("cone `{}` does not project onto a deletion ray", cone.label));
        }
    }
    if image != fd.facet_signature() {
        cone_cases_ok = false;
        problems.push("projected facets differ from the deletion fan's facets".into());
    }

    // Fibers over sample points of the deletion support.
    let kappa = fa.rays[ri].vector.clone();
    let m = fd.ambient_dim();
    let mut samples: Vec<(String, Vec<Int>)> = vec![("origin".into(), vec![Int::zero(); m])];
    for r in &fd.rays {
        samples.push((r.label.clone(), r.vector.clone()));
    }
    for cone in &fd.cones {
        let mut s = vec![Int::zero(); m];
        for &k in &cone.rays {
            for (x, v) in s.iter_mut().zip(&fd.rays[k].vector) {
                *x += v;
            }
        }
        samples.push((cone.label.clone(), s));
    }
    let mut fibers_ok = true;
    for (label, x) in samples {
        let ambient = fd.lattice.lift(&x);
        let mut full = Vec::with_capacity(ambient.len() + 1);
        full.extend_from_slice(&ambient[..c]);
        full.push(Int::zero());
        full.extend_from_slice(&ambient[c..]);
        let base = fa.lattice.class(&full);
        let pieces: Vec<Interval> = fa
            .cones
            .iter()
            .filter_map(|cone| fiber_piece(&fa, &cone.rays, &kappa, &base))
            .collect();
        if !is_point_or_half_line(pieces) {
            fibers_ok = false;
            problems.push(format!("fiber over `{label}` is not a point or an upward half-line"));
        }
    }

    Ok(ModificationReport {
        element: i.to_string(),
        star_matches,
        cone_cases_ok,
        fibers_ok,
        problems,
    })
}

/// Closed interval of `t`; `None` bounds are infinite.
#[derive(Clone, Debug)]
struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
}

/// `{t : base + t·κ ∈ cone}` for a 2-cone.
fn fiber_piece(f: &WeightedFan, rays: &[usize], kappa: &[Int], base: &[Int]) -> Option<Interval> {
    let m = f.ambient_dim();
    let u1 = to_q(&f.rays[rays[0]].vector);
    let u2 = to_q(&f.rays[rays[1]].vector);
    let k = to_q(kappa);
    let x = to_q(base);
    // a·u1 + b·u2 − t·κ = x
    let mat = MatQ::from_fn(m, 3, |r, col| match col {
        0 => u1[r].clone(),
        1 => u2[r].clone(),
        _ => -k[r].clone(),
    });
    let aug = MatQ::from_fn(m, 4, |r, col| if col < 3 { mat[(r, col)].clone() } else { x[r].clone() });
    let red = rref(&aug);
    if red.pivots.contains(&3) {
        return None;
    }
    let mut s0 = vec![Rational::zero(); 3];
    for (row, &p) in red.pivots.iter().enumerate() {
        s0[p] = red.matrix[(row, 3)].clone();
    }
    let ker = kernel_basis(&mat);
    match ker.len() {
        0 => (!s0[0].is_negative() && !s0[1].is_negative()).then(|| Interval {
            lo: Some(s0[2].clone()),
            hi: Some(s0[2].clone()),
        }),
        1 => {
            let d = &ker[0];
            // λ-range from a, b ≥ 0
            let mut lo: Option<Rational> = None;
            let mut hi: Option<Rational> = None;
            for j in 0..2 {
                if d[j].is_zero() {
                    if s0[j].is_negative() {
                        return None;
                    }
                    continue;
                }
                let bound = -&s0[j] / &d[j];
                if d[j].is_positive() {
                    lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
                } else {
                    hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
                }
            }
            if let (Some(l), Some(h)) = (&lo, &hi) {
                if l > h {
                    return None;
                }
            }
            let t = |lam: &Rational| &s0[2] + lam * &d[2];
            if d[2].is_zero() {
                return Some(Interval {
                    lo: Some(s0[2].clone()),
                    hi: Some(s0[2].clone()),
                });
            }
            let (tl, th) = (lo.as_ref().map(t), hi.as_ref().map(t));
            Some(if d[2].is_positive() {
                Interval { lo: tl, hi: th }
            } else {
                Interval { lo: th, hi: tl }
            })
        }
        _ => None,
    }
}

fn is_point_or_half_line(mut pieces: Vec<Interval>) -> bool {
    if pieces.is_empty() {
        return false;
    }
    pieces.sort_by(|a, b| match (&a.lo, &b.lo) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, _) => std::cmp::Ordering::Less,
        (_, None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => x.cmp(y),
    });
    let mut lo = pieces[0].lo.clone();
    let mut hi = pieces[0].hi.clone();
    for p in &pieces[1..] {
        let touches = match (&hi, &p.lo) {
            (None, _) => true,
            (Some(h), Some(l)) => l <= h,
            (Some(_), None) => true,
        };
        if !touches {
            return false;
        }
        hi = match (&hi, &p.hi) {
            (None, _) | (_, None) => None,
            (Some(a), Some(b)) => Some(a.clone().max(b.clone())),
        };
        if p.lo.is_none() {
            lo = None;
        }
    }
    match (lo, hi) {
        (Some(_), None) => true,
        (Some(l), Some(h)) => l == h,
        _ => false,
    }
}
