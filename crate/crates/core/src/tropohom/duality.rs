use num_traits::Zero;
use serde::Serialize;

use super::complex::{coordinates, BMComplex};
use crate::arroid::Arroid;
use crate::error::{Error, Result};
use crate::exactlin::{
    inverse_q, primitive, rank_q, to_q, interior_product, wedge_vectors, Int, MatQ, Multivector, Rational,
};
use crate::fan::{build_arroid_fan, reduced_star, unique_balance_at_ray, WeightedFan};
use crate::tropohom::cohomology_dims;

/// `[Σ, ω]` as a top-degree chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalClass {
    /// Per facet: label and `ω(σ)` times the oriented generator of `∧^d L(σ)`.
    pub components: Vec<(String, Multivector)>,
    /// The same chain in the basis of `C_{d,d}`.
    pub chain: Vec<Rational>,
}

/// Oriented generator of `∧^d L(σ)`: the wedge of the ordered cone rays,
/// scaled to be primitive.
fn facet_generator(f: &WeightedFan, cone: usize) -> Multivector {
    let m = f.ambient_dim();
    let vs: Vec<Vec<Rational>> = f.cones[cone].rays.iter().map(|&k| to_q(&f.rays[k].vector)).collect();
    let w = wedge_vectors(m, &vs);
    let ints: Vec<Int> = w.coeffs.iter().map(|x| x.to_integer()).collect();
    Multivector {
        dim: m,
        degree: f.dim,
        coeffs: to_q(&primitive(&ints)),
    }
}

/// The fundamental chain without the cycle check.
fn fundamental_chain(f: &WeightedFan, top: &BMComplex) -> FundamentalClass {
    let d = f.dim;
    let mut components = Vec::new();
    let mut chain = Vec::new();
    for (i, cone) in f.cones.iter().enumerate() {
        let w = facet_generator(f, i).scale(&Rational::from_integer(cone.weight.clone()));
        let c = coordinates(&top.bases[d][i], &w).expect("the facet generator spans F_d of the facet");
        chain.extend(c);
        components.push((cone.label.clone(), w));
    }
    FundamentalClass { components, chain }
}

fn apply(m: &MatQ, x: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|r| m.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

fn is_cycle(c: &BMComplex, chain: &[Rational]) -> bool {
    let d = c.top();
    d == 0 || apply(&c.boundaries[d].to_q(), chain).iter().all(Zero::is_zero)
}

pub fn fundamental_class(f: &WeightedFan) -> Result<FundamentalClass> {
    let top = BMComplex::new(f, f.dim);
    let fc = fundamental_chain(f, &top);
    if !is_cycle(&top, &fc.chain) {
        return Err(Error::NotACycle);
    }
    Ok(fc)
}

/// The cap product `H^{p,0} → H^{BM}_{d-p,d}` for one `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PdEntry {
    pub p: usize,
    pub cohomology_dim: usize,
    pub homology_dim: usize,
    pub cap_rank: usize,
    pub lands_in_cycles: bool,
    pub isomorphism: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PdReport {
    pub entries: Vec<PdEntry>,
    /// `H^{BM}_{p,q} = 0` for every `q` below the top degree.
    pub lower_vanishing: bool,
    pub holds: bool,
}

pub fn check_tpd(f: &WeightedFan) -> Result<PdReport> {
    let d = f.dim;
    if d == 0 || d > 2 {
        return Err(Error::PreconditionFailed(format!("fan dimension {d} is not 1 or 2")));
    }
    let complexes: Vec<BMComplex> = (0..=d).map(|p| BMComplex::new(f, p)).collect();
    let fc = fundamental_class(f)?;
    let lower_vanishing = complexes
        .iter()
        .all(|c| c.homology_dims()[..d].iter().all(|&x| x == 0));

    let mut entries = Vec::new();
    for p in 0..=d {
        // F^p(0) is dual to F_p(0); functionals are realized as
        // multivectors via Φ = (B Bᵀ)⁻¹ B.
        let b = &complexes[p].bases[0][0];
        let k = b.len();
        let target = &complexes[d - p];
        let homology_dim = target.homology_dims()[d];
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        if k > 0 {
            let width = b[0].len();
            let bq = MatQ::from_rows(&b.iter().map(|r| to_q(r)).collect::<Vec<_>>(), width);
            let gram = &bq * &bq.transpose();
            let phi = &inverse_q(&gram).expect("a basis has invertible Gram matrix") * &bq;
            let m = f.ambient_dim();
            for r in 0..k {
                let alpha = Multivector {
                    dim: m,
                    degree: p,
                    coeffs: phi.row(r).to_vec(),
                };
                let mut chain = Vec::new();
                for (i, (_, w)) in fc.components.iter().enumerate() {
                    let capped = interior_product(&alpha, w)?;
                    let c = coordinates(&target.bases[d][i], &capped).ok_or_else(|| {
                        Error::InconsistentVerdict(format!("cap product leaves F_{} of a facet", d - p))
                    })?;
                    chain.extend(c);
                }
                cols.push(chain);
            }
        }
        let lands_in_cycles = cols.iter().all(|c| is_cycle(target, c));
        let cap_rank = if cols.is_empty() {
            0
        } else {
            rank_q(&MatQ::from_cols(&cols, target.term_dim(d)))
        };
        // Top-degree homology is the cycle space, so the induced map is the
        // chain-level map itself.
        let isomorphism = lands_in_cycles && cap_rank == k && k == homology_dim;
        entries.push(PdEntry {
            p,
            cohomology_dim: k,
            homology_dim,
            cap_rank,
            lands_in_cycles,
            isomorphism,
        });
    }
    let holds = lower_vanishing && entries.iter().all(|e| e.isomorphism);
    Ok(PdReport {
        entries,
        lower_vanishing,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThmReport {
    /// `(ray, balancing space dimension)` for every ray.
    pub balancing_dims: Vec<(String, usize)>,
    pub route_a: bool,
    /// Rays whose reduced star fails duality.
    pub failing_stars: Vec<String>,
    pub fan_tpd: bool,
    pub route_b: bool,
    pub verdict: bool,
}

/// Tropical homology manifold test, by unique balancing at each ray and
/// independently by duality of the fan and of every reduced star.
pub fn check_thm(f: &WeightedFan) -> Result<ThmReport> {
    if f.dim != 2 {
        return Err(Error::PreconditionFailed("expected a 2-dimensional fan".into()));
    }
    let mut balancing_dims = Vec::new();
    let mut failing_stars = Vec::new();
    for r in &f.rays {
        balancing_dims.push((r.label.clone(), unique_balance_at_ray(f, &r.label)?.dim()));
        let star = reduced_star(f, &r.label)?;
        if !check_tpd(&star)?.holds {
            failing_stars.push(r.label.clone());
        }
    }
    let route_a = balancing_dims.iter().all(|(_, d)| *d == 1);
    let fan_tpd = check_tpd(f)?.holds;
    let route_b = fan_tpd && failing_stars.is_empty();
    if route_a != route_b {
        return Err(Error::InconsistentVerdict(format!(
            "unique balancing says {route_a}, duality says {route_b}"
        )));
    }
    Ok(ThmReport {
        balancing_dims,
        route_a,
        failing_stars,
        fan_tpd,
        route_b,
        verdict: route_a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesReport {
    pub element: String,
    pub full: Vec<usize>,
    pub deletion: Vec<usize>,
    pub contraction: Vec<usize>,
    pub holds: bool,
}

/// `dim H^{p,0}(A) = dim H^{p,0}(A∖i) + dim H^{p-1,0}(A/i)` for all `p`.
pub fn ses_dim_check(a: &Arroid, i: &str) -> Result<SesReport> {
    let full = cohomology_dims(&build_arroid_fan(a)?);
    let deletion = cohomology_dims(&build_arroid_fan(&a.delete(i)?)?);
    let contraction = cohomology_dims(&build_arroid_fan(&a.contract(i)?)?);
    let at = |v: &[usize], p: usize| v.get(p).copied().unwrap_or(0);
    let holds = (0..full.len()).all(|p| {
        let shifted = if p == 0 { 0 } else { at(&contraction, p - 1) };
        full[p] == at(&deletion, p) + shifted
    });
    Ok(SesReport {
        element: i.to_string(),
        full,
        deletion,
        contraction,
        holds,
    })
}
