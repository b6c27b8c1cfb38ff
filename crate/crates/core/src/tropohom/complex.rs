use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{
    combinations, elementary_divisors, rank_q, saturation, wedge_vectors, Int, MatZ, Multivector,
    Rational, RowSolver,
};
use crate::fan::WeightedFan;

/// Which coefficients homology is computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Rational,
    Integer,
}

/// A face of the fan: the origin, a ray, or a facet of a 2-dimensional fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub label: String,
    pub dim: usize,
    /// Ordered generating rays.
    pub rays: Vec<usize>,
    /// Facets containing this face.
    pub facets: Vec<usize>,
}

/// All faces of a pure fan, indexed by dimension.
pub fn faces(f: &WeightedFan) -> Vec<Vec<Face>> {
    let mut out = vec![vec![Face {
        label: "0".into(),
        dim: 0,
        rays: vec![],
        facets: (0..f.cones.len()).collect(),
    }]];
    out.push(
        f.rays
            .iter()
            .enumerate()
            .map(|(k, r)| Face {
                label: r.label.clone(),
                dim: 1,
                rays: vec![k],
                facets: f.facets_at(k),
            })
            .collect(),
    );
    if f.dim == 2 {
        out.push(
            f.cones
                .iter()
                .enumerate()
                .map(|(c, cone)| Face {
                    label: cone.label.clone(),
                    dim: 2,
                    rays: cone.rays.clone(),
                    facets: vec![c],
                })
                .collect(),
        );
    }
    out
}

/// Basis of the p-th multi-tangent space of a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTangent {
    pub cone: String,
    pub p: usize,
    pub basis: Vec<Multivector>,
}

impl MultiTangent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Integral basis of `F_p(σ)`: the saturation in `∧^p Z^m` of the span of
/// `∧^p L(γ)` over facets `γ ⊇ σ`.
fn tangent_rows(f: &WeightedFan, face: &Face, p: usize) -> Vec<Vec<Int>> {
    let m = f.ambient_dim();
    let width = combinations(m, p).len();
    if p == 0 {
        return vec![vec![Int::from(1)]];
    }
    let mut span: Vec<Vec<Int>> = Vec::new();
    for &c in &face.facets {
        let gens: Vec<Vec<Rational>> = f.cones[c]
            .rays
            .iter()
            .map(|&k| f.rays[k].vector.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        for subset in combinations(gens.len(), p) {
            let vs: Vec<Vec<Rational>> = subset.iter().map(|&i| gens[i].clone()).collect();
            let w = wedge_vectors(m, &vs);
            if !w.is_zero() {
                span.push(w.coeffs.iter().map(|x| x.to_integer()).collect());
            }
        }
    }
    saturation(width, &span)
}

fn face_by_label<'a>(all: &'a [Vec<Face>], label: &str) -> Option<&'a Face> {
    let key = if label == "origin" { "0" } else { label };
    all.iter().flatten().find(|x| x.label == key)
}

/// `F_p` of the face with the given label (`"0"` is the origin).
pub fn multi_tangent(f: &WeightedFan, cone: &str, p: usize) -> Result<MultiTangent> {
    if p > f.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            found: p,
        });
    }
    let all = faces(f);
    let face = face_by_label(&all, cone).ok_or_else(|| Error::UnknownCone(cone.to_string()))?;
    let m = f.ambient_dim();
    let basis = tangent_rows(f, face, p)
        .into_iter()
        .map(|row| Multivector {
            dim: m,
            degree: p,
            coeffs: row.into_iter().map(Rational::from_integer).collect(),
        })
        .collect();
    Ok(MultiTangent {
        cone: face.label.clone(),
        p,
        basis,
    })
}

/// `dim H^{p,0} = dim F_p(0)` for `p = 0..=dim`.
pub fn cohomology_dims(f: &WeightedFan) -> Vec<usize> {
    let all = faces(f);
    (0..=f.dim).map(|p| tangent_rows(f, &all[0][0], p).len()).collect()
}

/// The p-th Borel–Moore complex, `C_q = ⊕_{dim γ = q} F_p(γ)`.
#[derive(Clone, Debug)]
pub struct BMComplex {
    pub p: usize,
    pub faces: Vec<Vec<Face>>,
    /// Integral basis rows of `F_p(γ)`, per dimension and face.
    pub bases: Vec<Vec<Vec<Vec<Int>>>>,
    /// `boundaries[q]` is `∂_q : C_q → C_{q-1}` (columns index `C_q`), for
    /// `q = 1..=d`; entry 0 is an empty placeholder.
    pub boundaries: Vec<MatZ>,
}

impl BMComplex {
    pub fn new(f: &WeightedFan, p: usize) -> Self {
        let faces = faces(f);
        let bases: Vec<Vec<Vec<Vec<Int>>>> = faces
            .iter()
            .map(|level| level.iter().map(|face| tangent_rows(f, face, p)).collect())
            .collect();
        let solvers: Vec<Vec<Option<RowSolver>>> = bases
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|b| {
                        (!b.is_empty()).then(|| {
                            let width = b[0].len();
                            RowSolver::new(MatZ::from_rows(b, width).to_q())
                        })
                    })
                    .collect()
            })
            .collect();
        let offsets = |q: usize| -> Vec<usize> {
            let mut acc = 0;
            bases[q]
                .iter()
                .map(|b| {
                    let o = acc;
                    acc += b.len();
                    o
                })
                .collect()
        };
        let mut boundaries = vec![MatZ::zeros(0, 0)];
        for q in 1..=f.dim {
            let rows = bases[q - 1].iter().map(Vec::len).sum();
            let cols = bases[q].iter().map(Vec::len).sum();
            let (ro, co) = (offsets(q - 1), offsets(q));
            let mut d = MatZ::zeros(rows, cols);
            for (gi, gamma) in faces[q].iter().enumerate() {
                for (sign, delta) in face_signs(&faces, gamma) {
                    let solver = match &solvers[q - 1][delta] {
                        Some(s) => s,
                        None => continue,
                    };
                    for (bi, b) in bases[q][gi].iter().enumerate() {
                        let x: Vec<Rational> = b.iter().cloned().map(Rational::from_integer).collect();
                        let coeffs = solver
                            .solve(&x)
                            .expect("F_p of a cone lies in F_p of its faces");
                        for (ci, c) in coeffs.iter().enumerate() {
                            if !c.is_zero() {
                                debug_assert!(c.is_integer());
                                d[(ro[delta] + ci, co[gi] + bi)] += c.to_integer() * sign;
                            }
                        }
                    }
                }
            }
            boundaries.push(d);
        }
        Self {
            p,
            faces,
            bases,
            boundaries,
        }
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn term_dim(&self, q: usize) -> usize {
        self.bases.get(q).map_or(0, |l| l.iter().map(Vec::len).sum())
    }

    /// Offset of each face's block inside `C_q`.
    pub fn offsets(&self, q: usize) -> Vec<usize> {
        let mut acc = 0;
        self.bases[q]
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.len();
                o
            })
            .collect()
    }

    fn boundary_rank(&self, q: usize) -> usize {
        if q == 0 || q > self.top() {
            return 0;
        }
        rank_q(&self.boundaries[q].to_q())
    }

    /// `∂_{q-1} ∘ ∂_q = 0` for every `q`.
    pub fn is_complex(&self) -> bool {
        (2..=self.top()).all(|q| (&self.boundaries[q - 1] * &self.boundaries[q]).is_zero())
    }

    /// Rational Betti numbers `dim H_{p,q}` for `q = 0..=d`.
    pub fn homology_dims(&self) -> Vec<usize> {
        (0..=self.top())
            .map(|q| self.term_dim(q) - self.boundary_rank(q) - self.boundary_rank(q + 1))
            .collect()
    }

    /// Torsion of `H_{p,q}` over the integers: divisors > 1 of `∂_{q+1}`.
    pub fn torsion(&self) -> Vec<Vec<Int>> {
        (0..=self.top())
            .map(|q| {
                if q + 1 > self.top() {
                    return vec![];
                }
                elementary_divisors(&self.boundaries[q + 1])
                    .into_iter()
                    .filter(|d| *d > Int::from(1))
                    .collect()
            })
            .collect()
    }
}

/// Codimension-one faces of `gamma` with their orientation signs: omitting
/// the k-th ordered generator gives sign `(-1)^k`; rays map to the origin
/// with sign `+1`.
fn face_signs(faces: &[Vec<Face>], gamma: &Face) -> Vec<(i64, usize)> {
    if gamma.dim == 1 {
        return vec![(1, 0)];
    }
    (0..gamma.rays.len())
        .map(|k| {
            let kept: Vec<usize> = gamma
                .rays
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &r)| r)
                .collect();
            let delta = faces[gamma.dim - 1]
                .iter()
                .position(|d| d.rays == kept)
                .expect("faces of a cone are in the fan");
            (if k % 2 == 0 { 1 } else { -1 }, delta)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub coefficients: Coefficients,
    /// `dims[p][q] = dim H^{BM}_{p,q}`.
    pub dims: Vec<Vec<usize>>,
    /// `torsion[(p,q)]` lists divisors > 1, integer mode only.
    pub torsion: BTreeMap<String, Vec<String>>,
    /// `dim H^{p,0}`.
    pub cohomology_dims: Vec<usize>,
    /// Whether every complex satisfied `∂∘∂ = 0`.
    pub complexes_ok: bool,
}

impl HomologySummary {
    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    /// `H_{p,q} = 0` for every `q` below the top degree.
    pub fn concentrated_in_top(&self) -> bool {
        self.dims
            .iter()
            .all(|row| row[..row.len() - 1].iter().all(|&d| d == 0))
    }
}

pub fn bm_homology(f: &WeightedFan, coefficients: Coefficients) -> HomologySummary {
    let mut dims = Vec::new();
    let mut torsion = BTreeMap::new();
    let mut complexes_ok = true;
    for p in 0..=f.dim {
        let c = BMComplex::new(f, p);
        complexes_ok &= c.is_complex();
        dims.push(c.homology_dims());
        if coefficients == Coefficients::Integer {
            for (q, t) in c.torsion().into_iter().enumerate() {
                if !t.is_empty() {
                    torsion.insert(format!("{p},{q}"), t.iter().map(|d| d.to_string()).collect());
                }
            }
        }
    }
    HomologySummary {
        coefficients,
        dims,
        torsion,
        cohomology_dims: cohomology_dims(f),
        complexes_ok,
    }
}

/// Express a multivector in a face basis.
pub(crate) fn coordinates(basis: &[Vec<Int>], w: &Multivector) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return w.is_zero().then(Vec::new);
    }
    let width = basis[0].len();
    RowSolver::new(MatZ::from_rows(basis, width).to_q()).solve(&w.coeffs)
}
