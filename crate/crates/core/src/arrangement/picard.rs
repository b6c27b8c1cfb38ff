//! Rays of the tropicalization from the Picard exact sequence of the
//! blown-up compactification.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use super::{arroid_of, CurveArrangement};
use crate::error::{Error, Result};
use crate::exactlin::{
    det_z, independent_columns, inverse_q, quotient_basis, to_q, Int, MatQ, MatZ, QuotientBasis, RowSolver,
};
use crate::fan::{build_arroid_fan, Cone, Ray, WeightedFan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardRays {
    /// Boundary divisors: strict transforms in arrangement order, then one
    /// exceptional divisor `E<k>` per point on three or more curves.
    pub labels: Vec<String>,
    /// Members of each blown-up point.
    pub exceptional: Vec<Vec<String>>,
    /// Rows are boundary divisors, columns `H, e_1, …`.
    pub phi: MatZ,
    /// Columns are the images of the boundary divisors in the cokernel.
    pub ray_matrix: MatZ,
    /// Pairs of boundary divisors that meet.
    pub edges: Vec<(usize, usize)>,
    /// Labels of the rays left after merging rays interior to a 2-cone.
    pub minimal_labels: Vec<String>,
    pub minimal_rays: MatZ,
    pub minimal_edges: Vec<(usize, usize)>,
    pub basis: QuotientBasis,
}

pub fn picard_rays(arr: &CurveArrangement) -> Result<PicardRays> {
    let a = arroid_of(arr)?;
    if !a.is_transversal() {
        return Err(Error::PreconditionFailed(
            "picard_rays needs a transverse arrangement".into(),
        ));
    }
    if !a.is_very_affine() {
        return Err(Error::PreconditionFailed(
            "picard_rays needs a very affine arrangement".into(),
        ));
    }
    let n = a.len();
    let blown: Vec<usize> = (0..a.points().len()).filter(|&k| a.points()[k].members.len() >= 3).collect();
    let b = blown.len();
    let total = n + b;
    let mut labels: Vec<String> = a.ids().map(str::to_string).collect();
    labels.extend((1..=b).map(|k| format!("E{k}")));

    // φ: class of each boundary divisor in Pic = <H, e_1, …, e_b>
    let mut phi = MatZ::zeros(total, 1 + b);
    for (i, e) in a.elements().iter().enumerate() {
        phi[(i, 0)] = Int::from(e.degree);
        for (j, &k) in blown.iter().enumerate() {
            if a.points()[k].contains(&e.id) {
                phi[(i, 1 + j)] = Int::from(-1);
            }
        }
    }
    for j in 0..b {
        phi[(n + j, 1 + j)] = Int::one();
    }
    let gens: Vec<Vec<Int>> = (0..1 + b).map(|c| phi.col(c)).collect();
    let basis = quotient_basis(total, &gens).map_err(|e| match e {
        Error::TorsionQuotient(d) => Error::TorsionCokernel(d),
        other => other,
    })?;
    let ray_matrix = basis.projection.clone();

    let mut edges = BTreeSet::new();
    for (k, p) in a.points().iter().enumerate() {
        let idx = a.member_indices(p);
        if let Some(j) = blown.iter().position(|&x| x == k) {
            for &i in &idx {
                edges.insert((i, n + j));
            }
        } else {
            edges.insert((idx[0].min(idx[1]), idx[0].max(idx[1])));
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let (keep, minimal_edges) = merge_flat_rays(&ray_matrix, &edges);
    Ok(PicardRays {
        minimal_labels: keep.iter().map(|&k| labels[k].clone()).collect(),
        minimal_rays: ray_matrix.select_cols(&keep),
        minimal_edges,
        labels,
        exceptional: blown.iter().map(|&k| a.points()[k].members.clone()).collect(),
        phi,
        ray_matrix,
        edges,
        basis,
    })
}

/// Repeatedly remove a ray with exactly two neighbours `u, v` that lies in
/// the relative interior of `cone(u, v)`, joining `u` and `v`. Returns the
/// kept ray indices and the edges re-indexed into them.
fn merge_flat_rays(rays: &MatZ, edges: &[(usize, usize)]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let k = rays.cols();
    let mut alive = vec![true; k];
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for &(x, y) in edges {
        adj[x].insert(y);
        adj[y].insert(x);
    }
    loop {
        let flat = (0..k).find(|&r| {
            if !alive[r] || adj[r].len() != 2 {
                return false;
            }
            let nb: Vec<usize> = adj[r].iter().copied().collect();
            let span = vec![to_q(&rays.col(nb[0])), to_q(&rays.col(nb[1]))];
            let m = MatQ::from_rows(&span, rays.rows());
            if independent_columns(&m.transpose()).len() != 2 {
                return false;
            }
            RowSolver::new(m)
                .solve(&to_q(&rays.col(r)))
                .is_some_and(|c| c.iter().all(|x| x.is_positive()))
        });
        let Some(r) = flat else { break };
        let nb: Vec<usize> = adj[r].iter().copied().collect();
        for &x in &nb {
            adj[x].remove(&r);
        }
        adj[nb[0]].insert(nb[1]);
        adj[nb[1]].insert(nb[0]);
        adj[r].clear();
        alive[r] = false;
    }
    let keep: Vec<usize> = (0..k).filter(|&r| alive[r]).collect();
    let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut out = BTreeSet::new();
    for &x in &keep {
        for &y in &adj[x] {
            if x < y {
                out.insert((pos[&x], pos[&y]));
            }
        }
    }
    (keep, out.into_iter().collect())
}

/// The cone complex over the Picard rays, expressed in the coordinates of
/// the arroid fan through the isomorphism of the two quotient lattices.
pub fn picard_fan(arr: &CurveArrangement) -> Result<WeightedFan> {
    let pr = picard_rays(arr)?;
    let a = arroid_of(arr)?;
    let arroid_fan = build_arroid_fan(&a)?;
    let lat = &arroid_fan.lattice;
    let n = a.len();
    // arroid coordinates of every boundary divisor
    let mut cols: Vec<Vec<Int>> = (0..n).map(|i| lat.class_of_sum(&[i])).collect();
    for members in &pr.exceptional {
        let idx: Vec<usize> = members.iter().map(|m| a.position(m)).collect::<Result<_>>()?;
        cols.push(lat.class_of_sum(&idx));
    }
    let m = MatZ::from_cols(&cols, lat.dim());
    let t = &m * &pr.basis.section;
    if &t * &pr.basis.projection != m || !det_z(&t).abs().is_one() {
        return Err(Error::InconsistentVerdict(
            "Picard cokernel is not isomorphic to the arroid lattice".into(),
        ));
    }
    let rays: Vec<Ray> = (0..pr.labels.len())
        .map(|k| Ray {
            label: format!("r:{}", pr.labels[k]),
            vector: t.apply(&pr.ray_matrix.col(k)),
            element: (k < n).then(|| pr.labels[k].clone()),
        })
        .collect();
    // only the support matters here, so every cone gets weight one
    let cones = pr
        .edges
        .iter()
        .map(|&(x, y)| Cone {
            label: format!("c:{}|{}", pr.labels[x], pr.labels[y]),
            rays: vec![x, y],
            weight: Int::one(),
        })
        .collect();
    WeightedFan::new(lat.clone(), rays, cones, 2)
}

/// `U · a[:, i] = b[:, permutation[i]]` with `U` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularWitness {
    pub matrix: MatZ,
    pub permutation: Vec<usize>,
}

/// Searches for a unimodular change of coordinates mapping the columns of
/// `a` bijectively onto the columns of `b`.
pub fn unimodular_equivalence(a: &MatZ, b: &MatZ) -> Option<UnimodularWitness> {
    let d = a.rows();
    if b.rows() != d || a.cols() != b.cols() {
        return None;
    }
    let basis = independent_columns(&a.to_q());
    if basis.len() != d {
        return None;
    }
    let a_inv = inverse_q(&a.select_cols(&basis).to_q())?;
    let k = b.cols();
    let mut choice = Vec::with_capacity(d);
    search(a, b, &basis, &a_inv, k, &mut choice)
}

fn search(
    a: &MatZ,
    b: &MatZ,
    basis: &[usize],
    a_inv: &MatQ,
    k: usize,
    choice: &mut Vec<usize>,
) -> Option<UnimodularWitness> {
    if choice.len() == basis.len() {
        let u = &b.select_cols(choice).to_q() * a_inv;
        let u = u.to_z()?;
        if !det_z(&u).abs().is_one() {
            return None;
        }
        let mut used = vec![false; k];
        let mut perm = Vec::with_capacity(a.cols());
        for c in 0..a.cols() {
            let img = u.apply(&a.col(c));
            let j = (0..k).find(|&j| !used[j] && b.col(j) == img)?;
            used[j] = true;
            perm.push(j);
        }
        return Some(UnimodularWitness { matrix: u, permutation: perm });
    }
    for j in 0..k {
        if choice.contains(&j) {
            continue;
        }
        choice.push(j);
        if let Some(w) = search(a, b, basis, a_inv, k, choice) {
            return Some(w);
        }
        choice.pop();
    }
    None
}
