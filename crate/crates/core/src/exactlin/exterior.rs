//! Exterior powers of Q^m.
//!
//! A p-multivector is stored by its coefficients on `e_I`, where `I` runs over
//! strictly increasing index tuples in lexicographic order. Covectors use the
//! same layout on the dual basis.

use num_traits::Zero;

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multivector {
    pub dim: usize,
    pub degree: usize,
    pub coeffs: Vec<Rational>,
}

/// All strictly increasing `p`-tuples from `0..m`, lexicographically.
pub fn combinations(m: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn go(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < p - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    go(0, m, p, &mut cur, &mut out);
    out
}

fn index_of(m: usize, idx: &[usize]) -> usize {
    // Rank of `idx` among combinations(m, idx.len()) in lex order.
    let p = idx.len();
    let mut rank = 0;
    let mut prev = 0;
    for (k, &i) in idx.iter().enumerate() {
        for skipped in prev..i {
            rank += binom(m - skipped - 1, p - k - 1);
        }
        prev = i + 1;
    }
    rank
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sign of sorting the concatenation of two disjoint increasing tuples.
fn shuffle_sign(a: &[usize], b: &[usize]) -> i32 {
    let inversions: usize = a
        .iter()
        .map(|&x| b.iter().filter(|&&y| y < x).count())
        .sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Multivector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self {
            dim,
            degree,
            coeffs: vec![Rational::zero(); binom(dim, degree)],
        }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        Self {
            dim,
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_vector(v: &[Rational]) -> Self {
        Self {
            dim: v.len(),
            degree: 1,
            coeffs: v.to_vec(),
        }
    }

    /// Basis element `e_I` (sorted `I`).
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut w = Self::zero(dim, idx.len());
        w.coeffs[index_of(dim, idx)] = Rational::from_integer(1.into());
        w
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Nonzero terms as (index tuple, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        combinations(self.dim, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }
}

pub fn wedge(a: &Multivector, b: &Multivector) -> Multivector {
    assert_eq!(a.dim, b.dim, "wedge of multivectors in different spaces");
    let m = a.dim;
    let mut out = Multivector::zero(m, a.degree + b.degree);
    if a.degree + b.degree > m {
        return out;
    }
    for (i, ca) in a.terms() {
        for (j, cb) in b.terms() {
            if i.iter().any(|x| j.contains(x)) {
                continue;
            }
            let mut k: Vec<usize> = i.iter().chain(&j).copied().collect();
            k.sort_unstable();
            let t = ca * cb;
            let slot = &mut out.coeffs[index_of(m, &k)];
            if shuffle_sign(&i, &j) > 0 {
                *slot += t;
            } else {
                *slot -= t;
            }
        }
    }
    out
}

/// `v_1 ∧ … ∧ v_p`; the empty wedge is the scalar 1.
pub fn wedge_vectors(dim: usize, vs: &[Vec<Rational>]) -> Multivector {
    vs.iter().fold(
        Multivector::scalar(dim, Rational::from_integer(1.into())),
        |acc, v| wedge(&acc, &Multivector::from_vector(v)),
    )
}

/// Contraction of a p-covector into the first p slots of a q-multivector:
/// `ι_{e*_I}(e_J) = sign · e_K` when `J` is the sorted union of `I` and `K`,
/// where the sign is that of the shuffle `(I, K) → J`.
pub fn interior_product(alpha: &Multivector, w: &Multivector) -> Result<Multivector> {
    if alpha.dim != w.dim {
        return Err(Error::DimensionMismatch {
            expected: w.dim,
            found: alpha.dim,
        });
    }
    if alpha.degree > w.degree {
        return Err(Error::DimensionMismatch {
            expected: w.degree,
            found: alpha.degree,
        });
    }
    let m = w.dim;
    let mut out = Multivector::zero(m, w.degree - alpha.degree);
    for (i, ca) in alpha.terms() {
        for (j, cw) in w.terms() {
            if !i.iter().all(|x| j.contains(x)) {
                continue;
            }
            let k: Vec<usize> = j.iter().copied().filter(|x| !i.contains(x)).collect();
            let t = ca * cw;
            let slot = &mut out.coeffs[index_of(m, &k)];
            if shuffle_sign(&i, &k) > 0 {
                *slot += t;
            } else {
                *slot -= t;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;
    use proptest::prelude::*;

    fn e(m: usize, idx: &[usize]) -> Multivector {
        Multivector::basis(m, idx)
    }

    #[test]
    fn combination_ranks_match_enumeration() {
        for m in 0..6 {
            for p in 0..=m {
                for (r, c) in combinations(m, p).iter().enumerate() {
                    assert_eq!(index_of(m, c), r);
                }
                assert_eq!(combinations(m, p).len(), binom(m, p));
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let w = e(3, &[0, 1]);
        assert_eq!(interior_product(&e(3, &[0]), &w).unwrap(), e(3, &[1]));
        assert!(interior_product(&e(3, &[2]), &w).unwrap().is_zero());
        let s = interior_product(&e(3, &[0, 1]), &w).unwrap();
        assert_eq!(s, Multivector::scalar(3, rat(1, 1)));
        // second slot picks up a sign
        assert_eq!(
            interior_product(&e(3, &[1]), &w).unwrap(),
            e(3, &[0]).scale(&rat(-1, 1))
        );
    }

    #[test]
    fn dimension_mismatch() {
        assert!(interior_product(&e(2, &[0]), &e(3, &[0, 1])).is_err());
        assert!(interior_product(&e(3, &[0, 1]), &e(3, &[0])).is_err());
    }

    fn small_vec(m: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec(-3i64..=3, m).prop_map(|v| v.into_iter().map(|x| rat(x, 1)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]
        #[test]
        fn one_form_rule(
            (a, u, v) in (1usize..5).prop_flat_map(|m| (small_vec(m), small_vec(m), small_vec(m)))
        ) {
            let m = a.len();
            let dot = |x: &[Rational], y: &[Rational]| x.iter().zip(y).fold(rat(0, 1), |s, (p, q)| s + p * q);
            let w = wedge_vectors(m, &[u.clone(), v.clone()]);
            let lhs = interior_product(&Multivector::from_vector(&a), &w).unwrap();
            let rhs = Multivector::from_vector(&v)
                .scale(&dot(&a, &u))
                .add(&Multivector::from_vector(&u).scale(&-dot(&a, &v)));
            if m >= 2 {
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn graded_antisymmetry(
            (a, b, u, v, x) in (2usize..5).prop_flat_map(|m| (small_vec(m), small_vec(m), small_vec(m), small_vec(m), small_vec(m)))
        ) {
            let m = a.len();
            let w = wedge_vectors(m, &[u, v, x]);
            let w = if m >= 3 { w } else { wedge_vectors(m, &[a.clone(), b.clone()]) };
            let ia = |t: &Multivector| interior_product(&Multivector::from_vector(&a), t).unwrap();
            let ib = |t: &Multivector| interior_product(&Multivector::from_vector(&b), t).unwrap();
            prop_assert_eq!(ia(&ib(&w)), ib(&ia(&w)).scale(&rat(-1, 1)));
        }

        #[test]
        fn bilinear(
            (a, b, u, v) in (2usize..5).prop_flat_map(|m| (small_vec(m), small_vec(m), small_vec(m), small_vec(m))),
            c in -3i64..=3
        ) {
            let m = a.len();
            let w = wedge_vectors(m, &[u, v]);
            let fa = Multivector::from_vector(&a);
            let fb = Multivector::from_vector(&b);
            let lhs = interior_product(&fa.add(&fb.scale(&rat(c, 1))), &w).unwrap();
            let rhs = interior_product(&fa, &w).unwrap().add(&interior_product(&fb, &w).unwrap().scale(&rat(c, 1)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
