//! Quotients of Z^n by sublattices.

use num_traits::{One, Signed, Zero};

use super::snf::smith_normal_form;
use super::{primitive, Int, MatZ};
use crate::error::{Error, Result};

/// Presentation of `Z^n / <gens>` as `Z^{n-r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    /// `(n-r) × n`, surjective, kernel exactly the span of the generators.
    pub projection: MatZ,
    /// `n × (n-r)`, with `projection · section = I`.
    pub section: MatZ,
    /// Coordinate removed by the canonical construction, if it applied.
    pub eliminated: Option<usize>,
}

impl QuotientBasis {
    pub fn ambient_dim(&self) -> usize {
        self.projection.cols()
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn project(&self, v: &[Int]) -> Vec<Int> {
        self.projection.apply(v)
    }

    pub fn lift(&self, v: &[Int]) -> Vec<Int> {
        self.section.apply(v)
    }
}

/// Quotient of `Z^n` by the span of `gens`, which must be saturated.
///
/// With a single generator having an entry `±1`, the lowest such coordinate
/// is eliminated and the remaining unit vectors form the basis. Otherwise the
/// basis comes from a Smith normal form change of coordinates.
pub fn quotient_basis(n: usize, gens: &[Vec<Int>]) -> Result<QuotientBasis> {
    for g in gens {
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
    }
    let nonzero: Vec<&Vec<Int>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).collect();
    if nonzero.len() == 1 {
        let g = nonzero[0];
        if let Some(k) = g.iter().position(|x| x.abs().is_one()) {
            return Ok(canonical(n, g, k));
        }
    }
    snf_quotient(n, gens)
}

/// Like [`quotient_basis`], but first replaces the span of `gens` by its
/// saturation, so the result presents the free part of the quotient.
pub fn saturated_quotient_basis(n: usize, gens: &[Vec<Int>]) -> Result<QuotientBasis> {
    let nonzero: Vec<Vec<Int>> = gens
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if nonzero.len() == 1 {
        return quotient_basis(n, &[primitive(&nonzero[0])]);
    }
    quotient_basis(n, &saturation(n, gens))
}

fn canonical(n: usize, g: &[Int], k: usize) -> QuotientBasis {
    let others: Vec<usize> = (0..n).filter(|&j| j != k).collect();
    let gk = &g[k];
    let mut projection = MatZ::zeros(n - 1, n);
    let mut section = MatZ::zeros(n, n - 1);
    for (r, &j) in others.iter().enumerate() {
        projection[(r, j)] = Int::one();
        projection[(r, k)] = -(gk * &g[j]);
        section[(j, r)] = Int::one();
    }
    QuotientBasis {
        projection,
        section,
        eliminated: Some(k),
    }
}

fn snf_quotient(n: usize, gens: &[Vec<Int>]) -> Result<QuotientBasis> {
    let g = MatZ::from_cols(gens, n);
    let snf = smith_normal_form(&g);
    let r = snf.rank();
    let torsion = snf.torsion();
    if !torsion.is_empty() {
        return Err(Error::TorsionQuotient(
            torsion.iter().map(|d| d.to_string()).collect(),
        ));
    }
    let projection = snf.u.select_rows(r..n);
    let idx: Vec<usize> = (r..n).collect();
    let section = snf.u_inv.select_cols(&idx);
    Ok(QuotientBasis {
        projection,
        section,
        eliminated: None,
    })
}

/// Basis of `span_Q(rows) ∩ Z^n`.
pub fn saturation(n: usize, rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let a = MatZ::from_rows(rows, n);
    let snf = smith_normal_form(&a);
    let r = snf.rank();
    (0..r).map(|i| snf.v_inv.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{elementary_divisors, rank_z};
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn check(q: &QuotientBasis, gens: &[Vec<Int>]) {
        let k = q.dim();
        assert_eq!(&q.projection * &q.section, MatZ::identity(k));
        for g in gens {
            assert!(q.project(g).iter().all(Zero::is_zero));
        }
        // kernel of the projection has rank n - k and is spanned by gens
        let n = q.ambient_dim();
        let gm = MatZ::from_rows(gens, n);
        assert_eq!(rank_z(&gm), n - k);
    }

    #[test]
    fn four_ones_eliminates_first_coordinate() {
        let g = vec![iv(&[1, 1, 1, 1])];
        let q = quotient_basis(4, &g).unwrap();
        check(&q, &g);
        assert_eq!(q.eliminated, Some(0));
        assert_eq!(q.project(&iv(&[1, 0, 0, 0])), iv(&[-1, -1, -1]));
        assert_eq!(q.project(&iv(&[0, 1, 0, 0])), iv(&[1, 0, 0]));
        assert_eq!(q.project(&iv(&[0, 0, 0, 1])), iv(&[0, 0, 1]));
    }

    #[test]
    fn unit_generator_drops_coordinate() {
        let g = vec![iv(&[1, 0])];
        let q = quotient_basis(2, &g).unwrap();
        check(&q, &g);
        assert_eq!(q.projection, MatZ::from_i64(1, 2, &[0, 1]));
    }

    #[test]
    fn degree_vector_with_conic() {
        let g = vec![iv(&[1, 1, 1, 2])];
        let q = quotient_basis(4, &g).unwrap();
        check(&q, &g);
        assert_eq!(q.dim(), 3);
        assert_eq!(elementary_divisors(&MatZ::from_cols(&g, 4)), iv(&[1]));
    }

    #[test]
    fn torsion_is_rejected_and_saturation_recovers() {
        let g = vec![iv(&[2, 2, 2])];
        assert!(matches!(quotient_basis(3, &g), Err(Error::TorsionQuotient(_))));
        let q = saturated_quotient_basis(3, &g).unwrap();
        check(&q, &[iv(&[1, 1, 1])]);
        assert_eq!(q.eliminated, Some(0));
    }

    #[test]
    fn snf_fallback_without_unit_entry() {
        let g = vec![iv(&[2, 3, 0])];
        let q = quotient_basis(3, &g).unwrap();
        assert_eq!(q.eliminated, None);
        check(&q, &g);
    }

    #[test]
    fn saturation_of_even_span() {
        let s = saturation(3, &[iv(&[2, 0, 2]), iv(&[0, 2, 0])]);
        assert_eq!(s.len(), 2);
        let q = quotient_basis(3, &s).unwrap();
        check(&q, &s);
        assert!(q.project(&iv(&[1, 0, 1])).iter().all(Zero::is_zero));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]
        #[test]
        fn saturated_quotient_is_section_split(
            (n, d) in (2usize..6).prop_flat_map(|n| (Just(n), proptest::collection::vec(-4i64..=4, n)))
        ) {
            let g = iv(&d);
            prop_assume!(g.iter().any(|x| !x.is_zero()));
            let q = saturated_quotient_basis(n, &[g.clone()]).unwrap();
            prop_assert_eq!(&q.projection * &q.section, MatZ::identity(n - 1));
            prop_assert!(q.project(&g).iter().all(Zero::is_zero));
        }
    }
}
