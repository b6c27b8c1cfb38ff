//! Gaussian elimination over the rationals and fraction-free elimination over
//! the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Int, MatQ, MatZ, Rational};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatQ,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(a: &MatQ) -> Rref {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = m[(r, c)].recip();
        for x in m.row_mut(r) {
            *x = &*x * &inv;
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for (x, p) in m.row_mut(i).iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: m, pivots }
}

/// Rank over the rationals, exact.
pub fn rank_q(a: &MatQ) -> usize {
    // Clearing denominators row by row keeps the rank and lets the cheaper
    // fraction-free routine do the work.
    rank_z(&clear_denominators(a))
}

/// Basis of the right kernel `{v : A v = 0}`.
pub fn kernel_basis(a: &MatQ) -> Vec<Vec<Rational>> {
    let red = rref(a);
    let cols = a.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &p) in red.pivots.iter().enumerate() {
            v[p] = -red.matrix[(row, free)].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scales each row by the lcm of its denominators.
pub fn clear_denominators(a: &MatQ) -> MatZ {
    let mut out = MatZ::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        let l = a
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for j in 0..a.cols() {
            let x = &a[(i, j)];
            out[(i, j)] = x.numer() * (&l / x.denom());
        }
    }
    out
}

/// Rank over the rationals of an integer matrix (Bareiss elimination).
pub fn rank_z(a: &MatZ) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let piv = m[(r, c)].clone();
        for i in r + 1..rows {
            let f = m[(i, c)].clone();
            for j in c..cols {
                let v = (&piv * &m[(i, j)] - &f * &m[(r, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix (Bareiss).
pub fn det_z(a: &MatZ) -> Int {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Int::one();
    }
    let mut m = a.clone();
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(p) => {
                    m.swap_rows(k, p);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse_q(a: &MatQ) -> Option<MatQ> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "inverse of a non-square matrix");
    let aug = MatQ::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let red = rref(&aug);
    if red.pivots.len() < n || red.pivots[n - 1] >= n {
        return None;
    }
    Some(MatQ::from_fn(n, n, |i, j| red.matrix[(i, n + j)].clone()))
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(a: &MatZ) -> Option<MatZ> {
    inverse_q(&a.to_q())?.to_z()
}

/// Solves `c · B = x` for a matrix `B` with linearly independent rows,
/// returning `None` when `x` is outside the row space.
#[derive(Clone, Debug)]
pub struct RowSolver {
    basis: MatQ,
    pivot_cols: Vec<usize>,
    pivot_inv: MatQ,
}

impl RowSolver {
    pub fn new(basis: MatQ) -> Self {
        let pivot_cols = independent_columns(&basis);
        assert_eq!(
            pivot_cols.len(),
            basis.rows(),
            "RowSolver basis rows must be independent"
        );
        let square = basis.select_cols(&pivot_cols);
        let pivot_inv = inverse_q(&square).expect("independent columns form an invertible block");
        Self {
            basis,
            pivot_cols,
            pivot_inv,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatQ {
        &self.basis
    }

    pub fn solve(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let k = self.dim();
        let xj: Vec<Rational> = self.pivot_cols.iter().map(|&j| x[j].clone()).collect();
        // c = x_J · B_J^{-1}
        let c: Vec<Rational> = (0..k)
            .map(|col| {
                (0..k).fold(Rational::zero(), |acc, i| {
                    acc + &xj[i] * &self.pivot_inv[(i, col)]
                })
            })
            .collect();
        let back: Vec<Rational> = (0..self.basis.cols())
            .map(|j| {
                (0..k).fold(Rational::zero(), |acc, i| acc + &c[i] * &self.basis[(i, j)])
            })
            .collect();
        (back.as_slice() == x).then_some(c)
    }
}

/// Indices of a maximal set of linearly independent columns, greedily from the left.
pub fn independent_columns(a: &MatQ) -> Vec<usize> {
    rref(a).pivots
}

/// Greatest common divisor of a slice (non-negative; zero for an all-zero slice).
pub fn gcd_slice(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let g = gcd_slice(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive integer vector on the ray spanned by a rational vector.
pub fn primitive_q(v: &[Rational]) -> Vec<Int> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive(&ints)
}

pub fn to_q(v: &[Int]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// `true` if `v` is a positive rational multiple of `w` (both nonzero).
pub fn same_direction(v: &[Rational], w: &[Rational]) -> bool {
    if v.len() != w.len() {
        return false;
    }
    let Some(j) = w.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let t = &v[j] / &w[j];
    t.is_positive() && v.iter().zip(w).all(|(a, b)| *a == &t * b)
}
