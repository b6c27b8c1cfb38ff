//! Exact linear algebra over the rationals and the integers.

pub mod elim;
pub mod exterior;
pub mod lattice;
pub mod matrix;
pub mod snf;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Int = BigInt;
pub type Rational = BigRational;

pub use elim::{
    det_z, gcd_slice, independent_columns, inverse_q, inverse_unimodular, kernel_basis,
    primitive, primitive_q, rank_q, rank_z, rref, same_direction, to_q, Rref, RowSolver,
};
pub use exterior::{combinations, interior_product, wedge, wedge_vectors, Multivector};
pub use lattice::{quotient_basis, saturated_quotient_basis, saturation, QuotientBasis};
pub use matrix::{MatQ, MatZ, Matrix};
pub use snf::{elementary_divisors, smith_normal_form, SnfResult};

/// Parses `"p/q"` or `"n"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d == Int::from(0) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Canonical string form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}
