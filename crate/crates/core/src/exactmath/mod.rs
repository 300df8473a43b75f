//! Exact arithmetic: rationals, a single-generator number field, dense
//! matrices over either, integer lattices (Smith form, saturation) and the
//! two geometric primitives built on them — lattice point enumeration and
//! open-box feasibility.

mod field;
mod intmat;
mod lattice;
mod matrix;
mod simplex;

pub use field::{field_arith, FieldElement, FieldOp, FieldOpResult, NumberField};
pub use intmat::{
    column_echelon, gcd_maximal_minors, saturate_row_lattice, smith_normal_form, IntMatrix, Smith,
};
pub use lattice::{enumerate_affine_lattice_points, AffineLatticePointSet, Interval};
pub use matrix::{rank_nullspace, Matrix, Rref, Scalar};
pub use simplex::{interior_feasible, interior_point, Feasibility};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, x| if x.is_zero() { acc } else { acc.lcm(x) })
}

pub fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs()
}
