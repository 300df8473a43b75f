use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{Matrix, Scalar};
use super::{fmt_rational, Rational};
use crate::{Error, Result};

/// Q(α) for a monic integer minimal polynomial, coefficients in ascending
/// degree order (`[1, 1, 1]` is α² + α + 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    generator: String,
    minpoly: Vec<BigInt>,
}

impl NumberField {
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField { generator: "a".into(), minpoly: vec![BigInt::zero(), BigInt::one()] })
    }

    /// Q(ζ) with ζ² + ζ + 1 = 0.
    pub fn cyclotomic3(generator: &str) -> Arc<Self> {
        Self::new(generator, vec![1.into(), 1.into(), 1.into()]).expect("x^2+x+1 is irreducible")
    }

    /// Validates monicity and, for degree ≤ 4, irreducibility (rational roots,
    /// and for quartics also quadratic factors). Higher degrees are trusted.
    pub fn new(generator: &str, minpoly: Vec<BigInt>) -> Result<Arc<Self>> {
        if minpoly.len() < 2 {
            return Err(Error::BadField("minimal polynomial must have degree ≥ 1".into()));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::BadField("minimal polynomial must be monic".into()));
        }
        let k = minpoly.len() - 1;
        if (2..=4).contains(&k) {
            if has_rational_root(&minpoly) {
                return Err(Error::BadField("minimal polynomial has a rational root".into()));
            }
            if k == 4 && has_quadratic_factor(&minpoly) {
                return Err(Error::BadField("minimal polynomial splits into quadratics".into()));
            }
        }
        Ok(Arc::new(NumberField { generator: generator.into(), minpoly }))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }
}

fn eval_int(p: &[BigInt], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn has_rational_root(p: &[BigInt]) -> bool {
    // Monic: rational roots are integers dividing the constant term.
    if p[0].is_zero() {
        return true;
    }
    divisors(&p[0]).into_iter().any(|d| {
        let x = Rational::from_integer(d.clone());
        eval_int(p, &x).is_zero() || eval_int(p, &-x).is_zero()
    })
}

/// x⁴+c₃x³+c₂x²+c₁x+c₀ = (x²+ax+b)(x²+cx+e) with integers b·e = c₀.
fn has_quadratic_factor(p: &[BigInt]) -> bool {
    let (c0, c1, c2, c3) = (&p[0], &p[1], &p[2], &p[3]);
    for b in divisors(c0).into_iter().flat_map(|d| [d.clone(), -d]) {
        let e = c0 / &b;
        // a + c = c3, b + e + a c = c2, a e + b c = c1
        // c = c3 − a  ⇒  a e + b (c3 − a) = c1  ⇒  a (e − b) = c1 − b c3
        let candidates: Vec<BigInt> = if e == b {
            // a c = c2 − 2b with a + c = c3: a is an integer root of a² − c3 a + (c2 − 2b).
            let disc = c3 * c3 - BigInt::from(4) * (c2 - BigInt::from(2) * &b);
            if disc.is_negative() || &b * c3 != *c1 {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                continue;
            }
            vec![(c3 + &s) / 2, (c3 - &s) / 2]
        } else {
            let num = c1 - &b * c3;
            let den = &e - &b;
            if !(&num % &den).is_zero() {
                continue;
            }
            vec![num / den]
        };
        for a in candidates {
            let c = c3 - &a;
            if &b + &e + &a * &c == *c2 && &a * &e + &b * &c == *c1 && (&a + &c) == *c3 {
                return true;
            }
        }
    }
    false
}

/// Element of a number field: coefficients of 1, α, …, α^{k−1}.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl FieldElement {
    /// Builds an element from a polynomial in α of any length, reducing it.
    pub fn from_poly(field: &Arc<NumberField>, poly: Vec<Rational>) -> Self {
        FieldElement { field: field.clone(), coeffs: reduce(&field.minpoly, poly) }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        Self::from_poly(field, vec![r])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(n.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, vec![])
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator α.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self + o)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self - o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self * o)
    }

    /// Inverse via the multiplication-by-self matrix: solve M·c = e₀.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let k = self.field.degree();
        // Column j of M is self·α^j.
        let mut cols = Vec::with_capacity(k);
        let mut cur = self.clone();
        let alpha = Self::generator(&self.field);
        for _ in 0..k {
            cols.push(cur.coeffs.clone());
            cur = &cur * &alpha;
        }
        let rows: Vec<Vec<Rational>> = (0..k).map(|i| (0..k).map(|j| cols[j][i].clone()).collect()).collect();
        let m = Matrix::from_rows(rows, k, Rational::zero());
        let mut e0 = vec![Rational::zero(); k];
        e0[0] = Rational::one();
        let (x, ns) = m.solve(&e0).ok_or(Error::ZeroInverse)?;
        debug_assert!(ns.is_empty(), "minimal polynomial is not irreducible");
        Ok(FieldElement { field: self.field.clone(), coeffs: x })
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.same_field(o) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        debug_assert!(self.same_field(o), "mixed number fields");
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

/// Reduces a polynomial modulo the monic minimal polynomial.
fn reduce(minpoly: &[BigInt], mut p: Vec<Rational>) -> Vec<Rational> {
    let k = minpoly.len() - 1;
    while p.len() > k {
        let top = p.pop().unwrap();
        if !top.is_zero() {
            let shift = p.len() - k;
            for (i, c) in minpoly[..k].iter().enumerate() {
                p[shift + i] -= &top * Rational::from_integer(c.clone());
            }
        }
    }
    p.resize(k, Rational::zero());
    p
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &'a FieldElement) -> FieldElement {
        self.zip_with(o, |a, b| a + b)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &'a FieldElement) -> FieldElement {
        self.zip_with(o, |a, b| a - b)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &'a FieldElement) -> FieldElement {
        debug_assert!(self.same_field(o), "mixed number fields");
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return FieldElement::from_rational(&self.field, a * b);
        }
        let k = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * k - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement::from_poly(&self.field, prod)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        FieldElement::one(&self.field)
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn inv_s(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.field.generator;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => fmt_rational(c),
                1 => format!("{}*{g}", fmt_rational(c)),
                _ => format!("{}*{g}^{i}", fmt_rational(c)),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldOpResult {
    Value(FieldElement),
    Bool(bool),
}

/// Checked field arithmetic: mixed fields and inversion of zero are errors.
pub fn field_arith(op: FieldOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldOpResult> {
    let need_b = || b.ok_or_else(|| Error::Invalid("binary field operation needs two operands".into()));
    Ok(match op {
        FieldOp::Add => FieldOpResult::Value(a.try_add(need_b()?)?),
        FieldOp::Sub => FieldOpResult::Value(a.try_sub(need_b()?)?),
        FieldOp::Mul => FieldOpResult::Value(a.try_mul(need_b()?)?),
        FieldOp::Inv => FieldOpResult::Value(a.try_inv()?),
        FieldOp::Eq => {
            let b = need_b()?;
            a.check(b)?;
            FieldOpResult::Bool(a == b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn zeta() -> (Arc<NumberField>, FieldElement) {
        let f = NumberField::cyclotomic3("z");
        let z = FieldElement::generator(&f);
        (f, z)
    }

    #[test]
    fn inverse_of_zeta() {
        let (f, z) = zeta();
        let expected = &FieldElement::from_int(&f, -1) - &z;
        assert_eq!(z.try_inv().unwrap(), expected);
    }

    #[test]
    fn inverse_in_q() {
        let q = NumberField::rationals();
        let a = FieldElement::from_rational(&q, rat(3, 4));
        assert_eq!(a.try_inv().unwrap(), FieldElement::from_rational(&q, rat(4, 3)));
    }

    #[test]
    fn product_one_plus_zeta() {
        let (f, z) = zeta();
        let one = FieldElement::one(&f);
        let a = &one + &z;
        let b = &one + &z.pow(2);
        // Oracle: (1+z)(1+z²) = 1 + z + z² + z³, reduce with z² = −1 − z, z³ = 1.
        let raw = vec![rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)];
        assert_eq!(&a * &b, FieldElement::from_poly(&f, raw));
        assert!((&a * &b).is_one());
    }

    #[test]
    fn errors() {
        let (f, z) = zeta();
        assert_eq!(FieldElement::zero(&f).try_inv(), Err(Error::ZeroInverse));
        let q = NumberField::rationals();
        assert_eq!(z.try_add(&FieldElement::one(&q)), Err(Error::FieldMismatch));
        assert!(field_arith(FieldOp::Mul, &z, Some(&FieldElement::one(&q))).is_err());
    }

    #[test]
    fn reducible_polynomials_rejected() {
        let v = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(NumberField::new("a", v(&[-1, 0, 1])).is_err());
        assert!(NumberField::new("a", v(&[1, 0, 2])).is_err());
        // (x²+1)(x²+2) = x⁴ + 3x² + 2
        assert!(NumberField::new("a", v(&[2, 0, 3, 0, 1])).is_err());
        // (x²+x+1)(x²−x+1) = x⁴ + x² + 1
        assert!(NumberField::new("a", v(&[1, 0, 1, 0, 1])).is_err());
        assert!(NumberField::new("a", v(&[1, 1, 1, 1, 1])).is_ok());
        assert!(NumberField::new("a", v(&[-2, 0, 0, 1])).is_ok());
    }
}
