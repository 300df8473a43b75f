//! h⁰ and h¹ of ideal sheaves of fat points on P², twisted by O(n).
//!
//! Everything reduces to one exact linear system: the derivative conditions
//! of every fat point on the space of degree-n forms, written in the affine
//! chart z = 1. Since h² of the ideal sheaf agrees with h²(O(n)), which
//! vanishes for n ≥ −2, h¹ = h⁰ − χ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::exactmath::{FieldElement, Matrix, NumberField};
use crate::{Error, Result};

/// Affine points with vanishing orders `a ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FatPointScheme {
    pub field: Arc<NumberField>,
    pub points: Vec<((FieldElement, FieldElement), u32)>,
}

impl FatPointScheme {
    pub fn new(field: Arc<NumberField>, points: Vec<((FieldElement, FieldElement), u32)>) -> Result<Self> {
        for (i, (p, a)) in points.iter().enumerate() {
            if *a == 0 {
                return Err(Error::Invalid(format!("point {i}: vanishing order must be ≥ 1")));
            }
            if p.0.field() != &field || p.1.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if points[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::Invalid(format!("point {i} repeats an earlier point")));
            }
        }
        Ok(FatPointScheme { field, points })
    }

    /// Builds a scheme from projective coordinates, rejecting points on z = 0.
    pub fn from_projective(field: Arc<NumberField>, points: Vec<([FieldElement; 3], u32)>) -> Result<Self> {
        let mut aff = Vec::with_capacity(points.len());
        for (i, ([x, y, z], a)) in points.into_iter().enumerate() {
            if z.is_zero() {
                return Err(Error::Invalid(format!("point {i} lies on the line at infinity")));
            }
            let zi = z.try_inv()?;
            aff.push(((&x * &zi, &y * &zi), a));
        }
        Self::new(field, aff)
    }

    /// Number of linear conditions: Σ a(a+1)/2.
    pub fn length(&self) -> i64 {
        self.points.iter().map(|&(_, a)| (a as i64) * (a as i64 + 1) / 2).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyResult {
    pub n: i64,
    pub h0: i64,
    pub chi: i64,
    pub h1: i64,
    pub conditions: i64,
}

fn forms(n: i64) -> i64 {
    if n < 0 {
        0
    } else {
        (n + 1) * (n + 2) / 2
    }
}

/// χ(O(n)) on P²; the binomial formula is valid for every n, and gives 0 at
/// n = −1, −2.
fn chi_o(n: i64) -> i64 {
    (n + 1) * (n + 2) / 2
}

/// Falling factorial e(e−1)…(e−i+1).
fn falling(e: u32, i: u32) -> BigInt {
    (0..i).fold(BigInt::from(1), |acc, k| acc * BigInt::from(e - k))
}

/// The condition matrix: one row per (point, i + j < a), one column per
/// monomial xᵉyᶠ with e + f ≤ n.
pub fn condition_matrix(n: i64, scheme: &FatPointScheme) -> Matrix<FieldElement> {
    let f = &scheme.field;
    let zero = FieldElement::zero(f);
    let monos: Vec<(u32, u32)> = (0..=n.max(-1))
        .flat_map(|deg| (0..=deg as u32).map(move |e| (e, deg as u32 - e)))
        .collect();
    let mut m = Matrix::zeros(0, monos.len(), zero.clone());
    for ((x0, y0), a) in &scheme.points {
        for order in 0..*a {
            for i in 0..=order {
                let j = order - i;
                let row = monos
                    .iter()
                    .map(|&(e, g)| {
                        if e < i || g < j {
                            return zero.clone();
                        }
                        let c = FieldElement::from_rational(f, (falling(e, i) * falling(g, j)).into());
                        &(&c * &x0.pow((e - i) as u64)) * &y0.pow((g - j) as u64)
                    })
                    .collect();
                m.push_row(row);
            }
        }
    }
    m
}

/// Dimension of the space of degree-n forms vanishing to the prescribed
/// orders at the points of the scheme.
pub fn h0_linear_system(n: i64, scheme: &FatPointScheme) -> Result<i64> {
    if n < 0 {
        return Ok(0);
    }
    let m = condition_matrix(n, scheme);
    Ok(forms(n) - m.rank() as i64)
}

pub fn superabundance(n: i64, scheme: &FatPointScheme) -> Result<CohomologyResult> {
    if n < -2 {
        return Err(Error::UnsupportedTwist(n));
    }
    let h0 = h0_linear_system(n, scheme)?;
    let conditions = scheme.length();
    let chi = chi_o(n) - conditions;
    Ok(CohomologyResult { n, h0, chi, h1: h0 - chi, conditions })
}

/// Shared cache for [`superabundance`], keyed by the twist and a canonical
/// description of the scheme supplied by the caller (e.g. sorted vertex ids
/// with orders).
#[derive(Default)]
pub struct SuperabundanceMemo {
    table: Mutex<HashMap<(i64, Vec<(usize, u32)>), CohomologyResult>>,
}

impl SuperabundanceMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(
        &self,
        n: i64,
        mut key: Vec<(usize, u32)>,
        scheme: impl FnOnce() -> Result<FatPointScheme>,
    ) -> Result<CohomologyResult> {
        key.sort_unstable();
        let k = (n, key);
        if let Some(r) = self.table.lock().unwrap().get(&k) {
            return Ok(*r);
        }
        let r = superabundance(n, &scheme()?)?;
        self.table.lock().unwrap().insert(k, r);
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.table.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
