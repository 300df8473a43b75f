use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intmat::{column_echelon, smith_normal_form, IntMatrix};
use super::Rational;

/// A bounded interval with independently open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_open: false, hi_open: false }
    }

    /// The open unit interval (0, 1).
    pub fn unit_open() -> Self {
        Self::open(Rational::zero(), Rational::one())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = if self.lo_open { x > &self.lo } else { x >= &self.lo };
        let hi_ok = if self.hi_open { x < &self.hi } else { x <= &self.hi };
        lo_ok && hi_ok
    }

    /// Integer range of `y` with `y / m` inside the interval.
    fn scaled_int_range(&self, m: &BigInt) -> (BigInt, BigInt) {
        let mr = Rational::from_integer(m.clone());
        let lo = &self.lo * &mr;
        let hi = &self.hi * &mr;
        let lo_i = if self.lo_open { lo.floor().to_integer() + 1 } else { lo.ceil().to_integer() };
        let hi_i = if self.hi_open { hi.ceil().to_integer() - 1 } else { hi.floor().to_integer() };
        (lo_i, hi_i)
    }
}

/// `{x : A·x = b, x_j ∈ (1/m_j)·Z, x_j ∈ bounds_j}`.
#[derive(Clone, Debug)]
pub struct AffineLatticePointSet {
    pub a: IntMatrix,
    pub b: Vec<Rational>,
    pub denominators: Vec<BigInt>,
    pub bounds: Vec<Interval>,
}

impl AffineLatticePointSet {
    /// Points in the open unit cube with the given denominators.
    pub fn in_open_cube(a: IntMatrix, b: Vec<Rational>, denominators: Vec<BigInt>) -> Self {
        let n = a.ncols();
        AffineLatticePointSet { a, b, denominators, bounds: vec![Interval::unit_open(); n] }
    }
}

/// Lists all points of the set, sorted lexicographically.
///
/// The scaled integer system `W·y = c` is solved through its Smith form; the
/// solution lattice basis is put in column echelon form so that each pivot
/// coordinate bounds exactly one new parameter given the earlier ones.
pub fn enumerate_affine_lattice_points(set: &AffineLatticePointSet) -> Vec<Vec<Rational>> {
    let n = set.a.ncols();
    assert_eq!(set.denominators.len(), n);
    assert_eq!(set.bounds.len(), n);
    assert_eq!(set.b.len(), set.a.nrows());
    assert!(set.denominators.iter().all(|m| m.is_positive()), "denominators must be positive");

    let mut l = BigInt::one();
    for m in &set.denominators {
        l = l.lcm(m);
    }
    for bi in &set.b {
        l = l.lcm(bi.denom());
    }
    let w = IntMatrix::from_rows(
        (0..set.a.nrows())
            .map(|i| (0..n).map(|j| set.a.get(i, j) * (&l / &set.denominators[j])).collect())
            .collect(),
        n,
    );
    let c: Vec<BigInt> = set.b.iter().map(|bi| (bi * Rational::from_integer(l.clone())).to_integer()).collect();

    let s = smith_normal_form(&w);
    let k = s.rank();
    let uc = s.u.mul_vec(&c);
    let mut z = vec![BigInt::zero(); n];
    for i in 0..uc.len() {
        if i < k {
            let (q, r) = uc[i].div_rem(&s.divisors[i]);
            if !r.is_zero() {
                return Vec::new();
            }
            z[i] = q;
        } else if !uc[i].is_zero() {
            return Vec::new();
        }
    }
    let y0 = s.v.mul_vec(&z);
    let ranges: Vec<(BigInt, BigInt)> =
        set.bounds.iter().zip(&set.denominators).map(|(iv, m)| iv.scaled_int_range(m)).collect();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Vec::new();
    }

    let free: Vec<usize> = (k..n).collect();
    let basis = if free.is_empty() { IntMatrix::zeros(n, 0) } else { column_echelon(&s.v.select_columns(&free)) };
    let dim = basis.ncols();
    let pivots: Vec<usize> =
        (0..dim).map(|j| (0..n).find(|&r| !basis.get(r, j).is_zero()).expect("nonzero column")).collect();

    let mut out = Vec::new();
    let mut t = vec![BigInt::zero(); dim];
    let ctx = Ctx { y0: &y0, basis: &basis, pivots: &pivots, ranges: &ranges, den: &set.denominators };
    ctx.walk(0, &mut t, &mut out);
    out.sort();
    out
}

struct Ctx<'a> {
    y0: &'a [BigInt],
    basis: &'a IntMatrix,
    pivots: &'a [usize],
    ranges: &'a [(BigInt, BigInt)],
    den: &'a [BigInt],
}

impl Ctx<'_> {
    /// y_r using parameters t₀..t_{upto−1}.
    fn partial(&self, r: usize, t: &[BigInt], upto: usize) -> BigInt {
        let mut v = self.y0[r].clone();
        for j in 0..upto {
            let e = self.basis.get(r, j);
            if !e.is_zero() {
                v += e * &t[j];
            }
        }
        v
    }

    /// Rows that depend only on t₀..t_{i−1} must already be in range.
    fn rows_ok(&self, i: usize, t: &[BigInt]) -> bool {
        let lo_row = if i == 0 { 0 } else { self.pivots[i - 1] };
        let hi_row = self.pivots.get(i).copied().unwrap_or(self.y0.len());
        (lo_row..hi_row).all(|r| {
            let y = self.partial(r, t, i);
            y >= self.ranges[r].0 && y <= self.ranges[r].1
        })
    }

    fn walk(&self, i: usize, t: &mut Vec<BigInt>, out: &mut Vec<Vec<Rational>>) {
        if !self.rows_ok(i, t) {
            return;
        }
        if i == self.pivots.len() {
            let y: Vec<BigInt> = (0..self.y0.len()).map(|r| self.partial(r, t, i)).collect();
            out.push(y.into_iter().zip(self.den).map(|(y, m)| Rational::new(y, m.clone())).collect());
            return;
        }
        let p = self.pivots[i];
        let base = self.partial(p, t, i);
        let k = self.basis.get(p, i);
        let (lo, hi) = &self.ranges[p];
        let t_lo = (lo - &base).div_ceil(k);
        let t_hi = (hi - &base).div_floor(k);
        let mut v = t_lo;
        while v <= t_hi {
            t[i] = v.clone();
            self.walk(i + 1, t, out);
            v += 1;
        }
        t[i] = BigInt::zero();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn simplex_slice_fifth_roots() {
        let set = AffineLatticePointSet::in_open_cube(IntMatrix::from_i64(&[vec![1, 1, 1]], 3), vec![int(1)], bi(&[5, 5, 5]));
        assert_eq!(enumerate_affine_lattice_points(&set).len(), 6);
    }

    #[test]
    fn simplex_slice_halves_is_empty() {
        let set = AffineLatticePointSet::in_open_cube(IntMatrix::from_i64(&[vec![1, 1, 1]], 3), vec![int(1)], bi(&[2, 2, 2]));
        assert!(enumerate_affine_lattice_points(&set).is_empty());
    }

    #[test]
    fn inconsistent_is_empty() {
        let a = IntMatrix::from_i64(&[vec![1, 1], vec![1, 1]], 2);
        let set = AffineLatticePointSet::in_open_cube(a, vec![int(1), int(0)], bi(&[4, 4]));
        assert!(enumerate_affine_lattice_points(&set).is_empty());
    }

    #[test]
    fn closed_bounds_and_no_equations() {
        let set = AffineLatticePointSet {
            a: IntMatrix::zeros(0, 2),
            b: vec![],
            denominators: bi(&[2, 3]),
            bounds: vec![Interval::closed(int(0), int(1)); 2],
        };
        assert_eq!(enumerate_affine_lattice_points(&set).len(), 12);
    }
}
