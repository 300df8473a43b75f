use std::fmt::Debug;

use num_traits::{One, Zero};

use super::Rational;

/// Exact field scalar. Constants are produced from an existing value because
/// number-field elements carry their field.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_s(&self) -> bool;
    /// Multiplicative inverse; callers guarantee `self != 0`.
    fn inv_s(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Scalar for Rational {
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
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn inv_s(&self) -> Self {
        self.recip()
    }
}

/// Dense row-major matrix. `zero` is a template value of the scalar type so
/// that empty matrices over a number field still know their field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<T>>,
    zero: T,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, zero: T) -> Self {
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize, zero: T) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols, data, zero }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn zero(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<T>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.zero.clone(), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect()
    }

    pub fn rref(&self) -> Rref<T> {
        let mut m: Vec<Vec<T>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero_s()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv_s();
            for x in m[r].iter_mut() {
                *x = x.times(&inv);
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero_s() {
                    let f = m[i][c].clone();
                    let (a, b) = if i < r {
                        let (lo, hi) = m.split_at_mut(r);
                        (&mut lo[i], &hi[0])
                    } else {
                        let (lo, hi) = m.split_at_mut(i);
                        (&mut hi[0], &lo[r])
                    };
                    for (x, y) in a.iter_mut().zip(b) {
                        if !y.is_zero_s() {
                            *x = x.minus(&f.times(y));
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        Rref { cols: self.cols, pivots, rows: m, zero: self.zero.clone() }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Solves `self · x = b`: a particular solution (free variables zero)
    /// and a nullspace basis, or `None` if inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<(Vec<T>, Vec<Vec<T>>)> {
        assert_eq!(b.len(), self.rows);
        let aug: Vec<Vec<T>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let rr = Matrix::from_rows(aug, self.cols + 1, self.zero.clone()).rref();
        if rr.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (row, &p) in rr.rows.iter().zip(&rr.pivots) {
            x[p] = row[self.cols].clone();
        }
        let ns = Rref { cols: self.cols, pivots: rr.pivots.clone(), rows: rr.rows.iter().map(|r| r[..self.cols].to_vec()).collect(), zero: self.zero.clone() }
            .nullspace();
        Some((x, ns))
    }
}

impl<T: Scalar> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical nullspace basis: one vector per free column `f`, with 1 at
    /// `f` and zero at every other free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let one = self.zero.one_like();
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = one.clone();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = row[f].negated();
                }
                v
            })
            .collect()
    }

    /// Reduces `v` against the row space. Returns the residual and the
    /// coefficients `c` with `v = Σ c_i rows_i + residual`.
    pub fn reduce(&self, v: &[T]) -> (Vec<T>, Vec<T>) {
        let mut r = v.to_vec();
        let mut coef = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero_s() {
                for (x, y) in r.iter_mut().zip(row) {
                    if !y.is_zero_s() {
                        *x = x.minus(&c.times(y));
                    }
                }
            }
            coef.push(c);
        }
        (r, coef)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero_s())
    }
}

/// Rank and canonical nullspace basis; `rank + basis.len() == cols`.
pub fn rank_nullspace<T: Scalar>(m: &Matrix<T>) -> (usize, Vec<Vec<T>>) {
    let r = m.rref();
    (r.rank(), r.nullspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let c = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), c, int(0))
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, ns) = rank_nullspace(&qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(r, 3);
        assert!(ns.is_empty());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = qm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 1]]);
        let (r, ns) = rank_nullspace(&m);
        assert_eq!(r, 2);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_inconsistent_and_consistent() {
        let m = qm(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&[int(1), int(2)]).is_none());
        let (x, ns) = m.solve(&[rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(ns.len(), 1);
    }

    #[test]
    fn row_space_membership() {
        let rr = qm(&[&[1, 1, 0], &[0, 1, 1]]).rref();
        assert!(rr.contains(&[int(1), int(2), int(1)]));
        assert!(!rr.contains(&[int(1), int(0), int(0)]));
    }
}
