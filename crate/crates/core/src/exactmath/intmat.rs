use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        IntMatrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j) + a * o.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        IntMatrix::from_rows((0..self.rows).map(|i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect(), cols.len())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + f * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + f * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * m.get(n - 1, n - 1)
        }
    }

    /// Row Hermite normal form with zero rows removed: pivots positive and
    /// strictly increasing, entries above a pivot reduced into `[0, pivot)`.
    /// Canonical for the row lattice.
    pub fn row_hnf(&self) -> IntMatrix {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            loop {
                let mut best: Option<usize> = None;
                for i in r..m.rows {
                    if !m.get(i, c).is_zero() && best.is_none_or(|b| m.get(i, c).abs() < m.get(b, c).abs()) {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                m.swap_rows(r, b);
                let mut done = true;
                for i in r + 1..m.rows {
                    if !m.get(i, c).is_zero() {
                        let q = m.get(i, c).div_floor(m.get(r, c));
                        m.add_row(i, r, &-q);
                        if !m.get(i, c).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if m.get(r, c).is_zero() {
                continue;
            }
            if m.get(r, c).is_negative() {
                m.negate_row(r);
            }
            for i in 0..r {
                let q = m.get(i, c).div_floor(m.get(r, c));
                m.add_row(i, r, &-q);
            }
            r += 1;
        }
        IntMatrix::from_rows((0..r).map(|i| m.row(i).to_vec()).collect(), m.cols)
    }
}

/// `U · M · V = D` with `D` diagonal, `d₁ | d₂ | …`, and `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub divisors: Vec<BigInt>,
    /// gcd of the nonzero minors of order rank(M); 0 for the zero matrix.
    pub gcd_maximal_minors: BigInt,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub diagonal: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut vi = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block goes to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        u.swap_rows(t, bi);
        a.swap_cols(t, bj);
        v.swap_cols(t, bj);
        vi.swap_rows(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                    if !a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    a.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                    // V' = V·E with E = I − q e_t e_jᵀ, so V'^{-1} = (I + q e_t e_jᵀ)·V^{-1}.
                    vi.add_row(t, j, &q);
                    if !a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // Divisibility of the trailing block by the pivot.
                let p = a.get(t, t).clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(a.get(i, j) % &p).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        a.add_row(t, i, &BigInt::one());
                        u.add_row(t, i, &BigInt::one());
                    }
                }
            }
            // Bring the smallest entry of row t / column t back to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !a.get(i, t).is_zero() && a.get(i, t).abs() < a.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a.get(t, j).is_zero() && a.get(t, j).abs() < a.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            }
            if best.1 != t {
                a.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                vi.swap_rows(t, best.1);
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let divisors: Vec<BigInt> = (0..t).map(|i| a.get(i, i).clone()).collect();
    let gcd_maximal_minors = if divisors.is_empty() { BigInt::zero() } else { divisors.iter().product() };
    Smith { divisors, gcd_maximal_minors, u, v, v_inv: vi, diagonal: a }
}

/// gcd of the maximal-order minors: zero when the matrix is not of full
/// rank min(rows, cols).
pub fn gcd_maximal_minors(m: &IntMatrix) -> BigInt {
    let s = smith_normal_form(m);
    if s.rank() == m.nrows().min(m.ncols()) && s.rank() > 0 {
        s.gcd_maximal_minors
    } else {
        BigInt::zero()
    }
}

/// Basis of (Q-row-span of A) ∩ Zⁿ in row Hermite normal form.
pub fn saturate_row_lattice(a: &IntMatrix) -> Result<IntMatrix> {
    let s = smith_normal_form(a);
    let k = s.rank();
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    // A = U⁻¹·D·V⁻¹, so the row span is spanned by the first k rows of V⁻¹,
    // which extend to a Z-basis of Zⁿ.
    let rows: Vec<Vec<BigInt>> = (0..k).map(|i| s.v_inv.row(i).to_vec()).collect();
    Ok(IntMatrix::from_rows(rows, a.ncols()).row_hnf())
}

/// Column echelon form of the column lattice: columns `j` have a positive
/// pivot in row `p_j`, zeros above it, with `p₁ < p₂ < …`.
pub fn column_echelon(k: &IntMatrix) -> IntMatrix {
    k.transpose().row_hnf().transpose()
}
