use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intmat::IntMatrix;
use super::lattice::Interval;
use super::matrix::Matrix;
use super::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct Feasibility {
    pub feasible: bool,
    /// A point of the flat with every slack strictly positive.
    pub witness: Option<Vec<Rational>>,
    /// The optimal minimum slack t*.
    pub slack: Rational,
}

/// Decides whether `{A·x = b}` meets the open box, by exactly maximising the
/// minimum slack `t` subject to `lo + t ≤ x ≤ hi − t`.
pub fn interior_feasible(a: &IntMatrix, b: &[Rational], bounds: &[Interval]) -> Feasibility {
    let n = a.ncols();
    let m = a.nrows();
    assert_eq!(b.len(), m);
    assert_eq!(bounds.len(), n);
    let ar = |i: usize, j: usize| Rational::from_integer(a.get(i, j).clone());
    // Columns: u₀..u_{n−1}, w₀..w_{n−1}, t.
    let nv = 2 * n + 1;
    let mut rows = Vec::with_capacity(m + n);
    let mut rhs = Vec::with_capacity(m + n);
    for i in 0..m {
        let mut row = vec![Rational::zero(); nv];
        let mut s = Rational::zero();
        let mut r = b[i].clone();
        for j in 0..n {
            let aij = ar(i, j);
            row[j] = aij.clone();
            s += &aij;
            r -= &aij * &bounds[j].lo;
        }
        row[2 * n] = s;
        rows.push(row);
        rhs.push(r);
    }
    for j in 0..n {
        let mut row = vec![Rational::zero(); nv];
        row[j] = Rational::one();
        row[n + j] = Rational::one();
        row[2 * n] = Rational::from_integer(2.into());
        rows.push(row);
        rhs.push(&bounds[j].hi - &bounds[j].lo);
    }
    let mut c = vec![Rational::zero(); nv];
    c[2 * n] = Rational::one();
    match maximize(rows, rhs, &c) {
        Some((val, x)) if val.is_positive() => {
            let witness: Vec<Rational> = (0..n).map(|j| &x[j] + &bounds[j].lo + &val).collect();
            Feasibility { feasible: true, witness: Some(witness), slack: val }
        }
        Some((val, _)) => Feasibility { feasible: false, witness: None, slack: val },
        None => Feasibility { feasible: false, witness: None, slack: -Rational::one() },
    }
}

/// Some point of `{A·x = b}` strictly inside the box, or `None` when there is
/// none. A floating-point LP proposes a point, which is snapped to a nearby
/// rational point of the flat and checked exactly; only when that fails is
/// the exact simplex of [`interior_feasible`] run, so the answer is exact
/// either way.
pub fn interior_point(a: &IntMatrix, b: &[Rational], bounds: &[Interval]) -> Option<Vec<Rational>> {
    if let Some(x) = float_hint(a, b, bounds).and_then(|h| snap_to_flat(a, b, bounds, &h)) {
        return Some(x);
    }
    interior_feasible(a, b, bounds).witness
}

fn float_hint(a: &IntMatrix, b: &[Rational], bounds: &[Interval]) -> Option<Vec<f64>> {
    use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
    let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let n = a.ncols();
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = bounds.iter().map(|iv| p.add_var(0.0, (f(&iv.lo), f(&iv.hi)))).collect();
    let t = p.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
    for i in 0..a.nrows() {
        let mut e = LinearExpr::empty();
        for j in 0..n {
            if !a.get(i, j).is_zero() {
                e.add(xs[j], a.get(i, j).to_f64()?);
            }
        }
        p.add_constraint(e, ComparisonOp::Eq, f(&b[i]));
    }
    for (j, iv) in bounds.iter().enumerate() {
        p.add_constraint([(xs[j], 1.0), (t, -1.0)], ComparisonOp::Ge, f(&iv.lo));
        p.add_constraint([(xs[j], 1.0), (t, 1.0)], ComparisonOp::Le, f(&iv.hi));
    }
    let sol = p.solve().ok()?;
    (sol.objective() > 1e-9).then(|| xs.iter().map(|&v| *sol.var_value(v)).collect())
}

/// Rounds the free coordinates of the hint, solves exactly for the pivot
/// coordinates and keeps the result only if it lies strictly inside.
fn snap_to_flat(a: &IntMatrix, b: &[Rational], bounds: &[Interval], hint: &[f64]) -> Option<Vec<Rational>> {
    let n = a.ncols();
    let mut rows: Vec<Vec<Rational>> = (0..a.nrows())
        .map(|i| (0..n).map(|j| Rational::from_integer(a.get(i, j).clone())).chain([b[i].clone()]).collect())
        .collect();
    let aug = Matrix::from_rows(std::mem::take(&mut rows), n + 1, Rational::zero()).rref();
    if aug.pivots.contains(&n) {
        return None;
    }
    let scale = BigInt::from(1u64 << 24);
    let mut x: Vec<Rational> =
        hint.iter().map(|&h| Rational::new(BigInt::from((h * (1u64 << 24) as f64).round() as i64), scale.clone())).collect();
    for (row, &p) in aug.rows.iter().zip(&aug.pivots) {
        let mut v = row[n].clone();
        for j in (0..n).filter(|j| !aug.pivots.contains(j)) {
            if !row[j].is_zero() {
                v -= &row[j] * &x[j];
            }
        }
        x[p] = v;
    }
    x.iter().zip(bounds).all(|(v, iv)| &iv.lo < v && v < &iv.hi).then_some(x)
}

/// Maximises `c·x` over `{A x = b, x ≥ 0}`; `None` if infeasible. The
/// problems built here are bounded. Two-phase tableau simplex, Bland's rule.
fn maximize(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>, c: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
    let m = a.len();
    let nv = c.len();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -&b[i];
            for x in a[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
    // Tableau columns: original, artificials, rhs.
    let width = nv + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (nv..nv + m).collect();

    // Phase 1: maximise −Σ artificials.
    let mut c1 = vec![Rational::zero(); nv + m];
    for k in nv..nv + m {
        c1[k] = -Rational::one();
    }
    run(&mut t, &mut basis, &c1, nv + m);
    let infeas: Rational = (0..m).filter(|&i| basis[i] >= nv).map(|i| t[i][width - 1].clone()).sum();
    if infeas.is_positive() {
        return None;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= nv {
            match (0..nv).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase 2 on the original columns only.
    for row in t.iter_mut() {
        let r = row.pop().unwrap();
        row.truncate(nv);
        row.push(r);
    }
    run(&mut t, &mut basis, c, nv);
    let mut x = vec![Rational::zero(); nv];
    for (i, &bv) in basis.iter().enumerate() {
        x[bv] = t[i].last().unwrap().clone();
    }
    let val = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Some((val, x))
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], r: usize, col: usize) {
    let p = t[r][col].clone();
    for x in t[r].iter_mut() {
        *x = &*x / &p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[col].is_zero() {
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    basis[r] = col;
}

/// Primal simplex iterations for maximising `c` over the first `ncols` columns.
fn run(t: &mut [Vec<Rational>], basis: &mut [usize], c: &[Rational], ncols: usize) {
    let rhs = t.first().map_or(0, |r| r.len() - 1);
    loop {
        // Reduced cost c_j − c_B·B⁻¹A_j; enter the lowest index with positive value.
        let entering = (0..ncols).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut red = c[j].clone();
            for (i, &bv) in basis.iter().enumerate() {
                if !c[bv].is_zero() && !t[i][j].is_zero() {
                    red -= &c[bv] * &t[i][j];
                }
            }
            red.is_positive()
        });
        let Some(j) = entering else { return };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][rhs] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            panic!("unbounded linear program");
        };
        pivot(t, basis, r, j);
    }
}
