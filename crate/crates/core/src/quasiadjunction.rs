//! Faces of quasiadjunction.
//!
//! Each singular point contributes local faces: affine equations in the
//! branch variables together with an ideal exponent `a` (the stalk of the
//! ideal sheaf is `M^a`). A global face of a subcurve is a choice of local
//! faces at a set `S` of its vertices whose common solution meets the open
//! unit cube. Faces are canonical: `S` always contains every vertex whose
//! local face holds identically on the solution space.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{Curve, LocalType, SubVertex, Subcurve};
use crate::exactmath::{
    interior_feasible, interior_point, smith_normal_form, IntMatrix, Interval, Matrix, Rational,
};

/// One affine equation `Σ coeffs[b]·x_{comp(b)} = rhs` in branch variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalEquation {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalFaceDescriptor {
    pub equations: Vec<LocalEquation>,
    /// Stalk condition `M^exponent`.
    pub exponent: u32,
}

impl LocalFaceDescriptor {
    pub fn validate(&self, branches: usize) -> std::result::Result<(), String> {
        if self.equations.is_empty() {
            return Err("a local face needs at least one equation".into());
        }
        for (k, e) in self.equations.iter().enumerate() {
            if e.coeffs.len() != branches {
                return Err(format!("equation {k} has {} coefficients for {branches} branches", e.coeffs.len()));
            }
        }
        Ok(())
    }
}

/// The local catalog. Ordinary m-fold points have the faces
/// `Σ x = s` with ideal `M^{m−1−s}` for `s = 1..m−2` (none for nodes); the
/// cusp has `x = 1/6` and the tacnode `x + y = 1/2`, both with ideal `M`.
pub fn local_faces(kind: &LocalType) -> Vec<LocalFaceDescriptor> {
    let one = |n: usize| vec![Rational::one(); n];
    match kind {
        LocalType::Ordinary(m) => (1..m.saturating_sub(1))
            .map(|s| LocalFaceDescriptor {
                equations: vec![LocalEquation { coeffs: one(*m), rhs: Rational::from_integer(s.into()) }],
                exponent: (m - 1 - s) as u32,
            })
            .collect(),
        LocalType::Cusp => vec![LocalFaceDescriptor {
            equations: vec![LocalEquation { coeffs: one(1), rhs: Rational::new(1.into(), 6.into()) }],
            exponent: 1,
        }],
        LocalType::Tacnode => vec![LocalFaceDescriptor {
            equations: vec![LocalEquation { coeffs: one(2), rhs: Rational::new(1.into(), 2.into()) }],
            exponent: 1,
        }],
        LocalType::Custom { faces, .. } => faces.clone(),
    }
}

/// A global face of quasiadjunction of one subcurve. Coordinates are indexed
/// by position in `support`.
#[derive(Clone, Debug, PartialEq)]
pub struct QFace {
    pub support: Vec<usize>,
    /// Saturated choices: (parent vertex index, local face index), sorted.
    pub choices: Vec<(usize, usize)>,
    /// Ideal exponent at each vertex of `choices`, same order.
    pub exponents: Vec<u32>,
    /// Defining system `a·x = b`, one row per local equation.
    pub a: IntMatrix,
    pub b: Vec<Rational>,
    pub point: Vec<Rational>,
    pub basis: Vec<Vec<Rational>>,
    /// Lies in the open cube and off every other local face.
    pub witness: Vec<Rational>,
    pub contributing: bool,
    /// Value of `Σ d_i x_i` on the face when it is constant and integral.
    pub level: Option<i64>,
    pub order: BigInt,
}

impl QFace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Vertex indices of `S`.
    pub fn vertex_set(&self) -> Vec<usize> {
        self.choices.iter().map(|c| c.0).collect()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FaceOptions {
    /// Skip the (costlier) completion of faces that cannot contribute.
    pub contributing_only: bool,
}

/// Rows of one local face in subcurve coordinates, scaled to integers.
fn global_rows(v: &SubVertex, face: &LocalFaceDescriptor, pos: &BTreeMap<usize, usize>, n: usize) -> Vec<(Vec<Rational>, Rational)> {
    face.equations
        .iter()
        .map(|e| {
            let mut row = vec![Rational::zero(); n];
            for (b, c) in e.coeffs.iter().enumerate() {
                row[pos[&v.branches[b]]] += c;
            }
            // Scale to a primitive integer row [a | b].
            let l = row.iter().chain([&e.rhs]).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = row.iter().chain([&e.rhs]).map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let mut ints: Vec<Rational> = ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect();
            let rhs = ints.pop().unwrap();
            (ints, rhs)
        })
        .collect()
}

/// Incremental reduced row echelon form of an augmented system `[A | b]`.
#[derive(Clone)]
struct System {
    n: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Rational>>,
}

enum Insert {
    New(System),
    Redundant,
    Inconsistent,
}

impl System {
    fn new(n: usize) -> Self {
        System { n, pivots: vec![], rows: vec![] }
    }

    fn reduce(&self, row: &[Rational], rhs: &Rational) -> Vec<Rational> {
        let mut r: Vec<Rational> = row.iter().cloned().chain([rhs.clone()]).collect();
        for (pr, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(pr) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        r
    }

    /// `Some(value)` when `row·x` is constant on the solution space.
    fn implied(&self, row: &[Rational]) -> Option<Rational> {
        let r = self.reduce(row, &Rational::zero());
        r[..self.n].iter().all(Zero::is_zero).then(|| -&r[self.n])
    }

    fn holds(&self, rows: &[(Vec<Rational>, Rational)]) -> bool {
        rows.iter().all(|(row, rhs)| self.implied(row).as_ref() == Some(rhs))
    }

    fn insert(&self, row: &[Rational], rhs: &Rational) -> Insert {
        let r = self.reduce(row, rhs);
        let Some(p) = r[..self.n].iter().position(|x| !x.is_zero()) else {
            return if r[self.n].is_zero() { Insert::Redundant } else { Insert::Inconsistent };
        };
        let inv = r[p].recip();
        let r: Vec<Rational> = r.into_iter().map(|x| x * &inv).collect();
        let mut s = self.clone();
        for pr in s.rows.iter_mut() {
            if !pr[p].is_zero() {
                let c = pr[p].clone();
                for (x, y) in pr.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        let at = s.pivots.iter().position(|&q| q > p).unwrap_or(s.pivots.len());
        s.pivots.insert(at, p);
        s.rows.insert(at, r);
        Insert::New(s)
    }

    /// The point of the solution space agreeing with `x` on the free
    /// coordinates.
    fn complete(&self, x: &[Rational]) -> Vec<Rational> {
        let mut y = x.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let mut v = row[self.n].clone();
            for j in (0..self.n).filter(|&j| j != p && !row[j].is_zero()) {
                if !self.pivots.contains(&j) {
                    v -= &row[j] * &x[j];
                }
            }
            y[p] = v;
        }
        y
    }

    fn insert_all(&self, rows: &[(Vec<Rational>, Rational)]) -> Option<System> {
        let mut s = self.clone();
        for (row, rhs) in rows {
            match s.insert(row, rhs) {
                Insert::New(t) => s = t,
                Insert::Redundant => {}
                Insert::Inconsistent => return None,
            }
        }
        Some(s)
    }
}

struct Enumerator<'a> {
    n: usize,
    degrees: Vec<Rational>,
    /// Per subcurve vertex: parent index and each local face's rows.
    vertices: Vec<(usize, Vec<(Vec<(Vec<Rational>, Rational)>, u32)>)>,
    opts: FaceOptions,
    support: &'a [usize],
    out: Vec<QFace>,
}

impl Enumerator<'_> {
    fn inner_point(&self, rows: &[(Vec<Rational>, Rational)]) -> Option<Vec<Rational>> {
        let (a, b) = to_int_system(rows, self.n);
        interior_point(&a, &b, &vec![Interval::unit_open(); self.n])
    }

    fn feasible(&self, rows: &[(Vec<Rational>, Rational)]) -> Option<(Vec<Rational>, Rational)> {
        let (a, b) = to_int_system(rows, self.n);
        let f = interior_feasible(&a, &b, &vec![Interval::unit_open(); self.n]);
        f.feasible.then(|| (f.witness.unwrap(), f.slack))
    }

    /// Depth-first over vertices. `chosen` and `skipped` describe the path;
    /// a skipped vertex must never become implied later (that face is
    /// reached along the branch that includes it), so each saturated face
    /// is produced exactly once.
    /// `inner` is a point of the current flat inside the open cube; it often
    /// already satisfies the next local face, which saves a linear program.
    #[allow(clippy::too_many_arguments)]
    fn walk(
        &mut self,
        i: usize,
        sys: &System,
        inner: &[Rational],
        rows: &mut Vec<(Vec<Rational>, Rational)>,
        chosen: &mut Vec<(usize, usize)>,
        skipped: &mut Vec<usize>,
    ) {
        if i == self.vertices.len() {
            if !chosen.is_empty() {
                self.finish(sys, rows, chosen);
            }
            return;
        }
        let faces = self.vertices[i].1.clone();
        if let Some(k) = faces.iter().position(|(fr, _)| sys.holds(fr)) {
            chosen.push((i, k));
            self.walk(i + 1, sys, inner, rows, chosen, skipped);
            chosen.pop();
            return;
        }
        for (k, (fr, _)) in faces.iter().enumerate() {
            let Some(next) = sys.insert_all(fr) else { continue };
            if skipped.iter().any(|&j| self.vertices[j].1.iter().any(|(g, _)| next.holds(g))) {
                continue;
            }
            let mark = rows.len();
            rows.extend(fr.iter().cloned());
            let guess = next.complete(inner);
            let point = if in_open_cube(&guess) { Some(guess) } else { self.inner_point(rows) };
            if let Some(p) = point {
                chosen.push((i, k));
                self.walk(i + 1, &next, &p, rows, chosen, skipped);
                chosen.pop();
            }
            rows.truncate(mark);
        }
        skipped.push(i);
        self.walk(i + 1, sys, inner, rows, chosen, skipped);
        skipped.pop();
    }

    fn finish(&mut self, sys: &System, rows: &[(Vec<Rational>, Rational)], chosen: &[(usize, usize)]) {
        let level = sys.implied(&self.degrees);
        let contributing = level.as_ref().is_some_and(|l| l.is_integer());
        if self.opts.contributing_only && !contributing {
            return;
        }
        let (a, b) = to_int_system(rows, self.n);
        let qa = Matrix::from_rows(
            (0..a.nrows()).map(|i| a.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect()).collect(),
            self.n,
            Rational::zero(),
        );
        let (point, basis) = qa.solve(&b).expect("consistent system");
        let (w, slack) = self.feasible(rows).expect("feasible face");
        let in_s: Vec<bool> = (0..self.vertices.len()).map(|j| chosen.iter().any(|c| c.0 == j)).collect();
        let others: Vec<&Vec<(Vec<Rational>, Rational)>> = (0..self.vertices.len())
            .filter(|&j| !in_s[j])
            .flat_map(|j| self.vertices[j].1.iter().map(|(fr, _)| fr))
            .collect();
        let witness = generic_witness(w, &slack, &basis, &others);
        self.out.push(QFace {
            support: self.support.to_vec(),
            choices: chosen.iter().map(|&(j, k)| (self.vertices[j].0, k)).collect(),
            exponents: chosen.iter().map(|&(j, k)| self.vertices[j].1[k].1).collect(),
            order: face_order_of(&a, &b),
            a,
            b,
            point,
            basis,
            witness,
            contributing,
            level: if contributing { level.map(|l| i64::try_from(l.to_integer()).expect("level fits i64")) } else { None },
        });
    }
}

fn in_open_cube(x: &[Rational]) -> bool {
    x.iter().all(|v| v.is_positive() && v < &Rational::one())
}

fn satisfies(x: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> bool {
    rows.iter().all(|(r, rhs)| r.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>() == *rhs)
}

/// Moves the LP witness along the face so that it avoids every local face
/// of the vertices outside `S` (each meets the face in a proper subspace).
fn generic_witness(w: Vec<Rational>, slack: &Rational, basis: &[Vec<Rational>], others: &[&Vec<(Vec<Rational>, Rational)>]) -> Vec<Rational> {
    if !others.iter().any(|o| satisfies(&w, o)) {
        return w;
    }
    let n = w.len();
    for attempt in 1..=64i64 {
        let mut dir = vec![Rational::zero(); n];
        for (k, v) in basis.iter().enumerate() {
            // Coefficients attempt^k give directions on a moment curve, which
            // avoid any fixed proper subspace for all but finitely many attempts.
            let c = Rational::from_integer(BigInt::from(attempt + 1).pow(k as u32 + 1));
            for (d, x) in dir.iter_mut().zip(v) {
                *d += &c * x;
            }
        }
        let norm = dir.iter().map(|d| d.abs()).max().unwrap_or_else(Rational::zero);
        if norm.is_zero() {
            break;
        }
        let eps = slack / (norm * Rational::from_integer(BigInt::from(2 * attempt + 1)));
        let x: Vec<Rational> = w.iter().zip(&dir).map(|(a, d)| a + &eps * d).collect();
        if !others.iter().any(|o| satisfies(&x, o)) {
            return x;
        }
    }
    unreachable!("a proper subspace cannot contain a moment-curve family");
}

fn to_int_system(rows: &[(Vec<Rational>, Rational)], n: usize) -> (IntMatrix, Vec<Rational>) {
    let a = IntMatrix::from_rows(rows.iter().map(|(r, _)| r.iter().map(|x| x.to_integer()).collect()).collect(), n);
    (a, rows.iter().map(|(_, b)| b.clone()).collect())
}

/// gcd of the nonzero maximal-order minors of the coefficient matrix, with
/// every equation scaled to a primitive integer row `[a | b]`: the order of
/// the torsion of `Zⁿ / (row lattice)`.
fn face_order_of(a: &IntMatrix, b: &[Rational]) -> BigInt {
    let rows: Vec<Vec<BigInt>> = (0..a.nrows())
        .map(|i| {
            let l = b[i].denom().clone();
            let mut r: Vec<BigInt> = a.row(i).iter().map(|x| x * &l).collect();
            r.push((&b[i] * Rational::from_integer(l)).to_integer());
            let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            r.pop();
            r.into_iter().map(|x| x / &g).collect()
        })
        .collect();
    smith_normal_form(&IntMatrix::from_rows(rows, a.ncols())).gcd_maximal_minors
}

pub fn face_order(face: &QFace) -> BigInt {
    face_order_of(&face.a, &face.b)
}

/// All faces of quasiadjunction of a subcurve, in canonical order (by
/// saturated choices).
pub fn enumerate_faces(curve: &Curve, sub: &Subcurve, opts: FaceOptions) -> Vec<QFace> {
    let n = sub.support.len();
    let pos: BTreeMap<usize, usize> = sub.support.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let vertices = sub
        .vertices
        .iter()
        .map(|v| (v.parent, local_faces(&v.kind).iter().map(|f| (global_rows(v, f, &pos, n), f.exponent)).collect()))
        .collect();
    let mut e = Enumerator {
        n,
        degrees: sub.support.iter().map(|&c| Rational::from_integer(curve.degrees[c].into())).collect(),
        vertices,
        opts,
        support: &sub.support,
        out: vec![],
    };
    let centre = vec![Rational::new(BigInt::one(), BigInt::from(2)); n];
    e.walk(0, &System::new(n), &centre, &mut vec![], &mut vec![], &mut vec![]);
    let mut out = e.out;
    out.sort_by(|x, y| x.choices.cmp(&y.choices));
    out
}

/// Image of a system under `x ↦ 1 − x`: `A(1 − x) = b` becomes `A x = A·1 − b`.
pub fn conjugate_system(a: &IntMatrix, b: &[Rational]) -> Vec<Rational> {
    (0..a.nrows())
        .map(|i| Rational::from_integer(a.row(i).iter().sum::<BigInt>()) - &b[i])
        .collect()
}

/// Whether `x` lies in the relative interior of the face: on its flat, in the
/// open cube, and off every local face of the subcurve's other vertices.
pub fn in_relative_interior(face: &QFace, sub: &Subcurve, x: &[Rational]) -> bool {
    let n = face.support.len();
    if !x.iter().all(|v| v.is_positive() && v < &Rational::one()) {
        return false;
    }
    let pos: BTreeMap<usize, usize> = sub.support.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let in_s: Vec<usize> = face.vertex_set();
    sub.vertices.iter().filter(|v| !in_s.contains(&v.parent)).all(|v| {
        local_faces(&v.kind).iter().all(|f| !satisfies(x, &global_rows(v, f, &pos, n)))
    })
}
