//! Characteristic varieties as finite unions of translated subtori.
//!
//! A component is stored by exponents: a saturated integer matrix `A` and a
//! translation `β ∈ (Q/Z)^k`, standing for
//! `{exp(2πi·x) : A·x ≡ β (mod 1)}`. Because `A` is saturated this set is
//! connected. Characters of finite abelian covers are handled through a
//! [`CharacterGroup`], and counts of characters on components reduce to
//! congruence systems solved with the Smith form.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arrangement::{build_incidence, enumerate_subcurves, Curve, Mode, Subcurve, Vertex};
use crate::exactmath::{frac, lcm_all, saturate_row_lattice, smith_normal_form, IntMatrix, Matrix, Rational};
use crate::quasiadjunction::{enumerate_faces, FaceOptions, QFace};
use crate::sheafcoh::{CohomologyResult, FatPointScheme, SuperabundanceMemo};
use crate::{Error, Result};

/// A torsion character, as exponents `x_i ∈ [0, 1)` of `exp(2πi·x_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(pub Vec<Rational>);

impl Character {
    pub fn new(x: Vec<Rational>) -> Self {
        Character(x.iter().map(frac).collect())
    }

    /// `(k₁/m₁, …, k_r/m_r)`.
    pub fn from_fractions(k: &[i64], m: &[i64]) -> Self {
        Self::new(k.iter().zip(m).map(|(&k, &m)| Rational::new(k.into(), m.into())).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Indices with a nontrivial coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// Support of the subcurve that produced the face.
    pub subcurve: Vec<usize>,
    /// The face's saturated vertex choices.
    pub face: Vec<(usize, usize)>,
    /// Obtained from the face by complex conjugation `β ↦ −β`.
    pub conjugate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusComponent {
    pub rank: usize,
    pub support: Vec<usize>,
    /// Saturated, in row Hermite normal form.
    pub rows: IntMatrix,
    /// Entries in `[0, 1)`, one per row.
    pub beta: Vec<Rational>,
    pub dimension: usize,
    pub depth: u32,
    pub essential: bool,
    pub provenance: Provenance,
    /// Order of the face it came from.
    pub face_order: BigInt,
    /// Embedded face witness (zero off the support).
    pub witness: Vec<Rational>,
}

fn dot(row: &[BigInt], x: &[Rational]) -> Rational {
    row.iter().zip(x).map(|(a, b)| Rational::from_integer(a.clone()) * b).sum()
}

fn rat_rows(m: &IntMatrix) -> Matrix<Rational> {
    Matrix::from_rows(
        (0..m.nrows()).map(|i| m.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect()).collect(),
        m.ncols(),
        Rational::zero(),
    )
}

impl TorusComponent {
    /// Exact membership test.
    pub fn contains(&self, w: &Character) -> bool {
        (0..self.rows.nrows()).all(|s| frac(&(dot(self.rows.row(s), &w.0) - &self.beta[s])).is_zero())
    }

    pub fn contains_identity(&self) -> bool {
        self.beta.iter().all(Zero::is_zero)
    }

    /// Order of the translation: the least N with N·β ≡ 0. Since the rows are
    /// saturated this is the lcm of the denominators of β.
    pub fn translation_order(&self) -> BigInt {
        lcm_all(self.beta.iter().map(|b| b.denom()))
    }

    /// A rational point `x` with `A·x = β` exactly.
    pub fn base_point(&self) -> Vec<Rational> {
        rat_rows(&self.rows).solve(&self.beta).expect("saturated rows are independent").0
    }

    /// Whether the character `Π t_i^{c_i}` is identically 1 on the component.
    pub fn kills(&self, c: &[BigInt]) -> bool {
        let v: Vec<Rational> = c.iter().map(|x| Rational::from_integer(x.clone())).collect();
        rat_rows(&self.rows).rref().contains(&v) && frac(&dot(c, &self.base_point())).is_zero()
    }

    /// Containment of cosets: every row of `other` must be an integer
    /// combination of ours (equivalently, rational, as ours are saturated),
    /// and our base point must satisfy `other`'s congruences.
    pub fn is_subset_of(&self, other: &TorusComponent) -> bool {
        let mine = rat_rows(&self.rows).rref();
        let x = self.base_point();
        (0..other.rows.nrows()).all(|s| {
            let v: Vec<Rational> = other.rows.row(s).iter().map(|a| Rational::from_integer(a.clone())).collect();
            mine.contains(&v) && frac(&(dot(other.rows.row(s), &x) - &other.beta[s])).is_zero()
        })
    }

    /// Image under complex conjugation.
    pub fn conjugate(&self) -> TorusComponent {
        let mut c = self.clone();
        c.beta = self.beta.iter().map(|b| frac(&-b)).collect();
        c.witness = self.witness.iter().map(|w| if w.is_zero() { w.clone() } else { Rational::one() - w }).collect();
        c.provenance.conjugate = !self.provenance.conjugate;
        c
    }

    /// Image under the Galois automorphism ζ ↦ ζᵃ of the torsion part.
    pub fn galois(&self, a: i64) -> TorusComponent {
        let mut c = self.clone();
        c.beta = self.beta.iter().map(|b| frac(&(b * Rational::from_integer(a.into())))).collect();
        c
    }

    fn key(&self) -> (Vec<usize>, Vec<Vec<BigInt>>, Vec<Rational>) {
        (self.support.clone(), self.rows.to_rows(), self.beta.clone())
    }
}

/// Builds the component of a contributing face of a subcurve, embedded in the
/// rank-`rank` torus by `t_j = 1` off the subcurve.
pub fn component_from_face(face: &QFace, h1: u32, rank: usize) -> Result<TorusComponent> {
    if h1 == 0 {
        return Err(Error::Invalid("a face with vanishing superabundance gives no component".into()));
    }
    let sup = &face.support;
    let mut rows: Vec<Vec<BigInt>> = (0..face.a.nrows())
        .map(|i| {
            let mut row = vec![BigInt::zero(); rank];
            for (k, &c) in sup.iter().enumerate() {
                row[c] = face.a.get(i, k).clone();
            }
            row
        })
        .collect();
    for j in (0..rank).filter(|j| !sup.contains(j)) {
        let mut row = vec![BigInt::zero(); rank];
        row[j] = BigInt::one();
        rows.push(row);
    }
    let mut witness = vec![Rational::zero(); rank];
    for (k, &c) in sup.iter().enumerate() {
        witness[c] = face.witness[k].clone();
    }
    let sat = saturate_row_lattice(&IntMatrix::from_rows(rows, rank))?;
    let beta: Vec<Rational> = (0..sat.nrows()).map(|s| frac(&dot(sat.row(s), &witness))).collect();
    Ok(TorusComponent {
        rank,
        support: sup.clone(),
        dimension: rank - sat.nrows(),
        rows: sat,
        beta,
        depth: h1,
        essential: false,
        provenance: Provenance { subcurve: sup.clone(), face: face.choices.clone(), conjugate: false },
        face_order: face.order.clone(),
        witness,
    })
}

/// A contributing face together with its superabundance.
#[derive(Clone, Debug)]
pub struct FaceRecord {
    pub subcurve: Arc<Subcurve>,
    pub face: QFace,
    pub cohomology: CohomologyResult,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AssembleOptions {
    /// Skip subcurves of arrangements on which every superabundance vanishes
    /// for degree reasons (d′² > Σ m_P² over points of multiplicity ≥ 3).
    pub fast: bool,
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub rank: usize,
    pub vertices: Vec<Vertex>,
    /// Every contributing face, of every subcurve, with its cohomology.
    pub faces: Vec<FaceRecord>,
    /// Components, deduplicated, with those contained in another component
    /// of the same support and no smaller depth removed.
    pub components: Vec<TorusComponent>,
    pub warnings: Vec<String>,
}

/// The scheme of a face: its vertices with their ideal exponents.
pub fn face_scheme(curve: &Curve, vertices: &[Vertex], face: &QFace) -> Result<FatPointScheme> {
    let pts = face
        .choices
        .iter()
        .zip(&face.exponents)
        .filter(|(_, &a)| a > 0)
        .map(|(&(v, _), &a)| (vertices[v].point.clone(), a))
        .collect();
    FatPointScheme::new(curve.field.clone(), pts)
}

fn degree_bound_prunes(sub: &Subcurve) -> bool {
    let d = sub.degree as u64;
    let s: u64 = sub.vertices.iter().map(|v| v.multiplicity() as u64).filter(|&m| m >= 3).map(|m| m * m).sum();
    d * d > s
}

fn subcurve_faces(curve: &Curve, vertices: &[Vertex], sub: Subcurve, memo: &SuperabundanceMemo) -> Result<Vec<FaceRecord>> {
    let sub = Arc::new(sub);
    let mut out = vec![];
    for face in enumerate_faces(curve, &sub, FaceOptions { contributing_only: true }) {
        let Some(level) = face.level.filter(|_| face.contributing) else { continue };
        let n = sub.degree as i64 - 3 - level;
        let key = face.choices.iter().zip(&face.exponents).filter(|(_, &a)| a > 0).map(|(&(v, _), &a)| (v, a)).collect();
        let coh = memo.get_or_compute(n, key, || face_scheme(curve, vertices, &face))?;
        out.push(FaceRecord { subcurve: sub.clone(), face, cohomology: coh });
    }
    Ok(out)
}

pub fn assemble(curve: &Curve, opts: AssembleOptions) -> Result<Assembly> {
    let vertices = build_incidence(curve)?;
    let rank = curve.rank();
    let subs = enumerate_subcurves(curve, &vertices, |s| {
        !s.vertices.is_empty() && !(opts.fast && curve.mode == Mode::Lines && degree_bound_prunes(s))
    });
    let memo = SuperabundanceMemo::new();
    let per_sub: Vec<Result<Vec<FaceRecord>>> =
        subs.into_par_iter().map(|s| subcurve_faces(curve, &vertices, s, &memo)).collect();
    let mut faces = vec![];
    for r in per_sub {
        faces.extend(r?);
    }

    let mut warnings = vec![];
    let mut merged: BTreeMap<_, TorusComponent> = BTreeMap::new();
    for rec in faces.iter().filter(|r| r.cohomology.h1 > 0) {
        let mut c = component_from_face(&rec.face, rec.cohomology.h1 as u32, rank)?;
        c.essential = c.support.len() == rank;
        for c in [c.conjugate(), c] {
            match merged.get_mut(&c.key()) {
                None => {
                    merged.insert(c.key(), c);
                }
                Some(old) => {
                    if old.depth != c.depth {
                        warnings.push(format!(
                            "component on {:?} produced with depths {} and {}; keeping {}",
                            c.support,
                            old.depth,
                            c.depth,
                            old.depth.max(c.depth)
                        ));
                    }
                    if c.depth > old.depth || (c.depth == old.depth && !c.provenance.conjugate && old.provenance.conjugate) {
                        *old = c;
                    }
                }
            }
        }
    }
    let all: Vec<TorusComponent> = merged.into_values().collect();
    let components = prune(&all, |a, b| a.support == b.support);
    Ok(Assembly { rank, vertices, faces, components, warnings })
}

/// Drops components contained in another (selected by `comparable`) of at
/// least the same depth.
fn prune(all: &[TorusComponent], comparable: impl Fn(&TorusComponent, &TorusComponent) -> bool + Sync) -> Vec<TorusComponent> {
    let keep: Vec<bool> = all
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            !all.iter().enumerate().any(|(j, o)| {
                j != i && comparable(c, o) && o.depth >= c.depth && o.dimension >= c.dimension && c.is_subset_of(o)
                    // equal cosets were merged, so ties in both directions cannot occur
            })
        })
        .collect();
    all.iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c.clone()).collect()
}

/// The components that are maximal with respect to inclusion among those of
/// no smaller depth — the irreducible components of the characteristic
/// varieties proper, without pullbacks that lie inside bigger tori.
pub fn maximal_components(components: &[TorusComponent]) -> Vec<TorusComponent> {
    prune(components, |_, _| true)
}

/// `max{depth(V) : ω ∈ V}`, zero if ω lies on no component.
pub fn depth_at(components: &[TorusComponent], w: &Character) -> Result<u32> {
    if w.is_trivial() {
        return Err(Error::Invalid("the trivial character is excluded; sums run over nontrivial characters".into()));
    }
    Ok(components.iter().filter(|c| c.contains(w)).map(|c| c.depth).max().unwrap_or(0))
}

/// Sum of depths over the components containing ω.
pub fn additive_depth_at(components: &[TorusComponent], w: &Character) -> Result<u32> {
    if w.is_trivial() {
        return Err(Error::Invalid("the trivial character is excluded; sums run over nontrivial characters".into()));
    }
    Ok(components.iter().filter(|c| c.contains(w)).map(|c| c.depth).sum())
}

/// The characters of a finite abelian quotient `H₁ = Zʳ → Π Z/n_j`,
/// `γ_i ↦ (Q_{ji})_j`, pulled back to characters of H₁. With `Q = I` this
/// is the group of all characters with `ω_i^{m_i} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterGroup {
    pub q: IntMatrix,
    pub moduli: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    All,
    /// Every coordinate on the component's support is nontrivial.
    FullSupport,
    Nontrivial,
}

/// `#{k ∈ Π Z/n_j : M·diag(1/n)·k ≡ β (mod 1)}`.
pub fn count_congruence_solutions(m: &IntMatrix, beta: &[Rational], n: &[BigInt]) -> BigInt {
    let total: BigInt = n.iter().product();
    if m.nrows() == 0 {
        return total;
    }
    let l = lcm_all(n.iter().chain(beta.iter().map(|b| b.denom())));
    let w = IntMatrix::from_rows(
        (0..m.nrows()).map(|s| (0..m.ncols()).map(|j| m.get(s, j) * (&l / &n[j])).collect()).collect(),
        m.ncols(),
    );
    let c: Vec<BigInt> = beta.iter().map(|b| (b * Rational::from_integer(l.clone())).to_integer()).collect();
    let snf = smith_normal_form(&w);
    let uc = snf.u.mul_vec(&c);
    let mut num = total;
    for (i, x) in uc.iter().enumerate() {
        let g = match snf.divisors.get(i) {
            Some(d) => d.gcd(&l),
            None => l.clone(),
        };
        if !(x % &g).is_zero() {
            return BigInt::zero();
        }
        if i < snf.rank() {
            num *= g;
        }
    }
    let den = num_traits::pow(l, snf.rank());
    debug_assert!((&num % &den).is_zero());
    num / den
}

impl CharacterGroup {
    pub fn direct(orders: &[u64]) -> Self {
        CharacterGroup { q: IntMatrix::identity(orders.len()), moduli: orders.iter().map(|&m| BigInt::from(m)).collect() }
    }

    /// `Q` is `s × r`; the map must be onto `Π Z/n_j`.
    pub fn quotient(q: IntMatrix, moduli: Vec<BigInt>) -> Result<Self> {
        if q.nrows() != moduli.len() {
            return Err(Error::Invalid(format!("quotient matrix has {} rows for {} moduli", q.nrows(), moduli.len())));
        }
        if moduli.iter().any(|n| !n.is_positive()) {
            return Err(Error::Invalid("moduli must be positive".into()));
        }
        let s = q.nrows();
        let mut rows = q.to_rows();
        for (j, row) in rows.iter_mut().enumerate() {
            row.extend((0..s).map(|k| if k == j { moduli[j].clone() } else { BigInt::zero() }));
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(rows, q.ncols() + s));
        if s > 0 && (snf.rank() < s || !snf.gcd_maximal_minors.is_one()) {
            return Err(Error::Invalid("the homomorphism to Π Z/n_j is not onto".into()));
        }
        Ok(CharacterGroup { q, moduli })
    }

    pub fn rank(&self) -> usize {
        self.q.ncols()
    }

    pub fn order(&self) -> BigInt {
        self.moduli.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        lcm_all(self.moduli.iter())
    }

    /// The pulled-back character of `k ∈ Π Z/n_j`.
    pub fn character(&self, k: &[BigInt]) -> Character {
        Character::new(
            (0..self.rank())
                .map(|i| (0..self.moduli.len()).map(|j| Rational::new(self.q.get(j, i) * &k[j], self.moduli[j].clone())).sum())
                .collect(),
        )
    }

    /// Every element, in lexicographic order of `k`.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for n in &self.moduli {
            let n = n.to_u64().expect("small modulus");
            out = out.into_iter().flat_map(|p| (0..n).map(move |x| [p.clone(), vec![BigInt::from(x)]].concat())).collect();
        }
        out
    }

    /// Number of group elements whose character satisfies `rows·ω ≡ β` and
    /// has `ω_i = 1` for each `i ∈ trivial`.
    pub fn count(&self, rows: &IntMatrix, beta: &[Rational], trivial: &[usize]) -> BigInt {
        let qt = self.q.transpose();
        let mut m = rows.mul(&qt).to_rows();
        let mut b = beta.to_vec();
        for &i in trivial {
            m.push(qt.row(i).to_vec());
            b.push(Rational::zero());
        }
        count_congruence_solutions(&IntMatrix::from_rows(m, self.moduli.len()), &b, &self.moduli)
    }

    /// Number of elements whose character lies on the coset and has support
    /// exactly `x` (inclusion–exclusion over coordinates forced trivial).
    pub fn count_with_support(&self, rows: &IntMatrix, beta: &[Rational], x: &[usize]) -> BigInt {
        let outside: Vec<usize> = (0..self.rank()).filter(|i| !x.contains(i)).collect();
        self.signed_sum(rows, beta, outside, x)
    }

    fn signed_sum(&self, rows: &IntMatrix, beta: &[Rational], forced: Vec<usize>, free: &[usize]) -> BigInt {
        let base = self.count(rows, beta, &forced);
        if base.is_zero() || free.is_empty() {
            return base;
        }
        // Σ_{T ⊆ free} (−1)^|T| count(forced ∪ T), splitting on free[0].
        let without = self.signed_sum(rows, beta, forced.clone(), &free[1..]);
        let mut f2 = forced;
        f2.push(free[0]);
        without - self.signed_sum(rows, beta, f2, &free[1..])
    }
}

/// Characters of Πμ_{m_i} on the component satisfying the predicate.
pub fn count_torsion_points(c: &TorusComponent, orders: &[u64], pred: Predicate) -> BigInt {
    let g = CharacterGroup::direct(orders);
    match pred {
        Predicate::All => g.count(&c.rows, &c.beta, &[]),
        Predicate::Nontrivial => {
            g.count(&c.rows, &c.beta, &[]) - if c.contains_identity() { BigInt::one() } else { BigInt::zero() }
        }
        Predicate::FullSupport => g.count_with_support(&c.rows, &c.beta, &c.support),
    }
}

/// Stacks the congruences of several components.
fn intersection(cs: &[&TorusComponent]) -> (IntMatrix, Vec<Rational>) {
    let r = cs[0].rank;
    let rows = cs.iter().flat_map(|c| c.rows.to_rows()).collect();
    let beta = cs.iter().flat_map(|c| c.beta.clone()).collect();
    (IntMatrix::from_rows(rows, r), beta)
}

/// `Σ max depth` over group elements whose character has support exactly
/// `x`, the maximum taken over those of `cs` containing the character:
/// `Σ_{k ≥ 1} |⋃_{depth ≥ k} C|`, each union by inclusion–exclusion over
/// intersections, pruned where an intersection has no points.
pub fn depth_sum_on_support(g: &CharacterGroup, cs: &[&TorusComponent], x: &[usize]) -> BigInt {
    let top = cs.iter().map(|c| c.depth).max().unwrap_or(0);
    let mut total = BigInt::zero();
    for k in 1..=top {
        let layer: Vec<&TorusComponent> = cs.iter().copied().filter(|c| c.depth >= k).collect();
        total += union_count(g, &layer, x, &mut vec![], 0);
    }
    total
}

fn union_count<'a>(g: &CharacterGroup, cs: &[&'a TorusComponent], x: &[usize], chosen: &mut Vec<&'a TorusComponent>, from: usize) -> BigInt {
    let mut total = BigInt::zero();
    for i in from..cs.len() {
        chosen.push(cs[i]);
        let (rows, beta) = intersection(chosen);
        let outside: Vec<usize> = (0..g.rank()).filter(|j| !x.contains(j)).collect();
        if !g.count(&rows, &beta, &outside).is_zero() {
            let here = g.count_with_support(&rows, &beta, x);
            let sign = if chosen.len() % 2 == 1 { 1 } else { -1 };
            total += here * sign + union_count(g, cs, x, chosen, i + 1);
        }
        chosen.pop();
    }
    total
}

/// Component counts grouped by dimension (descending), for reports.
pub fn census(components: &[TorusComponent]) -> Vec<(usize, usize)> {
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for c in components {
        *m.entry(c.dimension).or_default() += 1;
    }
    m.into_iter().rev().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::fixtures;

    fn comp(rows: &[Vec<i64>], beta: Vec<Rational>, support: Vec<usize>, depth: u32) -> TorusComponent {
        let r = rows[0].len();
        let m = IntMatrix::from_i64(rows, r);
        TorusComponent {
            rank: r,
            support: support.clone(),
            dimension: r - m.nrows(),
            rows: m,
            beta,
            depth,
            essential: true,
            provenance: Provenance { subcurve: support, face: vec![], conjugate: false },
            face_order: BigInt::one(),
            witness: vec![],
        }
    }

    /// Brute force over all characters of the group.
    fn brute(c: &TorusComponent, orders: &[u64], pred: Predicate) -> usize {
        let g = CharacterGroup::direct(orders);
        g.elements()
            .iter()
            .map(|k| g.character(k))
            .filter(|w| c.contains(w))
            .filter(|w| match pred {
                Predicate::All => true,
                Predicate::Nontrivial => !w.is_trivial(),
                Predicate::FullSupport => c.support.iter().all(|&i| !w.0[i].is_zero()),
            })
            .count()
    }

    #[test]
    fn torsion_counts() {
        let c = comp(&[vec![1, 1, 1]], vec![rat(0, 1)], vec![0, 1, 2], 1);
        assert_eq!(count_torsion_points(&c, &[3, 3, 3], Predicate::FullSupport), BigInt::from(2));
        let c4 = comp(&[vec![1, 1, 1, 1]], vec![rat(0, 1)], vec![0, 1, 2, 3], 2);
        assert_eq!(count_torsion_points(&c4, &[3, 3, 3, 3], Predicate::FullSupport), BigInt::from(6));
        assert!(count_torsion_points(&c4, &[1, 1, 1, 1], Predicate::Nontrivial).is_zero());
        for orders in [[2u64, 3, 4, 6], [5, 5, 5, 5], [6, 4, 2, 1]] {
            for pred in [Predicate::All, Predicate::Nontrivial, Predicate::FullSupport] {
                assert_eq!(count_torsion_points(&c4, &orders, pred), BigInt::from(brute(&c4, &orders, pred)));
            }
        }
        // A translated coset: t₁t₂ = −1, t₃ = 1.
        let t = comp(&[vec![1, 1, 0], vec![0, 0, 1]], vec![rat(1, 2), rat(0, 1)], vec![0, 1], 1);
        for orders in [[2u64, 2, 2], [4, 6, 3], [3, 3, 3]] {
            for pred in [Predicate::All, Predicate::Nontrivial, Predicate::FullSupport] {
                assert_eq!(count_torsion_points(&t, &orders, pred), BigInt::from(brute(&t, &orders, pred)));
            }
        }
    }

    #[test]
    fn containment() {
        let big = comp(&[vec![1, 1, 1, 1]], vec![rat(0, 1)], vec![0, 1, 2, 3], 2);
        let small = comp(&[vec![1, 1, 1, 0], vec![0, 0, 0, 1]], vec![rat(0, 1), rat(0, 1)], vec![0, 1, 2], 1);
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        let shifted = comp(&[vec![1, 1, 1, 0], vec![0, 0, 0, 1]], vec![rat(0, 1), rat(1, 2)], vec![0, 1, 2, 3], 1);
        assert!(!shifted.is_subset_of(&big));
        assert!(!small.is_subset_of(&shifted));
    }

    #[test]
    fn ceva_components() {
        let a = assemble(&fixtures::ceva(), AssembleOptions::default()).unwrap();
        assert_eq!(a.components.len(), 5);
        let ess: Vec<_> = a.components.iter().filter(|c| c.essential).collect();
        assert_eq!(ess.len(), 1);
        let e = ess[0];
        assert_eq!((e.dimension, e.depth), (2, 1));
        assert!(e.contains_identity());
        assert_eq!(e.face_order, BigInt::from(2));
        // t₁t₂t₄ = t₂t₃t₅ = t₁t₃t₆ = t₄t₅t₆ = 1 on the component.
        for r in [[1, 1, 0, 1, 0, 0], [0, 1, 1, 0, 1, 0], [1, 0, 1, 0, 0, 1], [0, 0, 0, 1, 1, 1]] {
            assert!(e.kills(&r.map(BigInt::from)));
        }
        // (−1, −1, −1, 1, 1, 1)·(u, v, …) lies on the subgroup but not on this component.
        let w = Character::from_fractions(&[1, 1, 1, 0, 0, 0], &[2, 2, 2, 1, 1, 1]);
        assert!(!e.contains(&w));
        let w = Character::from_fractions(&[1; 6], &[3; 6]);
        assert_eq!(depth_at(&a.components, &w).unwrap(), 1);
    }

    #[test]
    fn four_lines_component() {
        let a = assemble(&fixtures::four_lines(), AssembleOptions::default()).unwrap();
        let max = maximal_components(&a.components);
        assert_eq!(max.len(), 1);
        assert_eq!((max[0].dimension, max[0].depth), (3, 2));
        assert_eq!(max[0].rows.to_rows(), vec![vec![BigInt::one(); 4]]);
        let w = Character::from_fractions(&[1; 4], &[4; 4]);
        assert_eq!(depth_at(&a.components, &w).unwrap(), 2);
        assert!(depth_at(&a.components, &Character::from_fractions(&[0; 4], &[1; 4])).is_err());
    }

    #[test]
    fn cusp_point() {
        let face = QFace {
            support: vec![0],
            choices: vec![(0, 0)],
            exponents: vec![1],
            a: IntMatrix::from_i64(&[vec![1]], 1),
            b: vec![rat(1, 6)],
            point: vec![rat(1, 6)],
            basis: vec![],
            witness: vec![rat(1, 6)],
            contributing: true,
            level: Some(1),
            order: BigInt::from(6),
        };
        let c = component_from_face(&face, 1, 1).unwrap();
        assert_eq!(c.dimension, 0);
        assert!(c.contains(&Character::from_fractions(&[1], &[6])));
        assert!(!c.contains(&Character::from_fractions(&[5], &[6])));
        assert!(c.conjugate().contains(&Character::from_fractions(&[5], &[6])));
        assert_eq!(c.translation_order(), BigInt::from(6));
    }

    #[test]
    fn congruence_counts_match_enumeration() {
        let m = IntMatrix::from_i64(&[vec![1, 2, 0], vec![0, 3, 3]], 3);
        let n = [4, 6, 3].map(BigInt::from);
        for beta in [vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 3)], vec![rat(1, 5), rat(0, 1)]] {
            let mut c = 0;
            for k0 in 0..4i64 {
                for k1 in 0..6i64 {
                    for k2 in 0..3i64 {
                        let k = [k0, k1, k2];
                        let ok = (0..2).all(|s| {
                            let v: Rational = (0..3).map(|j| rat(m.get(s, j).to_i64().unwrap() * k[j], [4, 6, 3][j])).sum();
                            frac(&(v - &beta[s])).is_zero()
                        });
                        c += ok as i64;
                    }
                }
            }
            assert_eq!(count_congruence_solutions(&m, &beta, &n), BigInt::from(c));
        }
    }

    #[test]
    fn quotient_must_be_onto() {
        let q = IntMatrix::from_i64(&[vec![2, 0]], 2);
        assert!(CharacterGroup::quotient(q, vec![BigInt::from(4)]).is_err());
        let q = IntMatrix::from_i64(&[vec![1, -1]], 2);
        let g = CharacterGroup::quotient(q, vec![BigInt::from(4)]).unwrap();
        assert_eq!(g.character(&[BigInt::from(1)]), Character::from_fractions(&[1, 3], &[4, 4]));
    }
}
