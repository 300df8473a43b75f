//! Irregularity and first Betti numbers of abelian covers and of the Milnor
//! fibre, from the faces and components of an [`Assembly`].
//!
//! Covers are given by a [`CharacterGroup`]: the direct covers with
//! `γ_i ↦ γ_i mod m_i`, or any quotient of those through an integer matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::charvariety::{depth_at, depth_sum_on_support, Assembly, Character, CharacterGroup, TorusComponent};
use crate::exactmath::{
    enumerate_affine_lattice_points, smith_normal_form, AffineLatticePointSet, IntMatrix, Rational,
};
use crate::quasiadjunction::in_relative_interior;
use crate::charvariety::FaceRecord;

/// Above this many characters, sums over characters are never enumerated.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

impl CharacterGroup {
    /// `Zʳ → (Z/n)^{r−1}`, `γ_i ↦ e_i` for `i < r − 1` and `γ_{r−1} ↦ −Σ e_i`:
    /// the cover with group `(Z/n)ʳ/diagonal`, whose characters are those
    /// with `ω_i^n = 1` and `Π ω_i = 1`.
    pub fn kummer(r: usize, n: u64) -> Self {
        let rows = (0..r - 1)
            .map(|i| (0..r).map(|j| if j == i { 1 } else if j == r - 1 { -1 } else { 0 }).collect())
            .collect::<Vec<Vec<i64>>>();
        CharacterGroup::quotient(IntMatrix::from_i64(&rows, r), vec![BigInt::from(n); r - 1]).expect("onto")
    }

    /// Least `L_i` with every character's `i`-th exponent in `(1/L_i)·Z`.
    pub fn coordinate_orders(&self) -> Vec<BigInt> {
        (0..self.rank())
            .map(|i| {
                self.moduli
                    .iter()
                    .enumerate()
                    .fold(BigInt::from(1), |acc, (j, n)| acc.lcm(&(n / n.gcd(self.q.get(j, i)))))
            })
            .collect()
    }

    /// Generators of the kernel `{γ : Qγ ≡ 0 mod n}` of `Zʳ → Π Z/n_j`: a
    /// rational vector is (the exponent of) a character of the group iff it
    /// pairs integrally with all of them.
    pub fn kernel_generators(&self) -> Vec<Vec<BigInt>> {
        let (s, r) = (self.moduli.len(), self.rank());
        let mut rows = self.q.to_rows();
        for (j, row) in rows.iter_mut().enumerate() {
            row.extend((0..s).map(|k| if k == j { self.moduli[j].clone() } else { BigInt::zero() }));
        }
        if s == 0 {
            return vec![];
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(rows, r + s));
        (snf.rank()..r + s).map(|c| (0..r).map(|i| snf.v.get(i, c).clone()).collect()).collect()
    }

    pub fn contains(&self, x: &[Rational], kernel: &[Vec<BigInt>]) -> bool {
        kernel.iter().all(|g| {
            let v: Rational = g.iter().zip(x).map(|(a, b)| Rational::from_integer(a.clone()) * b).sum();
            v.is_integer()
        })
    }
}

/// Group characters in the relative interior of a face, lifted to `(0,1)`
/// on the subcurve.
pub fn interior_points(rec: &FaceRecord, g: &CharacterGroup) -> Vec<Vec<Rational>> {
    let orders = g.coordinate_orders();
    let kernel = g.kernel_generators();
    let sup = &rec.subcurve.support;
    let dens: Vec<BigInt> = sup.iter().map(|&i| orders[i].clone()).collect();
    let set = AffineLatticePointSet::in_open_cube(rec.face.a.clone(), rec.face.b.clone(), dens);
    enumerate_affine_lattice_points(&set)
        .into_iter()
        .filter(|x| {
            let mut full = vec![Rational::zero(); g.rank()];
            for (k, &i) in sup.iter().enumerate() {
                full[i] = x[k].clone();
            }
            g.contains(&full, &kernel) && in_relative_interior(&rec.face, &rec.subcurve, x)
        })
        .collect()
}

/// `Σ N(δ)·h¹(δ)` over all contributing faces of all subcurves.
pub fn irregularity(a: &Assembly, g: &CharacterGroup) -> BigInt {
    a.faces
        .par_iter()
        .filter(|f| f.cohomology.h1 > 0)
        .map(|f| BigInt::from(interior_points(f, g).len()) * f.cohomology.h1)
        .sum()
}

/// The same sum organised by characters: each character of the group, lifted
/// to `[0, 1)ʳ`, collects `h¹` of the faces of its own subcurve whose relative
/// interior contains it. Enumerates the group.
pub fn irregularity_by_characters(a: &Assembly, g: &CharacterGroup) -> BigInt {
    assert!(g.order() <= BigInt::from(ENUMERATION_LIMIT));
    let mut by_support: BTreeMap<&[usize], Vec<&FaceRecord>> = BTreeMap::new();
    for f in a.faces.iter().filter(|f| f.cohomology.h1 > 0) {
        by_support.entry(f.subcurve.support.as_slice()).or_default().push(f);
    }
    g.elements()
        .par_iter()
        .map(|k| {
            let w = g.character(k);
            let sup = w.support();
            let Some(fs) = by_support.get(sup.as_slice()) else { return BigInt::zero() };
            let x: Vec<Rational> = sup.iter().map(|&i| w.0[i].clone()).collect();
            fs.iter()
                .filter(|f| {
                    (0..f.face.a.nrows()).all(|s| {
                        let v: Rational =
                            f.face.a.row(s).iter().zip(&x).map(|(c, y)| Rational::from_integer(c.clone()) * y).sum();
                        v == f.face.b[s]
                    }) && in_relative_interior(&f.face, &f.subcurve, &x)
                })
                .map(|f| BigInt::from(f.cohomology.h1))
                .sum::<BigInt>()
        })
        .sum()
}

fn group_by_support(cs: &[TorusComponent]) -> BTreeMap<Vec<usize>, Vec<&TorusComponent>> {
    let mut m: BTreeMap<Vec<usize>, Vec<&TorusComponent>> = BTreeMap::new();
    for c in cs {
        m.entry(c.support.clone()).or_default().push(c);
    }
    m
}

/// b₁ of the branched cover: `Σ_{ω ≠ 1} depth(ω)`, where ω is tested only
/// against components of the subcurve on which it is nontrivial. Counted per
/// support with the Smith form, never by enumerating characters.
pub fn betti_branched(a: &Assembly, g: &CharacterGroup) -> BigInt {
    group_by_support(&a.components)
        .into_par_iter()
        .map(|(x, cs)| depth_sum_on_support(g, &cs, &x))
        .sum()
}

/// The same number by enumerating the group.
pub fn betti_branched_by_enumeration(a: &Assembly, g: &CharacterGroup) -> BigInt {
    assert!(g.order() <= BigInt::from(ENUMERATION_LIMIT));
    let groups = group_by_support(&a.components);
    g.elements()
        .par_iter()
        .map(|k| {
            let w = g.character(k);
            match groups.get(&w.support()) {
                Some(cs) => cs.iter().filter(|c| c.contains(&w)).map(|c| c.depth).max().unwrap_or(0),
                None => 0,
            }
        })
        .map(BigInt::from)
        .sum()
}

/// b₁ of the unbranched cover of the complement: `r + Σ_{ω ≠ 1} depth(ω)`
/// against the whole component list.
pub fn betti_unbranched(a: &Assembly, g: &CharacterGroup) -> BigInt {
    let r = BigInt::from(a.rank);
    if g.order() <= BigInt::from(ENUMERATION_LIMIT) {
        return r + unbranched_sum_by_enumeration(a, g);
    }
    r + unbranched_sum_by_counting(a, g)
}

fn unbranched_sum_by_enumeration(a: &Assembly, g: &CharacterGroup) -> BigInt {
    g.elements()
        .par_iter()
        .map(|k| {
            let w = g.character(k);
            if w.is_trivial() {
                0
            } else {
                depth_at(&a.components, &w).unwrap()
            }
        })
        .map(BigInt::from)
        .sum()
}

/// Grouped by the exact support `X` of ω; only components whose support
/// contains `X` can contain ω.
pub fn unbranched_sum_by_counting(a: &Assembly, g: &CharacterGroup) -> BigInt {
    let r = a.rank;
    assert!(r < 32);
    (1u32..(1 << r))
        .into_par_iter()
        .map(|mask| {
            let x: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
            let cs: Vec<&TorusComponent> =
                a.components.iter().filter(|c| x.iter().all(|i| c.support.contains(i))).collect();
            if cs.is_empty() {
                BigInt::zero()
            } else {
                depth_sum_on_support(g, &cs, &x)
            }
        })
        .sum()
}

/// b₁ of the Milnor fibre of a line arrangement of `d` lines:
/// `r − 1 + Σ_{i=1}^{d−1} depth(ω_d^i, …, ω_d^i)`.
pub fn milnor_b1(a: &Assembly, d: u32) -> u64 {
    milnor_b1_weighted(a, &vec![1; a.rank], d)
}

/// The same for components of degrees `degrees` and total degree `d`: the
/// monodromy acts on the i-th meridian by `exp(2πi·d_i/d)`.
pub fn milnor_b1_weighted(a: &Assembly, degrees: &[u32], d: u32) -> u64 {
    let r = a.rank as u64;
    let den = vec![d as i64; a.rank];
    let s: u64 = (1..d as i64)
        .map(|i| {
            let num: Vec<i64> = degrees.iter().map(|&di| i * di as i64).collect();
            let w = Character::from_fractions(&num, &den);
            if w.is_trivial() {
                0
            } else {
                depth_at(&a.components, &w).unwrap() as u64
            }
        })
        .sum();
    r - 1 + s
}

/// Number of group elements whose character is nontrivial exactly on `x`.
pub fn characters_with_support(g: &CharacterGroup, x: &[usize]) -> BigInt {
    g.count_with_support(&IntMatrix::zeros(0, g.rank()), &[], x)
}

pub fn to_u64(n: &BigInt) -> u64 {
    n.to_u64().expect("count fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvariety::{assemble, AssembleOptions};
    use crate::fixtures;

    fn direct(n: u64, r: usize) -> CharacterGroup {
        CharacterGroup::direct(&vec![n; r])
    }

    #[test]
    fn triangle_irregularity() {
        let a = assemble(&fixtures::triangle(), AssembleOptions::default()).unwrap();
        for n in 2..=7u64 {
            let q = irregularity(&a, &direct(n, 3));
            assert_eq!(q, BigInt::from((n - 1) * (n - 2) / 2));
            assert_eq!(betti_branched(&a, &direct(n, 3)), q.clone() * 2);
            assert_eq!(irregularity_by_characters(&a, &direct(n, 3)), q);
        }
    }

    #[test]
    fn four_lines() {
        let a = assemble(&fixtures::four_lines(), AssembleOptions::default()).unwrap();
        for n in 2..=5u64 {
            let g = direct(n, 4);
            let q = (n - 1) * (n * n - n - 1);
            assert_eq!(irregularity(&a, &g), BigInt::from(q));
            assert_eq!(betti_branched(&a, &g), BigInt::from(2 * q));
            assert_eq!(betti_branched_by_enumeration(&a, &g), BigInt::from(2 * q));
        }
        assert_eq!(milnor_b1(&a, 4), 9);
    }

    #[test]
    fn ceva_covers() {
        let a = assemble(&fixtures::ceva(), AssembleOptions::default()).unwrap();
        let g = CharacterGroup::kummer(6, 5);
        assert_eq!(irregularity(&a, &g), BigInt::from(30));
        assert_eq!(betti_branched(&a, &g), BigInt::from(60));
        assert_eq!(milnor_b1(&a, 6), 7);
        let g2 = direct(2, 6);
        assert_eq!(unbranched_sum_by_counting(&a, &g2), unbranched_sum_by_enumeration(&a, &g2));
    }

    #[test]
    fn trivial_group() {
        let a = assemble(&fixtures::ceva(), AssembleOptions::default()).unwrap();
        assert_eq!(betti_unbranched(&a, &direct(1, 6)), BigInt::from(6));
    }

    #[test]
    fn triangle_unbranched() {
        let a = assemble(&fixtures::triangle(), AssembleOptions::default()).unwrap();
        let g = direct(2, 3);
        // Nontrivial characters of μ₂³ on t₁t₂t₃ = 1: (−1,−1,1) and permutations.
        assert_eq!(betti_unbranched(&a, &g), BigInt::from(6));
        assert_eq!(unbranched_sum_by_counting(&a, &g), BigInt::from(3));
    }

    #[test]
    fn kummer_group() {
        let g = CharacterGroup::kummer(4, 3);
        assert_eq!(g.order(), BigInt::from(27));
        assert_eq!(g.coordinate_orders(), vec![BigInt::from(3); 4]);
        let k = g.kernel_generators();
        let ok = |v: &[i64]| g.contains(&v.iter().map(|&x| Rational::new(x.into(), 3.into())).collect::<Vec<_>>(), &k);
        assert!(ok(&[1, 1, 1, 0]));
        assert!(!ok(&[1, 1, 0, 0]));
        assert_eq!(characters_with_support(&g, &[0, 1, 2, 3]), BigInt::from(6));
    }
}
