//! Identity-containing components from the Aomoto complex.
//!
//! For residues `s` of `ω = Σ s_i·dlog(l_i)/2πi`, a one-form `Σ A_i η_i`
//! wedges to zero with ω iff, at every vertex P and every line j through P,
//! `A_j·(Σ_{i∋P} s_i) − (Σ_{i∋P} A_i)·s_j = 0`. The resonance components are
//! the maximal linear spaces on which this system has solutions beyond the
//! multiples of `s`; their exponentials are the positive-dimensional
//! components of the characteristic varieties through the identity. Nothing
//! here looks at faces or sheaves, which makes it an independent check on
//! [`crate::charvariety`].

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrangement::{build_incidence, Curve, Mode};
use crate::charvariety::TorusComponent;
use crate::exactmath::{Matrix, Rational, Rref};
use crate::{Error, Result};

/// Lines through each vertex (multiplicity ≥ 2) of a line arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub rank: usize,
    pub vertices: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn from_curve(curve: &Curve) -> Result<Self> {
        if curve.mode != Mode::Lines {
            return Err(Error::Unsupported("resonance is defined for line arrangements".into()));
        }
        let vs = build_incidence(curve)?;
        Ok(Incidence { rank: curve.rank(), vertices: vs.iter().map(|v| v.components()).collect() })
    }

    /// The same incidence after renaming line `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut vertices: Vec<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut w: Vec<usize> = v.iter().map(|&i| perm[i]).collect();
                w.sort_unstable();
                w
            })
            .collect();
        vertices.sort();
        Incidence { rank: self.rank, vertices }
    }
}

/// A linear subspace of residue vectors, by a basis in reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceComponent {
    pub basis: Vec<Vec<Rational>>,
    pub dimension: usize,
    /// `dim H¹` of the Aomoto complex at a generic point.
    pub h1: usize,
    /// Not contained in any coordinate hyperplane.
    pub essential: bool,
}

fn span(vectors: Vec<Vec<Rational>>, n: usize) -> Rref<Rational> {
    Matrix::from_rows(vectors, n, Rational::zero()).rref()
}

fn same_space(a: &Rref<Rational>, b: &Rref<Rational>) -> bool {
    a.pivots == b.pivots && a.rows == b.rows
}

impl ResonanceComponent {
    fn rref(&self) -> Rref<Rational> {
        span(self.basis.clone(), self.basis.first().map_or(0, |v| v.len()))
    }

    pub fn contains(&self, s: &[Rational]) -> bool {
        self.rref().contains(s)
    }
}

/// The system in the unknowns `A`, one row per (vertex, line through it).
pub fn aomoto_matrix(inc: &Incidence, s: &[Rational]) -> Matrix<Rational> {
    let r = inc.rank;
    let mut m = Matrix::zeros(0, r, Rational::zero());
    for p in &inc.vertices {
        let sp: Rational = p.iter().map(|&i| s[i].clone()).sum();
        for &j in p {
            let mut row = vec![Rational::zero(); r];
            for &i in p {
                row[i] -= &s[j];
            }
            row[j] += &sp;
            m.push_row(row);
        }
    }
    m
}

pub fn aomoto_h1(inc: &Incidence, s: &[Rational]) -> Result<usize> {
    if s.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("the zero residue vector has no Aomoto cohomology to measure".into()));
    }
    if s.len() != inc.rank {
        return Err(Error::Invalid(format!("{} residues for {} lines", s.len(), inc.rank)));
    }
    let m = aomoto_matrix(inc, s);
    Ok(inc.rank - m.rank() - 1)
}

const RETRIES: u64 = 64;

/// Per-candidate seed (splitmix64 over the key), so results do not depend on
/// the order in which candidates are visited.
fn subset_seed(seed: u64, key: &[u64]) -> u64 {
    let mix = |mut z: u64| {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    key.iter().fold(mix(seed), |h, &k| mix(h ^ k))
}

/// A point of the span avoiding every linear form that does not vanish
/// identically on it: vertex sums and coordinates.
fn generic_point(basis: &[Vec<Rational>], forms: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
    let n = basis[0].len();
    let eval = |x: &[Rational], f: &[usize]| f.iter().map(|&i| x[i].clone()).sum::<Rational>();
    let live: Vec<&Vec<usize>> = forms.iter().filter(|f| basis.iter().any(|b| !eval(b, f).is_zero())).collect();
    for _ in 0..RETRIES {
        let mut s = vec![Rational::zero(); n];
        for b in basis {
            let c = Rational::from_integer(rng.gen_range(-40i64..=40).into());
            for (x, y) in s.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        if live.iter().all(|f| !eval(&s, f).is_zero()) {
            return Some(s);
        }
    }
    None
}

impl Incidence {
    /// The sub-arrangement on the lines of `mask`, in its own indexing (the
    /// lines of `mask` in increasing order).
    pub fn restrict(&self, mask: u64) -> Incidence {
        let lines: Vec<usize> = (0..self.rank).filter(|&i| mask >> i & 1 == 1).collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().filter_map(|i| lines.iter().position(|l| l == i)).collect::<Vec<usize>>())
            .filter(|v| v.len() >= 2)
            .collect();
        Incidence { rank: lines.len(), vertices }
    }
}

/// Essential candidates of one sub-arrangement: for each nonempty set `T` of
/// its points of multiplicity ≥ 3, a generic point of
/// `W_T = {s : Σ_{i∋P} s_i = 0, P ∈ T}` with every residue nonzero, and the
/// solution space of its system when that is bigger than the line of `s`.
fn essential_candidates(inc: &Incidence, seed: u64, mask: u64) -> Vec<(Vec<Vec<Rational>>, usize)> {
    let r = inc.rank;
    let heavy: Vec<&Vec<usize>> = inc.vertices.iter().filter(|v| v.len() >= 3).collect();
    assert!(heavy.len() < 32, "too many points of multiplicity ≥ 3 for a subset sweep");
    let mut forms: Vec<Vec<usize>> = inc.vertices.clone();
    forms.extend((0..r).map(|i| vec![i]));
    let mut out = vec![];
    for t in 1u64..(1 << heavy.len()) {
        let rows: Vec<Vec<Rational>> = (0..heavy.len())
            .filter(|&k| t >> k & 1 == 1)
            .map(|k| {
                let mut row = vec![Rational::zero(); r];
                for &i in heavy[k] {
                    row[i] = Rational::from_integer(1.into());
                }
                row
            })
            .collect();
        let cond = Matrix::from_rows(rows, r, Rational::zero()).rref();
        // T must be closed: a further heavy point whose sum vanishes on W_T
        // gives the same space, which is then handled by the larger set.
        let closed = (0..heavy.len()).filter(|&k| t >> k & 1 == 0).all(|k| {
            let mut row = vec![Rational::zero(); r];
            for &i in heavy[k] {
                row[i] = Rational::from_integer(1.into());
            }
            !cond.contains(&row)
        });
        if !closed {
            continue;
        }
        let w = cond.nullspace();
        if w.len() < 2 || (0..r).any(|i| w.iter().all(|b| b[i].is_zero())) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(subset_seed(seed, &[mask, t]));
        let Some(s) = generic_point(&w, &forms, &mut rng) else { continue };
        let sol = aomoto_matrix(inc, &s).rref().nullspace();
        if sol.len() >= 2 {
            out.push((sol.clone(), sol.len() - 1));
        }
    }
    out
}

/// Sweeps sub-arrangements (residues vanish off them) and, in each, subsets
/// of its points of multiplicity ≥ 3; each hit is the solution space of the
/// system at a generic point. Returns the maximal spaces, deduplicated, in
/// the coordinates of the whole arrangement.
pub fn resonance_components(inc: &Incidence, seed: u64) -> Vec<ResonanceComponent> {
    let r = inc.rank;
    assert!(r < 64);
    let found: Vec<(Rref<Rational>, usize)> = (1u64..(1 << r))
        .into_par_iter()
        .filter(|m| m.count_ones() >= 3)
        .flat_map_iter(|mask| {
            let lines: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
            essential_candidates(&inc.restrict(mask), seed, mask).into_iter().map(move |(basis, h1)| {
                let full = basis
                    .into_iter()
                    .map(|b| {
                        let mut v = vec![Rational::zero(); r];
                        for (k, &i) in lines.iter().enumerate() {
                            v[i] = b[k].clone();
                        }
                        v
                    })
                    .collect();
                (span(full, r), h1)
            })
        })
        .collect();
    let mut uniq: Vec<(Rref<Rational>, usize)> = vec![];
    for (sp, h1) in found {
        if !uniq.iter().any(|(u, _)| same_space(u, &sp)) {
            uniq.push((sp, h1));
        }
    }
    let contained = |a: &Rref<Rational>, b: &Rref<Rational>| a.rows.iter().all(|v| b.contains(v));
    let mut out: Vec<ResonanceComponent> = uniq
        .iter()
        .enumerate()
        .filter(|(i, (a, _))| !uniq.iter().enumerate().any(|(j, (b, _))| j != *i && contained(a, b)))
        .map(|(_, (a, h1))| ResonanceComponent {
            basis: a.rows.clone(),
            dimension: a.rows.len(),
            h1: *h1,
            essential: (0..r).all(|i| a.rows.iter().any(|v| !v[i].is_zero())),
        })
        .collect();
    out.sort_by(|a, b| (b.dimension, &b.basis).cmp(&(a.dimension, &a.basis)));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm54Entry {
    pub component: usize,
    pub dimension: usize,
    pub depth: u32,
    pub depth_ok: bool,
    /// Index of the resonance component equal to the tangent space.
    pub matched: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm54Report {
    pub entries: Vec<Thm54Entry>,
    pub resonance: Vec<ResonanceComponent>,
    pub unmatched_resonance: Vec<usize>,
    pub pass: bool,
}

/// Tangent space at the identity of a torus component: the kernel of its
/// exponent rows.
pub fn tangent_space(c: &TorusComponent) -> Vec<Vec<Rational>> {
    let rows = (0..c.rows.nrows())
        .map(|i| c.rows.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    Matrix::from_rows(rows, c.rank, Rational::zero()).rref().nullspace()
}

/// Matches the positive-dimensional components through the identity against
/// the resonance components: depth must equal dimension − 1, tangent spaces
/// must coincide, and the matching must be a bijection.
pub fn verify_thm54(curve: &Curve, components: &[TorusComponent], seed: u64) -> Result<Thm54Report> {
    let inc = Incidence::from_curve(curve)?;
    let resonance = resonance_components(&inc, seed);
    let res_rref: Vec<Rref<Rational>> = resonance.iter().map(|c| c.rref()).collect();
    let mut used = vec![0usize; resonance.len()];
    let mut entries = vec![];
    for (k, c) in components.iter().enumerate() {
        if !c.contains_identity() || c.dimension == 0 {
            continue;
        }
        let t = span(tangent_space(c), c.rank);
        let matched = res_rref.iter().position(|r| same_space(r, &t));
        if let Some(m) = matched {
            used[m] += 1;
        }
        entries.push(Thm54Entry {
            component: k,
            dimension: c.dimension,
            depth: c.depth,
            depth_ok: c.depth as usize + 1 == c.dimension,
            matched,
        });
    }
    let unmatched_resonance: Vec<usize> = (0..resonance.len()).filter(|&i| used[i] == 0).collect();
    let pass = entries.iter().all(|e| e.depth_ok && e.matched.is_some())
        && unmatched_resonance.is_empty()
        && used.iter().all(|&u| u <= 1);
    Ok(Thm54Report { entries, resonance, unmatched_resonance, pass })
}
