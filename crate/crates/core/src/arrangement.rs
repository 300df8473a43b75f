//! Curves as input: line arrangements over a number field, or curves given by
//! component degrees plus a declared list of singular points.
//!
//! The line at infinity is `z = 0`; every vertex must lie in the affine chart.

use std::collections::HashMap;
use std::sync::Arc;

use crate::exactmath::{FieldElement, NumberField};
use crate::quasiadjunction::LocalFaceDescriptor;
use crate::{Error, Result};

/// The line `a·x + b·y + c·z = 0`, scaled so the first nonzero coefficient is 1.
/// `z = 0` itself is representable (fixtures start in other coordinates) but
/// rejected by [`validate_input`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine {
    coeffs: [FieldElement; 3],
}

impl ProjLine {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        if !(a.same_field(&b) && b.same_field(&c)) {
            return Err(Error::FieldMismatch);
        }
        let coeffs = [a, b, c];
        let Some(lead) = coeffs.iter().find(|x| !x.is_zero()) else {
            return Err(Error::schema("line", "zero coefficient triple"));
        };
        let inv = lead.try_inv()?;
        Ok(ProjLine { coeffs: coeffs.map(|x| &x * &inv) })
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    /// Affine intersection point, or `None` when the lines meet on `z = 0`.
    fn meet(&self, o: &ProjLine) -> Option<(FieldElement, FieldElement)> {
        let [a1, b1, c1] = &self.coeffs;
        let [a2, b2, c2] = &o.coeffs;
        let x = &(b1 * c2) - &(c1 * b2);
        let y = &(c1 * a2) - &(a1 * c2);
        let z = &(a1 * b2) - &(b1 * a2);
        if z.is_zero() {
            return None;
        }
        let zi = z.try_inv().expect("nonzero");
        Some((&x * &zi, &y * &zi))
    }

    pub fn contains(&self, p: &(FieldElement, FieldElement)) -> bool {
        let [a, b, c] = &self.coeffs;
        (&(&(a * &p.0) + &(b * &p.1)) + c).is_zero()
    }
}

/// Local analytic type of a singular point.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalType {
    /// `m` smooth pairwise transversal branches.
    Ordinary(usize),
    /// Simple cusp: one branch.
    Cusp,
    /// Two smooth branches with contact of order 2.
    Tacnode,
    /// User-supplied local faces, indexed by branch.
    Custom { branches: usize, faces: Vec<LocalFaceDescriptor> },
}

impl LocalType {
    pub fn branch_count(&self) -> usize {
        match self {
            LocalType::Ordinary(m) => *m,
            LocalType::Cusp => 1,
            LocalType::Tacnode => 2,
            LocalType::Custom { branches, .. } => *branches,
        }
    }

    pub fn name(&self) -> String {
        match self {
            LocalType::Ordinary(m) => format!("ordinary({m})"),
            LocalType::Cusp => "cusp".into(),
            LocalType::Tacnode => "tacnode".into(),
            LocalType::Custom { .. } => "custom".into(),
        }
    }
}

/// A declared singular point: affine coordinates, local type, and the
/// component carrying each local branch.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularPointSpec {
    pub coords: (FieldElement, FieldElement),
    pub kind: LocalType,
    pub branches: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Lines,
    Components,
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub field: Arc<NumberField>,
    pub mode: Mode,
    pub degrees: Vec<u32>,
    pub lines: Vec<ProjLine>,
    pub singular_points: Vec<SingularPointSpec>,
}

impl Curve {
    pub fn from_lines(field: Arc<NumberField>, lines: Vec<ProjLine>) -> Self {
        Curve { field, mode: Mode::Lines, degrees: vec![1; lines.len()], lines, singular_points: vec![] }
    }

    pub fn from_components(field: Arc<NumberField>, degrees: Vec<u32>, singular_points: Vec<SingularPointSpec>) -> Self {
        Curve { field, mode: Mode::Components, degrees, lines: vec![], singular_points }
    }

    /// Number of irreducible components r.
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees.iter().sum()
    }
}

/// A point of the curve where at least two branches meet (or a unibranch
/// singularity such as a cusp).
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub point: (FieldElement, FieldElement),
    pub kind: LocalType,
    /// Component of each local branch.
    pub branches: Vec<usize>,
}

impl Vertex {
    pub fn multiplicity(&self) -> usize {
        self.branches.len()
    }

    /// Distinct components through the vertex, sorted.
    pub fn components(&self) -> Vec<usize> {
        let mut c = self.branches.clone();
        c.sort_unstable();
        c.dedup();
        c
    }
}

pub fn validate_input(curve: &Curve) -> Result<()> {
    match curve.mode {
        Mode::Lines => {
            if curve.lines.is_empty() {
                return Err(Error::schema("lines", "at least one line is required"));
            }
            for (i, l) in curve.lines.iter().enumerate() {
                if l.coeffs.iter().any(|c| !Arc::ptr_eq(c.field(), &curve.field) && c.field() != &curve.field) {
                    return Err(Error::FieldMismatch);
                }
                if l.coeffs[0].is_zero() && l.coeffs[1].is_zero() {
                    return Err(Error::NotTransversal(format!("line {i} is the line at infinity")));
                }
            }
            for i in 0..curve.lines.len() {
                for j in i + 1..curve.lines.len() {
                    if curve.lines[i] == curve.lines[j] {
                        return Err(Error::NonReduced(format!("lines {i} and {j} coincide")));
                    }
                    if curve.lines[i].meet(&curve.lines[j]).is_none() {
                        return Err(Error::NotTransversal(format!("lines {i} and {j} meet on z = 0")));
                    }
                }
            }
            Ok(())
        }
        Mode::Components => {
            let r = curve.degrees.len();
            if r == 0 {
                return Err(Error::schema("components", "at least one component is required"));
            }
            if let Some(i) = curve.degrees.iter().position(|&d| d == 0) {
                return Err(Error::schema(format!("components[{i}].degree"), "degree must be positive"));
            }
            for (k, p) in curve.singular_points.iter().enumerate() {
                let path = format!("singular_points[{k}]");
                if p.branches.len() != p.kind.branch_count() {
                    return Err(Error::schema(
                        format!("{path}.branches"),
                        format!("{} expects {} branches, got {}", p.kind.name(), p.kind.branch_count(), p.branches.len()),
                    ));
                }
                if let Some(&b) = p.branches.iter().find(|&&b| b >= r) {
                    return Err(Error::schema(format!("{path}.branches"), format!("component index {b} out of range")));
                }
                if let LocalType::Ordinary(m) = p.kind {
                    if m < 2 {
                        return Err(Error::schema(format!("{path}.type"), "ordinary points need m ≥ 2"));
                    }
                }
                if let LocalType::Custom { branches, faces } = &p.kind {
                    for (fi, f) in faces.iter().enumerate() {
                        f.validate(*branches).map_err(|msg| Error::schema(format!("{path}.type.faces[{fi}]"), msg))?;
                    }
                }
            }
            for i in 0..curve.singular_points.len() {
                for j in i + 1..curve.singular_points.len() {
                    if curve.singular_points[i].coords == curve.singular_points[j].coords {
                        return Err(Error::schema(format!("singular_points[{j}]"), format!("duplicates singular point {i}")));
                    }
                }
            }
            Ok(())
        }
    }
}

/// All vertices: pairwise line intersections grouped by point (lines mode)
/// or the declared singular points (components mode). Sorted by incident
/// component lists.
pub fn build_incidence(curve: &Curve) -> Result<Vec<Vertex>> {
    validate_input(curve)?;
    let mut out = match curve.mode {
        Mode::Lines => {
            let mut groups: HashMap<(FieldElement, FieldElement), Vec<usize>> = HashMap::new();
            for i in 0..curve.lines.len() {
                for j in i + 1..curve.lines.len() {
                    let p = curve.lines[i].meet(&curve.lines[j]).expect("validated");
                    let e = groups.entry(p).or_default();
                    for k in [i, j] {
                        if !e.contains(&k) {
                            e.push(k);
                        }
                    }
                }
            }
            groups
                .into_iter()
                .map(|(point, mut ls)| {
                    ls.sort_unstable();
                    Vertex { point, kind: LocalType::Ordinary(ls.len()), branches: ls }
                })
                .collect::<Vec<_>>()
        }
        Mode::Components => curve
            .singular_points
            .iter()
            .map(|p| Vertex { point: p.coords.clone(), kind: p.kind.clone(), branches: p.branches.clone() })
            .collect(),
    };
    out.sort_by(|a, b| a.components().cmp(&b.components()).then_with(|| a.branches.cmp(&b.branches)));
    Ok(out)
}

/// A vertex as seen from a subcurve.
#[derive(Clone, Debug, PartialEq)]
pub struct SubVertex {
    /// Index into the parent's vertex list.
    pub parent: usize,
    pub kind: LocalType,
    /// Components (global indices) of the surviving branches.
    pub branches: Vec<usize>,
}

impl SubVertex {
    pub fn multiplicity(&self) -> usize {
        self.branches.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subcurve {
    /// Sorted global component indices.
    pub support: Vec<usize>,
    pub degree: u32,
    /// Vertices carrying faces of quasiadjunction in this subcurve.
    pub vertices: Vec<SubVertex>,
}

impl Subcurve {
    pub fn mask(&self) -> u64 {
        self.support.iter().fold(0, |m, &i| m | 1 << i)
    }
}

/// Restricts a vertex to the components in `mask`; `None` when nothing with
/// faces of quasiadjunction survives. Ordinary points keep their surviving
/// branches and need at least three; other types survive only whole.
pub fn restrict_vertex(v: &Vertex, parent: usize, mask: u64) -> Option<SubVertex> {
    let kept: Vec<usize> = v.branches.iter().copied().filter(|&c| mask >> c & 1 == 1).collect();
    match &v.kind {
        LocalType::Ordinary(_) => {
            (kept.len() >= 3).then_some(SubVertex { parent, kind: LocalType::Ordinary(kept.len()), branches: kept })
        }
        kind => (kept.len() == v.branches.len()).then(|| SubVertex { parent, kind: kind.clone(), branches: kept }),
    }
}

pub fn subcurve(curve: &Curve, vertices: &[Vertex], mask: u64) -> Subcurve {
    let support: Vec<usize> = (0..curve.rank()).filter(|&i| mask >> i & 1 == 1).collect();
    let degree = support.iter().map(|&i| curve.degrees[i]).sum();
    let vertices = vertices.iter().enumerate().filter_map(|(k, v)| restrict_vertex(v, k, mask)).collect();
    Subcurve { support, degree, vertices }
}

/// Every nonempty subset of components, by size then lexicographically,
/// filtered by `keep`.
pub fn enumerate_subcurves(curve: &Curve, vertices: &[Vertex], keep: impl Fn(&Subcurve) -> bool) -> Vec<Subcurve> {
    let r = curve.rank();
    assert!(r < 64, "at most 63 components are supported");
    let mut masks: Vec<u64> = (1..(1u64 << r)).collect();
    masks.sort_by_key(|&m| {
        let bits: Vec<usize> = (0..r).filter(|&i| m >> i & 1 == 1).collect();
        (bits.len(), bits)
    });
    masks.into_iter().map(|m| subcurve(curve, vertices, m)).filter(|s| keep(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parallel_lines_rejected() {
        let q = NumberField::rationals();
        let e = |n| FieldElement::from_int(&q, n);
        let l1 = ProjLine::new(e(1), e(0), e(0)).unwrap();
        let l2 = ProjLine::new(e(1), e(0), e(-1)).unwrap();
        let c = Curve::from_lines(q.clone(), vec![l1.clone(), l2]);
        assert!(matches!(validate_input(&c), Err(Error::NotTransversal(_))));
        let c = Curve::from_lines(q.clone(), vec![l1.clone(), ProjLine::new(e(2), e(0), e(0)).unwrap()]);
        assert!(matches!(validate_input(&c), Err(Error::NonReduced(_))));
        assert!(ProjLine::new(e(0), e(0), e(0)).is_err());
    }

    #[test]
    fn tacnode_with_three_branches_rejected() {
        let q = NumberField::rationals();
        let p = SingularPointSpec {
            coords: (FieldElement::from_int(&q, 0), FieldElement::from_int(&q, 0)),
            kind: LocalType::Tacnode,
            branches: vec![0, 1, 1],
        };
        let c = Curve::from_components(q, vec![2, 2], vec![p]);
        assert!(matches!(validate_input(&c), Err(Error::Schema { .. })));
    }

    fn census(vs: &[Vertex]) -> Vec<(usize, usize)> {
        let mut h: HashMap<usize, usize> = HashMap::new();
        for v in vs {
            *h.entry(v.multiplicity()).or_default() += 1;
        }
        let mut out: Vec<_> = h.into_iter().collect();
        out.sort();
        out
    }

    #[test]
    fn ceva_incidence() {
        let c = fixtures::ceva();
        assert!(validate_input(&c).is_ok());
        assert_eq!(census(&build_incidence(&c).unwrap()), vec![(2, 3), (3, 4)]);
    }

    #[test]
    fn dual_hesse_incidence() {
        assert_eq!(census(&build_incidence(&fixtures::dual_hesse()).unwrap()), vec![(3, 12)]);
    }

    #[test]
    fn hesse_incidence() {
        assert_eq!(census(&build_incidence(&fixtures::hesse()).unwrap()), vec![(2, 12), (4, 9)]);
    }

    #[test]
    fn ceva_line_triple_has_one_triple_point() {
        let c = fixtures::ceva();
        let vs = build_incidence(&c).unwrap();
        // x1 = p1p3, x2 = p1p2, x4 = p1p4 all pass through p1.
        let s = subcurve(&c, &vs, 0b1011);
        assert_eq!(s.vertices.len(), 1);
        assert_eq!(s.vertices[0].multiplicity(), 3);
    }

    #[test]
    fn dual_hesse_six_lines_never_have_four_triple_points() {
        let c = fixtures::dual_hesse();
        let vs = build_incidence(&c).unwrap();
        for s in enumerate_subcurves(&c, &vs, |s| s.support.len() == 6) {
            assert!(s.vertices.len() < 4, "{:?}", s.support);
        }
    }

    #[test]
    fn full_subset_is_the_curve() {
        let c = fixtures::ceva();
        let vs = build_incidence(&c).unwrap();
        let all = enumerate_subcurves(&c, &vs, |_| true);
        assert_eq!(all.len(), 63);
        let last = all.last().unwrap();
        assert_eq!(last.support, (0..6).collect::<Vec<_>>());
        assert_eq!(last.vertices.len(), 4);
    }
}
