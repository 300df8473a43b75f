//! The JSON input document: a number field, a curve (lines or components
//! with declared singular points), optional covers and a default quotient.
//!
//! All rationals are strings `"p/q"`; an element of Q(α) is the array of its
//! coefficients on 1, α, α², … (shorter arrays are padded with zeros).

use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use qav_core::arrangement::{validate_input, Curve, LocalType, Mode, ProjLine, SingularPointSpec};
use qav_core::exactmath::{fmt_rational, parse_rational, FieldElement, IntMatrix, NumberField, Rational};
use qav_core::quasiadjunction::{LocalEquation, LocalFaceDescriptor};
use qav_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub field: RawField,
    pub mode: RawMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<[Vec<String>; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<RawComponent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_points: Option<Vec<RawPoint>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub covers: Vec<RawCover>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<RawQuotient>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawField {
    pub generator: String,
    /// Integer coefficients, ascending degree.
    pub minpoly: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RawMode {
    Lines,
    Components,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponent {
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPoint {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub kind: RawKind,
    pub branches: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RawKind {
    Ordinary { multiplicity: usize },
    Cusp,
    Tacnode,
    Custom { faces: Vec<RawLocalFace> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLocalFace {
    /// Each equation is `[c_1, …, c_m, rhs]` over the branches.
    pub equations: Vec<Vec<String>>,
    pub exponent: u32,
}

/// A cover: `γ_i ↦ γ_i mod orders_i`, or through `quotient` (one row per
/// entry of `orders`) when given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCover {
    pub orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuotient {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverSpec {
    pub orders: Vec<u64>,
    pub quotient: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub curve: Curve,
    pub covers: Vec<CoverSpec>,
    pub quotient: Option<RawQuotient>,
}

impl PartialEq for InputDocument {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = (&self.curve, &o.curve);
        a.field == b.field
            && a.mode == b.mode
            && a.degrees == b.degrees
            && a.lines == b.lines
            && a.singular_points == b.singular_points
            && self.covers == o.covers
            && self.quotient == o.quotient
    }
}

pub fn parse_input(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::schema("$", format!("{}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<InputDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let p = e.path().to_string();
        Error::schema(if p == "." { "$".into() } else { p }, e.inner().to_string())
    })?;
    from_raw(&raw)
}

fn rational(s: &str, path: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::schema(path, format!("malformed rational {s:?}")))
}

fn element(f: &Arc<NumberField>, c: &[String], path: &str) -> Result<FieldElement> {
    if c.len() > f.degree() {
        return Err(Error::schema(path, format!("{} coefficients for a field of degree {}", c.len(), f.degree())));
    }
    let poly = c.iter().enumerate().map(|(i, s)| rational(s, &format!("{path}[{i}]"))).collect::<Result<Vec<_>>>()?;
    Ok(FieldElement::from_poly(f, poly))
}

fn with_path(e: Error, path: &str) -> Error {
    match e {
        Error::Schema { path: p, msg } => Error::schema(format!("{path}.{p}"), msg),
        Error::FieldMismatch | Error::ZeroInverse | Error::BadField(_) => Error::schema(path, e.to_string()),
        e => e,
    }
}

pub fn from_raw(raw: &RawDocument) -> Result<InputDocument> {
    let minpoly = raw
        .field
        .minpoly
        .iter()
        .enumerate()
        .map(|(i, s)| s.trim().parse::<BigInt>().map_err(|_| Error::schema(format!("field.minpoly[{i}]"), format!("malformed integer {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let field = NumberField::new(&raw.field.generator, minpoly).map_err(|e| with_path(e, "field"))?;

    let curve = match raw.mode {
        RawMode::Lines => {
            if raw.components.is_some() || raw.singular_points.is_some() {
                return Err(Error::schema("mode", "mode \"lines\" takes no components or singular_points"));
            }
            let Some(lines) = &raw.lines else {
                return Err(Error::schema("lines", "required in mode \"lines\""));
            };
            let mut out = vec![];
            for (i, l) in lines.iter().enumerate() {
                let path = format!("lines[{i}]");
                let [a, b, c] = [0, 1, 2].map(|k| element(&field, &l[k], &format!("{path}[{k}]")));
                let line = ProjLine::new(a?, b?, c?).map_err(|_| Error::schema(&path, "degenerate line (all coefficients zero)"))?;
                out.push(line);
            }
            Curve::from_lines(field.clone(), out)
        }
        RawMode::Components => {
            if raw.lines.is_some() {
                return Err(Error::schema("mode", "mode \"components\" takes no lines"));
            }
            let Some(comps) = &raw.components else {
                return Err(Error::schema("components", "required in mode \"components\""));
            };
            let mut pts = vec![];
            for (k, p) in raw.singular_points.iter().flatten().enumerate() {
                let path = format!("singular_points[{k}]");
                let coords = (element(&field, &p.x, &format!("{path}.x"))?, element(&field, &p.y, &format!("{path}.y"))?);
                let kind = match &p.kind {
                    RawKind::Ordinary { multiplicity } => LocalType::Ordinary(*multiplicity),
                    RawKind::Cusp => LocalType::Cusp,
                    RawKind::Tacnode => LocalType::Tacnode,
                    RawKind::Custom { faces } => {
                        let m = p.branches.len();
                        let mut descs = vec![];
                        for (j, f) in faces.iter().enumerate() {
                            let fp = format!("{path}.kind.faces[{j}]");
                            let mut equations = vec![];
                            for (e, eq) in f.equations.iter().enumerate() {
                                let ep = format!("{fp}.equations[{e}]");
                                if eq.len() != m + 1 {
                                    return Err(Error::schema(&ep, format!("expected {} entries (one per branch, then rhs)", m + 1)));
                                }
                                let v = eq.iter().enumerate().map(|(i, s)| rational(s, &format!("{ep}[{i}]"))).collect::<Result<Vec<_>>>()?;
                                equations.push(LocalEquation { coeffs: v[..m].to_vec(), rhs: v[m].clone() });
                            }
                            let d = LocalFaceDescriptor { equations, exponent: f.exponent };
                            d.validate(m).map_err(|msg| Error::schema(&fp, msg))?;
                            descs.push(d);
                        }
                        LocalType::Custom { branches: m, faces: descs }
                    }
                };
                pts.push(SingularPointSpec { coords, kind, branches: p.branches.clone() });
            }
            Curve::from_components(field.clone(), comps.iter().map(|c| c.degree).collect(), pts)
        }
    };
    validate_input(&curve)?;

    let r = curve.rank();
    let mut covers = vec![];
    for (i, c) in raw.covers.iter().enumerate() {
        let spec = CoverSpec { orders: c.orders.clone(), quotient: c.quotient.clone() };
        check_cover(&spec, r).map_err(|e| with_path(e, &format!("covers[{i}]")))?;
        covers.push(spec);
    }
    if let Some(q) = &raw.quotient {
        check_matrix(&q.matrix, r).map_err(|e| with_path(e, "quotient"))?;
    }
    Ok(InputDocument { curve, covers, quotient: raw.quotient.clone() })
}

fn check_matrix(m: &[Vec<i64>], r: usize) -> Result<()> {
    if let Some(i) = m.iter().position(|row| row.len() != r) {
        return Err(Error::schema(format!("matrix[{i}]"), format!("expected {r} entries, one per component")));
    }
    Ok(())
}

pub fn check_cover(c: &CoverSpec, r: usize) -> Result<()> {
    if let Some(i) = c.orders.iter().position(|&n| n == 0) {
        return Err(Error::schema(format!("orders[{i}]"), "orders must be positive"));
    }
    match &c.quotient {
        None if c.orders.len() != r => Err(Error::schema("orders", format!("expected {r} orders, got {}", c.orders.len()))),
        None => Ok(()),
        Some(m) => {
            check_matrix(m, r)?;
            if m.len() != c.orders.len() {
                return Err(Error::schema("quotient", format!("{} rows for {} orders", m.len(), c.orders.len())));
            }
            Ok(())
        }
    }
}

pub fn quotient_matrix(m: &[Vec<i64>], r: usize) -> IntMatrix {
    IntMatrix::from_i64(m, r)
}

fn element_to_raw(e: &FieldElement) -> Vec<String> {
    let c = e.coeffs();
    let len = c.iter().rposition(|x| !num_traits::Zero::is_zero(x)).map_or(1, |i| i + 1);
    c[..len].iter().map(fmt_rational).collect()
}

/// The canonical serialization of a document (lines normalized, rationals
/// reduced).
pub fn to_raw(doc: &InputDocument) -> RawDocument {
    let c = &doc.curve;
    let field = RawField {
        generator: c.field.generator().to_string(),
        minpoly: c.field.minpoly().iter().map(|x| x.to_string()).collect(),
    };
    let (mode, lines, components, singular_points) = match c.mode {
        Mode::Lines => (
            RawMode::Lines,
            Some(c.lines.iter().map(|l| l.coeffs().clone().map(|e| element_to_raw(&e))).collect()),
            None,
            None,
        ),
        Mode::Components => (
            RawMode::Components,
            None,
            Some(c.degrees.iter().map(|&degree| RawComponent { degree }).collect()),
            Some(
                c.singular_points
                    .iter()
                    .map(|p| RawPoint {
                        x: element_to_raw(&p.coords.0),
                        y: element_to_raw(&p.coords.1),
                        kind: match &p.kind {
                            LocalType::Ordinary(m) => RawKind::Ordinary { multiplicity: *m },
                            LocalType::Cusp => RawKind::Cusp,
                            LocalType::Tacnode => RawKind::Tacnode,
                            LocalType::Custom { faces, .. } => RawKind::Custom {
                                faces: faces
                                    .iter()
                                    .map(|f| RawLocalFace {
                                        equations: f
                                            .equations
                                            .iter()
                                            .map(|e| e.coeffs.iter().chain([&e.rhs]).map(fmt_rational).collect())
                                            .collect(),
                                        exponent: f.exponent,
                                    })
                                    .collect(),
                            },
                        },
                        branches: p.branches.clone(),
                    })
                    .collect(),
            ),
        ),
    };
    RawDocument {
        field,
        mode,
        lines,
        components,
        singular_points,
        covers: doc.covers.iter().map(|c| RawCover { orders: c.orders.clone(), quotient: c.quotient.clone() }).collect(),
        quotient: doc.quotient.clone(),
    }
}

pub fn to_json(doc: &InputDocument) -> String {
    serde_json::to_string_pretty(&to_raw(doc)).expect("serializable")
}

/// The input document for a curve with no covers.
pub fn document_for(curve: Curve) -> InputDocument {
    InputDocument { curve, covers: vec![], quotient: None }
}
