use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use qav_core::arrangement::{Curve, Mode};
use qav_core::charvariety::{assemble, census, maximal_components, AssembleOptions, Assembly, CharacterGroup, TorusComponent};
use qav_core::covers::{betti_branched, betti_unbranched, irregularity, irregularity_by_characters, milnor_b1_weighted};
use qav_core::exactmath::{fmt_rational, FieldElement};
use qav_core::resonance::{resonance_components, verify_thm54, Incidence, ResonanceComponent};
use qav_core::sheafcoh::{superabundance, FatPointScheme};
use qav_core::{Error, Result};

use crate::input::{check_cover, quotient_matrix, CoverSpec, InputDocument};
use crate::report::*;

/// Covers with at most this many characters also get the character-by-character
/// irregularity.
const CROSS_CHECK_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Analyze,
    Faces,
    /// An explicit cover, or `None` for the covers listed in the document.
    Covers(Option<CoverSpec>),
    Milnor,
    Resonance,
    /// Twist and (vertex, order) pairs; `None` takes every vertex once.
    Superabundance { degree: i64, scheme: Option<Vec<(usize, u32)>> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Faces => "faces",
            Command::Covers(_) => "covers",
            Command::Milnor => "milnor",
            Command::Resonance => "resonance",
            Command::Superabundance { .. } => "superabundance",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub fast: bool,
    pub seed: u64,
}

fn element(e: &FieldElement) -> Vec<String> {
    let c = e.coeffs();
    let len = c.iter().rposition(|x| !num_traits::Zero::is_zero(x)).map_or(1, |i| i + 1);
    c[..len].iter().map(fmt_rational).collect()
}

fn curve_summary(c: &Curve) -> CurveSummary {
    CurveSummary {
        generator: c.field.generator().to_string(),
        minpoly: c.field.minpoly().iter().map(|x| x.to_string()).collect(),
        mode: match c.mode {
            Mode::Lines => "lines".into(),
            Mode::Components => "components".into(),
        },
        rank: c.rank(),
        degree: c.total_degree(),
        degrees: c.degrees.clone(),
    }
}

fn vertex_census(a: &Assembly) -> VertexCensus {
    let mut by_type: BTreeMap<String, usize> = BTreeMap::new();
    for v in &a.vertices {
        *by_type.entry(v.kind.name()).or_default() += 1;
    }
    VertexCensus {
        total: a.vertices.len(),
        by_type: by_type.into_iter().collect(),
        list: a
            .vertices
            .iter()
            .enumerate()
            .map(|(index, v)| VertexEntry {
                index,
                x: element(&v.point.0),
                y: element(&v.point.1),
                kind: v.kind.name(),
                branches: v.branches.clone(),
            })
            .collect(),
    }
}

fn face_entries(a: &Assembly) -> Vec<FaceEntry> {
    let mut out: Vec<FaceEntry> = a
        .faces
        .iter()
        .map(|r| FaceEntry {
            subcurve: r.subcurve.support.clone(),
            choices: r.face.choices.clone(),
            exponents: r.face.exponents.clone(),
            level: r.face.level.expect("contributing faces have a level"),
            order: big(&r.face.order),
            dimension: r.face.dimension(),
            twist: r.cohomology.n,
            h0: r.cohomology.h0,
            chi: r.cohomology.chi,
            h1: r.cohomology.h1,
            witness: r.face.witness.iter().map(fmt_rational).collect(),
        })
        .collect();
    out.sort_by(|x, y| (&x.subcurve, &x.choices, x.level).cmp(&(&y.subcurve, &y.choices, y.level)));
    out
}

fn same(a: &TorusComponent, b: &TorusComponent) -> bool {
    a.support == b.support && a.rows == b.rows && a.beta == b.beta
}

fn sorted_components(a: &Assembly) -> Vec<TorusComponent> {
    let mut cs = a.components.clone();
    cs.sort_by(|x, y| {
        (std::cmp::Reverse(x.dimension), &x.support, x.rows.to_rows(), &x.beta).cmp(&(
            std::cmp::Reverse(y.dimension),
            &y.support,
            y.rows.to_rows(),
            &y.beta,
        ))
    });
    cs
}

fn component_entry(c: &TorusComponent, maximal: bool) -> ComponentEntry {
    ComponentEntry {
        support: c.support.clone(),
        rows: c.rows.to_rows().iter().map(|r| r.iter().map(big).collect()).collect(),
        beta: c.beta.iter().map(fmt_rational).collect(),
        dimension: c.dimension,
        depth: c.depth,
        essential: c.essential,
        maximal,
        through_identity: c.contains_identity(),
        face_order: big(&c.face_order),
        translation_order: big(&c.translation_order()),
        provenance: ProvenanceEntry {
            subcurve: c.provenance.subcurve.clone(),
            face: c.provenance.face.clone(),
            conjugate: c.provenance.conjugate,
        },
    }
}

fn census_entry(cs: &[TorusComponent], maximal: &[TorusComponent]) -> Census {
    Census {
        components: census(cs),
        essential: cs.iter().filter(|c| c.essential).count(),
        maximal: census(maximal),
    }
}

fn group_for(spec: &CoverSpec, rank: usize) -> Result<CharacterGroup> {
    check_cover(spec, rank)?;
    match &spec.quotient {
        None => Ok(CharacterGroup::direct(&spec.orders)),
        Some(m) => CharacterGroup::quotient(quotient_matrix(m, rank), spec.orders.iter().map(|&n| BigInt::from(n)).collect()),
    }
}

fn cover_entry(a: &Assembly, spec: &CoverSpec) -> Result<CoverEntry> {
    let g = group_for(spec, a.rank)?;
    let order = g.order();
    let by_chars = (order <= BigInt::from(CROSS_CHECK_LIMIT)).then(|| big(&irregularity_by_characters(a, &g)));
    let q = irregularity(a, &g);
    if let Some(v) = &by_chars {
        if *v != big(&q) {
            return Err(Error::Invalid(format!("irregularity routes disagree: {q} by faces, {v} by characters")));
        }
    }
    Ok(CoverEntry {
        orders: spec.orders.clone(),
        quotient: spec.quotient.clone(),
        group_order: big(&order),
        irregularity: big(&q),
        irregularity_by_characters: by_chars,
        b1_branched: big(&betti_branched(a, &g)),
        b1_unbranched: big(&betti_unbranched(a, &g)),
    })
}

fn resonance_entry(res: &[ResonanceComponent], seed: u64) -> ResonanceEntry {
    ResonanceEntry {
        seed,
        components: res
            .iter()
            .map(|c| ResonanceComponentEntry {
                dimension: c.dimension,
                h1: c.h1,
                essential: c.essential,
                basis: c.basis.iter().map(|v| v.iter().map(fmt_rational).collect()).collect(),
            })
            .collect(),
        cross_check: None,
    }
}

fn milnor_entry(curve: &Curve, a: &Assembly) -> MilnorEntry {
    let d = curve.total_degree();
    MilnorEntry { degree: d, b1: milnor_b1_weighted(a, &curve.degrees, d) }
}

fn empty_report(cmd: &Command, curve: &Curve) -> Report {
    Report {
        schema: SCHEMA_VERSION,
        command: cmd.name().into(),
        curve: curve_summary(curve),
        vertices: None,
        faces: None,
        components: None,
        census: None,
        warnings: vec![],
        covers: None,
        milnor: None,
        resonance: None,
        superabundance: None,
    }
}

pub fn run(cmd: &Command, doc: &InputDocument, flags: Flags) -> Result<Report> {
    let curve = &doc.curve;
    let mut report = empty_report(cmd, curve);
    if curve.mode == Mode::Components {
        report.warnings.push("singular points are taken as declared; the list is assumed complete".into());
    }

    if let Command::Resonance = cmd {
        let inc = Incidence::from_curve(curve)?;
        report.resonance = Some(resonance_entry(&resonance_components(&inc, flags.seed), flags.seed));
        return Ok(report);
    }
    if let Command::Superabundance { degree, scheme } = cmd {
        let vertices = qav_core::arrangement::build_incidence(curve)?;
        let scheme = match scheme {
            Some(s) => s.clone(),
            None => (0..vertices.len()).map(|v| (v, 1)).collect(),
        };
        let mut pts = vec![];
        for &(v, a) in &scheme {
            let p = vertices
                .get(v)
                .ok_or_else(|| Error::schema("scheme", format!("vertex {v} out of range (curve has {})", vertices.len())))?;
            pts.push((p.point.clone(), a));
        }
        let fat = FatPointScheme::new(Arc::clone(&curve.field), pts)?;
        let r = superabundance(*degree, &fat)?;
        report.superabundance =
            Some(SuperabundanceEntry { degree: *degree, scheme, conditions: r.conditions, h0: r.h0, chi: r.chi, h1: r.h1 });
        return Ok(report);
    }

    let a = assemble(curve, AssembleOptions { fast: flags.fast })?;
    let cs = sorted_components(&a);
    let maximal = maximal_components(&cs);
    report.warnings.extend(a.warnings.iter().cloned());
    match cmd {
        Command::Faces => {
            report.vertices = Some(vertex_census(&a));
            report.faces = Some(face_entries(&a));
        }
        Command::Milnor => {
            report.census = Some(census_entry(&cs, &maximal));
            report.milnor = Some(milnor_entry(curve, &a));
        }
        Command::Covers(spec) => {
            report.census = Some(census_entry(&cs, &maximal));
            let specs: Vec<CoverSpec> = match spec {
                Some(s) => vec![s.clone()],
                None => doc.covers.clone(),
            };
            if specs.is_empty() {
                return Err(Error::schema("covers", "no cover given: pass --orders or list covers in the input"));
            }
            report.covers = Some(specs.iter().map(|s| cover_entry(&a, s)).collect::<Result<_>>()?);
        }
        Command::Analyze => {
            report.vertices = Some(vertex_census(&a));
            report.faces = Some(face_entries(&a));
            report.components =
                Some(cs.iter().map(|c| component_entry(c, maximal.iter().any(|m| same(m, c)))).collect());
            report.census = Some(census_entry(&cs, &maximal));
            if !doc.covers.is_empty() {
                report.covers = Some(doc.covers.iter().map(|s| cover_entry(&a, s)).collect::<Result<_>>()?);
            }
            report.milnor = Some(milnor_entry(curve, &a));
            if curve.mode == Mode::Lines {
                let t = verify_thm54(curve, &maximal, flags.seed)?;
                let index = |k: usize| cs.iter().position(|c| same(c, &maximal[k])).expect("maximal ⊂ all");
                let mut entry = resonance_entry(&t.resonance, flags.seed);
                entry.cross_check = Some(CrossCheck {
                    pass: t.pass,
                    matches: t.entries.iter().map(|e| (index(e.component), e.matched, e.depth_ok)).collect(),
                    unmatched_resonance: t.unmatched_resonance.clone(),
                });
                report.resonance = Some(entry);
            }
        }
        Command::Resonance | Command::Superabundance { .. } => unreachable!(),
    }
    Ok(report)
}

/// Parses `"v:a,v:a,…"` (an omitted `:a` means order 1).
pub fn parse_scheme(s: &str) -> Result<Vec<(usize, u32)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (v, a) = t.split_once(':').unwrap_or((t, "1"));
            match (v.trim().parse(), a.trim().parse()) {
                (Ok(v), Ok(a)) if a > 0 => Ok((v, a)),
                _ => Err(Error::schema("scheme", format!("malformed entry {t:?}, expected vertex:order"))),
            }
        })
        .collect()
}

pub fn parse_orders(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::schema("orders", format!("malformed order {t:?}"))))
        .collect()
}
