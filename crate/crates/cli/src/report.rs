//! Report structures and their text rendering. Field order is fixed by the
//! struct definitions, lists are sorted before they get here, and every
//! number is an integer or a reduced rational string, so equal inputs give
//! byte-identical JSON.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Integers that fit in 64 bits are JSON numbers, larger ones strings.
pub fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub curve: CurveSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<VertexCensus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<Census>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<CoverEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub milnor: Option<MilnorEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resonance: Option<ResonanceEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub superabundance: Option<SuperabundanceEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub generator: String,
    pub minpoly: Vec<String>,
    pub mode: String,
    pub rank: usize,
    pub degree: u32,
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexCensus {
    pub total: usize,
    /// (local type, count), sorted by type name.
    pub by_type: Vec<(String, usize)>,
    pub list: Vec<VertexEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexEntry {
    pub index: usize,
    pub x: Vec<String>,
    pub y: Vec<String>,
    #[serde(rename = "type")]
    pub kind: String,
    pub branches: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceEntry {
    pub subcurve: Vec<usize>,
    /// (vertex, local face) pairs.
    pub choices: Vec<(usize, usize)>,
    pub exponents: Vec<u32>,
    pub level: i64,
    pub order: Value,
    pub dimension: usize,
    pub twist: i64,
    pub h0: i64,
    pub chi: i64,
    pub h1: i64,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentEntry {
    pub support: Vec<usize>,
    /// `t^{row} = exp(2πi·β)` for each row.
    pub rows: Vec<Vec<Value>>,
    pub beta: Vec<String>,
    pub dimension: usize,
    pub depth: u32,
    pub essential: bool,
    pub maximal: bool,
    pub through_identity: bool,
    pub face_order: Value,
    pub translation_order: Value,
    pub provenance: ProvenanceEntry,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProvenanceEntry {
    pub subcurve: Vec<usize>,
    pub face: Vec<(usize, usize)>,
    pub conjugate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    /// (dimension, count), largest dimension first.
    pub components: Vec<(usize, usize)>,
    pub essential: usize,
    pub maximal: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverEntry {
    pub orders: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Vec<Vec<i64>>>,
    pub group_order: Value,
    pub irregularity: Value,
    /// The same irregularity summed character by character (small groups only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub irregularity_by_characters: Option<Value>,
    pub b1_branched: Value,
    pub b1_unbranched: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct MilnorEntry {
    pub degree: u32,
    pub b1: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResonanceEntry {
    pub seed: u64,
    pub components: Vec<ResonanceComponentEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResonanceComponentEntry {
    pub dimension: usize,
    pub h1: usize,
    pub essential: bool,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub pass: bool,
    /// (component index, matched resonance component, depth = dim − 1).
    pub matches: Vec<(usize, Option<usize>, bool)>,
    pub unmatched_resonance: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuperabundanceEntry {
    pub degree: i64,
    /// (vertex, vanishing order).
    pub scheme: Vec<(usize, u32)>,
    pub conditions: i64,
    pub h0: i64,
    pub chi: i64,
    pub h1: i64,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let c = &self.curve;
        let _ = writeln!(
            o,
            "{}: {} {} over Q({}), minimal polynomial [{}], total degree {}",
            self.command,
            c.rank,
            if c.mode == "lines" { "lines" } else { "components" },
            c.generator,
            c.minpoly.join(", "),
            c.degree
        );
        if let Some(v) = &self.vertices {
            let types: Vec<String> = v.by_type.iter().map(|(t, n)| format!("{n} × {t}")).collect();
            let _ = writeln!(o, "vertices: {} ({})", v.total, types.join(", "));
        }
        if let Some(fs) = &self.faces {
            let _ = writeln!(o, "contributing faces: {} ({} with h1 > 0)", fs.len(), fs.iter().filter(|f| f.h1 > 0).count());
            if self.components.is_none() {
                for f in fs {
                    let _ = writeln!(
                        o,
                        "  {:?} at {:?}: level {}, order {}, dim {}, h0 {}, chi {}, h1 {}",
                        f.subcurve, f.choices, f.level, f.order, f.dimension, f.h0, f.chi, f.h1
                    );
                }
            }
        }
        if let Some(cs) = &self.census {
            let fmt = |v: &[(usize, usize)]| v.iter().map(|(d, n)| format!("{n} of dim {d}")).collect::<Vec<_>>().join(", ");
            let _ = writeln!(o, "components: {} ({} essential)", fmt(&cs.components), cs.essential);
            let _ = writeln!(o, "maximal components: {}", fmt(&cs.maximal));
        }
        if let Some(list) = &self.components {
            for k in list {
                let _ = writeln!(
                    o,
                    "  support {:?}: dim {}, depth {}, face order {}, translation order {}{}",
                    k.support,
                    k.dimension,
                    k.depth,
                    k.face_order,
                    k.translation_order,
                    if k.essential { ", essential" } else { "" }
                );
            }
        }
        for w in &self.warnings {
            let _ = writeln!(o, "warning: {w}");
        }
        for cv in self.covers.iter().flatten() {
            let _ = writeln!(
                o,
                "cover {:?}{}: |G| = {}, irregularity {}, b1 branched {}, b1 unbranched {}",
                cv.orders,
                if cv.quotient.is_some() { " (quotient)" } else { "" },
                cv.group_order,
                cv.irregularity,
                cv.b1_branched,
                cv.b1_unbranched
            );
        }
        if let Some(m) = &self.milnor {
            let _ = writeln!(o, "milnor fibre: b1 = {} (degree {})", m.b1, m.degree);
        }
        if let Some(r) = &self.resonance {
            let _ = writeln!(o, "resonance: {} components (seed {})", r.components.len(), r.seed);
            if let Some(x) = &r.cross_check {
                let _ = writeln!(o, "resonance cross-check: {}", if x.pass { "pass" } else { "FAIL" });
            }
        }
        if let Some(s) = &self.superabundance {
            let _ = writeln!(
                o,
                "superabundance at n = {}: conditions {}, h0 {}, chi {}, h1 {}",
                s.degree, s.conditions, s.h0, s.chi, s.h1
            );
        }
        o
    }
}
