//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit status if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use qav_core::arrangement::Curve;
use qav_core::charvariety::{
    assemble, count_torsion_points, maximal_components, AssembleOptions, Assembly, CharacterGroup, Predicate,
    TorusComponent,
};
use qav_core::covers::{betti_branched, interior_points, irregularity, milnor_b1};
use qav_core::exactmath::{
    enumerate_affine_lattice_points, smith_normal_form, AffineLatticePointSet, FieldElement, NumberField, Rational,
};
use qav_core::fixtures;
use qav_core::quasiadjunction::{conjugate_system, in_relative_interior};
use qav_core::resonance::verify_thm54;
use qav_core::sheafcoh::{h0_linear_system, superabundance, FatPointScheme};

struct Check {
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { ok: true, notes: vec![] }
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got == want {
            self.notes.push(format!("{what} = {got:?}"));
        } else {
            self.ok = false;
            self.notes.push(format!("{what} = {got:?}, expected {want:?}"));
        }
    }

    fn require(&mut self, what: &str, cond: bool) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("violated: {what}"));
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn within(&mut self, t: Duration, limit: Duration) {
        if t > limit {
            self.ok = false;
            self.notes.push(format!("took {:.1?}, limit {:.0?}", t, limit));
        }
    }
}

fn full(c: &Curve) -> Assembly {
    assemble(c, AssembleOptions::default()).unwrap()
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ones_on(c: &TorusComponent) -> Vec<BigInt> {
    (0..c.rank).map(|i| if c.support.contains(&i) { BigInt::one() } else { BigInt::zero() }).collect()
}

fn criterion_1() -> Check {
    let mut ck = Check::new();
    let t = Instant::now();
    let a = full(&fixtures::triangle());
    for n in 2..=7i64 {
        let q = irregularity(&a, &CharacterGroup::direct(&[n as u64; 3]));
        ck.expect(&format!("q({n},{n},{n})"), q, big((n - 1) * (n - 2) / 2));
    }
    ck.within(t.elapsed(), Duration::from_secs(1));
    ck
}

fn criterion_2() -> Check {
    let mut ck = Check::new();
    let t = Instant::now();
    let a = full(&fixtures::ceva());
    let ess: Vec<&TorusComponent> = a.components.iter().filter(|c| c.essential).collect();
    ck.expect("essential components", ess.len(), 1);
    if let Some(e) = ess.first() {
        ck.expect("(dim, depth, face order)", (e.dimension, e.depth, e.face_order.clone()), (2, 1, big(2)));
        ck.require("essential component passes through 1", e.contains_identity());
        for rel in [[1, 1, 0, 1, 0, 0], [0, 1, 1, 0, 1, 0], [1, 0, 1, 0, 0, 1], [0, 0, 0, 1, 1, 1]] {
            let v: Vec<BigInt> = rel.iter().map(|&x| big(x)).collect();
            ck.require(&format!("t^{rel:?} = 1 on the essential component"), e.kills(&v));
        }
    }
    let pullbacks = a.components.iter().filter(|c| !c.essential && c.dimension == 2 && c.support.len() == 3).count();
    ck.expect("pullback tori", pullbacks, 4);
    ck.expect("components", a.components.len(), 5);
    ck.expect("q of (Z/5)^6/diag", irregularity(&a, &CharacterGroup::kummer(6, 5)), big(30));
    ck.expect("milnor b1", milnor_b1(&a, 6), 7);
    ck.within(t.elapsed(), Duration::from_secs(5));
    ck
}

fn criterion_3() -> Check {
    let mut ck = Check::new();
    let t = Instant::now();
    let a = full(&fixtures::four_lines());
    let max = maximal_components(&a.components);
    ck.expect("maximal components", max.len(), 1);
    if let Some(c) = max.first() {
        ck.expect("rows", c.rows.to_rows(), vec![vec![big(1); 4]]);
        ck.require("passes through 1", c.contains_identity());
        ck.expect("depth", c.depth, 2);
    }
    let mut pairs: Vec<(i64, i64)> = a
        .faces
        .iter()
        .filter(|f| f.subcurve.support.len() == 4)
        .map(|f| (f.face.level.unwrap(), f.cohomology.h1))
        .collect();
    pairs.sort();
    ck.expect("(level, h1) on the full curve", pairs, vec![(1, 2), (2, 1)]);
    for n in 2..=5i64 {
        let g = CharacterGroup::direct(&[n as u64; 4]);
        let want = (n - 1) * (n * n - n - 1);
        ck.expect(&format!("q(n={n})"), irregularity(&a, &g), big(want));
        ck.expect(&format!("b1(n={n})"), betti_branched(&a, &g), big(2 * want));
    }
    ck.within(t.elapsed(), Duration::from_secs(1));
    ck
}

fn criterion_4() -> Check {
    let mut ck = Check::new();
    let t = Instant::now();
    let a = full(&fixtures::dual_hesse());
    let case_c: Vec<_> = a.faces.iter().filter(|f| f.subcurve.support.len() == 9 && f.face.choices.len() == 9).collect();
    let mut sets: Vec<Vec<usize>> = case_c.iter().map(|f| f.face.vertex_set()).collect();
    sets.sort();
    sets.dedup();
    ck.expect("nine-point schemes", sets.len(), 4);
    ck.require("rank of every case-c system is 7", case_c.iter().all(|f| smith_normal_form(&f.face.a).rank() == 7));
    ck.require("h1(I(3)) = 1 on every case-c face", case_c.iter().all(|f| f.cohomology.n == 3 && f.cohomology.h1 == 1));
    let two: Vec<&TorusComponent> = a.components.iter().filter(|c| c.dimension == 2).collect();
    ck.expect("two-dimensional tori", two.len(), 16);
    ck.expect("of which essential", two.iter().filter(|c| c.essential).count(), 4);
    let zero = a.components.iter().filter(|c| c.dimension == 0).count();
    ck.note(format!("plus {zero} isolated points of order 3"));
    ck.within(t.elapsed(), Duration::from_secs(30));
    ck
}

fn criterion_5() -> Check {
    let mut ck = Check::new();
    let t = Instant::now();
    let a = assemble(&fixtures::hesse(), AssembleOptions { fast: true }).unwrap();
    let three: Vec<&TorusComponent> = a.components.iter().filter(|c| c.dimension == 3).collect();
    ck.expect("three-dimensional tori", three.len(), 10);
    ck.require("all 3-tori have depth 2", three.iter().all(|c| c.depth == 2));
    let two: Vec<&TorusComponent> = a.components.iter().filter(|c| c.dimension == 2).collect();
    let by = |k: usize| two.iter().filter(|c| c.support.len() == k).count();
    ck.expect("two-dimensional tori (3, 9, 6 lines)", (two.len(), by(3), by(9), by(6)), (94, 36, 4, 54));
    // Counting every character with coordinates i/3 — the count the 6·10·2 +
    // 94·2 tally rests on: the group (Z/3)^12, or equivalently its quotient
    // by the diagonal.
    let direct = CharacterGroup::direct(&[3; 12]);
    ck.expect("q of (Z/3)^12", irregularity(&a, &direct), big(154));
    ck.expect("q of (Z/3)^12/diag", irregularity(&a, &CharacterGroup::kummer(12, 3)), big(154));
    ck.expect("b1 of (Z/3)^12", betti_branched(&a, &direct), big(308));
    let h1max = a.faces.iter().map(|f| f.cohomology.h1).max().unwrap_or(0);
    ck.note(format!("a group of order 9 has 8 nontrivial characters, so its q is at most 8·{h1max}"));
    ck.within(t.elapsed(), Duration::from_secs(300));
    ck
}

fn criterion_6() -> Check {
    let mut ck = Check::new();
    let q = NumberField::rationals();
    let pt = |x: i64, y: i64, a: u32| ((FieldElement::from_int(&q, x), FieldElement::from_int(&q, y)), a);
    let one = FatPointScheme::new(q.clone(), vec![pt(0, 0, 1)]).unwrap();
    let double = FatPointScheme::new(q.clone(), vec![pt(0, 0, 2)]).unwrap();
    ck.expect("h1(I(-1)), one point", superabundance(-1, &one).unwrap().h1, 1);
    ck.expect("h1(I(0)), one double point", superabundance(0, &double).unwrap().h1, 2);
    let vertices = |c: &Curve, m: usize| {
        let vs = qav_core::arrangement::build_incidence(c).unwrap();
        FatPointScheme::new(c.field.clone(), vs.into_iter().filter(|v| v.multiplicity() == m).map(|v| (v.point, 1)).collect())
            .unwrap()
    };
    ck.expect("h1(I(1)), Ceva triple points", superabundance(1, &vertices(&fixtures::ceva(), 3)).unwrap().h1, 1);
    let dh = fixtures::dual_hesse();
    let twelve = vertices(&dh, 3);
    let fibre_free: Vec<_> = {
        // the nine triple points off one of the four "parallel classes"
        let a = full(&dh);
        let f = a.faces.iter().find(|f| f.face.choices.len() == 9).expect("a case-c face");
        f.face.vertex_set().iter().map(|&v| (a.vertices[v].point.clone(), 1)).collect()
    };
    let nine = FatPointScheme::new(dh.field.clone(), fibre_free).unwrap();
    ck.expect("h0(I(3)), nine dual Hesse points", h0_linear_system(3, &nine).unwrap(), 2);
    ck.note(format!("all twelve: h0(I(3)) = {}", h0_linear_system(3, &twelve).unwrap()));
    let cusps = |c: Curve| {
        FatPointScheme::new(c.field.clone(), c.singular_points.iter().map(|p| (p.coords.clone(), 1)).collect()).unwrap()
    };
    ck.expect("h1(I(2)), cusps on a conic", superabundance(2, &cusps(fixtures::six_cusps_on_conic())).unwrap().h1, 1);
    ck.expect("h1(I(2)), generic cusps", superabundance(2, &cusps(fixtures::six_generic_cusps())).unwrap().h1, 0);
    ck
}

/// The property suites on one curve.
fn properties(name: &str, c: &Curve, ck: &mut Check) -> [usize; 3] {
    let mut grids = 0;
    let a = full(c);
    let r = a.rank;
    for k in &a.components {
        ck.require(&format!("{name}: Π t = 1 on {:?}", k.support), k.kills(&ones_on(k)));
        let ord = k.translation_order();
        ck.require(&format!("{name}: translation order {ord} | face order {}", k.face_order), (&k.face_order % &ord).is_zero());
        if k.contains_identity() && k.dimension > 0 {
            ck.require(&format!("{name}: depth = dim − 1 on {:?}", k.support), k.depth as usize + 1 == k.dimension);
        }
        let conj = k.conjugate();
        ck.require(
            &format!("{name}: conjugate of {:?} listed", k.support),
            a.components.iter().any(|o| o.support == conj.support && o.rows == conj.rows && o.beta == conj.beta),
        );
        for n in 2..=6u64 {
            let orders = vec![n; r];
            ck.require(
                &format!("{name}: N-count symmetric under conjugation, n = {n}"),
                count_torsion_points(k, &orders, Predicate::FullSupport)
                    == count_torsion_points(&conj, &orders, Predicate::FullSupport),
            );
        }
    }
    for n in 2..=4u64 {
        let g = CharacterGroup::direct(&vec![n; r]);
        ck.require(&format!("{name}: b1 = 2q, n = {n}"), betti_branched(&a, &g) == 2 * irregularity(&a, &g));
        // N(δ) through the face itself and through its image under x ↦ 1 − x
        for rec in a.faces.iter().filter(|f| f.cohomology.h1 > 0) {
            let direct = interior_points(rec, &g).len();
            let sup = &rec.subcurve.support;
            let dens = vec![BigInt::from(n); sup.len()];
            let set = AffineLatticePointSet::in_open_cube(rec.face.a.clone(), conjugate_system(&rec.face.a, &rec.face.b), dens);
            let mirrored = enumerate_affine_lattice_points(&set)
                .into_iter()
                .filter(|y| {
                    let x: Vec<Rational> = y.iter().map(|v| Rational::one() - v).collect();
                    in_relative_interior(&rec.face, &rec.subcurve, &x)
                })
                .count();
            ck.require(&format!("{name}: N(δ) = N(δ̄) on {:?}, n = {n}", rec.face.choices), direct == mirrored);
        }
    }
    // Vanishing for degree reasons: d′² > Σ_{P∈S} m_P² forces h1 = 0.
    for rec in &a.faces {
        let d = rec.subcurve.degree as i64;
        let s: i64 = rec.face.vertex_set().iter().map(|&v| (a.vertices[v].multiplicity() as i64).pow(2)).sum();
        if d * d > s {
            ck.require(&format!("{name}: h1 = 0 when d² > Σm² on {:?}", rec.face.choices), rec.cohomology.h1 == 0);
        }
    }
    // Lattice enumeration against the full grid.
    for rec in &a.faces {
        let k = rec.subcurve.support.len();
        for n in 2..=6u64 {
            if (n as f64).powi(k as i32) > 20_000.0 {
                continue;
            }
            let set = AffineLatticePointSet::in_open_cube(rec.face.a.clone(), rec.face.b.clone(), vec![BigInt::from(n); k]);
            let mut fast = enumerate_affine_lattice_points(&set);
            fast.sort();
            let mut grid = vec![];
            let mut idx = vec![1u64; k];
            'grid: loop {
                let x: Vec<Rational> = idx.iter().map(|&i| Rational::new(i.into(), n.into())).collect();
                let on = (0..rec.face.a.nrows()).all(|s| {
                    let v: Rational = rec.face.a.row(s).iter().zip(&x).map(|(c, y)| Rational::from_integer(c.clone()) * y).sum();
                    v == rec.face.b[s]
                });
                if on {
                    grid.push(x);
                }
                for j in 0..k {
                    idx[j] += 1;
                    if idx[j] < n {
                        continue 'grid;
                    }
                    idx[j] = 1;
                }
                break;
            }
            grid.sort();
            ck.require(&format!("{name}: lattice points = grid on {:?}, n = {n}", rec.face.choices), fast == grid);
            grids += 1;
        }
    }
    [a.components.len(), a.faces.iter().filter(|f| f.cohomology.h1 > 0).count(), grids]
}

fn criterion_7() -> Check {
    let mut ck = Check::new();
    let mut curves = vec![
        ("triangle".to_string(), fixtures::triangle()),
        ("ceva".to_string(), fixtures::ceva()),
        ("dual hesse".to_string(), fixtures::dual_hesse()),
        ("four lines".to_string(), fixtures::four_lines()),
    ];
    for seed in 0..20 {
        curves.push((format!("random #{seed}"), fixtures::random_arrangement(seed, 8)));
    }
    let mut tally = [0; 3];
    let mut random_with_components = 0;
    for (name, c) in &curves {
        let t = properties(name, c, &mut ck);
        if name.starts_with("random") && t[0] > 0 {
            random_with_components += 1;
        }
        for i in 0..3 {
            tally[i] += t[i];
        }
    }
    ck.note(format!(
        "{} curves ({random_with_components} random ones with components): {} components, {} superabundant faces, {} grid comparisons",
        curves.len(),
        tally[0],
        tally[1],
        tally[2]
    ));
    ck
}

fn criterion_8() -> Check {
    let mut ck = Check::new();
    let t = Instant::now();
    for (name, c, want) in [
        ("triangle", fixtures::triangle(), 1),
        ("ceva", fixtures::ceva(), 5),
        ("dual hesse", fixtures::dual_hesse(), 16),
        ("four lines", fixtures::four_lines(), 1),
    ] {
        let a = full(&c);
        let rep = verify_thm54(&c, &maximal_components(&a.components), 0).unwrap();
        ck.expect(&format!("{name}: (tori, resonance components, pass)"), (rep.entries.len(), rep.resonance.len(), rep.pass), (want, want, true));
    }
    ck.within(t.elapsed(), Duration::from_secs(60));
    ck
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("triangle irregularity", criterion_1),
        ("Ceva components and covers", criterion_2),
        ("four concurrent lines", criterion_3),
        ("dual Hesse census", criterion_4),
        ("Hesse census and irregularity", criterion_5),
        ("superabundance regression", criterion_6),
        ("property suites", criterion_7),
        ("resonance cross-check", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let ck = f();
        let el = t.elapsed();
        let shown: Vec<&String> = if ck.ok { ck.notes.iter().collect() } else { ck.notes.iter().filter(|n| n.contains("expected") || n.starts_with("violated") || n.starts_with("took")).take(10).collect() };
        println!(
            "criterion {}: {} — {name} [{:.1?}] {}",
            i + 1,
            if ck.ok { "PASS" } else { "FAIL" },
            el,
            shown.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ")
        );
        if !ck.ok {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
