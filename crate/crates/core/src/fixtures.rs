//! Standard curves used by tests, examples and the CLI fixture files.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{validate_input, Curve, LocalType, ProjLine, SingularPointSpec};
use crate::exactmath::{FieldElement, NumberField, Rational};

fn line(a: FieldElement, b: FieldElement, c: FieldElement) -> ProjLine {
    ProjLine::new(a, b, c).expect("fixture line")
}

fn q_line(f: &Arc<NumberField>, a: i64, b: i64, c: i64) -> ProjLine {
    let e = |n| FieldElement::from_int(f, n);
    line(e(a), e(b), e(c))
}

/// Line through two affine points.
fn through(f: &Arc<NumberField>, p: (i64, i64), q: (i64, i64)) -> ProjLine {
    // (x1, y1, 1) × (x2, y2, 1)
    q_line(f, p.1 - q.1, q.0 - p.0, p.0 * q.1 - p.1 * q.0)
}

/// Rewrites lines in coordinates where `row · (x, y, z) = 0` becomes `z' = 0`,
/// via `x' = x, y' = y, z' = u x + v y + w z`.
pub fn move_to_infinity(lines: &[ProjLine], row: [i64; 3]) -> Vec<ProjLine> {
    let [u, v, w] = row;
    assert!(w != 0);
    lines
        .iter()
        .map(|l| {
            let [a, b, c] = l.coeffs();
            let f = a.field();
            let k = |n: i64| FieldElement::from_rational(f, Rational::new(n.into(), w.into()));
            // z = (z' − u x − v y)/w
            let a2 = a - &(c * &k(u));
            let b2 = b - &(c * &k(v));
            let c2 = c * &k(1);
            ProjLine::new(a2, b2, c2).expect("transformed line")
        })
        .collect()
}

/// Three lines through one point.
pub fn triangle() -> Curve {
    let q = NumberField::rationals();
    Curve::from_lines(q.clone(), vec![q_line(&q, 1, 0, 0), q_line(&q, 0, 1, 0), q_line(&q, 1, -1, 0)])
}

/// Four lines through one point.
pub fn four_lines() -> Curve {
    let q = NumberField::rationals();
    Curve::from_lines(
        q.clone(),
        vec![q_line(&q, 1, 0, 0), q_line(&q, 0, 1, 0), q_line(&q, 1, -1, 0), q_line(&q, 1, 2, 0)],
    )
}

/// The complete quadrilateral on four general points p₁..p₄: lines
/// p₁p₃, p₁p₂, p₂p₃, p₁p₄, p₂p₄, p₃p₄, so that the triple points are
/// {1,2,4}, {2,3,5}, {1,3,6}, {4,5,6}.
pub fn ceva() -> Curve {
    let q = NumberField::rationals();
    let p = [(0, 0), (4, 1), (1, 3), (2, 2)];
    let pairs = [(0, 2), (0, 1), (1, 2), (0, 3), (1, 3), (2, 3)];
    Curve::from_lines(q.clone(), pairs.iter().map(|&(i, j)| through(&q, p[i], p[j])).collect())
}

/// (x³−y³)(y³−z³)(z³−x³) over Q(ζ), with x + 2y + 5z sent to infinity.
pub fn dual_hesse() -> Curve {
    let f = NumberField::cyclotomic3("w");
    let z = FieldElement::generator(&f);
    let zero = FieldElement::zero(&f);
    let one = FieldElement::one(&f);
    let mut ls = Vec::new();
    for k in 0..3 {
        let c = -&z.pow(k);
        ls.push(line(one.clone(), c.clone(), zero.clone()));
        ls.push(line(zero.clone(), one.clone(), c.clone()));
        ls.push(line(c, zero.clone(), one.clone()));
    }
    Curve::from_lines(f, move_to_infinity(&ls, [1, 2, 5]))
}

/// x, y, z and x + ζᵃy + ζᵇz over Q(ζ): the four singular fibres of the
/// Hesse pencil, with x + 2y + 5z sent to infinity.
pub fn hesse() -> Curve {
    let f = NumberField::cyclotomic3("w");
    let z = FieldElement::generator(&f);
    let one = FieldElement::one(&f);
    let mut ls = vec![q_line(&f, 1, 0, 0), q_line(&f, 0, 1, 0), q_line(&f, 0, 0, 1)];
    for a in 0..3 {
        for b in 0..3 {
            ls.push(line(one.clone(), z.pow(a), z.pow(b)));
        }
    }
    Curve::from_lines(f, move_to_infinity(&ls, [1, 2, 5]))
}

/// Index lists of the four singular fibres of [`hesse`], each a triangle.
pub fn hesse_fibres() -> [[usize; 3]; 4] {
    // x + ζᵃy + ζᵇz is line 3 + 3a + b; a fibre of the pencil collects the
    // lines x + ζᵃy + ζᵇz with b − 2a (equivalently b + a) fixed mod 3.
    let mut fibres = [[0, 1, 2], [0; 3], [0; 3], [0; 3]];
    let mut fill = [0usize; 3];
    for a in 0..3 {
        for b in 0..3 {
            let cls = (a + b) % 3;
            fibres[1 + cls][fill[cls]] = 3 + 3 * a + b;
            fill[cls] += 1;
        }
    }
    fibres
}

fn cusp_curve(points: &[(i64, i64, i64, i64)]) -> Curve {
    let q = NumberField::rationals();
    let pts = points
        .iter()
        .map(|&(xn, xd, yn, yd)| SingularPointSpec {
            coords: (
                FieldElement::from_rational(&q, Rational::new(xn.into(), xd.into())),
                FieldElement::from_rational(&q, Rational::new(yn.into(), yd.into())),
            ),
            kind: LocalType::Cusp,
            branches: vec![0],
        })
        .collect();
    Curve::from_components(q, vec![6], pts)
}

/// An irreducible sextic with six cusps on the conic x² + y² = 1.
pub fn six_cusps_on_conic() -> Curve {
    cusp_curve(&[(1, 1, 0, 1), (0, 1, 1, 1), (-1, 1, 0, 1), (0, 1, -1, 1), (3, 5, 4, 5), (4, 5, -3, 5)])
}

/// The same data with the six cusps in general position.
pub fn six_generic_cusps() -> Curve {
    cusp_curve(&[(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1), (2, 1, 3, 1), (5, 1, -1, 1), (-3, 1, 7, 1)])
}

/// A seeded random line arrangement with 3..=`max_lines` lines over Q.
/// Most lines join pairs of a few grid points, which creates triple and
/// higher points; a random generic line is then sent to infinity so that
/// parallel lines become transversal ones. Redrawn until valid.
pub fn random_arrangement(seed: u64, max_lines: usize) -> Curve {
    let q = NumberField::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = |n| FieldElement::from_int(&q, n);
    loop {
        let n = rng.gen_range(3..=max_lines);
        let mut pts: Vec<(i64, i64)> = vec![];
        while pts.len() < rng.gen_range(4..=6) {
            let p = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let mut ls: Vec<ProjLine> = Vec::new();
        for _ in 0..200 {
            if ls.len() == n {
                break;
            }
            let l = if rng.gen_bool(0.8) {
                let i = rng.gen_range(0..pts.len());
                let j = rng.gen_range(0..pts.len());
                if i == j {
                    continue;
                }
                through(&q, pts[i], pts[j])
            } else {
                match ProjLine::new(e(rng.gen_range(-4..=4)), e(rng.gen_range(-4..=4)), e(rng.gen_range(-4..=4))) {
                    Ok(l) => l,
                    Err(_) => continue,
                }
            };
            if !ls.contains(&l) {
                ls.push(l);
            }
        }
        if ls.len() < 3 {
            continue;
        }
        let row = [rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(1..=5)];
        let c = Curve::from_lines(q.clone(), move_to_infinity(&ls, row));
        if validate_input(&c).is_ok() {
            return c;
        }
    }
}
