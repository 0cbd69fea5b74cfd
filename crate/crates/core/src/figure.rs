//! Rank-2 SVG figures on the root-lattice plane.
//!
//! A weight with root coordinates `(q1, q2)` is drawn at
//! `u (2 q1 - q2, -2 q2)`, i.e. `alpha_1 -> (2u, 0)` and
//! `alpha_2 -> (-u, -2u)`. The unit `u` is a base scale times the lcm of
//! all coordinate denominators, so every coordinate in the file is an
//! integer.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;

use crate::cartan::RootSystem;
use crate::error::{Error, Result};
use crate::multiset::WeightMultiset;
use crate::path::Path;
use crate::prv::PrvWitness;
use crate::rational::Rational;
use crate::weight::{RationalWeight, Weight};

pub const BASE_SCALE: i64 = 12;

struct Plane {
    unit: i64,
}

impl Plane {
    fn fit(rs: &RootSystem, points: &[RationalWeight]) -> Result<(Plane, Vec<[Rational; 2]>)> {
        if rs.rank() != 2 {
            return Err(Error::RankMismatch { expected: 2, found: rs.rank() });
        }
        let mut coords = Vec::with_capacity(points.len());
        let mut lcm = 1i64;
        for p in points {
            let q = rs.weight_to_root_coords(p)?;
            for c in &q {
                lcm = lcm.lcm(&c.denom_i64().ok_or(Error::Parse("coordinate too large to draw".into()))?);
            }
            coords.push([q[0].clone(), q[1].clone()]);
        }
        Ok((Plane { unit: BASE_SCALE * lcm }, coords))
    }

    fn xy(&self, q: &[Rational; 2]) -> (i64, i64) {
        let u = Rational::from(self.unit);
        let x = &(&(&Rational::from(2) * &q[0]) - &q[1]) * &u;
        let y = &(&Rational::from(-2) * &q[1]) * &u;
        (x.to_i64().expect("integral by choice of unit"), y.to_i64().expect("integral by choice of unit"))
    }
}

struct Canvas {
    body: String,
    min: (i64, i64),
    max: (i64, i64),
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new(), min: (i64::MAX, i64::MAX), max: (i64::MIN, i64::MIN) }
    }

    fn include(&mut self, (x, y): (i64, i64)) {
        self.min = (self.min.0.min(x), self.min.1.min(y));
        self.max = (self.max.0.max(x), self.max.1.max(y));
    }

    fn finish(self, unit: i64, kind: &str, grid: String) -> String {
        let pad = 2 * unit;
        let (x0, y0) = (self.min.0 - pad, self.min.1 - pad);
        let (w, h) = (self.max.0 - self.min.0 + 2 * pad, self.max.1 - self.min.1 + 2 * pad);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\" data-unit=\"{unit}\" data-figure=\"{kind}\">\n{grid}{}</svg>\n",
            self.body
        )
    }
}

/// Lattice lines through `base + Z alpha_1 + Z alpha_2` covering the box.
fn grid(plane: &Plane, base: &[Rational; 2], canvas: &Canvas) -> String {
    let u = plane.unit;
    let span = (canvas.max.0 - canvas.min.0).max(canvas.max.1 - canvas.min.1) / u + 4;
    let (bx, by) = plane.xy(base);
    let mut out = String::from("<g class=\"grid\">\n");
    for n in -span..=span {
        // lines along alpha_2 through base + n alpha_1, and along alpha_1 through base + n alpha_2
        let (ax, ay) = (bx + 2 * u * n, by);
        let _ = writeln!(out, "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", ax + u * span, ay + 2 * u * span, ax - u * span, ay - 2 * u * span);
        let (cx, cy) = (bx - u * n, by - 2 * u * n);
        let _ = writeln!(out, "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", cx - 2 * u * span, cy, cx + 2 * u * span, cy);
    }
    out.push_str("</g>\n");
    out
}

/// The path as a polyline through its vertices.
pub fn path_svg(rs: &RootSystem, path: &Path) -> Result<String> {
    rs.check_rank(path.rank())?;
    let vertices = path.vertices();
    let (plane, coords) = Plane::fit(rs, &vertices)?;
    let mut canvas = Canvas::new();
    let pts: Vec<(i64, i64)> = coords.iter().map(|q| plane.xy(q)).collect();
    for &p in &pts {
        canvas.include(p);
    }
    let list: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
    let _ = writeln!(canvas.body, "<polyline class=\"path\" fill=\"none\" stroke=\"black\" points=\"{}\"/>", list.join(" "));
    for (v, (x, y)) in vertices.iter().zip(&pts) {
        let _ = writeln!(canvas.body, "<circle class=\"vertex\" cx=\"{x}\" cy=\"{y}\" r=\"2\" data-weight=\"{v}\"/>");
    }
    let zero = [Rational::ZERO, Rational::ZERO];
    let g = grid(&plane, &zero, &canvas);
    Ok(canvas.finish(plane.unit, "path", g))
}

/// Components of `V(mu) (x) V(nu)`, each marked `classic`, `generalized`
/// (a generalized PRV component that is not classic) or `other`; each
/// generalized component also gets its `beta` segment from
/// `lambda + sum k_i beta_i` to `lambda`.
pub fn decomposition_svg(
    rs: &RootSystem,
    components: &WeightMultiset,
    classic: &BTreeSet<Weight>,
    witnesses: &[PrvWitness],
) -> Result<String> {
    let generalized: BTreeSet<&Weight> = witnesses.iter().map(|w| &w.lambda).collect();
    let mut points: Vec<RationalWeight> = components.weights().map(Weight::to_rational).collect();
    let mut segments = Vec::new();
    for wit in witnesses.iter().filter(|w| !classic.contains(&w.lambda)) {
        let mut start = wit.lambda.clone();
        for (b, &k) in wit.instance.betas.iter().zip(&wit.instance.ks) {
            start = &start + &rs.root_weight(b).scale(k);
        }
        points.push(start.to_rational());
        points.push(wit.lambda.to_rational());
        segments.push(points.len() - 2);
    }
    let (plane, coords) = Plane::fit(rs, &points)?;
    let mut canvas = Canvas::new();
    for q in &coords {
        canvas.include(plane.xy(q));
    }
    for &s in &segments {
        let ((x1, y1), (x2, y2)) = (plane.xy(&coords[s]), plane.xy(&coords[s + 1]));
        let _ = writeln!(
            canvas.body,
            "<line class=\"beta-segment\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" data-from=\"{}\" data-to=\"{}\"/>",
            points[s], points[s + 1]
        );
    }
    for ((lam, m), q) in components.iter().zip(&coords) {
        let class = if classic.contains(lam) {
            "classic"
        } else if generalized.contains(lam) {
            "generalized"
        } else {
            "other"
        };
        let (x, y) = plane.xy(q);
        let _ = writeln!(
            canvas.body,
            "<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" data-weight=\"{lam}\" data-multiplicity=\"{m}\"/>",
            plane.unit / 4
        );
    }
    let base = coords.first().cloned().unwrap_or([Rational::ZERO, Rational::ZERO]);
    let g = grid(&plane, &base, &canvas);
    Ok(canvas.finish(plane.unit, "decomposition", g))
}

/// `data-weight` values of the elements with the given class, in file order.
pub fn marked_weights(svg: &str, class: &str) -> Vec<String> {
    let needle = format!("class=\"{class}\"");
    svg.lines()
        .filter(|l| l.contains(&needle))
        .filter_map(|l| {
            let start = l.find("data-weight=\"")? + "data-weight=\"".len();
            let len = l[start..].find('"')?;
            Some(l[start..start + len].to_string())
        })
        .collect()
}

/// `(x, y)` pairs of the path polyline.
pub fn polyline_points(svg: &str) -> Vec<(i64, i64)> {
    svg.lines()
        .find(|l| l.contains("class=\"path\""))
        .and_then(|l| {
            let start = l.find("points=\"")? + "points=\"".len();
            let len = l[start..].find('"')?;
            Some(
                l[start..start + len]
                    .split_whitespace()
                    .filter_map(|p| {
                        let (x, y) = p.split_once(',')?;
                        Some((x.parse().ok()?, y.parse().ok()?))
                    })
                    .collect(),
            )
        })
        .unwrap_or_default()
}
