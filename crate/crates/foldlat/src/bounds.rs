//! Lower and upper bounds on the number of dots in a DDC confined to a
//! regular polygon or a circle, from an S-DDC of density 1/|S| placed to
//! overlap Q as much as possible. Polygons have radius 1 unless noted.
//!
//! Floating point only; nothing here feeds a combinatorial verdict.

use std::fmt;
use std::str::FromStr;

use num_traits::{Float, FloatConst};
use serde::Serialize;

use crate::error::{Error, Result};

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("float constant")
}

/// A closed polygon, vertices in order.
pub type Polygon<T> = Vec<[T; 2]>;

/// Shoelace area, positive for counterclockwise vertices.
pub fn signed_area<T: Float>(p: &[[T; 2]]) -> T {
    let n = p.len();
    let mut s = T::zero();
    for i in 0..n {
        let (a, b) = (p[i], p[(i + 1) % n]);
        s = s + a[0] * b[1] - b[0] * a[1];
    }
    s / c(2.0)
}

fn cross<T: Float>(o: [T; 2], a: [T; 2], b: [T; 2]) -> T {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn normalized<T: Float>(p: &[[T; 2]], name: &str) -> Result<Option<Polygon<T>>> {
    if p.len() < 3 {
        return Err(Error::DegeneratePolygon(format!("{name} has {} vertices", p.len())));
    }
    let a = signed_area(p);
    if a == T::zero() {
        return Ok(None);
    }
    let mut v = p.to_vec();
    if a < T::zero() {
        v.reverse();
    }
    let n = v.len();
    let scale = v.iter().fold(T::zero(), |m, q| m.max(q[0].abs()).max(q[1].abs()));
    let tol = -c::<T>(1e-12) * scale * scale;
    if (0..n).any(|i| cross(v[i], v[(i + 1) % n], v[(i + 2) % n]) < tol) {
        return Err(Error::DegeneratePolygon(format!("{name} is not convex")));
    }
    Ok(Some(v))
}

/// Sutherland–Hodgman clipping of `subject` by the convex, counterclockwise `clipper`.
pub fn clip_convex<T: Float>(subject: &[[T; 2]], clipper: &[[T; 2]]) -> Polygon<T> {
    let mut out = subject.to_vec();
    let n = clipper.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clipper[i], clipper[(i + 1) % n]);
        let inside = |p: [T; 2]| cross(a, b, p) >= T::zero();
        let meet = |p: [T; 2], q: [T; 2]| {
            let den = (p[0] - q[0]) * (a[1] - b[1]) - (p[1] - q[1]) * (a[0] - b[0]);
            let t = ((p[0] - a[0]) * (a[1] - b[1]) - (p[1] - a[1]) * (a[0] - b[0])) / den;
            [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
        };
        let input = std::mem::take(&mut out);
        let mut s = *input.last().expect("nonempty");
        for &e in &input {
            if inside(e) {
                if !inside(s) {
                    out.push(meet(s, e));
                }
                out.push(e);
            } else if inside(s) {
                out.push(meet(s, e));
            }
            s = e;
        }
    }
    out
}

/// Area of P ∩ Q for convex polygons (either orientation). Zero-area inputs give 0.
pub fn convex_intersection_area<T: Float>(p: &[[T; 2]], q: &[[T; 2]]) -> Result<T> {
    let (Some(p), Some(q)) = (normalized(p, "P")?, normalized(q, "Q")?) else {
        return Ok(T::zero());
    };
    let r = clip_convex(&p, &q);
    Ok(if r.len() < 3 { T::zero() } else { signed_area(&r).max(T::zero()) })
}

/// Regular n-gon with circumradius r, first vertex at angle `start`, counterclockwise.
pub fn regular_polygon<T: Float + FloatConst>(n: usize, r: T, start: T) -> Polygon<T> {
    let step = T::TAU() / c(n as f64);
    (0..n).map(|k| {
        let t = start + step * c(k as f64);
        [r * t.cos(), r * t.sin()]
    })
    .collect()
}

/// The shapes of the bound table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundProblem {
    /// Side length B = 1.
    TriangleEq,
    /// Legs B = 1.
    TriangleIso,
    Square,
    Pentagon,
    Hexagon,
    Heptagon,
    Octagon,
    Nonagon,
    Decagon,
    /// n divisible by 12.
    Ngon12k(u32),
    Circle,
}

impl FromStr for BoundProblem {
    type Err = Error;
    fn from_str(s: &str) -> Result<BoundProblem> {
        Ok(match s {
            "triangle_eq" | "triangle" => BoundProblem::TriangleEq,
            "triangle_iso" => BoundProblem::TriangleIso,
            "square" => BoundProblem::Square,
            "pentagon" => BoundProblem::Pentagon,
            "hexagon" => BoundProblem::Hexagon,
            "heptagon" => BoundProblem::Heptagon,
            "octagon" => BoundProblem::Octagon,
            "nonagon" => BoundProblem::Nonagon,
            "decagon" => BoundProblem::Decagon,
            "circle" => BoundProblem::Circle,
            _ => match s.strip_prefix("ngon_12k:").or_else(|| s.strip_prefix("ngon:")) {
                Some(n) => {
                    let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad n in {s:?}")))?;
                    if n == 0 || !n.is_multiple_of(12) {
                        return Err(Error::ParamOutOfRange(format!("n = {n} is not a multiple of 12")));
                    }
                    BoundProblem::Ngon12k(n)
                }
                None => return Err(Error::Parse(format!("unknown bound family {s:?}"))),
            },
        })
    }
}

impl fmt::Display for BoundProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundProblem::TriangleEq => f.write_str("triangle_eq"),
            BoundProblem::TriangleIso => f.write_str("triangle_iso"),
            BoundProblem::Square => f.write_str("square"),
            BoundProblem::Pentagon => f.write_str("pentagon"),
            BoundProblem::Hexagon => f.write_str("hexagon"),
            BoundProblem::Heptagon => f.write_str("heptagon"),
            BoundProblem::Octagon => f.write_str("octagon"),
            BoundProblem::Nonagon => f.write_str("nonagon"),
            BoundProblem::Decagon => f.write_str("decagon"),
            BoundProblem::Ngon12k(n) => write!(f, "ngon_12k:{n}"),
            BoundProblem::Circle => f.write_str("circle"),
        }
    }
}

impl BoundProblem {
    /// Open/closed parameter ranges (lo, hi) of the free parameters.
    pub fn param_ranges<T: Float + FloatConst>(&self) -> Vec<(T, T)> {
        let pi = T::PI();
        match self {
            BoundProblem::Pentagon => vec![(
                c::<T>(2.0) * (pi / c(10.0)).sin() * (c::<T>(3.0) * pi / c(10.0)).cos(),
                (T::one() + (c::<T>(3.0) * pi / c(10.0)).sin()) / c(2.0),
            )],
            BoundProblem::Heptagon => vec![(c(0.0), c::<T>(2.0) * (pi / c(7.0)).sin()), (c(-0.2), c(0.5))],
            // The caps Q \ S stay triangles only while the bases clear the
            // next vertex down.
            BoundProblem::Octagon => vec![((pi / c(4.0)).sin(), T::one())],
            BoundProblem::Decagon => vec![((c::<T>(3.0) * pi / c(10.0)).sin(), T::one())],
            BoundProblem::Circle => vec![(c(0.0), pi / c(3.0))],
            _ => vec![],
        }
    }

    /// Area of Q (radius 1, or B = 1 for the triangles).
    pub fn area<T: Float + FloatConst>(&self) -> T {
        match self {
            BoundProblem::TriangleEq => c::<T>(3.0).sqrt() / c(4.0),
            BoundProblem::TriangleIso => c(0.5),
            BoundProblem::Circle => T::PI(),
            _ => {
                let n = c::<T>(self.sides() as f64);
                n * (T::TAU() / n).sin() / c(2.0)
            }
        }
    }

    fn sides(&self) -> u32 {
        match self {
            BoundProblem::TriangleEq | BoundProblem::TriangleIso => 3,
            BoundProblem::Square => 4,
            BoundProblem::Pentagon => 5,
            BoundProblem::Hexagon => 6,
            BoundProblem::Heptagon => 7,
            BoundProblem::Octagon => 8,
            BoundProblem::Nonagon => 9,
            BoundProblem::Decagon => 10,
            BoundProblem::Ngon12k(n) => *n,
            BoundProblem::Circle => 0,
        }
    }
}

/// √|Q|: the leading coefficient of the upper bound.
pub fn upper_bound<T: Float + FloatConst>(bp: BoundProblem) -> T {
    bp.area::<T>().sqrt()
}

/// √(n sin(2π/n) / 2).
pub fn ngon_upper<T: Float + FloatConst>(n: u32) -> T {
    let n = c::<T>(n as f64);
    (n * (T::TAU() / n).sin() / c(2.0)).sqrt()
}

fn check_params<T: Float + FloatConst>(bp: BoundProblem, params: &[T]) -> Result<()> {
    let ranges = bp.param_ranges::<T>();
    if params.len() != ranges.len() {
        return Err(Error::ParamOutOfRange(format!("{bp} takes {} parameters, got {}", ranges.len(), params.len())));
    }
    for (i, (&v, &(lo, hi))) in params.iter().zip(&ranges).enumerate() {
        if !(v > lo && v <= hi) {
            return Err(Error::ParamOutOfRange(format!(
                "{bp} parameter {i} = {} outside ({}, {}]",
                v.to_f64().unwrap_or(f64::NAN),
                lo.to_f64().unwrap_or(f64::NAN),
                hi.to_f64().unwrap_or(f64::NAN)
            )));
        }
    }
    Ok(())
}

fn ccw<T: Float>(mut p: Polygon<T>) -> Polygon<T> {
    if signed_area(&p) < T::zero() {
        p.reverse();
    }
    p
}

fn rect<T: Float>(x0: T, y0: T, x1: T, y1: T) -> Polygon<T> {
    vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]]
}

/// Δ(S, Q)/√|S| for the placement of each family.
pub fn eval_lower_bound<T: Float + FloatConst>(bp: BoundProblem, params: &[T]) -> Result<T> {
    check_params(bp, params)?;
    let pi = T::PI();
    let two = c::<T>(2.0);
    let sqrt3 = c::<T>(3.0).sqrt();
    Ok(match bp {
        BoundProblem::TriangleEq => {
            // Flipped T with its wide base centered on the triangle's base.
            let q = vec![[-T::one() / two, T::zero()], [T::one() / two, T::zero()], [T::zero(), sqrt3 / two]];
            let h = T::one() / (two * two.sqrt());
            let w = (two / c(3.0)).sqrt();
            let w1 = T::one() / (two * c::<T>(6.0).sqrt());
            let lower = rect(-w / two, T::zero(), w / two, h);
            let upper = rect(-w / two + w1, h, w / two - w1, two * h);
            let area = two * h * w - two * h * w1;
            (convex_intersection_area(&lower, &q)? + convex_intersection_area(&upper, &q)?) / area.sqrt()
        }
        BoundProblem::TriangleIso => {
            // Corner sharing the right-angle vertex, legs along both axes.
            let q = vec![[T::zero(), T::zero()], [T::one(), T::zero()], [T::zero(), T::one()]];
            let l = (two / c(3.0)).sqrt();
            let cut = T::one() / c::<T>(6.0).sqrt();
            let lower = rect(T::zero(), T::zero(), l, l - cut);
            let upper = rect(T::zero(), l - cut, l - cut, l);
            let area = l * l - cut * cut;
            (convex_intersection_area(&lower, &q)? + convex_intersection_area(&upper, &q)?) / area.sqrt()
        }
        BoundProblem::Square | BoundProblem::Hexagon => bp.area::<T>().sqrt(),
        BoundProblem::Pentagon => {
            // Quasi-regular hexagon on the pentagon's base, diameter at height a.
            let a = params[0];
            let q = regular_polygon(5, T::one(), -pi / two + pi / c(5.0));
            let by = -(pi / c(5.0)).cos();
            let b = two * (pi / c(5.0)).sin();
            let t = (pi / c(10.0)).tan();
            let s = ccw(vec![
                [-b / two, by],
                [b / two, by],
                [b / two + a * t, by + a],
                [b / two, by + two * a],
                [-b / two, by + two * a],
                [-b / two - a * t, by + a],
            ]);
            convex_intersection_area(&s, &q)? / signed_area(&s).sqrt()
        }
        BoundProblem::Heptagon => {
            let (x, a) = (params[0], params[1]);
            let q = regular_polygon(7, T::one(), pi);
            let v01 = (pi + two * pi / c(7.0)).sin();
            let v06 = (pi + c::<T>(4.0) * pi / c(7.0)).sin();
            let side = two * (pi / c(7.0)).sin();
            let h = -(v01 + x * (v06 - v01) / side);
            let rx = (pi / c(7.0)).cos() + a;
            let k = h / (c::<T>(5.0) * pi / c(14.0)).tan();
            let s = ccw(vec![
                [-T::one(), T::zero()],
                [-T::one() + k, -h],
                [rx - k, -h],
                [rx, T::zero()],
                [rx - k, h],
                [-T::one() + k, h],
            ]);
            convex_intersection_area(&s, &q)? / signed_area(&s).sqrt()
        }
        BoundProblem::Octagon => {
            let al = params[0];
            let r = (pi / c(8.0)).sin() / (c::<T>(3.0) * pi / c(8.0)).sin();
            let delta = c::<T>(4.0) * (pi / c(4.0)).sin() - two * (T::one() - al).powi(2) / r;
            delta / (c::<T>(4.0) * al - two * al * al * r).sqrt()
        }
        BoundProblem::Nonagon => {
            let rho = (c::<T>(11.0) * pi / c(18.0)).sin() / (pi / c(3.0)).sin();
            let s = c::<T>(3.0) * sqrt3 / two * rho * rho;
            let delta = s - c::<T>(6.0) * (pi / c(18.0)).sin().powi(2) * (pi / c(9.0)).cos() / (pi / c(3.0)).sin();
            delta / s.sqrt()
        }
        BoundProblem::Decagon => {
            let a = params[0];
            let s10 = (pi / c(10.0)).sin();
            let s5 = (pi / c(5.0)).sin();
            let s25 = (two * pi / c(5.0)).sin();
            let s310 = (c::<T>(3.0) * pi / c(10.0)).sin();
            let s = two * (two * s25 + two * s10 * s5 / s310 - s5 / s310 * a) * a;
            let delta = c::<T>(5.0) * s5 - two * s25 / s10 * (T::one() - a).powi(2);
            delta / s.sqrt()
        }
        BoundProblem::Ngon12k(n) => {
            let n = c::<T>(n as f64);
            (c::<T>(6.0) + n * (T::TAU() / n).sin()) / (two * c::<T>(3.0).powf(c(0.25)) * (sqrt3 + T::one()))
        }
        BoundProblem::Circle => {
            let th = params[0];
            let rho = (th / two).cos() / (pi / c(6.0)).cos();
            (pi - c::<T>(3.0) * th + c::<T>(3.0) * th.sin()) / (c::<T>(1.5) * sqrt3 * rho * rho).sqrt()
        }
    })
}

/// Circle bound with Δ computed by clipping the hexagon against an inscribed 4096-gon.
pub fn circle_lower_by_clipping<T: Float + FloatConst>(theta: T, sides: usize) -> Result<T> {
    let rho = (theta / c(2.0)).cos() / (T::PI() / c(6.0)).cos();
    let hex = regular_polygon(6, rho, T::zero());
    let circle = regular_polygon(sides, T::one(), T::zero());
    Ok(convex_intersection_area(&hex, &circle)? / signed_area(&hex).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult<T> {
    pub problem: BoundProblem,
    pub lower: T,
    pub upper: T,
    pub ratio: T,
    pub argmax: Vec<T>,
}

/// Golden-section maximization on [lo, hi].
pub fn golden_max<T: Float>(f: impl Fn(T) -> T, lo: T, hi: T, tol: T) -> T {
    let g = (c::<T>(5.0).sqrt() - T::one()) / c(2.0);
    let (mut a, mut b) = (lo, hi);
    // Below a few ulps the bracket cannot shrink, whatever tol asks for.
    let tol = tol.max(T::epsilon() * c(8.0) * (lo.abs() + hi.abs()));
    let mut x = b - g * (b - a);
    let mut y = a + g * (b - a);
    let (mut fx, mut fy) = (f(x), f(y));
    while b - a > tol {
        if fx > fy {
            b = y;
            y = x;
            fy = fx;
            x = b - g * (b - a);
            fx = f(x);
        } else {
            a = x;
            x = y;
            fx = fy;
            y = a + g * (b - a);
            fy = f(y);
        }
    }
    (a + b) / c(2.0)
}

fn objective<T: Float + FloatConst>(bp: BoundProblem, p: &[T]) -> T {
    eval_lower_bound(bp, p).unwrap_or(T::neg_infinity())
}

pub fn optimize_bound<T: Float + FloatConst>(bp: BoundProblem) -> BoundResult<T> {
    let ranges = bp.param_ranges::<T>();
    let tol = c::<T>(1e-9);
    let argmax: Vec<T> = match ranges.len() {
        0 => vec![],
        1 => {
            let (lo, hi) = ranges[0];
            let eps = (hi - lo) * c(1e-9);
            vec![golden_max(|v| objective(bp, &[v]), lo + eps, hi, tol)]
        }
        _ => {
            // Grid refinement, then alternating golden-section passes.
            let (mut box0, mut box1) = (ranges[0], ranges[1]);
            let mut best = [box0.0, box1.0];
            let mut best_v = T::neg_infinity();
            for _ in 0..6 {
                let steps = 40;
                for i in 1..=steps {
                    for j in 1..=steps {
                        let x = box0.0 + (box0.1 - box0.0) * c(i as f64 / steps as f64);
                        let a = box1.0 + (box1.1 - box1.0) * c(j as f64 / steps as f64);
                        let v = objective(bp, &[x, a]);
                        if v > best_v {
                            best_v = v;
                            best = [x, a];
                        }
                    }
                }
                let w0 = (box0.1 - box0.0) / c(10.0);
                let w1 = (box1.1 - box1.0) / c(10.0);
                box0 = ((best[0] - w0).max(ranges[0].0), (best[0] + w0).min(ranges[0].1));
                box1 = ((best[1] - w1).max(ranges[1].0), (best[1] + w1).min(ranges[1].1));
            }
            for _ in 0..30 {
                let b1 = best[1];
                best[0] = golden_max(|x| objective(bp, &[x, b1]), box0.0, box0.1, tol);
                let b0 = best[0];
                best[1] = golden_max(|a| objective(bp, &[b0, a]), box1.0, box1.1, tol);
            }
            best.to_vec()
        }
    };
    let lower = objective(bp, &argmax);
    let upper = upper_bound::<T>(bp);
    BoundResult { problem: bp, lower, upper, ratio: lower / upper, argmax }
}

/// One row of the bound table, per unit radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow<T> {
    pub label: String,
    pub upper: T,
    pub lower: T,
    pub ratio: T,
    pub argmax: Vec<T>,
}

/// Every row: n = 3..10 except 11, the multiples of 12 up to 96, and the circle.
pub fn table_bounds<T: Float + FloatConst>() -> Vec<TableRow<T>> {
    let mut rows = Vec::new();
    let mut push = |label: String, bp: BoundProblem, scale: T| {
        let r = optimize_bound::<T>(bp);
        rows.push(TableRow { label, upper: r.upper * scale, lower: r.lower * scale, ratio: r.ratio, argmax: r.argmax });
    };
    // The triangle is solved with unit side; side = √3 · radius.
    push("3".into(), BoundProblem::TriangleEq, c::<T>(3.0).sqrt());
    for (n, bp) in [
        (4, BoundProblem::Square),
        (5, BoundProblem::Pentagon),
        (6, BoundProblem::Hexagon),
        (7, BoundProblem::Heptagon),
        (8, BoundProblem::Octagon),
        (9, BoundProblem::Nonagon),
        (10, BoundProblem::Decagon),
    ] {
        push(n.to_string(), bp, T::one());
    }
    for n in (12..=96).step_by(12) {
        push(n.to_string(), BoundProblem::Ngon12k(n), T::one());
    }
    push("circle".into(), BoundProblem::Circle, T::one());
    rows
}
