//! Named shape families, the tiling-preserving morph, and the hexagonal grid.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::folding::{is_folding_bruteforce, Direction};
use crate::lattice::{Lattice, Point, Shape, Tiling};

/// A shape family with its integer parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeSpec {
    /// `rows × cols`, x in 0..cols and y in 0..rows.
    Rectangle { rows: i64, cols: i64 },
    /// A 1 × len row.
    Strip { len: i64 },
    /// CR(height, width; h2, w2): an h2 × w2 block removed at the upper right.
    Corner { height: i64, width: i64, h2: i64, w2: i64 },
    /// FT(h, width; w1, w3): a 2h-tall rectangle minus h × w1 at the upper
    /// left and h × w3 at the upper right.
    FlippedT { h: i64, width: i64, w1: i64, w3: i64 },
    /// Hexagonal sphere in the square-grid representation.
    HexSphere { radius: i64 },
    /// Staircase quasi-regular hexagon obtained by morphing a rectangle.
    QrHexagonGrid { rows: i64, cols: i64 },
    Custom(Vec<Point>),
}

fn parse_params(s: &str, n: usize) -> Result<Vec<i64>> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(Error::Parse(format!("expected {n} parameters, got {}", v.len())));
    }
    Ok(v)
}

impl FromStr for ShapeSpec {
    type Err = Error;

    /// `rect:3,5`, `strip:11`, `corner:7,11,2,4`, `flippedt:5,17,4,6`, `hexsphere:4`, `qrhex:6,20`.
    fn from_str(s: &str) -> Result<ShapeSpec> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("shape spec {s:?} lacks ':'")))?;
        Ok(match kind {
            "rect" | "rectangle" => {
                let p = parse_params(rest, 2)?;
                ShapeSpec::Rectangle { rows: p[0], cols: p[1] }
            }
            "strip" => ShapeSpec::Strip { len: parse_params(rest, 1)?[0] },
            "corner" => {
                let p = parse_params(rest, 4)?;
                ShapeSpec::Corner { height: p[0], width: p[1], h2: p[2], w2: p[3] }
            }
            "flippedt" | "flipped_t" | "ft" => {
                let p = parse_params(rest, 4)?;
                ShapeSpec::FlippedT { h: p[0], width: p[1], w1: p[2], w3: p[3] }
            }
            "hexsphere" | "hex_sphere" => ShapeSpec::HexSphere { radius: parse_params(rest, 1)?[0] },
            "qrhex" => {
                let p = parse_params(rest, 2)?;
                ShapeSpec::QrHexagonGrid { rows: p[0], cols: p[1] }
            }
            _ => return Err(Error::Parse(format!("unknown shape family {kind:?}"))),
        })
    }
}

impl fmt::Display for ShapeSpec {
    /// The `FromStr` syntax; custom shapes print their cell count only.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeSpec::Rectangle { rows, cols } => write!(f, "rect:{rows},{cols}"),
            ShapeSpec::Strip { len } => write!(f, "strip:{len}"),
            ShapeSpec::Corner { height, width, h2, w2 } => write!(f, "corner:{height},{width},{h2},{w2}"),
            ShapeSpec::FlippedT { h, width, w1, w3 } => write!(f, "flippedt:{h},{width},{w1},{w3}"),
            ShapeSpec::HexSphere { radius } => write!(f, "hexsphere:{radius}"),
            ShapeSpec::QrHexagonGrid { rows, cols } => write!(f, "qrhex:{rows},{cols}"),
            ShapeSpec::Custom(p) => write!(f, "custom({} cells)", p.len()),
        }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidShapeParams(msg)
}

fn grid(cols: i64, rows: i64, keep: impl Fn(i64, i64) -> bool) -> Vec<Point> {
    (0..rows)
        .flat_map(|y| (0..cols).map(move |x| (x, y)))
        .filter(|&(x, y)| keep(x, y))
        .map(|(x, y)| Point::from([x, y]))
        .collect()
}

/// Cells of a family, in its natural frame (lower left at the origin,
/// hexagonal spheres centered at the origin).
pub fn shape_points(spec: &ShapeSpec) -> Result<Vec<Point>> {
    match *spec {
        ShapeSpec::Rectangle { rows, cols } => {
            if rows < 1 || cols < 1 {
                return Err(invalid(format!("rectangle {rows}x{cols} needs positive sides")));
            }
            Ok(grid(cols, rows, |_, _| true))
        }
        ShapeSpec::Strip { len } => shape_points(&ShapeSpec::Rectangle { rows: 1, cols: len }),
        ShapeSpec::Corner { height, width, h2, w2 } => {
            if h2 < 1 || w2 < 1 || h2 >= height || w2 >= width {
                return Err(invalid(format!("corner CR({height},{width};{h2},{w2}) needs 0 < h2 < height and 0 < w2 < width")));
            }
            Ok(grid(width, height, |x, y| !(x >= width - w2 && y >= height - h2)))
        }
        ShapeSpec::FlippedT { h, width, w1, w3 } => {
            if h < 1 || w1 < 0 || w3 < 0 || w1 + w3 >= width {
                return Err(invalid(format!("flipped T FT({h},{width};{w1},{w3}) needs h > 0 and w1 + w3 < width")));
            }
            Ok(grid(width, 2 * h, |x, y| y < h || (x >= w1 && x < width - w3)))
        }
        ShapeSpec::HexSphere { radius: r } => {
            if r < 0 {
                return Err(invalid(format!("radius {r} is negative")));
            }
            Ok((-r..=r)
                .flat_map(|y| (-r..=r).map(move |x| (x, y)))
                .filter(|&(x, y)| (x - y).abs() <= r)
                .map(|(x, y)| Point::from([x, y]))
                .collect())
        }
        ShapeSpec::QrHexagonGrid { rows, cols } => Ok(qr_hexagon_grid(rows, cols)?.points),
        ShapeSpec::Custom(ref pts) => {
            if pts.is_empty() {
                return Err(invalid("custom shape is empty".into()));
            }
            Ok(pts.clone())
        }
    }
}

/// Builds a family member normalized with its center at the origin.
pub fn build_shape(spec: &ShapeSpec) -> Result<Shape> {
    let pts = shape_points(spec)?;
    match spec {
        ShapeSpec::HexSphere { .. } => Shape::with_center(pts, Point::origin(2)),
        _ => Shape::new(pts),
    }
}

/// Closed-form cell count of a family member.
pub fn expected_size(spec: &ShapeSpec) -> Option<i64> {
    Some(match *spec {
        ShapeSpec::Rectangle { rows, cols } => rows * cols,
        ShapeSpec::Strip { len } => len,
        ShapeSpec::Corner { height, width, h2, w2 } => height * width - h2 * w2,
        ShapeSpec::FlippedT { h, width, w1, w3 } => 2 * h * width - h * w1 - h * w3,
        ShapeSpec::HexSphere { radius: r } => (2 * r + 1).pow(2) - r * (r + 1),
        ShapeSpec::QrHexagonGrid { rows, cols } => rows * cols,
        ShapeSpec::Custom(_) => return None,
    })
}

/// Replaces p + δ − c(p + δ) by p + δ. The result is re-verified as a
/// tiling and a folding; it is re-centered at its smallest point only if
/// the move removed the origin.
pub fn morph_shape(t: &Tiling, delta: &Direction, p: &Point) -> Result<Tiling> {
    if !is_folding_bruteforce(t, delta)? {
        return Err(Error::MorphNotApplicable(format!("{delta} does not fold")));
    }
    let s = t.shape();
    if !s.contains(p) {
        return Err(Error::MorphNotApplicable(format!("{p} is not in the shape")));
    }
    let q = p + delta.point();
    if s.contains(&q) {
        return Err(Error::MorphNotApplicable(format!("{q} is already in the shape")));
    }
    let r = t.reduce(&q).clone();
    let mut pts: Vec<Point> = s.points().iter().filter(|x| **x != r).cloned().collect();
    pts.push(q);
    let shape = if r.is_origin() { Shape::new(pts)? } else { Shape::with_center(pts, Point::origin(s.dim()))? };
    let out = Tiling::new(t.lattice().clone(), shape)
        .map_err(|e| Error::InternalInconsistency(format!("morph broke the tiling: {e}")))?;
    if !is_folding_bruteforce(&out, delta)? {
        return Err(Error::InternalInconsistency("morph broke the folding".into()));
    }
    Ok(out)
}

/// Result of a greedy morph sequence, in the caller's coordinate frame.
#[derive(Clone, Debug)]
pub struct MorphOutcome {
    /// Final cells in the original frame.
    pub points: Vec<Point>,
    /// (added, removed) per step.
    pub steps: Vec<(Point, Point)>,
    /// Cells in exactly one of the final set and the target.
    pub symmetric_difference: usize,
    /// Final tiling, re-centered at its smallest point.
    pub tiling: Tiling,
}

/// Greedy morph toward a target silhouette: each step moves along ±δ the
/// cell that most reduces the symmetric difference, stopping when no move helps.
pub fn morph_toward(t: &Tiling, delta: &Direction, target: &[Point], max_steps: usize) -> Result<MorphOutcome> {
    if !is_folding_bruteforce(t, delta)? {
        return Err(Error::MorphNotApplicable(format!("{delta} does not fold")));
    }
    let lat = t.lattice();
    let target: HashSet<&Point> = target.iter().collect();
    let mut cur: BTreeSet<Point> = t.shape().points().iter().cloned().collect();
    let mut by_coset: HashMap<u64, Point> = cur.iter().map(|p| (lat.coset_of(p.coords()), p.clone())).collect();
    let mut sym = cur.iter().filter(|p| !target.contains(p)).count() + target.iter().filter(|p| !cur.contains(**p)).count();
    let steps_dirs = [delta.point().clone(), delta.reversed().point().clone()];
    let mut steps = Vec::new();
    while steps.len() < max_steps {
        let mut best: Option<(i64, Point, Point)> = None;
        for p in &cur {
            for d in &steps_dirs {
                let q = p + d;
                if cur.contains(&q) {
                    continue;
                }
                let r = &by_coset[&lat.coset_of(q.coords())];
                let gain = if target.contains(&q) { -1 } else { 1 } + if target.contains(r) { 1 } else { -1 };
                let cand = (gain, q, r.clone());
                if best.as_ref().is_none_or(|b| (cand.0, &cand.1) < (b.0, &b.1)) {
                    best = Some(cand);
                }
            }
        }
        match best {
            Some((gain, q, r)) if gain < 0 => {
                cur.remove(&r);
                by_coset.insert(lat.coset_of(q.coords()), q.clone());
                cur.insert(q.clone());
                sym = (sym as i64 + gain) as usize;
                steps.push((q, r));
            }
            _ => break,
        }
    }
    let points: Vec<Point> = cur.into_iter().collect();
    let tiling = Tiling::new(lat.clone(), Shape::new(points.clone())?)
        .map_err(|e| Error::InternalInconsistency(format!("morph broke the tiling: {e}")))?;
    if !is_folding_bruteforce(&tiling, delta)? {
        return Err(Error::InternalInconsistency("morph broke the folding".into()));
    }
    Ok(MorphOutcome { points, steps, symmetric_difference: sym, tiling })
}

/// Target silhouette for the corner-to-hexagon transfer: the staircase
/// triangle with `legs` cells at the lower left of CR(h1 + h2, w1 + w2; h2, w2)
/// moved into the removed block at the upper right.
pub fn corner_transfer_target(h1: i64, h2: i64, w1: i64, w2: i64, legs: i64) -> Result<Vec<Point>> {
    if legs > w2 || legs > h2 || legs > h1 || legs > w1 {
        return Err(invalid(format!("triangle legs {legs} exceed the corner parameters")));
    }
    let mut pts = shape_points(&ShapeSpec::Corner { height: h1 + h2, width: w1 + w2, h2, w2 })?;
    pts.retain(|p| p.0[0] + p.0[1] >= legs);
    for i in 0..legs {
        for j in 0..legs - i {
            pts.push(Point::from([w1 + i, h1 + j]));
        }
    }
    pts.sort();
    Ok(pts)
}

/// A grid quasi-regular hexagon: the n1 × n2 rectangle (n1 even) with the
/// lattice [[n2, n1/2 + θ], [0, n1]], morphed along (+1, 0) toward the
/// hexagon of equal area whose left and right vertices sit at mid-height.
pub struct QrHexagon {
    pub points: Vec<Point>,
    pub lattice: Lattice,
    pub direction: Direction,
    pub symmetric_difference: usize,
}

/// Lattice [[n2, n1/2 + θ], [0, n1]] with θ = 1 if n1 ≡ 0 (mod 4) and θ = 2 if n1 ≡ 2 (mod 4).
pub fn rectangle_lattice(n1: i64, n2: i64) -> Result<Lattice> {
    if n1 < 2 || n1 % 2 != 0 || n2 < 1 {
        return Err(Error::ParamsNotAdmissible(format!("rectangle needs even n1 >= 2 and n2 >= 1, got {n1}x{n2}")));
    }
    let theta = if n1 % 4 == 0 { 1 } else { 2 };
    Lattice::new(vec![vec![n2, n1 / 2 + theta], vec![0, n1]])
}

pub fn qr_hexagon_grid(n1: i64, n2: i64) -> Result<QrHexagon> {
    let lattice = rectangle_lattice(n1, n2).map_err(|e| invalid(e.to_string()))?;
    let direction = Direction::from_slice(&[1, 0])?;
    let rect = Shape::new(grid(n2, n1, |_, _| true))?;
    let t = Tiling::new(lattice.clone(), rect)?;
    let h = n1 as f64;
    let c = h / (2.0 * 3f64.sqrt());
    let w = n2 as f64;
    let inside = |x: f64, y: f64| {
        let dy = (y - h / 2.0).abs();
        let left = c * dy / (h / 2.0);
        x >= c - left && x <= w + c - left
    };
    let target: Vec<Point> = (0..n1)
        .flat_map(|y| (-1..n2 + 2).map(move |x| (x, y)))
        .filter(|&(x, y)| inside(x as f64 + 0.5, y as f64 + 0.5))
        .map(|(x, y)| Point::from([x, y]))
        .collect();
    let out = morph_toward(&t, &direction, &target, (n1 * n2) as usize)?;
    Ok(QrHexagon { points: out.points, lattice, direction, symmetric_difference: out.symmetric_difference })
}

/// A point of the hexagonal grid in its Z² representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexPoint {
    pub x: i64,
    pub y: i64,
}

pub const HEX_OFFSETS: [(i64, i64); 6] = [(-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1)];

pub fn hex_rep_neighbors(p: HexPoint) -> [HexPoint; 6] {
    HEX_OFFSETS.map(|(dx, dy)| HexPoint { x: p.x + dx, y: p.y + dy })
}

/// Hex-grid distance in the Z² representation.
pub fn hex_distance(a: HexPoint, b: HexPoint) -> i64 {
    let (dx, dy) = (a.x - b.x, a.y - b.y);
    dx.abs().max(dy.abs()).max((dx - dy).abs())
}

/// ξ(x, y) = (x + y/√3, 2y/√3). Rendering only.
pub fn hex_to_square<T: Float>(x: T, y: T) -> (T, T) {
    let s3 = T::from(3.0).expect("float").sqrt();
    let two = T::one() + T::one();
    (x + y / s3, two * y / s3)
}
