//! Distinct-difference configurations obtained by folding B2 sets, their
//! doubly periodic extensions, and the rectangle / corner / flipped-T families.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields_seq::{bose_b2, is_prime, B2Set};
use crate::folding::{is_folding_2d, lattice_coloring, Coloring, Direction};
use crate::lattice::{check_dim, Lattice, Point, Shape, Tiling};
use crate::shapes::{build_shape, ShapeSpec};

/// Default cap on (shift, cell) checks for periodic sweeps.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Largest period box that [`build_periodic`] will materialize.
pub const MAX_PERIOD_CELLS: u64 = 10_000_000;

/// Dots on the cells of a shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotPattern {
    pub shape: Shape,
    pub dots: Vec<Point>,
}

/// Row-major order: last coordinate most significant.
pub fn row_major_sort(points: &mut [Point]) {
    points.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
}

impl DotPattern {
    pub fn new(shape: Shape, dots: Vec<Point>) -> Result<DotPattern> {
        if let Some(p) = dots.iter().find(|p| !shape.contains(p)) {
            return Err(Error::ParamOutOfRange(format!("dot {p} lies outside the shape")));
        }
        let mut dots = dots;
        row_major_sort(&mut dots);
        dots.dedup();
        Ok(DotPattern { shape, dots })
    }

    pub fn is_ddc(&self) -> bool {
        verify_ddc(&self.dots)
    }

    pub fn ascii(&self) -> String {
        render_ascii(self.shape.points(), &self.dots)
    }
}

/// Dot at x iff color(x) lies in `marks`. `marks` need not be a B2 set.
pub fn fold_marks(t: &Tiling, delta: &Direction, marks: &[u64]) -> Result<DotPattern> {
    let coloring = lattice_coloring(t, delta)?;
    let n = coloring.modulus();
    if let Some(&m) = marks.iter().find(|&&m| m >= n) {
        return Err(Error::ParamOutOfRange(format!("mark {m} is not a residue mod {n}")));
    }
    let set: HashSet<u64> = marks.iter().copied().collect();
    let dots = t.shape().points().iter().filter(|p| set.contains(&coloring.color(p))).cloned().collect();
    DotPattern::new(t.shape().clone(), dots)
}

pub fn fold_dots(t: &Tiling, delta: &Direction, b: &B2Set) -> Result<DotPattern> {
    if b.n != t.size() as u64 {
        return Err(Error::ModulusMismatch { expected: t.size() as u64, got: b.n });
    }
    fold_marks(t, delta, &b.elements)
}

/// True iff all ordered difference vectors between distinct dots differ.
pub fn verify_ddc(dots: &[Point]) -> bool {
    let mut seen = HashSet::with_capacity(dots.len() * dots.len());
    for (i, a) in dots.iter().enumerate() {
        for (j, b) in dots.iter().enumerate() {
            if i != j && !seen.insert(a - b) {
                return false;
            }
        }
    }
    true
}

/// A multi-periodic dot pattern, stored as the dots of one period box.
#[derive(Clone, Debug)]
pub struct PeriodicPattern {
    period: Vec<i64>,
    dots: Vec<Point>,
    present: Vec<bool>,
    density: Ratio<u64>,
    symmetry: Option<Lattice>,
}

/// JSON form `{"period": [...], "dots": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternFile {
    pub period: Vec<i64>,
    pub dots: Vec<Point>,
}

impl PeriodicPattern {
    pub fn new(period: Vec<i64>, dots: Vec<Point>) -> Result<PeriodicPattern> {
        if period.is_empty() || period.iter().any(|&h| h < 1) {
            return Err(Error::ParamOutOfRange(format!("period {period:?} must be positive")));
        }
        let cells = period.iter().try_fold(1u64, |acc, &h| acc.checked_mul(h as u64)).unwrap_or(u64::MAX);
        if cells > MAX_PERIOD_CELLS {
            return Err(Error::TooLarge { cost: cells, budget: MAX_PERIOD_CELLS });
        }
        let mut present = vec![false; cells as usize];
        let mut uniq = Vec::with_capacity(dots.len());
        for d in dots {
            check_dim(period.len(), d.dim())?;
            if d.0.iter().zip(&period).any(|(&x, &h)| x < 0 || x >= h) {
                return Err(Error::ParamOutOfRange(format!("dot {d} lies outside the period box")));
            }
            let i = box_index(&period, &d.0);
            if !present[i] {
                present[i] = true;
                uniq.push(d);
            }
        }
        row_major_sort(&mut uniq);
        let density = Ratio::new(uniq.len() as u64, cells);
        Ok(PeriodicPattern { period, dots: uniq, present, density, symmetry: None })
    }

    /// Declares that the pattern is invariant under translation by `lat`;
    /// checked over the period box.
    pub fn with_symmetry(mut self, lat: Lattice) -> Result<PeriodicPattern> {
        check_dim(self.dim(), lat.dim())?;
        for i in 0..lat.dim() {
            let b = lat.basis(i);
            if self.dots.iter().any(|d| !self.contains(&(d + &b))) {
                return Err(Error::ParamOutOfRange(format!("pattern is not invariant under {b}")));
            }
        }
        self.symmetry = Some(lat);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.period.len()
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn dots(&self) -> &[Point] {
        &self.dots
    }

    /// Dots per cell, exact.
    pub fn density(&self) -> Ratio<u64> {
        self.density
    }

    pub fn symmetry(&self) -> Option<&Lattice> {
        self.symmetry.as_ref()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.contains_coords(&p.0)
    }

    fn contains_coords(&self, p: &[i64]) -> bool {
        let r: Vec<i64> = p.iter().zip(&self.period).map(|(&x, &h)| x.mod_floor(&h)).collect();
        self.present[box_index(&self.period, &r)]
    }

    pub fn to_file(&self) -> PatternFile {
        PatternFile { period: self.period.clone(), dots: self.dots.clone() }
    }

    /// Base points whose shifts cover every distinct window: coset
    /// representatives when a symmetry lattice is known, else the period box.
    pub fn base_points(&self) -> Vec<Point> {
        match &self.symmetry {
            Some(l) => (0..l.volume()).map(|i| l.coset_representative(i)).collect(),
            None => box_points(&self.period),
        }
    }

    /// Image under one of the eight grid symmetries (2-D only).
    pub fn transformed(&self, sym: usize) -> Result<PeriodicPattern> {
        if self.dim() != 2 {
            return Err(Error::DimensionError { expected: 2, got: self.dim() });
        }
        let g = SYMMETRIES[sym % 8];
        let period = if g[0][0] == 0 { vec![self.period[1], self.period[0]] } else { self.period.clone() };
        let dots = self
            .dots
            .iter()
            .map(|d| {
                let q = apply_sym(g, d);
                Point::new(q.0.iter().zip(&period).map(|(&x, &h)| x.mod_floor(&h)).collect())
            })
            .collect();
        let out = PeriodicPattern::new(period, dots)?;
        match &self.symmetry {
            Some(l) => {
                let gen: Vec<Vec<i64>> = (0..2).map(|i| apply_sym(g, &l.basis(i)).0).collect();
                out.with_symmetry(Lattice::new(gen)?)
            }
            None => Ok(out),
        }
    }

    /// ASCII render of the window [0, w) × [0, h).
    pub fn ascii_window(&self, w: i64, h: i64) -> String {
        let cells: Vec<Point> = (0..h).flat_map(|y| (0..w).map(move |x| Point::from([x, y]))).collect();
        let dots: Vec<Point> = cells.iter().filter(|p| self.contains(p)).cloned().collect();
        render_ascii(&cells, &dots)
    }
}

impl TryFrom<PatternFile> for PeriodicPattern {
    type Error = Error;
    fn try_from(f: PatternFile) -> Result<PeriodicPattern> {
        PeriodicPattern::new(f.period, f.dots)
    }
}

fn box_index(period: &[i64], p: &[i64]) -> usize {
    p.iter().zip(period).rev().fold(0usize, |acc, (&x, &h)| acc * h as usize + x as usize)
}

fn box_points(period: &[i64]) -> Vec<Point> {
    let mut out = vec![Point::new(vec![])];
    for &h in period {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..h).map(move |x| {
                    let mut c = p.0.clone();
                    c.push(x);
                    Point::new(c)
                })
            })
            .collect();
    }
    out
}

/// Period (n, …, n) with n = |S|; a grid point carries a dot iff its color lies in `b`.
pub fn build_periodic(t: &Tiling, delta: &Direction, b: &B2Set) -> Result<PeriodicPattern> {
    if b.n != t.size() as u64 {
        return Err(Error::ModulusMismatch { expected: t.size() as u64, got: b.n });
    }
    let coloring = lattice_coloring(t, delta)?;
    periodic_from_coloring(&coloring, &b.elements)
}

pub fn periodic_from_coloring(coloring: &Coloring, marks: &[u64]) -> Result<PeriodicPattern> {
    let n = coloring.modulus() as i64;
    let dim = coloring.shape().dim();
    let cells = (n as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if cells > MAX_PERIOD_CELLS {
        return Err(Error::TooLarge { cost: cells, budget: MAX_PERIOD_CELLS });
    }
    let set: HashSet<u64> = marks.iter().copied().collect();
    let period = vec![n; dim];
    let dots = box_points(&period).into_iter().filter(|p| set.contains(&coloring.color(p))).collect();
    PeriodicPattern::new(period, dots)?.with_symmetry(coloring.tiling().lattice().clone())
}

fn sweep_cost(shifts: usize, cells: usize, variants: usize) -> u64 {
    (shifts as u64).saturating_mul(cells as u64).saturating_mul(variants as u64)
}

/// Checks that every shift of `s` holds a DDC. Shifts are taken over one
/// period box, or over the coset representatives of the pattern's
/// symmetry lattice when one is known. Cost is shifts × |S|.
pub fn verify_periodic_sddc(pp: &PeriodicPattern, s: &Shape, budget: u64) -> Result<bool> {
    check_dim(pp.dim(), s.dim())?;
    let bases = pp.base_points();
    let cost = sweep_cost(bases.len(), s.len(), 1);
    if cost > budget {
        return Err(Error::TooLarge { cost, budget });
    }
    Ok(bases.iter().all(|b| {
        let dots: Vec<Point> = s.points().iter().map(|p| b + p).filter(|p| pp.contains(p)).collect();
        verify_ddc(&dots)
    }))
}

/// The eight symmetries of the square grid as row-major 2×2 matrices.
pub const SYMMETRIES: [[[i64; 2]; 2]; 8] = [
    [[1, 0], [0, 1]],
    [[0, -1], [1, 0]],
    [[-1, 0], [0, -1]],
    [[0, 1], [-1, 0]],
    [[-1, 0], [0, 1]],
    [[1, 0], [0, -1]],
    [[0, 1], [1, 0]],
    [[0, -1], [-1, 0]],
];

pub fn apply_sym(g: [[i64; 2]; 2], p: &Point) -> Point {
    Point::from([g[0][0] * p.0[0] + g[0][1] * p.0[1], g[1][0] * p.0[0] + g[1][1] * p.0[1]])
}

fn variants(q: &[Point], symmetries: bool) -> Vec<(usize, Vec<Point>)> {
    if !symmetries || q.first().is_none_or(|p| p.dim() != 2) {
        return vec![(0, q.to_vec())];
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, g) in SYMMETRIES.iter().enumerate() {
        let mut img: Vec<Point> = q.iter().map(|p| apply_sym(*g, p)).collect();
        img.sort();
        if seen.insert(img.clone()) {
            out.push((i, img));
        }
    }
    out
}

/// A placement of a query shape over a periodic pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub offset: Point,
    pub symmetry: usize,
    pub count: usize,
    pub dots: Vec<Point>,
}

/// Translation (and optionally grid symmetry) of `q` holding the most dots.
/// Ties go to the first symmetry, then the smallest offset.
pub fn best_placement(pp: &PeriodicPattern, q: &Shape, symmetries: bool, budget: u64) -> Result<Placement> {
    check_dim(pp.dim(), q.dim())?;
    let bases = pp.base_points();
    let vars = variants(q.points(), symmetries);
    let cost = sweep_cost(bases.len(), q.len(), vars.len());
    if cost > budget {
        return Err(Error::TooLarge { cost, budget });
    }
    let mut best: Option<Placement> = None;
    for (sym, img) in &vars {
        for b in &bases {
            let count = img.iter().filter(|p| pp.contains(&(b + *p))).count();
            if best.as_ref().is_none_or(|x| count > x.count) {
                best = Some(Placement { offset: b.clone(), symmetry: *sym, count, dots: vec![] });
            }
        }
    }
    let mut best = best.ok_or_else(|| Error::ParamOutOfRange("empty query shape".into()))?;
    let img = &vars.iter().find(|v| v.0 == best.symmetry).expect("variant").1;
    best.dots = img.iter().map(|p| &best.offset + p).filter(|p| pp.contains(p)).collect();
    row_major_sort(&mut best.dots);
    Ok(best)
}

/// Largest overlap |S ∩ (t + g·Q)| over translations t and, optionally, grid symmetries g.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub count: usize,
    pub offset: Point,
    pub symmetry: usize,
}

pub fn discrete_overlap(s: &Shape, q: &Shape, symmetries: bool) -> Result<Overlap> {
    check_dim(s.dim(), q.dim())?;
    let mut best = Overlap { count: 0, offset: Point::origin(s.dim()), symmetry: 0 };
    for (sym, img) in variants(q.points(), symmetries) {
        let mut tried = HashSet::new();
        for a in s.points() {
            for b in &img {
                let t = a - b;
                if !tried.insert(t.clone()) {
                    continue;
                }
                let count = img.iter().filter(|p| s.contains(&(&t + *p))).count();
                if count > best.count {
                    best = Overlap { count, offset: t, symmetry: sym };
                }
            }
        }
    }
    Ok(best)
}

/// Families with a closed-form lattice and folding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Rectangle,
    Corner,
    FlippedT,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "rectangle" | "rect" => Ok(Family::Rectangle),
            "corner" => Ok(Family::Corner),
            "flipped_t" | "flippedt" | "ft" => Ok(Family::FlippedT),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Rectangle => "rectangle",
            Family::Corner => "corner",
            Family::FlippedT => "flipped_t",
        })
    }
}

/// A family request. Unset fields take the defaults of [`default_n1`] and
/// the width rules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRequest {
    pub p: u64,
    pub n1: Option<i64>,
    /// Corner only: explicit widths, bypassing the width rules.
    pub w1: Option<i64>,
    pub w2: Option<i64>,
}

/// Geometry of a family member before folding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyLayout {
    pub family: Family,
    pub p: u64,
    pub n1: i64,
    pub n2: i64,
    pub spec: ShapeSpec,
    pub generator: Vec<Vec<i64>>,
    pub direction: Vec<i64>,
}

fn not_admissible(msg: String) -> Error {
    Error::ParamsNotAdmissible(msg)
}

fn split_area(p: u64, n1: i64) -> Result<i64> {
    if !is_prime(p) {
        return Err(not_admissible(format!("p = {p} is not prime")));
    }
    let area = (p * p - 1) as i64;
    if n1 < 2 || n1 % 2 != 0 {
        return Err(not_admissible(format!("n1 = {n1} must be even")));
    }
    if area % n1 != 0 {
        return Err(not_admissible(format!("n1 = {n1} does not divide p^2 - 1 = {area}")));
    }
    Ok(area / n1)
}

/// Corner widths (w1, w2) from n2 by the three residue rules mod 3.
pub fn corner_widths(n2: i64) -> (i64, i64) {
    let w = n2 / 3;
    match n2 % 3 {
        1 => (w, w + 1),
        2 => (w + 1, w),
        _ if (w - 1) % 3 == 0 => (w + 1, w - 2),
        _ => (w - 1, w + 2),
    }
}

/// Flipped-T widths (w1, w3) from n2 and w2 by the residue rules mod 4.
pub fn flipped_t_widths(n2: i64, w2: i64) -> Result<(i64, i64)> {
    let w = n2 / 4;
    match n2 % 4 {
        0 => Ok((2 * w + 1 - w2, 2 * w - 1 - w2)),
        2 => Ok((2 * w + 3 - w2, 2 * w - 1 - w2)),
        _ => Err(not_admissible(format!("n2 = {n2} must be even"))),
    }
}

pub fn family_layout(family: Family, req: &FamilyRequest) -> Result<FamilyLayout> {
    let p = req.p;
    let n1 = match req.n1 {
        Some(n) => n,
        None => default_n1(family, p)?,
    };
    let n2 = split_area(p, n1)?;
    let (spec, generator, direction) = match family {
        Family::Rectangle => {
            let theta = if n1 % 4 == 0 { 1 } else { 2 };
            (ShapeSpec::Rectangle { rows: n1, cols: n2 }, vec![vec![n2, n1 / 2 + theta], vec![0, n1]], vec![1, 0])
        }
        Family::Corner => {
            let (w1, w2) = match (req.w1, req.w2) {
                (Some(a), Some(b)) => {
                    if 2 * a + b != n2 {
                        return Err(not_admissible(format!("2*w1 + w2 = {} differs from n2 = {n2}", 2 * a + b)));
                    }
                    (a, b)
                }
                _ => corner_widths(n2),
            };
            if w1 < 1 || w2 < 1 {
                return Err(not_admissible(format!("widths w1 = {w1}, w2 = {w2} must be positive")));
            }
            let g = w1.gcd(&w2);
            if g != 1 {
                return Err(not_admissible(format!("gcd(w1, w2) = gcd({w1}, {w2}) = {g}")));
            }
            (
                ShapeSpec::Corner { height: 2 * n1, width: w1 + w2, h2: n1, w2 },
                vec![vec![w1, n1], vec![-w2, 2 * n1]],
                vec![0, 1],
            )
        }
        Family::FlippedT => {
            let w2 = req.w2.unwrap_or(n2 / 4);
            let (w1, w3) = flipped_t_widths(n2, w2)?;
            if w2 < 1 || w1 < 1 || w3 < 1 {
                return Err(not_admissible(format!("widths w1 = {w1}, w2 = {w2}, w3 = {w3} must be positive")));
            }
            let g = (w1 + w2).gcd(&(w2 + w3));
            if g != 1 {
                return Err(not_admissible(format!("gcd(w1 + w2, w2 + w3) = {g}")));
            }
            (
                ShapeSpec::FlippedT { h: n1, width: w1 + w2 + w3, w1, w3 },
                vec![vec![w1 + w2, n1], vec![w1 + 2 * w2 + w3, 0]],
                vec![0, 1],
            )
        }
    };
    Ok(FamilyLayout { family, p, n1, n2, spec, generator, direction })
}

/// Default n1: the most square rectangle; for a corner, n2 closest to 3·n1;
/// for a flipped T, n2 closest to 4·n1. Only admissible choices are considered.
pub fn default_n1(family: Family, p: u64) -> Result<i64> {
    if !is_prime(p) || p < 3 {
        return Err(not_admissible(format!("p = {p} must be an odd prime")));
    }
    let area = (p * p - 1) as i64;
    let target = |n1: i64| -> i64 {
        let n2 = area / n1;
        match family {
            Family::Rectangle => (n1 - n2).abs(),
            Family::Corner => (n2 - 3 * n1).abs(),
            Family::FlippedT => (n2 - 4 * n1).abs(),
        }
    };
    (2..=area)
        .step_by(2)
        .filter(|n1| area % n1 == 0)
        .filter(|&n1| family_layout(family, &FamilyRequest { p, n1: Some(n1), ..Default::default() }).is_ok())
        .min_by_key(|&n1| (target(n1), n1))
        .ok_or_else(|| not_admissible(format!("no admissible n1 for the {family} family with p = {p}")))
}

/// All admissible (p, n1) with p ≤ p_max for a family, default widths.
pub fn admissible_params(family: Family, p_max: u64) -> Vec<FamilyLayout> {
    let mut out = Vec::new();
    for p in (3..=p_max).filter(|&p| is_prime(p)) {
        let area = (p * p - 1) as i64;
        for n1 in (2..=area).step_by(2).filter(|n1| area % n1 == 0) {
            if let Ok(l) = family_layout(family, &FamilyRequest { p, n1: Some(n1), ..Default::default() }) {
                out.push(l);
            }
        }
    }
    out
}

/// A verified family member.
#[derive(Clone, Debug)]
pub struct DdcInstance {
    pub layout: FamilyLayout,
    pub tiling: Tiling,
    pub direction: Direction,
    pub b2: B2Set,
    pub pattern: DotPattern,
}

impl DdcInstance {
    pub fn periodic(&self) -> Result<PeriodicPattern> {
        build_periodic(&self.tiling, &self.direction, &self.b2)
    }
}

/// Builds the family member, folds Bose's set for p into it, and checks the result.
pub fn construct_ddc_family(family: Family, req: &FamilyRequest) -> Result<DdcInstance> {
    let layout = family_layout(family, req)?;
    let lattice = Lattice::new(layout.generator.clone())?;
    let shape = build_shape(&layout.spec)?;
    let tiling = Tiling::new(lattice, shape)?;
    let direction = Direction::from_slice(&layout.direction)?;
    if !is_folding_2d(tiling.lattice(), &direction)? {
        return Err(not_admissible(format!("{direction} does not fold the {family} lattice")));
    }
    let b2 = bose_b2(layout.p)?;
    let pattern = fold_dots(&tiling, &direction, &b2)?;
    if pattern.dots.len() as u64 != layout.p || !pattern.is_ddc() {
        return Err(Error::InternalInconsistency(format!("{family} pattern for p = {} failed verification", layout.p)));
    }
    Ok(DdcInstance { layout, tiling, direction, b2, pattern })
}

/// One text row per grid row, top row first: '•' dot, '·' empty cell,
/// ' ' outside the shape. 2-D only; other dimensions render as a dot list.
pub fn render_ascii(cells: &[Point], dots: &[Point]) -> String {
    if cells.first().is_none_or(|p| p.dim() != 2) {
        return dots.iter().map(|d| format!("{d}\n")).collect();
    }
    let cellset: HashSet<&Point> = cells.iter().collect();
    let dotset: HashSet<&Point> = dots.iter().collect();
    let (x0, x1) = bounds(cells.iter().map(|p| p.0[0]));
    let (y0, y1) = bounds(cells.iter().map(|p| p.0[1]));
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        let mut line: String = (x0..=x1)
            .map(|x| {
                let p = Point::from([x, y]);
                if dotset.contains(&p) {
                    '•'
                } else if cellset.contains(&p) {
                    '·'
                } else {
                    ' '
                }
            })
            .collect();
        line.truncate(line.trim_end().len());
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Plain PBM (P1): black pixels are dots, top row first.
pub fn render_pbm(cells: &[Point], dots: &[Point]) -> String {
    let (x0, x1) = bounds(cells.iter().map(|p| p.0[0]));
    let (y0, y1) = bounds(cells.iter().map(|p| p.0[1]));
    let dotset: HashSet<&Point> = dots.iter().collect();
    let mut out = format!("P1\n{} {}\n", x1 - x0 + 1, y1 - y0 + 1);
    for y in (y0..=y1).rev() {
        let row: Vec<&str> =
            (x0..=x1).map(|x| if dotset.contains(&Point::from([x, y])) { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn bounds(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ddc_cases() {
        assert!(verify_ddc(&[]));
        assert!(verify_ddc(&[[0, 0].into(), [3, 1].into()]));
        let square: Vec<Point> = vec![[0, 0].into(), [1, 0].into(), [0, 1].into(), [1, 1].into()];
        assert!(!verify_ddc(&square));
    }

    #[test]
    fn width_rules() {
        assert_eq!(corner_widths(12), (5, 2));
        assert_eq!(corner_widths(13), (4, 5));
        assert_eq!(corner_widths(14), (5, 4));
        assert_eq!(corner_widths(15), (4, 7));
        assert_eq!(flipped_t_widths(12, 3).unwrap(), (4, 2));
    }

    #[test]
    fn corner_gcd_rejected() {
        let req = FamilyRequest { p: 7, n1: Some(2), w1: Some(10), w2: Some(4) };
        match family_layout(Family::Corner, &req) {
            Err(Error::ParamsNotAdmissible(msg)) => assert!(msg.contains("gcd")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn periodic_roundtrip_and_symmetry() {
        let inst = construct_ddc_family(Family::Rectangle, &FamilyRequest { p: 5, n1: Some(4), ..Default::default() }).unwrap();
        let pp = inst.periodic().unwrap();
        assert_eq!(pp.density(), Ratio::new(5, 24));
        let back = PeriodicPattern::try_from(pp.to_file()).unwrap();
        assert_eq!(back.dots(), pp.dots());
        let flipped = pp.transformed(4).unwrap();
        let mirrored = Shape::new(inst.tiling.shape().points().iter().map(|p| apply_sym(SYMMETRIES[4], p)).collect()).unwrap();
        assert!(verify_periodic_sddc(&flipped, &mirrored, DEFAULT_BUDGET).unwrap());
        assert_eq!(flipped.dots().len(), pp.dots().len());
    }

    #[test]
    fn render_marks() {
        let s = build_shape(&ShapeSpec::Rectangle { rows: 2, cols: 3 }).unwrap();
        let txt = render_ascii(s.points(), &[[0, 0].into(), [2, 1].into()]);
        assert_eq!(txt, "··•\n•··\n");
        assert!(render_pbm(s.points(), &[[0, 0].into()]).starts_with("P1\n3 2\n0 0 0\n1 0 0"));
    }
}
