//! Pseudo-random arrays: M-sequences folded into shapes.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields_seq::MSequence;
use crate::folding::{lattice_coloring, Coloring, Direction};
use crate::lattice::{Point, Shape, Tiling};

/// A binary sequence of length |S| laid along the folded row of (Λ, S, δ).
/// Every grid point x carries bits[(color(x) + shift) mod n].
#[derive(Clone, Debug)]
pub struct FoldedArray {
    coloring: Coloring,
    bits: Vec<u8>,
    shift: u64,
}

pub fn fold_msequence(t: &Tiling, delta: &Direction, m: &MSequence) -> Result<FoldedArray> {
    fold_bits(t, delta, &m.bits)
}

pub fn fold_bits(t: &Tiling, delta: &Direction, bits: &[u8]) -> Result<FoldedArray> {
    if bits.len() != t.size() {
        return Err(Error::LengthMismatch { expected: t.size(), got: bits.len() });
    }
    let coloring = lattice_coloring(t, delta)?;
    Ok(FoldedArray { coloring, bits: bits.iter().map(|b| b & 1).collect(), shift: 0 })
}

impl FoldedArray {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn shape(&self) -> &Shape {
        self.coloring.shape()
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// Bit at any grid point of the periodic extension.
    pub fn value(&self, p: &Point) -> u8 {
        self.value_at(&p.0)
    }

    fn value_at(&self, p: &[i64]) -> u8 {
        let n = self.bits.len() as u64;
        self.bits[((self.coloring.color_of(p) + self.shift) % n) as usize]
    }

    /// Bits along the folded row.
    pub fn row_bits(&self) -> Vec<u8> {
        let n = self.bits.len();
        (0..n).map(|i| self.bits[(i + self.shift as usize) % n]).collect()
    }

    /// Bits on the shape cells, in the shape's point order.
    pub fn cell_bits(&self) -> Vec<u8> {
        self.shape().points().iter().map(|p| self.value(p)).collect()
    }

    /// Rotates the folded row by t positions.
    pub fn cyclic_shift(&self, t: i64) -> FoldedArray {
        let n = self.bits.len() as i64;
        let shift = (self.shift as i64 + t).rem_euclid(n) as u64;
        FoldedArray { shift, ..self.clone() }
    }

    /// Rows of 0/1, top row first, ' ' outside the shape (2-D only).
    pub fn render(&self) -> String {
        let s = self.shape();
        let (lo, hi) = s.bounding_box();
        if s.dim() != 2 {
            return self.row_bits().iter().map(|b| b.to_string()).collect::<String>() + "\n";
        }
        let mut out = String::new();
        for y in (lo[1]..=hi[1]).rev() {
            let line: String = (lo[0]..=hi[0])
                .map(|x| {
                    let p = Point::from([x, y]);
                    if s.contains(&p) {
                        char::from(b'0' + self.value(&p))
                    } else {
                        ' '
                    }
                })
                .collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// Rows bottom to top as 0/1 strings (2-D only).
    pub fn rows_bottom_up(&self) -> Vec<String> {
        let mut v: Vec<String> = self.render().lines().map(|l| l.trim().to_string()).collect();
        v.reverse();
        v
    }

    /// Balance, shift-and-add closure, and autocorrelation over folded-row shifts.
    pub fn property_report(&self) -> PropertyReport {
        let row = self.row_bits();
        let n = row.len();
        let ones = row.iter().filter(|&&b| b == 1).count();
        let zeros = n - ones;
        let rotations: HashMap<Vec<u8>, usize> =
            (0..n).map(|u| ((0..n).map(|i| row[(i + u) % n]).collect(), u)).collect();
        let shift_and_add = (1..n).all(|t| {
            let sum: Vec<u8> = (0..n).map(|i| row[i] ^ row[(i + t) % n]).collect();
            rotations.contains_key(&sum)
        });
        let autocorrelation: Vec<i64> = (0..n)
            .map(|t| (0..n).map(|i| if row[i] == row[(i + t) % n] { 1 } else { -1 }).sum())
            .collect();
        let autocorrelation_two_valued = autocorrelation[0] == n as i64 && autocorrelation[1..].iter().all(|&c| c == -1);
        PropertyReport {
            ones,
            zeros,
            balance: ones == n.div_ceil(2) && zeros == n / 2,
            shift_and_add,
            autocorrelation_two_valued,
            autocorrelation,
        }
    }

    /// Planar correlation Σ_{x ∈ S} (−1)^{a(x) + a(x + v)} over the periodic extension.
    pub fn planar_correlation(&self, v: &Point) -> i64 {
        self.shape()
            .points()
            .iter()
            .map(|p| if self.value(p) == self.value(&(p + v)) { 1 } else { -1 })
            .sum()
    }

    /// Window contents at base point b.
    fn window_code(&self, base: &Point, q: &Shape) -> u64 {
        q.points().iter().fold(0u64, |acc, c| (acc << 1) | self.value(&(base + c)) as u64)
    }

    /// Slides Q over the periodic extension. Base points in the same coset
    /// see the same window, so the n coset representatives cover everything.
    pub fn window_property(&self, q: &Shape) -> Result<WindowReport> {
        let n = self.bits.len();
        let k = (n + 1).trailing_zeros() as usize;
        if (n + 1).count_ones() != 1 || q.len() != k {
            return Err(Error::WindowSizeMismatch { expected: k, got: q.len() });
        }
        let lat = self.coloring.tiling().lattice();
        let bases: Vec<Point> = (0..lat.volume()).map(|i| lat.coset_representative(i)).collect();
        let mut zero_windows = Vec::new();
        let mut first: HashMap<u64, Point> = HashMap::with_capacity(n);
        let mut repeated = BTreeSet::new();
        for b in &bases {
            let code = self.window_code(b, q);
            if code == 0 {
                zero_windows.push(b.clone());
            }
            if first.insert(code, b.clone()).is_some() {
                repeated.insert(code);
            }
        }
        let distinct_nonzero = first.keys().filter(|&&c| c != 0).count();
        let holds = distinct_nonzero == n;
        if holds != zero_windows.is_empty() {
            return Err(Error::InternalInconsistency("zero-window shortcut disagrees with the direct count".into()));
        }
        Ok(WindowReport { holds, distinct_nonzero, zero_windows, repeated: repeated.into_iter().collect() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub ones: usize,
    pub zeros: usize,
    pub balance: bool,
    pub shift_and_add: bool,
    pub autocorrelation_two_valued: bool,
    pub autocorrelation: Vec<i64>,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.balance && self.shift_and_add && self.autocorrelation_two_valued
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub holds: bool,
    pub distinct_nonzero: usize,
    /// Base points whose window is all zero.
    pub zero_windows: Vec<Point>,
    /// Window contents seen more than once.
    pub repeated: Vec<u64>,
}

/// A sliding window: a `rows × cols` box, or any shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSpec {
    Rect { rows: i64, cols: i64 },
    Shape(Vec<Point>),
}

impl WindowSpec {
    pub fn to_shape(&self) -> Result<Shape> {
        match self {
            WindowSpec::Rect { rows, cols } => {
                if *rows < 1 || *cols < 1 {
                    return Err(Error::InvalidShapeParams(format!("window {rows}x{cols}")));
                }
                Shape::new((0..*rows).flat_map(|y| (0..*cols).map(move |x| Point::from([x, y]))).collect())
            }
            WindowSpec::Shape(p) => Shape::new(p.clone()),
        }
    }
}

impl FromStr for WindowSpec {
    type Err = Error;

    /// `rect:rows,cols`. Shape windows are built from files by the caller.
    fn from_str(s: &str) -> Result<WindowSpec> {
        let rest = s.strip_prefix("rect:").ok_or_else(|| Error::Parse(format!("unknown window {s:?}")))?;
        let v: Vec<i64> = rest.split(',').map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad window {s:?}")))).collect::<Result<_>>()?;
        match v.as_slice() {
            [r, c] => Ok(WindowSpec::Rect { rows: *r, cols: *c }),
            _ => Err(Error::Parse(format!("window {s:?} needs rows,cols"))),
        }
    }
}

/// Connected `size`-cell polyominoes lying in exactly two rows, up to
/// translation only, each normalized to min x = min y = 0 and sorted.
pub fn two_row_polyominoes(size: usize) -> Vec<Vec<Point>> {
    let width = size as i64;
    let grid: Vec<(i64, i64)> = (0..2).flat_map(|y| (0..width).map(move |x| (x, y))).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << grid.len()) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let cells: Vec<(i64, i64)> = (0..grid.len()).filter(|&i| mask >> i & 1 == 1).map(|i| grid[i]).collect();
        if !cells.iter().any(|c| c.1 == 0) || !cells.iter().any(|c| c.1 == 1) || !connected(&cells) {
            continue;
        }
        let x0 = cells.iter().map(|c| c.0).min().unwrap_or(0);
        let mut pts: Vec<Point> = cells.iter().map(|&(x, y)| Point::from([x - x0, y])).collect();
        pts.sort();
        out.insert(pts);
    }
    out.into_iter().collect()
}

fn connected(cells: &[(i64, i64)]) -> bool {
    let set: HashSet<(i64, i64)> = cells.iter().copied().collect();
    let mut seen = HashSet::from([cells[0]]);
    let mut stack = vec![cells[0]];
    while let Some((x, y)) = stack.pop() {
        for n in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == cells.len()
}

/// The plus-shaped pentomino.
pub fn star_pentomino() -> Vec<Point> {
    vec![[1, 0].into(), [0, 1].into(), [1, 1].into(), [2, 1].into(), [1, 2].into()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields_seq::msequence;
    use crate::lattice::Lattice;

    #[test]
    fn f1_array_and_shifts() {
        let m = msequence(4, Some("11001")).unwrap();
        let lat = Lattice::diagonal(&[5, 3]).unwrap();
        let t = Tiling::new(lat.clone(), lat.box_shape()).unwrap();
        let fa = fold_msequence(&t, &Direction::from_slice(&[1, 1]).unwrap(), &m).unwrap();
        assert_eq!(fa.cyclic_shift(0).cell_bits(), fa.cell_bits());
        assert_eq!(fa.cyclic_shift(15).cell_bits(), fa.cell_bits());
        assert!(fa.property_report().all_hold());
        let w = fa.window_property(&WindowSpec::Rect { rows: 2, cols: 2 }.to_shape().unwrap()).unwrap();
        assert!(w.holds);
        let star = Shape::new(star_pentomino()).unwrap();
        assert!(matches!(fa.window_property(&star), Err(Error::WindowSizeMismatch { .. })));
    }

    #[test]
    fn polyomino_counts() {
        assert_eq!(two_row_polyominoes(2).len(), 1);
        assert_eq!(two_row_polyominoes(3).len(), 4);
        assert_eq!(two_row_polyominoes(5).len(), 18);
    }
}
