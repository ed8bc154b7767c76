//! Integer lattices, shapes and lattice tilings.
//!
//! A lattice is given by a generator matrix whose rows are the basis
//! vectors. All arithmetic here is exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A grid point of Z^D.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Point {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Point {
        Point(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Point {
        let mut c = vec![0; dim];
        c[axis] = 1;
        Point(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Point {
        Point(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<&[i64]> for Point {
    fn from(c: &[i64]) -> Point {
        Point(c.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(c: [i64; N]) -> Point {
        Point(c.to_vec())
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        debug_assert_eq!(self.dim(), o.dim());
        Point(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        debug_assert_eq!(self.dim(), o.dim());
        Point(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionError { expected, got });
    }
    Ok(())
}

/// Fraction-free (Bareiss) determinant over any exact integer type.
pub fn det_bareiss<T>(mut m: Vec<Vec<T>>) -> T
where
    T: Clone + Integer + Signed,
{
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Minor of `m` with row `r` and column `c` removed.
pub(crate) fn minor<T: Clone>(m: &[Vec<T>], r: usize, c: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

fn adjugate(g: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = g.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = det_bareiss(minor(g, j, i));
            adj[i][j] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

/// Row-style Hermite normal form of a spanning set: upper triangular,
/// positive diagonal, entries above the diagonal reduced into [0, pivot).
fn hermite_rows(mut rows: Vec<Vec<i128>>, dim: usize) -> Result<Vec<Vec<i128>>> {
    let mut r = 0;
    for col in 0..dim {
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(pi) = pivot else {
                return Err(Error::SingularLattice);
            };
            rows.swap(r, pi);
            let mut done = true;
            for k in r + 1..rows.len() {
                if rows[k][col] != 0 {
                    let q = Integer::div_floor(&rows[k][col], &rows[r][col]);
                    for j in col..dim {
                        rows[k][j] -= q * rows[r][j];
                    }
                    if rows[k][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[r][col] < 0 {
            for v in rows[r].iter_mut() {
                *v = -*v;
            }
        }
        r += 1;
    }
    rows.truncate(dim);
    for i in 0..dim {
        for k in 0..i {
            let q = Integer::div_floor(&rows[k][i], &rows[i][i]);
            if q != 0 {
                for j in i..dim {
                    rows[k][j] -= q * rows[i][j];
                }
            }
        }
    }
    Ok(rows)
}

/// A full-rank integer lattice in Z^D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    gen: Vec<Vec<i64>>,
    det: i128,
    adj: Vec<Vec<i128>>,
    hnf: Vec<Vec<i128>>,
    radix: Vec<u64>,
}

impl Lattice {
    /// Builds a lattice from a square generator matrix (rows are basis vectors).
    pub fn new(gen: Vec<Vec<i64>>) -> Result<Lattice> {
        let dim = gen.len();
        if dim == 0 {
            return Err(Error::DimensionError { expected: 1, got: 0 });
        }
        for row in &gen {
            check_dim(dim, row.len())?;
        }
        // Hadamard bound keeps every minor comfortably inside i128.
        let log_bound: f64 = gen
            .iter()
            .map(|r| (r.iter().map(|&v| (v as f64).powi(2)).sum::<f64>()).sqrt().max(1.0).log2())
            .sum();
        if log_bound > 100.0 {
            return Err(Error::TooLarge { cost: log_bound as u64, budget: 100 });
        }
        let g: Vec<Vec<i128>> = gen.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let det = det_bareiss(g.clone());
        if det == 0 {
            return Err(Error::SingularLattice);
        }
        let adj = adjugate(&g);
        let hnf = hermite_rows(g, dim)?;
        let mut radix = vec![1u64; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            radix[i] = radix[i + 1] * hnf[i + 1][i + 1] as u64;
        }
        Ok(Lattice { dim, gen, det, adj, hnf, radix })
    }

    /// Lattice spanned by an arbitrary full-rank set of integer vectors.
    pub fn from_generators(dim: usize, vectors: &[Vec<i64>]) -> Result<Lattice> {
        for v in vectors {
            check_dim(dim, v.len())?;
        }
        if vectors.len() < dim {
            return Err(Error::SingularLattice);
        }
        let rows = vectors.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let h = hermite_rows(rows, dim)?;
        let gen = h
            .iter()
            .map(|r| r.iter().map(|&v| i64::try_from(v).map_err(|_| Error::TooLarge { cost: 0, budget: 0 })).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Lattice::new(gen)
    }

    pub fn identity(dim: usize) -> Lattice {
        let gen = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
        Lattice::new(gen).expect("identity is nonsingular")
    }

    pub fn diagonal(diag: &[i64]) -> Result<Lattice> {
        let d = diag.len();
        Lattice::new((0..d).map(|i| (0..d).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gen(&self) -> &[Vec<i64>] {
        &self.gen
    }

    /// Basis vector `v_i` (row `i` of G).
    pub fn basis(&self, i: usize) -> Point {
        Point(self.gen[i].clone())
    }

    /// Signed determinant of G.
    pub fn det(&self) -> i128 {
        self.det
    }

    /// |det G|, the number of cosets of the lattice in Z^D.
    pub fn volume(&self) -> u64 {
        self.det.unsigned_abs() as u64
    }

    /// Hermite normal form rows (upper triangular).
    pub fn hnf(&self) -> Vec<Vec<i64>> {
        self.hnf.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect()
    }

    pub fn adjugate(&self) -> &[Vec<i128>] {
        &self.adj
    }

    /// Membership via u = p·adj(G)/det(G).
    pub fn is_lattice_point(&self, p: &Point) -> Result<bool> {
        check_dim(self.dim, p.dim())?;
        Ok(self.coefficients(p)?.is_some())
    }

    /// Integer coefficients u with p = Σ u_i v_i, if p is in the lattice.
    pub fn coefficients(&self, p: &Point) -> Result<Option<Vec<i128>>> {
        check_dim(self.dim, p.dim())?;
        let mut u = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let s: i128 = (0..self.dim).map(|i| p.0[i] as i128 * self.adj[i][j]).sum();
            if s % self.det != 0 {
                return Ok(None);
            }
            u.push(s / self.det);
        }
        Ok(Some(u))
    }

    /// Canonical residue of `p` in the fundamental box of the Hermite form.
    pub fn residue(&self, p: &Point) -> Result<Point> {
        check_dim(self.dim, p.dim())?;
        let r = self.residue_raw(p.coords());
        Ok(Point(r.iter().map(|&v| v as i64).collect()))
    }

    fn residue_raw(&self, p: &[i64]) -> Vec<i128> {
        let mut r: Vec<i128> = p.iter().map(|&v| v as i128).collect();
        for i in 0..self.dim {
            let q = Integer::div_floor(&r[i], &self.hnf[i][i]);
            if q != 0 {
                for j in i..self.dim {
                    r[j] -= q * self.hnf[i][j];
                }
            }
        }
        r
    }

    /// Coset label in 0..volume; equal labels iff the difference is a lattice point.
    pub fn coset_index(&self, p: &Point) -> Result<u64> {
        check_dim(self.dim, p.dim())?;
        Ok(self.coset_of(p.coords()))
    }

    pub(crate) fn coset_of(&self, p: &[i64]) -> u64 {
        self.residue_raw(p)
            .iter()
            .zip(&self.radix)
            .map(|(&r, &w)| r as u64 * w)
            .sum()
    }

    /// The residue point whose coset label is `index`.
    pub fn coset_representative(&self, index: u64) -> Point {
        let mut rest = index % self.volume();
        let mut c = vec![0i64; self.dim];
        for i in 0..self.dim {
            c[i] = (rest / self.radix[i]) as i64;
            rest %= self.radix[i];
        }
        Point(c)
    }

    /// The fundamental box {0 ≤ x_i < h_ii} of the Hermite form, which the lattice always tiles.
    pub fn box_shape(&self) -> Shape {
        let pts = (0..self.volume()).map(|i| self.coset_representative(i)).collect();
        Shape::with_center(pts, Point::origin(self.dim)).expect("box contains the origin")
    }
}

/// JSON file form of a lattice.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub dim: usize,
    pub gen: Vec<Vec<i64>>,
}

impl From<&Lattice> for LatticeFile {
    fn from(l: &Lattice) -> LatticeFile {
        LatticeFile { dim: l.dim, gen: l.gen.clone() }
    }
}

impl TryFrom<LatticeFile> for Lattice {
    type Error = Error;
    fn try_from(f: LatticeFile) -> Result<Lattice> {
        check_dim(f.dim, f.gen.len())?;
        Lattice::new(f.gen)
    }
}

/// A finite set of grid points whose center sits at the origin.
#[derive(Clone, Debug)]
pub struct Shape {
    dim: usize,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl PartialEq for Shape {
    fn eq(&self, o: &Shape) -> bool {
        self.points == o.points
    }
}

impl Eq for Shape {}

impl Shape {
    /// Centers the set at its lexicographically smallest point.
    pub fn new(points: Vec<Point>) -> Result<Shape> {
        let c = points
            .iter()
            .min()
            .cloned()
            .ok_or_else(|| Error::InvalidShapeParams("empty shape".into()))?;
        Shape::with_center(points, c)
    }

    /// Translates the set so that `center` (which must belong to it) becomes the origin.
    pub fn with_center(points: Vec<Point>, center: Point) -> Result<Shape> {
        let dim = center.dim();
        if dim == 0 {
            return Err(Error::InvalidShapeParams("zero-dimensional shape".into()));
        }
        let mut pts = Vec::with_capacity(points.len());
        for p in &points {
            check_dim(dim, p.dim())?;
            pts.push(p - &center);
        }
        pts.sort();
        let before = pts.len();
        pts.dedup();
        if pts.len() != before {
            return Err(Error::InvalidShapeParams("repeated point".into()));
        }
        if pts.binary_search(&Point::origin(dim)).is_err() {
            return Err(Error::InvalidShapeParams(format!("center {center} is not a point of the shape")));
        }
        let index = pts.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Ok(Shape { dim, points: pts, index })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Same set re-centered at one of its own points.
    pub fn recentered(&self, new_center: &Point) -> Result<Shape> {
        Shape::with_center(self.points.clone(), new_center.clone())
    }

    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for p in &self.points {
            for i in 0..self.dim {
                lo[i] = lo[i].min(p.0[i]);
                hi[i] = hi[i].max(p.0[i]);
            }
        }
        (lo, hi)
    }

    /// Whether the cells form one face-connected piece.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for axis in 0..self.dim {
                for s in [-1, 1] {
                    let mut q = self.points[i].clone();
                    q.0[axis] += s;
                    if let Some(j) = self.index_of(&q) {
                        if !seen[j] {
                            seen[j] = true;
                            count += 1;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        count == self.len()
    }
}

/// JSON file form of a shape.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShapeFile {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<i64>>,
}

impl From<&Shape> for ShapeFile {
    fn from(s: &Shape) -> ShapeFile {
        ShapeFile { dim: s.dim, points: s.points.iter().map(|p| p.0.clone()).collect(), center: None }
    }
}

impl TryFrom<ShapeFile> for Shape {
    type Error = Error;
    fn try_from(f: ShapeFile) -> Result<Shape> {
        let pts: Vec<Point> = f.points.into_iter().map(Point).collect();
        for p in &pts {
            check_dim(f.dim, p.dim())?;
        }
        match f.center {
            Some(c) => Shape::with_center(pts, Point(c)),
            None => Shape::new(pts),
        }
    }
}

/// A verified lattice tiling (Λ, S) with the center map precomputed.
#[derive(Clone, Debug)]
pub struct Tiling {
    lattice: Lattice,
    shape: Shape,
    slot: Vec<u32>,
}

impl Tiling {
    pub fn new(lattice: Lattice, shape: Shape) -> Result<Tiling> {
        check_dim(lattice.dim(), shape.dim())?;
        let n = lattice.volume();
        if n != shape.len() as u64 {
            return Err(Error::NotATiling(format!("volume {n} differs from shape size {}", shape.len())));
        }
        let mut slot = vec![u32::MAX; n as usize];
        for (i, p) in shape.points().iter().enumerate() {
            let c = lattice.coset_of(p.coords()) as usize;
            if slot[c] != u32::MAX {
                let q = &shape.points()[slot[c] as usize];
                return Err(Error::NotATiling(format!("{q} and {p} differ by a lattice point")));
            }
            slot[c] = i as u32;
        }
        Ok(Tiling { lattice, shape, slot })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.len()
    }

    /// Index (into `shape().points()`) of the shape point congruent to `p`.
    pub fn reduce_index(&self, p: &[i64]) -> usize {
        self.slot[self.lattice.coset_of(p) as usize] as usize
    }

    /// The shape point congruent to `p`.
    pub fn reduce(&self, p: &Point) -> &Point {
        &self.shape.points()[self.reduce_index(p.coords())]
    }

    /// c(p): the lattice point whose copy of S contains `p`.
    pub fn center_of(&self, p: &Point) -> Result<Point> {
        check_dim(self.lattice.dim(), p.dim())?;
        Ok(p - self.reduce(p))
    }
}

/// |det G| = |S| and no two shape points share a coset.
pub fn verify_tiling(lat: &Lattice, s: &Shape) -> Result<bool> {
    check_dim(lat.dim(), s.dim())?;
    match Tiling::new(lat.clone(), s.clone()) {
        Ok(_) => Ok(true),
        Err(Error::NotATiling(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// c(p) for a lattice and shape; fails with `NotATiling` when the pair is no tiling.
pub fn center_of(lat: &Lattice, s: &Shape, p: &Point) -> Result<Point> {
    Tiling::new(lat.clone(), s.clone())?.center_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(g: &[&[i64]]) -> Lattice {
        Lattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn rect(w: i64, h: i64) -> Shape {
        Shape::new((0..h).flat_map(|y| (0..w).map(move |x| Point::from([x, y]))).collect()).unwrap()
    }

    #[test]
    fn volumes() {
        assert_eq!(lat(&[&[3, 2], &[7, 1]]).volume(), 11);
        assert_eq!(lat(&[&[2, 1], &[0, 2]]).volume(), 4);
        assert_eq!(Lattice::identity(4).volume(), 1);
        assert_eq!(Lattice::new(vec![vec![1, 2], vec![2, 4]]), Err(Error::SingularLattice));
        assert_eq!(Lattice::new(vec![vec![-5]]).unwrap().volume(), 5);
    }

    #[test]
    fn membership() {
        let l = lat(&[&[2, 1], &[0, 2]]);
        assert!(l.is_lattice_point(&Point::from([2, 1])).unwrap());
        assert!(!l.is_lattice_point(&Point::from([1, 0])).unwrap());
        assert!(l.is_lattice_point(&Point::from([0, 0])).unwrap());
        assert!(l.is_lattice_point(&Point::from([1, 0, 0])).is_err());
    }

    #[test]
    fn coset_labels() {
        let l = lat(&[&[2, 1], &[0, 2]]);
        assert_eq!(l.coset_index(&Point::from([3, 1])).unwrap(), l.coset_index(&Point::from([1, 0])).unwrap());
        assert_eq!(l.coset_index(&Point::from([4, 2])).unwrap(), 0);
        for i in 0..l.volume() {
            assert_eq!(l.coset_index(&l.coset_representative(i)).unwrap(), i);
        }
    }

    #[test]
    fn hnf_of_generators() {
        let l = Lattice::from_generators(2, &[vec![31, 0], vec![0, 31], vec![4, -3]]).unwrap();
        assert_eq!(l.volume(), 31);
        assert!(l.is_lattice_point(&Point::from([4, -3])).unwrap());
        assert!(!l.is_lattice_point(&Point::from([1, 0])).unwrap());
    }

    #[test]
    fn tilings() {
        let strip = Shape::new((0..11).map(|x| Point::from([x, 0])).collect()).unwrap();
        assert!(verify_tiling(&lat(&[&[2, 2], &[0, 2]]), &rect(2, 2)).unwrap());
        assert!(verify_tiling(&lat(&[&[3, 2], &[7, 1]]), &strip).unwrap());
        let short = Shape::new((0..3).map(|x| Point::from([x, 0])).collect()).unwrap();
        assert!(!verify_tiling(&lat(&[&[2, 0], &[0, 2]]), &short).unwrap());
    }

    #[test]
    fn centers() {
        let l = lat(&[&[2, 1], &[0, 2]]);
        let s = rect(2, 2);
        assert_eq!(center_of(&l, &s, &Point::from([2, 0])).unwrap(), Point::from([2, -1]));
        assert_eq!(center_of(&l, &s, &Point::from([1, 1])).unwrap(), Point::from([0, 0]));
        assert_eq!(center_of(&l, &s, &Point::from([4, 2])).unwrap(), Point::from([4, 2]));
        let bad = Shape::new(vec![Point::from([0, 0]), Point::from([2, 1]), Point::from([1, 0]), Point::from([0, 1])]).unwrap();
        assert!(matches!(center_of(&l, &bad, &Point::from([0, 0])), Err(Error::NotATiling(_))));
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![Point::from([0, 0]), Point::from([0, 0])]).is_err());
        assert!(Shape::with_center(vec![Point::from([0, 0])], Point::from([1, 1])).is_err());
        let s = Shape::new(vec![Point::from([3, 4]), Point::from([4, 4])]).unwrap();
        assert_eq!(s.points(), &[Point::from([0, 0]), Point::from([1, 0])]);
        assert!(!Shape::new(vec![Point::from([0, 0]), Point::from([2, 0])]).unwrap().is_connected());
    }

    #[test]
    fn one_dimensional() {
        let l = Lattice::new(vec![vec![5]]).unwrap();
        let s = Shape::new((0..5).map(|x| Point::from([x])).collect()).unwrap();
        let t = Tiling::new(l, s).unwrap();
        assert_eq!(t.center_of(&Point::from([7])).unwrap(), Point::from([5]));
    }
}
