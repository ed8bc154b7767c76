//! Folded rows and folding predicates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{check_dim, det_bareiss, Lattice, Point, Shape, Tiling};

/// A nonzero step vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Direction(Point);

impl Direction {
    pub fn new(d: Point) -> Result<Direction> {
        if d.is_origin() {
            return Err(Error::ParamOutOfRange("direction must be nonzero".into()));
        }
        Ok(Direction(d))
    }

    pub fn from_slice(d: &[i64]) -> Result<Direction> {
        Direction::new(Point(d.to_vec()))
    }

    pub fn point(&self) -> &Point {
        &self.0
    }

    pub fn coords(&self) -> &[i64] {
        self.0.coords()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_ternary(&self) -> bool {
        self.0.coords().iter().all(|c| c.abs() <= 1)
    }

    pub fn reversed(&self) -> Direction {
        Direction(-&self.0)
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:+}")?;
        }
        write!(f, ")")
    }
}

/// Cells of S visited from the origin by repeated δ steps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FoldedRow {
    pub cells: Vec<Point>,
}

impl FoldedRow {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// f_0 followed by the remaining cells in reverse: the row of −δ.
    pub fn reversed(&self) -> FoldedRow {
        let mut cells = Vec::with_capacity(self.cells.len());
        cells.push(self.cells[0].clone());
        cells.extend(self.cells[1..].iter().rev().cloned());
        FoldedRow { cells }
    }

    pub fn canonical(&self) -> FoldedRow {
        let r = self.reversed();
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    /// Position of `p` in the row.
    pub fn position(&self, p: &Point) -> Option<usize> {
        self.cells.iter().position(|c| c == p)
    }
}

/// Walks the folded row from the origin.
pub fn folded_row(t: &Tiling, delta: &Direction) -> Result<FoldedRow> {
    check_dim(t.lattice().dim(), delta.dim())?;
    let pts = t.shape().points();
    let n = pts.len();
    let start = t.reduce_index(Point::origin(delta.dim()).coords());
    let mut cells = vec![pts[start].clone()];
    let mut buf = vec![0i64; delta.dim()];
    let mut cur = start;
    while cells.len() < n {
        for (b, (c, d)) in buf.iter_mut().zip(pts[cur].coords().iter().zip(delta.coords())) {
            *b = c + d;
        }
        cur = t.reduce_index(&buf);
        if cur == start {
            break;
        }
        cells.push(pts[cur].clone());
    }
    Ok(FoldedRow { cells })
}

/// Ground truth: the folded row covers all of S.
pub fn is_folding_bruteforce(t: &Tiling, delta: &Direction) -> Result<bool> {
    Ok(folded_row(t, delta)?.len() == t.size())
}

fn gcd_i(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Closed-form test for D = 2. Only the lattice matters, as |S| = volume.
pub fn is_folding_2d(lat: &Lattice, delta: &Direction) -> Result<bool> {
    if lat.dim() != 2 || delta.dim() != 2 {
        return Err(Error::DimensionError { expected: 2, got: lat.dim().max(delta.dim()) });
    }
    let (mut a, mut b) = (delta.coords()[0] as i128, delta.coords()[1] as i128);
    if a < 0 || (a == 0 && b < 0) {
        a = -a;
        b = -b;
    }
    let g = lat.gen();
    let (v11, v12, v21, v22) = (g[0][0] as i128, g[0][1] as i128, g[1][0] as i128, g[1][1] as i128);
    let s = lat.volume() as i128;
    let ok = if b == 0 {
        gcd_i(v12, v22) == 1 && gcd_i(a, s) == 1
    } else if a == 0 {
        gcd_i(v11, v21) == 1 && gcd_i(b, s) == 1
    } else {
        let tau = gcd_i(a, b);
        let (x, y) = if b > 0 {
            (a * v22 - b * v21, b * v11 - a * v12)
        } else {
            let d2 = -b;
            (a * v22 + d2 * v21, d2 * v11 + a * v12)
        };
        gcd_i(x / tau, y / tau) == 1 && gcd_i(tau, s) == 1
    };
    Ok(ok)
}

/// Outcome of the general D-dimensional criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldingCertificate {
    pub tau: u64,
    pub ell1: usize,
    pub ell2: usize,
    /// α with Σ α_j v_j = |S|·δ.
    #[serde(serialize_with = "serialize_bigints")]
    pub alphas: Vec<BigInt>,
    pub verdict: bool,
    pub reason: String,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(i) => seq.serialize_element(&i)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// General criterion: gcd(α_i/τ) = 1 and gcd(τ, |S|) = 1.
pub fn is_folding_ddim(lat: &Lattice, delta: &Direction) -> Result<FoldingCertificate> {
    let dim = lat.dim();
    check_dim(dim, delta.dim())?;
    let s = BigInt::from(lat.volume());
    let mut dv: Vec<i64> = delta.coords().to_vec();
    let negated = dv.iter().all(|&c| c <= 0);
    if negated {
        dv.iter_mut().for_each(|c| *c = -*c);
    }
    // Normal form: positive entries, then negative, then zero.
    let mut perm: Vec<usize> = (0..dim).filter(|&i| dv[i] > 0).collect();
    let ell1 = perm.len();
    perm.extend((0..dim).filter(|&i| dv[i] < 0));
    let ell2 = perm.len() - ell1;
    perm.extend((0..dim).filter(|&i| dv[i] == 0));
    let ell = ell1 + ell2;
    let mags: Vec<BigInt> = perm.iter().map(|&i| BigInt::from(dv[i].abs())).collect();
    let d1 = mags[0].clone();
    let tau = mags[..ell].iter().fold(BigInt::zero(), |g, m| g.gcd(m));

    let g = lat.gen();
    let gp: Vec<Vec<BigInt>> = (0..dim).map(|j| perm.iter().map(|&c| BigInt::from(g[j][c])).collect()).collect();
    let mut h: Vec<Vec<BigInt>> = Vec::with_capacity(dim - 1);
    for r in 1..dim {
        let row = (0..dim)
            .map(|j| {
                if r < ell1 {
                    (&d1 * &gp[j][r] - &mags[r] * &gp[j][0]) / &tau
                } else if r < ell {
                    (&d1 * &gp[j][r] + &mags[r] * &gp[j][0]) / &tau
                } else {
                    gp[j][r].clone()
                }
            })
            .collect();
        h.push(row);
    }
    let perm_sign = permutation_sign(&perm);
    let sigma = if (lat.det() > 0) == (perm_sign > 0) { BigInt::one() } else { -BigInt::one() };
    let scale = &d1 * num_traits::pow(tau.clone(), ell - 1);
    let den = num_traits::pow(d1.clone(), ell - 1);
    let mut alphas = Vec::with_capacity(dim);
    for k in 0..dim {
        let det_hk = if dim == 1 {
            BigInt::one()
        } else {
            let hk: Vec<Vec<BigInt>> = h
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| v.clone()).collect())
                .collect();
            det_bareiss(hk)
        };
        let num = &scale * det_hk;
        if !(&num % &den).is_zero() {
            return Err(Error::InternalInconsistency(format!("alpha_{} is not integral", k + 1)));
        }
        let mut a = &sigma * (num / &den);
        if k % 2 == 1 {
            a = -a;
        }
        alphas.push(a);
    }
    // Σ_j α_j v_j must reproduce |S|·δ in the normal form.
    for (r, &c) in perm.iter().enumerate() {
        let lhs: BigInt = (0..dim).map(|j| &alphas[j] * &gp[j][r]).sum();
        let rhs = &s * BigInt::from(dv[c]);
        if lhs != rhs {
            return Err(Error::InternalInconsistency(format!("alpha reconstruction fails in coordinate {}", c + 1)));
        }
    }
    if negated {
        alphas.iter_mut().for_each(|a| *a = -a.clone());
    }
    let g_alpha = alphas.iter().fold(BigInt::zero(), |acc, a| acc.gcd(&(a / &tau)));
    let g_tau = tau.gcd(&s);
    let verdict = g_alpha.is_one() && g_tau.is_one();
    let reason = if verdict {
        "gcd(alpha/tau) = 1 and gcd(tau, |S|) = 1".to_string()
    } else if !g_alpha.is_one() {
        format!("gcd(alpha/tau) = {g_alpha}")
    } else {
        format!("gcd(tau, |S|) = {g_tau}")
    };
    Ok(FoldingCertificate {
        tau: u64::try_from(&tau).unwrap_or(u64::MAX),
        ell1,
        ell2,
        alphas,
        verdict,
        reason,
    })
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// The lattice coloring C(Λ, δ): color(p) is the folded-row index of p − c(p).
#[derive(Clone, Debug)]
pub struct Coloring {
    tiling: Tiling,
    direction: Direction,
    row: FoldedRow,
    color_of_slot: Vec<u32>,
}

impl Coloring {
    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn row(&self) -> &FoldedRow {
        &self.row
    }

    pub fn modulus(&self) -> u64 {
        self.row.len() as u64
    }

    pub fn color(&self, p: &Point) -> u64 {
        self.color_of_slot[self.tiling.reduce_index(p.coords())] as u64
    }

    pub fn color_of(&self, p: &[i64]) -> u64 {
        self.color_of_slot[self.tiling.reduce_index(p)] as u64
    }

    pub fn shape(&self) -> &Shape {
        self.tiling.shape()
    }
}

pub fn lattice_coloring(t: &Tiling, delta: &Direction) -> Result<Coloring> {
    let row = folded_row(t, delta)?;
    if row.len() != t.size() {
        return Err(Error::NotAFolding(delta.to_string()));
    }
    let mut color_of_slot = vec![0u32; t.size()];
    for (i, c) in row.cells.iter().enumerate() {
        color_of_slot[t.shape().index_of(c).expect("row cells lie in S")] = i as u32;
    }
    Ok(Coloring { tiling: t.clone(), direction: delta.clone(), row, color_of_slot })
}

/// One representative per class of equal-or-reversed folded rows, taken
/// over the non-center points of S as directions.
pub fn enumerate_foldings(t: &Tiling) -> Result<Vec<(Direction, FoldedRow)>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for x in t.shape().points() {
        if x.is_origin() {
            continue;
        }
        let d = Direction::new(x.clone())?;
        let row = folded_row(t, &d)?;
        if row.len() == t.size() && seen.insert(row.canonical()) {
            out.push((d, row));
        }
    }
    Ok(out)
}

/// Checks that f_i folds iff gcd(i, n) = 1, with row f_0 f_i f_2i …
pub fn subsampling_law_holds(t: &Tiling, delta: &Direction) -> Result<bool> {
    let row = folded_row(t, delta)?;
    let n = t.size();
    if row.len() != n {
        return Err(Error::NotAFolding(delta.to_string()));
    }
    for i in 1..n {
        let d = Direction::new(row.cells[i].clone())?;
        let ri = folded_row(t, &d)?;
        let folds = ri.len() == n;
        if folds != (i.gcd(&n) == 1) {
            return Ok(false);
        }
        if folds && (0..n).any(|k| ri.cells[k] != row.cells[(k * i) % n]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All 3^D − 1 ternary directions that fold, one per ± pair.
pub fn ternary_sweep(t: &Tiling) -> Result<Vec<(Direction, bool)>> {
    let dim = t.lattice().dim();
    let mut out = Vec::new();
    let total = 3usize.pow(dim as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..dim)
            .map(|_| {
                let d = (c % 3) as i64 - 1;
                c /= 3;
                d
            })
            .collect();
        let d = Point(v);
        if d.is_origin() || (-&d) < d {
            continue;
        }
        let dir = Direction::new(d)?;
        let ok = is_folding_bruteforce(t, &dir)?;
        out.push((dir, ok));
    }
    Ok(out)
}

/// The classic one-dimensional into two-dimensional foldings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicKind {
    /// Along the main diagonal of a cyclic `rows × cols` array.
    F1,
    /// Row by row.
    F2,
    /// Anti-diagonal by anti-diagonal.
    F3,
}

#[derive(Clone, Debug)]
pub struct ClassicFolding {
    pub lattice: Lattice,
    pub direction: Direction,
    pub shape: Shape,
}

fn rect_points(cols: i64, rows: i64) -> Vec<Point> {
    (0..rows).flat_map(|y| (0..cols).map(move |x| Point::from([x, y]))).collect()
}

/// F1 and F2 take `(rows, cols)`; F3 takes `(k, n)`: `n` cells written along
/// anti-diagonals of alternating lengths `k` and `k − 1`.
pub fn classic_lattice(kind: ClassicKind, a: i64, b: i64) -> Result<ClassicFolding> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidShapeParams(format!("dimensions {a},{b} must be positive")));
    }
    let (gen, d, pts) = match kind {
        ClassicKind::F1 => {
            if a.gcd(&b) != 1 {
                return Err(Error::NotFoldable(format!("gcd({a},{b}) = {}", a.gcd(&b))));
            }
            (vec![vec![b, 0], vec![0, a]], [1, 1], rect_points(b, a))
        }
        ClassicKind::F2 => (vec![vec![b, -1], vec![0, a]], [1, 0], rect_points(b, a)),
        ClassicKind::F3 => {
            let (k, n) = (a, b);
            if k < 2 {
                return Err(Error::InvalidShapeParams("F3 needs k >= 2".into()));
            }
            let mut pts = Vec::with_capacity(n as usize);
            let mut s = 0;
            while (pts.len() as i64) < n {
                let len = if s % 2 == 0 { k } else { k - 1 };
                let y0 = (s + 1) / 2;
                for y in y0..y0 + len {
                    if (pts.len() as i64) < n {
                        pts.push(Point::from([s - y, y]));
                    }
                }
                s += 1;
            }
            let l = Lattice::from_generators(2, &[vec![n, 0], vec![0, n], vec![k, -(k - 1)]])?;
            (l.gen().to_vec(), [-1, 1], pts)
        }
    };
    let lattice = Lattice::new(gen)?;
    let shape = Shape::with_center(pts, Point::origin(2))?;
    Ok(ClassicFolding { lattice, direction: Direction::from_slice(&d)?, shape })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(g: &[&[i64]]) -> Lattice {
        Lattice::new(g.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn square2() -> Shape {
        Shape::new(rect_points(2, 2)).unwrap()
    }

    fn dir(d: &[i64]) -> Direction {
        Direction::from_slice(d).unwrap()
    }

    #[test]
    fn example_two_verdicts() {
        let t1 = Tiling::new(lat(&[&[2, 2], &[0, 2]]), square2()).unwrap();
        for d in [[1, 0], [0, 1], [1, 1], [1, -1]] {
            assert!(!is_folding_bruteforce(&t1, &dir(&d)).unwrap());
            assert!(!is_folding_2d(t1.lattice(), &dir(&d)).unwrap());
        }
        let t2 = Tiling::new(lat(&[&[2, 1], &[0, 2]]), square2()).unwrap();
        for (d, want) in [([1, 0], true), ([1, 1], true), ([1, -1], true), ([0, 1], false)] {
            assert_eq!(is_folding_bruteforce(&t2, &dir(&d)).unwrap(), want);
            assert_eq!(is_folding_2d(t2.lattice(), &dir(&d)).unwrap(), want);
            assert_eq!(is_folding_ddim(t2.lattice(), &dir(&d)).unwrap().verdict, want);
        }
        let row = folded_row(&t2, &dir(&[1, 0])).unwrap();
        let want: Vec<Point> = vec![[0, 0].into(), [1, 0].into(), [0, 1].into(), [1, 1].into()];
        assert_eq!(row.cells, want);
    }

    #[test]
    fn certificate_fields() {
        let l = lat(&[&[3, 2], &[7, 1]]);
        let c = is_folding_ddim(&l, &dir(&[2, -4])).unwrap();
        assert_eq!((c.tau, c.ell1, c.ell2), (2, 1, 1));
        // Order of (2,-4) in a group of prime order 11 is 11.
        assert!(c.verdict);
        let even = lat(&[&[3, 2], &[8, 2]]);
        let c2 = is_folding_ddim(&even, &dir(&[2, -4])).unwrap();
        assert!(!c2.verdict);
        assert!(!is_folding_2d(&even, &dir(&[2, -4])).unwrap());
        let c = is_folding_ddim(&l, &dir(&[-1, -1])).unwrap();
        assert!(c.verdict);
        let s = BigInt::from(11);
        for r in 0..2 {
            let lhs: BigInt = (0..2).map(|j| &c.alphas[j] * BigInt::from(l.gen()[j][r])).sum();
            assert_eq!(lhs, &s * BigInt::from(-1));
        }
    }

    #[test]
    fn no_folding_diagonal() {
        let l = Lattice::diagonal(&[1, 2, 2]).unwrap();
        let t = Tiling::new(l.clone(), l.box_shape()).unwrap();
        assert!(enumerate_foldings(&t).unwrap().is_empty());
        assert!(!is_folding_ddim(&l, &dir(&[1, 1, 1])).unwrap().verdict);
    }

    #[test]
    fn one_dimensional_certificate() {
        let l = Lattice::new(vec![vec![7]]).unwrap();
        let c = is_folding_ddim(&l, &dir(&[3])).unwrap();
        assert!(c.verdict);
        let c = is_folding_ddim(&l, &dir(&[7])).unwrap();
        assert!(!c.verdict);
    }

    #[test]
    fn classic_f1_requires_coprime() {
        assert!(matches!(classic_lattice(ClassicKind::F1, 2, 4), Err(Error::NotFoldable(_))));
        let c = classic_lattice(ClassicKind::F1, 3, 5).unwrap();
        let t = Tiling::new(c.lattice, c.shape).unwrap();
        assert!(is_folding_bruteforce(&t, &c.direction).unwrap());
    }

    #[test]
    fn row_reversal() {
        let t = Tiling::new(lat(&[&[3, 2], &[7, 1]]), Shape::new((0..11).map(|x| Point::from([x, 0])).collect()).unwrap()).unwrap();
        let f = folded_row(&t, &dir(&[1, 0])).unwrap();
        let b = folded_row(&t, &dir(&[-1, 0])).unwrap();
        assert_eq!(f.reversed(), b);
        assert_eq!(f.canonical(), b.canonical());
    }
}
