//! Multidimensional 2-burst-correcting codes from a parity bit, an axis
//! label block, and powers of a primitive element of GF(2^m).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields_seq::FiniteField;
use crate::folding::{folded_row, is_folding_2d, is_folding_bruteforce, lattice_coloring, Coloring, Direction};
use crate::lattice::{check_dim, Lattice, Point, Shape, Tiling};

pub const MAX_DEGREE: u32 = 24;

/// Cells at which the code lives, with their field exponents.
#[derive(Clone, Debug)]
enum Geometry {
    Box { dims: Vec<i64>, strides: Vec<u64> },
    Folded { coloring: Coloring, base: Tiling },
}

/// A 2-burst-correcting code given by its parity-check columns.
#[derive(Clone, Debug)]
pub struct BurstCode {
    geometry: Geometry,
    dim: usize,
    m: u32,
    d: u32,
    field: FiniteField,
    cells: Vec<Point>,
    exponents: Vec<u64>,
    columns: Vec<u64>,
    cell_of_exponent: HashMap<u64, usize>,
    index_of_cell: HashMap<Point, usize>,
}

/// Smallest m with 2^m − 1 ≥ n.
pub fn field_degree(n: u64) -> u32 {
    let mut m = 1;
    while (1u64 << m) - 1 < n {
        m += 1;
    }
    m
}

/// ⌈log₂ D⌉.
pub fn label_bits(dim: usize) -> u32 {
    let mut d = 0;
    while (1usize << d) < dim {
        d += 1;
    }
    d
}

/// Two cells are adjacent when they differ by ±1 in exactly one coordinate.
pub fn axis_adjacent(a: &Point, b: &Point) -> bool {
    a.dim() == b.dim() && a.0.iter().zip(&b.0).map(|(x, y)| (x - y).abs()).sum::<i64>() == 1
}

/// An error pattern of one cell or two cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurstError {
    pub cells: Vec<Point>,
}

impl BurstError {
    /// Legal under `adjacent` when one cell, or two cells that are adjacent.
    pub fn is_legal(&self, adjacent: impl Fn(&Point, &Point) -> bool) -> bool {
        match self.cells.as_slice() {
            [_] => true,
            [a, b] => adjacent(a, b),
            _ => false,
        }
    }
}

/// Decoder output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correction {
    pub word: Vec<u8>,
    /// Empty when the syndrome was zero.
    pub error: BurstError,
}

impl BurstCode {
    /// Code on the n_1 × ⋯ × n_D box; cell i has exponent Σ i_j Π_{ℓ>j} n_ℓ.
    pub fn for_box(dims: &[i64]) -> Result<BurstCode> {
        if dims.is_empty() || dims.iter().any(|&n| n < 1) {
            return Err(Error::ParamOutOfRange(format!("box dimensions {dims:?} must be positive")));
        }
        let n: u64 = dims.iter().map(|&x| x as u64).product();
        let m = field_degree(n);
        if m > MAX_DEGREE {
            return Err(Error::ShapeTooLarge(m));
        }
        let mut strides = vec![1u64; dims.len()];
        for j in (0..dims.len() - 1).rev() {
            strides[j] = strides[j + 1] * dims[j + 1] as u64;
        }
        let mut cells = vec![Point::new(vec![])];
        for &h in dims {
            cells = cells
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
        let exponents: Vec<u64> =
            cells.iter().map(|c| c.0.iter().zip(&strides).map(|(&x, &s)| x as u64 * s).sum()).collect();
        BurstCode::assemble(Geometry::Box { dims: dims.to_vec(), strides }, dims.len(), m, cells, exponents)
    }

    /// Code on a folded shape S. The exponent of a cell is its position on the
    /// folded row of `padded` (Λ′, S′, δ), which must contain S and have
    /// 2^m − 1 cells. With `padded` None, S itself is used when |S| = 2^m − 1
    /// and otherwise a padding is searched for.
    pub fn for_shape(t: &Tiling, delta: &Direction, padded: Option<Tiling>) -> Result<BurstCode> {
        if !is_folding_bruteforce(t, delta)? {
            return Err(Error::NotAFolding(delta.to_string()));
        }
        let n = t.size() as u64;
        let m = field_degree(n);
        if m > MAX_DEGREE {
            return Err(Error::ShapeTooLarge(m));
        }
        let padded = match padded {
            Some(p) => p,
            None if n == (1u64 << m) - 1 => t.clone(),
            None => auto_pad(t, delta, ((1u64 << m) - 1) as usize)?,
        };
        if padded.size() as u64 != (1u64 << m) - 1 {
            return Err(Error::LengthMismatch { expected: ((1u64 << m) - 1) as usize, got: padded.size() });
        }
        if let Some(p) = t.shape().points().iter().find(|p| !padded.shape().contains(p)) {
            return Err(Error::ParamOutOfRange(format!("padded shape misses {p}")));
        }
        let coloring = lattice_coloring(&padded, delta)?;
        let cells = t.shape().points().to_vec();
        let exponents = cells.iter().map(|c| coloring.color(c)).collect();
        BurstCode::assemble(Geometry::Folded { coloring, base: t.clone() }, t.shape().dim(), m, cells, exponents)
    }

    fn assemble(geometry: Geometry, dim: usize, m: u32, cells: Vec<Point>, exponents: Vec<u64>) -> Result<BurstCode> {
        let field = FiniteField::new(2, m)?;
        let d = label_bits(dim);
        let mut code = BurstCode {
            geometry,
            dim,
            m,
            d,
            field,
            columns: Vec::with_capacity(cells.len()),
            cell_of_exponent: exponents.iter().enumerate().map(|(i, &e)| (e, i)).collect(),
            index_of_cell: cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect(),
            cells,
            exponents,
        };
        code.columns = (0..code.cells.len()).map(|i| code.column_for(&code.cells[i], code.exponents[i])).collect();
        Ok(code)
    }

    fn label(&self, cell: &Point) -> u64 {
        // A has column j equal to the binary expansion of j.
        (0..self.dim).filter(|&j| cell.0[j].rem_euclid(2) == 1).fold(0, |acc, j| acc ^ j as u64)
    }

    fn column_for(&self, cell: &Point, exponent: u64) -> u64 {
        1 | (self.label(cell) << 1) | (self.field.exp(exponent) << (1 + self.d))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field_degree(&self) -> u32 {
        self.m
    }

    pub fn label_bits(&self) -> u32 {
        self.d
    }

    pub fn redundancy(&self) -> u32 {
        self.m + self.d + 1
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Word positions, in order.
    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Parity-check columns: bit 0 parity, bits 1..=d the axis label,
    /// then the field element, low degree first.
    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn dims(&self) -> Option<&[i64]> {
        match &self.geometry {
            Geometry::Box { dims, .. } => Some(dims),
            Geometry::Folded { .. } => None,
        }
    }

    /// The (Λ′, S′) whose folded row supplies the exponents, for shape codes.
    pub fn padded_tiling(&self) -> Option<&Tiling> {
        match &self.geometry {
            Geometry::Folded { coloring, .. } => Some(coloring.tiling()),
            Geometry::Box { .. } => None,
        }
    }

    pub fn base_tiling(&self) -> Option<&Tiling> {
        match &self.geometry {
            Geometry::Folded { base, .. } => Some(base),
            Geometry::Box { .. } => None,
        }
    }

    /// Hex dump, one column per cell.
    pub fn column_hex(&self) -> Vec<String> {
        let width = (self.redundancy() as usize).div_ceil(4);
        self.columns.iter().map(|c| format!("{c:0width$x}")).collect()
    }

    pub fn index_of(&self, cell: &Point) -> Option<usize> {
        self.index_of_cell.get(cell).copied()
    }

    pub fn syndrome(&self, word: &[u8]) -> Result<u64> {
        if word.len() != self.cells.len() {
            return Err(Error::LengthMismatch { expected: self.cells.len(), got: word.len() });
        }
        Ok(word.iter().zip(&self.columns).filter(|(&b, _)| b & 1 == 1).fold(0, |acc, (_, &c)| acc ^ c))
    }

    /// Exponent step between a cell and its neighbor along axis k.
    fn axis_step(&self, k: usize) -> u64 {
        match &self.geometry {
            Geometry::Box { strides, .. } => strides[k],
            Geometry::Folded { coloring, .. } => coloring.color(&Point::unit(self.dim, k)),
        }
    }

    /// Which cells a syndrome points at, or None when no legal burst fits.
    pub fn locate(&self, syndrome: u64) -> Option<BurstError> {
        if syndrome == 0 {
            return Some(BurstError { cells: vec![] });
        }
        let f = syndrome >> (1 + self.d);
        let label = (syndrome >> 1) & ((1 << self.d) - 1);
        let n = (1u64 << self.m) - 1;
        let lf = self.field.log(f)?;
        let cells = if syndrome & 1 == 1 {
            let i = *self.cell_of_exponent.get(&lf)?;
            vec![self.cells[i].clone()]
        } else {
            let k = label as usize;
            if k >= self.dim {
                return None;
            }
            let step = self.axis_step(k) % n;
            let denom = self.field.log(self.field.add(1, self.field.exp(step)))?;
            let e = (lf + n - denom) % n;
            let i = *self.cell_of_exponent.get(&e)?;
            let a = self.cells[i].clone();
            let b = &a + &Point::unit(self.dim, k);
            self.index_of(&b)?;
            vec![a, b]
        };
        let recomputed = cells.iter().fold(0, |acc, c| acc ^ self.columns[self.index_of(c).expect("cell")]);
        (recomputed == syndrome).then_some(BurstError { cells })
    }

    /// Corrects any single error or axis-adjacent double error.
    pub fn correct_2burst(&self, received: &[u8]) -> Result<Correction> {
        let s = self.syndrome(received)?;
        let error = self.locate(s).ok_or(Error::UncorrectablePattern)?;
        let mut word = received.to_vec();
        for c in &error.cells {
            word[self.index_of(c).expect("cell")] ^= 1;
        }
        Ok(Correction { word, error })
    }

    /// XORs a burst into a word.
    pub fn inject(&self, word: &mut [u8], error: &BurstError) -> Result<()> {
        if word.len() != self.cells.len() {
            return Err(Error::LengthMismatch { expected: self.cells.len(), got: word.len() });
        }
        for c in &error.cells {
            let i = self.index_of(c).ok_or_else(|| Error::ParamOutOfRange(format!("{c} is not a code cell")))?;
            word[i] ^= 1;
        }
        Ok(())
    }

    /// All single cells and axis-adjacent pairs inside the code.
    pub fn legal_bursts(&self) -> Vec<BurstError> {
        let mut out: Vec<BurstError> = self.cells.iter().map(|c| BurstError { cells: vec![c.clone()] }).collect();
        for c in &self.cells {
            for k in 0..self.dim {
                let b = c + &Point::unit(self.dim, k);
                if self.index_of(&b).is_some() {
                    out.push(BurstError { cells: vec![c.clone(), b] });
                }
            }
        }
        out
    }

    /// Every legal burst has a distinct nonzero syndrome.
    pub fn syndromes_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.legal_bursts().iter().all(|e| {
            let s = e.cells.iter().fold(0u64, |acc, c| acc ^ self.columns[self.index_of(c).expect("cell")]);
            s != 0 && seen.insert(s)
        })
    }

    /// A basis of the code (the null space of H), for generating test words.
    pub fn null_space_basis(&self) -> Result<Vec<Vec<u8>>> {
        const LIMIT: usize = 1 << 12;
        if self.cells.len() > LIMIT {
            return Err(Error::TooLarge { cost: self.cells.len() as u64, budget: LIMIT as u64 });
        }
        let mut pivots: Vec<(u64, Vec<usize>)> = Vec::new();
        let mut basis = Vec::new();
        for (j, &col) in self.columns.iter().enumerate() {
            let mut v = col;
            let mut combo = vec![j];
            for (pv, pc) in &pivots {
                let top = 63 - pv.leading_zeros();
                if v >> top & 1 == 1 {
                    v ^= pv;
                    for &i in pc {
                        if let Some(pos) = combo.iter().position(|&x| x == i) {
                            combo.swap_remove(pos);
                        } else {
                            combo.push(i);
                        }
                    }
                }
            }
            if v == 0 {
                let mut w = vec![0u8; self.cells.len()];
                for i in combo {
                    w[i] = 1;
                }
                basis.push(w);
            } else {
                pivots.push((v, combo));
                pivots.sort_by_key(|(pv, _)| std::cmp::Reverse(63 - pv.leading_zeros()));
            }
        }
        Ok(basis)
    }
}

fn candidate_lattices(dim: usize, det: i64, limit: usize) -> Vec<Lattice> {
    // Upper-triangular Hermite forms with the given determinant.
    fn rec(dim: usize, row: usize, det: i64, acc: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if row == dim {
            if det == 1 {
                out.push(acc.clone());
            }
            return;
        }
        let divisors: Vec<i64> = if row == dim - 1 { vec![det] } else { (1..=det).filter(|h| det % h == 0).collect() };
        for h in divisors {
            acc[row][row] = h;
            rec(dim, row + 1, det / h, acc, out, limit);
        }
    }
    let mut diags = Vec::new();
    rec(dim, 0, det, &mut vec![vec![0; dim]; dim], &mut diags, limit);
    let mut out = Vec::new();
    for g in diags {
        // entries above the diagonal run over residues of their column's diagonal
        let slots: Vec<(usize, usize)> = (0..dim).flat_map(|r| (r + 1..dim).map(move |c| (r, c))).collect();
        let mut counters = vec![0i64; slots.len()];
        'odometer: loop {
            let mut m = g.clone();
            for (s, &(r, c)) in slots.iter().enumerate() {
                m[r][c] = counters[s];
            }
            if let Ok(l) = Lattice::new(m) {
                out.push(l);
            }
            if out.len() >= limit {
                return out;
            }
            for s in 0..slots.len() {
                counters[s] += 1;
                if counters[s] < g[slots[s].1][slots[s].1] {
                    continue 'odometer;
                }
                counters[s] = 0;
            }
            break;
        }
    }
    out
}

/// Pads S to `target` cells along the direction of folding and searches
/// Hermite-form lattices of that determinant for a tiling the direction folds.
fn auto_pad(t: &Tiling, delta: &Direction, target: usize) -> Result<Tiling> {
    let s = t.shape();
    let row = folded_row(t, delta)?;
    let mut attempts: Vec<Vec<Point>> = Vec::new();
    for (start, step) in [(row.cells.last().cloned(), delta.point().clone()), (row.cells.first().cloned(), delta.reversed().point().clone())] {
        let mut pts = s.points().to_vec();
        let mut cur = start.expect("nonempty row");
        while pts.len() < target {
            cur = &cur + &step;
            if !s.contains(&cur) {
                pts.push(cur.clone());
            }
        }
        attempts.push(pts);
    }
    let mut tried = 0usize;
    for pts in attempts {
        let shape = Shape::with_center(pts, Point::origin(s.dim()))?;
        for lat in candidate_lattices(s.dim(), target as i64, 20_000) {
            tried += 1;
            if let Ok(tl) = Tiling::new(lat, shape.clone()) {
                let folds = if s.dim() == 2 { is_folding_2d(tl.lattice(), delta)? } else { is_folding_bruteforce(&tl, delta)? };
                if folds {
                    return Ok(tl);
                }
            }
        }
    }
    Err(Error::PaddingNotFound(format!("no lattice of determinant {target} tiles a padded shape ({tried} candidates)")))
}

/// Serialized code description, rebuilt and cross-checked on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurstCodeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub padded_lattice: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub padded_shape: Option<Vec<Point>>,
    pub m: u32,
    pub d: u32,
    pub redundancy: u32,
    pub columns: Vec<String>,
}

impl From<&BurstCode> for BurstCodeFile {
    fn from(c: &BurstCode) -> BurstCodeFile {
        let (lattice, shape, direction, padded_lattice, padded_shape) = match &c.geometry {
            Geometry::Box { .. } => (None, None, None, None, None),
            Geometry::Folded { coloring, base } => (
                Some(base.lattice().gen().to_vec()),
                Some(base.shape().points().to_vec()),
                Some(coloring.direction().coords().to_vec()),
                Some(coloring.tiling().lattice().gen().to_vec()),
                Some(coloring.tiling().shape().points().to_vec()),
            ),
        };
        BurstCodeFile {
            dims: c.dims().map(|d| d.to_vec()),
            lattice,
            shape,
            direction,
            padded_lattice,
            padded_shape,
            m: c.m,
            d: c.d,
            redundancy: c.redundancy(),
            columns: c.column_hex(),
        }
    }
}

impl TryFrom<BurstCodeFile> for BurstCode {
    type Error = Error;
    fn try_from(f: BurstCodeFile) -> Result<BurstCode> {
        let code = if let Some(dims) = &f.dims {
            BurstCode::for_box(dims)?
        } else {
            let missing = || Error::Parse("shape code needs lattice, shape and direction".into());
            let lat = Lattice::new(f.lattice.clone().ok_or_else(missing)?)?;
            let shape = Shape::with_center(f.shape.clone().ok_or_else(missing)?, Point::origin(lat.dim()))?;
            let delta = Direction::from_slice(f.direction.as_deref().ok_or_else(missing)?)?;
            check_dim(lat.dim(), delta.dim())?;
            let padded = match (&f.padded_lattice, &f.padded_shape) {
                (Some(g), Some(p)) => {
                    Some(Tiling::new(Lattice::new(g.clone())?, Shape::with_center(p.clone(), Point::origin(lat.dim()))?)?)
                }
                _ => None,
            };
            BurstCode::for_shape(&Tiling::new(lat, shape)?, &delta, padded)?
        };
        if code.column_hex() != f.columns {
            return Err(Error::Parse("stored columns do not match the rebuilt code".into()));
        }
        Ok(code)
    }
}
