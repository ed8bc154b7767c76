#![allow(dead_code)]

use std::io::Write;

use foldlat::{Direction, Lattice, Point, Tiling};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Writes past the test harness capture so PASS/FAIL lines always show.
pub fn report(criterion: u32, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let line = format!("{tag} criterion {criterion}: {detail}\n");
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(x: i64, y: i64) -> Point {
    Point::from([x, y])
}

pub fn dir(d: &[i64]) -> Direction {
    Direction::from_slice(d).unwrap()
}

pub fn box_tiling(lat: &Lattice) -> Tiling {
    Tiling::new(lat.clone(), lat.box_shape()).unwrap()
}

/// Order of δ in Z^D / Λ, by repeated addition and a membership test.
pub fn oracle_order(lat: &Lattice, d: &[i64]) -> u64 {
    let mut cur = d.to_vec();
    let mut k = 1;
    while !lat.is_lattice_point(&Point(cur.clone())).unwrap() {
        for (c, x) in cur.iter_mut().zip(d) {
            *c += x;
        }
        k += 1;
    }
    k
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Upper-triangular row Hermite normal forms in 3-D with volume in `lo..=hi`.
pub fn hnf_3d(lo: i64, hi: i64) -> Vec<Lattice> {
    let mut out = Vec::new();
    for a in 1..=hi {
        for c in 1..=hi / a {
            for e in 1..=hi / (a * c) {
                if a * c * e < lo {
                    continue;
                }
                for x in 0..c {
                    for y in 0..e {
                        for z in 0..e {
                            out.push(Lattice::new(vec![vec![a, x, y], vec![0, c, z], vec![0, 0, e]]).unwrap());
                        }
                    }
                }
            }
        }
    }
    out
}

/// All nonzero directions with every |d_i| ≤ r.
pub fn directions(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(dim as u32))
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let v = (code % side) as i64 - r;
                    code /= side;
                    v
                })
                .collect::<Vec<i64>>()
        })
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect()
}

/// Generator matrices with entries in [−m, m] and |det| in `lo..=hi`.
pub fn sweep_2d(m: i64, lo: i64, hi: i64) -> Vec<[[i64; 2]; 2]> {
    let mut out = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            for c in -m..=m {
                for d in -m..=m {
                    let det = (a * d - b * c).abs();
                    if det >= lo && det <= hi {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}
