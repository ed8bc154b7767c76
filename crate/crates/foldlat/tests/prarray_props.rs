mod common;

use std::collections::{BTreeSet, HashSet};

use common::{dir, pt};
use foldlat::prarray::{fold_bits, star_pentomino, two_row_polyominoes};
use foldlat::shapes::build_shape;
use foldlat::{fold_msequence, msequence, Error, Lattice, Point, Shape, Tiling, WindowSpec};
use proptest::prelude::*;

/// 31-cell and 15-cell tilings with a folding direction.
fn instances() -> Vec<(Tiling, [i64; 2])> {
    let corner = Tiling::new(
        Lattice::new(vec![vec![3, 4], vec![10, 3]]).unwrap(),
        build_shape(&"corner:5,7,1,4".parse().unwrap()).unwrap(),
    )
    .unwrap();
    let f1 = Lattice::diagonal(&[5, 3]).unwrap();
    let strip = Tiling::new(
        Lattice::new(vec![vec![5, 1], vec![4, 7]]).unwrap(),
        Shape::new((0..31).map(|x| pt(x, 0)).collect()).unwrap(),
    )
    .unwrap();
    vec![(corner.clone(), [1, 0]), (corner, [0, 1]), (Tiling::new(f1.clone(), f1.box_shape()).unwrap(), [1, 1]), (strip, [1, 0])]
}

/// Every window over a region that meets each coset, read cell by cell.
fn window_oracle(fa: &foldlat::FoldedArray, q: &Shape, lat: &Lattice) -> (usize, bool) {
    let n = lat.volume() as i64;
    let mut seen = HashSet::new();
    let mut zero = false;
    let mut cosets = HashSet::new();
    for y in 0..n {
        for x in 0..n {
            let b = pt(x, y);
            if !cosets.insert(lat.coset_index(&b).unwrap()) {
                continue;
            }
            let w: Vec<u8> = q.points().iter().map(|c| fa.value(&(&b + c))).collect();
            zero |= w.iter().all(|&v| v == 0);
            seen.insert(w);
        }
    }
    assert_eq!(cosets.len() as i64, n);
    (seen.len(), zero)
}

/// Fixed polyominoes grown cell by cell, kept when they span two rows.
fn two_row_oracle(size: usize) -> usize {
    let norm = |s: &BTreeSet<(i64, i64)>| -> BTreeSet<(i64, i64)> {
        let x0 = s.iter().map(|c| c.0).min().unwrap();
        let y0 = s.iter().map(|c| c.1).min().unwrap();
        s.iter().map(|&(x, y)| (x - x0, y - y0)).collect()
    };
    let mut level: HashSet<BTreeSet<(i64, i64)>> = HashSet::from([BTreeSet::from([(0, 0)])]);
    for _ in 1..size {
        let mut next = HashSet::new();
        for s in &level {
            for &(x, y) in s {
                for c in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
                    if !s.contains(&c) {
                        let mut t = s.clone();
                        t.insert(c);
                        next.insert(norm(&t));
                    }
                }
            }
        }
        level = next;
    }
    level.iter().filter(|s| s.iter().map(|c| c.1).max() == Some(1)).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Windows of the right size carry every nonzero pattern exactly when the oracle says so.
    #[test]
    fn window_property_matches_oracle(idx in 0usize..4, cells in prop::collection::btree_set((0i64..4, 0i64..3), 5)) {
        let (t, d) = instances()[idx].clone();
        let k = (t.size() + 1).trailing_zeros() as usize;
        let m = msequence(k as u32, None).unwrap();
        let fa = fold_msequence(&t, &dir(&d), &m).unwrap();
        let pts: Vec<Point> = cells.iter().take(k).map(|&(x, y)| pt(x, y)).collect();
        let q = Shape::new(pts).unwrap();
        let rep = fa.window_property(&q).unwrap();
        let (distinct, zero) = window_oracle(&fa, &q, t.lattice());
        prop_assert_eq!(rep.holds, distinct == t.size() && !zero);
        prop_assert_eq!(rep.zero_windows.is_empty(), !zero);
    }

    #[test]
    fn shifts_rotate_the_row(idx in 0usize..4, s in -100i64..100, x in -20i64..20, y in -20i64..20) {
        let (t, d) = instances()[idx].clone();
        let n = t.size();
        let m = msequence((n + 1).trailing_zeros(), None).unwrap();
        let fa = fold_msequence(&t, &dir(&d), &m).unwrap();
        let sh = fa.cyclic_shift(s);
        let c = fa.coloring().color(&pt(x, y)) as i64;
        prop_assert_eq!(sh.value(&pt(x, y)), m.bits[(c + s).rem_euclid(n as i64) as usize]);
        prop_assert_eq!(sh.property_report(), fa.property_report());
        prop_assert_eq!(sh.cyclic_shift(-s).cell_bits(), fa.cell_bits());
    }
}

#[test]
fn msequence_arrays_have_their_properties() {
    for (t, d) in instances() {
        let n = t.size();
        let m = msequence((n + 1).trailing_zeros(), None).unwrap();
        let fa = fold_msequence(&t, &dir(&d), &m).unwrap();
        let r = fa.property_report();
        assert!(r.all_hold(), "{d:?}");
        assert_eq!(r.ones, n.div_ceil(2));
        // Planar correlation over the whole period is n or −1.
        for v in [pt(0, 0), pt(1, 0), pt(0, 1), pt(2, 3)] {
            let c = fa.planar_correlation(&v);
            let zero_shift = fa.coloring().color(&v) == 0;
            assert_eq!(c, if zero_shift { n as i64 } else { -1 }, "{v}");
        }
    }
}

#[test]
fn non_msequence_bits_fail() {
    let lat = Lattice::diagonal(&[5, 3]).unwrap();
    let t = Tiling::new(lat.clone(), lat.box_shape()).unwrap();
    let mut bits = msequence(4, None).unwrap().bits;
    // Swap two unequal bits: balance survives, the other properties do not.
    let j = (1..bits.len()).find(|&j| bits[j] != bits[0]).unwrap();
    bits.swap(0, j);
    let fa = fold_bits(&t, &dir(&[1, 1]), &bits).unwrap();
    let r = fa.property_report();
    assert!(r.balance);
    assert!(!r.shift_and_add && !r.autocorrelation_two_valued);
    assert!(matches!(fold_bits(&t, &dir(&[1, 1]), &bits[1..]), Err(Error::LengthMismatch { .. })));
}

#[test]
fn window_errors_and_specs() {
    let lat = Lattice::diagonal(&[5, 3]).unwrap();
    let t = Tiling::new(lat.clone(), lat.box_shape()).unwrap();
    let fa = fold_msequence(&t, &dir(&[1, 1]), &msequence(4, None).unwrap()).unwrap();
    let star = Shape::new(star_pentomino()).unwrap();
    assert!(matches!(fa.window_property(&star), Err(Error::WindowSizeMismatch { expected: 4, got: 5 })));
    assert_eq!("rect:2,2".parse::<WindowSpec>().unwrap(), WindowSpec::Rect { rows: 2, cols: 2 });
    assert!("rect:2".parse::<WindowSpec>().is_err());
    assert!("circle:2".parse::<WindowSpec>().is_err());
    assert!(WindowSpec::Rect { rows: 0, cols: 2 }.to_shape().is_err());
    assert_eq!(WindowSpec::Rect { rows: 2, cols: 3 }.to_shape().unwrap().len(), 6);
}

#[test]
fn polyomino_counts_match_growth_oracle() {
    for size in 2..=7 {
        let shapes = two_row_polyominoes(size);
        assert_eq!(shapes.len(), two_row_oracle(size), "size {size}");
        assert!(shapes.iter().all(|s| s.len() == size));
    }
}

#[test]
fn render_rows() {
    let lat = Lattice::diagonal(&[5, 3]).unwrap();
    let t = Tiling::new(lat.clone(), lat.box_shape()).unwrap();
    let fa = fold_msequence(&t, &dir(&[1, 1]), &msequence(4, None).unwrap()).unwrap();
    let rows = fa.rows_bottom_up();
    assert_eq!(rows.len(), 3);
    for (y, r) in rows.iter().enumerate() {
        let want: String = (0..5).map(|x| char::from(b'0' + fa.value(&pt(x, y as i64)))).collect();
        assert_eq!(r, &want);
    }
}
