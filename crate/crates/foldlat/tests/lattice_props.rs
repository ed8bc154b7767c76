mod common;

use common::{box_tiling, pt};
use foldlat::lattice::{det_bareiss, LatticeFile, ShapeFile};
use foldlat::{center_of, verify_tiling, Error, Lattice, Point, Shape, Tiling};
use proptest::prelude::*;

/// Determinant by cofactor expansion.
fn det_expand(m: &[Vec<i64>]) -> i128 {
    if m.len() == 1 {
        return m[0][0] as i128;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] as i128 * det_expand(&minor)
        })
        .sum()
}

fn matrix(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, dim), dim)
}

fn nonsingular(dim: usize) -> impl Strategy<Value = Lattice> {
    matrix(dim).prop_filter_map("singular or too large", |g| {
        let d = det_expand(&g).abs();
        (d > 0 && d <= 400).then(|| Lattice::new(g).unwrap())
    })
}

proptest! {
    #[test]
    fn bareiss_matches_expansion(m in (1usize..=4).prop_flat_map(matrix)) {
        let want = det_expand(&m);
        let big: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        prop_assert_eq!(det_bareiss(big), want);
        match Lattice::new(m.clone()) {
            Ok(l) => prop_assert_eq!(l.det(), want),
            Err(e) => {
                prop_assert_eq!(want, 0);
                prop_assert_eq!(e, Error::SingularLattice);
            }
        }
    }

    #[test]
    fn coset_labels_roundtrip(lat in (2usize..=3).prop_flat_map(nonsingular)) {
        let n = lat.volume();
        for i in 0..n {
            let r = lat.coset_representative(i);
            prop_assert_eq!(lat.coset_index(&r).unwrap(), i);
            prop_assert_eq!(lat.residue(&r).unwrap(), r);
        }
    }

    #[test]
    fn coset_equality_is_lattice_membership(
        lat in nonsingular(2),
        a in (-30i64..30, -30i64..30),
        b in (-30i64..30, -30i64..30),
    ) {
        let (p, q) = (pt(a.0, a.1), pt(b.0, b.1));
        let same = lat.coset_index(&p).unwrap() == lat.coset_index(&q).unwrap();
        prop_assert_eq!(same, lat.is_lattice_point(&(&p - &q)).unwrap());
        if let Some(u) = lat.coefficients(&(&p - &q)).unwrap() {
            let back: Vec<i128> = (0..2).map(|j| (0..2).map(|i| u[i] * lat.gen()[i][j] as i128).sum()).collect();
            prop_assert_eq!(back, vec![(a.0 - b.0) as i128, (a.1 - b.1) as i128]);
        }
    }

    #[test]
    fn hnf_is_basis_invariant(lat in nonsingular(3), k in -3i64..=3, i in 0usize..3, j in 0usize..3) {
        prop_assume!(i != j);
        let mut g = lat.gen().to_vec();
        let src = g[j].clone();
        g[i].iter_mut().zip(&src).for_each(|(a, b)| *a += k * b);
        g.swap(0, 2);
        let other = Lattice::new(g).unwrap();
        prop_assert_eq!(other.hnf(), lat.hnf());
        prop_assert_eq!(other.volume(), lat.volume());
    }

    #[test]
    fn reduction_lands_in_shape(lat in nonsingular(2), x in -40i64..40, y in -40i64..40) {
        let t = box_tiling(&lat);
        let p = pt(x, y);
        let r = t.reduce(&p).clone();
        prop_assert!(t.shape().contains(&r));
        let c = t.center_of(&p).unwrap();
        prop_assert!(lat.is_lattice_point(&c).unwrap());
        prop_assert_eq!(&c + &r, p);
    }

    /// A random shape tiles iff its points fall in pairwise distinct cosets.
    #[test]
    fn tiling_against_pairwise_oracle(
        lat in nonsingular(2).prop_filter("small", |l| l.volume() <= 12),
        cells in prop::collection::btree_set((-4i64..4, -4i64..4), 1..12),
    ) {
        let pts: Vec<Point> = cells.iter().map(|&(x, y)| pt(x, y)).collect();
        let s = Shape::new(pts.clone()).unwrap();
        let distinct = pts.iter().enumerate().all(|(i, p)| {
            pts[i + 1..].iter().all(|q| !lat.is_lattice_point(&(p - q)).unwrap())
        });
        let want = distinct && pts.len() as u64 == lat.volume();
        prop_assert_eq!(verify_tiling(&lat, &s).unwrap(), want);
    }
}

#[test]
fn shape_normalization() {
    let s = Shape::new(vec![pt(3, 1), pt(2, 5), pt(2, 4)]).unwrap();
    assert_eq!(s.points(), &[pt(0, 0), pt(0, 1), pt(1, -3)]);
    assert!(Shape::new(vec![pt(0, 0), pt(0, 0)]).is_err());
    assert!(Shape::with_center(vec![pt(1, 1)], pt(0, 0)).is_err());
    assert!(Shape::new(vec![]).is_err());
}

#[test]
fn dimension_errors() {
    let l = Lattice::new(vec![vec![2, 1], vec![0, 3]]).unwrap();
    assert_eq!(l.coset_index(&Point::from([1, 2, 3])), Err(Error::DimensionError { expected: 2, got: 3 }));
    let s3 = Shape::new(vec![Point::from([0, 0, 0])]).unwrap();
    assert!(matches!(Tiling::new(l.clone(), s3), Err(Error::DimensionError { .. })));
    assert!(matches!(Lattice::new(vec![vec![1, 2]]), Err(Error::DimensionError { .. })));
}

#[test]
fn not_a_tiling_reports_the_conflict() {
    let l = Lattice::new(vec![vec![3, 2], vec![7, 1]]).unwrap();
    let strip: Vec<Point> = (0..11).map(|x| pt(x, 0)).collect();
    let s = Shape::new(strip.clone()).unwrap();
    assert!(verify_tiling(&l, &s).unwrap());
    let mut bad = strip;
    // (3, 2) is the lattice translate of (0, 0).
    bad[10] = pt(3, 2);
    let bs = Shape::new(bad).unwrap();
    assert!(!verify_tiling(&l, &bs).unwrap());
    assert!(matches!(center_of(&l, &bs, &pt(5, 5)), Err(Error::NotATiling(_))));
    let wrong_size = Shape::new(vec![pt(0, 0), pt(1, 0)]).unwrap();
    assert!(matches!(Tiling::new(l, wrong_size), Err(Error::NotATiling(_))));
}

#[test]
fn file_forms_roundtrip() {
    let l = Lattice::new(vec![vec![3, 4], vec![10, 3]]).unwrap();
    let json = serde_json::to_string(&LatticeFile::from(&l)).unwrap();
    let back: Lattice = serde_json::from_str::<LatticeFile>(&json).unwrap().try_into().unwrap();
    assert_eq!(back, l);
    let s = Shape::new(vec![pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap();
    let json = serde_json::to_string(&ShapeFile::from(&s)).unwrap();
    let back: Shape = serde_json::from_str::<ShapeFile>(&json).unwrap().try_into().unwrap();
    assert_eq!(back, s);
    let bad = r#"{"dim": 3, "gen": [[1, 0], [0, 1]]}"#;
    let f: LatticeFile = serde_json::from_str(bad).unwrap();
    assert!(Lattice::try_from(f).is_err());
}
