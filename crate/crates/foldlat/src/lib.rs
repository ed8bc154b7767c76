//! Lattice tilings, foldings, and the structures built from them: distinct
//! difference configurations, multidimensional burst-correcting codes, and
//! pseudo-random arrays.
//!
//! Combinatorics is exact integer arithmetic throughout. Only the
//! continuous geometry in [`bounds`] and [`shapes::hex_to_square`] is generic
//! over the float type, with `f64` aliases exported here.

pub mod bounds;
pub mod burstcode;
pub mod ddc;
pub mod error;
pub mod fields_seq;
pub mod folding;
pub mod lattice;
pub mod prarray;
pub mod shapes;

pub use error::{Error, Result};
pub use folding::{
    classic_lattice, enumerate_foldings, folded_row, is_folding_2d, is_folding_bruteforce, is_folding_ddim,
    lattice_coloring, ClassicFolding, ClassicKind, Coloring, Direction, FoldedRow, FoldingCertificate,
};
pub use lattice::{center_of, verify_tiling, Lattice, Point, Shape, Tiling};
pub use shapes::{build_shape, morph_shape, morph_toward, ShapeSpec};
pub use fields_seq::{bose_b2, gf_build, msequence, validate_msequence, verify_b2, B2Set, FiniteField, MSequence};
pub use ddc::{
    build_periodic, construct_ddc_family, fold_dots, verify_ddc, verify_periodic_sddc, DotPattern, Family,
    FamilyRequest, PeriodicPattern,
};
pub use burstcode::BurstCode;
pub use prarray::{fold_msequence, FoldedArray, WindowSpec};

pub use bounds::{BoundProblem, BoundResult, TableRow};

/// Bound results in double precision.
pub type BoundResultF64 = bounds::BoundResult<f64>;
pub type TableRowF64 = bounds::TableRow<f64>;
pub type PolygonF64 = bounds::Polygon<f64>;
