//! Worked examples regenerated as text and diffed against checked-in
//! golden files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use foldlat::ddc::{fold_marks, render_ascii, Family, FamilyRequest};
use foldlat::folding::ternary_sweep;
use foldlat::fields_seq::B2Set;
use foldlat::shapes::{corner_transfer_target, qr_hexagon_grid};
use foldlat::{
    build_shape, classic_lattice, enumerate_foldings, is_folding_bruteforce, lattice_coloring, morph_toward,
    msequence, ClassicKind, Direction, Lattice, Point, Shape, ShapeSpec, Tiling, WindowSpec,
};
use serde_json::json;

use crate::commands::{self, label_grid, Output, WindowRequest};
use crate::CliError;

type Example = fn() -> Result<String, CliError>;

const EXAMPLES: [(&str, Example); 14] = [
    ("f1_window_3x5", f1_window_3x5),
    ("f2_ruler_3x5", f2_ruler_3x5),
    ("ruler31_diagonal_fold", ruler31_diagonal_fold),
    ("ternary_sweep_2x2", ternary_sweep_2x2),
    ("eleven_cell_orders", eleven_cell_orders),
    ("strip_step_two", strip_step_two),
    ("corner_msequence_arrays", corner_msequence_arrays),
    ("rect_to_qr_hexagon", rect_to_qr_hexagon),
    ("hex_sphere_r2", hex_sphere_r2),
    ("corner_to_hex_sphere", corner_to_hex_sphere),
    ("corner_and_flipped_t", corner_and_flipped_t),
    ("pentagon_bound", pentagon_bound),
    ("bound_table", bound_table),
    ("ddc_families", ddc_families),
];

fn dir(d: &[i64]) -> Result<Direction, CliError> {
    Ok(Direction::from_slice(d)?)
}

fn spec_shape(s: &str) -> Result<Shape, CliError> {
    Ok(build_shape(&s.parse::<ShapeSpec>()?)?)
}

fn color_grid(t: &Tiling, d: &Direction) -> Result<Vec<String>, CliError> {
    let c = lattice_coloring(t, d)?;
    Ok(label_grid(t.shape(), |p| Some(c.color(p) as usize)))
}

fn lines(out: &mut String, ls: &[String]) {
    for l in ls {
        writeln!(out, "{l}").unwrap();
    }
}

fn f1_window_3x5() -> Result<String, CliError> {
    let f = classic_lattice(ClassicKind::F1, 3, 5)?;
    let t = Tiling::new(f.lattice, f.shape)?;
    let m = msequence(4, Some("11001"))?;
    let mut out = format!("F1 on 3x5, delta {}\nsequence {}\n", f.direction, m.to_bit_string());
    lines(&mut out, &color_grid(&t, &f.direction)?);
    let fa = foldlat::fold_msequence(&t, &f.direction, &m)?;
    out.push_str(&fa.render());
    let w = fa.window_property(&WindowSpec::Rect { rows: 2, cols: 2 }.to_shape()?)?;
    writeln!(out, "2x2 windows: {} distinct nonzero, holds {}", w.distinct_nonzero, w.holds).unwrap();
    Ok(out)
}

fn f2_ruler_3x5() -> Result<String, CliError> {
    let f = classic_lattice(ClassicKind::F2, 3, 5)?;
    let t = Tiling::new(f.lattice, f.shape)?;
    let marks = [0, 1, 4, 10, 12];
    let p = fold_marks(&t, &f.direction, &marks)?;
    let mut out = format!("F2 on 3x5, delta {}, marks {marks:?}\n", f.direction);
    lines(&mut out, &color_grid(&t, &f.direction)?);
    out.push_str(&p.ascii());
    writeln!(out, "DDC {}", p.is_ddc()).unwrap();
    Ok(out)
}

fn ruler31_diagonal_fold() -> Result<String, CliError> {
    let lat = Lattice::new(vec![vec![1, 7], vec![-4, 3]])?;
    let t = Tiling::new(lat, spec_shape("rect:1,31")?)?;
    let d = dir(&[-1, 1])?;
    let c = lattice_coloring(&t, &d)?;
    let marks = [0, 1, 4, 10, 12, 17];
    let b = B2Set { n: 31, elements: marks.to_vec() };
    let mut out = format!("lattice [[1,7],[-4,3]], delta {d}, marks {marks:?} mod 31\n");
    for p in [[1, 0], [0, 1]] {
        writeln!(out, "color {:?} = {}", p, c.color(&Point::from(p))).unwrap();
    }
    // A 7 x 5 window of the colored plane and of the folded dots.
    for y in (0..5).rev() {
        let row: Vec<String> = (0..7).map(|x| format!("{:>2}", c.color(&Point::from([x, y])))).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    let pp = foldlat::build_periodic(&t, &d, &b)?;
    out.push_str(&pp.ascii_window(12, 8));
    Ok(out)
}

fn ternary_sweep_2x2() -> Result<String, CliError> {
    let square = spec_shape("rect:2,2")?;
    let mut out = String::new();
    for g in [[[2, 2], [0, 2]], [[2, 1], [0, 2]]] {
        let lat = Lattice::new(g.iter().map(|r| r.to_vec()).collect())?;
        let t = Tiling::new(lat, square.clone())?;
        writeln!(out, "G = {g:?}").unwrap();
        for (d, ok) in ternary_sweep(&t)? {
            writeln!(out, "  {d}: {}", if ok { "folding" } else { "no" }).unwrap();
        }
    }
    Ok(out)
}

fn notched_shape() -> Result<Shape, CliError> {
    let pts: Vec<Point> =
        (0..3).flat_map(|y| (0..if y < 2 { 4 } else { 3 }).map(move |x| Point::from([x, y]))).collect();
    Ok(Shape::with_center(pts, Point::origin(2))?)
}

fn stepped_shape() -> Result<Shape, CliError> {
    let cells = [(0, 0), (1, 0), (1, 3), (2, 3), (0, 1), (1, 1), (2, 1), (3, 1), (0, 2), (1, 2), (2, 2)];
    Ok(Shape::with_center(cells.iter().map(|&(x, y)| Point::from([x, y])).collect(), Point::origin(2))?)
}

fn eleven_cell_orders() -> Result<String, CliError> {
    let lat = Lattice::new(vec![vec![3, 2], vec![7, 1]])?;
    let mut out = String::new();
    let shapes = [("strip", spec_shape("rect:1,11")?), ("notched", notched_shape()?), ("stepped", stepped_shape()?)];
    for (name, s) in shapes {
        let t = Tiling::new(lat.clone(), s)?;
        for d in [[1, 0], [0, 1], [1, 1], [1, -1], [2, 0]] {
            let d = dir(&d)?;
            if !is_folding_bruteforce(&t, &d)? {
                writeln!(out, "{name} {d}: not a folding").unwrap();
                continue;
            }
            writeln!(out, "{name} {d}:").unwrap();
            lines(&mut out, &color_grid(&t, &d)?);
        }
    }
    let strip = Tiling::new(lat, spec_shape("rect:1,11")?)?;
    let classes = enumerate_foldings(&strip)?;
    writeln!(out, "{} classes of folded rows on the strip", classes.len()).unwrap();
    for (d, row) in classes {
        let cells: Vec<String> = row.cells.iter().map(|c| c.coords()[0].to_string()).collect();
        writeln!(out, "  {d}: {}", cells.join(" ")).unwrap();
    }
    Ok(out)
}

fn strip_step_two() -> Result<String, CliError> {
    let lat = Lattice::new(vec![vec![3, 2], vec![7, 1]])?;
    let t = Tiling::new(lat, spec_shape("rect:1,11")?)?;
    let o = commands::fold(t.lattice().clone(), t.shape().clone(), &dir(&[2, 0])?)?;
    Ok(o.text)
}

fn corner_msequence_arrays() -> Result<String, CliError> {
    let lat = Lattice::new(vec![vec![3, 4], vec![10, 3]])?;
    let t = Tiling::new(lat, spec_shape("corner:5,7,1,4")?)?;
    let m = msequence(5, None)?;
    let mut out = format!("CR(5,7;1,4), G = [[3,4],[10,3]], sequence {}\n", m.to_bit_string());
    for d in [[1, 0], [0, 1]] {
        let d = dir(&d)?;
        let fa = foldlat::fold_msequence(&t, &d, &m)?;
        writeln!(out, "delta {d}").unwrap();
        out.push_str(&commands::pra_fold(&fa).text);
        let r = fa.property_report();
        let ac: Vec<String> = r.autocorrelation.iter().map(|c| c.to_string()).collect();
        writeln!(out, "autocorrelation {}", ac.join(" ")).unwrap();
        let windows = vec![commands::window_shape("rect:5,1")?, commands::window_shape("rect:1,5")?];
        let w = commands::pra_windows(&fa, &WindowRequest { windows, star: true, two_row: Some(5) })?;
        out.push_str(&w.text);
    }
    Ok(out)
}

fn rect_to_qr_hexagon() -> Result<String, CliError> {
    let q = qr_hexagon_grid(6, 8)?;
    let mut out = format!(
        "6x8 rectangle, lattice {:?}, delta {}, {} cells off the hexagon\n",
        q.lattice.gen(),
        q.direction,
        q.symmetric_difference
    );
    out.push_str(&render_ascii(&q.points, &[]));
    Ok(out)
}

fn hex_sphere_r2() -> Result<String, CliError> {
    let s = spec_shape("hexsphere:2")?;
    let mut out = format!("hex sphere radius 2, {} cells\n", s.len());
    out.push_str(&render_ascii(s.points(), &[]));
    Ok(out)
}

fn corner_to_hex_sphere() -> Result<String, CliError> {
    let lat = Lattice::new(vec![vec![5, 4], vec![-4, 9]])?;
    let t = Tiling::new(lat, spec_shape("corner:9,9,5,4")?)?;
    let mut out = String::from("CR(9,9;5,4), G = [[5,4],[-4,9]]\n");
    let mut chosen = None;
    for d in [[1, 0], [0, 1], [1, 1], [1, -1]] {
        let d = dir(&d)?;
        if is_folding_bruteforce(&t, &d)? {
            chosen = Some(d);
            break;
        }
    }
    let Some(d) = chosen else {
        out.push_str("no unit folding direction\n");
        return Ok(out);
    };
    let target = corner_transfer_target(4, 5, 5, 4, 4)?;
    let moved = morph_toward(&t, &d, &target, 1000)?;
    writeln!(out, "delta {d}, {} moves, {} cells off target", moved.steps.len(), moved.symmetric_difference).unwrap();
    out.push_str(&render_ascii(&moved.points, &[]));
    let sphere = spec_shape("hexsphere:4")?;
    writeln!(out, "{} cells; hex sphere radius 4 has {}", moved.points.len(), sphere.len()).unwrap();
    Ok(out)
}

fn corner_and_flipped_t() -> Result<String, CliError> {
    let mut out = String::new();
    for spec in ["corner:7,11,2,4", "flippedt:5,17,4,6"] {
        let s = spec_shape(spec)?;
        writeln!(out, "{spec}, {} cells", s.len()).unwrap();
        out.push_str(&render_ascii(s.points(), &[]));
    }
    Ok(out)
}

fn pentagon_bound() -> Result<String, CliError> {
    Ok(commands::bounds_solve(foldlat::BoundProblem::Pentagon, false).text)
}

fn bound_table() -> Result<String, CliError> {
    Ok(commands::bounds_table(false).text)
}

fn ddc_families() -> Result<String, CliError> {
    let mut out = String::new();
    for family in [Family::Rectangle, Family::Corner, Family::FlippedT] {
        let req = FamilyRequest { p: 7, ..Default::default() };
        let o = commands::ddc_gen(&commands::DdcGen { family, req, out: None, shape_out: None, pbm: None })?;
        out.push_str(&o.text);
    }
    Ok(out)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn run(target: &str, out_dir: &Path, golden: &Path, update: bool) -> Result<Output, CliError> {
    if target == "list" {
        let names: Vec<&str> = EXAMPLES.iter().map(|e| e.0).collect();
        return Ok(Output { text: names.join("\n") + "\n", json: json!(names), ok: true });
    }
    let chosen: Vec<&(&str, Example)> = EXAMPLES.iter().filter(|e| target == "all" || e.0 == target).collect();
    if chosen.is_empty() {
        return Err(CliError::Usage(format!("unknown example {target:?}; try `repro list`")));
    }
    let dest = if update { golden } else { out_dir };
    fs::create_dir_all(dest).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dest.display())))?;
    let mut text = String::new();
    let mut results = Vec::new();
    let mut ok = true;
    for (name, f) in chosen {
        let got = f()?;
        let file = format!("{name}.txt");
        write(&dest.join(&file), &got)?;
        let status = if update {
            "written"
        } else {
            match fs::read_to_string(golden.join(&file)) {
                Ok(want) if want == got => "same",
                Ok(_) => "differs",
                Err(_) => "missing",
            }
        };
        ok &= status == "same" || status == "written";
        writeln!(text, "{name}: {status}").unwrap();
        results.push(json!({ "name": name, "status": status }));
    }
    Ok(Output { text, json: json!(results), ok })
}
