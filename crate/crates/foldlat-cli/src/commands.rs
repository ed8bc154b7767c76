//! One function per subcommand. Each returns its text form, its JSON form,
//! and whether the checks it ran passed.

use std::fmt::Write as _;
use std::fs;

use foldlat::bounds::{eval_lower_bound, optimize_bound, table_bounds};
use foldlat::burstcode::{BurstCode, BurstCodeFile};
use foldlat::ddc::{
    apply_sym, best_placement, construct_ddc_family, render_pbm, verify_periodic_sddc, Family, FamilyRequest,
    PatternFile, PeriodicPattern, SYMMETRIES,
};
use foldlat::fields_seq::{bose_b2, msequence, search_b2, verify_b2};
use foldlat::lattice::ShapeFile;
use foldlat::prarray::{fold_bits, star_pentomino, two_row_polyominoes, FoldedArray};
use foldlat::{folded_row, is_folding_ddim, BoundProblem, Direction, Lattice, Point, Shape, Tiling, WindowSpec};
use serde_json::{json, Value};

use crate::CliError;

pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

fn write_file(path: &str, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Usage(format!("cannot write {path}: {e}")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Comma-separated rows, top row first: the row position of each cell,
/// '-' for a cell the row misses, '.' outside the shape.
pub fn label_grid(shape: &Shape, label: impl Fn(&Point) -> Option<usize>) -> Vec<String> {
    let (lo, hi) = shape.bounding_box();
    (lo[1]..=hi[1])
        .rev()
        .map(|y| {
            (lo[0]..=hi[0])
                .map(|x| {
                    let p = Point::from([x, y]);
                    match (shape.contains(&p), label(&p)) {
                        (false, _) => ".".to_string(),
                        (true, Some(i)) => i.to_string(),
                        (true, None) => "-".to_string(),
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect()
}

pub fn fold(lat: Lattice, shape: Shape, delta: &Direction) -> Result<Output, CliError> {
    let t = Tiling::new(lat, shape)?;
    let row = folded_row(&t, delta)?;
    let cert = is_folding_ddim(t.lattice(), delta)?;
    let mut text = String::new();
    let grid = if t.shape().dim() == 2 {
        label_grid(t.shape(), |p| row.position(p))
    } else {
        row.cells.iter().enumerate().map(|(i, c)| format!("{i}: {c}")).collect()
    };
    for line in &grid {
        writeln!(text, "{line}").unwrap();
    }
    let alphas: Vec<String> = cert.alphas.iter().map(|a| a.to_string()).collect();
    writeln!(text, "|S| = {}, folded row length {}", t.size(), row.len()).unwrap();
    writeln!(
        text,
        "tau = {}, alphas = [{}], {}: {}",
        cert.tau,
        alphas.join(", "),
        if cert.verdict { "folding" } else { "not a folding" },
        cert.reason
    )
    .unwrap();
    let json = json!({
        "size": t.size(),
        "direction": delta.coords(),
        "row": row.cells,
        "grid": grid,
        "certificate": cert,
    });
    Ok(Output { text, json, ok: cert.verdict })
}

pub fn b2(q: Option<u64>, search: Option<(u64, usize)>, budget: u64) -> Result<Output, CliError> {
    let set = match (q, search) {
        (Some(q), None) => Some(bose_b2(q)?),
        (None, Some((n, m))) => search_b2(n, m, budget),
        _ => return Err(CliError::Usage("give either --q or both --n and --m".into())),
    };
    let Some(b) = set else {
        let (n, m) = search.expect("search mode");
        return Ok(Output {
            text: format!("no B2 set of size {m} in Z_{n} within {budget} nodes\n"),
            json: json!({ "n": n, "elements": Value::Null }),
            ok: false,
        });
    };
    let ok = verify_b2(&b.elements, b.n);
    let elems: Vec<String> = b.elements.iter().map(|e| e.to_string()).collect();
    let text = format!("modulus {}\nelements {}\nB2: {}\n", b.n, elems.join(" "), yes(ok));
    Ok(Output { text, json: json!({ "n": b.n, "elements": b.elements }), ok })
}

pub fn mseq(n: u32, poly: Option<&str>) -> Result<Output, CliError> {
    let m = msequence(n, poly)?;
    let bits = m.to_bit_string();
    let text = format!("{bits}\npoly {} length {}\n", m.poly, m.len());
    Ok(Output { text, json: json!({ "order": m.order, "poly": m.poly, "bits": bits }), ok: true })
}

pub struct DdcGen<'a> {
    pub family: Family,
    pub req: FamilyRequest,
    pub out: Option<&'a str>,
    pub shape_out: Option<&'a str>,
    pub pbm: Option<&'a str>,
}

pub fn ddc_gen(args: &DdcGen) -> Result<Output, CliError> {
    let inst = construct_ddc_family(args.family, &args.req)?;
    let l = &inst.layout;
    let pp = inst.periodic()?;
    let file = pp.to_file();
    if let Some(path) = args.out {
        write_file(path, &(serde_json::to_string_pretty(&file).expect("pattern json") + "\n"))?;
    }
    if let Some(path) = args.shape_out {
        let sf = ShapeFile::from(inst.tiling.shape());
        write_file(path, &(serde_json::to_string_pretty(&sf).expect("shape json") + "\n"))?;
    }
    if let Some(path) = args.pbm {
        write_file(path, &render_pbm(inst.tiling.shape().points(), &inst.pattern.dots))?;
    }
    let ok = inst.pattern.is_ddc();
    let mut text = String::new();
    writeln!(text, "{} {} (n1 = {}, n2 = {}), G = {:?}, delta = {}", l.family, l.spec, l.n1, l.n2, l.generator, inst.direction)
        .unwrap();
    writeln!(text, "B2 set mod {}: {:?}", inst.b2.n, inst.b2.elements).unwrap();
    writeln!(text, "{} dots in {} cells, density {}", inst.pattern.dots.len(), inst.tiling.size(), pp.density()).unwrap();
    text.push_str(&inst.pattern.ascii());
    writeln!(text, "DDC: {}", yes(ok)).unwrap();
    let json = json!({
        "family": l.family,
        "p": l.p,
        "n1": l.n1,
        "n2": l.n2,
        "shape": l.spec.to_string(),
        "generator": l.generator,
        "direction": l.direction,
        "dots": inst.pattern.dots,
        "pattern": file,
        "ddc": ok,
    });
    Ok(Output { text, json, ok })
}

fn load_pattern(path: &str) -> Result<PeriodicPattern, CliError> {
    let f: PatternFile = crate::input::load_json(path, "pattern")?;
    Ok(PeriodicPattern::try_from(f)?)
}

pub fn ddc_verify(pattern: &str, shape: &Shape, budget: u64) -> Result<Output, CliError> {
    let pp = load_pattern(pattern)?;
    let ok = verify_periodic_sddc(&pp, shape, budget)?;
    let text = format!("every translate of the {}-cell shape is a DDC: {}\n", shape.len(), yes(ok));
    Ok(Output { text, json: json!({ "cells": shape.len(), "sddc": ok }), ok })
}

pub fn ddc_place(pattern: &str, query: &Shape, symmetries: bool, budget: u64) -> Result<Output, CliError> {
    let pp = load_pattern(pattern)?;
    let best = best_placement(&pp, query, symmetries, budget)?;
    let cells: Vec<Point> =
        query.points().iter().map(|p| &best.offset + &apply_sym(SYMMETRIES[best.symmetry], p)).collect();
    let mut text = format!("{} dots at offset {} with symmetry {}\n", best.count, best.offset, best.symmetry);
    text.push_str(&foldlat::ddc::render_ascii(&cells, &best.dots));
    Ok(Output { text, json: serde_json::to_value(&best).expect("placement json"), ok: true })
}

pub fn burst_build(code: &BurstCode, out: Option<&str>) -> Result<Output, CliError> {
    let file = BurstCodeFile::from(code);
    if let Some(path) = out {
        write_file(path, &(serde_json::to_string_pretty(&file).expect("code json") + "\n"))?;
    }
    let ok = code.syndromes_distinct();
    let mut text = format!(
        "length {}, m = {}, d = {}, redundancy {}\n",
        code.len(),
        code.field_degree(),
        code.label_bits(),
        code.redundancy()
    );
    for (c, h) in code.cells().iter().zip(code.column_hex()) {
        writeln!(text, "{c} {h}").unwrap();
    }
    writeln!(text, "syndromes of all bursts distinct: {}", yes(ok)).unwrap();
    Ok(Output { text, json: serde_json::to_value(&file).expect("code json"), ok })
}

pub fn burst_decode(code_path: &str, word: &[u8]) -> Result<Output, CliError> {
    let f: BurstCodeFile = crate::input::load_json(code_path, "code")?;
    let code = BurstCode::try_from(f)?;
    match code.correct_2burst(word) {
        Ok(c) => {
            let bits: String = c.word.iter().map(|b| char::from(b'0' + b)).collect();
            let cells: Vec<String> = c.error.cells.iter().map(|p| p.to_string()).collect();
            let what = if cells.is_empty() { "no error".to_string() } else { format!("error at {}", cells.join(" ")) };
            Ok(Output { text: format!("{what}\n{bits}\n"), json: json!({ "word": bits, "error": c.error.cells }), ok: true })
        }
        Err(foldlat::Error::UncorrectablePattern) => Ok(Output {
            text: "uncorrectable: no burst of length at most 2 explains the syndrome\n".into(),
            json: json!({ "word": Value::Null, "error": Value::Null }),
            ok: false,
        }),
        Err(e) => Err(e.into()),
    }
}

pub fn pra_array(t: &Tiling, delta: &Direction, bits: &[u8], shift: i64) -> Result<FoldedArray, CliError> {
    Ok(fold_bits(t, delta, bits)?.cyclic_shift(shift))
}

pub fn pra_fold(fa: &FoldedArray) -> Output {
    let r = fa.property_report();
    let mut text = fa.render();
    writeln!(
        text,
        "ones {}, zeros {}, balance {}, shift-and-add {}, autocorrelation two-valued {}",
        r.ones,
        r.zeros,
        yes(r.balance),
        yes(r.shift_and_add),
        yes(r.autocorrelation_two_valued)
    )
    .unwrap();
    let row: String = fa.row_bits().iter().map(|b| char::from(b'0' + b)).collect();
    let json = json!({ "rows_bottom_up": fa.rows_bottom_up(), "row": row, "report": r });
    Output { text, json, ok: r.all_hold() }
}

/// Top row first, rows joined by '/'.
pub fn polyomino_picture(cells: &[Point]) -> String {
    let s = Shape::new(cells.to_vec()).expect("nonempty polyomino");
    let (lo, hi) = s.bounding_box();
    (lo[1]..=hi[1])
        .rev()
        .map(|y| {
            let line: String =
                (lo[0]..=hi[0]).map(|x| if s.contains(&Point::from([x, y])) { '#' } else { '.' }).collect();
            line.trim_end_matches('.').to_string()
        })
        .collect::<Vec<_>>()
        .join("/")
}

pub struct WindowRequest {
    pub windows: Vec<(String, Shape)>,
    pub star: bool,
    pub two_row: Option<usize>,
}

pub fn pra_windows(fa: &FoldedArray, req: &WindowRequest) -> Result<Output, CliError> {
    let mut text = String::new();
    let mut ok = true;
    let mut results = Vec::new();
    let mut named = req.windows.clone();
    if req.star {
        named.push(("star".into(), Shape::new(star_pentomino())?));
    }
    for (name, q) in &named {
        let r = fa.window_property(q)?;
        ok &= r.holds;
        writeln!(text, "{name}: {}", if r.holds { "pass" } else { "fail" }).unwrap();
        results.push(json!({ "window": name, "holds": r.holds, "distinct_nonzero": r.distinct_nonzero }));
    }
    let mut sweep = Value::Null;
    if let Some(k) = req.two_row {
        let shapes = two_row_polyominoes(k);
        let mut failing = Vec::new();
        for cells in &shapes {
            if !fa.window_property(&Shape::new(cells.clone())?)?.holds {
                failing.push(polyomino_picture(cells));
            }
        }
        writeln!(text, "two-row size {k}: {} shapes, {} fail", shapes.len(), failing.len()).unwrap();
        for f in &failing {
            writeln!(text, "  {f}").unwrap();
        }
        sweep = json!({ "size": k, "shapes": shapes.len(), "failing": failing });
    }
    Ok(Output { text, json: json!({ "windows": results, "two_row": sweep }), ok })
}

pub fn window_shape(spec: &str) -> Result<(String, Shape), CliError> {
    if spec.starts_with("rect:") {
        let ws: WindowSpec = spec.parse()?;
        Ok((spec.to_string(), ws.to_shape()?))
    } else {
        Ok((spec.to_string(), crate::input::shape(spec)?))
    }
}

fn fmt_params(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(";")
}

pub fn bounds_table(csv: bool) -> Output {
    let rows = table_bounds::<f64>();
    let mut text = String::new();
    if csv {
        text.push_str("n,upper,lower,ratio,argmax\n");
        for r in &rows {
            writeln!(text, "{},{:.6},{:.6},{:.6},{}", r.label, r.upper, r.lower, r.ratio, fmt_params(&r.argmax)).unwrap();
        }
    } else {
        writeln!(text, "{:<8} {:>9} {:>9} {:>9}  argmax", "n", "upper", "lower", "ratio").unwrap();
        for r in &rows {
            writeln!(text, "{:<8} {:>9.6} {:>9.6} {:>9.6}  {}", r.label, r.upper, r.lower, r.ratio, fmt_params(&r.argmax))
                .unwrap();
        }
    }
    Output { text, json: serde_json::to_value(&rows).expect("table json"), ok: true }
}

pub fn bounds_solve(bp: BoundProblem, csv: bool) -> Output {
    let r = optimize_bound::<f64>(bp);
    let text = if csv {
        format!("family,upper,lower,ratio,argmax\n{bp},{:.6},{:.6},{:.6},{}\n", r.upper, r.lower, r.ratio, fmt_params(&r.argmax))
    } else {
        format!(
            "family {bp}\nargmax {}\nlower {:.6}\nupper {:.6}\nratio {:.6}\n",
            fmt_params(&r.argmax),
            r.lower,
            r.upper,
            r.ratio
        )
    };
    Output { text, json: serde_json::to_value(&r).expect("bound json"), ok: true }
}

pub fn bounds_eval(bp: BoundProblem, params: &[f64]) -> Result<Output, CliError> {
    let v = eval_lower_bound(bp, params)?;
    Ok(Output { text: format!("{v:.6}\n"), json: json!({ "family": bp, "params": params, "lower": v }), ok: true })
}
