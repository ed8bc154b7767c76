use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn foldlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foldlat")).args(args).output().expect("run foldlat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let o = foldlat(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn fold_prints_the_row_order() {
    let o = foldlat(&["fold", "--lattice", "[[3,2],[7,1]]", "--shape", "rect:1,11", "--delta", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0,3,6,9,1,4,7,10,2,5,8\n"), "{}", stdout(&o));
    let v = json(&["fold", "--lattice", "[[3,2],[7,1]]", "--shape", "rect:1,11", "--delta", "1,-1"]);
    assert_eq!(v["grid"][0], "0,7,3,10,6,2,9,5,1,8,4");
    assert_eq!(v["certificate"]["verdict"], true);
}

#[test]
fn fold_accepts_files() {
    let dir = tempfile::tempdir().unwrap();
    let lat = dir.path().join("lat.json");
    let shape = dir.path().join("shape.json");
    fs::write(&lat, r#"{"dim":2,"gen":[[3,2],[7,1]]}"#).unwrap();
    fs::write(&shape, "[[0,0],[1,0],[2,0],[3,0],[4,0],[5,0],[6,0],[7,0],[8,0],[9,0],[10,0]]").unwrap();
    let o = foldlat(&["fold", "--lattice", lat.to_str().unwrap(), "--shape", shape.to_str().unwrap(), "--delta", "2,0"]);
    assert!(stdout(&o).starts_with("0,6,1,7,2,8,3,9,4,10,5\n"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let not_folding = foldlat(&["fold", "--lattice", "[[2,0],[0,2]]", "--shape", "rect:2,2", "--delta", "1,0"]);
    assert_eq!(not_folding.status.code(), Some(1));
    let bad_lattice = foldlat(&["fold", "--lattice", "[[1,2],[2,4]]", "--shape", "rect:2,2", "--delta", "1,0"]);
    assert_eq!(bad_lattice.status.code(), Some(2));
    assert!(!bad_lattice.stderr.is_empty());
    assert_eq!(foldlat(&["mseq", "--n", "4", "--poly", "10001"]).status.code(), Some(2));
    assert_eq!(foldlat(&["b2", "--q", "6"]).status.code(), Some(2));
    assert_eq!(foldlat(&["bounds", "eval", "--family", "octagon", "--params", "2"]).status.code(), Some(2));
    assert_eq!(foldlat(&["repro", "nonesuch"]).status.code(), Some(2));
}

#[test]
fn b2_and_mseq() {
    let v = json(&["b2", "--q", "7"]);
    assert_eq!(v["n"], 48);
    assert_eq!(v["elements"].as_array().unwrap().len(), 7);
    let s = json(&["b2", "--n", "31", "--m", "6"]);
    assert_eq!(s["elements"].as_array().unwrap().len(), 6);
    let m = foldlat(&["mseq", "--n", "5"]);
    assert_eq!(stdout(&m).lines().next(), Some("0000100101100111110001101110101"));
    assert_eq!(json(&["mseq", "--n", "4", "--poly", "11001"])["bits"], "000111101011001");
}

#[test]
fn ddc_gen_verify_place() {
    let dir = tempfile::tempdir().unwrap();
    let pat = dir.path().join("pat.json");
    let shape = dir.path().join("shape.json");
    let pbm = dir.path().join("p.pbm");
    let o = foldlat(&[
        "ddc", "gen", "--family", "corner", "--p", "7", "--n1", "4",
        "--out", pat.to_str().unwrap(),
        "--shape-out", shape.to_str().unwrap(),
        "--pbm", pbm.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("corner:8,7,4,2"));
    assert!(fs::read_to_string(&pbm).unwrap().starts_with("P1"));
    let v = foldlat(&["ddc", "verify", "--pattern", pat.to_str().unwrap(), "--shape", shape.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    // A shape twice as wide sees repeated differences somewhere.
    let big = foldlat(&["ddc", "verify", "--pattern", pat.to_str().unwrap(), "--shape", "rect:8,14"]);
    assert_eq!(big.status.code(), Some(1));
    let p = json(&["ddc", "place", "--pattern", pat.to_str().unwrap(), "--query", "rect:4,4", "--symmetries"]);
    assert!(p["count"].as_u64().unwrap() >= 1);
    assert_eq!(p["dots"].as_array().unwrap().len() as u64, p["count"].as_u64().unwrap());
    let over = foldlat(&["ddc", "place", "--pattern", pat.to_str().unwrap(), "--query", "rect:8,7", "--symmetries"]);
    assert_eq!(over.status.code(), Some(2));
}

#[test]
fn burst_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.json");
    let b = foldlat(&["burst", "build", "--dims", "3,5", "--out", code.to_str().unwrap()]);
    assert_eq!(b.status.code(), Some(0), "{}", String::from_utf8_lossy(&b.stderr));
    let zero = "0".repeat(15);
    let clean = json(&["burst", "decode", "--code", code.to_str().unwrap(), "--word", &zero]);
    assert_eq!(clean["word"], zero);
    assert_eq!(clean["error"].as_array().unwrap().len(), 0);
    // Flip two cells: the decoder must restore the zero codeword.
    let mut w: Vec<u8> = zero.clone().into_bytes();
    w[0] = b'1';
    w[1] = b'1';
    let fixed = json(&["burst", "decode", "--code", code.to_str().unwrap(), "--word", std::str::from_utf8(&w).unwrap()]);
    assert_eq!(fixed["word"], zero);
    assert!(!fixed["error"].as_array().unwrap().is_empty());
    let short = foldlat(&["burst", "decode", "--code", code.to_str().unwrap(), "--word", "0101"]);
    assert_eq!(short.status.code(), Some(2));
    let shape_code = foldlat(&[
        "burst", "build", "--lattice", "[[5,-1],[0,3]]", "--shape", "rect:3,5", "--delta", "1,0",
    ]);
    assert_eq!(shape_code.status.code(), Some(0), "{}", String::from_utf8_lossy(&shape_code.stderr));
}

#[test]
fn pra_fold_and_windows() {
    let base = ["--lattice", "[[3,4],[10,3]]", "--shape", "corner:5,7,1,4", "--delta", "1,0", "--mseq-n", "5"];
    let mut args = vec!["--json", "pra", "fold"];
    args.extend_from_slice(&base);
    let o = foldlat(&args);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows_bottom_up"][0], "0000100");
    let mut args = vec!["pra", "windows"];
    args.extend_from_slice(&base);
    args.extend_from_slice(&["--window", "rect:5,1", "--window", "rect:1,5", "--star", "--two-row", "5"]);
    let w = foldlat(&args);
    assert_eq!(w.status.code(), Some(0), "{}", stdout(&w));
    assert!(stdout(&w).contains("two-row size 5: 18 shapes, 3 fail"), "{}", stdout(&w));
    let mut args = vec!["pra", "windows"];
    args.extend_from_slice(&base);
    args.extend_from_slice(&["--window", "rect:1,4"]);
    assert_eq!(foldlat(&args).status.code(), Some(2));
    let bits = foldlat(&[
        "pra", "fold", "--lattice", "[[5,0],[0,3]]", "--shape", "rect:3,5", "--delta", "1,1",
        "--bits", "000111101011001", "--shift", "-3",
    ]);
    assert_eq!(bits.status.code(), Some(0));
}

#[test]
fn bounds_commands() {
    let t = foldlat(&["bounds", "table", "--csv"]);
    let text = stdout(&t);
    assert!(text.starts_with("n,upper,lower,ratio,argmax\n"));
    assert_eq!(text.lines().count(), 18);
    assert!(text.contains("8,1.681793,1.626254,0.966977,0.872852"), "{text}");
    let s = json(&["bounds", "solve", "--family", "pentagon"]);
    assert!((s["argmax"][0].as_f64().unwrap() - 0.814853).abs() < 1e-6);
    let e = json(&["bounds", "eval", "--family", "octagon", "--params", "0.872852"]);
    assert!((e["lower"].as_f64().unwrap() - 1.626254).abs() < 1e-6);
}

#[test]
fn repro_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = foldlat(&["repro", "all", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.ends_with(": same")), "{}", stdout(&o));
    assert_eq!(stdout(&foldlat(&["repro", "list"])).lines().count(), 14);
}
