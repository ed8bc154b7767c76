//! Parsing of lattice, shape, direction and bit arguments. Every argument
//! is either inline text or a path to a file holding the same text.

use std::fs;
use std::path::Path;

use foldlat::lattice::{LatticeFile, ShapeFile};
use foldlat::shapes::ShapeSpec;
use foldlat::{build_shape, Direction, Lattice, Point, Shape};

use crate::CliError;

fn read_if_file(arg: &str) -> Result<String, CliError> {
    if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad {what} JSON: {e}")))
}

/// `[[3,2],[7,1]]`, `{"dim":2,"gen":[...]}`, or a file with either.
pub fn lattice(arg: &str) -> Result<Lattice, CliError> {
    let text = read_if_file(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        Ok(Lattice::try_from(json::<LatticeFile>(t, "lattice")?)?)
    } else if t.starts_with('[') {
        Ok(Lattice::new(json(t, "lattice")?)?)
    } else {
        Err(CliError::Usage(format!("lattice {arg:?} is neither a matrix nor a file")))
    }
}

/// A family spec such as `corner:5,7,1,4`, a point list, a shape file
/// object, or a file with any of these. `shape:` prefixes are accepted.
pub fn shape(arg: &str) -> Result<Shape, CliError> {
    let arg = arg.strip_prefix("shape:").unwrap_or(arg);
    let text = read_if_file(arg)?;
    let t = text.trim();
    if t.starts_with('{') {
        Ok(Shape::try_from(json::<ShapeFile>(t, "shape")?)?)
    } else if t.starts_with('[') {
        let pts: Vec<Vec<i64>> = json(t, "shape")?;
        Ok(Shape::new(pts.into_iter().map(Point::new).collect())?)
    } else {
        let spec: ShapeSpec = t.parse()?;
        Ok(build_shape(&spec)?)
    }
}

pub fn ints(arg: &str) -> Result<Vec<i64>, CliError> {
    arg.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad integer list {arg:?}"))))
        .collect()
}

pub fn direction(arg: &str) -> Result<Direction, CliError> {
    Ok(Direction::from_slice(&ints(arg)?)?)
}

/// 0/1 characters; whitespace and commas are ignored.
pub fn bits(arg: &str) -> Result<Vec<u8>, CliError> {
    let text = read_if_file(arg)?;
    text.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::Usage(format!("bit string has {c:?}"))),
        })
        .collect()
}

pub fn load_json<T: serde::de::DeserializeOwned>(path: &str, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    json(&text, what)
}
