//! Text and JSON formats shared by the library and the CLI.

use std::path::Path;

use serde::Serializer;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::partition::Partition;

pub(crate) fn ser_scalar<S: Serializer>(s: &Scalar, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_str(s)
}

/// Reads a matrix from a `.json` or `.csv` file; CSV needs the field.
pub fn read_matrix(path: &Path, field: FieldSpec) -> Result<ExactMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        ExactMatrix::from_csv(&text, field)
    } else {
        ExactMatrix::from_json(&text)
    }
}

/// Parses `"6,4,4,1,1"` or `"[6,4,4,1,1]"`.
pub fn parse_partition(s: &str) -> Result<Partition> {
    Partition::new(parse_usize_list(s)?)
}

/// Parses a comma-separated list of non-negative integers, brackets optional.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid integer '{}'", x.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_usize_list("1,2, 3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_usize_list("[4]").unwrap(), vec![4]);
        assert!(parse_usize_list("1,x").is_err());
        assert!(parse_partition("1,2").is_err());
        assert_eq!(parse_partition("[3,1]").unwrap().parts(), &[3, 1]);
    }

    #[test]
    fn matrix_files() {
        let dir = std::env::temp_dir().join(format!("weyr-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let m = ExactMatrix::from_i64_rows(FieldSpec::Rationals, &[vec![1, 2], vec![0, 3]]).unwrap();
        let (j, c) = (dir.join("m.json"), dir.join("m.csv"));
        std::fs::write(&j, m.to_json()).unwrap();
        std::fs::write(&c, m.to_csv()).unwrap();
        assert_eq!(read_matrix(&j, FieldSpec::Rationals).unwrap(), m);
        assert_eq!(read_matrix(&c, FieldSpec::Rationals).unwrap(), m);
        assert!(matches!(read_matrix(&dir.join("missing.json"), FieldSpec::Rationals), Err(Error::Io(_))));
        std::fs::remove_dir_all(&dir).ok();
    }
}
