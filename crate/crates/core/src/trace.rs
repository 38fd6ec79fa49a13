//! Reading scalar traces: one value per line, or a single-column CSV with
//! an optional header line.

use std::io::BufRead;

use crate::error::{Error, Result};

/// Parse a trace. Blank lines are skipped. A first non-blank line whose
/// first field is not a number is taken as a header; only the first
/// comma-separated field of each line is read.
pub fn read_series<R: BufRead>(reader: R) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut seen_first = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse { line: i + 1, token: e.to_string() })?;
        let token = line.split(',').next().unwrap_or("").trim();
        if token.is_empty() {
            continue;
        }
        match token.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            Ok(_) => return Err(Error::Parse { line: i + 1, token: token.to_string() }),
            Err(_) if !seen_first => {}
            Err(_) => return Err(Error::Parse { line: i + 1, token: token.to_string() }),
        }
        seen_first = true;
    }
    if out.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_and_csv() {
        assert_eq!(read_series("1\n2.5\n\n-3e1\n".as_bytes()).unwrap(), vec![1.0, 2.5, -30.0]);
        assert_eq!(read_series("value\n1,x\n2\n".as_bytes()).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn errors() {
        assert_eq!(read_series("".as_bytes()), Err(Error::EmptySeries));
        assert_eq!(read_series("header\n".as_bytes()), Err(Error::EmptySeries));
        assert!(matches!(read_series("1\nabc\n".as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(read_series("1\nNaN\n".as_bytes()).is_err());
    }
}
