//! Plain-text sequence formats.

use std::fmt::Write as _;

use crate::error::{Error, Result};

fn nonempty(values: &[u64]) -> Result<()> {
    if values.is_empty() {
        Err(Error::InvalidArgument("nothing to export: the sequence is empty".into()))
    } else {
        Ok(())
    }
}

/// OEIS b-file: one `n value` line per term, 1-indexed.
pub fn to_bfile(values: &[u64]) -> Result<String> {
    nonempty(values)?;
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{} {v}", i + 1).unwrap();
    }
    Ok(out)
}

/// CSV with an `n,value` header.
pub fn to_csv(values: &[u64]) -> Result<String> {
    nonempty(values)?;
    let mut out = String::from("n,value\n");
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{},{v}", i + 1).unwrap();
    }
    Ok(out)
}

/// Right-aligned two-column table.
pub fn to_table(values: &[u64]) -> Result<String> {
    nonempty(values)?;
    let width = values.len().to_string().len();
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{:>width$}  {v}", i + 1).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bfile() {
        assert_eq!(to_bfile(&[1, 2, 2]).unwrap(), "1 1\n2 2\n3 2\n");
        assert_eq!(to_bfile(&[1, 1]).unwrap(), "1 1\n2 1\n");
        assert!(to_bfile(&[]).is_err());
    }

    #[test]
    fn csv_and_table() {
        assert_eq!(to_csv(&[1, 2]).unwrap(), "n,value\n1,1\n2,2\n");
        assert!(to_csv(&[]).is_err());
        let t = to_table(&(1..=10).collect::<Vec<_>>()).unwrap();
        assert!(t.starts_with(" 1  1\n"));
        assert!(t.ends_with("10  10\n"));
    }
}
