//! Matching against a local copy of the OEIS `stripped` file.
//!
//! Each data line reads `A000045 ,0,1,1,2,3,5,`; lines starting with `#`
//! are comments. Terms beyond the 64-bit range end an entry's usable
//! prefix.

use std::path::Path;

use crate::error::{Error, Result};
use crate::recursion::is_slow;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub id: String,
    pub terms: Vec<u64>,
}

pub fn parse_stripped(text: &str) -> Vec<Entry> {
    text.lines()
        .filter(|line| !line.starts_with('#'))
        .filter_map(|line| {
            let (id, rest) = line.split_once(' ')?;
            let terms = rest
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map_while(|t| t.parse::<u64>().ok())
                .collect();
            Some(Entry { id: id.to_string(), terms })
        })
        .collect()
}

pub fn load_stripped(path: &Path) -> Result<Vec<Entry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read OEIS snapshot {}: {e}", path.display())))?;
    Ok(parse_stripped(&text))
}

/// Identifiers whose stored terms contain `query` as a contiguous run.
/// Empty and non-slow queries are rejected.
pub fn matches(query: &[u64], entries: &[Entry]) -> Result<Vec<String>> {
    if let crate::recursion::Slowness::Violation { index } = is_slow(query) {
        return Err(Error::InvalidArgument(format!(
            "query is not a slow sequence (first violation at index {index})"
        )));
    }
    Ok(entries
        .iter()
        .filter(|e| e.terms.windows(query.len()).any(|w| w == query))
        .map(|e| e.id.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SNAPSHOT: &str = "# comment\nA000001 ,1,1,2,2,3,3,4,4,\nA000002 ,0,1,1,2,3,5,8,13,\nA000003 ,1,2,2,3,4,4,4,5,6,6,7,8,8,8,8,9,\nA000004 ,99999999999999999999999,1,\n";

    #[test]
    fn parse() {
        let e = parse_stripped(SNAPSHOT);
        assert_eq!(e.len(), 4);
        assert_eq!(e[1].terms, vec![0, 1, 1, 2, 3, 5, 8, 13]);
        assert!(e[3].terms.is_empty());
    }

    #[test]
    fn contiguous_matches() {
        let e = parse_stripped(SNAPSHOT);
        assert_eq!(matches(&[1, 2, 2, 3, 4, 4, 4], &e).unwrap(), vec!["A000003"]);
        assert_eq!(matches(&[1, 1, 2, 2], &e).unwrap(), vec!["A000001"]);
        assert_eq!(matches(&[2, 3], &e).unwrap(), vec!["A000001", "A000002", "A000003"]);
        assert!(matches(&[4, 5, 5], &e).unwrap().is_empty());
        assert!(matches(&[0, 0, 0], &e).is_err());
        assert!(matches(&[], &e).is_err());
        assert!(matches(&[1, 3], &e).is_err());
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_stripped(Path::new("/nonexistent/stripped")), Err(Error::Io(_))));
    }
}
