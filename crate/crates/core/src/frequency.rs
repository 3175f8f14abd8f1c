//! Frequency sequences: empirical counts, the closed form attached to a
//! labelling scheme, superposition of schemes and linear combinations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::TreeSpec;
use crate::valuation::{is_power_of, nu};

/// Where a frequency sequence came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Empirical,
    ClosedForm(TreeSpec),
    LinearCombination(Vec<(i64, FrequencySequence)>),
}

/// `φ(v)` for the contiguous range `start..start + counts.len()`.
///
/// Counts are signed so that linear combinations with negative coefficients
/// can be represented; see [`FrequencySequence::first_below_one`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencySequence {
    pub start: u64,
    pub counts: Vec<i64>,
    pub source: Source,
}

impl FrequencySequence {
    pub fn new(start: u64, counts: Vec<i64>, source: Source) -> Self {
        FrequencySequence { start, counts, source }
    }

    /// `φ(v)` if `v` is covered.
    pub fn get(&self, v: u64) -> Option<i64> {
        let i = v.checked_sub(self.start)?;
        self.counts.get(i as usize).copied()
    }

    /// One past the last covered value.
    pub fn end(&self) -> u64 {
        self.start + self.counts.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Restriction to `1..=v_max` (or less if not covered).
    pub fn truncated(&self, v_max: u64) -> FrequencySequence {
        let keep = v_max.saturating_add(1).saturating_sub(self.start).min(self.counts.len() as u64);
        FrequencySequence {
            start: self.start,
            counts: self.counts[..keep as usize].to_vec(),
            source: self.source.clone(),
        }
    }

    /// First covered `v` with `φ(v) < 1`, which no slow sequence can have.
    pub fn first_below_one(&self) -> Option<u64> {
        self.counts.iter().position(|&c| c < 1).map(|i| self.start + i as u64)
    }

    /// `h_v = Σ_{i ≤ v} φ(i)` for each covered `v`: the last index at which
    /// the underlying sequence takes the value `v`. Requires `start == 1`.
    pub fn last_occurrences(&self) -> Result<Vec<i64>> {
        if self.start != 1 {
            return Err(Error::InvalidArgument(format!(
                "last occurrences need the range to start at 1, it starts at {}",
                self.start
            )));
        }
        let mut total = 0i64;
        Ok(self
            .counts
            .iter()
            .map(|c| {
                total += c;
                total
            })
            .collect())
    }

    /// CSV with a `v,phi` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("v,phi\n");
        for (i, c) in self.counts.iter().enumerate() {
            writeln!(out, "{},{}", self.start + i as u64, c).unwrap();
        }
        out
    }
}

/// Frequency of the value `v` in the cell-count sequence of `spec`:
/// `c` when `j ∤ v`, otherwise `ℓ + x·ν_k(v/j) + s·[v/j is a power of k]`.
pub fn closed_form(spec: &TreeSpec, v: u64) -> u64 {
    assert!(v >= 1, "frequencies are indexed from 1");
    let j = spec.leaf_cells();
    if !v.is_multiple_of(j) {
        return spec.per_cell();
    }
    let w = v / j;
    let k = spec.arity();
    let mut phi = spec.last_cell() + spec.regular_labels() * nu(k, w) as u64;
    if is_power_of(k, w) {
        phi += spec.supernode_labels();
    }
    phi
}

/// Closed-form frequencies for `v = 1..=v_max`.
pub fn from_closed_form(spec: &TreeSpec, v_max: u64) -> FrequencySequence {
    let counts = (1..=v_max).map(|v| closed_form(spec, v) as i64).collect();
    FrequencySequence::new(1, counts, Source::ClosedForm(*spec))
}

/// Superposition of labelling schemes on a shared skeleton: label counts
/// add up node by node, weighted by multiplicity.
pub fn superpose(components: &[(u64, TreeSpec)]) -> Result<TreeSpec> {
    let Some((_, first)) = components.first() else {
        return Err(Error::InvalidArgument("nothing to superpose".into()));
    };
    let (k, j) = (first.arity(), first.leaf_cells());
    let (mut s, mut c, mut l, mut x) = (0u64, 0u64, 0u64, 0u64);
    for (mult, t) in components {
        if *mult == 0 {
            return Err(Error::InvalidArgument("multiplicities must be positive".into()));
        }
        if t.arity() != k || t.leaf_cells() != j {
            return Err(Error::InvalidArgument(format!(
                "skeletons differ: (k={}, j={}) against (k={k}, j={j})",
                t.arity(),
                t.leaf_cells()
            )));
        }
        s += mult * t.supernode_labels();
        c += mult * t.per_cell();
        l += mult * t.last_cell();
        x += mult * t.regular_labels();
    }
    TreeSpec::new(k, s, j, c, l, x)
}

/// Pointwise `Σ coefficient·φ` on the range covered by every term.
///
/// Negative coefficients are accepted; check the result with
/// [`FrequencySequence::first_below_one`].
pub fn linear_combination(terms: &[(i64, FrequencySequence)]) -> Result<FrequencySequence> {
    if terms.is_empty() {
        return Err(Error::InvalidArgument("empty linear combination".into()));
    }
    let start = terms.iter().map(|(_, f)| f.start).max().unwrap();
    let end = terms.iter().map(|(_, f)| f.end()).min().unwrap();
    if start >= end {
        return Err(Error::InvalidArgument("terms share no common range".into()));
    }
    let counts = (start..end)
        .map(|v| terms.iter().map(|(a, f)| a * f.get(v).unwrap()).sum())
        .collect();
    Ok(FrequencySequence::new(start, counts, Source::LinearCombination(terms.to_vec())))
}

/// Verdict of comparing two frequency sequences on `1..=v_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Comparison {
    Agree { v_max: u64 },
    /// First `v` where the two differ; `None` marks a value outside a
    /// sequence's range.
    Mismatch { v: u64, left: Option<i64>, right: Option<i64> },
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        matches!(self, Comparison::Agree { .. })
    }
}

pub fn compare(left: &FrequencySequence, right: &FrequencySequence, v_max: u64) -> Comparison {
    for v in 1..=v_max {
        let (a, b) = (left.get(v), right.get(v));
        if a.is_none() || a != b {
            return Comparison::Mismatch { v, left: a, right: b };
        }
    }
    Comparison::Agree { v_max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::initial_conditions;

    fn running() -> TreeSpec {
        TreeSpec::new(2, 1, 3, 1, 2, 2).unwrap()
    }

    #[test]
    fn running_example_frequencies() {
        assert_eq!(closed_form(&running(), 3), 3);
        assert_eq!(closed_form(&running(), 4), 1);
        assert_eq!(closed_form(&running(), 6), 5);
    }

    #[test]
    fn closed_form_matches_counts() {
        let t = running();
        let values = initial_conditions(&t, 5000);
        let emp = crate::recursion::frequency_of(&values).unwrap();
        let last = emp.end() - 1;
        assert_eq!(compare(&emp, &from_closed_form(&t, last), last), Comparison::Agree { v_max: last });
    }

    #[test]
    fn conolly_is_valuation_plus_one() {
        for k in 2..6 {
            let t = TreeSpec::new(k, 0, 1, 1, 1, 1).unwrap();
            for v in 1..500 {
                assert_eq!(closed_form(&t, v), nu(k, v) as u64 + 1);
            }
        }
    }

    #[test]
    fn superpose_order_one_trees() {
        let r = TreeSpec::new(2, 0, 3, 1, 1, 3).unwrap();
        let h = TreeSpec::new(2, 0, 3, 1, 4, 0).unwrap();
        let sum = superpose(&[(1, r), (1, h)]).unwrap();
        assert_eq!(sum, TreeSpec::new(2, 0, 3, 2, 5, 3).unwrap());
        assert_eq!(superpose(&[(1, r)]).unwrap(), r);
        let other = TreeSpec::new(2, 0, 2, 1, 1, 1).unwrap();
        assert!(superpose(&[(1, r), (1, other)]).is_err());
        assert!(superpose(&[(0, r)]).is_err());
        assert!(superpose(&[]).is_err());
    }

    #[test]
    fn combination_and_guard() {
        let a = FrequencySequence::new(1, vec![1, 2, 3], Source::Empirical);
        let b = FrequencySequence::new(2, vec![5, 5, 5], Source::Empirical);
        let c = linear_combination(&[(1, a.clone()), (-1, b.clone())]).unwrap();
        assert_eq!((c.start, c.counts.clone()), (2, vec![-3, -2]));
        assert_eq!(c.first_below_one(), Some(2));
        let id = linear_combination(&[(1, a.clone()), (0, a.clone())]).unwrap();
        assert_eq!(id.counts, a.counts);
        let far = FrequencySequence::new(10, vec![1], Source::Empirical);
        assert!(linear_combination(&[(1, a), (1, far)]).is_err());
        assert!(linear_combination(&[]).is_err());
    }

    #[test]
    fn compare_reports_first_difference() {
        let a = FrequencySequence::new(1, vec![1, 2, 3], Source::Empirical);
        let b = FrequencySequence::new(1, vec![1, 2, 4], Source::Empirical);
        assert_eq!(compare(&a, &a, 3), Comparison::Agree { v_max: 3 });
        assert_eq!(compare(&a, &b, 3), Comparison::Mismatch { v: 3, left: Some(3), right: Some(4) });
        assert_eq!(compare(&a, &a, 4), Comparison::Mismatch { v: 4, left: None, right: None });
    }

    #[test]
    fn last_occurrences_and_csv() {
        let f = FrequencySequence::new(1, vec![1, 2, 2], Source::Empirical);
        assert_eq!(f.last_occurrences().unwrap(), vec![1, 3, 5]);
        assert_eq!(f.to_csv(), "v,phi\n1,1\n2,2\n3,2\n");
        assert!(FrequencySequence::new(2, vec![1], Source::Empirical).last_occurrences().is_err());
        assert_eq!(f.truncated(2).counts, vec![1, 2]);
    }
}
