//! Direct evaluation of nested recursions of the form
//!
//! ```text
//! R(n) = sum_{i=1..k} R(n - a_i - sum_{t=1..p} R(n - b_it))
//! ```
//!
//! by forward recurrence over a private memo table. Evaluation stops at the
//! first index whose value would need an undefined term; that index and the
//! reason are reported in [`EvalResult::status`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frequency::{FrequencySequence, Source};

/// Offsets of an arity-k, order-p nested recursion.
///
/// `outer[i]` is the shift `a_i` applied to the i-th outer term and
/// `inner[i][t]` the shift `b_it` of its t-th nested term. Every inner shift
/// is at least 1 and the inner table is exactly `k x p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct RecursionSpec {
    outer: Vec<i64>,
    inner: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    arity: usize,
    order: usize,
    a: Vec<i64>,
    b: Vec<Vec<u64>>,
}

impl TryFrom<RawSpec> for RecursionSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let spec = RecursionSpec::new(raw.a, raw.b)?;
        if spec.arity() != raw.arity || spec.order() != raw.order {
            return Err(Error::InvalidArgument(format!(
                "declared arity/order ({}, {}) disagree with the offset tables ({}, {})",
                raw.arity,
                raw.order,
                spec.arity(),
                spec.order()
            )));
        }
        Ok(spec)
    }
}

impl From<RecursionSpec> for RawSpec {
    fn from(spec: RecursionSpec) -> Self {
        RawSpec {
            arity: spec.arity(),
            order: spec.order(),
            a: spec.outer,
            b: spec.inner,
        }
    }
}

impl RecursionSpec {
    pub fn new(outer: Vec<i64>, inner: Vec<Vec<u64>>) -> Result<Self> {
        if outer.is_empty() {
            return Err(Error::InvalidArgument("arity must be at least 1".into()));
        }
        if inner.len() != outer.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} rows of inner offsets, got {}",
                outer.len(),
                inner.len()
            )));
        }
        let order = inner[0].len();
        if order == 0 {
            return Err(Error::InvalidArgument("order must be at least 1".into()));
        }
        if let Some(row) = inner.iter().position(|row| row.len() != order) {
            return Err(Error::InvalidArgument(format!(
                "inner offset row {} has {} entries, expected {order}",
                row + 1,
                inner[row].len()
            )));
        }
        if inner.iter().flatten().any(|&b| b == 0) {
            return Err(Error::InvalidArgument("inner offsets must be positive".into()));
        }
        Ok(RecursionSpec { outer, inner })
    }

    pub fn arity(&self) -> usize {
        self.outer.len()
    }

    pub fn order(&self) -> usize {
        self.inner[0].len()
    }

    pub fn outer_offsets(&self) -> &[i64] {
        &self.outer
    }

    pub fn inner_offsets(&self) -> &[Vec<u64>] {
        &self.inner
    }
}

/// A recursion together with its initial conditions, as stored on disk:
/// `{"arity":k, "order":p, "a":[...], "b":[[...],...], "ic":[...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionDocument {
    #[serde(flatten)]
    pub spec: RecursionSpec,
    pub ic: Vec<u64>,
}

/// Why a recursion could not be continued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeathReason {
    InnerIndexNonpositive,
    OuterIndexNonpositive,
    /// The outer argument points at `n` itself or beyond.
    OuterIndexNotYetDefined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Alive,
    DeadAt { index: u64, reason: DeathReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalResult {
    /// `values[i]` is `R(i + 1)`.
    pub values: Vec<u64>,
    pub status: Status,
}

impl EvalResult {
    pub fn is_alive(&self) -> bool {
        self.status == Status::Alive
    }

    /// `R(n)` for 1-based `n`, if it was computed.
    pub fn value(&self, n: u64) -> Option<u64> {
        let idx = usize::try_from(n.checked_sub(1)?).ok()?;
        self.values.get(idx).copied()
    }
}

/// Evaluate `spec` from `initial_conditions` up to index `n_max`.
pub fn evaluate(spec: &RecursionSpec, initial_conditions: &[u64], n_max: u64) -> Result<EvalResult> {
    if initial_conditions.is_empty() {
        return Err(Error::InvalidArgument("initial conditions must be nonempty".into()));
    }
    if initial_conditions.contains(&0) {
        return Err(Error::InvalidArgument("initial conditions must be positive".into()));
    }
    if n_max < initial_conditions.len() as u64 {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} is shorter than the {} initial conditions",
            initial_conditions.len()
        )));
    }
    if n_max > i64::MAX as u64 {
        return Err(Error::Overflow { index: n_max });
    }

    let mut values = Vec::with_capacity(n_max as usize);
    values.extend_from_slice(initial_conditions);

    for n in (values.len() as u64 + 1)..=n_max {
        match next_value(spec, &values, n)? {
            Ok(v) => values.push(v),
            Err(reason) => {
                return Ok(EvalResult {
                    values,
                    status: Status::DeadAt { index: n, reason },
                })
            }
        }
    }
    Ok(EvalResult {
        values,
        status: Status::Alive,
    })
}

/// R(n) given R(1..n-1) in `known`; the inner result is the death reason.
fn next_value(
    spec: &RecursionSpec,
    known: &[u64],
    n: u64,
) -> Result<std::result::Result<u64, DeathReason>> {
    let overflow = || Error::Overflow { index: n };
    let at = |idx: i64| known[(idx - 1) as usize];
    let n = n as i64;

    let mut total: u64 = 0;
    for (a, row) in spec.outer.iter().zip(&spec.inner) {
        let mut nested: i64 = 0;
        for &b in row {
            let idx = n - b as i64;
            if idx < 1 {
                return Ok(Err(DeathReason::InnerIndexNonpositive));
            }
            let v = i64::try_from(at(idx)).map_err(|_| overflow())?;
            nested = nested.checked_add(v).ok_or_else(overflow)?;
        }
        let idx = n
            .checked_sub(*a)
            .and_then(|x| x.checked_sub(nested))
            .ok_or_else(overflow)?;
        if idx < 1 {
            return Ok(Err(DeathReason::OuterIndexNonpositive));
        }
        if idx >= n {
            return Ok(Err(DeathReason::OuterIndexNotYetDefined));
        }
        total = total.checked_add(at(idx)).ok_or_else(overflow)?;
    }
    Ok(Ok(total))
}

/// Outcome of a slowness check on a finite prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slowness {
    Slow,
    /// 1-based index of the first offending term.
    Violation { index: u64 },
}

impl Slowness {
    pub fn is_slow(self) -> bool {
        self == Slowness::Slow
    }
}

/// Checks that the prefix starts at a positive value and every step is 0 or 1.
/// Unbounded growth cannot be decided on a prefix and is not checked.
/// An empty prefix is reported as a violation at index 1.
pub fn is_slow(values: &[u64]) -> Slowness {
    match values.first() {
        None | Some(0) => return Slowness::Violation { index: 1 },
        _ => {}
    }
    for (i, w) in values.windows(2).enumerate() {
        if w[1] < w[0] || w[1] - w[0] > 1 {
            return Slowness::Violation { index: i as u64 + 2 };
        }
    }
    Slowness::Slow
}

/// Occurrence counts of each value of a slow prefix.
///
/// Only values whose run is complete are counted, so the final value of the
/// prefix is excluded.
pub fn frequency_of(values: &[u64]) -> Result<FrequencySequence> {
    if let Slowness::Violation { index } = is_slow(values) {
        return Err(Error::InvalidArgument(format!(
            "sequence is not slow (first violation at index {index})"
        )));
    }
    let first = values[0];
    let last = *values.last().unwrap();
    let mut counts = vec![0i64; (last - first) as usize];
    for &v in values.iter().filter(|&&v| v < last) {
        counts[(v - first) as usize] += 1;
    }
    Ok(FrequencySequence::new(first, counts, Source::Empirical))
}

/// Result of running a recursion as far as it goes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// Last index with a defined value.
    pub survived_to: u64,
    pub dead: Option<(u64, DeathReason)>,
    pub slow: Slowness,
}

pub fn death_probe(spec: &RecursionSpec, initial_conditions: &[u64], n_max: u64) -> Result<ProbeReport> {
    let result = evaluate(spec, initial_conditions, n_max)?;
    let dead = match result.status {
        Status::Alive => None,
        Status::DeadAt { index, reason } => Some((index, reason)),
    };
    Ok(ProbeReport {
        survived_to: result.values.len() as u64,
        dead,
        slow: is_slow(&result.values),
    })
}
