//! Parameter sweeps: definedness, slowness, frequency and prune-identity
//! outcomes for every point of a grid, including points outside the
//! solved ranges.
//!
//! A grid reads `order_one s=0..2 j=1..4 m=-2..j+2`: a family name followed
//! by `key=values`, where values are `a..b` (inclusive), a comma list, or a
//! single value. Range bounds may refer to keys listed earlier.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyParams, SeedOrigin, Validity};
use crate::frequency::{compare, from_closed_form, Comparison};
use crate::pruning::{build_prefix, prune};
use crate::recursion::{evaluate, frequency_of, is_slow, DeathReason, Slowness, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Values {
    Range(String, String),
    List(Vec<String>),
}

/// Parsed grid description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    family: String,
    axes: Vec<(String, Values)>,
}

fn eval_bound(expr: &str, env: &BTreeMap<String, i64>) -> Result<i64> {
    let bad = || Error::InvalidArgument(format!("cannot evaluate bound `{expr}`"));
    let mut total = 0i64;
    let mut sign = 1i64;
    let mut term = String::new();
    let flush = |term: &mut String, sign: i64, total: &mut i64| -> Result<()> {
        if term.is_empty() {
            return Err(bad());
        }
        let v = match term.parse::<i64>() {
            Ok(v) => v,
            Err(_) => *env.get(term.as_str()).ok_or_else(bad)?,
        };
        *total += sign * v;
        term.clear();
        Ok(())
    };
    for (i, ch) in expr.chars().enumerate() {
        match ch {
            '+' | '-' if i == 0 => sign = if ch == '-' { -1 } else { 1 },
            '+' | '-' => {
                flush(&mut term, sign, &mut total)?;
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => term.push(ch),
        }
    }
    flush(&mut term, sign, &mut total)?;
    Ok(total)
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self> {
        let mut words = text.split_whitespace();
        let family = words
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty grid".into()))?
            .to_string();
        let mut axes = Vec::new();
        for word in words {
            let (key, spec) = word
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=values, got `{word}`")))?;
            let values = match spec.split_once("..") {
                Some((lo, hi)) => Values::Range(lo.into(), hi.into()),
                None => Values::List(spec.split(',').map(String::from).collect()),
            };
            axes.push((key.to_string(), values));
        }
        Ok(Grid { family, axes })
    }

    /// All points in grid order (the last key varies fastest).
    pub fn points(&self) -> Result<Vec<FamilyParams>> {
        let mut out = Vec::new();
        self.expand(0, &mut BTreeMap::new(), &mut Vec::new(), &mut out)?;
        Ok(out)
    }

    fn expand(
        &self,
        axis: usize,
        env: &mut BTreeMap<String, i64>,
        pairs: &mut Vec<String>,
        out: &mut Vec<FamilyParams>,
    ) -> Result<()> {
        let Some((key, values)) = self.axes.get(axis) else {
            out.push(FamilyParams::parse(&self.family, pairs)?);
            return Ok(());
        };
        let choices: Vec<String> = match values {
            Values::Range(lo, hi) => {
                let (lo, hi) = (eval_bound(lo, env)?, eval_bound(hi, env)?);
                (lo..=hi).map(|v| v.to_string()).collect()
            }
            Values::List(list) => list
                .iter()
                .map(|v| match v.as_str() {
                    "true" | "false" => Ok(v.clone()),
                    _ => eval_bound(v, env).map(|v| v.to_string()),
                })
                .collect::<Result<_>>()?,
        };
        for choice in choices {
            if let Ok(v) = choice.parse::<i64>() {
                env.insert(key.clone(), v);
            }
            pairs.push(format!("{key}={choice}"));
            self.expand(axis + 1, env, pairs, out)?;
            pairs.pop();
        }
        env.remove(key);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum FrequencyCheck {
    /// No conjectured frequency for this point.
    NotApplicable,
    Match { v_max: u64 },
    Mismatch { v: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum PruneCheck {
    NotApplicable,
    Holds { n: u64 },
    Fails { n: u64 },
    /// The operation declined to run, e.g. below its precondition.
    Refused { n: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub family: FamilyParams,
    pub validity: Validity,
    /// `tree`, `adjacent_tree`, `fixed`, or `none` when no seed or offset
    /// table could be built.
    pub seed: String,
    pub survived_to: u64,
    pub death: Option<(u64, DeathReason)>,
    pub slow: bool,
    pub frequency: FrequencyCheck,
    pub prune: PruneCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    pub n_max: u64,
    /// Size of the tree to prune, if the prune column is wanted.
    pub prune_n: Option<u64>,
}

/// Probes one parameter point. Every outcome is data; nothing here fails.
pub fn probe_point(family: &FamilyParams, options: &ExploreOptions) -> AtlasRow {
    let validity = family.validate();
    let mut row = AtlasRow {
        family: *family,
        validity: validity.clone(),
        seed: "none".into(),
        survived_to: 0,
        death: None,
        slow: false,
        frequency: FrequencyCheck::NotApplicable,
        prune: PruneCheck::NotApplicable,
    };
    let (Ok(spec), Ok(seed)) = (family.offsets(), family.initial_seed()) else {
        return row;
    };
    row.seed = match &seed.origin {
        SeedOrigin::Tree { .. } => "tree",
        SeedOrigin::AdjacentTree { .. } => "adjacent_tree",
        SeedOrigin::Fixed => "fixed",
    }
    .into();
    let n_max = options.n_max.max(seed.ic.len() as u64);
    let Ok(result) = evaluate(&spec, &seed.ic, n_max) else {
        return row;
    };
    row.survived_to = result.values.len() as u64;
    if let Status::DeadAt { index, reason } = result.status {
        row.death = Some((index, reason));
    }
    row.slow = is_slow(&result.values) == Slowness::Slow;

    let conjectured = match seed.origin {
        SeedOrigin::Tree { tree } => Some(tree),
        _ => None,
    };
    if let (Some(tree), true) = (conjectured, row.slow) {
        if let Ok(empirical) = frequency_of(&result.values) {
            let v_max = empirical.end().saturating_sub(1);
            if v_max >= 1 {
                row.frequency = match compare(&empirical, &from_closed_form(&tree, v_max), v_max) {
                    Comparison::Agree { v_max } => FrequencyCheck::Match { v_max },
                    Comparison::Mismatch { v, .. } => FrequencyCheck::Mismatch { v },
                };
            }
        }
    }

    if let (Some(n), false) = (options.prune_n, validity.is_invalid()) {
        if let Ok(rule) = family.prune_rule() {
            row.prune = match rule.tree().map(|t| prune(&build_prefix(&t, n), rule)) {
                Ok(Ok(report)) if report.identity => PruneCheck::Holds { n },
                Ok(Ok(_)) => PruneCheck::Fails { n },
                _ => PruneCheck::Refused { n },
            };
        }
    }
    row
}

/// Probes every grid point in parallel; rows come back in grid order.
pub fn run_explore(grid: &Grid, options: &ExploreOptions) -> Result<Vec<AtlasRow>> {
    let points = grid.points()?;
    Ok(points.par_iter().map(|f| probe_point(f, options)).collect())
}

pub fn atlas_csv(rows: &[AtlasRow]) -> String {
    let mut out = String::from("family,validity,seed,survived_to,death_index,death_reason,slow,frequency,prune\n");
    for row in rows {
        let validity = match &row.validity {
            Validity::Valid => "valid",
            Validity::Exploratory(_) => "exploratory",
            Validity::Invalid(_) => "invalid",
        };
        let (index, reason) = match row.death {
            Some((i, r)) => (i.to_string(), serde_json::to_value(r).unwrap().as_str().unwrap().to_string()),
            None => ("-".into(), "-".into()),
        };
        let frequency = match row.frequency {
            FrequencyCheck::NotApplicable => "-".into(),
            FrequencyCheck::Match { v_max } => format!("match<={v_max}"),
            FrequencyCheck::Mismatch { v } => format!("mismatch@{v}"),
        };
        let prune = match row.prune {
            PruneCheck::NotApplicable => "-".into(),
            PruneCheck::Holds { n } => format!("holds@{n}"),
            PruneCheck::Fails { n } => format!("fails@{n}"),
            PruneCheck::Refused { n } => format!("refused@{n}"),
        };
        writeln!(
            out,
            "{},{validity},{},{},{index},{reason},{},{frequency},{prune}",
            row.family, row.seed, row.survived_to, row.slow
        )
        .unwrap();
    }
    out
}
