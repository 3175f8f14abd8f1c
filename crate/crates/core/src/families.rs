//! Named recursion families: offsets, labelling scheme, initial-condition
//! length and parameter ranges.
//!
//! Families with a proven tree are `OrderOne`, `HigherOrder`, `Superposed`
//! and `Kary`. Classic variants are shorthands for one of them. The
//! remaining variants are evaluate-only probe targets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recursion::RecursionSpec;
use crate::tree::{follow_length, initial_conditions, TreeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    /// `R(n) = R(n-s-R(n-j)) + R(n-s-j-m-R(n-2j-m))`.
    OrderOne { s: u64, j: u64, m: i64 },
    /// Two-term order-`p` family with leaf cells of one label.
    HigherOrder { s: u64, j: u64, m: i64, p: u64 },
    /// Two-term order-`p` family whose tree superposes order-one trees.
    /// Negative `m` (down to `1 - p`) needs `exploratory: true`.
    Superposed {
        s: u64,
        j: u64,
        m: i64,
        p: u64,
        #[serde(default)]
        exploratory: bool,
    },
    /// k-term order-`p` family.
    Kary { k: u64, m: i64, p: u64 },
    Conolly,
    H,
    RSj { s: u64, j: u64 },
    HSj { s: u64, j: u64 },
    AlphaBeta { alpha: i64, beta: i64 },
    KaryConolly { k: u64 },
    KaryH { k: u64 },
    /// Solution `⌈n/kq⌉`.
    KaryCeiling { k: u64, q: u64 },
    /// `R(n) = R(n-s-R(n-j)) + R(n-s-j-R(n-2j+q))`.
    QFamily { s: u64, j: u64, q: i64 },
    /// `R(n) = Σ_i R(n-s-(i-1)j-R(n-ij))`.
    Csjk { s: u64, j: u64, k: u64 },
    /// Candidate k-ary recursion for the frequency `γk + δφ_{C_k}`, `γ < 0`.
    NegGamma { k: u64, gamma: i64, delta: i64 },
    /// `Q(n) = Q(n-Q(n-1)) + Q(n-Q(n-2))`, `Q(1) = Q(2) = 1`.
    HofstadterQ,
}

/// Result of parameter validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "reason")]
pub enum Validity {
    Valid,
    /// Well formed but outside the range covered by a solved tree.
    Exploratory(String),
    Invalid(String),
}

impl Validity {
    pub fn is_invalid(&self) -> bool {
        matches!(self, Validity::Invalid(_))
    }
}

/// Which pruning operation applies to a family's tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum PruneRule {
    Order2 { s: u64, j: u64, m: u64 },
    OrderP { s: u64, j: u64, m: u64, p: u64 },
    Superposed { s: u64, j: u64, m: i64, p: u64 },
    Kary { k: u64, m: u64, p: u64 },
}

/// How initial conditions for a probe were obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SeedOrigin {
    /// The family's own tree.
    Tree { tree: TreeSpec },
    /// The tree of the nearest family instance that has one.
    AdjacentTree { tree: TreeSpec, adjacent: FamilyParams },
    /// Fixed initial values.
    Fixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub ic: Vec<u64>,
    pub origin: SeedOrigin,
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kary_m_max(k: u64, p: u64) -> i64 {
    // (m+1)(k-1) <= kp
    (k * p / (k - 1)) as i64 - 1
}

impl FamilyParams {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::OrderOne { .. } => "order_one",
            FamilyParams::HigherOrder { .. } => "higher_order",
            FamilyParams::Superposed { .. } => "superposed",
            FamilyParams::Kary { .. } => "kary",
            FamilyParams::Conolly => "conolly",
            FamilyParams::H => "h",
            FamilyParams::RSj { .. } => "r_sj",
            FamilyParams::HSj { .. } => "h_sj",
            FamilyParams::AlphaBeta { .. } => "alpha_beta",
            FamilyParams::KaryConolly { .. } => "kary_conolly",
            FamilyParams::KaryH { .. } => "kary_h",
            FamilyParams::KaryCeiling { .. } => "kary_ceiling",
            FamilyParams::QFamily { .. } => "q_family",
            FamilyParams::Csjk { .. } => "csjk",
            FamilyParams::NegGamma { .. } => "neg_gamma",
            FamilyParams::HofstadterQ => "hofstadter_q",
        }
    }

    /// Builds a family from its snake_case name and `key=value` pairs, e.g.
    /// `("order_one", ["s=1", "j=3", "m=1"])`.
    pub fn parse<S: AsRef<str>>(name: &str, pairs: &[S]) -> Result<Self> {
        let mut obj = serde_json::Map::new();
        obj.insert("family".into(), name.into());
        for pair in pairs {
            let pair = pair.as_ref();
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{pair}`")))?;
            let value: serde_json::Value = match value {
                "true" | "false" => (value == "true").into(),
                _ => value
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("`{key}` needs an integer, got `{value}`")))?
                    .into(),
            };
            obj.insert(key.into(), value);
        }
        serde_json::from_value(obj.into()).map_err(|e| Error::InvalidArgument(format!("{name}: {e}")))
    }

    /// The solved family this variant is an instance of. Evaluate-only
    /// variants map to themselves.
    pub fn covering(&self) -> FamilyParams {
        use FamilyParams::*;
        match *self {
            Conolly => OrderOne { s: 0, j: 1, m: 0 },
            H => OrderOne { s: 0, j: 1, m: 1 },
            RSj { s, j } => OrderOne { s, j, m: 0 },
            HSj { s, j } => OrderOne { s, j, m: j as i64 },
            AlphaBeta { alpha, beta } => Superposed {
                s: 0,
                j: 1,
                m: alpha.div_euclid(2),
                p: (alpha.div_euclid(2) + beta).max(0) as u64,
                exploratory: alpha < 0,
            },
            KaryConolly { k } => Kary { k, m: 0, p: 1 },
            KaryH { k } => Kary {
                k,
                m: k as i64 - 1,
                p: k.saturating_sub(1),
            },
            KaryCeiling { k, q } => Kary {
                k,
                m: (k * q) as i64 - 1,
                p: k.saturating_sub(1) * q,
            },
            other => other,
        }
    }

    pub fn validate(&self) -> Validity {
        match self.check_bounds() {
            Err(msg) => Validity::Invalid(msg),
            Ok(None) => Validity::Valid,
            Ok(Some(note)) => Validity::Exploratory(note),
        }
    }

    fn check_bounds(&self) -> std::result::Result<Option<String>, String> {
        use FamilyParams::*;
        match *self {
            OrderOne { j, m, .. } => {
                check(j >= 1, || format!("j must be at least 1, got {j}"))?;
                check(m >= 0, || format!("m must satisfy 0 <= m, got m={m}"))?;
                check(m <= j as i64, || format!("m must satisfy m <= j, got m={m} > j={j}"))?;
                Ok(None)
            }
            HigherOrder { j, m, p, .. } => {
                check(j >= 1, || format!("j must be at least 1, got {j}"))?;
                check(p >= 1, || format!("p must be at least 1, got {p}"))?;
                let top = ((2 * p - 1) * j) as i64;
                check((0..=top).contains(&m), || {
                    format!("m must satisfy 0 <= m <= (2p-1)j = {top}, got m={m}")
                })?;
                Ok(None)
            }
            Superposed {
                j, m, p, exploratory, ..
            } => {
                check(j >= 1, || format!("j must be at least 1, got {j}"))?;
                check(p >= 1, || format!("p must be at least 1, got {p}"))?;
                let top = (p * j) as i64;
                check(m <= top, || format!("m must satisfy m <= pj = {top}, got m={m}"))?;
                if m >= 0 {
                    return Ok(None);
                }
                check(m > -(p as i64), || format!("m must satisfy m > -p = -{p}, got m={m}"))?;
                check(exploratory, || {
                    format!("m={m} < 0 is only accepted with exploratory=true")
                })?;
                Ok(Some(format!("negative m={m} is outside the solved range")))
            }
            Kary { k, m, p } => {
                check(k >= 2, || format!("k must be at least 2, got {k}"))?;
                check(p >= 1, || format!("p must be at least 1, got {p}"))?;
                let lo = p as i64 - 1;
                let hi = kary_m_max(k, p);
                check(m >= lo, || format!("m must satisfy m >= p-1 = {lo}, got m={m}"))?;
                check(m <= hi, || format!("m must satisfy m <= kp/(k-1)-1, i.e. m <= {hi}, got m={m}"))?;
                if k == 2 {
                    return Ok(Some("k=2 lies outside the arity range k >= 3 of the k-ary family".into()));
                }
                Ok(None)
            }
            Conolly | H | HofstadterQ => Ok(if *self == HofstadterQ {
                Some("no solution is known to exist".into())
            } else {
                None
            }),
            RSj { j, .. } | HSj { j, .. } => {
                check(j >= 1, || format!("j must be at least 1, got {j}"))?;
                Ok(None)
            }
            AlphaBeta { alpha, beta } => {
                check(alpha % 2 == 0, || format!("alpha must be even, got {alpha}"))?;
                check(beta >= 0, || format!("beta must be nonnegative, got {beta}"))?;
                check(alpha + beta >= 1, || format!("alpha+beta must be at least 1, got {}", alpha + beta))?;
                self.covering().check_bounds()
            }
            KaryConolly { k } | KaryH { k } => {
                check(k >= 2, || format!("k must be at least 2, got {k}"))?;
                self.covering().check_bounds()
            }
            KaryCeiling { k, q } => {
                check(k >= 2, || format!("k must be at least 2, got {k}"))?;
                check(q >= 1, || format!("q must be at least 1, got {q}"))?;
                self.covering().check_bounds()
            }
            QFamily { j, q, .. } => {
                check(j >= 1, || format!("j must be at least 1, got {j}"))?;
                check((0..=j as i64).contains(&q), || format!("q must satisfy 0 <= q <= j, got q={q}"))?;
                Ok(Some("evaluate-only family".into()))
            }
            Csjk { j, k, .. } => {
                check(j >= 1, || format!("j must be at least 1, got {j}"))?;
                check(k >= 2, || format!("k must be at least 2, got {k}"))?;
                Ok(Some("evaluate-only family".into()))
            }
            NegGamma { k, gamma, delta } => {
                check(k >= 2, || format!("k must be at least 2, got {k}"))?;
                check(gamma < 0, || format!("gamma must be negative, got {gamma}"))?;
                check(delta >= 0, || format!("delta must be nonnegative, got {delta}"))?;
                let lead = gamma * k as i64 + delta;
                check(lead >= 1, || format!("gamma*k+delta must be at least 1, got {lead}"))?;
                let p = (k as i64 - 1) * gamma + delta;
                check(p >= 1, || format!("p=(k-1)gamma+delta must be at least 1, got {p}"))?;
                Ok(Some("candidate recursion with a conjectured tree".into()))
            }
        }
    }

    /// Offset table without range checks, for probing outside the valid
    /// ranges. Fails only if the table itself is malformed (an inner
    /// offset below 1).
    pub fn offsets(&self) -> Result<RecursionSpec> {
        use FamilyParams::*;
        let s = |v: u64| v as i64;
        let inner = |v: i64| -> Result<u64> {
            if v < 1 {
                Err(Error::InvalidArgument(format!(
                    "{self}: inner offset {v} is not positive"
                )))
            } else {
                Ok(v as u64)
            }
        };
        match self.covering() {
            OrderOne { s: sv, j, m } => {
                let (sv, j) = (s(sv), s(j));
                RecursionSpec::new(vec![sv, sv + j + m], vec![vec![inner(j)?], vec![inner(2 * j + m)?]])
            }
            HigherOrder { s: sv, j, m, p } => {
                let (sv, j) = (s(sv), s(j));
                let b1 = (1..=p as i64).map(|t| inner((2 * t - 1) * j)).collect::<Result<_>>()?;
                let b2 = (1..=p as i64).map(|t| inner(j + m + (2 * t - 1) * j)).collect::<Result<_>>()?;
                RecursionSpec::new(vec![sv, sv + j + m], vec![b1, b2])
            }
            Superposed { s: sv, j, m, p, .. } => {
                let (sv, j, p) = (s(sv), s(j), s(p));
                let b1 = (1..=p).map(|t| inner(2 * t - 1 + p * (j - 1))).collect::<Result<_>>()?;
                let b2 = (1..=p).map(|t| inner(2 * t - 1 + m + p * (2 * j - 1))).collect::<Result<_>>()?;
                RecursionSpec::new(vec![sv, sv + p * j + m], vec![b1, b2])
            }
            Kary { k, m, p } => {
                let (a, b) = (0..k as i64)
                    .map(|i| {
                        let base = i * (1 + m);
                        let row = (1..=p as i64).map(|t| inner(base + t)).collect::<Result<Vec<_>>>();
                        row.map(|row| (base, row))
                    })
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .unzip();
                RecursionSpec::new(a, b)
            }
            QFamily { s: sv, j, q } => {
                let (sv, j) = (s(sv), s(j));
                RecursionSpec::new(vec![sv, sv + j], vec![vec![inner(j)?], vec![inner(2 * j - q)?]])
            }
            Csjk { s: sv, j, k } => {
                let (sv, j) = (s(sv), s(j));
                let a = (0..s(k)).map(|i| sv + i * j).collect();
                let b = (1..=s(k)).map(|i| Ok(vec![inner(i * j)?])).collect::<Result<_>>()?;
                RecursionSpec::new(a, b)
            }
            NegGamma { k, gamma, delta } => {
                let g = gamma.abs();
                let p = (s(k) - 1) * gamma + delta;
                let k = s(k);
                let mut row = vec![1];
                row.extend((1..=g).map(|t| 1 + t * k));
                row.extend((1..p - g).map(|t| 1 + g * k + 2 * t));
                let shift = p + gamma;
                let a = (0..k).map(|i| i * shift).collect();
                let b = (0..k)
                    .map(|i| row.iter().map(|&v| inner(i * shift + v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                RecursionSpec::new(a, b)
            }
            HofstadterQ => RecursionSpec::new(vec![0, 0], vec![vec![1], vec![2]]),
            classic => unreachable!("{classic:?} is covered"),
        }
    }

    fn ensure_valid(&self) -> Result<()> {
        match self.validate() {
            Validity::Invalid(msg) => Err(Error::Violation(format!("{self}: {msg}"))),
            _ => Ok(()),
        }
    }

    pub fn recursion_of(&self) -> Result<RecursionSpec> {
        self.ensure_valid()?;
        self.offsets()
    }

    /// Labelling scheme whose cell counts solve the recursion.
    pub fn tree_of(&self) -> Result<TreeSpec> {
        self.ensure_valid()?;
        use FamilyParams::*;
        match self.covering() {
            OrderOne { s, j, m } => TreeSpec::new(2, s, j, 1, 1 + m as u64, j - m as u64),
            HigherOrder { s, j, m, p } => TreeSpec::new(2, s, j, 1, 1 + m as u64, ((2 * p - 1) * j) - m as u64),
            Superposed { s, j, m, p, .. } => {
                TreeSpec::new(2, s, j, p, (p as i64 + m) as u64, ((p * j) as i64 - m) as u64)
            }
            Kary { k, m, p } => {
                let x = (p * k) as i64 - (k as i64 - 1) * (1 + m);
                TreeSpec::new(k, 0, 1, 1, 1 + m as u64, x as u64)
            }
            _ => Err(Error::NoTreeKnown(self.to_string())),
        }
    }

    /// Tree conjectured to carry the solution of an evaluate-only family,
    /// where one is proposed. Only the negative-γ candidate has one.
    pub fn conjectured_tree(&self) -> Option<TreeSpec> {
        match *self {
            FamilyParams::NegGamma { k, gamma, delta } if !self.validate().is_invalid() => {
                TreeSpec::new(k, 0, 1, 1, (gamma * k as i64 + delta) as u64, delta as u64).ok()
            }
            _ => None,
        }
    }

    /// Number of initial conditions that must follow the tree.
    pub fn ic_length(&self) -> Result<u64> {
        let tree = self.tree_of()?;
        use FamilyParams::*;
        Ok(match self.covering() {
            OrderOne { s, j, m } => 5 * j + 3 * m as u64 + 2 * s,
            HigherOrder { s, j, m, .. } => 4 * (j + m as u64) + tree.regular_labels() + 2 * s,
            Superposed { s, j, m, p, .. } => ((5 * p * j + 2 * s) as i64 + 3 * m) as u64,
            Kary { k, m, p } => kary_ic_length(k, m, p),
            _ => unreachable!("tree_of succeeded"),
        })
    }

    /// Initial conditions for a probe: the family's own tree when it has
    /// one, the tree of the nearest solved instance otherwise.
    pub fn initial_seed(&self) -> Result<Seed> {
        use FamilyParams::*;
        if let Ok(tree) = self.tree_of() {
            return Ok(Seed {
                ic: initial_conditions(&tree, self.ic_length()?),
                origin: SeedOrigin::Tree { tree },
            });
        }
        let adjacent = match self.covering() {
            OrderOne { s, j, m } => OrderOne {
                s,
                j: j.max(1),
                m: m.clamp(0, j.max(1) as i64),
            },
            HigherOrder { s, j, m, p } => {
                let (j, p) = (j.max(1), p.max(1));
                HigherOrder {
                    s,
                    j,
                    m: m.clamp(0, ((2 * p - 1) * j) as i64),
                    p,
                }
            }
            Superposed { s, j, m, p, .. } => {
                let (j, p) = (j.max(1), p.max(1));
                Superposed {
                    s,
                    j,
                    m: m.clamp(0, (p * j) as i64),
                    p,
                    exploratory: false,
                }
            }
            Kary { k, m, p } => {
                let (k, p) = (k.max(2), p.max(1));
                Kary {
                    k,
                    m: m.clamp(p as i64 - 1, kary_m_max(k, p)),
                    p,
                }
            }
            QFamily { s, j, .. } => OrderOne { s, j: j.max(1), m: 0 },
            NegGamma { .. } => {
                let tree = self
                    .conjectured_tree()
                    .ok_or_else(|| Error::Violation(format!("{self}: parameters admit no tree")))?;
                let (k, m, p) = self.neg_gamma_shape().unwrap();
                let len = kary_ic_length(k, m, p).max(follow_length(&tree));
                return Ok(Seed {
                    ic: initial_conditions(&tree, len),
                    origin: SeedOrigin::Tree { tree },
                });
            }
            Csjk { s, j, k } => {
                let tree = TreeSpec::new(k.max(2), s, j.max(1), 1, 1, j.max(1))?;
                return Ok(Seed {
                    ic: initial_conditions(&tree, follow_length(&tree)),
                    origin: SeedOrigin::AdjacentTree {
                        tree,
                        adjacent: Csjk { s, j, k },
                    },
                });
            }
            HofstadterQ => {
                return Ok(Seed {
                    ic: vec![1, 1],
                    origin: SeedOrigin::Fixed,
                })
            }
            other => return Err(Error::Violation(format!("{other}: no seed available"))),
        };
        let tree = adjacent.tree_of()?;
        Ok(Seed {
            ic: initial_conditions(&tree, adjacent.ic_length()?),
            origin: SeedOrigin::AdjacentTree { tree, adjacent },
        })
    }

    /// `(k, m, p)` of the negative-γ candidate, with `m = p - 1 + γ < p - 1`.
    pub fn neg_gamma_shape(&self) -> Option<(u64, i64, u64)> {
        match *self {
            FamilyParams::NegGamma { k, gamma, delta } => {
                let p = (k as i64 - 1) * gamma + delta;
                (p >= 1).then(|| (k, p - 1 + gamma, p as u64))
            }
            _ => None,
        }
    }

    pub fn prune_rule(&self) -> Result<PruneRule> {
        self.ensure_valid()?;
        use FamilyParams::*;
        Ok(match self.covering() {
            OrderOne { s, j, m } => PruneRule::Order2 { s, j, m: m as u64 },
            HigherOrder { s, j, m, p } => PruneRule::OrderP { s, j, m: m as u64, p },
            Superposed { s, j, m, p, .. } => PruneRule::Superposed { s, j, m, p },
            Kary { k, m, p } => PruneRule::Kary { k, m: m as u64, p },
            _ => return Err(Error::NoTreeKnown(self.to_string())),
        })
    }
}

fn kary_ic_length(k: u64, m: i64, p: u64) -> u64 {
    let (k, p) = (k as i64, p as i64);
    (2 * k * (p + m) + p - (k - 1) * m) as u64
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilyParams::*;
        write!(f, "{}", self.name())?;
        match *self {
            OrderOne { s, j, m } => write!(f, " s={s} j={j} m={m}"),
            HigherOrder { s, j, m, p } => write!(f, " s={s} j={j} m={m} p={p}"),
            Superposed {
                s, j, m, p, exploratory,
            } => {
                write!(f, " s={s} j={j} m={m} p={p}")?;
                if exploratory {
                    write!(f, " exploratory=true")?;
                }
                Ok(())
            }
            Kary { k, m, p } => write!(f, " k={k} m={m} p={p}"),
            RSj { s, j } | HSj { s, j } => write!(f, " s={s} j={j}"),
            AlphaBeta { alpha, beta } => write!(f, " alpha={alpha} beta={beta}"),
            KaryConolly { k } | KaryH { k } => write!(f, " k={k}"),
            KaryCeiling { k, q } => write!(f, " k={k} q={q}"),
            QFamily { s, j, q } => write!(f, " s={s} j={j} q={q}"),
            Csjk { s, j, k } => write!(f, " s={s} j={j} k={k}"),
            NegGamma { k, gamma, delta } => write!(f, " k={k} gamma={gamma} delta={delta}"),
            Conolly | H | HofstadterQ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::evaluate;
    use FamilyParams::*;

    fn spec(a: Vec<i64>, b: Vec<Vec<u64>>) -> RecursionSpec {
        RecursionSpec::new(a, b).unwrap()
    }

    #[test]
    fn classic_offsets() {
        assert_eq!(OrderOne { s: 0, j: 1, m: 0 }.recursion_of().unwrap(), spec(vec![0, 1], vec![vec![1], vec![2]]));
        assert_eq!(OrderOne { s: 0, j: 1, m: 1 }.recursion_of().unwrap(), spec(vec![0, 2], vec![vec![1], vec![3]]));
        assert_eq!(Conolly.recursion_of().unwrap(), spec(vec![0, 1], vec![vec![1], vec![2]]));
        assert_eq!(H.recursion_of().unwrap(), spec(vec![0, 2], vec![vec![1], vec![3]]));
        assert_eq!(
            KaryH { k: 3 }.recursion_of().unwrap(),
            spec(vec![0, 3, 6], vec![vec![1, 2], vec![4, 5], vec![7, 8]])
        );
        assert_eq!(
            KaryConolly { k: 3 }.recursion_of().unwrap(),
            spec(vec![0, 1, 2], vec![vec![1], vec![2], vec![3]])
        );
        assert_eq!(
            AlphaBeta { alpha: 2, beta: 1 }.recursion_of().unwrap(),
            spec(vec![0, 3], vec![vec![1, 3], vec![4, 6]])
        );
    }

    #[test]
    fn reductions_are_spec_equal() {
        for s in 0..3 {
            for j in 1..5 {
                for m in 0..=j as i64 {
                    let one = OrderOne { s, j, m }.recursion_of().unwrap();
                    let hp = HigherOrder { s, j, m, p: 1 }.recursion_of().unwrap();
                    assert_eq!(one, hp);
                    assert_eq!(
                        OrderOne { s, j, m }.tree_of().unwrap(),
                        HigherOrder { s, j, m, p: 1 }.tree_of().unwrap()
                    );
                    assert_eq!(
                        OrderOne { s, j, m }.ic_length().unwrap(),
                        HigherOrder { s, j, m, p: 1 }.ic_length().unwrap()
                    );
                }
                assert_eq!(RSj { s, j }.recursion_of().unwrap(), OrderOne { s, j, m: 0 }.recursion_of().unwrap());
                assert_eq!(
                    HSj { s, j }.recursion_of().unwrap(),
                    OrderOne { s, j, m: j as i64 }.recursion_of().unwrap()
                );
            }
        }
    }

    #[test]
    fn trees_and_lengths() {
        assert_eq!(OrderOne { s: 1, j: 3, m: 1 }.tree_of().unwrap(), TreeSpec::new(2, 1, 3, 1, 2, 2).unwrap());
        assert_eq!(OrderOne { s: 1, j: 3, m: 1 }.ic_length().unwrap(), 20);
        let hp = HigherOrder { s: 0, j: 3, m: 2, p: 2 };
        assert_eq!(hp.tree_of().unwrap(), TreeSpec::new(2, 0, 3, 1, 3, 7).unwrap());
        assert_eq!(hp.ic_length().unwrap(), 27);
        let sp = Superposed {
            s: 0,
            j: 3,
            m: 3,
            p: 2,
            exploratory: false,
        };
        assert_eq!(sp.tree_of().unwrap(), TreeSpec::new(2, 0, 3, 2, 5, 3).unwrap());
        assert_eq!(sp.ic_length().unwrap(), 39);
        for k in 3..6 {
            for q in 1..3 {
                let t = KaryCeiling { k, q }.tree_of().unwrap();
                assert_eq!((t.leaf_capacity(), t.regular_labels()), (k * q, 0));
            }
        }
    }

    #[test]
    fn validation() {
        assert!(OrderOne { s: 0, j: 2, m: 3 }.validate().is_invalid());
        assert!(Kary { k: 3, m: 1, p: 1 }.validate().is_invalid());
        assert_eq!(Kary { k: 3, m: 2, p: 2 }.validate(), Validity::Valid);
        assert!(Kary { k: 3, m: 3, p: 2 }.validate().is_invalid());
        assert!(matches!(Kary { k: 2, m: 0, p: 1 }.validate(), Validity::Exploratory(_)));
        let neg = Superposed {
            s: 0,
            j: 4,
            m: -2,
            p: 9,
            exploratory: true,
        };
        assert!(matches!(neg.validate(), Validity::Exploratory(_)));
        let unflagged = Superposed {
            s: 0,
            j: 4,
            m: -2,
            p: 9,
            exploratory: false,
        };
        assert!(unflagged.validate().is_invalid());
        assert!(AlphaBeta { alpha: 1, beta: 1 }.validate().is_invalid());
        assert!(NegGamma { k: 3, gamma: 1, delta: 4 }.validate().is_invalid());
        assert!(NegGamma { k: 3, gamma: -2, delta: 6 }.validate().is_invalid());
        assert!(matches!(NegGamma { k: 3, gamma: -1, delta: 4 }.validate(), Validity::Exploratory(_)));
        assert!(matches!(OrderOne { s: 0, j: 2, m: 3 }.recursion_of(), Err(Error::Violation(_))));
    }

    #[test]
    fn evaluate_only_has_no_tree() {
        for f in [
            QFamily { s: 0, j: 2, q: 1 },
            Csjk { s: 0, j: 1, k: 3 },
            NegGamma { k: 3, gamma: -1, delta: 4 },
            HofstadterQ,
        ] {
            assert!(matches!(f.tree_of(), Err(Error::NoTreeKnown(_))), "{f}");
            assert!(f.initial_seed().is_ok(), "{f}");
        }
    }

    #[test]
    fn neg_gamma_candidate_follows_its_tree() {
        let f = NegGamma { k: 3, gamma: -1, delta: 4 };
        let tree = f.conjectured_tree().unwrap();
        assert_eq!(tree, TreeSpec::new(3, 0, 1, 1, 1, 4).unwrap());
        let seed = f.initial_seed().unwrap();
        let r = evaluate(&f.recursion_of().unwrap(), &seed.ic, 3000).unwrap();
        assert!(r.is_alive());
        assert_eq!(r.values, initial_conditions(&tree, 3000));
    }

    #[test]
    fn adjacent_seeds() {
        let s = OrderOne { s: 0, j: 2, m: 3 }.initial_seed().unwrap();
        match s.origin {
            SeedOrigin::AdjacentTree { adjacent, .. } => assert_eq!(adjacent, OrderOne { s: 0, j: 2, m: 2 }),
            other => panic!("{other:?}"),
        }
        assert_eq!(s.ic.len(), 5 * 2 + 3 * 2);
    }

    #[test]
    fn parse_and_display() {
        let f = FamilyParams::parse("order_one", &["s=1", "j=3", "m=1"]).unwrap();
        assert_eq!(f, OrderOne { s: 1, j: 3, m: 1 });
        assert_eq!(f.to_string(), "order_one s=1 j=3 m=1");
        let g = FamilyParams::parse("superposed", &["s=0", "j=4", "m=-2", "p=9", "exploratory=true"]).unwrap();
        assert_eq!(FamilyParams::parse(g.name(), &g.to_string().split(' ').skip(1).collect::<Vec<_>>()).unwrap(), g);
        assert_eq!(FamilyParams::parse("conolly", &[] as &[&str]).unwrap(), Conolly);
        assert!(FamilyParams::parse("order_one", &["s=1"]).is_err());
        assert!(FamilyParams::parse("nope", &[] as &[&str]).is_err());
        assert!(FamilyParams::parse("order_one", &["s"]).is_err());
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"family":"order_one","s":1,"j":3,"m":1}"#);
    }
}
