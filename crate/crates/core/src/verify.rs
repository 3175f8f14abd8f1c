//! Cross-checking a family's recursion against its tree.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::families::FamilyParams;
use crate::recursion::{evaluate, Status};
use crate::tree::initial_conditions;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divergence {
    pub index: u64,
    /// `None` if the recursion had died by then.
    pub recursion: Option<u64>,
    pub tree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: FamilyParams,
    pub n_max: u64,
    pub ic_length: u64,
    pub status: Status,
    pub divergence: Option<Divergence>,
}

impl VerifyReport {
    pub fn agrees(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Evaluates the family's recursion from tree initial conditions and
/// compares it with the cell counts of the tree for `n <= n_max`.
pub fn run_verify(family: &FamilyParams, n_max: u64) -> Result<VerifyReport> {
    let spec = family.recursion_of()?;
    let tree = family.tree_of()?;
    let ic_length = family.ic_length()?;
    let counts = initial_conditions(&tree, n_max.max(ic_length));
    let result = evaluate(&spec, &counts[..ic_length as usize], n_max.max(ic_length))?;
    let divergence = counts
        .iter()
        .take(n_max as usize)
        .enumerate()
        .find(|&(i, &c)| result.values.get(i) != Some(&c))
        .map(|(i, &c)| Divergence {
            index: i as u64 + 1,
            recursion: result.values.get(i).copied(),
            tree: c,
        });
    Ok(VerifyReport {
        family: *family,
        n_max,
        ic_length,
        status: result.status,
        divergence,
    })
}
