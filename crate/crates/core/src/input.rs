//! JSON input documents accepted by the command-line tool.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyParams;
use crate::recursion::RecursionDocument;
use crate::tree::TreeSpec;

/// A named family (`{"family": ...}`), a raw recursion with initial
/// conditions (`{"arity": ...}`) or a labelling scheme (`{"k": ...}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Family(FamilyParams),
    Recursion(RecursionDocument),
    Tree(TreeSpec),
}

impl Document {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::InvalidArgument(format!("not a family, recursion or tree document: {e}"))
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
