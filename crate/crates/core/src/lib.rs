//! Slow solutions of nested recursions of the form
//!
//! ```text
//! R(n) = Σ_{i=1..k} R(n - a_i - Σ_{t=1..p} R(n - b_it))
//! ```
//!
//! computed two ways: by memoized evaluation ([`recursion::evaluate`]) and
//! by counting nonempty leaf cells of a labelled infinite tree
//! ([`tree::cell_count`]). The [`families`] module pairs each recursion
//! with its tree, [`pruning`] checks the tree transformations behind the
//! correspondence, and [`frequency`] handles frequency sequences.

pub mod error;
pub mod explore;
pub mod export;
pub mod families;
pub mod frequency;
pub mod input;
pub mod oeis;
pub mod pruning;
pub mod recursion;
pub mod tree;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use families::{FamilyParams, PruneRule, Validity};
pub use frequency::{closed_form, FrequencySequence};
pub use recursion::{evaluate, is_slow, EvalResult, RecursionSpec, Status};
pub use tree::{cell_count, initial_conditions, TreeSpec};

/// Runs the guide's code samples as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/recursions.md")]
    mod recursions {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/frequency.md")]
    mod frequency {}
    #[doc = include_str!("../../../book/src/pruning.md")]
    mod pruning {}
    #[doc = include_str!("../../../book/src/explore.md")]
    mod explore {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
