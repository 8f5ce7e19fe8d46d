//! Enumeration of square binary matrices with exactly `k` ones in every row
//! and column, up to permutation of rows and columns.
//!
//! Rows are stored as integers (`bitcore`, `matrix`). A matrix is
//! *canonical* when its row integers and its column integers are both
//! nondecreasing; [`enumerate`] counts and lists canonical matrices without
//! walking the whole set. [`formulas`] evaluates the known closed forms and
//! recurrences for the total number of such matrices when `k <= 3`, and
//! [`oracle`] checks everything by brute force for small `n`.

pub mod bitcore;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod matrix;
pub mod oracle;

pub use bitcore::{bit_value, k_subset_masks, popcount, to_binary_string, BitMask, MaskPool};
pub use enumerate::{
    collect_representatives, count_canonical, count_canonical_pruned, count_canonical_pruned_with,
    multiset_tuples, stream_representatives, EnumerationReport, Method, PruneRules, SearchOptions,
};
pub use error::{Error, Result};
pub use formulas::{BigCount, Route};
pub use matrix::RowTuple;
