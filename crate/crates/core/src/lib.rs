//! Exact Coxeter-group machinery for the movable cone of Calabi-Yau complete
//! intersections of multidegree `(1, …, 1)` hypersurfaces in `Pⁿ × ⋯ × Pⁿ`.
//!
//! The crate builds the reflection representation, the birational
//! automorphism generators as matrices and words, the chamber decomposition
//! of the movable cone, its boundary, and the symmetric `n = 2, m = 3` case
//! with an extra automorphism. All arithmetic is exact; floats appear only
//! when writing SVG coordinates.
//!
//! ```
//! use movcone::{CoxeterSystem, group};
//!
//! let sys = CoxeterSystem::new(2, 3, true).unwrap();
//! let psi = group::psi_matrix(&sys, 1, 2).unwrap();
//! assert_eq!(psi.to_int_rows().unwrap()[0], vec![(-2).into(), (-3).into(), 0.into()]);
//! ```

pub mod atlas;
pub mod coxeter;
pub mod error;
pub mod export;
pub mod group;
pub mod matrix;
pub mod scalar;
pub mod symmetric;

pub use coxeter::{CoxeterSystem, Permutation};
pub use error::{Error, Result};
pub use matrix::{Matrix, RatMatrix};
pub use scalar::{ExactScalar, Field, QuadExt};

/// Environment variable holding the word-count cap for enumerations.
pub const BUDGET_ENV: &str = "MOVCONE_WORD_BUDGET";

/// Default cap on enumerated words.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Word-count cap from [`BUDGET_ENV`], falling back to [`DEFAULT_BUDGET`].
pub fn word_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
