//! Lattice paths that compute word length over the enriched generating sets,
//! the word codecs for them, and the explicit witness constructions.
//!
//! Coordinates are `(p, d, e)` with `d = q + r` and `e = q - r`. Every
//! diagonal segment changes exactly one of `d`, `e` by one; a vertex lies
//! over an integer point of the `q,r`-plane iff `d ≡ e (mod 2)`.

mod analytic;
mod codec;
mod escape;
mod normalize;
mod path;
mod witness;

use thiserror::Error;

pub use analytic::{cover_cost, d_c_analytic, d_d_analytic, dpath_min_length};
pub use codec::{path_from_word, word_from_path, PathModel};
pub use escape::{escape_move, EscapeMove};
pub use normalize::{mu_split, normalize_decorated, MuSplit};
pub use path::{DecoratedPath, Seg, Vertex};
pub use witness::{witness_h, witness_k, WitnessPath};

use crate::group::GroupError;

/// Paths for `(H, D)` never leave `p = 0`.
pub type DecoratedDPath = DecoratedPath;
pub type DecoratedBPath = DecoratedPath;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("path is not word-like at segment {at}: {reason}")]
    PathNotWordlike { at: usize, reason: &'static str },
    #[error("generator {0} has no path shape")]
    UnsupportedGenerator(String),
    #[error("the exceptional element a is excluded")]
    ExcludedElement,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("negative s-coordinate {0} is not supported")]
    UnsupportedNegativeP(i64),
    #[error("no subset of on-path buttons lights the target")]
    Unsolvable,
    #[error("button re-solve failed during {0}")]
    ReSolveFailed(&'static str),
    #[error("no escape move from {0}")]
    NoEscape(String),
    #[error("distance table too small: {0}")]
    BallTooSmall(String),
}
