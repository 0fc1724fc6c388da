//! Two-dimensional codes correcting one row and one column deletion, and
//! their burst-deletion extension, with exhaustive verifiers and bound
//! evaluators.
//!
//! Arrays are generic over the cell type ([`Symbol`]); [`Array2D`] with
//! byte cells covers alphabets up to 256 and is what the CLI uses.

pub mod array;
pub mod bounds;
pub mod c1;
pub mod c2;
pub mod c3;
pub mod decode;
pub mod error;
pub mod onedim;
pub mod record;
pub mod repr;
pub mod symbol;
pub mod verify;

pub use array::{for_each_array, BallMode, BurstPattern, DeletionPattern, Grid, DEFAULT_ENUMERATION_CAP};
pub use decode::{DecodePath, Decoded, PathUsed, PositionRange};
pub use error::{Error, Result};
pub use onedim::Composition;
pub use record::Params;
pub use symbol::Symbol;

/// Arrays over alphabets of size at most 256.
pub type Array2D = Grid<u8>;

/// Arrays over alphabets of size at most 65536.
pub type WideArray2D = Grid<u16>;
