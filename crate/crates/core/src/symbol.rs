use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};

/// Cell type of an array: any primitive unsigned integer.
///
/// Arrays over `Σ_q` store one `Symbol` per cell; `q - 1` must be
/// representable in the chosen type.
pub trait Symbol:
    PrimInt + Unsigned + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
    fn from_u64(v: u64) -> Option<Self> {
        <Self as num_traits::NumCast>::from(v)
    }

    fn as_u64(self) -> u64 {
        self.to_u64().expect("unsigned symbol fits in u64")
    }

    fn as_index(self) -> usize {
        self.to_usize().expect("symbol fits in usize")
    }
}

impl<T> Symbol for T where
    T: PrimInt + Unsigned + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}

/// Largest alphabet size whose symbols fit in `S`.
pub fn max_alphabet<S: Symbol>() -> u64 {
    S::max_value().as_u64().saturating_add(1)
}

/// Sum of the symbols modulo `q`.
pub fn sum_mod<S: Symbol>(xs: impl IntoIterator<Item = S>, q: u32) -> u32 {
    let q = q as u64;
    (xs.into_iter().fold(0u64, |acc, s| (acc + s.as_u64() % q) % q)) as u32
}
