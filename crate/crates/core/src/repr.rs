//! Array-to-sequence representations and the structural predicates the
//! constructions impose.

use num_bigint::BigUint;

use crate::array::Grid;
use crate::error::{Error, Result};
use crate::onedim::Composition;
use crate::symbol::Symbol;

/// One composition per column (or per row, via the transpose).
pub type CompositionSequence = Vec<Composition>;

/// One base-`q` integer per row (or per column).
pub type IntegerSequence = Vec<BigUint>;

fn comp_of<S: Symbol>(cells: impl Iterator<Item = S>, q: u32) -> Composition {
    let mut counts = vec![0u32; q as usize];
    for s in cells {
        counts[s.as_index()] += 1;
    }
    Composition::from_counts(counts)
}

/// Column composition representation.
pub fn ccr<S: Symbol>(x: &Grid<S>) -> CompositionSequence {
    (0..x.cols()).map(|c| comp_of((0..x.rows()).map(|r| x.at(r, c)), x.q())).collect()
}

/// Compositions of the rows; equal to `ccr(transpose(x))`.
pub fn row_compositions<S: Symbol>(x: &Grid<S>) -> CompositionSequence {
    x.row_iter().map(|row| comp_of(row.iter().copied(), x.q())).collect()
}

pub(crate) fn base_q<S: Symbol>(digits: impl Iterator<Item = S>, q: u32) -> BigUint {
    digits.fold(BigUint::default(), |acc, d| acc * q + d.as_u64())
}

/// Row integer representation: row `k` read as a base-`q` number, most
/// significant digit first.
pub fn rir<S: Symbol>(x: &Grid<S>) -> IntegerSequence {
    x.row_iter().map(|row| base_q(row.iter().copied(), x.q())).collect()
}

/// Column integer representation, `rir(transpose(x))`.
pub fn cir<S: Symbol>(x: &Grid<S>) -> IntegerSequence {
    (0..x.cols()).map(|c| base_q((0..x.rows()).map(|r| x.at(r, c)), x.q())).collect()
}

/// Adjacent columns have distinct compositions.
pub fn is_good<S: Symbol>(x: &Grid<S>) -> bool {
    ccr(x).windows(2).all(|w| w[0] != w[1])
}

fn check_band<S: Symbol>(x: &Grid<S>, l: usize) -> Result<()> {
    if l == 0 || x.rows() < 3 * l {
        return Err(Error::InvalidParameter(format!(
            "band height {l} needs at least {} rows, array has {}",
            3 * l,
            x.rows()
        )));
    }
    Ok(())
}

/// Within each of the three bands of height `l`, adjacent columns differ.
pub fn is_l_weakly_valid<S: Symbol>(x: &Grid<S>, l: usize) -> Result<bool> {
    check_band(x, l)?;
    Ok(bands_ok(x, l))
}

pub(crate) fn bands_ok<S: Symbol>(x: &Grid<S>, l: usize) -> bool {
    (0..3).all(|k| {
        let rows = k * l..(k + 1) * l;
        (1..x.cols()).all(|c| rows.clone().any(|r| x.at(r, c) != x.at(r, c - 1)))
    })
}

pub(crate) fn no_triple_repeat<T: Eq>(seq: &[T]) -> bool {
    seq.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2]))
}

/// No three consecutive equal column compositions, no three consecutive
/// equal row compositions, and weakly valid.
pub fn is_l_valid<S: Symbol>(x: &Grid<S>, l: usize) -> Result<bool> {
    check_band(x, l)?;
    Ok(no_triple_repeat(&ccr(x)) && no_triple_repeat(&row_compositions(x)) && bands_ok(x, l))
}
