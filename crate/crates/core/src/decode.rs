//! Decoder outcomes and the reconstruction steps shared by the
//! single-criss-cross decoders.

use std::collections::BTreeMap;
use std::fmt;

use crate::array::Grid;
use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// A 1-based inclusive interval of deletion positions.
///
/// When several positions give the same received array the decoder
/// reports the smallest interval containing all of them.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct PositionRange {
    pub start: usize,
    pub end: usize,
}

impl PositionRange {
    pub fn exact(p: usize) -> Self {
        Self { start: p, end: p }
    }

    pub fn new(start: usize, end: usize) -> Self {
        Self { start: start.min(end), end: start.max(end) }
    }

    pub fn is_exact(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, p: usize) -> bool {
        (self.start..=self.end).contains(&p)
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn hull(self, other: Self) -> Self {
        Self { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

impl fmt::Display for PositionRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

/// Which decoding strategy to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum DecodePath {
    /// Fast path when the sum parameters allow it, scan otherwise.
    #[default]
    Auto,
    /// Reconstruction from sums plus VT decoding; requires uniform sums.
    Fast,
    /// Try every deletion hypothesis and keep the members.
    Scan,
}

/// The strategy that produced a result.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PathUsed {
    Fast,
    Scan,
}

impl fmt::Display for PathUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathUsed::Fast => "fast",
            PathUsed::Scan => "scan",
        })
    }
}

/// A recovered codeword with the deletion positions the decoder could pin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decoded<S> {
    pub array: Grid<S>,
    pub rows: PositionRange,
    pub cols: PositionRange,
    pub path: PathUsed,
}

pub(crate) fn col_sums<S: Symbol>(y: &Grid<S>) -> Vec<u64> {
    let mut sums = vec![0u64; y.cols()];
    for row in y.row_iter() {
        for (s, v) in sums.iter_mut().zip(row) {
            *s += v.as_u64();
        }
    }
    sums
}

pub(crate) fn row_sums<S: Symbol>(y: &Grid<S>) -> Vec<u64> {
    y.row_iter().map(|row| row.iter().map(|v| v.as_u64()).sum()).collect()
}

/// `(target - sum) mod q` as a symbol.
pub(crate) fn missing<S: Symbol>(target: u32, sum: u64, q: u32) -> S {
    let q = q as u64;
    S::from_u64((target as u64 % q + q - sum % q) % q).expect("residue fits the symbol type")
}

pub(crate) fn uniform(v: &[u32]) -> Option<u32> {
    match v.split_first() {
        Some((&first, rest)) if rest.iter().all(|&x| x == first) => Some(first),
        Some(_) => None,
        None => None,
    }
}

/// The array `X''` (deleted row at the bottom, deleted column at the
/// right) rebuilt from uniform column sum `alpha` and row sum `beta`.
pub(crate) fn rebuild_shifted<S: Symbol>(y: &Grid<S>, alpha: u32, beta: u32) -> Grid<S> {
    let q = y.q();
    let (m, k) = (y.rows(), y.cols());
    let cs = col_sums(y);
    let rs = row_sums(y);
    let bottom: Vec<S> = cs.iter().map(|&s| missing(alpha, s, q)).collect();
    let corner: S = missing(beta, bottom.iter().map(|v| v.as_u64()).sum(), q);
    Grid::from_fn(m + 1, k + 1, q, |r, c| match (r == m, c == k) {
        (false, false) => y.at(r, c),
        (true, false) => bottom[c],
        (false, true) => missing(beta, rs[r], q),
        (true, true) => corner,
    })
}

/// The candidate obtained by inserting row `i` and column `j` (1-based)
/// with contents forced by the sum vectors `a` (per column of the result)
/// and `b` (per row of the result).
pub(crate) fn rebuild_hypothesis<S: Symbol>(
    y: &Grid<S>,
    a: &[u32],
    b: &[u32],
    cs: &[u64],
    rs: &[u64],
    i: usize,
    j: usize,
) -> Grid<S> {
    let q = y.q();
    let (ri, cj) = (i - 1, j - 1);
    let rows = y.rows() + 1;
    let cols = y.cols() + 1;
    let src = |t: usize, hole: usize| if t < hole { t } else { t - 1 };
    let new_row: Vec<S> = (0..cols)
        .map(|c| if c == cj { S::zero() } else { missing(a[c], cs[src(c, cj)], q) })
        .collect();
    let row_total: u64 = new_row.iter().map(|v| v.as_u64()).sum();
    let corner: S = missing(b[ri], row_total, q);
    Grid::from_fn(rows, cols, q, |r, c| match (r == ri, c == cj) {
        (false, false) => y.at(src(r, ri), src(c, cj)),
        (true, false) => new_row[c],
        (false, true) => missing(b[r], rs[src(r, ri)], q),
        (true, true) => corner,
    })
}

/// Tries all `(i, j)` hypotheses and keeps the candidates accepted by
/// `member`. Exactly one distinct survivor is required.
pub(crate) fn scan<S: Symbol>(
    y: &Grid<S>,
    a: &[u32],
    b: &[u32],
    member: impl Fn(&Grid<S>) -> bool,
) -> Result<Decoded<S>> {
    let cs = col_sums(y);
    let rs = row_sums(y);
    let mut survivors: BTreeMap<Grid<S>, (PositionRange, PositionRange)> = BTreeMap::new();
    for i in 1..=y.rows() + 1 {
        for j in 1..=y.cols() + 1 {
            let x = rebuild_hypothesis(y, a, b, &cs, &rs, i, j);
            if member(&x) {
                let here = (PositionRange::exact(i), PositionRange::exact(j));
                survivors
                    .entry(x)
                    .and_modify(|(r, c)| {
                        *r = r.hull(here.0);
                        *c = c.hull(here.1);
                    })
                    .or_insert(here);
            }
        }
    }
    match survivors.len() {
        0 => Err(Error::NotCodeword),
        1 => {
            let (array, (rows, cols)) = survivors.into_iter().next().expect("one survivor");
            Ok(Decoded { array, rows, cols, path: PathUsed::Scan })
        }
        k => Err(Error::Ambiguous(k)),
    }
}

pub(crate) fn check_received<S: Symbol>(y: &Grid<S>, rows: usize, cols: usize, q: u32) -> Result<()> {
    if y.rows() + 1 != rows || y.cols() + 1 != cols || y.q() != q {
        return Err(Error::InvalidArgument(format!(
            "received {}x{} array over q={}, expected {}x{} over q={q}",
            y.rows(),
            y.cols(),
            y.q(),
            rows - 1,
            cols - 1
        )));
    }
    Ok(())
}
