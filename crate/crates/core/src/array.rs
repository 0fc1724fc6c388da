//! Arrays over `Σ_q`, the criss-cross deletion/insertion channel and the
//! index transforms the decoders are built on.
//!
//! Public indices are 1-based (`1..=rows`, `1..=cols`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::symbol::{max_alphabet, Symbol};

/// Default limit on the number of candidate arrays an insertion ball may
/// enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// A `rows × cols` array over the alphabet `{0, …, q-1}`, stored row-major.
///
/// The derived ordering compares shape first and then cells in row-major
/// order, so sets of equally shaped arrays are ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Grid<S> {
    rows: usize,
    cols: usize,
    q: u32,
    cells: Vec<S>,
}

/// Plain deletions remove arbitrary rows/columns; burst deletions remove a
/// contiguous window.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum BallMode {
    Plain,
    Burst,
}

/// Which rows and columns were removed (1-based, strictly increasing).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DeletionPattern {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl DeletionPattern {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        for (what, idx) in [("row", &rows), ("column", &cols)] {
            if idx.contains(&0) {
                return Err(Error::InvalidPattern(format!("{what} index 0 (indices are 1-based)")));
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidPattern(format!(
                    "{what} indices must be strictly increasing: {idx:?}"
                )));
            }
        }
        Ok(Self { rows, cols })
    }

    pub fn single(i: usize, j: usize) -> Result<Self> {
        Self::new(vec![i], vec![j])
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }
}

/// A burst window: `t_r` consecutive rows starting at `row_start` and `t_c`
/// consecutive columns starting at `col_start`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BurstPattern {
    pub row_start: usize,
    pub col_start: usize,
    pub t_r: usize,
    pub t_c: usize,
}

impl BurstPattern {
    pub fn new(row_start: usize, col_start: usize, t_r: usize, t_c: usize) -> Result<Self> {
        if (t_r > 0 && row_start == 0) || (t_c > 0 && col_start == 0) {
            return Err(Error::InvalidPattern("burst start indices are 1-based".into()));
        }
        Ok(Self { row_start, col_start, t_r, t_c })
    }

    pub fn to_pattern(&self) -> DeletionPattern {
        DeletionPattern {
            rows: (self.row_start..self.row_start + self.t_r).collect(),
            cols: (self.col_start..self.col_start + self.t_c).collect(),
        }
    }
}

impl<S: Symbol> Grid<S> {
    pub fn new(rows: usize, cols: usize, q: u32, cells: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(format!("array shape {rows}x{cols} must be at least 1x1")));
        }
        if q < 2 {
            return Err(Error::InvalidParameter(format!("alphabet size {q} must be at least 2")));
        }
        if q as u64 > max_alphabet::<S>() {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {q} does not fit the cell type"
            )));
        }
        if cells.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "expected {} cells, got {}",
                rows * cols,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|s| s.as_u64() >= q as u64) {
            return Err(Error::InvalidArgument(format!("symbol {bad} outside alphabet of size {q}")));
        }
        Ok(Self { rows, cols, q, cells })
    }

    pub fn from_rows(q: u32, rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Self::new(r, c, q, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize, q: u32) -> Result<Self> {
        Self::new(rows, cols, q, vec![S::zero(); rows * cols])
    }

    /// Builds an array from a cell function taking 0-based coordinates.
    pub(crate) fn from_fn(rows: usize, cols: usize, q: u32, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                cells.push(f(r, c));
            }
        }
        Self { rows, cols, q, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn cells(&self) -> &[S] {
        &self.cells
    }

    /// Cell `(i, j)`, 1-based.
    pub fn cell(&self, i: usize, j: usize) -> Result<S> {
        self.check_row(i)?;
        self.check_col(j)?;
        Ok(self.at(i - 1, j - 1))
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> Result<&[S]> {
        self.check_row(i)?;
        Ok(self.row0(i - 1))
    }

    /// Column `j`, 1-based.
    pub fn column(&self, j: usize) -> Result<Vec<S>> {
        self.check_col(j)?;
        Ok(self.col0(j - 1))
    }

    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> S {
        self.cells[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize, v: S) {
        self.cells[r * self.cols + c] = v;
    }

    #[inline]
    pub(crate) fn row0(&self, r: usize) -> &[S] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    pub(crate) fn col0(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub(crate) fn row_iter(&self) -> impl Iterator<Item = &[S]> + '_ {
        self.cells.chunks(self.cols)
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rows {
            return Err(Error::InvalidIndex { index: i, bound: self.rows });
        }
        Ok(())
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.cols {
            return Err(Error::InvalidIndex { index: j, bound: self.cols });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.q, |r, c| self.at(c, r))
    }

    /// Sub-block on 0-based half-open ranges.
    pub(crate) fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), self.q, |r, c| self.at(r0 + r, c0 + c))
    }

    /// Removes the indexed rows and columns; survivors keep their order.
    pub fn delete_rows_cols(&self, pattern: &DeletionPattern) -> Result<Self> {
        if let Some(&i) = pattern.rows.iter().find(|&&i| i > self.rows) {
            return Err(Error::InvalidPattern(format!("row {i} outside 1..={}", self.rows)));
        }
        if let Some(&j) = pattern.cols.iter().find(|&&j| j > self.cols) {
            return Err(Error::InvalidPattern(format!("column {j} outside 1..={}", self.cols)));
        }
        if pattern.rows.len() >= self.rows || pattern.cols.len() >= self.cols {
            return Err(Error::InvalidPattern("pattern removes every row or every column".into()));
        }
        Ok(self.minor_unchecked(&pattern.rows, &pattern.cols))
    }

    /// Minor for 1-based sorted index lists already known to be in range.
    pub(crate) fn minor_unchecked(&self, del_rows: &[usize], del_cols: &[usize]) -> Self {
        let keep_rows: Vec<usize> = (0..self.rows).filter(|r| !del_rows.contains(&(r + 1))).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|c| !del_cols.contains(&(c + 1))).collect();
        Self::from_fn(keep_rows.len(), keep_cols.len(), self.q, |r, c| self.at(keep_rows[r], keep_cols[c]))
    }

    fn check_ball_params(&self, t_r: usize, t_c: usize) -> Result<()> {
        if t_r >= self.rows || t_c >= self.cols {
            return Err(Error::InvalidParameter(format!(
                "cannot delete {t_r} rows and {t_c} columns from a {}x{} array",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Row and column index sets of every pattern of the given mode.
    fn patterns(&self, t_r: usize, t_c: usize, mode: BallMode) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let choose = |n: usize, t: usize| -> Vec<Vec<usize>> {
            match mode {
                BallMode::Plain => (1..=n).combinations(t).collect(),
                BallMode::Burst => (1..=n + 1 - t).map(|s| (s..s + t).collect()).collect(),
            }
        };
        (choose(self.rows, t_r), choose(self.cols, t_c))
    }

    /// All distinct minors reachable by deleting `t_r` rows and `t_c` columns.
    pub fn deletion_ball(&self, t_r: usize, t_c: usize) -> Result<BTreeSet<Self>> {
        self.ball(t_r, t_c, BallMode::Plain)
    }

    /// As [`Grid::deletion_ball`], restricted to contiguous windows.
    pub fn burst_deletion_ball(&self, t_r: usize, t_c: usize) -> Result<BTreeSet<Self>> {
        self.ball(t_r, t_c, BallMode::Burst)
    }

    pub fn ball(&self, t_r: usize, t_c: usize, mode: BallMode) -> Result<BTreeSet<Self>> {
        self.check_ball_params(t_r, t_c)?;
        let (rs, cs) = self.patterns(t_r, t_c, mode);
        let mut out = BTreeSet::new();
        for r in &rs {
            for c in &cs {
                out.insert(self.minor_unchecked(r, c));
            }
        }
        Ok(out)
    }

    /// Whether `y` is obtainable from `self` by a `(t_r, t_c)` deletion of
    /// the given mode.
    pub fn ball_contains(&self, y: &Self, t_r: usize, t_c: usize, mode: BallMode) -> bool {
        if t_r >= self.rows
            || t_c >= self.cols
            || y.rows + t_r != self.rows
            || y.cols + t_c != self.cols
            || y.q != self.q
        {
            return false;
        }
        let (rs, cs) = self.patterns(t_r, t_c, mode);
        rs.iter().any(|r| cs.iter().any(|c| self.minor_unchecked(r, c) == *y))
    }

    /// Every array obtainable by inserting `t_c` columns and then `t_r` rows
    /// (contiguous blocks when `burst`). Fails with a capacity error when the
    /// candidate count exceeds `cap`.
    pub fn insertion_ball(&self, t_r: usize, t_c: usize, burst: bool, cap: u64) -> Result<BTreeSet<Self>> {
        let q = BigUint::from(self.q);
        let out_rows = self.rows + t_r;
        let out_cols = self.cols + t_c;
        let positions = |n: usize, t: usize| -> BigUint {
            if burst {
                BigUint::from(if t == 0 { 1 } else { n + 1 - t })
            } else {
                crate::bounds::binomial(n as u64, t as u64)
            }
        };
        let mass = q.pow((t_c * self.rows + t_r * out_cols) as u32)
            * positions(out_cols, t_c)
            * positions(out_rows, t_r);
        if mass > BigUint::from(cap) {
            return Err(Error::Capacity(format!(
                "insertion ball enumeration needs {mass} candidates (cap {cap})"
            )));
        }

        let slots = |n: usize, t: usize| -> Vec<Vec<usize>> {
            if burst {
                if t == 0 {
                    vec![vec![]]
                } else {
                    (0..=n - t).map(|s| (s..s + t).collect()).collect()
                }
            } else {
                (0..n).combinations(t).collect()
            }
        };

        let mut widened = BTreeSet::new();
        for cols in slots(out_cols, t_c) {
            for_each_word(self.q, self.rows * t_c, |word| {
                widened.insert(self.with_inserted_cols(&cols, word));
            });
        }
        let mut out = BTreeSet::new();
        for g in &widened {
            for rows in slots(out_rows, t_r) {
                for_each_word(self.q, out_cols * t_r, |word| {
                    out.insert(g.transpose().with_inserted_cols(&rows, word).transpose());
                });
            }
        }
        Ok(out)
    }

    /// Inserts new columns so that they land at the 0-based result positions
    /// `at` (sorted); `word` holds their contents column by column.
    fn with_inserted_cols(&self, at: &[usize], word: &[S]) -> Self {
        let cols = self.cols + at.len();
        let mut src_of = Vec::with_capacity(cols);
        let (mut k, mut orig) = (0, 0);
        for c in 0..cols {
            if k < at.len() && at[k] == c {
                src_of.push(Err(k));
                k += 1;
            } else {
                src_of.push(Ok(orig));
                orig += 1;
            }
        }
        Self::from_fn(self.rows, cols, self.q, |r, c| match src_of[c] {
            Ok(o) => self.at(r, o),
            Err(k) => word[k * self.rows + r],
        })
    }

    /// Moves row `i` to the bottom, keeping the order of the others.
    pub fn shift_row_to_bottom(&self, i: usize) -> Result<Self> {
        self.check_row(i)?;
        let order: Vec<usize> = (0..self.rows).filter(|&r| r != i - 1).chain([i - 1]).collect();
        Ok(Self::from_fn(self.rows, self.cols, self.q, |r, c| self.at(order[r], c)))
    }

    /// Moves column `j` to the rightmost position.
    pub fn shift_col_to_right(&self, j: usize) -> Result<Self> {
        self.check_col(j)?;
        let order: Vec<usize> = (0..self.cols).filter(|&c| c != j - 1).chain([j - 1]).collect();
        Ok(Self::from_fn(self.rows, self.cols, self.q, |r, c| self.at(r, order[c])))
    }

    /// Inverse of [`Grid::shift_row_to_bottom`]: the last row moves to
    /// 1-based position `i`.
    pub(crate) fn move_last_row_to(&self, i: usize) -> Self {
        let last = self.rows - 1;
        Self::from_fn(self.rows, self.cols, self.q, |r, c| {
            let src = if r + 1 < i {
                r
            } else if r + 1 == i {
                last
            } else {
                r - 1
            };
            self.at(src, c)
        })
    }

    /// Inverse of [`Grid::shift_col_to_right`].
    pub(crate) fn move_last_col_to(&self, j: usize) -> Self {
        self.transpose().move_last_row_to(j).transpose()
    }

    /// The subarray of cells whose row index is `≡ s_r (mod t_r)` and whose
    /// column index is `≡ s_c (mod t_c)`.
    pub fn extract_residue_subarray(&self, s_r: usize, s_c: usize, t_r: usize, t_c: usize) -> Result<Self> {
        check_residue_params(self.rows, self.cols, t_r, t_c)?;
        if !(1..=t_r).contains(&s_r) || !(1..=t_c).contains(&s_c) {
            return Err(Error::InvalidParameter(format!(
                "residue ({s_r},{s_c}) outside [1:{t_r}]x[1:{t_c}]"
            )));
        }
        Ok(self.residue_unchecked(s_r, s_c, t_r, t_c))
    }

    pub(crate) fn residue_unchecked(&self, s_r: usize, s_c: usize, t_r: usize, t_c: usize) -> Self {
        Self::from_fn(self.rows / t_r, self.cols / t_c, self.q, |r, c| {
            self.at(r * t_r + s_r - 1, c * t_c + s_c - 1)
        })
    }

    /// Reassembles an array from its residue subarrays; `parts[s_r-1][s_c-1]`
    /// holds `X^{(s_r,s_c)}`.
    pub fn interleave_residue_subarrays(parts: &[Vec<Self>], t_r: usize, t_c: usize) -> Result<Self> {
        if t_r == 0 || t_c == 0 || parts.len() != t_r || parts.iter().any(|p| p.len() != t_c) {
            return Err(Error::InvalidParameter(format!("expected a {t_r}x{t_c} grid of parts")));
        }
        let first = &parts[0][0];
        let (sr, sc, q) = (first.rows, first.cols, first.q);
        if parts.iter().flatten().any(|p| p.rows != sr || p.cols != sc || p.q != q) {
            return Err(Error::InvalidParameter("residue parts differ in shape or alphabet".into()));
        }
        Ok(Self::from_fn(sr * t_r, sc * t_c, q, |r, c| {
            parts[r % t_r][c % t_c].at(r / t_r, c / t_c)
        }))
    }

    /// Reads one array in text form from a line iterator.
    pub fn parse_lines<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Self> {
        let header = lines.next().ok_or_else(|| Error::Parse("missing array header".into()))?;
        let dims = parse_numbers::<usize>(header)?;
        let [rows, cols, q] = dims[..] else {
            return Err(Error::Parse(format!("array header must be 'rows cols q', got '{header}'")));
        };
        let q = u32::try_from(q).map_err(|_| Error::Parse(format!("alphabet size {q} too large")))?;
        let mut cells = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {}", r + 1)))?;
            let row = parse_numbers::<S>(line)?;
            if row.len() != cols {
                return Err(Error::Parse(format!("row {} has {} entries, expected {cols}", r + 1, row.len())));
            }
            cells.extend(row);
        }
        Self::new(rows, cols, q, cells).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub(crate) fn check_residue_params(rows: usize, cols: usize, t_r: usize, t_c: usize) -> Result<()> {
    if t_r == 0 || t_c == 0 || !rows.is_multiple_of(t_r) || !cols.is_multiple_of(t_c) {
        return Err(Error::InvalidParameter(format!(
            "residue moduli ({t_r},{t_c}) must divide the shape {rows}x{cols}"
        )));
    }
    Ok(())
}

fn parse_numbers<T: FromStr>(line: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|tok| tok.parse::<T>().map_err(|_| Error::Parse(format!("bad number '{tok}'"))))
        .collect()
}

/// Calls `f` with every word of length `len` over `{0, …, q-1}`.
pub(crate) fn for_each_word<S: Symbol>(q: u32, len: usize, mut f: impl FnMut(&[S])) {
    let top = S::from_u64(q as u64 - 1).expect("alphabet fits symbol type");
    let mut word = vec![S::zero(); len];
    loop {
        f(&word);
        let mut k = 0;
        loop {
            if k == len {
                return;
            }
            if word[k] < top {
                word[k] = word[k] + S::one();
                break;
            }
            word[k] = S::zero();
            k += 1;
        }
    }
}

/// Calls `f` with every `rows × cols` array over `Σ_q`, in a fixed order.
pub fn for_each_array<S: Symbol>(rows: usize, cols: usize, q: u32, cap: u64, mut f: impl FnMut(&Grid<S>)) -> Result<()> {
    let total = BigUint::from(q).pow((rows * cols) as u32);
    if total > BigUint::from(cap) {
        return Err(Error::Capacity(format!("{total} arrays exceed the enumeration cap {cap}")));
    }
    let mut grid = Grid::zeros(rows, cols, q)?;
    for_each_word(q, rows * cols, |w: &[S]| {
        grid.cells.copy_from_slice(w);
        f(&grid);
    });
    Ok(())
}

impl<S: Symbol> fmt::Display for Grid<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.q)?;
        for row in self.row_iter() {
            writeln!(f, "{}", row.iter().join(" "))?;
        }
        Ok(())
    }
}

impl<S: Symbol> FromStr for Grid<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let g = Self::parse_lines(&mut lines)?;
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("trailing content after array: '{extra}'")));
        }
        Ok(g)
    }
}
