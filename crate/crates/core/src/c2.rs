//! Code correcting one row and one column deletion over any alphabet,
//! including binary.
//!
//! Composition syndromes locate each deletion to an interval of length at
//! most two; inversion parities of a band that escaped the row deletion
//! (for the column) and of the row integers (for the row) pick the exact
//! position. Shapes may be rectangular so the code can serve as a
//! building block for interleaved subarrays.

use crate::array::Grid;
use crate::c1::{derived_last, sums_mod};
use crate::decode::{check_received, rebuild_shifted, scan, uniform, DecodePath, Decoded, PathUsed, PositionRange};
use crate::error::{Error, Result};
use crate::onedim::{insert_at, inversions, inversions_after_insert, sig_syndrome, vt_decode_known_symbol};
use crate::repr::{bands_ok, base_q, ccr, cir, no_triple_repeat, rir, row_compositions, CompositionSequence};
use crate::symbol::Symbol;

/// Parameters of one code class.
///
/// `b` holds `rows - 1` row sums; the last is implied by the column sums.
/// `c1` constrains the column compositions (mod `cols`), `c2` the row
/// compositions (mod `rows`), `d[0..3]` the inversion parities of the three
/// band column integers and `d[3]` the parity of the row integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct C2Params {
    pub rows: usize,
    pub cols: usize,
    pub q: u32,
    pub l: usize,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c1: usize,
    pub c2: usize,
    pub d: [u8; 4],
    pub rows_distinct: bool,
}

/// Band height `⌈log₂ n⌉ + 6` for binary and `⌈log₂ n⌉ + 2` otherwise,
/// lowered to `⌊n/3⌋` when three bands would not fit.
pub fn default_band_height(n: usize, q: u32) -> usize {
    let log = if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
    let l = log + if q == 2 { 6 } else { 2 };
    l.min(n / 3).max(1)
}

pub(crate) fn check_band_height(rows: usize, l: usize) -> Result<()> {
    if l == 0 || rows < 3 * l {
        return Err(Error::InvalidParameter(format!("band height {l} needs 3l ≤ {rows}")));
    }
    Ok(())
}

impl C2Params {
    pub fn n(&self) -> Option<usize> {
        (self.rows == self.cols).then_some(self.rows)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.q < 2 || self.cols < 2 {
            return bad(format!("need q ≥ 2 and at least 2 columns (q={}, cols={})", self.q, self.cols));
        }
        check_band_height(self.rows, self.l)?;
        if self.a.len() != self.cols || self.b.len() + 1 != self.rows {
            return bad(format!("expected {} column sums and {} row sums", self.cols, self.rows - 1));
        }
        if self.a.iter().chain(&self.b).any(|&v| v >= self.q) {
            return bad("sum residue outside [0, q)".into());
        }
        if self.c1 >= self.cols || self.c2 >= self.rows {
            return bad("composition syndromes out of range".into());
        }
        if self.d.iter().any(|&bit| bit > 1) {
            return bad("parity bits must be 0 or 1".into());
        }
        Ok(())
    }

    pub fn b_full(&self) -> Vec<u32> {
        let mut b = self.b.clone();
        b.push(derived_last(&self.a, &self.b, self.q));
        b
    }

    pub fn has_uniform_sums(&self) -> bool {
        uniform(&self.a).is_some() && uniform(&self.b_full()).is_some()
    }
}

fn parity<T: Ord + Clone>(seq: &[T]) -> u8 {
    (inversions(seq) % 2) as u8
}

/// Inversion parities of the column integers of bands 1..3.
pub fn band_parities<S: Symbol>(x: &Grid<S>, l: usize) -> Result<[u8; 3]> {
    check_band_height(x.rows(), l)?;
    Ok(band_parities_unchecked(x, l))
}

fn band_parities_unchecked<S: Symbol>(x: &Grid<S>, l: usize) -> [u8; 3] {
    [0, 1, 2].map(|k| parity(&cir(&x.block(k * l..(k + 1) * l, 0..x.cols()))))
}

pub(crate) fn parity_bits<S: Symbol>(x: &Grid<S>, l: usize) -> [u8; 4] {
    let [d1, d2, d3] = band_parities_unchecked(x, l);
    [d1, d2, d3, parity(&rir(x))]
}

pub(crate) fn adjacent_rows_distinct<S: Symbol>(x: &Grid<S>) -> bool {
    x.row_iter().zip(x.row_iter().skip(1)).all(|(u, v)| u != v)
}

fn check_shape<S: Symbol>(x: &Grid<S>, p: &C2Params) -> Result<()> {
    if x.rows() != p.rows || x.cols() != p.cols || x.q() != p.q {
        return Err(Error::InvalidArgument(format!(
            "array is {}x{} over q={}, parameters expect {}x{} over q={}",
            x.rows(),
            x.cols(),
            x.q(),
            p.rows,
            p.cols,
            p.q
        )));
    }
    Ok(())
}

/// Membership test.
pub fn c2_check<S: Symbol>(x: &Grid<S>, p: &C2Params) -> Result<bool> {
    p.validate()?;
    check_shape(x, p)?;
    Ok(member(x, p, &p.b_full()))
}

pub(crate) fn member<S: Symbol>(x: &Grid<S>, p: &C2Params, b_full: &[u32]) -> bool {
    let (cs, rs) = sums_mod(x);
    if cs != p.a || rs != b_full {
        return false;
    }
    if p.rows_distinct && !adjacent_rows_distinct(x) {
        return false;
    }
    let cc = ccr(x);
    let rc = row_compositions(x);
    no_triple_repeat(&cc)
        && no_triple_repeat(&rc)
        && bands_ok(x, p.l)
        && sig_syndrome(&cc, p.cols) == p.c1
        && sig_syndrome(&rc, p.rows) == p.c2
        && parity_bits(x, p.l) == p.d
}

/// Parameters of the class whose syndrome constraints `x` satisfies.
pub fn c2_syndromes<S: Symbol>(x: &Grid<S>, l: usize, rows_distinct: bool) -> Result<C2Params> {
    check_band_height(x.rows(), l)?;
    if x.cols() < 2 {
        return Err(Error::InvalidArgument("need at least 2 columns".into()));
    }
    let (a, mut b) = sums_mod(x);
    b.pop();
    Ok(C2Params {
        rows: x.rows(),
        cols: x.cols(),
        q: x.q(),
        l,
        a,
        b,
        c1: sig_syndrome(&ccr(x), x.cols()),
        c2: sig_syndrome(&row_compositions(x), x.rows()),
        d: parity_bits(x, l),
        rows_distinct,
    })
}

/// Output of the interval localisation step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Located<S> {
    pub rows: PositionRange,
    pub cols: PositionRange,
    /// The transmitted array with the deleted row moved to the bottom and
    /// the deleted column moved to the right.
    pub shifted: Grid<S>,
    pub ccr: CompositionSequence,
    pub row_ccr: CompositionSequence,
}

/// Rebuilds the shifted array from uniform sums and locates the deleted
/// row and column to intervals of length at most two.
pub fn c2_locate_intervals<S: Symbol>(y: &Grid<S>, p: &C2Params) -> Result<Located<S>> {
    p.validate()?;
    check_received(y, p.rows, p.cols, p.q)?;
    let (Some(alpha), Some(beta)) = (uniform(&p.a), uniform(&p.b_full())) else {
        return Err(Error::Capacity("interval localisation needs constant row and column sums".into()));
    };
    let shifted = rebuild_shifted(y, alpha, beta);
    let comps = ccr(&shifted);
    let col = vt_decode_known_symbol(&comps[..p.cols - 1], &comps[p.cols - 1], p.c1, p.cols)?;
    let rcomps = row_compositions(&shifted);
    let row = vt_decode_known_symbol(&rcomps[..p.rows - 1], &rcomps[p.rows - 1], p.c2, p.rows)?;
    for (what, run) in [("column", &col), ("row", &row)] {
        if run.run_len() > 2 {
            return Err(Error::CodeProperty(format!("{what} composition run of length {}", run.run_len())));
        }
    }
    Ok(Located {
        rows: PositionRange::new(row.run.0, row.run.1),
        cols: PositionRange::new(col.run.0, col.run.1),
        shifted,
        ccr: col.sequence,
        row_ccr: row.sequence,
    })
}

/// Picks among candidate insertion positions (1-based, within `range`) the
/// one whose inversion parity matches `target`. Identical candidates are
/// merged into a range.
fn pick_by_parity<T: Ord + Clone>(y: &[T], v: &T, range: PositionRange, target: u8) -> Result<PositionRange> {
    let inv = inversions(y);
    let mut hits: Vec<(usize, Vec<T>)> = Vec::new();
    for pos in range.start..=range.end {
        if (inversions_after_insert(y, inv, pos - 1, v) % 2) as u8 == target {
            hits.push((pos, insert_at(y, pos - 1, v.clone())));
        }
    }
    match hits.as_slice() {
        [] => Err(Error::NotCodeword),
        [(p, _)] => Ok(PositionRange::exact(*p)),
        [(p0, s0), rest @ ..] => {
            if rest.iter().all(|(_, s)| s == s0) {
                Ok(PositionRange::new(*p0, rest.last().map_or(*p0, |h| h.0)))
            } else {
                Err(Error::Ambiguous(hits.len()))
            }
        }
    }
}

/// Resolves the exact row and column inside the given intervals using
/// band and row inversion parities, then undoes the shift.
pub(crate) fn resolve_positions<S: Symbol>(
    shifted: &Grid<S>,
    rows_iv: PositionRange,
    cols_iv: PositionRange,
    l: usize,
    d: [u8; 4],
) -> Result<(Grid<S>, PositionRange, PositionRange)> {
    let (m, k) = (shifted.rows(), shifted.cols());
    let q = shifted.q();

    let mut band = None;
    for b in 0..3 {
        let (top, bottom) = (b * l + 1, (b + 1) * l);
        if bottom < rows_iv.start {
            band = Some((b, top - 1));
            break;
        }
        if top > rows_iv.end {
            band = Some((b, top - 2));
            break;
        }
    }
    let (b, first) = band.ok_or_else(|| Error::CodeProperty("no band avoids the row interval".into()))?;
    let col_int = |c: usize| base_q((first..first + l).map(|r| shifted.at(r, c)), q);
    let ys: Vec<_> = (0..k - 1).map(col_int).collect();
    let cols = if cols_iv.is_exact() {
        cols_iv
    } else {
        pick_by_parity(&ys, &col_int(k - 1), cols_iv, d[b])?
    };
    let partial = shifted.move_last_col_to(cols.start);

    let rows = if rows_iv.is_exact() {
        rows_iv
    } else {
        let ints = rir(&partial);
        pick_by_parity(&ints[..m - 1], &ints[m - 1], rows_iv, d[3])?
    };
    Ok((partial.move_last_row_to(rows.start), rows, cols))
}

pub fn c2_decode<S: Symbol>(y: &Grid<S>, p: &C2Params) -> Result<Decoded<S>> {
    c2_decode_with(y, p, DecodePath::Auto)
}

pub fn c2_decode_with<S: Symbol>(y: &Grid<S>, p: &C2Params, path: DecodePath) -> Result<Decoded<S>> {
    p.validate()?;
    check_received(y, p.rows, p.cols, p.q)?;
    let b_full = p.b_full();
    match path {
        DecodePath::Scan => scan(y, &p.a, &b_full, |x| member(x, p, &b_full)),
        DecodePath::Auto if !p.has_uniform_sums() => scan(y, &p.a, &b_full, |x| member(x, p, &b_full)),
        _ => {
            let located = c2_locate_intervals(y, p)?;
            let (x, rows, cols) = resolve_positions(&located.shifted, located.rows, located.cols, p.l, p.d)?;
            if !member(&x, p, &b_full) {
                return Err(Error::NotCodeword);
            }
            Ok(Decoded { array: x, rows, cols, path: PathUsed::Fast })
        }
    }
}
