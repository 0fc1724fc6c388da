//! Code correcting a burst of `t_r` consecutive row deletions and `t_c`
//! consecutive column deletions, by interleaving.
//!
//! A burst removes exactly one row and one column from every residue
//! subarray. The `(1,1)` subarray carries a full single-deletion code and
//! pins the positions; every other subarray only needs enough redundancy
//! to resolve an interval of length two.

use std::collections::{BTreeMap, BTreeSet};

use crate::array::{check_residue_params, BurstPattern, Grid};
use crate::c1::{derived_last, sums_mod};
use crate::c2::{self, adjacent_rows_distinct, check_band_height, parity_bits, resolve_positions, C2Params};
use crate::decode::{col_sums, rebuild_hypothesis, rebuild_shifted, row_sums, uniform, DecodePath, Decoded, PathUsed, PositionRange};
use crate::error::{Error, Result};
use crate::repr::{bands_ok, is_l_valid};
use crate::symbol::Symbol;

/// Constraints on a non-anchor residue subarray: column sums, all but the
/// last row sum, and the four inversion parities.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SubParams {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub d: [u8; 4],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct C3Params {
    pub n: usize,
    pub q: u32,
    pub t_r: usize,
    pub t_c: usize,
    pub l: usize,
    pub anchor: C2Params,
    /// Keyed by 1-based residue `(s_r, s_c)`, every residue except `(1,1)`.
    pub subs: BTreeMap<(usize, usize), SubParams>,
}

impl C3Params {
    pub fn sub_rows(&self) -> usize {
        self.n / self.t_r
    }

    pub fn sub_cols(&self) -> usize {
        self.n / self.t_c
    }

    pub fn validate(&self) -> Result<()> {
        check_geometry(self.n, self.t_r, self.t_c, self.l)?;
        let (rows, cols) = (self.sub_rows(), self.sub_cols());
        let an = &self.anchor;
        if an.rows != rows || an.cols != cols || an.q != self.q || an.l != self.l || !an.rows_distinct {
            return Err(Error::InvalidParameter(format!(
                "anchor parameters must describe a {rows}x{cols} subarray over q={} with l={} and distinct adjacent rows",
                self.q, self.l
            )));
        }
        an.validate()?;
        let expected: BTreeSet<(usize, usize)> = residues(self.t_r, self.t_c).filter(|&k| k != (1, 1)).collect();
        if self.subs.keys().copied().collect::<BTreeSet<_>>() != expected {
            return Err(Error::InvalidParameter("sub-parameters must cover every residue except (1,1)".into()));
        }
        for ((sr, sc), sp) in &self.subs {
            if sp.a.len() != cols || sp.b.len() + 1 != rows {
                return Err(Error::InvalidParameter(format!("residue ({sr},{sc}): wrong sum vector lengths")));
            }
            if sp.a.iter().chain(&sp.b).any(|&v| v >= self.q) || sp.d.iter().any(|&v| v > 1) {
                return Err(Error::InvalidParameter(format!("residue ({sr},{sc}): value out of range")));
            }
        }
        Ok(())
    }
}

fn residues(t_r: usize, t_c: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=t_r).flat_map(move |r| (1..=t_c).map(move |c| (r, c)))
}

/// Divisibility and band-height requirements.
pub fn check_geometry(n: usize, t_r: usize, t_c: usize, l: usize) -> Result<()> {
    check_residue_params(n, n, t_r, t_c)?;
    if t_r >= n || t_c >= n {
        return Err(Error::InvalidParameter(format!("burst {t_r}x{t_c} leaves nothing of an {n}x{n} array")));
    }
    check_band_height(n / t_r, l)?;
    if n / t_c < l.max(2) {
        return Err(Error::InvalidParameter(format!("subarrays need at least max(l, 2) = {} columns", l.max(2))));
    }
    Ok(())
}

fn sub_member<S: Symbol>(x: &Grid<S>, sp: &SubParams, b_full: &[u32], l: usize) -> bool {
    let (cs, rs) = sums_mod(x);
    cs == sp.a && rs == b_full && bands_ok(x, l) && parity_bits(x, l) == sp.d
}

fn sub_b_full(sp: &SubParams, q: u32) -> Vec<u32> {
    let mut b = sp.b.clone();
    b.push(derived_last(&sp.a, &sp.b, q));
    b
}

pub fn c3_check<S: Symbol>(x: &Grid<S>, p: &C3Params) -> Result<bool> {
    p.validate()?;
    if x.rows() != p.n || x.cols() != p.n || x.q() != p.q {
        return Err(Error::InvalidArgument(format!("expected a {0}x{0} array over q={1}", p.n, p.q)));
    }
    Ok(member(x, p))
}

fn member<S: Symbol>(x: &Grid<S>, p: &C3Params) -> bool {
    let anchor_b = p.anchor.b_full();
    residues(p.t_r, p.t_c).all(|(sr, sc)| {
        let sub = x.residue_unchecked(sr, sc, p.t_r, p.t_c);
        if (sr, sc) == (1, 1) {
            c2::member(&sub, &p.anchor, &anchor_b)
        } else {
            let sp = &p.subs[&(sr, sc)];
            sub_member(&sub, sp, &sub_b_full(sp, p.q), p.l)
        }
    })
}

/// Parameters of the class containing `x`; fails when the structural
/// predicates do not hold.
pub fn c3_syndromes<S: Symbol>(x: &Grid<S>, t_r: usize, t_c: usize, l: usize) -> Result<C3Params> {
    if !x.is_square() {
        return Err(Error::InvalidArgument("expected a square array".into()));
    }
    let n = x.rows();
    check_geometry(n, t_r, t_c, l)?;
    let anchor_sub = x.residue_unchecked(1, 1, t_r, t_c);
    if !is_l_valid(&anchor_sub, l)? {
        return Err(Error::NotInstantiable("anchor subarray is not l-valid".into()));
    }
    if !adjacent_rows_distinct(&anchor_sub) {
        return Err(Error::NotInstantiable("anchor subarray has equal adjacent rows".into()));
    }
    let anchor = c2::c2_syndromes(&anchor_sub, l, true)?;
    let mut subs = BTreeMap::new();
    for (sr, sc) in residues(t_r, t_c).skip(1) {
        let sub = x.residue_unchecked(sr, sc, t_r, t_c);
        if !bands_ok(&sub, l) {
            return Err(Error::NotInstantiable(format!("subarray ({sr},{sc}) is not l-weakly-valid")));
        }
        let (a, mut b) = sums_mod(&sub);
        b.pop();
        subs.insert((sr, sc), SubParams { a, b, d: parity_bits(&sub, l) });
    }
    Ok(C3Params { n, q: x.q(), t_r, t_c, l, anchor, subs })
}

pub fn c3_decode<S: Symbol>(y: &Grid<S>, p: &C3Params) -> Result<Decoded<S>> {
    c3_decode_with(y, p, DecodePath::Auto)
}

pub fn c3_decode_with<S: Symbol>(y: &Grid<S>, p: &C3Params, path: DecodePath) -> Result<Decoded<S>> {
    p.validate()?;
    if y.rows() + p.t_r != p.n || y.cols() + p.t_c != p.n || y.q() != p.q {
        return Err(Error::InvalidArgument(format!(
            "received {}x{} array, expected {}x{} over q={}",
            y.rows(),
            y.cols(),
            p.n - p.t_r,
            p.n - p.t_c,
            p.q
        )));
    }
    // the anchor alone can admit two candidates that only the other
    // subarrays tell apart, so Auto retries with the joint window scan
    let (x, path_used) = match path {
        DecodePath::Scan => (window_scan(y, p)?, PathUsed::Scan),
        DecodePath::Fast => (interleaved_decode(y, p, path)?, PathUsed::Fast),
        DecodePath::Auto => match interleaved_decode(y, p, path) {
            Err(Error::Ambiguous(_)) => (window_scan(y, p)?, PathUsed::Scan),
            other => (other?, PathUsed::Fast),
        },
    };
    let (rows, cols) = window_range(&x, y, p).ok_or(Error::NotCodeword)?;
    Ok(Decoded { array: x, rows, cols, path: path_used })
}

/// Decodes the anchor, then resolves every other subarray inside the
/// intervals the anchor implies.
fn interleaved_decode<S: Symbol>(y: &Grid<S>, p: &C3Params, path: DecodePath) -> Result<Grid<S>> {
    let (rows, cols) = (p.sub_rows(), p.sub_cols());
    let anchor_y = y.residue_unchecked(1, 1, p.t_r, p.t_c);
    let anchor = c2::c2_decode_with(&anchor_y, &p.anchor, path)?;
    let interval = |r: PositionRange, bound: usize| PositionRange::new(r.start.saturating_sub(1).max(1), r.end.min(bound));
    let rows_iv = interval(anchor.rows, rows);
    let cols_iv = interval(anchor.cols, cols);

    let mut parts = vec![vec![anchor.array.clone(); p.t_c]; p.t_r];
    for (&(sr, sc), sp) in &p.subs {
        let ys = y.residue_unchecked(sr, sc, p.t_r, p.t_c);
        let b_full = sub_b_full(sp, p.q);
        let recovered = match (uniform(&sp.a), uniform(&b_full)) {
            (Some(alpha), Some(beta)) if rows_iv.len() <= 2 && cols_iv.len() <= 2 => {
                let shifted = rebuild_shifted(&ys, alpha, beta);
                resolve_positions(&shifted, rows_iv, cols_iv, p.l, sp.d)?.0
            }
            _ if path == DecodePath::Fast => {
                return Err(Error::Capacity(format!("fast decoding of residue ({sr},{sc}) needs constant sums")))
            }
            _ => local_scan(&ys, sp, &b_full, p.l, rows_iv, cols_iv)?,
        };
        if !sub_member(&recovered, sp, &b_full, p.l) {
            return Err(Error::NotCodeword);
        }
        parts[sr - 1][sc - 1] = recovered;
    }
    let x = Grid::interleave_residue_subarrays(&parts, p.t_r, p.t_c)?;
    if !member(&x, p) {
        return Err(Error::NotCodeword);
    }
    Ok(x)
}

fn local_scan<S: Symbol>(
    ys: &Grid<S>,
    sp: &SubParams,
    b_full: &[u32],
    l: usize,
    rows_iv: PositionRange,
    cols_iv: PositionRange,
) -> Result<Grid<S>> {
    let (cs, rs) = (col_sums(ys), row_sums(ys));
    let mut found = BTreeSet::new();
    for i in rows_iv.start..=rows_iv.end {
        for j in cols_iv.start..=cols_iv.end {
            let x = rebuild_hypothesis(ys, &sp.a, b_full, &cs, &rs, i, j);
            if sub_member(&x, sp, b_full, l) {
                found.insert(x);
            }
        }
    }
    let k = found.len();
    match found.pop_first() {
        None => Err(Error::NotCodeword),
        Some(x) if k == 1 => Ok(x),
        Some(_) => Err(Error::Ambiguous(k)),
    }
}

/// 1-based index, inside residue class `s` of a length-`n` axis with
/// modulus `t`, of the position removed by a burst starting at `start`.
fn deleted_index(start: usize, s: usize, t: usize) -> usize {
    let pos = start + (s + t - start % t) % t;
    (pos - s) / t + 1
}

/// A received subarray with its full `b` vector and its column and row sums.
type Piece<S> = (Grid<S>, Vec<u32>, Vec<u64>, Vec<u64>);

/// Tries every burst window and keeps the interleavings whose subarrays
/// all pass their constraints.
fn window_scan<S: Symbol>(y: &Grid<S>, p: &C3Params) -> Result<Grid<S>> {
    let mut pieces: BTreeMap<(usize, usize), Piece<S>> = BTreeMap::new();
    for (sr, sc) in residues(p.t_r, p.t_c) {
        let ys = y.residue_unchecked(sr, sc, p.t_r, p.t_c);
        let b_full = if (sr, sc) == (1, 1) { p.anchor.b_full() } else { sub_b_full(&p.subs[&(sr, sc)], p.q) };
        let (cs, rs) = (col_sums(&ys), row_sums(&ys));
        pieces.insert((sr, sc), (ys, b_full, cs, rs));
    }
    let mut survivors = BTreeSet::new();
    for r0 in 1..=p.n - p.t_r + 1 {
        'window: for c0 in 1..=p.n - p.t_c + 1 {
            let mut parts = vec![Vec::with_capacity(p.t_c); p.t_r];
            for ((sr, sc), (ys, b_full, cs, rs)) in &pieces {
                let (i, j) = (deleted_index(r0, *sr, p.t_r), deleted_index(c0, *sc, p.t_c));
                let a = if (*sr, *sc) == (1, 1) { &p.anchor.a } else { &p.subs[&(*sr, *sc)].a };
                let x = rebuild_hypothesis(ys, a, b_full, cs, rs, i, j);
                let ok = if (*sr, *sc) == (1, 1) {
                    c2::member(&x, &p.anchor, b_full)
                } else {
                    sub_member(&x, &p.subs[&(*sr, *sc)], b_full, p.l)
                };
                if !ok {
                    continue 'window;
                }
                parts[sr - 1].push(x);
            }
            survivors.insert(Grid::interleave_residue_subarrays(&parts, p.t_r, p.t_c)?);
        }
    }
    let k = survivors.len();
    match survivors.pop_first() {
        None => Err(Error::NotCodeword),
        Some(x) if k == 1 => Ok(x),
        Some(_) => Err(Error::Ambiguous(k)),
    }
}

/// Hulls of the burst start positions that map `x` onto `y`.
fn window_range<S: Symbol>(x: &Grid<S>, y: &Grid<S>, p: &C3Params) -> Option<(PositionRange, PositionRange)> {
    let mut hull: Option<(PositionRange, PositionRange)> = None;
    for r0 in 1..=p.n - p.t_r + 1 {
        for c0 in 1..=p.n - p.t_c + 1 {
            let pattern = BurstPattern { row_start: r0, col_start: c0, t_r: p.t_r, t_c: p.t_c }.to_pattern();
            if x.minor_unchecked(pattern.rows(), pattern.cols()) == *y {
                let here = (PositionRange::exact(r0), PositionRange::exact(c0));
                hull = Some(match hull {
                    None => here,
                    Some((r, c)) => (r.hull(here.0), c.hull(here.1)),
                });
            }
        }
    }
    hull
}
