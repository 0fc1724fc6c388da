//! Non-binary code correcting one row and one column deletion, built from
//! row/column sums, a VT constraint on the column compositions and a VT
//! constraint on the row integers.

use std::collections::BTreeMap;

use crate::array::{for_each_array, Grid};
use crate::decode::{check_received, col_sums, rebuild_shifted, row_sums, scan, uniform, DecodePath, Decoded, PathUsed, PositionRange};
use crate::error::{Error, Result};
use crate::onedim::{sig_syndrome, vt_decode_known_symbol};
use crate::repr::{ccr, is_good, rir};
use crate::symbol::Symbol;

/// Parameters of one code class.
///
/// In relaxed mode `b` holds `n - 1` row sums and the last one is implied
/// by the column sums.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct C1Params {
    pub n: usize,
    pub q: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: usize,
    pub d: usize,
    pub relaxed: bool,
}

impl C1Params {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n < 2 {
            return bad(format!("n = {} must be at least 2", self.n));
        }
        if self.q < 2 {
            return bad(format!("q = {} must be at least 2", self.q));
        }
        let b_len = if self.relaxed { self.n - 1 } else { self.n };
        if self.a.len() != self.n || self.b.len() != b_len {
            return bad(format!("expected {} column sums and {b_len} row sums", self.n));
        }
        if self.a.iter().chain(&self.b).any(|&v| v >= self.q) {
            return bad("sum residue outside [0, q)".into());
        }
        if self.c >= self.n || self.d >= self.n {
            return bad("signature syndromes must lie in [0, n)".into());
        }
        Ok(())
    }

    /// All `n` row sums; the last one derived in relaxed mode.
    pub fn b_full(&self) -> Vec<u32> {
        let mut b = self.b.clone();
        if self.relaxed {
            b.push(derived_last(&self.a, &self.b, self.q));
        }
        b
    }

    /// Whether both sum vectors are constant, which enables the fast decoder.
    pub fn has_uniform_sums(&self) -> bool {
        uniform(&self.a).is_some() && uniform(&self.b_full()).is_some()
    }
}

/// `Σ a − Σ b (mod q)`: the row sum implied for the last row.
pub(crate) fn derived_last(a: &[u32], b: &[u32], q: u32) -> u32 {
    let q = q as u64;
    let sa: u64 = a.iter().map(|&v| v as u64).sum();
    let sb: u64 = b.iter().map(|&v| v as u64).sum();
    ((sa % q + q * (b.len() as u64 + 1) - sb % q) % q) as u32
}

pub(crate) fn sums_mod<S: Symbol>(x: &Grid<S>) -> (Vec<u32>, Vec<u32>) {
    let q = x.q() as u64;
    let m = |v: Vec<u64>| v.into_iter().map(|s| (s % q) as u32).collect();
    (m(col_sums(x)), m(row_sums(x)))
}

fn check_shape<S: Symbol>(x: &Grid<S>, n: usize, q: u32) -> Result<()> {
    if x.rows() != n || x.cols() != n || x.q() != q {
        return Err(Error::InvalidArgument(format!(
            "array is {}x{} over q={}, parameters expect {n}x{n} over q={q}",
            x.rows(),
            x.cols(),
            x.q()
        )));
    }
    Ok(())
}

/// Membership test.
pub fn c1_check<S: Symbol>(x: &Grid<S>, p: &C1Params) -> Result<bool> {
    p.validate()?;
    check_shape(x, p.n, p.q)?;
    Ok(member(x, p, &p.b_full()))
}

fn member<S: Symbol>(x: &Grid<S>, p: &C1Params, b_full: &[u32]) -> bool {
    let (cs, rs) = sums_mod(x);
    if cs != p.a || rs != b_full {
        return false;
    }
    let comps = ccr(x);
    comps.windows(2).all(|w| w[0] != w[1])
        && sig_syndrome(&comps, p.n) == p.c
        && sig_syndrome(&rir(x), p.n) == p.d
}

/// The parameters of the class whose syndrome constraints `x` satisfies.
/// `x` is a member of that class iff it is good.
pub fn c1_syndromes<S: Symbol>(x: &Grid<S>, relaxed: bool) -> Result<C1Params> {
    if !x.is_square() || x.rows() < 2 {
        return Err(Error::InvalidArgument(format!("expected a square array of side ≥ 2, got {}x{}", x.rows(), x.cols())));
    }
    let n = x.rows();
    let (a, mut b) = sums_mod(x);
    if relaxed {
        b.pop();
    }
    Ok(C1Params { n, q: x.q(), a, b, c: sig_syndrome(&ccr(x), n), d: sig_syndrome(&rir(x), n), relaxed })
}

/// Decodes with the fast path when the sums are uniform, scan otherwise.
pub fn c1_decode<S: Symbol>(y: &Grid<S>, p: &C1Params) -> Result<Decoded<S>> {
    c1_decode_with(y, p, DecodePath::Auto)
}

pub fn c1_decode_with<S: Symbol>(y: &Grid<S>, p: &C1Params, path: DecodePath) -> Result<Decoded<S>> {
    p.validate()?;
    check_received(y, p.n, p.n, p.q)?;
    let b_full = p.b_full();
    match path {
        DecodePath::Scan => scan_decode(y, p, &b_full),
        DecodePath::Auto if !p.has_uniform_sums() => scan_decode(y, p, &b_full),
        _ => fast_decode(y, p, &b_full),
    }
}

fn scan_decode<S: Symbol>(y: &Grid<S>, p: &C1Params, b_full: &[u32]) -> Result<Decoded<S>> {
    scan(y, &p.a, b_full, |x| member(x, p, b_full))
}

fn fast_decode<S: Symbol>(y: &Grid<S>, p: &C1Params, b_full: &[u32]) -> Result<Decoded<S>> {
    let (Some(alpha), Some(beta)) = (uniform(&p.a), uniform(b_full)) else {
        return Err(Error::Capacity("fast decoding needs constant row and column sums".into()));
    };
    let n = p.n;
    let shifted = rebuild_shifted(y, alpha, beta);

    let comps = ccr(&shifted);
    let col = vt_decode_known_symbol(&comps[..n - 1], &comps[n - 1], p.c, n)?;
    if col.run_len() != 1 {
        return Err(Error::CodeProperty(format!(
            "column composition run of length {} at the deletion point",
            col.run_len()
        )));
    }
    let j = col.run.0;
    let partial = shifted.move_last_col_to(j);

    let ints = rir(&partial);
    let row = vt_decode_known_symbol(&ints[..n - 1], &ints[n - 1], p.d, n)?;
    let x = partial.move_last_row_to(row.run.0);
    if !member(&x, p, b_full) {
        return Err(Error::NotCodeword);
    }
    Ok(Decoded {
        array: x,
        rows: PositionRange::new(row.run.0, row.run.1),
        cols: PositionRange::exact(j),
        path: PathUsed::Fast,
    })
}

/// Every member of the class; requires `q^{n²}` under `cap`.
pub fn c1_enumerate<S: Symbol>(p: &C1Params, cap: u64) -> Result<Vec<Grid<S>>> {
    p.validate()?;
    let b_full = p.b_full();
    let mut out = Vec::new();
    for_each_array::<S>(p.n, p.n, p.q, cap, |x| {
        if member(x, p, &b_full) {
            out.push(x.clone());
        }
    })?;
    Ok(out)
}

/// Buckets every good `n × n` array by its class parameters.
pub fn c1_classes<S: Symbol>(n: usize, q: u32, relaxed: bool, cap: u64) -> Result<BTreeMap<C1Params, Vec<Grid<S>>>> {
    let mut classes: BTreeMap<C1Params, Vec<Grid<S>>> = BTreeMap::new();
    let mut failure = None;
    for_each_array::<S>(n, n, q, cap, |x| {
        if failure.is_some() || !is_good(x) {
            return;
        }
        match c1_syndromes(x, relaxed) {
            Ok(p) => classes.entry(p).or_default().push(x.clone()),
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(classes),
    }
}
