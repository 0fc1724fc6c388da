//! One-dimensional primitives: signatures, non-binary VT syndromes and
//! decoders, compositions, inversions and runs.
//!
//! Sequence functions are generic over any totally ordered symbol type so
//! the same code serves plain symbols, compositions and arbitrary-precision
//! row integers.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::bounds::binomial;
use crate::error::{Error, Result};
use crate::symbol::{sum_mod, Symbol};

/// Occurrence counts of each symbol `0..q` in a sequence.
///
/// The derived order is lexicographic on `(c_0, …, c_{q-1})`, which is the
/// total order used whenever compositions act as symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn from_counts(counts: Vec<u32>) -> Self {
        Self(counts)
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }
}

/// `α(x)`: bit `i` is 1 iff `x_{i+1} ≥ x_i`.
pub fn signature<T: Ord>(x: &[T]) -> Result<Vec<u8>> {
    if x.is_empty() {
        return Err(Error::InvalidArgument("signature of an empty sequence".into()));
    }
    Ok(signature_bits(x))
}

fn signature_bits<T: Ord>(x: &[T]) -> Vec<u8> {
    x.windows(2).map(|w| u8::from(w[1] >= w[0])).collect()
}

/// `Σ i·α(x)_i mod n` with 1-based `i`.
pub fn sig_syndrome<T: Ord>(x: &[T], n: usize) -> usize {
    weighted_sum(&signature_bits(x), n)
}

fn weighted_sum(bits: &[u8], n: usize) -> usize {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .fold(0, |acc, (i, _)| (acc + (i + 1) % n) % n)
}

/// `(Σ i·α(x)_i mod n, Σ x_i mod q)` for a length-`n` sequence.
pub fn vt_syndromes<S: Symbol>(x: &[S], n: usize, q: u32) -> Result<(usize, u32)> {
    if x.len() != n || n == 0 {
        return Err(Error::InvalidArgument(format!("sequence length {} differs from n = {n}", x.len())));
    }
    Ok((sig_syndrome(x, n), sum_mod(x.iter().copied(), q)))
}

/// Restores a binary VT codeword of length `len + 1` (modulus `len + 2`)
/// from `y` after one deletion.
fn binary_vt_insert(y: &[u8], a: usize) -> Vec<u8> {
    let modulus = y.len() + 2;
    let w = y.iter().filter(|&&b| b == 1).count();
    let s = (a % modulus + modulus - weighted_sum(y, modulus)) % modulus;
    let mut x = Vec::with_capacity(y.len() + 1);
    if s <= w {
        // a 0 with exactly s ones to its right
        let mut ones_right = w;
        let mut placed = false;
        for &b in y {
            if !placed && ones_right == s {
                x.push(0);
                placed = true;
            }
            x.push(b);
            ones_right -= usize::from(b);
        }
        if !placed {
            x.push(0);
        }
    } else {
        // a 1 with exactly s - w - 1 zeros to its left
        let want = s - w - 1;
        let mut zeros_left = 0;
        let mut placed = false;
        for &b in y {
            if !placed && zeros_left == want {
                x.push(1);
                placed = true;
            }
            x.push(b);
            zeros_left += usize::from(b == 0);
        }
        if !placed {
            x.push(1);
        }
    }
    x
}

/// Result of decoding with the deleted symbol known.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KnownSymbolDecode<T> {
    pub sequence: Vec<T>,
    /// 1-based inclusive interval of positions at which inserting the
    /// symbol yields `sequence`.
    pub run: (usize, usize),
}

impl<T> KnownSymbolDecode<T> {
    pub fn run_len(&self) -> usize {
        self.run.1 + 1 - self.run.0
    }
}

/// Recovers the length-`n` sequence with signature syndrome `a (mod n)`
/// from `y` when the deleted symbol `v` is known.
pub fn vt_decode_known_symbol<T: Ord + Clone>(y: &[T], v: &T, a: usize, n: usize) -> Result<KnownSymbolDecode<T>> {
    if n == 0 || y.len() + 1 != n {
        return Err(Error::InvalidArgument(format!("received length {} does not match n - 1 = {}", y.len(), n.wrapping_sub(1))));
    }
    let len = y.len();
    let target = if len == 0 { Vec::new() } else { binary_vt_insert(&signature_bits(y), a) };
    let ay = signature_bits(y);

    // pre[k]: target[..k] == ay[..k]; suf[k]: target[k+1..] == ay[k..]
    let mut pre = vec![true; len + 1];
    for k in 0..len.saturating_sub(1) {
        pre[k + 1] = pre[k] && target[k] == ay[k];
    }
    let mut suf = vec![true; len + 1];
    for k in (0..len.saturating_sub(1)).rev() {
        suf[k] = suf[k + 1] && target[k + 1] == ay[k];
    }

    let mut found: Option<(Vec<T>, usize)> = None;
    let mut distinct = 0;
    for p in 0..=len {
        let left_ok = p == 0 || (pre[p - 1] && target[p - 1] == u8::from(*v >= y[p - 1]));
        let right_ok = p == len || (suf[p] && target[p] == u8::from(y[p] >= *v));
        if !(left_ok && right_ok) {
            continue;
        }
        let x = insert_at(y, p, v.clone());
        match &found {
            Some((prev, _)) if *prev == x => {}
            Some(_) => distinct += 1,
            None => {
                found = Some((x, p));
                distinct = 1;
            }
        }
    }
    if distinct > 1 {
        return Err(Error::Ambiguous(distinct));
    }
    let (sequence, p) = found.ok_or(Error::NotCodeword)?;
    let mut lo = p;
    while lo > 0 && sequence[lo - 1] == *v {
        lo -= 1;
    }
    let mut hi = p;
    while hi + 1 < n && sequence[hi + 1] == *v {
        hi += 1;
    }
    Ok(KnownSymbolDecode { sequence, run: (lo + 1, hi + 1) })
}

/// Recovers `x ∈ VT_{a,b}(n, q)` from `y` of length `n - 1`.
pub fn vt_decode_full<S: Symbol>(y: &[S], a: usize, b: u32, n: usize, q: u32) -> Result<Vec<S>> {
    if let Some(bad) = y.iter().find(|s| s.as_u64() >= q as u64) {
        return Err(Error::InvalidArgument(format!("symbol {bad} outside alphabet of size {q}")));
    }
    let v = (b % q + q - sum_mod(y.iter().copied(), q)) % q;
    let v = S::from_u64(v as u64).ok_or_else(|| Error::InvalidArgument("alphabet exceeds symbol type".into()))?;
    Ok(vt_decode_known_symbol(y, &v, a, n)?.sequence)
}

pub(crate) fn insert_at<T: Clone>(y: &[T], p: usize, v: T) -> Vec<T> {
    let mut x = Vec::with_capacity(y.len() + 1);
    x.extend_from_slice(&y[..p]);
    x.push(v);
    x.extend_from_slice(&y[p..]);
    x
}

/// Number of pairs `s < t` with `x_s > x_t`.
pub fn inversions<T: Ord + Clone>(x: &[T]) -> u64 {
    fn sort_count<T: Ord + Clone>(v: &mut [T], buf: &mut Vec<T>) -> u64 {
        if v.len() < 2 {
            return 0;
        }
        let mid = v.len() / 2;
        let mut count = sort_count(&mut v[..mid], buf) + sort_count(&mut v[mid..], buf);
        buf.clear();
        let (mut i, mut j) = (0, mid);
        while i < mid && j < v.len() {
            if v[j] < v[i] {
                count += (mid - i) as u64;
                buf.push(v[j].clone());
                j += 1;
            } else {
                buf.push(v[i].clone());
                i += 1;
            }
        }
        buf.extend_from_slice(&v[i..mid]);
        buf.extend_from_slice(&v[j..]);
        v.clone_from_slice(buf);
        count
    }
    let mut v = x.to_vec();
    sort_count(&mut v, &mut Vec::with_capacity(x.len()))
}

/// Inversion count of `y` with `v` inserted at 0-based position `p`, given
/// `inv_y = inversions(y)`.
pub(crate) fn inversions_after_insert<T: Ord>(y: &[T], inv_y: u64, p: usize, v: &T) -> u64 {
    let before = y[..p].iter().filter(|t| *t > v).count();
    let after = y[p..].iter().filter(|t| *t < v).count();
    inv_y + (before + after) as u64
}

/// Symbol counts of `x` over `Σ_q`.
pub fn composition<S: Symbol>(x: &[S], q: u32) -> Result<Composition> {
    let mut counts = vec![0u32; q as usize];
    for s in x {
        let k = s.as_u64();
        if k >= q as u64 {
            return Err(Error::InvalidArgument(format!("symbol {s} outside alphabet of size {q}")));
        }
        counts[k as usize] += 1;
    }
    Ok(Composition(counts))
}

/// Lexicographic rank of a composition among all weak compositions of the
/// same total into the same number of parts.
pub fn comp_rank(c: &Composition) -> BigUint {
    let parts = c.0.len();
    let mut rem = c.total();
    let mut rank = BigUint::default();
    for (k, &ck) in c.0.iter().enumerate() {
        let left = (parts - k - 1) as u64;
        if left == 0 {
            break;
        }
        // compositions whose k-th entry is smaller than c_k
        for smaller in 0..ck as u64 {
            let r = rem - smaller;
            rank += binomial(r + left - 1, left - 1);
        }
        rem -= ck as u64;
    }
    rank
}

/// Number of maximal constant substrings `γ(x)`.
pub fn runs_count<T: Eq>(x: &[T]) -> Result<usize> {
    if x.is_empty() {
        return Err(Error::InvalidArgument("runs of an empty sequence".into()));
    }
    Ok(1 + x.windows(2).filter(|w| w[0] != w[1]).count())
}

/// All distinct subsequences obtained by deleting `s` symbols.
pub fn one_deletion_ball<T: Ord + Clone>(x: &[T], s: usize) -> BTreeSet<Vec<T>> {
    let mut layer: BTreeSet<Vec<T>> = BTreeSet::from([x.to_vec()]);
    for _ in 0..s.min(x.len()) {
        layer = layer
            .iter()
            .flat_map(|z| (0..z.len()).map(move |k| [&z[..k], &z[k + 1..]].concat()))
            .collect();
    }
    layer
}
