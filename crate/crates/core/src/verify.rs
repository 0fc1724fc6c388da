//! Ground truth: exhaustive ball-disjointness certification, duality
//! checks, codebook-lookup decoding and the seeded trial harness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::array::{BallMode, BurstPattern, DeletionPattern, Grid};
use crate::bounds::binomial;
use crate::c1::{c1_decode_with, c1_syndromes};
use crate::c2::{adjacent_rows_distinct, c2_decode_with, c2_syndromes, default_band_height};
use crate::c3::{c3_decode_with, c3_syndromes, check_geometry};
use crate::decode::{DecodePath, PositionRange};
use crate::error::{Error, Result};
use crate::repr::{bands_ok, ccr, is_good, no_triple_repeat, row_compositions};
use crate::symbol::Symbol;

/// A pair of codebook entries whose balls meet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation<S> {
    pub first: usize,
    pub second: usize,
    pub shared: Grid<S>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport<S> {
    pub checked_pairs: u64,
    pub violations: Vec<Violation<S>>,
    pub verdict: bool,
}

fn pattern_count(rows: usize, cols: usize, t_r: usize, t_c: usize, mode: BallMode) -> BigUint {
    match mode {
        BallMode::Plain => binomial(rows as u64, t_r as u64) * binomial(cols as u64, t_c as u64),
        BallMode::Burst => BigUint::from((rows + 1 - t_r) * (cols + 1 - t_c)),
    }
}

/// Checks every pair of entries for intersecting balls. `cap` bounds the
/// total number of minors computed.
pub fn verify_codebook<S: Symbol>(
    arrays: &[Grid<S>],
    t_r: usize,
    t_c: usize,
    mode: BallMode,
    cap: u64,
) -> Result<VerificationReport<S>> {
    if let Some(first) = arrays.first() {
        if arrays.iter().any(|x| x.rows() != first.rows() || x.cols() != first.cols() || x.q() != first.q()) {
            return Err(Error::InvalidArgument("codebook entries differ in shape or alphabet".into()));
        }
        let work = pattern_count(first.rows(), first.cols(), t_r, t_c, mode) * arrays.len();
        if work > BigUint::from(cap) {
            return Err(Error::Capacity(format!("{work} minors exceed the cap {cap}")));
        }
    }
    let balls: Vec<BTreeSet<Grid<S>>> = arrays.par_iter().map(|x| x.ball(t_r, t_c, mode)).collect::<Result<_>>()?;
    let mut holders: BTreeMap<&Grid<S>, Vec<usize>> = BTreeMap::new();
    for (k, ball) in balls.iter().enumerate() {
        for minor in ball {
            holders.entry(minor).or_default().push(k);
        }
    }
    let mut clashes: BTreeMap<(usize, usize), &Grid<S>> = BTreeMap::new();
    for (minor, owners) in &holders {
        for (u, &a) in owners.iter().enumerate() {
            for &b in &owners[u + 1..] {
                clashes.entry((a, b)).or_insert(minor);
            }
        }
    }
    let m = arrays.len() as u64;
    let violations: Vec<Violation<S>> =
        clashes.into_iter().map(|((first, second), shared)| Violation { first, second, shared: shared.clone() }).collect();
    Ok(VerificationReport { checked_pairs: m * m.saturating_sub(1) / 2, verdict: violations.is_empty(), violations })
}

/// Whether "deletion balls disjoint" and "insertion balls disjoint" agree
/// for `x` and `z`.
pub fn duality_check<S: Symbol>(x: &Grid<S>, z: &Grid<S>, t_r: usize, t_c: usize, burst: bool, cap: u64) -> Result<bool> {
    let mode = if burst { BallMode::Burst } else { BallMode::Plain };
    let dx = x.ball(t_r, t_c, mode)?;
    let dz = z.ball(t_r, t_c, mode)?;
    let ix = x.insertion_ball(t_r, t_c, burst, cap)?;
    let iz = z.insertion_ball(t_r, t_c, burst, cap)?;
    Ok(dx.is_disjoint(&dz) == ix.is_disjoint(&iz))
}

/// The unique codebook entry whose ball contains `y`.
pub fn decode_by_codebook<S: Symbol>(y: &Grid<S>, arrays: &[Grid<S>], t_r: usize, t_c: usize, mode: BallMode) -> Result<Grid<S>> {
    let hits: BTreeSet<&Grid<S>> = arrays.iter().filter(|x| x.ball_contains(y, t_r, t_c, mode)).collect();
    match hits.len() {
        0 => Err(Error::NotCodeword),
        1 => Ok(hits.into_iter().next().expect("one hit").clone()),
        k => Err(Error::Ambiguous(k)),
    }
}

/// Renders a codebook: header `n q count`, then the arrays separated by
/// blank lines.
pub fn write_codebook<S: Symbol>(arrays: &[Grid<S>]) -> Result<String> {
    let first = arrays.first().ok_or_else(|| Error::InvalidArgument("empty codebook".into()))?;
    if !first.is_square() || arrays.iter().any(|x| x.rows() != first.rows() || x.cols() != first.cols() || x.q() != first.q()) {
        return Err(Error::InvalidArgument("codebook entries must be equally sized square arrays".into()));
    }
    let mut out = format!("{} {} {}\n", first.rows(), first.q(), arrays.len());
    for x in arrays {
        out.push('\n');
        out.push_str(&x.to_string());
    }
    Ok(out)
}

pub fn parse_codebook<S: Symbol>(text: &str) -> Result<Vec<Grid<S>>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty codebook file".into()))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad codebook header '{header}'"))))
        .collect::<Result<_>>()?;
    let [n, q, count] = fields[..] else {
        return Err(Error::Parse(format!("codebook header must be 'n q count', got '{header}'")));
    };
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let x = Grid::parse_lines(&mut lines).map_err(|e| Error::Parse(format!("array {}: {e}", k + 1)))?;
        if x.rows() != n || x.cols() != n || x.q() as usize != q {
            return Err(Error::Parse(format!("array {} does not match the header", k + 1)));
        }
        out.push(x);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("trailing content after {count} arrays: '{extra}'")));
    }
    Ok(out)
}

/// Per-trial seed: SplitMix64 finaliser of the master seed mixed with the
/// trial index times the 64-bit golden ratio.
pub fn sub_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    C1,
    C2,
    C3,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::C1 => "c1",
            Construction::C2 => "c2",
            Construction::C3 => "c3",
        })
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c1" => Ok(Construction::C1),
            "c2" => Ok(Construction::C2),
            "c3" => Ok(Construction::C3),
            _ => Err(Error::Parse(format!("unknown construction '{s}'"))),
        }
    }
}

/// How the row and column sums of sampled arrays are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumProfile {
    /// Arrays are sampled freely and the class is read off the sample.
    Instantiated,
    /// Arrays are sampled with constant row sums and constant column sums,
    /// so the class admits the fast decoder.
    Uniform,
}

impl fmt::Display for SumProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumProfile::Instantiated => "instantiated",
            SumProfile::Uniform => "uniform",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub construction: Construction,
    pub n: usize,
    pub q: u32,
    /// Burst height and width; only used by the interleaved construction.
    pub t_r: usize,
    pub t_c: usize,
    /// Band height; `None` picks the default for `n` (or the subarray
    /// height).
    pub l: Option<usize>,
    pub trials: u64,
    pub seed: u64,
    pub rows_distinct: bool,
    pub profile: SumProfile,
    pub path: DecodePath,
    /// Rejection-sampling attempts allowed per trial.
    pub budget: u64,
}

impl SimConfig {
    pub fn new(construction: Construction, n: usize, q: u32) -> Self {
        Self {
            construction,
            n,
            q,
            t_r: 1,
            t_c: 1,
            l: None,
            trials: 100,
            seed: 0,
            rows_distinct: false,
            profile: SumProfile::Instantiated,
            path: DecodePath::Auto,
            budget: 1_000_000,
        }
    }

    /// The band height actually used.
    pub fn band_height(&self) -> usize {
        self.l.unwrap_or_else(|| default_band_height(self.n / self.t_r.max(1), self.q))
    }

    fn validate(&self) -> Result<()> {
        if self.q < 2 || self.q > 256 {
            return Err(Error::InvalidParameter(format!("simulation needs 2 ≤ q ≤ 256, got {}", self.q)));
        }
        match self.construction {
            Construction::C1 if self.n < 2 => Err(Error::InvalidParameter("n must be at least 2".into())),
            Construction::C2 => crate::c2::check_band_height(self.n, self.band_height()),
            Construction::C3 => check_geometry(self.n, self.t_r, self.t_c, self.band_height()),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrialFailure {
    pub trial: u64,
    pub seed: u64,
    pub row: usize,
    pub col: usize,
    pub reason: String,
}

#[derive(Clone, PartialEq, Debug)]
pub struct TrialStats {
    pub config: SimConfig,
    pub trials: u64,
    pub successes: u64,
    /// Successful trials whose reported positions were exactly the true
    /// deletion positions.
    pub exact_positions: u64,
    pub failures: Vec<TrialFailure>,
    /// Rejections during sampling, by the predicate that failed.
    pub rejections: BTreeMap<String, u64>,
    pub mean_decode_time: Duration,
}

impl TrialStats {
    /// Plain-text report. Timing is left out so that reports of the same
    /// seed are byte-identical.
    pub fn report(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(s, "construction={}", c.construction);
        let _ = writeln!(s, "n={}", c.n);
        let _ = writeln!(s, "q={}", c.q);
        if c.construction == Construction::C3 {
            let _ = writeln!(s, "tr={}", c.t_r);
            let _ = writeln!(s, "tc={}", c.t_c);
        }
        if c.construction != Construction::C1 {
            let _ = writeln!(s, "l={}", c.band_height());
            let _ = writeln!(s, "rows_distinct={}", c.rows_distinct);
        }
        let _ = writeln!(s, "profile={}", c.profile);
        let _ = writeln!(s, "seed={}", c.seed);
        let _ = writeln!(s, "trials={}", self.trials);
        let _ = writeln!(s, "successes={}", self.successes);
        let _ = writeln!(s, "exact_positions={}", self.exact_positions);
        let _ = writeln!(s, "failures={}", self.failures.len());
        for (what, k) in &self.rejections {
            let _ = writeln!(s, "rejected.{what}={k}");
        }
        for f in &self.failures {
            let _ = writeln!(s, "failure trial={} seed={} row={} col={} reason={}", f.trial, f.seed, f.row, f.col, f.reason);
        }
        s
    }
}

/// Samples a `rows × cols` array; with the uniform profile every column
/// sum is one value and every row sum another.
fn sample_array(rng: &mut ChaCha8Rng, rows: usize, cols: usize, q: u32, profile: SumProfile) -> Grid<u8> {
    match profile {
        SumProfile::Instantiated => Grid::from_fn(rows, cols, q, |_, _| rng.gen_range(0..q) as u8),
        SumProfile::Uniform => {
            // cols·alpha ≡ rows·beta (mod q) makes the corner consistent
            let pairs: Vec<(u32, u32)> = (0..q)
                .flat_map(|a| (0..q).map(move |b| (a, b)))
                .filter(|&(a, b)| (cols as u64 * a as u64) % q as u64 == (rows as u64 * b as u64) % q as u64)
                .collect();
            let (alpha, beta) = pairs[rng.gen_range(0..pairs.len())];
            let mut x = Grid::from_fn(rows, cols, q, |r, c| {
                if r + 1 < rows && c + 1 < cols {
                    rng.gen_range(0..q) as u8
                } else {
                    0
                }
            });
            let fix = |target: u32, sum: u64| ((target as u64 + q as u64 * (sum / q as u64 + 1) - sum) % q as u64) as u8;
            for r in 0..rows - 1 {
                let sum: u64 = (0..cols - 1).map(|c| x.at(r, c) as u64).sum();
                x.set(r, cols - 1, fix(beta, sum));
            }
            for c in 0..cols {
                let sum: u64 = (0..rows - 1).map(|r| x.at(r, c) as u64).sum();
                x.set(rows - 1, c, fix(alpha, sum));
            }
            x
        }
    }
}

/// Name of the first structural predicate `x` fails, if any.
fn rejection(x: &Grid<u8>, construction: Construction, l: usize, rows_distinct: bool, anchor: bool) -> Option<&'static str> {
    match construction {
        Construction::C1 => (!is_good(x)).then_some("not_good"),
        _ if !anchor => (!bands_ok(x, l)).then_some("bands"),
        _ => {
            if !no_triple_repeat(&ccr(x)) {
                Some("column_compositions")
            } else if !no_triple_repeat(&row_compositions(x)) {
                Some("row_compositions")
            } else if !bands_ok(x, l) {
                Some("bands")
            } else if rows_distinct && !adjacent_rows_distinct(x) {
                Some("adjacent_rows")
            } else {
                None
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn sample_until(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    cfg: &SimConfig,
    l: usize,
    rows_distinct: bool,
    anchor: bool,
    rejections: &mut BTreeMap<String, u64>,
    budget: &mut u64,
) -> Result<Grid<u8>> {
    loop {
        if *budget == 0 {
            let worst = rejections.iter().max_by_key(|(_, &k)| k).map(|(w, k)| format!("{w} ({k} rejections)"));
            return Err(Error::Sampling(format!(
                "no acceptable {rows}x{cols} array within the budget; most frequent rejection: {}",
                worst.unwrap_or_else(|| "none".into())
            )));
        }
        *budget -= 1;
        let x = sample_array(rng, rows, cols, cfg.q, cfg.profile);
        match rejection(&x, cfg.construction, l, rows_distinct, anchor) {
            None => return Ok(x),
            Some(why) => *rejections.entry(why.to_string()).or_default() += 1,
        }
    }
}

struct TrialOutcome {
    ok: bool,
    exact: bool,
    failure: Option<TrialFailure>,
    rejections: BTreeMap<String, u64>,
    elapsed: Duration,
}

fn run_trial(cfg: &SimConfig, trial: u64) -> Result<TrialOutcome> {
    let seed = sub_seed(cfg.seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejections = BTreeMap::new();
    let mut budget = cfg.budget;
    let l = cfg.band_height();
    let n = cfg.n;

    let x = match cfg.construction {
        Construction::C3 => {
            let (sr, sc) = (n / cfg.t_r, n / cfg.t_c);
            let mut parts = Vec::with_capacity(cfg.t_r);
            for r in 0..cfg.t_r {
                let mut row = Vec::with_capacity(cfg.t_c);
                for c in 0..cfg.t_c {
                    let anchor = (r, c) == (0, 0);
                    row.push(sample_until(&mut rng, sr, sc, cfg, l, true, anchor, &mut rejections, &mut budget)?);
                }
                parts.push(row);
            }
            Grid::interleave_residue_subarrays(&parts, cfg.t_r, cfg.t_c)?
        }
        _ => sample_until(&mut rng, n, n, cfg, l, cfg.rows_distinct, true, &mut rejections, &mut budget)?,
    };

    let (t_r, t_c) = if cfg.construction == Construction::C3 { (cfg.t_r, cfg.t_c) } else { (1, 1) };
    let row = rng.gen_range(1..=n - t_r + 1);
    let col = rng.gen_range(1..=n - t_c + 1);
    let pattern = if cfg.construction == Construction::C3 {
        BurstPattern::new(row, col, t_r, t_c)?.to_pattern()
    } else {
        DeletionPattern::single(row, col)?
    };
    let y = x.delete_rows_cols(&pattern)?;

    let start = Instant::now();
    let decoded = match cfg.construction {
        Construction::C1 => c1_decode_with(&y, &c1_syndromes(&x, true)?, cfg.path),
        Construction::C2 => c2_decode_with(&y, &c2_syndromes(&x, l, cfg.rows_distinct)?, cfg.path),
        Construction::C3 => c3_decode_with(&y, &c3_syndromes(&x, t_r, t_c, l)?, cfg.path),
    };
    let elapsed = start.elapsed();

    let fail = |reason: String| TrialFailure { trial, seed, row, col, reason };
    let (ok, exact, failure) = match decoded {
        Ok(d) if d.array == x => {
            let exact = d.rows == PositionRange::exact(row) && d.cols == PositionRange::exact(col);
            (true, exact, None)
        }
        Ok(_) => (false, false, Some(fail("decoded a different array".into()))),
        Err(e) => (false, false, Some(fail(e.to_string()))),
    };
    Ok(TrialOutcome { ok, exact, failure, rejections, elapsed })
}

/// Runs `cfg.trials` independent sample/corrupt/decode trials. Results
/// depend only on the configuration, not on scheduling.
pub fn simulate_trials(cfg: &SimConfig) -> Result<TrialStats> {
    cfg.validate()?;
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials).into_par_iter().map(|k| run_trial(cfg, k)).collect::<Result<_>>()?;
    let mut stats = TrialStats {
        config: cfg.clone(),
        trials: cfg.trials,
        successes: 0,
        exact_positions: 0,
        failures: Vec::new(),
        rejections: BTreeMap::new(),
        mean_decode_time: Duration::ZERO,
    };
    let mut total_time = Duration::ZERO;
    for o in outcomes {
        stats.successes += u64::from(o.ok);
        stats.exact_positions += u64::from(o.exact);
        stats.failures.extend(o.failure);
        for (k, v) in o.rejections {
            *stats.rejections.entry(k).or_default() += v;
        }
        total_time += o.elapsed;
    }
    if cfg.trials > 0 {
        stats.mean_decode_time = total_time / cfg.trials as u32;
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::DEFAULT_ENUMERATION_CAP;
    use crate::Array2D;

    fn g(rows: Vec<Vec<u8>>) -> Array2D {
        Grid::from_rows(2, rows).unwrap()
    }

    #[test]
    fn zeros_and_ones() {
        let book = vec![g(vec![vec![0, 0], vec![0, 0]]), g(vec![vec![1, 1], vec![1, 1]])];
        let r = verify_codebook(&book, 1, 1, BallMode::Plain, 1 << 20).unwrap();
        assert!(r.verdict);
        assert_eq!(r.checked_pairs, 1);
        let y = g(vec![vec![1]]);
        assert_eq!(decode_by_codebook(&y, &book, 1, 1, BallMode::Plain).unwrap(), book[1]);
    }

    #[test]
    fn duplicates_violate() {
        let x = g(vec![vec![0, 1], vec![1, 1]]);
        let r = verify_codebook(&[x.clone(), x.clone()], 1, 1, BallMode::Plain, 1 << 20).unwrap();
        assert!(!r.verdict);
        assert_eq!((r.violations[0].first, r.violations[0].second), (0, 1));
        let y = g(vec![vec![1]]);
        // identical entries collapse to one candidate
        assert_eq!(decode_by_codebook(&y, &[x.clone(), x.clone()], 1, 1, BallMode::Plain).unwrap(), x);
    }

    #[test]
    fn self_duality() {
        let x = g(vec![vec![0, 1], vec![1, 1]]);
        assert!(duality_check(&x, &x, 1, 1, false, DEFAULT_ENUMERATION_CAP).unwrap());
    }

    #[test]
    fn codebook_text() {
        let book = vec![g(vec![vec![0, 0], vec![0, 0]]), g(vec![vec![1, 1], vec![1, 1]])];
        let text = write_codebook(&book).unwrap();
        assert_eq!(text, "2 2 2\n\n2 2 2\n0 0\n0 0\n\n2 2 2\n1 1\n1 1\n");
        assert_eq!(parse_codebook::<u8>(&text).unwrap(), book);
        assert!(parse_codebook::<u8>("2 2 3\n\n2 2 2\n0 0\n0 0\n").is_err());
    }

    #[test]
    fn seeds_are_mixed() {
        assert_ne!(sub_seed(1, 0), sub_seed(1, 1));
        assert_ne!(sub_seed(1, 0), sub_seed(2, 0));
        assert_eq!(sub_seed(7, 3), sub_seed(7, 3));
    }

    #[test]
    fn uniform_sampler_has_constant_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (rows, cols, q) in [(5, 5, 3), (6, 4, 2), (4, 6, 4)] {
            let x = sample_array(&mut rng, rows, cols, q, SumProfile::Uniform);
            let (cs, rs) = crate::c1::sums_mod(&x);
            assert!(cs.windows(2).all(|w| w[0] == w[1]));
            assert!(rs.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn empty_run() {
        let mut cfg = SimConfig::new(Construction::C2, 9, 2);
        cfg.trials = 0;
        let s = simulate_trials(&cfg).unwrap();
        assert_eq!((s.trials, s.successes, s.failures.len()), (0, 0, 0));
    }
}
