use std::fmt::Write as _;
use std::io::Read as _;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crisscross::bounds::{count_good_exact, count_valid, gv_upper_bound, sp_lower_bound, CountReport, DEFAULT_STATE_CAP};
use crisscross::c2::default_band_height;
use crisscross::verify::{parse_codebook, simulate_trials, verify_codebook, Construction, SimConfig, SumProfile};
use crisscross::{BallMode, BurstPattern, DecodePath, DeletionPattern, Error, Params, WideArray2D};

use crate::{BoundsArgs, CheckArgs, ConstructionArg, CorruptArgs, CountArgs, DecodeArgs, ModeArg, PathArg, ProfileArg};
use crate::{SimulateArgs, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Negative = 1,
    Input = 2,
    DecodeFailure = 3,
    Ambiguous = 4,
    Capacity = 5,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

type Outcome = Result<Status, Failure>;

fn input(message: impl Into<String>) -> Failure {
    Failure { status: Status::Input, message: message.into() }
}

/// Status for an error raised while reading or validating input.
fn from_input(e: Error) -> Failure {
    let status = match e {
        Error::Capacity(_) | Error::Sampling(_) => Status::Capacity,
        _ => Status::Input,
    };
    Failure { status, message: e.to_string() }
}

/// Status for an error raised by a decoder: anything but ambiguity or a
/// blown cap means the received array was not recovered.
fn from_decoder(e: Error) -> Failure {
    let status = match e {
        Error::Ambiguous(_) => Status::Ambiguous,
        Error::Capacity(_) => Status::Capacity,
        _ => Status::DecodeFailure,
    };
    Failure { status, message: e.to_string() }
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))
    }
}

fn write_text(path: &str, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input(format!("{path}: {e}")))
}

fn read_array(path: &str) -> Result<WideArray2D, Failure> {
    read_text(path)?.parse().map_err(|e: Error| input(format!("{path}: {e}")))
}

fn read_params(path: &str) -> Result<Params, Failure> {
    read_text(path)?.parse().map_err(|e: Error| input(format!("{path}: {e}")))
}

fn need_seed(seed: Option<u64>, what: &str) -> Result<u64, Failure> {
    seed.ok_or_else(|| input(format!("{what} is randomized and needs --seed")))
}

fn elapsed_line(out: &mut String, start: Instant) {
    let _ = writeln!(out, "time_us={}", start.elapsed().as_micros());
}

/// Parses `4,8,16` or `4..16` (inclusive) or a mix; `a..b` with `a > b`
/// is empty.
fn parse_list(text: &str, flag: &str) -> Result<Vec<u64>, Failure> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| input(format!("--{flag}: bad number '{t}'")));
    let mut out = Vec::new();
    for item in text.split(',').filter(|t| !t.trim().is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => out.extend(num(a)?..=num(b)?),
            None => out.push(num(item)?),
        }
    }
    Ok(out)
}

pub fn bounds(a: &BoundsArgs) -> Outcome {
    let ns = parse_list(&a.n, "n")?;
    let qs = parse_list(&a.q, "q")?;
    if a.tr == 0 || a.tc == 0 {
        return Err(input("--tr and --tc must be at least 1"));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 2 || (n as usize) <= a.tr.max(a.tc)) {
        return Err(input(format!("--n: {n} must be at least 2 and exceed the deletion counts")));
    }
    if let Some(&q) = qs.iter().find(|&&q| !(2..=u32::MAX as u64).contains(&q)) {
        return Err(input(format!("--q: {q} must be at least 2")));
    }
    let mut out = String::from("n,q,tr,tc,sp_bits,gv_bits,epsilon,run_threshold,hypothesis_ok\n");
    for &n in &ns {
        for &q in &qs {
            let (n, q) = (n as usize, q as u32);
            let d = sp_lower_bound(n, q, a.tr, a.tc);
            let gv = gv_upper_bound(n, q, a.tr, a.tc);
            let _ = writeln!(
                out,
                "{n},{q},{},{},{:.6},{:.6},{:.6},{:.6},{}",
                a.tr, a.tc, d.headline_bits, gv, d.epsilon, d.run_threshold, d.hypothesis_ok
            );
        }
    }
    print!("{out}");
    Ok(Status::Ok)
}

pub fn check(a: &CheckArgs) -> Outcome {
    let params = read_params(&a.params)?;
    let x = read_array(&a.array)?;
    let member = params.check(&x).map_err(from_input)?;
    println!("{}", if member { "member" } else { "non-member" });
    Ok(if member { Status::Ok } else { Status::Negative })
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    v.sort_unstable();
    v
}

pub fn corrupt(a: &CorruptArgs) -> Outcome {
    let x = read_array(&a.array)?;
    let (rows, cols) = (x.rows(), x.cols());
    if a.tr == 0 || a.tc == 0 || a.tr > rows || a.tc > cols {
        return Err(input(format!("cannot delete {}×{} from a {rows}×{cols} array", a.tr, a.tc)));
    }
    let seed = match (&a.rows, &a.cols) {
        (Some(_), Some(_)) => None,
        (None, None) => Some(need_seed(a.seed, "a pattern without --rows/--cols")?),
        _ => return Err(input("give both --rows and --cols, or neither")),
    };
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let pattern = if a.burst {
        let (r0, c0) = match (&a.rows, &a.cols, rng.as_mut()) {
            (Some(r), Some(c), _) => match (r.as_slice(), c.as_slice()) {
                (&[r0], &[c0]) => (r0, c0),
                _ => return Err(input("a burst takes one starting row and one starting column")),
            },
            (_, _, Some(rng)) => (rng.gen_range(1..=rows + 1 - a.tr), rng.gen_range(1..=cols + 1 - a.tc)),
            _ => unreachable!("seed required above"),
        };
        if r0 + a.tr > rows + 1 || c0 + a.tc > cols + 1 {
            return Err(input(format!("burst at ({r0},{c0}) leaves the {rows}×{cols} array")));
        }
        BurstPattern::new(r0, c0, a.tr, a.tc).map_err(from_input)?.to_pattern()
    } else {
        let (r, c) = match (&a.rows, &a.cols, rng.as_mut()) {
            (Some(r), Some(c), _) => {
                let (mut r, mut c) = (r.clone(), c.clone());
                r.sort_unstable();
                c.sort_unstable();
                (r, c)
            }
            (_, _, Some(rng)) => (random_subset(rng, rows, a.tr), random_subset(rng, cols, a.tc)),
            _ => unreachable!("seed required above"),
        };
        DeletionPattern::new(r, c).map_err(from_input)?
    };
    let y = x.delete_rows_cols(&pattern).map_err(from_input)?;

    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let mut record = String::new();
    let _ = writeln!(record, "kind={}", if a.burst { "burst" } else { "plain" });
    let _ = writeln!(record, "rows={}", join(pattern.rows()));
    let _ = writeln!(record, "cols={}", join(pattern.cols()));
    if let Some(s) = seed {
        let _ = writeln!(record, "seed={s}");
    }
    match &a.output {
        Some(path) => write_text(path, &y.to_string())?,
        None => print!("{y}"),
    }
    match &a.record {
        Some(path) => write_text(path, &record)?,
        None => eprint!("{record}"),
    }
    Ok(Status::Ok)
}

fn decode_path(p: PathArg) -> DecodePath {
    match p {
        PathArg::Auto => DecodePath::Auto,
        PathArg::Fast => DecodePath::Fast,
        PathArg::Scan => DecodePath::Scan,
    }
}

pub fn decode(a: &DecodeArgs, timing: bool) -> Outcome {
    let params = read_params(&a.params)?;
    let y = read_array(&a.received)?;
    let start = Instant::now();
    let d = params.decode_with(&y, decode_path(a.path)).map_err(from_decoder)?;
    let mut out = d.array.to_string();
    let _ = writeln!(out, "rows={}", d.rows);
    let _ = writeln!(out, "cols={}", d.cols);
    let _ = writeln!(out, "path={}", d.path);
    if timing {
        elapsed_line(&mut out, start);
    }
    print!("{out}");
    Ok(Status::Ok)
}

pub fn verify(a: &VerifyArgs, timing: bool) -> Outcome {
    let book: Vec<WideArray2D> = parse_codebook(&read_text(&a.codebook)?).map_err(from_input)?;
    let mode = if a.burst { BallMode::Burst } else { BallMode::Plain };
    let start = Instant::now();
    let r = verify_codebook(&book, a.tr, a.tc, mode, a.cap).map_err(from_input)?;
    let mut out = String::new();
    let _ = writeln!(out, "codewords={}", book.len());
    let _ = writeln!(out, "checked_pairs={}", r.checked_pairs);
    let _ = writeln!(out, "violations={}", r.violations.len());
    let _ = writeln!(out, "verdict={}", if r.verdict { "pass" } else { "fail" });
    for v in &r.violations {
        // entries are numbered from 1, as in the file
        let _ = write!(out, "\nviolation first={} second={}\n{}", v.first + 1, v.second + 1, v.shared);
    }
    if timing {
        elapsed_line(&mut out, start);
    }
    print!("{out}");
    Ok(if r.verdict { Status::Ok } else { Status::Negative })
}

pub fn simulate(a: &SimulateArgs, timing: bool) -> Outcome {
    let construction = match a.construction {
        ConstructionArg::C1 => Construction::C1,
        ConstructionArg::C2 => Construction::C2,
        ConstructionArg::C3 => Construction::C3,
    };
    let mut cfg = SimConfig::new(construction, a.n, a.q);
    cfg.t_r = a.tr;
    cfg.t_c = a.tc;
    cfg.l = a.l;
    cfg.trials = a.trials;
    cfg.seed = need_seed(a.seed, "simulate")?;
    cfg.rows_distinct = a.rows_distinct;
    cfg.profile = match a.profile {
        ProfileArg::Instantiated => SumProfile::Instantiated,
        ProfileArg::Uniform => SumProfile::Uniform,
    };
    cfg.path = decode_path(a.path);
    cfg.budget = a.budget;
    let stats = simulate_trials(&cfg).map_err(from_input)?;
    let mut out = stats.report();
    if timing {
        let _ = writeln!(out, "mean_decode_time_us={:.3}", stats.mean_decode_time.as_secs_f64() * 1e6);
    }
    print!("{out}");
    Ok(if stats.failures.is_empty() { Status::Ok } else { Status::Negative })
}

fn count_report(out: &mut String, r: &CountReport) {
    let _ = writeln!(out, "method={}", r.method);
    let _ = writeln!(out, "total={}", r.total);
    if let Some(e) = &r.exact {
        let _ = writeln!(out, "exact={e}");
    }
    if let Some(b) = &r.lower_bound {
        let _ = writeln!(out, "lower_bound={b}");
        if let Some(e) = &r.exact {
            let _ = writeln!(out, "exact_meets_lower_bound={}", e >= b);
        }
    }
    if let Some(e) = &r.estimate {
        let _ = writeln!(out, "estimate.trials={}", e.trials);
        let _ = writeln!(out, "estimate.hits={}", e.hits);
        let _ = writeln!(out, "estimate.fraction={:.6}", e.fraction);
        let _ = writeln!(out, "estimate.low={:.6}", e.low);
        let _ = writeln!(out, "estimate.high={:.6}", e.high);
    }
    if let Some(f) = r.formula_fraction {
        let _ = writeln!(out, "formula_fraction={f:.6}");
    }
}

pub fn count(a: &CountArgs, timing: bool) -> Outcome {
    let start = Instant::now();
    let mode = match a.mode {
        ModeArg::Good => "good",
        ModeArg::Valid => "valid",
    };
    let mut out = format!("mode={mode}\nn={}\nq={}\n", a.n, a.q);
    let report = match a.mode {
        ModeArg::Good => {
            if a.l.is_some() || a.trials > 0 {
                return Err(input("--l and --trials only apply to --mode valid"));
            }
            count_good_exact(a.n, a.q, a.cap.unwrap_or(DEFAULT_STATE_CAP)).map_err(from_input)?
        }
        ModeArg::Valid => {
            let l = a.l.unwrap_or_else(|| default_band_height(a.n, a.q));
            let seed = if a.trials > 0 { need_seed(a.seed, "a Monte-Carlo count")? } else { 0 };
            let _ = writeln!(out, "l={l}");
            if a.trials > 0 {
                let _ = writeln!(out, "seed={seed}");
            }
            count_valid(a.n, a.q, l, a.trials, seed, a.cap.unwrap_or(1 << 20)).map_err(from_input)?
        }
    };
    count_report(&mut out, &report);
    if timing {
        elapsed_line(&mut out, start);
    }
    print!("{out}");
    Ok(Status::Ok)
}
