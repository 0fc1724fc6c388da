//! Flat `key=value` text records for code parameters.
//!
//! One field per line; vectors are comma separated. The interleaved
//! construction prefixes its anchor fields with `anchor.` and the fields of
//! every other residue subarray with `(s_r,s_c).`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::array::Grid;
use crate::c1::{c1_check, c1_decode_with, C1Params};
use crate::c2::{c2_check, c2_decode_with, C2Params};
use crate::c3::{c3_check, c3_decode_with, C3Params, SubParams};
use crate::decode::{DecodePath, Decoded};
use crate::error::{Error, Result};
use crate::symbol::Symbol;

/// Parameters of any of the three constructions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Params {
    C1(C1Params),
    C2(C2Params),
    C3(C3Params),
}

impl Params {
    pub fn check<S: Symbol>(&self, x: &Grid<S>) -> Result<bool> {
        match self {
            Params::C1(p) => c1_check(x, p),
            Params::C2(p) => c2_check(x, p),
            Params::C3(p) => c3_check(x, p),
        }
    }

    pub fn decode_with<S: Symbol>(&self, y: &Grid<S>, path: DecodePath) -> Result<Decoded<S>> {
        match self {
            Params::C1(p) => c1_decode_with(y, p, path),
            Params::C2(p) => c2_decode_with(y, p, path),
            Params::C3(p) => c3_decode_with(y, p, path),
        }
    }

    /// Rows and columns removed by one error of this code.
    pub fn deletions(&self) -> (usize, usize) {
        match self {
            Params::C3(p) => (p.t_r, p.t_c),
            _ => (1, 1),
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn write_c2_fields(out: &mut String, prefix: &str, p: &C2Params, with_shape: bool) {
    if with_shape {
        match p.n() {
            Some(n) => {
                let _ = writeln!(out, "{prefix}n={n}");
            }
            None => {
                let _ = writeln!(out, "{prefix}rows={}", p.rows);
                let _ = writeln!(out, "{prefix}cols={}", p.cols);
            }
        }
        let _ = writeln!(out, "{prefix}q={}", p.q);
        let _ = writeln!(out, "{prefix}l={}", p.l);
    }
    let _ = writeln!(out, "{prefix}a={}", join(&p.a));
    let _ = writeln!(out, "{prefix}b={}", join(&p.b));
    let _ = writeln!(out, "{prefix}c1={}", p.c1);
    let _ = writeln!(out, "{prefix}c2={}", p.c2);
    for (k, bit) in p.d.iter().enumerate() {
        let _ = writeln!(out, "{prefix}d{}={bit}", k + 1);
    }
    let _ = writeln!(out, "{prefix}rows_distinct={}", p.rows_distinct);
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self {
            Params::C1(p) => {
                let _ = writeln!(out, "construction=c1");
                let _ = writeln!(out, "n={}", p.n);
                let _ = writeln!(out, "q={}", p.q);
                let _ = writeln!(out, "a={}", join(&p.a));
                let _ = writeln!(out, "b={}", join(&p.b));
                let _ = writeln!(out, "c={}", p.c);
                let _ = writeln!(out, "d={}", p.d);
                let _ = writeln!(out, "relaxed={}", p.relaxed);
            }
            Params::C2(p) => {
                let _ = writeln!(out, "construction=c2");
                write_c2_fields(&mut out, "", p, true);
            }
            Params::C3(p) => {
                let _ = writeln!(out, "construction=c3");
                let _ = writeln!(out, "n={}", p.n);
                let _ = writeln!(out, "q={}", p.q);
                let _ = writeln!(out, "tr={}", p.t_r);
                let _ = writeln!(out, "tc={}", p.t_c);
                let _ = writeln!(out, "l={}", p.l);
                write_c2_fields(&mut out, "anchor.", &p.anchor, false);
                for ((sr, sc), sp) in &p.subs {
                    let _ = writeln!(out, "({sr},{sc}).a={}", join(&sp.a));
                    let _ = writeln!(out, "({sr},{sc}).b={}", join(&sp.b));
                    for (k, bit) in sp.d.iter().enumerate() {
                        let _ = writeln!(out, "({sr},{sc}).d{}={bit}", k + 1);
                    }
                }
            }
        }
        f.write_str(&out)
    }
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn take(&mut self, key: &str) -> Result<String> {
        self.0.remove(key).ok_or_else(|| Error::Parse(format!("missing field '{key}'")))
    }

    fn num<T: FromStr>(&mut self, key: &str) -> Result<T> {
        let v = self.take(key)?;
        v.parse().map_err(|_| Error::Parse(format!("field '{key}': bad value '{v}'")))
    }

    fn list(&mut self, key: &str) -> Result<Vec<u32>> {
        let v = self.take(key)?;
        if v.is_empty() {
            return Ok(Vec::new());
        }
        v.split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("field '{key}': bad entry '{t}'"))))
            .collect()
    }

    fn flag(&mut self, key: &str) -> Result<bool> {
        match self.take(key)?.as_str() {
            "true" | "1" => Ok(true),
            "false" | "0" => Ok(false),
            other => Err(Error::Parse(format!("field '{key}': expected true/false, got '{other}'"))),
        }
    }

    fn bits(&mut self, prefix: &str) -> Result<[u8; 4]> {
        let mut d = [0u8; 4];
        for (k, slot) in d.iter_mut().enumerate() {
            *slot = self.num(&format!("{prefix}d{}", k + 1))?;
        }
        Ok(d)
    }

    fn finish(self) -> Result<()> {
        match self.0.keys().next() {
            Some(k) => Err(Error::Parse(format!("unknown field '{k}'"))),
            None => Ok(()),
        }
    }
}

fn read_c2(f: &mut Fields, prefix: &str, shape: Option<(usize, usize, u32, usize)>) -> Result<C2Params> {
    let (rows, cols, q, l) = match shape {
        Some(s) => s,
        None => {
            let (rows, cols) = if f.0.contains_key(&format!("{prefix}n")) {
                let n = f.num(&format!("{prefix}n"))?;
                (n, n)
            } else {
                (f.num(&format!("{prefix}rows"))?, f.num(&format!("{prefix}cols"))?)
            };
            (rows, cols, f.num(&format!("{prefix}q"))?, f.num(&format!("{prefix}l"))?)
        }
    };
    Ok(C2Params {
        rows,
        cols,
        q,
        l,
        a: f.list(&format!("{prefix}a"))?,
        b: f.list(&format!("{prefix}b"))?,
        c1: f.num(&format!("{prefix}c1"))?,
        c2: f.num(&format!("{prefix}c2"))?,
        d: f.bits(prefix)?,
        rows_distinct: f.flag(&format!("{prefix}rows_distinct"))?,
    })
}

impl FromStr for Params {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got '{line}'")))?;
            if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate field '{}'", k.trim())));
            }
        }
        let mut f = Fields(map);
        let params = match f.take("construction")?.as_str() {
            "c1" => Params::C1(C1Params {
                n: f.num("n")?,
                q: f.num("q")?,
                a: f.list("a")?,
                b: f.list("b")?,
                c: f.num("c")?,
                d: f.num("d")?,
                relaxed: f.flag("relaxed")?,
            }),
            "c2" => Params::C2(read_c2(&mut f, "", None)?),
            "c3" => {
                let n: usize = f.num("n")?;
                let q: u32 = f.num("q")?;
                let t_r: usize = f.num("tr")?;
                let t_c: usize = f.num("tc")?;
                let l: usize = f.num("l")?;
                if t_r == 0 || t_c == 0 {
                    return Err(Error::Parse("tr and tc must be positive".into()));
                }
                let anchor = read_c2(&mut f, "anchor.", Some((n / t_r, n / t_c, q, l)))?;
                let mut subs = BTreeMap::new();
                for sr in 1..=t_r {
                    for sc in 1..=t_c {
                        if (sr, sc) == (1, 1) {
                            continue;
                        }
                        let pre = format!("({sr},{sc}).");
                        let sp = SubParams { a: f.list(&format!("{pre}a"))?, b: f.list(&format!("{pre}b"))?, d: f.bits(&pre)? };
                        subs.insert((sr, sc), sp);
                    }
                }
                Params::C3(C3Params { n, q, t_r, t_c, l, anchor, subs })
            }
            other => return Err(Error::Parse(format!("unknown construction '{other}'"))),
        };
        f.finish()?;
        match &params {
            Params::C1(p) => p.validate(),
            Params::C2(p) => p.validate(),
            Params::C3(p) => p.validate(),
        }
        .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c1::c1_syndromes;
    use crate::c2::c2_syndromes;
    use crate::Array2D;

    #[test]
    fn c1_round_trip() {
        let x: Array2D = Grid::from_rows(3, vec![vec![0, 0, 0], vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        let p = Params::C1(c1_syndromes(&x, true).unwrap());
        let text = p.to_string();
        assert_eq!(text, "construction=c1\nn=3\nq=3\na=2,2,2\nb=0,0\nc=2\nd=0\nrelaxed=true\n");
        assert_eq!(text.parse::<Params>().unwrap(), p);
    }

    #[test]
    fn c2_round_trip() {
        let x: Array2D = Grid::from_rows(2, vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        let p = Params::C2(c2_syndromes(&x, 1, true).unwrap());
        assert_eq!(p.to_string().parse::<Params>().unwrap(), p);
    }

    #[test]
    fn rejects_malformed() {
        assert!("construction=c9\n".parse::<Params>().is_err());
        assert!("construction=c1\nn=3\n".parse::<Params>().is_err());
        let ok = "construction=c1\nn=3\nq=3\na=2,2,2\nb=0,0\nc=2\nd=0\nrelaxed=true\n";
        assert!(format!("{ok}extra=1\n").parse::<Params>().is_err());
        assert!(ok.replace("c=2", "c=7").parse::<Params>().is_err());
    }
}
