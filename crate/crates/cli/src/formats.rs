//! Text formats for orientations and LCP instances.
//!
//! ```text
//! USO 1            LCP 1
//! 2                2
//! 0 1 2 3          1 2
//!                  0 1/2
//!                  1 -1
//! ```

use std::fmt;

use uso_core::linalg::{Rational, RationalMatrix};
use uso_core::{DimSet, OutMap};

/// Largest dimension accepted from files unless `USO_MAX_DIM` says otherwise.
pub const DEFAULT_MAX_DIM: usize = 8;

pub fn max_dim() -> usize {
    std::env::var("USO_MAX_DIM")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .map(|d: usize| d.min(uso_core::cube::MAX_DIM))
        .unwrap_or(DEFAULT_MAX_DIM)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with their 1-based numbers; `#` starts a comment.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

struct Lines<'a> {
    inner: std::vec::IntoIter<(usize, &'a str)>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: content_lines(text).into_iter(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        match self.inner.next() {
            Some((k, l)) => {
                self.last = k;
                Ok((k, l))
            }
            None => Err(err(self.last + 1, format!("missing {what}"))),
        }
    }

    fn finish(mut self) -> Result<(), FormatError> {
        match self.inner.next() {
            Some((k, _)) => Err(err(k, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn header(lines: &mut Lines, magic: &str) -> Result<usize, FormatError> {
    let (k, h) = lines.next("header")?;
    if h != format!("{magic} 1") {
        return Err(err(
            k,
            format!("expected header \"{magic} 1\", found {h:?}"),
        ));
    }
    let (k, d) = lines.next("dimension")?;
    let n: usize = d
        .parse()
        .map_err(|_| err(k, format!("invalid dimension {d:?}")))?;
    let cap = max_dim();
    if n > cap {
        return Err(err(
            k,
            format!("dimension {n} exceeds the cap of {cap} (set USO_MAX_DIM to raise it)"),
        ));
    }
    Ok(n)
}

pub fn parse_uso(text: &str) -> Result<OutMap, FormatError> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines, "USO")?;
    let (k, body) = lines.next("outmap masks")?;
    let masks = body
        .split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| err(k, format!("invalid mask {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    lines.finish()?;
    let o = OutMap::new(n, masks).map_err(|e| err(k, e.to_string()))?;
    if let Some((v, dim)) = o.first_inconsistent_edge() {
        return Err(err(
            k,
            format!("not an orientation: edge at {v} along dimension {dim} is inconsistent"),
        ));
    }
    Ok(o)
}

pub fn write_uso(o: &OutMap) -> String {
    let masks: Vec<String> = o.table().iter().map(u32::to_string).collect();
    format!("USO 1\n{}\n{}\n", o.dim(), masks.join(" "))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpInstance {
    pub m: RationalMatrix,
    pub q: Vec<Rational>,
}

fn parse_rational(line: usize, t: &str) -> Result<Rational, FormatError> {
    let bad = || err(line, format!("invalid rational {t:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b),
        None => (t, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den == 0.into() {
        return Err(err(line, format!("zero denominator in {t:?}")));
    }
    Ok(Rational::new(num, den))
}

fn rational_row(line: usize, body: &str, n: usize) -> Result<Vec<Rational>, FormatError> {
    let row = body
        .split_whitespace()
        .map(|t| parse_rational(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if row.len() != n {
        return Err(err(
            line,
            format!("expected {n} entries, found {}", row.len()),
        ));
    }
    Ok(row)
}

pub fn parse_lcp(text: &str) -> Result<LcpInstance, FormatError> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines, "LCP")?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (k, body) = lines.next(&format!("matrix row {}", r + 1))?;
        rows.push(rational_row(k, body, n)?);
    }
    let (k, body) = lines.next("right-hand side")?;
    let q = rational_row(k, body, n)?;
    lines.finish()?;
    let m = RationalMatrix::from_rows(rows).map_err(|e| err(k, e.to_string()))?;
    Ok(LcpInstance { m, q })
}

pub fn write_lcp(inst: &LcpInstance) -> String {
    let mut s = format!("LCP 1\n{}\n", inst.q.len());
    for r in 0..inst.m.rows() {
        let row: Vec<String> = inst.m.row(r).iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    let q: Vec<String> = inst.q.iter().map(|x| x.to_string()).collect();
    s.push_str(&q.join(" "));
    s.push('\n');
    s
}

/// Parses `{1,3}`, `1,3`, `1 3`, `{}` or an empty string.
pub fn parse_dimset(s: &str) -> Result<DimSet, String> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = DimSet::EMPTY;
    for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        let d: usize = tok
            .parse()
            .map_err(|_| format!("invalid dimension {tok:?}"))?;
        if d == 0 || d > uso_core::cube::MAX_DIM {
            return Err(format!("dimension {d} out of range"));
        }
        out = out.with(d);
    }
    Ok(out)
}

/// Parses a 1-based image list such as `2,3,1`.
pub fn parse_perm(s: &str) -> Result<Vec<usize>, String> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| format!("invalid permutation entry {t:?}"))
        })
        .collect()
}
