//! Plain-text arrangement files.
//!
//! Realized arrangements:
//!
//! ```text
//! dim 3
//! x-y   1 -1 0
//! x     1  0 0  2      # optional trailing multiplicity
//! ```
//!
//! Abstract rank-3 matroids list one dependent rank-2 flat per line, by
//! 1-based element index:
//!
//! ```text
//! matroid 6
//! 1 2 4
//! 1 3 5
//! ```
//!
//! An optional `labels a b c ...` line names the matroid elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{members, set_of, Arrangement, RankThreeMatroid, Realization};
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Tokens with their 1-based starting columns, comments stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() || c == ',' {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_rational(tok: &str) -> Option<BigRational> {
    let (num, den) = match tok.split_once('/') {
        Some((a, b)) => (a.parse::<BigInt>().ok()?, b.parse::<BigInt>().ok()?),
        None => (tok.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());
    let Some((hl, header)) = lines.next() else {
        return Err(parse_err(1, 1, "empty arrangement file"));
    };
    let kind = header[0].1;
    let size = header
        .get(1)
        .ok_or_else(|| parse_err(hl, header[0].0, "header needs a size"))?;
    let size_val: usize = size
        .1
        .parse()
        .map_err(|_| parse_err(hl, size.0, format!("invalid size `{}`", size.1)))?;
    if header.len() > 2 {
        return Err(parse_err(hl, header[2].0, "unexpected token after header"));
    }
    match kind {
        "dim" => {
            if size_val == 0 {
                return Err(parse_err(hl, size.0, "dimension must be at least 1"));
            }
            let l = size_val;
            let mut labels = Vec::new();
            let mut normals = Vec::new();
            let mut mults = Vec::new();
            for (ln, toks) in lines {
                if toks.len() != l + 1 && toks.len() != l + 2 {
                    return Err(parse_err(
                        ln,
                        toks[0].0,
                        format!("expected a label, {l} coefficients and an optional multiplicity"),
                    ));
                }
                labels.push(toks[0].1.to_string());
                let mut row = Vec::with_capacity(l);
                for &(col, t) in &toks[1..=l] {
                    row.push(
                        parse_rational(t)
                            .ok_or_else(|| parse_err(ln, col, format!("invalid rational `{t}`")))?,
                    );
                }
                normals.push(row);
                let m = match toks.get(l + 1) {
                    Some(&(col, t)) => t
                        .parse::<u32>()
                        .ok()
                        .filter(|&m| m >= 1)
                        .ok_or_else(|| parse_err(ln, col, format!("invalid multiplicity `{t}`")))?,
                    None => 1,
                };
                mults.push(m);
            }
            Arrangement::linear(l, normals)?
                .with_labels(labels)?
                .with_multiplicities(mults)
        }
        "matroid" => {
            let n = size_val;
            let mut flats = Vec::new();
            let mut labels = None;
            for (ln, toks) in lines {
                if toks[0].1 == "labels" {
                    if toks.len() != n + 1 {
                        return Err(parse_err(ln, toks[0].0, format!("expected {n} labels")));
                    }
                    labels = Some(toks[1..].iter().map(|t| t.1.to_string()).collect());
                    continue;
                }
                let mut idx = Vec::new();
                for &(col, t) in &toks {
                    let i: usize = t
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1 && i <= n)
                        .ok_or_else(|| parse_err(ln, col, format!("invalid element `{t}`")))?;
                    idx.push(i - 1);
                }
                flats.push(set_of(&idx));
            }
            let a = Arrangement::abstract_matroid(RankThreeMatroid::new(n, flats)?);
            match labels {
                Some(l) => a.with_labels(l),
                None => Ok(a),
            }
        }
        other => Err(parse_err(
            hl,
            header[0].0,
            format!("unknown header `{other}` (expected `dim` or `matroid`)"),
        )),
    }
}

pub fn write_arrangement(a: &Arrangement) -> String {
    let mut out = String::new();
    match a.realization() {
        Realization::Linear { dim, normals } => {
            out.push_str(&format!("dim {dim}\n"));
            for ((label, row), m) in a.labels().iter().zip(normals).zip(a.multiplicities()) {
                out.push_str(label);
                for x in row {
                    out.push(' ');
                    out.push_str(&x.to_string());
                }
                if *m != 1 {
                    out.push_str(&format!(" {m}"));
                }
                out.push('\n');
            }
        }
        Realization::Matroid(m) => {
            out.push_str(&format!("matroid {}\n", m.n()));
            out.push_str("labels ");
            out.push_str(&a.labels().join(" "));
            out.push('\n');
            for &l in m.lines() {
                let idx: Vec<String> = members(l).map(|i| (i + 1).to_string()).collect();
                out.push_str(&idx.join(" "));
                out.push('\n');
            }
        }
    }
    out
}
