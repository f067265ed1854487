//! Line-oriented text formats.
//!
//! Algebra files:
//!
//! ```text
//! # comment
//! algebra su2
//! dim 3
//! names X1 X2 X3
//! bracket X1 X2 = 1 X3
//! bracket X2 X3 = 1 X1 + 0 X2
//! ```
//!
//! Cocycle files hold `cocycle A B = c` lines (the `cocycle` keyword may be
//! omitted), functional files a single `functional c1 … cN` line.
//! Coefficients are integers, `p/q`, or decimals with at most nine
//! fraction digits, all read exactly.

use std::collections::BTreeSet;

use crate::algebra::{validate_algebra, BracketEntry, CoalgebraVector, LieAlgebra, StructureTable};
use crate::cohomology::{pair_index, AlgebraTwoCocycle};
use crate::error::{LiecoError, Result};
use crate::rational::{format_q, parse_q, Q};

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

/// Non-blank lines with comments stripped, as `(line number, tokens)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn looks_numeric(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_digit() || c == '.' || c == '-' || c == '+') && s.len() > 1
        || s.starts_with(|c: char| c.is_ascii_digit())
}

fn number(tok: &Token<'_>, line: usize) -> Result<Q> {
    parse_q(tok.text).ok_or_else(|| {
        LiecoError::parse(line, tok.column, format!("invalid number `{}`", tok.text))
    })
}

fn expect_keyword<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<Token<'a>>)>,
    keyword: &str,
    header_line: usize,
) -> Result<(usize, Vec<Token<'a>>)> {
    match lines.next() {
        Some((n, toks)) if toks[0].text == keyword => Ok((n, toks)),
        Some((n, toks)) => Err(LiecoError::parse(
            n,
            toks[0].column,
            format!("expected `{keyword}` header, found `{}`", toks[0].text),
        )),
        None => Err(LiecoError::parse(
            header_line,
            1,
            format!("missing `{keyword}` header"),
        )),
    }
}

/// Parses `c1 N1 + c2 N2 − …` after the `=` sign. A coefficient may be
/// omitted (meaning 1) and a lone `0` denotes the zero bracket.
fn parse_terms(toks: &[Token<'_>], line: usize, end_column: usize) -> Result<Vec<(Q, String)>> {
    if toks.is_empty() {
        return Err(LiecoError::parse(
            line,
            end_column,
            "missing right-hand side",
        ));
    }
    if toks.len() == 1 && parse_q(toks[0].text).is_some_and(|c| c == Q::from_integer(0.into())) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut sign = Q::from_integer(1.into());
    let mut expect_term = true;
    while i < toks.len() {
        let t = toks[i];
        if !expect_term {
            sign = match t.text {
                "+" => Q::from_integer(1.into()),
                "-" => Q::from_integer((-1).into()),
                other => {
                    return Err(LiecoError::parse(
                        line,
                        t.column,
                        format!("expected `+` or `-`, found `{other}`"),
                    ))
                }
            };
            expect_term = true;
            i += 1;
            continue;
        }
        let (coeff, name_idx) = match parse_q(t.text) {
            Some(c) => (c, i + 1),
            None if looks_numeric(t.text) => {
                return Err(LiecoError::parse(
                    line,
                    t.column,
                    format!("invalid number `{}`", t.text),
                ))
            }
            None => (Q::from_integer(1.into()), i),
        };
        let Some(name) = toks.get(name_idx) else {
            return Err(LiecoError::parse(
                line,
                t.column,
                "coefficient without a generator name",
            ));
        };
        if parse_q(name.text).is_some() || name.text == "+" || name.text == "-" {
            return Err(LiecoError::parse(
                line,
                name.column,
                format!("expected a generator name, found `{}`", name.text),
            ));
        }
        out.push((&sign * coeff, name.text.to_string()));
        i = name_idx + 1;
        expect_term = false;
    }
    if expect_term {
        return Err(LiecoError::parse(
            line,
            end_column,
            "dangling sign at end of line",
        ));
    }
    Ok(out)
}

pub fn parse_algebra_file(text: &str) -> Result<LieAlgebra> {
    let mut lines = content_lines(text);
    let (first, head) = lines
        .next()
        .ok_or_else(|| LiecoError::parse(1, 1, "empty algebra file"))?;
    if head[0].text != "algebra" || head.len() != 2 {
        return Err(LiecoError::parse(
            first,
            head[0].column,
            "expected `algebra NAME` header",
        ));
    }
    let name = head[1].text.to_string();

    let (dim_line, dim_toks) = expect_keyword(&mut lines, "dim", first)?;
    let dim: usize = match dim_toks.get(1).map(|t| t.text.parse()) {
        Some(Ok(d)) if d > 0 && dim_toks.len() == 2 => d,
        _ => {
            return Err(LiecoError::parse(
                dim_line,
                dim_toks[0].column,
                "expected `dim N` with N a positive integer",
            ))
        }
    };

    let (names_line, names_toks) = expect_keyword(&mut lines, "names", dim_line)?;
    let names: Vec<String> = names_toks[1..].iter().map(|t| t.text.to_string()).collect();
    if names.len() != dim {
        return Err(LiecoError::parse(
            names_line,
            names_toks[0].column,
            format!("`names` lists {} generators but dim is {dim}", names.len()),
        ));
    }
    let mut seen = BTreeSet::new();
    for t in &names_toks[1..] {
        if parse_q(t.text).is_some() || matches!(t.text, "+" | "-" | "=") {
            return Err(LiecoError::parse(
                names_line,
                t.column,
                format!("invalid generator name `{}`", t.text),
            ));
        }
        if !seen.insert(t.text) {
            return Err(LiecoError::parse(
                names_line,
                t.column,
                format!("duplicate generator `{}`", t.text),
            ));
        }
    }

    let mut brackets = Vec::new();
    let mut pairs = BTreeSet::new();
    for (n, toks) in lines {
        if toks[0].text != "bracket" {
            return Err(LiecoError::parse(
                n,
                toks[0].column,
                format!("unexpected `{}`", toks[0].text),
            ));
        }
        if toks.len() < 4 || toks[3].text != "=" {
            return Err(LiecoError::parse(
                n,
                toks[0].column,
                "expected `bracket A B = c N + …`",
            ));
        }
        for t in &toks[1..3] {
            if !seen.contains(t.text) {
                return Err(LiecoError::parse(
                    n,
                    t.column,
                    format!("unknown generator `{}`", t.text),
                ));
            }
        }
        let (left, right) = (toks[1].text, toks[2].text);
        if left == right {
            return Err(LiecoError::parse(
                n,
                toks[1].column,
                "bracket of a generator with itself",
            ));
        }
        let key = if left < right {
            (left, right)
        } else {
            (right, left)
        };
        if !pairs.insert(key) {
            return Err(LiecoError::parse(
                n,
                toks[0].column,
                format!("duplicate bracket [{left}, {right}]"),
            ));
        }
        let end = toks[3].column + 1;
        let terms = parse_terms(&toks[4..], n, end)?;
        for (_, target) in &terms {
            if !seen.contains(target.as_str()) {
                let c = toks[4..]
                    .iter()
                    .find(|t| t.text == target)
                    .map_or(toks[3].column, |t| t.column);
                return Err(LiecoError::parse(
                    n,
                    c,
                    format!("unknown generator `{target}`"),
                ));
            }
        }
        brackets.push(BracketEntry {
            left: left.to_string(),
            right: right.to_string(),
            terms,
        });
    }

    validate_algebra(&StructureTable {
        name,
        basis_names: names,
        brackets,
    })
}

/// Canonical form: one `bracket` line per nonzero pair `i < j`, terms in
/// basis order.
pub fn serialize_algebra(algebra: &LieAlgebra) -> String {
    let mut out = format!(
        "algebra {}\ndim {}\nnames {}\n",
        algebra.name(),
        algebra.dim(),
        algebra.basis_names().join(" ")
    );
    for entry in algebra.to_table().brackets {
        let rhs: Vec<String> = entry
            .terms
            .iter()
            .map(|(c, n)| format!("{} {}", format_q(c), n))
            .collect();
        out.push_str(&format!(
            "bracket {} {} = {}\n",
            entry.left,
            entry.right,
            rhs.join(" + ")
        ));
    }
    out
}

pub fn parse_cocycle_file(text: &str, algebra: &LieAlgebra) -> Result<AlgebraTwoCocycle> {
    let mut entries = Vec::new();
    let mut pairs = BTreeSet::new();
    for (n, toks) in content_lines(text) {
        let body = if toks[0].text == "cocycle" {
            &toks[1..]
        } else {
            &toks[..]
        };
        let lead = body.first().map_or(toks[0].column, |t| t.column);
        if body.len() != 4 || body[2].text != "=" {
            return Err(LiecoError::parse(n, lead, "expected `cocycle A B = c`"));
        }
        let idx = |t: &Token<'_>| {
            algebra.index_of(t.text).ok_or_else(|| {
                LiecoError::parse(n, t.column, format!("unknown generator `{}`", t.text))
            })
        };
        let (i, j) = (idx(&body[0])?, idx(&body[1])?);
        if i == j {
            return Err(LiecoError::parse(
                n,
                body[0].column,
                "cocycle entry of a generator with itself",
            ));
        }
        if !pairs.insert((i.min(j), i.max(j))) {
            return Err(LiecoError::parse(n, lead, "duplicate cocycle entry"));
        }
        entries.push((i, j, number(&body[3], n)?));
    }
    let gamma = AlgebraTwoCocycle::from_entries(algebra.dim(), &entries)?;
    gamma.check_closed(algebra)?;
    Ok(gamma)
}

pub fn serialize_cocycle(algebra: &LieAlgebra, gamma: &AlgebraTwoCocycle) -> String {
    let names = algebra.basis_names();
    pair_index(algebra.dim())
        .into_iter()
        .filter(|&(i, j)| !num_traits::Zero::is_zero(gamma.get(i, j)))
        .map(|(i, j)| {
            format!(
                "cocycle {} {} = {}\n",
                names[i],
                names[j],
                format_q(gamma.get(i, j))
            )
        })
        .collect()
}

pub fn parse_functional_file(text: &str, dim: usize) -> Result<CoalgebraVector> {
    let mut found = None;
    for (n, toks) in content_lines(text) {
        if toks[0].text != "functional" {
            return Err(LiecoError::parse(
                n,
                toks[0].column,
                "expected `functional c1 … cN`",
            ));
        }
        if found.is_some() {
            return Err(LiecoError::parse(
                n,
                toks[0].column,
                "more than one functional line",
            ));
        }
        if toks.len() - 1 != dim {
            return Err(LiecoError::parse(
                n,
                toks[0].column,
                format!(
                    "functional has {} components but dim is {dim}",
                    toks.len() - 1
                ),
            ));
        }
        let v = toks[1..]
            .iter()
            .map(|t| number(t, n))
            .collect::<Result<Vec<_>>>()?;
        found = Some(CoalgebraVector(v));
    }
    found.ok_or_else(|| LiecoError::parse(1, 1, "no functional line"))
}

pub fn serialize_functional(v: &CoalgebraVector) -> String {
    let parts: Vec<String> = v.0.iter().map(format_q).collect();
    format!("functional {}\n", parts.join(" "))
}

/// `0,1/2,-3` as exact rationals.
pub fn parse_csv(text: &str) -> Result<Vec<Q>> {
    let mut col = 1;
    let mut out = Vec::new();
    for part in text.split(',') {
        let v = parse_q(part).ok_or_else(|| {
            LiecoError::parse(1, col, format!("invalid number `{}`", part.trim()))
        })?;
        out.push(v);
        col += part.chars().count() + 1;
    }
    Ok(out)
}
