//! File formats of the command-line tool. Every parse error names the line
//! and column of the offending token.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use abelkit::abelian::{FpAbGroup, GroupHom};
use abelkit::cech::CoveringPresheaf;
use abelkit::group_cohomology::MonogenicModule;
use abelkit::matrix::IntMatrix;
use abelkit::monodromy::{DegenerationGraph, UniformizationDatum};

use crate::CliError;

/// A whitespace token with its position.
struct Token {
    text: String,
    line: usize,
    col: usize,
}

fn tokenize(input: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (li, line) in input.lines().enumerate() {
        let mut col = 0usize;
        for piece in line.split_whitespace() {
            let found = line[col..].find(piece).map(|p| p + col).unwrap_or(col);
            out.push(Token {
                text: piece.to_string(),
                line: li + 1,
                col: found + 1,
            });
            col = found + piece.len();
        }
    }
    out
}

struct TokenStream {
    tokens: Vec<Token>,
    pos: usize,
}

impl TokenStream {
    fn new(input: &str) -> Self {
        TokenStream {
            tokens: tokenize(input),
            pos: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<&Token, CliError> {
        if self.pos >= self.tokens.len() {
            let (line, col) = self
                .tokens
                .last()
                .map(|t| (t.line, t.col + t.text.len()))
                .unwrap_or((1, 1));
            return Err(CliError::input(format!(
                "line {line}, column {col}: expected {what}, found end of input"
            )));
        }
        let t = &self.tokens[self.pos];
        self.pos += 1;
        Ok(t)
    }

    fn integer(&mut self, what: &str) -> Result<BigInt, CliError> {
        let t = self.next(what)?;
        t.text.parse::<BigInt>().map_err(|_| {
            CliError::input(format!(
                "line {}, column {}: expected {what}, found {:?}",
                t.line, t.col, t.text
            ))
        })
    }

    fn count(&mut self, what: &str) -> Result<usize, CliError> {
        let t = self.next(what)?;
        t.text.parse::<usize>().map_err(|_| {
            CliError::input(format!(
                "line {}, column {}: expected {what}, found {:?}",
                t.line, t.col, t.text
            ))
        })
    }

    fn finish(&self) -> Result<(), CliError> {
        if self.pos < self.tokens.len() {
            let t = &self.tokens[self.pos];
            return Err(CliError::input(format!(
                "line {}, column {}: unexpected trailing token {:?}",
                t.line, t.col, t.text
            )));
        }
        Ok(())
    }
}

/// `rows cols` followed by row-major entries.
pub fn parse_matrix(input: &str) -> Result<IntMatrix, CliError> {
    let mut ts = TokenStream::new(input);
    let m = parse_matrix_tokens(&mut ts)?;
    ts.finish()?;
    Ok(m)
}

fn parse_matrix_tokens(ts: &mut TokenStream) -> Result<IntMatrix, CliError> {
    let rows = ts.count("row count")?;
    let cols = ts.count("column count")?;
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        entries.push(ts.integer("matrix entry")?);
    }
    Ok(IntMatrix::from_vec(rows, cols, entries))
}

/// `d` followed by a d-by-d matrix, row major.
pub fn parse_datum(input: &str) -> Result<UniformizationDatum, CliError> {
    let mut ts = TokenStream::new(input);
    let d = ts.count("toric rank")?;
    let mut entries = Vec::with_capacity(d * d);
    for _ in 0..d * d {
        entries.push(ts.integer("matrix entry")?);
    }
    ts.finish()?;
    UniformizationDatum::new(IntMatrix::from_vec(d, d, entries))
        .map_err(|_| CliError::math("degenerate datum: the matrix is singular".into()))
}

/// Vertex count followed by one `a b` pair per edge.
pub fn parse_graph(input: &str) -> Result<DegenerationGraph, CliError> {
    let mut ts = TokenStream::new(input);
    let n = ts.count("vertex count")?;
    let mut edges = Vec::new();
    while ts.pos < ts.tokens.len() {
        let a = ts.count("edge endpoint")?;
        let b = ts.count("edge endpoint")?;
        edges.push((a, b));
    }
    DegenerationGraph::new(n, edges).map_err(|e| match e {
        abelkit::Error::Disconnected => CliError::math("graph is not connected".into()),
        other => CliError::input(other.to_string()),
    })
}

/// A group descriptor `free_rank; d1,d2,...` on the first line, then the
/// sigma matrix (generators x generators), row major.
pub fn parse_module(input: &str) -> Result<MonogenicModule, CliError> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::input("line 1, column 1: expected a group descriptor".into()))?;
    let group = FpAbGroup::parse_descriptor(header)
        .map_err(|e| CliError::input(format!("line 1: {e}")))?;
    let rest: String = lines.collect::<Vec<_>>().join("\n");
    let mut ts = TokenStream::new(&rest);
    let g = group.num_generators();
    let mut entries = Vec::with_capacity(g * g);
    for _ in 0..g * g {
        entries.push(ts.integer("sigma matrix entry")?);
    }
    ts.finish()?;
    let sigma = GroupHom::new(group.clone(), group.clone(), IntMatrix::from_vec(g, g, entries))
        .map_err(|e| CliError::math(e.to_string()))?;
    MonogenicModule::new(group, sigma).map_err(|e| CliError::math(e.to_string()))
}

/// Cochain complex as one record per degree:
///
/// ```text
/// term <degree> <free_rank>; <d1,d2,...>
/// diff <degree> <matrix entries...>
/// ```
///
/// Terms must cover a contiguous degree window; `diff d` maps the term in
/// degree `d` to the term in degree `d + 1` (row major, target generators
/// by source generators).
pub fn parse_complex(input: &str) -> Result<abelkit::complex::Complex, CliError> {
    let mut terms: BTreeMap<i64, FpAbGroup> = BTreeMap::new();
    let mut diffs: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for (li0, line) in input.lines().enumerate() {
        let li = li0 + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("term") => {
                let deg: i64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| CliError::input(format!("line {li}: expected a degree")))?;
                let descriptor: String = parts.collect::<Vec<_>>().join(" ");
                let group = FpAbGroup::parse_descriptor(&descriptor)
                    .map_err(|e| CliError::input(format!("line {li}: {e}")))?;
                terms.insert(deg, group);
            }
            Some("diff") => {
                let deg: i64 = parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| CliError::input(format!("line {li}: expected a degree")))?;
                let mut entries = Vec::new();
                for tok in parts {
                    entries.push(tok.parse::<BigInt>().map_err(|_| {
                        CliError::input(format!("line {li}: bad matrix entry {tok:?}"))
                    })?);
                }
                diffs.insert(deg, entries);
            }
            Some(other) => {
                return Err(CliError::input(format!(
                    "line {li}, column 1: unknown directive {other:?}"
                )))
            }
            None => unreachable!(),
        }
    }
    if terms.is_empty() {
        return Err(CliError::input("complex has no terms".into()));
    }
    let lo = *terms.keys().next().unwrap();
    let hi = *terms.keys().last().unwrap();
    let mut ordered_terms = Vec::new();
    for d in lo..=hi {
        let t = terms
            .get(&d)
            .ok_or_else(|| CliError::input(format!("missing term in degree {d}")))?;
        ordered_terms.push(t.clone());
    }
    let mut ordered_diffs = Vec::new();
    for d in lo..hi {
        let src = &ordered_terms[(d - lo) as usize];
        let tgt = &ordered_terms[(d - lo) as usize + 1];
        let entries = diffs.remove(&d).unwrap_or_default();
        let (rows, cols) = (tgt.num_generators(), src.num_generators());
        if entries.is_empty() && rows * cols > 0 {
            return Err(CliError::input(format!("missing differential in degree {d}")));
        }
        if entries.len() != rows * cols {
            return Err(CliError::input(format!(
                "differential in degree {d} needs {} entries, found {}",
                rows * cols,
                entries.len()
            )));
        }
        let hom = GroupHom::new(src.clone(), tgt.clone(), IntMatrix::from_vec(rows, cols, entries))
            .map_err(|e| CliError::math(format!("differential in degree {d}: {e}")))?;
        ordered_diffs.push(hom);
    }
    if let Some((&d, _)) = diffs.iter().next() {
        return Err(CliError::input(format!(
            "differential in degree {d} has no adjacent terms"
        )));
    }
    abelkit::complex::Complex::new(lo, ordered_terms, ordered_diffs)
        .map_err(|e| CliError::math(e.to_string()))
}

/// Covering presheaf:
///
/// ```text
/// indices <n>
/// group <i0,i1,...> <free_rank>; <d1,d2,...>
/// res <subset> <subset> <matrix entries...>
/// ```
///
/// One `group` line per nonempty subset of the index set; one `res` line per
/// one-step inclusion. Lines may come in any order.
pub fn parse_presheaf(input: &str) -> Result<CoveringPresheaf, CliError> {
    let mut n: Option<usize> = None;
    let mut groups: BTreeMap<u32, FpAbGroup> = BTreeMap::new();
    let mut res_lines: Vec<(usize, u32, u32, Vec<BigInt>)> = Vec::new();

    let parse_subset = |tok: &str, li: usize| -> Result<u32, CliError> {
        let mut mask = 0u32;
        for part in tok.split(',') {
            let idx: usize = part.trim().parse().map_err(|_| {
                CliError::input(format!("line {li}: bad subset element {part:?}"))
            })?;
            if idx >= 16 {
                return Err(CliError::input(format!(
                    "line {li}: index {idx} out of range"
                )));
            }
            mask |= 1 << idx;
        }
        Ok(mask)
    };

    for (li0, line) in input.lines().enumerate() {
        let li = li0 + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("indices") => {
                let tok = parts.next().ok_or_else(|| {
                    CliError::input(format!("line {li}: expected an index count"))
                })?;
                n = Some(tok.parse().map_err(|_| {
                    CliError::input(format!("line {li}: bad index count {tok:?}"))
                })?);
            }
            Some("group") => {
                let subset = parts.next().ok_or_else(|| {
                    CliError::input(format!("line {li}: expected a subset"))
                })?;
                let mask = parse_subset(subset, li)?;
                let rest: Vec<&str> = parts.collect();
                let descriptor = rest.join(" ");
                let group = FpAbGroup::parse_descriptor(&descriptor)
                    .map_err(|e| CliError::input(format!("line {li}: {e}")))?;
                groups.insert(mask, group);
            }
            Some("res") => {
                let s = parts.next().ok_or_else(|| {
                    CliError::input(format!("line {li}: expected a source subset"))
                })?;
                let t = parts.next().ok_or_else(|| {
                    CliError::input(format!("line {li}: expected a target subset"))
                })?;
                let s = parse_subset(s, li)?;
                let t = parse_subset(t, li)?;
                let mut entries = Vec::new();
                for tok in parts {
                    entries.push(tok.parse::<BigInt>().map_err(|_| {
                        CliError::input(format!("line {li}: bad matrix entry {tok:?}"))
                    })?);
                }
                res_lines.push((li, s, t, entries));
            }
            Some(other) => {
                return Err(CliError::input(format!(
                    "line {li}, column 1: unknown directive {other:?}"
                )))
            }
            None => unreachable!(),
        }
    }
    let n = n.ok_or_else(|| CliError::input("missing `indices` line".into()))?;
    let mut one_steps = BTreeMap::new();
    for (li, s, t, entries) in res_lines {
        let src = groups
            .get(&s)
            .ok_or_else(|| CliError::input(format!("line {li}: no group for the source subset")))?;
        let tgt = groups
            .get(&t)
            .ok_or_else(|| CliError::input(format!("line {li}: no group for the target subset")))?;
        let (rows, cols) = (tgt.num_generators(), src.num_generators());
        if entries.len() != rows * cols {
            return Err(CliError::input(format!(
                "line {li}: restriction needs {} entries, found {}",
                rows * cols,
                entries.len()
            )));
        }
        let hom = GroupHom::new(src.clone(), tgt.clone(), IntMatrix::from_vec(rows, cols, entries))
            .map_err(|e| CliError::math(format!("line {li}: {e}")))?;
        one_steps.insert((s, t), hom);
    }
    CoveringPresheaf::new(n, groups, one_steps).map_err(|e| CliError::input(e.to_string()))
}
