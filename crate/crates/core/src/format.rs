//! Plain-text file formats. Everything after `#` on a line is a comment.
//!
//! - graph: `n m`, then `m` lines `u v` (0-indexed)
//! - ordering: `n` vertex labels, whitespace separated
//! - representation: `n`, then `n` lines `apex left right`; each
//!   coordinate is an integer, a fraction `p/q`, or a decimal `x.y`
//! - non-betweenness instance: `|A| |C|`, then `|C|` lines `i j k` (1-indexed)

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gen::{Coord, NonBetweennessInstance, Triangle, TriangleRepresentation};
use crate::graph::Graph;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-comment lines, each split into tokens with 1-based positions.
fn lines(text: &str) -> Vec<Vec<Token<'_>>> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut out = Vec::new();
            let mut start = None;
            for (j, c) in body.char_indices().chain([(body.len(), ' ')]) {
                match (c.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        out.push(Token {
                            text: &body[s..j],
                            line: i + 1,
                            column: body[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            out
        })
        .filter(|t| !t.is_empty())
        .collect()
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn number<T: FromStr>(t: &Token, what: &str) -> Result<T> {
    t.text
        .parse()
        .map_err(|_| err(t.line, t.column, format!("expected {what}, found `{}`", t.text)))
}

fn expect_fields<'a, 'b>(row: &'b [Token<'a>], count: usize, what: &str) -> Result<&'b [Token<'a>]> {
    if row.len() != count {
        let t = row.get(count).unwrap_or(&row[0]);
        return Err(err(
            t.line,
            t.column,
            format!("expected {count} fields ({what}), found {}", row.len()),
        ));
    }
    Ok(row)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let rows = lines(text);
    let Some(head) = rows.first() else {
        let (l, c) = end_position(text);
        return Err(err(l, c, "missing header `n m`"));
    };
    let head = expect_fields(head, 2, "n m")?;
    let n: usize = number(&head[0], "vertex count")?;
    let m: usize = number(&head[1], "edge count")?;
    if rows.len() - 1 != m {
        let (l, c) = match rows.get(m + 1) {
            Some(row) => (row[0].line, row[0].column),
            None => end_position(text),
        };
        return Err(err(
            l,
            c,
            format!("header announces {m} edges, found {}", rows.len() - 1),
        ));
    }
    let mut edges = Vec::with_capacity(m);
    for row in &rows[1..] {
        let row = expect_fields(row, 2, "u v")?;
        let u: usize = number(&row[0], "vertex")?;
        let v: usize = number(&row[1], "vertex")?;
        for (x, t) in [(u, &row[0]), (v, &row[1])] {
            if x >= n {
                return Err(err(t.line, t.column, format!("vertex {x} out of range 0..{n}")));
            }
        }
        edges.push((u, v));
    }
    Graph::new(n, edges).map_err(|e| {
        let (l, c) = match &e {
            Error::SelfLoop(x) | Error::DuplicateEdge(x, _) => position_of_edge(&rows, *x),
            _ => (1, 1),
        };
        err(l, c, e.to_string())
    })
}

fn position_of_edge(rows: &[Vec<Token>], x: usize) -> (usize, usize) {
    rows[1..]
        .iter()
        .rev()
        .find(|r| r.iter().any(|t| t.text.parse() == Ok(x)))
        .map_or((1, 1), |r| (r[0].line, r[0].column))
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

/// An ordering of `0..n`; checks that it is a permutation.
pub fn parse_ordering(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for row in lines(text) {
        for t in &row {
            out.push(number::<usize>(t, "vertex")?);
        }
    }
    crate::error::positions(n, &out)?;
    Ok(out)
}

pub fn write_ordering(sigma: &[usize]) -> String {
    let mut s = sigma
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

fn parse_coord(t: &Token) -> Result<Coord> {
    let bad = || err(t.line, t.column, format!("expected a rational number, found `{}`", t.text));
    if let Some((int, frac)) = t.text.split_once('.') {
        let negative = int.starts_with('-');
        let digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let whole: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
        let part: i64 = frac.parse().map_err(|_| bad())?;
        let num = whole
            .checked_mul(scale)
            .and_then(|x| x.checked_add(part))
            .ok_or_else(bad)?;
        let num = if negative { -num } else { num };
        return Ok(Ratio::new(num, scale));
    }
    let r: Ratio<i64> = t.text.parse().map_err(|_| bad())?;
    Ok(r)
}

pub fn parse_representation(text: &str) -> Result<TriangleRepresentation> {
    let rows = lines(text);
    let Some(head) = rows.first() else {
        let (l, c) = end_position(text);
        return Err(err(l, c, "missing header `n`"));
    };
    let head = expect_fields(head, 1, "n")?;
    let n: usize = number(&head[0], "triangle count")?;
    if rows.len() - 1 != n {
        let (l, c) = end_position(text);
        return Err(err(l, c, format!("header announces {n} triangles, found {}", rows.len() - 1)));
    }
    let mut triangles = Vec::with_capacity(n);
    for row in &rows[1..] {
        let row = expect_fields(row, 3, "apex left right")?;
        let apex = parse_coord(&row[0])?;
        let left = parse_coord(&row[1])?;
        let right = parse_coord(&row[2])?;
        let tri = Triangle::new(apex, left, right)
            .map_err(|e| err(row[1].line, row[1].column, e.to_string()))?;
        triangles.push(tri);
    }
    Ok(TriangleRepresentation::new(triangles))
}

pub fn write_representation(rep: &TriangleRepresentation) -> String {
    let mut s = format!("{}\n", rep.len());
    for t in &rep.triangles {
        writeln!(s, "{} {} {}", t.apex, t.left, t.right).unwrap();
    }
    s
}

pub fn parse_instance(text: &str) -> Result<NonBetweennessInstance> {
    let rows = lines(text);
    let Some(head) = rows.first() else {
        let (l, c) = end_position(text);
        return Err(err(l, c, "missing header `|A| |C|`"));
    };
    let head = expect_fields(head, 2, "|A| |C|")?;
    let a: usize = number(&head[0], "element count")?;
    let c: usize = number(&head[1], "triple count")?;
    if rows.len() - 1 != c {
        let (l, col) = end_position(text);
        return Err(err(l, col, format!("header announces {c} triples, found {}", rows.len() - 1)));
    }
    let mut triples = Vec::with_capacity(c);
    for row in &rows[1..] {
        let row = expect_fields(row, 3, "i j k")?;
        let mut idx = [0; 3];
        for (slot, t) in idx.iter_mut().zip(row) {
            let x: usize = number(t, "element")?;
            if x == 0 || x > a {
                return Err(err(t.line, t.column, format!("element {x} out of range 1..={a}")));
            }
            *slot = x - 1;
        }
        triples.push((idx[0], idx[1], idx[2]));
    }
    NonBetweennessInstance::new(a, triples).map_err(|e| {
        let t = &rows[1][0];
        err(t.line, t.column, e.to_string())
    })
}

pub fn write_instance(inst: &NonBetweennessInstance) -> String {
    let mut s = format!("{} {}\n", inst.element_count(), inst.triples().len());
    for &(i, j, k) in inst.triples() {
        writeln!(s, "{} {} {}", i + 1, j + 1, k + 1).unwrap();
    }
    s
}
