//! The hypermap file grammar and its parser.
//!
//! ```text
//! # comment
//! n: 8
//! sigma: (1 4 8)(2 5)(3 6)(7)
//! alpha: (1 2 3)(4 5)(6 7 8)
//! ```
//!
//! The `n:` line is optional (defaults to the largest mentioned point),
//! points inside a cycle are separated by whitespace or commas, and points
//! not mentioned in a permutation are fixed points.

use std::fmt;

use hypermaps::{HypermapCollection, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        col,
        msg: msg.into(),
    })
}

/// A parsed hypermap file, before validation against the ground set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HypermapDocument {
    pub n: Option<u32>,
    pub sigma_cycles: Vec<Vec<u32>>,
    pub alpha_cycles: Vec<Vec<u32>>,
}

/// Cycle list plus the (line, col) of every point, for error reporting.
type CyclesWithSpans = (Vec<Vec<u32>>, Vec<(u32, usize, usize)>);

fn parse_cycles(text: &str, line_no: usize, col0: usize) -> Result<CyclesWithSpans, ParseError> {
    let mut cycles = Vec::new();
    let mut spans = Vec::new();
    let mut seen: Vec<(u32, usize)> = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let col = |i: usize| col0 + i + 1;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return err(
                line_no,
                col(i),
                format!("expected '(' to open a cycle, found {c:?}"),
            );
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            while i < chars.len() && (chars[i].is_whitespace() || chars[i] == ',') {
                i += 1;
            }
            if i >= chars.len() {
                return err(line_no, col0 + chars.len(), "unclosed cycle: missing ')'");
            }
            if chars[i] == ')' {
                i += 1;
                break;
            }
            if !chars[i].is_ascii_digit() {
                return err(
                    line_no,
                    col(i),
                    format!("expected a point or ')', found {:?}", chars[i]),
                );
            }
            let start = i;
            let mut value: u64 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                value = value * 10 + chars[i].to_digit(10).unwrap() as u64;
                if value > u32::MAX as u64 {
                    return err(line_no, col(start), "point too large");
                }
                i += 1;
            }
            let point = value as u32;
            if point == 0 {
                return err(line_no, col(start), "points are numbered from 1");
            }
            if let Some(&(p, _)) = seen.iter().find(|&&(p, _)| p == point) {
                return err(
                    line_no,
                    col(start),
                    format!("point {p} appears more than once in this permutation"),
                );
            }
            seen.push((point, start));
            spans.push((point, line_no, col(start)));
            cycle.push(point);
        }
        if cycle.is_empty() {
            return err(line_no, col(i.saturating_sub(1)), "empty cycle '()'");
        }
        cycles.push(cycle);
    }
    Ok((cycles, spans))
}

/// Parses the file grammar. Duplicate points, points above a declared `n`,
/// and malformed syntax are rejected with their line and column.
pub fn parse(text: &str) -> Result<HypermapDocument, ParseError> {
    let mut doc = HypermapDocument::default();
    let mut spans: Vec<(u32, usize, usize)> = Vec::new();
    let mut seen_sigma = false;
    let mut seen_alpha = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            return err(line_no, 1, "expected 'n:', 'sigma:' or 'alpha:'");
        };
        let key = line[..colon].trim();
        let rest = &line[colon + 1..];
        match key {
            "n" => {
                if doc.n.is_some() {
                    return err(line_no, 1, "duplicate 'n:' line");
                }
                match rest.trim().parse::<u32>() {
                    Ok(n) if n >= 1 => doc.n = Some(n),
                    _ => return err(line_no, colon + 2, "expected a positive integer after 'n:'"),
                }
            }
            "sigma" => {
                if seen_sigma {
                    return err(line_no, 1, "duplicate 'sigma:' line");
                }
                seen_sigma = true;
                let (cycles, s) = parse_cycles(rest, line_no, colon + 1)?;
                doc.sigma_cycles = cycles;
                spans.extend(s);
            }
            "alpha" => {
                if seen_alpha {
                    return err(line_no, 1, "duplicate 'alpha:' line");
                }
                seen_alpha = true;
                let (cycles, s) = parse_cycles(rest, line_no, colon + 1)?;
                doc.alpha_cycles = cycles;
                spans.extend(s);
            }
            other => {
                return err(line_no, 1, format!("unknown key {other:?}"));
            }
        }
    }
    if !seen_sigma && !seen_alpha && doc.n.is_none() {
        return err(1, 1, "empty input: expected 'sigma:' and 'alpha:' lines");
    }
    let max_point = spans.iter().map(|&(p, _, _)| p).max().unwrap_or(0);
    match doc.n {
        Some(n) => {
            if let Some(&(p, line, col)) = spans.iter().find(|&&(p, _, _)| p > n) {
                return err(line, col, format!("point {p} exceeds declared n = {n}"));
            }
        }
        None => {
            if max_point == 0 {
                return err(1, 1, "no points mentioned and no 'n:' line");
            }
            doc.n = Some(max_point);
        }
    }
    Ok(doc)
}

impl HypermapDocument {
    pub fn to_collection(&self) -> Result<HypermapCollection, ParseError> {
        let n = self.n.expect("parse always fills n");
        let build = |cycles: &[Vec<u32>]| {
            Permutation::from_cycles(n, cycles).map_err(|e| ParseError {
                line: 0,
                col: 0,
                msg: e.to_string(),
            })
        };
        let sigma = build(&self.sigma_cycles)?;
        let alpha = build(&self.alpha_cycles)?;
        HypermapCollection::new(sigma, alpha).map_err(|e| ParseError {
            line: 0,
            col: 0,
            msg: e.to_string(),
        })
    }
}

/// Renders a collection in the file grammar; `parse` of the output gives the
/// same canonicalized document back.
pub fn render(h: &HypermapCollection) -> String {
    format!("n: {}\nsigma: {}\nalpha: {}\n", h.n(), h.sigma(), h.alpha())
}
