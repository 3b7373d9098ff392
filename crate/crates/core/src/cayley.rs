//! Plain-text Cayley table format (`.cay`).
//!
//! ```text
//! 3
//! 0 0 0
//! 0 2 0
//! 0 0 0
//! label 1 a
//! label 2 a^2
//! ```
//!
//! Line 1 is the order `n`, followed by `n` rows of `n` whitespace-separated
//! 0-based indices (row `a`, column `b` holds `ab`). Optional trailing
//! `label <index> <string>` lines name elements; blank lines are ignored.

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Parsed table and labels before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyText {
    pub rows: Vec<Vec<usize>>,
    pub labels: Vec<(usize, String)>,
}

pub fn parse_text(text: &str) -> Result<CayleyText> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::Parse {
        line: ln,
        message: format!("expected element count, found `{first}`"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: ln,
            message: "element count must be positive".into(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (ln, line) = lines.next().ok_or(Error::Parse {
            line: ln + r + 1,
            message: format!("missing row {r}"),
        })?;
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: ln,
                    message: format!("bad entry `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse {
                line: ln,
                message: format!("ragged row: {} entries, expected {n}", row.len()),
            });
        }
        if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::IndexOutOfRange {
                row: r,
                col: c,
                value: v,
                order: n,
            });
        }
        rows.push(row);
    }
    let mut labels = Vec::new();
    for (ln, line) in lines {
        labels.push(parse_label_line(ln, line, n)?);
    }
    Ok(CayleyText { rows, labels })
}

pub(crate) fn parse_label_line(ln: usize, line: &str, n: usize) -> Result<(usize, String)> {
    let bad = |message: String| Error::Parse { line: ln, message };
    let rest = line
        .strip_prefix("label")
        .ok_or_else(|| bad(format!("unexpected trailing line `{line}`")))?
        .trim_start();
    let (idx, name) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let idx: usize = idx.parse().map_err(|_| bad(format!("bad label index `{idx}`")))?;
    if idx >= n {
        return Err(bad(format!("label index {idx} out of range")));
    }
    Ok((idx, name.trim().to_string()))
}

/// Parses label-only text (`label <index> <string>` per line), as used by
/// the sidecar files written next to cached tables.
pub fn parse_labels(text: &str, n: usize) -> Result<Vec<(usize, String)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_label_line(i + 1, l.trim(), n))
        .collect()
}

/// Parses and validates a `.cay` document.
pub fn parse(text: &str) -> Result<Semigroup> {
    let doc = parse_text(text)?;
    let s = Semigroup::validate(&doc.rows)?;
    Ok(apply_labels(s, &doc.labels))
}

pub fn apply_labels(s: Semigroup, labels: &[(usize, String)]) -> Semigroup {
    if labels.is_empty() {
        return s;
    }
    let mut names: Vec<String> = match s.labels() {
        Some(l) => l.to_vec(),
        None => (0..s.order()).map(|i| i.to_string()).collect(),
    };
    for (i, name) in labels {
        names[*i] = name.clone();
    }
    s.with_labels(names)
}

/// Serializes the table, optionally with `label` lines.
pub fn to_text(s: &Semigroup, with_labels: bool) -> String {
    let mut out = String::new();
    out.push_str(&s.order().to_string());
    out.push('\n');
    for a in 0..s.order() {
        let row: Vec<String> = s.row(a).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if with_labels {
        out.push_str(&labels_text(s));
    }
    out
}

pub fn labels_text(s: &Semigroup) -> String {
    let mut out = String::new();
    if let Some(labels) = s.labels() {
        for (i, l) in labels.iter().enumerate() {
            out.push_str(&format!("label {i} {l}\n"));
        }
    }
    out
}
