//! Plain-text rendering of E¹ pages, and the inverse parser.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::floer::E1Page;

/// Coordinates used for the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axes {
    /// Raw return time p and row q, total degree p + q.
    Page,
    /// Columns renumbered by their rank among nonempty columns (x), rows
    /// `y = total degree - x`.
    Compressed,
}

impl Axes {
    fn header(&self) -> &'static str {
        match self {
            Axes::Page => "q\\p",
            Axes::Compressed => "y\\x",
        }
    }
}

/// Rank grid with rows in decreasing order and only nonempty columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsciiGrid {
    pub axes: Axes,
    cells: BTreeMap<(i64, i64), BigInt>,
}

impl AsciiGrid {
    pub fn from_page(page: &E1Page, axes: Axes) -> Self {
        let cells = match axes {
            Axes::Page => page
                .entries()
                .iter()
                .map(|(&(p, q), r)| ((p as i64, q), r.clone()))
                .collect(),
            Axes::Compressed => {
                let first = if page.columns().first() == Some(&0) {
                    0
                } else {
                    1
                };
                let ordinal: BTreeMap<u64, i64> = page
                    .columns()
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| (p, i as i64 + first))
                    .collect();
                page.entries()
                    .iter()
                    .map(|(&(p, q), r)| {
                        let x = ordinal[&p];
                        ((x, p as i64 + q - x), r.clone())
                    })
                    .collect()
            }
        };
        AsciiGrid { axes, cells }
    }

    /// `(column, row) ↦ rank`.
    pub fn cells(&self) -> &BTreeMap<(i64, i64), BigInt> {
        &self.cells
    }

    pub fn render(&self) -> String {
        let cols: BTreeSet<i64> = self.cells.keys().map(|&(c, _)| c).collect();
        let (Some(&lo), Some(&hi)) = (
            self.cells.keys().map(|(_, r)| r).min(),
            self.cells.keys().map(|(_, r)| r).max(),
        ) else {
            return format!("{} | (empty)\n", self.axes.header());
        };
        let width = cols
            .iter()
            .map(|c| c.to_string().len())
            .chain(self.cells.values().map(|r| r.to_string().len()))
            .max()
            .unwrap_or(1);
        let label_w = [
            self.axes.header().len(),
            lo.to_string().len(),
            hi.to_string().len(),
        ]
        .into_iter()
        .max()
        .unwrap_or(1);
        let mut out = format!("{:>label_w$} |", self.axes.header());
        for c in &cols {
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
        out.push_str(&format!(
            "{}-+{}\n",
            "-".repeat(label_w),
            "-".repeat((width + 1) * cols.len())
        ));
        for row in (lo..=hi).rev() {
            out.push_str(&format!("{row:>label_w$} |"));
            for &c in &cols {
                let cell = self
                    .cells
                    .get(&(c, row))
                    .map_or(".".to_string(), |r| r.to_string());
                out.push_str(&format!(" {cell:>width$}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad =
            |line: usize, what: &str| Error::Validation(format!("grid line {}: {what}", line + 1));
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::Validation("empty grid".into()))?;
        let (corner, labels) = header
            .split_once('|')
            .ok_or_else(|| bad(hl, "missing '|'"))?;
        let axes = match corner.trim() {
            "q\\p" => Axes::Page,
            "y\\x" => Axes::Compressed,
            other => return Err(bad(hl, &format!("unknown axes {other:?}"))),
        };
        if labels.trim() == "(empty)" {
            return Ok(AsciiGrid {
                axes,
                cells: BTreeMap::new(),
            });
        }
        let cols: Vec<i64> = labels
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(hl, "bad column label")))
            .collect::<Result<_>>()?;
        let mut cells = BTreeMap::new();
        for (i, line) in lines {
            if line.trim().chars().all(|c| c == '-' || c == '+') {
                continue;
            }
            let (label, body) = line.split_once('|').ok_or_else(|| bad(i, "missing '|'"))?;
            let row: i64 = label.trim().parse().map_err(|_| bad(i, "bad row label"))?;
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != cols.len() {
                return Err(bad(i, "wrong number of cells"));
            }
            for (&c, t) in cols.iter().zip(toks) {
                if t != "." {
                    let r: BigInt = t.parse().map_err(|_| bad(i, "bad rank"))?;
                    cells.insert((c, row), r);
                }
            }
        }
        Ok(AsciiGrid { axes, cells })
    }
}
