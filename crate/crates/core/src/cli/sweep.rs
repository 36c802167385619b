//! Cross-module oracle checks over a corpus file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::multiplicity_at_one;
use crate::classify::pham_matrix;
use crate::error::{Error, Result};
use crate::exponents::{kappa, milnor_number, ExponentList};
use crate::floer::maslov_principal;
use crate::homology::{randell_homology, smith_homology};
use crate::mec::{mec_coprime, mec_general, window_oracle};
use crate::milnor::alexander_polynomial;

/// Largest Milnor number checked against the Smith form and for Pham symmetry.
pub const MATRIX_LIMIT: u64 = 60;
/// Largest Milnor number for which the Alexander polynomial is expanded.
pub const POLYNOMIAL_LIMIT: u64 = 20_000;
/// Largest lcm for the window oracle (it builds pages out to `10·lcm`).
pub const WINDOW_LCM_LIMIT: u64 = 420;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Smith,
    Kappa,
    Pham,
    MecCoprime,
    MecWindow,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Smith,
        Check::Kappa,
        Check::Pham,
        Check::MecCoprime,
        Check::MecWindow,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Smith => "smith",
            Check::Kappa => "kappa",
            Check::Pham => "pham",
            Check::MecCoprime => "mec-coprime",
            Check::MecWindow => "mec-window",
        }
    }

    /// `all`, or a comma-separated list of check names.
    pub fn parse_list(spec: &str) -> Result<Vec<Check>> {
        if spec.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut out: Vec<Check> = spec
            .split(',')
            .map(|t| {
                let t = t.trim();
                Check::ALL
                    .into_iter()
                    .find(|c| c.name() == t)
                    .ok_or_else(|| Error::Validation(format!("unknown check {t:?}")))
            })
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "FAIL",
            Outcome::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LineReport {
    pub line: usize,
    pub exponents: ExponentList,
    pub results: Vec<(Check, Outcome)>,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub checks: Vec<Check>,
    pub lines: Vec<LineReport>,
}

impl SweepReport {
    pub fn count(&self, tag: &str) -> usize {
        self.lines
            .iter()
            .flat_map(|l| &l.results)
            .filter(|(_, o)| o.tag() == tag)
            .count()
    }

    pub fn failed(&self) -> bool {
        self.count("FAIL") > 0
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .lines
            .iter()
            .map(|l| l.exponents.to_string().chars().count())
            .max()
            .unwrap_or(9)
            .max(9);
        write!(f, "{:>5}  {:<width$}", "line", "exponents")?;
        for c in &self.checks {
            write!(f, "  {:<11}", c.name())?;
        }
        writeln!(f)?;
        for l in &self.lines {
            let label = l.exponents.to_string();
            let pad = width - label.chars().count();
            write!(f, "{:>5}  {label}{}", l.line, " ".repeat(pad))?;
            for (_, o) in &l.results {
                write!(f, "  {:<11}", o.tag())?;
            }
            writeln!(f)?;
            for (c, o) in &l.results {
                if let Outcome::Fail(why) = o {
                    writeln!(f, "       {}: {why}", c.name())?;
                }
            }
        }
        write!(
            f,
            "{} lists: {} pass, {} fail, {} skip",
            self.lines.len(),
            self.count("pass"),
            self.count("FAIL"),
            self.count("skip")
        )
    }
}

/// Resolves a corpus path, falling back to `BRIESKORN_CORPUS_DIR` for
/// relative paths that do not exist.
pub fn resolve_corpus(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os("BRIESKORN_CORPUS_DIR") {
        Some(dir) => Path::new(&dir).join(path),
        None => path.to_path_buf(),
    }
}

/// `(line number, list)` for every non-comment line.
pub fn parse_corpus(text: &str, source: &str) -> Result<Vec<(usize, ExponentList)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let a = ExponentList::from_str(body).map_err(|e| {
            let detail = match e {
                Error::Validation(msg) => msg,
                other => other.to_string(),
            };
            Error::Validation(format!("{source}:{}: {detail}", i + 1))
        })?;
        out.push((i + 1, a));
    }
    Ok(out)
}

pub fn read_corpus(path: &Path) -> Result<Vec<(usize, ExponentList)>> {
    let resolved = resolve_corpus(path);
    let text = std::fs::read_to_string(&resolved)
        .map_err(|e| Error::Validation(format!("{}: {e}", resolved.display())))?;
    parse_corpus(&text, &resolved.display().to_string())
}

/// Runs the checks on every list in parallel; lines keep their input order.
pub fn sweep(entries: &[(usize, ExponentList)], checks: &[Check]) -> SweepReport {
    let lines = entries
        .par_iter()
        .map(|(line, a)| LineReport {
            line: *line,
            exponents: a.clone(),
            results: checks.iter().map(|&c| (c, run_check(c, a))).collect(),
        })
        .collect();
    SweepReport {
        checks: checks.to_vec(),
        lines,
    }
}

fn run_check(check: Check, a: &ExponentList) -> Outcome {
    match try_check(check, a) {
        Ok(o) => o,
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn fail(msg: String) -> Result<Outcome> {
    Ok(Outcome::Fail(msg))
}

fn try_check(check: Check, a: &ExponentList) -> Result<Outcome> {
    let mu = milnor_number(a);
    match check {
        Check::Smith => {
            if a.len() < 3 || mu > BigInt::from(MATRIX_LIMIT) {
                return Ok(Outcome::Skip);
            }
            let (r, s) = (randell_homology(a)?, smith_homology(a)?);
            if r == s {
                Ok(Outcome::Pass)
            } else {
                fail(format!("Randell gives {r}, Smith form gives {s}"))
            }
        }
        Check::Kappa => {
            if mu > BigInt::from(POLYNOMIAL_LIMIT) {
                return Ok(Outcome::Skip);
            }
            let delta = alexander_polynomial(a)?;
            let k = kappa(a, a.full());
            let mult = BigInt::from(multiplicity_at_one(&delta)?);
            let degree = BigInt::from(delta.degree().unwrap_or(0));
            let symmetric = delta.reversed() == delta || delta.reversed() == delta.neg();
            if k != mult {
                fail(format!("κ = {k} but (t - 1) divides Δ {mult} times"))
            } else if degree != mu {
                fail(format!("deg Δ = {degree} but μ = {mu}"))
            } else if !symmetric {
                fail("Δ is not symmetric up to sign".into())
            } else {
                Ok(Outcome::Pass)
            }
        }
        Check::Pham => {
            if mu > BigInt::from(MATRIX_LIMIT) {
                return Ok(Outcome::Skip);
            }
            let m = pham_matrix(a)?;
            let ok = if a.n().is_multiple_of(2) {
                m.is_symmetric()
            } else {
                m.is_antisymmetric()
            };
            if ok {
                Ok(Outcome::Pass)
            } else {
                fail("intersection matrix has the wrong symmetry".into())
            }
        }
        Check::MecCoprime => {
            if !a.pairwise_coprime() || maslov_principal(a).is_zero() {
                return Ok(Outcome::Skip);
            }
            let (c, g) = (mec_coprime(a)?, mec_general(a)?);
            if c == g {
                Ok(Outcome::Pass)
            } else {
                fail(format!("closed form {c}, general formula {g}"))
            }
        }
        Check::MecWindow => {
            if maslov_principal(a).is_zero() || a.lcm() > WINDOW_LCM_LIMIT {
                return Ok(Outcome::Skip);
            }
            let w = window_oracle(a)?;
            if w.passed {
                Ok(Outcome::Pass)
            } else {
                let worst = w
                    .samples
                    .iter()
                    .map(|(n, d)| format!("N={n}: {d}"))
                    .collect::<Vec<_>>()
                    .join(", ");
                fail(format!(
                    "window estimate exceeds C/N with C = {}: {worst}",
                    w.constant
                ))
            }
        }
    }
}
