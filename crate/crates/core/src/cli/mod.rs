//! Command-line front end.

pub mod grid;
pub mod json;
pub mod sweep;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::arith::{multiplicity_at_one, Rational};
use crate::classify::{almost_contact_class, classify_sphere, recognize, SmoothClass};
use crate::error::{Error, Result};
use crate::exponents::{kappa, milnor_number, ExponentList};
use crate::floer::{
    e1_page, index_positivity, maslov_principal, orderability_certificate, sh_betti,
    sh_nonvanishing_by_mec, Orderability, ShBetti, Theory,
};
use crate::homology::{
    equivariant_homology, full_homology, randell_report, realize_spin5, AbelianGroup, GradedRanks,
};
use crate::mec::{
    mec_general, mec_invariance_flag, mec_sum, realize_mec, MecInvariance, MecSummand,
};
use crate::milnor::{alexander_polynomial, determinant_at_minus_one, weil_zeta};

use grid::{AsciiGrid, Axes};
use json::{envelope, graded, group, list, render, s};
use sweep::Check;

/// Exit status plus captured output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "brieskorn",
    version,
    about = "Invariants of Brieskorn manifolds Σ(a_0,...,a_n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Exps {
    /// Exponents a_0 ... a_n (whitespace or comma separated).
    #[arg(required = true, value_name = "A")]
    exps: Vec<String>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology of the link.
    Homology(Exps),
    /// Rational S¹-equivariant homology of the link.
    Equivariant(Exps),
    /// Alexander polynomial and monodromy zeta exponents.
    Alexander(Exps),
    /// Homotopy-sphere test and smooth classification.
    Sphere(Exps),
    /// Massey group, almost contact class, orderability.
    Classical(Exps),
    /// Named manifolds recognizable from the exponents.
    Recognize(Exps),
    /// E¹ page of the Morse–Bott spectral sequence.
    Ss {
        #[command(flatten)]
        exps: Exps,
        /// `sh+` (positive S¹-equivariant) or `sh`.
        #[arg(long, default_value = "sh+")]
        theory: String,
        /// Total degrees shown: [-M, M].
        #[arg(long, default_value_t = 10, value_name = "M")]
        window: i64,
        /// Last column to include.
        #[arg(long, value_name = "P")]
        cutoff: Option<u64>,
        /// Number nonempty columns 1, 2, ... and plot total degree minus column.
        #[arg(long)]
        compressed: bool,
    },
    /// Mean Euler characteristic of the Milnor fiber.
    Mec(Exps),
    /// Mean Euler characteristic of a boundary connected sum; separate
    /// summands with ';'. A summand that is a single rational is taken as a
    /// known value.
    MecSum {
        #[arg(required = true, allow_hyphen_values = true, value_name = "SUMMANDS")]
        parts: Vec<String>,
        /// Complex dimension n (needed when every summand is a value).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Connected sum of Brieskorn 5-manifolds with a given mean Euler characteristic.
    RealizeMec {
        #[arg(allow_hyphen_values = true, value_name = "P/Q")]
        value: String,
        #[arg(long)]
        json: bool,
    },
    /// Spin 5-manifold with H_2 = Z^m + sum of (Z_q + Z_q), as a connected sum.
    RealizeSpin5 {
        #[arg(long, default_value_t = 0, value_name = "M")]
        rank: usize,
        /// Prime powers q, comma separated.
        #[arg(long, value_delimiter = ',', value_name = "Q")]
        torsion: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check every list of a corpus file.
    Sweep {
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        /// `all` or a comma-separated subset of smith,kappa,pham,mec-coprime,mec-window.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(Reply::Done(out)) => Outcome::ok(out),
        Ok(Reply::Failed(out, err)) => Outcome {
            code: 2,
            stdout: out,
            stderr: err,
        },
        Err(e) => {
            let code = if e.is_internal() { 2 } else { 1 };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

enum Reply {
    Done(String),
    /// Output was produced, but a check failed.
    Failed(String, String),
}

fn parse_exps(tokens: &[String]) -> Result<ExponentList> {
    ExponentList::from_str(&tokens.join(" "))
}

fn dispatch(command: Command) -> Result<Reply> {
    let out = match command {
        Command::Homology(e) => homology(&parse_exps(&e.exps)?, e.json)?,
        Command::Equivariant(e) => equivariant(&parse_exps(&e.exps)?, e.json),
        Command::Alexander(e) => alexander(&parse_exps(&e.exps)?, e.json)?,
        Command::Sphere(e) => sphere(&parse_exps(&e.exps)?, e.json)?,
        Command::Classical(e) => classical(&parse_exps(&e.exps)?, e.json)?,
        Command::Recognize(e) => recognize_cmd(&parse_exps(&e.exps)?, e.json),
        Command::Ss {
            exps,
            theory,
            window,
            cutoff,
            compressed,
        } => {
            let theory = Theory::from_str(&theory)?;
            let axes = if compressed {
                Axes::Compressed
            } else {
                Axes::Page
            };
            ss(
                &parse_exps(&exps.exps)?,
                theory,
                window,
                cutoff,
                axes,
                exps.json,
            )?
        }
        Command::Mec(e) => mec(&parse_exps(&e.exps)?, e.json)?,
        Command::MecSum { parts, n, json } => {
            let (parts, n, json) = split_trailing_flags(parts, n, json)?;
            mec_sum_cmd(&parts, n, json)?
        }
        Command::RealizeMec { value, json } => realize_mec_cmd(&value, json)?,
        Command::RealizeSpin5 {
            rank,
            torsion,
            json,
        } => realize_spin5_cmd(rank, &torsion, json)?,
        Command::Sweep {
            corpus,
            check,
            json,
        } => return sweep_cmd(&corpus, &check, json),
    };
    Ok(Reply::Done(out))
}

fn homology_groups(a: &ExponentList) -> Result<(Vec<(usize, AbelianGroup)>, Option<bool>)> {
    match a.n() {
        1 => {
            let c = crate::arith::gcd_u64(a.exponents()[0], a.exponents()[1]) as usize;
            let c = if a.has_smooth_point() { 1 } else { c };
            Ok((
                vec![(0, AbelianGroup::free(c)), (1, AbelianGroup::free(c))],
                None,
            ))
        }
        2 => {
            let report = randell_report(a)?;
            let h1 = report.smith.clone().unwrap_or_else(|| report.group.clone());
            let free = h1.free_rank();
            Ok((
                vec![
                    (0, AbelianGroup::free(1)),
                    (1, h1),
                    (2, AbelianGroup::free(free)),
                    (3, AbelianGroup::free(1)),
                ],
                Some(report.smith.is_none()),
            ))
        }
        _ => Ok((full_homology(a)?.into_iter().collect(), None)),
    }
}

fn homology(a: &ExponentList, as_json: bool) -> Result<String> {
    let (groups, unverified) = homology_groups(a)?;
    if as_json {
        let mut m = envelope("homology", Some(a));
        m.insert("dimension".into(), s(a.link_dimension()));
        m.insert(
            "groups".into(),
            Value::Object(
                groups
                    .iter()
                    .map(|(d, g)| (d.to_string(), group(g)))
                    .collect(),
            ),
        );
        if let Some(flag) = unverified {
            m.insert("unverified_convention".into(), Value::Bool(flag));
        }
        return Ok(render(m));
    }
    let mut out = format!("{a}, dimension {}\n", a.link_dimension());
    for (d, g) in &groups {
        writeln!(out, "H_{d} = {g}").unwrap();
    }
    if unverified == Some(true) {
        out.push_str(
            "note: H_1 of a 3-manifold from the combinatorial formula, not cross-checked\n",
        );
    }
    Ok(out)
}

fn equivariant(a: &ExponentList, as_json: bool) -> String {
    let g = equivariant_homology(a);
    if as_json {
        let mut m = envelope("equivariant", Some(a));
        m.insert("ranks".into(), graded(&g));
        m.insert("euler_characteristic".into(), s(g.euler_characteristic()));
        return render(m);
    }
    let mut out = format!("H^S1_*({a}; Q)\n");
    for (d, r) in g.iter() {
        writeln!(out, "degree {d}: {r}").unwrap();
    }
    out
}

fn alexander(a: &ExponentList, as_json: bool) -> Result<String> {
    let delta = alexander_polynomial(a)?;
    let zeta = weil_zeta(a)?;
    let mu = milnor_number(a);
    let k = kappa(a, a.full());
    let mult = multiplicity_at_one(&delta)?;
    let det = determinant_at_minus_one(a)?;
    if as_json {
        let mut m = envelope("alexander", Some(a));
        m.insert("polynomial".into(), s(&delta));
        m.insert("coefficients".into(), list(delta.coeffs()));
        m.insert("milnor_number".into(), s(&mu));
        m.insert("kappa".into(), s(&k));
        m.insert("multiplicity_at_one".into(), s(mult));
        m.insert("det_at_minus_one".into(), s(&det));
        m.insert(
            "zeta_exponents".into(),
            Value::Object(zeta.nonzero().map(|(d, r)| (d.to_string(), s(r))).collect()),
        );
        return Ok(render(m));
    }
    let r: Vec<String> = zeta
        .nonzero()
        .map(|(d, r)| format!("r_{d} = {r}"))
        .collect();
    Ok(format!(
        "Δ(t) = {delta}\nmilnor number: {mu}\nkappa: {k}\n(t - 1) multiplicity: {mult}\nΔ(-1) = {det}\nzeta exponents: {}\n",
        r.join(", ")
    ))
}

fn sphere(a: &ExponentList, as_json: bool) -> Result<String> {
    let v = classify_sphere(a)?;
    if as_json {
        let mut m = envelope("sphere", Some(a));
        m.insert(
            "homeomorphic_sphere".into(),
            Value::Bool(v.homeomorphic_sphere),
        );
        m.insert("reason".into(), s(v.reason.tag()));
        if let Some(c) = &v.smooth_class {
            m.insert("smooth_class".into(), s(c.tag()));
            if let SmoothClass::BpClass {
                class,
                signature_sign,
            } = c
            {
                m.insert("class".into(), s(class));
                m.insert("signature_sign".into(), s(signature_sign));
            }
        }
        if let Some(o) = &v.bp_order {
            m.insert("bp_order".into(), s(o));
        }
        if let Some(t) = &v.signature {
            m.insert("signature".into(), s(t));
        }
        if let Some((d, r)) = &v.determinant {
            m.insert("determinant".into(), s(d));
            m.insert("determinant_mod8".into(), s(r));
        }
        return Ok(render(m));
    }
    let dim = a.link_dimension();
    let mut out = if v.homeomorphic_sphere {
        format!(
            "{a}: homeomorphic to S^{dim} ({})\n",
            v.reason.tag().replace('_', " ")
        )
    } else {
        format!(
            "{a}: not a homotopy sphere ({})\n",
            v.reason.tag().replace('_', " ")
        )
    };
    match &v.smooth_class {
        Some(SmoothClass::Standard) => out.push_str("smooth class: standard\n"),
        Some(SmoothClass::Kervaire) => out.push_str("smooth class: Kervaire sphere\n"),
        Some(SmoothClass::BpClass {
            class,
            signature_sign,
        }) => {
            let order = v
                .bp_order
                .as_ref()
                .map(|o| o.to_string())
                .unwrap_or_default();
            writeln!(
                out,
                "smooth class: {class} in bP (order {order}), signature sign {signature_sign}"
            )
            .unwrap();
        }
        None => {}
    }
    if let Some(t) = &v.signature {
        writeln!(out, "signature: {t}").unwrap();
    }
    if let Some((d, r)) = &v.determinant {
        writeln!(out, "|Δ(-1)| = {d} ≡ {r} (mod 8)").unwrap();
    }
    Ok(out)
}

fn classical(a: &ExponentList, as_json: bool) -> Result<String> {
    let c = almost_contact_class(a)?;
    let order = orderability_certificate(a);
    let nonvanishing = match sh_nonvanishing_by_mec(a) {
        Ok(b) => Some(b),
        Err(Error::MecUndefined(_)) => None,
        Err(e) => return Err(e),
    };
    let (orderable, order_reason) = match &order {
        Orderability::Orderable { reason } => (true, reason.clone()),
        Orderability::NoCertificate { reason, .. } => (false, reason.clone()),
    };
    if as_json {
        let mut m = envelope("classical", Some(a));
        m.insert("massey_group".into(), s(&c.group));
        m.insert("almost_contact_class".into(), s(&c.value));
        m.insert("in_scope".into(), Value::Bool(c.in_scope));
        m.insert(
            "homeomorphic_sphere".into(),
            Value::Bool(c.homeomorphic_sphere),
        );
        m.insert("orderable".into(), Value::Bool(orderable));
        m.insert("orderability_reason".into(), s(order_reason));
        if let Some(b) = nonvanishing {
            m.insert("sh_nonvanishing".into(), Value::Bool(b));
        }
        return Ok(render(m));
    }
    let scope = if c.in_scope {
        ""
    } else {
        " (outside the standard-sphere case; literal value)"
    };
    let mut out = format!(
        "Massey group: {}\nalmost contact class: {}{scope}\norderable: {} ({order_reason})\n",
        c.group,
        c.value,
        if orderable { "yes" } else { "no certificate" }
    );
    match nonvanishing {
        Some(true) => out.push_str("SH(W) ≠ 0: yes (mean Euler characteristic test)\n"),
        Some(false) => out.push_str("SH(W) ≠ 0: inconclusive\n"),
        None => out.push_str("SH(W) ≠ 0: mean Euler characteristic undefined\n"),
    }
    Ok(out)
}

fn recognize_cmd(a: &ExponentList, as_json: bool) -> String {
    let tags = recognize(a);
    let pos = index_positivity(a);
    if as_json {
        let mut m = envelope("recognize", Some(a));
        m.insert(
            "tags".into(),
            Value::Array(
                tags.iter()
                    .map(|t| {
                        let mut o = Map::new();
                        o.insert("kind".into(), s(t.key()));
                        o.insert("text".into(), s(t));
                        Value::Object(o)
                    })
                    .collect(),
            ),
        );
        m.insert("index_positivity".into(), s(pos.tag()));
        return render(m);
    }
    let mut out = format!("{a}\n");
    if tags.is_empty() {
        out.push_str("no named pattern\n");
    }
    for t in &tags {
        writeln!(out, "{t}").unwrap();
    }
    writeln!(out, "index {}", pos.tag()).unwrap();
    out
}

fn ss(
    a: &ExponentList,
    theory: Theory,
    window: i64,
    cutoff: Option<u64>,
    axes: Axes,
    as_json: bool,
) -> Result<String> {
    if window < 0 {
        return Err(Error::Validation(format!(
            "window must be non-negative, got {window}"
        )));
    }
    let page = e1_page(a, theory, window, cutoff)?;
    let betti = match sh_betti(a, theory, window, cutoff) {
        Ok(b) => Some(b),
        Err(Error::Undetermined(_)) => None,
        Err(e) => return Err(e),
    };
    let grid = AsciiGrid::from_page(&page, axes);
    if as_json {
        let mut m = envelope("ss", Some(a));
        m.insert("theory".into(), s(theory.tag()));
        m.insert("window".into(), list([page.window.0, page.window.1]));
        m.insert("column_cutoff".into(), s(page.column_cutoff));
        m.insert("complete".into(), Value::Bool(page.complete));
        m.insert("degenerate".into(), s(page.degenerate.tag()));
        m.insert("maslov_principal".into(), s(maslov_principal(a)));
        m.insert(
            "entries".into(),
            Value::Array(
                page.entries()
                    .iter()
                    .map(|(&(p, q), r)| {
                        let mut o = Map::new();
                        o.insert("p".into(), s(p));
                        o.insert("q".into(), s(q));
                        o.insert("rank".into(), s(r));
                        Value::Object(o)
                    })
                    .collect(),
            ),
        );
        match &betti {
            Some(ShBetti::Ranks(r)) => {
                m.insert("betti".into(), graded(r));
            }
            Some(ShBetti::Unbounded(u)) => {
                m.insert("unbounded_degrees".into(), list(&u.degrees));
            }
            None => {}
        }
        return Ok(render(m));
    }
    let mut out = format!(
        "E1 page of {} for {a}, total degrees [{}, {}], columns up to {}{}\n",
        if theory == Theory::Sh { "SH" } else { "SH+,S1" },
        page.window.0,
        page.window.1,
        page.column_cutoff,
        if page.complete { "" } else { " (truncated)" }
    );
    out.push_str(&grid.render());
    writeln!(out, "degenerate at E1: {}", page.degenerate.tag()).unwrap();
    match &betti {
        Some(ShBetti::Ranks(r)) => {
            out.push_str("Betti numbers:");
            if r.is_empty() {
                out.push_str(" none in the window");
            }
            for (d, k) in r.iter() {
                write!(out, " b_{d}={k}").unwrap();
            }
            out.push('\n');
        }
        Some(ShBetti::Unbounded(u)) => {
            let degrees: Vec<String> = u.degrees.iter().map(|d| d.to_string()).collect();
            writeln!(
                out,
                "unbounded growth with the cutoff in degrees {}",
                degrees.join(", ")
            )
            .unwrap();
        }
        None => out.push_str("Betti numbers: not determined by E1\n"),
    }
    Ok(out)
}

fn mec(a: &ExponentList, as_json: bool) -> Result<String> {
    let chi = mec_general(a)?;
    let flag = mec_invariance_flag(a);
    if as_json {
        let mut m = envelope("mec", Some(a));
        m.insert("chi_m".into(), s(&chi));
        m.insert("invariance".into(), s(flag.tag()));
        m.insert("contact_invariant".into(), Value::Bool(flag.is_invariant()));
        m.insert("maslov_principal".into(), s(maslov_principal(a)));
        m.insert("index_positivity".into(), s(index_positivity(a).tag()));
        return Ok(render(m));
    }
    let note = match flag {
        MecInvariance::Invariant => "yes",
        _ => "no, filling only",
    };
    Ok(format!("{chi} (contact invariant: {note})\n"))
}

/// Hyphen values are allowed among the summands, so flags given after them
/// arrive as positionals.
fn split_trailing_flags(
    parts: Vec<String>,
    mut n: Option<usize>,
    mut json: bool,
) -> Result<(Vec<String>, Option<usize>, bool)> {
    let mut rest = Vec::new();
    let mut it = parts.into_iter();
    while let Some(t) = it.next() {
        match t.as_str() {
            "--json" => json = true,
            "--n" => {
                let v = it
                    .next()
                    .ok_or_else(|| Error::Validation("--n needs a value".into()))?;
                n = Some(
                    v.parse()
                        .map_err(|_| Error::Validation(format!("--n: not a dimension: {v:?}")))?,
                );
            }
            _ => match t.strip_prefix("--n=") {
                Some(v) => {
                    n =
                        Some(v.parse().map_err(|_| {
                            Error::Validation(format!("--n: not a dimension: {v:?}"))
                        })?)
                }
                None => rest.push(t),
            },
        }
    }
    Ok((rest, n, json))
}

fn parse_summands(parts: &[String]) -> Result<Vec<MecSummand>> {
    let joined = parts.join(" ");
    let groups: Vec<&str> = joined.split(';').map(str::trim).collect();
    groups
        .iter()
        .map(|g| {
            let tokens: Vec<&str> = g
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect();
            match tokens.as_slice() {
                [] => Err(Error::Validation("empty summand between ';'".into())),
                [one] => Rational::from_str(one).map(MecSummand::Value).map_err(|_| {
                    Error::Validation(format!("summand {one:?} is neither a list nor a rational"))
                }),
                _ => Ok(MecSummand::List(ExponentList::from_str(g)?)),
            }
        })
        .collect()
}

fn mec_sum_cmd(parts: &[String], n: Option<usize>, as_json: bool) -> Result<String> {
    let summands = parse_summands(parts)?;
    let list_n = summands.iter().find_map(|s| match s {
        MecSummand::List(a) => Some(a.n()),
        MecSummand::Value(_) => None,
    });
    let n = match (n, list_n) {
        (Some(n), _) => n,
        (None, Some(n)) => n,
        (None, None) => {
            return Err(Error::Validation(
                "every summand is a value; pass --n".into(),
            ))
        }
    };
    let total = mec_sum(&summands, n)?;
    if as_json {
        let mut m = envelope("mec-sum", None);
        m.insert("n".into(), s(n));
        m.insert("chi_m".into(), s(&total));
        m.insert(
            "summands".into(),
            Value::Array(
                summands
                    .iter()
                    .map(|x| match x {
                        MecSummand::List(a) => list(a.exponents()),
                        MecSummand::Value(v) => s(v),
                    })
                    .collect(),
            ),
        );
        return Ok(render(m));
    }
    Ok(format!("{total}\n"))
}

fn realize_mec_cmd(value: &str, as_json: bool) -> Result<String> {
    let x = Rational::from_str(value.trim())
        .map_err(|_| Error::Validation(format!("not a rational number: {value:?}")))?;
    let recipe = realize_mec(&x)?;
    let check = mec_sum(
        &recipe
            .expanded()
            .into_iter()
            .map(MecSummand::List)
            .collect::<Vec<_>>(),
        recipe.n(),
    )?;
    if check != x {
        return Err(Error::Consistency(format!(
            "recipe {recipe} has mean Euler characteristic {check}, not {x}"
        )));
    }
    if as_json {
        let mut m = envelope("realize-mec", None);
        m.insert("target".into(), s(&x));
        m.insert("chi_m".into(), s(&check));
        m.insert("n".into(), s(recipe.n()));
        m.insert("summand_count".into(), s(recipe.summand_count()));
        m.insert(
            "terms".into(),
            Value::Array(
                recipe
                    .terms()
                    .iter()
                    .map(|(a, k)| {
                        let mut o = Map::new();
                        o.insert("exponents".into(), list(a.exponents()));
                        o.insert("count".into(), s(k));
                        Value::Object(o)
                    })
                    .collect(),
            ),
        );
        return Ok(render(m));
    }
    Ok(format!("{recipe}\nchi_m = {check} (verified)\n"))
}

fn realize_spin5_cmd(rank: usize, torsion: &[u64], as_json: bool) -> Result<String> {
    let summands = realize_spin5(rank, torsion)?;
    let mut total = AbelianGroup::trivial();
    for a in &summands {
        total = total.direct_sum(&crate::homology::randell_homology(a)?);
    }
    let mut want = AbelianGroup::free(rank);
    for &q in torsion {
        want = want.direct_sum(&AbelianGroup::new(
            0,
            vec![BigInt::from(q), BigInt::from(q)],
        ));
    }
    if total != want {
        return Err(Error::Consistency(format!(
            "recipe has H_2 = {total}, expected {want}"
        )));
    }
    let names: Vec<String> = summands.iter().map(|a| a.to_string()).collect();
    if as_json {
        let mut m = envelope("realize-spin5", None);
        m.insert(
            "summands".into(),
            Value::Array(summands.iter().map(|a| list(a.exponents())).collect()),
        );
        m.insert("h2".into(), group(&total));
        return Ok(render(m));
    }
    let body = if names.is_empty() {
        "S^5".to_string()
    } else {
        names.join(" # ")
    };
    Ok(format!("{body}\nH_2 = {total}\n"))
}

fn sweep_cmd(corpus: &std::path::Path, check: &str, as_json: bool) -> Result<Reply> {
    let checks = Check::parse_list(check)?;
    let entries = sweep::read_corpus(corpus)?;
    let report = sweep::sweep(&entries, &checks);
    let out = if as_json {
        let mut m = envelope("sweep", None);
        m.insert("checks".into(), list(checks.iter().map(|c| c.name())));
        m.insert(
            "entries".into(),
            Value::Array(
                report
                    .lines
                    .iter()
                    .map(|l| {
                        let mut o = Map::new();
                        o.insert("line".into(), s(l.line));
                        o.insert("exponents".into(), list(l.exponents.exponents()));
                        o.insert(
                            "results".into(),
                            Value::Object(
                                l.results
                                    .iter()
                                    .map(|(c, r)| (c.name().to_string(), s(r.tag())))
                                    .collect(),
                            ),
                        );
                        let failures: Map<String, Value> = l
                            .results
                            .iter()
                            .filter_map(|(c, r)| match r {
                                sweep::Outcome::Fail(why) => Some((c.name().to_string(), s(why))),
                                _ => None,
                            })
                            .collect();
                        if !failures.is_empty() {
                            o.insert("failures".into(), Value::Object(failures));
                        }
                        Value::Object(o)
                    })
                    .collect(),
            ),
        );
        let mut summary = Map::new();
        for tag in ["pass", "FAIL", "skip"] {
            summary.insert(tag.to_lowercase(), s(report.count(tag)));
        }
        m.insert("summary".into(), Value::Object(summary));
        render(m)
    } else {
        format!("{report}\n")
    };
    if report.failed() {
        Ok(Reply::Failed(
            out,
            format!("error: {} checks failed\n", report.count("FAIL")),
        ))
    } else {
        Ok(Reply::Done(out))
    }
}

/// Ranks in `[lo, hi]` as `degree: rank` lines; used by tests and docs.
pub fn format_ranks(g: &GradedRanks) -> String {
    g.iter().map(|(d, r)| format!("{d}: {r}\n")).collect()
}
