//! Orbit strata of the periodic Reeb flow, their Maslov indices and degree
//! shifts, E¹ pages of the Morse–Bott spectral sequences for `SH` and
//! `SH^{+,S^1}`, and the certificates read off from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::exponents::{fixed_locus, milnor_number, ExponentList, SubsetSelector};
use crate::homology::{
    equivariant_homology, filling_relative_homology, rational_betti, GradedRanks,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Symplectic homology.
    Sh,
    /// Positive part of S¹-equivariant symplectic homology.
    ShPlusS1,
}

impl Theory {
    pub fn tag(&self) -> &'static str {
        match self {
            Theory::Sh => "sh",
            Theory::ShPlusS1 => "sh+",
        }
    }
}

impl std::str::FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sh" | "SH" => Ok(Theory::Sh),
            "sh+" | "SH+" | "sh+s1" => Ok(Theory::ShPlusS1),
            other => Err(Error::Validation(format!(
                "unknown theory {other:?}; use sh or sh+"
            ))),
        }
    }
}

/// The Morse–Bott family `K(I_p)` of orbits with return time `2πp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStratum {
    pub period: u64,
    pub positions: SubsetSelector,
    pub exponents: ExponentList,
    /// Dimension `2|I_p| - 3` of the stratum.
    pub dim: i64,
    pub maslov: i64,
    /// `maslov - (|I_p| - 2)`, i.e. the Maslov index minus half the dimension
    /// of the orbit space.
    pub shift: i64,
}

fn to_i64(x: i128, what: &str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Domain(format!("{what} does not fit in 64 bits")))
}

/// `μ_P = 2 lcm (Σ 1/a_j - 1)`, the Maslov index of a principal orbit.
pub fn maslov_principal(a: &ExponentList) -> BigInt {
    let l = BigInt::from(a.lcm());
    let sum: BigInt = a.exponents().iter().map(|&x| &l / BigInt::from(x)).sum();
    BigInt::from(2) * (sum - l)
}

/// `μ_P` as an exact rational, `2 lcm (Σ 1/a_j - 1)`.
pub fn maslov_principal_rational(a: &ExponentList) -> Rational {
    let sum: Rational = a
        .exponents()
        .iter()
        .map(|&x| Rational::new(1.into(), x.into()))
        .sum();
    Rational::from_integer(BigInt::from(2 * a.lcm() as i128))
        * (sum - Rational::from_integer(1.into()))
}

/// Maslov index of the orbits with return time p:
/// `2 Σ_{I_p} p/a_j + 2 Σ_{j∉I_p} ⌊p/a_j⌋ + |I - I_p| - 2p`.
pub fn maslov_cover(a: &ExponentList, p: u64) -> Result<i64> {
    if fixed_locus(a, p)?.is_none() {
        return Err(Error::Domain(format!(
            "no orbits of {a} have return time {p}"
        )));
    }
    Ok(maslov_unchecked(a, p)?.0)
}

fn maslov_unchecked(a: &ExponentList, p: u64) -> Result<(i64, usize)> {
    let mut total: i128 = -2 * p as i128;
    let mut fixed = 0usize;
    for &x in a.exponents() {
        total += 2 * (p / x) as i128;
        if p.is_multiple_of(x) {
            fixed += 1;
        } else {
            total += 1;
        }
    }
    Ok((to_i64(total, "Maslov index")?, fixed))
}

/// The stratum at return time p, or `None` when fewer than two exponents
/// divide p.
pub fn orbit_stratum(a: &ExponentList, p: u64) -> Result<Option<OrbitStratum>> {
    let Some((positions, exponents)) = fixed_locus(a, p)? else {
        return Ok(None);
    };
    let (maslov, fixed) = maslov_unchecked(a, p)?;
    Ok(Some(OrbitStratum {
        period: p,
        positions,
        exponents,
        dim: 2 * fixed as i64 - 3,
        maslov,
        shift: maslov - (fixed as i64 - 2),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexPositivity {
    Positive,
    Negative,
    Indefinite,
}

impl IndexPositivity {
    pub fn tag(&self) -> &'static str {
        match self {
            IndexPositivity::Positive => "positive",
            IndexPositivity::Negative => "negative",
            IndexPositivity::Indefinite => "indefinite",
        }
    }
}

/// Sign of `Σ 1/a_j - 1`.
pub fn index_positivity(a: &ExponentList) -> IndexPositivity {
    let mp = maslov_principal(a);
    if mp.is_positive() {
        IndexPositivity::Positive
    } else if mp.is_negative() {
        IndexPositivity::Negative
    } else {
        IndexPositivity::Indefinite
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    Yes,
    No,
    Undetermined,
}

impl Degeneracy {
    pub fn tag(&self) -> &'static str {
        match self {
            Degeneracy::Yes => "yes",
            Degeneracy::No => "no",
            Degeneracy::Undetermined => "undetermined",
        }
    }
}

/// Sparse E¹ page: `(p, q) ↦ rank` with total degree `p + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Page {
    pub theory: Theory,
    entries: BTreeMap<(u64, i64), BigInt>,
    /// Requested total-degree window `[lo, hi]`.
    pub window: (i64, i64),
    /// Last column included.
    pub column_cutoff: u64,
    /// Every entry of the window is present (false when the caller's cutoff
    /// truncated the page).
    pub complete: bool,
    pub degenerate: Degeneracy,
}

impl E1Page {
    /// Page from explicit entries; degeneracy is evaluated on construction.
    pub fn from_entries(
        theory: Theory,
        entries: BTreeMap<(u64, i64), BigInt>,
        window: (i64, i64),
    ) -> Self {
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        let column_cutoff = entries.keys().map(|&(p, _)| p).max().unwrap_or(0);
        let mut page = E1Page {
            theory,
            entries,
            window,
            column_cutoff,
            complete: true,
            degenerate: Degeneracy::Undetermined,
        };
        page.degenerate = degeneration_check(&page);
        page
    }

    pub fn entries(&self) -> &BTreeMap<(u64, i64), BigInt> {
        &self.entries
    }

    pub fn rank(&self, p: u64, q: i64) -> BigInt {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Nonempty columns in increasing order.
    pub fn columns(&self) -> Vec<u64> {
        let mut cols: Vec<u64> = self.entries.keys().map(|&(p, _)| p).collect();
        cols.dedup();
        cols
    }

    /// Total rank per total degree `p + q`.
    pub fn total_degree_ranks(&self) -> GradedRanks {
        let mut g = GradedRanks::new();
        for (&(p, q), r) in &self.entries {
            g.add(p as i64 + q, r.clone());
        }
        g
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rational homology carried by column p (before shifting).
fn column_homology(theory: Theory, stratum: &OrbitStratum) -> GradedRanks {
    match theory {
        Theory::ShPlusS1 => equivariant_homology(&stratum.exponents),
        Theory::Sh => rational_betti(&stratum.exponents),
    }
}

/// Entries of column p keyed by total degree; stratum homology is cached by
/// position set.
fn column_entries(
    a: &ExponentList,
    theory: Theory,
    p: u64,
    cache: &mut HashMap<u32, GradedRanks>,
) -> Result<Option<GradedRanks>> {
    if p == 0 {
        return Ok(match theory {
            Theory::Sh => Some(filling_relative_homology(a).shifted(-(a.n() as i64))),
            Theory::ShPlusS1 => None,
        });
    }
    let Some(s) = orbit_stratum(a, p)? else {
        return Ok(None);
    };
    let base = cache
        .entry(s.positions.mask())
        .or_insert_with(|| column_homology(theory, &s));
    Ok(Some(base.shifted(s.shift)))
}

/// Columns are generated until `lcm` consecutive columns lie entirely
/// outside the window on the side the degrees drift towards.
const MAX_COLUMNS: u64 = 50_000_000;

/// E¹ page restricted to total degrees `[-M, M]`.
///
/// With `μ_P ≠ 0` columns are generated until the window is provably
/// exhausted (the shift grows by `μ_P` every `lcm` columns); a caller cutoff
/// truncates the page earlier. With `μ_P = 0` the caller must supply the
/// cutoff.
pub fn e1_page(
    a: &ExponentList,
    theory: Theory,
    max_total_degree: i64,
    cutoff: Option<u64>,
) -> Result<E1Page> {
    if max_total_degree < 0 {
        return Err(Error::Validation(format!(
            "window bound must be nonnegative, got {max_total_degree}"
        )));
    }
    let (lo, hi) = (-max_total_degree, max_total_degree);
    let mp = maslov_principal(a);
    if mp.is_zero() && cutoff.is_none() {
        return Err(Error::UnboundedPage(format!(
            "{a} has principal Maslov index 0; every period repeats the same degrees, so a column cutoff is required"
        )));
    }
    let period = a.lcm();
    let mut entries = BTreeMap::new();
    let mut outside_run = 0u64;
    let mut p = if theory == Theory::Sh { 0 } else { 1 };
    let mut last = 0;
    let mut exhausted = false;
    let mut cache = HashMap::new();
    loop {
        if let Some(c) = cutoff {
            if p > c {
                break;
            }
        }
        if p > MAX_COLUMNS {
            return Err(Error::Domain(format!(
                "more than {MAX_COLUMNS} columns needed for {a}"
            )));
        }
        let col = column_entries(a, theory, p, &mut cache)?;
        let beyond = match &col {
            None => true,
            Some(g) => {
                let degs: Vec<i64> = g.iter().map(|(d, _)| d).collect();
                if mp.is_positive() {
                    degs.iter().all(|&d| d > hi)
                } else if mp.is_negative() {
                    degs.iter().all(|&d| d < lo)
                } else {
                    false
                }
            }
        };
        if let Some(g) = col {
            for (d, r) in g.restricted(lo, hi).iter() {
                entries.insert((p, d - p as i64), r.clone());
            }
        }
        last = p;
        if p > 0 {
            outside_run = if beyond { outside_run + 1 } else { 0 };
            if !mp.is_zero() && outside_run >= period {
                exhausted = true;
                break;
            }
        }
        p += 1;
    }
    let mut page = E1Page::from_entries(theory, entries, (lo, hi));
    page.column_cutoff = last;
    page.complete = exhausted;
    Ok(page)
}

/// `Yes` when all nonzero entries have total degrees of one parity, so every
/// differential (of degree -1) vanishes; otherwise `Undetermined`.
pub fn degeneration_check(page: &E1Page) -> Degeneracy {
    let mut parities = page
        .entries
        .keys()
        .map(|&(p, q)| (p as i64 + q).rem_euclid(2));
    match parities.next() {
        None => Degeneracy::Yes,
        Some(first) => {
            if parities.all(|x| x == first) {
                Degeneracy::Yes
            } else {
                Degeneracy::Undetermined
            }
        }
    }
}

/// Accumulated ranks at increasing cutoffs for a page with `μ_P = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnboundedGrowth {
    /// Degrees whose rank strictly increased at every cutoff.
    pub degrees: Vec<i64>,
    /// `(cutoff, ranks in the window)` for each cutoff tried.
    pub samples: Vec<(u64, GradedRanks)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShBetti {
    Ranks(GradedRanks),
    Unbounded(UnboundedGrowth),
}

impl ShBetti {
    pub fn ranks(&self) -> Option<&GradedRanks> {
        match self {
            ShBetti::Ranks(r) => Some(r),
            ShBetti::Unbounded(_) => None,
        }
    }
}

/// Betti numbers in total degrees `[-M, M]`, read off a lacunary E¹ page.
///
/// With `μ_P = 0` the page is built at cutoffs `c, 2c, 3c` (c the caller's
/// cutoff, else lcm); strictly growing ranks are reported as unbounded.
pub fn sh_betti(
    a: &ExponentList,
    theory: Theory,
    max_total_degree: i64,
    cutoff: Option<u64>,
) -> Result<ShBetti> {
    if maslov_principal(a).is_zero() {
        let base = cutoff.unwrap_or(a.lcm());
        let samples = (1..=3u64)
            .map(|k| {
                let page = e1_page(a, theory, max_total_degree, Some(k * base))?;
                Ok((k * base, page.total_degree_ranks()))
            })
            .collect::<Result<Vec<_>>>()?;
        let degrees: Vec<i64> = (-max_total_degree..=max_total_degree)
            .filter(|&d| samples.windows(2).all(|w| w[1].1.rank(d) > w[0].1.rank(d)))
            .collect();
        if !degrees.is_empty() {
            return Ok(ShBetti::Unbounded(UnboundedGrowth { degrees, samples }));
        }
    }
    // One extra degree on each side so differentials entering the window are
    // also ruled out by parity.
    let page = e1_page(a, theory, max_total_degree + 1, cutoff)?;
    if page.degenerate != Degeneracy::Yes {
        return Err(Error::Undetermined(format!(
            "the E¹ page of {a} has entries of both parities; Betti numbers are not determined by E¹"
        )));
    }
    Ok(ShBetti::Ranks(
        page.total_degree_ranks()
            .restricted(-max_total_degree, max_total_degree),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orderability {
    Orderable {
        reason: String,
    },
    NoCertificate {
        reason: String,
        known_non_orderable: bool,
    },
}

/// Positive Milnor number (all exponents ≥ 2) certifies orderability; a
/// smooth point makes the link the standard sphere, which is not orderable.
pub fn orderability_certificate(a: &ExponentList) -> Orderability {
    if a.has_smooth_point() {
        Orderability::NoCertificate {
            reason: "an exponent equals 1, so the link is the standard contact sphere".into(),
            known_non_orderable: true,
        }
    } else {
        Orderability::Orderable {
            reason: format!("Milnor number {} is positive", milnor_number(a)),
        }
    }
}

/// `χ(W) = 1 + (-1)^n μ` for the Milnor fiber, a wedge of μ n-spheres.
pub fn filling_euler_characteristic(a: &ExponentList) -> BigInt {
    let mu = milnor_number(a);
    if a.n().is_multiple_of(2) {
        BigInt::from(1) + mu
    } else {
        BigInt::from(1) - mu
    }
}

/// True when `χ_m(W) ≠ (-1)^{n-1} χ(W)/2`, which forces `SH(W) ≠ 0`; false
/// is inconclusive.
pub fn sh_nonvanishing_by_mec(a: &ExponentList) -> Result<bool> {
    let chi_m = crate::mec::mec_general(a)?;
    let half = Rational::new(filling_euler_characteristic(a), BigInt::from(2));
    let rhs = if a.n() % 2 == 1 { half } else { -half };
    Ok(chi_m != rhs)
}

impl fmt::Display for OrbitStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} {} dim={} maslov={} shift={}",
            self.period, self.exponents, self.dim, self.maslov, self.shift
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[u64]) -> ExponentList {
        ExponentList::new(v.to_vec()).unwrap()
    }

    #[test]
    fn principal_indices() {
        assert_eq!(maslov_principal(&ex(&[2, 2, 2, 2])), BigInt::from(4));
        assert_eq!(maslov_principal(&ex(&[4, 2, 2, 2])), BigInt::from(6));
        assert_eq!(maslov_principal(&ex(&[4, 4, 4, 4])), BigInt::zero());
        let a = ex(&[6, 4, 3, 2]);
        assert_eq!(
            maslov_principal_rational(&a),
            Rational::from_integer(maslov_principal(&a))
        );
        assert_eq!(
            BigInt::from(maslov_cover(&a, a.lcm()).unwrap()),
            maslov_principal(&a)
        );
    }

    #[test]
    fn cover_indices() {
        let a = ex(&[4, 2, 2, 2]);
        let s = orbit_stratum(&a, 2).unwrap().unwrap();
        assert_eq!((s.maslov, s.shift), (3, 2));
        let s = orbit_stratum(&a, 4).unwrap().unwrap();
        assert_eq!((s.maslov, s.shift), (6, 4));
        for n in 1..=20i64 {
            let s = orbit_stratum(&ex(&[2, 2, 2, 2]), 2 * n as u64)
                .unwrap()
                .unwrap();
            assert_eq!((s.maslov, s.shift), (4 * n, 4 * n - 2));
        }
        assert!(maslov_cover(&ex(&[2, 2, 2, 3]), 3).is_err());
    }

    #[test]
    fn positivity() {
        assert_eq!(
            index_positivity(&ex(&[2, 2, 2, 2])),
            IndexPositivity::Positive
        );
        assert_eq!(
            index_positivity(&ex(&[4, 4, 4, 4])),
            IndexPositivity::Indefinite
        );
        assert_eq!(
            index_positivity(&ex(&[7, 8, 9, 10, 11])),
            IndexPositivity::Negative
        );
    }

    #[test]
    fn page_needs_cutoff_when_flat() {
        assert!(matches!(
            e1_page(&ex(&[4, 4, 4, 4]), Theory::ShPlusS1, 4, None),
            Err(Error::UnboundedPage(_))
        ));
        let page = e1_page(&ex(&[4, 4, 4, 4]), Theory::ShPlusS1, 4, Some(8)).unwrap();
        assert!(!page.complete);
        assert_eq!(page.column_cutoff, 8);
    }

    #[test]
    fn degeneracy_examples() {
        let page = e1_page(&ex(&[4, 2, 2, 2]), Theory::ShPlusS1, 8, None).unwrap();
        assert!(page.complete);
        assert_eq!(page.degenerate, Degeneracy::Yes);
        let page = e1_page(&ex(&[2, 2, 2, 2, 2]), Theory::ShPlusS1, 20, None).unwrap();
        assert_eq!(page.degenerate, Degeneracy::Yes);
        let synthetic: BTreeMap<_, _> =
            [((1, 1), BigInt::from(1)), ((1, 2), BigInt::from(1))].into();
        let page = E1Page::from_entries(Theory::ShPlusS1, synthetic, (-5, 5));
        assert_eq!(page.degenerate, Degeneracy::Undetermined);
    }

    #[test]
    fn sh_column_zero_is_the_filling() {
        let page = e1_page(&ex(&[2, 2, 2, 2]), Theory::Sh, 6, None).unwrap();
        assert_eq!(page.rank(0, 0), BigInt::from(1));
        assert_eq!(page.rank(0, 3), BigInt::from(1));
    }

    #[test]
    fn lens_space_betti() {
        let b = sh_betti(&ex(&[4, 2, 2]), Theory::ShPlusS1, 9, None).unwrap();
        let r = b.ranks().unwrap();
        assert_eq!(r.rank(1), BigInt::from(3));
        for d in (3..=9).step_by(2) {
            assert_eq!(r.rank(d), BigInt::from(4));
            assert_eq!(r.rank(d - 1), BigInt::zero());
        }
    }

    #[test]
    fn flat_case_grows() {
        match sh_betti(&ex(&[4, 4, 4, 4]), Theory::ShPlusS1, 4, None).unwrap() {
            ShBetti::Unbounded(g) => assert!(g.degrees.contains(&0)),
            other => panic!("expected unbounded growth, got {other:?}"),
        }
    }

    #[test]
    fn certificates() {
        assert!(matches!(
            orderability_certificate(&ex(&[2, 2, 2, 3, 5])),
            Orderability::Orderable { .. }
        ));
        assert!(matches!(
            orderability_certificate(&ex(&[4, 4, 4, 4])),
            Orderability::Orderable { .. }
        ));
        assert!(matches!(
            orderability_certificate(&ex(&[1, 5, 7])),
            Orderability::NoCertificate {
                known_non_orderable: true,
                ..
            }
        ));
    }
}
