//! Mean Euler characteristic of Brieskorn fillings: the stratum table and
//! general formula, the pairwise-coprime closed form, the connected-sum rule,
//! and realization of arbitrary rationals by connected sums.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, factorize, Rational};
use crate::error::{Error, Result};
use crate::exponents::{ExponentList, SubsetSelector};
use crate::floer::{e1_page, maslov_principal, orbit_stratum, Theory};
use crate::homology::equivariant_homology;

/// One orbit space `Σ_{T_i}` of the periodic Reeb flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRow {
    pub exponents: ExponentList,
    pub positions: SubsetSelector,
    pub period: u64,
    pub chi_s1: BigInt,
    pub sign: i8,
    pub phi: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumTable {
    /// Rows by decreasing period; the first row is the principal stratum.
    pub rows: Vec<StratumRow>,
    pub common_period: u64,
}

impl StratumTable {
    /// `Σ sign · φ · χ^{S^1}`, the numerator of the mean Euler characteristic.
    pub fn weighted_sum(&self) -> BigInt {
        self.rows
            .iter()
            .map(|r| BigInt::from(r.sign) * BigInt::from(r.phi) * &r.chi_s1)
            .sum()
    }
}

const PHI_SCAN_LIMIT: u64 = 100_000_000;

/// `#{m ≥ 1 : m T_i < T_k, m T_i not divisible by any larger period}`, and 1
/// for the principal period.
pub fn phi_frequency(period: u64, larger: &[u64], common: u64) -> Result<u64> {
    if period == 0 || common == 0 {
        return Err(Error::Domain("periods must be positive".into()));
    }
    if period == common {
        if !larger.is_empty() {
            return Err(Error::Domain(format!(
                "the principal period {common} cannot have larger periods {larger:?}"
            )));
        }
        return Ok(1);
    }
    if period > common {
        return Err(Error::Domain(format!(
            "period {period} exceeds the common period {common}"
        )));
    }
    let steps = (common - 1) / period;
    if steps > PHI_SCAN_LIMIT {
        return Err(Error::Domain(format!("{steps} multiples to scan for φ")));
    }
    Ok((1..=steps)
        .filter(|m| {
            let t = m * period;
            larger.iter().all(|&l| !t.is_multiple_of(l))
        })
        .count() as u64)
}

/// Distinct fixed loci `K(I_T)` over the divisors T of the lcm.
pub fn stratum_table(a: &ExponentList) -> Result<StratumTable> {
    let common = a.lcm();
    let mut found: Vec<(SubsetSelector, ExponentList, u64)> = Vec::new();
    for t in divisors(common)? {
        let Some((sel, sub)) = crate::exponents::fixed_locus(a, t)? else {
            continue;
        };
        if found.iter().all(|(s, _, _)| *s != sel) {
            let period = sub.lcm();
            found.push((sel, sub, period));
        }
    }
    found.sort_by(|x, y| y.2.cmp(&x.2));
    let periods: Vec<u64> = found.iter().map(|f| f.2).collect();
    let mut rows = Vec::with_capacity(found.len());
    for (sel, sub, period) in found {
        let larger: Vec<u64> = periods.iter().copied().filter(|&q| q > period).collect();
        let phi = phi_frequency(period, &larger, common)?;
        let stratum = orbit_stratum(a, period)?
            .ok_or_else(|| Error::Consistency(format!("stratum at {period} vanished for {a}")))?;
        let sign = if stratum.shift.rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let chi_s1 = equivariant_homology(&sub).euler_characteristic();
        rows.push(StratumRow {
            exponents: sub,
            positions: sel,
            period,
            chi_s1,
            sign,
            phi,
        });
    }
    Ok(StratumTable {
        rows,
        common_period: common,
    })
}

fn undefined(a: &ExponentList) -> Error {
    Error::MecUndefined(format!(
        "{a} has principal Maslov index 0 (Σ 1/a_j = 1), so the averaged Euler characteristic diverges, as for the K3 surface"
    ))
}

/// `χ_m = Σ_i sign_i φ_i χ^{S^1}(Σ_{T_i}) / |μ_P|`.
pub fn mec_general(a: &ExponentList) -> Result<Rational> {
    let mp = maslov_principal(a);
    if mp.is_zero() {
        return Err(undefined(a));
    }
    let table = stratum_table(a)?;
    Ok(Rational::new(table.weighted_sum(), mp.abs()))
}

/// Closed form for pairwise relatively prime exponents:
/// `(-1)^{n+1} Σ_{m<n} (n-m) e_m(a-1) / (2 |Σ_j Π_{i≠j} a_i - Π a_i|)`.
pub fn mec_coprime(a: &ExponentList) -> Result<Rational> {
    if !a.pairwise_coprime() {
        return Err(Error::Domain(format!(
            "{a} is not pairwise relatively prime"
        )));
    }
    let n = a.n();
    // elementary symmetric polynomials of a_i - 1
    let mut e = vec![BigInt::zero(); a.len() + 1];
    e[0] = BigInt::one();
    for &x in a.exponents() {
        let y = BigInt::from(x - 1);
        for m in (1..e.len()).rev() {
            let prev = &e[m - 1] * &y;
            e[m] += prev;
        }
    }
    let numer: BigInt = (0..n).map(|m| BigInt::from(n - m) * &e[m]).sum();
    let prod: BigInt = a.exponents().iter().map(|&x| BigInt::from(x)).product();
    let sum: BigInt = a.exponents().iter().map(|&x| &prod / BigInt::from(x)).sum();
    let denom = BigInt::from(2) * (sum - &prod).abs();
    if denom.is_zero() {
        return Err(undefined(a));
    }
    let value = Rational::new(numer, denom);
    Ok(if n.is_multiple_of(2) { -value } else { value })
}

/// A summand of a boundary connected sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MecSummand {
    List(ExponentList),
    /// A filling known only through its mean Euler characteristic.
    Value(Rational),
}

/// `Σ χ_m(W_i) + (k - 1)(-1)^n / 2` for a connected sum of k fillings of
/// `(2n-1)`-manifolds.
pub fn mec_sum(summands: &[MecSummand], n: usize) -> Result<Rational> {
    if summands.is_empty() {
        return Err(Error::Validation(
            "a connected sum needs at least one summand".into(),
        ));
    }
    let mut total = Rational::zero();
    for s in summands {
        total += match s {
            MecSummand::List(a) => {
                if a.n() != n {
                    return Err(Error::Validation(format!(
                        "{a} has n = {}, but the sum is over n = {n}",
                        a.n()
                    )));
                }
                mec_general(a)?
            }
            MecSummand::Value(v) => v.clone(),
        };
    }
    Ok(total + connected_sum_offset(summands.len(), n))
}

fn connected_sum_offset(count: usize, n: usize) -> Rational {
    let half = Rational::new(BigInt::from(count as i64 - 1), BigInt::from(2));
    if n.is_multiple_of(2) {
        half
    } else {
        -half
    }
}

/// Connected sum `#_i k_i Σ_i` of Brieskorn manifolds with common n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumRecipe {
    terms: Vec<(ExponentList, u64)>,
    n: usize,
    chi_m: Rational,
}

impl SumRecipe {
    /// Recomputes the mean Euler characteristic from the summands.
    pub fn new(terms: Vec<(ExponentList, u64)>, n: usize) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().filter(|(_, k)| *k > 0).collect();
        let count: u64 = terms.iter().map(|(_, k)| k).sum();
        if count == 0 {
            return Err(Error::Validation(
                "a recipe needs at least one summand".into(),
            ));
        }
        let mut chi_m = connected_sum_offset(count as usize, n);
        for (a, k) in &terms {
            if a.n() != n {
                return Err(Error::Validation(format!("{a} does not have n = {n}")));
            }
            chi_m += mec_general(a)? * Rational::from_integer(BigInt::from(*k));
        }
        Ok(SumRecipe { terms, n, chi_m })
    }

    pub fn terms(&self) -> &[(ExponentList, u64)] {
        &self.terms
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi_m(&self) -> &Rational {
        &self.chi_m
    }

    pub fn summand_count(&self) -> u64 {
        self.terms.iter().map(|(_, k)| k).sum()
    }

    /// Summands written out one by one.
    pub fn expanded(&self) -> Vec<ExponentList> {
        self.terms
            .iter()
            .flat_map(|(a, k)| std::iter::repeat_n(a.clone(), *k as usize))
            .collect()
    }
}

impl fmt::Display for SumRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, k)| {
                if *k == 1 {
                    a.to_string()
                } else {
                    format!("{k} x {a}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" # "))
    }
}

/// Generators in dimension 5, with `w = χ_m - 1/2` so that a connected sum
/// has `χ_m = 1/2 + Σ w`.
fn w_unit() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn padding() -> ExponentList {
    ExponentList::new(vec![2, 2, 3, 5]).expect("valid")
}

/// `Σ(5,6,11,14)` has `χ_m = 1/8`, so `w = -3/8`.
fn negative_generator() -> ExponentList {
    ExponentList::new(vec![5, 6, 11, 14]).expect("valid")
}

fn w_negative() -> Rational {
    Rational::new((-3).into(), 8.into())
}

/// `Σ(3Q-2,2,2,2)` for odd Q: `χ_m = 1 - 1/(2Q)`.
fn odd_generator(q: u64) -> Result<(ExponentList, Rational)> {
    let k = q
        .checked_mul(3)
        .and_then(|x| x.checked_sub(2))
        .ok_or_else(|| Error::Domain(format!("prime power {q} too large")))?;
    let w = Rational::new(BigInt::from(q) - 1, BigInt::from(2) * BigInt::from(q));
    Ok((ExponentList::new(vec![k, 2, 2, 2])?, w))
}

/// `Σ(2,2,2^ℓ-3,2^ℓ+3)`, `ℓ ≥ 3`: `χ_m = 2^{ℓ-2} - 1/2^{ℓ-1}`.
fn dyadic_generator(l: u32) -> Result<(ExponentList, Rational)> {
    let big = 1u64
        .checked_shl(l)
        .filter(|&x| l < 63 && x > 3)
        .ok_or_else(|| Error::Domain(format!("dyadic generator 2^{l} out of range")))?;
    let chi = Rational::from_integer(BigInt::from(1u64 << (l - 2)))
        - Rational::new(1.into(), BigInt::from(1u64 << (l - 1)));
    Ok((
        ExponentList::new(vec![2, 2, big - 3, big + 3])?,
        chi - w_unit(),
    ))
}

/// Copies of the odd and dyadic generators that make `2 (t - Σ w)` an
/// integer.
fn fractional_fix(t: &Rational) -> Result<Vec<(ExponentList, u64, Rational)>> {
    let two_t = t * Rational::from_integer(2.into());
    let numer = two_t.numer().clone();
    let denom = two_t.denom().clone();
    if denom.is_one() {
        return Ok(Vec::new());
    }
    let d = denom
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("denominator {denom} too large to factor")))?;
    let mut out = Vec::new();
    for (p, e) in factorize(d) {
        let q = p.pow(e);
        let rest = BigInt::from(d / q);
        // α/q ≡ numer/d (mod 1), i.e. α ≡ numer · rest^{-1} (mod q)
        let qb = BigInt::from(q);
        let inv = mod_inverse(&rest, &qb);
        let alpha = (&numer * inv).mod_floor(&qb);
        let copies = (-alpha).mod_floor(&qb).to_u64().expect("below q");
        if copies == 0 {
            continue;
        }
        let (list, w) = if p == 2 {
            dyadic_generator(e + 2)?
        } else {
            odd_generator(q)?
        };
        out.push((list, copies, w));
    }
    Ok(out)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(m)
}

/// How many values of the negative-generator count are tried before jumping
/// to a count that is guaranteed to work.
const NEGATIVE_SCAN: u64 = 64;

/// A connected sum of Brieskorn 5-manifolds with mean Euler characteristic x.
///
/// Odd prime-power denominators are cleared with copies of `Σ(3Q-2,2,2,2)`,
/// powers of 2 with `Σ(2,2,2^ℓ-3,2^ℓ+3)`, and the remaining nonnegative
/// half-integer with copies of `Σ(2,2,3,5)`; copies of `Σ(5,6,11,14)` lower
/// the value when the remainder would be negative.
pub fn realize_mec(x: &Rational) -> Result<SumRecipe> {
    let t = x - w_unit();
    let attempt = |m: u64| -> Result<Option<Vec<(ExponentList, u64)>>> {
        let shifted = &t - w_negative() * Rational::from_integer(BigInt::from(m));
        let fix = fractional_fix(&shifted)?;
        let fixed: Rational = fix
            .iter()
            .map(|(_, k, w)| w * Rational::from_integer(BigInt::from(*k)))
            .sum();
        let rest = shifted - fixed;
        if rest.is_negative() {
            return Ok(None);
        }
        let pads = (rest * Rational::from_integer(2.into()))
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::Domain(format!("value {x} needs too many summands")))?;
        let mut terms: Vec<(ExponentList, u64)> = fix.into_iter().map(|(a, k, _)| (a, k)).collect();
        terms.push((padding(), pads));
        terms.push((negative_generator(), m));
        Ok(Some(terms))
    };
    let mut found = None;
    for m in 0..NEGATIVE_SCAN {
        if let Some(terms) = attempt(m)? {
            found = Some(terms);
            break;
        }
    }
    if found.is_none() {
        found = attempt(guaranteed_negative_count(&t)?)?;
    }
    let mut terms = found.ok_or_else(|| Error::Consistency(format!("no recipe found for {x}")))?;
    if terms.iter().all(|(_, k)| *k == 0) {
        // the empty sum: the standard sphere Σ(1,2,2,2) has w = 0
        terms = vec![(ExponentList::new(vec![1, 2, 2, 2])?, 1)];
    }
    let recipe = SumRecipe::new(terms, 3)?;
    if recipe.chi_m() != x {
        return Err(Error::Consistency(format!(
            "recipe {recipe} has mean Euler characteristic {}, expected {x}",
            recipe.chi_m()
        )));
    }
    Ok(recipe)
}

/// A count m of negative generators after which the fractional fix can never
/// overshoot: the fix is bounded by `Σ (Q_j - 1) w_{Q_j} + (2^E - 1) w_E`.
fn guaranteed_negative_count(t: &Rational) -> Result<u64> {
    let denom = (t * Rational::from_integer(2.into())).denom().clone();
    let d = denom
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("denominator {denom} too large to factor")))?;
    let mut bound = Rational::zero();
    let mut two_exp = 2;
    for (p, e) in factorize(d) {
        if p == 2 {
            two_exp = two_exp.max(e);
        } else {
            let q = p.pow(e);
            bound += odd_generator(q)?.1 * Rational::from_integer(BigInt::from(q - 1));
        }
    }
    let (_, w) = dyadic_generator(two_exp + 2)?;
    bound += w * Rational::from_integer(BigInt::from((1u64 << two_exp) - 1));
    let need = ((bound - t) / -w_negative()).ceil().to_integer();
    need.max(BigInt::zero())
        .to_u64()
        .ok_or_else(|| Error::Domain("value needs too many summands".into()))
}

/// `(1/N) Σ_{|i| ≤ N} (-1)^i rk E¹_i(SH^{+,S^1})`, the truncated average the
/// mean Euler characteristic is the limit of.
pub fn mec_window_estimate(a: &ExponentList, window: i64) -> Result<Rational> {
    if window <= 0 {
        return Err(Error::Validation(format!(
            "window must be positive, got {window}"
        )));
    }
    let page = e1_page(a, Theory::ShPlusS1, window, None)?;
    let sum = page.total_degree_ranks().euler_characteristic();
    Ok(Rational::new(sum, BigInt::from(window)))
}

/// Comparison of the truncated averages with `χ_m` at `N = L, 5L, 10L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowOracle {
    pub chi_m: Rational,
    /// `|N·(estimate - χ_m)|` may not exceed this.
    pub constant: BigInt,
    /// `(N, estimate - χ_m)`.
    pub samples: Vec<(i64, Rational)>,
    pub passed: bool,
}

/// One period of columns shifts all degrees by `μ_P` and contributes
/// `|μ_P| χ_m` to the alternating sum; only the periods straddling the window
/// edges are partially counted. With R the total rank of one period and b the
/// number of periods a single period's degrees can overlap, the error of
/// `N·estimate` is at most `C = 2b(R + |μ_P χ_m|)`.
pub fn window_oracle(a: &ExponentList) -> Result<WindowOracle> {
    let chi_m = mec_general(a)?;
    let mp = maslov_principal(a).abs();
    let period = a.lcm();
    let mut rank = BigInt::zero();
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for p in 1..=period {
        if let Some(s) = orbit_stratum(a, p)? {
            let h = equivariant_homology(&s.exponents);
            rank += h.total_rank();
            for (d, _) in h.iter() {
                lo = lo.min(d + s.shift);
                hi = hi.max(d + s.shift);
            }
        }
    }
    let span = BigInt::from(hi.saturating_sub(lo).max(0));
    let blocks: BigInt = Integer::div_ceil(&span, &mp) + 1;
    let block_sum = (&chi_m * Rational::from_integer(mp.clone()))
        .to_integer()
        .abs();
    let constant = BigInt::from(2) * blocks * (rank + block_sum);
    let l = i64::try_from(period).map_err(|_| Error::Domain("lcm too large".into()))?;
    let mut samples = Vec::new();
    let mut passed = true;
    for k in [1, 5, 10] {
        let n = l * k;
        let diff = mec_window_estimate(a, n)? - &chi_m;
        let scaled = (&diff * Rational::from_integer(BigInt::from(n))).abs();
        passed &= scaled <= Rational::from_integer(constant.clone());
        samples.push((n, diff));
    }
    Ok(WindowOracle {
        chi_m,
        constant,
        samples,
        passed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MecInvariance {
    /// Periodic flow with nonzero principal mean index on a simply connected
    /// link: χ_m is a contact invariant.
    Invariant,
    /// `μ_P = 0`.
    Undefined,
    /// Defined for the Milnor fiber, but the link is not simply connected.
    FillingOnly,
}

impl MecInvariance {
    pub fn tag(&self) -> &'static str {
        match self {
            MecInvariance::Invariant => "invariant",
            MecInvariance::Undefined => "undefined",
            MecInvariance::FillingOnly => "filling_only",
        }
    }

    pub fn is_invariant(&self) -> bool {
        *self == MecInvariance::Invariant
    }
}

pub fn mec_invariance_flag(a: &ExponentList) -> MecInvariance {
    if maslov_principal(a).is_zero() {
        MecInvariance::Undefined
    } else if a.n() < 3 {
        MecInvariance::FillingOnly
    } else {
        MecInvariance::Invariant
    }
}
