//! Exponent lists and the combinatorial data attached to them: Milnor number,
//! middle-dimensional ranks κ, Lefschetz numbers of monodromy iterates, their
//! Möbius-inverted divisor weights, and fixed loci of the periodic Reeb flow.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{checked_lcm, divisors, gcd_u64, moebius, DivisorWeights};
use crate::error::{Error, Result};

/// Subsets are stored as `u32` bitmasks, which caps the list length.
pub const MAX_EXPONENTS: usize = 20;

/// Ordered exponents `(a_0, ..., a_n)` of the Brieskorn polynomial
/// `z_0^{a_0} + ... + z_n^{a_n}`.
///
/// The link `Σ(a)` has dimension `2n - 1`. Exponent 1 is allowed and makes the
/// link a standard sphere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentList {
    exps: Vec<u64>,
    lcm: u64,
}

impl ExponentList {
    pub fn new(exps: Vec<u64>) -> Result<Self> {
        if exps.len() < 2 {
            return Err(Error::Validation(format!(
                "an exponent list needs at least two entries, got {}",
                exps.len()
            )));
        }
        if exps.len() > MAX_EXPONENTS {
            return Err(Error::Validation(format!(
                "at most {MAX_EXPONENTS} exponents are supported, got {}",
                exps.len()
            )));
        }
        if let Some(pos) = exps.iter().position(|&a| a == 0) {
            return Err(Error::Validation(format!(
                "exponent at position {pos} is 0"
            )));
        }
        let lcm = exps
            .iter()
            .try_fold(1u64, |acc, &a| checked_lcm(acc, a))
            .ok_or_else(|| Error::Validation("lcm of the exponents overflows u64".into()))?;
        Ok(ExponentList { exps, lcm })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Complex dimension of the Milnor fiber; the link has dimension `2n - 1`.
    pub fn n(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn link_dimension(&self) -> usize {
        2 * self.n() - 1
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn gcd(&self) -> u64 {
        self.exps.iter().fold(0, |g, &a| gcd_u64(g, a))
    }

    /// Some exponent equals 1, so the link is a standard sphere.
    pub fn has_smooth_point(&self) -> bool {
        self.exps.contains(&1)
    }

    pub fn full(&self) -> SubsetSelector {
        SubsetSelector::full(self.len())
    }

    /// The sub-list picked out by `sel`, or `None` if it has fewer than two
    /// entries.
    pub fn sub_list(&self, sel: SubsetSelector) -> Option<ExponentList> {
        let sub: Vec<u64> = sel.positions().map(|i| self.exps[i]).collect();
        ExponentList::new(sub).ok()
    }

    /// Exponents sorted in descending order; used only for display metadata.
    pub fn canonical(&self) -> Vec<u64> {
        let mut v = self.exps.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Exponents are pairwise relatively prime.
    pub fn pairwise_coprime(&self) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &a)| self.exps[i + 1..].iter().all(|&b| gcd_u64(a, b) == 1))
    }
}

impl fmt::Display for ExponentList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ(")?;
        for (i, a) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ExponentList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExponentList {
    type Err = Error;

    /// Whitespace- or comma-separated positive integers.
    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Validation(format!("not a positive integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ExponentList::new(exps)
    }
}

/// A subset of the positions `0..len` of an exponent list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetSelector {
    mask: u32,
    len: u8,
}

impl SubsetSelector {
    pub fn from_mask(mask: u32, len: usize) -> Result<Self> {
        if len > MAX_EXPONENTS {
            return Err(Error::Validation(format!("subset length {len} too large")));
        }
        if len < 32 && mask >> len != 0 {
            return Err(Error::Validation(format!(
                "mask {mask:#b} selects positions beyond {len}"
            )));
        }
        Ok(SubsetSelector {
            mask,
            len: len as u8,
        })
    }

    pub fn from_positions(positions: &[usize], len: usize) -> Result<Self> {
        let mut mask = 0u32;
        for &p in positions {
            if p >= len {
                return Err(Error::Validation(format!(
                    "position {p} out of range {len}"
                )));
            }
            mask |= 1 << p;
        }
        Self::from_mask(mask, len)
    }

    pub fn empty(len: usize) -> Self {
        SubsetSelector {
            mask: 0,
            len: len as u8,
        }
    }

    pub fn full(len: usize) -> Self {
        SubsetSelector {
            mask: ((1u64 << len) - 1) as u32,
            len: len as u8,
        }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn universe(&self) -> usize {
        self.len as usize
    }

    pub fn count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe() && self.mask >> i & 1 == 1
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.universe()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe()).filter(move |&i| self.contains(i))
    }

    pub fn complement(&self) -> Self {
        SubsetSelector {
            mask: !self.mask & Self::full(self.universe()).mask,
            len: self.len,
        }
    }
}

impl fmt::Debug for SubsetSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.positions()).finish()
    }
}

/// `Π (a_i - 1)`.
pub fn milnor_number(a: &ExponentList) -> BigInt {
    a.exponents().iter().map(|&x| BigInt::from(x - 1)).product()
}

/// `Π_{i∈T} a_i / lcm_{i∈T} a_i`, which is 1 for the empty set.
fn product_over_lcm(a: &ExponentList, mask: u32) -> BigInt {
    let mut prod = BigInt::one();
    let mut l = 1u64;
    for (i, &x) in a.exponents().iter().enumerate() {
        if mask >> i & 1 == 1 {
            prod *= x;
            l = l.lcm(&x);
        }
    }
    prod / l
}

/// Rank of the middle homology of the sub-link selected by `sel`,
/// `κ(I_s) = Σ_{I_t ⊆ I_s} (-1)^{|I_s|-|I_t|} Π_{I_t} a_i / lcm_{I_t} a_j`.
///
/// The empty subset evaluates to 1.
pub fn kappa(a: &ExponentList, sel: SubsetSelector) -> BigInt {
    let s = sel.mask();
    let size = sel.count();
    let mut total = BigInt::zero();
    // enumerate submasks of s, including 0
    let mut t = s;
    loop {
        let term = product_over_lcm(a, t);
        if (size - t.count_ones() as usize).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & s;
    }
    debug_assert!(!total.is_negative(), "negative kappa for {a} at {sel:?}");
    total
}

/// κ for every subset at once, indexed by bitmask (subset Möbius transform).
pub fn kappa_table(a: &ExponentList) -> Vec<BigInt> {
    let len = a.len();
    let mut table: Vec<BigInt> = (0..1u32 << len).map(|m| product_over_lcm(a, m)).collect();
    for i in 0..len {
        let bit = 1u32 << i;
        for m in 0..1u32 << len {
            if m & bit != 0 {
                let lower = table[(m ^ bit) as usize].clone();
                table[m as usize] -= lower;
            }
        }
    }
    table
}

/// Euler characteristic of the fixed set of the `ℓ`-th monodromy iterate,
/// `χ_ℓ = 1 - Π_{a_j | ℓ} (1 - a_j)`.
pub fn lefschetz_euler(a: &ExponentList, ell: u64) -> Result<BigInt> {
    if ell == 0 {
        return Err(Error::Domain("iterate index must be positive".into()));
    }
    let prod: BigInt = a
        .exponents()
        .iter()
        .filter(|&&x| ell.is_multiple_of(x))
        .map(|&x| BigInt::one() - BigInt::from(x))
        .product();
    Ok(BigInt::one() - prod)
}

/// Möbius inversion of the Lefschetz numbers: `s_i = Σ_{d|i} μ(d) χ_{i/d}`,
/// returned as `r_i = s_i / i` over the divisors of the period.
pub fn divisor_weights(a: &ExponentList) -> Result<DivisorWeights> {
    let period = a.lcm();
    let divs = divisors(period)?;
    let chi: BTreeMap<u64, BigInt> = divs
        .iter()
        .map(|&d| Ok((d, lefschetz_euler(a, d)?)))
        .collect::<Result<_>>()?;
    let mut weights = BTreeMap::new();
    for &i in &divs {
        let mut s = BigInt::zero();
        for &d in divs.iter().filter(|&&d| i % d == 0) {
            let mu = moebius(d)?;
            if mu != 0 {
                s += BigInt::from(mu) * &chi[&(i / d)];
            }
        }
        let (r, rem) = s.div_rem(&BigInt::from(i));
        if !rem.is_zero() {
            return Err(Error::Consistency(format!(
                "s_{i} = {s} is not divisible by {i} for {a}"
            )));
        }
        weights.insert(i, r);
    }
    DivisorWeights::new(period, weights)
}

/// Positions `I_p = { j : a_j | p }` fixed by the time-`2πp` Reeb flow and the
/// Brieskorn sub-list they span; `None` when fewer than two positions qualify.
pub fn fixed_locus(a: &ExponentList, p: u64) -> Result<Option<(SubsetSelector, ExponentList)>> {
    if p == 0 {
        return Err(Error::Domain("return time must be positive".into()));
    }
    let positions: Vec<usize> = a
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &x)| p.is_multiple_of(x))
        .map(|(i, _)| i)
        .collect();
    if positions.len() < 2 {
        return Ok(None);
    }
    let sel = SubsetSelector::from_positions(&positions, a.len())?;
    Ok(a.sub_list(sel).map(|sub| (sel, sub)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[u64]) -> ExponentList {
        ExponentList::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_lists() {
        assert!(ExponentList::new(vec![3]).is_err());
        assert!(ExponentList::new(vec![0, 2, 2]).is_err());
        assert!("2 x 3".parse::<ExponentList>().is_err());
        assert_eq!("2, 3 5".parse::<ExponentList>().unwrap(), ex(&[2, 3, 5]));
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&ex(&[2, 2, 2, 3, 5])), BigInt::from(8));
        assert_eq!(milnor_number(&ex(&[1, 7, 9])), BigInt::from(0));
        assert_eq!(milnor_number(&ex(&[3, 3, 3])), BigInt::from(8));
    }

    #[test]
    fn kappa_examples() {
        let full = |v: &[u64]| kappa(&ex(v), SubsetSelector::full(v.len()));
        assert_eq!(full(&[2, 2, 2]), BigInt::from(0));
        assert_eq!(full(&[4, 2, 2, 2]), BigInt::from(1));
        assert_eq!(full(&[2, 2, 2, 2]), BigInt::from(1));
        assert_eq!(full(&[3, 3, 3]), BigInt::from(2));
        assert_eq!(
            kappa(&ex(&[3, 3, 3]), SubsetSelector::empty(3)),
            BigInt::from(1)
        );
    }

    #[test]
    fn kappa_table_matches_direct_sum() {
        let a = ex(&[6, 4, 10, 3, 2]);
        let table = kappa_table(&a);
        for m in 0..1u32 << a.len() {
            let sel = SubsetSelector::from_mask(m, a.len()).unwrap();
            assert_eq!(table[m as usize], kappa(&a, sel), "mask {m:#b}");
        }
    }

    #[test]
    fn lefschetz_examples() {
        let a = ex(&[3, 2, 2, 2, 2]);
        assert_eq!(lefschetz_euler(&a, 1).unwrap(), BigInt::from(0));
        assert_eq!(lefschetz_euler(&a, 3).unwrap(), BigInt::from(3));
        assert_eq!(lefschetz_euler(&a, 2).unwrap(), BigInt::from(0));
        assert!(lefschetz_euler(&a, 0).is_err());
    }

    /// Oracle: solve `χ_i = Σ_{d|i} s_d` by forward substitution over the
    /// divisors in increasing order.
    fn weights_by_substitution(a: &ExponentList) -> BTreeMap<u64, BigInt> {
        let divs = divisors(a.lcm()).unwrap();
        let mut s: BTreeMap<u64, BigInt> = BTreeMap::new();
        for &i in &divs {
            let known: BigInt = s
                .iter()
                .filter(|(d, _)| i % **d == 0)
                .map(|(_, v)| v.clone())
                .sum();
            s.insert(i, lefschetz_euler(a, i).unwrap() - known);
        }
        s.into_iter()
            .map(|(d, v)| (d, v / BigInt::from(d)))
            .filter(|(_, r)| !r.is_zero())
            .collect()
    }

    #[test]
    fn divisor_weight_examples() {
        let a = ex(&[3, 2, 2, 2, 2]);
        let w = divisor_weights(&a).unwrap();
        let nz: Vec<_> = w.nonzero().map(|(d, r)| (d, r.clone())).collect();
        assert_eq!(nz, vec![(3, BigInt::from(1))]);

        for v in [&[2u64, 2][..], &[1, 7], &[6, 4, 9], &[2, 3, 5, 7]] {
            let a = ex(v);
            let w = divisor_weights(&a).unwrap();
            let nz: BTreeMap<u64, BigInt> = w.nonzero().map(|(d, r)| (d, r.clone())).collect();
            assert_eq!(nz, weights_by_substitution(&a), "{a}");
        }

        let w = divisor_weights(&ex(&[2, 2])).unwrap();
        assert_eq!(w.r(1), BigInt::from(0));
        assert_eq!(w.s(2), lefschetz_euler(&ex(&[2, 2]), 2).unwrap());

        let w = divisor_weights(&ex(&[1, 7])).unwrap();
        assert!(w.nonzero().all(|(d, _)| d == 1));
    }

    #[test]
    fn fixed_locus_examples() {
        let a = ex(&[2, 2, 2, 4]);
        let (sel, sub) = fixed_locus(&a, 2).unwrap().unwrap();
        assert_eq!(sel.positions().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(sub, ex(&[2, 2, 2]));
        let (sel, sub) = fixed_locus(&a, 4).unwrap().unwrap();
        assert!(sel.is_full());
        assert_eq!(sub, a);
        assert!(fixed_locus(&ex(&[2, 2, 2, 3]), 3).unwrap().is_none());
    }
}
