//! Integral homology of Brieskorn links by Randell's algorithm, rational
//! (equivariant) homology, relative homology of the filling, and the spin
//! 5-manifold realization recipe.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{factorize, gcd_u64, prime_power};
use crate::error::{Error, Result};
use crate::exponents::{kappa, kappa_table, milnor_number, ExponentList, SubsetSelector};

/// Finitely generated abelian group `Z^r ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}`.
///
/// Torsion is kept in the order it was produced; equality compares invariant
/// factors, which is the same as comparing primary decompositions.
#[derive(Clone)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Factors equal to 0 count as free summands; units are dropped.
    pub fn new(free_rank: usize, factors: Vec<BigInt>) -> Self {
        let mut free_rank = free_rank;
        let mut torsion = Vec::new();
        for d in factors {
            let d = num_traits::Signed::abs(&d);
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        AbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, vec![BigInt::from(order)])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// `d_1 | d_2 | ... | d_k`, obtained by repeatedly replacing pairs with
    /// their gcd and lcm.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut v = self.torsion.clone();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let g = v[i].gcd(&v[j]);
                let l = &v[i] / &g * &v[j];
                v[i] = g;
                v[j] = l;
            }
        }
        v.retain(|d| !d.is_one());
        v
    }

    /// Multiset of prime-power orders of the cyclic primary summands, or
    /// `None` if a torsion factor does not fit in 64 bits.
    pub fn primary_components(&self) -> Option<Vec<u64>> {
        let mut out = Vec::new();
        for d in &self.torsion {
            for (p, e) in factorize(d.to_u64()?) {
                out.push(p.pow(e));
            }
        }
        out.sort_unstable();
        Some(out)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.free_rank == other.free_rank && self.invariant_factors() == other.invariant_factors()
    }
}

impl Eq for AbelianGroup {}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rational Betti numbers indexed by (possibly negative) degree.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GradedRanks {
    ranks: BTreeMap<i64, BigInt>,
}

impl GradedRanks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: i64, rank: impl Into<BigInt>) {
        let rank = rank.into();
        if rank.is_zero() {
            return;
        }
        let slot = self.ranks.entry(degree).or_insert_with(BigInt::zero);
        *slot += rank;
        if slot.is_zero() {
            self.ranks.remove(&degree);
        }
    }

    pub fn rank(&self, degree: i64) -> BigInt {
        self.ranks.get(&degree).cloned().unwrap_or_default()
    }

    /// Nonzero entries in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.ranks.iter().map(|(&d, r)| (d, r))
    }

    pub fn total_rank(&self) -> BigInt {
        self.ranks.values().sum()
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.ranks
            .iter()
            .map(|(&d, r)| if d.rem_euclid(2) == 0 { r.clone() } else { -r })
            .sum()
    }

    pub fn shifted(&self, by: i64) -> Self {
        GradedRanks {
            ranks: self
                .ranks
                .iter()
                .map(|(&d, r)| (d + by, r.clone()))
                .collect(),
        }
    }

    pub fn restricted(&self, lo: i64, hi: i64) -> Self {
        GradedRanks {
            ranks: self
                .ranks
                .range(lo..=hi)
                .map(|(&d, r)| (d, r.clone()))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

impl fmt::Debug for GradedRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.ranks.iter().map(|(d, r)| (d, r.to_string())))
            .finish()
    }
}

/// Prime-exponent vectors of `C(I_s)` for every subset, by multiplicative
/// Möbius inversion of `G(S) = gcd_{i∉S} a_i = Π_{T⊆S} C(T)`.
///
/// `C(I) := 1`; every other entry must come out integral.
fn randell_table(a: &ExponentList) -> Result<Vec<BigInt>> {
    let len = a.len();
    let full = (1u32 << len) - 1;
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for &x in a.exponents() {
        primes.extend(factorize(x).into_iter().map(|(p, _)| p));
    }
    let gcd_outside = |mask: u32| -> u64 {
        a.exponents()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 0)
            .fold(0u64, |g, (_, &x)| gcd_u64(g, x))
    };
    let gs: Vec<u64> = (0..=full).map(gcd_outside).collect();

    let mut table = vec![BigInt::one(); 1 << len];
    for p in primes {
        let mut v: Vec<i64> = gs
            .iter()
            .map(|&g| {
                let mut g = g;
                let mut e = 0;
                while g != 0 && g % p == 0 {
                    g /= p;
                    e += 1;
                }
                e
            })
            .collect();
        for i in 0..len {
            let bit = 1u32 << i;
            for m in 0..=full {
                if m & bit != 0 {
                    v[m as usize] -= v[(m ^ bit) as usize];
                }
            }
        }
        for (m, &e) in v.iter().enumerate() {
            if m as u32 == full {
                continue;
            }
            if e < 0 {
                return Err(Error::Consistency(format!(
                    "C({:?}) is not an integer for {a}",
                    SubsetSelector::from_mask(m as u32, len)?
                )));
            }
            if e > 0 {
                table[m] *= BigInt::from(p).pow(e as u32);
            }
        }
    }
    Ok(table)
}

/// Randell's `C(I_s)`: `C(∅) = gcd_I a_i` and
/// `C(I_s) = gcd_{i∉I_s} a_i / Π_{I_t ⊊ I_s} C(I_t)`, with `C(I) = 1`.
pub fn randell_c(a: &ExponentList, sel: SubsetSelector) -> Result<BigInt> {
    if sel.universe() != a.len() {
        return Err(Error::Validation(format!(
            "subset over {} positions used with {a}",
            sel.universe()
        )));
    }
    Ok(randell_table(a)?.swap_remove(sel.mask() as usize))
}

fn randell_group(a: &ExponentList) -> Result<AbelianGroup> {
    let len = a.len();
    let cs = randell_table(a)?;
    let kappas = kappa_table(a);
    // k(I_s) = κ(I_s) when n + 1 - s is odd. The empty subset takes part.
    let weighted: Vec<(usize, &BigInt)> = (0..1usize << len)
        .filter(|&m| (len - m.count_ones() as usize) % 2 == 1 && !cs[m].is_one())
        .filter_map(|m| {
            let k = kappas[m].to_usize()?;
            (k > 0).then_some((k, &cs[m]))
        })
        .collect();
    let r = weighted.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let torsion = (1..=r)
        .map(|j| {
            weighted
                .iter()
                .filter(|(k, _)| *k >= j)
                .map(|(_, c)| (*c).clone())
                .product()
        })
        .collect();
    let free = kappas[(1usize << len) - 1]
        .to_usize()
        .ok_or_else(|| Error::Domain(format!("free rank of {a} does not fit in usize")))?;
    Ok(AbelianGroup::new(free, torsion))
}

/// `H_{n-1}(Σ(a); Z)` by Randell's formula.
pub fn randell_homology(a: &ExponentList) -> Result<AbelianGroup> {
    if a.len() < 3 {
        return Err(Error::UnsupportedDimension(format!(
            "{a} is a torus link; H_0 = Z^{} and H_1 = Z^{}",
            kappa(a, a.full()) + 1,
            kappa(a, a.full()) + 1
        )));
    }
    randell_group(a)
}

/// Randell's answer together with a flag for 3-dimensional links, where the
/// formula lies outside the (n-2)-connected range, and the Smith-form answer
/// for those cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandellReport {
    pub group: AbelianGroup,
    pub unverified_convention: bool,
    pub smith: Option<AbelianGroup>,
}

/// Largest Milnor number for which the Smith-form cross-check is attached.
pub const SMITH_ORACLE_LIMIT: u64 = 400;

pub fn randell_report(a: &ExponentList) -> Result<RandellReport> {
    let group = randell_homology(a)?;
    let flagged = a.len() == 3;
    let smith = if flagged && milnor_number(a) <= BigInt::from(SMITH_ORACLE_LIMIT) {
        Some(smith_homology(a)?)
    } else {
        None
    };
    Ok(RandellReport {
        group,
        unverified_convention: flagged,
        smith,
    })
}

/// `H_{n-1}(Σ(a); Z)` as the cokernel of the Pham intersection matrix.
pub fn smith_homology(a: &ExponentList) -> Result<AbelianGroup> {
    Ok(crate::classify::pham_matrix(a)?.cokernel())
}

/// All integral homology groups of a link of dimension `2n - 1 ≥ 5`.
pub fn full_homology(a: &ExponentList) -> Result<BTreeMap<usize, AbelianGroup>> {
    let n = a.n();
    if n < 3 {
        return Err(Error::UnsupportedDimension(format!(
            "full homology needs a simply connected link (n ≥ 3), {a} has n = {n}"
        )));
    }
    let middle = randell_homology(a)?;
    let free = middle.free_rank();
    let mut out = BTreeMap::new();
    for d in 0..2 * n {
        out.insert(d, AbelianGroup::trivial());
    }
    out.insert(0, AbelianGroup::free(1));
    out.insert(2 * n - 1, AbelianGroup::free(1));
    out.insert(n - 1, middle);
    out.insert(n, AbelianGroup::free(free));
    Ok(out)
}

/// Rational Betti numbers of the link: 1 in degrees 0 and `2n - 1`, κ in
/// degrees `n - 1` and `n`.
pub fn rational_betti(a: &ExponentList) -> GradedRanks {
    let n = a.n() as i64;
    let k = kappa(a, a.full());
    let mut g = GradedRanks::new();
    g.add(0, 1);
    g.add(2 * n - 1, 1);
    g.add(n - 1, k.clone());
    g.add(n, k);
    g
}

/// `H^{S^1}_*(Σ(a); Q)`: rank 1 in each even degree `0..=2n-2`, plus κ in
/// degree `n - 1`.
pub fn equivariant_homology(a: &ExponentList) -> GradedRanks {
    let n = a.n() as i64;
    let mut g = GradedRanks::new();
    for d in (0..=2 * n - 2).step_by(2) {
        g.add(d, 1);
    }
    g.add(n - 1, kappa(a, a.full()));
    g
}

/// `H_*(W, ∂W; Q)` for the Milnor fiber `W`: rank μ in degree n, 1 in 2n.
pub fn filling_relative_homology(a: &ExponentList) -> GradedRanks {
    let n = a.n() as i64;
    let mut g = GradedRanks::new();
    g.add(2 * n, 1);
    g.add(n, milnor_number(a));
    g
}

/// Connected-sum recipe of Brieskorn 5-manifolds with
/// `H_2 = Z^m ⊕ ⨁ (Z_q ⊕ Z_q)`: `m` copies of `Σ(2,2,2,2)`, and for each
/// prime power q either `Σ(q,3,3,3)` or, for powers of 3, `Σ(q,4,4,2)`.
pub fn realize_spin5(free_pairs: usize, prime_powers: &[u64]) -> Result<Vec<ExponentList>> {
    let mut out = Vec::new();
    let s2s3 = ExponentList::new(vec![2, 2, 2, 2])?;
    for _ in 0..free_pairs {
        out.push(s2s3.clone());
    }
    for &q in prime_powers {
        let (p, _) = prime_power(q)
            .ok_or_else(|| Error::Validation(format!("{q} is not a prime power ≥ 2")))?;
        let summand = if p == 3 {
            ExponentList::new(vec![q, 4, 4, 2])?
        } else {
            ExponentList::new(vec![q, 3, 3, 3])?
        };
        let expected = AbelianGroup::new(0, vec![BigInt::from(q), BigInt::from(q)]);
        let got = randell_homology(&summand)?;
        if got != expected {
            return Err(Error::Consistency(format!(
                "{summand} has H_2 = {got}, expected {expected}"
            )));
        }
        out.push(summand);
    }
    if out.is_empty() {
        out.push(ExponentList::new(vec![1, 2, 2, 2])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[u64]) -> ExponentList {
        ExponentList::new(v.to_vec()).unwrap()
    }

    fn sel(pos: &[usize], len: usize) -> SubsetSelector {
        SubsetSelector::from_positions(pos, len).unwrap()
    }

    fn zp2(p: u64) -> AbelianGroup {
        AbelianGroup::new(0, vec![BigInt::from(p), BigInt::from(p)])
    }

    #[test]
    fn group_equality_ignores_presentation() {
        let a = AbelianGroup::new(1, vec![BigInt::from(6), BigInt::from(2)]);
        let b = AbelianGroup::new(1, vec![BigInt::from(2), BigInt::from(3), BigInt::from(2)]);
        assert_eq!(a, b);
        assert_eq!(a.primary_components(), Some(vec![2, 2, 3]));
        assert_ne!(
            a,
            AbelianGroup::new(1, vec![BigInt::from(4), BigInt::from(3)])
        );
        assert_eq!(
            AbelianGroup::new(0, vec![BigInt::from(0), BigInt::from(1)]),
            AbelianGroup::free(1)
        );
        assert_eq!(a.to_string(), "Z + Z_6 + Z_2");
    }

    #[test]
    fn randell_c_examples() {
        for p in [2u64, 4, 5, 7] {
            let a = ex(&[p, 3, 3, 3]);
            assert_eq!(randell_c(&a, sel(&[0], 4)).unwrap(), BigInt::from(3));
            assert_eq!(randell_c(&a, sel(&[1, 2, 3], 4)).unwrap(), BigInt::from(p));
            assert_eq!(randell_c(&a, sel(&[], 4)).unwrap(), BigInt::from(1));
            assert_eq!(randell_c(&a, a.full()).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn randell_examples() {
        assert_eq!(randell_homology(&ex(&[5, 3, 3, 3])).unwrap(), zp2(5));
        assert_eq!(
            randell_homology(&ex(&[2, 2, 2, 2])).unwrap(),
            AbelianGroup::free(1)
        );
        assert_eq!(
            randell_homology(&ex(&[3, 2, 2, 2, 2])).unwrap(),
            AbelianGroup::cyclic(3)
        );
        assert!(matches!(
            randell_homology(&ex(&[2, 3])),
            Err(Error::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn empty_subset_enters_torsion() {
        // gcd of all exponents is 2 and n + 1 = 3 is odd
        let a = ex(&[2, 2, 2]);
        assert_eq!(randell_homology(&a).unwrap(), AbelianGroup::cyclic(2));
        assert_eq!(smith_homology(&a).unwrap(), AbelianGroup::cyclic(2));
        let a = ex(&[3, 3, 6]);
        assert_eq!(randell_homology(&a).unwrap(), smith_homology(&a).unwrap());
    }

    #[test]
    fn report_flags_three_dimensional_links() {
        let r = randell_report(&ex(&[2, 3, 5])).unwrap();
        assert!(r.unverified_convention);
        assert_eq!(r.smith, Some(AbelianGroup::trivial()));
        assert!(
            !randell_report(&ex(&[2, 2, 2, 2]))
                .unwrap()
                .unverified_convention
        );
    }

    #[test]
    fn full_homology_examples() {
        let h = full_homology(&ex(&[2, 2, 2, 2])).unwrap();
        let expect = [1, 0, 1, 1, 0, 1];
        for (d, &r) in expect.iter().enumerate() {
            assert_eq!(h[&d], AbelianGroup::free(r), "degree {d}");
        }
        let h = full_homology(&ex(&[5, 3, 3, 3])).unwrap();
        assert_eq!(h[&2], zp2(5));
        assert!(h[&3].is_trivial());
        let h = full_homology(&ex(&[2, 3, 5, 7, 11])).unwrap();
        assert!((1..7).all(|d| h[&d].is_trivial()));
        assert!(full_homology(&ex(&[2, 2, 2])).is_err());
    }

    #[test]
    fn equivariant_examples() {
        let ranks = |v: &[u64]| -> Vec<i64> {
            let g = equivariant_homology(&ex(v));
            (0..=2 * (v.len() as i64 - 2))
                .map(|d| g.rank(d).try_into().unwrap())
                .collect()
        };
        assert_eq!(ranks(&[2, 2, 2]), vec![1, 0, 1]);
        assert_eq!(ranks(&[4, 2, 2, 2]), vec![1, 0, 2, 0, 1]);
        assert_eq!(ranks(&[3, 2, 2, 2]), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn relative_examples() {
        let g = filling_relative_homology(&ex(&[2, 2, 2, 2]));
        assert_eq!((g.rank(6), g.rank(3)), (BigInt::from(1), BigInt::from(1)));
        let g = filling_relative_homology(&ex(&[2, 2, 2, 3, 5]));
        assert_eq!((g.rank(8), g.rank(4)), (BigInt::from(1), BigInt::from(8)));
        let g = filling_relative_homology(&ex(&[1, 5]));
        assert_eq!(g.total_rank(), BigInt::from(1));
    }

    #[test]
    fn spin5_recipes() {
        assert_eq!(realize_spin5(0, &[]).unwrap(), vec![ex(&[1, 2, 2, 2])]);
        assert_eq!(
            realize_spin5(1, &[9, 4]).unwrap(),
            vec![ex(&[2, 2, 2, 2]), ex(&[9, 4, 4, 2]), ex(&[4, 3, 3, 3])]
        );
        assert_eq!(realize_spin5(0, &[5]).unwrap(), vec![ex(&[5, 3, 3, 3])]);
        assert!(realize_spin5(0, &[6]).is_err());
        assert!(realize_spin5(0, &[1]).is_err());
    }
}
