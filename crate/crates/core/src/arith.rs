//! Exact integer, rational and polynomial arithmetic, plus the bits of
//! elementary number theory the rest of the crate leans on.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Least common multiple, `None` on `u64` overflow.
pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / a.gcd(&b)).checked_mul(b)
}

/// Möbius function. `moebius(1) == 1`.
pub fn moebius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::Domain("moebius is undefined at 0".into()));
    }
    let mut m = n;
    let mut sign = 1;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::Domain("divisors of 0".into()));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Prime factorization as `(prime, exponent)` pairs, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, e)` when `q = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Classical signed Bernoulli numbers `B_0 ..= B_m` (with `B_1 = -1/2`).
fn signed_bernoulli_table(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for n in 1..=m {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Bernoulli numbers in the unsigned, odd-index-suppressed numbering
/// `B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, ...`, i.e. `|B_{2k}|` classically.
pub fn bernoulli(k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain(
            "Bernoulli numbers are numbered from 1".into(),
        ));
    }
    let table = signed_bernoulli_table(2 * k as usize);
    Ok(table[2 * k as usize].abs())
}

/// Dense integer polynomial; `coeffs[i]` is the coefficient of `t^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `1 - t^d`.
    pub fn one_minus_power(d: usize) -> Self {
        let mut c = vec![BigInt::zero(); d + 1];
        c[0] = BigInt::one();
        c[d] -= BigInt::one();
        Self::new(c)
    }

    /// `t - 1`.
    pub fn t_minus_one() -> Self {
        Self::from_i64(&[-1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_rational(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * t + Rational::from_integer(c.clone())
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Long division over ℤ; `None` if some quotient coefficient is not
    /// integral or the divisor is zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead = divisor.leading()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact division; errors on any nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::NotAPolynomial(format!(
                "{self} is not divisible by {divisor}"
            ))),
        }
    }

    /// `t^deg · p(1/t)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplies by -1 if needed so the leading coefficient is positive.
    pub fn normalized_sign(&self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            match (show_coeff, i) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}t")?,
                (true, _) => write!(f, "{mag}t^{i}")?,
                (false, 1) => write!(f, "t")?,
                (false, _) => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Expands `Π f_i^{e_i}` with possibly negative exponents.
///
/// All positive powers are multiplied out first, then every negative power is
/// divided out one factor at a time. Each division must be exact.
pub fn formal_product_expand(factors: &[(IntPolynomial, i64)]) -> Result<IntPolynomial> {
    let mut acc = IntPolynomial::one();
    for (f, e) in factors.iter().filter(|(_, e)| *e > 0) {
        for _ in 0..*e {
            acc = acc.mul(f);
        }
    }
    for (f, e) in factors.iter().filter(|(_, e)| *e < 0) {
        for _ in 0..e.unsigned_abs() {
            acc = acc.div_exact(f)?;
        }
    }
    Ok(acc)
}

/// Largest `m` with `(t - 1)^m` dividing `p`.
pub fn multiplicity_at_one(p: &IntPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain(
            "multiplicity of a root of the zero polynomial".into(),
        ));
    }
    let lin = IntPolynomial::t_minus_one();
    let mut cur = p.clone();
    let mut m = 0;
    while cur.eval(&BigInt::one()).is_zero() {
        cur = cur.div_exact(&lin)?;
        m += 1;
    }
    Ok(m)
}

/// Integers `r_d` attached to the divisors of a period, with `s_d = d·r_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorWeights {
    period: u64,
    weights: BTreeMap<u64, BigInt>,
}

impl DivisorWeights {
    /// Keys that do not divide `period` are rejected; zero weights are dropped.
    pub fn new(period: u64, weights: BTreeMap<u64, BigInt>) -> Result<Self> {
        if period == 0 {
            return Err(Error::Domain("period must be positive".into()));
        }
        if let Some(bad) = weights
            .keys()
            .find(|&&d| d == 0 || !period.is_multiple_of(d))
        {
            return Err(Error::Validation(format!(
                "weight key {bad} does not divide period {period}"
            )));
        }
        let weights = weights.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        Ok(DivisorWeights { period, weights })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// `r_d`, zero for non-divisors.
    pub fn r(&self, d: u64) -> BigInt {
        self.weights.get(&d).cloned().unwrap_or_default()
    }

    /// `s_d = d·r_d`.
    pub fn s(&self, d: u64) -> BigInt {
        self.r(d) * BigInt::from(d)
    }

    /// Nonzero `(d, r_d)` pairs in increasing `d`.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.weights.iter().map(|(d, r)| (*d, r))
    }

    pub fn sum_r(&self) -> BigInt {
        self.weights.values().sum()
    }

    /// Recovers `χ_i = Σ_{d | i} s_d`.
    pub fn euler_characteristic(&self, i: u64) -> BigInt {
        self.weights
            .iter()
            .filter(|(d, _)| i.is_multiple_of(**d))
            .map(|(d, r)| r * BigInt::from(*d))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(matches!(moebius(0), Err(Error::Domain(_))));
    }

    #[test]
    fn bernoulli_convention() {
        assert_eq!(bernoulli(1).unwrap(), rational(1, 6));
        assert_eq!(bernoulli(2).unwrap(), rational(1, 30));
        assert_eq!(bernoulli(3).unwrap(), rational(1, 42));
        assert_eq!(bernoulli(4).unwrap(), rational(1, 30));
        assert_eq!(bernoulli(6).unwrap(), rational(691, 2730));
        assert!(bernoulli(0).is_err());
    }

    #[test]
    fn bernoulli_von_staudt_clausen() {
        for k in 1..=10u32 {
            let den: u64 = (2..=2 * k as u64 + 1)
                .filter(|&q| prime_power(q).is_some_and(|(_, e)| e == 1))
                .filter(|&q| (2 * k as u64).is_multiple_of(q - 1))
                .product();
            assert_eq!(bernoulli(k).unwrap().denom(), &BigInt::from(den), "k = {k}");
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(30).unwrap(), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn expand_examples() {
        let geo = formal_product_expand(&[
            (IntPolynomial::one_minus_power(3), 1),
            (IntPolynomial::one_minus_power(1), -1),
        ])
        .unwrap();
        assert_eq!(geo, p(&[1, 1, 1]));

        let id = formal_product_expand(&[(IntPolynomial::one_minus_power(1), 1)]).unwrap();
        assert_eq!(id, p(&[1, -1]));

        let mixed = formal_product_expand(&[
            (IntPolynomial::one_minus_power(2), 1),
            (IntPolynomial::one_minus_power(3), 1),
            (IntPolynomial::one_minus_power(1), -2),
        ])
        .unwrap();
        // multiply-out oracle: (1 + t)(1 + t + t^2)
        assert_eq!(mixed, p(&[1, 1]).mul(&p(&[1, 1, 1])));
        assert_eq!(mixed, p(&[1, 2, 2, 1]));
    }

    #[test]
    fn expand_rejects_non_polynomial() {
        let err = formal_product_expand(&[
            (IntPolynomial::one_minus_power(2), 1),
            (IntPolynomial::one_minus_power(3), -1),
        ]);
        assert!(matches!(err, Err(Error::NotAPolynomial(_))));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity_at_one(&p(&[1, 1, 1])).unwrap(), 0);
        assert_eq!(
            multiplicity_at_one(&IntPolynomial::t_minus_one().pow(2)).unwrap(),
            2
        );
        assert_eq!(multiplicity_at_one(&p(&[1, -2, 1])).unwrap(), 2);
        assert!(multiplicity_at_one(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(p(&[-3]).to_string(), "-3");
        assert_eq!(p(&[0, 2]).to_string(), "2t");
    }

    #[test]
    fn divisor_weights_reject_foreign_keys() {
        let mut w = BTreeMap::new();
        w.insert(5, BigInt::one());
        assert!(DivisorWeights::new(6, w).is_err());
    }
}
