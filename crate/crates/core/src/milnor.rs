//! Monodromy data of the Milnor fibration: Weil zeta exponents, the Alexander
//! polynomial, and the determinant residue used by the sphere classification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::{formal_product_expand, DivisorWeights, IntPolynomial};
use crate::error::{Error, Result};
use crate::exponents::{divisor_weights, milnor_number, ExponentList};

/// Exponents `r_d` of `ζ_h(t) = Π_{d | lcm} (1 - t^d)^{-r_d}`.
pub fn weil_zeta(a: &ExponentList) -> Result<DivisorWeights> {
    divisor_weights(a)
}

/// Characteristic polynomial of the monodromy on `H_n` of the Milnor fiber,
/// normalized to be monic.
///
/// The traces `χ_ℓ - 1 = (-1)^n tr(h^ℓ)` give
/// `Π (t^d - 1)^{r_d} = (t - 1) Δ(t)^{(-1)^n}`.
pub fn alexander_polynomial(a: &ExponentList) -> Result<IntPolynomial> {
    let weights = weil_zeta(a)?;
    let sign: i64 = if a.n().is_multiple_of(2) { 1 } else { -1 };
    let mut factors = vec![(IntPolynomial::one_minus_power(1), -sign)];
    for (d, r) in weights.nonzero() {
        let d = usize::try_from(d)
            .map_err(|_| Error::Domain(format!("period {d} too large for a polynomial degree")))?;
        let r: i64 = r
            .try_into()
            .map_err(|_| Error::Domain(format!("zeta exponent {r} out of range")))?;
        factors.push((IntPolynomial::one_minus_power(d), sign * r));
    }
    let delta = formal_product_expand(&factors).map_err(|e| match e {
        Error::NotAPolynomial(m) => Error::Consistency(format!("Alexander polynomial of {a}: {m}")),
        other => other,
    })?;
    let delta = match delta.leading() {
        Some(c) if c.is_one() => delta,
        Some(c) if (-c).is_one() => delta.neg(),
        _ => {
            return Err(Error::Consistency(format!(
                "Alexander polynomial of {a} is not monic up to sign: {delta}"
            )))
        }
    };
    let mu = milnor_number(a);
    if BigInt::from(delta.degree().unwrap_or(0)) != mu {
        return Err(Error::Consistency(format!(
            "deg Δ = {:?} differs from the Milnor number {mu} for {a}",
            delta.degree()
        )));
    }
    Ok(delta)
}

/// `|Δ(-1)|`, the absolute determinant of the intersection form of the list
/// extended by one more exponent 2.
pub fn determinant_at_minus_one(a: &ExponentList) -> Result<BigInt> {
    if a.has_smooth_point() {
        return Ok(BigInt::one());
    }
    Ok(alexander_polynomial(a)?.eval(&BigInt::from(-1)).abs())
}

/// `|Δ(-1)|` with its residue mod 8, which must be odd.
pub fn det_mod8(a: &ExponentList) -> Result<(BigInt, u8)> {
    let det = determinant_at_minus_one(a)?;
    let residue = det.mod_floor(&BigInt::from(8));
    let residue = u8::try_from(residue).expect("residue lies in 0..8");
    if residue % 2 == 0 {
        return Err(Error::Consistency(format!(
            "|Δ(-1)| = {det} is even for {a}; the determinant dichotomy does not apply"
        )));
    }
    Ok((det, residue))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::multiplicity_at_one;
    use crate::exponents::kappa;
    use num_complex::Complex64;

    fn ex(v: &[u64]) -> ExponentList {
        ExponentList::new(v.to_vec()).unwrap()
    }

    /// Oracle: multiply out `Π (t - ζ^{k})` numerically over the eigenvalues
    /// `Π_j exp(2πi k_j / a_j)` and round the coefficients.
    fn eigenvalue_polynomial(a: &[u64]) -> Vec<i64> {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        let mut ks = vec![1u64; a.len()];
        loop {
            let angle: f64 = ks
                .iter()
                .zip(a)
                .map(|(&k, &x)| k as f64 / x as f64)
                .sum::<f64>()
                * std::f64::consts::TAU;
            let root = Complex64::from_polar(1.0, angle);
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * root;
            }
            coeffs = next;
            let mut j = 0;
            loop {
                if j == a.len() {
                    return coeffs.iter().map(|c| c.re.round() as i64).collect();
                }
                ks[j] += 1;
                if ks[j] < a[j] {
                    break;
                }
                ks[j] = 1;
                j += 1;
            }
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(
            alexander_polynomial(&ex(&[3, 2, 2, 2, 2])).unwrap(),
            IntPolynomial::from_i64(&[1, 1, 1])
        );
        assert_eq!(
            alexander_polynomial(&ex(&[2, 3])).unwrap(),
            IntPolynomial::from_i64(&[1, -1, 1])
        );
        assert_eq!(
            alexander_polynomial(&ex(&[1, 7])).unwrap(),
            IntPolynomial::one()
        );
    }

    #[test]
    fn alexander_matches_eigenvalue_oracle() {
        for v in [
            &[2u64, 3][..],
            &[2, 3, 5],
            &[3, 3, 3],
            &[4, 2, 2, 2],
            &[2, 2, 3, 5],
            &[6, 4, 3],
            &[5, 3, 2, 2],
        ] {
            let a = ex(v);
            let got = alexander_polynomial(&a).unwrap();
            let want = eigenvalue_polynomial(v);
            assert_eq!(got, IntPolynomial::from_i64(&want), "{a}");
            assert_eq!(
                multiplicity_at_one(&got).unwrap(),
                usize::try_from(kappa(&a, a.full())).unwrap()
            );
        }
    }

    #[test]
    fn zeta_examples() {
        let w = weil_zeta(&ex(&[3, 2, 2, 2, 2])).unwrap();
        for l in 1..=12 {
            assert_eq!(
                w.euler_characteristic(l),
                crate::exponents::lefschetz_euler(&ex(&[3, 2, 2, 2, 2]), l).unwrap()
            );
        }
        let w = weil_zeta(&ex(&[1, 9])).unwrap();
        assert!(w.nonzero().all(|(d, _)| d == 1));
    }

    #[test]
    fn det_examples() {
        assert_eq!(
            det_mod8(&ex(&[3, 2, 2, 2, 2, 2])).unwrap(),
            (BigInt::from(3), 3)
        );
        assert_eq!(
            det_mod8(&ex(&[5, 2, 2, 2, 2, 2])).unwrap(),
            (BigInt::from(5), 5)
        );
        assert_eq!(
            det_mod8(&ex(&[7, 2, 2, 2, 2, 2])).unwrap(),
            (BigInt::from(7), 7)
        );
        assert_eq!(det_mod8(&ex(&[1, 4, 4])).unwrap(), (BigInt::from(1), 1));
        assert!(det_mod8(&ex(&[4, 2, 2])).is_err());
    }
}
