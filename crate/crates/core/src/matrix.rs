//! Dense square integer matrices, Smith normal form, and exact determinants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::homology::AbelianGroup;

/// Square matrix of arbitrary-precision integers, optionally carrying one
/// label per basis vector.
#[derive(Clone)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    labels: Vec<Vec<u64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Validation(format!(
                "row {bad} has length {} in a {n}x{n} matrix",
                rows[bad].len()
            )));
        }
        Ok(IntMatrix {
            rows,
            labels: Vec::new(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); n]; n],
            labels: Vec::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<u64>>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(Error::Validation(format!(
                "{} labels for a matrix of size {}",
                labels.len(),
                self.size()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[Vec<u64>] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let rows = (0..n)
            .map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            labels: self.labels.clone(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..=i).all(|j| self.rows[i][j] == -&self.rows[j][i]))
    }

    /// Nonzero diagonal of a Smith form (absolute values, unsorted), plus the
    /// rank.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        smith_diagonal(self.rows.clone())
    }

    /// `Z^n / image`, where the matrix acts on column vectors.
    pub fn cokernel(&self) -> AbelianGroup {
        let diag = self.smith_diagonal();
        let free = self.size() - diag.len();
        AbelianGroup::new(free, diag)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.size();
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }
}

/// Equality compares entries only; labels are descriptive.
impl PartialEq for IntMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for IntMatrix {}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            )
            .finish()
    }
}

fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&m, t) else {
                return diag;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&pivot);
                let (head, tail) = m.split_at_mut(i);
                for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * y;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&pivot);
                for row in m[t..].iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                clean &= m[t][j].is_zero();
            }
            if clean {
                diag.push(pivot.abs());
                break;
            }
        }
    }
    diag
}

fn min_abs_entry(m: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                let unit = a.is_one();
                best = Some((i, j, a));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_of_diagonal_and_mixed() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(m.cokernel(), AbelianGroup::new(0, vec![BigInt::from(6)]));
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).unwrap();
        let c = m.cokernel();
        assert_eq!(
            c.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        assert_eq!(m.determinant().abs(), BigInt::from(144));
    }

    #[test]
    fn zero_matrix_is_free() {
        let m = IntMatrix::zeros(3);
        assert_eq!(m.cokernel(), AbelianGroup::free(3));
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn symmetry_checks() {
        let s = IntMatrix::from_i64(&[&[-2, 1], &[1, -2]]).unwrap();
        assert!(s.is_symmetric() && !s.is_antisymmetric());
        let k = IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]).unwrap();
        assert!(k.is_antisymmetric() && k.transpose() != k);
        assert_eq!(s.determinant(), BigInt::from(3));
        assert!(IntMatrix::from_i64(&[&[1, 2]]).is_err());
    }
}
