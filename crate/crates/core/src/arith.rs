//! Exact integer and rational arithmetic.
//!
//! Everything here is arbitrary precision. Chain discriminants are small, but
//! they end up multiplied into degree equations, so no fixed-width shortcut is
//! offered anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Reduced fraction of two [`BigInt`]s with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("Fibonacci numbers are indexed from 1 (F_1 = F_2 = 1), got index {0}")]
    FibonacciIndex(i64),
    #[error("dimension mismatch: matrix is {rows}x{rows}, right-hand side has {rhs} entries")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Shorthand for an exact rational `num/den`. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `F_n` with `F_1 = F_2 = 1`.
pub fn fibonacci(n: i64) -> Result<BigInt, ArithError> {
    if n < 1 {
        return Err(ArithError::FibonacciIndex(n));
    }
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    for _ in 1..n {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Dense square matrix of big integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows; returns `None` if the rows are ragged or not square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return None;
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Some(IntMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn negated(&self) -> Self {
        IntMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// The leading `k`x`k` block.
    pub fn leading_minor(&self, k: usize) -> Self {
        assert!(k <= self.dim);
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ArithError> {
        if v.len() != self.dim {
            return Err(ArithError::DimensionMismatch {
                rows: self.dim,
                rhs: v.len(),
            });
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, x)| acc + x * a)
            })
            .collect())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .finish()
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination. The empty matrix has determinant 1.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.rows().map(|r| r.to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev_pivot = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Sylvester's identity guarantees exact division.
                a[i][j] = t / &prev_pivot;
            }
        }
        prev_pivot = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves `m * x = rhs` exactly by Gauss-Jordan elimination over the rationals.
pub fn solve_rational(m: &IntMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, ArithError> {
    let n = m.dim();
    if rhs.len() != n {
        return Err(ArithError::DimensionMismatch {
            rows: n,
            rhs: rhs.len(),
        });
    }
    let mut a: Vec<Vec<Rational>> = m
        .rows()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r: Vec<Rational> = row.iter().cloned().map(Rational::from_integer).collect();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .ok_or(ArithError::Singular)?;
        a.swap(pivot, col);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for j in col..=n {
                let delta = &factor * &a[col][j];
                a[i][j] -= delta;
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// Sylvester's criterion on all leading principal minors.
pub fn is_positive_definite(m: &IntMatrix) -> bool {
    (1..=m.dim()).all(|k| determinant(&m.leading_minor(k)).is_positive())
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Formats a rational as `num/den`, always including the denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
