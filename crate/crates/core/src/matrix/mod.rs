//! Dense square matrices with exact rational entries.
//!
//! Every [`RMatrix`] is nonnegative: the check happens once, at construction,
//! and every operation in this module preserves it. Downstream modules rely on
//! that to reason about zero patterns, since sums of nonnegative terms never
//! cancel.

mod io;
mod pattern;
mod permutation;
mod rank;

pub use io::{format_rational, parse_csv, parse_json, parse_matrix, parse_rational, MatrixJson};
pub use pattern::PatternMatrix;
pub use permutation::Permutation;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Square nonnegative matrix over the rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    /// Builds an `n x n` matrix from row-major entries, rejecting negative values.
    pub fn new(n: usize, data: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} entries for n = {}, got {}",
                n * n,
                n,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|x| x.is_negative()) {
            return Err(Error::NegativeEntry {
                row: pos / n,
                col: pos % n,
                value: data[pos].to_string(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != n) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {} rows",
                bad.len(),
                n
            )));
        }
        Self::new(n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.as_ref().iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    // Internal constructor for results of operations that preserve nonnegativity.
    pub(crate) fn from_raw(n: usize, data: Vec<Rational>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        debug_assert!(data.iter().all(|x| !x.is_negative()));
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_raw(n, vec![Rational::zero(); n * n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// 0/1 matrix with ones where `p` is set.
    pub fn indicator(p: &PatternMatrix) -> Self {
        let n = p.n();
        let data = (0..n * n).map(|k| int(p.get(k / n, k % n) as i64)).collect();
        Self::from_raw(n, data)
    }

    /// All-ones `n x n` matrix scaled by `1/n`: the uniform positive idempotent.
    pub fn uniform_idempotent(n: usize) -> Self {
        Self::from_raw(n, vec![ratio(1, n as i64); n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.data.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Every entry strictly positive.
    pub fn is_positive(&self) -> bool {
        self.data.iter().all(Signed::is_positive)
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &Rational> {
        (0..self.n).map(move |i| self.get(i, i))
    }

    pub fn has_zero_diagonal_entry(&self) -> bool {
        self.diagonal().any(Zero::is_zero)
    }

    pub fn multiply(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &RMatrix) -> RMatrix {
        let n = self.n;
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        *cell += a * b;
                    }
                }
            }
        }
        RMatrix::from_raw(n, out)
    }

    /// `self^k` by repeated squaring; `power(0)` is the identity.
    pub fn power(&self, mut k: u64) -> RMatrix {
        let mut result = RMatrix::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Kronecker product: block `(i, j)` of the result is `a_ij * other`.
    pub fn kron(&self, other: &RMatrix) -> RMatrix {
        let (p, q) = (self.n, other.n);
        let n = p * q;
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..p {
            for j in 0..p {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..q {
                    for l in 0..q {
                        out[(i * q + k) * n + j * q + l] = a * other.get(k, l);
                    }
                }
            }
        }
        RMatrix::from_raw(n, out)
    }

    /// Rank over the rationals, computed by fraction-free elimination.
    pub fn exact_rank(&self) -> usize {
        rank::bareiss_rank(self)
    }

    pub fn trace(&self) -> Rational {
        self.diagonal().fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Zero/nonzero pattern.
    pub fn pattern(&self) -> PatternMatrix {
        PatternMatrix::from_fn(self.n, |i, j| !self.get(i, j).is_zero())
    }

    /// `P^{-1} A P` for the permutation matrix `P e_i = e_{p(i)}`, i.e.
    /// entry `(i, j)` of the result is `a[p(i)][p(j)]`.
    pub fn conjugate(&self, p: &Permutation) -> Result<RMatrix> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        Ok(RMatrix::from_raw(
            self.n,
            (0..self.n)
                .flat_map(|i| (0..self.n).map(move |j| (i, j)))
                .map(|(i, j)| self.get(p.apply(i), p.apply(j)).clone())
                .collect(),
        ))
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> RMatrix {
        let m = indices.len();
        let mut out = Vec::with_capacity(m * m);
        for &i in indices {
            for &j in indices {
                out.push(self.get(i, j).clone());
            }
        }
        RMatrix::from_raw(m, out)
    }

    /// Direct sum `blocks[0] ⊕ blocks[1] ⊕ ...`.
    pub fn direct_sum(blocks: &[RMatrix]) -> Result<RMatrix> {
        let n: usize = blocks.iter().map(RMatrix::n).sum();
        if n == 0 {
            return Err(Error::Shape("direct sum of no blocks".into()));
        }
        let mut out = RMatrix::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.data[(offset + i) * n + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.n;
        }
        Ok(out)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson::from(self)
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RMatrix{}", self)
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .rows()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", c, width = width)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
