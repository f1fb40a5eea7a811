use std::fmt;

/// Boolean zero/nonzero pattern of a square matrix.
///
/// Rows are packed into 64-bit words. For nonnegative matrices the pattern of
/// a product is the boolean product of the patterns, which is what makes
/// pattern semigroups a faithful proxy for rational ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl PatternMatrix {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut p = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    p.set(i, j, true);
                }
            }
        }
        p
    }

    pub fn from_bools<R: AsRef<[bool]>>(rows: &[R]) -> Self {
        Self::from_fn(rows.len(), |i, j| rows[i].as_ref()[j])
    }

    /// Pattern of the `n x n` 0/1 matrix whose bits are read row-major from `code`.
    pub fn from_code(n: usize, code: u64) -> Self {
        debug_assert!(n * n <= 64);
        Self::from_fn(n, |i, j| code >> (i * n + j) & 1 == 1)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| i == j)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Boolean product over the (or, and) semiring.
    pub fn product(&self, other: &PatternMatrix) -> PatternMatrix {
        assert_eq!(self.n, other.n, "pattern dimension mismatch");
        let mut out = PatternMatrix::empty(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self.get(i, k) {
                    let src = other.row(k);
                    let dst = &mut out.bits[i * out.words..(i + 1) * out.words];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= s;
                    }
                }
            }
        }
        out
    }

    /// Entrywise or.
    pub fn union(&self, other: &PatternMatrix) -> PatternMatrix {
        assert_eq!(self.n, other.n, "pattern dimension mismatch");
        PatternMatrix {
            n: self.n,
            words: self.words,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn any(&self) -> bool {
        self.bits.iter().any(|&w| w != 0)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.n * self.n
    }

    /// First false position in row-major order.
    pub fn first_zero(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j))
    }

    /// Column `j` as the list of rows holding a true bit.
    pub fn column_support(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.get(i, j))
    }
}

impl fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "/")?;
            }
            for j in 0..self.n {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
        }
        write!(f, "]")
    }
}
