use num_integer::Integer;
use rand::Rng;

use super::{int, RMatrix, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;

/// Bijection on `{0, .., n-1}`.
///
/// As a matrix, `P e_i = e_{map[i]}`; see [`RMatrix::conjugate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v >= map.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse(format!("{:?} is not a permutation", map)));
            }
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.map.swap(a, b);
        p
    }

    /// Seeded Fisher-Yates shuffle.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            map.swap(i, j);
        }
        Self { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Self { map: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Self {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    /// Cycle lengths, sorted descending (fixed points included as 1s).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.map.len()];
        let mut lengths = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.map[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Group order: lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, |acc, l| acc.lcm(&l))
    }

    /// The permutation matrix `P` with `P e_i = e_{map[i]}`.
    pub fn to_matrix(&self) -> RMatrix {
        let n = self.map.len();
        let mut data = vec![Rational::zero(); n * n];
        for (i, &v) in self.map.iter().enumerate() {
            data[v * n + i] = int(1);
        }
        RMatrix::from_raw(n, data)
    }

    /// All permutations of `n` points in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some((0..n).collect::<Vec<_>>());
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            if next_lexicographic(&mut succ) {
                next = Some(succ);
            }
            Some(Permutation { map: current })
        })
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
