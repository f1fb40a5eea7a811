//! Block-level structure of decomposable r-potent matrices.
//!
//! For a maximal block triangularization of an r-potent `A` of rank `k`, each
//! diagonal block should be zero or an indecomposable r-potent of rank at
//! most `r - 1`, the number `m` of nonzero blocks should satisfy
//! `ceil(k / (r - 1)) <= m <= k`, and the nonzero block ranks should add up
//! to `k`. The total block count is compared against `2k + 1` after the
//! blocks are reordered to separate zero blocks where the partial order
//! allows it.

use serde::Serialize;

use crate::decomposition::{block_triangularize, is_decomposable, BlockTriangularization};
use crate::error::Result;
use crate::potency::{is_r_potent, require_r_potent};
use crate::matrix::RMatrix;

/// Up to this many blocks the reordering search is exhaustive.
pub const EXHAUSTIVE_REORDER_LIMIT: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct BlockRecord {
    pub size: usize,
    pub is_zero: bool,
    pub block_rank: usize,
    pub block_is_r_potent: bool,
    pub block_is_indecomposable: bool,
}

impl BlockRecord {
    /// Zero, or an indecomposable r-potent of rank at most `r - 1`.
    pub fn satisfies_block_claim(&self, r: u32) -> bool {
        self.is_zero
            || (self.block_is_r_potent
                && self.block_is_indecomposable
                && self.block_rank <= (r - 1) as usize)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// False for indecomposable input: one trivial block, bounds not checked.
    pub applicable: bool,
    pub k: usize,
    pub r: u32,
    pub blocks: Vec<BlockRecord>,
    pub block_sizes: Vec<usize>,
    pub nonzero_count: usize,
    pub total_count: usize,
    pub rank_sum: usize,
    /// `ceil(k / (r - 1))`.
    pub lower_bound: usize,
    /// Adjacent zero/zero block pairs in the block order the report uses,
    /// which minimises that count over the linear extensions searched.
    pub consecutive_zero_pairs: usize,
    /// Adjacent zero/zero pairs in the default deterministic order.
    pub default_order_zero_pairs: usize,
    pub blocks_ok: bool,
    pub rank_sum_ok: bool,
    /// `ceil(k/(r-1)) <= nonzero_count <= k` and `total_count <= 2k + 1`.
    pub bounds_ok: bool,
}

impl StructureReport {
    pub fn nonzero_bounds_ok(&self) -> bool {
        self.lower_bound <= self.nonzero_count && self.nonzero_count <= self.k
    }

    pub fn total_bound_ok(&self) -> bool {
        self.total_count <= 2 * self.k + 1
    }

    /// Holds whenever zero blocks could be fully separated.
    pub fn separated_total_bound_ok(&self) -> bool {
        self.consecutive_zero_pairs > 0 || self.total_bound_ok()
    }
}

pub fn analyze_structure(a: &RMatrix, r: u32) -> Result<StructureReport> {
    require_r_potent(a, r)?;
    let k = a.exact_rank();
    let base = block_triangularize(a);
    let default_pairs = zero_pairs(&zero_flags(&base));
    let t = reorder_to_avoid_consecutive_zeros(&base);

    let blocks: Vec<BlockRecord> = t
        .diagonal_blocks
        .iter()
        .map(|b| {
            Ok(BlockRecord {
                size: b.n(),
                is_zero: b.is_zero(),
                block_rank: b.exact_rank(),
                block_is_r_potent: is_r_potent(b, r)?,
                block_is_indecomposable: !is_decomposable(b),
            })
        })
        .collect::<Result<_>>()?;

    let nonzero_count = blocks.iter().filter(|b| !b.is_zero).count();
    let rank_sum = blocks.iter().map(|b| b.block_rank).sum();
    let lower_bound = k.div_ceil((r - 1) as usize);
    let pairs = zero_pairs(&blocks.iter().map(|b| b.is_zero).collect::<Vec<_>>());
    let mut report = StructureReport {
        applicable: !t.is_trivial,
        k,
        r,
        block_sizes: t.block_sizes.clone(),
        nonzero_count,
        total_count: blocks.len(),
        rank_sum,
        lower_bound,
        consecutive_zero_pairs: pairs,
        default_order_zero_pairs: default_pairs,
        blocks_ok: blocks.iter().all(|b| b.satisfies_block_claim(r)),
        rank_sum_ok: rank_sum == k,
        bounds_ok: false,
        blocks,
    };
    report.bounds_ok = report.nonzero_bounds_ok() && report.total_bound_ok();
    Ok(report)
}

fn zero_flags(t: &BlockTriangularization) -> Vec<bool> {
    t.diagonal_blocks.iter().map(RMatrix::is_zero).collect()
}

fn zero_pairs(zero: &[bool]) -> usize {
    zero.windows(2).filter(|w| w[0] && w[1]).count()
}

/// Searches linear extensions of the block order for one with the fewest
/// adjacent zero/zero diagonal blocks. Exhaustive (branch and bound) up to
/// [`EXHAUSTIVE_REORDER_LIMIT`] blocks, greedy beyond. Ties keep the
/// earliest order in lexicographic search order, so an input that is already
/// optimal comes back unchanged.
pub fn reorder_to_avoid_consecutive_zeros(t: &BlockTriangularization) -> BlockTriangularization {
    let zero = zero_flags(t);
    if zero_pairs(&zero) == 0 {
        return t.clone();
    }
    let order = if t.block_count() <= EXHAUSTIVE_REORDER_LIMIT {
        exhaustive_order(t, &zero)
    } else {
        greedy_order(t, &zero)
    };
    t.reordered(&order).expect("search only emits linear extensions")
}

struct Search<'a> {
    t: &'a BlockTriangularization,
    zero: &'a [bool],
    placed: Vec<bool>,
    order: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
}

impl Search<'_> {
    fn available(&self, b: usize) -> bool {
        !self.placed[b] && self.t.block_successors(b).iter().all(|&s| self.placed[s])
    }

    // Remaining zeros Z and nonzeros N, after a zero block: at least Z - N
    // more pairs; otherwise at least Z - N - 1.
    fn lower_bound(&self) -> usize {
        let (mut z, mut nz) = (0usize, 0usize);
        for b in 0..self.zero.len() {
            if !self.placed[b] {
                if self.zero[b] {
                    z += 1;
                } else {
                    nz += 1;
                }
            }
        }
        let slack = match self.order.last() {
            Some(&b) if self.zero[b] => nz,
            _ => nz + 1,
        };
        z.saturating_sub(slack)
    }

    fn run(&mut self, pairs: usize) {
        if let Some((best, _)) = &self.best {
            if *best == 0 || pairs + self.lower_bound() >= *best {
                return;
            }
        }
        if self.order.len() == self.zero.len() {
            self.best = Some((pairs, self.order.clone()));
            return;
        }
        for b in 0..self.zero.len() {
            if !self.available(b) {
                continue;
            }
            let extra = match self.order.last() {
                Some(&last) if self.zero[last] && self.zero[b] => 1,
                _ => 0,
            };
            self.placed[b] = true;
            self.order.push(b);
            self.run(pairs + extra);
            self.order.pop();
            self.placed[b] = false;
        }
    }
}

fn exhaustive_order(t: &BlockTriangularization, zero: &[bool]) -> Vec<usize> {
    let mut s = Search {
        t,
        zero,
        placed: vec![false; zero.len()],
        order: Vec::with_capacity(zero.len()),
        best: None,
    };
    s.run(0);
    s.best.expect("the block order itself is a linear extension").1
}

fn greedy_order(t: &BlockTriangularization, zero: &[bool]) -> Vec<usize> {
    let k = zero.len();
    let mut placed = vec![false; k];
    let mut order: Vec<usize> = Vec::with_capacity(k);
    while order.len() < k {
        let avail: Vec<usize> = (0..k)
            .filter(|&b| !placed[b] && t.block_successors(b).iter().all(|&s| placed[s]))
            .collect();
        let after_zero = order.last().is_some_and(|&b| zero[b]);
        let pick = avail
            .iter()
            .copied()
            .find(|&b| zero[b] != after_zero)
            .unwrap_or(avail[0]);
        placed[pick] = true;
        order.push(pick);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, Permutation};

    fn cycle(len: usize) -> RMatrix {
        Permutation::new((0..len).map(|i| (i + 1) % len).collect())
            .unwrap()
            .to_matrix()
    }

    fn uniform_blocks(r: usize) -> RMatrix {
        let blocks: Vec<RMatrix> = (1..r).map(RMatrix::uniform_idempotent).collect();
        RMatrix::direct_sum(&blocks).unwrap()
    }

    #[test]
    fn uniform_block_example() {
        for r in 3..7u32 {
            let a = uniform_blocks(r as usize);
            let rep = analyze_structure(&a, r).unwrap();
            assert!(rep.applicable);
            assert_eq!(rep.k, (r - 1) as usize);
            assert_eq!(rep.nonzero_count, rep.k);
            assert!(rep.blocks.iter().all(|b| !b.is_zero && b.block_rank == 1));
            assert!(rep.blocks_ok && rep.rank_sum_ok && rep.bounds_ok);
        }
    }

    #[test]
    fn kron_of_swaps() {
        let s = cycle(2);
        let rep = analyze_structure(&s.kron(&s), 3).unwrap();
        assert_eq!(rep.k, 4);
        // (0 3)(1 2) as a permutation of 4 points: two 2-cycles
        assert_eq!(rep.block_sizes, vec![2, 2]);
        assert!(rep.blocks.iter().all(|b| b.block_rank == 2));
        assert!(rep.nonzero_count >= 2 && rep.nonzero_count <= 4);
        assert!(rep.bounds_ok);
    }

    #[test]
    fn indecomposable_is_not_applicable() {
        let rep = analyze_structure(&cycle(3), 4).unwrap();
        assert!(!rep.applicable);
        assert_eq!(rep.total_count, 1);
    }

    #[test]
    fn rejects_non_potent() {
        let nil = RMatrix::from_ints(&[[0, 1], [0, 0]]).unwrap();
        assert!(analyze_structure(&nil, 2).is_err());
    }

    #[test]
    fn separates_incomparable_zeros() {
        // [0] ⊕ [0] ⊕ [1]: default order puts the two zeros together
        let a = RMatrix::direct_sum(&[RMatrix::zeros(2), RMatrix::identity(1)]).unwrap();
        let t = block_triangularize(&a);
        assert_eq!(zero_pairs(&zero_flags(&t)), 1);
        let best = reorder_to_avoid_consecutive_zeros(&t);
        assert_eq!(zero_flags(&best), vec![true, false, true]);
        assert!(best.is_block_upper_triangular());
    }

    #[test]
    fn unchanged_when_already_separated() {
        let single = block_triangularize(&RMatrix::zeros(1));
        assert_eq!(reorder_to_avoid_consecutive_zeros(&single).components, single.components);
        let a = RMatrix::direct_sum(&[RMatrix::zeros(1), RMatrix::identity(1), RMatrix::zeros(1)])
            .unwrap();
        let t = block_triangularize(&a);
        let r = reorder_to_avoid_consecutive_zeros(&t);
        assert_eq!(r.components, t.components);
    }

    #[test]
    fn inseparable_zeros_are_reported() {
        // [1] ⊕ 0_3 is idempotent (and 3-potent) of rank 1; no order keeps the
        // three zero blocks apart, and 4 blocks exceed 2k + 1 = 3.
        let a = RMatrix::direct_sum(&[RMatrix::identity(1), RMatrix::zeros(3)]).unwrap();
        let rep = analyze_structure(&a, 3).unwrap();
        assert_eq!(rep.k, 1);
        assert_eq!(rep.total_count, 4);
        assert_eq!(rep.consecutive_zero_pairs, 1);
        assert!(!rep.total_bound_ok());
        assert!(rep.separated_total_bound_ok());
        assert!(rep.blocks_ok && rep.rank_sum_ok && rep.nonzero_bounds_ok());
    }

    #[test]
    fn greedy_matches_exhaustive_on_small_cases() {
        // zeros feeding into a nonzero block must come after it
        let a = RMatrix::from_ints(&[
            [0, 1, 0, 0, 1],
            [1, 0, 0, 1, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
        ])
        .unwrap();
        let t = block_triangularize(&a);
        let zero = zero_flags(&t);
        let ex = exhaustive_order(&t, &zero);
        let gr = greedy_order(&t, &zero);
        let count = |o: &[usize]| zero_pairs(&o.iter().map(|&b| zero[b]).collect::<Vec<_>>());
        assert_eq!(count(&ex), count(&gr));
        assert_eq!(count(&ex), 1);
        assert_eq!(a.get(1, 0), &int(1));
    }
}
