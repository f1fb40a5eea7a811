//! Decomposability through the directed graph of a matrix.
//!
//! Orientation: the graph of `A` has an edge `j -> i` whenever `a_ij > 0`, so
//! the out-neighbours of `j` are the support of column `j`. A vertex set
//! closed under out-edges is then exactly an index set `S` with
//! `A e_j ∈ span{e_i : i ∈ S}` for every `j ∈ S`, i.e. an invariant standard
//! subspace. Both the SCC route and the brute-force oracle below use this
//! convention.
//!
//! A `1 x 1` block (zero or not) is indecomposable: a singleton has no proper
//! nonempty subset.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{PatternMatrix, Permutation, RMatrix, Rational};
use crate::potency::{require_r_potent, zero_diagonal_powers};

/// Largest dimension [`brute_force_decomposable`] will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    /// Edge `j -> i` for every true bit `(i, j)`.
    pub fn from_pattern(p: &PatternMatrix) -> Self {
        let n = p.n();
        let succ = (0..n).map(|j| p.column_support(j).collect()).collect();
        Self { n, succ }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.succ[from].contains(&to)
    }

    /// Strongly connected components (Tarjan). Components come out in reverse
    /// topological order of the condensation: sinks first.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        let mut t = Tarjan {
            graph: self,
            next_index: 0,
            index: vec![None; self.n],
            low: vec![0; self.n],
            stack: Vec::new(),
            on_stack: vec![false; self.n],
            comps: Vec::new(),
        };
        for v in 0..self.n {
            if t.index[v].is_none() {
                t.visit(v);
            }
        }
        t.comps
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.strongly_connected_components().len() == 1
    }
}

struct Tarjan<'a> {
    graph: &'a Digraph,
    next_index: usize,
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    comps: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = Some(self.next_index);
        self.low[v] = self.next_index;
        self.next_index += 1;
        self.stack.push(v);
        self.on_stack[v] = true;

        for &w in self.graph.successors(v) {
            match self.index[w] {
                None => {
                    self.visit(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                Some(_) => {}
            }
        }

        if Some(self.low[v]) == self.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = self.stack.pop().expect("tarjan stack underflow");
                self.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            self.comps.push(comp);
        }
    }
}

pub fn build_digraph(a: &RMatrix) -> Digraph {
    Digraph::from_pattern(&a.pattern())
}

pub fn is_decomposable(a: &RMatrix) -> bool {
    !build_digraph(a).is_strongly_connected()
}

/// Proper nonempty index set whose columns keep their support inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSubsetWitness {
    pub subset: Vec<usize>,
}

impl InvariantSubsetWitness {
    /// Re-checks the witness against a pattern directly.
    pub fn holds_for_pattern(&self, p: &PatternMatrix) -> bool {
        let n = p.n();
        let mut inside = vec![false; n];
        for &i in &self.subset {
            if i >= n || inside[i] {
                return false;
            }
            inside[i] = true;
        }
        if self.subset.is_empty() || self.subset.len() == n {
            return false;
        }
        self.subset
            .iter()
            .all(|&j| p.column_support(j).all(|i| inside[i]))
    }

    pub fn holds_for(&self, a: &RMatrix) -> bool {
        self.holds_for_pattern(&a.pattern())
    }
}

/// Exhaustive search over all proper nonempty index subsets, in increasing
/// bitmask order. Test oracle; limited to [`BRUTE_FORCE_LIMIT`].
pub fn brute_force_decomposable(a: &RMatrix) -> Result<Option<InvariantSubsetWitness>> {
    brute_force_pattern(&a.pattern())
}

pub fn brute_force_pattern(p: &PatternMatrix) -> Result<Option<InvariantSubsetWitness>> {
    let n = p.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let columns: Vec<u32> = (0..n)
        .map(|j| p.column_support(j).fold(0u32, |m, i| m | 1 << i))
        .collect();
    let full = (1u32 << n) - 1;
    for mask in 1..full {
        let closed = (0..n)
            .filter(|&j| mask >> j & 1 == 1)
            .all(|j| columns[j] & !mask == 0);
        if closed {
            let subset = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            return Ok(Some(InvariantSubsetWitness { subset }));
        }
    }
    Ok(None)
}

/// Maximal standard block triangularization: `P^{-1} A P` is block upper
/// triangular and each diagonal block is one strongly connected component.
#[derive(Clone, Debug)]
pub struct BlockTriangularization {
    pub permutation: Permutation,
    pub block_sizes: Vec<usize>,
    pub diagonal_blocks: Vec<RMatrix>,
    pub is_trivial: bool,
    /// Original indices making up each block, ascending within a block.
    pub components: Vec<Vec<usize>>,
    /// `P^{-1} A P`.
    pub conjugated: RMatrix,
    // For block b, the blocks reachable by one edge out of b. A valid order
    // places all of them before b.
    successors: Vec<Vec<usize>>,
    source: RMatrix,
}

impl BlockTriangularization {
    /// Block order is a reverse topological order of the condensation; among
    /// the components available at each step, the one containing the
    /// smallest original index goes first.
    pub fn new(a: &RMatrix) -> Self {
        let g = build_digraph(a);
        let comps = g.strongly_connected_components();
        let mut comp_of = vec![0; a.n()];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        let mut succ = vec![Vec::new(); comps.len()];
        for v in 0..a.n() {
            for &w in g.successors(v) {
                if comp_of[v] != comp_of[w] {
                    succ[comp_of[v]].push(comp_of[w]);
                }
            }
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }

        // Kahn on the reversed condensation with a min-heap keyed by the
        // smallest original index.
        let mut pending: Vec<usize> = succ.iter().map(Vec::len).collect();
        let mut preds = vec![Vec::new(); comps.len()];
        for (c, s) in succ.iter().enumerate() {
            for &t in s {
                preds[t].push(c);
            }
        }
        let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..comps.len())
            .filter(|&c| pending[c] == 0)
            .map(|c| Reverse((comps[c][0], c)))
            .collect();
        let mut order = Vec::with_capacity(comps.len());
        while let Some(Reverse((_, c))) = ready.pop() {
            order.push(c);
            for &p in &preds[c] {
                pending[p] -= 1;
                if pending[p] == 0 {
                    ready.push(Reverse((comps[p][0], p)));
                }
            }
        }
        debug_assert_eq!(order.len(), comps.len());

        let components: Vec<Vec<usize>> = order.iter().map(|&c| comps[c].clone()).collect();
        let mut position = vec![0; comps.len()];
        for (pos, &c) in order.iter().enumerate() {
            position[c] = pos;
        }
        let successors = order
            .iter()
            .map(|&c| succ[c].iter().map(|&t| position[t]).collect())
            .collect();
        Self::assemble(a.clone(), components, successors)
    }

    fn assemble(source: RMatrix, components: Vec<Vec<usize>>, successors: Vec<Vec<usize>>) -> Self {
        let flat: Vec<usize> = components.iter().flatten().copied().collect();
        let permutation = Permutation::new(flat).expect("components partition the index set");
        let conjugated = source.conjugate(&permutation).expect("sizes match");
        let block_sizes: Vec<usize> = components.iter().map(Vec::len).collect();
        let diagonal_blocks = components
            .iter()
            .map(|c| source.principal_submatrix(c))
            .collect();
        Self {
            permutation,
            is_trivial: components.len() == 1,
            block_sizes,
            diagonal_blocks,
            components,
            conjugated,
            successors,
            source,
        }
    }

    pub fn block_count(&self) -> usize {
        self.components.len()
    }

    /// Blocks that must precede block `b` in any valid order.
    pub fn block_successors(&self, b: usize) -> &[usize] {
        &self.successors[b]
    }

    /// Start offset of every block in the permuted index order.
    pub fn offsets(&self) -> Vec<usize> {
        self.block_sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// Whether `order` (a list of current block positions) is a linear
    /// extension, i.e. every block comes after all of its successors.
    pub fn is_valid_order(&self, order: &[usize]) -> bool {
        let k = self.block_count();
        if order.len() != k {
            return false;
        }
        let mut pos = vec![usize::MAX; k];
        for (p, &b) in order.iter().enumerate() {
            if b >= k || pos[b] != usize::MAX {
                return false;
            }
            pos[b] = p;
        }
        (0..k).all(|b| self.successors[b].iter().all(|&s| pos[s] < pos[b]))
    }

    /// Same blocks, rearranged. `order[p]` is the current index of the block
    /// to place at position `p`; it must be a valid order.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        if !self.is_valid_order(order) {
            return Err(Error::Hypothesis(format!(
                "{:?} is not a linear extension of the block order",
                order
            )));
        }
        let mut pos = vec![0; order.len()];
        for (p, &b) in order.iter().enumerate() {
            pos[b] = p;
        }
        let components = order.iter().map(|&b| self.components[b].clone()).collect();
        let successors = order
            .iter()
            .map(|&b| self.successors[b].iter().map(|&s| pos[s]).collect())
            .collect();
        Ok(Self::assemble(self.source.clone(), components, successors))
    }

    /// Coupling block `(bi, bj)` of the conjugated matrix as rows.
    pub fn coupling(&self, bi: usize, bj: usize) -> Vec<Vec<Rational>> {
        let off = self.offsets();
        (off[bi]..off[bi] + self.block_sizes[bi])
            .map(|i| {
                (off[bj]..off[bj] + self.block_sizes[bj])
                    .map(|j| self.conjugated.get(i, j).clone())
                    .collect()
            })
            .collect()
    }

    /// Every entry strictly below the diagonal blocks is zero.
    pub fn is_block_upper_triangular(&self) -> bool {
        is_block_upper_triangular(&self.conjugated.pattern(), &self.block_sizes)
    }

    /// The first block's index set, which is invariant, when there is more
    /// than one block.
    pub fn witness(&self) -> Option<InvariantSubsetWitness> {
        (!self.is_trivial).then(|| InvariantSubsetWitness {
            subset: self.components[0].clone(),
        })
    }
}

/// Whether `p` is zero below the diagonal blocks of the given sizes.
pub fn is_block_upper_triangular(p: &PatternMatrix, block_sizes: &[usize]) -> bool {
    let n = p.n();
    if block_sizes.iter().sum::<usize>() != n {
        return false;
    }
    let block_of: Vec<usize> = block_sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
        .collect();
    (0..n).all(|i| (0..n).all(|j| block_of[i] <= block_of[j] || !p.get(i, j)))
}

pub fn block_triangularize(a: &RMatrix) -> BlockTriangularization {
    BlockTriangularization::new(a)
}

/// For a nonnegative rank-one idempotent: whether some diagonal entry is zero.
/// This coincides with decomposability.
pub fn rank_one_idempotent_diag_test(a: &RMatrix) -> Result<bool> {
    if a.multiply(a)? != *a || a.exact_rank() != 1 {
        return Err(Error::Hypothesis(
            "expected a nonnegative idempotent of rank one".into(),
        ));
    }
    Ok(a.has_zero_diagonal_entry())
}

/// Which decomposability prediction applies to an r-potent matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionCase {
    /// `rank(A) > r - 1`.
    RankAboveBound,
    /// `rank(A) <= r - 1`, `A` singular, and each of `A^2 .. A^{r-1}` has a
    /// zero diagonal entry. Requires `r >= 3` (otherwise the power condition
    /// is empty) and `n >= 2`.
    SingularZeroDiagonalPowers,
    NoPrediction,
}

impl std::fmt::Display for PredictionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PredictionCase::RankAboveBound => "rank above r-1",
            PredictionCase::SingularZeroDiagonalPowers => "singular, zero diagonal entry in A^2..A^(r-1)",
            PredictionCase::NoPrediction => "no prediction",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposabilityTestReport {
    pub r: u32,
    pub rank: usize,
    pub case: PredictionCase,
    pub predicted_decomposable: Option<bool>,
    pub actual_decomposable: bool,
    /// False only when a prediction exists and disagrees with the graph test.
    pub agrees: bool,
}

pub fn classify(a: &RMatrix, r: u32, rank: usize) -> Result<PredictionCase> {
    let n = a.n();
    let bound = (r - 1) as usize;
    if rank > bound {
        return Ok(PredictionCase::RankAboveBound);
    }
    if r >= 3 && n >= 2 && rank < n {
        let zeros = zero_diagonal_powers(a, r)?;
        if (2..r).all(|j| zeros.contains(&j)) {
            return Ok(PredictionCase::SingularZeroDiagonalPowers);
        }
    }
    Ok(PredictionCase::NoPrediction)
}

pub fn main_decomposability_test(a: &RMatrix, r: u32) -> Result<DecomposabilityTestReport> {
    require_r_potent(a, r)?;
    let rank = a.exact_rank();
    let case = classify(a, r, rank)?;
    let predicted = match case {
        PredictionCase::NoPrediction => None,
        _ => Some(true),
    };
    let actual = is_decomposable(a);
    Ok(DecomposabilityTestReport {
        r,
        rank,
        case,
        predicted_decomposable: predicted,
        actual_decomposable: actual,
        agrees: predicted.is_none_or(|p| p == actual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, ratio};

    fn cycle(len: usize) -> RMatrix {
        Permutation::new((0..len).map(|i| (i + 1) % len).collect())
            .unwrap()
            .to_matrix()
    }

    #[test]
    fn digraph_examples() {
        assert_eq!(build_digraph(&RMatrix::zeros(3)).edge_count(), 0);
        let g = build_digraph(&cycle(3));
        assert_eq!(g.edge_count(), 3);
        // a_10 = 1 (P e_0 = e_1) gives the edge 0 -> 1
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(2, 0));
        let full = build_digraph(&RMatrix::uniform_idempotent(2));
        assert_eq!(full.edge_count(), 4);
        assert!(full.has_edge(0, 0));
    }

    #[test]
    fn decomposability_examples() {
        assert!(!is_decomposable(&RMatrix::uniform_idempotent(2)));
        assert!(is_decomposable(&RMatrix::from_ints(&[[1, 0], [0, 0]]).unwrap()));
        for len in 1..7 {
            assert!(!is_decomposable(&cycle(len)));
        }
        assert!(!is_decomposable(&RMatrix::zeros(1)));
        assert!(is_decomposable(&RMatrix::zeros(2)));
    }

    #[test]
    fn brute_force_examples() {
        let e = RMatrix::from_ints(&[[1, 0], [0, 0]]).unwrap();
        let w = brute_force_decomposable(&e).unwrap().unwrap();
        assert_eq!(w.subset, vec![0]);
        assert!(w.holds_for(&e));
        assert!(brute_force_decomposable(&RMatrix::uniform_idempotent(4)).unwrap().is_none());
        assert!(matches!(
            brute_force_decomposable(&RMatrix::identity(21)),
            Err(Error::TooLarge { n: 21, .. })
        ));
    }

    #[test]
    fn exhaustive_three_by_three_agreement() {
        for code in 0..512u64 {
            let p = PatternMatrix::from_code(3, code);
            let scc = !Digraph::from_pattern(&p).is_strongly_connected();
            let oracle = brute_force_pattern(&p).unwrap();
            assert_eq!(scc, oracle.is_some(), "pattern {:?}", p);
        }
    }

    #[test]
    fn triangularize_nilpotent_pair() {
        let a = RMatrix::from_ints(&[[0, 1], [0, 0]]).unwrap();
        let t = block_triangularize(&a);
        assert_eq!(t.block_sizes, vec![1, 1]);
        assert!(t.diagonal_blocks.iter().all(RMatrix::is_zero));
        assert_eq!(t.coupling(0, 1), vec![vec![int(1)]]);
        assert!(t.is_block_upper_triangular());
        assert_eq!(t.witness().unwrap().subset, vec![0]);
    }

    #[test]
    fn triangularize_cycle_is_trivial() {
        let t = block_triangularize(&cycle(3));
        assert!(t.is_trivial);
        assert_eq!(t.block_sizes, vec![3]);
        assert!(t.witness().is_none());
    }

    #[test]
    fn triangularize_block_diagonal_example() {
        // [1] ⊕ J2/2 ⊕ J3/3: the decomposable 4-potent of rank 3
        let a = RMatrix::direct_sum(&[
            RMatrix::identity(1),
            RMatrix::uniform_idempotent(2),
            RMatrix::uniform_idempotent(3),
        ])
        .unwrap();
        let t = block_triangularize(&a);
        assert_eq!(t.block_sizes, vec![1, 2, 3]);
        assert!(t.coupling(0, 2).iter().flatten().all(|x| x == &int(0)));
        assert!(t.is_block_upper_triangular());
    }

    #[test]
    fn ordering_respects_dependencies() {
        // column 2 feeds rows 0 and 1; vertex 2 must come last
        let a = RMatrix::from_ints(&[[1, 0, 1], [0, 1, 1], [0, 0, 1]]).unwrap();
        let t = block_triangularize(&a);
        assert_eq!(t.components, vec![vec![0], vec![1], vec![2]]);
        assert!(t.is_valid_order(&[1, 0, 2]));
        assert!(!t.is_valid_order(&[2, 0, 1]));
        let r = t.reordered(&[1, 0, 2]).unwrap();
        assert_eq!(r.components, vec![vec![1], vec![0], vec![2]]);
        assert!(r.is_block_upper_triangular());
        assert!(t.reordered(&[2, 1, 0]).is_err());
    }

    #[test]
    fn rank_one_diag_test_examples() {
        assert!(!rank_one_idempotent_diag_test(&RMatrix::uniform_idempotent(2)).unwrap());
        let e = RMatrix::from_ints(&[[1, 0], [0, 0]]).unwrap();
        assert!(rank_one_idempotent_diag_test(&e).unwrap());
        // u = (1, 2), v = (1/3, 1/3)
        let uv = RMatrix::from_rows(vec![
            vec![ratio(1, 3), ratio(1, 3)],
            vec![ratio(2, 3), ratio(2, 3)],
        ])
        .unwrap();
        assert!(!rank_one_idempotent_diag_test(&uv).unwrap());
        assert!(!is_decomposable(&uv));
        assert!(rank_one_idempotent_diag_test(&RMatrix::identity(2)).is_err());
    }

    #[test]
    fn main_test_cases() {
        let k = cycle(3).kron(&RMatrix::uniform_idempotent(2));
        let rep = main_decomposability_test(&k, 4).unwrap();
        assert_eq!(rep.rank, 3);
        // rank 3 = r - 1 here; kron with a rank-one factor keeps rank 3
        assert_eq!(rep.case, PredictionCase::NoPrediction);

        let k2 = cycle(3).kron(&cycle(3));
        let rep = main_decomposability_test(&k2, 4).unwrap();
        assert_eq!(rep.rank, 9);
        assert_eq!(rep.case, PredictionCase::RankAboveBound);
        assert!(rep.actual_decomposable && rep.agrees);

        for r in 3..7u32 {
            let rep = main_decomposability_test(&cycle(r as usize - 1), r).unwrap();
            assert_eq!(rep.case, PredictionCase::NoPrediction);
            assert!(!rep.actual_decomposable);
        }

        let nil = RMatrix::from_ints(&[[0, 1, 0], [0, 0, 0], [0, 0, 0]]).unwrap();
        assert!(matches!(main_decomposability_test(&nil, 3), Err(Error::NotPotent { r: 3 })));
    }

    #[test]
    fn singular_zero_diagonal_case() {
        // cycle(3) ⊕ [0] at r = 4: rank 3, singular, A^2 and A^3 keep the zero
        let a = RMatrix::direct_sum(&[cycle(3), RMatrix::zeros(1)]).unwrap();
        let rep = main_decomposability_test(&a, 4).unwrap();
        assert_eq!(rep.case, PredictionCase::SingularZeroDiagonalPowers);
        assert!(rep.actual_decomposable && rep.agrees);
    }

    #[test]
    fn empty_power_condition_gives_no_prediction() {
        // At r = 2 the power list A^2..A^{r-1} is empty. J2/2 is singular of
        // rank 1 <= r - 1 yet indecomposable, so no prediction is made.
        let rep = main_decomposability_test(&RMatrix::uniform_idempotent(2), 2).unwrap();
        assert_eq!(rep.case, PredictionCase::NoPrediction);
        assert!(!rep.actual_decomposable);
        // Same for the 1x1 zero matrix, indecomposable by convention.
        let rep = main_decomposability_test(&RMatrix::zeros(1), 3).unwrap();
        assert_eq!(rep.case, PredictionCase::NoPrediction);
    }
}
