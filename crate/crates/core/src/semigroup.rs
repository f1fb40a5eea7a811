//! Finite semigroups of nonnegative matrices.
//!
//! Nonnegative products have the pattern of the boolean product, so the
//! closure of generator patterns is a finite stand-in for the semigroup
//! itself when only zero/nonzero structure matters.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::Serialize;

use crate::decomposition::{
    block_triangularize, is_block_upper_triangular, main_decomposability_test, DecomposabilityTestReport,
    InvariantSubsetWitness,
};
use crate::error::{Error, Result};
use crate::matrix::{int, PatternMatrix, Permutation, RMatrix};
use crate::potency::{is_r_potent, require_r_potent};

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;
pub const CLOSURE_CAP_ENV: &str = "RPOTENT_CLOSURE_CAP";
pub const SYMMETRIC_GROUP_LIMIT: usize = 8;

/// [`DEFAULT_CLOSURE_CAP`] unless `RPOTENT_CLOSURE_CAP` holds a positive integer.
pub fn closure_cap_from_env() -> usize {
    std::env::var(CLOSURE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_CLOSURE_CAP)
}

/// Breadth-first closure under right multiplication by generators. Members
/// are kept in discovery order.
fn close<T, F>(generators: &[T], cap: usize, mul: F) -> (Vec<T>, bool)
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashSet<T> = HashSet::new();
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    for g in generators {
        if seen.insert(g.clone()) {
            if members.len() == cap {
                return (members, true);
            }
            members.push(g.clone());
            queue.push_back(members.len() - 1);
        }
    }
    while let Some(idx) = queue.pop_front() {
        for g in generators {
            let p = mul(&members[idx], g);
            if seen.insert(p.clone()) {
                if members.len() == cap {
                    return (members, true);
                }
                members.push(p);
                queue.push_back(members.len() - 1);
            }
        }
    }
    (members, false)
}

fn common_dimension(dims: impl Iterator<Item = usize>) -> Result<usize> {
    let mut n = None;
    for d in dims {
        match n {
            None => n = Some(d),
            Some(m) if m != d => return Err(Error::DimensionMismatch { left: m, right: d }),
            _ => {}
        }
    }
    n.ok_or_else(|| Error::Shape("a semigroup needs at least one generator".into()))
}

#[derive(Clone, Debug)]
pub struct PatternSemigroup {
    pub n: usize,
    pub members: Vec<PatternMatrix>,
    pub generator_count: usize,
    pub truncated: bool,
    pub cap: usize,
}

pub fn pattern_closure(generators: &[PatternMatrix], cap: usize) -> Result<PatternSemigroup> {
    let n = common_dimension(generators.iter().map(PatternMatrix::n))?;
    let cap = cap.max(1);
    let (members, truncated) = close(generators, cap, |a, b| a.product(b));
    Ok(PatternSemigroup {
        n,
        members,
        generator_count: generators.len(),
        truncated,
        cap,
    })
}

impl PatternSemigroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn require_complete(&self) -> Result<()> {
        if self.truncated {
            Err(Error::Truncated { cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Entrywise OR of all members: the pattern of their sum.
    pub fn union(&self) -> PatternMatrix {
        self.members
            .iter()
            .fold(PatternMatrix::empty(self.n), |acc, m| acc.union(m))
    }

    /// Whether the product of any two members is a member.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&PatternMatrix> = self.members.iter().collect();
        self.members
            .iter()
            .all(|a| self.members.iter().all(|b| set.contains(&a.product(b))))
    }

    pub fn contains(&self, p: &PatternMatrix) -> bool {
        self.members.contains(p)
    }
}

/// A position at which every member vanishes.
pub fn common_zero_entry(s: &PatternSemigroup) -> Result<Option<(usize, usize)>> {
    s.require_complete()?;
    Ok(s.union().first_zero())
}

/// An index set invariant for every member at once, found from the graph of
/// the union pattern.
pub fn semigroup_decomposable(s: &PatternSemigroup) -> Result<Option<InvariantSubsetWitness>> {
    s.require_complete()?;
    Ok(block_triangularize(&RMatrix::indicator(&s.union())).witness())
}

/// Whether the sum of all members has a zero entry.
pub fn sum_has_zero(s: &PatternSemigroup) -> Result<bool> {
    s.require_complete()?;
    Ok(!s.union().is_full())
}

/// Matrix units `E_ii` and `E_jj` built from a common zero at `(i, j)`:
/// `E_ii M E_jj = m_ij E_ij` vanishes for every member `M`, and
/// `M -> m_ij` is a nonzero nonnegative functional vanishing on the semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroProductWitness {
    pub row: usize,
    pub col: usize,
    #[serde(skip)]
    pub left: RMatrix,
    #[serde(skip)]
    pub right: RMatrix,
}

impl ZeroProductWitness {
    pub fn new(n: usize, row: usize, col: usize) -> Self {
        let unit = |k: usize| RMatrix::from_fn(n, |i, j| int((i == k && j == k) as i64)).expect("0/1 entries");
        ZeroProductWitness {
            row,
            col,
            left: unit(row),
            right: unit(col),
        }
    }

    /// `left * M * right = 0`, checked with exact arithmetic.
    pub fn annihilates(&self, m: &RMatrix) -> bool {
        self.left
            .multiply(m)
            .and_then(|lm| lm.multiply(&self.right))
            .is_ok_and(|p| p.is_zero())
    }

    /// The functional value `m_ij`.
    pub fn functional(&self, m: &RMatrix) -> crate::matrix::Rational {
        m.get(self.row, self.col).clone()
    }
}

pub fn zero_product_witness(s: &PatternSemigroup) -> Result<Option<ZeroProductWitness>> {
    Ok(common_zero_entry(s)?.map(|(i, j)| ZeroProductWitness::new(s.n, i, j)))
}

/// The three decomposability criteria evaluated on one closure.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub witness: Option<InvariantSubsetWitness>,
    pub common_zero: Option<(usize, usize)>,
    pub sum_has_zero: bool,
    pub agree: bool,
}

pub fn equivalence_report(s: &PatternSemigroup) -> Result<EquivalenceReport> {
    let witness = semigroup_decomposable(s)?;
    let common_zero = common_zero_entry(s)?;
    let sum_zero = sum_has_zero(s)?;
    let agree = witness.is_some() == common_zero.is_some() && common_zero.is_some() == sum_zero;
    Ok(EquivalenceReport {
        witness,
        common_zero,
        sum_has_zero: sum_zero,
        agree,
    })
}

#[derive(Clone, Debug)]
pub struct RationalSemigroup {
    pub members: Vec<RMatrix>,
    pub truncated: bool,
    pub cap: usize,
}

impl RationalSemigroup {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        let set: HashSet<&RMatrix> = self.members.iter().collect();
        self.members.iter().all(|a| {
            self.members
                .iter()
                .all(|b| a.multiply(b).is_ok_and(|p| set.contains(&p)))
        })
    }

    pub fn patterns(&self) -> Vec<PatternMatrix> {
        self.members.iter().map(RMatrix::pattern).collect()
    }
}

pub fn rational_closure(generators: &[RMatrix], cap: usize) -> Result<RationalSemigroup> {
    common_dimension(generators.iter().map(RMatrix::n))?;
    let cap = cap.max(1);
    let (members, truncated) = close(generators, cap, |a, b| {
        a.multiply(b).expect("dimensions checked")
    });
    Ok(RationalSemigroup { members, truncated, cap })
}

/// `{A, A^2, ..., A^{r-1}}`, without repeats.
pub fn cyclic_semigroup(a: &RMatrix, r: u32) -> Result<RationalSemigroup> {
    require_r_potent(a, r)?;
    let mut members: Vec<RMatrix> = Vec::new();
    let mut p = a.clone();
    for _ in 1..r {
        if !members.contains(&p) {
            members.push(p.clone());
        }
        p = p.multiply(a)?;
    }
    Ok(RationalSemigroup {
        members,
        truncated: false,
        cap: r as usize,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicDecompositionReport {
    pub test: DecomposabilityTestReport,
    /// `rank(A) > r - 1`.
    pub rank_above_bound: bool,
    pub permutation: Option<Vec<usize>>,
    pub block_sizes: Vec<usize>,
    /// Whether `A^k` is block upper triangular under `A`'s permutation, for
    /// `k = 1 .. r-1`.
    pub powers_triangular: Vec<bool>,
    pub common_triangularization: bool,
}

/// Checks that the permutation triangularizing `A` also triangularizes
/// every member of its cyclic semigroup.
pub fn cyclic_semigroup_decomposable_check(a: &RMatrix, r: u32) -> Result<CyclicDecompositionReport> {
    let test = main_decomposability_test(a, r)?;
    let rank_above_bound = test.rank > (r - 1) as usize;
    if !test.actual_decomposable {
        return Ok(CyclicDecompositionReport {
            test,
            rank_above_bound,
            permutation: None,
            block_sizes: vec![a.n()],
            powers_triangular: Vec::new(),
            common_triangularization: false,
        });
    }
    let t = block_triangularize(a);
    let s = cyclic_semigroup(a, r)?;
    let mut powers = Vec::new();
    let mut p = a.clone();
    for _ in 1..r {
        powers.push(is_block_upper_triangular(&p.conjugate(&t.permutation)?.pattern(), &t.block_sizes));
        p = p.multiply(a)?;
    }
    let common = powers.iter().all(|&b| b)
        && s
            .members
            .iter()
            .all(|m| m.conjugate(&t.permutation).is_ok_and(|c| is_block_upper_triangular(&c.pattern(), &t.block_sizes)));
    Ok(CyclicDecompositionReport {
        test,
        rank_above_bound,
        permutation: Some(t.permutation.as_slice().to_vec()),
        block_sizes: t.block_sizes.clone(),
        powers_triangular: powers,
        common_triangularization: common,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockFloor {
    pub indices: Vec<usize>,
    pub nonzero: bool,
    pub min_rank: usize,
    pub compressions_r_potent: bool,
    /// Some compression has rank at most `r - 1` (vacuous for zero blocks).
    pub floor_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankFloorReport {
    pub r: u32,
    pub closure_size: usize,
    pub block_sizes: Vec<usize>,
    pub blocks: Vec<BlockFloor>,
    pub holds: bool,
}

/// Closes the generators, block-triangularizes the whole semigroup through
/// its union pattern, and checks each nonzero diagonal block for a member
/// compression of rank at most `r - 1`.
pub fn semigroup_rank_floor_check(generators: &[RMatrix], r: u32, cap: usize) -> Result<RankFloorReport> {
    for g in generators {
        require_r_potent(g, r)?;
    }
    let s = rational_closure(generators, cap)?;
    if s.truncated {
        return Err(Error::Truncated { cap: s.cap });
    }
    let union = s
        .patterns()
        .iter()
        .fold(PatternMatrix::empty(s.members[0].n()), |acc, p| acc.union(p));
    let t = block_triangularize(&RMatrix::indicator(&union));
    let bound = (r - 1) as usize;
    let mut blocks = Vec::new();
    for comp in &t.components {
        let compressions: Vec<RMatrix> = s.members.iter().map(|m| m.principal_submatrix(comp)).collect();
        let nonzero = compressions.iter().any(|c| !c.is_zero());
        let min_rank = compressions.iter().map(RMatrix::exact_rank).min().unwrap_or(0);
        let potent = compressions.iter().all(|c| is_r_potent(c, r).unwrap_or(false));
        blocks.push(BlockFloor {
            indices: comp.clone(),
            nonzero,
            min_rank,
            compressions_r_potent: potent,
            floor_ok: !nonzero || min_rank <= bound,
        });
    }
    Ok(RankFloorReport {
        r,
        closure_size: s.len(),
        block_sizes: t.block_sizes.clone(),
        holds: blocks.iter().all(|b| b.floor_ok),
        blocks,
    })
}

/// The regular representation of `Z2 x Z2` on four points, as the two
/// permutation matrices of `(0 1)(2 3)` and `(0 2)(1 3)`. Every member of
/// the generated group is 3-potent of rank 4, yet the union of the group is
/// the all-ones pattern.
pub fn klein_four_generators() -> [RMatrix; 2] {
    [
        Permutation::new(vec![1, 0, 3, 2]).expect("involution").to_matrix(),
        Permutation::new(vec![2, 3, 0, 1]).expect("involution").to_matrix(),
    ]
}

/// Minimal `r >= 2` with `P^r = P` for a permutation matrix pattern.
fn pattern_potency(p: &PatternMatrix) -> u32 {
    let mut q = p.product(p);
    let mut r = 2;
    while q != *p {
        q = q.product(p);
        r += 1;
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricGroupReport {
    pub n: usize,
    pub order: usize,
    /// Number of elements per minimal potency.
    pub potency_counts: BTreeMap<u32, usize>,
    pub max_potency: u32,
    /// A cycle type reaching `max_potency`.
    pub max_potency_cycle_type: Vec<usize>,
    pub full_cycle_potency: u32,
    /// Every minimal potency equals the lcm of the cycle lengths plus one.
    pub potency_matches_lcm: bool,
    pub sum_positive: bool,
    pub indecomposable: bool,
    pub closure_size: usize,
}

impl SymmetricGroupReport {
    /// Whether the largest minimal potency is `n + 1`.
    pub fn max_is_n_plus_one(&self) -> bool {
        self.max_potency as usize == self.n + 1
    }
}

/// Enumerates all `n!` permutation matrices of size `n`.
pub fn symmetric_group_analysis(n: usize) -> Result<SymmetricGroupReport> {
    if n == 0 {
        return Err(Error::Shape("n must be positive".into()));
    }
    if n > SYMMETRIC_GROUP_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: SYMMETRIC_GROUP_LIMIT,
        });
    }
    let mut counts = BTreeMap::new();
    let mut max_potency = 0;
    let mut max_type = Vec::new();
    let mut matches = true;
    let mut members = Vec::new();
    for p in Permutation::all(n) {
        let pat = p.to_matrix().pattern();
        let r = pattern_potency(&pat);
        matches &= r as usize == p.order() + 1;
        *counts.entry(r).or_insert(0) += 1;
        if r > max_potency {
            max_potency = r;
            max_type = p.cycle_type();
        }
        members.push(pat);
    }
    let order = members.len();
    let group = PatternSemigroup {
        n,
        members,
        generator_count: order,
        truncated: false,
        cap: order,
    };
    let sum_positive = !sum_has_zero(&group)?;
    let indecomposable = semigroup_decomposable(&group)?.is_none();

    // The transposition (0 1) and the full cycle generate the group.
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let gens = [
        Permutation::swap(n, 0, 1.min(n - 1)).to_matrix().pattern(),
        Permutation::new(cycle)?.to_matrix().pattern(),
    ];
    let closure = pattern_closure(&gens, order + 1)?;
    let full_cycle_potency = pattern_potency(&gens[1]);
    Ok(SymmetricGroupReport {
        n,
        order,
        potency_counts: counts,
        max_potency,
        max_potency_cycle_type: max_type,
        full_cycle_potency,
        potency_matches_lcm: matches,
        sum_positive,
        indecomposable,
        closure_size: closure.len(),
    })
}
