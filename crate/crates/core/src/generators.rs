//! Deterministic constructions of nonnegative r-potent matrices.
//!
//! Building blocks are cycle permutation matrices, positive rank-one
//! idempotents, Kronecker products, direct sums and the triangular wrapper
//! `[[B, B^{r-1} X], [0, 0]]`. Ranks multiply under `kron` and add under
//! direct sums, which is how [`random_r_potent`] hits a requested rank.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{int, ratio, MatrixJson, Permutation, RMatrix, Rational};
use crate::potency::{is_r_potent, require_r_potent};

/// Largest dimension [`random_r_potent`] will emit.
pub const DEFAULT_MAX_DIM: usize = 36;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Permutation matrix of the cycle `e_0 -> e_1 -> ... -> e_{len-1} -> e_0`.
pub fn cycle_matrix(len: usize) -> RMatrix {
    assert!(len >= 1, "cycle length must be positive");
    Permutation::new((0..len).map(|i| (i + 1) % len).collect())
        .expect("a rotation is a permutation")
        .to_matrix()
}

/// `u v^T`, which is idempotent exactly when `v . u = 1`.
pub fn rank_one_idempotent(u: &[Rational], v: &[Rational]) -> Result<RMatrix> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let dot: Rational = u.iter().zip(v).map(|(a, b)| a * b).sum();
    if !dot.is_one() {
        return Err(Error::Hypothesis(format!("v . u must be 1, got {}", dot)));
    }
    RMatrix::from_fn(u.len(), |i, j| &u[i] * &v[j])
}

pub fn block_diagonal(blocks: &[RMatrix]) -> Result<RMatrix> {
    RMatrix::direct_sum(blocks)
}

/// `[[B, B^{r-1} X], [0, 0]]` for an r-potent `k x k` block `B` and a
/// nonnegative `k x m` matrix `X` given as rows.
pub fn triangular_family(b: &RMatrix, x: &[Vec<Rational>], r: u32) -> Result<RMatrix> {
    require_r_potent(b, r)?;
    let k = b.n();
    if x.len() != k {
        return Err(Error::DimensionMismatch { left: k, right: x.len() });
    }
    let m = x.first().map_or(0, Vec::len);
    if x.iter().any(|row| row.len() != m) {
        return Err(Error::Shape("coupling rows have unequal lengths".into()));
    }
    let proj = b.power(u64::from(r - 1));
    let c: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| proj.get(i, t) * &x[t][j]).sum())
                .collect()
        })
        .collect();
    let out = RMatrix::from_fn(k + m, |i, j| match (i < k, j < k) {
        (true, true) => b.get(i, j).clone(),
        (true, false) => c[i][j - k].clone(),
        _ => Rational::zero(),
    })?;
    require_r_potent(&out, r)?;
    Ok(out)
}

/// Entry values used for every random rational.
fn small_value<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    match rng.gen_range(0..5) {
        0 => int(1),
        1 => ratio(1, 2),
        2 => ratio(1, 3),
        3 => int(2),
        _ => int(3),
    }
}

/// Random nonnegative rank-one idempotent of size `n`. When `with_zeros`
/// is set, entries of `u` and `v` vanish with probability 1/3, except at
/// one shared index that keeps `v . u` positive.
pub fn random_rank_one_idempotent<R: Rng + ?Sized>(n: usize, with_zeros: bool, rng: &mut R) -> RMatrix {
    let keep = rng.gen_range(0..n);
    let draw = |i: usize, rng: &mut R| {
        if with_zeros && i != keep && rng.gen_ratio(1, 3) {
            Rational::zero()
        } else {
            small_value(rng)
        }
    };
    let u: Vec<Rational> = (0..n).map(|i| draw(i, rng)).collect();
    let mut v: Vec<Rational> = (0..n).map(|i| draw(i, rng)).collect();
    let dot: Rational = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    for x in &mut v {
        *x = &*x / &dot;
    }
    rank_one_idempotent(&u, &v).expect("normalized so that v . u = 1")
}

fn random_coupling<R: Rng + ?Sized>(k: usize, m: usize, rng: &mut R) -> Vec<Vec<Rational>> {
    (0..k)
        .map(|_| {
            (0..m)
                .map(|_| if rng.gen_ratio(1, 3) { Rational::zero() } else { small_value(rng) })
                .collect()
        })
        .collect()
}

fn divisors_above_one(x: u32) -> Vec<usize> {
    (2..=x as usize).filter(|d| x as usize % d == 0).collect()
}

/// Ways to write `c` as a product of one or two divisors of `r - 1`.
fn factorizations(r: u32, c: usize) -> Vec<Vec<usize>> {
    let divs = divisors_above_one(r - 1);
    let mut out = Vec::new();
    for (i, &a) in divs.iter().enumerate() {
        if a == c {
            out.push(vec![a]);
        }
        for &b in &divs[i..] {
            if a * b == c {
                out.push(vec![a, b]);
            }
        }
    }
    out
}

/// One indecomposable-ish building block of rank `c` and dimension at most
/// `room`.
fn random_atom<R: Rng + ?Sized>(r: u32, c: usize, room: usize, rng: &mut R) -> Result<RMatrix> {
    let mut m = if c == 1 {
        RMatrix::identity(1)
    } else {
        let options = factorizations(r, c);
        let factors = options.choose(rng).expect("caller only asks for reachable ranks");
        factors
            .iter()
            .fold(RMatrix::identity(1), |acc, &len| acc.kron(&cycle_matrix(len)))
    };
    let size = rng.gen_range(2..=3);
    if m.n() * size <= room && rng.gen_bool(0.5) {
        m = m.kron(&random_rank_one_idempotent(size, false, rng));
    }
    let extra = room - m.n();
    if extra > 0 && rng.gen_ratio(1, 3) {
        let w = rng.gen_range(1..=extra.min(2));
        let x = random_coupling(m.n(), w, rng);
        m = triangular_family(&m, &x, r)?;
    }
    Ok(m)
}

/// Seeded random r-potent of exact rank `target_rank` and dimension at most
/// [`DEFAULT_MAX_DIM`].
pub fn random_r_potent(r: u32, target_rank: usize, seed: u64) -> Result<RMatrix> {
    random_r_potent_bounded(r, target_rank, seed, DEFAULT_MAX_DIM)
}

pub fn random_r_potent_bounded(r: u32, target_rank: usize, seed: u64, max_dim: usize) -> Result<RMatrix> {
    random_r_potent_with(r, target_rank, max_dim, &mut rng_from_seed(seed))
}

pub fn random_r_potent_with<R: Rng + ?Sized>(
    r: u32,
    target_rank: usize,
    max_dim: usize,
    rng: &mut R,
) -> Result<RMatrix> {
    if r < 2 {
        return Err(Error::BadExponent(r));
    }
    let unreachable = |reason: &str| Error::UnreachableRank {
        r,
        rank: target_rank,
        reason: reason.into(),
    };
    if target_rank == 0 {
        return Err(unreachable("rank must be positive"));
    }
    if target_rank > max_dim {
        return Err(unreachable(&format!("needs dimension above {}", max_dim)));
    }
    let mut atom_ranks: Vec<usize> = vec![1];
    for c in 2..=target_rank {
        if !factorizations(r, c).is_empty() {
            atom_ranks.push(c);
        }
    }

    let mut blocks = Vec::new();
    let mut used = 0;
    let mut remaining = target_rank;
    while remaining > 0 {
        let choices: Vec<usize> = atom_ranks.iter().copied().filter(|&c| c <= remaining).collect();
        let c = *choices.choose(rng).expect("rank one is always available");
        // Leave at least one dimension per rank still owed.
        let room = max_dim - used - (remaining - c);
        let atom = random_atom(r, c, room, rng)?;
        used += atom.n();
        remaining -= c;
        blocks.push(atom);
    }
    if used < max_dim && rng.gen_ratio(1, 3) {
        let pad = rng.gen_range(1..=(max_dim - used).min(2));
        blocks.push(RMatrix::zeros(pad));
    }
    blocks.shuffle(rng);
    let m = block_diagonal(&blocks)?;
    let p = Permutation::random(m.n(), rng);
    let out = m.conjugate(&p)?;
    emit_check(&out, r, target_rank)?;
    Ok(out)
}

/// Emission-time check of the tagged potency and rank.
fn emit_check(m: &RMatrix, r: u32, rank: usize) -> Result<()> {
    require_r_potent(m, r)?;
    let actual = m.exact_rank();
    if actual != rank {
        return Err(Error::UnreachableRank {
            r,
            rank,
            reason: format!("construction produced rank {}", actual),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Cycle,
    RankOneIdempotent,
    BlockDiagonal,
    Kronecker,
    TriangularFamily,
    Permutation,
    Conjugated,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 7] = [
        GeneratorKind::Cycle,
        GeneratorKind::RankOneIdempotent,
        GeneratorKind::BlockDiagonal,
        GeneratorKind::Kronecker,
        GeneratorKind::TriangularFamily,
        GeneratorKind::Permutation,
        GeneratorKind::Conjugated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Cycle => "cycle",
            GeneratorKind::RankOneIdempotent => "rank_one_idempotent",
            GeneratorKind::BlockDiagonal => "block_diagonal",
            GeneratorKind::Kronecker => "kronecker",
            GeneratorKind::TriangularFamily => "triangular_family",
            GeneratorKind::Permutation => "permutation",
            GeneratorKind::Conjugated => "conjugated",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('-', "_");
        match s.as_str() {
            "kron" => return Ok(GeneratorKind::Kronecker),
            "idempotent" => return Ok(GeneratorKind::RankOneIdempotent),
            _ => {}
        }
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator kind {:?}", s)))
    }
}

/// A generator request. Which of `len`, `n`, `r`, `rank` matter depends on
/// the kind; unused ones are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            len: None,
            n: None,
            r: None,
            rank: None,
            seed,
        }
    }

    pub fn with_r_rank(mut self, r: u32, rank: usize) -> Self {
        self.r = Some(r);
        self.rank = Some(rank);
        self
    }
}

/// Header written in front of generated matrix files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: GeneratorKind,
    pub seed: u64,
    pub r: u32,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub spec: GeneratorSpec,
    pub matrix: RMatrix,
    /// An exponent for which the matrix was verified r-potent.
    pub r: u32,
    pub rank: usize,
}

#[derive(Serialize)]
struct GeneratedFile<'a> {
    provenance: &'a Provenance,
    #[serde(flatten)]
    matrix: MatrixJson,
}

impl Generated {
    pub fn provenance(&self) -> Provenance {
        Provenance {
            kind: self.spec.kind,
            seed: self.spec.seed,
            r: self.r,
            rank: self.rank,
            len: self.spec.len,
            n: self.spec.n,
        }
    }

    /// Matrix JSON with a `provenance` object in front of `n` and `entries`.
    pub fn to_json_string(&self) -> String {
        let file = GeneratedFile {
            provenance: &self.provenance(),
            matrix: self.matrix.to_json(),
        };
        serde_json::to_string_pretty(&file).expect("plain data serializes")
    }
}

fn need<T>(value: Option<T>, kind: GeneratorKind, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::Hypothesis(format!("generator {} needs --{}", kind, name)))
}

fn check_r_for_order(r: Option<u32>, order: usize) -> Result<u32> {
    match r {
        None => Ok(order as u32 + 1),
        Some(r) if r >= 2 && (r as usize - 1) % order == 0 => Ok(r),
        Some(r) => Err(Error::NotPotent { r }),
    }
}

/// Runs a [`GeneratorSpec`]. Same spec, same matrix.
pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    let mut rng = rng_from_seed(spec.seed);
    let kind = spec.kind;
    let (matrix, r, rank) = match kind {
        GeneratorKind::Cycle => {
            let len = spec.len.or(spec.n).unwrap_or(3);
            if len == 0 {
                return Err(Error::Shape("cycle length must be positive".into()));
            }
            let m = cycle_matrix(len);
            (m, check_r_for_order(spec.r, len)?, len)
        }
        GeneratorKind::Permutation => {
            let n = spec.n.or(spec.len).unwrap_or(4);
            if n == 0 {
                return Err(Error::Shape("permutation size must be positive".into()));
            }
            let p = Permutation::random(n, &mut rng);
            (p.to_matrix(), check_r_for_order(spec.r, p.order())?, n)
        }
        GeneratorKind::RankOneIdempotent => {
            let n = spec.n.unwrap_or(3);
            if n == 0 {
                return Err(Error::Shape("size must be positive".into()));
            }
            let with_zeros = rng.gen_bool(0.5);
            let r = spec.r.unwrap_or(2);
            (random_rank_one_idempotent(n, with_zeros, &mut rng), r, 1)
        }
        GeneratorKind::Conjugated => {
            let r = need(spec.r, kind, "r")?;
            let rank = need(spec.rank, kind, "rank")?;
            let max_dim = spec.n.unwrap_or(DEFAULT_MAX_DIM);
            (random_r_potent_with(r, rank, max_dim, &mut rng)?, r, rank)
        }
        GeneratorKind::BlockDiagonal => {
            let r = need(spec.r, kind, "r")?;
            let rank = need(spec.rank, kind, "rank")?;
            let max_dim = spec.n.unwrap_or(DEFAULT_MAX_DIM);
            (random_block_diagonal(r, rank, max_dim, &mut rng)?, r, rank)
        }
        GeneratorKind::Kronecker => {
            let r = need(spec.r, kind, "r")?;
            let rank = need(spec.rank, kind, "rank")?;
            let max_dim = spec.n.unwrap_or(DEFAULT_MAX_DIM);
            (random_kronecker(r, rank, max_dim, &mut rng)?, r, rank)
        }
        GeneratorKind::TriangularFamily => {
            let r = need(spec.r, kind, "r")?;
            let rank = need(spec.rank, kind, "rank")?;
            let max_dim = spec.n.unwrap_or(DEFAULT_MAX_DIM);
            if max_dim <= rank {
                return Err(Error::UnreachableRank {
                    r,
                    rank,
                    reason: format!("no room for a coupling block within dimension {}", max_dim),
                });
            }
            let b = random_r_potent_with(r, rank, max_dim - 1, &mut rng)?;
            let w = rng.gen_range(1..=(max_dim - b.n()).min(3));
            let x = random_coupling(b.n(), w, &mut rng);
            (triangular_family(&b, &x, r)?, r, rank)
        }
    };
    if !is_r_potent(&matrix, r)? {
        return Err(Error::NotPotent { r });
    }
    Ok(Generated {
        spec: spec.clone(),
        matrix,
        r,
        rank,
    })
}

/// Direct sum of two or three independent random r-potents whose ranks add
/// up to `rank`, without a global conjugation.
fn random_block_diagonal<R: Rng + ?Sized>(r: u32, rank: usize, max_dim: usize, rng: &mut R) -> Result<RMatrix> {
    if rank == 0 || rank > max_dim {
        return random_r_potent_with(r, rank, max_dim, rng);
    }
    let parts = rng.gen_range(1..=rank.min(3));
    let mut cuts: Vec<usize> = (1..rank).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(rank);
    let mut blocks = Vec::new();
    let mut used = 0;
    for w in bounds.windows(2) {
        let part = w[1] - w[0];
        let owed = rank - w[1];
        let block = random_r_potent_with(r, part, max_dim - used - owed, rng)?;
        used += block.n();
        blocks.push(block);
    }
    let m = block_diagonal(&blocks)?;
    emit_check(&m, r, rank)?;
    Ok(m)
}

/// `A ⊗ B` with `rank(A) rank(B) = rank`, conjugated by a random
/// permutation.
fn random_kronecker<R: Rng + ?Sized>(r: u32, rank: usize, max_dim: usize, rng: &mut R) -> Result<RMatrix> {
    if rank == 0 || rank > max_dim {
        return random_r_potent_with(r, rank, max_dim, rng);
    }
    let splits: Vec<usize> = (1..=rank).filter(|a| rank % a == 0).collect();
    let a_rank = *splits.choose(rng).expect("1 divides everything");
    let b_rank = rank / a_rank;
    let a = random_r_potent_with(r, a_rank, (max_dim / b_rank).max(a_rank), rng)?;
    let b = random_r_potent_with(r, b_rank, max_dim / a.n(), rng)?;
    let k = a.kron(&b);
    let p = Permutation::random(k.n(), rng);
    let out = k.conjugate(&p)?;
    emit_check(&out, r, rank)?;
    Ok(out)
}
