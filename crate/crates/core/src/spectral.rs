//! Perron-Frobenius facts for nonnegative matrices.
//!
//! Everything here is exact except [`perron_value`], which runs a floating
//! point power iteration.

use std::collections::VecDeque;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::decomposition::{block_triangularize, build_digraph, is_decomposable};
use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::potency::require_r_potent;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;

fn require_irreducible_nonzero(a: &RMatrix) -> Result<()> {
    if a.is_zero() {
        return Err(Error::Hypothesis("period is undefined for the zero matrix".into()));
    }
    if is_decomposable(a) {
        return Err(Error::Hypothesis("period requires an indecomposable matrix".into()));
    }
    Ok(())
}

/// Gcd of all cycle lengths of the (strongly connected) graph of `a`.
///
/// With BFS levels from vertex 0, every edge `u -> v` contributes
/// `level(u) + 1 - level(v)`; the gcd of those values is the period.
pub fn period(a: &RMatrix) -> Result<usize> {
    require_irreducible_nonzero(a)?;
    let g = build_digraph(a);
    let mut level = vec![usize::MAX; g.n()];
    level[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in g.successors(u) {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut h = 0usize;
    for u in 0..g.n() {
        for &v in g.successors(u) {
            let d = (level[u] + 1).abs_diff(level[v]);
            h = h.gcd(&d);
        }
    }
    Ok(h)
}

/// Indecomposable, nonzero and aperiodic.
pub fn is_primitive(a: &RMatrix) -> bool {
    !a.is_zero() && !is_decomposable(a) && matches!(period(a), Ok(1))
}

pub fn wielandt_exponent(n: usize) -> u64 {
    (n * n + 2 - 2 * n) as u64
}

/// Whether `A^{n^2 - 2n + 2}` is entrywise positive, computed exactly.
pub fn wielandt_check(a: &RMatrix) -> Result<bool> {
    if !is_primitive(a) {
        return Err(Error::Hypothesis("Wielandt power needs a primitive matrix".into()));
    }
    Ok(a.power(wielandt_exponent(a.n())).is_positive())
}

/// Spectral radius estimate.
///
/// Each nonzero diagonal block of the maximal block triangularization is
/// indecomposable with some period `h`; its `h`-th power is primitive on
/// every cyclic class, so plain power iteration on it converges and the
/// `h`-th root of the estimate is the block's Perron value. The spectral
/// radius of `A` is the largest of those.
pub fn perron_value(a: &RMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    if a.is_zero() {
        return Err(Error::Hypothesis("Perron value of the zero matrix".into()));
    }
    let t = block_triangularize(a);
    let mut rho: f64 = 0.0;
    for block in t.diagonal_blocks.iter().filter(|b| !b.is_zero()) {
        let h = period(block)?;
        let powered = block.power(h as u64);
        let est = power_iteration(&powered.to_f64(), powered.n(), tol, max_iter)?;
        rho = rho.max(est.powf(1.0 / h as f64));
    }
    Ok(rho)
}

fn power_iteration(m: &[f64], n: usize, tol: f64, max_iter: usize) -> Result<f64> {
    let mut x = vec![1.0 / n as f64; n];
    let mut lambda = f64::NAN;
    for iter in 0..max_iter {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum())
            .collect();
        let s: f64 = y.iter().sum();
        if s == 0.0 {
            return Ok(0.0);
        }
        // x sums to one, so s is the growth factor of this step.
        let next: Vec<f64> = y.iter().map(|v| v / s).collect();
        let dx: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        let dl = (s - lambda).abs();
        x = next;
        lambda = s;
        if iter > 0 && dx <= tol && dl <= tol * lambda.max(1.0) {
            return Ok(lambda);
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        estimate: lambda,
    })
}

/// For an indecomposable r-potent of rank `r - 1`, the eigenvalues are
/// exactly the `(r-1)`-th roots of unity, so the trace vanishes. Needs
/// `r >= 3`: for `r = 2` the single root is 1.
pub fn trace_zero_check(a: &RMatrix, r: u32) -> Result<bool> {
    require_r_potent(a, r)?;
    if r < 3 {
        return Err(Error::Hypothesis("trace identity needs r >= 3".into()));
    }
    if is_decomposable(a) {
        return Err(Error::Hypothesis("trace identity needs an indecomposable matrix".into()));
    }
    if a.exact_rank() != (r - 1) as usize {
        return Err(Error::Hypothesis("trace identity needs rank r - 1".into()));
    }
    Ok(a.trace().is_zero())
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub period: Option<usize>,
    pub is_primitive: bool,
    pub perron_value: Option<f64>,
    pub wielandt_positive: Option<bool>,
    pub trace_zero_applicable: bool,
    pub trace_zero: Option<bool>,
    /// Number of eigenvalues on the spectral circle: the period.
    pub expected_peripheral_count: Option<usize>,
}

pub fn spectral_report(a: &RMatrix, r: Option<u32>, tol: f64, max_iter: usize) -> Result<SpectralReport> {
    let period = period(a).ok();
    let primitive = is_primitive(a);
    let perron = if a.is_zero() {
        None
    } else {
        Some(perron_value(a, tol, max_iter)?)
    };
    let trace_zero = r.and_then(|r| trace_zero_check(a, r).ok());
    Ok(SpectralReport {
        period,
        is_primitive: primitive,
        perron_value: perron,
        wielandt_positive: primitive.then(|| wielandt_check(a)).transpose()?,
        trace_zero_applicable: trace_zero.is_some(),
        trace_zero,
        expected_peripheral_count: period,
    })
}
