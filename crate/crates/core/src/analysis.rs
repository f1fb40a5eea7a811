//! Everything known about one matrix, computed from a single instance.

use std::fmt;

use serde::Serialize;

use crate::decomposition::{
    block_triangularize, main_decomposability_test, DecomposabilityTestReport, InvariantSubsetWitness,
};
use crate::error::Result;
use crate::matrix::{format_rational, MatrixJson, RMatrix, Rational};
use crate::potency::{minimal_potency, potency_report, PotencyReport, DEFAULT_POTENCY_CAP};
use crate::spectral::{spectral_report, SpectralReport, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use crate::structure::{analyze_structure, StructureReport};

#[derive(Clone, Debug, Serialize)]
pub struct TriangularizationSummary {
    /// `permutation[p]` is the original index placed at position `p`.
    pub permutation: Vec<usize>,
    pub block_sizes: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub conjugated: MatrixJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisBundle {
    pub matrix: MatrixJson,
    /// The exponent used: the one requested, or the minimal potency found.
    pub r: Option<u32>,
    pub potency: Option<PotencyReport>,
    pub rank: usize,
    pub decomposable: bool,
    pub witness: Option<InvariantSubsetWitness>,
    pub triangularization: TriangularizationSummary,
    pub structure: Option<StructureReport>,
    pub spectral: Option<SpectralReport>,
    pub decomposability_test: Option<DecomposabilityTestReport>,
    /// Checks that failed although their hypotheses held.
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl AnalysisBundle {
    pub fn has_violation(&self) -> bool {
        !self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub r: Option<u32>,
    pub potency_cap: u32,
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            r: None,
            potency_cap: DEFAULT_POTENCY_CAP,
            tolerance: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

pub fn analyze(a: &RMatrix, opts: &AnalysisOptions) -> Result<AnalysisBundle> {
    let mut warnings = Vec::new();
    let mut violations = Vec::new();
    let r = match opts.r {
        Some(r) => Some(r),
        None => {
            let found = minimal_potency(a, opts.potency_cap);
            if found.is_none() {
                warnings.push(format!("not r-potent for any r <= {}", opts.potency_cap));
            }
            found
        }
    };
    let potency = r.map(|r| potency_report(a, r, opts.potency_cap)).transpose()?;
    let potent_r = match (&potency, r) {
        (Some(p), Some(r)) if p.is_r_potent => Some(r),
        (Some(_), Some(r)) => {
            warnings.push(format!("not {}-potent; structure checks skipped", r));
            None
        }
        _ => None,
    };

    let t = block_triangularize(a);
    let triangularization = TriangularizationSummary {
        permutation: t.permutation.as_slice().to_vec(),
        block_sizes: t.block_sizes.clone(),
        components: t.components.clone(),
        conjugated: t.conjugated.to_json(),
    };
    let rank = a.exact_rank();

    let mut structure = None;
    let mut test = None;
    if let Some(r) = potent_r {
        let s = analyze_structure(a, r)?;
        if s.applicable {
            if !s.blocks_ok {
                violations.push("a diagonal block is neither zero nor an indecomposable r-potent of rank <= r-1".into());
            }
            if !s.rank_sum_ok {
                violations.push(format!("block ranks sum to {}, not {}", s.rank_sum, s.k));
            }
            if !s.nonzero_bounds_ok() {
                violations.push(format!(
                    "{} nonzero blocks, outside [{}, {}]",
                    s.nonzero_count, s.lower_bound, s.k
                ));
            }
            if !s.total_bound_ok() {
                warnings.push(format!(
                    "{} blocks exceed 2k+1 = {} ({} adjacent zero pairs remain)",
                    s.total_count,
                    2 * s.k + 1,
                    s.consecutive_zero_pairs
                ));
            }
        }
        structure = Some(s);
        let report = main_decomposability_test(a, r)?;
        if !report.agrees {
            violations.push("predicted decomposable, found indecomposable".into());
        }
        if rank_trace_mismatch(potency.as_ref()) {
            violations.push("rank differs from trace of the (r-1)-th power".into());
        }
        test = Some(report);
    }

    let spectral = match spectral_report(a, potent_r, opts.tolerance, opts.max_iter) {
        Ok(s) => {
            if s.trace_zero == Some(false) {
                violations.push("indecomposable with rank r-1 but nonzero trace".into());
            }
            if s.wielandt_positive == Some(false) {
                violations.push("primitive but the Wielandt power is not positive".into());
            }
            Some(s)
        }
        Err(e) => {
            warnings.push(format!("spectral report unavailable: {}", e));
            None
        }
    };

    Ok(AnalysisBundle {
        matrix: a.to_json(),
        r,
        potency,
        rank,
        decomposable: !t.is_trivial,
        witness: t.witness(),
        triangularization,
        structure,
        spectral,
        decomposability_test: test,
        violations,
        warnings,
    })
}

fn rank_trace_mismatch(p: Option<&PotencyReport>) -> bool {
    p.is_some_and(|p| p.is_r_potent && p.trace_of_projection != Rational::from_integer(p.rank.into()))
}

/// Convenience for callers that only have a matrix and an exponent.
pub fn analyze_with_r(a: &RMatrix, r: u32) -> Result<AnalysisBundle> {
    analyze(a, &AnalysisOptions { r: Some(r), ..Default::default() })
}

impl fmt::Display for AnalysisBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = RMatrix::try_from(&self.matrix).map_err(|_| fmt::Error)?;
        writeln!(f, "matrix ({}x{}):", a.n(), a.n())?;
        writeln!(f, "{}", a)?;
        match &self.potency {
            Some(p) => {
                writeln!(f, "r = {}: r-potent {}", p.r, p.is_r_potent)?;
                if let Some(m) = p.minimal_r {
                    writeln!(f, "minimal potency: {}", m)?;
                }
                writeln!(f, "trace(A^(r-1)) = {}", format_rational(&p.trace_of_projection))?;
            }
            None => writeln!(f, "r: none found")?,
        }
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(f, "decomposable: {}", self.decomposable)?;
        if let Some(w) = &self.witness {
            writeln!(f, "invariant index set: {:?}", w.subset)?;
        }
        let t = &self.triangularization;
        writeln!(f, "block sizes: {:?}", t.block_sizes)?;
        writeln!(f, "permutation: {:?}", t.permutation)?;
        if t.block_sizes.len() > 1 {
            let c = RMatrix::try_from(&t.conjugated).map_err(|_| fmt::Error)?;
            writeln!(f, "P^-1 A P:")?;
            writeln!(f, "{}", c)?;
        }
        if let Some(d) = &self.decomposability_test {
            writeln!(
                f,
                "prediction: {}, agrees {}",
                d.case, d.agrees
            )?;
        }
        if let Some(s) = self.structure.as_ref().filter(|s| s.applicable) {
            writeln!(
                f,
                "structure: {} blocks, {} nonzero, block ranks sum {} (k = {}), bounds [{}, {}], adjacent zero pairs {}",
                s.total_count, s.nonzero_count, s.rank_sum, s.k, s.lower_bound, s.k, s.consecutive_zero_pairs
            )?;
        }
        if let Some(s) = &self.spectral {
            if let Some(p) = s.period {
                writeln!(f, "period: {}", p)?;
            }
            writeln!(f, "primitive: {}", s.is_primitive)?;
            if let Some(v) = s.perron_value {
                writeln!(f, "Perron value: {:.12}", v)?;
            }
            if let Some(z) = s.trace_zero {
                writeln!(f, "trace zero: {}", z)?;
            }
        }
        for w in &self.warnings {
            writeln!(f, "warning: {}", w)?;
        }
        for v in &self.violations {
            writeln!(f, "VIOLATION: {}", v)?;
        }
        Ok(())
    }
}
