//! r-potency: `A^r = A`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{format_rational, RMatrix, Rational};

/// Largest exponent [`minimal_potency`] tries by default.
pub const DEFAULT_POTENCY_CAP: u32 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct PotencyReport {
    pub is_r_potent: bool,
    pub r: u32,
    pub minimal_r: Option<u32>,
    pub rank: usize,
    /// `trace(A^{r-1})`, which equals the rank whenever `A` is r-potent.
    #[serde(serialize_with = "ser_rational")]
    pub trace_of_projection: Rational,
}

pub(crate) fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

fn check_exponent(r: u32) -> Result<()> {
    if r < 2 {
        Err(Error::BadExponent(r))
    } else {
        Ok(())
    }
}

pub fn is_r_potent(a: &RMatrix, r: u32) -> Result<bool> {
    check_exponent(r)?;
    Ok(a.power(u64::from(r)) == *a)
}

/// Errors with [`Error::NotPotent`] unless `A^r = A`.
pub fn require_r_potent(a: &RMatrix, r: u32) -> Result<()> {
    if is_r_potent(a, r)? {
        Ok(())
    } else {
        Err(Error::NotPotent { r })
    }
}

/// Smallest `r` in `[2, cap]` with `A^r = A`.
///
/// For a permutation matrix this is the order of the permutation plus one.
pub fn minimal_potency(a: &RMatrix, cap: u32) -> Option<u32> {
    let mut p = a.clone();
    for r in 2..=cap {
        p = p.mul_unchecked(a);
        if p == *a {
            return Some(r);
        }
    }
    None
}

/// `A^{r-1}`, which is idempotent when `A` is r-potent.
pub fn idempotent_projection(a: &RMatrix, r: u32) -> Result<RMatrix> {
    require_r_potent(a, r)?;
    Ok(a.power(u64::from(r - 1)))
}

/// Whether `rank(A) = trace(A^{r-1})` holds exactly.
pub fn rank_trace_check(a: &RMatrix, r: u32) -> Result<bool> {
    let e = idempotent_projection(a, r)?;
    Ok(Rational::from_integer(a.exact_rank().into()) == e.trace())
}

/// Exponents `j` in `1..r` for which `A^j` has a zero diagonal entry.
pub fn zero_diagonal_powers(a: &RMatrix, r: u32) -> Result<BTreeSet<u32>> {
    check_exponent(r)?;
    let mut out = BTreeSet::new();
    let mut p = a.clone();
    for j in 1..r {
        if j > 1 {
            p = p.mul_unchecked(a);
        }
        if p.has_zero_diagonal_entry() {
            out.insert(j);
        }
    }
    Ok(out)
}

pub fn potency_report(a: &RMatrix, r: u32, cap: u32) -> Result<PotencyReport> {
    check_exponent(r)?;
    Ok(PotencyReport {
        is_r_potent: is_r_potent(a, r)?,
        r,
        minimal_r: minimal_potency(a, cap),
        rank: a.exact_rank(),
        trace_of_projection: a.power(u64::from(r - 1)).trace(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, Permutation};

    fn quadripotent() -> RMatrix {
        RMatrix::from_ints(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]).unwrap()
    }

    #[test]
    fn quadripotent_not_idempotent() {
        assert!(is_r_potent(&quadripotent(), 4).unwrap());
        assert!(!is_r_potent(&quadripotent(), 2).unwrap());
        assert!(!is_r_potent(&quadripotent(), 3).unwrap());
        assert!(is_r_potent(&quadripotent(), 7).unwrap());
        assert_eq!(minimal_potency(&quadripotent(), 10), Some(4));
    }

    #[test]
    fn identity_is_every_potency() {
        for r in 2..8 {
            assert!(is_r_potent(&RMatrix::identity(3), r).unwrap());
        }
        assert_eq!(minimal_potency(&RMatrix::identity(3), 10), Some(2));
        assert!(matches!(is_r_potent(&RMatrix::identity(3), 1), Err(Error::BadExponent(1))));
    }

    #[test]
    fn permutation_potencies() {
        let swap = Permutation::swap(4, 0, 1).to_matrix();
        assert_eq!(minimal_potency(&swap, 10), Some(3));
        let full = Permutation::new(vec![1, 2, 3, 0]).unwrap().to_matrix();
        assert_eq!(minimal_potency(&full, 10), Some(5));
        assert_eq!(minimal_potency(&full, 4), None);
        let nilpotent = RMatrix::from_ints(&[[0, 1], [0, 0]]).unwrap();
        assert_eq!(minimal_potency(&nilpotent, 64), None);
    }

    #[test]
    fn projection_examples() {
        let e = RMatrix::uniform_idempotent(3);
        assert_eq!(idempotent_projection(&e, 2).unwrap(), e);
        assert_eq!(idempotent_projection(&quadripotent(), 4).unwrap(), RMatrix::identity(3));
        assert!(matches!(
            idempotent_projection(&quadripotent(), 3),
            Err(Error::NotPotent { r: 3 })
        ));
    }

    #[test]
    fn rank_trace_examples() {
        assert!(rank_trace_check(&RMatrix::zeros(3), 5).unwrap());
        for len in 1..6usize {
            let c = Permutation::new((0..len).map(|i| (i + 1) % len).collect()).unwrap().to_matrix();
            assert!(rank_trace_check(&c, len as u32 + 1).unwrap());
        }
        let k = Permutation::swap(2, 0, 1).to_matrix().kron(&RMatrix::uniform_idempotent(2));
        assert_eq!(k.exact_rank(), 2);
        assert_eq!(k.power(2).trace(), int(2));
        assert!(rank_trace_check(&k, 3).unwrap());
        assert!(rank_trace_check(&quadripotent(), 2).is_err());
    }

    #[test]
    fn zero_diagonal_power_sets() {
        let pos = RMatrix::uniform_idempotent(2);
        assert!(zero_diagonal_powers(&pos, 5).unwrap().is_empty());
        let got = zero_diagonal_powers(&quadripotent(), 4).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn report_fields() {
        let rep = potency_report(&quadripotent(), 4, DEFAULT_POTENCY_CAP).unwrap();
        assert!(rep.is_r_potent);
        assert_eq!(rep.minimal_r, Some(4));
        assert_eq!(rep.rank, 3);
        assert_eq!(rep.trace_of_projection, int(3));
    }
}
