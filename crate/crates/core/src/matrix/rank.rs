use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::RMatrix;

/// Rank via Bareiss fraction-free elimination.
///
/// Each row is first cleared of denominators (scaling a row by a positive
/// integer leaves the rank unchanged), then eliminated over the integers.
/// Every intermediate entry is a minor of the scaled matrix, so the division
/// by the previous pivot is exact.
pub(super) fn bareiss_rank(m: &RMatrix) -> usize {
    let n = m.n();
    let mut a: Vec<Vec<BigInt>> = m
        .rows()
        .map(|row| {
            let scale = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&scale / x.denom()))
                .collect()
        })
        .collect();

    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..n {
                let v = &pivot[col] * &row[j] - &factor * &pivot[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = head[rank][col].clone();
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}
