//! Minimal potency, rank and the rank-trace identity for a few matrices.

use rpotent::generators::cycle_matrix;
use rpotent::matrix::ratio;
use rpotent::potency::{idempotent_projection, minimal_potency, potency_report, DEFAULT_POTENCY_CAP};
use rpotent::RMatrix;

fn main() -> rpotent::Result<()> {
    let half = RMatrix::from_rows(vec![vec![ratio(1, 2); 2]; 2])?;
    let samples = [
        ("3-cycle", cycle_matrix(3)),
        ("J2/2", half),
        ("3-cycle + [1]", RMatrix::direct_sum(&[cycle_matrix(3), RMatrix::identity(1)])?),
    ];
    for (name, a) in samples {
        let r = minimal_potency(&a, DEFAULT_POTENCY_CAP).expect("r-potent");
        let report = potency_report(&a, r, DEFAULT_POTENCY_CAP)?;
        println!(
            "{}: minimal r = {}, rank = {}, trace(A^(r-1)) = {}",
            name, r, report.rank, report.trace_of_projection
        );
        println!("A^(r-1) is idempotent:\n{}", idempotent_projection(&a, r)?);
    }
    let nilpotent = RMatrix::from_ints(&[[0, 1], [0, 0]])?;
    println!("nilpotent matrix: minimal r = {:?}", minimal_potency(&nilpotent, DEFAULT_POTENCY_CAP));
    Ok(())
}
