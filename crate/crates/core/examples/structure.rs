//! Diagonal block structure of a decomposable r-potent.

use rpotent::generators::{cycle_matrix, random_r_potent};
use rpotent::structure::analyze_structure;
use rpotent::RMatrix;

fn main() -> rpotent::Result<()> {
    let a = RMatrix::direct_sum(&[cycle_matrix(3), RMatrix::zeros(1), cycle_matrix(3)])?;
    show("two 3-cycles and a zero", &a, 4)?;
    show("[1] with three zeros", &RMatrix::direct_sum(&[RMatrix::identity(1), RMatrix::zeros(3)])?, 3)?;
    show("random 5-potent of rank 7", &random_r_potent(5, 7, 2)?, 5)?;
    Ok(())
}

fn show(name: &str, a: &RMatrix, r: u32) -> rpotent::Result<()> {
    let s = analyze_structure(a, r)?;
    println!("{} (r = {}, rank {}):", name, r, s.k);
    println!("  block sizes {:?}", s.block_sizes);
    println!(
        "  nonzero blocks {} (lower bound {}), total {}, adjacent zero pairs {}",
        s.nonzero_count, s.lower_bound, s.total_count, s.consecutive_zero_pairs
    );
    println!("  blocks ok {}, rank sum ok {}, bounds ok {}", s.blocks_ok, s.rank_sum_ok, s.bounds_ok);
    Ok(())
}
