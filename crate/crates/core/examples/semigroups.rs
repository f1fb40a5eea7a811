//! Pattern closures, the three equivalent decomposability tests, and the
//! Klein four-group of 3-potent permutations.

use rpotent::matrix::ratio;
use rpotent::semigroup::{
    equivalence_report, klein_four_generators, pattern_closure, semigroup_rank_floor_check, zero_product_witness,
    DEFAULT_CLOSURE_CAP,
};
use rpotent::{PatternMatrix, RMatrix};

fn main() -> rpotent::Result<()> {
    let swap = RMatrix::from_ints(&[[0, 1], [1, 0]])?;
    let half = RMatrix::from_rows(vec![vec![ratio(1, 2); 2]; 2])?;
    let a = RMatrix::direct_sum(&[swap, RMatrix::identity(1)])?;
    let b = RMatrix::direct_sum(&[half, RMatrix::zeros(1)])?;
    describe("swap + [1] with J2/2 + 0", &[a.clone(), b.clone()])?;
    let floor = semigroup_rank_floor_check(&[a, b], 3, 300)?;
    println!("  rank floor per block holds: {} ({:?})", floor.holds, floor.block_sizes);

    let klein = klein_four_generators();
    describe("Klein four-group", &klein)?;
    Ok(())
}

fn describe(name: &str, gens: &[RMatrix]) -> rpotent::Result<()> {
    let pats: Vec<PatternMatrix> = gens.iter().map(RMatrix::pattern).collect();
    let s = pattern_closure(&pats, DEFAULT_CLOSURE_CAP)?;
    let eq = equivalence_report(&s)?;
    println!("{}: closure of {} patterns", name, s.len());
    println!(
        "  invariant subset {}, common zero {:?}, sum has zero {}, agree {}",
        eq.witness.is_some(),
        eq.common_zero,
        eq.sum_has_zero,
        eq.agree
    );
    if let Some(w) = zero_product_witness(&s)? {
        println!("  zero product pair at ({}, {})", w.row, w.col);
    }
    Ok(())
}
