//! Decomposability test, brute-force witness and block triangularization.

use rpotent::decomposition::{
    block_triangularize, brute_force_decomposable, is_decomposable, main_decomposability_test,
};
use rpotent::generators::cycle_matrix;
use rpotent::{Permutation, RMatrix};

fn main() -> rpotent::Result<()> {
    // A 2-cycle coupled to a zero block, hidden by a shuffle.
    let a = RMatrix::from_ints(&[[0, 1, 1], [1, 0, 1], [0, 0, 0]])?
        .conjugate(&Permutation::new(vec![2, 0, 1])?)?;
    println!("A =\n{}", a);
    println!("decomposable: {}", is_decomposable(&a));
    if let Some(w) = brute_force_decomposable(&a)? {
        println!("invariant subset witness: {:?}", w);
    }
    let t = block_triangularize(&a);
    println!("permutation {:?}, blocks {:?}", t.permutation.as_slice(), t.block_sizes);
    println!("P^-1 A P =\n{}", t.conjugated);

    let report = main_decomposability_test(&a, 3)?;
    println!("r = 3, rank {}: case \"{}\", agrees {}", report.rank, report.case, report.agrees);

    let c = cycle_matrix(4);
    println!("4-cycle decomposable: {}", is_decomposable(&c));
    Ok(())
}
