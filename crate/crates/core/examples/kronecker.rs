//! Kronecker products of r-potents keep r-potency and multiply ranks.

use rpotent::decomposition::is_decomposable;
use rpotent::generators::{cycle_matrix, random_r_potent_bounded};
use rpotent::potency::is_r_potent;
use rpotent::RMatrix;

fn main() -> rpotent::Result<()> {
    let a = random_r_potent_bounded(4, 5, 17, 8)?;
    let b = cycle_matrix(3);
    let e = RMatrix::uniform_idempotent(2);
    for (name, k) in [("A kron 3-cycle", a.kron(&b)), ("A kron J2/2", a.kron(&e))] {
        println!(
            "{}: n = {}, 4-potent {}, rank {} = {} * factor rank, decomposable {}",
            name,
            k.n(),
            is_r_potent(&k, 4)?,
            k.exact_rank(),
            a.exact_rank(),
            is_decomposable(&k)
        );
    }
    let c = cycle_matrix(3).kron(&e);
    println!("3-cycle kron J2/2: rank {}, decomposable {}", c.exact_rank(), is_decomposable(&c));
    Ok(())
}
