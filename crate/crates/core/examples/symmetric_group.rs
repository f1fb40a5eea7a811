//! Potencies of permutation matrices in S_n.

use rpotent::semigroup::symmetric_group_analysis;

fn main() -> rpotent::Result<()> {
    for n in 2..=7 {
        let g = symmetric_group_analysis(n)?;
        println!(
            "S_{}: {} elements, potency counts {:?}, maximum {} at cycle type {:?}, full cycle {}, sum positive {}",
            n, g.order, g.potency_counts, g.max_potency, g.max_potency_cycle_type, g.full_cycle_potency, g.sum_positive
        );
        if !g.max_is_n_plus_one() {
            println!("  maximum potency exceeds n + 1 = {}", n + 1);
        }
    }
    Ok(())
}
