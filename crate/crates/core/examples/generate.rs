//! Seeded generators and their JSON output with provenance.

use rpotent::generators::{generate, GeneratorKind, GeneratorSpec};

fn main() -> rpotent::Result<()> {
    for kind in GeneratorKind::ALL {
        let spec = match kind {
            GeneratorKind::Cycle | GeneratorKind::Permutation => GeneratorSpec::new(kind, 7),
            _ => GeneratorSpec::new(kind, 7).with_r_rank(3, 4),
        };
        let g = generate(&spec)?;
        println!("{}: n = {}, r = {}, rank {}", kind.name(), g.matrix.n(), g.r, g.rank);
    }
    let g = generate(&GeneratorSpec::new(GeneratorKind::Kronecker, 3).with_r_rank(4, 6))?;
    println!("{}", g.to_json_string());
    Ok(())
}
