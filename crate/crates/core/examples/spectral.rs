//! Period, primitivity, Wielandt powers and the Perron value.

use rpotent::generators::cycle_matrix;
use rpotent::spectral::{spectral_report, wielandt_exponent, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use rpotent::RMatrix;

fn main() -> rpotent::Result<()> {
    let wielandt = RMatrix::from_ints(&[[0, 1, 0], [0, 0, 1], [1, 1, 0]])?;
    let samples = [
        ("4-cycle", cycle_matrix(4), Some(5)),
        ("4-cycle kron J2/2", cycle_matrix(4).kron(&RMatrix::uniform_idempotent(2)), Some(5)),
        ("Wielandt digraph", wielandt, None),
    ];
    for (name, a, r) in samples {
        let s = spectral_report(&a, r, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?;
        println!(
            "{}: period {:?}, primitive {}, Perron value {:?}, Wielandt power positive {:?}, trace zero {:?}",
            name, s.period, s.is_primitive, s.perron_value, s.wielandt_positive, s.trace_zero
        );
    }
    println!("Wielandt exponent for n = 3: {}", wielandt_exponent(3));
    Ok(())
}
