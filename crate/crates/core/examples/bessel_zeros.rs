//! First Bessel zeros against the Airy-zero minorant.
use polya::bounds::bessel_zero_minorant;
use polya::closed_forms::{bessel_first_zero, bessel_j};

fn main() -> polya::Result<()> {
    for nu in [0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0] {
        let j = bessel_first_zero(nu)?;
        println!(
            "nu = {nu:>4}: j = {j:.10}  J(j) = {:+.1e}  minorant = {:.6}",
            bessel_j(nu, j)?,
            bessel_zero_minorant(nu)
        );
    }
    Ok(())
}
