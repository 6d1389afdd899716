//! Rational enclosures of the constants used by the certificates.
use num_traits::ToPrimitive;
use polya::constants::{enclose_bits, Constant};

fn main() -> polya::Result<()> {
    for c in Constant::ALL {
        let i = enclose_bits(c, 64)?;
        let width = i.width().to_f64().unwrap_or(f64::NAN);
        println!("{:<8} ~ {:<22.17} width {:.1e}  ({} / {})", c.id(), i.mid_f64(), width, i.lo.numer(), i.lo.denom());
    }
    Ok(())
}
