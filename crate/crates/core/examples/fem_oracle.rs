//! Refinement history and Richardson estimate for an obtuse triangle.
use polya::geometry::Triangle;
use polya::pde_oracle::{spectral, Shape};

fn main() -> polya::Result<()> {
    let t = Triangle::new(0.3, 0.2)?;
    println!("triangle (0,0) (1,0) (0.3,0.2): {}", t.classify()?);
    let r = spectral(&Shape::Triangle(t), 6)?;
    for (h, s) in r.h_sequence.iter().zip(&r.levels) {
        println!("h = {h:.4e}: lambda1 = {:.8}  T = {:.8e}", s.lambda1, s.torsion);
    }
    println!(
        "extrapolated: lambda1 = {:.8}  T = {:.8e}  max u = {:.6e}  F = {:.6} +- {:.1e}",
        r.lambda1, r.torsion, r.torsion_max, r.f, r.error_gauge
    );
    Ok(())
}
