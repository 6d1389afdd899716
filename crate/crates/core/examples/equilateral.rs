//! Closed forms of the equilateral triangle against the FEM oracle.
use polya::closed_forms::{equilateral_exact, equilateral_fields};
use polya::geometry::Triangle;
use polya::pde_oracle::{spectral, Shape};

fn main() -> polya::Result<()> {
    let e = equilateral_exact();
    println!("exact:  lambda1 = {:.10}  T = {:.10}  F = {:.10}", e.lambda1, e.torsion, e.f);
    let (u, phi) = equilateral_fields(0.5, 3f64.sqrt() / 6.0);
    println!("at the centroid: u = {u:.10} (= 1/36 = {:.10}), phi = {phi:.6}", 1.0 / 36.0);
    for level in [4, 5, 6] {
        let r = spectral(&Shape::Triangle(Triangle::equilateral()), level)?;
        println!(
            "L{level}:     lambda1 = {:.10}  T = {:.10}  F = {:.10}  |F - pi^2/15| = {:.2e}",
            r.lambda1,
            r.torsion,
            r.f,
            (r.f - e.f).abs()
        );
    }
    Ok(())
}
