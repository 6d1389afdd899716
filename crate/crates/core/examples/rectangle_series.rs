//! Series values of F on rectangles, the monotone scan and the G remark.
use polya::closed_forms::{rect_f, rect_lambda1, rect_torsion};
use polya::geometry::Rectangle;
use polya::harness::{g_remark_check, rect_monotonicity_scan};

fn main() -> polya::Result<()> {
    for a in [1.0, 2.0, 5.0, 20.0, 100.0] {
        let r = Rectangle::new(a, 1.0)?;
        let t = rect_torsion(&r, 512)?;
        let f = rect_f(&r, 512)?;
        println!(
            "a = {a:>5}: lambda1 = {:>10.6}  T = {:.8e}  F = {:.8} (tail {:.1e})",
            rect_lambda1(&r),
            t.value,
            f.value,
            f.tail_bound
        );
    }
    let a: Vec<f64> = (0..=36).map(|i| 1.0 + 0.25 * i as f64).collect();
    let scan = rect_monotonicity_scan(&a, 64)?;
    println!(
        "monotone on [1, 10]: {}; worst step {:.3e}; gap to pi^2/12 at a = 10: {:.2}%",
        scan.nondecreasing,
        scan.worst_step,
        100.0 * scan.last_relative_gap
    );
    let g = g_remark_check(64)?;
    println!(
        "G(square) = {:.6}, center exit time {:.6}, strip threshold {:.4} (from 1.45: {:.4})",
        g.g_square, g.center_exit_time, g.threshold_from_square, g.threshold_from_floor
    );
    Ok(())
}
