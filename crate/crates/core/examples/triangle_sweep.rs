//! Small sweep of the reference chart, CSV to stdout.
use polya::harness::{sweep_triangles, write_csv, SweepGrid};
use polya::geometry::Region;

fn main() -> polya::Result<()> {
    let grid = SweepGrid {
        na: 6,
        nb: 6,
        b_min: 0.05,
        b_max: 3f64.sqrt() / 2.0,
        chart: Region::Reference,
        level: 5,
    };
    let rows = sweep_triangles(&grid);
    write_csv(&rows, std::io::stdout().lock())?;
    let worst = rows.iter().map(|r| r.margin_low).fold(f64::INFINITY, f64::min);
    eprintln!("{} triangles, smallest margin to pi^2/24: {worst:.4}", rows.len());
    Ok(())
}
