//! Classification and chart changes for a few triangles.
use polya::geometry::{Region, Triangle};

fn main() -> polya::Result<()> {
    for (a, b) in [(0.5, 0.866), (0.4, 0.6), (0.5, 0.5), (0.2, 0.3), (0.1, 0.05)] {
        let t = Triangle::new(a, b)?;
        let regions: Vec<&str> = Region::ALL.iter().filter(|r| r.contains(a, b)).map(|r| r.id()).collect();
        let acute = t.to_acute_chart()?.map(|s| format!("({:.4}, {:.4})", s.a, s.b));
        println!("({a}, {b}) {:<12} regions {:?} acute chart {}", t.classify()?.to_string(), regions, acute.unwrap_or("-".into()));
    }
    Ok(())
}
