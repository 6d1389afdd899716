//! Replays every case and prints the evidence behind each verdict.
use polya::harness::{replay_all, Config};

fn main() -> polya::Result<()> {
    for r in replay_all(&Config::default())? {
        println!("{} ({}): {:?}", r.case_id, r.region, r.verdict);
        for e in r.evidence.iter().chain(&r.corroboration) {
            println!(
                "    {} {:<14} margin {:>10.3e}  {}",
                if e.passed { "ok  " } else { "FAIL" },
                format!("{:?}", e.method),
                e.worst_margin,
                e.check
            );
        }
    }
    Ok(())
}
