//! Case replays, moduli-space sweeps and rectangle checks built on the
//! other modules; also the entry points behind the CLI.

pub mod cases;
pub mod config;
pub mod rect;
pub mod replay;
pub mod sweep;

pub use cases::{case_function, case_function_exact, CaseContext, CaseValue, CASE_FUNCTIONS};
pub use config::{Config, THREADS_ENV};
pub use rect::{g_remark_check, rect_monotonicity_scan, GRemarkReport, RectScanReport};
pub use replay::{replay_all, replay_case, replay_case_with, CaseReport, Evidence, Method, Verdict, CASE_IDS};
pub use sweep::{applicable_bounds, sweep_row, sweep_triangles, sweep_with, write_csv, BoundGap, SweepGrid, SweepRow};
