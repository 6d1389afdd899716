use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{rect_center_torsion, rect_f, rect_lambda1};
use crate::error::{Error, Result};
use crate::geometry::Rectangle;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectRow {
    pub a: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectScanReport {
    pub rows: Vec<RectRow>,
    /// Every step `F(a_{i+1}) - F(a_i)` is at least minus twice the tail
    /// bounds involved.
    pub nondecreasing: bool,
    /// Smallest step plus its allowance.
    pub worst_step: f64,
    pub minimum_at_first: bool,
    /// Every value is at least `64/pi^4`.
    pub floor_ok: bool,
    /// `(pi^2/12 - F(last)) / (pi^2/12)`.
    pub last_relative_gap: f64,
}

/// Series values of `F(R_{a,1})` along sorted `a_values >= 1`.
pub fn rect_monotonicity_scan(a_values: &[f64], terms: usize) -> Result<RectScanReport> {
    if a_values.is_empty() {
        return Err(Error::DomainError("no rectangle aspect ratios given".into()));
    }
    if a_values.iter().any(|&a| !(a >= 1.0)) || a_values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::DomainError("aspect ratios must be sorted and at least 1".into()));
    }
    let rows = a_values
        .iter()
        .map(|&a| {
            let s = rect_f(&Rectangle::new(a, 1.0)?, terms)?;
            Ok(RectRow {
                a,
                f: s.value,
                tail_bound: s.tail_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let worst_step = rows
        .windows(2)
        .map(|w| w[1].f - w[0].f + 2.0 * (w[0].tail_bound + w[1].tail_bound))
        .fold(f64::INFINITY, f64::min);
    let first = rows[0].f;
    let floor = 64.0 / PI.powi(4);
    let last = rows[rows.len() - 1].f;
    let limit = PI * PI / 12.0;
    Ok(RectScanReport {
        nondecreasing: rows.len() < 2 || worst_step >= 0.0,
        worst_step: if rows.len() < 2 { 0.0 } else { worst_step },
        minimum_at_first: rows.iter().all(|r| r.f + 2.0 * (r.tail_bound + rows[0].tail_bound) >= first),
        floor_ok: rows.iter().all(|r| r.f >= floor),
        last_relative_gap: (limit - last) / limit,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GRow {
    pub a: f64,
    /// `lambda_1 (R_{a,1}) u(0,0)`.
    pub g: f64,
    /// `(pi^2/8)(1 + 1/a^2)`, the strip estimate.
    pub strip_bound: f64,
    pub below_square: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GRemarkReport {
    /// `G(R_{1,1})`.
    pub g_square: f64,
    /// `E tau` at the center of the square of side `sqrt 2`, i.e.
    /// `2 u(0,0)` for half-width `sqrt2/2`.
    pub center_exit_time: f64,
    /// `G(R_{1,1}) >= (1/2) pi^2 (0.294) >= 1.45`.
    pub square_floor_ok: bool,
    /// `sqrt(5 pi^2 / (58 - 5 pi^2))`, where the strip bound meets 1.45.
    pub threshold_from_floor: f64,
    /// Where the strip bound meets the computed `G(R_{1,1})`.
    pub threshold_from_square: f64,
    /// The strip bound at the quoted 2.38 is below `G(R_{1,1})`.
    pub quoted_threshold_ok: bool,
    pub rows: Vec<GRow>,
}

pub const G_QUOTED_THRESHOLD: f64 = 2.38;

/// The remark on `G = lambda_1 max u` for rectangles: computes `G(R_{a,1})`
/// on `a in [1, 10]` and the strip-comparison chain behind the threshold.
pub fn g_remark_check(terms: usize) -> Result<GRemarkReport> {
    let g_of = |a: f64| -> Result<f64> {
        let r = Rectangle::new(a, 1.0)?;
        Ok(rect_lambda1(&r) * rect_center_torsion(&r, terms)?.value)
    };
    let g_square = g_of(1.0)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let center_exit_time = 2.0 * rect_center_torsion(&Rectangle::new(h, h)?, terms)?.value;
    let strip = |a: f64| PI * PI / 8.0 * (1.0 + 1.0 / (a * a));
    let rows = (0..=36)
        .map(|i| {
            let a = 1.0 + 0.25 * i as f64;
            let g = g_of(a)?;
            Ok(GRow {
                a,
                g,
                strip_bound: strip(a),
                below_square: g <= g_square * (1.0 + 1e-12),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let p2 = PI * PI;
    Ok(GRemarkReport {
        g_square,
        center_exit_time,
        square_floor_ok: g_square >= 0.5 * p2 * 0.294 && 0.5 * p2 * 0.294 >= 1.45,
        threshold_from_floor: (5.0 * p2 / (58.0 - 5.0 * p2)).sqrt(),
        threshold_from_square: (p2 / 8.0 / (g_square - p2 / 8.0)).sqrt(),
        quoted_threshold_ok: strip(G_QUOTED_THRESHOLD) <= g_square,
        rows,
    })
}
