use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::Config;
use crate::bounds::{
    eig_lb_diameter_height, eig_lb_sector, eig_lb_sector_minorized, thinning_upper, torsion_lb_equilateral_test,
    torsion_lb_obtuse_test, torsion_lb_sector_closed, upper_chain, BoundKind, DomainKind, Metrics,
};
use crate::error::{Error, Result};
use crate::geometry::{Region, Triangle, TriangleClass};
use crate::pde_oracle::{spectral, Shape, SpectralResult};

pub const CSV_HEADER: [&str; 9] = ["a", "b", "class", "lambda1", "T", "torsion_max", "F", "margin_low", "margin_high"];

/// Smallest apex height accepted for oracle rows.
pub const SWEEP_B_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub na: usize,
    pub nb: usize,
    pub b_min: f64,
    pub b_max: f64,
    /// Chart the grid lives in: `Reference` (a in [0,1/2], b up to
    /// sqrt(3)/2) or `AcuteChart`.
    pub chart: Region,
    pub level: u32,
}

impl SweepGrid {
    pub fn from_config(c: &Config) -> Self {
        SweepGrid {
            na: c.na,
            nb: c.nb,
            b_min: c.b_min,
            b_max: c.b_max,
            chart: Region::Reference,
            level: c.level,
        }
    }

    /// Admissible grid points in `(a, b)` order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let step = |n: usize, i: usize| if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
        let mut out = Vec::new();
        for i in 0..self.na {
            let a = 0.5 * step(self.na, i);
            for j in 0..self.nb {
                let b = self.b_min + (self.b_max - self.b_min) * step(self.nb, j);
                if b >= self.b_min && self.chart.contains(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundGap {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    /// Bound minus the oracle value of the bounded quantity.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub class: Option<TriangleClass>,
    pub lambda1: f64,
    #[serde(rename = "T")]
    pub torsion: f64,
    pub torsion_max: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub f_gauge: f64,
    /// `F - pi^2/24`.
    pub margin_low: f64,
    /// `pi^2/12 - F`.
    pub margin_high: f64,
    pub bound_gaps: Vec<BoundGap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SweepRow {
    pub fn encloses(&self) -> bool {
        self.error.is_none() && self.margin_low > 0.0 && self.margin_high > 0.0
    }

    /// Lower bounds on `F` exceed the oracle, or upper bounds fall below
    /// it, by more than `tol`.
    pub fn bound_violations(&self, tol: f64) -> Vec<&BoundGap> {
        self.bound_gaps
            .iter()
            .filter(|g| match g.kind {
                BoundKind::LowerOnF | BoundKind::LowerOnT | BoundKind::LowerOnLambda => g.gap > tol,
                BoundKind::UpperOnF | BoundKind::UpperOnLambda => g.gap < -tol,
            })
            .collect()
    }

    fn failed(a: f64, b: f64, class: Option<TriangleClass>, e: Error) -> Self {
        SweepRow {
            a,
            b,
            class,
            lambda1: f64::NAN,
            torsion: f64::NAN,
            torsion_max: f64::NAN,
            f: f64::NAN,
            f_gauge: f64::NAN,
            margin_low: f64::NAN,
            margin_high: f64::NAN,
            bound_gaps: vec![],
            error: Some(e.to_string()),
        }
    }
}

fn gap(name: &str, kind: BoundKind, value: f64, oracle: f64) -> BoundGap {
    BoundGap {
        name: name.to_string(),
        kind,
        value,
        gap: value - oracle,
    }
}

fn sector_eig(theta: f64, b: f64) -> Result<f64> {
    eig_lb_sector(theta, b)
        .or_else(|_| eig_lb_sector_minorized(theta, b))
        .map(|v| v.value)
}

/// Factor taking a torsion of the reference-chart copy to the scale of
/// the original triangle (torsion scales with length^4).
fn scale_t(reference: &crate::geometry::TriangleData, original: &crate::geometry::TriangleData) -> f64 {
    (original.area / reference.area).powi(2)
}

/// Every analytic bound that applies to the triangle `(a, b)`, compared
/// with the oracle values.
pub fn applicable_bounds(t: &Triangle, s: &SpectralResult) -> Result<Vec<BoundGap>> {
    let (a, b) = (t.a, t.b);
    let d = t.derive()?;
    let area = d.area;
    let mut out = Vec::new();

    // chart-free: diameter/height eigenvalue bound with the equilateral test function
    let lam_dh = eig_lb_diameter_height(d.diameter, d.height)?.value;
    out.push(gap("lambda >= pi^2 (1/d + 1/h)^2", BoundKind::LowerOnLambda, lam_dh, s.lambda1));
    let t_eq = torsion_lb_equilateral_test(a, b).value;
    out.push(gap("T >= equilateral test", BoundKind::LowerOnT, t_eq, s.torsion));
    out.push(gap("F >= diameter-height x equilateral test", BoundKind::LowerOnF, lam_dh * t_eq / area, s.f));

    let r = t.to_reference_chart()?;
    let dr = r.derive()?;
    if dr.gamma > PI / 2.0 && r.a > 0.0 {
        let t_ob = torsion_lb_obtuse_test(r.a, r.b)?.value;
        out.push(gap("T >= obtuse test", BoundKind::LowerOnT, t_ob * scale_t(&dr, &d), s.torsion));
        out.push(gap("F >= diameter-height x obtuse test", BoundKind::LowerOnF, eig_lb_diameter_height(1.0, r.b)?.value * t_ob / dr.area, s.f));
        // sector at (1,0) of radius N opening over the smallest angle beta
        let lam_s = sector_eig(dr.beta, r.b)?;
        let t_s = torsion_lb_sector_closed(dr.n, dr.beta, dr.m)?.value;
        out.push(gap("F >= sector eigenvalue x sector torsion", BoundKind::LowerOnF, lam_s * t_s / dr.area, s.f));
    }
    if let Some(ac) = t.to_acute_chart()? {
        let da = ac.derive()?;
        let t_eq_a = torsion_lb_equilateral_test(ac.a, ac.b).value;
        let lam_a = eig_lb_diameter_height(da.diameter, da.height)?.value;
        // the acute chart is a rescaling: compare bound/area on the same scale
        out.push(gap(
            "F >= diameter-height x equilateral test (acute chart)",
            BoundKind::LowerOnF,
            lam_a * t_eq_a / da.area,
            s.f,
        ));
        let gamma = da.gamma;
        if let Ok(lam_g) = sector_eig(gamma, ac.b) {
            out.push(gap(
                "F >= sector eigenvalue x equilateral test (acute chart)",
                BoundKind::LowerOnF,
                lam_g * t_eq_a / da.area,
                s.f,
            ));
            let h = da.m * (gamma / 2.0).cos();
            if let Ok(t_s) = torsion_lb_sector_closed(h, gamma, da.m) {
                out.push(gap(
                    "F >= sector eigenvalue x sector torsion (acute chart)",
                    BoundKind::LowerOnF,
                    lam_g * t_s.value / da.area,
                    s.f,
                ));
            }
        }
    }

    let chain = upper_chain(
        &Metrics {
            lambda1: s.lambda1,
            torsion: s.torsion,
            area,
            perimeter: d.perimeter,
        },
        DomainKind::Triangle,
    )?;
    out.push(gap("F <= 2 pi^2 / 27", BoundKind::UpperOnF, chain.bound.value, s.f));
    out.push(gap(
        "F <= thinning bound",
        BoundKind::UpperOnF,
        thinning_upper(area, d.perimeter)?.value,
        s.f,
    ));
    Ok(out)
}

/// One oracle row; solver failures are recorded in the row.
pub fn sweep_row(a: f64, b: f64, level: u32) -> SweepRow {
    let class = Triangle::new(a, b).and_then(|t| t.classify()).ok();
    let run = || -> Result<SweepRow> {
        if b < SWEEP_B_FLOOR {
            return Err(Error::DomainError(format!("b = {b} below the oracle floor {SWEEP_B_FLOOR}")));
        }
        let t = Triangle::new(a, b)?;
        let s = spectral(&Shape::Triangle(t), level)?;
        let bound_gaps = applicable_bounds(&t, &s)?;
        Ok(SweepRow {
            a,
            b,
            class,
            lambda1: s.lambda1,
            torsion: s.torsion,
            torsion_max: s.torsion_max,
            f: s.f,
            f_gauge: s.error_gauge,
            margin_low: s.f - PI * PI / 24.0,
            margin_high: PI * PI / 12.0 - s.f,
            bound_gaps,
            error: None,
        })
    };
    run().unwrap_or_else(|e| SweepRow::failed(a, b, class, e))
}

/// Oracle rows for every admissible grid point, in grid order.
pub fn sweep_triangles(grid: &SweepGrid) -> Vec<SweepRow> {
    grid.points().par_iter().map(|&(a, b)| sweep_row(a, b, grid.level)).collect()
}

/// `sweep_triangles` on a pool sized by the configuration.
pub fn sweep_with(grid: &SweepGrid, cfg: &Config) -> Result<Vec<SweepRow>> {
    Ok(cfg.thread_pool()?.install(|| sweep_triangles(grid)))
}

/// Twelve significant digits, plain notation where that stays short.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        format!("{:.*}", (11 - e).max(0) as usize, x)
    } else {
        format!("{:.11e}", x)
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let class = r.class.map(|c| c.to_string()).unwrap_or_else(|| "Invalid".into());
        w.write_record([
            sig12(r.a),
            sig12(r.b),
            class,
            sig12(r.lambda1),
            sig12(r.torsion),
            sig12(r.torsion_max),
            sig12(r.f),
            sig12(r.margin_low),
            sig12(r.margin_high),
        ])?;
    }
    w.flush()?;
    Ok(())
}
