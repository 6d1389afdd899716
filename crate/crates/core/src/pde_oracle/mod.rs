//! Piecewise-linear finite elements for the torsion function and the first
//! Dirichlet eigenvalue, on uniformly refined meshes with Richardson
//! extrapolation. This is a numerical cross-check, not a proof.

pub mod fem;
pub mod mesh;
pub mod sparse;

use serde::{Deserialize, Serialize};

pub use fem::{assemble, solve_lambda1, solve_level, solve_torsion, LevelSolution, TorsionSolution};
pub use mesh::{altitude_split, mesh_domain, sector_area_defect, Mesh, Shape, MAX_LEVEL};

use crate::error::{Error, Result};

/// Element layers required across the thinnest direction of the domain.
pub const MIN_LAYERS: f64 = 4.0;

/// Increments below this (relative) are treated as converged rather than
/// tested for contraction; they are at the solver tolerance.
const NOISE_FLOOR: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub estimate: f64,
    pub error_gauge: f64,
    /// `log2` of the ratio of successive increments; `None` once the
    /// sequence has stopped moving.
    pub observed_order: Option<f64>,
}

/// Eliminates the `O(h^2)` term from three consecutive levels.
pub fn richardson(values: [f64; 3]) -> Result<Extrapolation> {
    let [v0, v1, v2] = values;
    let d1 = v1 - v0;
    let d2 = v2 - v1;
    let floor = NOISE_FLOOR * v2.abs().max(f64::MIN_POSITIVE);
    if d1.abs() <= floor && d2.abs() <= floor {
        return Ok(Extrapolation {
            estimate: v2,
            error_gauge: d2.abs(),
            observed_order: None,
        });
    }
    if d2.abs() >= d1.abs() {
        return Err(Error::NonContracting(d1, d2));
    }
    let estimate = v2 + d2 / 3.0;
    Ok(Extrapolation {
        estimate,
        error_gauge: (estimate - v2).abs(),
        observed_order: Some((d1 / d2).abs().log2()),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralResult {
    pub lambda1: f64,
    #[serde(rename = "T")]
    pub torsion: f64,
    pub torsion_max: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub area: f64,
    pub h_sequence: Vec<f64>,
    /// Gauge on `F`: distance between the extrapolated and finest-level
    /// values, plus the geometric defect for curved domains.
    pub error_gauge: f64,
    pub lambda1_gauge: f64,
    pub torsion_gauge: f64,
    pub torsion_max_gauge: f64,
    pub levels: Vec<LevelSolution>,
}

impl SpectralResult {
    pub fn f_lower(&self) -> f64 {
        self.f - self.error_gauge
    }

    pub fn f_upper(&self) -> f64 {
        self.f + self.error_gauge
    }
}

/// Finest level actually used for `shape` when `max_level` is requested:
/// raised (up to `MAX_LEVEL`) until `MIN_LAYERS` elements fit across the
/// thinnest direction. Since refined cells stay similar to the base cells,
/// this only binds for very coarse requests.
pub fn effective_level(shape: &Shape, max_level: u32) -> u32 {
    let layers = shape.base_layers();
    let mut l = max_level;
    while l < MAX_LEVEL && layers * f64::powi(2.0, l as i32) < MIN_LAYERS {
        l += 1;
    }
    l
}

/// Base triangulation used by `spectral`: obtuse triangles are cut into two
/// right triangles, everything else is meshed as given.
pub fn refinement_shape(shape: &Shape) -> Shape {
    match shape {
        Shape::Triangle(t) => altitude_split(t).unwrap_or_else(|| shape.clone()),
        _ => shape.clone(),
    }
}

/// Solves on `refinement_shape(shape)` at three consecutive levels ending at
/// `effective_level`, extrapolates `lambda1` and `T`, and forms
/// `F = lambda1 T / area` with the exact area of the shape.
pub fn spectral(shape: &Shape, max_level: u32) -> Result<SpectralResult> {
    if max_level < 2 {
        return Err(Error::DomainError(format!(
            "spectral needs max_level >= 2, got {max_level}"
        )));
    }
    if max_level > MAX_LEVEL {
        return Err(Error::LevelTooHigh(max_level));
    }
    let base = refinement_shape(shape);
    let top = effective_level(&base, max_level);
    let levels = (top - 2..=top)
        .map(|l| mesh_domain(&base, l).and_then(|m| solve_level(&m)))
        .collect::<Result<Vec<_>>>()?;
    let pick = |f: fn(&LevelSolution) -> f64| [f(&levels[0]), f(&levels[1]), f(&levels[2])];
    let lam = richardson(pick(|s| s.lambda1))?;
    let tor = richardson(pick(|s| s.torsion))?;
    // the nodal maximum jumps as the argmax moves between nodes, so it is
    // not extrapolated: finest value, gauged by the larger recent increment
    let m = pick(|s| s.torsion_max);
    let tmax_gauge = (m[2] - m[1]).abs().max((m[1] - m[0]).abs());

    let area = shape.area();
    let f = lam.estimate * tor.estimate / area;
    let finest = levels[2].lambda1 * levels[2].torsion / area;
    let mut error_gauge = (f - finest).abs();
    if let Shape::Sector(s) = shape {
        // the discrete domains are inscribed polygons; F is scale-free but
        // not shape-free, so charge the relative area defect of the finest
        // polygon once more
        error_gauge += f * sector_area_defect(s, top);
    }
    Ok(SpectralResult {
        lambda1: lam.estimate,
        torsion: tor.estimate,
        torsion_max: m[2],
        f,
        area,
        h_sequence: levels.iter().map(|s| s.h).collect(),
        error_gauge,
        lambda1_gauge: lam.error_gauge,
        torsion_gauge: tor.error_gauge,
        torsion_max_gauge: tmax_gauge,
        levels,
    })
}
