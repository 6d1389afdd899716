use serde::{Deserialize, Serialize};

use super::mesh::Mesh;
use super::sparse::{dot, pcg, rcm, Csr, Skyline};
use crate::error::{Error, Result};

pub const CG_TOL: f64 = 1e-12;
pub const EIGEN_TOL: f64 = 1e-12;
const MAX_INVERSE_ITERATIONS: usize = 2000;

/// P1 stiffness, consistent mass and lumped unit load on interior nodes.
#[derive(Debug, Clone)]
pub struct System {
    pub stiffness: Csr,
    pub mass: Csr,
    pub load: Vec<f64>,
    /// Mesh vertex of each unknown.
    pub nodes: Vec<usize>,
}

pub fn assemble(mesh: &Mesh) -> Result<System> {
    let mut dof = vec![usize::MAX; mesh.vertices.len()];
    let mut nodes = Vec::new();
    for (v, &b) in mesh.boundary_flags.iter().enumerate() {
        if !b {
            dof[v] = nodes.len();
            nodes.push(v);
        }
    }
    let n = nodes.len();
    if n == 0 {
        return Err(Error::DegenerateShape("mesh has no interior vertex".into()));
    }
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in &mesh.elements {
        for &vi in t {
            if dof[vi] == usize::MAX {
                continue;
            }
            for &vj in t {
                if dof[vj] != usize::MAX {
                    rows[dof[vi]].push(dof[vj]);
                }
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_unstable();
        r.dedup();
    }
    let mut stiffness = Csr::from_pattern(rows);
    let mut mass = stiffness.zeros_like();
    let mut load = vec![0.0; n];
    for t in &mesh.elements {
        let p = t.map(|i| mesh.vertices[i]);
        let area = ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1])
            - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]))
            / 2.0;
        // gradient of the hat at vertex k is the rotated opposite edge / 2A
        let g: [[f64; 2]; 3] = std::array::from_fn(|k| {
            let (u, v) = (p[(k + 1) % 3], p[(k + 2) % 3]);
            [(u[1] - v[1]) / (2.0 * area), (v[0] - u[0]) / (2.0 * area)]
        });
        for i in 0..3 {
            let di = dof[t[i]];
            if di == usize::MAX {
                continue;
            }
            load[di] += area / 3.0;
            for j in 0..3 {
                let dj = dof[t[j]];
                if dj == usize::MAX {
                    continue;
                }
                stiffness.add_at(di, dj, area * (g[i][0] * g[j][0] + g[i][1] * g[j][1]));
                mass.add_at(di, dj, if i == j { area / 6.0 } else { area / 12.0 });
            }
        }
    }
    Ok(System {
        stiffness,
        mass,
        load,
        nodes,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorsionSolution {
    #[serde(rename = "T")]
    pub torsion: f64,
    pub torsion_max: f64,
    pub cg_iterations: usize,
}

/// Torsion function with unit source: `T = integral of u_h`, `torsion_max`
/// the largest nodal value.
pub fn solve_torsion(mesh: &Mesh) -> Result<TorsionSolution> {
    let sys = assemble(mesh)?;
    torsion_from(&sys)
}

fn torsion_from(sys: &System) -> Result<TorsionSolution> {
    let n = sys.load.len();
    let (u, it) = pcg(&sys.stiffness, &sys.load, CG_TOL, 20 * n + 100)?;
    // the load vector is exactly the integral of each hat function
    let torsion = dot(&sys.load, &u);
    let torsion_max = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(TorsionSolution {
        torsion,
        torsion_max,
        cg_iterations: it,
    })
}

/// Smallest eigenvalue of `K x = lambda M x` by inverse iteration with a
/// direct (envelope Cholesky) inner solve, started from the torsion shape.
pub fn solve_lambda1(mesh: &Mesh) -> Result<f64> {
    let sys = assemble(mesh)?;
    lambda1_from(&sys)
}

fn lambda1_from(sys: &System) -> Result<f64> {
    let k = &sys.stiffness;
    let m = &sys.mass;
    let chol = Skyline::factor(k, rcm(k))?;
    let mut x = chol.solve(&sys.load);
    let mut mx = m.matvec(&x);
    let mut lambda_prev = f64::INFINITY;
    for _ in 0..MAX_INVERSE_ITERATIONS {
        let norm = dot(&x, &mx).sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
        mx.iter_mut().for_each(|v| *v /= norm);
        // y = K^-1 M x, so y' K y = y' M x
        let y = chol.solve(&mx);
        let my = m.matvec(&y);
        let lambda = dot(&y, &mx) / dot(&y, &my);
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(Error::SolverDivergence(format!("Rayleigh quotient {lambda}")));
        }
        if ((lambda_prev - lambda) / lambda).abs() < EIGEN_TOL {
            return Ok(lambda);
        }
        lambda_prev = lambda;
        x = y;
        mx = my;
    }
    Err(Error::SolverDivergence(format!(
        "inverse iteration did not settle in {MAX_INVERSE_ITERATIONS} steps"
    )))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelSolution {
    pub level: u32,
    pub h: f64,
    pub lambda1: f64,
    #[serde(rename = "T")]
    pub torsion: f64,
    pub torsion_max: f64,
}

/// Both solves on one mesh, sharing the assembly.
pub fn solve_level(mesh: &Mesh) -> Result<LevelSolution> {
    let sys = assemble(mesh)?;
    let t = torsion_from(&sys)?;
    let lambda1 = lambda1_from(&sys)?;
    Ok(LevelSolution {
        level: mesh.level,
        h: mesh.h_max(),
        lambda1,
        torsion: t.torsion,
        torsion_max: t.torsion_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Rectangle, Triangle};
    use crate::pde_oracle::mesh::{mesh_domain, Shape};
    use std::f64::consts::PI;

    #[test]
    fn stiffness_rows_of_a_full_mesh_sum_to_zero() {
        // with no boundary removed, constants are in the kernel; emulate by
        // flagging nothing and checking K 1 = 0 and 1' M 1 = area
        let mut m = mesh_domain(&Shape::Triangle(Triangle::new(0.2, 0.7).unwrap()), 3).unwrap();
        m.boundary_flags.iter_mut().for_each(|b| *b = false);
        let sys = assemble(&m).unwrap();
        let ones = vec![1.0; sys.nodes.len()];
        assert!(sys.stiffness.matvec(&ones).iter().all(|v| v.abs() < 1e-12));
        assert!((dot(&ones, &sys.mass.matvec(&ones)) - 0.35).abs() < 1e-14);
        assert!((sys.load.iter().sum::<f64>() - 0.35).abs() < 1e-14);
    }

    #[test]
    fn no_interior_vertex_is_an_error() {
        let m = mesh_domain(&Shape::Triangle(Triangle::equilateral()), 1).unwrap();
        assert!(matches!(solve_torsion(&m), Err(Error::DegenerateShape(_))));
    }

    #[test]
    fn square_eigenvalue_from_above() {
        let sq = Shape::Rectangle(Rectangle::new(0.5, 0.5).unwrap());
        let mut prev = f64::INFINITY;
        for l in 2..6 {
            let lam = solve_lambda1(&mesh_domain(&sq, l).unwrap()).unwrap();
            assert!(lam > 2.0 * PI * PI && lam < prev);
            prev = lam;
        }
        assert!((prev / (2.0 * PI * PI) - 1.0).abs() < 0.01);
    }

    #[test]
    fn torsion_converges_on_the_square() {
        let sq = Shape::Rectangle(Rectangle::new(0.5, 0.5).unwrap());
        let t: Vec<f64> = (3..7)
            .map(|l| solve_torsion(&mesh_domain(&sq, l).unwrap()).unwrap().torsion)
            .collect();
        let d: Vec<f64> = t.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        assert!(d[0] > d[1] && d[1] > d[2]);
        assert!((t[3] - 0.0351442537387884).abs() < 2e-4);
    }
}
