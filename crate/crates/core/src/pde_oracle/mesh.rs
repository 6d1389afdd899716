use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Sector, Triangle, MIN_NUMERIC_B};

pub const MAX_LEVEL: u32 = 9;

/// Chords in the base fan of a sector mesh.
pub const SECTOR_BASE_CHORDS: usize = 64;

/// Domains the oracle can mesh.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    Triangle(Triangle),
    Rectangle(Rectangle),
    /// Convex polygon with counter-clockwise vertices, fanned from the first.
    Polygon(Vec<[f64; 2]>),
    /// Inscribed polygon; arc midpoints are pushed onto the circle at every
    /// refinement, so level L carries `64 * 2^L` chords.
    Sector(Sector),
}

impl Shape {
    pub fn area(&self) -> f64 {
        match self {
            Shape::Triangle(t) => t.area(),
            Shape::Rectangle(r) => r.area(),
            Shape::Polygon(p) => polygon_area(p),
            Shape::Sector(s) => s.area(),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            Shape::Triangle(t) => polygon_perimeter(&t.vertices()),
            Shape::Rectangle(r) => r.perimeter(),
            Shape::Polygon(p) => polygon_perimeter(p),
            Shape::Sector(s) => s.radius * (2.0 + s.angle),
        }
    }

    /// Element layers across the thinnest direction of the base
    /// triangulation: minimal width of the domain over the largest minimum
    /// altitude of a base cell. Refinement level L multiplies it by `2^L`.
    pub fn base_layers(&self) -> f64 {
        let (v, e, _) = base(self);
        let cell = e
            .iter()
            .map(|t| {
                let p = [v[t[0]], v[t[1]], v[t[2]]];
                cross(p[0], p[1], p[2]).abs() / longest_edge(&p)
            })
            .fold(0.0, f64::max);
        min_width(&v) / cell
    }

    fn validate(&self) -> Result<()> {
        match self {
            Shape::Triangle(t) => {
                if !(t.b >= MIN_NUMERIC_B) || !t.a.is_finite() {
                    return Err(Error::DegenerateShape(format!(
                        "triangle apex ({}, {}) too flat for the oracle",
                        t.a, t.b
                    )));
                }
            }
            Shape::Rectangle(r) => {
                Rectangle::new(r.a, r.b)?;
            }
            Shape::Polygon(p) => {
                if p.len() < 3 || p.iter().any(|q| !q[0].is_finite() || !q[1].is_finite()) {
                    return Err(Error::DegenerateShape("polygon needs three finite vertices".into()));
                }
                // convex and counter-clockwise; straight angles are allowed so
                // a side can carry an extra node, but no fan cell may be flat
                let n = p.len();
                let turns_ok = (0..n).all(|i| cross(p[i], p[(i + 1) % n], p[(i + 2) % n]) >= 0.0);
                let cells_ok = fan(n).iter().all(|t| cross(p[t[0]], p[t[1]], p[t[2]]) > 0.0);
                if !turns_ok || !cells_ok {
                    return Err(Error::DegenerateShape(
                        "polygon must be convex and counter-clockwise".into(),
                    ));
                }
            }
            Shape::Sector(s) => {
                Sector::new(s.angle, s.radius)?;
            }
        }
        Ok(())
    }
}

/// The same triangle as a two-cell polygon cut along the altitude onto its
/// longest side, so both cells are right triangles. Red refinement keeps
/// cells similar to the base, and P1 accuracy degrades badly with angles
/// near 180 degrees; `None` for non-obtuse triangles.
pub fn altitude_split(t: &Triangle) -> Option<Shape> {
    let v = t.vertices();
    let len = |i: usize, j: usize| (v[i][0] - v[j][0]).hypot(v[i][1] - v[j][1]);
    // vertex k is opposite side (k+1, k+2)
    let k = (0..3)
        .max_by(|&i, &j| len((i + 1) % 3, (i + 2) % 3).total_cmp(&len((j + 1) % 3, (j + 2) % 3)))
        .unwrap();
    let (c, p, q) = (v[k], v[(k + 1) % 3], v[(k + 2) % 3]);
    let d = [q[0] - p[0], q[1] - p[1]];
    let dot = (c[0] - p[0]) * d[0] + (c[1] - p[1]) * d[1];
    let s = dot / (d[0] * d[0] + d[1] * d[1]);
    let cp = [p[0] - c[0], p[1] - c[1]];
    let cq = [q[0] - c[0], q[1] - c[1]];
    if cp[0] * cq[0] + cp[1] * cq[1] >= 0.0 {
        return None;
    }
    let foot = [p[0] + s * d[0], p[1] + s * d[1]];
    Some(Shape::Polygon(vec![c, p, foot, q]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 2]>,
    pub elements: Vec<[usize; 3]>,
    pub boundary_flags: Vec<bool>,
    pub level: u32,
}

impl Mesh {
    pub fn signed_area(&self, e: usize) -> f64 {
        let [i, j, k] = self.elements[e];
        cross(self.vertices[i], self.vertices[j], self.vertices[k]) / 2.0
    }

    pub fn area(&self) -> f64 {
        (0..self.elements.len()).map(|e| self.signed_area(e)).sum()
    }

    /// Longest edge.
    pub fn h_max(&self) -> f64 {
        let mut h: f64 = 0.0;
        for t in &self.elements {
            for k in 0..3 {
                let (p, q) = (self.vertices[t[k]], self.vertices[t[(k + 1) % 3]]);
                h = h.max((p[0] - q[0]).hypot(p[1] - q[1]));
            }
        }
        h
    }

    pub fn interior_count(&self) -> usize {
        self.boundary_flags.iter().filter(|b| !**b).count()
    }

    /// Positive areas and every edge shared by at most two elements, with
    /// boundary flags matching the edges used once.
    pub fn is_valid(&self) -> bool {
        if (0..self.elements.len()).any(|e| !(self.signed_area(e) > 0.0)) {
            return false;
        }
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.elements {
            for k in 0..3 {
                *count.entry(edge(t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        if count.values().any(|&c| c > 2) {
            return false;
        }
        let mut flags = vec![false; self.vertices.len()];
        for (&(i, j), &c) in &count {
            if c == 1 {
                flags[i] = true;
                flags[j] = true;
            }
        }
        flags == self.boundary_flags
    }

    /// ASCII OFF listing (vertices with z = 0, then triangles).
    pub fn to_off(&self) -> String {
        let mut s = String::from("OFF\n");
        let _ = writeln!(s, "{} {} 0", self.vertices.len(), self.elements.len());
        for v in &self.vertices {
            let _ = writeln!(s, "{:.17e} {:.17e} 0", v[0], v[1]);
        }
        for t in &self.elements {
            let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
        }
        s
    }
}

/// Uniform red refinement of the base triangulation of `shape`.
pub fn mesh_domain(shape: &Shape, level: u32) -> Result<Mesh> {
    if level > MAX_LEVEL {
        return Err(Error::LevelTooHigh(level));
    }
    shape.validate()?;
    let (mut vertices, mut elements, arc) = base(shape);
    let mut arcs: HashSet<(usize, usize)> = arc.into_iter().collect();

    for _ in 0..level {
        let mut mid: HashMap<(usize, usize), usize> = HashMap::with_capacity(elements.len() * 2);
        let mut next_arcs = HashSet::with_capacity(arcs.len() * 2);
        let mut refined = Vec::with_capacity(elements.len() * 4);
        for t in &elements {
            let mut m = [0usize; 3];
            for k in 0..3 {
                let (i, j) = (t[k], t[(k + 1) % 3]);
                let key = edge(i, j);
                m[k] = *mid.entry(key).or_insert_with(|| {
                    let (p, q) = (vertices[i], vertices[j]);
                    let mut c = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0];
                    let id = vertices.len();
                    if arcs.contains(&key) {
                        if let Shape::Sector(s) = shape {
                            let r = c[0].hypot(c[1]);
                            c = [c[0] * s.radius / r, c[1] * s.radius / r];
                        }
                        next_arcs.insert(edge(i, id));
                        next_arcs.insert(edge(id, j));
                    }
                    vertices.push(c);
                    id
                });
            }
            let [v0, v1, v2] = *t;
            let [m01, m12, m20] = m;
            refined.push([v0, m01, m20]);
            refined.push([m01, v1, m12]);
            refined.push([m20, m12, v2]);
            refined.push([m12, m20, m01]);
        }
        elements = refined;
        arcs = next_arcs;
    }

    let mut count: HashMap<(usize, usize), u8> = HashMap::with_capacity(elements.len() * 2);
    for t in &elements {
        for k in 0..3 {
            *count.entry(edge(t[k], t[(k + 1) % 3])).or_default() += 1;
        }
    }
    let mut boundary_flags = vec![false; vertices.len()];
    for (&(i, j), &c) in &count {
        if c == 1 {
            boundary_flags[i] = true;
            boundary_flags[j] = true;
        }
    }
    Ok(Mesh {
        vertices,
        elements,
        boundary_flags,
        level,
    })
}

type Base = (Vec<[f64; 2]>, Vec<[usize; 3]>, Vec<(usize, usize)>);

fn base(shape: &Shape) -> Base {
    match shape {
        Shape::Triangle(t) => (t.vertices().to_vec(), vec![[0, 1, 2]], vec![]),
        Shape::Rectangle(r) => (
            vec![[-r.a, -r.b], [r.a, -r.b], [r.a, r.b], [-r.a, r.b]],
            vec![[0, 1, 2], [0, 2, 3]],
            vec![],
        ),
        Shape::Polygon(p) => {
(p.clone(), fan(p.len()), vec![])
        }
        Shape::Sector(s) => {
            let n = SECTOR_BASE_CHORDS;
            let mut v = vec![[0.0, 0.0]];
            for k in 0..=n {
                let th = -s.angle / 2.0 + s.angle * k as f64 / n as f64;
                v.push([s.radius * th.cos(), s.radius * th.sin()]);
            }
            let e = (1..=n).map(|k| [0, k, k + 1]).collect();
            let arc = (1..=n).map(|k| edge(k, k + 1)).collect();
            (v, e, arc)
        }
    }
}

fn fan(n: usize) -> Vec<[usize; 3]> {
    (1..n - 1).map(|k| [0, k, k + 1]).collect()
}

fn edge(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

fn cross(u: [f64; 2], v: [f64; 2], w: [f64; 2]) -> f64 {
    (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
}

fn longest_edge(p: &[[f64; 2]; 3]) -> f64 {
    (0..3)
        .map(|k| {
            let (u, v) = (p[k], p[(k + 1) % 3]);
            (u[0] - v[0]).hypot(u[1] - v[1])
        })
        .fold(0.0, f64::max)
}

/// Width of the convex hull of `pts` (minimum over hull edges of the
/// farthest point from the edge line); `pts` are in convex position.
fn min_width(pts: &[[f64; 2]]) -> f64 {
    let n = pts.len();
    (0..n)
        .filter_map(|i| {
            let (u, w) = (pts[i], pts[(i + 1) % n]);
            let len = (w[0] - u[0]).hypot(w[1] - u[1]);
            (len > 0.0).then(|| pts.iter().map(|&q| cross(u, w, q).abs() / len).fold(0.0, f64::max))
        })
        .fold(f64::INFINITY, f64::min)
}

fn polygon_area(p: &[[f64; 2]]) -> f64 {
    let n = p.len();
    (0..n)
        .map(|i| p[i][0] * p[(i + 1) % n][1] - p[(i + 1) % n][0] * p[i][1])
        .sum::<f64>()
        / 2.0
}

fn polygon_perimeter(p: &[[f64; 2]]) -> f64 {
    let n = p.len();
    (0..n)
        .map(|i| (p[i][0] - p[(i + 1) % n][0]).hypot(p[i][1] - p[(i + 1) % n][1]))
        .sum()
}

/// Relative area lost by the inscribed polygon of a sector mesh at `level`.
pub fn sector_area_defect(s: &Sector, level: u32) -> f64 {
    let n = (SECTOR_BASE_CHORDS << level) as f64;
    let phi = s.angle / n;
    let inscribed = 0.5 * n * phi.sin();
    1.0 - inscribed / (s.angle / 2.0)
}
