//! Triangles in the apex parametrization, rectangles and circular sectors.
//!
//! A triangle `Triangle { a, b }` has vertices `(0,0)`, `(1,0)` and `(a,b)`.
//! Its side lengths are `1`, `M = |(a,b)|` and `N = |(a-1,b)|`; `alpha` sits at
//! the origin, `beta` at `(1,0)` and `gamma` at the apex.
//!
//! Two charts cover all shapes up to similarity: the reference chart `T`
//! (base is the longest side, `M <= N <= 1`) and the acute chart `T'`
//! (base is the shortest side, `1 <= M <= N`, non-obtuse shapes only).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when comparing angles for classification.
pub const ANGLE_TOL: f64 = 1e-10;

/// Slack applied to region inequalities so that points on a boundary curve
/// are not lost to rounding.
pub const REGION_SLACK: f64 = 1e-12;

/// Smallest apex ordinate accepted for numerical (FEM) work.
pub const MIN_NUMERIC_B: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleData {
    pub m: f64,
    pub n: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub area: f64,
    pub perimeter: f64,
    pub diameter: f64,
    /// Altitude onto the longest side.
    pub height: f64,
    pub inradius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleClass {
    Equilateral,
    Acute,
    Right,
    Obtuse,
    IsoscelesAcute,
    IsoscelesObtuse,
    Degenerate,
}

impl fmt::Display for TriangleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TriangleClass::Equilateral => "equilateral",
            TriangleClass::Acute => "acute",
            TriangleClass::Right => "right",
            TriangleClass::Obtuse => "obtuse",
            TriangleClass::IsoscelesAcute => "isosceles-acute",
            TriangleClass::IsoscelesObtuse => "isosceles-obtuse",
            TriangleClass::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

impl Triangle {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::DegenerateTriangle(b));
        }
        Ok(Triangle { a, b })
    }

    pub fn equilateral() -> Self {
        Triangle {
            a: 0.5,
            b: 3f64.sqrt() / 2.0,
        }
    }

    pub fn vertices(&self) -> [[f64; 2]; 3] {
        [[0.0, 0.0], [1.0, 0.0], [self.a, self.b]]
    }

    pub fn area(&self) -> f64 {
        self.b / 2.0
    }

    pub fn derive(&self) -> Result<TriangleData> {
        let (a, b) = (self.a, self.b);
        if !(b > 0.0) {
            return Err(Error::DegenerateTriangle(b));
        }
        let m = a.hypot(b);
        let n = (a - 1.0).hypot(b);
        // atan2(|cross|, dot) at each vertex
        let alpha = b.atan2(a);
        let beta = b.atan2(1.0 - a);
        let gamma = b.atan2(a * a - a + b * b);
        let area = b / 2.0;
        let perimeter = 1.0 + m + n;
        let diameter = m.max(n).max(1.0);
        Ok(TriangleData {
            m,
            n,
            alpha,
            beta,
            gamma,
            area,
            perimeter,
            diameter,
            height: 2.0 * area / diameter,
            inradius: 2.0 * area / perimeter,
        })
    }

    pub fn classify(&self) -> Result<TriangleClass> {
        let d = self.derive()?;
        if 2.0 * d.area / (d.diameter * d.diameter) < 1e-12 {
            return Ok(TriangleClass::Degenerate);
        }
        let sides = [1.0, d.m, d.n];
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-10 * x.max(y);
        let equal_pairs = [
            close(sides[0], sides[1]),
            close(sides[0], sides[2]),
            close(sides[1], sides[2]),
        ];
        if equal_pairs.iter().all(|&e| e) {
            return Ok(TriangleClass::Equilateral);
        }
        let isosceles = equal_pairs.iter().any(|&e| e);
        let largest = d.alpha.max(d.beta).max(d.gamma);
        if (largest - PI / 2.0).abs() <= ANGLE_TOL {
            Ok(TriangleClass::Right)
        } else if largest > PI / 2.0 {
            Ok(if isosceles {
                TriangleClass::IsoscelesObtuse
            } else {
                TriangleClass::Obtuse
            })
        } else {
            Ok(if isosceles {
                TriangleClass::IsoscelesAcute
            } else {
                TriangleClass::Acute
            })
        }
    }

    /// Same shape, rescaled so that the longest side is the unit base and
    /// `M <= N` (the reference chart `T`).
    pub fn to_reference_chart(&self) -> Result<Triangle> {
        self.rebase(|sides| {
            let mut s = sides;
            s.sort_by(|x, y| x.partial_cmp(y).unwrap());
            (s[2], s[0], s[1])
        })
    }

    /// Same shape, rescaled so that the shortest side is the unit base and
    /// `1 <= M <= N` (the acute chart `T'`). Returns `None` for obtuse shapes.
    pub fn to_acute_chart(&self) -> Result<Option<Triangle>> {
        let t = self.rebase(|sides| {
            let mut s = sides;
            s.sort_by(|x, y| x.partial_cmp(y).unwrap());
            (s[0], s[1], s[2])
        })?;
        if t.a < -REGION_SLACK {
            Ok(None)
        } else {
            Ok(Some(Triangle { a: t.a.max(0.0), b: t.b }))
        }
    }

    fn rebase(&self, pick: impl Fn([f64; 3]) -> (f64, f64, f64)) -> Result<Triangle> {
        let d = self.derive()?;
        let (base, m, n) = pick([1.0, d.m, d.n]);
        let (m, n) = (m / base, n / base);
        let a = (1.0 + m * m - n * n) / 2.0;
        let b = 2.0 * d.area / (base * base);
        Triangle::new(a, b)
    }

    pub fn dilate(&self, s: f64) -> [[f64; 2]; 3] {
        let v = self.vertices();
        v.map(|p| [p[0] * s, p[1] * s])
    }
}

/// Rectangle `(-a, a) x (-b, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub a: f64,
    pub b: f64,
}

impl Rectangle {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::DegenerateShape(format!("rectangle half-widths ({a}, {b})")));
        }
        Ok(Rectangle { a, b })
    }

    pub fn area(&self) -> f64 {
        4.0 * self.a * self.b
    }

    pub fn perimeter(&self) -> f64 {
        4.0 * (self.a + self.b)
    }
}

/// Circular sector of opening `angle` and `radius`, apex at the origin,
/// symmetric about the positive x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    pub angle: f64,
    pub radius: f64,
}

impl Sector {
    pub fn new(angle: f64, radius: f64) -> Result<Self> {
        if !(angle > 0.0 && angle < PI) {
            return Err(Error::AngleOutOfRange(angle));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::DegenerateShape(format!("sector radius {radius}")));
        }
        Ok(Sector { angle, radius })
    }

    pub fn area(&self) -> f64 {
        self.radius * self.radius * self.angle / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Reference chart `T`.
    Reference,
    /// Acute chart `T'_acute`.
    AcuteChart,
    /// `T_obtuse`.
    Obtuse,
    AcuteCase1,
    AcuteCase1a,
    AcuteCase1b,
    AcuteCase2,
    ObtuseCase1,
    ObtuseCase2,
    ObtuseCase3,
}

impl Region {
    pub const ALL: [Region; 10] = [
        Region::Reference,
        Region::AcuteChart,
        Region::Obtuse,
        Region::AcuteCase1,
        Region::AcuteCase1a,
        Region::AcuteCase1b,
        Region::AcuteCase2,
        Region::ObtuseCase1,
        Region::ObtuseCase2,
        Region::ObtuseCase3,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Region::Reference => "T",
            Region::AcuteChart => "T'_acute",
            Region::Obtuse => "T_obtuse",
            Region::AcuteCase1 => "acute-case-1",
            Region::AcuteCase1a => "acute-case-1a",
            Region::AcuteCase1b => "acute-case-1b",
            Region::AcuteCase2 => "acute-case-2",
            Region::ObtuseCase1 => "obtuse-case-1",
            Region::ObtuseCase2 => "obtuse-case-2",
            Region::ObtuseCase3 => "obtuse-case-3",
        }
    }

    pub fn contains(&self, a: f64, b: f64) -> bool {
        in_region(a, b, *self)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = match s {
            "T" | "𝒯" | "reference" => Region::Reference,
            "T'_acute" | "T'" | "𝒯′_acute" | "acute-chart" => Region::AcuteChart,
            "T_obtuse" | "𝒯_obtuse" | "obtuse" => Region::Obtuse,
            "acute-case-1" => Region::AcuteCase1,
            "acute-case-1a" => Region::AcuteCase1a,
            "acute-case-1b" => Region::AcuteCase1b,
            "acute-case-2" => Region::AcuteCase2,
            "obtuse-case-1" => Region::ObtuseCase1,
            "obtuse-case-2" => Region::ObtuseCase2,
            "obtuse-case-3" => Region::ObtuseCase3,
            other => return Err(Error::UnknownRegion(other.to_string())),
        };
        Ok(r)
    }
}

/// Left end of the obtuse case-1 band, `(3 - sqrt(24 sqrt(15) - 87)) / 6`.
pub fn obtuse_case1_a_min() -> f64 {
    (3.0 - (24.0 * 15f64.sqrt() - 87.0).sqrt()) / 6.0
}

/// Lower curve of the obtuse case-1 band, `3/2 - sqrt(5)/2 sqrt(1 + 2a - 2a^2)`.
pub fn obtuse_case1_b_low(a: f64) -> f64 {
    1.5 - 5f64.sqrt() / 2.0 * (1.0 + 2.0 * a - 2.0 * a * a).sqrt()
}

/// The right-triangle arc `b = sqrt(a - a^2)` of the reference chart.
pub fn right_arc(a: f64) -> f64 {
    (a - a * a).max(0.0).sqrt()
}

/// The curve `b = 2a(1-a) / (1 - a + a^2)` separating obtuse cases 2 and 3.
pub fn obtuse_case2_curve(a: f64) -> f64 {
    2.0 * a * (1.0 - a) / (1.0 - a + a * a)
}

pub fn in_region(a: f64, b: f64, region: Region) -> bool {
    let e = REGION_SLACK;
    let sqrt3_2 = 3f64.sqrt() / 2.0;
    let in_reference =
        (-e..=0.5 + e).contains(&a) && (-e..=sqrt3_2 + e).contains(&b) && (a - 1.0).powi(2) + b * b <= 1.0 + e;
    let in_acute_chart = (-e..=0.5 + e).contains(&a) && b >= -e && a * a + b * b >= 1.0 - e;
    let in_obtuse = (-e..=0.5 + e).contains(&a)
        && (-e..=0.5 + e).contains(&b)
        && (a - 0.5).powi(2) + b * b <= 0.25 + e;
    match region {
        Region::Reference => in_reference,
        Region::AcuteChart => in_acute_chart,
        Region::Obtuse => in_obtuse,
        Region::AcuteCase1 => in_acute_chart && b >= sqrt3_2 - e && b <= 4.0 + e,
        Region::AcuteCase1a => in_acute_chart && b >= sqrt3_2 - e && b <= 2.9 + e,
        Region::AcuteCase1b => in_acute_chart && b >= 1.0 - e && b <= 4.0 + e,
        Region::AcuteCase2 => in_acute_chart && b >= 3.0 - e,
        Region::ObtuseCase1 => {
            in_obtuse
                && a >= obtuse_case1_a_min() - e
                && b >= obtuse_case1_b_low(a) - e
                && b <= right_arc(a) + e
        }
        Region::ObtuseCase2 => in_obtuse && b <= obtuse_case2_curve(a) + e,
        Region::ObtuseCase3 => {
            in_obtuse && b >= obtuse_case2_curve(a) - e && b <= right_arc(a) + e && b <= 0.3 + e
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_data() {
        let d = Triangle::equilateral().derive().unwrap();
        assert!((d.m - 1.0).abs() < 1e-15 && (d.n - 1.0).abs() < 1e-15);
        for ang in [d.alpha, d.beta, d.gamma] {
            assert!((ang - PI / 3.0).abs() < 1e-14);
        }
        assert!((d.area - 3f64.sqrt() / 4.0).abs() < 1e-16);
        assert!((d.perimeter - 3.0).abs() < 1e-15);
        assert!((d.inradius - 3f64.sqrt() / 6.0).abs() < 1e-15);
    }

    #[test]
    fn right_isosceles_data() {
        let d = Triangle::new(0.0, 1.0).unwrap().derive().unwrap();
        assert_eq!(d.m, 1.0);
        assert!((d.n - 2f64.sqrt()).abs() < 1e-15);
        assert!((d.alpha - PI / 2.0).abs() < 1e-15);
        assert!((d.gamma - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn isosceles_apex_angle() {
        for b in [0.1, 0.5, 1.0, 3.0, 10.0] {
            let d = Triangle::new(0.5, b).unwrap().derive().unwrap();
            assert!((d.gamma - 2.0 * (1.0 / (2.0 * b)).atan()).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(Triangle::new(0.3, 0.0), Err(Error::DegenerateTriangle(_))));
        assert!(matches!(Triangle { a: 0.3, b: -1.0 }.derive(), Err(Error::DegenerateTriangle(_))));
        assert!(Triangle { a: 0.3, b: -1.0 }.classify().is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(Triangle::equilateral().classify().unwrap(), TriangleClass::Equilateral);
        assert_eq!(Triangle::new(0.2, 0.2).unwrap().classify().unwrap(), TriangleClass::Obtuse);
        assert_eq!(Triangle::new(0.0, 1.0).unwrap().classify().unwrap(), TriangleClass::Right);
        assert_eq!(
            Triangle::new(0.5, 0.2).unwrap().classify().unwrap(),
            TriangleClass::IsoscelesObtuse
        );
        assert_eq!(Triangle::new(0.5, 2.0).unwrap().classify().unwrap(), TriangleClass::IsoscelesAcute);
        assert_eq!(Triangle::new(0.3, 0.7).unwrap().classify().unwrap(), TriangleClass::Acute);
    }

    #[test]
    fn region_examples() {
        assert!(in_region(0.5, 3f64.sqrt() / 2.0, Region::Reference));
        assert!(in_region(0.3, 0.1, Region::ObtuseCase2));
        assert!(!in_region(0.2, 0.45, Region::Obtuse));
        assert!("nowhere".parse::<Region>().is_err());
        for r in Region::ALL {
            assert_eq!(r.id().parse::<Region>().unwrap(), r);
        }
    }

    #[test]
    fn obtuse_case1_band_endpoint() {
        let a0 = obtuse_case1_a_min();
        assert!((a0 - 0.0934).abs() < 1e-4);
        // the two curves of the band meet at a0
        assert!((obtuse_case1_b_low(a0) - right_arc(a0)).abs() < 1e-12);
    }

    #[test]
    fn chart_maps_preserve_shape() {
        let t = Triangle::new(0.3, 0.7).unwrap();
        let r = t.to_reference_chart().unwrap();
        let p = t.to_acute_chart().unwrap().unwrap();
        assert!(in_region(r.a, r.b, Region::Reference));
        assert!(in_region(p.a, p.b, Region::AcuteChart));
        let mut a0 = angles(&t);
        let mut a1 = angles(&r);
        let mut a2 = angles(&p);
        a0.sort_by(f64::total_cmp);
        a1.sort_by(f64::total_cmp);
        a2.sort_by(f64::total_cmp);
        for i in 0..3 {
            assert!((a0[i] - a1[i]).abs() < 1e-12 && (a0[i] - a2[i]).abs() < 1e-12);
        }
        assert!(Triangle::new(0.2, 0.2).unwrap().to_acute_chart().unwrap().is_none());
    }

    fn angles(t: &Triangle) -> [f64; 3] {
        let d = t.derive().unwrap();
        [d.alpha, d.beta, d.gamma]
    }
}
