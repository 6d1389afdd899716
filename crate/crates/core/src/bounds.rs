//! Analytic lower and upper bounds on torsion, eigenvalue and the Polya
//! functional, as pure functions of scalar geometric data.
//!
//! Inputs are raw scalars rather than shapes so that the bounds can be probed
//! on boundary curves of the case regions.

use std::f64::consts::PI;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{bessel_first_zero, BESSEL_MAX_ORDER};
use crate::constants::{rat_int, C1_F64};
use crate::error::{Error, Result};
use crate::geometry::{Rectangle, TriangleData};

/// `124 zeta(5) / pi^5`.
pub const SECTOR_TORSION_CONST: f64 = 124.0 * 1.036_927_755_143_37 / (PI * PI * PI * PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    LowerOnT,
    LowerOnLambda,
    LowerOnF,
    UpperOnF,
    UpperOnLambda,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: f64,
    pub kind: BoundKind,
    /// Condition under which the value is a valid bound.
    pub validity: String,
}

impl BoundValue {
    fn new(value: f64, kind: BoundKind, validity: &str) -> Self {
        BoundValue {
            value,
            kind,
            validity: validity.to_string(),
        }
    }
}

/// `T >= b^3 / (80 (1 - a + a^2 + b^2))`, from the affine image of the
/// equilateral torsion function. Valid for every triangle in the apex chart.
pub fn torsion_lb_equilateral_test(a: f64, b: f64) -> BoundValue {
    BoundValue::new(
        b.powi(3) / (80.0 * (1.0 - a + a * a + b * b)),
        BoundKind::LowerOnT,
        "any triangle (0,0),(1,0),(a,b)",
    )
}

pub fn torsion_lb_equilateral_test_exact(a: &BigRational, b: &BigRational) -> BigRational {
    let one = rat_int(1);
    b * b * b / (rat_int(80) * (&one - a + a * a + b * b))
}

fn check_open_unit(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::DomainError(format!("a = {a} must lie in (0, 1)")));
    }
    Ok(())
}

/// `T >= (1-a) a b^3 / (48 (a - a^2 + b^2))`, from the product test function
/// adapted to the obtuse chart.
pub fn torsion_lb_obtuse_test(a: f64, b: f64) -> Result<BoundValue> {
    check_open_unit(a)?;
    Ok(BoundValue::new(
        (1.0 - a) * a * b.powi(3) / (48.0 * (a - a * a + b * b)),
        BoundKind::LowerOnT,
        "triangle (0,0),(1,0),(a,b) with 0 < a < 1",
    ))
}

pub fn torsion_lb_obtuse_test_exact(a: &BigRational, b: &BigRational) -> BigRational {
    let one = rat_int(1);
    (&one - a) * a * b * b * b / (rat_int(48) * (a - a * a + b * b))
}

fn check_angle(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::AngleOutOfRange(theta));
    }
    Ok(())
}

/// `lambda_1 >= (theta/b) j_{pi/theta}^2`: the sector of opening `theta` (the
/// smallest angle) with the triangle's area `b/2`.
pub fn eig_lb_sector(theta: f64, b: f64) -> Result<BoundValue> {
    check_angle(theta)?;
    let nu = PI / theta;
    if nu > BESSEL_MAX_ORDER {
        return Err(Error::DomainError(format!(
            "Bessel order {nu} above {BESSEL_MAX_ORDER}; use the minorized bound"
        )));
    }
    let j = bessel_first_zero(nu)?;
    Ok(BoundValue::new(
        theta / b * j * j,
        BoundKind::LowerOnLambda,
        "theta is the smallest angle, area b/2",
    ))
}

/// Lower bound on `j_nu` from the first Airy zero: `nu + c1 2^(-1/3) nu^(1/3)`.
pub fn bessel_zero_minorant(nu: f64) -> f64 {
    nu + C1_F64 * nu.cbrt() / 2f64.cbrt()
}

/// `eig_lb_sector` with `j_nu` replaced by its Airy-zero minorant.
pub fn eig_lb_sector_minorized(theta: f64, b: f64) -> Result<BoundValue> {
    check_angle(theta)?;
    let j = bessel_zero_minorant(PI / theta);
    Ok(BoundValue::new(
        theta / b * j * j,
        BoundKind::LowerOnLambda,
        "theta is the smallest angle, area b/2",
    ))
}

/// `lambda_1 >= pi^2 (1/d + 1/h)^2` for a triangle of diameter `d` and
/// altitude `h` onto its longest side.
pub fn eig_lb_diameter_height(d: f64, h: f64) -> Result<BoundValue> {
    if !(d > 0.0 && h > 0.0) {
        return Err(Error::DomainError(format!("diameter {d} and height {h} must be positive")));
    }
    Ok(BoundValue::new(
        PI * PI * (1.0 / d + 1.0 / h).powi(2),
        BoundKind::LowerOnLambda,
        "triangle with diameter d and height h on the longest side",
    ))
}

pub fn eig_lb_diameter_height_exact_over_pi2(d: &BigRational, h: &BigRational) -> BigRational {
    let s = d.recip() + h.recip();
    &s * &s
}

/// `T(S(gamma, h)) >= (h^4/16)(tan gamma - gamma - 124 zeta(5) gamma^4 / pi^5)`.
///
/// The sector sits inside the triangle when `M >= 2` or `gamma <= pi/4`;
/// `m` is the side length `M` of the caller's chart.
pub fn torsion_lb_sector_closed(h: f64, gamma: f64, m: f64) -> Result<BoundValue> {
    if !(gamma > 0.0 && gamma < PI / 2.0) {
        return Err(Error::AngleOutOfRange(gamma));
    }
    if !(m >= 2.0 || gamma <= PI / 4.0) {
        return Err(Error::ValidityViolation(format!(
            "need M >= 2 or gamma <= pi/4, got M = {m}, gamma = {gamma}"
        )));
    }
    Ok(BoundValue::new(
        h.powi(4) / 16.0 * (gamma.tan() - gamma - SECTOR_TORSION_CONST * gamma.powi(4)),
        BoundKind::LowerOnT,
        "M >= 2 or gamma <= pi/4",
    ))
}

/// Altitude of the isosceles triangle with legs `M` and apex angle equal to
/// the angle between sides `M` and `N = sqrt(M^2 + 1)`.
pub fn altitude_iso(m: f64, n: f64) -> f64 {
    m / 2f64.sqrt() * (1.0 + m / n).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    Triangle,
    TangentialQuadrilateral,
}

impl DomainKind {
    /// Cap on `lambda_1 |D|^2 / P^2`.
    pub fn eigen_cap(&self) -> f64 {
        match self {
            DomainKind::Triangle => PI * PI / 9.0,
            DomainKind::TangentialQuadrilateral => PI * PI / 8.0,
        }
    }
}

/// Cap on `T P^2 / |D|^3` for convex domains.
pub const TORSION_CAP: f64 = 2.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub lambda1: f64,
    pub torsion: f64,
    pub area: f64,
    pub perimeter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperChain {
    /// `lambda_1 |D|^2 / P^2`.
    pub eigen_factor: f64,
    /// `T P^2 / |D|^3`.
    pub torsion_factor: f64,
    pub eigen_cap: f64,
    pub eigen_within_cap: bool,
    pub torsion_within_cap: bool,
    /// Product of the two factors, which equals `F`.
    pub product: f64,
    /// `eigen_cap * 2/3`.
    pub bound: BoundValue,
}

/// Splits `F = (lambda_1 |D|^2 / P^2)(T P^2 / |D|^3)` and checks each factor
/// against its cap.
pub fn upper_chain(m: &Metrics, kind: DomainKind) -> Result<UpperChain> {
    if !(m.lambda1 > 0.0 && m.torsion > 0.0 && m.area > 0.0 && m.perimeter > 0.0) {
        return Err(Error::DomainError("upper_chain needs positive metrics".into()));
    }
    let p2 = m.perimeter * m.perimeter;
    let eigen_factor = m.lambda1 * m.area * m.area / p2;
    let torsion_factor = m.torsion * p2 / m.area.powi(3);
    let cap = kind.eigen_cap();
    Ok(UpperChain {
        eigen_factor,
        torsion_factor,
        eigen_cap: cap,
        eigen_within_cap: eigen_factor <= cap,
        torsion_within_cap: torsion_factor < TORSION_CAP,
        product: eigen_factor * torsion_factor,
        bound: BoundValue::new(
            cap * TORSION_CAP,
            BoundKind::UpperOnF,
            match kind {
                DomainKind::Triangle => "triangles",
                DomainKind::TangentialQuadrilateral => "tangential quadrilaterals",
            },
        ),
    })
}

/// `F <= (pi^2/24)(1 + 2 sqrt(pi) |D|^(1/2) / P)^2`, for domains whose
/// inradius satisfies `P R / 2 = |D|`.
pub fn thinning_upper(area: f64, perimeter: f64) -> Result<BoundValue> {
    if !(area > 0.0 && perimeter > 0.0) {
        return Err(Error::DomainError("area and perimeter must be positive".into()));
    }
    let t = 1.0 + 2.0 * PI.sqrt() * area.sqrt() / perimeter;
    Ok(BoundValue::new(
        PI * PI / 24.0 * t * t,
        BoundKind::UpperOnF,
        "tangential domains (P R / 2 = area)",
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeMetrics {
    pub area: f64,
    pub perimeter: f64,
    pub inradius: f64,
}

impl From<&TriangleData> for ShapeMetrics {
    fn from(d: &TriangleData) -> Self {
        ShapeMetrics {
            area: d.area,
            perimeter: d.perimeter,
            inradius: d.inradius,
        }
    }
}

impl From<&Rectangle> for ShapeMetrics {
    fn from(r: &Rectangle) -> Self {
        ShapeMetrics {
            area: r.area(),
            perimeter: r.perimeter(),
            inradius: r.a.min(r.b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxFunctionals {
    /// `T / (|D| R^2)`, at least 1/8.
    pub psi: f64,
    /// `T / (|D| max u)`, at least 1/4.
    pub phi: f64,
    /// `lambda_1 R^2`, at least pi^2/4.
    pub hersch_protter: f64,
    /// `lambda_1 max u`, at least pi^2/8.
    pub payne: f64,
}

pub fn aux_functionals(lambda1: f64, torsion: f64, torsion_max: f64, m: &ShapeMetrics) -> AuxFunctionals {
    let r2 = m.inradius * m.inradius;
    AuxFunctionals {
        psi: torsion / (m.area * r2),
        phi: torsion / (m.area * torsion_max),
        hersch_protter: lambda1 * r2,
        payne: lambda1 * torsion_max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::equilateral_exact;
    use crate::constants::rat;

    #[test]
    fn equilateral_test_function_is_sharp() {
        let v = torsion_lb_equilateral_test(0.5, 3f64.sqrt() / 2.0);
        assert!((v.value - 3f64.sqrt() / 320.0).abs() < 1e-16);
        assert_eq!(v.kind, BoundKind::LowerOnT);
        for (a, b) in [(0.1, 0.3), (0.3, 2.0), (0.45, 0.01)] {
            let x = torsion_lb_equilateral_test(a, b).value;
            let y = torsion_lb_equilateral_test(1.0 - a, b).value;
            assert!((x - y).abs() <= 1e-15 * x);
        }
        let exact = torsion_lb_equilateral_test_exact(&rat(3, 10), &rat(2, 5));
        let float = torsion_lb_equilateral_test(0.3, 0.4).value;
        assert!((num_traits::ToPrimitive::to_f64(&exact).unwrap() - float).abs() < 1e-16);
    }

    #[test]
    fn obtuse_test_function() {
        let x = torsion_lb_obtuse_test(0.3, 0.2).unwrap().value;
        let y = torsion_lb_obtuse_test(0.7, 0.2).unwrap().value;
        assert!((x - y).abs() < 1e-16);
        assert!(torsion_lb_obtuse_test(1e-12, 0.2).unwrap().value < 1e-12);
        assert!(matches!(torsion_lb_obtuse_test(0.0, 0.2), Err(Error::DomainError(_))));
        assert!(torsion_lb_obtuse_test(1.2, 0.2).is_err());
    }

    #[test]
    fn sector_eigen_bounds() {
        for theta in [0.1, 0.3, 0.7] {
            let exact = eig_lb_sector(theta, 1.0).unwrap().value;
            let minor = eig_lb_sector_minorized(theta, 1.0).unwrap().value;
            assert!(minor <= exact);
        }
        // right isosceles with unit legs: lambda_1 = 5 pi^2 (half of the unit square's (1,2) mode)
        let v = eig_lb_sector(PI / 4.0, 1.0).unwrap().value;
        assert!(v <= 5.0 * PI * PI);
        let a = eig_lb_sector_minorized(1e-3, 1.0).unwrap().value;
        let b = eig_lb_sector_minorized(1e-5, 1.0).unwrap().value;
        assert!(b > a && a > 9e3);
        assert!(matches!(eig_lb_sector(0.0, 1.0), Err(Error::AngleOutOfRange(_))));
        assert!(eig_lb_sector(PI, 1.0).is_err());
    }

    #[test]
    fn bessel_minorant_below_zero() {
        for nu in 1..=20 {
            let nu = nu as f64;
            assert!(bessel_first_zero(nu).unwrap() > bessel_zero_minorant(nu));
        }
    }

    #[test]
    fn diameter_height_examples() {
        let e = eig_lb_diameter_height(1.0, 3f64.sqrt() / 2.0).unwrap().value;
        assert!((e - 45.822).abs() < 1e-3);
        assert!(e <= equilateral_exact().lambda1);
        assert!((eig_lb_diameter_height(2.0, 2.0).unwrap().value - PI * PI).abs() < 1e-14);
        assert!(eig_lb_diameter_height(0.0, 1.0).is_err());
        let b: f64 = 0.3;
        let v = eig_lb_diameter_height(1.0, b).unwrap().value;
        assert!((v - PI * PI * (1.0 + 1.0 / b).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn sector_closed_form() {
        let small = torsion_lb_sector_closed(1.0, 1e-3, 1.0).unwrap().value;
        assert!(small > 0.0 && small < 1e-9);
        assert!(matches!(
            torsion_lb_sector_closed(1.0, 1.0, 1.5),
            Err(Error::ValidityViolation(_))
        ));
        assert!(torsion_lb_sector_closed(1.0, 1.0, 2.5).is_ok());
        for g in [0.01, 0.05, 0.1, 0.2] {
            let v = torsion_lb_sector_closed(1.0, g, 1.0).unwrap().value;
            assert!(v > 0.0);
        }
    }

    #[test]
    fn altitude_examples() {
        assert!((altitude_iso(1.0, 2f64.sqrt()) - (PI / 8.0).cos()).abs() < 1e-15);
        assert!((altitude_iso(2.0, 2.0) - 2.0).abs() < 1e-15);
        let h = altitude_iso(3.0, 10f64.sqrt());
        assert!((h * h - 8.769_07).abs() < 1e-5);
        assert!(h >= 8.75f64.sqrt());
    }

    #[test]
    fn upper_chain_equilateral() {
        let e = equilateral_exact();
        let m = Metrics {
            lambda1: e.lambda1,
            torsion: e.torsion,
            area: 3f64.sqrt() / 4.0,
            perimeter: 3.0,
        };
        let c = upper_chain(&m, DomainKind::Triangle).unwrap();
        assert!((c.eigen_factor - PI * PI / 9.0).abs() < 1e-14);
        // (sqrt3/320) 9 / (3 sqrt3/64) = 3/5
        assert!((c.torsion_factor - 0.6).abs() < 1e-14);
        assert!(c.torsion_within_cap);
        assert!((c.product - PI * PI / 15.0).abs() < 1e-14);
        assert!((c.bound.value - 2.0 * PI * PI / 27.0).abs() < 1e-15);
        assert!(c.bound.value < PI * PI / 12.0);
    }

    #[test]
    fn thinning_examples() {
        let big = thinning_upper(1.0, 1e12).unwrap().value;
        assert!((big - PI * PI / 24.0).abs() < 1e-10);
        let eq = thinning_upper(3f64.sqrt() / 4.0, 3.0).unwrap().value;
        assert!((eq - 1.2993).abs() < 1e-4);
        let p = 1.0 + 2.0 * (0.25f64 + 0.0025).sqrt();
        let thin = thinning_upper(0.025, p).unwrap().value;
        assert!((thin - 0.6733).abs() < 1e-3);
        let thinner = thinning_upper(0.01, 1.0 + 2.0 * (0.25f64 + 0.0004).sqrt()).unwrap().value;
        assert!(thinner < thin);
    }

    #[test]
    fn aux_equilateral() {
        let e = equilateral_exact();
        let m = ShapeMetrics {
            area: 3f64.sqrt() / 4.0,
            perimeter: 3.0,
            inradius: 3f64.sqrt() / 6.0,
        };
        // max of u_E is at the centroid
        let aux = aux_functionals(e.lambda1, e.torsion, 1.0 / 36.0, &m);
        assert!((aux.psi - 0.15).abs() < 1e-14);
        assert!(aux.phi >= 0.25 && aux.hersch_protter >= PI * PI / 4.0 && aux.payne >= PI * PI / 8.0);
    }
}
