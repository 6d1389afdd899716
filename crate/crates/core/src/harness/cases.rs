//! The named scalar functions whose `>= 1` property closes each lower-bound
//! case, and the per-point context the obtuse cases are phrased in.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bounds::SECTOR_TORSION_CONST;
use crate::constants::{rat, C1_F64};
use crate::error::{Error, Result};
use crate::geometry::{in_region, Region, REGION_SLACK};

/// `k = 23/10`, the rounded Airy constant of the acute case-1b chain.
pub const K_ACUTE: f64 = 2.3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseContext {
    pub chart: Region,
    pub a: f64,
    pub b: f64,
    /// Apex angle of the isosceles triangle `(1/2, b)`, `2 atan(1/(2b))`.
    pub gamma_iso: f64,
    /// Apex angle of the right triangle `(0, b)`, `atan(1/b)`.
    pub gamma_right: f64,
    /// `1/2 - sqrt(1/4 - b^2)`: the right triangle at height `b`.
    pub a_b: Option<f64>,
    /// `(1 - a_b) / b`.
    pub x_b: Option<f64>,
    /// Smallest angle of the right triangle `(a_b, b)`, `atan(1/x_b)`.
    pub beta_b: Option<f64>,
}

impl CaseContext {
    pub fn new(chart: Region, a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::DegenerateTriangle(b));
        }
        if !matches!(chart, Region::Reference | Region::AcuteChart | Region::Obtuse) {
            return Err(Error::DomainError(format!("`{chart}` is a case region, not a chart")));
        }
        let (a_b, x_b, beta_b) = if b <= 0.5 {
            let a_b = 0.5 - (0.25 - b * b).sqrt();
            let x_b = (1.0 - a_b) / b;
            (Some(a_b), Some(x_b), Some((1.0 / x_b).atan()))
        } else {
            (None, None, None)
        };
        Ok(CaseContext {
            chart,
            a,
            b,
            gamma_iso: 2.0 * (0.5 / b).atan(),
            gamma_right: (1.0 / b).atan(),
            a_b,
            x_b,
            beta_b,
        })
    }
}

/// Exact `x_b` for rational `b` with `1/4 - b^2` a rational square, e.g.
/// `x_b(3/10) = 3`.
pub fn x_b_exact(b: &BigRational, root: &BigRational) -> Option<BigRational> {
    let quarter = rat(1, 4);
    if root * root != &quarter - b * b {
        return None;
    }
    let a_b = rat(1, 2) - root;
    Some((BigRational::one() - a_b) / b)
}

/// One of the case functions, with its exact value when the expression is
/// rational in the inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseValue {
    pub value: f64,
    pub exact: Option<BigRational>,
}

pub const CASE_FUNCTIONS: [&str; 8] = [
    "acute-1a.g",
    "acute-1b.f",
    "mgeq3.f",
    "mgeq3.h",
    "mgeq3.g",
    "obtuse-1.f",
    "obtuse-2.f",
    "obtuse-3.prefactor",
];

fn out_of_region(name: &str, a: f64, b: f64) -> Error {
    Error::OutOfRegion(a, b, name.to_string())
}

fn arity(name: &str) -> Result<usize> {
    match name {
        "acute-1a.g" | "obtuse-1.f" | "obtuse-2.f" => Ok(2),
        "acute-1b.f" | "mgeq3.f" | "mgeq3.h" | "mgeq3.g" | "obtuse-3.prefactor" => Ok(1),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn check_region(name: &str, p: &[f64]) -> Result<()> {
    let e = REGION_SLACK;
    let ok = match name {
        "acute-1a.g" => in_region(p[0], p[1], Region::AcuteCase1a),
        "obtuse-1.f" => in_region(p[0], p[1], Region::ObtuseCase1),
        "obtuse-2.f" => in_region(p[0], p[1], Region::ObtuseCase2) && p[0] > 0.0,
        "acute-1b.f" => p[0] >= (1.0f64 / 8.0).atan() - e && p[0] <= 0.5f64.atan() + e,
        "mgeq3.f" => p[0] >= 3.0 - e,
        "mgeq3.h" | "mgeq3.g" => p[0] > 0.0 && p[0] <= (1.0f64 / 3.0).atan() + e,
        "obtuse-3.prefactor" => (-e..=0.5 + e).contains(&p[0]),
        _ => unreachable!("arity checked first"),
    };
    if ok {
        Ok(())
    } else {
        Err(out_of_region(name, p[0], p.get(1).copied().unwrap_or(f64::NAN)))
    }
}

/// `(3/5) ((a-1)^2 + b^2 + b)^2 / (((a-1)^2 + b^2)((a-1)^2 + b^2 + a))`.
pub fn acute_1a_g_exact(a: &BigRational, b: &BigRational) -> BigRational {
    let one = BigRational::one();
    let s = (a - &one) * (a - &one) + b * b;
    let num = (&s + b) * (&s + b);
    rat(3, 5) * num / (&s * (&s + a))
}

/// `(3/5)(1 + b)^2 / (1 - a + a^2 + b^2)`.
pub fn obtuse_1_f_exact(a: &BigRational, b: &BigRational) -> BigRational {
    let one = BigRational::one();
    let t = &one + b;
    rat(3, 5) * &t * &t / (&one - a + a * a + b * b)
}

/// `(1 - a) a (1 + b)^2 / (a - a^2 + b^2)`.
pub fn obtuse_2_f_exact(a: &BigRational, b: &BigRational) -> BigRational {
    let one = BigRational::one();
    let t = &one + b;
    (&one - a) * a * &t * &t / (a - a * a + b * b)
}

/// `kappa = c1 / (2^(1/3) pi^(2/3))`.
fn kappa1() -> f64 {
    C1_F64 / (2f64.cbrt() * PI.powf(2.0 / 3.0))
}

fn acute_1b_f(x: f64) -> f64 {
    let x3 = x.powi(3);
    let x5 = x.powi(5);
    let lower_tan = x + x3 / 3.0 + 2.0 * x5 / 15.0;
    let upper_tan = x + x3 / 3.0 + 2.0 * x5 / 5.0;
    let airy = 1.0 / x + K_ACUTE * 2f64.cbrt() / PI.powf(2.0 / 3.0) * x.powf(-1.0 / 3.0);
    0.6 * x * lower_tan / (1.0 + 4.0 * upper_tan * upper_tan) * airy * airy
}

/// The sector chain for the right triangle `(0, b)` as a function of
/// `x = atan(1/b)`.
fn mgeq3_h(x: f64) -> f64 {
    let c = (x / 2.0).cos();
    let t = x.tan();
    let airy = 1.0 + kappa1() * x.powf(2.0 / 3.0);
    3.0 * c.powi(4) / (x * t * t) * airy * airy * (t - x - SECTOR_TORSION_CONST * x.powi(4))
}

fn mgeq3_f(b: f64) -> f64 {
    let g = (1.0 / b).atan();
    let airy = 1.0 + kappa1() * g.powf(2.0 / 3.0);
    let side = 1.0 + b / (b * b + 1.0).sqrt();
    0.75 * b * b / g * side * side * airy * airy * (1.0 / b - g - SECTOR_TORSION_CONST * g.powi(4))
}

/// Polynomial-friendly minorant of `mgeq3_h`.
fn mgeq3_g(x: f64) -> f64 {
    let x2 = x * x;
    let cos4 = (1.0 - x2 / 8.0).powi(4);
    let tan_ratio = 1.0 + x2 / 3.0 + 2.0 * x2 * x2 / 5.0;
    let airy = 1.0 + kappa1() * x.powf(2.0 / 3.0);
    cos4 / (tan_ratio * tan_ratio) * airy * airy * (1.0 - 3.0 * SECTOR_TORSION_CONST * x)
}

/// `16(1+s) / (sqrt2 + sqrt2 s + 2 sqrt(1+s))^2` with `s = sqrt(1 - 4b^2)`.
pub fn obtuse_3_prefactor(b: f64) -> f64 {
    let s = (1.0 - 4.0 * b * b).max(0.0).sqrt();
    let r2 = 2f64.sqrt();
    let d = r2 + r2 * s + 2.0 * (1.0 + s).sqrt();
    16.0 * (1.0 + s) / (d * d)
}

/// Evaluates a case function at a float point. Rational functions are
/// evaluated exactly on the binary value of the inputs.
pub fn case_function(name: &str, point: &[f64]) -> Result<CaseValue> {
    let n = arity(name)?;
    if point.len() != n {
        return Err(Error::DomainError(format!("{name} takes {n} arguments, got {}", point.len())));
    }
    if point.iter().any(|v| !v.is_finite()) {
        return Err(Error::DomainError(format!("{name}: non-finite argument")));
    }
    check_region(name, point)?;
    let exact = match name {
        "acute-1a.g" | "obtuse-1.f" | "obtuse-2.f" => {
            let q: Vec<BigRational> = point.iter().map(|&v| BigRational::from_float(v).expect("finite")).collect();
            Some(case_function_exact(name, &q)?)
        }
        _ => None,
    };
    let value = match (&exact, name) {
        (Some(q), _) => q.to_f64().unwrap_or(f64::NAN),
        (None, "acute-1b.f") => acute_1b_f(point[0]),
        (None, "mgeq3.f") => mgeq3_f(point[0]),
        (None, "mgeq3.h") => mgeq3_h(point[0]),
        (None, "mgeq3.g") => mgeq3_g(point[0]),
        (None, "obtuse-3.prefactor") => obtuse_3_prefactor(point[0]),
        _ => unreachable!(),
    };
    Ok(CaseValue { value, exact })
}

/// Exact evaluation of the rational case functions at a rational point.
pub fn case_function_exact(name: &str, point: &[BigRational]) -> Result<BigRational> {
    let f: fn(&BigRational, &BigRational) -> BigRational = match name {
        "acute-1a.g" => acute_1a_g_exact,
        "obtuse-1.f" => obtuse_1_f_exact,
        "obtuse-2.f" => obtuse_2_f_exact,
        other if arity(other).is_ok() => {
            return Err(Error::DomainError(format!("{other} is not a rational function")))
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    if point.len() != 2 {
        return Err(Error::DomainError(format!("{name} takes 2 arguments, got {}", point.len())));
    }
    let fp = [point[0].to_f64().unwrap_or(f64::NAN), point[1].to_f64().unwrap_or(f64::NAN)];
    check_region(name, &fp)?;
    Ok(f(&point[0], &point[1]))
}
