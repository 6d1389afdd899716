//! Closed forms and convergent series: the equilateral triangle, circular
//! sectors, rectangles, and first zeros of Bessel functions.

use std::f64::consts::PI;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Rectangle, Sector};

/// Truncated series with a bound on the discarded part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

impl SeriesValue {
    pub fn lower(&self) -> f64 {
        self.value - self.tail_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.tail_bound
    }
}

pub const DEFAULT_TERMS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilateralValues {
    pub torsion: f64,
    pub lambda1: f64,
    pub f: f64,
}

/// Unit-side equilateral triangle: `T = sqrt(3)/320`, `lambda_1 = 16 pi^2/3`.
pub fn equilateral_exact() -> EquilateralValues {
    let torsion = 3f64.sqrt() / 320.0;
    let lambda1 = 16.0 * PI * PI / 3.0;
    EquilateralValues {
        torsion,
        lambda1,
        f: PI * PI / 15.0,
    }
}

/// Torsion function and first eigenfunction of the equilateral triangle with
/// vertices `(0,0)`, `(1,0)`, `(1/2, sqrt(3)/2)`. Returns `(u_E, phi_E)`.
pub fn equilateral_fields(x: f64, y: f64) -> (f64, f64) {
    let s3 = 3f64.sqrt();
    let u = (y - s3 * x) * (y + s3 * x - s3) * y / (2.0 * s3);
    let phi = (4.0 * PI * y / s3).sin() - (2.0 * PI * (x + y / s3)).sin() + (2.0 * PI * (x - y / s3)).sin();
    (u, phi)
}

/// Torsional rigidity of a circular sector of opening `angle` and radius
/// `r0`, by the odd-index series; `angle` must lie in `(0, pi/2)`.
pub fn sector_torsion(s: &Sector, n_terms: usize) -> Result<SeriesValue> {
    let alpha = s.angle;
    if !(alpha > 0.0 && alpha < PI / 2.0) {
        return Err(Error::AngleOutOfRange(alpha));
    }
    if n_terms == 0 {
        return Err(Error::DomainError("n_terms must be at least 1".into()));
    }
    let t = 2.0 * alpha / PI;
    let mut sum = 0.0;
    for k in (0..n_terms).rev() {
        let n = (2 * k + 1) as f64;
        sum += 1.0 / (n * n * (n + t) * (n + t) * (n - t));
    }
    let r4 = s.radius.powi(4);
    let c = 128.0 * alpha.powi(4) / PI.powi(5);
    // for n >= 3: n - t >= n - 1 >= 2n/3, so each term is at most (3/2)/n^5
    let n0 = (2 * n_terms + 1) as f64;
    let tail_sum = 1.5 * (1.0 / n0.powi(5) + 1.0 / (8.0 * n0.powi(4)));
    Ok(SeriesValue {
        value: r4 / 16.0 * (alpha.tan() - alpha - c * sum),
        tail_bound: r4 / 16.0 * c * tail_sum,
        terms_used: n_terms,
    })
}

pub fn rect_lambda1(r: &Rectangle) -> f64 {
    (PI / (2.0 * r.a)).powi(2) + (PI / (2.0 * r.b)).powi(2)
}

/// `sum_{n,m < N} 1 / (p^2 q^2 (b^2 p^2 + a^2 q^2))` with `p = 2n+1`, `q = 2m+1`,
/// accumulated from the small terms upward.
fn rect_double_sum(a: f64, b: f64, n: usize) -> f64 {
    let (a2, b2) = (a * a, b * b);
    let mut total = 0.0;
    for i in (0..n).rev() {
        let p = (2 * i + 1) as f64;
        let p2 = p * p;
        let mut row = 0.0;
        for j in (0..n).rev() {
            let q = (2 * j + 1) as f64;
            let q2 = q * q;
            row += 1.0 / (p2 * q2 * (b2 * p2 + a2 * q2));
        }
        total += row;
    }
    total
}

/// Bound on the double sum over indices with `n >= N` or `m >= N`:
/// `(pi^2/8) (1/P0^4 + 1/(6 P0^3)) (1/a^2 + 1/b^2)`, `P0 = 2N+1`.
fn rect_double_tail(a: f64, b: f64, n: usize) -> f64 {
    let p0 = (2 * n + 1) as f64;
    PI * PI / 8.0 * (1.0 / p0.powi(4) + 1.0 / (6.0 * p0.powi(3))) * (1.0 / (a * a) + 1.0 / (b * b))
}

fn check_terms(n_terms: usize) -> Result<()> {
    if n_terms == 0 {
        return Err(Error::DomainError("n_terms must be at least 1".into()));
    }
    Ok(())
}

/// Torsional rigidity of `(-a,a) x (-b,b)`, truncated to `n, m < n_terms`.
pub fn rect_torsion(r: &Rectangle, n_terms: usize) -> Result<SeriesValue> {
    check_terms(n_terms)?;
    let (a, b) = (r.a, r.b);
    let c = 1024.0 * (a * b).powi(3) / PI.powi(6);
    Ok(SeriesValue {
        value: c * rect_double_sum(a, b, n_terms),
        tail_bound: c * rect_double_tail(a, b, n_terms),
        terms_used: n_terms * n_terms,
    })
}

/// `F(R_{a,b}) = (64/pi^4) (a^2 + b^2) * (double sum)`.
pub fn rect_f(r: &Rectangle, n_terms: usize) -> Result<SeriesValue> {
    check_terms(n_terms)?;
    let (a, b) = (r.a, r.b);
    let c = 64.0 * (a * a + b * b) / PI.powi(4);
    Ok(SeriesValue {
        value: c * rect_double_sum(a, b, n_terms),
        tail_bound: c * rect_double_tail(a, b, n_terms),
        terms_used: n_terms * n_terms,
    })
}

/// Torsion function at the center, `u(0,0) = (64 a^2/pi^4) sum (-1)^{n+m}
/// b^2 / (p q (b^2 p^2 + a^2 q^2))`.
pub fn rect_center_torsion(r: &Rectangle, n_terms: usize) -> Result<SeriesValue> {
    check_terms(n_terms)?;
    let (a, b) = (r.a, r.b);
    let (a2, b2) = (a * a, b * b);
    let c = 64.0 * a2 / PI.powi(4);
    let q_cut = (2 * n_terms + 1) as f64;
    let mut total = 0.0;
    let mut tail = 0.0;
    for i in (0..n_terms).rev() {
        let p = (2 * i + 1) as f64;
        let p2 = p * p;
        let mut row = 0.0;
        for j in (0..n_terms).rev() {
            let q = (2 * j + 1) as f64;
            let term = b2 / (p * q * (b2 * p2 + a2 * q * q));
            row += if j % 2 == 0 { term } else { -term };
        }
        total += if i % 2 == 0 { row } else { -row };
        // alternating in m with decreasing magnitude: first omitted term
        tail += b2 / (p * q_cut * (b2 * p2 + a2 * q_cut * q_cut));
    }
    // whole rows n >= N: each row is bounded by its first term <= 1/p^3
    let p0 = q_cut;
    tail += 1.0 / p0.powi(3) + 1.0 / (4.0 * p0 * p0);
    Ok(SeriesValue {
        value: c * total,
        tail_bound: c * tail,
        terms_used: n_terms * n_terms,
    })
}

/// Lanczos coefficients (g = 7, 9 terms).
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(x)` for `x > 0`; arguments below 1 are shifted up by the
/// recurrence `Gamma(x) = Gamma(x+1)/x`.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 1.0 {
        return ln_gamma(x + 1.0) - x.ln();
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    let t = x + 7.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

pub fn gamma(x: f64) -> f64 {
    ln_gamma(x).exp()
}

pub const BESSEL_MAX_ORDER: f64 = 100.0;

/// Normalized ascending series `S(x) = sum_k (-y)^k / (k! (nu+1)_k)`,
/// `y = x^2/4`, so that `J_nu(x) = (x/2)^nu S(x) / Gamma(nu+1)`.
///
/// Evaluated in fixed point with enough guard bits to absorb the
/// cancellation between the large central terms. Returns the value and a
/// bound on its absolute error (rounding plus truncation).
fn bessel_normalized_series(nu: f64, x: f64) -> (f64, f64) {
    let y = x * x / 4.0;
    // log2 of the largest term, estimated in floating point
    let mut log_max: f64 = 0.0;
    let mut log_t = 0.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        log_t += (y / (k * (nu + k))).log2();
        log_max = log_max.max(log_t);
        if y / (k * (nu + k)) < 0.5 && log_t < log_max - 200.0 {
            break;
        }
    }
    let bits = (log_max.max(0.0).ceil() as u32) + 128;
    let one = BigInt::from(1) << bits;
    let to_fixed = |v: f64| -> BigInt {
        let r = num_rational::BigRational::from_float(v).expect("finite");
        (r * num_rational::BigRational::from_integer(one.clone())).round().to_integer()
    };
    let y_fx = to_fixed(y);
    let nu_fx = to_fixed(nu);
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut k: u64 = 0;
    let truncation;
    loop {
        k += 1;
        let kk = BigInt::from(k);
        let denom = &kk * (&nu_fx + &kk * &one);
        term = &term * &y_fx / denom;
        let decreasing = y < (k as f64 + 1.0) * (nu + k as f64 + 1.0);
        if decreasing && term.bits() + 2 < bits as u64 - 100 {
            // alternating with decreasing magnitude from here on: the rest
            // is bounded by this term
            truncation = term.clone();
            break;
        }
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
    }
    // each division truncates by at most one unit; errors propagate with the
    // term ratio, so allow k units per term as a crude bound
    let rounding = BigInt::from(k * k + 1);
    let value = fixed_to_f64(&sum, bits);
    let err = fixed_to_f64(&(truncation + rounding), bits).abs() + value.abs() * f64::EPSILON;
    (value, err)
}

fn fixed_to_f64(v: &BigInt, bits: u32) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    let len = v.bits();
    let shift = len.saturating_sub(60);
    let top = (v.abs() >> shift).to_f64().unwrap_or(0.0);
    let sign = if v.sign() == Sign::Minus { -1.0 } else { 1.0 };
    sign * top * 2f64.powi(shift as i32 - bits as i32)
}

/// `J_nu(x)` for `nu` in `[0, 100]` and `x >= 0`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if x < 0.0 {
        return Err(Error::DomainError(format!("Bessel argument {x} < 0")));
    }
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    let (s, _) = bessel_normalized_series(nu, x);
    Ok(s * (nu * (x / 2.0).ln() - ln_gamma(nu + 1.0)).exp())
}

fn check_order(nu: f64) -> Result<()> {
    if !(0.0..=BESSEL_MAX_ORDER).contains(&nu) {
        return Err(Error::DomainError(format!("Bessel order {nu} outside [0, {BESSEL_MAX_ORDER}]")));
    }
    Ok(())
}

/// First positive zero `j_nu` of `J_nu`, to absolute accuracy 1e-12.
pub fn bessel_first_zero(nu: f64) -> Result<f64> {
    check_order(nu)?;
    // j_nu > nu + 1.8557 nu^(1/3) (first Airy zero bound); start a little
    // below it
    let mut lo = if nu > 0.0 {
        (nu + 1.855_757 * nu.cbrt()) * 0.999
    } else {
        1.0
    };
    let cutoff = nu + 4.0 * nu.cbrt() + 5.0;
    let sign_at = |x: f64| -> (f64, f64) { bessel_normalized_series(nu, x) };
    let (s0, e0) = sign_at(lo);
    if !(s0 > e0) {
        return Err(Error::ConvergenceFailure(format!(
            "normalized series not positive below the first zero of J_{nu}"
        )));
    }
    let mut hi = lo;
    loop {
        hi += 0.25;
        if hi > cutoff {
            return Err(Error::ConvergenceFailure(format!("no sign change of J_{nu} below {cutoff}")));
        }
        let (s, e) = sign_at(hi);
        if s < -e {
            break;
        }
        if s > e {
            lo = hi;
        }
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let (s, e) = sign_at(mid);
        if s > e {
            lo = mid;
        } else if s < -e {
            hi = mid;
        } else {
            return Ok(mid);
        }
    }
    Ok(0.5 * (lo + hi))
}
