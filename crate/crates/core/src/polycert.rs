//! Exact rational polynomials, Taylor shifts, and a subdividing negativity
//! certifier for univariate polynomials on `(0, dx]`.
//!
//! The certifier folds the coefficients from the top: `c_n = a_n`,
//! `c_i = a_i + dx * max(c_{i+1}, 0)`. By induction each tail
//! `sum_{j>=i} a_j x^{j-i}` is at most `c_i` on `(0, dx]`, so `c_0 <= 0`
//! proves `P <= 0` there. When the fold fails the interval is halved and the
//! right half is handled by shifting the polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::constants::{fine, rat, rat_int, Constant, RationalInterval};
use crate::error::{Error, FailureWitness, Result};

pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Dense polynomial with exact rational coefficients, index = degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut v = vec![BigRational::zero(); degree + 1];
        v[degree] = c;
        Self::new(v)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degrees with nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        eval_exact(self, x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> RationalPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigRational) -> RationalPoly {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: u32) -> RationalPoly {
        let mut out = RationalPoly::constant(rat_int(1));
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Coefficients as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_strings()).expect("strings serialize")
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let coeffs = items.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let items: Vec<String> = serde_json::from_str(text)?;
        Self::from_strings(&items)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*x")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn add(self, o: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn sub(self, o: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn mul(self, o: &RationalPoly) -> RationalPoly {
        if self.is_zero() || o.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"0.285"`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = BigInt::from(10).pow(frac.len() as u32);
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Horner evaluation in exact arithmetic.
pub fn eval_exact(p: &RationalPoly, x: &BigRational) -> BigRational {
    p.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// `Q(x) = P(x + c)`, by repeated synthetic division.
pub fn taylor_shift(p: &RationalPoly, c: &BigRational) -> RationalPoly {
    let mut a = p.coeffs.clone();
    let n = a.len();
    if c.is_zero() || n < 2 {
        return p.clone();
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * c;
            a[j] += t;
        }
    }
    RationalPoly::new(a)
}

/// One pass of the fold; returns `c_0`.
pub fn reduced_constant(p: &RationalPoly, dx: &BigRational) -> BigRational {
    let mut it = p.coeffs.iter().rev();
    let Some(top) = it.next() else {
        return BigRational::zero();
    };
    let mut c = top.clone();
    for a in it {
        c = if c.is_positive() { a + dx * &c } else { a.clone() };
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedPiece {
    pub lo: BigRational,
    pub hi: BigRational,
    pub reduced_constant: BigRational,
    pub depth: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub dx: BigRational,
    /// Pieces `(lo, hi]` in increasing order, tiling `(0, dx]`.
    pub pieces: Vec<CertifiedPiece>,
    /// Deepest subdivision level used.
    pub depth: u32,
}

impl Certificate {
    /// Checks that the pieces tile `(0, dx]` and that every constant is
    /// nonpositive.
    pub fn is_well_formed(&self) -> bool {
        let mut at = BigRational::zero();
        for p in &self.pieces {
            if p.lo != at || p.hi <= p.lo || p.reduced_constant.is_positive() {
                return false;
            }
            at = p.hi.clone();
        }
        at == self.dx
    }

    /// Re-runs the fold on every piece from scratch.
    pub fn recheck(&self, p: &RationalPoly) -> bool {
        self.is_well_formed()
            && self.pieces.iter().all(|piece| {
                let shifted = taylor_shift(p, &piece.lo);
                !reduced_constant(&shifted, &(&piece.hi - &piece.lo)).is_positive()
            })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let s = |r: &BigRational| format!("{}/{}", r.numer(), r.denom());
        serde_json::json!({
            "dx": s(&self.dx),
            "depth": self.depth,
            "pieces": self.pieces.iter().map(|p| serde_json::json!({
                "lo": s(&p.lo),
                "hi": s(&p.hi),
                "reduced_constant": s(&p.reduced_constant),
                "depth": p.depth,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Proves `P(x) <= 0` on `(0, dx]`, or reports where the fold gave up.
pub fn certify_nonpositive(p: &RationalPoly, dx: &BigRational, max_depth: u32) -> Result<Certificate> {
    if dx.is_zero() {
        return Err(Error::ZeroWidthInterval);
    }
    if dx.is_negative() {
        return Err(Error::DomainError(format!("dx = {dx} must be positive")));
    }
    let mut pieces = Vec::new();
    let mut deepest = 0;
    // explicit stack, right half pushed first so pieces come out in order
    let mut stack = vec![(BigRational::zero(), dx.clone(), p.clone(), 0u32)];
    while let Some((lo, width, poly, depth)) = stack.pop() {
        let c0 = reduced_constant(&poly, &width);
        if !c0.is_positive() {
            deepest = deepest.max(depth);
            let hi = &lo + &width;
            pieces.push(CertifiedPiece {
                lo,
                hi,
                reduced_constant: c0,
                depth,
            });
            continue;
        }
        // lowest nonzero coefficient positive: P > 0 just right of lo
        let positive_at_left_end = poly
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive());
        if positive_at_left_end || depth >= max_depth {
            return Err(Error::DepthExhausted(Box::new(FailureWitness {
                hi: &lo + &width,
                lo,
                reduced_constant: c0,
                positive_at_left_end,
            })));
        }
        let half = &width / rat_int(2);
        let right = taylor_shift(&poly, &half);
        stack.push((&lo + &half, half.clone(), right, depth + 1));
        stack.push((lo, half, poly, depth + 1));
    }
    Ok(Certificate {
        dx: dx.clone(),
        pieces,
        depth: deepest,
    })
}

/// Polynomial whose coefficients are rational intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalPoly {
    pub coeffs: Vec<RationalInterval>,
}

impl IntervalPoly {
    pub fn from_points(p: &RationalPoly) -> Self {
        IntervalPoly {
            coeffs: p.coeffs.iter().map(|c| RationalInterval::point(c.clone())).collect(),
        }
    }

    pub fn from_terms(terms: &[(usize, RationalInterval)]) -> Self {
        let n = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![RationalInterval::from_int(0); n];
        for (d, c) in terms {
            coeffs[*d] = &coeffs[*d] + c;
        }
        IntervalPoly { coeffs }
    }

    pub fn add(&self, o: &IntervalPoly) -> IntervalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = RationalInterval::from_int(0);
        IntervalPoly {
            coeffs: (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        }
    }

    pub fn neg(&self) -> IntervalPoly {
        IntervalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &IntervalPoly) -> IntervalPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntervalPoly) -> IntervalPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return IntervalPoly { coeffs: vec![] };
        }
        let mut out = vec![RationalInterval::from_int(0); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_point() && a.lo.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        IntervalPoly { coeffs: out }
    }

    pub fn pow(&self, n: u32) -> IntervalPoly {
        let mut out = IntervalPoly {
            coeffs: vec![RationalInterval::from_int(1)],
        };
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> IntervalPoly {
        IntervalPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &RationalInterval::from_int(i as i64))
                .collect(),
        }
    }

    pub fn coeff(&self, i: usize) -> RationalInterval {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RationalInterval::from_int(0))
    }

    /// Coefficientwise upper ends, rounded up to the grid `2^-192`; dominates
    /// the true polynomial for `x > 0`.
    pub fn upper(&self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c.round_outward(192).hi).collect())
    }

    pub fn lower(&self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c.round_outward(192).lo).collect())
    }

    pub fn midpoint(&self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| c.mid()).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaName {
    /// `5x^3(1 + 4A^2) - 3B(1 + kappa x^2)^2`, the acute case-1b inequality
    /// after `x -> x^3`.
    P1Acute,
    /// `P1Acute(x + 49/100)`.
    P2Acute,
    /// Minus the derivative of the monotonicity polynomial of the acute
    /// case-2 sector bound.
    NegP1PrimeMono,
    /// `NegP1PrimeMono(x + 444/1000)`, the right half of `(0, 0.888)`.
    NegP1PrimeMonoShifted,
    /// The `M >= 3` inequality after `x -> x^3`.
    QMgeq3,
}

impl LemmaName {
    pub const ALL: [LemmaName; 5] = [
        LemmaName::P1Acute,
        LemmaName::P2Acute,
        LemmaName::NegP1PrimeMono,
        LemmaName::NegP1PrimeMonoShifted,
        LemmaName::QMgeq3,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            LemmaName::P1Acute => "P1_acute",
            LemmaName::P2Acute => "P2_acute",
            LemmaName::NegP1PrimeMono => "negP1prime_mono",
            LemmaName::NegP1PrimeMonoShifted => "negP1prime_mono_shifted",
            LemmaName::QMgeq3 => "Q_mgeq3",
        }
    }

    /// Right end `dx` of the interval `(0, dx]` to certify, where the
    /// polynomial is meant to be certified directly.
    pub fn target_dx(&self) -> Option<BigRational> {
        match self {
            LemmaName::P1Acute => None,
            LemmaName::P2Acute => Some(rat(285, 1000)),
            LemmaName::NegP1PrimeMono | LemmaName::NegP1PrimeMonoShifted => Some(rat(444, 1000)),
            LemmaName::QMgeq3 => Some(rat(686, 1000)),
        }
    }
}

impl fmt::Display for LemmaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for LemmaName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LemmaName::ALL
            .iter()
            .copied()
            .find(|n| n.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rounding {
    Upper,
    Interval,
}

fn iv(n: i64, d: i64) -> RationalInterval {
    RationalInterval::from_ratio(n, d)
}

fn cst(c: Constant) -> RationalInterval {
    fine(c)
}

/// `x^3 + x^9/3 + 2x^15/den`.
fn tan_cubed(den: i64) -> IntervalPoly {
    IntervalPoly::from_terms(&[(3, iv(1, 1)), (9, iv(1, 3)), (15, iv(2, den))])
}

fn p1_acute_intervals() -> IntervalPoly {
    let kappa = (&cst(Constant::K) * &cst(Constant::Cbrt2))
        .div(&cst(Constant::PiTwoThirds))
        .expect("pi^(2/3) > 0");
    let a = tan_cubed(5);
    let b = tan_cubed(15);
    let one_4a2 = IntervalPoly::from_terms(&[(0, iv(1, 1))]).add(&a.pow(2).mul(&IntervalPoly::from_terms(&[(0, iv(4, 1))])));
    let left = IntervalPoly::from_terms(&[(3, iv(5, 1))]).mul(&one_4a2);
    let factor = IntervalPoly::from_terms(&[(0, iv(1, 1)), (2, kappa)]).pow(2);
    let right = IntervalPoly::from_terms(&[(0, iv(3, 1))]).mul(&b).mul(&factor);
    left.sub(&right)
}

/// `(x^6/3 + c2 x^9 + 2x^12/15 + 17x^18/315)(pi + c1 pi^(1/3) 2^(-1/3) x^2)^2`.
fn mono_intervals() -> IntervalPoly {
    let pi = cst(Constant::Pi);
    let c2 = -&(&iv(124, 1) * &cst(Constant::Zeta5))
        .div(&cst(Constant::PiFifth))
        .expect("pi^5 > 0");
    let c1 = cst(Constant::C1);
    let lin = (&c1 * &cst(Constant::PiCbrt)).div(&cst(Constant::Cbrt2)).expect("2^(1/3) > 0");
    let series = IntervalPoly::from_terms(&[(6, iv(1, 3)), (9, c2), (12, iv(2, 15)), (18, iv(17, 315))]);
    let factor = IntervalPoly::from_terms(&[(0, pi), (2, lin)]).pow(2);
    series.mul(&factor)
}

fn q_mgeq3_intervals() -> IntervalPoly {
    let kappa1 = cst(Constant::C1)
        .div(&(&cst(Constant::Cbrt2) * &cst(Constant::PiTwoThirds)))
        .expect("positive");
    let mu = (&iv(372, 1) * &cst(Constant::Zeta5)).div(&cst(Constant::PiFifth)).expect("pi^5 > 0");
    let first = IntervalPoly::from_terms(&[(0, iv(1, 1)), (6, iv(1, 3)), (12, iv(2, 5))]).pow(2);
    let cos4 = IntervalPoly::from_terms(&[(0, iv(1, 1)), (6, iv(-1, 8))]).pow(4);
    let airy = IntervalPoly::from_terms(&[(0, iv(1, 1)), (2, kappa1)]).pow(2);
    let zeta = IntervalPoly::from_terms(&[(0, iv(1, 1)), (3, -&mu)]);
    first.sub(&cos4.mul(&airy).mul(&zeta))
}

/// Coefficient intervals of a lemma polynomial. For the shifted variants the
/// shift is applied to the upper-rounded polynomial (see
/// `build_lemma_polynomial`), so this returns the unshifted intervals
/// composed with an exact interval Taylor shift.
pub fn lemma_intervals(name: LemmaName) -> IntervalPoly {
    match name {
        LemmaName::P1Acute => p1_acute_intervals(),
        LemmaName::P2Acute => interval_shift(&p1_acute_intervals(), &rat(49, 100)),
        LemmaName::NegP1PrimeMono => mono_intervals().derivative().neg(),
        LemmaName::NegP1PrimeMonoShifted => interval_shift(&mono_intervals().derivative().neg(), &rat(444, 1000)),
        LemmaName::QMgeq3 => q_mgeq3_intervals(),
    }
}

/// The unshifted monotonicity polynomial itself (before differentiation).
pub fn monotone_polynomial_intervals() -> IntervalPoly {
    mono_intervals()
}

fn interval_shift(p: &IntervalPoly, c: &BigRational) -> IntervalPoly {
    // x -> x + c with c > 0; each shifted coefficient is a nonnegative
    // combination of the originals, so endpoints shift separately
    assert!(!c.is_negative());
    let lo = taylor_shift(&RationalPoly::new(p.coeffs.iter().map(|v| v.lo.clone()).collect()), c);
    let hi = taylor_shift(&RationalPoly::new(p.coeffs.iter().map(|v| v.hi.clone()).collect()), c);
    let n = p.coeffs.len();
    IntervalPoly {
        coeffs: (0..n)
            .map(|i| RationalInterval {
                lo: lo.coeff(i),
                hi: hi.coeff(i),
            })
            .collect(),
    }
}

/// Rational polynomial with coefficients rounded upward, so that a
/// nonpositivity certificate for it on `x > 0` carries over to the true
/// polynomial. Shifted variants shift the rounded polynomial: if `U >= P` on
/// `y > 0` then `U(x + c) >= P(x + c)` on `x > 0`.
pub fn build_lemma_polynomial(name: LemmaName) -> RationalPoly {
    match name {
        LemmaName::P2Acute => taylor_shift(&build_lemma_polynomial(LemmaName::P1Acute), &rat(49, 100)),
        LemmaName::NegP1PrimeMonoShifted => {
            taylor_shift(&build_lemma_polynomial(LemmaName::NegP1PrimeMono), &rat(444, 1000))
        }
        other => lemma_intervals(other).upper(),
    }
}

/// Either rounding of a named lemma polynomial.
pub fn build_lemma(name: &str, rounding: Rounding) -> Result<IntervalPoly> {
    let name: LemmaName = name.parse()?;
    Ok(match rounding {
        Rounding::Upper => IntervalPoly::from_points(&build_lemma_polynomial(name)),
        Rounding::Interval => lemma_intervals(name),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    #[test]
    fn shift_examples() {
        let p = RationalPoly::from_i64(&[0, 0, 1]);
        let q = taylor_shift(&p, &r(1, 2));
        assert_eq!(q, RationalPoly::new(vec![r(1, 4), r(1, 1), r(1, 1)]));
        assert_eq!(taylor_shift(&p, &r(0, 1)), p);
        assert_eq!(taylor_shift(&q, &r(-1, 2)), p);
    }

    #[test]
    fn eval_examples() {
        let p = RationalPoly::from_i64(&[-1, 0, 1]);
        assert!(eval_exact(&p, &r(1, 1)).is_zero());
        let dx = r(3, 7);
        let q = RationalPoly::new(vec![-dx.clone(), r(1, 1)]);
        assert_eq!(eval_exact(&q, &(&dx / r(2, 1))), -&dx / r(2, 1));
    }

    #[test]
    fn certify_examples() {
        let c = certify_nonpositive(&RationalPoly::from_i64(&[-1]), &r(5, 1), 0).unwrap();
        assert_eq!(c.pieces.len(), 1);
        assert_eq!(c.depth, 0);
        let dx = r(3, 5);
        let p = RationalPoly::new(vec![-dx.clone(), r(1, 1)]);
        let c = certify_nonpositive(&p, &dx, 0).unwrap();
        assert!(c.pieces[0].reduced_constant.is_zero());
        assert!(c.recheck(&p));
        let bad = RationalPoly::from_i64(&[1, -1]);
        for depth in [0, 5, 40] {
            match certify_nonpositive(&bad, &r(2, 1), depth) {
                Err(Error::DepthExhausted(w)) => assert!(w.positive_at_left_end),
                other => panic!("{other:?}"),
            }
        }
        assert!(matches!(certify_nonpositive(&p, &r(0, 1), 3), Err(Error::ZeroWidthInterval)));
    }

    #[test]
    fn subdivision_tiles_interval() {
        // -(x - 1/2)^2 - 1/100: needs splitting near the maximum
        let p = RationalPoly::new(vec![r(-26, 100), r(1, 1), r(-1, 1)]);
        let c = certify_nonpositive(&p, &r(1, 1), 20).unwrap();
        assert!(c.pieces.len() > 1);
        assert!(c.is_well_formed());
        assert!(c.recheck(&p));
        // touching zero at 1/2 from below cannot be certified near 1/2
        let tangent = RationalPoly::new(vec![r(-1, 4), r(1, 1), r(-1, 1)]);
        assert!(matches!(certify_nonpositive(&tangent, &r(1, 1), 12), Err(Error::DepthExhausted(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = RationalPoly::new(vec![r(-3, 7), r(0, 1), r(5, 2)]);
        let s = p.to_json();
        assert_eq!(s, r#"["-3/7","0/1","5/2"]"#);
        assert_eq!(RationalPoly::from_json(&s).unwrap(), p);
        let d = RationalPoly::from_json(r#"["0.285", "-2", "1/3"]"#).unwrap();
        assert_eq!(d.coeffs(), &[r(285, 1000), r(-2, 1), r(1, 3)]);
        assert!(RationalPoly::from_json(r#"["x"]"#).is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn p1_acute_coefficients() {
        let p = lemma_intervals(LemmaName::P1Acute);
        let exact = [(3, r(2, 1)), (9, r(19, 1)), (15, r(194, 15)), (21, r(164, 9)), (27, r(16, 3)), (33, r(16, 5))];
        for (d, v) in exact {
            assert!(p.coeff(d).is_point() && p.coeff(d).lo == v, "degree {d}");
        }
        let pi = std::f64::consts::PI;
        let x5 = -69.0 * 2f64.cbrt() / (5.0 * pi.powf(2.0 / 3.0));
        assert!((p.coeff(5).mid_f64() - x5).abs() < 1e-14);
        assert!((p.coeff(5).mid_f64() + 8.1057).abs() < 1e-4);
        let x7 = -1587.0 / (50.0 * 2f64.cbrt() * pi.powf(4.0 / 3.0));
        assert!((p.coeff(7).mid_f64() - x7).abs() < 1e-13);
        let x19 = -529.0 / (125.0 * 2f64.cbrt() * pi.powf(4.0 / 3.0));
        assert!((p.coeff(19).mid_f64() - x19).abs() < 1e-13);
        for d in [0, 1, 2, 4, 6, 8, 10] {
            assert!(p.coeff(d).is_point() && p.coeff(d).lo.is_zero());
        }
    }

    #[test]
    fn mono_polynomial_support() {
        let m = monotone_polynomial_intervals();
        let support: Vec<usize> = (0..m.coeffs.len())
            .filter(|&i| !(m.coeffs[i].is_point() && m.coeffs[i].lo.is_zero()))
            .collect();
        assert_eq!(support, vec![6, 8, 9, 10, 11, 12, 13, 14, 16, 18, 20, 22]);
        let pi = std::f64::consts::PI;
        let c1 = 2.338107;
        // x^8: 2^(2/3) c1 pi^(4/3) / 3, from expanding the square
        let x8 = 2f64.powf(2.0 / 3.0) * c1 * pi.powf(4.0 / 3.0) / 3.0;
        assert!((m.coeff(8).mid_f64() - x8).abs() < 1e-12);
        let neg = build_lemma_polynomial(LemmaName::NegP1PrimeMono);
        assert_eq!(neg.support(), vec![5, 7, 8, 9, 10, 11, 12, 13, 15, 17, 19, 21]);
    }

    #[test]
    fn q_at_zero() {
        let q = lemma_intervals(LemmaName::QMgeq3);
        assert!(q.coeff(0).is_point() && q.coeff(0).lo.is_zero());
        assert!(build_lemma_polynomial(LemmaName::QMgeq3).coeff(0).is_zero());
    }

    #[test]
    fn rounding_direction() {
        for name in [LemmaName::P1Acute, LemmaName::NegP1PrimeMono, LemmaName::QMgeq3] {
            let ivs = lemma_intervals(name);
            let up = build_lemma_polynomial(name);
            for (i, c) in ivs.coeffs.iter().enumerate() {
                assert!(up.coeff(i) >= c.mid() && c.mid() >= c.lo, "{name} degree {i}");
            }
        }
    }

    #[test]
    fn lemma_certificates() {
        for name in [LemmaName::P2Acute, LemmaName::NegP1PrimeMono, LemmaName::NegP1PrimeMonoShifted, LemmaName::QMgeq3] {
            let p = build_lemma_polynomial(name);
            let dx = name.target_dx().unwrap();
            let cert = certify_nonpositive(&p, &dx, DEFAULT_MAX_DEPTH).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(cert.is_well_formed());
            assert!(!eval_exact(&p, &dx).is_positive());
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(build_lemma("P3", Rounding::Upper), Err(Error::UnknownName(_))));
        assert!(build_lemma("Q_mgeq3", Rounding::Interval).is_ok());
    }
}
