//! Outward-rounded rational enclosures of the irrational constants used by
//! the bounds and lemma polynomials, plus a small interval arithmetic.
//!
//! `enclose` returns dyadic cells `[k/2^m, (k+1)/2^m]` with `2^-m <= eps`, so
//! a finer request always lands inside a coarser one.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `c1` as a float; exactly representable in the sense that the decimal
/// literal rounds to the nearest double and is only used in float bounds.
pub const C1_F64: f64 = 2.338_107;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(m: u32) -> BigInt {
    BigInt::one() << m
}

fn floor_scaled(x: &BigRational, m: u32) -> BigInt {
    (x * BigRational::from_integer(pow2(m))).floor().to_integer()
}

fn ceil_scaled(x: &BigRational, m: u32) -> BigInt {
    (x * BigRational::from_integer(pow2(m))).ceil().to_integer()
}

fn dyadic(k: BigInt, m: u32) -> BigRational {
    BigRational::new(k, pow2(m))
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::DomainError(format!("interval with lo {lo} > hi {hi}")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(rat_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::point(rat(n, d))
    }

    /// Exact image of a finite float.
    pub fn from_f64(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(Self::point)
            .ok_or_else(|| Error::DomainError(format!("non-finite float {x}")))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / rat_int(2)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Widen to the dyadic grid `2^-bits`; keeps denominators small in long
    /// products.
    pub fn round_outward(&self, bits: u32) -> RationalInterval {
        RationalInterval {
            lo: dyadic(floor_scaled(&self.lo, bits), bits),
            hi: dyadic(ceil_scaled(&self.hi, bits), bits),
        }
    }

    pub fn abs_max(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn recip(&self) -> Result<RationalInterval> {
        if self.contains_zero() {
            return Err(Error::DivisionByIntervalContainingZero);
        }
        Ok(RationalInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &RationalInterval) -> Result<RationalInterval> {
        Ok(self * &other.recip()?)
    }

    pub fn powi(&self, n: i32) -> Result<RationalInterval> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let n = n as u32;
        if n == 0 {
            return Ok(RationalInterval::from_int(1));
        }
        let plo = num_traits::pow(self.lo.clone(), n as usize);
        let phi = num_traits::pow(self.hi.clone(), n as usize);
        if n % 2 == 1 {
            return Ok(RationalInterval { lo: plo, hi: phi });
        }
        if self.contains_zero() {
            Ok(RationalInterval {
                lo: BigRational::zero(),
                hi: plo.max(phi),
            })
        } else if self.lo.is_positive() {
            Ok(RationalInterval { lo: plo, hi: phi })
        } else {
            Ok(RationalInterval { lo: phi, hi: plo })
        }
    }

    /// Enclosure of the real `n`-th root, with endpoints on the grid `2^-bits`.
    pub fn root(&self, n: u32, bits: u32) -> Result<RationalInterval> {
        if n == 0 {
            return Err(Error::DomainError("zeroth root".into()));
        }
        if self.lo.is_negative() {
            return Err(Error::DomainError(format!("root of interval with lower end {}", self.lo)));
        }
        let scale = n * bits;
        let lo_int = floor_scaled(&self.lo, scale);
        let hi_int = ceil_scaled(&self.hi, scale);
        let r_lo = lo_int.nth_root(n);
        let mut r_hi = hi_int.nth_root(n);
        if num_traits::pow(r_hi.clone(), n as usize) < hi_int {
            r_hi += 1;
        }
        Ok(RationalInterval {
            lo: dyadic(r_lo, bits),
            hi: dyadic(r_hi, bits),
        })
    }

    pub fn sqrt(&self, bits: u32) -> Result<RationalInterval> {
        self.root(2, bits)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl<'a> Add<&'a RationalInterval> for &'a RationalInterval {
    type Output = RationalInterval;
    fn add(self, o: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl<'a> Sub<&'a RationalInterval> for &'a RationalInterval {
    type Output = RationalInterval;
    fn sub(self, o: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl<'a> Mul<&'a RationalInterval> for &'a RationalInterval {
    type Output = RationalInterval;
    fn mul(self, o: &RationalInterval) -> RationalInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        RationalInterval { lo, hi }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalInterval> for RationalInterval {
            type Output = RationalInterval;
            fn $m(self, o: RationalInterval) -> RationalInterval {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(i32),
}

/// Binary interval operation; `Pow(n)` ignores `y`.
pub fn interval_arith(x: &RationalInterval, y: &RationalInterval, op: ArithOp) -> Result<RationalInterval> {
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Sub => Ok(x - y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => x.div(y),
        ArithOp::Pow(n) => x.powi(n),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    PiSquared,
    PiFifth,
    PiCbrt,
    PiTwoThirds,
    PiFourThirds,
    SqrtPi,
    Zeta5,
    Sqrt2,
    Sqrt3,
    Sqrt5,
    Sqrt15,
    Cbrt2,
    Cbrt4,
    /// `2338107/10^6`, a lower bound for the magnitude of the first Airy zero.
    C1,
    /// `23/10`.
    K,
}

impl Constant {
    pub const ALL: [Constant; 16] = [
        Constant::Pi,
        Constant::PiSquared,
        Constant::PiFifth,
        Constant::PiCbrt,
        Constant::PiTwoThirds,
        Constant::PiFourThirds,
        Constant::SqrtPi,
        Constant::Zeta5,
        Constant::Sqrt2,
        Constant::Sqrt3,
        Constant::Sqrt5,
        Constant::Sqrt15,
        Constant::Cbrt2,
        Constant::Cbrt4,
        Constant::C1,
        Constant::K,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::PiSquared => "pi^2",
            Constant::PiFifth => "pi^5",
            Constant::PiCbrt => "pi^(1/3)",
            Constant::PiTwoThirds => "pi^(2/3)",
            Constant::PiFourThirds => "pi^(4/3)",
            Constant::SqrtPi => "sqrt(pi)",
            Constant::Zeta5 => "zeta(5)",
            Constant::Sqrt2 => "sqrt(2)",
            Constant::Sqrt3 => "sqrt(3)",
            Constant::Sqrt5 => "sqrt(5)",
            Constant::Sqrt15 => "sqrt(15)",
            Constant::Cbrt2 => "2^(1/3)",
            Constant::Cbrt4 => "2^(2/3)",
            Constant::C1 => "c1",
            Constant::K => "k",
        }
    }

    fn exact(&self) -> Option<BigRational> {
        match self {
            Constant::C1 => Some(rat(2_338_107, 1_000_000)),
            Constant::K => Some(rat(23, 10)),
            _ => None,
        }
    }
}

impl FromStr for Constant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(' ', "");
        let alias = match key.as_str() {
            "π" => "pi",
            "π^2" | "π²" => "pi^2",
            "π^5" | "π⁵" => "pi^5",
            "pi^1/3" | "π^(1/3)" => "pi^(1/3)",
            "pi^2/3" | "π^(2/3)" => "pi^(2/3)",
            "pi^4/3" | "π^(4/3)" => "pi^(4/3)",
            "sqrtpi" | "√π" => "sqrt(pi)",
            "zeta5" | "ζ(5)" => "zeta(5)",
            "sqrt2" | "√2" => "sqrt(2)",
            "sqrt3" | "√3" => "sqrt(3)",
            "sqrt5" | "√5" => "sqrt(5)",
            "sqrt15" | "√15" => "sqrt(15)",
            "cbrt2" | "2^1/3" => "2^(1/3)",
            "cbrt4" | "2^2/3" => "2^(2/3)",
            "c₁" => "c1",
            other => other,
        };
        Constant::ALL
            .iter()
            .copied()
            .find(|c| c.id() == alias)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

/// Largest supported cell exponent; `eps` below `2^-MAX_BITS` is rejected.
pub const MAX_BITS: u32 = 160;

/// Dyadic enclosure of `c` with width at most `eps`.
pub fn enclose(c: Constant, eps: &BigRational) -> Result<RationalInterval> {
    if !eps.is_positive() {
        return Err(Error::InvalidPrecision(format!("eps = {eps} must be positive")));
    }
    if let Some(x) = c.exact() {
        return Ok(RationalInterval::point(x));
    }
    // smallest m with 2^-m <= eps
    let mut m = 0u32;
    while BigRational::new(BigInt::one(), pow2(m)) > *eps {
        m += 1;
        if m > MAX_BITS {
            return Err(Error::InvalidPrecision(format!("eps = {eps} is below 2^-{MAX_BITS}")));
        }
    }
    enclose_bits(c, m)
}

pub fn enclose_named(name: &str, eps: &BigRational) -> Result<RationalInterval> {
    enclose(name.parse()?, eps)
}

/// Dyadic cell of width `2^-m` containing `c`.
pub fn enclose_bits(c: Constant, m: u32) -> Result<RationalInterval> {
    if let Some(x) = c.exact() {
        return Ok(RationalInterval::point(x));
    }
    if m > MAX_BITS {
        return Err(Error::InvalidPrecision(format!("2^-{m} is below 2^-{MAX_BITS}")));
    }
    static CACHE: OnceLock<Mutex<HashMap<(Constant, u32), RationalInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(c, m)) {
        return Ok(v.clone());
    }
    let mut p = m + 16;
    while p <= m + 256 {
        let inner = raw_enclosure(c, p)?;
        let k_lo = floor_scaled(&inner.lo, m);
        let k_hi = floor_scaled(&inner.hi, m);
        if k_lo == k_hi {
            let cell = RationalInterval {
                lo: dyadic(k_lo.clone(), m),
                hi: dyadic(k_lo + 1, m),
            };
            cache.lock().unwrap().insert((c, m), cell.clone());
            return Ok(cell);
        }
        p += 32;
    }
    Err(Error::ConvergenceFailure(format!("enclosure of {} at 2^-{m}", c.id())))
}

/// Convenience: enclosure at a fixed 2^-128 cell, used when assembling
/// polynomial coefficients.
pub fn fine(c: Constant) -> RationalInterval {
    enclose_bits(c, 128).expect("2^-128 enclosure is within the supported range")
}

/// Some enclosure of width roughly `2^-p`; no nesting guarantees.
fn raw_enclosure(c: Constant, p: u32) -> Result<RationalInterval> {
    let w = p + 24;
    let pi = || pi_enclosure(w);
    let iv = match c {
        Constant::Pi => pi(),
        Constant::PiSquared => pi().powi(2)?,
        Constant::PiFifth => pi().powi(5)?,
        Constant::PiCbrt => pi().root(3, w)?,
        Constant::PiTwoThirds => pi().powi(2)?.root(3, w)?,
        Constant::PiFourThirds => {
            let p = pi();
            &p * &p.root(3, w)?
        }
        Constant::SqrtPi => pi().sqrt(w)?,
        Constant::Zeta5 => zeta5_enclosure(w),
        Constant::Sqrt2 => RationalInterval::from_int(2).sqrt(w)?,
        Constant::Sqrt3 => RationalInterval::from_int(3).sqrt(w)?,
        Constant::Sqrt5 => RationalInterval::from_int(5).sqrt(w)?,
        Constant::Sqrt15 => RationalInterval::from_int(15).sqrt(w)?,
        Constant::Cbrt2 => RationalInterval::from_int(2).root(3, w)?,
        Constant::Cbrt4 => RationalInterval::from_int(4).root(3, w)?,
        Constant::C1 | Constant::K => unreachable!("exact constants handled by caller"),
    };
    Ok(iv.round_outward(w))
}

/// Enclosure of `atan(1/x)` from consecutive partial sums of the alternating
/// Taylor series; width below `2^-bits`.
fn atan_inv(x: i64, bits: u32) -> RationalInterval {
    let x2 = BigInt::from(x * x);
    let target = BigRational::new(BigInt::one(), pow2(bits));
    let mut sum = BigRational::zero();
    let mut xpow = BigInt::from(x);
    let mut k: i64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), &xpow * BigInt::from(2 * k + 1));
        let next = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < target {
            // the true value lies between the last two partial sums
            let (lo, hi) = if sum < next { (sum, next) } else { (next, sum) };
            return RationalInterval { lo, hi }.round_outward(bits + 8);
        }
        sum = next;
        xpow *= &x2;
        k += 1;
    }
}

/// Machin: pi = 16 atan(1/5) - 4 atan(1/239).
fn pi_enclosure(bits: u32) -> RationalInterval {
    let a = atan_inv(5, bits + 6);
    let b = atan_inv(239, bits + 6);
    let sixteen = RationalInterval::from_int(16);
    let four = RationalInterval::from_int(4);
    &(&sixteen * &a) - &(&four * &b)
}

/// Bernoulli numbers `B_0..=B_n` from `sum_{k<=m} C(m+1,k) B_k = 0`.
fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// zeta(5) by Euler-Maclaurin summation of the tail from `N`.
///
/// For the completely monotone `x^-5` the remainder after each correction
/// term has the sign of, and is smaller than, the next term, so the true
/// value lies between consecutive truncations.
fn zeta5_enclosure(bits: u32) -> RationalInterval {
    let n_start = (bits / 7).max(16) as i64;
    let n = rat_int(n_start);
    let mut head = BigRational::zero();
    for k in 1..n_start {
        head += BigRational::new(BigInt::one(), BigInt::from(k).pow(5));
    }
    // integral and trapezoid end term
    let mut sum = head + (rat_int(4) * num_traits::pow(n.clone(), 4)).recip()
        + (rat_int(2) * num_traits::pow(n.clone(), 5)).recip();
    let target = BigRational::new(BigInt::one(), pow2(bits + 4));
    let max_j = 4 * n_start as usize;
    let b = bernoulli(2 * max_j + 2);
    let mut fact_2j = BigRational::one();
    for j in 1..=max_j {
        fact_2j *= rat_int(((2 * j - 1) * 2 * j) as i64);
        // -B_2j/(2j)! f^(2j-1)(N), with f^(2j-1)(N) = -(2j+3)!/4! N^-(2j+4)
        let mut rising = BigRational::one();
        for t in 5..=(2 * j + 3) {
            rising *= rat_int(t as i64);
        }
        let term = &b[2 * j] / &fact_2j * rising / num_traits::pow(n.clone(), 2 * j + 4);
        let next = &sum + &term;
        if term.abs() < target {
            let (lo, hi) = if sum < next { (sum, next) } else { (next, sum) };
            return RationalInterval { lo, hi }.round_outward(bits + 8);
        }
        sum = next;
    }
    unreachable!("Euler-Maclaurin terms for zeta(5) stopped decreasing")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(bits: u32) -> BigRational {
        BigRational::new(BigInt::one(), pow2(bits))
    }

    /// 30-digit reference as a rational with a +-1e-30 band.
    fn reference(digits: &str) -> RationalInterval {
        let (int, frac) = digits.split_once('.').unwrap();
        let num: BigInt = format!("{int}{frac}").parse().unwrap();
        let den = BigInt::from(10).pow(frac.len() as u32);
        let x = BigRational::new(num, den.clone());
        let e = BigRational::new(BigInt::one(), den);
        RationalInterval {
            lo: &x - &e,
            hi: &x + &e,
        }
    }

    /// Independent oracle for pi: the BBP series in fixed point.
    fn pi_bbp(bits: u32) -> RationalInterval {
        let scale = pow2(bits + 16);
        let mut acc = BigInt::zero();
        let mut k = 0u32;
        loop {
            let p16 = BigInt::from(16).pow(k);
            let kk = BigInt::from(8 * k);
            let term = BigRational::new(BigInt::from(4), &kk + 1)
                - BigRational::new(BigInt::from(2), &kk + 4)
                - BigRational::new(BigInt::one(), &kk + 5)
                - BigRational::new(BigInt::one(), &kk + 6);
            let t = (term * BigRational::from_integer(scale.clone()) / BigRational::from_integer(p16))
                .floor()
                .to_integer();
            if t.is_zero() {
                break;
            }
            acc += t;
            k += 1;
        }
        // each floor loses < 1; the dropped tail is < 1 unit as well
        let slack = BigInt::from(k + 2);
        RationalInterval {
            lo: dyadic(&acc - &slack, bits + 16),
            hi: dyadic(&acc + &slack, bits + 16),
        }
    }

    /// Independent oracle for roots: Newton iteration on rationals, bracketed
    /// by x and n/x^(k-1).
    fn root_newton(v: i64, k: u32) -> RationalInterval {
        let v = rat_int(v);
        let mut x = rat_int(2);
        for _ in 0..8 {
            let xk1 = num_traits::pow(x.clone(), (k - 1) as usize);
            x = (rat_int(k as i64 - 1) * &x + &v / &xk1) / rat_int(k as i64);
            x = RationalInterval::point(x).round_outward(200).hi;
        }
        // Newton from above stays above the root; v / x^(k-1) is below it
        let other = &v / num_traits::pow(x.clone(), (k - 1) as usize);
        RationalInterval { lo: other, hi: x }
    }

    fn overlap(a: &RationalInterval, b: &RationalInterval) -> bool {
        a.lo <= b.hi && b.lo <= a.hi
    }

    #[test]
    fn pi_matches_two_oracles() {
        let e = enclose(Constant::Pi, &eps(100)).unwrap();
        assert!(e.width() <= eps(100));
        let r = reference("3.141592653589793238462643383279");
        assert!(overlap(&e, &r));
        assert!(overlap(&e, &pi_bbp(110)));
        let coarse = enclose(Constant::Pi, &rat(1, 1_000_000_000_000_000)).unwrap();
        assert!((coarse.mid_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn roots_match_newton_oracle() {
        for (c, v, k, digits) in [
            (Constant::Sqrt2, 2, 2, "1.414213562373095048801688724209"),
            (Constant::Sqrt3, 3, 2, "1.732050807568877293527446341505"),
            (Constant::Cbrt2, 2, 3, "1.259921049894873164767210607278"),
        ] {
            let e = enclose(c, &eps(100)).unwrap();
            assert!(overlap(&e, &reference(digits)), "{}", c.id());
            assert!(overlap(&e, &root_newton(v, k)), "{}", c.id());
            let coarse = enclose(c, &rat(1, 1_000_000_000_000_000)).unwrap();
            let expect = (v as f64).powf(1.0 / k as f64);
            assert!((coarse.mid_f64() - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn zeta5_against_partial_sum_with_integral_tail() {
        // oracle: plain double-precision-free rational sum to 200 plus the
        // integral tail bounds int_{200}^inf and int_{199}^inf
        let mut s = BigRational::zero();
        for n in 1..200i64 {
            s += BigRational::new(BigInt::one(), BigInt::from(n).pow(5));
        }
        let lo = &s + rat(1, 4 * 200i64.pow(4));
        let hi = &s + rat(1, 4 * 199i64.pow(4));
        let oracle = RationalInterval { lo, hi };
        let e = enclose(Constant::Zeta5, &rat(1, 1_000_000_000_000)).unwrap();
        assert!(e.width() <= rat(1, 1_000_000_000_000));
        assert!(overlap(&e, &oracle));
        assert!(e.contains(&reference("1.036927755143369926331365486457").mid()));
        let tight = enclose(Constant::Zeta5, &eps(150)).unwrap();
        assert!(overlap(&tight, &reference("1.036927755143369926331365486457")));
        assert!(tight.subset_of(&e));
    }

    #[test]
    fn derived_constants_are_consistent() {
        let pi = std::f64::consts::PI;
        let checks = [
            (Constant::PiSquared, pi * pi),
            (Constant::PiFifth, pi.powi(5)),
            (Constant::PiCbrt, pi.cbrt()),
            (Constant::PiTwoThirds, pi.powf(2.0 / 3.0)),
            (Constant::PiFourThirds, pi.powf(4.0 / 3.0)),
            (Constant::SqrtPi, pi.sqrt()),
            (Constant::Sqrt5, 5f64.sqrt()),
            (Constant::Sqrt15, 15f64.sqrt()),
            (Constant::Cbrt4, 4f64.cbrt()),
        ];
        for (c, v) in checks {
            let e = enclose(c, &eps(60)).unwrap();
            assert!((e.mid_f64() - v).abs() <= 4e-16 * v.max(1.0), "{}", c.id());
        }
    }

    #[test]
    fn exact_constants() {
        let k = enclose(Constant::K, &rat(1, 3)).unwrap();
        assert!(k.is_point() && k.lo == rat(23, 10));
        let c1 = enclose_named("c1", &rat(1, 10)).unwrap();
        assert_eq!(c1.lo, rat(2_338_107, 1_000_000));
    }

    #[test]
    fn errors() {
        assert!(matches!(enclose_named("airy", &rat(1, 10)), Err(Error::UnknownConstant(_))));
        assert!(matches!(enclose(Constant::Pi, &rat(0, 1)), Err(Error::InvalidPrecision(_))));
        let z = RationalInterval::new(rat(-1, 1), rat(1, 1)).unwrap();
        assert!(matches!(
            RationalInterval::from_int(1).div(&z),
            Err(Error::DivisionByIntervalContainingZero)
        ));
        assert!(RationalInterval::new(rat(2, 1), rat(1, 1)).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let x = RationalInterval::new(rat_int(1), rat_int(2)).unwrap();
        let y = RationalInterval::new(rat_int(3), rat_int(4)).unwrap();
        let p = interval_arith(&x, &y, ArithOp::Mul).unwrap();
        assert_eq!((p.lo, p.hi), (rat_int(3), rat_int(8)));
        let m = RationalInterval::new(rat_int(-1), rat_int(1)).unwrap();
        let sq = interval_arith(&m, &m, ArithOp::Pow(2)).unwrap();
        assert_eq!((sq.lo, sq.hi), (rat_int(0), rat_int(1)));
        let a = RationalInterval::new(rat_int(2), rat_int(3)).unwrap();
        let q = interval_arith(&a, &x, ArithOp::Div).unwrap();
        assert_eq!((q.lo, q.hi), (rat_int(1), rat_int(3)));
        let s = interval_arith(&a, &x, ArithOp::Sub).unwrap();
        assert_eq!((s.lo, s.hi), (rat_int(0), rat_int(2)));
        let neg = RationalInterval::new(rat_int(-3), rat_int(-2)).unwrap();
        let n2 = neg.powi(2).unwrap();
        assert_eq!((n2.lo, n2.hi), (rat_int(4), rat_int(9)));
        let inv = a.powi(-1).unwrap();
        assert_eq!((inv.lo, inv.hi), (rat(1, 3), rat(1, 2)));
    }

    #[test]
    fn refinement_is_nested() {
        for c in [Constant::Pi, Constant::Zeta5, Constant::Cbrt2, Constant::PiTwoThirds] {
            let mut prev = enclose(c, &rat(1, 10)).unwrap();
            for k in 1..40 {
                let e = rat(1, 10) / BigRational::from_integer(pow2(k));
                let cur = enclose(c, &e).unwrap();
                assert!(cur.subset_of(&prev), "{} at step {k}", c.id());
                prev = cur;
            }
        }
    }

    #[test]
    fn parse_aliases() {
        for c in Constant::ALL {
            assert_eq!(c.id().parse::<Constant>().unwrap(), c);
        }
        assert_eq!("ζ(5)".parse::<Constant>().unwrap(), Constant::Zeta5);
        assert_eq!("π".parse::<Constant>().unwrap(), Constant::Pi);
    }
}
