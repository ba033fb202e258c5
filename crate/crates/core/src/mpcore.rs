//! Precision policy, digit agreement and a small complex type over MPFR floats.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::{Float, Integer, Rational};
use std::ops::{Add, Mul, Neg, Sub};

pub type Real = Float;

/// Agreement reported for bit-identical values.
pub const AGREEMENT_CAP: u32 = 10_000;
/// Extra decimal digits two successive precisions must share beyond the target.
pub const GUARD_DIGITS: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    pub work_bits: u32,
    pub guard_bits: u32,
    pub max_bits: u32,
}

impl PrecisionContext {
    pub fn new(work_bits: u32, guard_bits: u32, max_bits: u32) -> Result<Self> {
        if work_bits < 64 || guard_bits < 16 || max_bits < work_bits {
            return Err(Error::Domain(format!(
                "invalid precision context ({work_bits}, {guard_bits}, {max_bits})"
            )));
        }
        Ok(PrecisionContext { work_bits, guard_bits, max_bits })
    }

    /// Context whose work precision carries `digits` decimal digits plus slack.
    pub fn for_digits(digits: u32) -> Self {
        let work = initial_bits(digits);
        PrecisionContext { work_bits: work, guard_bits: 32, max_bits: work * 8 }
    }

    /// Precision used for intermediate floats.
    pub fn prec(&self) -> u32 {
        self.work_bits + self.guard_bits
    }

    pub fn with_work_bits(&self, bits: u32) -> Self {
        PrecisionContext { work_bits: bits, guard_bits: self.guard_bits, max_bits: self.max_bits.max(bits) }
    }

    /// Same policy with `extra` more working bits.
    pub fn boosted(&self, extra: u32) -> Self {
        self.with_work_bits(self.work_bits + extra)
    }

    /// Decimal target this context was sized for (inverse of `for_digits`).
    pub fn target_digits(&self) -> u32 {
        let d = (self.work_bits.saturating_sub(64) as f64 / 3.33).floor() as u32;
        d.saturating_sub(GUARD_DIGITS).max(1)
    }

    pub fn digits(&self) -> u32 {
        (self.work_bits as f64 * std::f64::consts::LOG10_2).floor() as u32
    }

    /// 2^(-work_bits): the relative tolerance iterative routines aim for.
    pub fn eps(&self) -> Float {
        Float::with_val(self.prec(), 1) >> self.work_bits
    }

    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec(), v)
    }

    pub fn rat(&self, q: &Rational) -> Float {
        Float::with_val(self.prec(), q)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), Constant::Pi)
    }

    pub fn euler(&self) -> Float {
        Float::with_val(self.prec(), Constant::Euler)
    }

    pub fn ln2(&self) -> Float {
        Float::with_val(self.prec(), Constant::Log2)
    }

    pub fn sqrt_of(&self, v: u32) -> Float {
        Float::with_val(self.prec(), v).sqrt()
    }
}

pub fn initial_bits(target_digits: u32) -> u32 {
    (3.33 * (target_digits + GUARD_DIGITS) as f64).ceil() as u32 + 64
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::from((p, q))
}

/// Largest d with |a-b| <= 10^-d * max(|a|,|b|); measured absolutely when one side is exactly zero.
pub fn digits_agreement(a: &Float, b: &Float) -> u32 {
    if a == b {
        return AGREEMENT_CAP;
    }
    if !a.is_finite() || !b.is_finite() {
        return 0;
    }
    let prec = a.prec().max(b.prec()) + 16;
    let diff = Float::with_val(prec, a - b).abs();
    let scale = if a.is_zero() || b.is_zero() {
        Float::with_val(prec, 1)
    } else {
        Float::with_val(prec, a.abs_ref()).max(&Float::with_val(prec, b.abs_ref()))
    };
    let rel = diff / scale;
    let d = -rel.log10().to_f64();
    if d <= 0.0 {
        0
    } else {
        (d.floor() as u32).min(AGREEMENT_CAP)
    }
}

/// Agreement of a quantity that should vanish, relative to `scale`.
pub fn vanishing_digits(value: &Float, scale: &Float) -> u32 {
    if value.is_zero() {
        return AGREEMENT_CAP;
    }
    let prec = value.prec().max(scale.prec());
    let rel = Float::with_val(prec, value.abs_ref()) / Float::with_val(prec, scale.abs_ref());
    let d = -rel.log10().to_f64();
    if d.is_nan() || d <= 0.0 {
        0
    } else {
        (d.floor() as u32).min(AGREEMENT_CAP)
    }
}

#[derive(Clone, Debug)]
pub struct Adaptive {
    pub value: Float,
    pub agreed_digits: u32,
    pub bits: u32,
}

/// Re-evaluates at doubling precision until two successive results agree to
/// `target_digits + GUARD_DIGITS`.
pub fn adaptive_eval<F>(evaluator: F, target_digits: u32, max_bits: u32) -> Result<Adaptive>
where
    F: Fn(&PrecisionContext) -> Result<Float>,
{
    let mut bits = initial_bits(target_digits);
    let max_bits = max_bits.max(bits);
    let ctx = PrecisionContext { work_bits: bits, guard_bits: 32, max_bits };
    let mut prev = evaluator(&ctx)?;
    let mut best = 0;
    while bits * 2 <= max_bits {
        bits *= 2;
        let ctx = ctx.with_work_bits(bits);
        let next = evaluator(&ctx)?;
        let agreed = digits_agreement(&prev, &next);
        best = best.max(agreed);
        if agreed >= target_digits + GUARD_DIGITS {
            return Ok(Adaptive { value: next, agreed_digits: agreed, bits });
        }
        prev = next;
    }
    Err(Error::PrecisionExhausted { bits, agreed: best })
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(2)))
}

/// Significant decimal digits carried by a float of this precision.
pub fn faithful_digits(x: &Float) -> usize {
    (x.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize
}

pub fn parse_decimal(s: &str, prec: u32) -> Result<Float> {
    Float::parse(s)
        .map(|v| Float::with_val(prec, v))
        .map_err(|e| Error::Domain(format!("bad decimal {s:?}: {e}")))
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Complex number as a pair of floats sharing one precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Complex { re, im }
    }

    pub fn with_val<T, U>(prec: u32, re: T, im: U) -> Self
    where
        Float: rug::Assign<T> + rug::Assign<U>,
    {
        Complex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Complex {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn add_real(&self, k: &Float) -> Complex {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re + k), im: self.im.clone() }
    }

    pub fn recip(&self) -> Complex {
        let n = self.norm_sqr();
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re / &n), im: -Float::with_val(p, &self.im / &n) }
    }

    pub fn div(&self, o: &Complex) -> Complex {
        let n = o.norm_sqr();
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Complex { re: re / &n, im: im / &n }
    }

    pub fn square(&self) -> Complex {
        self * self
    }

    pub fn exp(&self) -> Complex {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        Complex { re: Float::with_val(p, &m * &c), im: m * s }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Complex {
        let p = self.prec();
        let re = Float::with_val(p, self.norm_sqr().ln()) / 2u32;
        Complex { re, im: self.arg() }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Complex {
        let p = self.prec();
        if self.im.is_zero() {
            if self.re >= 0 {
                return Complex::from_real(Float::with_val(p, self.re.sqrt_ref()));
            }
            return Complex::new(Float::new(p), Float::with_val(p, (-self.re.clone()).sqrt()));
        }
        let r = self.abs();
        let t = Float::with_val(p, (Float::with_val(p, &r + &self.re.clone().abs()) / 2u32).sqrt());
        let half = Float::with_val(p, &self.im / &t) / 2u32;
        if self.re >= 0 {
            Complex { re: t, im: half }
        } else if self.im >= 0 {
            Complex { re: half.abs(), im: t }
        } else {
            Complex { re: half.abs(), im: -t }
        }
    }

    pub fn sin(&self) -> Complex {
        let p = self.prec();
        let (s, c) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sh, ch) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Complex { re: s * ch, im: c * sh }
    }

    pub fn cos(&self) -> Complex {
        let p = self.prec();
        let (s, c) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sh, ch) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        Complex { re: c * ch, im: -(s * sh) }
    }

    /// exp(w * ln self) on the principal branch.
    pub fn pow(&self, w: &Complex) -> Complex {
        (w * &self.ln()).exp()
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Complex { re, im }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}
