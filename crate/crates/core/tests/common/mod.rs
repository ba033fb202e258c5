#![allow(dead_code)]

use rug::Float;
use sunrise_core::mpcore::{digits_agreement, PrecisionContext};

pub fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::for_digits(d)
}

#[track_caller]
pub fn assert_digits(a: &Float, b: &Float, d: u32) {
    let got = digits_agreement(a, b);
    assert!(got >= d, "agree to {got} < {d} digits:\n  {a}\n  {b}");
}

/// Parses a literal decimal at `prec` bits.
pub fn lit(s: &str, prec: u32) -> Float {
    Float::with_val(prec, Float::parse(s).unwrap())
}

/// I0 by its ascending series, summed at doubled precision.
pub fn i0_series(t: &Float) -> Float {
    let p = t.prec() * 2;
    let q = Float::with_val(p, t.square_ref()) / 4u32;
    let mut term = Float::with_val(p, 1);
    let mut s = Float::with_val(p, 1);
    for k in 1u32.. {
        term *= &q;
        term /= k * k;
        s += &term;
        if term < Float::with_val(p, &s >> (p + 8)) {
            break;
        }
    }
    Float::with_val(t.prec(), s)
}

/// K0(t) = int_0^inf exp(-t cosh u) du by the trapezoid rule, which converges
/// geometrically for this entire, doubly decaying integrand.
pub fn k0_integral(t: &Float) -> Float {
    let p = t.prec() + 32;
    let h = Float::with_val(p, 1) / 64u32;
    let mut s = Float::with_val(p, (-Float::with_val(p, t)).exp()) / 2u32;
    for k in 1u32.. {
        let u = Float::with_val(p, &h * k);
        let v = Float::with_val(p, -(u.cosh() * t)).exp();
        s += &v;
        if v.is_zero() || v < Float::with_val(p, &s >> (p + 8)) {
            break;
        }
    }
    Float::with_val(t.prec(), s * h)
}
