//! Dedekind eta on the imaginary axis, the level-6 weight-4 eta product
//! f46 = [eta(z) eta(2z) eta(3z) eta(6z)]^2 and its L-value at 2.

use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;
use rug::{Float, Integer};

/// Points where the Fricke sign is measured.
pub const FRICKE_PROBES: [f64; 3] = [0.5, 0.9, 1.3];

fn check_y(y: &Float) -> Result<()> {
    if !y.is_finite() || *y <= 0 {
        return Err(Error::Domain(format!("need y > 0, got {y}")));
    }
    Ok(())
}

/// eta(iy) = exp(-pi y/12) prod (1 - q^n), q = exp(-2 pi y).
pub fn eta(y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_y(y)?;
    let p = ctx.prec();
    let q = Float::with_val(p, -(ctx.pi() * y * 2u32)).exp();
    let eps = ctx.eps() >> 8;
    let mut prod = Float::with_val(p, 1);
    let mut qn = q.clone();
    while qn > eps {
        prod *= Float::with_val(p, 1 - &qn);
        qn *= &q;
    }
    Ok(Float::with_val(p, -(ctx.pi() * y) / 12u32).exp() * prod)
}

/// f46(iy) as a product of eta values.
pub fn f46(y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_y(y)?;
    let mut v = eta(y, ctx)?;
    for k in [2u32, 3, 6] {
        v *= eta(&Float::with_val(ctx.prec(), y * k), ctx)?;
    }
    Ok(v.square())
}

/// Coefficients a_1..a_n of f46 = sum a_k q^k, exact.
pub fn f46_coefficients(n: usize) -> Vec<Integer> {
    // prod over m in {1,2,3,6} of prod_k (1 - q^(mk))^2, truncated at degree n - 1
    let mut c = vec![Integer::new(); n];
    if n == 0 {
        return c;
    }
    c[0] = Integer::from(1);
    for m in [1usize, 2, 3, 6] {
        for k in 1.. {
            let step = m * k;
            if step >= n {
                break;
            }
            for _ in 0..2 {
                for i in (step..n).rev() {
                    let t = Integer::from(&c[i - step]);
                    c[i] -= t;
                }
            }
        }
    }
    c
}

/// Number of q-terms needed at y >= y_min for `bits` bits.
pub fn terms_needed(y_min: f64, bits: u32) -> usize {
    // |a_k| < k^2 sigma_0(k) keeps the tail inside the margin
    let per = 2.0 * std::f64::consts::PI * y_min;
    ((bits as f64 * std::f64::consts::LN_2 + 40.0) / per).ceil() as usize + 30
}

/// f46(iy) from the q-expansion.
pub fn f46_series(y: &Float, coeffs: &[Integer], ctx: &PrecisionContext) -> Result<Float> {
    check_y(y)?;
    let p = ctx.prec();
    let q = Float::with_val(p, -(ctx.pi() * y * 2u32)).exp();
    let mut qk = q.clone();
    let mut s = Float::with_val(p, 0);
    for a in coeffs {
        s += Float::with_val(p, a * &qk);
        qk *= &q;
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrickeProbe {
    pub y: f64,
    pub ratio: Float,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrickeSign {
    pub epsilon: i32,
    pub probes: Vec<FrickeProbe>,
    /// worst |ratio - epsilon| in decimal digits
    pub agreed_digits: u32,
}

/// Measures epsilon in f46(i/(6y)) = epsilon 36 y^4 f46(iy) at the probe points.
pub fn fricke_sign(ctx: &PrecisionContext) -> Result<FrickeSign> {
    let p = ctx.prec();
    let mut probes = Vec::new();
    for &y in &FRICKE_PROBES {
        let yf = Float::with_val(p, y);
        let lhs = f46(&Float::with_val(p, 1 / Float::with_val(p, &yf * 6u32)), ctx)?;
        let rhs = f46(&yf, ctx)? * Float::with_val(p, yf.clone().square().square() * 36u32);
        probes.push(FrickeProbe { y, ratio: lhs / rhs });
    }
    let epsilon = if probes[0].ratio > 0 { 1 } else { -1 };
    let mut agreed = u32::MAX;
    for pr in &probes {
        let d = crate::mpcore::digits_agreement(&pr.ratio, &Float::with_val(p, epsilon));
        agreed = agreed.min(d);
    }
    if agreed < 3 {
        return Err(Error::FrickeInconsistent(
            probes.iter().map(|pr| format!("y={} ratio={}", pr.y, pr.ratio.to_f64())).collect::<Vec<_>>().join(", "),
        ));
    }
    Ok(FrickeSign { epsilon, probes, agreed_digits: agreed })
}

/// sum a_k int_{y0}^inf exp(-2 pi k y) y dy.
fn upper_piece(y0: &Float, coeffs: &[Integer], ctx: &PrecisionContext) -> Float {
    let p = ctx.prec();
    let two_pi = ctx.pi() * 2u32;
    let q = Float::with_val(p, -(Float::with_val(p, &two_pi * y0))).exp();
    let mut qk = q.clone();
    let mut s = Float::with_val(p, 0);
    for (i, a) in coeffs.iter().enumerate() {
        let c = Float::with_val(p, &two_pi * (i as u32 + 1));
        let moment = Float::with_val(p, y0 / &c) + Float::with_val(p, c.square_ref()).recip();
        s += moment * &qk * a;
        qk *= &q;
    }
    s
}

/// 32 pi^4 int_0^inf f46(iy) y dy, the integral split at `y0` and the lower part
/// folded onto [1/(6 y0), inf) with the measured Fricke sign.
pub fn lvalue_f46_split(y0: &Float, ctx: &PrecisionContext) -> Result<Float> {
    check_y(y0)?;
    let p = ctx.prec();
    let sign = fricke_sign(ctx)?;
    let y1 = Float::with_val(p, 1 / Float::with_val(p, y0 * 6u32));
    let lo = y0.clone().min(&y1).to_f64();
    let coeffs = f46_coefficients(terms_needed(lo, p));
    let mut s = upper_piece(y0, &coeffs, ctx);
    let folded = upper_piece(&y1, &coeffs, ctx);
    if sign.epsilon > 0 {
        s += folded;
    } else {
        s -= folded;
    }
    Ok(s * Float::with_val(p, ctx.pi().square()).square() * 32u32)
}

/// 8 pi^2 L(f46, 2), split at 1/sqrt(6).
pub fn lvalue_f46(ctx: &PrecisionContext) -> Result<Float> {
    let y0 = ctx.sqrt_of(6).recip();
    lvalue_f46_split(&y0, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        let c = f46_coefficients(6);
        let v: Vec<i64> = c.iter().map(|a| a.to_i64().unwrap()).collect();
        assert_eq!(v, vec![1, -2, -3, 4, 6, 6]);
    }
}
