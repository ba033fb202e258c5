//! Gamma, digamma, I0/K0 and the complete elliptic integral K.

use crate::error::{Error, Result};
use crate::mpcore::{Complex, PrecisionContext};
use rug::float::Constant;
use rug::{Float, Integer, Rational};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Stirling coefficients B_{2k}/(2k(2k-1)) for k = 1.. at a given precision.
fn stirling_coeffs(prec: u32, count: usize) -> Arc<Vec<Float>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Float>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&prec) {
        if v.len() >= count {
            return v.clone();
        }
    }
    let p = prec + 32;
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let mut out = Vec::with_capacity(count);
    let mut fact = Float::with_val(p, 2); // (2k)!
    let mut pw = Float::with_val(p, two_pi.square_ref()); // (2pi)^(2k)
    for k in 1..=count as u32 {
        let zeta = Float::with_val(p, Float::zeta_u(2 * k));
        // |B_2k| = 2 (2k)! zeta(2k) / (2pi)^(2k)
        let mut b = Float::with_val(p, &fact * &zeta) * 2u32 / &pw;
        if k % 2 == 0 {
            b = -b;
        }
        let c = b / (2 * k * (2 * k - 1));
        out.push(Float::with_val(prec, c));
        fact *= (2 * k + 1) * (2 * k + 2);
        pw *= Float::with_val(p, two_pi.square_ref());
    }
    let v = Arc::new(out);
    cache.lock().unwrap().insert(prec, v.clone());
    v
}

/// Radius beyond which the Stirling series reaches full precision.
fn stirling_radius(prec: u32) -> f64 {
    0.16 * prec as f64 + 10.0
}

fn max_stirling_terms(prec: u32) -> usize {
    (std::f64::consts::PI * stirling_radius(prec)) as usize + 8
}

/// x - 2*round(x/2), exact; sin(pi x) and cos(pi x) only depend on it.
fn reduce_mod2(x: &Float) -> Float {
    let half = Float::with_val(x.prec(), x / 2u32);
    let k = half.round();
    Float::with_val(x.prec() + 8, x - Float::with_val(x.prec() + 8, k * 2u32))
}

pub fn sin_pi(x: &Float) -> Float {
    let p = x.prec();
    let r = reduce_mod2(x);
    Float::with_val(p, r * Float::with_val(p + 8, Constant::Pi)).sin()
}

pub fn cos_pi(x: &Float) -> Float {
    let p = x.prec();
    let r = reduce_mod2(x);
    Float::with_val(p, r * Float::with_val(p + 8, Constant::Pi)).cos()
}

fn is_nonpositive_integer(x: &Float) -> bool {
    x.is_integer() && *x <= 0
}

/// ln Gamma(x) for x >= radius via the Stirling series.
fn lngamma_stirling_real(x: &Float, prec: u32) -> Float {
    let coeffs = stirling_coeffs(prec, max_stirling_terms(prec));
    let eps = Float::with_val(prec, 1) >> prec;
    let half_ln_2pi = Float::with_val(prec, Float::with_val(prec, Constant::Pi) * 2u32).ln() / 2u32;
    let lnx = Float::with_val(prec, x.ln_ref());
    let mut s = Float::with_val(prec, x - 0.5f64) * &lnx - x + half_ln_2pi;
    let inv = Float::with_val(prec, x.recip_ref());
    let inv2 = Float::with_val(prec, inv.square_ref());
    let mut pw = inv;
    for c in coeffs.iter() {
        let t = Float::with_val(prec, c * &pw);
        s += &t;
        if t.abs() < eps {
            break;
        }
        pw *= &inv2;
    }
    s
}

/// Gamma at a real argument.
pub fn gamma_real(x: &Float) -> Result<Float> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("Gamma({})", x.to_f64())));
    }
    let prec = x.prec();
    let p = prec + 32;
    if *x < 0.5 {
        // reflection
        let one_minus = Float::with_val(p, 1 - Float::with_val(p, x));
        let g = gamma_real(&one_minus)?;
        let s = sin_pi(&Float::with_val(p, x));
        let pi = Float::with_val(p, Constant::Pi);
        return Ok(Float::with_val(prec, pi / (s * g)));
    }
    if x.is_integer() && *x <= 3000 {
        let n = x.to_u32_saturating().unwrap();
        return Ok(Float::with_val(prec, Integer::from(Integer::factorial(n - 1))));
    }
    let r = stirling_radius(p);
    let mut z = Float::with_val(p, x);
    let mut prod = Float::with_val(p, 1);
    while z < r {
        prod *= &z;
        z += 1u32;
    }
    let lg = lngamma_stirling_real(&z, p);
    Ok(Float::with_val(prec, lg.exp() / prod))
}

/// Gamma at an exact rational.
pub fn gamma_rat(q: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if *q.denom() == 1 && *q <= 0 {
        return Err(Error::Pole(format!("Gamma({q})")));
    }
    gamma_real(&ctx.rat(q))
}

/// 1/Gamma at an exact rational, zero at the poles.
pub fn rgamma_rat(q: &Rational, ctx: &PrecisionContext) -> Float {
    if *q.denom() == 1 && *q <= 0 {
        return ctx.real(0);
    }
    let g = gamma_real(&ctx.rat(q)).expect("pole excluded");
    g.recip()
}

fn lngamma_stirling_complex(z: &Complex, prec: u32) -> Complex {
    let coeffs = stirling_coeffs(prec, max_stirling_terms(prec));
    let eps = Float::with_val(prec, 1) >> prec;
    let half_ln_2pi = Float::with_val(prec, Float::with_val(prec, Constant::Pi) * 2u32).ln() / 2u32;
    let lnz = z.ln();
    let zm = z.add_real(&Float::with_val(prec, -0.5f64));
    let mut s = &(&zm * &lnz) - z;
    s = s.add_real(&half_ln_2pi);
    let inv = z.recip();
    let inv2 = inv.square();
    let mut pw = inv;
    for c in coeffs.iter() {
        let t = pw.scale(c);
        let small = t.abs() < eps;
        s = &s + &t;
        if small {
            break;
        }
        pw = &pw * &inv2;
    }
    s
}

/// Gamma on the complex plane.
pub fn gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.is_real() {
        return Ok(Complex::from_real(gamma_real(&Float::with_val(ctx.prec(), &z.re))?));
    }
    let p = ctx.prec() + 32;
    let z = Complex::new(Float::with_val(p, &z.re), Float::with_val(p, &z.im));
    if z.re < 0.5 {
        let one_minus = Complex::new(Float::with_val(p, 1 - &z.re), Float::with_val(p, -&z.im));
        let g = gamma(&one_minus, &ctx.boosted(32))?;
        let s = sin_pi_complex(&z);
        let pi = Complex::from_real(Float::with_val(p, Constant::Pi));
        let r = pi.div(&(&s * &g));
        return Ok(round_complex(&r, ctx.prec()));
    }
    let r = stirling_radius(p);
    let im2 = z.im.to_f64().powi(2);
    let need = if im2 >= r * r { 0.0 } else { (r * r - im2).sqrt() - z.re.to_f64() };
    let shift = need.max(0.0).ceil() as u32;
    let mut w = z.clone();
    let mut prod = Complex::from_real(Float::with_val(p, 1));
    for _ in 0..shift {
        prod = &prod * &w;
        w = w.add_real(&Float::with_val(p, 1));
    }
    let lg = lngamma_stirling_complex(&w, p);
    let r = lg.exp().div(&prod);
    Ok(round_complex(&r, ctx.prec()))
}

fn round_complex(z: &Complex, prec: u32) -> Complex {
    Complex::new(Float::with_val(prec, &z.re), Float::with_val(prec, &z.im))
}

/// sin(pi z) with the real part reduced exactly.
pub fn sin_pi_complex(z: &Complex) -> Complex {
    let p = z.prec();
    let pi = Float::with_val(p + 8, Constant::Pi);
    let r = reduce_mod2(&z.re);
    let w = Complex::new(Float::with_val(p, &r * &pi), Float::with_val(p, &z.im * &pi));
    w.sin()
}

pub fn cos_pi_complex(z: &Complex) -> Complex {
    let p = z.prec();
    let pi = Float::with_val(p + 8, Constant::Pi);
    let r = reduce_mod2(&z.re);
    let w = Complex::new(Float::with_val(p, &r * &pi), Float::with_val(p, &z.im * &pi));
    w.cos()
}

/// Digamma at a real argument.
pub fn digamma_real(x: &Float) -> Result<Float> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("digamma({})", x.to_f64())));
    }
    let prec = x.prec();
    let p = prec + 32;
    if *x < 0.5 {
        let one_minus = Float::with_val(p, 1 - Float::with_val(p, x));
        let d = digamma_real(&one_minus)?;
        let xp = Float::with_val(p, x);
        let cot = cos_pi(&xp) / sin_pi(&xp);
        return Ok(Float::with_val(prec, d - cot * Float::with_val(p, Constant::Pi)));
    }
    let r = stirling_radius(p);
    let mut z = Float::with_val(p, x);
    let mut acc = Float::with_val(p, 0);
    while z < r {
        acc -= Float::with_val(p, z.recip_ref());
        z += 1u32;
    }
    // psi(z) ~ ln z - 1/(2z) - sum B_2k/(2k z^2k); B_2k/(2k) = c_k (2k-1)
    let coeffs = stirling_coeffs(p, max_stirling_terms(p));
    let eps = Float::with_val(p, 1) >> p;
    let mut s = Float::with_val(p, z.ln_ref()) - Float::with_val(p, z.recip_ref()) / 2u32;
    let inv2 = Float::with_val(p, z.square_ref()).recip();
    let mut pw = inv2.clone();
    for (k, c) in coeffs.iter().enumerate() {
        let t = Float::with_val(p, c * &pw) * (2 * k as u32 + 1);
        s -= &t;
        if t.abs() < eps {
            break;
        }
        pw *= &inv2;
    }
    Ok(Float::with_val(prec, s + acc))
}

pub fn digamma_rat(q: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if *q.denom() == 1 && *q <= 0 {
        return Err(Error::Pole(format!("digamma({q})")));
    }
    digamma_real(&ctx.rat(q))
}

/// Hurwitz zeta(s, a) and its s-derivative for real s > 1, a > 0 (Euler-Maclaurin).
pub fn hurwitz_zeta_pair(s: &Float, a: &Float) -> Result<(Float, Float)> {
    if *s <= 1 || *a <= 0 {
        return Err(Error::Domain(format!("hurwitz zeta at s={}, a={}", s.to_f64(), a.to_f64())));
    }
    let prec = s.prec().max(a.prec());
    let p = prec + 32;
    let r = stirling_radius(p) + s.to_f64().abs();
    let mut z = Float::with_val(p, 0);
    let mut dz = Float::with_val(p, 0);
    let mut x = Float::with_val(p, a);
    let sp = Float::with_val(p, s);
    while x < r {
        let lx = Float::with_val(p, x.ln_ref());
        let t = Float::with_val(p, -(Float::with_val(p, &sp * &lx))).exp();
        dz -= Float::with_val(p, &t * &lx);
        z += t;
        x += 1u32;
    }
    let lx = Float::with_val(p, x.ln_ref());
    let sm1 = Float::with_val(p, &sp - 1u32);
    let x1s = Float::with_val(p, -(Float::with_val(p, &sm1 * &lx))).exp(); // x^(1-s)
    let xs = Float::with_val(p, &x1s / &x); // x^(-s)
    z += Float::with_val(p, &x1s / &sm1) + Float::with_val(p, &xs / 2u32);
    dz -= Float::with_val(p, &lx * &x1s) / &sm1 + Float::with_val(p, &x1s / Float::with_val(p, sm1.square_ref()));
    dz -= Float::with_val(p, &lx * &xs) / 2u32;
    let coeffs = stirling_coeffs(p, max_stirling_terms(p));
    let eps = Float::with_val(p, 1) >> p;
    let inv2 = Float::with_val(p, x.square_ref()).recip();
    // (s)_(2j-1) and sum of 1/(s+i) over its factors
    let mut poch = sp.clone();
    let mut dsum = Float::with_val(p, sp.recip_ref());
    let mut pw = Float::with_val(p, &x1s * &inv2);
    let mut fact = Float::with_val(p, 1); // (2j-2)!
    for (j, c) in coeffs.iter().enumerate() {
        let j = j as u32 + 1;
        if j > 1 {
            fact *= (2 * j - 3) * (2 * j - 2);
        }
        // B_2j/(2j)! = c_j / (2j-2)!
        let b = Float::with_val(p, c / &fact);
        let t = Float::with_val(p, &b * &poch) * &pw;
        let dt = Float::with_val(p, &t * &dsum) - Float::with_val(p, &t * &lx);
        z += &t;
        dz += &dt;
        if t.abs() < Float::with_val(p, &eps * Float::with_val(p, z.abs_ref())) && dt.abs() < Float::with_val(p, &eps * Float::with_val(p, dz.abs_ref())) {
            break;
        }
        for i in [2 * j - 1, 2 * j] {
            let si = Float::with_val(p, &sp + i);
            dsum += Float::with_val(p, si.recip_ref());
            poch *= si;
        }
        pw *= &inv2;
    }
    Ok((Float::with_val(prec, z), Float::with_val(prec, dz)))
}

/// Rising factorial (x)_n.
pub fn pochhammer(x: &Float, n: u32) -> Float {
    let mut r = Float::with_val(x.prec(), 1);
    let mut y = x.clone();
    for _ in 0..n {
        r *= &y;
        y += 1u32;
    }
    r
}

pub fn pochhammer_rat(x: &Rational, n: u32) -> Rational {
    let mut r = Rational::from(1);
    let mut y = x.clone();
    for _ in 0..n {
        r *= &y;
        y += 1u32;
    }
    r
}

/// Crossover between ascending and asymptotic Bessel series.
pub fn bessel_crossover(prec: u32) -> f64 {
    (prec as f64 * std::f64::consts::LN_2 / 2.0 + 4.0).max(30.0)
}

/// Both e^(-t) I0(t) and e^t K0(t) (the latter only when t > 0).
#[derive(Clone, Debug)]
pub struct ScaledPair {
    pub i0: Float,
    pub k0: Float,
}

/// Asymptotic sums sum a_k (+-1/t)^k with a_k = ((2k-1)!!)^2/(k! 8^k).
fn asymptotic_sums(t: &Float, prec: u32) -> (Float, Float) {
    let eps = Float::with_val(prec, 1) >> prec;
    let mut si = Float::with_val(prec, 1);
    let mut sk = Float::with_val(prec, 1);
    let mut term = Float::with_val(prec, 1);
    let inv = Float::with_val(prec, t.recip_ref());
    let mut k = 1u32;
    loop {
        let f = (2 * k - 1) * (2 * k - 1);
        // past the smallest term the asymptotic series only loses accuracy
        if f as f64 / (8.0 * k as f64) * inv.to_f64() >= 1.0 {
            break;
        }
        term *= f;
        term /= 8 * k;
        term *= &inv;
        if k % 2 == 1 {
            sk -= &term;
        } else {
            sk += &term;
        }
        si += &term;
        if term < eps || k > 4 * prec {
            break;
        }
        k += 1;
    }
    (si, sk)
}

/// Ascending series: returns (I0, sum u_k H_k) at the given precision.
fn ascending(t: &Float, prec: u32) -> (Float, Float) {
    let eps = Float::with_val(prec, 1) >> prec;
    let q = Float::with_val(prec, t.square_ref()) / 4u32;
    let mut u = Float::with_val(prec, 1);
    let mut i0 = Float::with_val(prec, 1);
    let mut h = Float::with_val(prec, 0);
    let mut kh = Float::with_val(prec, 0);
    let mut k = 1u32;
    loop {
        u *= &q;
        u /= k * k;
        h += Float::with_val(prec, 1) / k;
        i0 += &u;
        kh += Float::with_val(prec, &u * &h);
        if u < Float::with_val(prec, &eps * &i0) && k as f64 > t.to_f64() / 2.0 {
            break;
        }
        k += 1;
    }
    (i0, kh)
}

fn scaled_pair_impl(t: &Float, prec: u32, want_k: bool) -> ScaledPair {
    let tf = t.to_f64();
    if tf > bessel_crossover(prec) {
        let p = prec + 16;
        let (si, sk) = asymptotic_sums(&Float::with_val(p, t), p);
        let pi = Float::with_val(p, Constant::Pi);
        let two_pi_t = Float::with_val(p, &pi * t) * 2u32;
        let i0 = si / two_pi_t.sqrt();
        let k0 = sk * Float::with_val(p, pi / Float::with_val(p, t * 2u32)).sqrt();
        return ScaledPair { i0: Float::with_val(prec, i0), k0: Float::with_val(prec, k0) };
    }
    // cancellation in the log series costs about 2t*log2(e) bits
    let extra = if want_k { (2.9 * tf) as u32 + 16 } else { 16 };
    let p = prec + extra;
    let tp = Float::with_val(p, t);
    let (i0, kh) = ascending(&tp, p);
    let e = Float::with_val(p, (-tp.clone()).exp());
    let i0s = Float::with_val(prec, &i0 * &e);
    if !want_k || t.is_zero() {
        return ScaledPair { i0: i0s, k0: Float::with_val(prec, 0) };
    }
    let lg = Float::with_val(p, Float::with_val(p, &tp / 2u32).ln() + Float::with_val(p, Constant::Euler));
    let k0 = kh - lg * i0;
    let k0s = k0 * tp.exp();
    ScaledPair { i0: i0s, k0: Float::with_val(prec, k0s) }
}

pub fn bessel_scaled_pair(t: &Float, ctx: &PrecisionContext) -> Result<ScaledPair> {
    if *t <= 0 {
        return Err(Error::Domain(format!("K0 needs t > 0, got {}", t.to_f64())));
    }
    Ok(scaled_pair_impl(t, ctx.prec(), true))
}

/// e^(-t) I0(t).
pub fn bessel_i0_scaled(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *t < 0 {
        return Err(Error::Domain(format!("I0 needs t >= 0, got {}", t.to_f64())));
    }
    Ok(scaled_pair_impl(t, ctx.prec(), false).i0)
}

/// e^t K0(t).
pub fn bessel_k0_scaled(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    Ok(bessel_scaled_pair(t, ctx)?.k0)
}

pub fn bessel_i0(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let s = bessel_i0_scaled(t, ctx)?;
    Ok(s * Float::with_val(ctx.prec(), t.exp_ref()))
}

pub fn bessel_k0(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let s = bessel_k0_scaled(t, ctx)?;
    Ok(s * Float::with_val(ctx.prec(), (-t.clone()).exp()))
}

/// x(t) = 2t I0(t)K0(t) - 1 and y(t) = 2x(t) - 1/(4t^2), both free of cancellation.
pub fn i0k0_defects(t: &Float, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    if *t <= 0 {
        return Err(Error::Domain("t must be positive".into()));
    }
    let prec = ctx.prec();
    let tf = t.to_f64();
    if tf > bessel_crossover(prec) {
        // 2t I0K0 ~ sum_k ((2k-1)!!/(2k)!!) ((2k-1)!!)^2 / (2t)^(2k)
        let p = prec + 16;
        let eps = Float::with_val(p, 1) >> p;
        let inv = Float::with_val(p, Float::with_val(p, t * 2u32).square()).recip();
        let mut term = Float::with_val(p, 1);
        let mut x = Float::with_val(p, 0);
        let mut tail = Float::with_val(p, 0);
        let mut k = 1u32;
        loop {
            let o = 2 * k - 1;
            if (o as f64).powi(3) / (2.0 * k as f64) * inv.to_f64() >= 1.0 {
                break;
            }
            term *= o * o * o;
            term /= 2 * k;
            term *= &inv;
            x += &term;
            if k >= 2 {
                tail += &term;
            }
            // y is the k >= 2 tail alone, so stop relative to it
            if (k >= 2 && term < Float::with_val(p, &eps * &tail)) || k > 4 * prec {
                break;
            }
            k += 1;
        }
        return Ok((Float::with_val(prec, &x), Float::with_val(prec, tail * 2u32)));
    }
    let lg = (tf.max(1.0)).log2();
    let ctx2 = ctx.boosted((4.0 * lg) as u32 + 24);
    let p2 = ctx2.prec();
    let tp = Float::with_val(p2, t);
    let pair = bessel_scaled_pair(&tp, &ctx2)?;
    let prod = Float::with_val(p2, &pair.i0 * &pair.k0) * Float::with_val(p2, &tp * 2u32);
    let x = prod - 1u32;
    let y = Float::with_val(p2, &x * 2u32) - Float::with_val(p2, Float::with_val(p2, tp.square_ref()) * 4u32).recip();
    Ok((Float::with_val(prec, x), Float::with_val(prec, y)))
}

/// K(lambda) for real lambda < 1, given 1 - lambda exactly.
pub fn elliptic_k_real(one_minus_lambda: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *one_minus_lambda <= 0 {
        return Err(Error::Branch(format!("K at lambda = 1 - {}", one_minus_lambda.to_f64())));
    }
    let p = ctx.prec() + 16;
    let kp = Float::with_val(p, one_minus_lambda.sqrt_ref());
    let one = Float::with_val(p, 1);
    let m = Float::with_val(p, one.agm_ref(&kp));
    Ok(Float::with_val(ctx.prec(), Float::with_val(p, Constant::Pi) / (m * 2u32)))
}

/// Complete elliptic integral K in the parameter convention lambda = k^2.
pub fn elliptic_k(lambda: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let p = ctx.prec();
    let one_minus = Complex::new(Float::with_val(p, 1 - &lambda.re), Float::with_val(p, -&lambda.im));
    elliptic_k_comp(lambda, &one_minus, ctx)
}

/// K(lambda) given both lambda and 1 - lambda, so arguments near 1 keep their precision.
pub fn elliptic_k_comp(lambda: &Complex, one_minus: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if lambda.im.is_zero() && one_minus.re <= 0 {
        return Err(Error::Branch(format!("K on the cut at lambda = {}", lambda.re.to_f64())));
    }
    let p = ctx.prec() + 16;
    let pi = Float::with_val(p, Constant::Pi);
    if lambda.im.is_zero() {
        return Ok(Complex::from_real(elliptic_k_real(&one_minus.re, ctx)?));
    }
    if lambda.abs().to_f64() <= 0.8 {
        // (pi/2) sum ((1/2)_n/n!)^2 lambda^n
        let eps = Float::with_val(p, 1) >> p;
        let lam = Complex::new(Float::with_val(p, &lambda.re), Float::with_val(p, &lambda.im));
        let mut c = Float::with_val(p, 1);
        let mut pw = Complex::with_val(p, 1, 0);
        let mut s = Complex::with_val(p, 1, 0);
        let mut n = 0u32;
        loop {
            c *= (2 * n + 1) * (2 * n + 1);
            c /= (2 * n + 2) * (2 * n + 2);
            pw = &pw * &lam;
            let t = pw.scale(&c);
            let small = t.abs() < Float::with_val(p, &eps * s.abs());
            s = &s + &t;
            if small {
                break;
            }
            n += 1;
        }
        let r = s.scale(&pi);
        return Ok(Complex::new(Float::with_val(ctx.prec(), &r.re / 2u32), Float::with_val(ctx.prec(), &r.im / 2u32)));
    }
    let om = Complex::new(Float::with_val(p, &one_minus.re), Float::with_val(p, &one_minus.im));
    let mut a = Complex::with_val(p, 1, 0);
    let mut b = om.sqrt();
    let eps = Float::with_val(p, 1) >> (p - 8);
    for _ in 0..200 {
        let diff = (&a - &b).abs();
        if diff <= Float::with_val(p, &eps * a.abs()) {
            break;
        }
        let an = (&a + &b).scale(&Float::with_val(p, 0.5f64));
        let mut bn = (&a * &b).sqrt();
        if (&an - &bn).abs() > (&an + &bn).abs() {
            bn = -bn;
        }
        a = an;
        b = bn;
    }
    let r = Complex::from_real(pi).div(&a.scale(&Float::with_val(p, 2)));
    Ok(round_complex(&r, ctx.prec()))
}
