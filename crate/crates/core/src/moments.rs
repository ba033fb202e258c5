//! Bessel moments, parametric moments, Watson integrals and the single-integral
//! representations that reduce to them.

use crate::error::{Error, Result};
use crate::hyper::hyp2f1;
use crate::mpcore::{factorial, rat, Complex, PrecisionContext};
use crate::quad::{integrate_de, integrate_multidim, tanh_sinh, Endpoint, IntegrandSpec, MultiEstimate, MultiMethod, Point};
use crate::specfun::{
    bessel_i0_scaled, bessel_scaled_pair, elliptic_k_comp, elliptic_k_real, gamma_rat, i0k0_defects, ScaledPair,
};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Subtractions applied to I0^2 K0^2 in the regularized moments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularizer {
    None,
    /// I0^2 K0^2 - 1/(4t^2)
    Quarter,
    /// I0^2 K0^2 - 1/(4t^2) - 1/(16t^4)
    QuarterSixteenth,
}

/// IKM(a,b;n) with an optional polynomial weight in t^2.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSpec {
    pub a: u32,
    pub b: u32,
    pub n: u32,
    /// coefficients of 1, t^2, t^4, ...
    pub weight: Vec<Rational>,
    pub regularizer: Regularizer,
}

impl MomentSpec {
    pub fn new(a: u32, b: u32, n: u32) -> Self {
        MomentSpec { a, b, n, weight: vec![Rational::from(1)], regularizer: Regularizer::None }
    }

    pub fn with_weight(mut self, w: &[i64]) -> Self {
        self.weight = w.iter().map(|&c| Rational::from(c)).collect();
        self
    }

    /// int I0 K0 {I0^2 K0^2 - ...} t^n dt; n is 3 for `Quarter` and 5 for `QuarterSixteenth`.
    pub fn regularized(reg: Regularizer) -> Self {
        let n = match reg {
            Regularizer::QuarterSixteenth => 5,
            _ => 3,
        };
        MomentSpec { a: 3, b: 3, n, weight: vec![Rational::from(1)], regularizer: reg }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    I,
    K,
}

#[derive(Clone, Debug)]
struct Factor {
    kind: Kind,
    scale: Float,
    power: u32,
}

/// prod_j B_j(s_j t)^(p_j) t^n w(t^2) on (0, inf).
#[derive(Clone, Debug)]
struct Product {
    factors: Vec<Factor>,
    t_power: u32,
    weight: Vec<Rational>,
}

impl Product {
    fn plain(a: u32, b: u32, n: u32, prec: u32) -> Self {
        let one = Float::with_val(prec, 1);
        let mut factors = Vec::new();
        if a > 0 {
            factors.push(Factor { kind: Kind::I, scale: one.clone(), power: a });
        }
        if b > 0 {
            factors.push(Factor { kind: Kind::K, scale: one, power: b });
        }
        Product { factors, t_power: n, weight: vec![Rational::from(1)] }
    }

    fn with(mut self, kind: Kind, scale: Float, power: u32) -> Self {
        self.factors.insert(0, Factor { kind, scale, power });
        self
    }

    fn rate(&self, prec: u32) -> Float {
        let mut r = Float::with_val(prec, 0);
        for f in &self.factors {
            let c = Float::with_val(prec, &f.scale * f.power);
            match f.kind {
                Kind::K => r += c,
                Kind::I => r -= c,
            }
        }
        r
    }

    fn has_k(&self) -> bool {
        self.factors.iter().any(|f| f.kind == Kind::K && f.power > 0)
    }
}

fn pow_u(x: &Float, k: u32) -> Float {
    let mut r = Float::with_val(x.prec(), 1);
    for _ in 0..k {
        r *= x;
    }
    r
}

fn poly_t2(w: &[Rational], t: &Float) -> Float {
    let p = t.prec();
    let t2 = Float::with_val(p, t.square_ref());
    let mut acc = Float::with_val(p, 0);
    for c in w.iter().rev() {
        acc *= &t2;
        acc += Float::with_val(p, c);
    }
    acc
}

/// Scaled Bessel values for each factor at t, sharing work between factors of equal scale.
fn scaled_values(pr: &Product, t: &Float, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    let p = ctx.prec();
    let mut cache: Vec<(Float, ScaledPair)> = Vec::new();
    let mut out = Vec::with_capacity(pr.factors.len());
    for f in &pr.factors {
        if f.scale.is_zero() {
            if f.kind == Kind::K {
                return Err(Error::Domain("K0 factor with zero scale".into()));
            }
            out.push(Float::with_val(p, 1));
            continue;
        }
        let need_k = pr.factors.iter().any(|g| g.kind == Kind::K && g.scale == f.scale);
        let pos = cache.iter().position(|(s, _)| *s == f.scale);
        let pair = match pos {
            Some(i) => cache[i].1.clone(),
            None => {
                let arg = Float::with_val(p, &f.scale * t);
                let pair = if need_k {
                    bessel_scaled_pair(&arg, ctx)?
                } else {
                    ScaledPair { i0: bessel_i0_scaled(&arg, ctx)?, k0: Float::with_val(p, 0) }
                };
                cache.push((f.scale.clone(), pair.clone()));
                pair
            }
        };
        out.push(match f.kind {
            Kind::I => pair.i0,
            Kind::K => pair.k0,
        });
    }
    Ok(out)
}

fn integrate_product(pr: &Product, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let rate = pr.rate(p);
    let deg = 2 * (pr.weight.len() as u32).saturating_sub(1);
    let right = if rate > 0 {
        Endpoint::ExpDecay(rate.to_f64())
    } else if rate.is_zero() {
        let total: u32 = pr.factors.iter().map(|f| f.power).sum();
        let beta = total as f64 / 2.0 - pr.t_power as f64 - deg as f64;
        if beta <= 1.0 {
            return Err(Error::DivergentMoment(format!("algebraic tail t^-{beta} is not integrable")));
        }
        Endpoint::AlgebraicDecay(beta)
    } else {
        return Err(Error::DivergentMoment("integrand grows exponentially".into()));
    };
    let left = if pr.has_k() { Endpoint::Logarithmic } else { Endpoint::Smooth };
    let spec = IntegrandSpec::semi_infinite(Float::with_val(p, 0), left, right);
    let f = |pt: &Point| -> Result<Float> {
        let t = &pt.x;
        let vals = scaled_values(pr, t, ctx)?;
        let mut v = Float::with_val(p, 1);
        for (f, b) in pr.factors.iter().zip(&vals) {
            v *= pow_u(b, f.power);
        }
        v *= pow_u(t, pr.t_power);
        if pr.weight.len() > 1 || pr.weight[0] != 1 {
            v *= poly_t2(&pr.weight, t);
        }
        if !rate.is_zero() {
            v *= Float::with_val(p, -Float::with_val(p, &rate * t)).exp();
        }
        Ok(v)
    };
    integrate_de(f, &spec, ctx)
}

/// IKM(a,b;n) = int_0^inf I0^a K0^b t^n w(t^2) dt, or a regularized variant.
pub fn ikm(spec: &MomentSpec, ctx: &PrecisionContext) -> Result<Float> {
    if spec.b == 0 || spec.b < spec.a {
        return Err(Error::DivergentMoment(format!("IKM({},{};{}) diverges", spec.a, spec.b, spec.n)));
    }
    if spec.weight.is_empty() {
        return Err(Error::Domain("empty weight polynomial".into()));
    }
    match spec.regularizer {
        Regularizer::None => {
            let mut pr = Product::plain(spec.a, spec.b, spec.n, ctx.prec());
            pr.weight = spec.weight.clone();
            integrate_product(&pr, ctx)
        }
        reg => {
            let expect = MomentSpec::regularized(reg);
            if spec.a != 3 || spec.b != 3 || spec.n != expect.n || spec.weight != expect.weight {
                return Err(Error::UnsupportedSpec("regularizers apply to I0K0{I0^2K0^2 - ...}t^3 or t^5 only".into()));
            }
            regularized(reg, ctx)
        }
    }
}

/// Shorthand for the unweighted moment.
pub fn ikm_plain(a: u32, b: u32, n: u32, ctx: &PrecisionContext) -> Result<Float> {
    ikm(&MomentSpec::new(a, b, n), ctx)
}

fn regularized(reg: Regularizer, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let spec = IntegrandSpec::semi_infinite(Float::with_val(p, 0), Endpoint::Logarithmic, Endpoint::AlgebraicDecay(2.0));
    // with x = 2tI0K0 - 1: I0^2K0^2 - 1/(4t^2) = (2x + x^2)/(4t^2) and
    // subtracting 1/(16t^4) as well gives (y + x^2)/(4t^2), y = 2x - 1/(4t^2)
    integrate_de(
        |pt| {
            let t = &pt.x;
            let (x, y) = i0k0_defects(t, ctx)?;
            let i0k0 = Float::with_val(p, &x + 1u32) / Float::with_val(p, t * 2u32);
            let x2 = Float::with_val(p, x.square_ref());
            let bracket = match reg {
                Regularizer::Quarter => Float::with_val(p, &x * 2u32) + x2,
                _ => y + x2,
            } / 4u32;
            let tp = match reg {
                Regularizer::Quarter => Float::with_val(p, t),
                _ => pow_u(t, 3),
            };
            Ok(i0k0 * bracket * tp)
        },
        &spec,
        ctx,
    )
}

/// Moments with one factor I0(sqrt(u) t) or K0(sqrt(u) t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamKind {
    /// int I0(r t) K0^4 t + 4 int K0(r t) I0 K0^3 t
    Mb1Lhs,
    /// int K0(r t) I0^2 K0^2 t + int I0(r t) I0 K0^3 t
    Mb2Lhs,
    /// int I0(x t) I0 K0^3 t, parametrized by x rather than u
    Ikm231X,
    KI2K2,
    IIK3,
    /// (1/2) int K0(r t) I0 K0 dt
    BaileyIk,
    /// int I0(r t) K0^5 t
    Ikm15Param,
    /// int I0(r t) I0 K0^4 t
    Ikm24Param,
}

impl ParamKind {
    pub const ALL: [ParamKind; 8] = [
        ParamKind::Mb1Lhs,
        ParamKind::Mb2Lhs,
        ParamKind::Ikm231X,
        ParamKind::KI2K2,
        ParamKind::IIK3,
        ParamKind::BaileyIk,
        ParamKind::Ikm15Param,
        ParamKind::Ikm24Param,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamKind::Mb1Lhs => "MB1_LHS",
            ParamKind::Mb2Lhs => "MB2_LHS",
            ParamKind::Ikm231X => "IKM231_X",
            ParamKind::KI2K2 => "K_I2K2",
            ParamKind::IIK3 => "I_IK3",
            ParamKind::BaileyIk => "BAILEY_IK",
            ParamKind::Ikm15Param => "IKM15_PARAM",
            ParamKind::Ikm24Param => "IKM24_PARAM",
        }
    }
}

/// Parametric moment at u (or at x for `Ikm231X`).
pub fn param_moment(kind: ParamKind, u: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let r = match kind {
        ParamKind::Ikm231X => Float::with_val(p, u),
        _ => Float::with_val(p, u.sqrt_ref()),
    };
    // upper limits come from the exponential rate of the integrand; the rate
    // may vanish at the limit itself when the algebraic tail is integrable
    let uf = u.to_f64();
    let (lo_ok, hi_ok) = match kind {
        ParamKind::Ikm231X => (uf >= 0.0, uf < 2.0),
        ParamKind::IIK3 => (uf >= 0.0, uf <= 4.0),
        ParamKind::Mb1Lhs => (uf > 0.0, uf < 16.0),
        ParamKind::Mb2Lhs => (uf > 0.0, uf < 4.0),
        ParamKind::KI2K2 | ParamKind::BaileyIk => (uf > 0.0, uf.is_finite()),
        ParamKind::Ikm15Param => (uf >= 0.0, uf < 25.0),
        ParamKind::Ikm24Param => (uf >= 0.0, uf < 9.0),
    };
    if !lo_ok || !hi_ok {
        return Err(Error::Domain(format!("{} outside its range at {uf}", kind.name())));
    }
    let i = |a, b| Product::plain(a, b, 1, p);
    match kind {
        ParamKind::Mb1Lhs => {
            let a = integrate_product(&i(0, 4).with(Kind::I, r.clone(), 1), ctx)?;
            let b = integrate_product(&i(1, 3).with(Kind::K, r, 1), ctx)?;
            Ok(a + b * 4u32)
        }
        ParamKind::Mb2Lhs => {
            let a = integrate_product(&i(2, 2).with(Kind::K, r.clone(), 1), ctx)?;
            let b = integrate_product(&i(1, 3).with(Kind::I, r, 1), ctx)?;
            Ok(a + b)
        }
        ParamKind::Ikm231X | ParamKind::IIK3 => integrate_product(&i(1, 3).with(Kind::I, r, 1), ctx),
        ParamKind::KI2K2 => integrate_product(&i(2, 2).with(Kind::K, r, 1), ctx),
        ParamKind::BaileyIk => {
            let pr = Product::plain(1, 1, 0, p).with(Kind::K, r, 1);
            Ok(integrate_product(&pr, ctx)? / 2u32)
        }
        ParamKind::Ikm15Param => integrate_product(&i(0, 5).with(Kind::I, r, 1), ctx),
        ParamKind::Ikm24Param => integrate_product(&i(1, 4).with(Kind::I, r, 1), ctx),
    }
}

/// W_d^S(x) = int_0^inf e^(-d t) I0(x t)^d dt for d in {3, 4}; W_d^S(0) = 1/d.
pub fn watson(d: u32, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if d != 3 && d != 4 {
        return Err(Error::Domain(format!("Watson integral of dimension {d}")));
    }
    if *x < 0 || *x > 1 {
        return Err(Error::Domain(format!("Watson integral at x = {}", x.to_f64())));
    }
    let p = ctx.prec();
    let rate = Float::with_val(p, 1 - x) * d;
    let right = if rate.is_zero() { Endpoint::AlgebraicDecay(d as f64 / 2.0) } else { Endpoint::ExpDecay(rate.to_f64()) };
    let spec = IntegrandSpec::semi_infinite(Float::with_val(p, 0), Endpoint::Smooth, right);
    integrate_de(
        |pt| {
            let t = &pt.x;
            let i = bessel_i0_scaled(&Float::with_val(p, x * t), ctx)?;
            let mut v = pow_u(&i, d);
            if !rate.is_zero() {
                v *= Float::with_val(p, -Float::with_val(p, &rate * t)).exp();
            }
            Ok(v)
        },
        &spec,
        ctx,
    )
}

/// (4/pi^2) int I0(xt)^2 I0 K0^3 t dt, the Bessel-moment form of W_4^S(x).
pub fn w4_bessel(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let pr = Product::plain(1, 3, 1, p).with(Kind::I, Float::with_val(p, x), 2);
    let v = integrate_product(&pr, ctx)?;
    let pi = ctx.pi();
    Ok(v * 4u32 / pi.square())
}

/// The Joyce-Zucker parameter p(x).
pub fn jz_p(x: &Float, ctx: &PrecisionContext) -> Float {
    let p = ctx.prec();
    let x2 = Float::with_val(p, x.square_ref());
    let s9 = Float::with_val(p, 1 - Float::with_val(p, &x2 / 9u32)).sqrt();
    let s1 = Float::with_val(p, 1 - &x2).sqrt();
    // 1 - sqrt(1 - x^2/9) without cancellation
    let num = Float::with_val(p, &x2 / 9u32) / (s9 + 1u32);
    (num / (s1 + 1u32)).sqrt()
}

/// Closed forms of W_3^S(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JzForm {
    /// 2F1(1/8,3/8;1;z)^2 form
    Jz1838,
    /// K^2 form in the parameter p
    JzK,
}

pub fn w3s_closed(form: JzForm, x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *x <= 0 || *x > 1 {
        return Err(Error::Domain(format!("W3 closed form at x = {}", x.to_f64())));
    }
    // small x cancels about 2 log2(1/x) bits in both forms
    let extra = (-2.0 * x.to_f64().log2()).max(0.0) as u32 + 16;
    let c2 = ctx.boosted(extra);
    let p = c2.prec();
    let x = Float::with_val(p, x);
    let x2 = Float::with_val(p, x.square_ref());
    let v = match form {
        JzForm::Jz1838 => {
            let s = Float::with_val(p, 1 - &x2).sqrt();
            let three = Float::with_val(p, &x2 + 3u32);
            let br = Float::with_val(p, 9 - Float::with_val(p, &x2 * 5u32)) - Float::with_val(p, 9 - &x2) * &s;
            let z = Float::with_val(p, &x2 * 16u32) * br.square() / (pow_u(&three, 4) * 9u32);
            let omz = Float::with_val(p, 1 - &z);
            let f = hyp2f1(&rat(1, 8), &rat(3, 8), &rat(1, 1), &z, &omz, &c2)?;
            Float::with_val(p, 2 - s) / three * f.square()
        }
        JzForm::JzK => {
            let pp = jz_p(&x, &c2);
            let omp = Float::with_val(p, 1 - &pp);
            let opp = Float::with_val(p, 1 + &pp);
            let tp1 = Float::with_val(p, &pp * 3u32) + 1u32;
            let tm1 = Float::with_val(p, 1 - Float::with_val(p, &pp * 3u32));
            let omp3 = pow_u(&omp, 3);
            let one_minus_lambda = pow_u(&opp, 3) * &tm1 / Float::with_val(p, &omp3 * &tp1);
            let k = elliptic_k_real(&one_minus_lambda, &c2)?;
            let pi = c2.pi();
            let kk = Float::with_val(p, k * 2u32) / pi;
            let p4 = pow_u(&pp, 4);
            let pre = Float::with_val(p, 1 - p4 * 9u32) / (omp3 * tp1 * 3u32);
            pre * kk.square()
        }
    };
    Ok(Float::with_val(ctx.prec(), v))
}

/// W_4^S(1) = (2/pi^3) int_0^(pi/2) K(k+^2) K(k-^2) dphi, x = sin phi.
pub fn w4_gg_elliptic(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let half_pi = ctx.pi() / 2u32;
    let v = tanh_sinh(
        |phi, _| {
            let x = Float::with_val(p, phi.sin_ref());
            let c = Float::with_val(p, phi.cos_ref());
            let x2 = Float::with_val(p, x.square_ref());
            let a = Float::with_val(p, &x2 * Float::with_val(p, 1 - Float::with_val(p, &x2 / 4u32)).sqrt());
            let b = Float::with_val(p, 1 - Float::with_val(p, &x2 / 2u32)) * c;
            // 1 - k+^2 and 1 - k-^2
            let omp = (Float::with_val(p, 1 - &a) + &b) / 2u32;
            let omm = (Float::with_val(p, 1 + &a) + &b) / 2u32;
            let kp = elliptic_k_real(&omp, ctx)?;
            let km = elliptic_k_real(&omm, ctx)?;
            Ok(kp * km)
        },
        &half_pi,
        Endpoint::Smooth,
        Endpoint::Smooth,
        ctx,
    )?;
    let pi = ctx.pi();
    Ok(v * 2u32 / pow_u(&pi, 3))
}

/// W_4^S(1) = (2/pi^3) int_0^(pi/2) |K(lambda)|^2 dtheta with lambda = cos^2(theta) e^(-2i theta).
pub fn w4_parseval(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let half_pi = ctx.pi() / 2u32;
    let v = tanh_sinh(
        |th, _| {
            let (s, c) = (Float::with_val(p, th.sin_ref()), Float::with_val(p, th.cos_ref()));
            let c2 = Float::with_val(p, c.square_ref());
            let th2 = Float::with_val(p, th * 2u32);
            let lambda = Complex::new(Float::with_val(p, &c2 * Float::with_val(p, th2.cos_ref())), -Float::with_val(p, &c2 * Float::with_val(p, th2.sin_ref())));
            let re = Float::with_val(p, &s * &s) * (Float::with_val(p, &c2 * 2u32) + 1u32);
            let im = Float::with_val(p, &s * 2u32) * pow_u(&c, 3);
            let one_minus = Complex::new(re, im);
            let k = elliptic_k_comp(&lambda, &one_minus, ctx)?;
            Ok(k.norm_sqr())
        },
        &half_pi,
        Endpoint::Logarithmic,
        Endpoint::Smooth,
        ctx,
    )?;
    let pi = ctx.pi();
    Ok(v * 2u32 / pow_u(&pi, 3))
}

/// v(u) = u^2(9+u)/(3+u)^3 and 1 - v(u) = 27(1+u)/(3+u)^3, given 1+u exactly.
fn cubic_v(u: &Float, opu: &Float, p: u32) -> (Float, Float) {
    let d = pow_u(&Float::with_val(p, u + 3u32), 3);
    let w = Float::with_val(p, opu * 27u32) / &d;
    let v = if w < 0.5 {
        Float::with_val(p, 1 - &w)
    } else {
        Float::with_val(p, u.square_ref()) * Float::with_val(p, u + 9u32) / d
    };
    (v, w)
}

/// Which range the u-integral of W_4^S(1) is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum URange {
    /// (sqrt 3/pi) int_0^inf
    Positive,
    /// (2 sqrt 3/pi) int_-1^0
    Negative,
}

/// W_4^S(1) as an integral of F(v)F(1-v)/(3+u)^2, F = 2F1(1/3,2/3;1;.).
pub fn w4_2f1_u(range: URange, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let (a, b, c) = (rat(1, 3), rat(2, 3), rat(1, 1));
    let g = |u: &Float, opu: &Float| -> Result<Float> {
        let (v, w) = cubic_v(u, opu, p);
        let f1 = hyp2f1(&a, &b, &c, &v, &w, ctx)?;
        let f2 = hyp2f1(&a, &b, &c, &w, &v, ctx)?;
        Ok(f1 * f2 / Float::with_val(p, u + 3u32).square())
    };
    let sqrt3 = ctx.sqrt_of(3);
    let pi = ctx.pi();
    match range {
        URange::Positive => {
            // log growth of F(v) as u -> inf: declare slightly slower than u^-2
            let spec = IntegrandSpec::semi_infinite(Float::with_val(p, 0), Endpoint::Smooth, Endpoint::AlgebraicDecay(1.9));
            let v = integrate_de(|pt| g(&pt.x, &Float::with_val(p, &pt.x + 1u32)), &spec, ctx)?;
            Ok(v * sqrt3 / pi)
        }
        URange::Negative => {
            let one = Float::with_val(p, 1);
            let v = tanh_sinh(|l, r| g(&Float::with_val(p, -r), l), &one, Endpoint::Logarithmic, Endpoint::Smooth, ctx)?;
            Ok(v * sqrt3 * 2u32 / pi)
        }
    }
}

/// Which 2F1 product is integrated against (1-x)^(-1/2) over (0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HypProduct {
    /// 2F1(1/3,2/3;1;x)^2
    Square,
    /// 2F1(-1/3,1/3;1;x)^2
    MinusSquare,
    /// 2F1(1/3,2/3;1;x) 2F1(1/3,2/3;1;1-x)
    Reflected,
}

/// int_0^1 (product of 2F1) dx / sqrt(1-x), with x = 1 - v^2.
pub fn hyp_product_integral(kind: HypProduct, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let (a, b, c) = match kind {
        HypProduct::MinusSquare => (rat(-1, 3), rat(1, 3), rat(1, 1)),
        _ => (rat(1, 3), rat(2, 3), rat(1, 1)),
    };
    let g = |l: &Float, r: &Float| -> Result<Float> {
        let omx = Float::with_val(p, l.square_ref());
        let x = Float::with_val(p, r * Float::with_val(p, l + 1u32));
        let f = hyp2f1(&a, &b, &c, &x, &omx, ctx)?;
        let v = match kind {
            HypProduct::Reflected => hyp2f1(&a, &b, &c, &omx, &x, ctx)? * f,
            _ => f.square(),
        };
        Ok(v * 2u32)
    };
    let right = if kind == HypProduct::Reflected { Endpoint::Logarithmic } else { Endpoint::Smooth };
    tanh_sinh(g, &Float::with_val(p, 1), Endpoint::Logarithmic, right, ctx)
}

/// IKM(3,3;1) = (8/pi) int_0^(1/3) y K(k1^2) K(k2^2) dy / ((3y+1)(1-y)^3).
pub fn ikm33_elliptic(ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let third = Float::with_val(p, 1) / 3u32;
    let v = tanh_sinh(
        |y, r| {
            let omy = Float::with_val(p, 1 - y);
            let opy = Float::with_val(p, 1 + y);
            let d = Float::with_val(p, Float::with_val(p, y * 3u32) + 1u32) * pow_u(&omy, 3);
            // 1 - 3y = 3 r with r the distance to 1/3
            let k1sq = Float::with_val(p, r * 3u32) * pow_u(&opy, 3) / &d;
            let k2sq = pow_u(y, 3) * 16u32 / &d;
            let k1 = elliptic_k_real(&k2sq, ctx)?;
            let k2 = elliptic_k_real(&k1sq, ctx)?;
            Ok(Float::with_val(p, y / d) * k1 * k2)
        },
        &third,
        Endpoint::Smooth,
        Endpoint::Logarithmic,
        ctx,
    )?;
    Ok(v * 8u32 / ctx.pi())
}

/// The cubic-transformation parameter pair (x, 1 - x) of p.
pub fn cubic_x(pp: &Float) -> (Float, Float) {
    let p = pp.prec();
    let q = Float::with_val(p, pp.square_ref()) + pp + 1u32;
    let d = pow_u(&q, 3) * 4u32;
    let opp = Float::with_val(p, 1 + pp);
    let x = Float::with_val(p, pp.square_ref()) * opp.square() * 27u32 / &d;
    let omp = Float::with_val(p, 1 - pp);
    let tpp = Float::with_val(p, pp + 2u32);
    let t2p = Float::with_val(p, pp * 2u32) + 1u32;
    let w = omp.square() * tpp.square() * t2p.square() / d;
    (x, w)
}

/// Both sides of the two cubic transformations at p: (F(x), K-form, F(1-x), K-form).
pub fn ramanujan_cubic(pp: &Float, ctx: &PrecisionContext) -> Result<[Float; 4]> {
    let p = ctx.prec();
    let (x, w) = cubic_x(pp);
    let (a, b, c) = (rat(1, 3), rat(2, 3), rat(1, 1));
    let f = hyp2f1(&a, &b, &c, &x, &w, ctx)?;
    let g = hyp2f1(&a, &b, &c, &w, &x, ctx)?;
    let t2p = Float::with_val(p, pp * 2u32) + 1u32;
    let lam = pow_u(pp, 3) * Float::with_val(p, pp + 2u32) / &t2p;
    let oml = Float::with_val(p, 1 - pp) * pow_u(&Float::with_val(p, 1 + pp), 3) / &t2p;
    let q = Float::with_val(p, pp.square_ref()) + pp + 1u32;
    let two_pi = Float::with_val(p, 2u32) / ctx.pi();
    let k1 = elliptic_k_real(&oml, ctx)?;
    let k2 = elliptic_k_real(&lam, ctx)?;
    let r1 = Float::with_val(p, &two_pi * &q) / Float::with_val(p, t2p.sqrt_ref()) * k1;
    let r2 = two_pi * q / Float::with_val(p, t2p * 3u32).sqrt() * k2;
    Ok([f, r1, g, r2])
}

/// (1/(4 pi^4)) int_[0,pi]^4 ((sum cos)/4)^(2n), expanded exactly.
pub fn even_cos_moment_exact(n: u32) -> Rational {
    let m = 2 * n;
    // c_k = (1/pi) int_0^pi cos^k = C(k,k/2)/2^k for even k
    let c: Vec<Rational> = (0..=m)
        .map(|k| {
            if k % 2 == 1 {
                Rational::from(0)
            } else {
                Rational::from((Integer::from(Integer::binomial_u(k, k / 2)), Integer::from(1) << k))
            }
        })
        .collect();
    let fm = factorial(m);
    let mut sum = Rational::from(0);
    for a in (0..=m).step_by(2) {
        for b in (0..=m - a).step_by(2) {
            for d in (0..=m - a - b).step_by(2) {
                let e = m - a - b - d;
                if e % 2 == 1 {
                    continue;
                }
                let mult = Integer::from(&fm / factorial(a)) / factorial(b) / factorial(d) / factorial(e);
                let term = Rational::from(mult) * &c[a as usize] * &c[b as usize] * &c[d as usize] * &c[e as usize];
                sum += term;
            }
        }
    }
    sum / (Integer::from(1) << (2 * m)) / 4u32
}

/// sum over j+k+l+m = n of (n!/(j!k!l!m!))^2.
pub fn multinomial_square_sum(n: u32) -> Integer {
    let fnn = factorial(n);
    let mut s = Integer::from(0);
    for j in 0..=n {
        for k in 0..=n - j {
            for l in 0..=n - j - k {
                let m = n - j - k - l;
                let q = Integer::from(&fnn / factorial(j)) / factorial(k) / factorial(l) / factorial(m);
                s += q.square();
            }
        }
    }
    s
}

/// The multinomial side of the even-moment identity.
pub fn glasser_montaldi_rhs(n: u32) -> Rational {
    let cent = Integer::from(factorial(2 * n) / factorial(n).square());
    Rational::from((cent * multinomial_square_sum(n), Integer::from(1) << (2 * (3 * n + 1))))
}

/// (n!)^2 pi^2 / 2^(4(n+1)) * sum (n!/(j!k!l!m!))^2, which equals IKM(1,3;2n+1).
pub fn ikm13_closed(n: u32, ctx: &PrecisionContext) -> Float {
    let q = Rational::from((factorial(n).square() * multinomial_square_sum(n), Integer::from(1) << (4 * (n + 1))));
    ctx.rat(&q) * ctx.pi().square()
}

/// (2/pi) int_0^(pi/2) B(2t cos theta) dtheta for B = I0 or K0; equals I0(t)^2 or I0(t)K0(t).
pub fn neumann_addition(k_kind: bool, t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let half_pi = ctx.pi() / 2u32;
    let two_t = Float::with_val(p, t * 2u32);
    let v = tanh_sinh(
        |_, r| {
            // cos theta = sin(pi/2 - theta)
            let arg = Float::with_val(p, &two_t * Float::with_val(p, r.sin_ref()));
            if k_kind {
                let k = crate::specfun::bessel_k0(&arg, ctx)?;
                Ok(k)
            } else {
                crate::specfun::bessel_i0(&arg, ctx)
            }
        },
        &half_pi,
        Endpoint::Smooth,
        if k_kind { Endpoint::Logarithmic } else { Endpoint::Smooth },
        ctx,
    )?;
    Ok(v * 2u32 / ctx.pi())
}

/// Which 2F1 enters the Mellin transform check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MellinVariant {
    /// 2F1(-nu, nu+1; 1; 1-t), transform Gamma(s)^2/(Gamma(s-nu)Gamma(s+nu+1))
    Plain,
    /// 2F1(-nu, nu; 1; 1-t), transform Gamma(s)Gamma(s+1)/(Gamma(s+1-nu)Gamma(s+1+nu))
    Shifted,
}

/// (quadrature, Gamma closed form) of int_0^1 2F1(..;1-t) t^(s-1) dt.
pub fn mellin_2f1(variant: MellinVariant, nu: &Rational, s: &Rational, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let p = ctx.prec();
    let (a, b) = match variant {
        MellinVariant::Plain => (Rational::from(-nu), Rational::from(nu + 1u32)),
        MellinVariant::Shifted => (Rational::from(-nu), nu.clone()),
    };
    let c = Rational::from(1);
    let sm1 = Rational::from(s - 1u32);
    let alpha = sm1.to_f64().min(0.0) - 0.05;
    let one = Float::with_val(p, 1);
    let sf = ctx.rat(&sm1);
    let quad = tanh_sinh(
        |t, omt| {
            let f = hyp2f1(&a, &b, &c, omt, t, ctx)?;
            Ok(f * Float::with_val(p, Float::with_val(p, t.ln_ref()) * &sf).exp())
        },
        &one,
        Endpoint::Algebraic(alpha),
        Endpoint::Smooth,
        ctx,
    )?;
    let g = |q: Rational| gamma_rat(&q, ctx);
    let closed = match variant {
        MellinVariant::Plain => {
            g(s.clone())?.square() / g(Rational::from(s - nu))? / g(Rational::from(s + nu) + 1u32)?
        }
        MellinVariant::Shifted => {
            g(s.clone())? * g(Rational::from(s + 1u32))? / g(Rational::from(s - nu) + 1u32)? / g(Rational::from(s + nu) + 1u32)?
        }
    };
    Ok((quad, closed))
}

/// Vanhove operators in the mass parameter u.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanhoveOp {
    L3,
    L4,
}

fn vanhove_coeffs_exact(op: VanhoveOp, u: &Float) -> Vec<Float> {
    let p = u.prec();
    let poly = |c: &[i64]| {
        let mut acc = Float::with_val(p, 0);
        for k in c.iter().rev() {
            acc *= u;
            acc += *k;
        }
        acc
    };
    match op {
        VanhoveOp::L3 => vec![
            poly(&[-4, 1]),
            poly(&[64, -68, 7]),
            poly(&[0, 192, -90, 6]),
            poly(&[0, 0, 64, -20, 1]),
        ],
        VanhoveOp::L4 => vec![
            poly(&[-5, 1]),
            poly(&[285, -196, 15]),
            poly(&[-450, 1839, -518, 25]),
            poly(&[0, -900, 1554, -280, 10]),
            poly(&[0, 0, -225, 259, -35, 1]),
        ],
    }
}

/// Weights w_k, k = -r..r, with sum w_k f(x + k h) = h^m f^(m)(x) + O(h^(2r+1)).
pub fn central_weights(m: u32, r: u32) -> Vec<Rational> {
    let n = (2 * r + 1) as usize;
    // rows j: sum_k w_k k^j = m! delta_jm
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = (0..n).map(|i| Rational::from(i as i64 - r as i64).pow(j as i32).into()).collect();
            row.push(if j as u32 == m { Rational::from(factorial(m)) } else { Rational::from(0) });
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0).expect("Vandermonde system is regular");
        a.swap(c, piv);
        let d = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &d;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c].clone();
                for k in c..=n {
                    let t = Rational::from(&f * &a[c][k]);
                    a[r][k] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

/// Applies L3 or L4 to a parametric moment by central differences in u.
pub fn vanhove_apply(op: VanhoveOp, target: ParamKind, u: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let uf = u.to_f64();
    let singular: &[f64] = match op {
        VanhoveOp::L3 => &[0.0, 4.0, 16.0],
        VanhoveOp::L4 => &[0.0, 1.0, 9.0, 25.0],
    };
    if singular.iter().any(|s| (uf - s).abs() < 1e-3) {
        return Err(Error::Domain(format!("u = {uf} is a singular point of {op:?}")));
    }
    let digits = ctx.digits();
    if digits < 40 {
        return Err(Error::Stencil(format!("{digits} digits cannot support fourth differences")));
    }
    let p = ctx.prec();
    // 9-point stencils: rounding ~ 10^-digits/h^4 against truncation ~ h^6
    let hexp = digits / 10;
    let h = Float::with_val(p, 10).pow(-(hexp as i32));
    let vals: Vec<Float> = (-4i32..=4)
        .map(|k| param_moment(target, &Float::with_val(p, u + Float::with_val(p, &h * k)), ctx))
        .collect::<Result<_>>()?;
    let derivs: Vec<Float> = (0..=4u32)
        .map(|m| {
            let w = central_weights(m, 4);
            let mut acc = Float::with_val(p, 0);
            for (wk, v) in w.iter().zip(&vals) {
                acc += Float::with_val(p, wk) * v;
            }
            acc / pow_u(&h, m)
        })
        .collect();
    let coeffs = vanhove_coeffs_exact(op, u);
    let mut acc = Float::with_val(p, 0);
    for (c, d) in coeffs.iter().zip(derivs.iter()) {
        acc += Float::with_val(p, c * d);
    }
    Ok(acc)
}

/// d/du of L4 applied to `target`, by a central difference of width `eta`.
pub fn vanhove_l4_slope(target: ParamKind, u: &Float, eta: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let a = vanhove_apply(VanhoveOp::L4, target, &Float::with_val(p, u + eta), ctx)?;
    let b = vanhove_apply(VanhoveOp::L4, target, &Float::with_val(p, u - eta), ctx)?;
    Ok((a - b) / Float::with_val(p, eta * 2u32))
}

/// The triple integral of Zudilin type with exponent n, by tensor tanh-sinh.
pub fn zudilin_triple(n: u32, max_level: u32) -> Result<MultiEstimate> {
    let f = |pt: &[(f64, f64)]| -> f64 {
        let ((x, omx), (y, omy), (z, omz)) = (pt[0], pt[1], pt[2]);
        // 1 - x(1 - y(1-z)) = (1-x) + x y (1-z)
        let d = omx + x * y * omz;
        let base = (x * z * omz).powi(n as i32);
        base / d.powf(2.0 / 3.0) / (x.powf(2.0 / 3.0) * omx.powf(1.0 / 6.0)) / (y.powf(2.0 / 3.0) * omy.powf(1.0 / 3.0))
            / (z.sqrt() * omz.powf(2.0 / 3.0))
    };
    crate::quad::tensor_tanh_sinh(f, 3, max_level, 3.0)
}

/// (1/pi^4) int_[0,pi]^4 dphi / (4 - sum cos), by shifted-lattice QMC.
pub fn w4_qmc(points: u64, shifts: u32, seed: u64) -> Result<MultiEstimate> {
    let pi = std::f64::consts::PI;
    let r = integrate_multidim(
        |phi| {
            // 4 - sum cos = 2 sum sin^2(phi/2), exact near the corner
            let s: f64 = phi.iter().map(|f| (f / 2.0).sin().powi(2)).sum();
            1.0 / (2.0 * s)
        },
        &[0.0; 4],
        &[pi; 4],
        MultiMethod::Qmc { points, shifts, corner_power: 2, seed },
        3,
    )?;
    let v = pi.powi(4);
    Ok(MultiEstimate { value: r.value / v, error: r.error / v, evaluations: r.evaluations })
}

/// (1/pi^3) int_[0,pi]^3 dphi / (3 - x sum cos), by shifted-lattice QMC.
pub fn w3_qmc(x: f64, points: u64, shifts: u32, seed: u64) -> Result<MultiEstimate> {
    let pi = std::f64::consts::PI;
    let r = integrate_multidim(
        |phi| {
            let s: f64 = phi.iter().map(|f| (f / 2.0).sin().powi(2)).sum();
            1.0 / (3.0 * (1.0 - x) + 2.0 * x * s)
        },
        &[0.0; 3],
        &[pi; 3],
        MultiMethod::Qmc { points, shifts, corner_power: 2, seed },
        3,
    )?;
    let v = pi.powi(3);
    Ok(MultiEstimate { value: r.value / v, error: r.error / v, evaluations: r.evaluations })
}
