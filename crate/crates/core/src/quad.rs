//! Double-exponential quadrature (tanh-sinh, exp-sinh) and low-precision
//! multidimensional rules.

use crate::error::{Error, Result};
use crate::mpcore::PrecisionContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::Float;

/// Behaviour of the integrand at one end of the interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Endpoint {
    Smooth,
    /// f ~ d^alpha with alpha > -1, d the distance to the endpoint.
    Algebraic(f64),
    Logarithmic,
    /// f ~ e^(-c x) at infinity.
    ExpDecay(f64),
    /// f ~ x^(-beta) at infinity, beta > 1.
    AlgebraicDecay(f64),
}

impl Endpoint {
    fn finite_alpha(self) -> Result<f64> {
        match self {
            Endpoint::Smooth => Ok(0.0),
            Endpoint::Logarithmic => Ok(-0.1),
            Endpoint::Algebraic(a) if a > -1.0 => Ok(a.min(0.0)),
            other => Err(Error::Domain(format!("{other:?} is not a finite-endpoint class"))),
        }
    }
}

/// A quadrature node with its exact distances to both ends.
#[derive(Clone, Debug)]
pub struct Point {
    pub x: Float,
    /// x - a
    pub left: Float,
    /// b - x; `None` on a semi-infinite interval.
    pub right: Option<Float>,
}

#[derive(Clone, Debug)]
pub struct IntegrandSpec {
    pub a: Float,
    /// `None` means +infinity.
    pub b: Option<Float>,
    pub left: Endpoint,
    pub right: Endpoint,
}

impl IntegrandSpec {
    pub fn finite(a: Float, b: Float, left: Endpoint, right: Endpoint) -> Self {
        IntegrandSpec { a, b: Some(b), left, right }
    }

    pub fn semi_infinite(a: Float, left: Endpoint, right: Endpoint) -> Self {
        IntegrandSpec { a, b: None, left, right }
    }
}

const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 13;

/// Accept a level once the level-to-level change, relative to the L1 size of
/// the integrand, is below tol^0.6; tanh-sinh roughly doubles its digits per level.
fn converged(diff: &Float, scale: &Float, work_bits: u32, level: u32) -> bool {
    if level < MIN_LEVEL {
        return false;
    }
    if scale.is_zero() {
        return true;
    }
    let rel = Float::with_val(diff.prec(), diff / scale);
    if rel.is_zero() {
        return true;
    }
    let lg = rel.log2().to_f64();
    lg <= -(work_bits as f64) * 0.6
}

fn level_loop<G>(mut level_sum: G, ctx: &PrecisionContext) -> Result<Float>
where
    G: FnMut(u32) -> Result<(Float, Float)>,
{
    let p = ctx.prec();
    let mut sum = Float::with_val(p, 0);
    let mut abs_sum = Float::with_val(p, 0);
    let mut prev: Option<Float> = None;
    let mut last_diff = None;
    for level in 0..=MAX_LEVEL {
        let (s, a) = level_sum(level)?;
        sum += s;
        abs_sum += a;
        let h = Float::with_val(p, 1) >> level;
        let est = Float::with_val(p, &sum * &h);
        let scale = Float::with_val(p, &abs_sum * &h);
        if let Some(pv) = prev {
            let diff = Float::with_val(p, &est - &pv).abs();
            if converged(&diff, &scale, ctx.work_bits, level) {
                return Ok(est);
            }
            last_diff = Some(Float::with_val(53, diff / scale).to_f64());
        }
        prev = Some(est);
    }
    Err(Error::NoConvergence(format!("quadrature level cap reached (last relative change {:?})", last_diff)))
}

/// t beyond which the node distance d satisfies d^(1+alpha) < 2^-bits.
fn tanh_sinh_tmax(width: f64, alpha: f64, bits: u32) -> f64 {
    let need = bits as f64 * std::f64::consts::LN_2 / (1.0 + alpha) + 12.0 + (2.0 * width).ln().max(0.0);
    (need / std::f64::consts::PI).asinh() + 0.05
}

/// Tanh-sinh on an interval of the given width; `g` receives the exact
/// distances (left, right) to the two ends.
pub fn tanh_sinh<G>(g: G, width: &Float, left: Endpoint, right: Endpoint, ctx: &PrecisionContext) -> Result<Float>
where
    G: Fn(&Float, &Float) -> Result<Float>,
{
    let p = ctx.prec();
    let bits = ctx.prec();
    let wf = width.to_f64();
    let t_left = tanh_sinh_tmax(wf, left.finite_alpha()?, bits);
    let t_right = tanh_sinh_tmax(wf, right.finite_alpha()?, bits);
    let half_pi = Float::with_val(p, Constant::Pi) / 2u32;
    let node = |t: &Float| -> Result<(Float, Float)> {
        // returns (w*f, |w*f|) at the node for |t|, reflected by sign
        let neg = *t < 0;
        let ta = Float::with_val(p, t.abs_ref());
        let (sh, ch) = ta.sinh_cosh(Float::new(p));
        let u = Float::with_val(p, &sh * &half_pi);
        let e = Float::with_val(p, -(u * 2u32)).exp();
        let onep = Float::with_val(p, 1 + &e);
        let near = Float::with_val(p, width * &e) / &onep;
        let far = Float::with_val(p, width / &onep);
        let w = Float::with_val(p, width * &ch) * &half_pi * 2u32 * &e / Float::with_val(p, onep.square_ref());
        let v = if neg { g(&near, &far)? } else { g(&far, &near)? };
        if !v.is_finite() {
            return Err(Error::Domain(format!("integrand not finite at t = {}", t.to_f64())));
        }
        let wv = w * v;
        let a = Float::with_val(p, wv.abs_ref());
        Ok((wv, a))
    };
    level_loop(
        |level| {
            let h = 1.0 / (1u64 << level) as f64;
            let step = if level == 0 { 1 } else { 2 };
            let start = if level == 0 { 0i64 } else { 1 };
            let mut s = Float::with_val(p, 0);
            let mut a = Float::with_val(p, 0);
            let kmax = (t_right / h).floor() as i64;
            let kmin = -((t_left / h).floor() as i64);
            let mut k = start;
            while k <= kmax {
                let t = Float::with_val(p, k) >> level;
                let (v, av) = node(&t)?;
                s += v;
                a += av;
                k += step;
            }
            let mut k = -1;
            while k >= kmin {
                let t = Float::with_val(p, k) >> level;
                let (v, av) = node(&t)?;
                s += v;
                a += av;
                k -= step;
            }
            Ok((s, a))
        },
        ctx,
    )
}

/// Exp-sinh on (0, inf) for a tail decaying like exp(-rate x); `g` receives
/// the distance from the left end. No pre-flight probe, so oscillating
/// integrands are fine.
pub fn exp_sinh<G>(g: G, left: Endpoint, rate: f64, ctx: &PrecisionContext) -> Result<Float>
where
    G: Fn(&Float) -> Result<Float>,
{
    let p = ctx.prec();
    let bits = ctx.prec() as f64;
    let alpha = left.finite_alpha()?;
    let ln2 = std::f64::consts::LN_2;
    let half_pi_f = std::f64::consts::FRAC_PI_2;
    let t_min = -((bits * ln2 / (1.0 + alpha) + 12.0) / half_pi_f).asinh() - 0.05;
    let mut x_max = (bits * ln2 + 40.0) / rate;
    for _ in 0..3 {
        x_max = (bits * ln2 + 40.0 + 4.0 * x_max.max(1.0).ln()) / rate;
    }
    let t_max = (x_max.ln() / half_pi_f).asinh() + 0.05;
    let half_pi = Float::with_val(p, Constant::Pi) / 2u32;
    let node = |t: &Float| -> Result<(Float, Float)> {
        let (sh, ch) = Float::with_val(p, t).sinh_cosh(Float::new(p));
        let x = Float::with_val(p, &sh * &half_pi).exp();
        let w = Float::with_val(p, &ch * &half_pi) * &x;
        let v = g(&x)?;
        if !v.is_finite() {
            return Err(Error::Domain(format!("integrand not finite at x = {}", x.to_f64())));
        }
        let wv = w * v;
        let a = Float::with_val(p, wv.abs_ref());
        Ok((wv, a))
    };
    level_loop(
        |level| {
            let h = 1.0 / (1u64 << level) as f64;
            let kmin = (t_min / h).ceil() as i64;
            let kmax = (t_max / h).floor() as i64;
            let mut s = Float::with_val(p, 0);
            let mut a = Float::with_val(p, 0);
            for k in kmin..=kmax {
                if level > 0 && k % 2 == 0 {
                    continue;
                }
                let t = Float::with_val(p, k) >> level;
                let (v, av) = node(&t)?;
                s += v;
                a += av;
            }
            Ok((s, a))
        },
        ctx,
    )
}

fn probe<F>(f: &F, spec: &IntegrandSpec, ctx: &PrecisionContext) -> Result<()>
where
    F: Fn(&Point) -> Result<Float>,
{
    let p = ctx.prec();
    for e in [1e-3f64, 1e-6, 1e-9] {
        let left = Float::with_val(p, e);
        let x = Float::with_val(p, &spec.a + &left);
        let right = spec.b.as_ref().map(|b| Float::with_val(p, b - &x));
        let v = f(&Point { x, left, right })?;
        if !v.is_finite() {
            return Err(Error::Domain(format!("probe near left end not finite ({e})")));
        }
        if let Some(b) = &spec.b {
            let right = Float::with_val(p, e);
            let x = Float::with_val(p, b - &right);
            let left = Float::with_val(p, &x - &spec.a);
            let v = f(&Point { x, left, right: Some(right) })?;
            if !v.is_finite() {
                return Err(Error::Domain(format!("probe near right end not finite ({e})")));
            }
        }
    }
    if spec.b.is_none() {
        if let Endpoint::ExpDecay(c) = spec.right {
            let at = |x: f64| -> Result<f64> {
                let xf = Float::with_val(p, x);
                let left = Float::with_val(p, &xf - &spec.a);
                Ok(f(&Point { x: xf, left, right: None })?.to_f64().abs())
            };
            let x1 = spec.a.to_f64() + 5.0 / c;
            let (v1, v2) = (at(x1)?, at(x1 + 40.0 / c)?);
            if v1 > 0.0 && v2 > v1 * 1e-6 {
                return Err(Error::Domain(format!("declared exp_decay({c}) but tail does not decay")));
            }
        }
    }
    Ok(())
}

/// Integrates f over the spec's interval with the rule its endpoint classes call for.
pub fn integrate_de<F>(f: F, spec: &IntegrandSpec, ctx: &PrecisionContext) -> Result<Float>
where
    F: Fn(&Point) -> Result<Float>,
{
    probe(&f, spec, ctx)?;
    let p = ctx.prec();
    match (&spec.b, spec.right) {
        (Some(b), _) => {
            let width = Float::with_val(p, b - &spec.a);
            tanh_sinh(
                |l, r| {
                    let x = Float::with_val(p, &spec.a + l);
                    f(&Point { x, left: l.clone(), right: Some(r.clone()) })
                },
                &width,
                spec.left,
                spec.right,
                ctx,
            )
        }
        (None, Endpoint::ExpDecay(c)) => exp_sinh(
            |l| {
                let x = Float::with_val(p, &spec.a + l);
                f(&Point { x, left: l.clone(), right: None })
            },
            spec.left,
            c,
            ctx,
        ),
        (None, Endpoint::AlgebraicDecay(beta)) => {
            if beta <= 1.0 {
                return Err(Error::Domain(format!("algebraic decay {beta} is not integrable")));
            }
            // x = a + s/(1-s)
            let one = Float::with_val(p, 1);
            tanh_sinh(
                |s, oms| {
                    let l = Float::with_val(p, s / oms);
                    let x = Float::with_val(p, &spec.a + &l);
                    let v = f(&Point { x, left: l, right: None })?;
                    Ok(v / Float::with_val(p, oms.square_ref()))
                },
                &one,
                spec.left,
                Endpoint::Algebraic((beta - 2.0).min(0.0)),
                ctx,
            )
        }
        (None, other) => Err(Error::Domain(format!("{other:?} cannot describe an infinite end"))),
    }
}

/// Outcome of a low-precision multidimensional rule.
#[derive(Clone, Copy, Debug)]
pub struct MultiEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
}

pub const MULTIDIM_EVAL_CAP: u64 = 10_000_000;

/// Randomly shifted Kronecker lattice on a box. With `corner_power` = q the
/// coordinates are x = lo + (hi-lo) v^q, which softens a singularity at the
/// lower corner.
pub fn qmc_box<F>(f: F, lo: &[f64], hi: &[f64], points: u64, shifts: u32, corner_power: u32, seed: u64) -> Result<MultiEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let d = lo.len();
    if !(1..=8).contains(&d) || hi.len() != d {
        return Err(Error::Domain("qmc box dimension".into()));
    }
    let total = points * shifts as u64;
    if total > MULTIDIM_EVAL_CAP {
        return Err(Error::Domain(format!("{total} evaluations exceed the cap")));
    }
    // generalized golden ratio for dimension d
    let mut phi = 2.0f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    let alpha: Vec<f64> = (1..=d).map(|i| (1.0 / phi.powi(i as i32)).fract()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = corner_power.max(1) as i32;
    let vol: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
    let mut estimates = Vec::with_capacity(shifts as usize);
    for _ in 0..shifts {
        let shift: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
        let chunk = 1u64 << 16;
        let nchunks = points.div_ceil(chunk);
        use rayon::prelude::*;
        let partial: Vec<f64> = (0..nchunks)
            .into_par_iter()
            .map(|c| {
                let mut v = vec![0.0; d];
                let mut x = vec![0.0; d];
                let mut s = 0.0;
                let end = ((c + 1) * chunk).min(points);
                for n in c * chunk..end {
                    let mut jac = 1.0;
                    for i in 0..d {
                        v[i] = (shift[i] + (n as f64 + 1.0) * alpha[i]).fract();
                        let vq = v[i].powi(q);
                        x[i] = lo[i] + (hi[i] - lo[i]) * vq;
                        jac *= q as f64 * vq / v[i].max(f64::MIN_POSITIVE);
                    }
                    s += f(&x) * jac;
                }
                s
            })
            .collect();
        let s: f64 = partial.iter().sum();
        estimates.push(s / points as f64 * vol);
    }
    let m = estimates.len() as f64;
    let mean = estimates.iter().sum::<f64>() / m;
    let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (m - 1.0).max(1.0);
    Ok(MultiEstimate { value: mean, error: (var / m).sqrt(), evaluations: total })
}

/// One-dimensional tanh-sinh nodes on [0,1] as (x, 1-x, weight).
pub fn tanh_sinh_nodes_f64(level: u32, t_max: f64) -> Vec<(f64, f64, f64)> {
    let h = 1.0 / (1u64 << level) as f64;
    let n = (t_max / h).floor() as i64;
    let hp = std::f64::consts::FRAC_PI_2;
    let mut out = Vec::with_capacity(2 * n as usize + 1);
    for k in -n..=n {
        let t = k as f64 * h;
        let u = hp * t.abs().sinh();
        let e = (-2.0 * u).exp();
        let near = e / (1.0 + e);
        let far = 1.0 / (1.0 + e);
        let w = h * std::f64::consts::PI * t.cosh() * e / ((1.0 + e) * (1.0 + e));
        if near == 0.0 || w == 0.0 {
            continue;
        }
        if t < 0.0 {
            out.push((near, far, w));
        } else {
            out.push((far, near, w));
        }
    }
    out
}

/// Tensor-product tanh-sinh on the unit cube; f receives (x, 1-x) per axis.
/// Error is estimated from the previous level.
pub fn tensor_tanh_sinh<F>(f: F, dims: usize, max_level: u32, t_max: f64) -> Result<MultiEstimate>
where
    F: Fn(&[(f64, f64)]) -> f64 + Sync,
{
    use rayon::prelude::*;
    if !(1..=4).contains(&dims) {
        return Err(Error::Domain("tensor rule dimension".into()));
    }
    let mut prev: Option<f64> = None;
    let mut evals = 0u64;
    let mut last = None;
    for level in 1..=max_level {
        let nodes = tanh_sinh_nodes_f64(level, t_max);
        let n = nodes.len();
        let count = (n as u64).pow(dims as u32);
        if evals + count > MULTIDIM_EVAL_CAP {
            break;
        }
        evals += count;
        let value: f64 = (0..n)
            .into_par_iter()
            .map(|i0| {
                let mut pt = vec![(0.0, 0.0); dims];
                let mut idx = vec![0usize; dims];
                idx[0] = i0;
                let inner = (n as u64).pow(dims as u32 - 1);
                let mut s = 0.0;
                for m in 0..inner {
                    let mut r = m;
                    for d in 1..dims {
                        idx[d] = (r % n as u64) as usize;
                        r /= n as u64;
                    }
                    let mut w = 1.0;
                    for d in 0..dims {
                        let (x, c, wd) = nodes[idx[d]];
                        pt[d] = (x, c);
                        w *= wd;
                    }
                    let v = f(&pt);
                    if v.is_finite() {
                        s += w * v;
                    }
                }
                s
            })
            .collect::<Vec<f64>>()
            .iter()
            .sum();
        if let Some(p) = prev {
            last = Some(MultiEstimate { value, error: (value - p).abs(), evaluations: evals });
        }
        prev = Some(value);
    }
    last.ok_or_else(|| Error::NoConvergence("tensor rule did not reach two levels".into()))
}

/// Convenience dispatcher for the smoke-test integrals.
#[derive(Clone, Copy, Debug)]
pub enum MultiMethod {
    /// shifted lattice with the corner-softening power
    Qmc { points: u64, shifts: u32, corner_power: u32, seed: u64 },
    /// tensor tanh-sinh on the unit cube up to this level
    Tensor { max_level: u32 },
}

pub fn integrate_multidim<F>(f: F, lo: &[f64], hi: &[f64], method: MultiMethod, target_digits: u32) -> Result<MultiEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if target_digits > 6 {
        return Err(Error::Domain("multidimensional rules are limited to 6 digits".into()));
    }
    match method {
        MultiMethod::Qmc { points, shifts, corner_power, seed } => qmc_box(f, lo, hi, points, shifts, corner_power, seed),
        MultiMethod::Tensor { max_level } => {
            let d = lo.len();
            let vol: f64 = lo.iter().zip(hi).map(|(a, b)| b - a).product();
            let r = tensor_tanh_sinh(
                |pt| {
                    let x: Vec<f64> = pt.iter().enumerate().map(|(i, (u, _))| lo[i] + (hi[i] - lo[i]) * u).collect();
                    f(&x)
                },
                d,
                max_level,
                3.2,
            )?;
            Ok(MultiEstimate { value: r.value * vol, error: r.error * vol, evaluations: r.evaluations })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::digits_agreement;

    #[test]
    fn inverse_sqrt_singularity() {
        let ctx = PrecisionContext::for_digits(40);
        let spec = IntegrandSpec::finite(ctx.real(0), ctx.real(1), Endpoint::Smooth, Endpoint::Algebraic(-0.5));
        let v = integrate_de(|pt| Ok(pt.right.as_ref().unwrap().clone().sqrt().recip()), &spec, &ctx).unwrap();
        assert!(digits_agreement(&v, &ctx.real(2)) >= 40);
    }

    #[test]
    fn lorentzian_tail() {
        let ctx = PrecisionContext::for_digits(40);
        let spec = IntegrandSpec::semi_infinite(ctx.real(0), Endpoint::Smooth, Endpoint::AlgebraicDecay(2.0));
        let v = integrate_de(|pt| Ok((Float::with_val(ctx.prec(), pt.x.square_ref()) + 1u32).recip()), &spec, &ctx).unwrap();
        assert!(digits_agreement(&v, &(ctx.pi() / 2u32)) >= 40);
    }

    #[test]
    fn exp_decay_gamma_integral() {
        // int_0^inf t^(-1/2) e^(-t) dt = sqrt(pi)
        let ctx = PrecisionContext::for_digits(40);
        let spec = IntegrandSpec::semi_infinite(ctx.real(0), Endpoint::Algebraic(-0.5), Endpoint::ExpDecay(1.0));
        let v = integrate_de(|pt| Ok(Float::with_val(ctx.prec(), (-pt.x.clone()).exp()) / pt.x.clone().sqrt()), &spec, &ctx).unwrap();
        assert!(digits_agreement(&v, &ctx.pi().sqrt()) >= 40);
    }

    #[test]
    fn volume_of_box() {
        let pi = std::f64::consts::PI;
        let r = integrate_multidim(|_| 1.0, &[0.0; 4], &[pi; 4], MultiMethod::Qmc { points: 1000, shifts: 4, corner_power: 1, seed: 1 }, 3).unwrap();
        assert!((r.value / pi.powi(4) - 1.0).abs() < 1e-9);
    }
}
