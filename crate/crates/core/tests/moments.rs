mod common;

use common::{assert_digits, ctx, i0_series, k0_integral};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use sunrise_core::hyper::{pfq, Argument, PfqSpec};
use sunrise_core::meijer::p4_over_sqrtu;
use sunrise_core::moments::*;
use sunrise_core::mpcore::{rat, vanishing_digits, Complex, PrecisionContext};

fn pi_sq(c: &PrecisionContext) -> Float {
    Float::with_val(c.prec(), c.pi().square_ref())
}

fn g3(c: &PrecisionContext, k: i32) -> Float {
    let p = c.prec();
    let g = Float::with_val(p, Float::with_val(p, 1) / 3u32).gamma() / c.pi().sqrt();
    Float::with_val(p, g.pow(k))
}

#[test]
fn elementary_moments() {
    let c = ctx(30);
    assert_digits(&ikm_plain(0, 1, 0, &c).unwrap(), &(c.pi() / 2u32), 30);
    assert_digits(&ikm_plain(0, 2, 0, &c).unwrap(), &(pi_sq(&c) / 4u32), 30);
    assert_digits(&ikm_plain(0, 2, 1, &c).unwrap(), &(c.real(1) / 2u32), 30);
    assert_digits(&ikm_plain(1, 3, 1, &c).unwrap(), &(pi_sq(&c) / 16u32), 30);
}

#[test]
fn divergent_moments_rejected() {
    let c = ctx(20);
    assert!(ikm_plain(2, 2, 1, &c).is_err());
    assert!(ikm_plain(3, 0, 1, &c).is_err());
    assert!(ikm(&MomentSpec::new(1, 5, 1).with_weight(&[]), &c).is_err());
}

#[test]
fn ikm33_against_ikm15() {
    let c = ctx(30);
    let a = ikm_plain(3, 3, 1, &c).unwrap() * pi_sq(&c);
    let b = ikm_plain(1, 5, 1, &c).unwrap() * 3u32;
    assert_digits(&a, &b, 30);
}

#[test]
fn sum_rules_vanish() {
    let c = ctx(30);
    for (a, b) in [(1, 5), (2, 4)] {
        let v = ikm(&MomentSpec::new(a, b, 1).with_weight(&[2, -85, 72]), &c).unwrap();
        let scale = ikm_plain(a, b, 1, &c).unwrap();
        assert!(vanishing_digits(&v, &scale) >= 30, "IKM({a},{b}): {v}");
    }
}

#[test]
fn ikm14_gamma_product() {
    let c = ctx(30);
    let lhs = ikm_plain(1, 4, 1, &c).unwrap() * 240u32 * c.sqrt_of(5);
    let g = |k: u32| Float::with_val(c.prec(), Float::with_val(c.prec(), k) / 15u32).gamma();
    assert_digits(&lhs, &(g(1) * g(2) * g(4) * g(8)), 30);
}

#[test]
fn ikm231_at_half_is_3f2() {
    let c = ctx(30);
    let x = c.real(1) / 2u32;
    let v = param_moment(ParamKind::Ikm231X, &x, &c).unwrap();
    // u = 1/4: w = -108 u/(4-u)^3 = -64/125
    let z = c.rat(&rat(-64, 125));
    let spec = PfqSpec::new(vec![rat(1, 3), rat(1, 2), rat(2, 3)], vec![rat(1, 1), rat(1, 1)], Argument::Real(z)).unwrap();
    let want = pfq(&spec, &c).unwrap() * pi_sq(&c) / 15u32;
    assert_digits(&v, &want, 30);
}

#[test]
fn broadhurst_k_i2k2() {
    let c = ctx(30);
    let v = param_moment(ParamKind::KI2K2, &c.real(4), &c).unwrap();
    let p = c.prec();
    let two = Float::with_val(p, Float::with_val(p, 2).pow(Float::with_val(p, 20) / 3u32));
    assert_digits(&v, &(c.pi() / two * g3(&c, 6)), 30);
}

#[test]
fn factor_three() {
    let c = ctx(30);
    let a = param_moment(ParamKind::IIK3, &c.real(4), &c).unwrap();
    let b = param_moment(ParamKind::KI2K2, &c.real(4), &c).unwrap() * 3u32;
    assert_digits(&a, &b, 30);
}

/// K(l) = pi/(2 agm(1, sqrt(1-l))) on the principal branch.
fn k_agm(l: &Complex, c: &PrecisionContext) -> Complex {
    let p = c.prec();
    let mut a = Complex::from_real(Float::with_val(p, 1));
    let mut b = (-l.clone()).add_real(&c.real(1)).sqrt();
    for _ in 0..200 {
        let na = (&a + &b).scale(&(c.real(1) / 2u32));
        let g1 = (&a * &b).sqrt();
        // right choice of the root: the one closer to the new mean
        let g2 = -g1.clone();
        let nb = if (&na - &g1).abs() <= (&na - &g2).abs() { g1 } else { g2 };
        a = na;
        b = nb;
    }
    a.recip().scale(&(c.pi() / 2u32))
}

#[test]
fn bailey_k_product() {
    let c = ctx(30);
    let v = param_moment(ParamKind::BaileyIk, &c.real(1), &c).unwrap();
    let half = c.real(1) / 2u32;
    let im = c.sqrt_of(3) / 2u32;
    let kp = k_agm(&Complex::new(half.clone(), im.clone()), &c);
    let km = k_agm(&Complex::new(half, -im), &c);
    let prod = &kp * &km;
    assert_digits(&v, &(prod.re / 2u32), 30);
}

#[test]
fn watson_endpoints() {
    let c = ctx(30);
    // with W_d(x) = int e^(-dt) I0(xt)^d dt the value at 0 is 1/d
    assert_digits(&watson(4, &c.real(0), &c).unwrap(), &(c.real(1) / 4u32), 30);
    assert_digits(&watson(3, &c.real(0), &c).unwrap(), &(c.real(1) / 3u32), 30);
    let w = watson(4, &c.real(1), &c).unwrap();
    assert_digits(&w, &(ikm_plain(3, 3, 1, &c).unwrap() * 4u32 / pi_sq(&c)), 30);
    assert!(watson(4, &c.real(1.5), &c).is_err());
    assert!(watson(5, &c.real(0.5), &c).is_err());
}

#[test]
fn w4_bessel_form() {
    let c = ctx(30);
    for x in [0.0, 0.5, 1.0] {
        let a = watson(4, &c.real(x), &c).unwrap();
        assert_digits(&a, &w4_bessel(&c.real(x), &c).unwrap(), 30);
    }
}

#[test]
fn joyce_zucker_forms() {
    let c = ctx(30);
    let x = c.real(0.7);
    assert_digits(&w3s_closed(JzForm::Jz1838, &x, &c).unwrap(), &w3s_closed(JzForm::JzK, &x, &c).unwrap(), 30);
    let h = c.real(1) / 2u32;
    assert_digits(&w3s_closed(JzForm::Jz1838, &h, &c).unwrap(), &watson(3, &h, &c).unwrap(), 30);
    let small = w3s_closed(JzForm::JzK, &c.real(1e-3), &c).unwrap();
    let d = Float::with_val(c.prec(), small - watson(3, &c.real(0), &c).unwrap()).abs();
    assert!(d < 1e-5, "{d}");
    assert!(w3s_closed(JzForm::JzK, &c.real(0), &c).is_err());
}

#[test]
fn jz_parameter_in_unit_interval() {
    let c = ctx(20);
    for x in [0.05, 0.3, 0.7, 0.99] {
        let p = jz_p(&c.real(x), &c);
        assert!(p > 0 && p < 1);
    }
}

#[test]
fn kluyver_density_normalization() {
    let c = ctx(20);
    let one = c.real(1);
    let v = p4_over_sqrtu(&one, &c).unwrap() * Float::with_val(c.prec(), c.pi().pow(4u32)) / 6u32;
    assert_digits(&v, &param_moment(ParamKind::Mb1Lhs, &one, &c).unwrap(), 20);
}

#[test]
fn kluyver_density_near_four() {
    let c = ctx(20);
    let p = c.prec();
    let u = Float::with_val(p, 4 - Float::with_val(p, 1e-4));
    let v = p4_over_sqrtu(&u, &c).unwrap();
    let two = Float::with_val(p, Float::with_val(p, 2).pow(Float::with_val(p, 14) / 3u32));
    let limit = c.sqrt_of(3) * 3u32 / (two * pi_sq(&c)) * g3(&c, 6);
    let d = Float::with_val(p, &v - &limit).abs();
    assert!(d < 1e-3, "{v} vs {limit}");
}

#[test]
fn kluyver_density_near_zero() {
    let c = ctx(20);
    let p = c.prec();
    let u = c.real(1e-6);
    let v = p4_over_sqrtu(&u, &c).unwrap();
    let lead = -Float::with_val(p, u.ln_ref()) * 3u32 / (pi_sq(&c) * 4u32);
    let d = Float::with_val(p, &v - &lead).abs();
    assert!(d < 1, "{v} vs {lead}");
    // the O(1) part settles to a constant, so the log slope shows up in differences
    let w = p4_over_sqrtu(&c.real(1e-8), &c).unwrap();
    let slope = Float::with_val(p, w - &v) / Float::with_val(p, Float::with_val(p, 100).ln());
    let want = c.real(3) / (pi_sq(&c) * 4u32);
    assert!(Float::with_val(p, &slope - &want).abs() < 1e-5, "{slope} vs {want}");
}

/// Closed walks of length 2n on Z^4 by dynamic programming over positions.
fn closed_walks(steps: u32) -> Integer {
    use std::collections::HashMap;
    let mut cur: HashMap<[i32; 4], Integer> = HashMap::new();
    cur.insert([0; 4], Integer::from(1));
    for _ in 0..steps {
        let mut next: HashMap<[i32; 4], Integer> = HashMap::new();
        for (pos, w) in &cur {
            for i in 0..4 {
                for d in [-1, 1] {
                    let mut q = *pos;
                    q[i] += d;
                    *next.entry(q).or_insert_with(Integer::new) += w;
                }
            }
        }
        cur = next;
    }
    cur.remove(&[0; 4]).unwrap_or_default()
}

#[test]
fn glasser_montaldi_exact() {
    // torus average of (sum cos)^(2n) = walks(2n)/2^(2n), and the 1/4 normalization in front
    for n in 0..=4u32 {
        let avg = Rational::from((closed_walks(2 * n), Integer::from(1) << (2 * n)));
        let want = avg / Rational::from(Integer::from(4u32).pow(2 * n)) / 4u32;
        assert_eq!(even_cos_moment_exact(n), want, "n = {n}");
        assert_eq!(glasser_montaldi_rhs(n), want, "n = {n}");
    }
    assert_eq!(even_cos_moment_exact(1), rat(1, 32));
}

#[test]
fn ikm13_closed_forms() {
    let c = ctx(30);
    assert_digits(&ikm13_closed(0, &c), &(pi_sq(&c) / 16u32), 30);
    for n in [0, 1, 3] {
        assert_digits(&ikm13_closed(n, &c), &ikm_plain(1, 3, 2 * n + 1, &c).unwrap(), 30);
    }
}

#[test]
fn neumann_addition_formulas() {
    let c = ctx(30);
    for t in [0.5, 1.0, 2.0] {
        let tf = c.real(t);
        let i0 = i0_series(&tf);
        let k0 = k0_integral(&tf);
        assert_digits(&neumann_addition(false, &tf, &c).unwrap(), &Float::with_val(c.prec(), i0.square_ref()), 30);
        assert_digits(&neumann_addition(true, &tf, &c).unwrap(), &(i0 * k0), 30);
    }
}

#[test]
fn regularized_moments() {
    let c = ctx(30);
    let a = ikm(&MomentSpec::regularized(Regularizer::Quarter), &c).unwrap() * pi_sq(&c) / 3u32;
    assert_digits(&a, &ikm_plain(1, 5, 3, &c).unwrap(), 30);
    let b = ikm(&MomentSpec::regularized(Regularizer::QuarterSixteenth), &c).unwrap() * pi_sq(&c) / 3u32;
    assert_digits(&b, &ikm_plain(1, 5, 5, &c).unwrap(), 30);
    let mut bad = MomentSpec::regularized(Regularizer::Quarter);
    bad.n = 5;
    assert!(ikm(&bad, &c).is_err());
}

#[test]
fn mellin_transforms() {
    let c = ctx(30);
    for (v, s) in [(MellinVariant::Plain, rat(3, 4)), (MellinVariant::Shifted, rat(3, 2))] {
        let (quad, closed) = mellin_2f1(v, &rat(-1, 3), &s, &c).unwrap();
        // closed form rebuilt from MPFR gamma
        let g = |q: Rational| Float::with_val(c.prec(), c.rat(&q).gamma());
        let nu = rat(-1, 3);
        let want = match v {
            MellinVariant::Plain => {
                Float::with_val(c.prec(), g(s.clone()).square_ref()) / g(Rational::from(&s - &nu)) / g(Rational::from(&s + &nu) + 1u32)
            }
            MellinVariant::Shifted => {
                g(s.clone()) * g(Rational::from(&s + 1u32)) / g(Rational::from(&s - &nu) + 1u32) / g(Rational::from(&s + &nu) + 1u32)
            }
        };
        assert_digits(&closed, &want, 30);
        assert_digits(&quad, &want, 30);
    }
}

#[test]
fn central_weights_are_exact() {
    // second derivative, 3-point stencil
    assert_eq!(central_weights(2, 1), vec![rat(1, 1), rat(-2, 1), rat(1, 1)]);
    // first derivative, 5-point stencil
    assert_eq!(central_weights(1, 2), vec![rat(1, 12), rat(-2, 3), rat(0, 1), rat(2, 3), rat(-1, 12)]);
}

#[test]
fn vanhove_operators() {
    let c = ctx(60);
    let half = c.real(1) / 2u32;
    for t in [ParamKind::Mb1Lhs, ParamKind::Mb2Lhs] {
        let v = vanhove_apply(VanhoveOp::L3, t, &half, &c).unwrap();
        assert!(v.clone().abs() < 1e-10, "{t:?}: {v}");
    }
    let v = vanhove_apply(VanhoveOp::L4, ParamKind::Ikm15Param, &half, &c).unwrap();
    assert!(Float::with_val(c.prec(), &v + 7.5f64).abs() < 1e-10, "{v}");
}

#[test]
fn vanhove_l4_slope_at_one() {
    let c = ctx(60);
    let eta = c.real(1e-2);
    // u = 1 is singular for L4; the slope straddles it with points at 1 +- eta
    let s = vanhove_l4_slope(ParamKind::Ikm15Param, &c.real(1), &eta, &c);
    let s = s.unwrap();
    assert!(s.clone().abs() < 1e-8, "{s}");
}

#[test]
fn vanhove_guards() {
    let c = ctx(5);
    assert!(c.digits() < 40);
    assert!(vanhove_apply(VanhoveOp::L3, ParamKind::Mb1Lhs, &c.real(0.5), &c).is_err());
    let c = ctx(60);
    assert!(vanhove_apply(VanhoveOp::L4, ParamKind::Ikm15Param, &c.real(1), &c).is_err());
}

#[test]
fn zudilin_triple_integrals() {
    let c = ctx(20);
    let pre = Float::with_val(c.prec(), Float::with_val(c.prec(), 2).pow(Float::with_val(c.prec(), 4) / 3u32)) * c.sqrt_of(3) / c.pi();
    let t0 = Float::with_val(c.prec(), &pre * ikm_plain(1, 5, 1, &c).unwrap() * 24u32).to_f64();
    let r0 = zudilin_triple(0, 9).unwrap().value;
    assert!(((r0 - t0) / t0).abs() < 1e-4, "{r0} vs {t0}");
    let t1 = (pre * (ikm_plain(1, 5, 1, &c).unwrap() * 32u32 - ikm_plain(1, 5, 3, &c).unwrap() * 256u32) / 21u32).to_f64();
    let r1 = zudilin_triple(1, 9).unwrap().value;
    assert!(((r1 - t1) / t1).abs() < 1e-3, "{r1} vs {t1}");
}

#[test]
fn watson_qmc_estimates() {
    let w = w4_qmc(1 << 16, 8, 7).unwrap();
    let c = ctx(20);
    let exact = watson(4, &c.real(1), &c).unwrap().to_f64();
    assert!((w.value - exact).abs() < 5e-2 * exact, "{} vs {exact}", w.value);
}
