mod common;

use common::{assert_digits, ctx};
use rug::Float;
use sunrise_core::moments::{w3_qmc, w3s_closed, w4_qmc, watson, JzForm};
use sunrise_core::quad::*;
use sunrise_core::specfun::bessel_i0_scaled;

#[test]
fn inverse_sqrt_endpoint() {
    let c = ctx(40);
    let spec = IntegrandSpec::finite(c.real(0), c.real(1), Endpoint::Smooth, Endpoint::Algebraic(-0.5));
    let v = integrate_de(|p: &Point| Ok(p.right.as_ref().unwrap().clone().recip_sqrt()), &spec, &c).unwrap();
    assert_digits(&v, &c.real(2), 40);
}

#[test]
fn algebraic_tail() {
    let c = ctx(40);
    let spec = IntegrandSpec::semi_infinite(c.real(0), Endpoint::Smooth, Endpoint::AlgebraicDecay(2.0));
    let v = integrate_de(|p: &Point| Ok((Float::with_val(c.prec(), p.x.square_ref()) + 1u32).recip()), &spec, &c).unwrap();
    assert_digits(&v, &(c.pi() / 2u32), 40);
}

#[test]
fn polynomial_exactness() {
    let c = ctx(40);
    let spec = IntegrandSpec::finite(c.real(0), c.real(1), Endpoint::Smooth, Endpoint::Smooth);
    for k in 0..=20u32 {
        let v = integrate_de(|p: &Point| Ok(Float::with_val(c.prec(), rug::ops::Pow::pow(&p.x, k))), &spec, &c).unwrap();
        assert_digits(&v, &(c.real(1) / (k + 1)), 40);
    }
}

#[test]
fn watson_exponential_form_at_forty_digits() {
    // int e^(-4t) I0(t)^4 dt, with I0 in scaled form, against the residue route 12/pi^4 IKM(1,5;1)
    let c = ctx(40);
    let spec = IntegrandSpec::semi_infinite(c.real(0), Endpoint::Smooth, Endpoint::AlgebraicDecay(2.0));
    let v = integrate_de(
        |p: &Point| {
            let i = bessel_i0_scaled(&p.x, &c)?;
            Ok(i.square().square())
        },
        &spec,
        &c,
    )
    .unwrap();
    let t = sunrise_core::meijer::mb_named_residues(
        sunrise_core::meijer::MbKernel::Phi,
        sunrise_core::meijer::Bracket::One,
        &sunrise_core::mpcore::rat(1, 4),
        &c,
        40,
    )
    .unwrap();
    let want = t * 12u32 / Float::with_val(c.prec(), rug::ops::Pow::pow(c.pi(), 4u32));
    assert_digits(&v, &want, 40);
    assert_digits(&v, &watson(4, &c.real(1), &c).unwrap(), 40);
}

#[test]
fn multidim_constant() {
    let pi = std::f64::consts::PI;
    let m = integrate_multidim(|_| 1.0, &[0.0; 4], &[pi; 4], MultiMethod::Qmc { points: 4096, shifts: 4, corner_power: 1, seed: 7 }, 3).unwrap();
    assert!((m.value / pi.powi(4) - 1.0).abs() < 1e-9, "{}", m.value);
}

#[test]
fn multidim_watson4_three_digits() {
    let c = ctx(20);
    let m = w4_qmc(1 << 20, 8, 20_240_611).unwrap();
    let w = watson(4, &c.real(1), &c).unwrap().to_f64();
    assert!((m.value - w).abs() < 0.5e-3 * w, "{} vs {w}", m.value);
}

#[test]
fn multidim_watson3_three_digits() {
    let c = ctx(20);
    let m = w3_qmc(1.0, 1 << 20, 8, 99).unwrap();
    let w = w3s_closed(JzForm::JzK, &c.real(1), &c).unwrap().to_f64();
    assert!((m.value - w).abs() < 0.5e-3 * w, "{} vs {w}", m.value);
}

#[test]
fn multidim_eval_cap() {
    let r = integrate_multidim(|_| 1.0, &[0.0; 3], &[1.0; 3], MultiMethod::Qmc { points: 1 << 24, shifts: 1, corner_power: 1, seed: 1 }, 3);
    assert!(r.is_err());
}

#[test]
fn errors_track_requested_digits() {
    let hi = ctx(120);
    let w = sunrise_core::moments::ikm_plain(1, 5, 1, &hi).unwrap();
    for d in [10u32, 20, 40, 80] {
        let v = sunrise_core::moments::ikm_plain(1, 5, 1, &ctx(d)).unwrap();
        let e = Float::with_val(hi.prec(), (v - &w) / &w).abs();
        assert!(e < Float::with_val(hi.prec(), rug::ops::Pow::pow(Float::with_val(64, 10), -(d as i32))), "{d}: {e}");
    }
}
