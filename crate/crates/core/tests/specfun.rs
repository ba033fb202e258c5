mod common;

use common::{assert_digits, ctx, lit};
use proptest::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};
use sunrise_core::mpcore::{digits_agreement, rat, Complex};
use sunrise_core::specfun::*;
use sunrise_core::Error;

#[test]
fn gamma_small_values() {
    let c = ctx(50);
    assert_digits(&gamma_rat(&rat(1, 1), &c).unwrap(), &c.real(1), 50);
    let sqrt_pi = c.pi().sqrt();
    assert_digits(&gamma_rat(&rat(1, 2), &c).unwrap(), &sqrt_pi, 50);
}

#[test]
fn gamma_third_against_mpfr() {
    let c = ctx(50);
    let g = gamma_rat(&rat(1, 3), &c).unwrap();
    // independent implementation: MPFR's own gamma at doubled precision
    let oracle = Float::with_val(2 * c.prec(), Float::with_val(2 * c.prec(), &rat(1, 3)).gamma());
    assert_digits(&g, &oracle, 50);
    assert!(g.to_string_radix(10, Some(20)).starts_with("2.67893853470774763"));
}

#[test]
fn gamma_complex_against_mpfr_modulus() {
    // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
    let c = ctx(40);
    let z = Complex::new(c.real(1) / 2u32, c.real(3) / 2u32);
    let g = gamma(&z, &c).unwrap();
    let want = c.pi() / Float::with_val(c.prec(), c.pi() * 3u32 / 2u32).cosh();
    assert_digits(&g.norm_sqr(), &want, 40);
}

#[test]
fn gamma_poles() {
    let c = ctx(20);
    for k in [0, -1, -7] {
        assert!(matches!(gamma_rat(&rat(k, 1), &c), Err(Error::Pole(_))));
    }
}

#[test]
fn digamma_values() {
    let c = ctx(40);
    let p = c.prec();
    let euler = Float::with_val(2 * p, Constant::Euler);
    let d1 = digamma_rat(&rat(1, 1), &c).unwrap();
    assert_digits(&d1, &Float::with_val(p, -&euler), 40);
    let d2 = digamma_rat(&rat(2, 1), &c).unwrap();
    assert_digits(&Float::with_val(p, &d2 - &d1), &c.real(1), 40);
    let ln2 = Float::with_val(2 * p, Constant::Log2);
    let want = Float::with_val(p, -euler - ln2 * 2u32);
    assert_digits(&digamma_rat(&rat(1, 2), &c).unwrap(), &want, 40);
}

#[test]
fn bessel_values() {
    let c = ctx(40);
    assert_eq!(bessel_i0(&c.real(0), &c).unwrap(), 1);
    let one = c.real(1);
    let i = bessel_i0(&one, &c).unwrap();
    assert_digits(&i, &common::i0_series(&one), 40);
    assert!(i.to_string_radix(10, Some(20)).starts_with("1.266065877752008335"));
    let k = bessel_k0(&one, &c).unwrap();
    assert_digits(&k, &common::k0_integral(&one), 40);
    assert!(k.to_string_radix(10, Some(20)).starts_with("4.210244382407083333"));
}

#[test]
fn bessel_across_crossover() {
    let c = ctx(30);
    for t in ["0.01", "3.5", "29", "45", "80"] {
        let x = lit(t, c.prec());
        assert_digits(&bessel_k0(&x, &c).unwrap(), &common::k0_integral(&x), 30);
        assert_digits(&bessel_i0(&x, &c).unwrap(), &common::i0_series(&x), 30);
    }
}

#[test]
fn bessel_domains() {
    let c = ctx(20);
    assert!(matches!(bessel_i0(&c.real(-1), &c), Err(Error::Domain(_))));
    assert!(matches!(bessel_k0(&c.real(0), &c), Err(Error::Domain(_))));
}

#[test]
fn k0_log_law_near_zero() {
    // K0(t) + (ln(t/2) + gamma) I0(t) = t^2/4 + O(t^4 ln t)
    let c = ctx(40);
    for e in [-6, -12] {
        let t = Float::with_val(c.prec(), 10).pow(e);
        let l = Float::with_val(c.prec(), &t / 2u32).ln() + c.euler();
        let v = bessel_k0(&t, &c).unwrap() + l * bessel_i0(&t, &c).unwrap();
        let bound = Float::with_val(c.prec(), t.square_ref());
        assert!(v.abs() < bound, "t = 1e{e}");
    }
}

/// (pi/2) int_0^pi dtheta / (2 sqrt(1 - lambda sin^2)), trapezoid on the periodic integrand.
fn k_trapezoid(lambda: &Complex, prec: u32) -> Complex {
    let n = 2 * prec;
    let pi = Float::with_val(prec, Constant::Pi);
    let mut acc = Complex::new(Float::new(prec), Float::new(prec));
    for j in 0..n {
        let th = Float::with_val(prec, &pi * j) / n;
        let s2 = Float::with_val(prec, th.sin().square());
        let w = Complex::new(Float::with_val(prec, 1 - Float::with_val(prec, &lambda.re * &s2)), Float::with_val(prec, -(&lambda.im * s2)));
        acc = &acc + &w.sqrt().recip();
    }
    acc.scale(&(pi / (2 * n)))
}

#[test]
fn elliptic_k_values() {
    let c = ctx(40);
    let p = c.prec();
    let k0 = elliptic_k(&Complex::from_real(c.real(0)), &c).unwrap();
    assert_digits(&k0.re, &(c.pi() / 2u32), 40);
    let half = elliptic_k(&Complex::from_real(c.real(1) / 2u32), &c).unwrap();
    let g = Float::with_val(2 * p, Float::with_val(2 * p, 0.25).gamma());
    let want = Float::with_val(p, g.square() / (Float::with_val(2 * p, Constant::Pi).sqrt() * 4u32));
    assert_digits(&half.re, &want, 40);
    assert!(half.re.to_string_radix(10, Some(20)).starts_with("1.854074677301371918"));
}

#[test]
fn elliptic_k_complex_modulus() {
    let c = ctx(30);
    let lam = Complex::new(c.real(1) / 2u32, c.sqrt_of(3) / 2u32);
    let k = elliptic_k(&lam, &c).unwrap();
    let want = k_trapezoid(&lam, c.prec());
    assert_digits(&k.re, &want.re, 30);
    assert_digits(&k.im, &want.im, 30);
    let kc = elliptic_k(&lam.conj(), &c).unwrap();
    assert_digits(&kc.re, &k.re, 30);
    assert_digits(&kc.im, &Float::with_val(c.prec(), -&k.im), 30);
}

#[test]
fn elliptic_k_cut() {
    let c = ctx(20);
    let r = elliptic_k(&Complex::from_real(c.real(2)), &c);
    assert!(matches!(r, Err(Error::Branch(_))), "{r:?}");
}

#[test]
fn gamma_third_reductions() {
    let c = ctx(40);
    let g = |a, b| gamma_rat(&rat(a, b), &c).unwrap();
    let r = Float::with_val(c.prec(), g(1, 3) / c.pi().sqrt());
    let r9 = Float::with_val(c.prec(), (&r).pow(9u32));
    let lhs = g(7, 6).square() * g(1, 3) / (g(2, 3).square() * g(5, 6));
    assert_digits(&lhs, &(c.sqrt_of(3) / 64u32 * &r9), 40);
    let lhs = g(5, 6).square() * g(-1, 3) / (g(1, 3).square() * g(1, 6));
    assert_digits(&lhs, &(-(c.real(16) / 3u32) / &r9), 40);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..97)
        .prop_map(|(p, q)| Rational::from((p, q)))
        .prop_filter("away from poles", |z| !(*z.denom() == 1 && *z <= 0) && z.clone().abs() <= 20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_recurrence(z in small_rational()) {
        let c = ctx(30);
        let z1 = Rational::from(&z + 1);
        let lhs = gamma_rat(&z1, &c).unwrap();
        let rhs = gamma_rat(&z, &c).unwrap() * c.rat(&z);
        prop_assert!(digits_agreement(&lhs, &rhs) >= 28);
    }

    #[test]
    fn gamma_reflection(z in small_rational().prop_filter("1 - z off the poles", |z| *z.denom() != 1)) {
        let c = ctx(30);
        let w = Rational::from(1 - &z);
        let lhs = gamma_rat(&z, &c).unwrap() * gamma_rat(&w, &c).unwrap();
        let rhs = c.pi() / sin_pi(&c.rat(&z));
        prop_assert!(digits_agreement(&lhs, &rhs) >= 28);
    }
}
