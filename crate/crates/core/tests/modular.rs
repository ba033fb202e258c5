mod common;

use common::{assert_digits, ctx};
use rug::ops::Pow;
use rug::{Float, Integer};
use sunrise_core::moments::ikm_plain;
use sunrise_core::modular::*;
use sunrise_core::mpcore::digits_agreement;

#[test]
fn eta_at_i() {
    let c = ctx(30);
    let p = c.prec();
    let g = Float::with_val(p, Float::with_val(p, 0.25).gamma());
    let want = g / (Float::with_val(p, c.pi().pow(Float::with_val(p, 0.75))) * 2u32);
    assert_digits(&eta(&c.real(1), &c).unwrap(), &want, 30);
}

#[test]
fn eta_large_y() {
    let c = ctx(30);
    let p = c.prec();
    let pi = c.pi();
    let pre = Float::with_val(p, -(Float::with_val(p, &pi * 10u32) / 12u32)).exp();
    let q = Float::with_val(p, -(pi * 20u32)).exp();
    assert_digits(&eta(&c.real(10), &c).unwrap(), &(pre * Float::with_val(p, 1 - q)), 30);
}

#[test]
fn eta_modular_transform() {
    let c = ctx(30);
    let y = c.real(0.7);
    let inv = Float::with_val(c.prec(), y.recip_ref());
    let lhs = eta(&inv, &c).unwrap();
    let rhs = eta(&y, &c).unwrap() * Float::with_val(c.prec(), y.sqrt_ref());
    assert_digits(&lhs, &rhs, 30);
}

#[test]
fn eta_domain() {
    let c = ctx(20);
    assert!(eta(&c.real(0), &c).is_err());
    assert!(f46(&c.real(-1), &c).is_err());
}

#[test]
fn f46_product_matches_series() {
    let c = ctx(30);
    for y in [1.0, 1.0 / 6f64.sqrt(), 2.0] {
        let yf = c.real(y);
        let coeffs = f46_coefficients(terms_needed(y, c.prec()));
        assert_digits(&f46(&yf, &c).unwrap(), &f46_series(&yf, &coeffs, &c).unwrap(), 30);
    }
}

#[test]
fn f46_leading_term() {
    let c = ctx(30);
    let y = c.real(6);
    let v = f46(&y, &c).unwrap() * Float::with_val(c.prec(), c.pi() * 12u32).exp();
    assert!(Float::with_val(c.prec(), v - 1u32).abs() < 1e-10);
}

#[test]
fn fricke_sign_measured() {
    let c = ctx(30);
    let s = fricke_sign(&c).unwrap();
    assert_eq!(s.epsilon * s.epsilon, 1);
    assert_eq!(s.probes.len(), FRICKE_PROBES.len());
    assert!(s.agreed_digits >= 20, "{}", s.agreed_digits);
    for pr in &s.probes {
        assert!(digits_agreement(&pr.ratio, &c.real(s.epsilon)) >= 20);
    }
}

#[test]
fn l_value_is_bessel_moment() {
    let c = ctx(25);
    let l = lvalue_f46(&c).unwrap();
    assert_digits(&l, &(ikm_plain(1, 5, 1, &c).unwrap() * 16u32), 25);
}

#[test]
fn l_value_split_independence() {
    let c = ctx(25);
    let a = lvalue_f46(&c).unwrap();
    let b = lvalue_f46_split(&(c.real(1) / 2u32), &c).unwrap();
    assert_digits(&a, &b, 25);
}

#[test]
fn truncation_is_stable() {
    let c = ctx(30);
    let y = c.real(1.0 / 6f64.sqrt());
    let n = terms_needed(1.0 / 6f64.sqrt(), c.prec());
    let a = f46_series(&y, &f46_coefficients(n), &c).unwrap();
    let b = f46_series(&y, &f46_coefficients(2 * n), &c).unwrap();
    assert_digits(&a, &b, 30);
}

/// Coefficients of prod (1 - q^(mk))^2 over m in {1,2,3,6} by plain polynomial
/// multiplication, one factor (1 - q^j) at a time.
fn eta_product_oracle(n: usize) -> Vec<Integer> {
    let mut poly = vec![Integer::new(); n];
    poly[0] = Integer::from(1);
    let mul = |poly: &mut Vec<Integer>, j: usize| {
        let old = poly.clone();
        for i in j..n {
            poly[i] -= &old[i - j];
        }
    };
    for m in [1usize, 2, 3, 6] {
        let mut j = m;
        while j < n {
            mul(&mut poly, j);
            mul(&mut poly, j);
            j += m;
        }
    }
    poly
}

#[test]
fn coefficients_match_oracle() {
    let c = f46_coefficients(200);
    assert_eq!(c.len(), 200);
    assert_eq!(c, eta_product_oracle(200));
    // a_1 = 1, a_2 = -2, a_3 = -3
    assert_eq!(c[0], 1);
    assert_eq!(c[1], -2);
    assert_eq!(c[2], -3);
}

#[test]
fn coefficients_are_multiplicative_at_coprime_indices() {
    let c = f46_coefficients(200);
    let a = |k: usize| c[k - 1].clone();
    for (m, n) in [(5usize, 7usize), (5, 11), (7, 13), (5, 13), (11, 13)] {
        assert_eq!(a(m * n), a(m) * a(n), "a({m}*{n})");
    }
}
