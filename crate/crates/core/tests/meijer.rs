mod common;

use common::{assert_digits, ctx};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;
use sunrise_core::hyper::{pfq, pfq_unit, Argument, PfqSpec};
use sunrise_core::meijer::*;
use sunrise_core::moments::{ikm_plain, param_moment, ParamKind};
use sunrise_core::mpcore::{digits_agreement, rat, vanishing_digits, Complex, PrecisionContext};
use sunrise_core::specfun::{gamma, gamma_rat, sin_pi_complex};

/// Gamma(1/3)/sqrt(pi) to the k-th power, from MPFR directly.
fn g3(c: &PrecisionContext, k: i32) -> Float {
    let p = c.prec();
    let g = Float::with_val(p, Float::with_val(p, 1) / 3u32).gamma() / c.pi().sqrt();
    Float::with_val(p, g.pow(k))
}

fn f43(c: &PrecisionContext, up: &[(i64, i64)], lo: &[(i64, i64)], d: u32) -> Float {
    pfq_unit(&PfqSpec::at_one(up, lo).unwrap(), c, d).unwrap().value
}

/// (9/sqrt pi)[(sqrt3/64) g^9 Fa - (16/3) g^-9 Fb]
fn laporta_oracle(c: &PrecisionContext, d: u32) -> Float {
    let fa = f43(c, &[(1, 6), (1, 3), (1, 3), (1, 2)], &[(2, 3), (5, 6), (5, 6)], d);
    let fb = f43(c, &[(1, 2), (2, 3), (2, 3), (5, 6)], &[(7, 6), (7, 6), (4, 3)], d);
    let a = c.sqrt_of(3) / 64u32 * g3(c, 9) * fa;
    let b = c.real(16) / 3u32 * g3(c, -9) * fb;
    (a - b) * 9u32 / c.pi().sqrt()
}

fn pi_sq(c: &PrecisionContext) -> Float {
    Float::with_val(c.prec(), c.pi().square_ref())
}

#[test]
fn g24_is_multiple_of_g22() {
    let c = ctx(25);
    let g24 = MeijerG::laporta_g24().residues(Side::Right, &c, 25).unwrap();
    let g22 = MeijerG::laporta_g22().residues(Side::Right, &c, 25).unwrap();
    assert_digits(&g24, &(g22 * pi_sq(&c) * 4u32 / 3u32), 25);
}

#[test]
fn g24_direct_summation() {
    let c = ctx(25);
    let g24 = MeijerG::laporta_g24().residues(Side::Left, &c, 25).unwrap();
    assert_digits(&g24, &(laporta_oracle(&c, 25) * pi_sq(&c) * 4u32 / 3u32), 25);
}

#[test]
fn left_and_right_closures_agree() {
    let c = ctx(25);
    for g in [MeijerG::laporta_g24(), MeijerG::bl_g24(), MeijerG::product_g24(), MeijerG::ikm243_g33()] {
        let r = g.residues(Side::Right, &c, 25).unwrap();
        let l = g.residues(Side::Left, &c, 25).unwrap();
        assert_digits(&r, &l, 25);
    }
}

#[test]
fn g33_moment_difference() {
    let c = ctx(20);
    let g = MeijerG::ikm243_g33().residues(Side::Right, &c, 20).unwrap();
    let lhs = g * 7u32 / (c.sqrt_of(3) * 240u32);
    let rhs = ikm_plain(2, 4, 1, &c).unwrap() - ikm_plain(2, 4, 3, &c).unwrap() * 8u32;
    assert_digits(&lhs, &rhs, 20);
}

#[test]
fn bailey_7f6_against_g24() {
    let c = ctx(20);
    let g24 = MeijerG::laporta_g24().residues(Side::Right, &c, 20).unwrap();
    let s = f43(&c, &[(1, 3), (1, 3), (1, 2), (1, 2), (2, 3), (2, 3), (5, 4)], &[(1, 4), (5, 6), (5, 6), (1, 1), (7, 6), (7, 6)], 20);
    assert_digits(&(s * 9u32 / 2u32), &(g24 * 3u32 / (pi_sq(&c) * 4u32)), 20);
    let bl = MeijerG::bl_g24().residues(Side::Right, &c, 20).unwrap();
    let s = f43(&c, &[(-1, 3), (1, 3), (2, 3), (4, 3), (3, 2), (3, 2), (7, 4)], &[(3, 4), (1, 1), (7, 6), (11, 6), (13, 6), (17, 6)], 20);
    assert_digits(&(s * 6561u32 / 3850u32), &(-bl * 3u32 / (pi_sq(&c) * 4u32)), 20);
}

#[test]
fn mb2_vertical_line() {
    let c = ctx(30);
    let one = c.real(1);
    let v = mb_family_rhs(MbFamily::Mb2, &one, MbRoute::Vertical, &c).unwrap();
    assert_digits(&v, &param_moment(ParamKind::Mb2Lhs, &one, &c).unwrap(), 30);
}

#[test]
fn mb1_vertical_line() {
    let c = ctx(30);
    let one = c.real(1);
    let v = mb_family_rhs(MbFamily::Mb1, &one, MbRoute::Vertical, &c).unwrap();
    assert_digits(&v, &param_moment(ParamKind::Mb1Lhs, &one, &c).unwrap(), 30);
}

#[test]
fn phi_vertical_line_is_low_precision() {
    let c = ctx(20);
    let (v, low) = mb_named_vertical(MbKernel::Phi, Bracket::One, &rat(1, 4), &c).unwrap();
    assert!(low);
    assert_digits(&v, &ikm_plain(1, 5, 1, &c).unwrap(), 10);
}

#[test]
fn psi_vertical_line_is_full_precision() {
    let c = ctx(25);
    let (v, low) = mb_named_vertical(MbKernel::Psi, Bracket::One, &rat(1, 4), &c).unwrap();
    assert!(!low);
    assert_digits(&v, &ikm_plain(2, 4, 1, &c).unwrap(), 25);
}

fn cstar(c: &PrecisionContext, b: Bracket) -> Float {
    residue_sum_weighted(&phi_kernel(), b, Contour::CStar, c, 20).unwrap() * phi_scale(c)
}

#[test]
fn cstar_moment() {
    let c = ctx(20);
    assert_digits(&cstar(&c, Bracket::Simple153), &ikm_plain(1, 5, 3, &c).unwrap(), 20);
}

#[test]
fn cstar_vanishing_brackets() {
    let c = ctx(20);
    let scale = ikm_plain(1, 5, 1, &c).unwrap();
    for b in [Bracket::CStarVanish, Bracket::Cancel1, Bracket::Cancel2] {
        let v = cstar(&c, b);
        assert!(vanishing_digits(&v, &scale) >= 20, "{b:?}: {v}");
    }
}

#[test]
fn psi_difference_with_constant() {
    let c = ctx(20);
    let (v, _) = mb_named_vertical(MbKernel::Psi, Bracket::Diff, &rat(1, 4), &c).unwrap();
    let pi32 = Float::with_val(c.prec(), c.pi().pow(Float::with_val(c.prec(), 1.5)));
    let lhs = -v / 3u32 - pi32 * 16u32 / 9u32 * g3(&c, -9);
    let rhs = ikm_plain(2, 4, 1, &c).unwrap() - ikm_plain(2, 4, 3, &c).unwrap() * 8u32;
    assert_digits(&lhs, &rhs, 20);
}

/// Phi from its Gamma-quotient definition.
fn phi_oracle(s: &Complex, c: &PrecisionContext) -> Complex {
    let p = c.prec();
    let g = |shift: Rational, sign: i32| {
        let z = if sign > 0 { s.add_real(&c.rat(&shift)) } else { (-s.clone()).add_real(&c.rat(&shift)) };
        gamma(&z, c).unwrap()
    };
    use rug::Rational;
    let num = &(&g(rat(1, 3), -1) * &g(rat(2, 3), -1)) * &(&g(rat(-1, 6), 1) * &g(rat(1, 6), 1));
    let den = (&g(rat(1, 1), -1) * &g(rat(1, 2), 1)).square();
    let pi3 = Float::with_val(p, c.pi().pow(3u32));
    num.div(&den).scale(&(pi3 / (c.sqrt_of(3) * 72u32)))
}

#[test]
fn phi_definition() {
    let c = ctx(30);
    for (a, b) in [(0.3, 0.7), (-0.45, 2.1), (1.2, -0.4)] {
        let s = Complex::new(c.real(a), c.real(b));
        let v = phi(&s, &c).unwrap();
        let w = phi_oracle(&s, &c);
        assert_digits(&v.re, &w.re, 30);
        assert_digits(&v.im, &w.im, 30);
    }
}

#[test]
fn g22_small_z_expansion() {
    let c = ctx(30);
    let p = c.prec();
    for e in [-4, -6] {
        let z = Float::with_val(p, Float::with_val(p, 10).pow(e));
        let g = MeijerG::new(
            2,
            2,
            vec![rat(1, 2), rat(1, 2), rat(1, 3), rat(2, 3)],
            vec![rat(0, 1), rat(0, 1), rat(-1, 6), rat(1, 6)],
            MellinArg::Positive(z.clone()),
        )
        .unwrap();
        let v = g.residues(Side::Left, &c, 30).unwrap();
        let lz = Float::with_val(p, z.ln_ref());
        let s3 = c.sqrt_of(3);
        let head = Float::with_val(p, &s3 * 3u32) * Float::with_val(p, 6 - &lz) / (c.pi() * 2u32);
        let next = s3 * 3u32 * &z * Float::with_val(p, 109 - Float::with_val(p, &lz * 70u32)) / (c.pi() * 2450u32);
        let err = Float::with_val(p, &v - head - next).abs();
        let bound = Float::with_val(p, z.square_ref()) * Float::with_val(p, lz.abs_ref()) * 10u32;
        assert!(err < bound, "z = 1e{e}: {err}");
    }
}

#[test]
fn basis_functions_near_zero() {
    let c = ctx(30);
    let p = c.prec();
    let z = Float::with_val(p, Float::with_val(p, 10).pow(-6));
    let zp = |num: i64, den: i64| Float::with_val(p, (&z).pow(Float::with_val(p, &rat(num, den))));
    let series = |up: &[(i64, i64)], lo: &[(i64, i64)]| {
        let f = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| rat(a, b)).collect();
        pfq(&PfqSpec::new(f(up), f(lo), Argument::Real(z.clone())).unwrap(), &c).unwrap()
    };
    let f1 = series(&[(1, 6), (1, 3), (1, 3), (1, 2)], &[(2, 3), (5, 6), (5, 6)]) / zp(1, 6);
    let e1 = Float::with_val(p, &f1 - zp(-1, 6) - zp(5, 6) / 50u32).abs();
    assert!(e1 < zp(11, 6) * 10u32, "f1: {e1}");
    let f2 = series(&[(1, 2), (2, 3), (2, 3), (5, 6)], &[(7, 6), (7, 6), (4, 3)]) * zp(1, 6);
    let e2 = Float::with_val(p, &f2 - zp(1, 6) - zp(7, 6) * 5u32 / 49u32).abs();
    assert!(e2 < zp(13, 6) * 10u32, "f2: {e2}");
    let f3 = series(&[(1, 3), (1, 2), (1, 2), (2, 3)], &[(5, 6), (1, 1), (7, 6)]);
    let e3 = Float::with_val(p, f3 - 1u32 - Float::with_val(p, &z * 2u32) / 35u32).abs();
    assert!(e3 < Float::with_val(p, z.square_ref()) * 10u32, "f3: {e3}");
    let g = MeijerG::new(
        2,
        4,
        vec![rat(1, 3), rat(1, 2), rat(1, 2), rat(2, 3)],
        vec![rat(0, 1), rat(0, 1), rat(-1, 6), rat(1, 6)],
        MellinArg::Positive(z.clone()),
    )
    .unwrap();
    let f4 = g.residues(Side::Left, &c, 30).unwrap();
    let lz = Float::with_val(p, z.ln_ref());
    let k = c.sqrt_of(3) * c.pi() * 2u32;
    let head = Float::with_val(p, &k * Float::with_val(p, 6 - &lz));
    let next = k * &z * Float::with_val(p, 109 - Float::with_val(p, &lz * 70u32)) / 1225u32;
    let e4 = Float::with_val(p, &f4 - head - next).abs();
    let bound = Float::with_val(p, z.square_ref()) * Float::with_val(p, lz.abs_ref()) * 100u32;
    assert!(e4 < bound, "f4: {e4}");
}

#[test]
fn unsupported_shape_rejected() {
    assert!(MeijerG::at_one(1, 1, &[(1, 2)], &[(0, 1)]).is_err());
}

#[test]
fn pole_on_contour_rejected() {
    let c = ctx(20);
    let r = mb_named_vertical(MbKernel::Phi, Bracket::One, &rat(1, 3), &c);
    assert!(r.is_err());
}

fn complex_point() -> impl Strategy<Value = (f64, f64)> {
    (-3.0f64..3.0, -6.0f64..6.0).prop_filter("off the real axis", |(_, b)| b.abs() > 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn phi_reflection((a, b) in complex_point()) {
        let c = ctx(30);
        let s = Complex::new(c.real(a), c.real(b));
        let r = Complex::new(c.real(1) / 2u32 - c.real(a), c.real(-b));
        let x = phi(&s, &c).unwrap();
        let y = phi(&r, &c).unwrap();
        let scale = x.abs();
        prop_assert!(vanishing_digits(&(&x - &y).abs(), &scale) >= 30);
    }

    #[test]
    fn psi_phi_relation((a, b) in complex_point()) {
        let c = ctx(30);
        let s = Complex::new(c.real(a), c.real(b));
        let lhs = (&psi(&s, &c).unwrap() * &sin_pi_complex(&s.scale(&c.real(2)))).scale(&(c.pi() * 5u32));
        let rhs = phi(&s, &c).unwrap().scale(&c.real(9));
        prop_assert!(digits_agreement(&lhs.re, &rhs.re) >= 28 || vanishing_digits(&(&lhs - &rhs).abs(), &rhs.abs()) >= 28);
    }
}

#[test]
fn gamma_constant_inputs() {
    let c = ctx(30);
    let r = gamma_third_ratio(&c).unwrap();
    let want = gamma_rat(&rat(1, 3), &c).unwrap() / c.pi().sqrt();
    assert_digits(&r, &want, 30);
}
