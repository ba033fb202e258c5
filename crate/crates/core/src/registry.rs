//! Catalogue of identities, each checked by comparing independent evaluation
//! routes, plus the runner and the JSON report/export formats.

use crate::error::{Error, Result};
use crate::hyper::{pfq_unit, PfqSpec};
use crate::meijer::{
    f32_minus, gamma_third_ratio, mb_family_rhs, mb_named_residues, mb_named_vertical, mb_w, p4_over_sqrtu, phi,
    phi_kernel, phi_scale, psi, residue_sum_weighted, Bracket, Contour, MbFamily, MbKernel, MbRoute, MeijerG, Side,
};
use crate::modular::{fricke_sign, lvalue_f46, lvalue_f46_split};
use crate::moments::*;
use crate::mpcore::{adaptive_eval, digits_agreement, rat, to_decimal, vanishing_digits, Complex, PrecisionContext};
use crate::specfun::{bessel_i0, bessel_k0, elliptic_k, gamma_rat};
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

pub const REPORT_VERSION: &str = "1";

type Eval = Arc<dyn Fn(&PrecisionContext) -> Result<Float> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cost {
    Fast,
    Standard,
    Slow,
}

impl Cost {
    pub const ALL: [Cost; 3] = [Cost::Fast, Cost::Standard, Cost::Slow];

    pub fn parse(s: &str) -> Option<Cost> {
        match s {
            "fast" => Some(Cost::Fast),
            "standard" => Some(Cost::Standard),
            "slow" => Some(Cost::Slow),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityKind {
    Equality,
    Vanishing,
}

/// How a route is run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// escalate precision until two runs agree
    Adaptive,
    /// one run with a margin above the target
    Once,
    /// fixed-precision route good for this many digits only
    Capped(u32),
}

#[derive(Clone)]
pub struct Route {
    pub name: &'static str,
    pub mode: Mode,
    eval: Eval,
}

impl std::fmt::Debug for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Route").field("name", &self.name).field("mode", &self.mode).finish()
    }
}

impl Route {
    pub fn eval(&self, ctx: &PrecisionContext) -> Result<Float> {
        (self.eval)(ctx)
    }
}

fn route<F>(name: &'static str, f: F) -> Route
where
    F: Fn(&PrecisionContext) -> Result<Float> + Send + Sync + 'static,
{
    Route { name, mode: Mode::Adaptive, eval: Arc::new(f) }
}

fn once<F>(name: &'static str, f: F) -> Route
where
    F: Fn(&PrecisionContext) -> Result<Float> + Send + Sync + 'static,
{
    Route { name, mode: Mode::Once, eval: Arc::new(f) }
}

fn capped<F>(name: &'static str, cap: u32, f: F) -> Route
where
    F: Fn(&PrecisionContext) -> Result<Float> + Send + Sync + 'static,
{
    Route { name, mode: Mode::Capped(cap), eval: Arc::new(f) }
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub id: String,
    pub citation: String,
    pub kind: IdentityKind,
    pub routes: Vec<Route>,
    /// size a vanishing combination is measured against
    pub scale: Option<Route>,
    pub default_target_digits: u32,
    pub cost: Cost,
    /// floor on the working digits of `Once` routes
    pub min_work_digits: u32,
}

impl Identity {
    fn new(id: &str, citation: &str, digits: u32, cost: Cost, routes: Vec<Route>) -> Self {
        Identity {
            id: id.to_string(),
            citation: citation.to_string(),
            kind: IdentityKind::Equality,
            routes,
            scale: None,
            default_target_digits: digits,
            cost,
            min_work_digits: 0,
        }
    }

    fn vanishing(id: &str, citation: &str, digits: u32, cost: Cost, routes: Vec<Route>, scale: Route) -> Self {
        let mut i = Identity::new(id, citation, digits, cost, routes);
        i.kind = IdentityKind::Vanishing;
        i.scale = Some(scale);
        i
    }

    fn work_digits(mut self, d: u32) -> Self {
        self.min_work_digits = d;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "LOW_PRECISION_PASS")]
    LowPrecisionPass,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::LowPrecisionPass => "LOW_PRECISION_PASS",
        }
    }

    pub fn passed(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouteValue {
    pub route: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub citation: String,
    pub values: Vec<RouteValue>,
    pub agreed_digits: u32,
    pub target_digits: u32,
    pub status: Status,
    pub elapsed_seconds: f64,
    pub precision_used_bits: u32,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub initial_bits: String,
    pub escalation: String,
    pub guard_digits: u32,
    pub once_margin_digits: u32,
}

pub fn precision_policy() -> PrecisionPolicy {
    PrecisionPolicy {
        initial_bits: "ceil(3.33 * (digits + 2)) + 64, plus 32 guard bits".into(),
        escalation: "double until two successive runs agree to digits + 2".into(),
        guard_digits: crate::mpcore::GUARD_DIGITS,
        once_margin_digits: ONCE_MARGIN,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunDocument {
    pub version: String,
    pub precision_policy: PrecisionPolicy,
    pub results: Vec<VerificationReport>,
}

impl RunDocument {
    pub fn new(results: Vec<VerificationReport>) -> Self {
        RunDocument { version: REPORT_VERSION.into(), precision_policy: precision_policy(), results }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

const ONCE_MARGIN: u32 = 10;

// Shared pieces.

fn t(ctx: &PrecisionContext) -> u32 {
    ctx.target_digits()
}

fn f(ctx: &PrecisionContext, v: impl Into<Rational>) -> Float {
    ctx.rat(&v.into())
}

fn q(ctx: &PrecisionContext, a: i64, b: i64) -> Float {
    ctx.rat(&rat(a, b))
}

fn pi_pow(ctx: &PrecisionContext, a: i64, b: i64) -> Float {
    let p = ctx.prec();
    Float::with_val(p, ctx.pi().pow(q(ctx, a, b)))
}

fn two_pow(ctx: &PrecisionContext, a: i64, b: i64) -> Float {
    q(ctx, a, b).exp2()
}

/// (Gamma(1/3)/sqrt(pi))^k
fn g3(ctx: &PrecisionContext, k: i32) -> Result<Float> {
    Ok(Float::with_val(ctx.prec(), gamma_third_ratio(ctx)?.pow(k)))
}

fn hyp(ctx: &PrecisionContext, up: &[(i64, i64)], lo: &[(i64, i64)]) -> Result<Float> {
    Ok(pfq_unit(&PfqSpec::at_one(up, lo)?, ctx, t(ctx))?.value)
}

const FA: ([(i64, i64); 4], [(i64, i64); 3]) = ([(1, 6), (1, 3), (1, 3), (1, 2)], [(2, 3), (5, 6), (5, 6)]);
const FB: ([(i64, i64); 4], [(i64, i64); 3]) = ([(1, 2), (2, 3), (2, 3), (5, 6)], [(7, 6), (7, 6), (4, 3)]);
const FC: ([(i64, i64); 4], [(i64, i64); 3]) = ([(-1, 2), (1, 6), (1, 3), (4, 3)], [(-1, 6), (5, 6), (5, 3)]);
const FD: ([(i64, i64); 4], [(i64, i64); 3]) = ([(-7, 6), (-1, 2), (-1, 3), (2, 3)], [(-5, 6), (1, 6), (1, 3)]);

fn h4(ctx: &PrecisionContext, s: &([(i64, i64); 4], [(i64, i64); 3])) -> Result<Float> {
    hyp(ctx, &s.0, &s.1)
}

type Params = &'static [(i64, i64)];

/// Every unit-argument series the catalogue sums, by name.
pub const SERIES: &[(&str, Params, Params)] = &[
    ("FA", &FA.0, &FA.1),
    ("FB", &FB.0, &FB.1),
    ("FC", &FC.0, &FC.1),
    ("FD", &FD.0, &FD.1),
    ("BAILEY_7F6", &[(1, 3), (1, 3), (1, 2), (1, 2), (2, 3), (2, 3), (5, 4)], &[(1, 4), (5, 6), (5, 6), (1, 1), (7, 6), (7, 6)]),
    ("BAILEY_6F5", &[(1, 2), (1, 2), (1, 2), (2, 3), (2, 3), (4, 3)], &[(1, 3), (1, 1), (7, 6), (7, 6), (7, 6)]),
    ("BAILEY_5F4", &[(1, 3), (1, 3), (1, 2), (1, 2), (1, 2)], &[(5, 6), (5, 6), (5, 6), (1, 1)]),
    ("BL_7F6", &[(-1, 3), (1, 3), (2, 3), (4, 3), (3, 2), (3, 2), (7, 4)], &[(3, 4), (1, 1), (7, 6), (11, 6), (13, 6), (17, 6)]),
    ("ALT_7F6_A", &[(-1, 3), (-1, 3), (1, 3), (1, 3), (1, 2), (1, 2), (5, 4)], &[(1, 4), (1, 1), (7, 6), (7, 6), (11, 6), (11, 6)]),
    ("ALT_7F6_B", &[(1, 3), (1, 2), (3, 2), (3, 2), (13, 6), (13, 6), (7, 3)], &[(7, 6), (7, 6), (11, 6), (11, 6), (17, 6), (3, 1)]),
    ("ALT_5F4", &[(-1, 3), (1, 2), (3, 2), (3, 2), (5, 3)], &[(7, 6), (7, 6), (13, 6), (3, 1)]),
    ("PRODUCT_4F3", &[(1, 3), (1, 2), (1, 2), (2, 3)], &[(5, 6), (1, 1), (7, 6)]),
    ("IKM243_4F3", &[(2, 3), (4, 3), (3, 2), (5, 2)], &[(2, 1), (13, 6), (17, 6)]),
];

fn series(ctx: &PrecisionContext, name: &str) -> Result<Float> {
    let (_, up, lo) = SERIES.iter().find(|s| s.0 == name).expect("series in table");
    hyp(ctx, up, lo)
}

/// The catalogue series as specs, including the two Zudilin 7F6 at n = 0, 1.
pub fn catalogue_series() -> Vec<(String, PfqSpec)> {
    let mut v: Vec<(String, PfqSpec)> =
        SERIES.iter().map(|(n, up, lo)| (n.to_string(), PfqSpec::at_one(up, lo).expect("valid spec"))).collect();
    for n in 0..2 {
        let (up, lo) = zudilin_params(n);
        v.push((format!("ZUDILIN_7F6_N{n}"), PfqSpec::at_one(&up, &lo).expect("valid spec")));
    }
    v
}

/// (sqrt3/2^6) g^9 Fa and (2^4/3) g^-9 Fb
fn laporta_terms(ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let a = ctx.sqrt_of(3) / 64u32 * g3(ctx, 9)? * h4(ctx, &FA)?;
    let b = f(ctx, 16) / 3u32 * g3(ctx, -9)? * h4(ctx, &FB)?;
    Ok((a, b))
}

/// (sqrt3/2^7) g^9 Fc and (5/7)(2^4/3) g^-9 Fd
fn bl_terms(ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let c = ctx.sqrt_of(3) / 128u32 * g3(ctx, 9)? * h4(ctx, &FC)?;
    let d = q(ctx, 80, 21) * g3(ctx, -9)? * h4(ctx, &FD)?;
    Ok((c, d))
}

/// the G22 / single-integral value of the Laporta chain
fn laporta_value(ctx: &PrecisionContext) -> Result<Float> {
    let (a, b) = laporta_terms(ctx)?;
    Ok((a - b) * 9u32 / pi_pow(ctx, 1, 2))
}

fn bl_value(ctx: &PrecisionContext) -> Result<Float> {
    let (c, d) = bl_terms(ctx)?;
    Ok((c + d) * 3u32 / pi_pow(ctx, 1, 2))
}

fn ikm(a: u32, b: u32, n: u32) -> impl Fn(&PrecisionContext) -> Result<Float> {
    move |ctx| ikm_plain(a, b, n, ctx)
}

fn ikm15_diff(ctx: &PrecisionContext) -> Result<Float> {
    Ok(ikm_plain(1, 5, 1, ctx)? - ikm_plain(1, 5, 3, ctx)? * 8u32)
}

fn ikm24_diff(ctx: &PrecisionContext) -> Result<Float> {
    Ok(ikm_plain(2, 4, 1, ctx)? - ikm_plain(2, 4, 3, ctx)? * 8u32)
}

fn phi_c(ctx: &PrecisionContext, bracket: Bracket) -> Result<Float> {
    Ok(residue_sum_weighted(&phi_kernel(), bracket, Contour::CStar, ctx, t(ctx))? * phi_scale(ctx))
}

fn phi_res(ctx: &PrecisionContext, bracket: Bracket) -> Result<Float> {
    mb_named_residues(MbKernel::Phi, bracket, &rat(1, 4), ctx, t(ctx))
}

fn psi_res(ctx: &PrecisionContext, bracket: Bracket) -> Result<Float> {
    mb_named_residues(MbKernel::Psi, bracket, &rat(1, 4), ctx, t(ctx))
}

fn psi_line(ctx: &PrecisionContext, bracket: Bracket) -> Result<Float> {
    Ok(mb_named_vertical(MbKernel::Psi, bracket, &rat(1, 4), ctx)?.0)
}

/// pi^(5/2)/sqrt3 and pi^(3/2) times the Gamma(1/3) constants that trail the Phi and Psi integrals
fn phi_const(ctx: &PrecisionContext, minus9: (i64, i64), plus9: Option<(i64, i64)>) -> Result<Float> {
    let p52 = pi_pow(ctx, 5, 2);
    let mut c = p52.clone() * q(ctx, minus9.0, minus9.1) / ctx.sqrt_of(3) * g3(ctx, -9)?;
    if let Some((a, b)) = plus9 {
        c += p52 * q(ctx, a, b) * g3(ctx, 9)?;
    }
    Ok(c)
}

fn psi_const(ctx: &PrecisionContext, minus9: (i64, i64), plus9_over_sqrt3: Option<(i64, i64)>) -> Result<Float> {
    let p32 = pi_pow(ctx, 3, 2);
    let mut c = p32.clone() * q(ctx, minus9.0, minus9.1) * g3(ctx, -9)?;
    if let Some((a, b)) = plus9_over_sqrt3 {
        c += p32 * q(ctx, a, b) / ctx.sqrt_of(3) * g3(ctx, 9)?;
    }
    Ok(c)
}

fn gamma_q(ctx: &PrecisionContext, a: i64, b: i64) -> Result<Float> {
    gamma_rat(&rat(a, b), ctx)
}

fn zudilin_params(n: i64) -> ([(i64, i64); 7], [(i64, i64); 6]) {
    let up = [(2 * n + 1, 2), (2 * n + 5, 4), (2, 3), (3 * n + 1, 3), (1, 3), (2 * n + 1, 2), (2 - 3 * n, 3)];
    let lo = [(2 * n + 1, 4), (6 * n + 5, 6), (6 * n + 7, 6), (7, 6), (1, 1), (12 * n + 5, 6)];
    (up, lo)
}

/// General prefactor of the Zudilin 7F6 evaluation of the triple integral.
fn zudilin_7f6(n: i64, ctx: &PrecisionContext) -> Result<Float> {
    let a = [rat(2 * n + 1, 2), rat(2, 3), rat(3 * n + 1, 3), rat(1, 3), rat(2 * n + 1, 2), rat(2 - 3 * n, 3)];
    let a01 = Rational::from(&a[0] + 1);
    let mut pre = gamma_rat(&a01, ctx)? * gamma_rat(&a[2], ctx)? * gamma_rat(&a[3], ctx)? * gamma_rat(&a[4], ctx)?;
    for j in 1..5 {
        pre *= gamma_rat(&(Rational::from(&a01 - &a[j]) - &a[j + 1]), ctx)?;
    }
    for aj in &a[1..] {
        pre /= gamma_rat(&Rational::from(&a01 - aj), ctx)?;
    }
    let (up, lo) = zudilin_params(n);
    Ok(pre * hyp(ctx, &up, &lo)?)
}

fn zudilin_target(n: i64, ctx: &PrecisionContext) -> Result<Float> {
    let c = two_pow(ctx, 4, 3) * ctx.sqrt_of(3) / ctx.pi();
    if n == 0 {
        Ok(c * ikm_plain(1, 5, 1, ctx)? * 24u32)
    } else {
        Ok(c * (ikm_plain(1, 5, 1, ctx)? * 32u32 - ikm_plain(1, 5, 3, ctx)? * 256u32) / 21u32)
    }
}

/// Sample points for the pointwise kernel relations, away from every pole.
const KERNEL_POINTS: [(f64, f64); 5] = [(0.3, 0.7), (-0.45, 2.1), (1.2, -0.4), (0.1, 5.0), (0.9, 0.25)];

fn kernel_points(ctx: &PrecisionContext) -> Vec<Complex> {
    KERNEL_POINTS.iter().map(|&(a, b)| Complex::new(ctx.real(a), ctx.real(b))).collect()
}

fn max_abs(v: impl Iterator<Item = Float>, prec: u32) -> Float {
    v.fold(Float::with_val(prec, 0), |m, x| m.max(&x.abs()))
}

fn x_of(s: &str, ctx: &PrecisionContext) -> Float {
    let (a, b) = match s.split_once('/') {
        Some((a, b)) => (a.parse::<i64>().unwrap(), b.parse::<i64>().unwrap()),
        None => {
            let v: f64 = s.parse().unwrap();
            ((v * 10.0).round() as i64, 10)
        }
    };
    q(ctx, a, b)
}

fn tag(s: &str) -> String {
    s.replace('/', "_")
}

fn build() -> Vec<Identity> {
    use Cost::*;
    let mut v = Vec::new();

    v.push(Identity::new(
        "SUNRISE-WATSON",
        "Laporta's conjecture: the 4-loop sunrise equals the 4-dimensional Watson integral",
        30,
        Slow,
        vec![
            route("12/pi^4 IKM(1,5;1)", |c| Ok(ikm_plain(1, 5, 1, c)? * 12u32 / pi_pow(c, 4, 1))),
            route("W4S(1)", |c| watson(4, &c.real(1), c)),
            capped("4-D lattice QMC", 3, |c| Ok(c.real(w4_qmc(1 << 20, 8, 20_240_611)?.value))),
        ],
    ));

    for x in ["0", "1/2", "1"] {
        let xs = x.to_string();
        let xs2 = xs.clone();
        v.push(Identity::new(
            &format!("W4-BM-X-{}", tag(x)),
            "Watson integral W4S(x) as a Bessel moment with I0(xt)^2",
            30,
            Fast,
            vec![
                route("W4S(x)", move |c| watson(4, &x_of(&xs, c), c)),
                route("4/pi^2 int I0(xt)^2 I0 K0^3 t", move |c| w4_bessel(&x_of(&xs2, c), c)),
            ],
        ));
    }

    for n in 0..=4u32 {
        v.push(Identity::new(
            &format!("GM-EVEN-{n}"),
            "Glasser-Montaldi even cosine moments, exact rational form",
            30,
            Fast,
            vec![
                route("multinomial expansion", move |c| Ok(c.rat(&even_cos_moment_exact(n)))),
                route("Glasser-Montaldi sum", move |c| Ok(c.rat(&glasser_montaldi_rhs(n)))),
            ],
        ));
    }

    for n in 0..=4u32 {
        v.push(Identity::new(
            &format!("BBBG-ODD-{n}"),
            "Bailey-Borwein-Broadhurst-Glasser odd moments of I0 K0^3",
            30,
            Fast,
            vec![
                route("IKM(1,3;2n+1)", move |c| ikm_plain(1, 3, 2 * n + 1, c)),
                route("multinomial closed form", move |c| Ok(ikm13_closed(n, c))),
            ],
        ));
    }

    v.push(Identity::new(
        "IKM33-IKM15",
        "pi^2 IKM(3,3;1) = 3 IKM(1,5;1)",
        30,
        Fast,
        vec![
            route("pi^2 IKM(3,3;1)", |c| Ok(ikm_plain(3, 3, 1, c)? * pi_pow(c, 2, 1))),
            route("3 IKM(1,5;1)", |c| Ok(ikm_plain(1, 5, 1, c)? * 3u32)),
        ],
    ));

    v.push(Identity::new(
        "W4-GG-ELLIPTIC",
        "W4S(1) by Abel transforms as a product of complete elliptic integrals",
        30,
        Standard,
        vec![route("W4S(1)", |c| watson(4, &c.real(1), c)), route("(2/pi^3) int K(k+^2) K(k-^2)", w4_gg_elliptic)],
    ));

    for x in ["1/2", "0.9"] {
        let (a, b, d) = (x.to_string(), x.to_string(), x.to_string());
        v.push(Identity::new(
            &format!("W3-JZ-{}", tag(x)),
            "Joyce-Zucker closed forms of the 3-dimensional Watson integral",
            30,
            Fast,
            vec![
                route("W3S(x)", move |c| watson(3, &x_of(&a, c), c)),
                route("2F1(1/8,3/8;1)^2 form", move |c| w3s_closed(JzForm::Jz1838, &x_of(&b, c), c)),
                route("K(p) form", move |c| w3s_closed(JzForm::JzK, &x_of(&d, c), c)),
            ],
        ));
    }

    v.push(Identity::new(
        "W4-LVALUE",
        "16 IKM(1,5;1) = 8 pi^2 L(f46, 2) for the weight-4 level-6 eta product",
        25,
        Fast,
        vec![
            route("16 IKM(1,5;1)", |c| Ok(ikm_plain(1, 5, 1, c)? * 16u32)),
            route("32 pi^4 int f46 y dy, split 1/sqrt6", lvalue_f46),
            route("32 pi^4 int f46 y dy, split 1/2", |c| lvalue_f46_split(&q(c, 1, 2), c)),
            route("Fricke-sign measurement x 16 IKM(1,5;1)", |c| {
                let s = fricke_sign(c)?;
                Ok(ikm_plain(1, 5, 1, c)? * 16u32 * s.epsilon)
            }),
        ],
    ));

    v.push(Identity::new(
        "W4-2F1-U",
        "W4S(1) from the hypergeometric parametrization of the level-6 forms, both u-ranges",
        30,
        Standard,
        vec![
            route("W4S(1)", |c| watson(4, &c.real(1), c)),
            route("u in (0, inf)", |c| w4_2f1_u(URange::Positive, c)),
            route("u in (-1, 0)", |c| w4_2f1_u(URange::Negative, c)),
        ],
    ));

    v.push(Identity::new(
        "IKM33-BBBG223",
        "Bailey-Borwein-Broadhurst-Glasser elliptic y-integral for IKM(3,3;1)",
        30,
        Fast,
        vec![route("IKM(3,3;1)", ikm(3, 3, 1)), route("elliptic y-integral", ikm33_elliptic)],
    ));

    for pstr in ["0.2", "0.6"] {
        for (k, name) in [(0usize, "F(x)"), (2, "F(1-x)")] {
            let a = pstr.to_string();
            let b = pstr.to_string();
            v.push(Identity::new(
                &format!("RAMANUJAN-CUBIC-{}-{}", tag(pstr), if k == 0 { "X" } else { "1MX" }),
                "Ramanujan's cubic transformations of 2F1(1/3,2/3;1)",
                30,
                Fast,
                vec![
                    route(name, move |c| Ok(ramanujan_cubic(&x_of(&a, c), c)?[k].clone())),
                    route("elliptic K form", move |c| Ok(ramanujan_cubic(&x_of(&b, c), c)?[k + 1].clone())),
                ],
            ));
        }
    }

    v.push(Identity::new(
        "W4-PARSEVAL",
        "Parseval representation of W4S(1) through K of a complex modulus",
        30,
        Standard,
        vec![route("W4S(1)", |c| watson(4, &c.real(1), c)), route("(2/pi^3) int |K|^2", w4_parseval)],
    ));

    for x in ["1/2", "1", "1.8"] {
        let (a, b) = (x.to_string(), x.to_string());
        v.push(Identity::new(
            &format!("IKM231-3F2-{}", tag(x)),
            "int I0(xt) I0 K0^3 t dt as a 3F2 at negative argument",
            30,
            Fast,
            vec![
                route("int I0(xt) I0 K0^3 t", move |c| param_moment(ParamKind::Ikm231X, &x_of(&a, c), c)),
                route("pi^2/(4(4-x^2)) 3F2", move |c| {
                    let x = x_of(&b, c);
                    let u = Float::with_val(c.prec(), x.square_ref());
                    let d = Float::with_val(c.prec(), 4 - &u);
                    Ok(f32_minus(&mb_w(&u), c)? * pi_pow(c, 2, 1) / (d * 4u32))
                }),
            ],
        ));
    }

    v.push(Identity::new(
        "SUNRISE-4F3",
        "hypergeometric evaluation of the 4-loop sunrise",
        25,
        Standard,
        vec![
            route("IKM(1,5;1)", ikm(1, 5, 1)),
            route("Gamma-weighted 4F3 pair", |c| {
                let (a, b) = laporta_terms(c)?;
                Ok((a - b) * pi_pow(c, 5, 2) / (c.sqrt_of(3) * 4u32))
            }),
        ],
    ));

    v.push(Identity::new(
        "LAPORTA-CHAIN",
        "Laporta's single integral, two Meijer G-functions and a 4F3 pair",
        20,
        Standard,
        vec![
            route("int F^2/sqrt(1-x)", |c| hyp_product_integral(HypProduct::Square, c)),
            route("G22 right residues", |c| MeijerG::laporta_g22().residues(Side::Right, c, t(c))),
            route("G22 left residues", |c| MeijerG::laporta_g22().residues(Side::Left, c, t(c))),
            route("3/(4pi^2) G24 right residues", |c| {
                Ok(MeijerG::laporta_g24().residues(Side::Right, c, t(c))? * 3u32 / (pi_pow(c, 2, 1) * 4u32))
            }),
            route("3/(4pi^2) G24 left residues", |c| {
                Ok(MeijerG::laporta_g24().residues(Side::Left, c, t(c))? * 3u32 / (pi_pow(c, 2, 1) * 4u32))
            }),
            route("9/sqrt(pi) 4F3 pair", laporta_value),
            route("27/(4 sqrt3 pi^3) 16 IKM(1,5;1)", |c| {
                Ok(ikm_plain(1, 5, 1, c)? * 16u32 * 27u32 / (c.sqrt_of(3) * 4u32 * pi_pow(c, 3, 1)))
            }),
        ],
    ));

    v.push(Identity::new(
        "BAILEY-REDN",
        "Bailey representations of the sunrise integral as 7F6, 6F5 and 5F4",
        20,
        Standard,
        vec![
            route("int F^2/sqrt(1-x)", |c| hyp_product_integral(HypProduct::Square, c)),
            route("9/2 7F6", |c| {
                let h = series(c, "BAILEY_7F6")?;
                Ok(h * 9u32 / 2u32)
            }),
            route("2^(14/3) sqrt3 g^-6 6F5", |c| {
                let h = series(c, "BAILEY_6F5")?;
                Ok(h * two_pow(c, 14, 3) * c.sqrt_of(3) * g3(c, -6)?)
            }),
            route("3 sqrt3/2^(11/3) g^6 5F4", |c| {
                let h = series(c, "BAILEY_5F4")?;
                Ok(h * 3u32 * c.sqrt_of(3) / two_pow(c, 11, 3) * g3(c, 6)?)
            }),
        ],
    ));

    for u in ["1/2", "1", "3"] {
        for (fam, kind, name) in [(MbFamily::Mb1, ParamKind::Mb1Lhs, "MB1"), (MbFamily::Mb2, ParamKind::Mb2Lhs, "MB2")] {
            let (a, b, d) = (u.to_string(), u.to_string(), u.to_string());
            v.push(Identity::new(
                &format!("{name}-U-{}", tag(u)),
                "Mellin-Barnes representations of parametric Feynman integrals",
                30,
                Fast,
                vec![
                    route("Bessel quadrature", move |c| param_moment(kind, &x_of(&a, c), c)),
                    route("vertical line", move |c| mb_family_rhs(fam, &x_of(&b, c), MbRoute::Vertical, c)),
                    route("residue series", move |c| mb_family_rhs(fam, &x_of(&d, c), MbRoute::Residues, c)),
                ],
            ));
        }
    }

    v.push(Identity::new(
        "KLUYVER-P4",
        "Kluyver's four-step density through its Mellin-Barnes form",
        30,
        Fast,
        vec![
            route("MB1 quadrature at u = 1", |c| param_moment(ParamKind::Mb1Lhs, &c.real(1), c)),
            route("pi^4/6 p4(1)", |c| Ok(p4_over_sqrtu(&c.real(1), c)? * pi_pow(c, 4, 1) / 6u32)),
        ],
    ));

    v.push(Identity::new(
        "BROADHURST-2008",
        "Broadhurst's evaluation of int K0(2t) I0^2 K0^2 t dt",
        30,
        Fast,
        vec![
            route("int K0(2t) I0^2 K0^2 t", |c| param_moment(ParamKind::KI2K2, &c.real(4), c)),
            route("pi/2^(20/3) g^6", |c| Ok(c.pi() / two_pow(c, 20, 3) * g3(c, 6)?)),
        ],
    ));

    v.push(Identity::new(
        "FACTOR3",
        "int I0(2t) I0 K0^3 t dt = 3 int K0(2t) I0^2 K0^2 t dt",
        30,
        Fast,
        vec![
            route("int I0(2t) I0 K0^3 t", |c| param_moment(ParamKind::IIK3, &c.real(4), c)),
            route("3 int K0(2t) I0^2 K0^2 t", |c| Ok(param_moment(ParamKind::KI2K2, &c.real(4), c)? * 3u32)),
        ],
    ));

    v.push(Identity::new(
        "REG-IKM153",
        "IKM(1,5;3) from I0 K0 (I0^2 K0^2 - 1/(4t^2)) t^3",
        30,
        Fast,
        vec![
            route("IKM(1,5;3)", ikm(1, 5, 3)),
            route("pi^2/3 regularized", |c| Ok(crate::moments::ikm(&MomentSpec::regularized(Regularizer::Quarter), c)? * pi_pow(c, 2, 1) / 3u32)),
        ],
    ));

    v.push(Identity::new(
        "REG-IKM155",
        "IKM(1,5;5) from I0 K0 (I0^2 K0^2 - 1/(4t^2) - 1/(16t^4)) t^5",
        30,
        Fast,
        vec![
            route("IKM(1,5;5)", ikm(1, 5, 5)),
            route("pi^2/3 regularized", |c| {
                Ok(crate::moments::ikm(&MomentSpec::regularized(Regularizer::QuarterSixteenth), c)? * pi_pow(c, 2, 1) / 3u32)
            }),
        ],
    ));

    for (a, b) in [(1u32, 5u32), (2, 4)] {
        v.push(Identity::vanishing(
            &format!("SUMRULE-{a}{b}"),
            "Bailey-Borwein-Broadhurst-Glasser sum rule with weight 2 - 85t^2 + 72t^4",
            30,
            Fast,
            vec![once("int I0^a K0^b t (2 - 85t^2 + 72t^4)", move |c| {
                crate::moments::ikm(&MomentSpec::new(a, b, 1).with_weight(&[2, -85, 72]), c)
            })],
            once("IKM(a,b;1)", move |c| ikm_plain(a, b, 1, c)),
        ));
    }

    v.push(Identity::new(
        "MB-IKM15-1",
        "Mellin-Barnes integral of Phi for IKM(1,5;1)",
        25,
        Standard,
        vec![
            route("IKM(1,5;1)", ikm(1, 5, 1)),
            route("Phi residues", |c| phi_res(c, Bracket::One)),
            capped("Phi vertical line", crate::meijer::LOW_PRECISION_DIGITS, |c| Ok(mb_named_vertical(MbKernel::Phi, Bracket::One, &rat(1, 4), c)?.0)),
        ],
    ));
    v.push(Identity::new(
        "MB-IKM15-3",
        "Mellin-Barnes integral of Phi for IKM(1,5;3) with its Gamma(1/3) constant",
        25,
        Standard,
        vec![
            route("IKM(1,5;3)", ikm(1, 5, 3)),
            route("Phi residues + constant", |c| Ok(phi_res(c, Bracket::Ikm153)? - phi_const(c, (2, 27), None)?)),
        ],
    ));
    v.push(Identity::new(
        "MB-IKM15-5",
        "Mellin-Barnes integral of Phi for IKM(1,5;5) with its Gamma(1/3) constants",
        25,
        Standard,
        vec![
            route("IKM(1,5;5)", ikm(1, 5, 5)),
            route("Phi residues + constants", |c| {
                Ok(phi_res(c, Bracket::Ikm155)? - phi_const(c, (43, 486), Some((5, 331776)))?)
            }),
        ],
    ));
    v.push(Identity::vanishing(
        "PHI-VANISH",
        "vanishing Mellin-Barnes integral of Phi",
        25,
        Standard,
        vec![once("Phi residues - constants", |c| {
            let k = phi_const(c, (2, 27), Some((5, 4608)))?;
            Ok(phi_res(c, Bracket::Vanish)? - k)
        })],
        once("IKM(1,5;1)", ikm(1, 5, 1)),
    ));
    v.push(Identity::new(
        "IKM153-SIMPLE",
        "IKM(1,5;3) from Phi with a simple bracket",
        25,
        Standard,
        vec![
            route("IKM(1,5;3)", ikm(1, 5, 3)),
            route("Phi residues + constant", |c| Ok(phi_res(c, Bracket::Simple153)? - phi_const(c, (5, 27), None)?)),
            route("C* circles, simple bracket", |c| phi_c(c, Bracket::Simple153)),
            route("C* circles, moment bracket", |c| phi_c(c, Bracket::Ikm153)),
        ],
    ));
    v.push(Identity::new(
        "PHI-CSTAR-CONSTANT",
        "Phi integral whose C* circles vanish reduces to a Gamma(1/3) constant",
        25,
        Standard,
        vec![
            route("Phi residues", |c| phi_res(c, Bracket::CStarVanish)),
            route("2 pi^(5/2)/(9 sqrt3) g^-9", |c| phi_const(c, (2, 9), None)),
        ],
    ));
    v.push(Identity::vanishing(
        "PHI-CSTAR-CANCEL",
        "brackets whose C* residue circles cancel",
        25,
        Standard,
        vec![
            once("C* first bracket", |c| phi_c(c, Bracket::CStarVanish)),
            once("C* second bracket", |c| phi_c(c, Bracket::Cancel1)),
            once("C* third bracket", |c| phi_c(c, Bracket::Cancel2)),
        ],
        once("IKM(1,5;1)", ikm(1, 5, 1)),
    ));

    v.push(Identity::new(
        "BL-CHAIN",
        "Meijer reduction of the Broadhurst-Laporta integral",
        20,
        Standard,
        vec![
            route("int F(-1/3,1/3)^2/sqrt(1-x)", |c| hyp_product_integral(HypProduct::MinusSquare, c)),
            route("G22 right residues", |c| MeijerG::bl_g22().residues(Side::Right, c, t(c))),
            route("-3/(4pi^2) G24 left residues", |c| {
                Ok(-MeijerG::bl_g24().residues(Side::Left, c, t(c))? * 3u32 / (pi_pow(c, 2, 1) * 4u32))
            }),
            route("3/sqrt(pi) 4F3 pair", bl_value),
            route("-3/(16pi^2) C** circles", |c| {
                let k = MeijerG::bl_g24().kernel();
                Ok(-residue_sum_weighted(&k, Bracket::One, Contour::CStarStar, c, t(c))? * 3u32 / (pi_pow(c, 2, 1) * 16u32))
            }),
        ],
    ));

    v.push(Identity::new(
        "IKM15-DIFF",
        "IKM(1,5;1) - 8 IKM(1,5;3) through the Broadhurst-Laporta integral",
        20,
        Standard,
        vec![
            route("IKM(1,5;1) - 8 IKM(1,5;3)", ikm15_diff),
            route("-1/3 C* circles", |c| Ok(-phi_c(c, Bracket::Diff)? / 3u32)),
            route("7 pi^3/(108 sqrt3) int F(-1/3,1/3)^2/sqrt(1-x)", |c| {
                Ok(hyp_product_integral(HypProduct::MinusSquare, c)? * 7u32 * pi_pow(c, 3, 1) / (c.sqrt_of(3) * 108u32))
            }),
            route("81 sqrt3 pi^3/2200 7F6", |c| {
                let h = series(c, "BL_7F6")?;
                Ok(h * 81u32 * c.sqrt_of(3) * pi_pow(c, 3, 1) / 2200u32)
            }),
        ],
    ));

    v.push(Identity::new(
        "EXTRA-7F6",
        "alternative 7F6 and 5F4 forms of the Broadhurst-Laporta value",
        20,
        Standard,
        vec![
            route("3/sqrt(pi) 4F3 pair", bl_value),
            route("81/50 7F6", |c| {
                let h = series(c, "ALT_7F6_A")?;
                Ok(h * 81u32 / 50u32)
            }),
            route("567/1375 sqrt3/2^(8/3) g^6 7F6", |c| {
                let h = series(c, "ALT_7F6_B")?;
                Ok(h * 567u32 / 1375u32 * c.sqrt_of(3) / two_pow(c, 8, 3) * g3(c, 6)?)
            }),
            route("(27/7) 2^(5/3) sqrt3 g^-6 5F4", |c| {
                let h = series(c, "ALT_5F4")?;
                Ok(h * 27u32 / 7u32 * two_pow(c, 5, 3) * c.sqrt_of(3) * g3(c, -6)?)
            }),
        ],
    ));

    v.push(Identity::new(
        "5F4-EXTRA",
        "IKM(1,5;1) - 8 IKM(1,5;3) as a single 5F4",
        20,
        Standard,
        vec![
            route("IKM(1,5;1) - 8 IKM(1,5;3)", ikm15_diff),
            route("pi^3/2^(1/3) g^-6 5F4", |c| {
                let h = series(c, "ALT_5F4")?;
                Ok(h * pi_pow(c, 3, 1) / two_pow(c, 1, 3) * g3(c, -6)?)
            }),
        ],
    ));

    v.push(Identity::new(
        "IKM241-4F3",
        "Broadhurst-Laporta representations of IKM(2,4;1)",
        25,
        Standard,
        vec![
            route("IKM(2,4;1)", ikm(2, 4, 1)),
            route("pi^2/10 4F3", |c| Ok(series(c, "PRODUCT_4F3")? * pi_pow(c, 2, 1) / 10u32)),
            route("3 pi^(3/2)/20 4F3 pair", |c| {
                let (a, b) = laporta_terms(c)?;
                Ok((a + b) * 3u32 * pi_pow(c, 3, 2) / 20u32)
            }),
        ],
    ));

    v.push(Identity::new(
        "BROADHURST-PRODUCT",
        "Broadhurst integral of F(x) F(1-x)",
        20,
        Standard,
        vec![
            route("int F(x)F(1-x)/sqrt(1-x)", |c| hyp_product_integral(HypProduct::Reflected, c)),
            route("3/(4 sqrt2 pi^2) G24 right residues", |c| {
                Ok(MeijerG::product_g24().residues(Side::Right, c, t(c))? * 3u32 / (c.sqrt_of(2) * 4u32 * pi_pow(c, 2, 1)))
            }),
            route("3/(4 sqrt2 pi^2) G24 left residues", |c| {
                Ok(MeijerG::product_g24().residues(Side::Left, c, t(c))? * 3u32 / (c.sqrt_of(2) * 4u32 * pi_pow(c, 2, 1)))
            }),
            route("3 4F3", |c| Ok(series(c, "PRODUCT_4F3")? * 3u32)),
        ],
    ));

    v.push(Identity::new(
        "IKM241-PRODUCT-INT",
        "IKM(2,4;1) = (pi^2/30) int F(x) F(1-x)/sqrt(1-x) dx",
        30,
        Fast,
        vec![
            route("IKM(2,4;1)", ikm(2, 4, 1)),
            route("pi^2/30 int F(x)F(1-x)/sqrt(1-x)", |c| Ok(hyp_product_integral(HypProduct::Reflected, c)? * pi_pow(c, 2, 1) / 30u32)),
        ],
    ));

    v.push(Identity::new(
        "MB-IKM24-1",
        "Mellin-Barnes integral of Psi for IKM(2,4;1)",
        25,
        Standard,
        vec![
            route("IKM(2,4;1)", ikm(2, 4, 1)),
            route("Psi vertical line", |c| psi_line(c, Bracket::One)),
            route("Psi residues", |c| psi_res(c, Bracket::One)),
        ],
    ));
    v.push(Identity::new(
        "MB-IKM24-3",
        "Mellin-Barnes integral of Psi for IKM(2,4;3) with its Gamma(1/3) constant",
        25,
        Standard,
        vec![
            route("IKM(2,4;3)", ikm(2, 4, 3)),
            route("Psi vertical line + constant", |c| Ok(psi_line(c, Bracket::Ikm153)? + psi_const(c, (4, 45), None)?)),
            route("Psi residues + constant", |c| Ok(psi_res(c, Bracket::Ikm153)? + psi_const(c, (4, 45), None)?)),
        ],
    ));
    v.push(Identity::new(
        "MB-IKM24-5",
        "Mellin-Barnes integral of Psi for IKM(2,4;5) with its Gamma(1/3) constants",
        25,
        Standard,
        vec![
            route("IKM(2,4;5)", ikm(2, 4, 5)),
            route("Psi vertical line + constants", |c| Ok(psi_line(c, Bracket::Ikm155)? + psi_const(c, (43, 405), Some((-1, 18432)))?)),
        ],
    ));
    v.push(Identity::vanishing(
        "PSI-VANISH",
        "vanishing Mellin-Barnes integral of Psi",
        25,
        Standard,
        vec![once("Psi vertical line + constants", |c| Ok(psi_line(c, Bracket::Vanish)? + psi_const(c, (4, 45), Some((-1, 256)))?))],
        once("IKM(2,4;1)", ikm(2, 4, 1)),
    ));
    v.push(Identity::new(
        "IKM243-SIMPLE",
        "IKM(2,4;3) from Psi with a simple bracket",
        25,
        Standard,
        vec![
            route("IKM(2,4;3)", ikm(2, 4, 3)),
            route("Psi vertical line + constant", |c| Ok(psi_line(c, Bracket::Simple153)? + psi_const(c, (2, 9), None)?)),
        ],
    ));
    v.push(Identity::new(
        "PSI-CSTAR-CONSTANT",
        "Psi integral with the C*-cancelling bracket reduces to a Gamma(1/3) constant",
        25,
        Standard,
        vec![
            route("Psi vertical line", |c| psi_line(c, Bracket::CStarVanish)),
            route("-4 pi^(3/2)/15 g^-9", |c| psi_const(c, (-4, 15), None)),
        ],
    ));

    v.push(Identity::new(
        "IKM243-CHAIN",
        "hypergeometric and Meijer reduction of IKM(2,4;1) - 8 IKM(2,4;3)",
        20,
        Standard,
        vec![
            route("IKM(2,4;1) - 8 IKM(2,4;3)", ikm24_diff),
            route("7/(240 sqrt3) G33 right residues", |c| {
                Ok(MeijerG::ikm243_g33().residues(Side::Right, c, t(c))? * 7u32 / (c.sqrt_of(3) * 240u32))
            }),
            route("7/(240 sqrt3) G33 left residues", |c| {
                Ok(MeijerG::ikm243_g33().residues(Side::Left, c, t(c))? * 7u32 / (c.sqrt_of(3) * 240u32))
            }),
            route("7 pi^(3/2)/60 4F3 pair", |c| {
                let (a, b) = bl_terms(c)?;
                Ok((a - b) * 7u32 * pi_pow(c, 3, 2) / 60u32)
            }),
            route("9 pi^2/550 4F3", |c| {
                Ok(series(c, "IKM243_4F3")? * 9u32 * pi_pow(c, 2, 1) / 550u32)
            }),
            route("-1/3 Psi vertical line - constant", |c| Ok(-psi_line(c, Bracket::Diff)? / 3u32 + psi_const(c, (-16, 9), None)?)),
        ],
    ));

    v.push(Identity::new(
        "DET-N2",
        "Broadhurst-Mellit determinant formula",
        30,
        Fast,
        vec![
            route("det of moments", |c| {
                let a = ikm_plain(1, 5, 1, c)? * ikm_plain(2, 4, 3, c)?;
                let b = ikm_plain(1, 5, 3, c)? * ikm_plain(2, 4, 1, c)?;
                Ok(a - b)
            }),
            route("pi^4/576", |c| Ok(pi_pow(c, 4, 1) / 576u32)),
        ],
    ));

    v.push(Identity::new(
        "UNIT-COMBO",
        "bilinear relation among four 4F3 values at unit argument",
        20,
        Standard,
        vec![
            route("7/40 Fb Fc + 1/4 Fa Fd", |c| {
                Ok(h4(c, &FB)? * h4(c, &FC)? * 7u32 / 40u32 + h4(c, &FA)? * h4(c, &FD)? / 4u32)
            }),
            route("1", |c| Ok(c.real(1))),
        ],
    ));

    v.push(Identity::new(
        "IKM14-GAMMA15",
        "IKM(1,4;1) as a product of Gamma values at fifteenths",
        30,
        Fast,
        vec![
            route("240 sqrt5 IKM(1,4;1)", |c| Ok(ikm_plain(1, 4, 1, c)? * 240u32 * c.sqrt_of(5))),
            route("Gamma(1/15)Gamma(2/15)Gamma(4/15)Gamma(8/15)", |c| {
                Ok(gamma_q(c, 1, 15)? * gamma_q(c, 2, 15)? * gamma_q(c, 4, 15)? * gamma_q(c, 8, 15)?)
            }),
        ],
    ));

    for (variant, s, name) in [(MellinVariant::Plain, rat(3, 4), "PLAIN"), (MellinVariant::Shifted, rat(3, 2), "SHIFTED")] {
        let s2 = s.clone();
        v.push(Identity::new(
            &format!("MELLIN-2F1-{name}"),
            "Mellin transform of a Legendre-type 2F1",
            30,
            Fast,
            vec![
                route("quadrature", move |c| Ok(mellin_2f1(variant, &rat(-1, 3), &s, c)?.0)),
                route("Gamma ratio", move |c| Ok(mellin_2f1(variant, &rat(-1, 3), &s2, c)?.1)),
            ],
        ));
    }

    for tv in ["1/2", "1", "2"] {
        for k_kind in [false, true] {
            let (a, b) = (tv.to_string(), tv.to_string());
            v.push(Identity::new(
                &format!("NEUMANN-{}-{}", if k_kind { "K0" } else { "I0" }, tag(tv)),
                if k_kind { "analog of the Neumann addition formula for K0" } else { "Neumann addition formula for I0" },
                30,
                Fast,
                vec![
                    route("(2/pi) int B(2t cos)", move |c| neumann_addition(k_kind, &x_of(&a, c), c)),
                    route("Bessel product", move |c| {
                        let x = x_of(&b, c);
                        let i = bessel_i0(&x, c)?;
                        Ok(if k_kind { i * bessel_k0(&x, c)? } else { i.square() })
                    }),
                ],
            ));
        }
    }

    v.push(Identity::new(
        "BAILEY-K-PRODUCT",
        "Bailey's integral formula for int K0 I0 K0 dt",
        30,
        Fast,
        vec![
            route("1/2 int K0 I0 K0", |c| param_moment(ParamKind::BaileyIk, &c.real(1), c)),
            route("1/2 K(l+) K(l-)", |c| {
                let p = c.prec();
                let half = c.real(1) / 2u32;
                let im = c.sqrt_of(3) / 2u32;
                let lp = Complex::new(half.clone(), im.clone());
                let lm = Complex::new(half, -im);
                let a = elliptic_k(&lp, c)?;
                let b = elliptic_k(&lm, c)?;
                let re = Float::with_val(p, &a.re * &b.re) - Float::with_val(p, &a.im * &b.im);
                Ok(re / 2u32)
            }),
        ],
    ));

    for (n, cap) in [(0i64, 4u32), (1, 3)] {
        v.push(Identity::new(
            &format!("ZUDILIN-N{n}"),
            "Zudilin's triple integral evaluated as a very-well-poised 7F6",
            20,
            Slow,
            vec![
                route("IKM combination", move |c| zudilin_target(n, c)),
                route("Zudilin 7F6", move |c| zudilin_7f6(n, c)),
                capped("3-D tanh-sinh", cap, move |c| Ok(c.real(zudilin_triple(n as u32, 9)?.value))),
            ],
        ));
    }

    v.push(
        Identity::vanishing(
            "VANHOVE-L3",
            "Vanhove's third-order operator annihilates the MB1 and MB2 integrals",
            10,
            Standard,
            vec![
                once("L3 MB1 at u = 1/2", |c| vanhove_apply(VanhoveOp::L3, ParamKind::Mb1Lhs, &q(c, 1, 2), c)),
                once("L3 MB2 at u = 1/2", |c| vanhove_apply(VanhoveOp::L3, ParamKind::Mb2Lhs, &q(c, 1, 2), c)),
            ],
            once("1", |c| Ok(c.real(1))),
        )
        .work_digits(60),
    );
    v.push(
        Identity::new(
            "VANHOVE-L4",
            "Vanhove's fourth-order operator on int I0(sqrt(u) t) K0^5 t dt",
            10,
            Standard,
            vec![
                once("L4 at u = 1/2", |c| vanhove_apply(VanhoveOp::L4, ParamKind::Ikm15Param, &q(c, 1, 2), c)),
                once("-15/2", |c| Ok(q(c, -15, 2))),
            ],
        )
        .work_digits(60),
    );

    v.push(Identity::vanishing(
        "PHI-REFLECT",
        "reflection Phi(s) = Phi(1/2 - s)",
        30,
        Fast,
        vec![once("max |Phi(s) - Phi(1/2 - s)|", |c| {
            let p = c.prec();
            let half = c.real(1) / 2u32;
            let mut d = Vec::new();
            for s in kernel_points(c) {
                let r = Complex::new(Float::with_val(p, &half - &s.re), Float::with_val(p, -&s.im));
                d.push((&phi(&s, c)? - &phi(&r, c)?).abs());
            }
            Ok(max_abs(d.into_iter(), p))
        })],
        once("max |Phi(s)|", |c| {
            let mut d = Vec::new();
            for s in kernel_points(c) {
                d.push(phi(&s, c)?.abs());
            }
            Ok(max_abs(d.into_iter(), c.prec()))
        }),
    ));

    v.push(Identity::vanishing(
        "PSI-PHI-REL",
        "Psi(s) 5 pi sin(2 pi s) = 9 Phi(s)",
        30,
        Fast,
        vec![once("max |5 pi sin(2 pi s) Psi - 9 Phi|", |c| {
            let p = c.prec();
            let mut d = Vec::new();
            for s in kernel_points(c) {
                let two_s = s.scale(&c.real(2));
                let sn = crate::specfun::sin_pi_complex(&two_s);
                let lhs = (&psi(&s, c)? * &sn).scale(&(c.pi() * 5u32));
                d.push((&lhs - &phi(&s, c)?.scale(&c.real(9))).abs());
            }
            Ok(max_abs(d.into_iter(), p))
        })],
        once("max |9 Phi(s)|", |c| {
            let mut d = Vec::new();
            for s in kernel_points(c) {
                d.push(phi(&s, c)?.abs() * 9u32);
            }
            Ok(max_abs(d.into_iter(), c.prec()))
        }),
    ));

    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

/// The compiled-in catalogue, sorted by id.
pub fn catalogue() -> &'static [Identity] {
    static CAT: OnceLock<Vec<Identity>> = OnceLock::new();
    CAT.get_or_init(build)
}

pub fn find(id: &str) -> Result<&'static Identity> {
    catalogue().iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

struct Evaluated {
    name: &'static str,
    mode: Mode,
    value: Float,
    bits: u32,
    /// digits this value can resolve
    trust: u32,
}

fn evaluate(r: &Route, target: u32, min_digits: u32) -> Result<Evaluated> {
    match r.mode {
        Mode::Adaptive => {
            let start = PrecisionContext::for_digits(target);
            let a = adaptive_eval(|c| r.eval(c), target, start.max_bits)?;
            let trust = a.agreed_digits.min(start.with_work_bits(a.bits).digits());
            Ok(Evaluated { name: r.name, mode: r.mode, value: a.value, bits: a.bits, trust })
        }
        Mode::Once => {
            let c = PrecisionContext::for_digits((target + ONCE_MARGIN).max(min_digits));
            Ok(Evaluated { name: r.name, mode: r.mode, value: r.eval(&c)?, bits: c.work_bits, trust: c.digits() })
        }
        Mode::Capped(_) => {
            let c = PrecisionContext::for_digits(target);
            Ok(Evaluated { name: r.name, mode: r.mode, value: r.eval(&c)?, bits: c.work_bits, trust: c.digits() })
        }
    }
}

fn cap_of(m: Mode) -> Option<u32> {
    match m {
        Mode::Capped(c) => Some(c),
        _ => None,
    }
}

fn shown_digits(target: u32, mode: Mode) -> usize {
    match mode {
        Mode::Capped(c) => c as usize + 3,
        _ => target as usize + 5,
    }
}

/// Runs every route of `id` at `target` digits (the identity default when `None`).
pub fn run_identity(id: &str, target: Option<u32>) -> Result<VerificationReport> {
    let ident = find(id)?;
    Ok(run(ident, target.unwrap_or(ident.default_target_digits)))
}

pub fn run(ident: &Identity, target: u32) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        identity_id: ident.id.clone(),
        citation: ident.citation.clone(),
        values: Vec::new(),
        agreed_digits: 0,
        target_digits: target,
        status: Status::Fail,
        elapsed_seconds: 0.0,
        precision_used_bits: 0,
        reason: None,
    };
    let mut done = Vec::new();
    let mut failure = None;
    let all: Vec<&Route> = ident.routes.iter().chain(ident.scale.iter()).collect();
    for r in all {
        match evaluate(r, target, ident.min_work_digits) {
            Ok(e) => {
                report.values.push(RouteValue { route: e.name.to_string(), value: to_decimal(&e.value, shown_digits(target, e.mode)) });
                report.precision_used_bits = report.precision_used_bits.max(e.bits);
                done.push(e);
            }
            Err(err) => {
                report.values.push(RouteValue { route: r.name.to_string(), value: "error".into() });
                failure.get_or_insert_with(|| format!("{}: {err}", r.name));
            }
        }
    }
    if let Some(reason) = failure {
        report.reason = Some(reason);
        report.elapsed_seconds = start.elapsed().as_secs_f64();
        return report;
    }
    let mut agreed = u32::MAX;
    let mut capped_pair = false;
    let mut ok = true;
    match ident.kind {
        IdentityKind::Equality => {
            for i in 0..done.len() {
                for j in i + 1..done.len() {
                    let d = digits_agreement(&done[i].value, &done[j].value).min(done[i].trust).min(done[j].trust);
                    let need = [cap_of(done[i].mode), cap_of(done[j].mode)].into_iter().flatten().fold(target, u32::min);
                    if need < target {
                        capped_pair = true;
                    }
                    if d < need {
                        ok = false;
                        report.reason.get_or_insert_with(|| format!("{} vs {}: {d} digits", done[i].name, done[j].name));
                    }
                    agreed = agreed.min(d);
                }
            }
        }
        IdentityKind::Vanishing => {
            let (scale, vals) = done.split_last().expect("scale route");
            for e in vals {
                let d = vanishing_digits(&e.value, &scale.value).min(e.trust);
                if d < target {
                    ok = false;
                    report.reason.get_or_insert_with(|| format!("{} is {d} digits below the scale", e.name));
                }
                agreed = agreed.min(d);
            }
        }
    }
    report.agreed_digits = if agreed == u32::MAX { 0 } else { agreed };
    report.status = match (ok, capped_pair) {
        (false, _) => Status::Fail,
        (true, true) if report.agreed_digits < target => Status::LowPrecisionPass,
        _ => Status::Pass,
    };
    report.elapsed_seconds = start.elapsed().as_secs_f64();
    report
}

/// Runs the identities whose cost class is in `costs`, with `jobs` threads, in id order.
pub fn run_all(costs: &[Cost], target: Option<u32>, jobs: usize) -> Vec<VerificationReport> {
    let picked: Vec<&Identity> = catalogue().iter().filter(|i| costs.contains(&i.cost)).collect();
    run_selected(&picked, target, jobs)
}

pub fn run_selected(picked: &[&Identity], target: Option<u32>, jobs: usize) -> Vec<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    pool.install(|| picked.par_iter().map(|i| run(i, target.unwrap_or(i.default_target_digits))).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExportedIdentity {
    pub id: String,
    pub citation: String,
    pub kind: IdentityKind,
    pub routes: Vec<String>,
    pub scale: Option<String>,
    pub default_target_digits: u32,
    pub cost_class: Cost,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegistryDocument {
    pub version: String,
    pub identities: Vec<ExportedIdentity>,
}

impl RegistryDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("registry serializes");
        s.push('\n');
        s
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad registry document: {e}")))
    }
}

pub fn export_registry() -> RegistryDocument {
    let identities = catalogue()
        .iter()
        .map(|i| ExportedIdentity {
            id: i.id.clone(),
            citation: i.citation.clone(),
            kind: i.kind,
            routes: i.routes.iter().map(|r| r.name.to_string()).collect(),
            scale: i.scale.as_ref().map(|r| r.name.to_string()),
            default_target_digits: i.default_target_digits,
            cost_class: i.cost,
        })
        .collect();
    RegistryDocument { version: REPORT_VERSION.into(), identities }
}
