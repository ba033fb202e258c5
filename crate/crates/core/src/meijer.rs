//! Mellin-Barnes kernels built from Gamma ratios: residue series (simple and
//! double poles) and numerical vertical-line integrals.
//!
//! A kernel is `prod Gamma(num) / prod Gamma(den) * z^(-s)`; the integral
//! `(1/2 pi i) int_(delta - i inf)^(delta + i inf) K(s) b(s) ds` with a bracket
//! `b` from a small fixed catalogue is what every routine here evaluates.

use crate::error::{Error, Result};
use crate::hyper::{sum_unit, HyperSeries, PsiWeight};
use crate::mpcore::{rat, Complex, PrecisionContext};
use crate::quad::{exp_sinh, integrate_de, Endpoint, IntegrandSpec};
use crate::specfun::{cos_pi, digamma_rat, gamma, gamma_rat, rgamma_rat, sin_pi};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Gamma(shift + sign * s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub shift: Rational,
    pub sign: i8,
}

impl GammaFactor {
    pub fn new(shift: Rational, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        GammaFactor { shift, sign }
    }

    fn at(&self, s: &Complex, prec: u32) -> Complex {
        let sh = Float::with_val(prec, &self.shift);
        let z = if self.sign > 0 { s.clone() } else { -s.clone() };
        z.add_real(&sh)
    }

    fn at_rat(&self, s: &Rational) -> Rational {
        Rational::from(&self.shift + Rational::from(s * self.sign as i32))
    }

    /// Largest-first list is irrelevant; poles sit where the argument is -j.
    fn is_pole_at(&self, s: &Rational) -> bool {
        let a = self.at_rat(s);
        *a.denom() == 1 && a <= 0
    }
}

fn gf(p: i64, q: i64, sign: i8) -> GammaFactor {
    GammaFactor::new(rat(p, q), sign)
}

/// The z of z^(-s). `Negative(w)` stands for w e^(i pi), w > 0.
#[derive(Clone, Debug, PartialEq)]
pub enum MellinArg {
    Unit,
    Positive(Float),
    Negative(Float),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub num: Vec<GammaFactor>,
    pub den: Vec<GammaFactor>,
    pub arg: MellinArg,
}

/// Decay of a kernel along vertical lines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// |K| ~ exp(-rate |tau|) (times a power)
    Exponential(f64),
    /// |K| ~ |tau|^(-power)
    Algebraic(f64),
}

impl Kernel {
    pub fn eval(&self, s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
        let p = ctx.prec();
        let mut acc = Complex::from_real(Float::with_val(p, 1));
        for f in &self.num {
            acc = &acc * &gamma(&f.at(s, p), ctx)?;
        }
        for f in &self.den {
            acc = acc.div(&gamma(&f.at(s, p), ctx)?);
        }
        match &self.arg {
            MellinArg::Unit => {}
            MellinArg::Positive(z) => {
                let lz = Float::with_val(p, z.ln_ref());
                acc = &acc * &(-s.scale(&lz)).exp();
            }
            MellinArg::Negative(w) => {
                let lz = Complex::new(Float::with_val(p, w.ln_ref()), Float::with_val(p, Constant::Pi));
                acc = &acc * &(-(s * &lz)).exp();
            }
        }
        Ok(acc)
    }

    /// Value at a real rational point; zero where a denominator Gamma has a pole.
    pub fn eval_rat(&self, s: &Rational, ctx: &PrecisionContext) -> Result<Float> {
        let p = ctx.prec();
        let mut acc = Float::with_val(p, 1);
        for f in &self.num {
            acc *= gamma_rat(&f.at_rat(s), ctx)?;
        }
        for f in &self.den {
            acc *= rgamma_rat(&f.at_rat(s), ctx);
        }
        match &self.arg {
            MellinArg::Unit => {}
            MellinArg::Positive(z) => {
                let e = Float::with_val(p, z.ln_ref()) * Float::with_val(p, s);
                acc *= (-e).exp();
            }
            MellinArg::Negative(_) => {
                return Err(Error::UnsupportedSpec("real evaluation of a kernel with negative argument".into()))
            }
        }
        Ok(acc)
    }

    pub fn conj_symmetric(&self) -> bool {
        !matches!(self.arg, MellinArg::Negative(_))
    }

    /// Decay on the line Re s = delta, with the bracket's own 1/s when it has no constant.
    pub fn decay(&self, bracket: Bracket, delta: &Rational) -> Decay {
        let excess = self.num.len() as f64 - self.den.len() as f64;
        if excess > 0.0 {
            let mut rate = std::f64::consts::FRAC_PI_2 * excess;
            if let MellinArg::Negative(_) = self.arg {
                rate -= std::f64::consts::PI;
            }
            return Decay::Exponential(rate);
        }
        let re = |f: &GammaFactor| f.at_rat(delta).to_f64() - 0.5;
        let mut power = -(self.num.iter().map(re).sum::<f64>() - self.den.iter().map(re).sum::<f64>());
        if bracket.terms().1 == 0 {
            power += 1.0;
        }
        Decay::Algebraic(power)
    }

    fn pole_factor_indices(&self, s: &Rational) -> Vec<usize> {
        (0..self.num.len()).filter(|&i| self.num[i].is_pole_at(s)).collect()
    }
}

/// Rational brackets `sum A/(p + q s) + B` multiplying a kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    One,
    /// 1/(3(5-6s)) + 1/(2s+1) - 2/3
    Ikm153,
    /// 25/(54(7-6s)) + 43/(108(5-6s)) + 23/(4(2s+1)) - 45/(2(2s+3)) + 68/27
    Ikm155,
    /// 100/(3(7-6s)) + 1/(3(5-6s)) + 329/(2s+1) - 1620/(2s+3) + 240
    Vanish,
    /// 1/(5-6s) - 2/(1+2s) + 1
    CStarVanish,
    /// 5/(6(5-6s)) - 1/6
    Simple153,
    /// 20/(5-6s) - 7
    Diff,
    /// 10/(5-6s) + 5/(1+3s) - 7
    DiffStar,
    /// 5/(7-6s) + 1/(2(5-6s)) - 3/(2(1+2s))
    Cancel1,
    /// 12/(7-6s) + 3/(7(5-6s)) - 1/(1+2s) - 36/(7(3+2s))
    Cancel2,
}

pub type BracketTerm = (Rational, i64, i64);

impl Bracket {
    pub const ALL: [Bracket; 10] = [
        Bracket::One,
        Bracket::Ikm153,
        Bracket::Ikm155,
        Bracket::Vanish,
        Bracket::CStarVanish,
        Bracket::Simple153,
        Bracket::Diff,
        Bracket::DiffStar,
        Bracket::Cancel1,
        Bracket::Cancel2,
    ];

    /// Partial fractions (A, p, q) for A/(p + q s), and the constant.
    pub fn terms(&self) -> (Vec<BracketTerm>, Rational) {
        let t = |a: i64, b: i64, p: i64, q: i64| (rat(a, b), p, q);
        match self {
            Bracket::One => (vec![], rat(1, 1)),
            Bracket::Ikm153 => (vec![t(1, 3, 5, -6), t(1, 1, 1, 2)], rat(-2, 3)),
            Bracket::Ikm155 => (
                vec![t(25, 54, 7, -6), t(43, 108, 5, -6), t(23, 4, 1, 2), t(-45, 2, 3, 2)],
                rat(68, 27),
            ),
            Bracket::Vanish => (
                vec![t(100, 3, 7, -6), t(1, 3, 5, -6), t(329, 1, 1, 2), t(-1620, 1, 3, 2)],
                rat(240, 1),
            ),
            Bracket::CStarVanish => (vec![t(1, 1, 5, -6), t(-2, 1, 1, 2)], rat(1, 1)),
            Bracket::Simple153 => (vec![t(5, 6, 5, -6)], rat(-1, 6)),
            Bracket::Diff => (vec![t(20, 1, 5, -6)], rat(-7, 1)),
            Bracket::DiffStar => (vec![t(10, 1, 5, -6), t(5, 1, 1, 3)], rat(-7, 1)),
            Bracket::Cancel1 => (vec![t(5, 1, 7, -6), t(1, 2, 5, -6), t(-3, 2, 1, 2)], rat(0, 1)),
            Bracket::Cancel2 => (
                vec![t(12, 1, 7, -6), t(3, 7, 5, -6), t(-1, 1, 1, 2), t(-36, 7, 3, 2)],
                rat(0, 1),
            ),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Bracket::One => "1",
            Bracket::Ikm153 => "ikm153",
            Bracket::Ikm155 => "ikm155",
            Bracket::Vanish => "vanish",
            Bracket::CStarVanish => "cstar-vanish",
            Bracket::Simple153 => "simple153",
            Bracket::Diff => "diff",
            Bracket::DiffStar => "diff-star",
            Bracket::Cancel1 => "cancel1",
            Bracket::Cancel2 => "cancel2",
        }
    }

    pub fn eval(&self, s: &Complex) -> Complex {
        let p = s.prec();
        let (terms, b) = self.terms();
        let mut acc = Complex::from_real(Float::with_val(p, &b));
        for (a, pp, q) in terms {
            let d = s.scale(&Float::with_val(p, q)).add_real(&Float::with_val(p, pp));
            acc = &acc + &d.recip().scale(&Float::with_val(p, &a));
        }
        acc
    }

    pub fn eval_rat(&self, s: &Rational) -> Option<Rational> {
        let (terms, b) = self.terms();
        let mut acc = b;
        for (a, p, q) in terms {
            let d = Rational::from(s * q) + p;
            if d == 0 {
                return None;
            }
            acc += a / d;
        }
        Some(acc)
    }

    /// Points where the bracket itself has a pole.
    pub fn poles(&self) -> Vec<(Rational, Rational)> {
        self.terms().0.into_iter().map(|(a, p, q)| (rat(-p, q), a / q)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    fn sigma(self) -> i64 {
        match self {
            Side::Right => 1,
            Side::Left => -1,
        }
    }

    fn pole_sign(self) -> i8 {
        -(self.sigma() as i8)
    }
}

fn frac(q: &Rational) -> Rational {
    let (f, _) = q.clone().fract_floor(Integer::new());
    f
}

fn is_nonpos_int(q: &Rational) -> bool {
    *q.denom() == 1 && *q <= 0
}

/// One residue family: points s = sigma (start + n), n = 0, 1, ... (count of them).
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub side: Side,
    pub start: Rational,
    pub poles: Vec<usize>,
    pub count: Option<u64>,
}

impl Family {
    pub fn order(&self) -> usize {
        self.poles.len()
    }

    pub fn first_point(&self) -> Rational {
        Rational::from(&self.start * self.side.sigma() as i32)
    }
}

/// Pole families of `kernel` on one side, derived exactly from parameter differences.
pub fn families(kernel: &Kernel, side: Side) -> Result<Vec<Family>> {
    let pole_idx: Vec<usize> = (0..kernel.num.len()).filter(|&i| kernel.num[i].sign == side.pole_sign()).collect();
    let mut classes: Vec<(Rational, Vec<usize>)> = Vec::new();
    for &i in &pole_idx {
        let c = frac(&kernel.num[i].shift);
        match classes.iter_mut().find(|(k, _)| *k == c) {
            Some((_, v)) => v.push(i),
            None => classes.push((c, vec![i])),
        }
    }
    let mut out = Vec::new();
    for (class, mut idx) in classes {
        idx.sort_by(|a, b| kernel.num[*a].shift.cmp(&kernel.num[*b].shift));
        let b0 = kernel.num[idx[0]].shift.clone();
        // factors of the opposite type that blow up (or vanish) on this lattice
        let clash = |f: &GammaFactor| {
            let m = Rational::from(-&f.shift);
            frac(&m) == class && m >= b0
        };
        for (i, f) in kernel.num.iter().enumerate() {
            if !idx.contains(&i) && f.sign != side.pole_sign() && clash(f) {
                return Err(Error::UnsupportedSpec(format!("opposite poles overlap the family at {class}")));
            }
        }
        for f in &kernel.den {
            let bad = if f.sign == side.pole_sign() { frac(&f.shift) == class } else { clash(f) };
            if bad {
                return Err(Error::UnsupportedSpec(format!("denominator zero inside the family at {class}")));
            }
        }
        match idx.len() {
            1 => out.push(Family { side, start: b0, poles: idx, count: None }),
            2 => {
                let b1 = kernel.num[idx[1]].shift.clone();
                let gap = Rational::from(&b1 - &b0);
                if gap > 0 {
                    let n = gap.numer().to_u64().expect("small gap");
                    out.push(Family { side, start: b0.clone(), poles: vec![idx[0]], count: Some(n) });
                }
                out.push(Family { side, start: b1, poles: idx, count: None });
            }
            k => return Err(Error::UnsupportedSpec(format!("pole of order {k} at class {class}"))),
        }
    }
    out.sort_by(|a, b| a.first_point().cmp(&b.first_point()));
    Ok(out)
}

/// Residue contributions along a family written as a hypergeometric-type series
/// t0 * prod (num)_n / prod (den)_n * (+-1)^n * ratio^n * [psi weight].
#[derive(Clone, Debug)]
struct TermSeries {
    t0: Float,
    num: Vec<Rational>,
    den: Vec<Rational>,
    alternating: bool,
    ratio: Option<Float>,
    psi: Option<PsiWeight>,
}

fn pi_cot(c: &Rational, ctx: &PrecisionContext) -> Float {
    let x = ctx.rat(c);
    ctx.pi() * cos_pi(&x) / sin_pi(&x)
}

fn family_series(
    kernel: &Kernel,
    fam: &Family,
    offset: u64,
    term: Option<&BracketTerm>,
    ctx: &PrecisionContext,
) -> Result<TermSeries> {
    let p = ctx.prec() + 32;
    let pc = ctx.with_work_bits(p);
    let sigma = fam.side.sigma();
    let start = Rational::from(&fam.start + offset);
    let s0 = Rational::from(&start * sigma as i32);
    let double = fam.poles.len() == 2;
    let mut t0 = Float::with_val(p, 1);
    let (mut num, mut den) = (Vec::new(), Vec::new());
    let mut alt = false;
    let mut pconst = Float::with_val(p, 0);
    let mut pterms: Vec<(i64, Rational)> = Vec::new();
    for (i, f) in kernel.num.iter().enumerate() {
        let c = f.at_rat(&s0);
        if fam.poles.contains(&i) {
            let k = Rational::from(-&c);
            if *k.denom() != 1 || k < 0 {
                return Err(Error::UnsupportedSpec(format!("pole factor off its lattice at {s0}")));
            }
            let k = k.numer().to_u32().expect("small pole index");
            t0 /= Float::with_val(p, &crate::mpcore::factorial(k));
            if k % 2 == 1 {
                t0 = -t0;
            }
            den.push(Rational::from(k + 1));
            alt = !alt;
            pterms.push((1, Rational::from(k + 1)));
            continue;
        }
        if is_nonpos_int(&c) {
            return Err(Error::UnsupportedSpec(format!("unexpected pole of a regular factor at {s0}")));
        }
        t0 *= gamma_rat(&c, &pc)?;
        if f.sign as i64 * sigma == 1 {
            num.push(c.clone());
            pterms.push((-1, c));
        } else {
            let d = Rational::from(1 - &c);
            // fine on a finite segment that stops before the pole
            let stops = fam.count.is_some_and(|n| Rational::from(n - offset.min(n)) <= c);
            if is_nonpos_int(&d) && !stops {
                return Err(Error::UnsupportedSpec(format!("regular factor reaches a pole along {s0}")));
            }
            den.push(d.clone());
            alt = !alt;
            pterms.push((1, d));
            if double {
                pconst -= pi_cot(&c, &pc);
            }
        }
    }
    for f in &kernel.den {
        let c = f.at_rat(&s0);
        if is_nonpos_int(&c) {
            return Err(Error::UnsupportedSpec(format!("denominator pole at {s0}")));
        }
        t0 *= rgamma_rat(&c, &pc);
        if f.sign as i64 * sigma == 1 {
            den.push(c.clone());
            pterms.push((1, c));
        } else {
            let d = Rational::from(1 - &c);
            if double && is_nonpos_int(&d) {
                return Err(Error::UnsupportedSpec(format!("terminating denominator in a double family at {s0}")));
            }
            num.push(d.clone());
            alt = !alt;
            pterms.push((-1, d));
            if double {
                pconst += pi_cot(&c, &pc);
            }
        }
    }
    if let Some((a, pp, q)) = term {
        // A/(p + q s_n) = A/(q sigma (c + n)) with c = (p + q s0)/(q sigma)
        let qs = Rational::from(q * sigma);
        let c = (Rational::from(&s0 * *q) + *pp) / &qs;
        if is_nonpos_int(&c) {
            return Err(Error::UnsupportedSpec(format!("bracket pole on the family at {s0}")));
        }
        t0 *= pc.rat(&(a.clone() / (qs * &c)));
        let c1 = Rational::from(&c + 1);
        num.push(c.clone());
        den.push(c1.clone());
        pterms.push((1, c1));
        pterms.push((-1, c));
    }
    let mut ratio = None;
    match &kernel.arg {
        MellinArg::Unit => {}
        MellinArg::Positive(z) => {
            let lz = Float::with_val(p, z.ln_ref());
            t0 *= (-Float::with_val(p, &lz * pc.rat(&s0))).exp();
            ratio = Some(Float::with_val(p, &lz * -sigma).exp());
            pconst += Float::with_val(p, &lz * sigma);
        }
        MellinArg::Negative(_) => {
            return Err(Error::UnsupportedSpec("residue sums need a positive argument".into()));
        }
    }
    let psi = double.then(|| PsiWeight { constant: pconst, terms: merge_psi(pterms) });
    Ok(TermSeries { t0, num, den, alternating: alt, ratio, psi })
}

fn merge_psi(terms: Vec<(i64, Rational)>) -> Vec<(i64, Rational)> {
    let mut out: Vec<(i64, Rational)> = Vec::new();
    for (w, g) in terms {
        match out.iter_mut().find(|(_, h)| *h == g) {
            Some(e) => e.0 += w,
            None => out.push((w, g)),
        }
    }
    out.retain(|(w, _)| *w != 0);
    out
}

/// Parameters shared by num and den cancel; keeps the unit-argument exponent honest.
fn cancel_common(num: &mut Vec<Rational>, den: &mut Vec<Rational>) {
    let mut i = 0;
    while i < num.len() {
        if let Some(j) = den.iter().position(|d| *d == num[i]) {
            num.remove(i);
            den.remove(j);
        } else {
            i += 1;
        }
    }
}

const DIRECT_CAP: u64 = 4_000_000;

/// Plain summation for finite families and geometric (non-unit) series.
fn direct(ts: &TermSeries, count: Option<u64>, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec() + 32;
    let pc = ctx.with_work_bits(p);
    let eps = Float::with_val(p, 1) >> (ctx.prec() + 8);
    let mut b = ts.t0.clone();
    let mut sum = Float::with_val(p, 0);
    let mut psis = Vec::new();
    if let Some(w) = &ts.psi {
        for (wi, g) in &w.terms {
            psis.push((*wi, g.clone(), digamma_rat(g, &pc)?));
        }
    }
    let limit = count.unwrap_or(DIRECT_CAP);
    let mut small_run = 0;
    let mut n = 0u64;
    while n < limit {
        let term = match &ts.psi {
            None => b.clone(),
            Some(w) => {
                let mut wt = w.constant.clone();
                for (wi, _, ps) in &psis {
                    wt += Float::with_val(p, ps * *wi);
                }
                Float::with_val(p, &b * &wt)
            }
        };
        sum += &term;
        if count.is_none() {
            let tiny = term.is_zero() || Float::with_val(p, term.abs_ref()) <= Float::with_val(p, sum.abs_ref()) * &eps;
            small_run = if tiny { small_run + 1 } else { 0 };
            if small_run >= 4 && n > 8 {
                return Ok(sum);
            }
        }
        for (_, g, ps) in psis.iter_mut() {
            *ps += pc.rat(&Rational::from(g.clone() + n)).recip();
        }
        let mut r = Float::with_val(p, 1);
        for a in &ts.num {
            r *= pc.rat(&Rational::from(a + n));
        }
        for d in &ts.den {
            r /= pc.rat(&Rational::from(d + n));
        }
        if ts.alternating {
            r = -r;
        }
        if let Some(z) = &ts.ratio {
            r *= z;
        }
        b *= r;
        n += 1;
    }
    if count.is_some() {
        Ok(sum)
    } else {
        Err(Error::NoConvergence(format!("residue series not settled after {DIRECT_CAP} terms")))
    }
}

fn sum_series(mut ts: TermSeries, count: Option<u64>, ctx: &PrecisionContext, target: u32) -> Result<Float> {
    if count.is_some() || ts.ratio.is_some() || ts.num.iter().any(is_nonpos_int) {
        return direct(&ts, count, ctx);
    }
    if ts.alternating {
        return Err(Error::UnsupportedSpec("alternating residue series at unit argument".into()));
    }
    if ts.psi.is_none() {
        cancel_common(&mut ts.num, &mut ts.den);
    }
    let hs = HyperSeries { t0: ts.t0, num: ts.num, den: ts.den, psi: ts.psi };
    Ok(sum_unit(&hs, ctx, target)?.value)
}

/// Sum of one family's contributions (already signed so that closing on the
/// family's side gives the integral).
pub fn family_sum(kernel: &Kernel, bracket: Bracket, fam: &Family, ctx: &PrecisionContext, target: u32) -> Result<Float> {
    let p = ctx.prec();
    let (terms, b) = bracket.terms();
    let mut total = Float::with_val(p, 0);
    for t in &terms {
        let ts = family_series(kernel, fam, 0, Some(t), ctx)?;
        total += sum_series(ts, fam.count, ctx, target)?;
    }
    if b != 0 {
        let ts = family_series(kernel, fam, 0, None, ctx)?;
        total += sum_series(ts, fam.count, ctx, target)? * ctx.rat(&b);
    }
    Ok(total)
}

/// Integral along a contour separating the two pole sides, by closing on `side`.
pub fn residue_closure(kernel: &Kernel, bracket: Bracket, side: Side, ctx: &PrecisionContext, target: u32) -> Result<Float> {
    let mut total = Float::with_val(ctx.prec(), 0);
    for fam in families(kernel, side)? {
        total += family_sum(kernel, bracket, &fam, ctx, target)?;
    }
    Ok(total)
}

/// Contribution of a simple pole of the kernel at s (signed as in `family_sum`).
pub fn point_contribution(kernel: &Kernel, bracket: Bracket, s: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let idx = kernel.pole_factor_indices(s);
    if idx.len() != 1 {
        return Err(Error::UnsupportedSpec(format!("pole of order {} at {s}", idx.len())));
    }
    let f = &kernel.num[idx[0]];
    let side = if f.sign < 0 { Side::Right } else { Side::Left };
    let sigma = side.sigma();
    let fam = Family { side, start: Rational::from(s * sigma as i32), poles: idx, count: Some(1) };
    let (terms, b) = bracket.terms();
    let p = ctx.prec();
    let mut total = Float::with_val(p, 0);
    for t in &terms {
        total += direct(&family_series(kernel, &fam, 0, Some(t), ctx)?, Some(1), ctx)?;
    }
    if b != 0 {
        total += direct(&family_series(kernel, &fam, 0, None, ctx)?, Some(1), ctx)? * ctx.rat(&b);
    }
    Ok(Float::with_val(p, total))
}

/// Kernel poles lying on the wrong side of Re s = delta.
pub fn mis_sided_poles(kernel: &Kernel, delta: &Rational) -> Result<Vec<Rational>> {
    let mut out: Vec<Rational> = Vec::new();
    for f in &kernel.num {
        let mut j = 0i64;
        loop {
            // pole where shift + sign s = -j
            let s = Rational::from(-(Rational::from(&f.shift + j))) * f.sign as i32;
            if s == *delta {
                return Err(Error::UnsupportedContour(format!("pole on the line Re s = {delta}")));
            }
            let wrong = if f.sign < 0 { s < *delta } else { s > *delta };
            if !wrong {
                break;
            }
            if !out.contains(&s) {
                out.push(s);
            }
            j += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// Value of the contour integral that separates the sides (the G-function
/// contour) from the vertical-line value at delta.
pub fn separated_from_vertical(kernel: &Kernel, bracket: Bracket, delta: &Rational, vertical: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let mut v = Float::with_val(ctx.prec(), vertical);
    for s in mis_sided_poles(kernel, delta)? {
        v += point_contribution(kernel, bracket, &s, ctx)?;
    }
    Ok(v)
}

/// Vertical-line integral at delta by closing to the right: family residues,
/// minus wrong-side kernel poles, minus bracket poles right of delta.
pub fn vertical_by_residues(kernel: &Kernel, bracket: Bracket, delta: &Rational, side: Side, ctx: &PrecisionContext, target: u32) -> Result<Float> {
    let mut v = residue_closure(kernel, bracket, side, ctx, target)?;
    for s in mis_sided_poles(kernel, delta)? {
        v -= point_contribution(kernel, bracket, &s, ctx)?;
    }
    for (s, a_over_q) in bracket.poles() {
        if s == *delta {
            return Err(Error::UnsupportedContour(format!("bracket pole on the line at {delta}")));
        }
        let enclosed = match side {
            Side::Right => s > *delta,
            Side::Left => s < *delta,
        };
        if !enclosed {
            continue;
        }
        if !kernel.pole_factor_indices(&s).is_empty() {
            return Err(Error::UnsupportedSpec(format!("bracket pole meets a kernel pole at {s}")));
        }
        let r = kernel.eval_rat(&s, ctx)? * ctx.rat(&a_over_q);
        match side {
            Side::Right => v -= r,
            Side::Left => v += r,
        }
    }
    Ok(v)
}

/// Result of a numerical vertical-line integral.
#[derive(Clone, Debug)]
pub struct VerticalValue {
    pub value: Complex,
    /// algebraic decay forces the capped low-precision route
    pub low_precision: bool,
}

const TAIL_CUT: f64 = 1e7;

/// Digits the algebraic-decay route is trusted for.
pub const LOW_PRECISION_DIGITS: u32 = 12;

/// (1/2 pi) int K(delta + i tau) b(delta + i tau) d tau over the real line.
pub fn mb_vertical_line(kernel: &Kernel, bracket: Bracket, delta: &Rational, ctx: &PrecisionContext) -> Result<VerticalValue> {
    mis_sided_poles(kernel, delta)?;
    if bracket.poles().iter().any(|(s, _)| s == delta) {
        return Err(Error::UnsupportedContour(format!("bracket pole on the line at {delta}")));
    }
    let decay = kernel.decay(bracket, delta);
    match decay {
        Decay::Exponential(rate) if rate > 0.0 => {
            let p = ctx.prec();
            let d = ctx.rat(delta);
            let at = |tau: &Float, sgn: i32| -> Result<Complex> {
                let s = Complex::new(d.clone(), Float::with_val(p, tau * sgn));
                Ok(&kernel.eval(&s, ctx)? * &bracket.eval(&s))
            };
            let pi = ctx.pi();
            if kernel.conj_symmetric() {
                let v = exp_sinh(|t| Ok(at(t, 1)?.re), Endpoint::Smooth, rate, ctx)?;
                return Ok(VerticalValue { value: Complex::from_real(v / &pi), low_precision: false });
            }
            let pi_f = std::f64::consts::PI;
            let (up, down) = (rate, rate + 2.0 * pi_f);
            if up <= 0.0 {
                return Err(Error::UnsupportedContour("kernel does not decay upwards".into()));
            }
            let re = exp_sinh(|t| Ok(at(t, 1)?.re), Endpoint::Smooth, up, ctx)?
                + exp_sinh(|t| Ok(at(t, -1)?.re), Endpoint::Smooth, down, ctx)?;
            let im = exp_sinh(|t| Ok(at(t, 1)?.im), Endpoint::Smooth, up, ctx)?
                + exp_sinh(|t| Ok(at(t, -1)?.im), Endpoint::Smooth, down, ctx)?;
            let two_pi = Float::with_val(p, &pi * 2u32);
            Ok(VerticalValue { value: Complex::new(re / &two_pi, im / two_pi), low_precision: false })
        }
        Decay::Algebraic(power) if power > 1.0 && kernel.conj_symmetric() => {
            let low = PrecisionContext::for_digits(LOW_PRECISION_DIGITS + 6);
            let p = low.prec();
            let d = low.rat(delta);
            let spec = IntegrandSpec::semi_infinite(Float::with_val(p, 0), Endpoint::Smooth, Endpoint::AlgebraicDecay(power));
            let f = |tau: &Float| -> Result<Float> {
                let s = Complex::new(d.clone(), tau.clone());
                Ok((&kernel.eval(&s, &low)? * &bracket.eval(&s)).re)
            };
            // beyond TAIL_CUT the integrand is replaced by its power law;
            // the Gamma factors would leave the exponent range further out
            let cut = Float::with_val(p, TAIL_CUT);
            let f_cut = f(&cut)?;
            let v = integrate_de(
                |pt| {
                    if pt.x > cut {
                        let r = Float::with_val(p, &cut / &pt.x);
                        return Ok(Float::with_val(p, r.pow(power)) * &f_cut);
                    }
                    f(&pt.x)
                },
                &spec,
                &low,
            )?;
            let v = Float::with_val(ctx.prec(), v / low.pi());
            Ok(VerticalValue { value: Complex::from_real(v), low_precision: true })
        }
        other => Err(Error::UnsupportedContour(format!("vertical integral does not converge ({other:?})"))),
    }
}

/// Real vertical-line value; errors out if the imaginary part is not negligible.
pub fn mb_vertical_real(kernel: &Kernel, bracket: Bracket, delta: &Rational, ctx: &PrecisionContext) -> Result<(Float, bool)> {
    let v = mb_vertical_line(kernel, bracket, delta, ctx)?;
    Ok((v.value.re, v.low_precision))
}

// Catalogue.

/// Meijer G-function shapes the catalogue accepts.
pub const G_SHAPES: [(usize, usize, usize, usize); 6] = [(2, 2, 4, 4), (2, 4, 4, 4), (3, 3, 4, 4), (2, 3, 3, 3), (3, 3, 3, 3), (2, 2, 3, 3)];

#[derive(Clone, Debug, PartialEq)]
pub struct MeijerG {
    pub m: usize,
    pub n: usize,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub z: MellinArg,
}

impl MeijerG {
    pub fn new(m: usize, n: usize, a: Vec<Rational>, b: Vec<Rational>, z: MellinArg) -> Result<Self> {
        let shape = (m, n, a.len(), b.len());
        if !G_SHAPES.contains(&shape) {
            return Err(Error::UnsupportedSpec(format!("G^({m},{n})_({},{}) is outside the catalogue", a.len(), b.len())));
        }
        let g = MeijerG { m, n, a, b, z };
        let k = g.kernel();
        families(&k, Side::Right)?;
        families(&k, Side::Left)?;
        Ok(g)
    }

    pub fn at_one(m: usize, n: usize, a: &[(i64, i64)], b: &[(i64, i64)]) -> Result<Self> {
        let r = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| rat(p, q)).collect();
        MeijerG::new(m, n, r(a), r(b), MellinArg::Unit)
    }

    pub fn kernel(&self) -> Kernel {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (k, b) in self.b.iter().enumerate() {
            if k < self.m {
                num.push(GammaFactor::new(b.clone(), 1));
            } else {
                den.push(GammaFactor::new(Rational::from(1 - b), -1));
            }
        }
        for (j, a) in self.a.iter().enumerate() {
            if j < self.n {
                num.push(GammaFactor::new(Rational::from(1 - a), -1));
            } else {
                den.push(GammaFactor::new(a.clone(), 1));
            }
        }
        Kernel { num, den, arg: self.z.clone() }
    }

    /// G(1 | 1/2,1/2,1/3,2/3 ; 0,0,-1/6,1/6) with m = n = 2.
    pub fn laporta_g22() -> Self {
        MeijerG::at_one(2, 2, &[(1, 2), (1, 2), (1, 3), (2, 3)], &[(0, 1), (0, 1), (-1, 6), (1, 6)]).expect("catalogue")
    }

    /// G(1 | 1/3,1/2,1/2,2/3 ; 0,0,-1/6,1/6) with m = 2, n = 4.
    pub fn laporta_g24() -> Self {
        MeijerG::at_one(2, 4, &[(1, 3), (1, 2), (1, 2), (2, 3)], &[(0, 1), (0, 1), (-1, 6), (1, 6)]).expect("catalogue")
    }

    /// G(1 | -1/2,1/2,2/3,4/3 ; 0,1,-5/6,-1/6) with m = n = 2.
    pub fn bl_g22() -> Self {
        MeijerG::at_one(2, 2, &[(-1, 2), (1, 2), (2, 3), (4, 3)], &[(0, 1), (1, 1), (-5, 6), (-1, 6)]).expect("catalogue")
    }

    /// G(1 | -1/2,1/2,2/3,4/3 ; 0,1,-5/6,-1/6) with m = 2, n = 4.
    pub fn bl_g24() -> Self {
        MeijerG::at_one(2, 4, &[(-1, 2), (1, 2), (2, 3), (4, 3)], &[(0, 1), (1, 1), (-5, 6), (-1, 6)]).expect("catalogue")
    }

    /// G(1 | 1/3,1/2,1/2,2/3 ; 0,0,-1/4,1/4) with m = 2, n = 4.
    pub fn product_g24() -> Self {
        MeijerG::at_one(2, 4, &[(1, 3), (1, 2), (1, 2), (2, 3)], &[(0, 1), (0, 1), (-1, 4), (1, 4)]).expect("catalogue")
    }

    /// G(1 | -1/2,2/3,4/3,1/2 ; -5/6,-1/6,1,0) with m = n = 3.
    pub fn ikm243_g33() -> Self {
        MeijerG::at_one(3, 3, &[(-1, 2), (2, 3), (4, 3), (1, 2)], &[(-5, 6), (-1, 6), (1, 1), (0, 1)]).expect("catalogue")
    }

    /// G(w | 1/3,1/2,2/3 ; 0,0,0) with m = 2, n = 3 (any sign of w).
    pub fn kluyver_g23(w: &Float) -> Result<Self> {
        let z = if *w < 0 { MellinArg::Negative(Float::with_val(w.prec(), -w)) } else { MellinArg::Positive(w.clone()) };
        MeijerG::new(2, 3, vec![rat(1, 3), rat(1, 2), rat(2, 3)], vec![rat(0, 1), rat(0, 1), rat(0, 1)], z)
    }

    /// Default vertical line: between the two pole sides when one exists.
    pub fn default_delta(&self) -> Rational {
        separating_delta(&self.kernel()).unwrap_or_else(|| rat(1, 4))
    }

    /// G by residues on one side.
    pub fn residues(&self, side: Side, ctx: &PrecisionContext, target: u32) -> Result<Float> {
        residue_closure(&self.kernel(), Bracket::One, side, ctx, target)
    }

    /// G from a vertical line at delta plus the wrong-side poles.
    pub fn vertical(&self, delta: &Rational, ctx: &PrecisionContext) -> Result<(Float, bool)> {
        let k = self.kernel();
        let v = mb_vertical_line(&k, Bracket::One, delta, ctx)?;
        let mut re = separated_from_vertical(&k, Bracket::One, delta, &v.value.re, ctx)?;
        if !k.conj_symmetric() {
            return Err(Error::UnsupportedSpec("use vertical_complex for a negative argument".into()));
        }
        re = Float::with_val(ctx.prec(), re);
        Ok((re, v.low_precision))
    }

    /// Complex value for a negative argument (no wrong-side poles allowed).
    pub fn vertical_complex(&self, delta: &Rational, ctx: &PrecisionContext) -> Result<Complex> {
        let k = self.kernel();
        if !mis_sided_poles(&k, delta)?.is_empty() {
            return Err(Error::UnsupportedContour(format!("line at {delta} does not separate the poles")));
        }
        Ok(mb_vertical_line(&k, Bracket::One, delta, ctx)?.value)
    }
}

/// Midpoint between the rightmost left pole and the leftmost right pole, if they separate.
pub fn separating_delta(kernel: &Kernel) -> Option<Rational> {
    let right = kernel.num.iter().filter(|f| f.sign < 0).map(|f| f.shift.clone()).min();
    let left = kernel.num.iter().filter(|f| f.sign > 0).map(|f| Rational::from(-&f.shift)).max();
    match (left, right) {
        (Some(l), Some(r)) if l < r => Some((l + r) / 2),
        (None, Some(r)) => Some(r - 1),
        (Some(l), None) => Some(l + 1),
        _ => None,
    }
}

/// Phi(s) without its constant: Gamma(1/3-s)Gamma(2/3-s)Gamma(s-1/6)Gamma(s+1/6)/(Gamma(1-s)^2 Gamma(s+1/2)^2).
pub fn phi_kernel() -> Kernel {
    Kernel {
        num: vec![gf(1, 3, -1), gf(2, 3, -1), gf(-1, 6, 1), gf(1, 6, 1)],
        den: vec![gf(1, 1, -1), gf(1, 1, -1), gf(1, 2, 1), gf(1, 2, 1)],
        arg: MellinArg::Unit,
    }
}

/// pi^3/(72 sqrt 3)
pub fn phi_scale(ctx: &PrecisionContext) -> Float {
    let pi = ctx.pi();
    Float::with_val(ctx.prec(), pi.square_ref()) * &pi / (ctx.sqrt_of(3) * 72u32)
}

/// Psi(s) without its constant.
pub fn psi_kernel() -> Kernel {
    Kernel {
        num: vec![gf(1, 3, -1), gf(1, 2, -1), gf(2, 3, -1), gf(-1, 6, 1), gf(0, 1, 1), gf(1, 6, 1)],
        den: vec![gf(1, 1, -1), gf(1, 2, 1)],
        arg: MellinArg::Unit,
    }
}

/// 1/(80 sqrt 3)
pub fn psi_scale(ctx: &PrecisionContext) -> Float {
    (ctx.sqrt_of(3) * 80u32).recip()
}

pub fn phi(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    Ok(phi_kernel().eval(s, ctx)?.scale(&phi_scale(ctx)))
}

pub fn psi(s: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    Ok(psi_kernel().eval(s, ctx)?.scale(&psi_scale(ctx)))
}

/// Named Mellin-Barnes kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MbKernel {
    Phi,
    Psi,
}

impl MbKernel {
    pub fn kernel(&self) -> Kernel {
        match self {
            MbKernel::Phi => phi_kernel(),
            MbKernel::Psi => psi_kernel(),
        }
    }

    pub fn scale(&self, ctx: &PrecisionContext) -> Float {
        match self {
            MbKernel::Phi => phi_scale(ctx),
            MbKernel::Psi => psi_scale(ctx),
        }
    }
}

/// Contours made of small clockwise circles around selected pole families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contour {
    /// n + 1/3 and n + 2/3
    CStar,
    /// n + 1/3 and n - 1/3
    CStarStar,
}

/// Clockwise circles give minus the residues: the family contributions of the
/// right side, restricted to the contour's lattice.
pub fn residue_sum_weighted(kernel: &Kernel, bracket: Bracket, contour: Contour, ctx: &PrecisionContext, target: u32) -> Result<Float> {
    let starts = match contour {
        Contour::CStar => [rat(1, 3), rat(2, 3)],
        Contour::CStarStar => [rat(1, 3), rat(-1, 3)],
    };
    let mut total = Float::with_val(ctx.prec(), 0);
    let mut seen = 0;
    for fam in families(kernel, Side::Right)? {
        if starts.contains(&fam.start) && fam.order() == 1 && fam.count.is_none() {
            total += family_sum(kernel, bracket, &fam, ctx, target)?;
            seen += 1;
        }
    }
    if seen != 2 {
        return Err(Error::UnsupportedContour(format!("{contour:?} does not match the kernel's simple families")));
    }
    Ok(total)
}

/// Scaled Phi/Psi integral along Re s = delta (vertical route).
pub fn mb_named_vertical(k: MbKernel, bracket: Bracket, delta: &Rational, ctx: &PrecisionContext) -> Result<(Float, bool)> {
    let (v, low) = mb_vertical_real(&k.kernel(), bracket, delta, ctx)?;
    Ok((v * k.scale(ctx), low))
}

/// Scaled Phi/Psi integral along Re s = delta, by closing to the right.
pub fn mb_named_residues(k: MbKernel, bracket: Bracket, delta: &Rational, ctx: &PrecisionContext, target: u32) -> Result<Float> {
    Ok(vertical_by_residues(&k.kernel(), bracket, delta, Side::Right, ctx, target)? * k.scale(ctx))
}

/// Gamma(1/3)/sqrt(pi), the base of the recurring ninth powers.
pub fn gamma_third_ratio(ctx: &PrecisionContext) -> Result<Float> {
    let g = gamma_rat(&rat(1, 3), ctx)?;
    let sp = Float::with_val(ctx.prec(), ctx.pi().sqrt_ref());
    Ok(g / sp)
}

/// The Gamma-ratio kernel of the three-parameter family of Mellin-Barnes
/// integrals with argument w > 0:
/// Gamma(1/3-s)Gamma(2/3-s)Gamma(s)^2/(Gamma(1-s)Gamma(s+1/2)) w^-s.
pub fn mb1_kernel(w: &Float) -> Kernel {
    Kernel {
        num: vec![gf(1, 3, -1), gf(2, 3, -1), gf(0, 1, 1), gf(0, 1, 1)],
        den: vec![gf(1, 1, -1), gf(1, 2, 1)],
        arg: MellinArg::Positive(w.clone()),
    }
}

/// Gamma(1/3-s)Gamma(1/2-s)Gamma(2/3-s)Gamma(s)^3 w^-s.
pub fn mb2_kernel(w: &Float) -> Kernel {
    Kernel {
        num: vec![gf(1, 3, -1), gf(1, 2, -1), gf(2, 3, -1), gf(0, 1, 1), gf(0, 1, 1), gf(0, 1, 1)],
        den: vec![],
        arg: MellinArg::Positive(w.clone()),
    }
}

/// Gamma(1/3-s)Gamma(1/2-s)Gamma(2/3-s)Gamma(s)/Gamma(1-s)^2 w^-s: the
/// Mellin-Barnes form of 3F2(1/3,1/2,2/3;1,1;-w) up to Gamma(1/3)Gamma(1/2)Gamma(2/3).
pub fn f32_kernel(w: &Float) -> Kernel {
    Kernel {
        num: vec![gf(1, 3, -1), gf(1, 2, -1), gf(2, 3, -1), gf(0, 1, 1)],
        den: vec![gf(1, 1, -1), gf(1, 1, -1)],
        arg: MellinArg::Positive(w.clone()),
    }
}

/// w = 108 u/(4-u)^3
pub fn mb_w(u: &Float) -> Float {
    let p = u.prec();
    let d = Float::with_val(p, 4 - u);
    Float::with_val(p, u * 108u32) / (Float::with_val(p, d.square_ref()) * &d)
}

/// The two parametric Mellin-Barnes families in u, 0 < u < 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MbFamily {
    Mb1,
    Mb2,
}

/// How a Mellin-Barnes integral is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MbRoute {
    Vertical,
    Residues,
}

/// Right-hand side of the MB1/MB2 representations: the Gamma-ratio integral in
/// w = 108u/(4-u)^3 along Re s = 1/6 with its prefactor.
pub fn mb_family_rhs(fam: MbFamily, u: &Float, route: MbRoute, ctx: &PrecisionContext) -> Result<Float> {
    if !(*u > 0 && *u < 4) {
        return Err(Error::Domain(format!("need 0 < u < 4, got {u}")));
    }
    let p = ctx.prec();
    let w = mb_w(u);
    let k = match fam {
        MbFamily::Mb1 => mb1_kernel(&w),
        MbFamily::Mb2 => mb2_kernel(&w),
    };
    let delta = rat(1, 6);
    let v = match route {
        MbRoute::Vertical => separated_from_vertical(&k, Bracket::One, &delta, &mb_vertical_real(&k, Bracket::One, &delta, ctx)?.0, ctx)?,
        MbRoute::Residues => {
            let side = if w > 1 { Side::Right } else { Side::Left };
            vertical_by_residues(&k, Bracket::One, &delta, side, ctx, ctx.digits())?
        }
    };
    let pi = ctx.pi();
    let pi32 = Float::with_val(p, pi.sqrt_ref()) * &pi;
    let d = Float::with_val(p, 4 - u);
    let pre = match fam {
        MbFamily::Mb1 => ctx.sqrt_of(3) * pi32 / (d * 4u32),
        MbFamily::Mb2 => ctx.sqrt_of(3) / (pi32 * d * 8u32),
    };
    Ok(v * pre)
}

/// 3F2(1/3,1/2,2/3;1,1;-w) for w > 0: direct series for w < 1/2, Mellin-Barnes residues (right) otherwise.
pub fn f32_minus(w: &Float, ctx: &PrecisionContext) -> Result<Float> {
    use crate::hyper::{pfq, Argument, PfqSpec};
    if *w < 0.5 {
        let spec = PfqSpec::new(vec![rat(1, 3), rat(1, 2), rat(2, 3)], vec![rat(1, 1), rat(1, 1)], Argument::Real(Float::with_val(ctx.prec(), -w)))?;
        return pfq(&spec, ctx);
    }
    let k = f32_kernel(w);
    let target = ctx.digits();
    let v = if *w > 2 {
        residue_closure(&k, Bracket::One, Side::Right, ctx, target)?
    } else {
        mb_vertical_real(&k, Bracket::One, &rat(1, 4), ctx)?.0
    };
    let c = gamma_rat(&rat(1, 3), ctx)? * gamma_rat(&rat(2, 3), ctx)? * Float::with_val(ctx.prec(), ctx.pi().sqrt_ref());
    Ok(v / c)
}

/// Kluyver's four-step density over its argument, p4(sqrt u)/sqrt u for 0 < u < 4,
/// from its Mellin-Barnes form in X = 108u/(4-u)^3.
pub fn p4_over_sqrtu(u: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !(*u > 0 && *u < 4) {
        return Err(Error::Domain(format!("p4 needs 0 < u < 4, got {u}")));
    }
    let x = mb_w(u);
    let g = MeijerG::new(2, 2, vec![rat(2, 3), rat(1, 3), rat(1, 2)], vec![rat(0, 1), rat(0, 1), rat(0, 1)], MellinArg::Positive(x.clone()))?;
    let target = ctx.digits();
    let v = if x > 2 {
        g.residues(Side::Right, ctx, target)?
    } else if x < 0.5 {
        g.residues(Side::Left, ctx, target)?
    } else {
        g.vertical(&rat(1, 4), ctx)?.0
    };
    let p = ctx.prec();
    let pre = ctx.sqrt_of(3) * 3u32 / (Float::with_val(p, ctx.pi().pow(2.5f64)) * 2u32 * Float::with_val(p, 4 - u));
    Ok(v * pre)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::digits_agreement;

    #[test]
    fn kernel_families_of_laporta_g24() {
        let k = MeijerG::laporta_g24().kernel();
        let r = families(&k, Side::Right).unwrap();
        let starts: Vec<(Rational, usize)> = r.iter().map(|f| (f.start.clone(), f.order())).collect();
        assert_eq!(starts, vec![(rat(1, 3), 1), (rat(1, 2), 2), (rat(2, 3), 1)]);
        let l = families(&k, Side::Left).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].order(), 2);
    }

    #[test]
    fn finite_simple_segment_before_double_poles() {
        let k = MeijerG::bl_g24().kernel();
        let r = families(&k, Side::Right).unwrap();
        let seg = r.iter().find(|f| f.start == rat(1, 2)).unwrap();
        assert_eq!(seg.count, Some(1));
        assert!(r.iter().any(|f| f.start == rat(3, 2) && f.order() == 2));
    }

    #[test]
    fn shape_outside_catalogue_rejected() {
        let e = MeijerG::at_one(1, 1, &[(1, 2)], &[(0, 1)]);
        assert!(matches!(e, Err(Error::UnsupportedSpec(_))));
    }

    #[test]
    fn bracket_rational_and_complex_agree() {
        let ctx = PrecisionContext::for_digits(30);
        let s = rat(2, 7);
        for b in Bracket::ALL {
            let exact = b.eval_rat(&s).unwrap();
            let c = b.eval(&Complex::from_real(ctx.rat(&s)));
            assert!(digits_agreement(&c.re, &ctx.rat(&exact)) >= 30);
        }
    }

    #[test]
    fn f32_series_and_residues_meet() {
        let ctx = PrecisionContext::for_digits(30);
        let w = ctx.real(0.45);
        let series = f32_minus(&w, &ctx).unwrap();
        let k = f32_kernel(&w);
        let v = mb_vertical_real(&k, Bracket::One, &rat(1, 4), &ctx).unwrap().0;
        let c = gamma_rat(&rat(1, 3), &ctx).unwrap() * gamma_rat(&rat(2, 3), &ctx).unwrap() * Float::with_val(ctx.prec(), ctx.pi().sqrt_ref());
        assert!(digits_agreement(&series, &(v / c)) >= 28);
    }
}
