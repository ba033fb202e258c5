//! Generalized hypergeometric series: direct pFq, the 2F1 connection near
//! x = 1, and accelerated summation at unit argument.

use crate::error::{Error, Result};
use crate::mpcore::{digits_agreement, to_decimal, PrecisionContext};
use crate::specfun::{digamma_rat, gamma_rat, hurwitz_zeta_pair, rgamma_rat};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Argument {
    One,
    Real(Float),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PfqSpec {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub z: Argument,
}

fn is_nonpositive_int(q: &Rational) -> bool {
    *q.denom() == 1 && *q <= 0
}

impl PfqSpec {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, z: Argument) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| is_nonpositive_int(b)) {
            return Err(Error::Pole(format!("lower parameter {b}")));
        }
        Ok(PfqSpec { upper, lower, z })
    }

    pub fn at_one(upper: &[(i64, i64)], lower: &[(i64, i64)]) -> Result<Self> {
        let f = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| Rational::from((p, q))).collect();
        PfqSpec::new(f(upper), f(lower), Argument::One)
    }

    /// sigma = sum(lower) - sum(upper), exactly.
    pub fn excess(&self) -> Rational {
        let mut s = Rational::new();
        for b in &self.lower {
            s += b;
        }
        for a in &self.upper {
            s -= a;
        }
        s
    }

    /// Sorted parameter lists with matching upper/lower pairs removed.
    pub fn canonical(&self) -> PfqSpec {
        let mut upper = self.upper.clone();
        let mut lower = self.lower.clone();
        upper.sort();
        lower.sort();
        let mut keep_u = Vec::new();
        for a in upper {
            if let Some(i) = lower.iter().position(|b| *b == a) {
                lower.remove(i);
            } else {
                keep_u.push(a);
            }
        }
        PfqSpec { upper: keep_u, lower, z: self.z.clone() }
    }

    fn terminating_degree(&self) -> Option<u32> {
        self.upper.iter().filter(|a| is_nonpositive_int(a)).map(|a| (-a.numer().clone()).to_u32().unwrap_or(u32::MAX)).min()
    }
}

/// term ratio of the series at index n, Prod(n+a)/Prod(n+b), rounded once
fn ratio_at(n: u64, num: &[Rational], den: &[Rational], prec: u32) -> Float {
    let mut top = Integer::from(1);
    let mut bottom = Integer::from(1);
    for a in num {
        top *= Integer::from(a.numer() + Integer::from(n) * a.denom());
        bottom *= a.denom();
    }
    for b in den {
        bottom *= Integer::from(b.numer() + Integer::from(n) * b.denom());
        top *= b.denom();
    }
    Float::with_val(prec, Rational::from((top, bottom)))
}

/// Exact sum of a terminating series at a rational argument.
fn terminating_sum(spec: &PfqSpec, z: &Rational, degree: u32) -> Rational {
    let mut term = Rational::from(1);
    let mut sum = Rational::from(1);
    for n in 0..degree {
        for a in &spec.upper {
            term *= Rational::from(a + n);
        }
        for b in &spec.lower {
            term /= Rational::from(b + n);
        }
        term *= z;
        term /= n + 1;
        sum += &term;
    }
    sum
}

const PFQ_TERM_CAP: u64 = 2_000_000;

/// pFq at |z| < 1 by the direct series.
pub fn pfq(spec: &PfqSpec, ctx: &PrecisionContext) -> Result<Float> {
    let z = match &spec.z {
        Argument::Real(z) => z.clone(),
        Argument::One => return Err(Error::Domain("pfq: use pfq_unit at z = 1".into())),
    };
    let p = ctx.prec() + 16;
    if let Some(deg) = spec.terminating_degree() {
        if let Some(zq) = z.to_rational() {
            if z.prec() <= 64 || deg < 64 {
                return Ok(Float::with_val(ctx.prec(), terminating_sum(spec, &zq, deg)));
            }
        }
    }
    if Float::with_val(p, z.abs_ref()) >= 1 {
        return Err(Error::Domain(format!("pfq needs |z| < 1 (z = {})", z.to_f64())));
    }
    let mut den = spec.lower.clone();
    den.push(Rational::from(1));
    let eps = Float::with_val(p, 1) >> (ctx.prec() + 8);
    let mut term = Float::with_val(p, 1);
    let mut sum = Float::with_val(p, 1);
    let mut n = 0u64;
    let mut small = 0;
    loop {
        let r = ratio_at(n, &spec.upper, &den, p);
        if r.is_zero() {
            break;
        }
        term *= r;
        term *= &z;
        sum += &term;
        n += 1;
        if Float::with_val(p, term.abs_ref()) <= Float::with_val(p, &eps * Float::with_val(p, sum.abs_ref())) {
            small += 1;
            if small >= 3 && n > spec.upper.len() as u64 * 4 {
                break;
            }
        } else {
            small = 0;
        }
        if n > PFQ_TERM_CAP {
            return Err(Error::NoConvergence(format!("pfq after {n} terms")));
        }
    }
    Ok(Float::with_val(ctx.prec(), sum))
}

fn pfq_real(upper: &[Rational], lower: &[Rational], z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    pfq(&PfqSpec { upper: upper.to_vec(), lower: lower.to_vec(), z: Argument::Real(z.clone()) }, ctx)
}

/// 2F1(a,b;c;x) for 0 <= x < 1; `one_minus_x` must equal 1-x and is used
/// instead of forming the difference.
pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, x: &Float, one_minus_x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if is_nonpositive_int(c) {
        return Err(Error::Pole(format!("2F1 with c = {c}")));
    }
    if *x < 0 || *one_minus_x <= 0 {
        return Err(Error::Domain(format!("2F1 at x = {}", x.to_f64())));
    }
    let p = ctx.prec() + 32;
    let hc = ctx.with_work_bits(ctx.work_bits + 32);
    if is_nonpositive_int(a) || is_nonpositive_int(b) || *x <= 0.5 {
        let v = pfq_real(&[a.clone(), b.clone()], &[c.clone()], x, &hc)?;
        return Ok(Float::with_val(ctx.prec(), v));
    }
    let y = Float::with_val(p, one_minus_x);
    let m = Rational::from(c - a) - b;
    let v = if *m.denom() != 1 {
        // Gamma(c)Gamma(m)/(Gamma(c-a)Gamma(c-b)) F(a,b;1-m;y) + y^m Gamma(c)Gamma(-m)/(Gamma(a)Gamma(b)) F(c-a,c-b;1+m;y)
        let gc = gamma_rat(c, &hc)?;
        let ca = Rational::from(c - a);
        let cb = Rational::from(c - b);
        let f1 = pfq_real(&[a.clone(), b.clone()], &[Rational::from(1 - m.clone())], &y, &hc)?;
        let f2 = pfq_real(&[ca.clone(), cb.clone()], &[Rational::from(1 + m.clone())], &y, &hc)?;
        let k1 = Float::with_val(p, &gc * gamma_rat(&m, &hc)?) * rgamma_rat(&ca, &hc) * rgamma_rat(&cb, &hc);
        let k2 = Float::with_val(p, &gc * gamma_rat(&Rational::from(-m.clone()), &hc)?) * rgamma_rat(a, &hc) * rgamma_rat(b, &hc);
        let ym = Float::with_val(p, y.ln_ref()) * hc.rat(&m);
        k1 * f1 + k2 * f2 * ym.exp()
    } else {
        hyp2f1_log_case(a, b, c, &m, &y, &hc)?
    };
    Ok(Float::with_val(ctx.prec(), v))
}

/// c - a - b = m an integer: the logarithmic connection formulas.
fn hyp2f1_log_case(a: &Rational, b: &Rational, c: &Rational, m: &Rational, y: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.prec();
    let mi = m.numer().to_i64().ok_or_else(|| Error::Domain("2F1 excess too large".into()))?;
    let mu = mi.unsigned_abs() as u32;
    let ln_y = Float::with_val(p, y.ln_ref());
    // with (A,B) = (a+m, b+m) for m >= 0 and (a, b) for m < 0, the log series is
    // sum (A)_n (B)_n/(n! (n+|m|)!) y^n [ln y - psi(n+1) - psi(n+|m|+1) + psi(A+n) + psi(B+n)]
    let (big_a, big_b) = if mi >= 0 { (Rational::from(a + m), Rational::from(b + m)) } else { (a.clone(), b.clone()) };
    let mut psi_a = digamma_rat(&big_a, ctx)?;
    let mut psi_b = digamma_rat(&big_b, ctx)?;
    let mut psi_1 = -ctx.euler();
    let mut psi_m = digamma_rat(&Rational::from(mu + 1), ctx)?;
    let mut coef = Float::with_val(p, crate::mpcore::factorial(mu)).recip();
    let eps = ctx.eps() >> 8;
    let mut sum = Float::with_val(p, 0);
    let mut n = 0u64;
    loop {
        let bracket = Float::with_val(p, &ln_y - &psi_1) - &psi_m + &psi_a + &psi_b;
        let t = Float::with_val(p, &coef * &bracket);
        sum += &t;
        if n > 4 && Float::with_val(p, t.abs_ref()) < Float::with_val(p, &eps * Float::with_val(p, sum.abs_ref())) {
            break;
        }
        // advance to n+1
        let nf = Float::with_val(p, n);
        let an = Float::with_val(p, ctx.rat(&big_a) + &nf);
        let bn = Float::with_val(p, ctx.rat(&big_b) + &nf);
        psi_a += Float::with_val(p, an.recip_ref());
        psi_b += Float::with_val(p, bn.recip_ref());
        psi_1 += Float::with_val(p, (n + 1) as f64).recip();
        psi_m += Float::with_val(p, n + mu as u64 + 1).recip();
        coef *= Float::with_val(p, &an * &bn) * y;
        coef /= Float::with_val(p, (n + 1) * (n + mu as u64 + 1));
        n += 1;
        if n > PFQ_TERM_CAP {
            return Err(Error::NoConvergence("2F1 log series".into()));
        }
    }
    // finite part: sum_{n<|m|} (A')_n (B')_n/(n! (1-|m|)_n) y^n
    let (fa, fb) = if mi >= 0 { (a.clone(), b.clone()) } else { (Rational::from(a - mu), Rational::from(b - mu)) };
    let mut finite = Float::with_val(p, 0);
    let mut t = Rational::from(1);
    let mut yn = Float::with_val(p, 1);
    for k in 0..mu {
        finite += Float::with_val(p, &t) * &yn;
        if k + 1 == mu {
            break;
        }
        t *= Rational::from(&fa + k) * Rational::from(&fb + k);
        t /= Rational::from(Rational::from(1 - mu as i64) + k) * (k + 1);
        yn *= y;
    }
    let gm = if mu > 0 { Float::with_val(p, crate::mpcore::factorial(mu - 1)) } else { Float::with_val(p, 0) };
    if mi >= 0 {
        // 15.3.10 / 15.3.11
        let cpre = gamma_rat(c, ctx)?;
        let fin = Float::with_val(p, &gm * &cpre) * rgamma_rat(&big_a, ctx) * rgamma_rat(&big_b, ctx) * finite;
        let mut sgn = Float::with_val(p, &cpre * rgamma_rat(a, ctx)) * rgamma_rat(b, ctx);
        // -(y-1)... = -(-y)^m ; (z-1)^m = (-y)^m
        let ym = Float::with_val(p, Pow::pow(y, mu));
        sgn *= ym;
        if mu % 2 == 1 {
            sgn = -sgn;
        }
        Ok(fin - sgn * sum)
    } else {
        // 15.3.12 with c = a + b - mu
        let cg = gamma_rat(c, ctx)?;
        let ym = Float::with_val(p, Pow::pow(y, mu));
        let fin = Float::with_val(p, &gm * &cg) * rgamma_rat(a, ctx) * rgamma_rat(b, ctx) * finite / ym;
        let am = Rational::from(a - mu);
        let bm = Rational::from(b - mu);
        let mut k = Float::with_val(p, &cg * rgamma_rat(&am, ctx)) * rgamma_rat(&bm, ctx);
        if mu % 2 == 1 {
            k = -k;
        }
        Ok(fin - k * sum)
    }
}

/// psi-weighted terms: constant + sum w_i psi(n + gamma_i).
#[derive(Clone, Debug)]
pub struct PsiWeight {
    pub constant: Float,
    pub terms: Vec<(i64, Rational)>,
}

/// A series sum_{n>=0} t0 Prod_{k<n} [Prod(k+num)/Prod(k+den)] (times an optional psi weight).
#[derive(Clone, Debug)]
pub struct HyperSeries {
    pub t0: Float,
    pub num: Vec<Rational>,
    pub den: Vec<Rational>,
    pub psi: Option<PsiWeight>,
}

impl HyperSeries {
    pub fn from_unit_spec(spec: &PfqSpec, prec: u32) -> Self {
        let mut den = spec.lower.clone();
        den.push(Rational::from(1));
        HyperSeries { t0: Float::with_val(prec, 1), num: spec.upper.clone(), den, psi: None }
    }

    /// Terms decay like n^(-exponent).
    pub fn exponent(&self) -> Rational {
        let mut e = Rational::new();
        for b in &self.den {
            e += b;
        }
        for a in &self.num {
            e -= a;
        }
        e
    }

    fn psi_slope(&self) -> i64 {
        self.psi.as_ref().map(|w| w.terms.iter().map(|t| t.0).sum()).unwrap_or(0)
    }
}

/// Result of the dual-accelerated summation.
#[derive(Clone, Debug)]
pub struct Accelerated {
    pub value: Float,
    pub zeta_tail: Float,
    pub levin: Float,
    pub agreed_digits: u32,
    pub direct_terms: u64,
}

pub fn direct_terms(target_digits: u32) -> u64 {
    (50 * target_digits as u64).max(10_000)
}

/// Exact Bernoulli numbers B_0..B_n (B_1 = -1/2).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::from(1));
    for m in 1..=n {
        let mut s = Rational::new();
        let mut binom = Integer::from(1); // C(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from(bk * &binom);
            binom *= (m + 1 - k) as u32;
            binom /= (k + 1) as u32;
        }
        b.push(-s / (m as u32 + 1));
    }
    b
}

fn bernoulli_poly(k: usize, x: &Rational, bern: &[Rational]) -> Rational {
    let mut s = Rational::new();
    let mut binom = Integer::from(1);
    let mut xp = Rational::from(1);
    // sum_j C(k,j) B_j x^(k-j), built from j = k downwards
    for j in (0..=k).rev() {
        s += Rational::from(&bern[j] * &binom) * &xp;
        xp *= x;
        binom *= j as u32;
        binom /= (k - j + 1) as u32;
    }
    s
}

/// Coefficients d_k of the asymptotic shape a_n ~ C n^(-e) sum d_k n^(-k),
/// fixed by the term recurrence.
fn shape_coefficients(num: &[Rational], den: &[Rational], m: usize, prec: u32) -> Vec<Float> {
    let e = {
        let mut e = Rational::new();
        for b in den {
            e += b;
        }
        for a in num {
            e -= a;
        }
        e
    };
    let poly = |ps: &[Rational]| -> Vec<Float> {
        let mut c = vec![Float::with_val(prec, 1)];
        for q in ps {
            let mut next = vec![Float::with_val(prec, 0); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i] += ci;
                next[i + 1] += Float::with_val(prec, ci * q);
            }
            c = next;
        }
        c
    };
    let pa = poly(num);
    let pb = poly(den);
    let coef = |v: &Vec<Float>, i: usize| if i < v.len() { v[i].clone() } else { Float::with_val(prec, 0) };
    // g_j(x) = (1+x)^(-e-j) Pb(x), up to degree m+1
    let g = |j: usize| -> Vec<Float> {
        let r = Float::with_val(prec, -Float::with_val(prec, &e)) - j as u32;
        let mut bin = vec![Float::with_val(prec, 1)];
        for i in 1..=m + 1 {
            let prev = bin[i - 1].clone();
            bin.push(prev * Float::with_val(prec, &r - (i as u32 - 1)) / i as u32);
        }
        let mut out = vec![Float::with_val(prec, 0); m + 2];
        for (i, bi) in bin.iter().enumerate() {
            for (k, pk) in pb.iter().enumerate() {
                if i + k <= m + 1 {
                    out[i + k] += Float::with_val(prec, bi * pk);
                }
            }
        }
        out
    };
    let gs: Vec<Vec<Float>> = (0..m).map(g).collect();
    let mut d = vec![Float::with_val(prec, 1)];
    for k in 1..m {
        let mut s = Float::with_val(prec, 0);
        for (j, dj) in d.iter().enumerate() {
            let diff = Float::with_val(prec, &gs[j][k + 1 - j] - coef(&pa, k + 1 - j));
            s += diff * dj;
        }
        d.push(s / k as u32);
    }
    d
}

fn check_series(s: &HyperSeries) -> Result<Rational> {
    if s.num.len() != s.den.len() {
        return Err(Error::UnsupportedSpec("unit-argument series needs balanced parameter counts".into()));
    }
    if let Some(b) = s.den.iter().find(|b| is_nonpositive_int(b)) {
        return Err(Error::Pole(format!("denominator parameter {b}")));
    }
    let e = s.exponent();
    if e <= 1 {
        return Err(Error::Domain(format!("series diverges (terms ~ n^-({e}))")));
    }
    Ok(e)
}

/// Direct partial sum of the first `count` terms and the terms near the end
/// needed by the tail fit, at precision `prec`.
struct Direct {
    sum: Float,
    /// b_N (hypergeometric part) at N = count
    last: Float,
}

fn direct_sum(s: &HyperSeries, count: u64, prec: u32, ctx: &PrecisionContext) -> Result<Direct> {
    let mut b = Float::with_val(prec, &s.t0);
    let mut sum = Float::with_val(prec, 0);
    let mut psis: Vec<(Float, Float)> = Vec::new();
    if let Some(w) = &s.psi {
        let pc = ctx.with_work_bits(prec);
        for (wi, g) in &w.terms {
            psis.push((Float::with_val(prec, *wi), digamma_rat(g, &pc)?));
        }
    }
    let gammas: Vec<Float> = s.psi.as_ref().map(|w| w.terms.iter().map(|t| Float::with_val(prec, &t.1)).collect()).unwrap_or_default();
    // compensated accumulation
    let mut comp = Float::with_val(prec, 0);
    for n in 0..count {
        let term = match &s.psi {
            None => b.clone(),
            Some(w) => {
                let mut weight = Float::with_val(prec, &w.constant);
                for (wi, ps) in &psis {
                    weight += Float::with_val(prec, wi * ps);
                }
                Float::with_val(prec, &b * &weight)
            }
        };
        let y = Float::with_val(prec, &term - &comp);
        let t = Float::with_val(prec, &sum + &y);
        comp = Float::with_val(prec, &t - &sum) - y;
        sum = t;
        for (k, (_, ps)) in psis.iter_mut().enumerate() {
            *ps += Float::with_val(prec, &gammas[k] + n).recip();
        }
        b *= ratio_at(n, &s.num, &s.den, prec);
    }
    Ok(Direct { sum, last: b })
}

/// Tail sum_{n>=N} a_n from the asymptotic shape and Hurwitz zeta values.
fn zeta_tail(s: &HyperSeries, e: &Rational, n: u64, b_n: &Float, prec: u32, digits: u32) -> Result<Float> {
    let m = ((digits as usize) / 3 + 12).min(90);
    let hp = prec + 64;
    let d = shape_coefficients(&s.num, &s.den, m, hp);
    let nf = Float::with_val(hp, n);
    let xinv = Float::with_val(hp, nf.recip_ref());
    let ef = Float::with_val(hp, e);
    // S(1/N)
    let mut shape = Float::with_val(hp, 0);
    let mut pw = Float::with_val(hp, 1);
    for dk in &d {
        shape += Float::with_val(hp, dk * &pw);
        pw *= &xinv;
    }
    // b_N = C N^-e S(1/N)
    let n_e = Float::with_val(hp, Float::with_val(hp, nf.ln_ref()) * &ef).exp();
    let c = Float::with_val(hp, b_n * &n_e) / &shape;
    // weight expansion: const + slope ln n + sum_k E_k n^-k
    let slope = s.psi_slope();
    let mut weight = vec![Float::with_val(hp, 0); m];
    if let Some(w) = &s.psi {
        weight[0] = Float::with_val(hp, &w.constant);
        let bern = bernoulli_numbers(m);
        for (wi, g) in &w.terms {
            for (k, wk) in weight.iter_mut().enumerate().skip(1) {
                let bk = bernoulli_poly(k, g, &bern);
                let mut v = Rational::from(bk * *wi) / k as u32;
                if k % 2 == 0 {
                    v = -v;
                }
                *wk += Float::with_val(hp, &v);
            }
        }
    } else {
        weight[0] = Float::with_val(hp, 1);
    }
    // f = S * weight (non-log part)
    let mut f = vec![Float::with_val(hp, 0); m];
    for i in 0..m {
        for j in 0..m - i {
            f[i + j] += Float::with_val(hp, &d[i] * &weight[j]);
        }
    }
    let a = Float::with_val(hp, n);
    let eps = Float::with_val(hp, 1) >> (prec + 16);
    let mut tail = Float::with_val(hp, 0);
    let mut quiet = 0;
    for k in 0..m {
        let sk = Float::with_val(hp, &ef + k as u32);
        let (z, dz) = hurwitz_zeta_pair(&sk, &a)?;
        let mut t = Float::with_val(hp, &f[k] * &z);
        if slope != 0 {
            t -= Float::with_val(hp, &d[k] * &dz) * slope;
        }
        tail += &t;
        if Float::with_val(hp, t.abs_ref()) < Float::with_val(hp, &eps * Float::with_val(hp, tail.abs_ref())) {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(Float::with_val(prec, tail * c))
}

/// Levin u-transform of the partial sums, started at n0 with order k.
fn levin_u(s: &HyperSeries, n0: u64, k: u32, prec: u32) -> Result<Float> {
    let count = n0 + k as u64 + 1;
    let mut terms = Vec::with_capacity(count as usize);
    let mut b = Float::with_val(prec, &s.t0);
    for n in 0..count {
        terms.push(b.clone());
        b *= ratio_at(n, &s.num, &s.den, prec);
    }
    let mut partial = Float::with_val(prec, 0);
    let mut sums = Vec::with_capacity(terms.len());
    for t in &terms {
        partial += t;
        sums.push(partial.clone());
    }
    let beta = 1u64;
    let mut num = Float::with_val(prec, 0);
    let mut den = Float::with_val(prec, 0);
    let base = Float::with_val(prec, beta + n0 + k as u64);
    let mut binom = Integer::from(1);
    for j in 0..=k as u64 {
        let idx = (n0 + j) as usize;
        let omega = Float::with_val(prec, &terms[idx] * (beta + n0 + j));
        if omega.is_zero() {
            return Err(Error::NoConvergence("Levin remainder estimate vanished".into()));
        }
        let ratio = Float::with_val(prec, Float::with_val(prec, beta + n0 + j) / &base);
        let mut c = Float::with_val(prec, Pow::pow(&ratio, k - 1)) * &binom;
        if j % 2 == 1 {
            c = -c;
        }
        let cw = Float::with_val(prec, &c / &omega);
        num += Float::with_val(prec, &cw * &sums[idx]);
        den += cw;
        binom *= (k as u64 - j) as u32;
        binom /= (j + 1) as u32;
    }
    Ok(num / den)
}

/// Sums a balanced unit-argument series by the zeta-tail and Levin-u routes
/// and insists that they agree to `target_digits`.
pub fn sum_unit(s: &HyperSeries, ctx: &PrecisionContext, target_digits: u32) -> Result<Accelerated> {
    let e = check_series(s)?;
    let prec = ctx.prec() + 32;
    let n = direct_terms(target_digits);
    let direct = direct_sum(s, n, prec, ctx)?;
    let tail = zeta_tail(s, &e, n, &direct.last, prec, ctx.digits())?;
    let zeta_value = Float::with_val(ctx.prec(), &direct.sum + &tail);
    let levin = levin_route(s, ctx, target_digits)?;
    let agreed = digits_agreement(&zeta_value, &levin);
    if agreed < target_digits {
        return Err(Error::AccelerationDisagreement {
            zeta: to_decimal(&zeta_value, target_digits as usize + 5),
            levin: to_decimal(&levin, target_digits as usize + 5),
            agreed,
        });
    }
    Ok(Accelerated { value: zeta_value.clone(), zeta_tail: zeta_value, levin, agreed_digits: agreed, direct_terms: n })
}

/// Levin-u at a boosted precision; the order grows until two successive
/// orders agree.
fn levin_plain(s: &HyperSeries, ctx: &PrecisionContext, target_digits: u32) -> Result<Float> {
    let digits = target_digits.max(10) as f64;
    let prec = (ctx.prec() as f64 * 2.5) as u32 + 64;
    let n0 = 4u64;
    let mut k = (digits * 1.2) as u32 + 8;
    let mut prev = levin_u(s, n0, k, prec)?;
    for _ in 0..8 {
        k += (digits * 0.4) as u32 + 4;
        let next = levin_u(s, n0, k, prec)?;
        if digits_agreement(&prev, &next) >= target_digits + 3 {
            return Ok(Float::with_val(ctx.prec(), next));
        }
        prev = next;
    }
    Ok(Float::with_val(ctx.prec(), prev))
}

/// Second route. A psi weight is rewritten through
/// psi(n+g) - psi(g) = d/de [(g+e)_n/(g)_n] at e = 0, so only plain series
/// reach the Levin transform; the e-derivative is a five-point stencil.
fn levin_route(s: &HyperSeries, ctx: &PrecisionContext, target_digits: u32) -> Result<Float> {
    let w = match &s.psi {
        None => return levin_plain(s, ctx, target_digits),
        Some(w) => w,
    };
    let p = ctx.prec();
    let base = HyperSeries { psi: None, ..s.clone() };
    let f0 = levin_plain(&base, ctx, target_digits)?;
    let mut total = Float::with_val(p, &f0 * &w.constant);
    let hbits = ((target_digits + 6) as f64 * 3.33 / 4.0).ceil() as u32 + 2;
    let hc = ctx.boosted(hbits + 16);
    let h = Rational::from((Integer::from(1), Integer::from(1) << hbits));
    for (wi, g) in &w.terms {
        let shifted = |k: i64| -> Result<Float> {
            let mut v = base.clone();
            v.num.push(Rational::from(g + Rational::from(&h * k)));
            v.den.push(g.clone());
            v.t0 = Float::with_val(hc.prec(), &s.t0);
            levin_plain(&v, &hc, target_digits + hbits / 3 + 4)
        };
        let (m2, m1, p1, p2) = (shifted(-2)?, shifted(-1)?, shifted(1)?, shifted(2)?);
        let d = (Float::with_val(hc.prec(), &p1 - &m1) * 8u32 - Float::with_val(hc.prec(), &p2 - &m2)) / (Float::with_val(hc.prec(), &h) * 12u32);
        let psi_g = digamma_rat(g, ctx)?;
        total += Float::with_val(p, d + Float::with_val(p, &psi_g * &f0)) * *wi;
    }
    Ok(total)
}

/// pFq at z = 1 with dual acceleration; terminating series are summed exactly.
pub fn pfq_unit(spec: &PfqSpec, ctx: &PrecisionContext, target_digits: u32) -> Result<Accelerated> {
    if spec.z != Argument::One {
        return Err(Error::Domain("pfq_unit needs z = 1".into()));
    }
    let canon = spec.canonical();
    if let Some(deg) = canon.terminating_degree() {
        let v = Float::with_val(ctx.prec(), terminating_sum(&canon, &Rational::from(1), deg));
        return Ok(Accelerated { value: v.clone(), zeta_tail: v.clone(), levin: v, agreed_digits: crate::mpcore::AGREEMENT_CAP, direct_terms: deg as u64 });
    }
    if canon.upper.len() != canon.lower.len() + 1 {
        return Err(Error::UnsupportedSpec(format!("{}F{} at unit argument", canon.upper.len(), canon.lower.len())));
    }
    if canon.excess() <= 0 {
        return Err(Error::Domain(format!("pFq(1) diverges: excess {}", canon.excess())));
    }
    sum_unit(&HyperSeries::from_unit_spec(&canon, ctx.prec() + 32), ctx, target_digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::rat;

    #[test]
    fn zeta_two_as_3f2() {
        let ctx = PrecisionContext::for_digits(40);
        let spec = PfqSpec::at_one(&[(1, 1), (1, 1), (1, 1)], &[(2, 1), (2, 1)]).unwrap();
        let r = pfq_unit(&spec, &ctx, 40).unwrap();
        let want = Float::with_val(ctx.prec(), ctx.pi().square_ref()) / 6u32;
        assert!(digits_agreement(&r.value, &want) >= 40, "{}", r.value);
    }

    #[test]
    fn log_case_2f1() {
        let ctx = PrecisionContext::for_digits(40);
        let x = Float::with_val(ctx.prec(), 0.9);
        let y = Float::with_val(ctx.prec(), 1 - &x);
        let v = hyp2f1(&rat(1, 1), &rat(1, 1), &rat(2, 1), &x, &y, &ctx).unwrap();
        let want = -Float::with_val(ctx.prec(), y.ln_ref()) / &x;
        assert!(digits_agreement(&v, &want) >= 40);
    }

    #[test]
    fn harmonic_weighted_series() {
        // sum_{n>=1} H_n/n^2 = 2 zeta(3), with H_(n+1) = psi(n+2) + gamma
        let ctx = PrecisionContext::for_digits(40);
        let s = HyperSeries {
            t0: ctx.real(1),
            num: vec![rat(1, 1), rat(1, 1)],
            den: vec![rat(2, 1), rat(2, 1)],
            psi: Some(PsiWeight { constant: ctx.euler(), terms: vec![(1, rat(2, 1))] }),
        };
        let r = sum_unit(&s, &ctx, 30).unwrap();
        let want = Float::with_val(ctx.prec(), Float::zeta_u(3)) * 2u32;
        assert!(digits_agreement(&r.zeta_tail, &want) >= 40, "{}", r.zeta_tail);
        assert!(digits_agreement(&r.levin, &want) >= 30, "{}", r.levin);
    }

    #[test]
    fn connection_branches_match_direct_series() {
        let ctx = PrecisionContext::for_digits(40);
        let x = Float::with_val(ctx.prec(), 0.6);
        let y = Float::with_val(ctx.prec(), 1 - &x);
        for (a, b, c) in [(rat(1, 3), rat(2, 3), rat(1, 1)), (rat(1, 3), rat(2, 3), rat(2, 1)), (rat(1, 2), rat(3, 2), rat(1, 1)), (rat(1, 8), rat(3, 8), rat(1, 1)), (rat(-1, 3), rat(1, 3), rat(1, 1))] {
            let conn = hyp2f1(&a, &b, &c, &x, &y, &ctx).unwrap();
            let spec = PfqSpec::new(vec![a.clone(), b.clone()], vec![c.clone()], Argument::Real(x.clone())).unwrap();
            let direct = pfq(&spec, &ctx).unwrap();
            assert!(digits_agreement(&conn, &direct) >= 38, "{a} {b} {c}: {conn} vs {direct}");
        }
    }

    #[test]
    fn bernoulli_head() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
    }
}
