//! Named quantities for one-off evaluation from the command line.

use crate::error::{Error, Result};
use crate::hyper::{pfq, pfq_unit, Argument, PfqSpec};
use crate::modular::lvalue_f46;
use crate::moments::{ikm_plain, watson};
use crate::mpcore::{adaptive_eval, Adaptive, PrecisionContext};
use rug::{Integer, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Ikm { a: u32, b: u32, n: u32 },
    W4s(Rational),
    LvalueF46,
    /// z = None means unit argument
    Pfq { spec: PfqSpec, z: Option<Rational> },
}

/// Parses "p/q", an integer or a plain decimal such as "0.9" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("bad rational {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let num: Integer = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        return Ok(Rational::from((num, den)));
    }
    s.parse::<Rational>().map_err(|_| bad())
}

fn list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// The four 4F3 values at unit argument behind the sunrise and Broadhurst-Laporta evaluations.
pub fn named_pfq(name: &str) -> Option<PfqSpec> {
    let (up, lo): (&[(i64, i64)], &[(i64, i64)]) = match name {
        "FA" => (&[(1, 6), (1, 3), (1, 3), (1, 2)], &[(2, 3), (5, 6), (5, 6)]),
        "FB" => (&[(1, 2), (2, 3), (2, 3), (5, 6)], &[(7, 6), (7, 6), (4, 3)]),
        "FC" => (&[(-1, 2), (1, 6), (1, 3), (4, 3)], &[(-1, 6), (5, 6), (5, 3)]),
        "FD" => (&[(-7, 6), (-1, 2), (-1, 3), (2, 3)], &[(-5, 6), (1, 6), (1, 3)]),
        _ => return None,
    };
    PfqSpec::at_one(up, lo).ok()
}

fn inside<'a>(s: &'a str, head: &str) -> Option<&'a str> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

impl Quantity {
    /// Accepts IKM(a,b;n), W4S(x), LVALUE_F46, FA..FD and PFQ(a1,..;b1,..[;z]).
    pub fn parse(s: &str) -> Result<Quantity> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let upper = t.to_ascii_uppercase();
        let unsupported = || Error::UnsupportedSpec(format!("unknown quantity {s:?}"));
        if upper == "LVALUE_F46" {
            return Ok(Quantity::LvalueF46);
        }
        if let Some(spec) = named_pfq(&upper) {
            return Ok(Quantity::Pfq { spec, z: None });
        }
        if let Some(body) = inside(&upper, "IKM") {
            let (ab, n) = body.split_once(';').ok_or_else(unsupported)?;
            let (a, b) = ab.split_once(',').ok_or_else(unsupported)?;
            let p = |x: &str| x.parse::<u32>().map_err(|_| unsupported());
            return Ok(Quantity::Ikm { a: p(a)?, b: p(b)?, n: p(n)? });
        }
        if let Some(body) = inside(&upper, "W4S") {
            return Ok(Quantity::W4s(parse_rational(body)?));
        }
        if let Some(body) = inside(&upper, "PFQ") {
            let parts: Vec<&str> = body.split(';').collect();
            let z = match parts.len() {
                2 => None,
                3 => Some(parse_rational(parts[2])?).filter(|z| *z != 1),
                _ => return Err(unsupported()),
            };
            let spec = PfqSpec::new(list(parts[0])?, list(parts[1])?, Argument::One)?;
            return Ok(Quantity::Pfq { spec, z });
        }
        Err(unsupported())
    }
}

/// Evaluates `q` to `digits` correct digits by precision escalation.
pub fn evaluate_quantity(q: &Quantity, digits: u32) -> Result<Adaptive> {
    let max_bits = PrecisionContext::for_digits(digits).max_bits;
    match q {
        Quantity::Ikm { a, b, n } => adaptive_eval(|c| ikm_plain(*a, *b, *n, c), digits, max_bits),
        Quantity::W4s(x) => adaptive_eval(|c| watson(4, &c.rat(x), c), digits, max_bits),
        Quantity::LvalueF46 => adaptive_eval(lvalue_f46, digits, max_bits),
        Quantity::Pfq { spec, z } => adaptive_eval(
            |c| match z {
                None => Ok(pfq_unit(spec, c, c.target_digits())?.value),
                Some(z) => {
                    let mut s = spec.clone();
                    s.z = Argument::Real(c.rat(z));
                    pfq(&s, c)
                }
            },
            digits,
            max_bits,
        ),
    }
}
