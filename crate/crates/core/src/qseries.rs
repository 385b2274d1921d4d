//! Truncated power series in `q` with exact rational coefficients and
//! exponents in `(1/N)·Z≥0`.
//!
//! A series carries a truncation `T`: every exponent `< T` is faithful and
//! nothing at or above `T` is stored. Binary operations take the smaller
//! truncation. A series with no truncation is an exact polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Number, Value};

use crate::arith::format_rational;
use crate::error::{Error, Result};

/// Default cap on exponent denominators.
pub const DEFAULT_MAX_DENOMINATOR: i64 = 24;

#[derive(Clone, Debug)]
pub struct QSeries {
    den: i64,
    terms: BTreeMap<Rational64, BigRational>,
    trunc: Option<Rational64>,
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

impl QSeries {
    pub fn zero() -> Self {
        QSeries {
            den: 1,
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut s = Self::zero();
        if !c.is_zero() {
            s.terms.insert(Rational64::zero(), c);
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Terms at or
    /// beyond the truncation are dropped, zeros are discarded and repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I, trunc: Option<Rational64>) -> Self
    where
        I: IntoIterator<Item = (Rational64, BigRational)>,
    {
        let mut map: BTreeMap<Rational64, BigRational> = BTreeMap::new();
        let mut den = 1;
        for (e, c) in terms {
            assert!(!e.is_negative(), "negative exponent {e}");
            if trunc.is_some_and(|t| e >= t) {
                continue;
            }
            den = lcm(den, *e.denom());
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        QSeries {
            den,
            terms: map,
            trunc,
        }
    }

    /// `sum_{n < len} coeffs[n] q^n + O(q^len)`.
    pub fn from_coefficients(coeffs: Vec<BigRational>) -> Self {
        let t = coeffs.len() as i64;
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(n, c)| (Rational64::from_integer(n as i64), c)),
            Some(Rational64::from_integer(t)),
        )
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn truncation(&self) -> Option<Rational64> {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Rational64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_int(&self, n: i64) -> BigRational {
        self.coeff(Rational64::from_integer(n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational64, &BigRational)> {
        self.terms.iter()
    }

    /// Whether the exponent `e` lies below the truncation.
    pub fn is_faithful(&self, e: Rational64) -> bool {
        self.trunc.is_none_or(|t| e < t)
    }

    pub fn with_truncation(&self, t: Rational64) -> Self {
        let t = match self.trunc {
            Some(s) if s < t => s,
            _ => t,
        };
        Self::from_terms(
            self.terms.iter().map(|(e, c)| (*e, c.clone())),
            Some(t),
        )
        .with_den(self.den)
    }

    fn with_den(mut self, den: i64) -> Self {
        self.den = lcm(self.den, den);
        self
    }

    fn min_trunc(a: Option<Rational64>, b: Option<Rational64>) -> Option<Rational64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let trunc = Self::min_trunc(self.trunc, other.trunc);
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (*e, c.clone())),
            trunc,
        )
        .with_den(lcm(self.den, other.den))
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)), self.trunc)
            .with_den(self.den)
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc = Self::min_trunc(self.trunc, other.trunc);
        let mut out: BTreeMap<Rational64, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            if trunc.is_some_and(|t| *e1 >= t) {
                break;
            }
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if trunc.is_some_and(|t| e >= t) {
                    break;
                }
                *out.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        Self::from_terms(out, trunc).with_den(lcm(self.den, other.den))
    }

    pub fn pow(&self, k: u32) -> QSeries {
        let mut acc = QSeries::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(τ) ↦ f(cτ)` with the default denominator cap.
    pub fn rescale(&self, c: Rational64) -> Result<QSeries> {
        self.rescale_with_limit(c, DEFAULT_MAX_DENOMINATOR)
    }

    pub fn rescale_with_limit(&self, c: Rational64, max_den: i64) -> Result<QSeries> {
        assert!(c.is_positive(), "rescale factor must be positive");
        let den = *c.denom() * self.den / self.den.gcd(c.numer());
        if den > max_den {
            return Err(Error::DenominatorOverflow {
                needed: den,
                max: max_den,
            });
        }
        Ok(Self::from_terms(
            self.terms.iter().map(|(e, a)| (e * c, a.clone())),
            self.trunc.map(|t| t * c),
        )
        .with_den(den))
    }

    /// `f(τ) ↦ f((τ+1)/2)` on a series with integer exponents.
    pub fn half_twist(&self) -> Result<QSeries> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if !e.is_integer() {
                return Err(Error::NonIntegerExponent(e.to_string()));
            }
            let n = e.to_integer();
            let c = if n % 2 == 0 { c.clone() } else { -c };
            out.push((Rational64::new(n, 2), c));
        }
        Ok(Self::from_terms(out, self.trunc.map(|t| t / 2)).with_den(2))
    }

    /// `f(τ) ↦ f(τ+1)` on a series with exponents in `(1/2)Z`.
    pub fn translate(&self) -> Result<QSeries> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let twice = e * 2;
            if !twice.is_integer() {
                return Err(Error::NonHalfIntegerExponent(e.to_string()));
            }
            let c = if twice.to_integer() % 2 == 0 { c.clone() } else { -c };
            out.push((*e, c));
        }
        Ok(Self::from_terms(out, self.trunc).with_den(self.den))
    }

    /// Shifts all exponents by `s` (which may be negative as long as the
    /// result stays nonnegative).
    pub fn shift(&self, s: Rational64) -> QSeries {
        Self::from_terms(
            self.terms.iter().map(|(e, c)| (e + s, c.clone())),
            self.trunc.map(|t| t + s),
        )
        .with_den(lcm(self.den, *s.denom()))
    }

    /// Keeps the terms whose exponent satisfies `pred`.
    pub fn filter<F: Fn(Rational64) -> bool>(&self, pred: F) -> QSeries {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| pred(**e))
                .map(|(e, c)| (*e, c.clone())),
            self.trunc,
        )
        .with_den(self.den)
    }

    pub fn render_plain(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &self.terms {
            let cs = format_rational(c);
            if e.is_zero() {
                parts.push(cs);
            } else {
                parts.push(format!("{cs}*q^({e})"));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        let mut s = parts.join(" + ").replace("+ -", "- ");
        if let Some(t) = self.trunc {
            s.push_str(&format!(" + O(q^({t}))"));
        }
        s
    }

    /// `[[exp_num, exp_den, coeff_num, coeff_den], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    Value::Array(vec![
                        Value::from(*e.numer()),
                        Value::from(*e.denom()),
                        big_number(c.numer()),
                        big_number(c.denom()),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value, trunc: Option<Rational64>) -> Option<QSeries> {
        let arr = v.as_array()?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let t = t.as_array()?;
            if t.len() != 4 {
                return None;
            }
            let en = t[0].as_i64()?;
            let ed = t[1].as_i64()?;
            let cn = BigInt::from_str(&t[2].to_string()).ok()?;
            let cd = BigInt::from_str(&t[3].to_string()).ok()?;
            terms.push((Rational64::new(en, ed), BigRational::new(cn, cd)));
        }
        Some(QSeries::from_terms(terms, trunc))
    }
}

pub fn big_number(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => Value::from(x),
        None => Value::Number(Number::from_str(&n.to_string()).expect("integer literal")),
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.trunc == other.trunc && self.terms == other.terms
    }
}

impl Eq for QSeries {}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn poly(cs: &[i64]) -> QSeries {
        QSeries::from_terms(
            cs.iter()
                .enumerate()
                .map(|(i, c)| (Rational64::from_integer(i as i64), int(*c))),
            None,
        )
    }

    #[test]
    fn add_cancels() {
        let a = poly(&[1, 1]);
        let b = poly(&[1, -1]);
        assert_eq!(a.add(&b), QSeries::constant(int(2)));
    }

    #[test]
    fn mul_square() {
        let a = poly(&[1, 1]);
        assert_eq!(a.mul(&a), poly(&[1, 2, 1]));
    }

    #[test]
    fn truncation_is_min() {
        let a = QSeries::from_coefficients(vec![int(1), int(2), int(3)]);
        let b = QSeries::from_coefficients(vec![int(1), int(1)]);
        let p = a.mul(&b);
        assert_eq!(p.truncation(), Some(Rational64::from_integer(2)));
        assert_eq!(p.coeff_int(1), int(3));
        assert!(p.coeff_int(2).is_zero());
    }

    #[test]
    fn rescale_and_overflow() {
        let a = QSeries::from_coefficients(vec![int(1), int(5)]);
        let b = a.rescale(Rational64::new(1, 2)).unwrap();
        assert_eq!(b.coeff(Rational64::new(1, 2)), int(5));
        assert_eq!(b.truncation(), Some(Rational64::from_integer(1)));
        let c = b.rescale(Rational64::from_integer(2)).unwrap();
        assert_eq!(c, a);
        assert!(matches!(
            b.rescale(Rational64::new(1, 25)),
            Err(Error::DenominatorOverflow { .. })
        ));
    }

    #[test]
    fn half_twist_signs() {
        let a = QSeries::from_coefficients(vec![int(1), int(2), int(3)]);
        let t = a.half_twist().unwrap();
        assert_eq!(t.coeff(Rational64::new(1, 2)), int(-2));
        assert_eq!(t.coeff_int(1), int(3));
        assert_eq!(t.truncation(), Some(Rational64::new(3, 2)));
        assert!(t.half_twist().is_err());
    }

    #[test]
    fn translate_half_exponents() {
        let a = QSeries::from_terms(
            vec![
                (Rational64::from_integer(0), int(1)),
                (Rational64::new(1, 2), int(4)),
                (Rational64::from_integer(1), int(7)),
            ],
            Some(Rational64::new(3, 2)),
        );
        let t = a.translate().unwrap();
        assert_eq!(t.coeff(Rational64::new(1, 2)), int(-4));
        assert_eq!(t.coeff_int(1), int(7));
        let third = QSeries::from_terms(vec![(Rational64::new(1, 3), int(1))], None);
        assert!(third.translate().is_err());
    }

    #[test]
    fn render_and_json() {
        let a = QSeries::from_terms(
            vec![
                (Rational64::from_integer(0), int(1)),
                (Rational64::new(1, 2), BigRational::new(3.into(), 2.into())),
                (Rational64::from_integer(2), int(-5)),
            ],
            Some(Rational64::from_integer(3)),
        );
        assert_eq!(a.render_plain(), "1 + 3/2*q^(1/2) - 5*q^(2) + O(q^(3))");
        let j = a.to_json();
        assert_eq!(j.to_string(), "[[0,1,1,1],[1,2,3,2],[2,1,-5,1]]");
        let back = QSeries::from_json(&j, a.truncation()).unwrap();
        assert_eq!(back, a);
    }
}
