//! Scalar modular forms used as inputs: level-one Eisenstein series and
//! eta powers, the ring `M_*(Γ0(2))` with its slash operators, plus-space
//! Eisenstein series for `(Γ0(3), χ_{-3})`, and Cohen's Eisenstein series
//! on the Kohnen plus space of level 4.
//!
//! `prec` always means "integer exponents `0..prec` are computed", i.e. the
//! expansion carries truncation `O(q^prec)`.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use crate::arith::{
    bernoulli, divisors, fundamental_split, generalized_bernoulli, int, kronecker, mobius, rat,
    sigma, sigma_odd, zeta_negative_odd,
};
use crate::error::{Error, Result};
use crate::linalg::{solve, Solution};
use crate::qseries::QSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelTag {
    SL2,
    Gamma0_2,
    Gamma0_3Chi,
    KohnenPlus4,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarForm {
    pub weight: Rational64,
    pub level: LevelTag,
    pub expansion: QSeries,
    /// Set for `E_2`, which is only quasi-modular.
    pub quasi_modular: bool,
}

impl ScalarForm {
    pub fn new(weight: Rational64, level: LevelTag, expansion: QSeries) -> Self {
        ScalarForm {
            weight,
            level,
            expansion,
            quasi_modular: false,
        }
    }

    pub fn integer_weight(&self) -> Option<i64> {
        self.weight.is_integer().then(|| self.weight.to_integer())
    }

    pub fn mul(&self, other: &ScalarForm) -> ScalarForm {
        ScalarForm {
            weight: self.weight + other.weight,
            level: if self.level == LevelTag::SL2 {
                other.level
            } else {
                self.level
            },
            expansion: self.expansion.mul(&other.expansion),
            quasi_modular: self.quasi_modular || other.quasi_modular,
        }
    }

    /// Checks the support invariant attached to the level tag.
    pub fn check_support(&self) -> Result<()> {
        for (e, c) in self.expansion.terms() {
            if c.is_zero() {
                continue;
            }
            let bad = match self.level {
                LevelTag::SL2 | LevelTag::Gamma0_2 => !e.is_integer(),
                LevelTag::Gamma0_3Chi => !e.is_integer() || e.to_integer() % 3 == 2,
                LevelTag::KohnenPlus4 => {
                    // weight r + 1/2: (-1)^r N must be 0 or 1 mod 4
                    let r = (self.weight - Rational64::new(1, 2)).to_integer();
                    let n = e.to_integer();
                    let signed = if r % 2 == 0 { n } else { -n };
                    !e.is_integer() || matches!(signed.rem_euclid(4), 2 | 3)
                }
            };
            if bad {
                return Err(Error::PlusSpaceViolation(e.to_string()));
            }
        }
        Ok(())
    }
}

fn sl2(k: i64, coeffs: Vec<BigRational>) -> ScalarForm {
    ScalarForm::new(
        Rational64::from_integer(k),
        LevelTag::SL2,
        QSeries::from_coefficients(coeffs),
    )
}

/// Coefficients of `E_k` for `n < prec`.
pub fn eisenstein_coefficients(k: i64, prec: usize) -> Vec<BigRational> {
    let c = -int(2 * k) / bernoulli(k as usize);
    let mut out = Vec::with_capacity(prec);
    if prec > 0 {
        out.push(BigRational::one());
    }
    for n in 1..prec {
        out.push(&c * BigRational::from_integer(sigma(k as u32 - 1, n as u64)));
    }
    out
}

/// `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n`.
pub fn eisenstein_sl2(k: i64, prec: usize) -> Result<ScalarForm> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidWeight {
            weight: k.to_string(),
            reason: "level-one Eisenstein series need even k >= 2".into(),
        });
    }
    let mut f = sl2(k, eisenstein_coefficients(k, prec));
    if k == 2 {
        log::warn!("E2 is quasi-modular");
        f.quasi_modular = true;
    }
    Ok(f)
}

/// `q^{j/3} Π (1 - q^n)^{8j}` with truncation `O(q^prec)`.
pub fn eta_pow(power: u32, prec: usize) -> QSeries {
    assert!(power.is_multiple_of(8) && power > 0, "only eta^(8j) is supported");
    let j = (power / 8) as i64;
    let shift = Rational64::new(j, 3);
    // Π (1-q^n)^power up to q^(prec)
    let len = prec + 1;
    let mut p = vec![BigInt::zero(); len];
    p[0] = BigInt::one();
    for n in 1..len {
        for _ in 0..power {
            for i in (n..len).rev() {
                let t = p[i - n].clone();
                p[i] -= t;
            }
        }
    }
    QSeries::from_terms(
        p.into_iter()
            .enumerate()
            .map(|(i, c)| (shift + i as i64, BigRational::from_integer(c))),
        Some(Rational64::from_integer(prec as i64)),
    )
}

/// `Δ = η^24`.
pub fn delta(prec: usize) -> ScalarForm {
    ScalarForm::new(Rational64::from_integer(12), LevelTag::SL2, eta_pow(24, prec))
}

/// `D = 2E_2(2τ) - E_2(τ) = 1 + 24 Σ σ_1^odd(n) q^n`.
pub fn weight_two_level_two(prec: usize) -> ScalarForm {
    let coeffs = (0..prec)
        .map(|n| {
            if n == 0 {
                BigRational::one()
            } else {
                BigRational::from_integer(sigma_odd(1, n as u64) * 24)
            }
        })
        .collect();
    ScalarForm::new(
        Rational64::from_integer(2),
        LevelTag::Gamma0_2,
        QSeries::from_coefficients(coeffs),
    )
}

/// `E_k(2τ)` to `O(q^prec)`.
pub fn eisenstein_doubled(k: i64, prec: usize) -> ScalarForm {
    let e = eisenstein_coefficients(k, prec.div_ceil(2));
    let mut coeffs = vec![BigRational::zero(); prec];
    for (n, c) in e.into_iter().enumerate() {
        if 2 * n < prec {
            coeffs[2 * n] = c;
        }
    }
    ScalarForm::new(
        Rational64::from_integer(k),
        LevelTag::Gamma0_2,
        QSeries::from_coefficients(coeffs),
    )
}

pub fn gamma0_2_eisenstein_basis(k: i64, prec: usize) -> Result<Vec<ScalarForm>> {
    if k < 0 || k % 2 != 0 {
        return Err(Error::InvalidWeight {
            weight: k.to_string(),
            reason: "Γ0(2) Eisenstein basis needs even k >= 0".into(),
        });
    }
    Ok(match k {
        0 => vec![ScalarForm::new(
            Rational64::zero(),
            LevelTag::Gamma0_2,
            QSeries::from_coefficients(
                (0..prec)
                    .map(|n| if n == 0 { BigRational::one() } else { BigRational::zero() })
                    .collect(),
            ),
        )],
        2 => vec![weight_two_level_two(prec)],
        _ => {
            let mut e = eisenstein_sl2(k, prec)?;
            e.level = LevelTag::Gamma0_2;
            vec![e, eisenstein_doubled(k, prec)]
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slash {
    S,
    U,
}

/// `M_*(Γ0(2)) = C[D, E_4]`: the basis of weight `k` is `D^a E_4^b` with
/// `2a + 4b = k`, ordered by decreasing `a`.
pub fn level2_monomials(k: i64) -> Vec<(u32, u32)> {
    if k < 0 || k % 2 != 0 {
        return Vec::new();
    }
    (0..=k / 4)
        .map(|b| (((k - 4 * b) / 2) as u32, b as u32))
        .collect()
}

/// `D|S = -E_2(τ) + E_2(τ/2)/2`, exponents `< trunc`.
fn d_slash_s(trunc: usize) -> QSeries {
    let e2 = QSeries::from_coefficients(eisenstein_coefficients(2, 2 * trunc));
    let half = e2.rescale(Rational64::new(1, 2)).expect("denominator 2");
    half.scale(&rat(1, 2))
        .sub(&e2)
        .with_truncation(Rational64::from_integer(trunc as i64))
}

/// Coordinates of `f` in the basis [`level2_monomials`].
pub fn decompose_level2(f: &ScalarForm) -> Result<Vec<BigRational>> {
    let k = f
        .integer_weight()
        .filter(|k| *k >= 0 && k % 2 == 0)
        .ok_or_else(|| Error::InvalidWeight {
            weight: f.weight.to_string(),
            reason: "Γ0(2) forms here have even integer weight".into(),
        })?;
    let prec = match f.expansion.truncation() {
        Some(t) => t.ceil().to_integer() as usize,
        None => (k / 4 + 2) as usize,
    };
    let basis: Vec<QSeries> = level2_monomials(k)
        .into_iter()
        .map(|(a, b)| level2_monomial(a, b, prec))
        .collect();
    let rows: Vec<usize> = (0..prec).collect();
    // scale each equation row to integers
    let mut mat = Vec::with_capacity(rows.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for &n in &rows {
        let mut row: Vec<BigRational> = basis.iter().map(|b| b.coeff_int(n as i64)).collect();
        let t = f.expansion.coeff_int(n as i64);
        row.push(t);
        let den = crate::arith::common_denominator(row.iter());
        let den = BigRational::from_integer(den);
        let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &den).to_integer()).collect();
        rhs.push(ints.pop().unwrap());
        mat.push(ints);
    }
    match solve(&mat, &rhs) {
        Solution::Unique(x) => Ok(x),
        _ => Err(Error::NotDecomposable(k)),
    }
}

fn level2_monomial(a: u32, b: u32, prec: usize) -> QSeries {
    let d = weight_two_level_two(prec).expansion;
    let e4 = QSeries::from_coefficients(eisenstein_coefficients(4, prec));
    d.pow(a).mul(&e4.pow(b))
}

/// `f|_k S` or `f|_k U` as a `q^{1/2}`-series with the truncation of `f`.
pub fn slash_level2(f: &ScalarForm, which: Slash) -> Result<QSeries> {
    let coords = decompose_level2(f)?;
    let k = f.weight.to_integer();
    let trunc = match f.expansion.truncation() {
        Some(t) => t.ceil().to_integer() as usize,
        None => (k / 4 + 2) as usize,
    };
    let ds = d_slash_s(trunc);
    let e4 = QSeries::from_coefficients(eisenstein_coefficients(4, trunc));
    let mut out = QSeries::zero().with_truncation(Rational64::from_integer(trunc as i64));
    for ((a, b), c) in level2_monomials(k).into_iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        out = out.add(&ds.pow(a).mul(&e4.pow(b)).scale(&c));
    }
    let out = out.with_truncation(Rational64::from_integer(trunc as i64));
    match which {
        Slash::S => Ok(out),
        Slash::U => out.translate(),
    }
}

/// `(a E_k(τ) + b E_k(2τ))|_k S = a E_k(τ) + b 2^{-k} E_k(τ/2)` for `k >= 4`.
pub fn slash_s_eisenstein_pair(k: i64, a: &BigRational, b: &BigRational, prec: usize) -> QSeries {
    let e = QSeries::from_coefficients(eisenstein_coefficients(k, 2 * prec));
    let half = e.rescale(Rational64::new(1, 2)).expect("denominator 2");
    let t = BigRational::new(BigInt::one(), BigInt::from(2).pow(k as u32));
    e.with_truncation(Rational64::from_integer(prec as i64))
        .scale(a)
        .add(&half.scale(&(b * t)))
        .with_truncation(Rational64::from_integer(prec as i64))
}

/// Plus-space Eisenstein series of odd weight `w` on `(Γ0(3), χ_{-3})`.
pub fn plus_eisenstein_gamma0_3(w: i64, prec: usize) -> Result<ScalarForm> {
    if w < 1 || w % 2 == 0 {
        return Err(Error::InvalidWeight {
            weight: w.to_string(),
            reason: "plus-space weight must be odd and positive".into(),
        });
    }
    let b = generalized_bernoulli(w as usize, -3);
    let c = -int(2 * w) / b;
    let chi = |n: u64| kronecker(-3, n);
    let mut e_inf = vec![BigRational::zero(); prec.max(3)];
    let mut e_zero = vec![BigRational::zero(); prec.max(3)];
    e_inf[0] = BigRational::one();
    for n in 1..e_inf.len() {
        let mut s1 = BigInt::zero();
        let mut s2 = BigInt::zero();
        for d in divisors(n as u64) {
            let p = BigInt::from(d).pow(w as u32 - 1);
            s1 += &p * chi(d);
            s2 += &p * chi(n as u64 / d);
        }
        e_inf[n] = &c * BigRational::from_integer(s1);
        e_zero[n] = BigRational::from_integer(s2);
    }
    let beta = if e_zero[2].is_zero() {
        BigRational::zero()
    } else {
        -&e_inf[2] / &e_zero[2]
    };
    let coeffs: Vec<BigRational> = e_inf
        .iter()
        .zip(&e_zero)
        .take(prec)
        .map(|(a, b)| a + &beta * b)
        .collect();
    for (n, c) in coeffs.iter().enumerate() {
        if n % 3 == 2 && !c.is_zero() {
            return Err(Error::PlusSpaceViolation(n.to_string()));
        }
    }
    Ok(ScalarForm::new(
        Rational64::from_integer(w),
        LevelTag::Gamma0_3Chi,
        QSeries::from_coefficients(coeffs),
    ))
}

/// Raw generalized class number `H(r, N)` (for `r >= 1`).
pub fn cohen_h(r: usize, n: u64) -> BigRational {
    assert!(r >= 1, "H(0, N) is not normalized; use the theta series");
    if n == 0 {
        return zeta_negative_odd(r);
    }
    let disc = if r.is_multiple_of(2) { n as i64 } else { -(n as i64) };
    if matches!(disc.rem_euclid(4), 2 | 3) {
        return BigRational::zero();
    }
    let (d, f) = fundamental_split(disc);
    let l = -generalized_bernoulli(r, d) / int(r as i64);
    let mut s = BigInt::zero();
    for e in divisors(f) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let chi = kronecker(d, e);
        if chi == 0 {
            continue;
        }
        s += BigInt::from(e).pow(r as u32 - 1) * sigma(2 * r as u32 - 1, f / e) * (mu * chi);
    }
    l * BigRational::from_integer(s)
}

/// Cohen's Eisenstein series of weight `r + 1/2`, normalized to constant
/// term 1; `r = 0` gives `θ = Σ q^{n²}` doubled off the constant.
pub fn cohen_eisenstein(r: usize, prec: usize) -> ScalarForm {
    let coeffs: Vec<BigRational> = if r == 0 {
        (0..prec)
            .map(|n| {
                if n == 0 {
                    BigRational::one()
                } else if crate::arith::is_square(n as u64) {
                    int(2)
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    } else {
        let h0 = cohen_h(r, 0);
        (0..prec).map(|n| cohen_h(r, n as u64) / &h0).collect()
    };
    ScalarForm::new(
        Rational64::new(2 * r as i64 + 1, 2),
        LevelTag::KohnenPlus4,
        QSeries::from_coefficients(coeffs),
    )
}

/// Hurwitz class number by counting reduced forms of discriminant `-N`.
pub fn hurwitz_oracle(n: u64) -> BigRational {
    if n == 0 {
        return rat(-1, 12);
    }
    if matches!(n % 4, 1 | 2) {
        return BigRational::zero();
    }
    let n = n as i64;
    let mut total = BigRational::zero();
    // |b| <= a <= c and 3a^2 <= N
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            let w = if a == b && b == c {
                rat(1, 3)
            } else if b == 0 && a == c {
                rat(1, 2)
            } else {
                BigRational::one()
            };
            total += w;
        }
        a += 1;
    }
    total
}

/// Whether `f` is, coefficient by coefficient, a combination of the
/// level-one monomials `E_4^a E_6^b` of its weight. Returns the coordinates.
pub fn express_level_one(f: &QSeries, k: i64) -> Option<Vec<BigRational>> {
    if k < 0 || k % 2 != 0 {
        return None;
    }
    let prec = f.truncation()?.ceil().to_integer() as usize;
    let e4 = QSeries::from_coefficients(eisenstein_coefficients(4, prec));
    let e6 = QSeries::from_coefficients(eisenstein_coefficients(6, prec));
    let monos: Vec<QSeries> = (0..=k / 4)
        .filter(|a| (k - 4 * a) % 6 == 0)
        .map(|a| e4.pow(a as u32).mul(&e6.pow(((k - 4 * a) / 6) as u32)))
        .collect();
    if monos.is_empty() {
        return if f.is_zero() { Some(Vec::new()) } else { None };
    }
    let mut mat = Vec::new();
    let mut rhs = Vec::new();
    for n in 0..prec {
        let mut row: Vec<BigRational> = monos.iter().map(|m| m.coeff_int(n as i64)).collect();
        row.push(f.coeff_int(n as i64));
        let den = BigRational::from_integer(crate::arith::common_denominator(row.iter()));
        let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &den).to_integer()).collect();
        rhs.push(ints.pop().unwrap());
        mat.push(ints);
    }
    match solve(&mat, &rhs) {
        Solution::Unique(x) => Some(x),
        _ => None,
    }
}
