//! Vector-valued forms for the discriminant groups of D8, E6 and E7, the
//! scalar-to-vector correspondences, Jacobi Eisenstein series and the
//! pullback to scalar-index Jacobi forms.
//!
//! A [`ComponentForm`] stores one q-series per coset, in the coset order of
//! [`LatticeData::cosets`]. Its `weight` is the weight of the components;
//! the attached lattice Jacobi form has weight `weight + rank/2`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::arith::{common_denominator, int, isqrt};
use crate::classical::{
    cohen_eisenstein, eisenstein_sl2, eta_pow, plus_eisenstein_gamma0_3, slash_level2,
    slash_s_eisenstein_pair, weight_two_level_two, LevelTag, ScalarForm, Slash,
};
use crate::error::{Error, Result};
use crate::lattice::{self, LatticeData, ThetaProfile};
use crate::qseries::{big_number, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    D8,
    E6,
    E7,
}

impl Case {
    pub fn lattice_name(self) -> &'static str {
        match self {
            Case::D8 => "D8",
            Case::E6 => "E6",
            Case::E7 => "E7",
        }
    }

    pub fn lattice(self) -> Arc<LatticeData> {
        lattice::get(self.lattice_name()).expect("registered lattice")
    }

    /// The standard pullback vector (norm 24 for D8, 12 for E6 and E7).
    pub fn default_vector(self) -> Vec<i64> {
        match self {
            Case::D8 => vec![4, 2, 3, 4, 1, 3, 2, 4],
            Case::E6 => vec![3, 2, 0, 1, 1, 1],
            Case::E7 => vec![3, 2, 0, 1, 1, 1, 1],
        }
    }

    pub fn parse(s: &str) -> Option<Case> {
        match s.to_ascii_uppercase().as_str() {
            "D8" | "C8" => Some(Case::D8),
            "E6" => Some(Case::E6),
            "E7" => Some(Case::E7),
            _ => None,
        }
    }
}

/// How the constant terms of the second D8 Eisenstein series are spread
/// over its two cosets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrbitNormalization {
    /// Constant `1/|orbit|` on each coset of the orbit.
    #[default]
    Averaged,
    /// Constant 1 on every coset of the orbit.
    UnitPerCoset,
}

#[derive(Clone, Debug)]
pub struct ComponentForm {
    pub lattice: Arc<LatticeData>,
    pub weight: Rational64,
    pub components: Vec<QSeries>,
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

impl ComponentForm {
    pub fn new(lattice: Arc<LatticeData>, weight: Rational64, components: Vec<QSeries>) -> Result<Self> {
        if components.len() != lattice.cosets.len() {
            return Err(Error::DimensionMismatch {
                expected: lattice.cosets.len(),
                got: components.len(),
            });
        }
        let f = ComponentForm {
            lattice,
            weight,
            components,
        };
        f.check_exponents()?;
        Ok(f)
    }

    pub fn zero(lattice: Arc<LatticeData>, weight: Rational64, prec: usize) -> Self {
        let t = Rational64::from_integer(prec as i64);
        let components = vec![QSeries::zero().with_truncation(t); lattice.cosets.len()];
        ComponentForm {
            lattice,
            weight,
            components,
        }
    }

    /// Every exponent of component `γ` must be `≡ -Q(γ) mod 1`.
    pub fn check_exponents(&self) -> Result<()> {
        for (c, s) in self.lattice.cosets.iter().zip(&self.components) {
            for (e, a) in s.terms() {
                if !a.is_zero() && !frac(*e + c.norm_mod1).is_zero() {
                    return Err(Error::NonIntegerExponent(format!(
                        "{e} in component of norm {}",
                        c.norm_mod1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Weight of the associated lattice-index Jacobi form.
    pub fn jacobi_weight(&self) -> Rational64 {
        self.weight + Rational64::new(self.lattice.rank as i64, 2)
    }

    pub fn constant_terms(&self) -> Vec<BigRational> {
        self.components
            .iter()
            .map(|s| s.coeff(Rational64::zero()))
            .collect()
    }

    pub fn add(&self, other: &ComponentForm) -> Result<ComponentForm> {
        self.same_space(other)?;
        Ok(ComponentForm {
            lattice: self.lattice.clone(),
            weight: self.weight,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &ComponentForm) -> Result<ComponentForm> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> ComponentForm {
        ComponentForm {
            lattice: self.lattice.clone(),
            weight: self.weight,
            components: self.components.iter().map(|s| s.scale(c)).collect(),
        }
    }

    fn same_space(&self, other: &ComponentForm) -> Result<()> {
        if self.lattice.name != other.lattice.name {
            return Err(Error::UnknownLattice(format!(
                "{} vs {}",
                self.lattice.name, other.lattice.name
            )));
        }
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(
                self.weight.to_string(),
                other.weight.to_string(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .lattice
            .cosets
            .iter()
            .zip(&self.components)
            .map(|(c, s)| {
                json!({
                    "coset": c.rep.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "norm_mod1": c.norm_mod1.to_string(),
                    "series": s.to_json(),
                })
            })
            .collect();
        json!({
            "lattice": self.lattice.name,
            "weight": self.weight.to_string(),
            "components": comps,
        })
    }
}

/// Scalar-index Jacobi form, truncated at `n <= nmax`.
///
/// Row `n` stores `c(n, r)` for `|r| <= isqrt(4nm)`, so the holomorphic
/// support condition holds by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiForm {
    pub weight: i64,
    pub index: i64,
    pub nmax: i64,
    coeffs: Vec<Vec<BigRational>>,
}

impl JacobiForm {
    pub fn zero(weight: i64, index: i64, nmax: i64) -> Self {
        assert!(index >= 1, "index must be positive");
        let coeffs = (0..=nmax)
            .map(|n| vec![BigRational::zero(); 2 * radius(n, index) as usize + 1])
            .collect();
        JacobiForm {
            weight,
            index,
            nmax,
            coeffs,
        }
    }

    /// Builds a form from `(n, r) -> c` entries; rejects entries with
    /// `4nm - r² < 0` and ignores those with `n > nmax`.
    pub fn from_map<I>(weight: i64, index: i64, nmax: i64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((i64, i64), BigRational)>,
    {
        let mut f = JacobiForm::zero(weight, index, nmax);
        for ((n, r), c) in entries {
            if c.is_zero() || n > nmax {
                continue;
            }
            if n < 0 || 4 * n * index < r * r {
                return Err(Error::SupportViolation { n, r, m: index });
            }
            let rad = radius(n, index);
            f.coeffs[n as usize][(r + rad) as usize] = c;
        }
        Ok(f)
    }

    pub(crate) fn from_rows(weight: i64, index: i64, coeffs: Vec<Vec<BigRational>>) -> Self {
        let nmax = coeffs.len() as i64 - 1;
        for (n, row) in coeffs.iter().enumerate() {
            debug_assert_eq!(row.len() as i64, 2 * radius(n as i64, index) + 1);
        }
        JacobiForm {
            weight,
            index,
            nmax,
            coeffs,
        }
    }

    /// Largest `|r|` with `4nm - r² >= 0`.
    pub fn radius(&self, n: i64) -> i64 {
        radius(n, self.index)
    }

    /// `c(n, r)`, zero outside the holomorphic support. Panics beyond `nmax`.
    pub fn coeff(&self, n: i64, r: i64) -> BigRational {
        self.coeff_ref(n, r).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_ref(&self, n: i64, r: i64) -> Option<&BigRational> {
        assert!(n <= self.nmax, "c({n},{r}) beyond truncation {}", self.nmax);
        if n < 0 {
            return None;
        }
        let rad = radius(n, self.index);
        if r.abs() > rad {
            return None;
        }
        Some(&self.coeffs[n as usize][(r + rad) as usize])
    }

    pub fn row(&self, n: i64) -> &[BigRational] {
        &self.coeffs[n as usize]
    }

    /// Nonzero coefficients in `(n, r)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), &BigRational)> {
        self.coeffs.iter().enumerate().flat_map(move |(n, row)| {
            let rad = radius(n as i64, self.index);
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| ((n as i64, i as i64 - rad), c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    pub fn truncate(&self, nmax: i64) -> JacobiForm {
        let nmax = nmax.min(self.nmax);
        JacobiForm {
            weight: self.weight,
            index: self.index,
            nmax,
            coeffs: self.coeffs[..=nmax as usize].to_vec(),
        }
    }

    pub fn add(&self, other: &JacobiForm) -> Result<JacobiForm> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(
                self.weight.to_string(),
                other.weight.to_string(),
            ));
        }
        if self.index != other.index {
            return Err(Error::LevelMismatch(self.index as u64, other.index as u64));
        }
        let nmax = self.nmax.min(other.nmax);
        let coeffs = (0..=nmax as usize)
            .map(|n| {
                self.coeffs[n]
                    .iter()
                    .zip(&other.coeffs[n])
                    .map(|(a, b)| a + b)
                    .collect()
            })
            .collect();
        Ok(JacobiForm {
            weight: self.weight,
            index: self.index,
            nmax,
            coeffs,
        })
    }

    pub fn scale(&self, c: &BigRational) -> JacobiForm {
        JacobiForm {
            weight: self.weight,
            index: self.index,
            nmax: self.nmax,
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// First `(n, r)` with `c(n,-r) != (-1)^k c(n,r)`.
    pub fn parity_violation(&self) -> Option<(i64, i64)> {
        let odd = self.weight % 2 != 0;
        for (n, row) in self.coeffs.iter().enumerate() {
            let len = row.len();
            for i in 0..len / 2 + 1 {
                let (a, b) = (&row[i], &row[len - 1 - i]);
                let ok = if odd { *a == -b } else { a == b };
                if !ok {
                    return Some((n as i64, (len / 2) as i64 - i as i64));
                }
            }
        }
        None
    }

    /// First `(n, r)` whose coefficient differs from that of its reduced
    /// representative `(n', r')` with `r' ≡ r mod 2m`, `-m < r' <= m`.
    pub fn elliptic_violation(&self) -> Option<(i64, i64)> {
        let m = self.index;
        for n in 0..=self.nmax {
            let rad = radius(n, m);
            for r in -rad..=rad {
                let rr = reduce_r(r, m);
                let num = 4 * n * m - r * r + rr * rr;
                debug_assert!(num % (4 * m) == 0);
                let n2 = num / (4 * m);
                if self.coeff(n, r) != self.coeff(n2, rr) {
                    return Some((n, r));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for ((n, r), c) in self.entries() {
            map.insert(
                format!("{n},{r}"),
                json!([big_number(c.numer()), big_number(c.denom())]),
            );
        }
        json!({
            "weight": self.weight,
            "index": self.index,
            "nmax": self.nmax,
            "coefficients": Value::Object(map),
        })
    }
}

pub(crate) fn radius(n: i64, m: i64) -> i64 {
    if n <= 0 {
        0
    } else {
        isqrt((4 * n * m) as u64) as i64
    }
}

/// Representative of `r mod 2m` in `(-m, m]`.
pub fn reduce_r(r: i64, m: i64) -> i64 {
    let x = r.rem_euclid(2 * m);
    if x > m {
        x - 2 * m
    } else {
        x
    }
}

// ---------------------------------------------------------------- D8

fn d8_components(f1: &QSeries, f2: &QSeries, f2s: &QSeries, f2u: &QSeries) -> Vec<QSeries> {
    let h = BigRational::new(BigInt::one(), BigInt::from(2));
    vec![
        f1.add(f2).scale(&h),
        f1.sub(f2).scale(&h),
        f2s.add(f2u).scale(&h),
        f2s.sub(f2u).scale(&h),
    ]
}

fn d8_lattice_checked() -> Arc<LatticeData> {
    let lat = Case::D8.lattice();
    let norms: Vec<Rational64> = lat.cosets.iter().map(|c| c.norm_mod1).collect();
    assert_eq!(
        norms,
        [0, 0, 0, 1].map(|x| Rational64::new(x, 2)).to_vec(),
        "D8 coset layout"
    );
    lat
}

/// The four components `(F00, F01, F10, F11)` of the pair `(f1, f2)`,
/// attached to the cosets `(0, s, c, v)`.
pub fn d8_pair_to_component(f1: &ScalarForm, f2: &ScalarForm) -> Result<ComponentForm> {
    if f1.weight != f2.weight {
        return Err(Error::WeightMismatch(
            f1.weight.to_string(),
            f2.weight.to_string(),
        ));
    }
    let f2s = slash_level2(f2, Slash::S)?;
    let f2u = slash_level2(f2, Slash::U)?;
    let comps = d8_components(&f1.expansion, &f2.expansion, &f2s, &f2u);
    ComponentForm::new(d8_lattice_checked(), f1.weight, comps)
}

/// `f1 = f2 + f2|S + f2|U`, then the pair map; the result has `F01 = F10`.
pub fn d8_invariant_from_gamma02(f2: &ScalarForm) -> Result<ComponentForm> {
    let f2s = slash_level2(f2, Slash::S)?;
    let f2u = slash_level2(f2, Slash::U)?;
    let f1 = f2.expansion.add(&f2s).add(&f2u);
    let comps = d8_components(&f1, &f2.expansion, &f2s, &f2u);
    ComponentForm::new(d8_lattice_checked(), f2.weight, comps)
}

fn d8_eisenstein(k: i64, orbit: usize, prec: usize, norm: OrbitNormalization) -> Result<ComponentForm> {
    let inadmissible =
        || Error::Inadmissible(format!("D8 Eisenstein series of weight {k} on orbit {orbit}"));
    if k % 2 != 0 || k < 4 || orbit > 1 {
        return Err(inadmissible());
    }
    let kappa = k - 4;
    if kappa < 4 {
        if orbit != 0 {
            return Err(inadmissible());
        }
        let f2 = if kappa == 0 {
            ScalarForm::new(
                Rational64::zero(),
                LevelTag::Gamma0_2,
                QSeries::one().with_truncation(Rational64::from_integer(prec as i64)),
            )
        } else {
            weight_two_level_two(prec)
        };
        let f = d8_invariant_from_gamma02(&f2)?;
        let c0 = f.constant_terms()[0].clone();
        return Ok(f.scale(&c0.recip()));
    }
    let t = BigRational::new(BigInt::one(), BigInt::from(2).pow(kappa as u32));
    let one = BigRational::one();
    let (a, b) = if orbit == 0 {
        let b = (&one - &t).recip();
        (-(&t * &b), b)
    } else {
        let u = match norm {
            OrbitNormalization::Averaged => BigRational::new(1.into(), 2.into()),
            OrbitNormalization::UnitPerCoset => one.clone(),
        };
        let b = -(int(2) * &u) / (&one - &t);
        (&u - &b * &t, b)
    };
    let e = eisenstein_sl2(kappa, prec)?.expansion;
    let e2 = crate::classical::eisenstein_doubled(kappa, prec).expansion;
    let f2 = e.scale(&a).add(&e2.scale(&b));
    let f2s = slash_s_eisenstein_pair(kappa, &a, &b, prec);
    let f2u = f2s.translate()?;
    let f1 = f2.add(&f2s).add(&f2u);
    let comps = d8_components(&f1, &f2, &f2s, &f2u);
    ComponentForm::new(d8_lattice_checked(), Rational64::from_integer(kappa), comps)
}

// ---------------------------------------------------------------- E6

fn e6_lattice() -> Arc<LatticeData> {
    Case::E6.lattice()
}

/// `F0 = Σ_{n≡0(3)} c(n) q^{n/3}`, `F1 = F2 = ½ Σ_{n≡1(3)} c(n) q^{n/3}`.
pub fn e6_from_plus(g: &ScalarForm) -> Result<ComponentForm> {
    if g.level != LevelTag::Gamma0_3Chi {
        return Err(Error::PlusSpaceViolation(format!("level tag {:?}", g.level)));
    }
    g.check_support()?;
    let third = Rational64::new(1, 3);
    let s = &g.expansion;
    let f0 = s.filter(|e| e.to_integer().rem_euclid(3) == 0).rescale(third)?;
    let f1 = s
        .filter(|e| e.to_integer().rem_euclid(3) == 1)
        .rescale(third)?
        .scale(&BigRational::new(1.into(), 2.into()));
    ComponentForm::new(e6_lattice(), g.weight, vec![f0, f1.clone(), f1])
}

/// `(F0(3τ) + F1(3τ) + F2(3τ)) / 3`. For `F = e6_from_plus(g)` this is `g/3`.
pub fn e6_to_plus(f: &ComponentForm) -> Result<ScalarForm> {
    let mut acc = QSeries::zero();
    for c in &f.components {
        acc = acc.add(&c.rescale(Rational64::from_integer(3))?);
    }
    let exp = acc.scale(&BigRational::new(1.into(), 3.into()));
    Ok(ScalarForm::new(f.weight, LevelTag::Gamma0_3Chi, exp))
}

/// `(0, f η⁸, -f η⁸)` for a level-one form `f`.
pub fn e6_from_sl2(f: &ScalarForm) -> Result<ComponentForm> {
    if f.level != LevelTag::SL2 {
        return Err(Error::InvalidWeight {
            weight: f.weight.to_string(),
            reason: "expected a level-one form".into(),
        });
    }
    let prec = f
        .expansion
        .truncation()
        .map(|t| t.ceil().to_integer() as usize)
        .unwrap_or(1);
    let g = f.expansion.mul(&eta_pow(8, prec)).with_truncation(Rational64::from_integer(prec as i64));
    let t = Rational64::from_integer(prec as i64);
    ComponentForm::new(
        e6_lattice(),
        f.weight + 4,
        vec![QSeries::zero().with_truncation(t), g.clone(), g.neg()],
    )
}

/// Weights of the E6 orthogonal Eisenstein series available here: even `k >= 4`
/// via the plus space, odd `k >= 7`, `k != 9`, via `η⁸ E_{k-7}`.
fn e6_eisenstein(k: i64, orbit: usize, prec: usize) -> Result<ComponentForm> {
    if orbit != 0 || k < 4 || (k % 2 != 0 && (k < 7 || k == 9)) {
        return Err(Error::Inadmissible(format!(
            "E6 Eisenstein series of weight {k} on orbit {orbit}"
        )));
    }
    if k % 2 == 0 {
        let g = plus_eisenstein_gamma0_3(k - 3, 3 * prec)?;
        e6_from_plus(&g)
    } else {
        let f = if k == 7 {
            ScalarForm::new(
                Rational64::zero(),
                LevelTag::SL2,
                QSeries::one().with_truncation(Rational64::from_integer(prec as i64)),
            )
        } else {
            eisenstein_sl2(k - 7, prec)?
        };
        e6_from_sl2(&f)
    }
}

// ---------------------------------------------------------------- E7

/// Components `Σ c(4n) qⁿ` and `Σ c(4n+1) q^{n+1/4}` of a plus-space form.
pub fn e7_from_plus(g: &ScalarForm) -> Result<ComponentForm> {
    for (e, c) in g.expansion.terms() {
        if !c.is_zero() && (!e.is_integer() || matches!(e.to_integer().rem_euclid(4), 2 | 3)) {
            return Err(Error::PlusSpaceViolation(e.to_string()));
        }
    }
    let quarter = Rational64::new(1, 4);
    let s = &g.expansion;
    let f0 = s.filter(|e| e.to_integer() % 4 == 0).rescale(quarter)?;
    let f1 = s.filter(|e| e.to_integer() % 4 == 1).rescale(quarter)?;
    ComponentForm::new(Case::E7.lattice(), g.weight, vec![f0, f1])
}

fn e7_eisenstein(k: i64, orbit: usize, prec: usize) -> Result<ComponentForm> {
    if orbit != 0 || k < 4 || k % 2 != 0 {
        return Err(Error::Inadmissible(format!(
            "E7 Eisenstein series of weight {k} on orbit {orbit}"
        )));
    }
    let g = cohen_eisenstein((k - 4) as usize, 4 * prec);
    e7_from_plus(&g)
}

/// Jacobi Eisenstein series attached to a cusp orbit, as component data
/// with `O(q^prec)` components.
pub fn jacobi_eisenstein(case: Case, k: i64, orbit: usize, prec: usize) -> Result<ComponentForm> {
    jacobi_eisenstein_with(case, k, orbit, prec, OrbitNormalization::default())
}

pub fn jacobi_eisenstein_with(
    case: Case,
    k: i64,
    orbit: usize,
    prec: usize,
    norm: OrbitNormalization,
) -> Result<ComponentForm> {
    match case {
        Case::D8 => d8_eisenstein(k, orbit, prec, norm),
        Case::E6 => e6_eisenstein(k, orbit, prec),
        Case::E7 => e7_eisenstein(k, orbit, prec),
    }
}

// ---------------------------------------------------------- pullback

/// Theta data for one `(lattice, v, nmax)`, reusable across forms.
#[derive(Clone, Debug)]
pub struct PullbackContext {
    pub lattice: Arc<LatticeData>,
    pub profile: ThetaProfile,
}

impl PullbackContext {
    pub fn new(lattice: Arc<LatticeData>, v: &[i64], nmax: i64) -> Result<Self> {
        let profile = ThetaProfile::new(&lattice, v, nmax)?;
        Ok(PullbackContext { lattice, profile })
    }

    pub fn index(&self) -> i64 {
        self.profile.index
    }

    pub fn nmax(&self) -> i64 {
        self.profile.nmax
    }

    /// `c(n, r) = Σ_γ Σ_{l ∈ γ+L, <l,v> = r} F_γ(n - Q(l))`.
    pub fn pullback(&self, f: &ComponentForm) -> Result<JacobiForm> {
        if f.lattice.name != self.lattice.name {
            return Err(Error::UnknownLattice(f.lattice.name.clone()));
        }
        let kw = f.jacobi_weight();
        if !kw.is_integer() {
            return Err(Error::InvalidWeight {
                weight: kw.to_string(),
                reason: "pullback needs an integral Jacobi weight".into(),
            });
        }
        let nmax = self.profile.nmax;
        let m = self.profile.index;
        let rmax = self.profile.rmax;
        // integer component vectors: F_γ[i] is the coefficient at i + frac(-Q_γ)
        let mut vecs: Vec<(i64, Vec<BigRational>)> = Vec::new();
        for (c, s) in self.lattice.cosets.iter().zip(&f.components) {
            let off = frac(-c.norm_mod1);
            let delta = if c.norm_mod1.is_zero() { 0 } else { 1 };
            let top = nmax - delta;
            if top >= 0 && !s.is_faithful(off + top) {
                return Err(Error::BeyondTruncation {
                    what: "component exponent",
                    requested: top,
                    available: s.truncation().map_or(0, |t| t.floor().to_integer()),
                });
            }
            let v: Vec<BigRational> = (0..=top.max(-1)).map(|i| s.coeff(off + i)).collect();
            vecs.push((delta, v));
        }
        let den = common_denominator(vecs.iter().flat_map(|(_, v)| v.iter()));
        let dq = BigRational::from_integer(den.clone());
        let ivecs: Vec<(i64, Vec<BigInt>)> = vecs
            .into_iter()
            .map(|(d, v)| (d, v.into_iter().map(|x| (x * &dq).to_integer()).collect()))
            .collect();
        let counts = &self.profile.counts;
        let rows: Vec<Vec<BigRational>> = (0..=nmax)
            .into_par_iter()
            .map(|n| {
                let rad = radius(n, m);
                let mut row = vec![BigInt::zero(); 2 * rad as usize + 1];
                for (g, (delta, fv)) in ivecs.iter().enumerate() {
                    for j in 0..=n {
                        let idx = n - j - delta;
                        if idx < 0 {
                            break;
                        }
                        let a = &fv[idx as usize];
                        if a.is_zero() {
                            continue;
                        }
                        let cnt = &counts[g][j as usize];
                        for (out, r) in row.iter_mut().zip(-rad..=rad) {
                            let c = cnt[(r + rmax) as usize];
                            if c != 0 {
                                *out += a * BigInt::from(c);
                            }
                        }
                    }
                }
                row.into_iter()
                    .map(|x| BigRational::new(x, den.clone()))
                    .collect()
            })
            .collect();
        Ok(JacobiForm::from_rows(kw.to_integer(), m, rows))
    }
}

/// One-shot pullback along `v`, computing coefficients for `n <= nmax`.
pub fn pullback(f: &ComponentForm, v: &[i64], nmax: i64) -> Result<JacobiForm> {
    PullbackContext::new(f.lattice.clone(), v, nmax)?.pullback(f)
}

/// Collects a coefficient map into sorted order (handy for tests and dumps).
pub fn jacobi_table(f: &JacobiForm) -> BTreeMap<(i64, i64), BigRational> {
    f.entries().map(|(k, c)| (k, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn constant_form(level: LevelTag, prec: usize) -> ScalarForm {
        ScalarForm::new(
            Rational64::zero(),
            level,
            QSeries::one().with_truncation(Rational64::from_integer(prec as i64)),
        )
    }

    #[test]
    fn d8_pair_of_constants() {
        let f1 = constant_form(LevelTag::SL2, 4);
        let f2 = constant_form(LevelTag::Gamma0_2, 4);
        let f = d8_pair_to_component(&f1, &f2).unwrap();
        assert_eq!(f.constant_terms(), vec![rat(1, 1), rat(0, 1), rat(1, 1), rat(0, 1)]);
        assert!(f.components[1].is_zero() && f.components[3].is_zero());
    }

    #[test]
    fn d8_invariant_inputs() {
        let f = d8_invariant_from_gamma02(&constant_form(LevelTag::Gamma0_2, 4)).unwrap();
        assert_eq!(f.constant_terms(), vec![rat(2, 1), rat(1, 1), rat(1, 1), rat(0, 1)]);
        assert_eq!(f.components[1], f.components[2]);

        let d = weight_two_level_two(6);
        let f = d8_invariant_from_gamma02(&d).unwrap();
        let half = rat(1, 2);
        assert_eq!(f.components[0], d.expansion.scale(&half));
        assert_eq!(f.components[1], d.expansion.scale(&-half));
        assert_eq!(f.components[1], f.components[2]);
    }

    #[test]
    fn d8_eisenstein_constants() {
        let e4 = jacobi_eisenstein(Case::D8, 4, 0, 4).unwrap();
        assert_eq!(e4.constant_terms(), vec![rat(1, 1), rat(1, 2), rat(1, 2), rat(0, 1)]);
        let e6 = jacobi_eisenstein(Case::D8, 6, 0, 4).unwrap();
        assert_eq!(&e6.constant_terms()[..3], &[rat(1, 1), rat(-1, 1), rat(-1, 1)]);
        for k in [8, 10, 12] {
            let a = jacobi_eisenstein(Case::D8, k, 0, 4).unwrap();
            let b = jacobi_eisenstein(Case::D8, k, 1, 4).unwrap();
            assert_eq!(&a.constant_terms()[..3], &[rat(1, 1), rat(0, 1), rat(0, 1)]);
            assert_eq!(&b.constant_terms()[..3], &[rat(0, 1), rat(1, 2), rat(1, 2)]);
            assert_eq!(a.components[1], a.components[2]);
            assert_eq!(b.components[1], b.components[2]);
            let u = jacobi_eisenstein_with(Case::D8, k, 1, 4, OrbitNormalization::UnitPerCoset).unwrap();
            assert_eq!(u.components[1], b.components[1].scale(&rat(2, 1)));
        }
        assert!(jacobi_eisenstein(Case::D8, 6, 1, 4).is_err());
        assert!(jacobi_eisenstein(Case::D8, 9, 0, 4).is_err());
    }

    #[test]
    fn e6_round_trip_and_odd_inputs() {
        let g = plus_eisenstein_gamma0_3(1, 30).unwrap();
        let f = e6_from_plus(&g).unwrap();
        assert_eq!(f.components[1], f.components[2]);
        let back = e6_to_plus(&f).unwrap();
        assert_eq!(back.expansion, g.expansion.scale(&rat(1, 3)));

        let f = e6_from_sl2(&constant_form(LevelTag::SL2, 5)).unwrap();
        let eta8 = eta_pow(8, 5);
        assert!(f.components[0].is_zero());
        assert_eq!(f.components[1], eta8);
        assert_eq!(f.components[2], eta8.neg());
        assert_eq!(f.weight, Rational64::from_integer(4));
        let m15 = jacobi_eisenstein(Case::E6, 15, 0, 5).unwrap();
        assert_eq!(m15.jacobi_weight(), Rational64::from_integer(15));
    }

    #[test]
    fn e7_theta_components() {
        let f = jacobi_eisenstein(Case::E7, 4, 0, 5).unwrap();
        let c0 = &f.components[0];
        let c1 = &f.components[1];
        assert_eq!(c0.coeff_int(0), rat(1, 1));
        assert_eq!(c0.coeff_int(1), rat(2, 1));
        assert_eq!(c1.coeff(Rational64::new(1, 4)), rat(2, 1));
        assert_eq!(c1.coeff(Rational64::new(9, 4)), rat(2, 1));
        assert_eq!(f.jacobi_weight(), Rational64::from_integer(4));
    }

    fn check_jacobi(f: &JacobiForm) {
        assert_eq!(f.parity_violation(), None, "parity");
        assert_eq!(f.elliptic_violation(), None, "elliptic law");
    }

    #[test]
    fn pullbacks_satisfy_jacobi_laws() {
        for (case, ks) in [
            (Case::D8, vec![(4, 0), (6, 0), (8, 0), (8, 1)]),
            (Case::E6, vec![(4, 0), (6, 0), (7, 0)]),
            (Case::E7, vec![(4, 0), (6, 0), (10, 0)]),
        ] {
            let nmax = 5;
            let ctx = PullbackContext::new(case.lattice(), &case.default_vector(), nmax).unwrap();
            for (k, o) in ks {
                let f = jacobi_eisenstein(case, k, o, nmax as usize + 1).unwrap();
                let j = ctx.pullback(&f).unwrap();
                assert_eq!(j.weight, k);
                check_jacobi(&j);
                if k % 2 == 0 && o == 0 {
                    assert_eq!(j.coeff(0, 0), rat(1, 1));
                }
            }
        }
    }

    #[test]
    fn d8_pullback_index_and_constant() {
        let f = jacobi_eisenstein(Case::D8, 4, 0, 3).unwrap();
        let j = pullback(&f, &Case::D8.default_vector(), 2).unwrap();
        assert_eq!(j.index, 24);
        assert_eq!(j.coeff(0, 0), rat(1, 1));
        assert!(pullback(&f, &[0; 8], 2).is_err());
    }

    #[test]
    fn jacobi_map_rejects_bad_support() {
        let e = JacobiForm::from_map(4, 1, 3, [((1, 3), rat(1, 1))]);
        assert!(matches!(e, Err(Error::SupportViolation { .. })));
        let f = JacobiForm::from_map(4, 1, 3, [((1, 2), rat(1, 1)), ((1, -2), rat(1, 1))]).unwrap();
        assert_eq!(f.parity_violation(), None);
        // (1,2) reduces to (0,0), which is zero here
        assert_eq!(f.elliptic_violation(), Some((1, -2)));
    }
}
