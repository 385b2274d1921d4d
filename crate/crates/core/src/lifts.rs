//! Index-raising operators `V_M`, the additive lift to paramodular
//! Fourier expansions, and truncated products of such expansions.
//!
//! A [`ParamodularForm`] of level `m` holds `A(n, r, M)` for `n <= nq`,
//! `M <= nxi` and `|r| <= isqrt(4nMm)`. Coefficients are kept as integer
//! numerators over one common denominator, which keeps products cheap.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::arith::{bernoulli, common_denominator, divisors, isqrt};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_coset, pairing};
use crate::qseries::big_number;
use crate::weil::{ComponentForm, JacobiForm};

/// `(φ|V_M)(n, r) = Σ_{d | (n, r, M)} d^{k-1} c(nM/d², r/d)` for
/// `n <= φ.nmax / M`.
pub fn hecke_v(phi: &JacobiForm, big_m: i64) -> JacobiForm {
    assert!(big_m >= 1, "V_M needs M >= 1");
    let m = phi.index * big_m;
    let nmax = phi.nmax / big_m;
    let k = phi.weight;
    let rows = (0..=nmax)
        .into_par_iter()
        .map(|n| {
            let rad = crate::weil::radius(n, m);
            (-rad..=rad)
                .map(|r| v_coefficient(phi, k, n, r, big_m))
                .collect()
        })
        .collect();
    JacobiForm::from_rows(k, m, rows)
}

fn v_coefficient(phi: &JacobiForm, k: i64, n: i64, r: i64, big_m: i64) -> BigRational {
    let g = n.gcd(&r).gcd(&big_m);
    let mut acc = BigRational::zero();
    for d in divisors(g as u64) {
        let d = d as i64;
        let c = phi.coeff(n * big_m / (d * d), r / d);
        if !c.is_zero() {
            acc += c * BigRational::from_integer(BigInt::from(d).pow((k - 1) as u32));
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamodularForm {
    pub weight: i64,
    pub level: i64,
    pub nq: i64,
    pub nxi: i64,
    den: BigInt,
    /// `cells[M][n][r + isqrt(4nMm)]`, numerators over `den`.
    cells: Vec<Vec<Vec<BigInt>>>,
}

pub(crate) fn cell_radius(n: i64, big_m: i64, m: i64) -> i64 {
    if n <= 0 || big_m <= 0 {
        0
    } else {
        isqrt((4 * n * big_m * m) as u64) as i64
    }
}

impl ParamodularForm {
    pub fn zero(weight: i64, level: i64, nq: i64, nxi: i64) -> Self {
        let cells = (0..=nxi)
            .map(|bm| {
                (0..=nq)
                    .map(|n| vec![BigInt::zero(); 2 * cell_radius(n, bm, level) as usize + 1])
                    .collect()
            })
            .collect();
        ParamodularForm {
            weight,
            level,
            nq,
            nxi,
            den: BigInt::one(),
            cells,
        }
    }

    /// The constant form `c` of weight 0 (the unit of the ring when `c = 1`).
    pub fn constant(c: &BigRational, level: i64, nq: i64, nxi: i64) -> Self {
        let mut f = Self::zero(0, level, nq, nxi);
        f.cells[0][0][0] = c.numer().clone();
        f.den = c.denom().clone();
        f
    }

    /// `A(n, r, M)`; zero outside the support cone. Panics beyond truncation.
    pub fn coeff(&self, n: i64, r: i64, big_m: i64) -> BigRational {
        assert!(n <= self.nq && big_m <= self.nxi, "A({n},{r},{big_m}) beyond truncation");
        let rad = cell_radius(n, big_m, self.level);
        if n < 0 || big_m < 0 || r.abs() > rad {
            return BigRational::zero();
        }
        BigRational::new(
            self.cells[big_m as usize][n as usize][(r + rad) as usize].clone(),
            self.den.clone(),
        )
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Numerator of `A(n, r, M)` over [`Self::denominator`].
    pub fn numerator(&self, n: i64, r: i64, big_m: i64) -> &BigInt {
        let rad = cell_radius(n, big_m, self.level);
        &self.cells[big_m as usize][n as usize][(r + rad) as usize]
    }

    /// All `(n, r, M)` in the stored range, lexicographically.
    pub fn index_set(&self) -> Vec<(i64, i64, i64)> {
        index_set(self.level, self.nq, self.nxi)
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().flatten().flatten().all(|x| x.is_zero())
    }

    /// Nonzero coefficients in `(M, n, r)` storage order.
    pub fn entries(&self) -> Vec<((i64, i64, i64), BigRational)> {
        let mut out = Vec::new();
        for (bm, row) in self.cells.iter().enumerate() {
            for (n, cell) in row.iter().enumerate() {
                let rad = cell_radius(n as i64, bm as i64, self.level);
                for (i, x) in cell.iter().enumerate() {
                    if !x.is_zero() {
                        out.push((
                            (n as i64, i as i64 - rad, bm as i64),
                            BigRational::new(x.clone(), self.den.clone()),
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn truncate(&self, nq: i64, nxi: i64) -> ParamodularForm {
        let nq = nq.min(self.nq);
        let nxi = nxi.min(self.nxi);
        let cells = self.cells[..=nxi as usize]
            .iter()
            .map(|row| row[..=nq as usize].to_vec())
            .collect();
        ParamodularForm {
            weight: self.weight,
            level: self.level,
            nq,
            nxi,
            den: self.den.clone(),
            cells,
        }
        .reduced()
    }

    fn reduced(mut self) -> Self {
        let mut g = self.den.clone();
        for x in self.cells.iter().flatten().flatten() {
            if g.is_one() {
                break;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_one() && !g.is_zero() {
            for x in self.cells.iter_mut().flatten().flatten() {
                *x = &*x / &g;
            }
            self.den /= &g;
        }
        self
    }

    fn check_compatible(&self, other: &ParamodularForm, same_weight: bool) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level as u64, other.level as u64));
        }
        if same_weight && self.weight != other.weight {
            return Err(Error::WeightMismatch(
                self.weight.to_string(),
                other.weight.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &ParamodularForm) -> Result<ParamodularForm> {
        self.check_compatible(other, true)?;
        Ok(self.lincomb(&BigRational::one(), other, &BigRational::one()))
    }

    pub fn sub(&self, other: &ParamodularForm) -> Result<ParamodularForm> {
        self.check_compatible(other, true)?;
        Ok(self.lincomb(&BigRational::one(), other, &-BigRational::one()))
    }

    /// `a·self + b·other` on the common truncation.
    fn lincomb(&self, a: &BigRational, other: &ParamodularForm, b: &BigRational) -> ParamodularForm {
        let nq = self.nq.min(other.nq);
        let nxi = self.nxi.min(other.nxi);
        let den = self.den.lcm(&other.den) * a.denom().lcm(b.denom());
        let fa = (a.numer() * &den) / (a.denom() * &self.den);
        let fb = (b.numer() * &den) / (b.denom() * &other.den);
        let cells = (0..=nxi as usize)
            .map(|bm| {
                (0..=nq as usize)
                    .map(|n| {
                        self.cells[bm][n]
                            .iter()
                            .zip(&other.cells[bm][n])
                            .map(|(x, y)| x * &fa + y * &fb)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ParamodularForm {
            weight: self.weight,
            level: self.level,
            nq,
            nxi,
            den,
            cells,
        }
        .reduced()
    }

    pub fn scale(&self, c: &BigRational) -> ParamodularForm {
        if c.is_zero() {
            return ParamodularForm::zero(self.weight, self.level, self.nq, self.nxi);
        }
        let mut f = self.clone();
        for x in f.cells.iter_mut().flatten().flatten() {
            *x *= c.numer();
        }
        f.den *= c.denom();
        f.reduced()
    }

    /// Truncated product; weight adds, truncation is the componentwise min.
    pub fn multiply(&self, other: &ParamodularForm) -> Result<ParamodularForm> {
        self.check_compatible(other, false)?;
        let m = self.level;
        let nq = self.nq.min(other.nq);
        let nxi = self.nxi.min(other.nxi);
        let targets: Vec<(i64, i64)> = (0..=nxi)
            .flat_map(|bm| (0..=nq).map(move |n| (bm, n)))
            .collect();
        let out: Vec<Vec<BigInt>> = targets
            .par_iter()
            .map(|&(bm, n)| {
                let rad = cell_radius(n, bm, m);
                let mut acc = vec![BigInt::zero(); 2 * rad as usize + 1];
                for m1 in 0..=bm {
                    for n1 in 0..=n {
                        let a = &self.cells[m1 as usize][n1 as usize];
                        let b = &other.cells[(bm - m1) as usize][(n - n1) as usize];
                        let ra = (a.len() / 2) as i64;
                        let rb = (b.len() / 2) as i64;
                        for (i, x) in a.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            let r1 = i as i64 - ra;
                            for (j, y) in b.iter().enumerate() {
                                if y.is_zero() {
                                    continue;
                                }
                                let r = r1 + j as i64 - rb;
                                acc[(r + rad) as usize] += x * y;
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        let mut cells: Vec<Vec<Vec<BigInt>>> = vec![Vec::with_capacity(nq as usize + 1); nxi as usize + 1];
        for ((bm, _), cell) in targets.into_iter().zip(out) {
            cells[bm as usize].push(cell);
        }
        Ok(ParamodularForm {
            weight: self.weight + other.weight,
            level: m,
            nq,
            nxi,
            den: &self.den * &other.den,
            cells,
        }
        .reduced())
    }

    pub fn pow(&self, e: u32) -> ParamodularForm {
        let mut acc = ParamodularForm::constant(&BigRational::one(), self.level, self.nq, self.nxi);
        for _ in 0..e {
            acc = acc.multiply(self).expect("same level");
        }
        acc
    }

    /// The Fourier–Jacobi coefficient of `ξ^M`, of index `mM` (for `M >= 1`).
    pub fn fj_slice(&self, big_m: i64) -> Result<JacobiForm> {
        if big_m > self.nxi || big_m < 0 {
            return Err(Error::BeyondTruncation {
                what: "Fourier-Jacobi index",
                requested: big_m,
                available: self.nxi,
            });
        }
        let idx = (self.level * big_m).max(1);
        let rows: Vec<Vec<BigRational>> = self.cells[big_m as usize]
            .iter()
            .map(|cell| {
                cell.iter()
                    .map(|x| BigRational::new(x.clone(), self.den.clone()))
                    .collect()
            })
            .collect();
        if big_m == 0 {
            // index 0: only r = 0 is present; embed into an index-1 shape
            let entries = rows
                .iter()
                .enumerate()
                .map(|(n, row)| ((n as i64, 0), row[0].clone()));
            return JacobiForm::from_map(self.weight, 1, self.nq, entries);
        }
        Ok(JacobiForm::from_rows(self.weight, idx, rows))
    }

    /// First `(n, r, M)` with `A(n,r,M) != A(M,r,n)` in the common range.
    pub fn symmetry_violation(&self) -> Option<(i64, i64, i64)> {
        let t = self.nq.min(self.nxi);
        for n in 0..=t {
            for bm in 0..=t {
                let rad = cell_radius(n, bm, self.level);
                for r in -rad..=rad {
                    if self.numerator(n, r, bm) != self.numerator(bm, r, n) {
                        return Some((n, r, bm));
                    }
                }
            }
        }
        None
    }

    /// First coefficient lying outside `4nMm - r² >= 0`; storage makes this
    /// impossible, so this re-derives the cone from the stored entries.
    pub fn support_violation(&self) -> Option<(i64, i64, i64)> {
        self.entries()
            .into_iter()
            .map(|(k, _)| k)
            .find(|&(n, r, bm)| 4 * n * bm * self.level < r * r)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for ((n, r, bm), c) in self.entries() {
            map.insert(
                format!("{n},{r},{bm}"),
                json!([big_number(c.numer()), big_number(c.denom())]),
            );
        }
        json!({
            "weight": self.weight,
            "level": self.level,
            "precision": {"nq": self.nq, "nxi": self.nxi},
            "coefficients": Value::Object(map),
        })
    }
}

/// All `(n, r, M)` with `n <= nq`, `M <= nxi`, `4nMm >= r²`, sorted.
pub fn index_set(level: i64, nq: i64, nxi: i64) -> Vec<(i64, i64, i64)> {
    let mut v = Vec::new();
    for n in 0..=nq {
        for bm in 0..=nxi {
            let rad = cell_radius(n, bm, level);
            for r in -rad..=rad {
                v.push((n, r, bm));
            }
        }
    }
    v.sort();
    v
}

/// `-B_k / 2k`.
fn eisenstein_constant(k: i64) -> BigRational {
    -bernoulli(k as usize) / BigRational::from_integer(BigInt::from(2 * k))
}

/// Additive lift of `φ` truncated at `(nq, nxi)`; needs `φ` through
/// `n = nq·nxi`.
pub fn gritsenko_lift(phi: &JacobiForm, nq: i64, nxi: i64) -> Result<ParamodularForm> {
    let k = phi.weight;
    let c00 = phi.coeff(0, 0);
    if k % 2 != 0 && !c00.is_zero() {
        return Err(Error::OddWeightNonCusp(k));
    }
    if k < 1 {
        return Err(Error::InvalidWeight {
            weight: k.to_string(),
            reason: "additive lift needs positive weight".into(),
        });
    }
    let need = nq * nxi;
    if phi.nmax < need {
        return Err(Error::BeyondTruncation {
            what: "Jacobi coefficient n",
            requested: need,
            available: phi.nmax,
        });
    }
    let m = phi.index;
    let den_phi = common_denominator(phi.entries().map(|(_, c)| c));
    let a000 = if c00.is_zero() {
        BigRational::zero()
    } else {
        eisenstein_constant(k) * &c00
    };
    let den = den_phi.lcm(a000.denom());
    let scale = BigRational::from_integer(den.clone());
    let ints: HashMap<(i64, i64), BigInt> = phi
        .entries()
        .map(|(key, c)| (key, (c * &scale).to_integer()))
        .collect();
    let powers: Vec<BigInt> = (0..=need.max(1))
        .map(|d| BigInt::from(d).pow((k - 1) as u32))
        .collect();
    let targets: Vec<(i64, i64)> = (0..=nxi)
        .flat_map(|bm| (0..=nq).map(move |n| (bm, n)))
        .collect();
    let out: Vec<Vec<BigInt>> = targets
        .par_iter()
        .map(|&(bm, n)| {
            let rad = cell_radius(n, bm, m);
            (-rad..=rad)
                .map(|r| {
                    if n == 0 && bm == 0 {
                        return (&a000 * &scale).to_integer();
                    }
                    let g = n.gcd(&r).gcd(&bm);
                    let mut acc = BigInt::zero();
                    for d in divisors(g as u64) {
                        let d = d as i64;
                        if let Some(c) = ints.get(&(n * bm / (d * d), r / d)) {
                            acc += c * &powers[d as usize];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut cells: Vec<Vec<Vec<BigInt>>> = vec![Vec::with_capacity(nq as usize + 1); nxi as usize + 1];
    for ((bm, _), cell) in targets.into_iter().zip(out) {
        cells[bm as usize].push(cell);
    }
    Ok(ParamodularForm {
        weight: k,
        level: m,
        nq,
        nxi,
        den,
        cells,
    }
    .reduced())
}

/// Lift of the lattice-index form `F` on the lattice level, restricted
/// along `v`: `A(n,r,M) = Σ_{l : <l,v> = r} Σ_{d | (n,M), l/d ∈ L^∨}
/// d^{k-1} F_{[l/d]}((nM - Q(l))/d²)`.
///
/// This is independent of the theta profile and of `V_M`, so comparing it
/// with `gritsenko_lift(pullback(F))` tests both routes at once.
pub fn lattice_lift_restricted(
    f: &ComponentForm,
    v: &[i64],
    nq: i64,
    nxi: i64,
) -> Result<ParamodularForm> {
    let lat = &f.lattice;
    let kw = f.jacobi_weight();
    if !kw.is_integer() {
        return Err(Error::InvalidWeight {
            weight: kw.to_string(),
            reason: "lift needs integral Jacobi weight".into(),
        });
    }
    let k = kw.to_integer();
    let m = crate::lattice::norm_int(lat, v)?.to_integer();
    let nmax = nq * nxi;
    let mut acc: HashMap<(i64, i64, i64), BigRational> = HashMap::new();
    let dk = |d: i64| BigRational::from_integer(BigInt::from(d).pow((k - 1) as u32));
    for g in 0..lat.cosets.len() {
        for (l, q) in enumerate_coset(lat, g, Rational64::from_integer(nmax)) {
            let r = pairing(lat, &l, v)?;
            for bm in 0..=nxi {
                for n in 0..=nq {
                    if n == 0 && bm == 0 {
                        continue;
                    }
                    let nm = Rational64::from_integer(n * bm);
                    if nm < q {
                        continue;
                    }
                    let gg = n.gcd(&bm);
                    let mut s = BigRational::zero();
                    for d in divisors(gg as u64) {
                        let d = d as i64;
                        let ld: Vec<Rational64> = l.iter().map(|x| x / d).collect();
                        let Some(cd) = lat.coset_of(&ld) else {
                            continue;
                        };
                        let e = (nm - q) / (d * d);
                        let c = f.components[cd].coeff(e);
                        if !c.is_zero() {
                            s += c * dk(d);
                        }
                    }
                    if !s.is_zero() {
                        *acc.entry((n, r, bm)).or_insert_with(BigRational::zero) += s;
                    }
                }
            }
        }
    }
    let c00 = f.components[lat.zero_coset()].coeff(Rational64::zero());
    if !c00.is_zero() {
        acc.insert((0, 0, 0), eisenstein_constant(k) * c00);
    }
    from_rational_map(k, m, nq, nxi, acc)
}

fn from_rational_map(
    k: i64,
    m: i64,
    nq: i64,
    nxi: i64,
    entries: HashMap<(i64, i64, i64), BigRational>,
) -> Result<ParamodularForm> {
    let den = common_denominator(entries.values());
    let scale = BigRational::from_integer(den.clone());
    let mut f = ParamodularForm::zero(k, m, nq, nxi);
    for ((n, r, bm), c) in entries {
        let rad = cell_radius(n, bm, m);
        if r.abs() > rad {
            return Err(Error::SupportViolation { n, r, m: m * bm });
        }
        f.cells[bm as usize][n as usize][(r + rad) as usize] = (c * &scale).to_integer();
    }
    f.den = den;
    Ok(f.reduced())
}

impl ParamodularForm {
    /// Builds a form from explicit coefficients (missing entries are zero).
    pub fn from_entries<I>(weight: i64, level: i64, nq: i64, nxi: i64, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((i64, i64, i64), BigRational)>,
    {
        let mut map: HashMap<(i64, i64, i64), BigRational> = HashMap::new();
        for (key, c) in entries {
            if key.0 <= nq && key.2 <= nxi {
                *map.entry(key).or_insert_with(BigRational::zero) += c;
            }
        }
        from_rational_map(weight, level, nq, nxi, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, sigma};
    use crate::weil::{jacobi_eisenstein, pullback, Case};

    fn d8_e4(nmax: i64) -> JacobiForm {
        let f = jacobi_eisenstein(Case::D8, 4, 0, nmax as usize + 1).unwrap();
        pullback(&f, &Case::D8.default_vector(), nmax).unwrap()
    }

    #[test]
    fn hecke_identities() {
        let phi = d8_e4(8);
        assert_eq!(hecke_v(&phi, 1), phi);
        for bm in 1..=3 {
            let v = hecke_v(&phi, bm);
            assert_eq!(v.index, 24 * bm);
            assert_eq!(v.coeff(0, 0), BigRational::from_integer(sigma(3, bm as u64)));
            assert_eq!(v.elliptic_violation(), None);
        }
        let v2 = hecke_v(&phi, 2);
        for r in [-9, -3, 1, 5] {
            assert_eq!(v2.coeff(1, r), phi.coeff(2, r));
        }
    }

    #[test]
    fn lift_slices_and_symmetry() {
        let phi = d8_e4(9);
        let f = gritsenko_lift(&phi, 3, 3).unwrap();
        assert_eq!(f.fj_slice(1).unwrap(), phi.truncate(3));
        assert_eq!(f.symmetry_violation(), None);
        assert_eq!(f.coeff(0, 0, 0), rat(1, 240));
        assert_eq!(f.coeff(2, 0, 0), rat(9, 1));
        let z = gritsenko_lift(&phi.scale(&rat(0, 1)), 3, 3).unwrap();
        assert!(z.is_zero());
        assert!(gritsenko_lift(&phi, 4, 3).is_err());
    }

    #[test]
    fn products_and_grading() {
        let phi = d8_e4(4);
        let f = gritsenko_lift(&phi, 2, 2).unwrap();
        let g = f.add(&f).unwrap();
        let p = f.multiply(&g).unwrap();
        assert_eq!(p, g.multiply(&f).unwrap());
        assert_eq!(p.weight, 8);
        assert_eq!(p.support_violation(), None);
        assert_eq!(p.symmetry_violation(), None);
        let s0 = |h: &ParamodularForm| h.fj_slice(0).unwrap();
        for n in 0..=2 {
            let mut want = BigRational::zero();
            for n1 in 0..=n {
                want += s0(&f).coeff(n1, 0) * s0(&g).coeff(n - n1, 0);
            }
            assert_eq!(s0(&p).coeff(n, 0), want);
        }
        let one = ParamodularForm::constant(&rat(3, 1), 24, 2, 2);
        assert_eq!(one.multiply(&f).unwrap(), f.scale(&rat(3, 1)));
        assert_eq!(f.pow(2), f.multiply(&f).unwrap());
    }

    #[test]
    fn lift_then_restrict_agrees() {
        let (nq, nxi) = (2, 2);
        let nmax = nq * nxi;
        for (case, k, o) in [(Case::D8, 4, 0), (Case::D8, 8, 1), (Case::E7, 6, 0)] {
            let f = jacobi_eisenstein(case, k, o, nmax as usize + 1).unwrap();
            let v = case.default_vector();
            let a = gritsenko_lift(&pullback(&f, &v, nmax).unwrap(), nq, nxi).unwrap();
            let b = lattice_lift_restricted(&f, &v, nq, nxi).unwrap();
            assert_eq!(a, b, "{case:?} {k} {o}");
        }
    }

    #[test]
    fn odd_weight_needs_cusp_input() {
        let phi = JacobiForm::from_map(7, 1, 2, [((0, 0), rat(1, 1))]).unwrap();
        assert!(matches!(gritsenko_lift(&phi, 1, 1), Err(Error::OddWeightNonCusp(7))));
    }
}
