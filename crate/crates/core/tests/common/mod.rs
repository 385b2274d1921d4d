//! Property suites shared by the `properties` and `acceptance` targets.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, TestCaseError, TestRunner};

use orthoforms::certify::{case_generators, LiftBuilder, LiftSpec};
use orthoforms::classical::{
    eisenstein_sl2, express_level_one, level2_monomials, slash_level2, weight_two_level_two,
    LevelTag, ScalarForm, Slash,
};
use orthoforms::lattice;
use orthoforms::lifts::ParamodularForm;
use orthoforms::qseries::QSeries;
use orthoforms::weil::{d8_invariant_from_gamma02, jacobi_eisenstein, Case, ComponentForm, PullbackContext};

pub const CASES: u32 = 256;

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: [Suite; 7] = [
    ("lift symmetry", lifts_are_symmetric),
    ("elliptic law on pullbacks", pullbacks_satisfy_elliptic_law),
    ("holomorphic support of products", products_keep_holomorphic_support),
    ("D8 F01 = F10 (Γ0(2) input)", d8_middle_components_agree),
    ("D8 F01 = F10 (Eisenstein)", d8_eisenstein_middle_components_agree),
    ("D + D|S + D|U = 0", d_slash_orbit_sum_vanishes),
    ("f2 + f2|S + f2|U in C[E4, E6]", gamma02_orbit_sum_is_level_one),
];

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        max_global_rejects: 20_000,
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    })
}

fn run<S, F>(strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

fn case_strategy() -> impl Strategy<Value = Case> {
    prop_oneof![Just(Case::D8), Just(Case::E6), Just(Case::E7)]
}

fn specs(case: Case, w_max: i64) -> Vec<LiftSpec> {
    case_generators(case).into_iter().filter(|s| s.weight <= w_max).collect()
}

fn eisenstein_cached(case: Case, k: i64, orbit: usize) -> Arc<ComponentForm> {
    static CACHE: OnceLock<Mutex<HashMap<(Case, i64, usize), Arc<ComponentForm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(case, k, orbit)) {
        return f.clone();
    }
    let f = Arc::new(jacobi_eisenstein(case, k, orbit, 6).unwrap());
    cache.lock().unwrap().insert((case, k, orbit), f.clone());
    f
}

/// Generator lifts of each case at precision (3, 3), weight <= 12.
fn generator_lifts(case: Case) -> Arc<Vec<ParamodularForm>> {
    static CACHE: OnceLock<Mutex<HashMap<Case, Arc<Vec<ParamodularForm>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(l) = cache.lock().unwrap().get(&case) {
        return l.clone();
    }
    let mut b = LiftBuilder::new(case, None);
    let l = Arc::new(b.lifts(&specs(case, 12), 3, 3).unwrap());
    cache.lock().unwrap().insert(case, l.clone());
    l
}

fn small_vector(case: Case) -> impl Strategy<Value = Vec<i64>> {
    let rank = case.lattice().rank;
    prop::collection::vec(-1i64..=1, rank).prop_filter("small nonzero vector", move |v| {
        v.iter().any(|&x| x != 0)
            && lattice::norm_int(&case.lattice(), v).map(|q| *q.numer() <= 8).unwrap_or(false)
    })
}

fn case_and_vector() -> impl Strategy<Value = (Case, Vec<i64>)> {
    case_strategy().prop_flat_map(|c| (Just(c), small_vector(c)))
}

fn q_trunc(f: QSeries, prec: usize) -> QSeries {
    f.with_truncation(Rational64::from_integer(prec as i64))
}

/// A random element of `M_k(Γ0(2))` as an integer combination of `D^a E4^b`.
pub fn gamma02_form(k: i64, coeffs: &[i64], prec: usize) -> ScalarForm {
    let d = weight_two_level_two(prec).expansion;
    let e4 = eisenstein_sl2(4, prec).unwrap().expansion;
    let mut f = q_trunc(QSeries::zero(), prec);
    for ((a, b), &c) in level2_monomials(k).into_iter().zip(coeffs.iter().cycle()) {
        let term = d.pow(a).mul(&e4.pow(b));
        f = f.add(&term.scale(&BigRational::from_integer(BigInt::from(c))));
    }
    ScalarForm::new(Rational64::from_integer(k), LevelTag::Gamma0_2, q_trunc(f, prec))
}

pub fn lifts_are_symmetric() -> Result<(), String> {
    let s = (case_and_vector(), 0usize..16, 1i64..=2, 1i64..=2);
    run(s, |((case, v), idx, nq, nxi)| {
        let pool = specs(case, 12);
        let spec = &pool[idx % pool.len()];
        let mut b = LiftBuilder::new(case, Some(v));
        let l = b.lift(spec, nq, nxi).unwrap();
        prop_assert_eq!(l.symmetry_violation(), None);
        prop_assert_eq!(l.support_violation(), None);
        Ok(())
    })
}

pub fn pullbacks_satisfy_elliptic_law() -> Result<(), String> {
    run((case_and_vector(), 0usize..16, 1i64..=3), |((case, v), idx, nmax)| {
        let pool = specs(case, 16);
        let spec = &pool[idx % pool.len()];
        let f = eisenstein_cached(case, spec.weight, spec.orbit);
        let ctx = PullbackContext::new(case.lattice(), &v, nmax).unwrap();
        let j = ctx.pullback(&f).unwrap();
        prop_assert_eq!(j.elliptic_violation(), None);
        prop_assert_eq!(j.parity_violation(), None);
        Ok(())
    })
}

pub fn products_keep_holomorphic_support() -> Result<(), String> {
    let s = (case_strategy(), prop::collection::vec(0usize..16, 1..=3), -3i64..=3);
    run(s, |(case, picks, c)| {
        let lifts = generator_lifts(case);
        let mut prod = lifts[picks[0] % lifts.len()].clone();
        for &p in &picks[1..] {
            prod = prod.multiply(&lifts[p % lifts.len()]).unwrap();
        }
        let prod = prod.scale(&BigRational::from_integer(c.into()));
        prop_assert_eq!(prod.support_violation(), None);
        prop_assert_eq!(prod.symmetry_violation(), None);
        Ok(())
    })
}

pub fn d8_middle_components_agree() -> Result<(), String> {
    let s = (2i64..=8, prop::collection::vec(-5i64..=5, 1..=5), 0usize..=3);
    run(s, |(k, coeffs, extra)| {
        // slash_level2 decomposes from the first coefficients, so give it at least dim M_k
        let prec = level2_monomials(2 * k).len() + extra;
        let f2 = gamma02_form(2 * k, &coeffs, prec);
        let f = d8_invariant_from_gamma02(&f2).unwrap();
        prop_assert_eq!(&f.components[1], &f.components[2]);
        Ok(())
    })
}

pub fn d8_eisenstein_middle_components_agree() -> Result<(), String> {
    run((2i64..=10, 0usize..=1), |(k, orbit)| {
        let k = 2 * k;
        let orbit = if k < 8 { 0 } else { orbit };
        let f = eisenstein_cached(Case::D8, k, orbit);
        prop_assert_eq!(&f.components[1], &f.components[2]);
        Ok(())
    })
}

pub fn d_slash_orbit_sum_vanishes() -> Result<(), String> {
    run((1usize..=40, 1i64..=20, any::<bool>()), |(prec, c, neg)| {
        let c = if neg { -c } else { c };
        let mut d = weight_two_level_two(prec);
        d.expansion = d.expansion.scale(&BigRational::from_integer(c.into()));
        let s = slash_level2(&d, Slash::S).unwrap();
        let u = slash_level2(&d, Slash::U).unwrap();
        let sum = d.expansion.add(&s).add(&u);
        prop_assert!(sum.terms().all(|(_, x)| x.is_zero()));
        Ok(())
    })
}

pub fn gamma02_orbit_sum_is_level_one() -> Result<(), String> {
    let s = (2i64..=6, prop::collection::vec(-5i64..=5, 1..=4), 1usize..=4);
    run(s, |(k, coeffs, extra)| {
        let k = 2 * k;
        let prec = level2_monomials(k).len() + extra;
        let f2 = gamma02_form(k, &coeffs, prec);
        let s = slash_level2(&f2, Slash::S).unwrap();
        let u = slash_level2(&f2, Slash::U).unwrap();
        let f1 = f2.expansion.add(&s).add(&u);
        prop_assert!(f1.terms().all(|(e, x)| e.is_integer() || x.is_zero()));
        prop_assert!(express_level_one(&f1, k).is_some());
        Ok(())
    })
}
