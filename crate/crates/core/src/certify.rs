//! Exact rank certificates for monomials in generator lifts, and exact
//! solving of a target in a basis.
//!
//! Matrices have one row per coefficient index `(n, r, M)` and one column
//! per form. Each column is brought to integers by its own common
//! denominator before fraction-free elimination.

use std::collections::HashMap;

use log::{debug, info};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::format_rational;
use crate::error::{Error, Result};
use crate::freealg;
use crate::lifts::{gritsenko_lift, ParamodularForm};
use crate::linalg::{bareiss, right_kernel, solve, Matrix, Solution};
use crate::weil::{jacobi_eisenstein, Case, PullbackContext};

pub const DEFAULT_SCHEDULE: [(i64, i64); 3] = [(4, 4), (6, 6), (8, 8)];

/// All exponent vectors `e` with `Σ e_i w_i = w`. The first generator's
/// exponent runs from high to low, recursively.
pub fn monomials(weights: &[i64], w: i64) -> Vec<Vec<u32>> {
    fn rec(weights: &[i64], i: usize, rest: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let wi = weights[i];
        assert!(wi > 0, "weights must be positive");
        for e in (0..=rest / wi).rev() {
            cur.push(e as u32);
            rec(weights, i + 1, rest - e * wi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if w >= 0 {
        rec(weights, 0, w, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub weight: i64,
    pub recipe: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Independent,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Precision {
    pub nq: i64,
    pub nxi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightRecord {
    pub w: i64,
    pub monomials: Vec<Vec<u32>>,
    /// `[rows, columns]` of the coefficient matrix.
    pub shape: [usize; 2],
    pub rank: usize,
    pub verdict: Verdict,
    pub precision: Precision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub w: i64,
    /// Kernel vector over the monomials of weight `w`, as exact rationals.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceCertificate {
    pub case: String,
    pub generators: Vec<GeneratorInfo>,
    /// Highest precision used by any weight.
    pub precision: Precision,
    /// Index set rule for the matrix rows.
    pub index_set: String,
    pub inference: String,
    pub weights: Vec<WeightRecord>,
    pub relations: Vec<Relation>,
    pub tool_version: String,
}

impl IndependenceCertificate {
    pub fn all_independent(&self) -> bool {
        self.weights.iter().all(|w| w.verdict == Verdict::Independent)
    }

    /// 0 when every weight is independent, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_independent() {
            0
        } else {
            2
        }
    }
}

/// Integer matrix with one column per form over the shared index set, and
/// the per-column denominators.
fn integer_columns(forms: &[&ParamodularForm], index: &[(i64, i64, i64)]) -> (Matrix, Vec<BigInt>) {
    let dens: Vec<BigInt> = forms.iter().map(|f| f.denominator().clone()).collect();
    let m: Matrix = index
        .par_iter()
        .map(|&(n, r, bm)| forms.iter().map(|f| f.numerator(n, r, bm).clone()).collect())
        .collect();
    (m, dens)
}

fn common_precision(forms: &[&ParamodularForm]) -> (i64, i64) {
    let nq = forms.iter().map(|f| f.nq).min().unwrap_or(0);
    let nxi = forms.iter().map(|f| f.nxi).min().unwrap_or(0);
    (nq, nxi)
}

/// Products of generators, memoized by exponent vector.
pub struct MonomialCache<'a> {
    gens: &'a [ParamodularForm],
    level: i64,
    nq: i64,
    nxi: i64,
    memo: HashMap<Vec<u32>, ParamodularForm>,
}

impl<'a> MonomialCache<'a> {
    pub fn new(gens: &'a [ParamodularForm]) -> Self {
        let refs: Vec<&ParamodularForm> = gens.iter().collect();
        let (nq, nxi) = common_precision(&refs);
        let level = gens.first().map_or(1, |g| g.level);
        MonomialCache {
            gens,
            level,
            nq,
            nxi,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, e: &[u32]) -> ParamodularForm {
        if let Some(f) = self.memo.get(e) {
            return f.clone();
        }
        let f = match e.iter().position(|&x| x > 0) {
            None => ParamodularForm::constant(&BigRational::one(), self.level, self.nq, self.nxi),
            Some(i) => {
                let mut prev = e.to_vec();
                prev[i] -= 1;
                let p = self.get(&prev);
                p.multiply(&self.gens[i].truncate(self.nq, self.nxi))
                    .expect("generators share a level")
            }
        };
        self.memo.insert(e.to_vec(), f.clone());
        f
    }
}

/// Rank and normalized kernel of the monomials of one weight.
fn weight_rank(cache: &mut MonomialCache, mons: &[Vec<u32>]) -> (usize, usize, Vec<Vec<BigRational>>) {
    let forms: Vec<ParamodularForm> = mons.iter().map(|e| cache.get(e)).collect();
    let refs: Vec<&ParamodularForm> = forms.iter().collect();
    let (nq, nxi) = common_precision(&refs);
    let level = forms.first().map_or(1, |f| f.level);
    let index = crate::lifts::index_set(level, nq, nxi);
    let (m, dens) = integer_columns(&refs, &index);
    let cols = mons.len();
    let rank = bareiss(m.clone(), cols).rank;
    let kernel = if rank < cols {
        right_kernel(&m, cols)
            .into_iter()
            .map(|y| {
                // y is a kernel vector for the scaled columns; undo the scaling
                let mut x: Vec<BigRational> = y
                    .into_iter()
                    .zip(&dens)
                    .map(|(yi, d)| yi * BigRational::from_integer(d.clone()))
                    .collect();
                if let Some(lead) = x.iter().find(|v| !v.is_zero()).cloned() {
                    for v in x.iter_mut() {
                        *v = &*v / &lead;
                    }
                }
                x
            })
            .collect()
    } else {
        Vec::new()
    };
    (index.len(), rank, kernel)
}

const INDEX_RULE: &str = "all (n, r, M) with n <= nq, M <= nxi and 4nMm - r^2 >= 0, lexicographic";
const INFERENCE: &str = "full rank of the monomials in the pullback lifts excludes any polynomial relation \
     in that weight among the forms they are restricted from, since restriction is a ring homomorphism";

/// Rank certificate for all monomials of weight `<= w_max` in the forms
/// produced by `build(nq, nxi)`. Weights that stay rank deficient are
/// retried at the next precision of `schedule`; after the last one they
/// are reported as inconclusive together with their kernel vectors.
pub fn independence<B>(
    case: &str,
    generators: &[GeneratorInfo],
    mut build: B,
    w_max: i64,
    schedule: &[(i64, i64)],
    progress: &mut dyn FnMut(&WeightRecord),
) -> Result<IndependenceCertificate>
where
    B: FnMut(i64, i64) -> Result<Vec<ParamodularForm>>,
{
    if schedule.is_empty() {
        return Err(Error::InsufficientPrecision("empty precision schedule".into()));
    }
    let weights: Vec<i64> = generators.iter().map(|g| g.weight).collect();
    let mut pending: Vec<i64> = (0..=w_max).filter(|&w| !monomials(&weights, w).is_empty()).collect();
    let mut done: HashMap<i64, WeightRecord> = HashMap::new();
    let mut relations = Vec::new();
    let mut used = Precision { nq: 0, nxi: 0 };
    for (step, &(nq, nxi)) in schedule.iter().enumerate() {
        if pending.is_empty() {
            break;
        }
        let last = step + 1 == schedule.len();
        info!("{case}: precision ({nq},{nxi}), {} weights pending", pending.len());
        let forms = build(nq, nxi)?;
        if forms.len() != generators.len() {
            return Err(Error::DimensionMismatch {
                expected: generators.len(),
                got: forms.len(),
            });
        }
        used = Precision { nq, nxi };
        let mut cache = MonomialCache::new(&forms);
        let mut still = Vec::new();
        for &w in &pending {
            let mons = monomials(&weights, w);
            let (rows, rank, kernel) = weight_rank(&mut cache, &mons);
            debug!("{case}: weight {w}: {rank}/{} at ({nq},{nxi})", mons.len());
            let full = rank == mons.len();
            if full || last {
                let rec = WeightRecord {
                    w,
                    shape: [rows, mons.len()],
                    rank,
                    verdict: if full {
                        Verdict::Independent
                    } else {
                        Verdict::Inconclusive
                    },
                    precision: Precision { nq, nxi },
                    monomials: mons,
                };
                progress(&rec);
                if !full {
                    for k in kernel {
                        relations.push(Relation {
                            w,
                            coefficients: k.iter().map(format_rational).collect(),
                        });
                    }
                }
                done.insert(w, rec);
            } else {
                still.push(w);
            }
        }
        pending = still;
    }
    let mut records: Vec<WeightRecord> = done.into_values().collect();
    records.sort_by_key(|r| r.w);
    Ok(IndependenceCertificate {
        case: case.to_string(),
        generators: generators.to_vec(),
        precision: used,
        index_set: INDEX_RULE.into(),
        inference: INFERENCE.into(),
        weights: records,
        relations,
        tool_version: env!("CARGO_PKG_VERSION").into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Unique(Vec<BigRational>),
    /// No solution; the index where the reduced system fails.
    Inconsistent { index: (i64, i64, i64) },
    Underdetermined { rank: usize },
}

/// Solves `target = Σ x_i basis_i` on every shared coefficient.
pub fn express_in_basis(target: &ParamodularForm, basis: &[ParamodularForm]) -> Result<Expression> {
    for b in basis {
        if b.level != target.level {
            return Err(Error::LevelMismatch(target.level as u64, b.level as u64));
        }
        if b.weight != target.weight {
            return Err(Error::WeightMismatch(
                target.weight.to_string(),
                b.weight.to_string(),
            ));
        }
    }
    let mut refs: Vec<&ParamodularForm> = basis.iter().collect();
    refs.push(target);
    let (nq, nxi) = common_precision(&refs);
    let index = crate::lifts::index_set(target.level, nq, nxi);
    refs.pop();
    let (a, dens) = integer_columns(&refs, &index);
    let dt = target.denominator().clone();
    let b: Vec<BigInt> = index
        .iter()
        .map(|&(n, r, bm)| target.numerator(n, r, bm).clone())
        .collect();
    if basis.is_empty() {
        return Ok(match b.iter().position(|x| !x.is_zero()) {
            Some(i) => Expression::Inconsistent { index: index[i] },
            None => Expression::Unique(Vec::new()),
        });
    }
    Ok(match solve(&a, &b) {
        Solution::Unique(y) => Expression::Unique(
            y.into_iter()
                .zip(&dens)
                .map(|(yi, d)| yi * BigRational::new(d.clone(), dt.clone()))
                .collect(),
        ),
        Solution::Inconsistent { row } => Expression::Inconsistent { index: index[row] },
        Solution::Underdetermined { rank } => Expression::Underdetermined { rank },
    })
}

// ------------------------------------------------------------ cases

/// One lift generator: its label and the Jacobi Eisenstein data it comes from.
#[derive(Clone, Debug)]
pub struct LiftSpec {
    pub name: String,
    pub weight: i64,
    pub orbit: usize,
}

fn spec(name: &str, weight: i64, orbit: usize) -> LiftSpec {
    LiftSpec {
        name: name.into(),
        weight,
        orbit,
    }
}

/// The generator lifts used for each case, in weight order.
pub fn case_generators(case: Case) -> Vec<LiftSpec> {
    match case {
        Case::D8 => vec![
            spec("E4", 4, 0),
            spec("E6", 6, 0),
            spec("E8,0", 8, 0),
            spec("E8,1", 8, 1),
            spec("E10,0", 10, 0),
            spec("E10,1", 10, 1),
            spec("E12,0", 12, 0),
            spec("E12,1", 12, 1),
            spec("E14,0", 14, 0),
            spec("E16,0", 16, 0),
            spec("E18,0", 18, 0),
        ],
        Case::E6 => [4, 6, 7, 10, 12, 15, 16, 18, 24]
            .iter()
            .map(|&k| spec(&format!("E{k}"), k, 0))
            .collect(),
        Case::E7 => [4, 6, 10, 12, 14, 16, 18, 22, 24, 30]
            .iter()
            .map(|&k| spec(&format!("E{k}"), k, 0))
            .collect(),
    }
}

/// Root system whose dimension bound applies to the forms of `case`.
pub fn bound_system(case: Case) -> &'static str {
    match case {
        Case::D8 => "C8",
        Case::E6 => "E6",
        Case::E7 => "E7",
    }
}

/// Builds additive lifts of pulled-back Jacobi Eisenstein series.
pub struct LiftBuilder {
    pub case: Case,
    pub v: Vec<i64>,
    ctx: Option<PullbackContext>,
}

impl LiftBuilder {
    pub fn new(case: Case, v: Option<Vec<i64>>) -> Self {
        LiftBuilder {
            case,
            v: v.unwrap_or_else(|| case.default_vector()),
            ctx: None,
        }
    }

    fn context(&mut self, nmax: i64) -> Result<&PullbackContext> {
        let stale = self.ctx.as_ref().is_none_or(|c| c.nmax() < nmax);
        if stale {
            self.ctx = Some(PullbackContext::new(self.case.lattice(), &self.v, nmax)?);
        }
        Ok(self.ctx.as_ref().unwrap())
    }

    pub fn index(&mut self) -> Result<i64> {
        Ok(self.context(0)?.index())
    }

    pub fn recipe(&self, s: &LiftSpec) -> String {
        let v: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        format!(
            "gritsenko_lift(pullback(jacobi_eisenstein({:?}, k={}, orbit={}), v=({})))",
            self.case,
            s.weight,
            s.orbit,
            v.join(",")
        )
    }

    pub fn lift(&mut self, s: &LiftSpec, nq: i64, nxi: i64) -> Result<ParamodularForm> {
        let nmax = nq * nxi;
        let case = self.case;
        let ctx = self.context(nmax)?;
        let f = jacobi_eisenstein(case, s.weight, s.orbit, nmax as usize + 1)?;
        let phi = ctx.pullback(&f)?.truncate(nmax);
        gritsenko_lift(&phi, nq, nxi)
    }

    pub fn lifts(&mut self, specs: &[LiftSpec], nq: i64, nxi: i64) -> Result<Vec<ParamodularForm>> {
        specs.iter().map(|s| self.lift(s, nq, nxi)).collect()
    }
}

pub fn generator_infos(builder: &LiftBuilder, specs: &[LiftSpec]) -> Vec<GeneratorInfo> {
    specs
        .iter()
        .map(|s| GeneratorInfo {
            name: s.name.clone(),
            weight: s.weight,
            recipe: builder.recipe(s),
        })
        .collect()
}

/// Independence certificate for the standard generators of `case`.
pub fn certify_case(
    case: Case,
    w_max: i64,
    schedule: &[(i64, i64)],
    v: Option<Vec<i64>>,
    progress: &mut dyn FnMut(&WeightRecord),
) -> Result<IndependenceCertificate> {
    let mut builder = LiftBuilder::new(case, v);
    let specs: Vec<LiftSpec> = case_generators(case);
    let infos = generator_infos(&builder, &specs);
    let label = format!("{:?}/K({})", case, builder.index()?);
    // generators above w_max never enter a monomial, so build only the rest
    let used: Vec<usize> = (0..specs.len()).filter(|&i| specs[i].weight <= w_max).collect();
    let used_infos: Vec<GeneratorInfo> = used.iter().map(|&i| infos[i].clone()).collect();
    let used_specs: Vec<LiftSpec> = used.iter().map(|&i| specs[i].clone()).collect();
    let mut cert = independence(
        &label,
        &used_infos,
        |nq, nxi| builder.lifts(&used_specs, nq, nxi),
        w_max,
        schedule,
        progress,
    )?;
    cert.generators = infos;
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessRow {
    pub w: i64,
    pub independent: usize,
    pub upper_bound: i64,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub certificate: IndependenceCertificate,
    pub bound_system: String,
    pub rows: Vec<FreenessRow>,
}

impl FreenessReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.certified)
    }
}

/// Lower bound by rank, upper bound by the Jacobi-form dimension bound, per weight.
pub fn certify_freeness(
    case: Case,
    w_max: i64,
    schedule: &[(i64, i64)],
    progress: &mut dyn FnMut(&WeightRecord),
) -> Result<FreenessReport> {
    let cert = certify_case(case, w_max, schedule, None, progress)?;
    let sys = bound_system(case);
    let mut rows = Vec::new();
    for w in 0..=w_max {
        let upper = freealg::dim_upper_bound(sys, w)?;
        let independent = cert
            .weights
            .iter()
            .find(|r| r.w == w)
            .map_or(0, |r| r.rank);
        rows.push(FreenessRow {
            w,
            independent,
            upper_bound: upper,
            certified: independent as i64 == upper,
        });
    }
    Ok(FreenessReport {
        certificate: cert,
        bound_system: sys.into(),
        rows,
    })
}

// ------------------------------------------------------ weight 14

pub const E14_EXPECTED: [i64; 3] = [1330560, 2640, -11088];

/// The eight D8 lifts entering the weight-14 relation.
#[derive(Clone, Debug)]
pub struct E14Inputs {
    pub nq: i64,
    pub nxi: i64,
    pub e4: ParamodularForm,
    pub e6: ParamodularForm,
    pub e8: [ParamodularForm; 2],
    pub e10: [ParamodularForm; 2],
    pub e14: [ParamodularForm; 2],
}

impl E14Inputs {
    pub fn build(nq: i64, nxi: i64) -> Result<Self> {
        let mut b = LiftBuilder::new(Case::D8, None);
        let mut l = |k: i64, o: usize| b.lift(&spec("", k, o), nq, nxi);
        Ok(E14Inputs {
            nq,
            nxi,
            e4: l(4, 0)?,
            e6: l(6, 0)?,
            e8: [l(8, 0)?, l(8, 1)?],
            e10: [l(10, 0)?, l(10, 1)?],
            e14: [l(14, 0)?, l(14, 1)?],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum E14Status {
    Verified,
    /// A unique solution exists but differs from the expected one.
    Mismatch,
    Inconsistent,
    Underdetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct E14Report {
    pub precision: Precision,
    pub target: String,
    pub basis: Vec<String>,
    pub expected: Vec<String>,
    pub status: E14Status,
    pub coefficients: Option<Vec<String>>,
    /// Found/expected per basis element when the solution is off.
    pub ratios: Option<Vec<String>>,
    /// Set when every ratio is the same nonzero value.
    pub proportional: Option<String>,
    pub inconsistent_at: Option<(i64, i64, i64)>,
    pub diagnostic: Option<String>,
}

impl E14Report {
    pub fn exit_code(&self) -> i32 {
        if self.status == E14Status::Verified {
            0
        } else {
            1
        }
    }
}

/// Expresses `E14,0 + E14,1` in `{E4² E6, E4 (E10,0 + E10,1), E6 (E8,0 + E8,1)}`.
pub fn verify_e14_from(inp: &E14Inputs) -> Result<E14Report> {
    let target = inp.e14[0].add(&inp.e14[1])?;
    let basis = vec![
        inp.e4.pow(2).multiply(&inp.e6)?,
        inp.e4.multiply(&inp.e10[0].add(&inp.e10[1])?)?,
        inp.e6.multiply(&inp.e8[0].add(&inp.e8[1])?)?,
    ];
    let expected: Vec<BigRational> = E14_EXPECTED
        .iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect();
    let mut rep = E14Report {
        precision: Precision {
            nq: inp.nq,
            nxi: inp.nxi,
        },
        target: "E14,0 + E14,1".into(),
        basis: vec![
            "E4^2*E6".into(),
            "E4*(E10,0 + E10,1)".into(),
            "E6*(E8,0 + E8,1)".into(),
        ],
        expected: expected.iter().map(format_rational).collect(),
        status: E14Status::Verified,
        coefficients: None,
        ratios: None,
        proportional: None,
        inconsistent_at: None,
        diagnostic: None,
    };
    match express_in_basis(&target, &basis)? {
        Expression::Unique(x) => {
            rep.coefficients = Some(x.iter().map(format_rational).collect());
            if x != expected {
                let ratios: Vec<BigRational> = x.iter().zip(&expected).map(|(a, b)| a / b).collect();
                let same = ratios.windows(2).all(|p| p[0] == p[1]) && !ratios[0].is_zero();
                rep.status = E14Status::Mismatch;
                rep.diagnostic = Some(if same {
                    format!(
                        "coefficients are proportional to the expected ones with factor {}; \
                         the normalization of the Eisenstein inputs differs",
                        format_rational(&ratios[0])
                    )
                } else {
                    "coefficients differ from the expected ones and are not proportional; \
                     per-term normalization ratios are listed"
                        .into()
                });
                rep.proportional = same.then(|| format_rational(&ratios[0]));
                rep.ratios = Some(ratios.iter().map(format_rational).collect());
            }
        }
        Expression::Inconsistent { index } => {
            rep.status = E14Status::Inconsistent;
            rep.inconsistent_at = Some(index);
            rep.diagnostic = Some(format!(
                "no linear combination matches the target at coefficient (n,r,M) = {index:?}"
            ));
        }
        Expression::Underdetermined { rank } => {
            rep.status = E14Status::Underdetermined;
            rep.diagnostic = Some(format!("basis has rank {rank} < 3 on the index set"));
        }
    }
    Ok(rep)
}

pub fn verify_e14(nq: i64, nxi: i64) -> Result<E14Report> {
    verify_e14_from(&E14Inputs::build(nq, nxi)?)
}

/// Adds `delta` to one coefficient of `f` (a deliberate corruption for
/// negative controls).
pub fn corrupt(f: &ParamodularForm, at: (i64, i64, i64), delta: &BigRational) -> Result<ParamodularForm> {
    let mut entries = f.entries();
    entries.push((at, delta.clone()));
    ParamodularForm::from_entries(f.weight, f.level, f.nq, f.nxi, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn monomial_counts() {
        let w: Vec<i64> = case_generators(Case::D8).iter().map(|s| s.weight).collect();
        assert_eq!(monomials(&w, 14).len(), 6);
        assert_eq!(monomials(&w, 4), vec![{
            let mut e = vec![0; 11];
            e[0] = 1;
            e
        }]);
        assert!(monomials(&w, 1).is_empty());
        assert_eq!(monomials(&w, 0), vec![vec![0; 11]]);
    }

    #[test]
    fn e14_relation_small_precision() {
        let rep = verify_e14(2, 2).unwrap();
        assert_eq!(rep.status, E14Status::Verified, "{rep:?}");
    }

    #[test]
    fn express_trivial_cases() {
        let mut b = LiftBuilder::new(Case::D8, None);
        let e8 = b.lift(&spec("", 8, 0), 2, 2).unwrap();
        let e81 = b.lift(&spec("", 8, 1), 2, 2).unwrap();
        let basis = vec![e8.clone(), e81.clone()];
        assert_eq!(
            express_in_basis(&e81, &basis).unwrap(),
            Expression::Unique(vec![rat(0, 1), rat(1, 1)])
        );
        let zero = e8.scale(&rat(0, 1));
        assert_eq!(
            express_in_basis(&zero, &basis).unwrap(),
            Expression::Unique(vec![rat(0, 1), rat(0, 1)])
        );
        let dup = vec![e8.clone(), e8.clone()];
        assert!(matches!(
            express_in_basis(&e8, &dup).unwrap(),
            Expression::Underdetermined { rank: 1 }
        ));
    }

    #[test]
    fn duplicated_generator_gives_unit_relation() {
        let mut b = LiftBuilder::new(Case::D8, None);
        let s = spec("E4", 4, 0);
        let infos = vec![
            GeneratorInfo { name: "E4".into(), weight: 4, recipe: b.recipe(&s) },
            GeneratorInfo { name: "E4'".into(), weight: 4, recipe: b.recipe(&s) },
        ];
        let cert = independence(
            "dup",
            &infos,
            |nq, nxi| Ok(vec![b.lift(&s, nq, nxi)?, b.lift(&s, nq, nxi)?]),
            4,
            &[(2, 2)],
            &mut |_| {},
        )
        .unwrap();
        let r4 = cert.weights.iter().find(|r| r.w == 4).unwrap();
        assert_eq!(r4.rank, 1);
        assert_eq!(r4.verdict, Verdict::Inconclusive);
        assert_eq!(cert.relations[0].coefficients, vec!["1", "-1"]);
        assert_eq!(cert.exit_code(), 2);
    }
}
