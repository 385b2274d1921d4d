//! Even positive-definite lattices given by Gram matrices on `Z^n`, their
//! discriminant groups, and exact short-vector enumeration in dual cosets.
//!
//! Vectors of the dual lattice are written in the ambient coordinates of
//! `Z^n ⊗ Q`, so `L^∨ = G^{-1} Z^n` and every pairing is `xᵀ G y`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::isqrt_i128;
use crate::error::{Error, Result};

pub type Gram = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq)]
pub struct Coset {
    /// Representative with coordinates in `[0, 1)`.
    pub rep: Vec<Rational64>,
    /// `Q(rep)` reduced into `[0, 1)`.
    pub norm_mod1: Rational64,
}

#[derive(Debug)]
pub struct LatticeData {
    pub name: String,
    pub rank: usize,
    pub gram: Gram,
    /// Zero coset first, then sorted by `(norm_mod1, rep)`.
    pub cosets: Vec<Coset>,
    /// Partition of the integer-norm cosets (indices into `cosets`).
    pub cusp_orbits: Vec<Vec<usize>>,
    inverse: Vec<Vec<Rational64>>,
    enumerator: Enumerator,
}

fn cartan_a(n: usize) -> Gram {
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = 2;
        if i + 1 < n {
            g[i][i + 1] = -1;
            g[i + 1][i] = -1;
        }
    }
    g
}

/// `D_n` with a chain `1 .. n-2` and node `n-2` joined to `n-1` and `n`.
fn cartan_d(n: usize) -> Gram {
    assert!(n >= 3);
    let mut g = cartan_a(n - 1);
    for row in g.iter_mut() {
        row.push(0);
    }
    g.push(vec![0; n]);
    g[n - 1][n - 1] = 2;
    g[n - 3][n - 1] = -1;
    g[n - 1][n - 3] = -1;
    g
}

/// Gram matrix of a registered lattice.
pub fn gram_matrix(name: &str) -> Result<Gram> {
    let unknown = || Error::UnknownLattice(name.to_string());
    let g = match name {
        "E6" => vec![
            vec![2, 0, -1, 0, 0, 0],
            vec![0, 2, 0, -1, 0, 0],
            vec![-1, 0, 2, -1, 0, 0],
            vec![0, -1, -1, 2, -1, 0],
            vec![0, 0, 0, -1, 2, -1],
            vec![0, 0, 0, 0, -1, 2],
        ],
        "E7" => vec![
            vec![2, 0, -1, 0, 0, 0, 0],
            vec![0, 2, 0, -1, 0, 0, 0],
            vec![-1, 0, 2, -1, 0, 0, 0],
            vec![0, -1, -1, 2, -1, 0, 0],
            vec![0, 0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, 0, -1, 2, -1],
            vec![0, 0, 0, 0, 0, -1, 2],
        ],
        _ => {
            if let Some(rest) = name.strip_suffix("A1").filter(|r| !r.is_empty()) {
                let n: usize = rest.parse().map_err(|_| unknown())?;
                if !(1..=8).contains(&n) {
                    return Err(unknown());
                }
                let mut g = vec![vec![0; n]; n];
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = 2;
                }
                return Ok(g);
            }
            let (kind, n) = name.split_at(1);
            let n: usize = n.parse().map_err(|_| unknown())?;
            match kind {
                "A" if (1..=8).contains(&n) => cartan_a(n),
                "D" if (3..=8).contains(&n) => cartan_d(n),
                _ => return Err(unknown()),
            }
        }
    };
    Ok(g)
}

/// Registered lattice names (bookkeeping lattices included).
pub fn registered_names() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("A{n}")).collect();
    v.extend((1..=4).map(|n| format!("{n}A1")));
    v.extend((3..=8).map(|n| format!("D{n}")));
    v.push("E6".into());
    v.push("E7".into());
    v
}

static REGISTRY: OnceLock<Mutex<HashMap<String, Arc<LatticeData>>>> = OnceLock::new();

/// Cached lattice data by name.
pub fn get(name: &str) -> Result<Arc<LatticeData>> {
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(l) = reg.lock().unwrap().get(name) {
        return Ok(l.clone());
    }
    let l = Arc::new(LatticeData::new(name, gram_matrix(name)?));
    reg.lock()
        .unwrap()
        .insert(name.to_string(), l.clone());
    Ok(l)
}

fn rational_inverse(g: &Gram) -> Vec<Vec<Rational64>> {
    let n = g.len();
    let mut a: Vec<Vec<BigRational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("singular Gram");
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| Rational64::new(x.numer().to_i64().unwrap(), x.denom().to_i64().unwrap()))
                .collect()
        })
        .collect()
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

fn quad(g: &Gram, x: &[Rational64]) -> Rational64 {
    let mut s = Rational64::zero();
    for i in 0..x.len() {
        for j in 0..x.len() {
            if g[i][j] != 0 {
                s += x[i] * x[j] * g[i][j];
            }
        }
    }
    s / 2
}

impl LatticeData {
    pub fn new(name: &str, gram: Gram) -> Self {
        let rank = gram.len();
        for (i, row) in gram.iter().enumerate() {
            assert_eq!(row.len(), rank, "Gram matrix not square");
            assert!(row[i] > 0 && row[i] % 2 == 0, "diagonal must be even");
            for j in 0..rank {
                assert_eq!(row[j], gram[j][i], "Gram matrix not symmetric");
            }
        }
        let inverse = rational_inverse(&gram);
        let gens: Vec<Vec<Rational64>> = (0..rank)
            .map(|j| (0..rank).map(|i| frac(inverse[i][j])).collect())
            .collect();
        let zero = vec![Rational64::zero(); rank];
        let mut seen: BTreeSet<Vec<Rational64>> = BTreeSet::new();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(c) = frontier.pop() {
            for g in &gens {
                let d: Vec<Rational64> = c.iter().zip(g).map(|(a, b)| frac(a + b)).collect();
                if seen.insert(d.clone()) {
                    frontier.push(d);
                }
            }
        }
        let mut cosets: Vec<Coset> = seen
            .into_iter()
            .map(|rep| {
                let norm_mod1 = frac(quad(&gram, &rep));
                Coset { rep, norm_mod1 }
            })
            .collect();
        cosets.sort_by(|a, b| {
            let az = a.rep.iter().all(|x| x.is_zero());
            let bz = b.rep.iter().all(|x| x.is_zero());
            bz.cmp(&az)
                .then(a.norm_mod1.cmp(&b.norm_mod1))
                .then(a.rep.cmp(&b.rep))
        });
        // {0} and the nonzero integer-norm cosets as a single class
        let mut cusp_orbits = vec![vec![0]];
        let others: Vec<usize> = (1..cosets.len())
            .filter(|&i| cosets[i].norm_mod1.is_zero())
            .collect();
        if !others.is_empty() {
            cusp_orbits.push(others);
        }
        let enumerator = Enumerator::new(&gram);
        LatticeData {
            name: name.to_string(),
            rank,
            gram,
            cosets,
            cusp_orbits,
            inverse,
            enumerator,
        }
    }

    pub fn determinant(&self) -> i64 {
        let m: Vec<Vec<num_bigint::BigInt>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect();
        let e = crate::linalg::bareiss(m, self.rank);
        e.rows[self.rank - 1][self.rank - 1].to_i64().unwrap().abs()
    }

    pub fn inverse_gram(&self) -> &[Vec<Rational64>] {
        &self.inverse
    }

    pub fn gram_times(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.gram[i][j] * v[j]).sum())
            .collect()
    }

    /// Index of the coset containing the dual vector `l`, if `l ∈ L^∨`.
    pub fn coset_of(&self, l: &[Rational64]) -> Option<usize> {
        if l.len() != self.rank {
            return None;
        }
        for i in 0..self.rank {
            let s: Rational64 = (0..self.rank).map(|j| l[j] * self.gram[i][j]).sum();
            if !s.is_integer() {
                return None;
            }
        }
        let red: Vec<Rational64> = l.iter().map(|x| frac(*x)).collect();
        self.cosets.iter().position(|c| c.rep == red)
    }

    pub fn zero_coset(&self) -> usize {
        0
    }
}

/// `Q(v) = vᵀ G v / 2`.
pub fn norm(l: &LatticeData, v: &[Rational64]) -> Result<Rational64> {
    if v.len() != l.rank {
        return Err(Error::DimensionMismatch {
            expected: l.rank,
            got: v.len(),
        });
    }
    Ok(quad(&l.gram, v))
}

pub fn norm_int(l: &LatticeData, v: &[i64]) -> Result<Rational64> {
    let v: Vec<Rational64> = v.iter().map(|&x| Rational64::from_integer(x)).collect();
    norm(l, &v)
}

/// `⟨l, v⟩ = lᵀ G v`, required to be an integer.
pub fn pairing(lat: &LatticeData, l: &[Rational64], v: &[i64]) -> Result<i64> {
    if l.len() != lat.rank || v.len() != lat.rank {
        return Err(Error::DimensionMismatch {
            expected: lat.rank,
            got: if l.len() != lat.rank { l.len() } else { v.len() },
        });
    }
    let gv = lat.gram_times(v);
    let s: Rational64 = l.iter().zip(&gv).map(|(a, &b)| a * b).sum();
    if !s.is_integer() {
        return Err(Error::NotInDual(s.to_string()));
    }
    Ok(s.to_integer())
}

/// All `l ∈ γ + L` with `Q(l) ≤ qmax`, sorted, each with its norm.
pub fn enumerate_coset(
    lat: &LatticeData,
    coset: usize,
    qmax: Rational64,
) -> Vec<(Vec<Rational64>, Rational64)> {
    if qmax.is_negative() {
        return Vec::new();
    }
    let rep = &lat.cosets[coset].rep;
    let d = rep.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<(Vec<Rational64>, Rational64)> = lat
        .enumerator
        .par_collect(rep, qmax, |y, s, sink: &mut Vec<(Vec<Rational64>, Rational64)>| {
            let l: Vec<Rational64> = y.iter().map(|&c| Rational64::new(c as i64, d)).collect();
            sink.push((l, s));
        });
    out.sort();
    out
}

/// Exact Fincke–Pohst search over `Y = D·(γ + x)`, `x ∈ Z^n`.
///
/// The Gram matrix is split as `Σ d_i (y_i + Σ_{j>i} u_ij y_j)²`, then
/// everything is multiplied through by `L·Den²` (denominators of the `d_i`
/// and `u_ij`) so each level compares integers only.
#[derive(Clone, Debug)]
struct Enumerator {
    n: usize,
    /// `d_i · L`
    w: Vec<i128>,
    /// `u_ij · Den` for `j > i`
    u: Vec<Vec<i128>>,
    l_den: i128,
    u_den: i128,
}

struct Frame {
    dg: Vec<i128>,
    dd: i128,
    budget: i128,
    scale: i128,
}

impl Enumerator {
    fn new(g: &Gram) -> Self {
        let n = g.len();
        let mut a: Vec<Vec<BigRational>> = g
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut d = Vec::with_capacity(n);
        let mut u = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let di = a[i][i].clone();
            assert!(di.is_positive(), "Gram matrix not positive definite");
            for j in i + 1..n {
                u[i][j] = &a[i][j] / &di;
            }
            for j in i + 1..n {
                for k in i + 1..n {
                    let t = &di * &u[i][j] * &u[i][k];
                    a[j][k] -= t;
                }
            }
            d.push(di);
        }
        let to_i128 = |x: &num_bigint::BigInt| x.to_i128().expect("Gram too large");
        let l_den = d.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let u_den = u
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let w = d
            .iter()
            .map(|x| to_i128(&(x * BigRational::from_integer(l_den.clone())).to_integer()))
            .collect();
        let u = u
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| to_i128(&(x * BigRational::from_integer(u_den.clone())).to_integer()))
                    .collect()
            })
            .collect();
        Enumerator {
            n,
            w,
            u,
            l_den: to_i128(&l_den),
            u_den: to_i128(&u_den),
        }
    }

    fn frame(&self, rep: &[Rational64], qmax: Rational64) -> Frame {
        let dd = rep.iter().fold(1i64, |acc, x| acc.lcm(x.denom())) as i128;
        let dg: Vec<i128> = rep
            .iter()
            .map(|x| (x * Rational64::from_integer(dd as i64)).to_integer() as i128)
            .collect();
        // scaled value of Q(l): S = 2·L·Den²·D²·Q(l)
        let scale = 2 * self.l_den * self.u_den * self.u_den * dd * dd;
        let budget = scale * (*qmax.numer() as i128) / (*qmax.denom() as i128);
        Frame {
            dg,
            dd,
            budget,
            scale,
        }
    }

    /// Range of `x_i` compatible with the remaining budget.
    fn range(&self, f: &Frame, i: usize, c: i128, rem: i128) -> (i128, i128) {
        let s = isqrt_i128(rem / self.w[i]);
        let k = self.u_den * f.dg[i] + c;
        let step = self.u_den * f.dd;
        (Integer::div_ceil(&(-s - k), &step), Integer::div_floor(&(s - k), &step))
    }

    fn centre(&self, i: usize, y: &[i128]) -> i128 {
        let mut c = 0;
        for j in i + 1..self.n {
            c += self.u[i][j] * y[j];
        }
        c
    }

    fn recurse<F: FnMut(&[i128], Rational64)>(
        &self,
        f: &Frame,
        i: usize,
        rem: i128,
        y: &mut [i128],
        visit: &mut F,
    ) {
        let c = self.centre(i, y);
        let (lo, hi) = self.range(f, i, c, rem);
        for x in lo..=hi {
            let yi = f.dd * x + f.dg[i];
            let t = self.u_den * yi + c;
            let nrem = rem - self.w[i] * t * t;
            if nrem < 0 {
                continue;
            }
            y[i] = yi;
            if i == 0 {
                visit(y, Rational64::new((f.budget - nrem) as i64, f.scale as i64));
            } else {
                self.recurse(f, i - 1, nrem, y, visit);
            }
        }
        y[i] = 0;
    }

    /// Parallel over the last coordinate; each worker fills its own sink
    /// and sinks are concatenated in order of that coordinate.
    fn par_collect<T, F>(&self, rep: &[Rational64], qmax: Rational64, visit: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&[i128], Rational64, &mut Vec<T>) + Sync,
    {
        self.par_fold(rep, qmax, Vec::new, |acc, y, s| visit(y, s, acc), |mut a, b| {
            a.extend(b);
            a
        })
    }

    fn par_fold<A, I, V, R>(&self, rep: &[Rational64], qmax: Rational64, init: I, visit: V, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, &[i128], Rational64) + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let f = self.frame(rep, qmax);
        let top = self.n - 1;
        let (lo, hi) = self.range(&f, top, 0, f.budget);
        let tops: Vec<i128> = (lo..=hi).collect();
        tops.into_par_iter()
            .map(|x| {
                let mut acc = init();
                let yi = f.dd * x + f.dg[top];
                let t = self.u_den * yi;
                let nrem = f.budget - self.w[top] * t * t;
                if nrem >= 0 {
                    let mut y = vec![0i128; self.n];
                    y[top] = yi;
                    if top == 0 {
                        visit(&mut acc, &y, Rational64::new((f.budget - nrem) as i64, f.scale as i64));
                    } else {
                        self.recurse(&f, top - 1, nrem, &mut y, &mut |y, s| visit(&mut acc, y, s));
                    }
                }
                acc
            })
            .collect::<Vec<A>>()
            .into_iter()
            .fold(init(), &reduce)
    }
}

/// Vector counts `N_γ(j, r) = #{l ∈ γ+L : Q(l) = Q_γ + j, ⟨l, v⟩ = r}` for
/// `Q(l) ≤ nmax`, where `Q_γ ∈ [0,1)` is the coset norm mod 1.
#[derive(Clone, Debug)]
pub struct ThetaProfile {
    pub lattice: String,
    pub v: Vec<i64>,
    pub index: i64,
    pub nmax: i64,
    pub rmax: i64,
    /// `counts[γ][j][r + rmax]`
    pub counts: Vec<Vec<Vec<u64>>>,
}

impl ThetaProfile {
    pub fn new(lat: &LatticeData, v: &[i64], nmax: i64) -> Result<Self> {
        if v.len() != lat.rank {
            return Err(Error::DimensionMismatch {
                expected: lat.rank,
                got: v.len(),
            });
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        let m = norm_int(lat, v)?.to_integer();
        let rmax = isqrt_i128(4 * nmax as i128 * m as i128) as i64;
        let width = (2 * rmax + 1) as usize;
        let gv: Vec<i128> = lat.gram_times(v).into_iter().map(|x| x as i128).collect();
        let mut counts = Vec::with_capacity(lat.cosets.len());
        for c in &lat.cosets {
            let mut per_j = vec![vec![0u64; width]; (nmax + 1).max(0) as usize];
            let dd = c.rep.iter().fold(1i64, |acc, x| acc.lcm(x.denom())) as i128;
            let qf = c.norm_mod1;
            let table = lat.enumerator.par_fold(
                &c.rep,
                Rational64::from_integer(nmax),
                || vec![vec![0u64; width]; (nmax + 1) as usize],
                |acc, y, s| {
                    let j = s - qf;
                    debug_assert!(j.is_integer());
                    let j = j.to_integer() as usize;
                    let r: i128 = y.iter().zip(&gv).map(|(a, b)| a * b).sum();
                    debug_assert!(r % dd == 0);
                    let r = (r / dd) as i64;
                    acc[j][(r + rmax) as usize] += 1;
                },
                |mut a, b| {
                    for (ra, rb) in a.iter_mut().zip(b) {
                        for (x, y) in ra.iter_mut().zip(rb) {
                            *x += y;
                        }
                    }
                    a
                },
            );
            for (dst, src) in per_j.iter_mut().zip(table) {
                *dst = src;
            }
            counts.push(per_j);
        }
        Ok(ThetaProfile {
            lattice: lat.name.clone(),
            v: v.to_vec(),
            index: m,
            nmax,
            rmax,
            counts,
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().flatten().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const D8_V: [i64; 8] = [4, 2, 3, 4, 1, 3, 2, 4];

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn gram_shapes() {
        assert_eq!(gram_matrix("A1").unwrap(), vec![vec![2]]);
        let d8 = gram_matrix("D8").unwrap();
        assert_eq!(d8[5], vec![0, 0, 0, 0, -1, 2, -1, -1]);
        assert_eq!(d8[6], vec![0, 0, 0, 0, 0, -1, 2, 0]);
        assert_eq!(d8[7], vec![0, 0, 0, 0, 0, -1, 0, 2]);
        assert_eq!(gram_matrix("3A1").unwrap()[2], vec![0, 0, 2]);
        assert!(gram_matrix("Z9").is_err());
        assert!(gram_matrix("E8").is_err());
    }

    #[test]
    fn determinants_match_coset_counts() {
        for name in registered_names() {
            let l = get(&name).unwrap();
            assert_eq!(l.cosets.len() as i64, l.determinant(), "{name}");
            for c in &l.cosets {
                assert!(l.coset_of(&c.rep).is_some());
            }
        }
    }

    #[test]
    fn coset_norms() {
        let norms = |n: &str| -> Vec<Rational64> {
            get(n).unwrap().cosets.iter().map(|c| c.norm_mod1).collect()
        };
        assert_eq!(norms("D8"), vec![r(0, 1), r(0, 1), r(0, 1), r(1, 2)]);
        assert_eq!(norms("E6"), vec![r(0, 1), r(2, 3), r(2, 3)]);
        assert_eq!(norms("E7"), vec![r(0, 1), r(3, 4)]);
        assert_eq!(get("D8").unwrap().cusp_orbits, vec![vec![0], vec![1, 2]]);
        assert_eq!(get("E6").unwrap().cusp_orbits, vec![vec![0]]);
        assert_eq!(get("E7").unwrap().cusp_orbits, vec![vec![0]]);
    }

    #[test]
    fn standard_pullback_vectors() {
        let d8 = get("D8").unwrap();
        assert_eq!(norm_int(&d8, &D8_V).unwrap(), r(24, 1));
        let e6 = get("E6").unwrap();
        assert_eq!(norm_int(&e6, &[3, 2, 0, 1, 1, 1]).unwrap(), r(12, 1));
        let e7 = get("E7").unwrap();
        assert_eq!(norm_int(&e7, &[3, 2, 0, 1, 1, 1, 1]).unwrap(), r(12, 1));
        let e1: Vec<Rational64> = (0..8).map(|i| r((i == 0) as i64, 1)).collect();
        assert_eq!(pairing(&d8, &e1, &D8_V).unwrap(), 6);
        assert!(norm_int(&d8, &[1, 2]).is_err());
        let half = vec![r(1, 2); 8];
        assert!(pairing(&d8, &half, &[1, 0, 0, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn d8_roots() {
        let d8 = get("D8").unwrap();
        assert_eq!(enumerate_coset(&d8, 0, r(0, 1)).len(), 1);
        let v = enumerate_coset(&d8, 0, r(1, 1));
        assert_eq!(v.len(), 113);
        assert_eq!(v.iter().filter(|(_, q)| *q == r(1, 1)).count(), 112);
        // vector coset: 16 vectors of norm 1/2; spinor cosets: 128 of norm 1
        assert_eq!(enumerate_coset(&d8, 3, r(1, 2)).len(), 16);
        assert_eq!(enumerate_coset(&d8, 1, r(1, 1)).len(), 128);
        assert_eq!(enumerate_coset(&d8, 2, r(1, 1)).len(), 128);
    }

    #[test]
    fn e_lattice_minimal_vectors() {
        let e6 = get("E6").unwrap();
        assert_eq!(enumerate_coset(&e6, 0, r(1, 1)).len(), 73);
        assert_eq!(enumerate_coset(&e6, 1, r(2, 3)).len(), 27);
        let e7 = get("E7").unwrap();
        assert_eq!(enumerate_coset(&e7, 0, r(1, 1)).len(), 127);
        assert_eq!(enumerate_coset(&e7, 1, r(3, 4)).len(), 56);
    }

    /// Box search over `|l_i| <= sqrt(2 qmax (G^{-1})_ii)`.
    fn naive_count(lat: &LatticeData, coset: usize, qmax: Rational64) -> usize {
        let rep = &lat.cosets[coset].rep;
        let n = lat.rank;
        let bounds: Vec<(i64, i64)> = (0..n)
            .map(|i| {
                let b2 = qmax * lat.inverse_gram()[i][i] * 2;
                let b = (b2.to_integer() as f64).sqrt().ceil() as i64 + 1;
                let g = rep[i];
                ((-b - g.ceil().to_integer()), b)
            })
            .collect();
        let mut x = vec![0i64; n];
        let mut count = 0;
        fn rec(
            i: usize,
            x: &mut Vec<i64>,
            bounds: &[(i64, i64)],
            lat: &LatticeData,
            rep: &[Rational64],
            qmax: Rational64,
            count: &mut usize,
        ) {
            if i == x.len() {
                let l: Vec<Rational64> = rep.iter().zip(x.iter()).map(|(g, &xi)| g + xi).collect();
                if norm(lat, &l).unwrap() <= qmax {
                    *count += 1;
                }
                return;
            }
            for v in bounds[i].0..=bounds[i].1 {
                x[i] = v;
                rec(i + 1, x, bounds, lat, rep, qmax, count);
            }
        }
        rec(0, &mut x, &bounds, lat, rep, qmax, &mut count);
        count
    }

    #[test]
    fn enumeration_matches_box_search() {
        for (name, q) in [("E6", r(2, 1)), ("E7", r(3, 2)), ("D4", r(2, 1)), ("A3", r(5, 2))] {
            let l = get(name).unwrap();
            for c in 0..l.cosets.len() {
                assert_eq!(
                    enumerate_coset(&l, c, q).len(),
                    naive_count(&l, c, q),
                    "{name} coset {c}"
                );
            }
        }
    }

    #[test]
    fn theta_profile_consistent() {
        let d8 = get("D8").unwrap();
        let p = ThetaProfile::new(&d8, &D8_V, 2).unwrap();
        let total: usize = (0..4).map(|c| enumerate_coset(&d8, c, r(2, 1)).len()).sum();
        assert_eq!(p.total() as usize, total);
        // symmetric in r
        for c in &p.counts {
            for row in c {
                let n = row.len();
                for k in 0..n {
                    assert_eq!(row[k], row[n - 1 - k]);
                }
            }
        }
        assert!(ThetaProfile::new(&d8, &[0; 8], 2).is_err());
    }
}
