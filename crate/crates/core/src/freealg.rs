//! Generator tables of Weyl-invariant weak Jacobi rings, the derived
//! weights of free algebras of orthogonal modular forms, and the Hilbert
//! series bookkeeping that ties them together.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystemRecord {
    pub name: String,
    /// The lattice carrying the Jacobi forms.
    pub lattice: String,
    pub group: String,
    /// `(k_j, m_j)`: the generator has weight `-k_j` and index `m_j`.
    pub generators: Vec<(i64, i64)>,
    pub rank: usize,
}

/// The 25 supported systems, in the order of the weight tables.
pub const SYSTEMS: [&str; 25] = [
    "A1", "A2", "B2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4", "F4", "A5", "C5", "D5",
    "A6", "C6", "D6", "E6", "A7", "C7", "D7", "E7", "C8", "D8",
];

fn unsupported(name: &str, reason: &str) -> Error {
    Error::UnsupportedRootSystem {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

fn parse(name: &str) -> Result<(char, usize)> {
    let mut chars = name.chars();
    let kind = chars
        .next()
        .map(|c| c.to_ascii_uppercase())
        .ok_or_else(|| unsupported(name, "empty name"))?;
    let n: usize = chars
        .as_str()
        .parse()
        .map_err(|_| unsupported(name, "expected a type letter followed by a rank"))?;
    Ok((kind, n))
}

/// Weights and indices of the generators of `J^{w,W(R)}_{*,L(R),*}`.
pub fn generator_table(name: &str) -> Result<Vec<(i64, i64)>> {
    let (kind, n) = parse(name)?;
    let ni = n as i64;
    let g = match (kind, n) {
        ('E', 8) => {
            return Err(unsupported(
                name,
                "the ring of W(E8)-invariant weak Jacobi forms is not a polynomial algebra",
            ))
        }
        ('A', 1..=7) => {
            let mut v = vec![(0, 1)];
            v.extend((2..=ni + 1).map(|s| (s, 1)));
            v
        }
        ('B', 2..=4) => (0..=ni).map(|s| (2 * s, 1)).collect(),
        ('C', 3..=8) => {
            let mut v = vec![(0, 1), (2, 1), (4, 1)];
            v.extend((3..=ni).map(|s| (2 * s, 2)));
            v
        }
        ('D', 4..=8) => {
            let mut v = vec![(0, 1), (2, 1), (4, 1), (ni, 1)];
            v.extend((3..ni).map(|s| (2 * s, 2)));
            v.sort();
            v
        }
        ('E', 6) => vec![(0, 1), (2, 1), (5, 1), (6, 2), (8, 2), (9, 2), (12, 3)],
        ('E', 7) => vec![(0, 1), (2, 1), (6, 2), (8, 2), (10, 2), (12, 3), (14, 3), (18, 4)],
        ('G', 2) => vec![(0, 1), (2, 1), (6, 2)],
        ('F', 4) => vec![(0, 1), (2, 1), (6, 2), (8, 2), (12, 3)],
        _ => return Err(unsupported(name, "not among the 25 systems handled here")),
    };
    Ok(g)
}

fn lattice_of(kind: char, n: usize) -> String {
    match kind {
        'A' | 'E' => format!("{kind}{n}"),
        'B' => format!("{n}A1"),
        'C' if n == 3 => "A3".into(),
        'C' | 'D' => format!("D{n}"),
        'G' => "A2".into(),
        'F' => "D4".into(),
        _ => unreachable!(),
    }
}

/// Group label, as printed in the weight tables.
fn group_of(name: &str, kind: char, n: usize, lattice: &str) -> String {
    let base = format!("II_{{2,2}} ⊕ {lattice}(-1)");
    match kind {
        'A' if n == 1 => format!("O+({base})"),
        'A' | 'D' | 'E' if name != "E7" => format!("Õ+({base})"),
        'C' if n == 4 => format!("O1+({base})"),
        _ => format!("O+({base})"),
    }
}

pub fn record(name: &str) -> Result<RootSystemRecord> {
    let generators = generator_table(name)?;
    let (kind, n) = parse(name)?;
    let lattice = lattice_of(kind, n);
    let group = group_of(name, kind, n, &lattice);
    Ok(RootSystemRecord {
        name: format!("{kind}{n}"),
        lattice,
        group,
        rank: generators.len() - 1,
        generators,
    })
}

/// `{4, 6} ∪ {12 m_j - k_j}`, sorted with multiplicity.
pub fn orthogonal_weights(name: &str) -> Result<Vec<i64>> {
    let mut w = vec![4, 6];
    w.extend(generator_table(name)?.iter().map(|&(k, m)| 12 * m - k));
    w.sort();
    Ok(w)
}

/// Coefficients of `Π (1 - t^{w_i})^{-1}` through `t^order`.
pub fn hilbert_series(weights: &[i64], order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::from(1);
    for &w in weights {
        assert!(w > 0, "weights must be positive");
        let w = w as usize;
        for i in w..=order {
            let t = c[i - w].clone();
            c[i] += t;
        }
    }
    c
}

/// `dim M_k(SL2(Z))` for any integer `k`.
pub fn dim_sl2(k: i64) -> i64 {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    if k % 12 == 2 {
        k / 12
    } else {
        k / 12 + 1
    }
}

/// Monomial counts `N[t][s]`: products of generators with total index `t`
/// and total `Σ k_j = s`.
struct MonomialCounts {
    smax: usize,
    n: Vec<Vec<i64>>,
}

impl MonomialCounts {
    fn new(gens: &[(i64, i64)], tmax: usize) -> Self {
        let kmax = gens.iter().map(|g| g.0).max().unwrap_or(0) as usize;
        let smax = tmax * kmax;
        let mut n = vec![vec![0i64; smax + 1]; tmax + 1];
        n[0][0] = 1;
        for &(k, m) in gens {
            let (k, m) = (k as usize, m as usize);
            for t in m..=tmax {
                for s in k..=smax {
                    let add = n[t - m][s - k];
                    n[t][s] += add;
                }
            }
        }
        MonomialCounts { smax, n }
    }

    fn weak_dim(&self, k: i64, t: usize) -> i64 {
        (0..=self.smax)
            .map(|s| self.n[t][s] * dim_sl2(k + s as i64))
            .sum()
    }
}

/// `dim J^w_{k, L(R), t}`: coefficient of `x^t y^k` in
/// `1/((1-y^4)(1-y^6)) Π_j 1/(1 - y^{-k_j} x^{m_j})`.
pub fn weak_jacobi_dim(name: &str, k: i64, t: usize) -> Result<i64> {
    let gens = generator_table(name)?;
    Ok(MonomialCounts::new(&gens, t).weak_dim(k, t))
}

/// `max_j k_j / m_j`.
pub fn delta(name: &str) -> Result<Rational64> {
    Ok(delta_of(&generator_table(name)?))
}

fn delta_of(gens: &[(i64, i64)]) -> Rational64 {
    gens.iter()
        .map(|&(k, m)| Rational64::new(k, m))
        .max()
        .unwrap_or_else(Rational64::zero)
}

/// Largest `r` that can contribute to the bound at weight `k`.
fn r_limit(gens: &[(i64, i64)], k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    let d = delta_of(gens);
    (Rational64::from_integer(k) / (Rational64::from_integer(12) - d))
        .floor()
        .to_integer() as usize
}

/// `Σ_{r >= 0} dim J^w_{k-12r, L, r}`, summed over `r <= k/(12-δ)`.
pub fn dim_upper_bound(name: &str, k: i64) -> Result<i64> {
    let gens = generator_table(name)?;
    Ok(bound_from(&gens, k))
}

fn bound_from(gens: &[(i64, i64)], k: i64) -> i64 {
    let rl = r_limit(gens, k);
    let counts = MonomialCounts::new(gens, rl);
    (0..=rl)
        .map(|r| counts.weak_dim(k - 12 * r as i64, r))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub system: String,
    pub order: usize,
    pub equal: bool,
    /// First exponent where the two sides differ.
    pub first_mismatch: Option<usize>,
    pub free_side: Vec<String>,
    pub jacobi_side: Vec<String>,
}

/// Compares `Π (1 - t^{w_i})^{-1}` with `Σ_k (Σ_r dim J^w_{k-12r,L,r}) t^k`.
pub fn hilbert_identity_check(name: &str, order: usize) -> Result<IdentityReport> {
    let gens = generator_table(name)?;
    let w = orthogonal_weights(name)?;
    Ok(identity_with(name, &w, &gens, order))
}

/// Same comparison with explicitly given free-algebra weights.
pub fn identity_with(name: &str, weights: &[i64], gens: &[(i64, i64)], order: usize) -> IdentityReport {
    let lhs = hilbert_series(weights, order);
    let rl = r_limit(gens, order as i64);
    let counts = MonomialCounts::new(gens, rl);
    let rhs: Vec<i64> = (0..=order as i64)
        .map(|k| {
            (0..=rl)
                .map(|r| counts.weak_dim(k - 12 * r as i64, r))
                .sum()
        })
        .collect();
    let first = lhs
        .iter()
        .zip(&rhs)
        .position(|(a, b)| *a != BigInt::from(*b));
    IdentityReport {
        system: name.to_string(),
        order,
        equal: first.is_none(),
        first_mismatch: first,
        free_side: lhs.iter().map(|x| x.to_string()).collect(),
        jacobi_side: rhs.iter().map(|x| x.to_string()).collect(),
    }
}

/// Weight tables as printed for the free algebras, kept apart from the
/// derivation in [`orthogonal_weights`].
pub fn golden_weights() -> Vec<(&'static str, &'static str, Vec<i64>)> {
    vec![
        ("A1", "O+(II_{2,2} ⊕ A1(-1))", vec![4, 6, 10, 12]),
        ("A2", "Õ+(II_{2,2} ⊕ A2(-1))", vec![4, 6, 9, 10, 12]),
        ("B2", "O+(II_{2,2} ⊕ 2A1(-1))", vec![4, 6, 8, 10, 12]),
        ("G2", "O+(II_{2,2} ⊕ A2(-1))", vec![4, 6, 10, 12, 18]),
        ("A3", "Õ+(II_{2,2} ⊕ A3(-1))", vec![4, 6, 8, 9, 10, 12]),
        ("B3", "O+(II_{2,2} ⊕ 3A1(-1))", vec![4, 6, 6, 8, 10, 12]),
        ("C3", "O+(II_{2,2} ⊕ A3(-1))", vec![4, 6, 8, 10, 12, 18]),
        ("A4", "Õ+(II_{2,2} ⊕ A4(-1))", vec![4, 6, 7, 8, 9, 10, 12]),
        ("B4", "O+(II_{2,2} ⊕ 4A1(-1))", vec![4, 4, 6, 6, 8, 10, 12]),
        ("C4", "O1+(II_{2,2} ⊕ D4(-1))", vec![4, 6, 8, 10, 12, 16, 18]),
        ("D4", "Õ+(II_{2,2} ⊕ D4(-1))", vec![4, 6, 8, 8, 10, 12, 18]),
        ("F4", "O+(II_{2,2} ⊕ D4(-1))", vec![4, 6, 10, 12, 16, 18, 24]),
        ("A5", "Õ+(II_{2,2} ⊕ A5(-1))", vec![4, 6, 6, 7, 8, 9, 10, 12]),
        ("C5", "O+(II_{2,2} ⊕ D5(-1))", vec![4, 6, 8, 10, 12, 14, 16, 18]),
        ("D5", "Õ+(II_{2,2} ⊕ D5(-1))", vec![4, 6, 7, 8, 10, 12, 16, 18]),
        ("A6", "Õ+(II_{2,2} ⊕ A6(-1))", vec![4, 5, 6, 6, 7, 8, 9, 10, 12]),
        ("C6", "O+(II_{2,2} ⊕ D6(-1))", vec![4, 6, 8, 10, 12, 12, 14, 16, 18]),
        ("D6", "Õ+(II_{2,2} ⊕ D6(-1))", vec![4, 6, 6, 8, 10, 12, 14, 16, 18]),
        ("E6", "Õ+(II_{2,2} ⊕ E6(-1))", vec![4, 6, 7, 10, 12, 15, 16, 18, 24]),
        ("A7", "Õ+(II_{2,2} ⊕ A7(-1))", vec![4, 4, 5, 6, 6, 7, 8, 9, 10, 12]),
        ("C7", "O+(II_{2,2} ⊕ D7(-1))", vec![4, 6, 8, 10, 10, 12, 12, 14, 16, 18]),
        ("D7", "Õ+(II_{2,2} ⊕ D7(-1))", vec![4, 5, 6, 8, 10, 12, 12, 14, 16, 18]),
        ("E7", "O+(II_{2,2} ⊕ E7(-1))", vec![4, 6, 10, 12, 14, 16, 18, 22, 24, 30]),
        ("C8", "O+(II_{2,2} ⊕ D8(-1))", vec![4, 6, 8, 8, 10, 10, 12, 12, 14, 16, 18]),
        ("D8", "Õ+(II_{2,2} ⊕ D8(-1))", vec![4, 4, 6, 8, 10, 10, 12, 12, 14, 16, 18]),
    ]
}

/// Sum of the coefficients of the highest coroot, per system.
pub fn coroot_coefficient_sum(name: &str) -> Result<i64> {
    let (kind, n) = parse(name)?;
    generator_table(name)?;
    let n = n as i64;
    Ok(match kind {
        'A' | 'B' => n,
        'C' => 2 * n - 2,
        'D' => 2 * n - 3,
        'G' => 3,
        'F' => 8,
        'E' if n == 6 => 11,
        _ => 17,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        assert_eq!(
            generator_table("E7").unwrap(),
            vec![(0, 1), (2, 1), (6, 2), (8, 2), (10, 2), (12, 3), (14, 3), (18, 4)]
        );
        assert_eq!(generator_table("B3").unwrap(), vec![(0, 1), (2, 1), (4, 1), (6, 1)]);
        assert_eq!(generator_table("A1").unwrap(), vec![(0, 1), (2, 1)]);
        assert!(matches!(
            generator_table("E8"),
            Err(Error::UnsupportedRootSystem { .. })
        ));
        assert!(generator_table("B5").is_err());
    }

    #[test]
    fn golden_agreement() {
        for (name, group, w) in golden_weights() {
            assert_eq!(orthogonal_weights(name).unwrap(), w, "{name}");
            let rec = record(name).unwrap();
            assert_eq!(rec.group, group, "{name}");
            assert_eq!(rec.generators.len(), rec.rank + 1);
            let msum: i64 = rec.generators.iter().map(|g| g.1).sum();
            assert_eq!(msum, coroot_coefficient_sum(name).unwrap() + 1, "{name}");
        }
        assert_eq!(golden_weights().len(), SYSTEMS.len());
    }

    #[test]
    fn hilbert_examples() {
        let h = hilbert_series(&[4, 6, 10, 12], 12);
        assert_eq!(h[0], BigInt::from(1));
        assert_eq!(h[10], BigInt::from(2));
        assert_eq!(h[12], BigInt::from(3));
    }

    #[test]
    fn weak_dims_and_bounds() {
        assert_eq!(weak_jacobi_dim("A1", 0, 1).unwrap(), 1);
        assert_eq!(weak_jacobi_dim("A1", -2, 1).unwrap(), 1);
        for k in 0..30 {
            assert_eq!(weak_jacobi_dim("E7", k, 0).unwrap(), dim_sl2(k));
        }
        assert_eq!(delta("E7").unwrap(), Rational64::from_integer(5));
        for s in SYSTEMS {
            assert!(delta(s).unwrap() < Rational64::from_integer(12));
        }
        assert_eq!(dim_upper_bound("A1", 4).unwrap(), 1);
    }

    #[test]
    fn identity_holds_and_detects_corruption() {
        for s in ["A1", "E7", "D8", "A7"] {
            let r = hilbert_identity_check(s, 60).unwrap();
            assert!(r.equal, "{s}: {:?}", r.first_mismatch);
        }
        let gens = generator_table("A1").unwrap();
        let r = identity_with("A1", &[4, 6, 10, 14], &gens, 60);
        assert_eq!(r.first_mismatch, Some(12));
    }
}
