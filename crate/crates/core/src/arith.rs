//! Elementary number theory over exact integers and rationals.
//!
//! Divisor sums, the Möbius function, Kronecker symbols and (generalized)
//! Bernoulli numbers. Everything here is exact; there is no floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

/// Divisor power sum restricted to odd divisors.
pub fn sigma_odd(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Kronecker symbol `(a / n)` for `n >= 1`.
pub fn kronecker(a: i64, n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1i64;
    while n.is_multiple_of(2) {
        n /= 2;
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    result * jacobi(a, n)
}

/// Jacobi symbol `(a / n)` for odd `n >= 1`.
pub fn jacobi(a: i64, n: u64) -> i64 {
    assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Whether `d` is a fundamental discriminant (1 counts as the trivial one).
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Writes a discriminant `disc` (nonzero, `≡ 0,1 mod 4`) as `D·f²` with `D`
/// fundamental. Returns `(D, f)`.
pub fn fundamental_split(disc: i64) -> (i64, u64) {
    assert!(disc != 0 && matches!(disc.rem_euclid(4), 0 | 1));
    let a = disc.unsigned_abs();
    let mut best = (disc, 1u64);
    let mut f = 1u64;
    while f * f <= a {
        if a.is_multiple_of(f * f) {
            let d = disc / (f * f) as i64;
            if is_fundamental(d) {
                best = (d, f);
            }
        }
        f += 1;
    }
    best
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m as u64 + 1, k as u64)) * bk;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_numbers(n).pop().unwrap()
}

/// Generalized Bernoulli number `B_{n,χ_D}` for the Kronecker character of
/// the fundamental discriminant `D`.
///
/// Read off as `n!` times the `t^n` coefficient of
/// `sum_{a=1}^{f} χ(a) t e^{at} / (e^{ft} - 1)` with `f = |D|`, expanding
/// `t/(e^{ft}-1) = (1/f) sum_k B_k (ft)^k / k!` and `e^{at}` termwise.
pub fn generalized_bernoulli(n: usize, disc: i64) -> BigRational {
    let f = disc.unsigned_abs();
    let bs = bernoulli_numbers(n);
    let mut total = BigRational::zero();
    for a in 1..=f {
        let chi = kronecker(disc, a);
        if chi == 0 {
            continue;
        }
        // n! [t^n] (1/f) sum_k B_k f^k t^k / k! * sum_j a^j t^j / j!
        //   = sum_k C(n,k) B_k f^{k-1} a^{n-k}
        let mut term = BigRational::zero();
        for (k, bk) in bs.iter().enumerate() {
            let c = BigRational::from_integer(
                binomial(n as u64, k as u64) * BigInt::from(a).pow((n - k) as u32),
            );
            let fpow = if k == 0 {
                BigRational::new(BigInt::one(), BigInt::from(f))
            } else {
                BigRational::from_integer(BigInt::from(f).pow(k as u32 - 1))
            };
            term += c * bk * fpow;
        }
        total += term * int(chi);
    }
    total
}

/// `ζ(1 - 2r) = -B_{2r} / (2r)` for `r >= 1`.
pub fn zeta_negative_odd(r: usize) -> BigRational {
    assert!(r >= 1);
    -bernoulli(2 * r) / int(2 * r as i64)
}

pub fn is_square(n: u64) -> bool {
    let s = isqrt(n);
    s * s == n
}

pub fn isqrt(n: u64) -> u64 {
    num_integer::Roots::sqrt(&n)
}

pub fn isqrt_i128(n: i128) -> i128 {
    assert!(n >= 0);
    num_integer::Roots::sqrt(&n)
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn common_denominator<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigRational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_negative(x: &BigRational) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_sums() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(sigma(1, 6), BigInt::from(12));
        assert_eq!(sigma_odd(1, 12), BigInt::from(4));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(7), BigRational::zero());
        assert_eq!(zeta_negative_odd(2), rat(1, 120));
        assert_eq!(zeta_negative_odd(1), rat(-1, 12));
    }

    #[test]
    fn kronecker_symbols() {
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, 3), 0);
        assert_eq!(kronecker(-3, 7), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(-23, 2), 1);
    }

    #[test]
    fn generalized_bernoulli_small() {
        // B_{1,χ_{-3}} = -1/3 and B_{1,χ_{-4}} = -1/2 (class number formula)
        assert_eq!(generalized_bernoulli(1, -3), rat(-1, 3));
        assert_eq!(generalized_bernoulli(1, -4), rat(-1, 2));
        // trivial character reproduces B_n with B_1 = +1/2
        assert_eq!(generalized_bernoulli(1, 1), rat(1, 2));
        assert_eq!(generalized_bernoulli(4, 1), rat(-1, 30));
        // B_{2,χ_5} = 4/5
        assert_eq!(generalized_bernoulli(2, 5), rat(4, 5));
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_split(-12), (-3, 2));
        assert_eq!(fundamental_split(-16), (-4, 2));
        assert_eq!(fundamental_split(-23), (-23, 1));
        assert_eq!(fundamental_split(36), (1, 6));
        assert_eq!(fundamental_split(8), (8, 1));
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }
}
