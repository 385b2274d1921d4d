//! Exact q-expansions: Eisenstein series, Δ and the weight-12 identity
//! `E4³ - E6² = 1728 Δ`.

use num_rational::BigRational;
use orthoforms::classical::{delta, eisenstein_sl2};

fn main() -> orthoforms::Result<()> {
    let prec = 8;
    let e4 = eisenstein_sl2(4, prec)?.expansion;
    let e6 = eisenstein_sl2(6, prec)?.expansion;
    println!("E4 = {}", e4.render_plain());
    println!("E6 = {}", e6.render_plain());

    let lhs = e4.pow(3).sub(&e6.pow(2));
    let rhs = delta(prec).expansion.scale(&BigRational::from_integer(1728.into()));
    println!("E4^3 - E6^2 = {}", lhs.render_plain());
    assert_eq!(lhs, rhs);

    // q^(1/2) arithmetic: E4(τ/2) and its translate τ -> τ + 1
    let half = e4.rescale(num_rational::Rational64::new(1, 2))?;
    println!("E4(τ/2)     = {}", half.render_plain());
    println!("E4((τ+1)/2) = {}", half.translate()?.render_plain());
    Ok(())
}
