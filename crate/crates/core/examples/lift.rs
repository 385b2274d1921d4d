//! Additive lift of an E7 Jacobi Eisenstein series to paramodular level 12,
//! checked against the lattice-side lift restricted along v.

use orthoforms::arith::format_rational;
use orthoforms::lifts::{gritsenko_lift, lattice_lift_restricted};
use orthoforms::weil::{jacobi_eisenstein, Case, PullbackContext};

fn main() -> orthoforms::Result<()> {
    let (nq, nxi) = (2, 2);
    let case = Case::E7;
    let v = case.default_vector();
    let f = jacobi_eisenstein(case, 4, 0, (nq * nxi + 1) as usize)?;
    let ctx = PullbackContext::new(case.lattice(), &v, nq * nxi)?;
    let phi = ctx.pullback(&f)?;
    let lift = gritsenko_lift(&phi, nq, nxi)?;
    println!("lift: weight {}, level {}", lift.weight, lift.level);

    let mut entries = lift.entries();
    entries.sort_by_key(|e| e.0);
    for ((n, r, m), c) in entries.iter().filter(|((n, r, m), _)| *r >= 0 && n <= m) {
        println!("  A({n},{r},{m}) = {}", format_rational(c));
    }
    assert_eq!(lift.symmetry_violation(), None);

    let direct = lattice_lift_restricted(&f, &v, nq, nxi)?;
    assert_eq!(direct, lift);
    println!("lattice-side lift agrees on {} coefficients", lift.index_set().len());
    Ok(())
}
