//! D8 Jacobi Eisenstein series: components, the F01 = F10 symmetry and the
//! pullback to a scalar-index Jacobi form of index 24.

use orthoforms::arith::format_rational;
use orthoforms::weil::{jacobi_eisenstein, Case, PullbackContext};

fn main() -> orthoforms::Result<()> {
    let k: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let orbit = if k >= 8 { 1 } else { 0 };
    let f = jacobi_eisenstein(Case::D8, k, orbit, 4)?;
    println!("D8 weight {k}, orbit {orbit}:");
    for (name, s) in ["F00", "F01", "F10", "F11"].iter().zip(&f.components) {
        println!("  {name} = {}", s.render_plain());
    }
    assert_eq!(f.components[1], f.components[2]);

    let v = Case::D8.default_vector();
    let ctx = PullbackContext::new(Case::D8.lattice(), &v, 3)?;
    let phi = ctx.pullback(&f)?;
    println!("pullback along {v:?}: weight {}, index {}", phi.weight, phi.index);
    assert_eq!(phi.elliptic_violation(), None);
    for n in 0..=1 {
        let row: Vec<String> = (0..=phi.radius(n).min(8))
            .map(|r| format_rational(&phi.coeff(n, r)))
            .collect();
        println!("  n = {n}: c(n, 0..) = {}", row.join(" "));
    }
    Ok(())
}
