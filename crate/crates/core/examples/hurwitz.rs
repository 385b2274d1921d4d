//! Cohen's numbers H(r, N) against brute-force class numbers, and the
//! Cohen Eisenstein series of weight 5/2.

use orthoforms::arith::format_rational;
use orthoforms::classical::{cohen_eisenstein, cohen_h, hurwitz_oracle};

fn main() {
    let max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let agree = (1..=max).filter(|&n| cohen_h(1, n) == hurwitz_oracle(n)).count();
    println!("H(1,N) vs class numbers: {agree}/{max} agree");

    for n in [3, 4, 7, 8, 11, 12, 15, 16, 19, 20, 23] {
        println!("  H({n:>2}) = {}", format_rational(&hurwitz_oracle(n)));
    }
    let h2 = cohen_eisenstein(2, 13);
    println!("H_(5/2) = {}", h2.expansion.render_plain());
}
