//! Discriminant groups and theta data of the three lattices used for lifts.

use orthoforms::lattice::{self, ThetaProfile};
use orthoforms::weil::Case;

fn main() -> orthoforms::Result<()> {
    for case in [Case::D8, Case::E6, Case::E7] {
        let lat = case.lattice();
        println!("{} (rank {}, det {})", lat.name, lat.rank, lat.determinant());
        for (i, c) in lat.cosets.iter().enumerate() {
            let rep: Vec<String> = c.rep.iter().map(|x| x.to_string()).collect();
            println!("  coset {i}: [{}]  Q = {} mod 1", rep.join(", "), c.norm_mod1);
        }
        let v = case.default_vector();
        let q = lattice::norm_int(&lat, &v)?;
        let theta = ThetaProfile::new(&lat, &v, 2)?;
        println!("  v = {v:?}, Q(v) = {q}, {} vectors up to n = 2", theta.total());
    }
    println!("registered: {}", lattice::registered_names().join(" "));
    Ok(())
}
