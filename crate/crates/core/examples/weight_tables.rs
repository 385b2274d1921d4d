//! Generator weights, Hilbert identities and δ for all supported root
//! systems.

use orthoforms::freealg::{self, SYSTEMS};

fn main() -> orthoforms::Result<()> {
    println!("{:<4} {:<28} {:>5}  weights", "R", "group", "delta");
    for name in SYSTEMS {
        let rec = freealg::record(name)?;
        let w = freealg::orthogonal_weights(name)?;
        let d = freealg::delta(name)?;
        let id = freealg::hilbert_identity_check(name, 60)?;
        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        println!(
            "{:<4} {:<28} {:>5}  {}{}",
            name,
            rec.group,
            d.to_string(),
            w.join(" "),
            if id.equal { "" } else { "  (Hilbert identity fails)" }
        );
    }
    let h = freealg::hilbert_series(&freealg::orthogonal_weights("E7")?, 30);
    let h: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    println!("E7 Hilbert series to t^30: {}", h.join(" "));
    Ok(())
}
