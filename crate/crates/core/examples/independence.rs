//! Independence certificate for the generator lifts of one case, with the
//! per-weight progress stream and the dimension bound beside each rank.

use orthoforms::certify::{certify_freeness, DEFAULT_SCHEDULE};
use orthoforms::weil::Case;

fn main() -> orthoforms::Result<()> {
    let mut args = std::env::args().skip(1);
    let case = args.next().and_then(|s| Case::parse(&s)).unwrap_or(Case::E7);
    let w_max = args.next().and_then(|s| s.parse().ok()).unwrap_or(16);
    let report = certify_freeness(case, w_max, &DEFAULT_SCHEDULE, &mut |r| {
        eprintln!("  weight {:>2}: rank {} of {}", r.w, r.rank, r.monomials.len());
    })?;
    for row in &report.rows {
        println!(
            "w={:<3} independent={:<3} bound={:<3} {}",
            row.w,
            row.independent,
            row.upper_bound,
            if row.certified { "dimension attained" } else { "" }
        );
    }
    println!("all weights match the bound: {}", report.all_match());
    Ok(())
}
