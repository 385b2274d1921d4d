//! The weight-14 relation among the D8 lifts, followed by two negative
//! controls: a rescaled input and a corrupted coefficient.

use num_rational::BigRational;
use orthoforms::certify::{corrupt, verify_e14_from, E14Inputs};

fn main() -> orthoforms::Result<()> {
    let mut args = std::env::args().skip(1);
    let nq = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let nxi = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let inputs = E14Inputs::build(nq, nxi)?;

    let rep = verify_e14_from(&inputs)?;
    println!("({nq},{nxi}): {:?} {:?}", rep.status, rep.coefficients);

    let two = BigRational::from_integer(2.into());
    let mut scaled = inputs.clone();
    scaled.e14 = [inputs.e14[0].scale(&two), inputs.e14[1].scale(&two)];
    let rep = verify_e14_from(&scaled)?;
    println!("rescaled: {:?}, {}", rep.status, rep.diagnostic.unwrap_or_default());

    let mut bad = inputs;
    bad.e14[0] = corrupt(&bad.e14[0], (1, 1, 1), &BigRational::from_integer(1.into()))?;
    let rep = verify_e14_from(&bad)?;
    println!("corrupted: {:?}, {}", rep.status, rep.diagnostic.unwrap_or_default());
    Ok(())
}
