// Finite maps built from orbit counts, checked by iterating the function
// table, and the product construction for P(n) = 2^n Z(n).

use seqlab::realize::{build_map, orbit_profile, periodic_points, product_map, realize, CycleType};
use seqlab::Sequence;

pub fn run_example() -> seqlab::Result<()> {
    for name in ["lucas", "mersenne", "sigma:k=1", "a-family:r=1,s=0"] {
        let r = realize(&*Sequence::parse(name)?, 16)?;
        println!("{:<22} {:>7} points  verified by iteration: {}", r.descriptor, r.size, r.verified);
    }

    let lucas = realize(&*Sequence::parse("lucas")?, 4)?;
    print!("{}", lucas.map.to_text());

    // small N: materialize T x F and iterate it
    let two = orbit_profile(&*Sequence::parse("power:d=2")?, 5)?;
    let zagier = orbit_profile(&*Sequence::parse("zagier")?, 5)?;
    let prod = product_map(&build_map(&two)?, &build_map(&zagier)?)?;
    let clf = Sequence::parse("clf")?;
    for n in 1..=5 {
        println!("n={n}: fixed points of (T×F)^n = {}, P(n) = {}", periodic_points(&prod, n), clf.eval(n)?);
    }

    // larger N: multiply cycle types instead
    let ct = CycleType::from_profile(&orbit_profile(&*Sequence::parse("power:d=2")?, 12)?)
        .product(&CycleType::from_profile(&orbit_profile(&*Sequence::parse("zagier")?, 12)?));
    println!("n=12 by cycle types: {} (P(12) = {})", ct.periodic_points(12), clf.eval(12)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("realize_map");
}
