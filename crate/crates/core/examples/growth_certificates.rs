// Sign-condition certificates from growth: a(n+1) >= C a(n) with C >= 1.221,
// and Puri's doubling test.

use num_bigint::BigInt;
use num_rational::BigRational;
use seqlab::realizability::{growth_certificate, puri_certificate, quartic_root_decimal};
use seqlab::Sequence;

pub fn run_example() -> seqlab::Result<()> {
    println!("positive root of x^4 = x + 1: {}", quartic_root_decimal(12));

    let two = BigRational::from_integer(BigInt::from(2));
    for name in ["apery1", "catalan", "const1"] {
        let c = growth_certificate(&*Sequence::parse(name)?, 64, &two)?;
        println!("{name:<10} growth C=2: {c:?}");
    }
    for (name, n) in [("partitions", 1044), ("trinomial", 200), ("fibonacci", 20)] {
        let c = puri_certificate(&*Sequence::parse(name)?, n)?;
        println!("{name:<10} doubling N={n}: {c:?}");
    }

    let too_small = BigRational::new(BigInt::from(6), BigInt::from(5));
    let refused = growth_certificate(&*Sequence::parse("apery1")?, 10, &too_small);
    println!("C = 6/5: {}", refused.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("growth_certificates");
}
