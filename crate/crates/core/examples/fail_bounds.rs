// Lower bounds for the smallest multiplier that makes a sequence realizable.

use seqlab::realizability::fail_estimate;
use seqlab::Sequence;

pub fn run_example() -> seqlab::Result<()> {
    for (name, n) in [
        ("fib-squares", 40),
        ("lucas", 100),
        ("stirling2:k=3", 40),
        ("stirling2:k=4", 40),
        ("stirling2:k=6", 40),
        ("catalan", 40),
        ("stirling1:k=2", 40),
    ] {
        let f = fail_estimate(&*Sequence::parse(name)?, n)?;
        print!("{:<16} N={n:<4} bound {:<12} exact {}", f.descriptor, f.lower_bound.to_string(), f.certified_exact);
        if f.diverging {
            print!("  diverging via primes {:?}", f.witness_primes);
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("fail_bounds");
}
