// Sign and Dold conditions on prefixes, and the two forms of the Dold
// condition side by side.

use seqlab::realizability::{check_realizable, lemdold_audit, profile};
use seqlab::Sequence;

pub fn run_example() -> seqlab::Result<()> {
    for name in ["apery1", "lucas", "sigma:k=1", "catalan", "fibonacci", "two-term:a=1,b=0"] {
        let seq = Sequence::parse(name)?;
        let r = check_realizable(&seq, 64)?;
        let first = r.dold_failures.first().map(|f| f.n);
        println!(
            "{:<22} {:?}  sign failures: {}  first Dold failure: {:?}",
            r.descriptor,
            r.verdict,
            r.sign_failures.len(),
            first
        );
    }

    let mersenne = Sequence::parse("mersenne")?;
    let g: Vec<String> = profile(&mersenne, 8)?.g.iter().map(ToString::to_string).collect();
    println!("μ∗(2^n - 1) on 1..8: {}", g.join(" "));

    let audit = lemdold_audit(&*Sequence::parse("bell")?, 60)?;
    println!(
        "bell: divisor form fails first at {:?}, prime-power form at {:?}",
        audit.first_divisor_failure, audit.first_prime_power_failure
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("realizability_report");
}
