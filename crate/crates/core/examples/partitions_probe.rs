// Doubling inequality, sign condition and first Dold failure for the
// partition numbers.

use seqlab::realizability::partition_probe;

pub fn run_example() -> seqlab::Result<()> {
    let probe = partition_probe(1000, 2000)?;
    println!("p(2n) >= n p(n) for n <= {}: first failure {:?}", probe.doubling_checked_to, probe.first_doubling_failure);
    println!("(μ∗p)(n) < 0 for n <= {}: {:?}", probe.convolution_checked_to, probe.sign_failures);
    println!(
        "first n with n ∤ (μ∗p)(n): {:?} ({} such n up to {})",
        probe.first_dold_failure, probe.dold_failure_count, probe.convolution_checked_to
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("partitions_probe");
}
