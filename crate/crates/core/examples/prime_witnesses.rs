// Residues of (μ∗a) at prime-indexed terms that rule out almost
// realizability, cross-checked by a term-by-term modular computation.

use seqlab::witness::{claim_scan, fibonacci_first_dold_failure, little_schroder_doubling_audit, witness_scan, Expected, WitnessClaim};
use seqlab::SequenceSpec;

pub fn run_example() -> seqlab::Result<()> {
    for claim in WitnessClaim::ALL {
        let ws = claim_scan(claim, 100)?;
        let residues: Vec<u64> = ws.iter().take(8).map(|w| w.residue).collect();
        let ok = ws.iter().all(|w| w.matches_expected() && w.audit_agrees());
        println!("{:<16} {:>3} primes  residues {:?}...  consistent: {ok}", claim.id(), ws.len(), residues);
    }
    println!("little Schröder doubling at p = 11: {}", little_schroder_doubling_audit(11)?);
    println!("Fibonacci first Dold failure: {:?}", fibonacci_first_dold_failure(50)?);

    let lucas = witness_scan(&SequenceSpec::parse("lucas")?, Expected::NonZero, 50)?;
    println!("Lucas witnesses below 50: {}", lucas.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("prime_witnesses");
}
