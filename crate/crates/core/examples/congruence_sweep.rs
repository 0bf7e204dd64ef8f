// Prime-power congruences of the binomial-sum families on small grids.

use seqlab::congruence::{require_all_hold, sweep_defaults, sweep_d_mod_p3m, Cell, Claim, Grid};

pub fn run_example() -> seqlab::Result<()> {
    for claim in Claim::ALL {
        let results = sweep_defaults(claim)?;
        let failures = results.iter().filter(|r| !r.holds()).count();
        println!("{:<18} {:>6} cells  {} failures", claim.id(), results.len(), failures);
        require_all_hold(&results)?;
    }

    let domb = sweep_d_mod_p3m(2, 1, 1, &Grid { cells: vec![Cell { n: 1, p: 5, m: 1 }] })?;
    let w = &domb[0].witness;
    println!("Domb(5) - Domb(1) = {} ≡ {} mod {}", &w.lhs - &w.rhs, w.residue, w.modulus);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("congruence_sweep");
}
