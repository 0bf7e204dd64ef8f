// p-adic valuations of binomial coefficients and the congruences obtained
// by scaling both arguments by a prime.

use seqlab::arith::{helou_terjanian_check, kummer_valuation, legendre_binomial_valuation, scaled_binomial_check};

pub fn run_example() -> seqlab::Result<()> {
    for (n, m, p) in [(100, 37, 2), (2000, 999, 3), (625, 313, 5)] {
        let carries = kummer_valuation(n, m, p)?.value;
        let legendre = legendre_binomial_valuation(n, m, p)?;
        println!("ν_{p}(C({n},{m})): carries {carries:?}, factorials {legendre}");
    }

    let w = helou_terjanian_check(2, 1, 5)?;
    println!("C(10,5) - C(2,1) = {} ≡ 0 mod {}: {}", &w.lhs - &w.rhs, w.modulus, w.holds);
    let w = scaled_binomial_check(12, 2, 3)?;
    println!("C(12,6) ≡ C(4,2) mod {}: {}", w.modulus, w.holds);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("binomial_lemmas");
}
