// Generators against bundled OEIS b-files, offline.

use seqlab::oeis::{bundled, cross_check, parse_bfile, registered_pairs};

pub fn run_example() -> seqlab::Result<()> {
    let mut passed = 0;
    let pairs = registered_pairs();
    for (spec, a) in &pairs {
        let b = bundled(a).expect("fixture bundled for every registered pair");
        let c = cross_check(spec, &b, 30)?;
        if c.passed() {
            passed += 1;
        } else {
            println!("{} vs {a}: {:?} {:?}", c.descriptor, c.verdict, c.first_mismatch);
        }
    }
    println!("{passed}/{} registered pairs match 30 terms", pairs.len());

    let err = parse_bfile("1 5\n1 6\n").unwrap_err();
    println!("duplicate index: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("oeis_cross_check");
}
