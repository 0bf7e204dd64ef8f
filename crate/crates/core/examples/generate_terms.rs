// Exact terms of a few binomial-sum families and classical sequences.

use seqlab::{Sequence, SequenceSpec};

pub fn run_example() -> seqlab::Result<()> {
    for name in ["apery1", "delannoy", "domb", "trinomial", "clf", "catalan", "genocchi", "partitions"] {
        let seq = Sequence::parse(name)?;
        let lo = seq.offset().max(1);
        let terms = seq.terms(lo, lo + 5)?;
        let shown: Vec<String> = terms.iter().map(ToString::to_string).collect();
        println!("{:<28} {}", seq.spec().name(), shown.join(", "));
    }

    // parameterized families use `family:key=value,...`
    let spec = SequenceSpec::parse("c-family:r=2,s=1,t=0,u=1")?;
    let seq = Sequence::shared(spec);
    println!("{} a(10) = {}", spec.descriptor(), seq.eval(10)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("generate_terms");
}
