use num_bigint::BigInt;

use seqlab::oeis::{
    bundled, bundled_a_numbers, cross_check, normalize_a_number, parse_bfile, read_bfile, BFile, Corpus, CrossVerdict,
    Source,
};
use seqlab::{Error, SequenceSpec};

fn sample(a: &str) -> BFile {
    BFile { a_number: a.into(), entries: (1..=12).map(|n| (n, BigInt::from(n * n))).collect(), source: Source::Text }
}

#[test]
fn store_then_read_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = Corpus::with_cache_dir(dir.path().join("nested"));
    assert!(corpus.cached("A999990").unwrap().is_none());

    let path = corpus.store(&sample("a999990")).unwrap();
    assert!(path.ends_with("b999990.txt"));
    let names: Vec<_> = std::fs::read_dir(path.parent().unwrap()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1, "temp file left behind: {names:?}");

    let back = corpus.fetch("999990").unwrap();
    assert_eq!(back.source, Source::Cache);
    assert_eq!(back.a_number, "A999990");
    assert_eq!(back.entries, sample("A999990").entries);
    assert_eq!(read_bfile(&path).unwrap().entries, back.entries);
}

#[test]
fn fixtures_win_over_cache() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = Corpus::with_cache_dir(dir.path());
    corpus.store(&sample("A000032")).unwrap();
    let b = corpus.fetch("A000032").unwrap();
    assert_eq!(b.source, Source::BundledFixture);
    assert_eq!(b.get(1), Some(&BigInt::from(1)));
    assert_eq!(b.get(5), Some(&BigInt::from(11)));
}

#[test]
fn missing_without_network_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = Corpus::with_cache_dir(dir.path()).fetch("A999991").unwrap_err();
    assert!(matches!(err, Error::NetworkDisabled(ref a) if a == "A999991"), "{err}");
    assert_eq!(err.code(), "oeis.network-disabled");
    assert!(matches!(Corpus::default().fetch("A999991"), Err(Error::NetworkDisabled(_))));
    assert!(Corpus::default().store(&sample("A999991")).is_err());
}

#[test]
fn malformed_cache_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b999992.txt"), "# A999992\n1 1\n2 x\n").unwrap();
    match Corpus::with_cache_dir(dir.path()).fetch("A999992") {
        Err(Error::BFileParse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn parser_rejects_bad_lines() {
    let line = |text: &str| match parse_bfile(text) {
        Err(Error::BFileParse { line, .. }) => line,
        other => panic!("{text:?} gave {other:?}"),
    };
    assert_eq!(line("1 1\n1 2\n"), 2);
    assert_eq!(line("# c\n2 1\n\n1 2\n"), 4);
    assert_eq!(line("1 1 1\n"), 1);
    assert_eq!(line("one 1\n"), 1);
    let b = parse_bfile("# A000045 Fibonacci\n\n0 0\n1 1\n2 1\n3 -2\n").unwrap();
    assert_eq!(b.a_number, "A000045");
    assert_eq!(b.first_index(), Some(0));
    assert_eq!(b.get(3), Some(&BigInt::from(-2)));
}

#[test]
fn a_numbers_normalize() {
    assert_eq!(normalize_a_number("a5259").unwrap(), "A005259");
    assert_eq!(normalize_a_number(" 45 ").unwrap(), "A000045");
    assert!(normalize_a_number("A1234567").is_err());
    assert!(normalize_a_number("B000045").is_err());
    assert!(normalize_a_number("").is_err());
}

#[test]
fn every_fixture_parses_with_enough_terms() {
    let all: Vec<String> = bundled_a_numbers().collect();
    assert!(all.len() >= 30);
    for a in all {
        let b = bundled(&a).unwrap();
        assert!(b.entries.len() >= 30, "{a} has {} entries", b.entries.len());
    }
}

#[test]
fn shifted_fixture_is_flagged() {
    let spec = SequenceSpec::parse("catalan").unwrap();
    let mut b = bundled("A000108").unwrap();
    let c = cross_check(&spec, &b, 30).unwrap();
    assert_eq!(c.verdict, CrossVerdict::Match);
    for e in &mut b.entries {
        e.0 += 2;
    }
    let c = cross_check(&spec, &b, 30).unwrap();
    assert_eq!(c.verdict, CrossVerdict::ProbableOffsetError);
    assert_eq!(c.probable_shift, Some(2));
    assert!(!c.passed());

    b.entries.iter_mut().for_each(|e| e.1 += 1);
    let c = cross_check(&spec, &b, 30).unwrap();
    assert_eq!(c.verdict, CrossVerdict::ValueMismatch);
    assert!(c.first_mismatch.is_some());
}

#[test]
fn disjoint_bfile_does_not_pass() {
    let spec = SequenceSpec::parse("catalan").unwrap();
    let b = BFile { a_number: "A000108".into(), entries: vec![(-5, BigInt::from(1))], source: Source::Text };
    let c = cross_check(&spec, &b, 30).unwrap();
    assert_eq!(c.verdict, CrossVerdict::NoOverlap);
    assert_eq!(c.compared, 0);
    assert!(!c.passed());
}
