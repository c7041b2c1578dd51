//! Genericity experiments with every failure checked against the bad loci.
use curvecert::curve::fixtures;
use curvecert::harness::{run_lemma_test, LemmaId};

fn main() {
    let cubic = fixtures::twisted_cubic();
    for lemma in LemmaId::ALL {
        let r = run_lemma_test(lemma, &cubic, "twisted-cubic", 50, 3, 0).unwrap();
        println!("{lemma}: {}/{} pass, {} unexplained", r.passes, r.samples, r.unexplained());
    }
    let r = run_lemma_test(LemmaId::TwoTransversality, &fixtures::three_lines(), "three-lines", 50, 3, 1).unwrap();
    println!("three lines, planar directions: {}/{} pass, {} unexplained", r.passes, r.samples, r.unexplained());
    let kinds: std::collections::BTreeSet<&str> = r.failures.iter().map(|f| f.witness.kind.as_str()).collect();
    println!("witness kinds: {kinds:?}");
}
