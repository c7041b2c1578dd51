//! Interpolates from the twisted cubic to a line and re-checks the ledger.
use curvecert::curve::fixtures;
use curvecert::pipeline::{check_ledger, run_pipeline, Budgets, EquivalenceLedger};

fn main() {
    let f = fixtures::twisted_cubic();
    let g = fixtures::standard_line();
    let ledger = run_pipeline(&f, &g, 7, Budgets::default()).unwrap();
    println!("status: {:?}", ledger.status);
    for step in &ledger.steps {
        println!(
            "step {}: direction {:?}, degree {} -> {}, output {:?}",
            step.index, step.direction, step.degree_in, step.degree_out, step.output.components
        );
    }
    let reloaded = EquivalenceLedger::from_json(&ledger.to_json()).unwrap();
    println!("check after round trip: {:?}", check_ledger(&reloaded).status);
}
