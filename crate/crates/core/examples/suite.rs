//! Runs every verifier over the default corpus and prints the summary.

use char2::cli::suite::{run_suite, Options};
use char2::cli::corpus::CorpusKind;

fn main() -> char2::error::Result<()> {
    let (run, timings) = run_suite(CorpusKind::Default, &Options::default())?;
    let total: f64 = timings.iter().map(|t| t.seconds).sum();
    for f in &run.findings {
        println!("finding: {f}");
    }
    println!(
        "{} reports, {} findings, {:.1} s",
        run.checks.len(),
        run.findings.len(),
        total
    );
    Ok(())
}
