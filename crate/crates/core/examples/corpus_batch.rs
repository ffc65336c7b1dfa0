//! Decide the shipped reference corpus in parallel and check expectations.
//!
//! Run with `cargo run --example corpus_batch`.

use frobcent::wire::{mat_from_json, parse_document, partial_mismatches};
use frobcent::{decide_batch, Mat};

const CORPUS: &str = include_str!("../data/reference_corpus.json");

fn main() -> frobcent::Result<()> {
    let doc = parse_document(CORPUS)?;
    let entries = doc["entries"].as_array().cloned().unwrap_or_default();
    let mats: Vec<Mat> = entries
        .iter()
        .map(|e| mat_from_json(&e["matrix"], None))
        .collect::<frobcent::Result<_>>()?;

    let reports = decide_batch(&mats);
    let mut failures = 0;
    for (entry, report) in entries.iter().zip(reports) {
        let report = report?.to_json();
        let miss = partial_mismatches(&entry["expected"], &report);
        failures += usize::from(!miss.is_empty());
        println!(
            "{:<5} {:<45} frobenius={}",
            if miss.is_empty() { "pass" } else { "FAIL" },
            entry["name"].as_str().unwrap_or("?"),
            report["frobenius"]
        );
        for m in miss {
            println!("      {m}");
        }
    }
    println!("{} entries, {failures} failures", entries.len());
    Ok(())
}
