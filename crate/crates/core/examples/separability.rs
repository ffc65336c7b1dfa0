//! Separability elements searched in three spaces.
//!
//! Run with `cargo run --example separability`.

use frobcent::frobsys::{
    expand_separability, full_matrix_system, jordan_block_system, probe_separability,
    FrobeniusSystem, SearchSpace,
};
use frobcent::FieldSpec;

fn report(label: &str, s: &FrobeniusSystem) -> frobcent::Result<()> {
    let probe = probe_separability(s)?;
    let found: Vec<String> = SearchSpace::ALL
        .iter()
        .map(|&sp| format!("{}={}", sp.name(), probe.get(sp).is_some()))
        .collect();
    println!("{label}: {}", found.join(", "));
    if let Some(d) = probe.get(SearchSpace::RelativeCentralizer) {
        println!("  sum X_i d Y_i is the identity: {}", expand_separability(s, d).is_identity());
    }
    for w in &probe.warnings {
        println!("  warning: {w}");
    }
    Ok(())
}

fn main() -> frobcent::Result<()> {
    let q = FieldSpec::rationals();
    report("J1 over Q", &jordan_block_system(q, 1)?)?;
    report("J3 over Q", &jordan_block_system(q, 3)?)?;
    report("M_2(Q)", &full_matrix_system(q, 2)?)?;
    // n = p: the scalar d = 1/n no longer exists
    report("M_2(GF(2))", &full_matrix_system(FieldSpec::prime(2)?, 2)?)?;
    report("M_3(GF(3))", &full_matrix_system(FieldSpec::prime(3)?, 3)?)?;
    Ok(())
}
