//! Frobenius systems: building, composing, summing, conjugating, verifying.
//!
//! Run with `cargo run --example frobenius_systems`.

use frobcent::canon::JordanSpec;
use frobcent::frobsys::{
    build_centralizer_system, compose_systems, conjugate_system, direct_sum_systems,
    full_matrix_system, jordan_block_system, matrix_ring_system, verify_system,
    CentralizerSystem, FrobeniusSystem,
};
use frobcent::{FieldSpec, Mat};

fn summary(label: &str, s: &FrobeniusSystem) {
    let r = verify_system(s);
    println!(
        "{label}: algebra dim {}, {} dual pairs, verified {} ({} elements checked)",
        s.algebra().dim(),
        s.pairs(),
        r.passed,
        r.elements_checked
    );
}

fn main() -> frobcent::Result<()> {
    let q = FieldSpec::rationals();

    let t = jordan_block_system(q, 3)?;
    summary("semicirculants of J3", &t);
    let sample = Mat::from_i64(q, &[&[4, 5, 6], &[0, 4, 5], &[0, 0, 4]]);
    println!("  E picks the top coefficient: E(sample) =\n{}", t.expectation().apply(&sample));

    summary("M_3(Q)/Q", &full_matrix_system(q, 3)?);

    // M_2(T)/T stacked on T/Q gives M_2(T)/Q.
    let inner = jordan_block_system(q, 2)?;
    let (outer, embed) = matrix_ring_system(2, inner.algebra())?;
    summary("M_2(T)/T", &outer);
    let tower = compose_systems(&outer, &inner, &embed)?;
    summary("tower M_2(T)/Q", &tower);

    let sum = direct_sum_systems(&inner, &full_matrix_system(q, 2)?)?;
    summary("T ⊕ M_2(Q)", &sum);

    let u = Mat::from_i64(q, &[&[1, 2], &[0, 1]]);
    summary("T conjugated", &conjugate_system(&inner, &u)?);

    for blocks in [vec![(0, 2), (0, 2), (5, 1)], vec![(0, 1), (1, 1), (0, 1)], vec![(0, 2), (0, 1)]] {
        let spec = JordanSpec::from_i64(q, &blocks)?;
        match build_centralizer_system(&spec)? {
            CentralizerSystem::Built { system, permutation } => {
                summary(&format!("centralizer of {blocks:?}"), &system);
                if permutation.is_some() {
                    println!("  (blocks were regrouped by a permutation)");
                }
            }
            CentralizerSystem::EqualSizeViolation { eigenvalue, sizes } => {
                println!("centralizer of {blocks:?}: no system, eigenvalue {eigenvalue} has sizes {sizes:?}");
            }
        }
    }
    Ok(())
}
