//! The full classification report for a few matrices, as JSON.
//!
//! Run with `cargo run --example decide_report`.

use frobcent::wire::to_pretty;
use frobcent::{decide, FieldSpec, Mat};

fn main() -> frobcent::Result<()> {
    let q = FieldSpec::rationals();
    let matrices = [
        ("rotation", Mat::from_i64(q, &[&[0, 1], &[-1, 0]])),
        ("eigenvalue 1 twice, unequal blocks", Mat::from_i64(q, &[&[0, 0, 1], &[0, 1, 0], &[-1, 0, 2]])),
        ("nilpotent pair over GF(3)", Mat::from_i64(FieldSpec::prime(3)?, &[&[0, 1], &[0, 0]])),
    ];
    for (label, c) in matrices {
        let r = decide(&c)?;
        println!(
            "{label}: frobenius {}, separable {}, diagonalizable over closure {}, split {}",
            r.frobenius, r.separable_frobenius, r.diagonalizable_over_closure, r.split_over_base
        );
        for w in &r.warnings {
            println!("  warning: {w}");
        }
    }

    let c = Mat::from_i64(q, &[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 2]]);
    println!("{}", to_pretty(&decide(&c)?.to_json()));
    Ok(())
}
