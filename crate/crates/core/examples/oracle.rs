//! The Frobenius-algebra oracle on centralizers, with the stage that decided.
//!
//! Run with `cargo run --example oracle`.

use frobcent::canon::{build_jordan_matrix, JordanSpec};
use frobcent::centralizer::centralizer_basis;
use frobcent::frobsys::{frobenius_algebra_oracle, frobenius_algebra_oracle_seeded};
use frobcent::FieldSpec;

fn main() -> frobcent::Result<()> {
    let q = FieldSpec::rationals();
    let gf2 = FieldSpec::prime(2)?;
    let cases: [(FieldSpec, &[(i64, usize)]); 6] = [
        (q, &[(0, 3)]),
        (q, &[(0, 2), (0, 1)]),
        (q, &[(0, 2), (0, 2)]),
        (q, &[(1, 2), (1, 1), (1, 1), (1, 1), (1, 1)]),
        (gf2, &[(0, 1), (0, 1), (1, 1)]),
        (gf2, &[(1, 3), (1, 1)]),
    ];
    for (field, blocks) in cases {
        let spec = JordanSpec::from_i64(field, blocks)?;
        let basis = centralizer_basis(&build_jordan_matrix(&spec))?;
        let out = frobenius_algebra_oracle(&basis)?;
        println!(
            "{blocks:?} over {field}: dim {:>2}, frobenius {:<5} by {}",
            basis.dim(),
            out.is_frobenius(),
            out.method.name()
        );
    }

    // The verdict does not depend on the seed.
    let spec = JordanSpec::from_i64(q, &[(0, 2), (0, 2), (3, 1)])?;
    let basis = centralizer_basis(&build_jordan_matrix(&spec))?;
    let verdicts: Vec<bool> = (0..4)
        .map(|seed| frobenius_algebra_oracle_seeded(&basis, seed).map(|o| o.is_frobenius()))
        .collect::<frobcent::Result<_>>()?;
    println!("seeds 0..4 on J2+J2+J1(3): {verdicts:?}");
    Ok(())
}
