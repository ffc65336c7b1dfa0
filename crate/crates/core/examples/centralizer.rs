//! Centralizer bases: the brute-force Kronecker kernel against the block
//! structured construction from shift matrices.
//!
//! Run with `cargo run --example centralizer`.

use frobcent::canon::{build_jordan_matrix, JordanSpec};
use frobcent::centralizer::{centralizer_basis, structured_centralizer_basis};
use frobcent::matrix::shift_matrix;
use frobcent::FieldSpec;

fn main() -> frobcent::Result<()> {
    let q = FieldSpec::rationals();

    for blocks in [vec![(0, 3)], vec![(0, 2), (0, 1)], vec![(0, 2), (0, 2)], vec![(1, 2), (3, 1)]] {
        let spec = JordanSpec::from_i64(q, &blocks)?;
        let kron = centralizer_basis(&build_jordan_matrix(&spec))?;
        let structured = structured_centralizer_basis(&spec)?;
        println!(
            "{blocks:?}: dim {} (structured {}), same span: {}, closed under products: {}, center dim {}",
            kron.dim(),
            structured.dim(),
            kron.same_span(&structured),
            kron.closure_defect().is_none(),
            kron.center().len(),
        );
    }

    // The structured basis of the unequal pair J2(0) + J1(0)
    let spec = JordanSpec::from_i64(q, &[(0, 2), (0, 1)])?;
    for (i, b) in structured_centralizer_basis(&spec)?.elements().iter().enumerate() {
        println!("basis element {i}:\n{b}");
    }

    // Shift matrices multiply by adding shifts, when the second is admissible.
    let a = shift_matrix(q, 3, 2, 1);
    let b = shift_matrix(q, 2, 3, 1);
    println!("J(3,2,1) J(2,3,1) = J(3,3,2): {}", &a * &b == shift_matrix(q, 3, 3, 2));
    Ok(())
}
