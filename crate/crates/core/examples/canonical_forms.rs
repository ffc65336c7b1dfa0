//! Invariant factors, Jordan structure and the Jordan transform.
//!
//! Run with `cargo run --example canonical_forms`.

use frobcent::canon::{
    build_jordan_matrix, invariant_factors, jordan_structure, jordan_transform, JordanSpec,
    JordanStructure,
};
use frobcent::{FieldSpec, Mat};

fn show(label: &str, c: &Mat) -> frobcent::Result<()> {
    let f = invariant_factors(c)?;
    let chain: Vec<String> = f.chain().iter().map(|p| format!("({p})")).collect();
    println!("{label}: invariant factors {}", chain.join(" | "));
    println!("  minimal {}, characteristic {}", f.minimal_polynomial(), f.characteristic_polynomial());
    match jordan_structure(c)? {
        JordanStructure::FullySplit(groups) => {
            for (lambda, sizes) in groups {
                println!("  eigenvalue {lambda}: blocks {sizes:?}");
            }
        }
        JordanStructure::NotSplitOverBase => println!("  does not split over {}", c.field()),
    }
    Ok(())
}

fn main() -> frobcent::Result<()> {
    let q = FieldSpec::rationals();
    show("rotation", &Mat::from_i64(q, &[&[0, 1], &[-1, 0]]))?;
    show("companion-like", &Mat::from_i64(q, &[&[0, 0, 1], &[0, 1, 0], &[-1, 0, 2]]))?;

    // Hide a Jordan matrix behind a change of basis, then recover it.
    let spec = JordanSpec::from_i64(q, &[(2, 2), (2, 1), (-1, 1)])?;
    let j = build_jordan_matrix(&spec);
    let u = Mat::from_i64(q, &[&[1, 1, 0, 2], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
    let c = &(&u * &j) * &u.inverse()?;
    show("conjugated J2(2) + J1(2) + J1(-1)", &c)?;

    let (t, found) = jordan_transform(&c)?;
    let back = &(&t.inverse()? * &c) * &t;
    println!("transform recovers {:?}: {}", found.blocks().iter().map(|(l, s)| format!("J{s}({l})")).collect::<Vec<_>>(),
        back == build_jordan_matrix(&found));

    // Over GF(2), x^2 + x + 1 has no roots.
    let gf2 = FieldSpec::prime(2)?;
    show("companion of x^2+x+1 over GF(2)", &Mat::from_i64(gf2, &[&[0, 1], &[1, 1]]))?;
    Ok(())
}
