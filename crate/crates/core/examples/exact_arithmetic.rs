//! Scalars, polynomials and matrices over Q and GF(p).
//!
//! Run with `cargo run --example exact_arithmetic`.

use frobcent::{FieldSpec, Mat, Poly, Scalar};

fn main() -> frobcent::Result<()> {
    let q = FieldSpec::rationals();
    let gf7 = FieldSpec::prime(7)?;

    let third = Scalar::parse(q, "1/3")?;
    println!("over {q}: 1/3 + 1/3 + 1/3 = {}", &(&third + &third) + &third);
    let three = Scalar::from_i64(gf7, 3);
    println!("over {gf7}: 3^-1 = {}, 3^6 = {}", three.inv()?, three.pow(6));

    // (x - 1)^2 (x + 2) and its squarefree part
    let f = Poly::from_i64s(q, &[-1, 1]).pow(2).mul(&Poly::from_i64s(q, &[2, 1]));
    let g = f.gcd(&f.derivative())?;
    println!("f = {f}, gcd(f, f') = {g}, squarefree: {}", f.is_squarefree()?);
    println!("rational roots of f: {:?}", f
        .rational_roots()?
        .iter()
        .map(|(r, m)| format!("{r} (x{m})"))
        .collect::<Vec<_>>());

    let a = Mat::from_i64(q, &[&[2, 1], &[1, 1]]);
    let inv = a.inverse()?;
    println!("A =\n{a}\nA^-1 =\n{inv}\nA A^-1 is the identity: {}", (&a * &inv).is_identity());

    // det = 14: invertible over Q, singular mod 7
    let rows: &[&[i64]] = &[&[3, 1], &[1, 5]];
    let (bq, b7) = (Mat::from_i64(q, rows), Mat::from_i64(gf7, rows));
    println!("rank of\n{bq}\nis {} over Q and {} over {gf7}", bq.rank(), b7.rank());

    // vec(A X B) = (B^T ⊗ A) vec(X)
    let x = Mat::from_i64(q, &[&[1, 0], &[3, -1]]);
    let lhs = (&(&a * &x) * &inv).vec();
    let rhs = inv.transpose().kron(&a)?.apply(&x.vec());
    println!("vec identity holds: {}", lhs == rhs);
    Ok(())
}
