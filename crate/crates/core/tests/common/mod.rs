//! Generators shared by the integration tests.
#![allow(dead_code)]

use frobcent::canon::JordanSpec;
use frobcent::{FieldSpec, Mat, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q() -> FieldSpec {
    FieldSpec::rationals()
}

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

/// Partitions of `n` into parts in nonincreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every spec with total size in `1..=max_total` whose eigenvalues come
/// from `eigs`, blocks grouped by eigenvalue in the order of `eigs`.
pub fn all_specs(field: FieldSpec, eigs: &[i64], max_total: usize) -> Vec<JordanSpec> {
    let mut shapes: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for _ in eigs {
        let mut next = Vec::new();
        for shape in &shapes {
            let used: usize = shape.iter().flatten().sum();
            for t in 0..=max_total - used {
                for p in partitions(t) {
                    let mut s = shape.clone();
                    s.push(p);
                    next.push(s);
                }
            }
        }
        shapes = next;
    }
    shapes
        .into_iter()
        .filter(|s| s.iter().flatten().sum::<usize>() > 0)
        .map(|s| {
            let blocks = eigs
                .iter()
                .zip(&s)
                .flat_map(|(&e, p)| p.iter().map(move |&size| (e, size)))
                .collect::<Vec<_>>();
            JordanSpec::from_i64(field, &blocks).unwrap()
        })
        .collect()
}

/// Integer matrix with determinant 1: a product of random elementary
/// row operations, so it stays invertible over every prime field.
pub fn random_unimodular(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut u = Mat::identity(field, n);
    if n < 2 {
        return u;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let f = Scalar::from_i64(field, rng.gen_range(-2..=2));
        for c in 0..n {
            let v = u.get(i, c) + &(&f * u.get(j, c));
            u.set(i, c, v);
        }
    }
    u
}

/// Random matrix with small integer entries, resampled until invertible.
pub fn random_invertible(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| Scalar::from_i64(field, rng.gen_range(-3..=3))).collect())
            .collect();
        let m = Mat::from_rows(field, rows).unwrap();
        if m.inverse().is_ok() {
            return m;
        }
    }
}

pub fn random_matrix(field: FieldSpec, n: usize, bound: i64, rng: &mut ChaCha8Rng) -> Mat {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Scalar::from_i64(field, rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    Mat::from_rows(field, rows).unwrap()
}

/// `u J u^{-1}`.
pub fn conjugate(j: &Mat, u: &Mat) -> Mat {
    &(u * j) * &u.inverse().unwrap()
}
