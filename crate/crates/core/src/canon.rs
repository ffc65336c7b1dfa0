//! Invariant factors of `xI - c`, Jordan structure over the base field and
//! Jordan-matrix generation.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{jordan_block, Mat};
use crate::poly::Poly;

/// Divisibility chain `d_1 | d_2 | ... | d_k` of monic nonconstant
/// polynomials. `d_k` is the minimal polynomial and the product is the
/// characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    chain: Vec<Poly>,
}

impl InvariantFactors {
    pub fn chain(&self) -> &[Poly] {
        &self.chain
    }

    pub fn minimal_polynomial(&self) -> &Poly {
        self.chain.last().expect("nonempty chain")
    }

    pub fn characteristic_polynomial(&self) -> Poly {
        let field = self.chain[0].field();
        self.chain.iter().fold(Poly::one(field), |acc, d| acc.mul(d))
    }

    /// Exponent of `(x - root)` in each factor, in chain order.
    pub fn exponents_at(&self, root: &Scalar) -> Result<Vec<usize>> {
        self.chain.iter().map(|d| d.root_multiplicity(root)).collect()
    }
}

/// Invariant factors of `xI - c` via Smith normal form over `F[x]`.
///
/// Pivot: a nonzero entry of minimal degree in the trailing submatrix, ties
/// broken by smallest row then column. Only unimodular row and column
/// operations are used; units are dropped and the rest made monic.
pub fn invariant_factors(c: &Mat) -> Result<InvariantFactors> {
    let n = c.ensure_square()?;
    let field = c.field();
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Poly::constant(-c.get(i, j));
                    if i == j {
                        p = p.add(&Poly::monomial(field.one(), 1));
                    }
                    p
                })
                .collect()
        })
        .collect();

    for t in 0..n {
        loop {
            let Some((pi, pj)) = min_degree_entry(&a, t) else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].divrem(&a[t][t])?;
                for j in t..n {
                    let v = a[i][j].sub(&q.mul(&a[t][j]));
                    a[i][j] = v;
                }
                debug_assert_eq!(a[i][t], r);
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].divrem(&a[t][t])?;
                for row in a.iter_mut().skip(t) {
                    let v = row[j].sub(&q.mul(&row[t]));
                    row[j] = v;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..n).find(|&i| {
                (t + 1..n).any(|j| !a[i][j].divrem(&a[t][t]).expect("nonzero pivot").1.is_zero())
            });
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[t][j].add(&a[i][j]);
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
    }

    let chain: Vec<Poly> = (0..n)
        .map(|i| a[i][i].monic())
        .filter(|d| d.degree().is_some_and(|k| k > 0))
        .collect();
    debug_assert!(chain
        .windows(2)
        .all(|w| Poly::divides(&w[0], &w[1]).unwrap_or(false)));
    Ok(InvariantFactors { chain })
}

fn min_degree_entry(a: &[Vec<Poly>], t: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if let Some(d) = a[i][j].degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Ordered list of Jordan blocks `(eigenvalue, size)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanSpec {
    field: FieldSpec,
    blocks: Vec<(Scalar, usize)>,
}

impl JordanSpec {
    pub fn new(field: FieldSpec, blocks: Vec<(Scalar, usize)>) -> Result<Self> {
        for (eig, size) in &blocks {
            field.ensure_same(&eig.field())?;
            if *size == 0 {
                return Err(Error::SizeMismatch("Jordan block of size 0".into()));
            }
        }
        Ok(JordanSpec { field, blocks })
    }

    /// Convenience constructor from integer eigenvalues.
    pub fn from_i64(field: FieldSpec, blocks: &[(i64, usize)]) -> Result<Self> {
        JordanSpec::new(
            field,
            blocks
                .iter()
                .map(|&(e, s)| (Scalar::from_i64(field, e), s))
                .collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn blocks(&self) -> &[(Scalar, usize)] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    /// Blocks sorted by eigenvalue, then by decreasing size.
    pub fn canonical(&self) -> JordanSpec {
        let mut blocks = self.blocks.clone();
        blocks.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        JordanSpec {
            field: self.field,
            blocks,
        }
    }

    /// Distinct eigenvalues in order of first appearance, each with its
    /// block sizes in spec order.
    pub fn groups(&self) -> Vec<(Scalar, Vec<usize>)> {
        let mut out: Vec<(Scalar, Vec<usize>)> = Vec::new();
        for (eig, size) in &self.blocks {
            match out.iter_mut().find(|(e, _)| e == eig) {
                Some((_, sizes)) => sizes.push(*size),
                None => out.push((eig.clone(), vec![*size])),
            }
        }
        out
    }

    /// First eigenvalue whose blocks do not all share one size.
    pub fn unequal_sizes(&self) -> Option<(Scalar, Vec<usize>)> {
        self.groups()
            .into_iter()
            .find(|(_, sizes)| sizes.iter().any(|&s| s != sizes[0]))
    }

    /// The literal "same eigenvalue, same size" condition.
    pub fn has_equal_sizes(&self) -> bool {
        self.unequal_sizes().is_none()
    }

    pub fn all_sizes_one(&self) -> bool {
        self.blocks.iter().all(|b| b.1 == 1)
    }
}

/// Direct sum of `jordan_block(size, eig)` in spec order.
pub fn build_jordan_matrix(spec: &JordanSpec) -> Mat {
    spec.blocks
        .iter()
        .fold(Mat::zeros(spec.field, 0, 0), |acc, (eig, size)| {
            acc.direct_sum(&jordan_block(*size, eig))
                .expect("same field")
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JordanStructure {
    /// Per eigenvalue (ascending), the block sizes in decreasing order.
    FullySplit(Vec<(Scalar, Vec<usize>)>),
    NotSplitOverBase,
}

/// Eigenvalues of `c` in the base field and their Jordan block sizes,
/// obtained from the rank sequence of `(c - λI)^k`.
pub fn jordan_structure(c: &Mat) -> Result<JordanStructure> {
    let n = c.ensure_square()?;
    let chi = invariant_factors(c)?.characteristic_polynomial();
    let roots = chi.rational_roots()?;
    if roots.iter().map(|r| r.1).sum::<usize>() != n {
        return Ok(JordanStructure::NotSplitOverBase);
    }
    let mut out = Vec::new();
    for (eig, _) in roots {
        let ranks = rank_sequence(c, &eig);
        out.push((eig, sizes_from_ranks(&ranks)));
    }
    Ok(JordanStructure::FullySplit(out))
}

/// `rank((c - λI)^k)` for `k = 0, 1, ...` until it stabilizes.
fn rank_sequence(c: &Mat, eig: &Scalar) -> Vec<usize> {
    let n = c.rows();
    let nil = c - &Mat::scalar(eig, n);
    let mut ranks = vec![n];
    let mut power = Mat::identity(c.field(), n);
    loop {
        power = &power * &nil;
        let r = power.rank();
        let last = *ranks.last().unwrap();
        ranks.push(r);
        if r == last {
            return ranks;
        }
    }
}

fn sizes_from_ranks(ranks: &[usize]) -> Vec<usize> {
    // at_least[k] = number of blocks of size >= k
    let at_least: Vec<usize> = (1..ranks.len()).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exact));
    }
    sizes
}

/// Invertible `u` and canonical spec with `u^{-1} c u = build_jordan_matrix(spec)`.
///
/// Per eigenvalue, chain tops are picked level by level from the top of the
/// kernel filtration of `N = c - λI`, skipping vectors already spanned by the
/// lower kernel and by images of longer chains; chains are then
/// `N^{k-1}v, ..., Nv, v`.
pub fn jordan_transform(c: &Mat) -> Result<(Mat, JordanSpec)> {
    let n = c.ensure_square()?;
    let field = c.field();
    let JordanStructure::FullySplit(structure) = jordan_structure(c)? else {
        return Err(Error::NotSplit);
    };
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (eig, sizes) in structure {
        let nil = c - &Mat::scalar(&eig, n);
        let top = sizes[0];
        let mut powers = vec![Mat::identity(field, n)];
        for k in 1..=top {
            powers.push(&powers[k - 1] * &nil);
        }
        let mut tops: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for level in (1..=top).rev() {
            let mut spanned: Vec<Vec<Scalar>> = powers[level - 1].kernel_basis();
            for (l, v) in &tops {
                spanned.push(powers[l - level].apply(v));
            }
            let mut rank = stacked_rank(&spanned, n, field);
            for cand in powers[level].kernel_basis() {
                spanned.push(cand.clone());
                let r = stacked_rank(&spanned, n, field);
                if r > rank {
                    rank = r;
                    tops.push((level, cand));
                } else {
                    spanned.pop();
                }
            }
        }
        for (level, v) in tops {
            for k in (0..level).rev() {
                columns.push(powers[k].apply(&v));
            }
            blocks.push((eig.clone(), level));
        }
    }
    let spec = JordanSpec::new(field, blocks)?;
    let mut u = Mat::zeros(field, n, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            u.set(i, j, x.clone());
        }
    }
    Ok((u, spec))
}

fn stacked_rank(vectors: &[Vec<Scalar>], n: usize, field: FieldSpec) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    debug_assert!(vectors.iter().all(|v| v.len() == n));
    Mat::from_rows(field, vectors.to_vec())
        .expect("equal-length vectors")
        .rank()
}
