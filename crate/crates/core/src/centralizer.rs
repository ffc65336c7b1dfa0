//! Centralizer algebras `S_n(c, F) = { a : ac = ca }` and intertwiner
//! spaces between Jordan blocks.
//!
//! The Kronecker-kernel computation in [`centralizer_basis`] is the
//! reference; [`structured_centralizer_basis`] assembles the same algebra
//! block by block from shift matrices.

use crate::canon::JordanSpec;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{shift_matrix, Mat, SpanCoords};

/// Linearly independent `n x n` matrices whose span contains the identity.
#[derive(Debug, Clone)]
pub struct SubalgebraBasis {
    ambient: usize,
    field: FieldSpec,
    elements: Vec<Mat>,
    span: SpanCoords,
}

impl PartialEq for SubalgebraBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.field == other.field
            && self.elements == other.elements
    }
}

impl SubalgebraBasis {
    /// Checks sizes, linear independence and that `I` is in the span.
    /// Multiplicative closure is checked separately by [`Self::closure_defect`].
    pub fn new(field: FieldSpec, ambient: usize, elements: Vec<Mat>) -> Result<Self> {
        for e in &elements {
            field.ensure_same(&e.field())?;
            if e.shape() != (ambient, ambient) {
                return Err(Error::SizeMismatch(format!(
                    "basis element {}x{} in ambient {ambient}",
                    e.rows(),
                    e.cols()
                )));
            }
        }
        let span = SpanCoords::new(field, elements.iter().map(Mat::vec).collect())?;
        let basis = SubalgebraBasis {
            ambient,
            field,
            elements,
            span,
        };
        if basis.coords(&Mat::identity(field, ambient)).is_none() {
            return Err(Error::InvalidBasis("identity not in span".into()));
        }
        Ok(basis)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `a` in this basis, `None` if `a` is outside the span.
    /// `a` must be `ambient x ambient`.
    pub fn coords(&self, a: &Mat) -> Option<Vec<Scalar>> {
        debug_assert_eq!(a.shape(), (self.ambient, self.ambient));
        self.span.coords(&a.vec())
    }

    pub fn contains(&self, a: &Mat) -> bool {
        self.coords(a).is_some()
    }

    pub fn combine(&self, coords: &[Scalar]) -> Mat {
        Mat::from_vec(self.field, self.ambient, self.ambient, &self.span.combine(coords))
    }

    /// First pair `(i, j)` whose product leaves the span.
    pub fn closure_defect(&self) -> Option<(usize, usize)> {
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                if !self.contains(&(a * b)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn same_span(&self, other: &SubalgebraBasis) -> bool {
        self.ambient == other.ambient
            && self.field == other.field
            && self.dim() == other.dim()
            && other.elements.iter().all(|e| self.contains(e))
    }

    /// Elements of the span commuting with every matrix in `others`.
    pub fn commuting_subspace(&self, others: &[Mat]) -> Vec<Mat> {
        let d = self.dim();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let comms: Vec<Vec<Vec<Scalar>>> = others
            .iter()
            .map(|b| self.elements.iter().map(|a| a.commutator(b).vec()).collect())
            .collect();
        for per_b in &comms {
            let len = per_b.first().map_or(0, Vec::len);
            for r in 0..len {
                let row: Vec<Scalar> = (0..d).map(|j| per_b[j][r].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return self.elements.clone();
        }
        let system = Mat::from_rows(self.field, rows).expect("rectangular");
        system
            .kernel_basis()
            .iter()
            .map(|c| self.combine(c))
            .collect()
    }

    /// Center of the algebra spanned by this basis.
    pub fn center(&self) -> Vec<Mat> {
        self.commuting_subspace(&self.elements)
    }
}

/// Membership of `a` in the span of `basis`.
pub fn membership(a: &Mat, basis: &SubalgebraBasis) -> Result<Option<Vec<Scalar>>> {
    basis.field.ensure_same(&a.field())?;
    if a.shape() != (basis.ambient, basis.ambient) {
        return Err(Error::SizeMismatch(format!(
            "{}x{} against ambient {}",
            a.rows(),
            a.cols(),
            basis.ambient
        )));
    }
    Ok(basis.coords(a))
}

/// Kernel of `c^T ⊗ I - I ⊗ c` on column-major vectorizations, devectorized.
pub fn centralizer_basis(c: &Mat) -> Result<SubalgebraBasis> {
    let n = c.ensure_square()?;
    let field = c.field();
    let id = Mat::identity(field, n);
    let op = &c.transpose().kron(&id)? - &id.kron(c)?;
    let elements = op
        .kernel_basis()
        .iter()
        .map(|v| Mat::from_vec(field, n, n, v))
        .collect();
    SubalgebraBasis::new(field, n, elements)
}

/// Basis of `{ a in M_{m x n} : J_m(λ1) a = a J_n(λ2) }`: the shift matrices
/// `J_{m,n}^i` for `max(0, n - m) <= i < n` when the eigenvalues agree,
/// nothing otherwise.
pub fn hom_space_basis(l1: &Scalar, m: usize, l2: &Scalar, n: usize) -> Result<Vec<Mat>> {
    let field = l1.field();
    field.ensure_same(&l2.field())?;
    if l1 != l2 {
        return Ok(Vec::new());
    }
    Ok((n.saturating_sub(m)..n)
        .map(|i| shift_matrix(field, m, n, i))
        .collect())
}

/// Centralizer of `build_jordan_matrix(spec)` assembled from
/// [`hom_space_basis`] on every block pair.
pub fn structured_centralizer_basis(spec: &JordanSpec) -> Result<SubalgebraBasis> {
    let field = spec.field();
    let n = spec.dimension();
    let offsets: Vec<usize> = spec
        .blocks()
        .iter()
        .scan(0, |acc, b| {
            let start = *acc;
            *acc += b.1;
            Some(start)
        })
        .collect();
    let mut elements = Vec::new();
    for (i, (li, ni)) in spec.blocks().iter().enumerate() {
        for (j, (lj, nj)) in spec.blocks().iter().enumerate() {
            for h in hom_space_basis(li, *ni, lj, *nj)? {
                let mut e = Mat::zeros(field, n, n);
                e.set_block(offsets[i], offsets[j], &h);
                elements.push(e);
            }
        }
    }
    SubalgebraBasis::new(field, n, elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::build_jordan_matrix;
    use crate::matrix::{jordan_block, matrix_unit};

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn centralizer_of_nilpotent_block() {
        let j = jordan_block(3, &q().zero());
        let basis = centralizer_basis(&j).unwrap();
        assert_eq!(basis.dim(), 3);
        for k in 0..3 {
            assert!(basis.contains(&j.pow(k)));
        }
        for e in basis.elements() {
            assert!(e.commutator(&j).is_zero());
        }
        assert!(basis.closure_defect().is_none());
    }

    #[test]
    fn centralizer_dimensions() {
        assert_eq!(centralizer_basis(&Mat::identity(q(), 3)).unwrap().dim(), 9);
        let spec = JordanSpec::from_i64(q(), &[(1, 2), (1, 1)]).unwrap();
        let basis = centralizer_basis(&build_jordan_matrix(&spec)).unwrap();
        assert_eq!(basis.dim(), 5);
        assert!(matches!(
            centralizer_basis(&Mat::zeros(q(), 2, 3)),
            Err(Error::NonSquare(2, 3))
        ));
    }

    #[test]
    fn hom_space_examples() {
        let z = q().zero();
        let b = hom_space_basis(&z, 4, &z, 2).unwrap();
        assert_eq!(b, vec![shift_matrix(q(), 4, 2, 0), shift_matrix(q(), 4, 2, 1)]);
        assert_eq!(
            b[0],
            Mat::from_i64(q(), &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]])
        );
        let c = hom_space_basis(&z, 2, &z, 4).unwrap();
        assert_eq!(c, vec![shift_matrix(q(), 2, 4, 2), shift_matrix(q(), 2, 4, 3)]);
        assert!(hom_space_basis(&z, 3, &q().one(), 3).unwrap().is_empty());
        // each basis element intertwines the blocks
        for h in &c {
            assert_eq!(&jordan_block(2, &z) * h, h * &jordan_block(4, &z));
        }
    }

    #[test]
    fn structured_examples() {
        let s = JordanSpec::from_i64(q(), &[(0, 3)]).unwrap();
        let b = structured_centralizer_basis(&s).unwrap();
        let j = jordan_block(3, &q().zero());
        assert_eq!(b.elements(), &[j.pow(0), j.pow(1), j.pow(2)]);

        let s = JordanSpec::from_i64(q(), &[(0, 1), (1, 1)]).unwrap();
        let b = structured_centralizer_basis(&s).unwrap();
        assert_eq!(
            b.elements(),
            &[
                matrix_unit(q(), 2, 2, 1, 1).unwrap(),
                matrix_unit(q(), 2, 2, 2, 2).unwrap()
            ]
        );

        let s = JordanSpec::from_i64(q(), &[(0, 2), (0, 2)]).unwrap();
        let b = structured_centralizer_basis(&s).unwrap();
        assert_eq!(b.dim(), 8);
        assert!(b.same_span(&centralizer_basis(&build_jordan_matrix(&s)).unwrap()));
    }

    #[test]
    fn membership_examples() {
        let c = Mat::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let basis = centralizer_basis(&c).unwrap();
        assert!(membership(&Mat::identity(q(), 2), &basis).unwrap().is_some());
        assert!(membership(&c, &basis).unwrap().is_some());
        let scalars = SubalgebraBasis::new(q(), 2, vec![Mat::identity(q(), 2)]).unwrap();
        assert!(membership(&matrix_unit(q(), 2, 2, 1, 2).unwrap(), &scalars)
            .unwrap()
            .is_none());
        assert!(matches!(
            membership(&Mat::identity(q(), 3), &scalars),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn basis_validation() {
        let e12 = matrix_unit(q(), 2, 2, 1, 2).unwrap();
        assert!(matches!(
            SubalgebraBasis::new(q(), 2, vec![e12.clone()]),
            Err(Error::InvalidBasis(_))
        ));
        assert!(SubalgebraBasis::new(q(), 2, vec![e12.clone(), e12]).is_err());
        // span{I, e12, e21} is not closed: e12 e21 = e11
        let open = SubalgebraBasis::new(
            q(),
            2,
            vec![
                Mat::identity(q(), 2),
                matrix_unit(q(), 2, 2, 1, 2).unwrap(),
                matrix_unit(q(), 2, 2, 2, 1).unwrap(),
            ],
        )
        .unwrap();
        assert!(open.closure_defect().is_some());
    }

    #[test]
    fn center_of_full_matrix_algebra_is_scalars() {
        let full = centralizer_basis(&Mat::identity(q(), 3)).unwrap();
        let z = full.center();
        assert_eq!(z.len(), 1);
        assert!(z[0].is_identity() || z[0].commutator(&full.elements()[1]).is_zero());
    }
}
