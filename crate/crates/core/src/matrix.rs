//! Dense exact matrices, Gaussian elimination, Kronecker products and the
//! structured shift matrices `J_{m,n}^k`.
//!
//! Vectorization is column-major everywhere: `vec(a)[i + j*rows] = a[i][j]`,
//! so that `vec(a * x * b) = (b^T ⊗ a) * vec(x)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Scalar matrix `c * I_n`.
    pub fn scalar(c: &Scalar, n: usize) -> Self {
        Mat::identity(c.field(), n).scale(c)
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::SizeMismatch("ragged rows".into()));
            }
            for x in row {
                field.ensure_same(&x.field())?;
                data.push(x);
            }
        }
        Ok(Mat {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)).collect())
            .collect();
        Mat::from_rows(field, rows).expect("rectangular i64 rows")
    }

    /// Inverse of [`Mat::vec`].
    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Self {
        assert_eq!(v.len(), rows * cols, "vectorization length");
        let mut m = Mat::zeros(field, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.data[i * cols + j] = v[i + j * rows].clone();
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare(self.rows, self.cols))
        }
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Column-major vectorization.
    pub fn vec(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    pub fn column(v: &[Scalar], field: FieldSpec) -> Mat {
        Mat::from_vec(field, v.len(), 1, v)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    fn conform(&self, rhs: &Mat, same_shape: bool) -> Result<()> {
        self.field.ensure_same(&rhs.field)?;
        let ok = if same_shape {
            self.shape() == rhs.shape()
        } else {
            self.cols == rhs.rows
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )))
        }
    }

    pub fn try_add(&self, rhs: &Mat) -> Result<Mat> {
        self.conform(rhs, true)?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Mat) -> Result<Mat> {
        self.conform(rhs, true)?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    fn zip(&self, rhs: &Mat, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Mat) -> Result<Mat> {
        self.conform(rhs, false)?;
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Mat {
        let n = self.rows;
        (0..e).fold(Mat::identity(self.field, n), |acc, _| &acc * self)
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Result<Mat> {
        let n = self.ensure_square()?;
        self.field.ensure_same(&p.field())?;
        let mut acc = Mat::zeros(self.field, n, n);
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Mat::scalar(c, n);
        }
        Ok(acc)
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Mat) -> Mat {
        &(self * rhs) - &(rhs * self)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        rref(&mut m, self.cols).len()
    }

    /// Exact basis of the right null space, one vector per free column of
    /// the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.to_rows();
        let pivots = rref(&mut m, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[r][f];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Mat> {
        let n = self.ensure_square()?;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        self.field.one()
                    } else {
                        self.field.zero()
                    }
                }));
                r
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Mat::from_rows(self.field, rows)
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref(&mut aug, self.cols);
        for row in aug.iter().skip(pivots.len()) {
            if !row[self.cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[r][self.cols].clone();
        }
        Some(x)
    }

    /// Kronecker product: block `(i, j)` is `self[i][j] * rhs`.
    pub fn kron(&self, rhs: &Mat) -> Result<Mat> {
        self.field.ensure_same(&rhs.field)?;
        let (p, q) = rhs.shape();
        let mut out = Mat::zeros(self.field, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out.set(i * p + k, j * q + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal matrix with `self` and `rhs` on the diagonal.
    pub fn direct_sum(&self, rhs: &Mat) -> Result<Mat> {
        self.field.ensure_same(&rhs.field)?;
        let mut out = Mat::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }
}

/// Reduces `m` (whose first `ncols` columns are eliminated) to reduced row
/// echelon form in place and returns the pivot columns.
///
/// Columns are scanned left to right and the pivot is the first nonzero
/// entry at or below the current row.
pub(crate) fn rref(m: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Coordinates with respect to a fixed list of linearly independent vectors.
///
/// Precomputes a left inverse once so that repeated membership queries cost
/// a small matrix-vector product plus a consistency check.
#[derive(Debug, Clone)]
pub struct SpanCoords {
    field: FieldSpec,
    columns: Vec<Vec<Scalar>>,
    rows_used: Vec<usize>,
    left_inverse: Mat,
}

impl SpanCoords {
    /// Fails with [`Error::InvalidBasis`] if the vectors are dependent.
    pub fn new(field: FieldSpec, columns: Vec<Vec<Scalar>>) -> Result<Self> {
        let d = columns.len();
        let len = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::SizeMismatch("vectors of unequal length".into()));
        }
        // pivot columns of the transpose are independent rows
        let mut t: Vec<Vec<Scalar>> = columns.clone();
        let rows_used = rref(&mut t, len);
        if rows_used.len() < d {
            return Err(Error::InvalidBasis("linearly dependent elements".into()));
        }
        let square: Vec<Vec<Scalar>> = rows_used
            .iter()
            .map(|&r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let left_inverse = if d == 0 {
            Mat::zeros(field, 0, 0)
        } else {
            Mat::from_rows(field, square)?.inverse()?
        };
        Ok(SpanCoords {
            field,
            columns,
            rows_used,
            left_inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let picked: Vec<Scalar> = self.rows_used.iter().map(|&r| v[r].clone()).collect();
        let c = if self.dim() == 0 {
            Vec::new()
        } else {
            self.left_inverse.apply(&picked)
        };
        let rebuilt = self.combine(&c);
        if rebuilt.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    /// A `dim x len` matrix `L` with `L * combine(c) = c` for every `c`.
    pub fn left_inverse(&self) -> Mat {
        let len = self.columns.first().map_or(0, Vec::len);
        let mut select = Mat::zeros(self.field, self.dim(), len);
        for (k, &r) in self.rows_used.iter().enumerate() {
            select.set(k, r, self.field.one());
        }
        &self.left_inverse * &select
    }

    pub fn combine(&self, c: &[Scalar]) -> Vec<Scalar> {
        let len = self.columns.first().map_or(0, Vec::len);
        let mut out = vec![self.field.zero(); len];
        for (coef, col) in c.iter().zip(&self.columns) {
            if coef.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(col) {
                if !x.is_zero() {
                    *o = &*o + &(coef * x);
                }
            }
        }
        out
    }
}

/// Matrix unit `e_{i,j}` of size `m x n` (one-based indices).
pub fn matrix_unit(field: FieldSpec, m: usize, n: usize, i: usize, j: usize) -> Result<Mat> {
    if i == 0 || j == 0 || i > m || j > n {
        return Err(Error::IndexOutOfRange {
            row: i,
            col: j,
            rows: m,
            cols: n,
        });
    }
    let mut e = Mat::zeros(field, m, n);
    e.set(i - 1, j - 1, field.one());
    Ok(e)
}

/// `J_{m,n}^k`: ones at `(i, i + k)` for `1 <= i <= min(m, n - k)`, zero
/// when `k >= n`.
pub fn shift_matrix(field: FieldSpec, m: usize, n: usize, k: usize) -> Mat {
    let mut s = Mat::zeros(field, m, n);
    for i in 0..m {
        if i + k < n {
            s.set(i, i + k, field.one());
        }
    }
    s
}

/// Jordan block `J_n(λ) = λ I_n + J_{n,n}^1`.
pub fn jordan_block(n: usize, lambda: &Scalar) -> Mat {
    let field = lambda.field();
    &Mat::scalar(lambda, n) + &shift_matrix(field, n, n, 1)
}

macro_rules! mat_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a Mat> for &'a Mat {
            type Output = Mat;
            fn $m(self, rhs: &Mat) -> Mat {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}: {e}", stringify!($m)))
            }
        }
        impl $tr<Mat> for Mat {
            type Output = Mat;
            fn $m(self, rhs: Mat) -> Mat {
                (&self).$m(&rhs)
            }
        }
    };
}

mat_op!(Add, add, try_add);
mat_op!(Sub, sub, try_sub);
mat_op!(Mul, mul, try_mul);

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(&-&self.field.one())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn matrix_unit_rules() {
        let e11 = matrix_unit(q(), 2, 2, 1, 1).unwrap();
        let e12 = matrix_unit(q(), 2, 2, 1, 2).unwrap();
        assert_eq!(&e11 * &e12, e12);
        assert!((&e12 * &e12).is_zero());
        let sum = (1..=3).fold(Mat::zeros(q(), 3, 3), |acc, i| {
            &acc + &matrix_unit(q(), 3, 3, i, i).unwrap()
        });
        assert!(sum.is_identity());
        assert!(matches!(
            matrix_unit(q(), 2, 2, 3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matrix_unit(q(), 2, 2, 0, 1).is_err());
    }

    #[test]
    fn shift_matrix_examples() {
        assert_eq!(
            shift_matrix(q(), 2, 4, 2),
            Mat::from_i64(q(), &[&[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(shift_matrix(q(), 4, 4, 1), jordan_block(4, &q().zero()));
        assert!(shift_matrix(q(), 3, 3, 5).is_zero());
        // J_n^i = (J_n)^i
        let j = shift_matrix(q(), 5, 5, 1);
        for i in 0..7 {
            assert_eq!(j.pow(i), shift_matrix(q(), 5, 5, i as usize));
        }
    }

    #[test]
    fn jordan_block_examples() {
        let five = Scalar::from_i64(q(), 5);
        assert_eq!(jordan_block(1, &five), Mat::from_i64(q(), &[&[5]]));
        assert_eq!(
            jordan_block(2, &q().zero()),
            Mat::from_i64(q(), &[&[0, 1], &[0, 0]])
        );
        assert_eq!(
            jordan_block(3, &q().one()),
            Mat::from_i64(q(), &[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]])
        );
    }

    #[test]
    fn kernel_examples() {
        assert!(Mat::identity(q(), 3).kernel_basis().is_empty());
        assert_eq!(Mat::zeros(q(), 2, 2).kernel_basis().len(), 2);
        let k = Mat::from_i64(q(), &[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Scalar::from_i64(q(), -1), q().one()]);
    }

    #[test]
    fn kron_examples() {
        assert!(Mat::identity(q(), 2)
            .kron(&Mat::identity(q(), 3))
            .unwrap()
            .is_identity());
        let e12 = matrix_unit(q(), 2, 2, 1, 2).unwrap();
        assert_eq!(e12.kron(&Mat::identity(q(), 1)).unwrap(), e12);
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(
            e12.kron(&Mat::identity(f3, 1)),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let one = q().one();
        let js = jordan_block(2, &one)
            .direct_sum(&jordan_block(1, &one))
            .unwrap();
        assert_eq!(
            js,
            Mat::from_i64(q(), &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        let a = Mat::from_i64(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(a.direct_sum(&Mat::zeros(q(), 0, 0)).unwrap(), a);
    }

    #[test]
    fn inverse_and_solve() {
        let a = Mat::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&inv * &a).is_identity());
        assert_eq!(
            Mat::from_i64(q(), &[&[1, 1], &[1, 1]]).inverse(),
            Err(Error::Singular)
        );
        let b = vec![Scalar::from_i64(q(), 3), Scalar::from_i64(q(), 2)];
        assert_eq!(a.solve(&b).unwrap(), vec![q().one(), q().one()]);
        let s = Mat::from_i64(q(), &[&[1, 1], &[1, 1]]);
        assert!(s.solve(&b).is_none());
    }

    #[test]
    fn vec_is_column_major() {
        let a = Mat::from_i64(q(), &[&[1, 2], &[3, 4]]);
        let v: Vec<String> = a.vec().iter().map(Scalar::to_string).collect();
        assert_eq!(v, vec!["1", "3", "2", "4"]);
        assert_eq!(Mat::from_vec(q(), 2, 2, &a.vec()), a);
    }

    #[test]
    fn span_coords_membership() {
        let cols = vec![
            Mat::identity(q(), 2).vec(),
            matrix_unit(q(), 2, 2, 1, 2).unwrap().vec(),
        ];
        let span = SpanCoords::new(q(), cols).unwrap();
        let target = Mat::from_i64(q(), &[&[3, 5], &[0, 3]]).vec();
        let c = span.coords(&target).unwrap();
        assert_eq!(c, vec![Scalar::from_i64(q(), 3), Scalar::from_i64(q(), 5)]);
        assert!(span
            .coords(&matrix_unit(q(), 2, 2, 2, 1).unwrap().vec())
            .is_none());
        let dup = vec![Mat::identity(q(), 2).vec(), Mat::identity(q(), 2).vec()];
        assert!(SpanCoords::new(q(), dup).is_err());
    }
}
