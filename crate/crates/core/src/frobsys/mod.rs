//! Frobenius systems `(E, X_i, Y_i)` realized inside `M_n(F)`.
//!
//! A system for `A/B` consists of a `B`-bimodule map `E: A -> B` and dual
//! families with
//!
//! ```text
//! sum_i X_i E(Y_i a) = a = sum_i E(a X_i) Y_i   for all a in A.
//! ```
//!
//! `E` is stored as a matrix acting on column-major vectorizations, so
//! composition, direct sums and conjugation are plain matrix algebra.

mod oracle;
mod separability;

pub use oracle::{
    frobenius_algebra_oracle, frobenius_algebra_oracle_seeded, OracleMethod, OracleOutcome,
    OracleVerdict, DEFAULT_SEED, SYMBOLIC_LIMIT,
};
pub use separability::{
    expand_separability, probe_separability, separability_element, SearchSpace, SeparabilityProbe,
};

use crate::canon::JordanSpec;
use crate::centralizer::SubalgebraBasis;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{matrix_unit, shift_matrix, Mat, SpanCoords};

/// A linear map between matrix spaces, acting on column-major
/// vectorizations: `apply(a) = devec(action * vec(a))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMapMat {
    source: (usize, usize),
    target: (usize, usize),
    action: Mat,
}

impl LinearMapMat {
    pub fn new(source: (usize, usize), target: (usize, usize), action: Mat) -> Result<Self> {
        if action.shape() != (target.0 * target.1, source.0 * source.1) {
            return Err(Error::SizeMismatch(format!(
                "action {}x{} for map {source:?} -> {target:?}",
                action.rows(),
                action.cols()
            )));
        }
        Ok(LinearMapMat {
            source,
            target,
            action,
        })
    }

    /// Tabulates `f` on the matrix units of the source space.
    pub fn from_fn(
        field: FieldSpec,
        source: (usize, usize),
        target: (usize, usize),
        f: impl Fn(&Mat) -> Mat,
    ) -> Self {
        let (r, c) = source;
        let mut action = Mat::zeros(field, target.0 * target.1, r * c);
        for q in 0..r * c {
            let unit = matrix_unit(field, r, c, q % r + 1, q / r + 1).expect("in range");
            let image = f(&unit);
            assert_eq!(image.shape(), target, "image shape");
            for (p, v) in image.vec().into_iter().enumerate() {
                if !v.is_zero() {
                    action.set(p, q, v);
                }
            }
        }
        LinearMapMat {
            source,
            target,
            action,
        }
    }

    pub fn source(&self) -> (usize, usize) {
        self.source
    }

    pub fn target(&self) -> (usize, usize) {
        self.target
    }

    pub fn action(&self) -> &Mat {
        &self.action
    }

    pub fn apply(&self, a: &Mat) -> Mat {
        assert_eq!(a.shape(), self.source, "linear map source shape");
        let v = self.action.apply(&a.vec());
        Mat::from_vec(a.field(), self.target.0, self.target.1, &v)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LinearMapMat) -> Result<LinearMapMat> {
        if first.target != self.source {
            return Err(Error::SizeMismatch("linear map composition".into()));
        }
        LinearMapMat::new(first.source, self.target, self.action.try_mul(&first.action)?)
    }
}

/// The subalgebra `B` of a system for `A/B`.
#[derive(Debug, Clone, PartialEq)]
pub enum Base {
    /// `B = F`; `E` takes values in `1 x 1` matrices.
    Ground,
    /// `B` realized inside the same ambient `M_n(F)` as `A`.
    Embedded(SubalgebraBasis),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSystem {
    algebra: SubalgebraBasis,
    base: Base,
    expectation: LinearMapMat,
    x: Vec<Mat>,
    y: Vec<Mat>,
    verified: bool,
}

/// Which check in [`verify_system`] failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    DualElementOutsideAlgebra,
    ExpectationOutsideBase,
    /// `sum_i X_i E(Y_i a) = a`
    LeftDualBasis,
    /// `sum_i E(a X_i) Y_i = a`
    RightDualBasis,
    /// `E(b a b') = b E(a) b'`
    Bimodule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub check: CheckKind,
    /// Index into the algebra basis (or into the dual families for
    /// [`CheckKind::DualElementOutsideAlgebra`]).
    pub element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub elements_checked: usize,
    pub failure: Option<Counterexample>,
}

impl FrobeniusSystem {
    /// Assembles a system without verifying it. Rejects empty or unequal
    /// dual families, misshapen `E`, and dual elements outside the algebra.
    pub fn new(
        algebra: SubalgebraBasis,
        base: Base,
        expectation: LinearMapMat,
        x: Vec<Mat>,
        y: Vec<Mat>,
    ) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::DegenerateSystem);
        }
        if x.len() != y.len() {
            return Err(Error::SizeMismatch(format!(
                "{} X elements vs {} Y elements",
                x.len(),
                y.len()
            )));
        }
        let n = algebra.ambient();
        let target = match &base {
            Base::Ground => (1, 1),
            Base::Embedded(b) => {
                algebra.field().ensure_same(&b.field())?;
                if b.ambient() != n {
                    return Err(Error::SizeMismatch("base ambient".into()));
                }
                (n, n)
            }
        };
        if expectation.source != (n, n) || expectation.target != target {
            return Err(Error::SizeMismatch(format!(
                "expectation {:?} -> {:?}",
                expectation.source, expectation.target
            )));
        }
        algebra.field().ensure_same(&expectation.action.field())?;
        for m in x.iter().chain(&y) {
            algebra.field().ensure_same(&m.field())?;
            if m.shape() != (n, n) {
                return Err(Error::SizeMismatch("dual element shape".into()));
            }
        }
        Ok(FrobeniusSystem {
            algebra,
            base,
            expectation,
            x,
            y,
            verified: false,
        })
    }

    pub fn algebra(&self) -> &SubalgebraBasis {
        &self.algebra
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn expectation(&self) -> &LinearMapMat {
        &self.expectation
    }

    pub fn x(&self) -> &[Mat] {
        &self.x
    }

    pub fn y(&self) -> &[Mat] {
        &self.y
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn ambient(&self) -> usize {
        self.algebra.ambient()
    }

    pub fn pairs(&self) -> usize {
        self.x.len()
    }

    /// True once [`Self::verify`] has passed on this value.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `E(a)` as an element of the ambient algebra (`E(a) * I` for the
    /// ground field).
    pub fn expect(&self, a: &Mat) -> Mat {
        let v = self.expectation.apply(a);
        match self.base {
            Base::Ground => Mat::scalar(v.get(0, 0), self.ambient()),
            Base::Embedded(_) => v,
        }
    }

    /// Basis of the base algebra inside the ambient `M_n(F)`.
    pub fn base_elements(&self) -> Vec<Mat> {
        match &self.base {
            Base::Ground => vec![Mat::identity(self.field(), self.ambient())],
            Base::Embedded(b) => b.elements().to_vec(),
        }
    }

    /// Runs [`verify_system`] and records the outcome.
    pub fn verify(&mut self) -> VerificationReport {
        let report = verify_system(self);
        self.verified = report.passed;
        report
    }

    fn verified(mut self) -> Self {
        let report = self.verify();
        debug_assert!(report.passed, "constructed system failed: {report:?}");
        self
    }
}

/// Exact check of the Frobenius-system axioms on every algebra basis
/// element: `E(a)` lands in the base, both dual-basis identities hold and,
/// for embedded bases, `E` is a base bimodule map.
pub fn verify_system(s: &FrobeniusSystem) -> VerificationReport {
    let fail = |check, element, checked| VerificationReport {
        passed: false,
        elements_checked: checked,
        failure: Some(Counterexample { check, element }),
    };
    for (i, m) in s.x.iter().chain(&s.y).enumerate() {
        if !s.algebra.contains(m) {
            return fail(CheckKind::DualElementOutsideAlgebra, i, 0);
        }
    }
    let base_span = match &s.base {
        Base::Ground => None,
        Base::Embedded(b) => Some(b),
    };
    let n = s.ambient();
    let zero = Mat::zeros(s.field(), n, n);
    for (k, a) in s.algebra.elements().iter().enumerate() {
        if let Some(b) = base_span {
            if !b.contains(&s.expect(a)) {
                return fail(CheckKind::ExpectationOutsideBase, k, k);
            }
        }
        let left = s
            .x
            .iter()
            .zip(&s.y)
            .fold(zero.clone(), |acc, (x, y)| &acc + &(x * &s.expect(&(y * a))));
        if &left != a {
            return fail(CheckKind::LeftDualBasis, k, k);
        }
        let right = s
            .x
            .iter()
            .zip(&s.y)
            .fold(zero.clone(), |acc, (x, y)| &acc + &(&s.expect(&(a * x)) * y));
        if &right != a {
            return fail(CheckKind::RightDualBasis, k, k);
        }
        if let Some(b) = base_span {
            let ea = s.expect(a);
            for l in b.elements() {
                for r in b.elements() {
                    if s.expect(&(&(l * a) * r)) != &(l * &ea) * r {
                        return fail(CheckKind::Bimodule, k, k);
                    }
                }
            }
        }
    }
    VerificationReport {
        passed: true,
        elements_checked: s.algebra.dim(),
        failure: None,
    }
}

/// `S_n(J_n, F)/F`: basis `J^0, ..., J^{n-1}`, `E` reads the coefficient of
/// `J^{n-1}` (the `(1, n)` entry), `X_i = J^i`, `Y_i = J^{n-1-i}`.
pub fn jordan_block_system(field: FieldSpec, n: usize) -> Result<FrobeniusSystem> {
    if n == 0 {
        return Err(Error::SizeMismatch("empty Jordan block".into()));
    }
    let powers: Vec<Mat> = (0..n).map(|k| shift_matrix(field, n, n, k)).collect();
    let algebra = SubalgebraBasis::new(field, n, powers.clone())?;
    let e = LinearMapMat::from_fn(field, (n, n), (1, 1), |a| {
        Mat::scalar(a.get(0, n - 1), 1)
    });
    let y = powers.iter().rev().cloned().collect();
    Ok(FrobeniusSystem::new(algebra, Base::Ground, e, powers, y)?.verified())
}

/// `M_n(F)/F` with `E = tr`, `X_{(i,j)} = e_{i,j}`, `Y_{(i,j)} = e_{j,i}`.
pub fn full_matrix_system(field: FieldSpec, n: usize) -> Result<FrobeniusSystem> {
    if n == 0 {
        return Err(Error::SizeMismatch("empty matrix algebra".into()));
    }
    let mut units = Vec::with_capacity(n * n);
    let mut duals = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            units.push(matrix_unit(field, n, n, i, j)?);
            duals.push(matrix_unit(field, n, n, j, i)?);
        }
    }
    let algebra = SubalgebraBasis::new(field, n, units.clone())?;
    let e = LinearMapMat::from_fn(field, (n, n), (1, 1), |a| Mat::scalar(&a.trace(), 1));
    Ok(FrobeniusSystem::new(algebra, Base::Ground, e, units, duals)?.verified())
}

/// `M_m(T)/T` for a unital subalgebra `T ⊆ M_s(F)`, realized in `M_{ms}(F)`
/// with `T` embedded block-diagonally as `I_m ⊗ t`.
///
/// `E` is the block trace, and the dual pairs are the block units
/// `e_{i,j} ⊗ I_s`, `e_{j,i} ⊗ I_s`. Returns the system together with the
/// embedding `t ↦ I_m ⊗ t`.
pub fn matrix_ring_system(m: usize, inner: &SubalgebraBasis) -> Result<(FrobeniusSystem, LinearMapMat)> {
    if m == 0 {
        return Err(Error::SizeMismatch("empty matrix ring".into()));
    }
    let field = inner.field();
    let s = inner.ambient();
    let n = m * s;
    let id_m = Mat::identity(field, m);
    let id_s = Mat::identity(field, s);
    let mut elements = Vec::new();
    let mut x = Vec::new();
    let mut y = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            let eij = matrix_unit(field, m, m, i, j)?;
            for t in inner.elements() {
                elements.push(eij.kron(t)?);
            }
            x.push(eij.kron(&id_s)?);
            y.push(matrix_unit(field, m, m, j, i)?.kron(&id_s)?);
        }
    }
    let algebra = SubalgebraBasis::new(field, n, elements)?;
    let base_elements = inner
        .elements()
        .iter()
        .map(|t| id_m.kron(t))
        .collect::<Result<Vec<_>>>()?;
    let base = SubalgebraBasis::new(field, n, base_elements)?;
    let e = LinearMapMat::from_fn(field, (n, n), (n, n), |a| {
        let block_trace = (0..m).fold(Mat::zeros(field, s, s), |acc, i| {
            &acc + &a.block(i * s, i * s, s, s)
        });
        id_m.kron(&block_trace).expect("same field")
    });
    let embed = LinearMapMat::from_fn(field, (s, s), (n, n), |t| {
        id_m.kron(t).expect("same field")
    });
    let system = FrobeniusSystem::new(algebra, Base::Embedded(base), e, x, y)?.verified();
    Ok((system, embed))
}

/// Tower composition: from a system for `A/B` and one for `B/F`, where
/// `embed` carries the inner algebra onto `B`, builds a system for `A/F`
/// with `E = E_inner ∘ E_outer`, `X_{ik} = X_i embed(X'_k)` and
/// `Y_{ik} = embed(Y'_k) Y_i`.
pub fn compose_systems(
    outer: &FrobeniusSystem,
    inner: &FrobeniusSystem,
    embed: &LinearMapMat,
) -> Result<FrobeniusSystem> {
    let field = outer.field();
    field.ensure_same(&inner.field())?;
    if inner.base != Base::Ground {
        return Err(Error::NonGroundBase);
    }
    let n = outer.ambient();
    let s = inner.ambient();
    if embed.source != (s, s) || embed.target != (n, n) {
        return Err(Error::BaseMismatch);
    }
    let base_elements = outer.base_elements();
    let images: Vec<Mat> = inner.algebra.elements().iter().map(|t| embed.apply(t)).collect();
    let base_span = SpanCoords::new(field, base_elements.iter().map(Mat::vec).collect())?;
    if images.len() != base_span.dim() || images.iter().any(|m| base_span.coords(&m.vec()).is_none()) {
        return Err(Error::BaseMismatch);
    }

    // Outer E-values, lifted into the ambient space.
    let lift = match outer.base {
        Base::Ground => LinearMapMat::from_fn(field, (1, 1), (n, n), |c| Mat::scalar(c.get(0, 0), n)),
        Base::Embedded(_) => LinearMapMat::new((n, n), (n, n), Mat::identity(field, n * n))?,
    };
    // Pull embedded base elements back to the inner ambient.
    let image_span = SpanCoords::new(field, images.iter().map(Mat::vec).collect())
        .map_err(|_| Error::BaseMismatch)?;
    let inner_cols = inner.algebra.elements().iter().map(Mat::vec).collect::<Vec<_>>();
    let mut inner_basis = Mat::zeros(field, s * s, inner_cols.len());
    for (j, col) in inner_cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            inner_basis.set(i, j, v.clone());
        }
    }
    let pullback = LinearMapMat::new((n, n), (s, s), &inner_basis * &image_span.left_inverse())?;

    let e = inner
        .expectation
        .after(&pullback)?
        .after(&lift)?
        .after(&outer.expectation)?;

    let mut x = Vec::with_capacity(outer.pairs() * inner.pairs());
    let mut y = Vec::with_capacity(outer.pairs() * inner.pairs());
    for (xo, yo) in outer.x.iter().zip(&outer.y) {
        for (xi, yi) in inner.x.iter().zip(&inner.y) {
            x.push(xo * &embed.apply(xi));
            y.push(&embed.apply(yi) * yo);
        }
    }
    let mut system = FrobeniusSystem::new(outer.algebra.clone(), Base::Ground, e, x, y)?;
    system.verify();
    Ok(system)
}

/// Block-diagonal sum of two systems over the ground field:
/// `E(b1 ⊕ b2) = E1(b1) + E2(b2)` with dual pairs `(X ⊕ 0, Y ⊕ 0)` and
/// `(0 ⊕ X', 0 ⊕ Y')`.
pub fn direct_sum_systems(s1: &FrobeniusSystem, s2: &FrobeniusSystem) -> Result<FrobeniusSystem> {
    let field = s1.field();
    field.ensure_same(&s2.field())?;
    if s1.base != Base::Ground || s2.base != Base::Ground {
        return Err(Error::NonGroundBase);
    }
    let (n1, n2) = (s1.ambient(), s2.ambient());
    let n = n1 + n2;
    let z1 = Mat::zeros(field, n1, n1);
    let z2 = Mat::zeros(field, n2, n2);
    let left = |a: &Mat| a.direct_sum(&z2).expect("same field");
    let right = |a: &Mat| z1.direct_sum(a).expect("same field");

    let elements = s1
        .algebra
        .elements()
        .iter()
        .map(left)
        .chain(s2.algebra.elements().iter().map(right))
        .collect();
    let algebra = SubalgebraBasis::new(field, n, elements)?;
    let e = LinearMapMat::from_fn(field, (n, n), (1, 1), |a| {
        let v1 = s1.expectation.apply(&a.block(0, 0, n1, n1));
        let v2 = s2.expectation.apply(&a.block(n1, n1, n2, n2));
        &v1 + &v2
    });
    let x = s1.x.iter().map(left).chain(s2.x.iter().map(right)).collect();
    let y = s1.y.iter().map(left).chain(s2.y.iter().map(right)).collect();
    let mut system = FrobeniusSystem::new(algebra, Base::Ground, e, x, y)?;
    system.verify();
    Ok(system)
}

/// Transports a system for `S` to one for `u^{-1} S u`:
/// `X ↦ u^{-1} X u`, and `E'(b) = E(u b u^{-1})` (conjugated back by `u`
/// for embedded bases).
pub fn conjugate_system(s: &FrobeniusSystem, u: &Mat) -> Result<FrobeniusSystem> {
    let n = s.ambient();
    s.field().ensure_same(&u.field())?;
    if u.shape() != (n, n) {
        return Err(Error::SizeMismatch("conjugating matrix".into()));
    }
    let uinv = u.inverse()?;
    let conj = |a: &Mat| &(&uinv * a) * u;
    let algebra = SubalgebraBasis::new(
        s.field(),
        n,
        s.algebra.elements().iter().map(conj).collect(),
    )?;
    // vec(u b u^{-1}) = (u^{-T} ⊗ u) vec(b)
    let forward = uinv.transpose().kron(u)?;
    let (base, action) = match &s.base {
        Base::Ground => (Base::Ground, s.expectation.action.try_mul(&forward)?),
        Base::Embedded(b) => {
            let back = u.transpose().kron(&uinv)?;
            let conj_base =
                SubalgebraBasis::new(s.field(), n, b.elements().iter().map(conj).collect())?;
            (
                Base::Embedded(conj_base),
                back.try_mul(&s.expectation.action)?.try_mul(&forward)?,
            )
        }
    };
    let e = LinearMapMat::new((n, n), s.expectation.target, action)?;
    let x = s.x.iter().map(conj).collect();
    let y = s.y.iter().map(conj).collect();
    let mut system = FrobeniusSystem::new(algebra, base, e, x, y)?;
    system.verify();
    Ok(system)
}

/// Result of [`build_centralizer_system`].
#[derive(Debug, Clone)]
pub enum CentralizerSystem {
    Built {
        system: FrobeniusSystem,
        /// Block permutation used when the spec's eigenvalue groups were not
        /// contiguous; the system was conjugated by it.
        permutation: Option<Mat>,
    },
    EqualSizeViolation {
        eigenvalue: Scalar,
        sizes: Vec<usize>,
    },
}

/// Frobenius system for `S_n(⊕ J_{n_i}(λ_i), F)/F` when blocks sharing an
/// eigenvalue share a size.
///
/// A group of `m` blocks of size `s` has centralizer `M_m(S_s(J_s, F))`;
/// its system is the tower `M_m(T)/T` over `T/F` with `T = S_s(J_s, F)`.
/// Groups are then summed block-diagonally.
pub fn build_centralizer_system(spec: &JordanSpec) -> Result<CentralizerSystem> {
    if let Some((eigenvalue, sizes)) = spec.unequal_sizes() {
        return Ok(CentralizerSystem::EqualSizeViolation { eigenvalue, sizes });
    }
    let field = spec.field();
    let groups = spec.groups();
    if groups.is_empty() {
        return Err(Error::SizeMismatch("empty Jordan spec".into()));
    }
    let mut total: Option<FrobeniusSystem> = None;
    for (_, sizes) in &groups {
        let (m, s) = (sizes.len(), sizes[0]);
        let inner = jordan_block_system(field, s)?;
        let (outer, embed) = matrix_ring_system(m, inner.algebra())?;
        let tower = compose_systems(&outer, &inner, &embed)?;
        total = Some(match total {
            None => tower,
            Some(acc) => direct_sum_systems(&acc, &tower)?,
        });
    }
    let system = total.expect("at least one group");

    let grouped_order: Vec<usize> = groups
        .iter()
        .flat_map(|(eig, _)| {
            spec.blocks()
                .iter()
                .enumerate()
                .filter(move |(_, b)| &b.0 == eig)
                .map(|(i, _)| i)
        })
        .collect();
    if grouped_order.iter().enumerate().all(|(k, &i)| k == i) {
        return Ok(CentralizerSystem::Built {
            system,
            permutation: None,
        });
    }
    let u = block_permutation(spec, &grouped_order);
    let system = conjugate_system(&system, &u)?;
    Ok(CentralizerSystem::Built {
        system,
        permutation: Some(u),
    })
}

/// `u` with `u^{-1} J_grouped u = J_spec`, where `order[k]` is the spec
/// index of the k-th block in grouped order.
fn block_permutation(spec: &JordanSpec, order: &[usize]) -> Mat {
    let field = spec.field();
    let sizes: Vec<usize> = spec.blocks().iter().map(|b| b.1).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let n = spec.dimension();
    let mut u = Mat::zeros(field, n, n);
    let mut grouped_offset = 0;
    for &b in order {
        for t in 0..sizes[b] {
            u.set(grouped_offset + t, offsets[b] + t, field.one());
        }
        grouped_offset += sizes[b];
    }
    u
}
