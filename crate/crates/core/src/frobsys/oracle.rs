//! Is a finite-dimensional algebra Frobenius?
//!
//! With structure constants `b_i b_j = sum_k c_ijk b_k`, the algebra is
//! Frobenius iff `det G(φ)`, `G(φ)_ij = sum_k c_ijk φ_k`, is not the zero
//! polynomial in `φ_1, ..., φ_d`. Three stages, in order:
//!
//! 1. evaluate `det G` at seeded pseudorandom points (a nonzero value proves
//!    Frobenius);
//! 2. look for an ideal `L` with `dim L + dim ann(L) != d`, which no
//!    Frobenius algebra has;
//! 3. expand `det G` symbolically (only for `d <= SYMBOLIC_LIMIT`).

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::centralizer::SubalgebraBasis;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Mat;

/// Largest dimension for which the symbolic determinant is attempted.
pub const SYMBOLIC_LIMIT: usize = 10;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

const RANDOM_TRIALS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    IsFrobenius,
    NotFrobenius,
}

/// The stage that settled the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    RandomEvaluation,
    AnnihilatorCertificate,
    SymbolicDeterminant,
}

impl OracleMethod {
    pub fn name(self) -> &'static str {
        match self {
            OracleMethod::RandomEvaluation => "random_evaluation",
            OracleMethod::AnnihilatorCertificate => "annihilator_certificate",
            OracleMethod::SymbolicDeterminant => "symbolic_determinant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOutcome {
    pub verdict: OracleVerdict,
    pub method: OracleMethod,
}

impl OracleOutcome {
    pub fn is_frobenius(&self) -> bool {
        self.verdict == OracleVerdict::IsFrobenius
    }
}

/// [`frobenius_algebra_oracle_seeded`] with [`DEFAULT_SEED`].
pub fn frobenius_algebra_oracle(basis: &SubalgebraBasis) -> Result<OracleOutcome> {
    frobenius_algebra_oracle_seeded(basis, DEFAULT_SEED)
}

pub fn frobenius_algebra_oracle_seeded(basis: &SubalgebraBasis, seed: u64) -> Result<OracleOutcome> {
    let constants = structure_constants(basis);
    let field = basis.field();
    let done = |verdict, method| Ok(OracleOutcome { verdict, method });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hit = match field.modulus() {
        None => (0..RANDOM_TRIALS).any(|_| rational_trial(&constants, field, &mut rng)),
        Some(p) => {
            let ext = ExtField::new(p, &mut rng);
            (0..RANDOM_TRIALS).any(|_| ext.trial(&constants, &mut rng))
        }
    };
    if hit {
        return done(OracleVerdict::IsFrobenius, OracleMethod::RandomEvaluation);
    }
    let traces: Vec<Scalar> = basis.elements().iter().map(Mat::trace).collect();
    if let Some(cert) = annihilator_certificate(&constants, field, &traces) {
        debug_assert!(certificate_holds(&constants, field, &cert));
        return done(OracleVerdict::NotFrobenius, OracleMethod::AnnihilatorCertificate);
    }
    let d = constants.len();
    if d > SYMBOLIC_LIMIT {
        return Err(Error::DimensionTooLarge(d, SYMBOLIC_LIMIT));
    }
    let verdict = if symbolic_determinant(&constants, field).is_empty() {
        OracleVerdict::NotFrobenius
    } else {
        OracleVerdict::IsFrobenius
    };
    done(verdict, OracleMethod::SymbolicDeterminant)
}

/// `c[i][j][k]`: coefficient of `b_k` in `b_i b_j`.
type Constants = Vec<Vec<Vec<Scalar>>>;

fn structure_constants(basis: &SubalgebraBasis) -> Constants {
    let e = basis.elements();
    e.iter()
        .map(|a| {
            e.iter()
                .map(|b| {
                    basis
                        .coords(&(a * b))
                        .expect("basis spans a multiplicatively closed space")
                })
                .collect()
        })
        .collect()
}

fn rational_trial(c: &Constants, field: FieldSpec, rng: &mut ChaCha8Rng) -> bool {
    let d = c.len();
    let phi: Vec<Scalar> = (0..d)
        .map(|_| Scalar::from_i64(field, rng.gen_range(-1000..=1000)))
        .collect();
    let rows = c
        .iter()
        .map(|ci| {
            ci.iter()
                .map(|cij| {
                    cij.iter()
                        .zip(&phi)
                        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
                })
                .collect()
        })
        .collect();
    Mat::from_rows(field, rows).expect("square").rank() == d
}

// ---------------------------------------------------------------------------
// GF(p^k), large enough that random evaluation rarely hits a root.

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Dense polynomials over GF(p), constant term first, trimmed.
mod fp_poly {
    use super::{mulmod, powmod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let inv = powmod(m[dm], p - 2, p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let f = mulmod(*r.last().unwrap(), inv, p);
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mulmod(f, mi, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^i) mod m` for `i = 1, 2, ...`, starting from `h = x^(p^(i-1))`.
    pub fn frobenius_step(h: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut base = h.to_vec();
        let mut acc = vec![1u64];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod_poly(&acc, &base, m, p);
            }
            base = mulmod_poly(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }
}

struct ExtField {
    p: u64,
    /// Monic irreducible of degree `k`.
    modulus: Vec<u64>,
}

impl ExtField {
    /// Picks `k` with `p^k >= 2^24` and a random monic irreducible modulus.
    fn new(p: u64, rng: &mut ChaCha8Rng) -> Self {
        let mut k = 1usize;
        let mut size = p as u128;
        while size < (1 << 24) {
            k += 1;
            size *= p as u128;
        }
        loop {
            let mut m: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            m.push(1);
            if Self::is_irreducible(&m, p) {
                return ExtField { p, modulus: m };
            }
        }
    }

    /// Ben-Or: no factor of degree `<= k/2`.
    fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = m.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..k / 2 {
            h = fp_poly::frobenius_step(&h, m, p);
            let g = fp_poly::gcd(m, &fp_poly::sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        fp_poly::mulmod_poly(a, b, &self.modulus, self.p)
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        fp_poly::sub(a, b, self.p)
    }

    fn inv(&self, a: &[u64]) -> Vec<u64> {
        // a^(q-2) with q = p^k
        let q = (self.p as u128).pow(self.k() as u32);
        let mut e = q - 2;
        let mut base = a.to_vec();
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        fp_poly::trim((0..self.k()).map(|_| rng.gen_range(0..self.p)).collect())
    }

    fn trial(&self, c: &Constants, rng: &mut ChaCha8Rng) -> bool {
        let d = c.len();
        let p = self.p;
        let phi: Vec<Vec<u64>> = (0..d).map(|_| self.random(rng)).collect();
        let mut g: Vec<Vec<Vec<u64>>> = c
            .iter()
            .map(|ci| {
                ci.iter()
                    .map(|cij| {
                        let mut acc = vec![0u64; self.k()];
                        for (x, f) in cij.iter().zip(&phi) {
                            let x = x.residue().expect("prime field");
                            for (a, &fi) in acc.iter_mut().zip(f) {
                                *a = (*a + mulmod(x, fi, p)) % p;
                            }
                        }
                        fp_poly::trim(acc)
                    })
                    .collect()
            })
            .collect();
        // full rank by elimination
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| !g[r][col].is_empty()) else {
                return false;
            };
            g.swap(col, piv);
            let inv = self.inv(&g[col][col]);
            for r in col + 1..d {
                if g[r][col].is_empty() {
                    continue;
                }
                let f = self.mul(&g[r][col], &inv);
                for j in col..d {
                    let t = self.mul(&f, &g[col][j]);
                    g[r][j] = self.sub(&g[r][j], &t);
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Annihilator certificate.

fn span_basis(vectors: Vec<Vec<Scalar>>, d: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut rows = vectors;
    let pivots = crate::matrix::rref(&mut rows, d);
    rows.truncate(pivots.len());
    rows
}

/// `sum_ij x_i y_j c_ij`
fn product(c: &Constants, field: FieldSpec, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let d = c.len();
    let mut out = vec![field.zero(); d];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let f = xi * yj;
            for (o, cijk) in out.iter_mut().zip(&c[i][j]) {
                if !cijk.is_zero() {
                    *o = &*o + &(&f * cijk);
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// `{y : S y = 0}` (`Side::Left`) or `{y : y S = 0}` (`Side::Right`) for a
/// subspace `S`. For a left ideal `S` the first is a right ideal, and
/// symmetrically.
fn annihilator(c: &Constants, field: FieldSpec, ideal: &[Vec<Scalar>], side: Side) -> Vec<Vec<Scalar>> {
    let d = c.len();
    let mut eqs = Vec::new();
    for l in ideal {
        // column j of the equation block: l * b_j (or b_j * l)
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                let mut e = vec![field.zero(); d];
                e[j] = field.one();
                match side {
                    Side::Left => product(c, field, l, &e),
                    Side::Right => product(c, field, &e, l),
                }
            })
            .collect();
        for k in 0..d {
            eqs.push((0..d).map(|j| cols[j][k].clone()).collect::<Vec<_>>());
        }
    }
    if eqs.is_empty() {
        return (0..d)
            .map(|j| {
                let mut e = vec![field.zero(); d];
                e[j] = field.one();
                e
            })
            .collect();
    }
    Mat::from_rows(field, eqs).expect("rectangular").kernel_basis()
}

/// One-sided ideal generated by `x`: `A x` (left) or `x A` (right).
fn principal(c: &Constants, field: FieldSpec, x: &[Scalar], side: Side) -> Vec<Vec<Scalar>> {
    let d = c.len();
    let gens = (0..d)
        .map(|i| {
            let mut e = vec![field.zero(); d];
            e[i] = field.one();
            match side {
                Side::Left => product(c, field, &e, x),
                Side::Right => product(c, field, x, &e),
            }
        })
        .collect();
    span_basis(gens, d)
}

/// Proof that no functional is nondegenerate, found among small generators
/// (basis elements and pairwise sums). Two kinds are tried:
///
/// * a one-sided ideal `L` with `dim L + dim ann(L) != d`; in a Frobenius
///   algebra `ann(L)` is the orthogonal of `L`;
/// * subspaces `V, W` with `V W = 0` and `dim V + dim W > d`; then
///   `φ(V W) = 0` forces a kernel for every `φ`.
/// `traces[k]` is the trace of `b_k` on whatever module the algebra came with.
fn annihilator_certificate(c: &Constants, field: FieldSpec, traces: &[Scalar]) -> Option<Certificate> {
    let d = c.len();
    let unit = |i: usize| {
        let mut e = vec![field.zero(); d];
        e[i] = field.one();
        e
    };
    // Low-rank elements make the best witnesses; powers of the radical are
    // full of them, so try those first, deepest power first.
    let mut generators: Vec<Vec<Scalar>> = Vec::new();
    for power in radical_powers(c, field, traces).iter().rev() {
        let mut sum = vec![field.zero(); d];
        for v in power {
            sum = sum.iter().zip(v).map(|(a, b)| a + b).collect();
        }
        generators.push(sum);
        generators.extend(power.iter().cloned());
    }
    generators.extend((0..d).map(unit));
    for i in 0..d {
        for j in i + 1..d {
            let mut e = unit(i);
            e[j] = field.one();
            generators.push(e);
        }
    }
    let flip = |s: Side| if s == Side::Left { Side::Right } else { Side::Left };
    for x in &generators {
        for side in [Side::Left, Side::Right] {
            // V = {v : v x = 0} (or x v = 0), W = its annihilator on the other side
            let v = annihilator(c, field, std::slice::from_ref(x), flip(side));
            let w = annihilator(c, field, &v, side);
            if v.len() + w.len() > d {
                let (left, right) = if side == Side::Left { (v, w) } else { (w, v) };
                return Some(Certificate::Compression { left, right });
            }
            let mut ideal = principal(c, field, x, side);
            let mut s = side;
            for _ in 0..3 {
                let ann = annihilator(c, field, &ideal, s);
                if ideal.len() + ann.len() != d {
                    return Some(Certificate::Ideal { side: s, ideal });
                }
                ideal = ann;
                s = flip(s);
            }
        }
    }
    None
}

enum Certificate {
    Ideal {
        side: Side,
        ideal: Vec<Vec<Scalar>>,
    },
    /// `left * right = 0`.
    Compression {
        left: Vec<Vec<Scalar>>,
        right: Vec<Vec<Scalar>>,
    },
}

/// `T, T^2, ...` (nonzero powers only) for `T = {x : tr(x y) = 0 for all y}`.
/// For a faithful module in characteristic 0 `T` is the Jacobson radical;
/// otherwise it is only a heuristic source of candidates.
fn radical_powers(c: &Constants, field: FieldSpec, traces: &[Scalar]) -> Vec<Vec<Vec<Scalar>>> {
    let d = c.len();
    let form: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    c[i][j]
                        .iter()
                        .zip(traces)
                        .fold(field.zero(), |acc, (x, t)| &acc + &(x * t))
                })
                .collect()
        })
        .collect();
    let t = Mat::from_rows(field, form).expect("square").kernel_basis();
    let mut powers = Vec::new();
    let mut current = t.clone();
    while !current.is_empty() && powers.len() < d {
        powers.push(current.clone());
        let products = current
            .iter()
            .flat_map(|a| t.iter().map(move |b| (a, b)))
            .map(|(a, b)| product(c, field, a, b))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let next = span_basis(products, d);
        if next.len() == current.len() {
            break;
        }
        current = next;
    }
    powers
}

/// Re-checks a certificate from scratch.
fn certificate_holds(c: &Constants, field: FieldSpec, cert: &Certificate) -> bool {
    let d = c.len();
    let rank = |vs: &[Vec<Scalar>]| span_basis(vs.to_vec(), d).len();
    let all_zero = |v: &[Scalar]| v.iter().all(Scalar::is_zero);
    match cert {
        Certificate::Compression { left, right } => {
            rank(left) + rank(right) > d
                && left.iter().all(|a| right.iter().all(|b| all_zero(&product(c, field, a, b))))
        }
        Certificate::Ideal { side, ideal } => {
            let ann = annihilator(c, field, ideal, *side);
            rank(ideal) + ann.len() != d
        }
    }
}

// ---------------------------------------------------------------------------
// Symbolic determinant by cofactor expansion over column subsets.

/// Sparse polynomial: exponent vector to nonzero coefficient.
type MvPoly = BTreeMap<Vec<u8>, Scalar>;

fn mul_linear(form: &[Scalar], p: &MvPoly, sign: bool, out: &mut MvPoly) {
    for (k, a) in form.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (mono, coef) in p {
            let mut m = mono.clone();
            m[k] += 1;
            let mut t = a * coef;
            if sign {
                t = -t;
            }
            let entry = out.entry(m).or_insert_with(|| t.zero_like());
            *entry = &*entry + &t;
        }
    }
    out.retain(|_, v| !v.is_zero());
}

/// `det G(φ)` as a sparse polynomial in `d` variables (empty map = zero).
fn symbolic_determinant(c: &Constants, field: FieldSpec) -> MvPoly {
    let d = c.len();
    // Layer r holds minors of rows 0..r on every r-subset of columns.
    let mut layer: HashMap<u32, MvPoly> = HashMap::new();
    layer.insert(0, BTreeMap::from([(vec![0u8; d], field.one())]));
    for r in 0..d {
        let subsets: Vec<u32> = (0u32..1 << d)
            .filter(|s| s.count_ones() as usize == r + 1)
            .collect();
        let next: HashMap<u32, MvPoly> = subsets
            .par_iter()
            .map(|&s| {
                let mut acc = MvPoly::new();
                let mut pos = 0;
                for j in 0..d {
                    if s & (1 << j) == 0 {
                        continue;
                    }
                    if let Some(minor) = layer.get(&(s & !(1 << j))) {
                        mul_linear(&c[r][j], minor, pos % 2 == 1, &mut acc);
                    }
                    pos += 1;
                }
                (s, acc)
            })
            .filter(|(_, p)| !p.is_empty())
            .collect();
        layer = next;
    }
    layer.remove(&((1u32 << d) - 1)).unwrap_or_default()
}
