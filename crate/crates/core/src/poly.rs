//! Dense univariate polynomials over a [`FieldSpec`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Polynomial with coefficients stored constant term first.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros. All coefficients must
    /// lie in `field`.
    pub fn new(field: FieldSpec, coeffs: Vec<Scalar>) -> Result<Self> {
        for c in &coeffs {
            field.ensure_same(&c.field())?;
        }
        let mut p = Poly { field, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Self {
        let mut p = Poly {
            field,
            coeffs: coeffs.iter().map(|&c| Scalar::from_i64(field, c)).collect(),
        };
        p.trim();
        p
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly {
            field: c.field(),
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::constant(field.one())
    }

    /// `x - root`.
    pub fn linear(root: &Scalar) -> Self {
        Poly {
            field: root.field(),
            coeffs: vec![-root, root.one_like()],
        }
    }

    pub fn monomial(c: Scalar, deg: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        p.trim();
        p
    }

    /// Normalizes to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &Poly, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Poly {
        self.assert_field(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| op(&self.coeff(i), &rhs.coeff(i))).collect();
        let mut p = Poly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.assert_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut p = Poly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(self.field), |acc, _| acc.mul(self))
    }

    fn assert_field(&self, rhs: &Poly) {
        assert!(
            self.field == rhs.field,
            "polynomial field mismatch: {} vs {}",
            self.field,
            rhs.field
        );
    }

    /// Euclidean division: `self = q * g + r` with `deg r < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.field.ensure_same(&g.field)?;
        let gdeg = g.degree().ok_or(Error::DivisionByZeroPoly)?;
        let lc_inv = g.coeffs[gdeg].inv()?;
        let mut r = self.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(gdeg)];
        while let Some(rdeg) = r.degree() {
            if rdeg < gdeg {
                break;
            }
            let shift = rdeg - gdeg;
            let c = &r.coeffs[rdeg] * &lc_inv;
            for (i, gc) in g.coeffs.iter().enumerate() {
                r.coeffs[i + shift] = &r.coeffs[i + shift] - &(&c * gc);
            }
            q[shift] = c;
            r.trim();
        }
        let mut q = Poly {
            field: self.field,
            coeffs: q,
        };
        q.trim();
        Ok((q, r))
    }

    /// Whether `g` divides `self` exactly.
    pub fn divides(g: &Poly, f: &Poly) -> Result<bool> {
        Ok(f.divrem(g)?.1.is_zero())
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn exact_div(&self, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, g: &Poly) -> Result<Poly> {
        self.field.ensure_same(&g.field)?;
        if self.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Scalar::from_i64(self.field, i as i64))
            .collect();
        let mut p = Poly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    /// `gcd(f, f') = 1`. Over Q and GF(p) this is exactly "no repeated
    /// irreducible factor".
    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self.gcd(&self.derivative())?.is_one())
    }

    /// Multiplicity of `root` as a zero of `self`.
    pub fn root_multiplicity(&self, root: &Scalar) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lin = Poly::linear(root);
        let mut f = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = f.divrem(&lin)?;
            if !r.is_zero() {
                return Ok(m);
            }
            f = q;
            m += 1;
        }
    }

    /// All roots lying in the base field, with multiplicities, sorted in
    /// canonical scalar order.
    pub fn rational_roots(&self) -> Result<Vec<(Scalar, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let candidates = match self.field.modulus() {
            Some(p) => (0..p)
                .map(|v| Scalar::from_i64(self.field, v as i64))
                .filter(|x| self.eval(x).is_zero())
                .collect(),
            None => self.rational_root_candidates(),
        };
        let mut roots = Vec::new();
        for r in candidates {
            let m = self.root_multiplicity(&r)?;
            if m > 0 {
                roots.push((r, m));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots.dedup_by(|a, b| a.0 == b.0);
        Ok(roots)
    }

    fn rational_root_candidates(&self) -> Vec<Scalar> {
        // primitive integer form
        let denoms = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            acc.lcm(c.as_rational().expect("rational coefficient").denom())
        });
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(denoms.clone())).to_integer())
            .collect();
        let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
        let mut out = Vec::new();
        if low > 0 {
            out.push(self.field.zero());
        }
        let a0 = ints[low].abs();
        let an = ints.last().unwrap().abs();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        for p in &ps {
            for q in &qs {
                let r = BigRational::new(p.clone(), q.clone());
                for cand in [r.clone(), -r] {
                    let s = Scalar::from_rational(self.field, &cand).unwrap();
                    if self.eval(&s).is_zero() {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let zero = self.field.zero();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            // residues are never negative; rationals may be
            let negative = self.field.is_rationals() && *c < zero;
            let mag = if negative { -c } else { c.clone() };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
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

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(q(), c)
    }

    #[test]
    fn divrem_examples() {
        let (qq, r) = p(&[-1, 0, 1]).divrem(&p(&[-1, 1])).unwrap();
        assert_eq!((qq, r), (p(&[1, 1]), Poly::zero(q())));

        let (qq, r) = p(&[0, 1]).divrem(&p(&[0, 0, 1])).unwrap();
        assert_eq!((qq, r), (Poly::zero(q()), p(&[0, 1])));

        let f2 = FieldSpec::prime(2).unwrap();
        let (qq, r) = Poly::from_i64s(f2, &[0, 1, 1])
            .divrem(&Poly::from_i64s(f2, &[1, 1]))
            .unwrap();
        assert_eq!(qq, Poly::from_i64s(f2, &[0, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_errors() {
        assert_eq!(p(&[1, 1]).divrem(&Poly::zero(q())), Err(Error::DivisionByZeroPoly));
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(
            p(&[1]).divrem(&Poly::from_i64s(f3, &[1])),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 0, 1])).unwrap(), p(&[1]));
        // x(x-1)^2 = x^3 - 2x^2 + x
        let f = p(&[0, 1, -2, 1]);
        assert_eq!(f.gcd(&f.derivative()).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&Poly::zero(q())).unwrap(), p(&[1, 2]).monic());
        assert_eq!(Poly::zero(q()).gcd(&Poly::zero(q())), Err(Error::BothZero));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert!(p(&[7]).derivative().is_zero());
        let f5 = FieldSpec::prime(5).unwrap();
        let x5 = Poly::monomial(f5.one(), 5);
        assert!(x5.derivative().is_zero());
        assert!(!x5.is_squarefree().unwrap());
    }

    #[test]
    fn rational_roots_examples() {
        let roots = p(&[0, 1, -2, 1]).rational_roots().unwrap();
        assert_eq!(
            roots,
            vec![(q().zero(), 1), (q().one(), 2)]
        );
        assert!(p(&[1, 0, 1]).rational_roots().unwrap().is_empty());

        let f5 = FieldSpec::prime(5).unwrap();
        let roots = Poly::from_i64s(f5, &[1, 0, 1]).rational_roots().unwrap();
        assert_eq!(
            roots,
            vec![(Scalar::from_i64(f5, 2), 1), (Scalar::from_i64(f5, 3), 1)]
        );
        assert_eq!(Poly::zero(q()).rational_roots(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn fractional_roots() {
        // (2x - 1)(3x + 2) = 6x^2 + x - 2
        let roots = p(&[-2, 1, 6]).rational_roots().unwrap();
        let r: Vec<String> = roots.iter().map(|(s, _)| s.to_string()).collect();
        assert_eq!(r, vec!["-2/3", "1/2"]);
    }

    #[test]
    fn display_signs() {
        let q = FieldSpec::rationals();
        assert_eq!(Poly::from_i64s(q, &[1, -2, 1]).to_string(), "x^2 - 2x + 1");
        assert_eq!(Poly::from_i64s(q, &[-1, 0, -3]).to_string(), "-3x^2 - 1");
        assert_eq!(Poly::from_i64s(FieldSpec::prime(5).unwrap(), &[-1, 1]).to_string(), "x + 4");
    }
}
