//! Exact scalars over Q and prime fields GF(p).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// One of the two supported coefficient fields.
///
/// Construct with [`FieldSpec::rationals`] or [`FieldSpec::prime`]; the
/// latter checks primality so a `FieldSpec` in hand is always a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    modulus: Option<u64>,
}

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec { modulus: None }
    }

    /// GF(p). Fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec { modulus: Some(p) })
        } else {
            Err(Error::UnsupportedField(format!(
                "GF({p}): modulus is not prime"
            )))
        }
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus.is_none()
    }

    /// The prime modulus, or `None` for Q.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// 0 for Q, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        self.modulus.unwrap_or(0)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, *other))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Fp { value: u64, p: u64 },
}

/// An element of Q or GF(p) in canonical form.
///
/// Rationals are kept in lowest terms with a positive denominator and
/// residues in `[0, p)`, so derived equality is mathematical equality.
/// Arithmetic operators panic when the operands live in different fields;
/// the matrix and polynomial layers check fields before combining values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    repr: Repr,
}

impl Scalar {
    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field.modulus {
            None => Scalar {
                repr: Repr::Q(BigRational::from_integer(BigInt::from(v))),
            },
            Some(p) => Scalar {
                repr: Repr::Fp {
                    value: v.rem_euclid(p as i64) as u64,
                    p,
                },
            },
        }
    }

    /// Maps a rational number into `field`. Over GF(p) the denominator
    /// must be a unit.
    pub fn from_rational(field: FieldSpec, q: &BigRational) -> Result<Self> {
        match field.modulus {
            None => Ok(Scalar {
                repr: Repr::Q(q.clone()),
            }),
            Some(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().expect("residue fits");
                let den = q.denom().mod_floor(&pb).to_u64().expect("residue fits");
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let value = mul_mod(num, inv_mod(den, p), p);
                Ok(Scalar {
                    repr: Repr::Fp { value, p },
                })
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.repr {
            Repr::Q(_) => FieldSpec::rationals(),
            Repr::Fp { p, .. } => FieldSpec { modulus: Some(*p) },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_zero(),
            Repr::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Q(q) => q.is_one(),
            Repr::Fp { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    /// The rational value, for Q scalars.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Q(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    /// The residue in `[0, p)`, for GF(p) scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Q(_) => None,
            Repr::Fp { value, .. } => Some(*value),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.repr {
            Repr::Q(q) => Scalar {
                repr: Repr::Q(q.recip()),
            },
            Repr::Fp { value, p } => Scalar {
                repr: Repr::Fp {
                    value: inv_mod(*value, *p),
                    p: *p,
                },
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Parses `"num"`, `"-num"` or `"num/den"` into `field`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Scalar::from_rational(field, &q)
    }

    fn check(&self, rhs: &Scalar) {
        let (a, b) = (self.field(), rhs.field());
        assert!(a == b, "scalar field mismatch: {a} vs {b}");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Canonical scalar order: rationals by value, residues ascending.
/// Scalars from different fields are ordered by field first.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Q(a), Repr::Q(b)) => a.cmp(b),
            (Repr::Fp { value: a, p: pa }, Repr::Fp { value: b, p: pb }) => {
                pa.cmp(pb).then(a.cmp(b))
            }
            (Repr::Q(_), Repr::Fp { .. }) => Ordering::Less,
            (Repr::Fp { .. }, Repr::Q(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Q(a), Repr::Q(b)) => Scalar {
                repr: Repr::Q(a + b),
            },
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Scalar {
                repr: Repr::Fp {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                },
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Q(a), Repr::Q(b)) => Scalar {
                repr: Repr::Q(a - b),
            },
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Scalar {
                repr: Repr::Fp {
                    value: ((*a as u128 + *p as u128 - *b as u128) % *p as u128) as u64,
                    p: *p,
                },
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Q(a), Repr::Q(b)) => Scalar {
                repr: Repr::Q(a * b),
            },
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Scalar {
                repr: Repr::Fp {
                    value: mul_mod(*a, *b, *p),
                    p: *p,
                },
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.repr {
            Repr::Q(a) => Scalar {
                repr: Repr::Q(-a),
            },
            Repr::Fp { value, p } => Scalar {
                repr: Repr::Fp {
                    value: (p - value) % p,
                    p: *p,
                },
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        Scalar::parse(FieldSpec::rationals(), s).unwrap()
    }

    #[test]
    fn canonical_rationals() {
        assert_eq!(q("2/4"), q("1/2"));
        assert_eq!(q("3/-6"), q("-1/2"));
        assert_eq!(q("-1/2").to_string(), "-1/2");
        assert_eq!(q("6/3").to_string(), "2");
    }

    #[test]
    fn prime_fields() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        let f5 = FieldSpec::prime(5).unwrap();
        let a = Scalar::from_i64(f5, 7);
        assert_eq!(a.residue(), Some(2));
        assert_eq!((&a * &a.inv().unwrap()), f5.one());
        assert_eq!(Scalar::parse(f5, "1/2").unwrap().residue(), Some(3));
        assert!(Scalar::parse(f5, "1/5").is_err());
        assert_eq!((-&a).residue(), Some(3));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn cross_field_arithmetic_panics() {
        let f3 = FieldSpec::prime(3).unwrap();
        let _ = &Scalar::from_i64(f3, 1) + &q("1");
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(q("0").inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn order_is_by_value() {
        let mut v = vec![q("3"), q("-1/2"), q("0")];
        v.sort();
        assert_eq!(v, vec![q("-1/2"), q("0"), q("3")]);
    }
}
