//! Exact scalars: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient field. Prime characteristics must fit in a machine word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 2 && primal_check::miller_rabin(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::CompositeCharacteristic(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    /// Image of an integer under the canonical ring map.
    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(self, numer: i64, denom: i64) -> Result<Scalar> {
        let d = self.from_i64(denom).checked_inv()?;
        self.from_i64(numer).checked_mul(&d)
    }

    /// Short label used in reports: `Q` or `F<p>`.
    pub fn label(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("F{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Accepts `q`, `rational`, `f<p>` and a bare integer `p` (case-insensitive).
impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" {
            return Ok(Field::Rational);
        }
        let digits = t.strip_prefix('f').unwrap_or(&t);
        let p: u64 = digits.parse().map_err(|_| Error::InvalidFieldSpec(s.to_string()))?;
        if p < 2 {
            return Err(Error::InvalidFieldSpec(s.to_string()));
        }
        Field::prime(p)
    }
}

/// Exact field element. Rationals are kept reduced with positive denominator;
/// residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.checked_add(&rhs.neg_ref())
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Residue {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                })
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch);
        }
        self.checked_mul(&rhs.checked_inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiply by an integer without leaving the field.
    pub fn scale_i64(&self, n: i64) -> Scalar {
        self * &self.field().from_i64(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// The operator impls panic on mixed fields. Values built through one algebra
// always share its field, so mixing indicates a programming error.

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn make_field_examples() {
        assert_eq!("rational".parse::<Field>().unwrap().characteristic(), 0);
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!(Field::prime(5).unwrap().characteristic(), 5);
        assert_eq!("f5".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!(Field::prime(4), Err(Error::CompositeCharacteristic(4)));
        assert_eq!("f4".parse::<Field>(), Err(Error::CompositeCharacteristic(4)));
        assert!(matches!("f1".parse::<Field>(), Err(Error::InvalidFieldSpec(_))));
        assert!(matches!("z".parse::<Field>(), Err(Error::InvalidFieldSpec(_))));
    }

    #[test]
    fn inverses() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.from_i64(2).checked_inv().unwrap(), f3.from_i64(2));
        let q = Field::Rational;
        let two_thirds = q.from_ratio(2, 3).unwrap();
        assert_eq!(two_thirds.checked_inv().unwrap(), q.from_ratio(3, 2).unwrap());
        assert_eq!(q.zero().checked_inv(), Err(Error::DivisionByZero));
        assert_eq!(f3.zero().checked_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Field::Prime(3).one();
        let b = Field::Prime(5).one();
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.checked_mul(&Field::Rational.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn negative_integers_reduce_into_range() {
        let f7 = Field::Prime(7);
        assert_eq!(f7.from_i64(-1).as_residue(), Some(6));
        assert_eq!(f7.from_i64(-14).as_residue(), Some(0));
        assert_eq!((-f7.from_i64(3)).as_residue(), Some(4));
    }

    #[test]
    fn rationals_stay_normalized() {
        let q = Field::Rational;
        let x = q.from_ratio(6, -4).unwrap();
        let r = x.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        // No overflow on large products.
        let big = q.from_i64(i64::MAX);
        let sq = &big * &big;
        assert_eq!(
            sq.as_rational().unwrap().numer(),
            &(BigInt::from(i64::MAX) * BigInt::from(i64::MAX))
        );
    }

    fn field_axioms(f: Field, a: i64, b: i64, c: i64, d: i64) {
        let x = f.from_i64(a);
        let y = f.from_ratio(b, if d == 0 { 1 } else { d }).unwrap();
        let z = f.from_i64(c);
        assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        assert_eq!(&x + &y, &y + &x);
        let same = x.clone();
        assert!((&x - &same).is_zero());
        if !y.is_zero() {
            assert!((&y * &y.checked_inv().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -50i64..50) {
            field_axioms(Field::Rational, a, b, c, d);
        }

        #[test]
        fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65537]),
                              a in any::<i64>(), b in any::<i64>(), c in any::<i64>(), d in any::<i64>()) {
            // d must be a unit mod p
            let d = if (d as i128).rem_euclid(p as i128) == 0 { 1 } else { d };
            field_axioms(Field::Prime(p), a, b, c, d);
        }
    }
}
