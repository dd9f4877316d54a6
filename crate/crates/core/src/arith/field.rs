use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The residue field k of the local ring.
///
/// `Prime(p)` requires an odd prime below 2^32 so that products of residues
/// fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// Default prime for fast runs.
pub const DEFAULT_PRIME: u64 = 65537;

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 3 || p >= (1 << 32) || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not an odd prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElem::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElem::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElem::Prime {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field; fails when the denominator vanishes.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Parse(format!("denominator {den} vanishes in {self}")));
        }
        Ok(self.from_bigint(num).mul(&d.inv()))
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Field::Rational)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `F65537`, `F<65537>` and `F_65537`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(Field::Rational);
        }
        let rest = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Input(format!("unknown field {s:?}")))?;
        let digits = rest
            .trim_start_matches(['_', '<'])
            .trim_end_matches('>');
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Input(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of [`Field`]. Rationals are kept in lowest terms with positive
/// denominator; residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Prime { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Prime { value: a, modulus: p }, FieldElem::Prime { value: b, modulus: q })
                if p == q =>
            {
                FieldElem::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Prime { value, modulus } => FieldElem::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Prime { value: a, modulus: p }, FieldElem::Prime { value: b, modulus: q })
                if p == q =>
            {
                FieldElem::Prime { value: (a * b) % p, modulus: *p }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(a.recip()),
            FieldElem::Prime { value, modulus } => FieldElem::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Exact comparison of fields, used by checked polynomial arithmetic.
    pub fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(a) => a.is_negative(),
            FieldElem::Prime { .. } => false,
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F65537".parse::<Field>().unwrap(), Field::Prime(65537));
        assert_eq!("F<5>".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("F4".parse::<Field>().is_err());
        assert!("F2".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(65537);
        for n in [1i64, 2, 3, 1000, -7] {
            let a = f.from_i64(n);
            assert!(a.mul(&a.inv()).is_one());
        }
    }

    #[test]
    fn rationals_stay_canonical() {
        let f = Field::Rational;
        let a = f.from_ratio(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        match a {
            FieldElem::Rational(q) => {
                assert_eq!(*q.numer(), BigInt::from(-2));
                assert_eq!(*q.denom(), BigInt::from(3));
            }
            _ => unreachable!(),
        }
        assert!(Field::Prime(5)
            .from_ratio(&BigInt::from(1), &BigInt::from(10))
            .is_err());
    }
}
