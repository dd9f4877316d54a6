use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::field::{Field, FieldElem};
use crate::error::Result;

/// `x^a y^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub const fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn degree(self) -> u32 {
        self.a + self.b
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b)
    }

    /// Componentwise `self <= other`, i.e. `self` divides `other`.
    pub fn divides(self, other: Monomial) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial::new(self.a.max(other.a), self.b.max(other.b))
    }

    pub fn gcd(self, other: Monomial) -> Monomial {
        Monomial::new(self.a.min(other.a), self.b.min(other.b))
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(self, other: Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial::new(self.a - other.a, self.b - other.b))
    }

    /// All monomials of total degree `d`, ordered by decreasing x-exponent.
    pub fn of_degree(d: u32) -> impl Iterator<Item = Monomial> {
        (0..=d).rev().map(move |a| Monomial::new(a, d - a))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = match self.a {
            0 => None,
            1 => Some("x".to_string()),
            a => Some(format!("x^{a}")),
        };
        let y = match self.b {
            0 => None,
            1 => Some("y".to_string()),
            b => Some(format!("y^{b}")),
        };
        match (x, y) {
            (None, None) => write!(f, "1"),
            (Some(x), None) => write!(f, "{x}"),
            (None, Some(y)) => write!(f, "{y}"),
            (Some(x), Some(y)) => write!(f, "{x}*{y}"),
        }
    }
}

/// Exact bivariate polynomial; no stored coefficient is ever zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Poly {
    pub fn zero(field: Field) -> Self {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: Field) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn monomial(field: Field, m: Monomial) -> Self {
        Poly::term(field.one(), m)
    }

    pub fn xy(field: Field, a: u32, b: u32) -> Self {
        Poly::monomial(field, Monomial::new(a, b))
    }

    pub fn term(c: FieldElem, m: Monomial) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { field, terms }
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = Poly::zero(field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Monomial) -> FieldElem {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Minimum total degree of the support; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(Monomial::ONE)
    }

    /// The single monomial of a one-term polynomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            c.is_one().then_some(*m)
        } else {
            None
        }
    }

    /// The gcd of the support monomials.
    pub fn monomial_content(&self) -> Option<Monomial> {
        self.terms.keys().copied().reduce(Monomial::gcd)
    }

    pub fn add_term(&mut self, m: Monomial, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                assert_eq!(c.field(), self.field, "field mismatch");
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(*n), &c.mul(d));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, d)| (*m, d.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, u: Monomial) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.mul(u), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, u: Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(u)?, c.clone());
        }
        Some(Poly { field: self.field, terms })
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncate(&self, n: u32) -> Poly {
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < n)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Divides by the leading coefficient (largest monomial) so that equal
    /// ideals of principal generators print identically. Over Q the result is
    /// scaled to coprime integer coefficients with positive leading term instead.
    pub fn normalized(&self) -> Poly {
        let Some((_, lc)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        match lc {
            FieldElem::Prime { .. } => self.scale(&lc.inv()),
            FieldElem::Rational(_) => {
                use num_integer::Integer;
                use num_rational::BigRational;
                let mut den_lcm = num_bigint::BigInt::one();
                let mut num_gcd = num_bigint::BigInt::from(0);
                for c in self.terms.values() {
                    if let FieldElem::Rational(q) = c {
                        den_lcm = den_lcm.lcm(q.denom());
                        num_gcd = num_gcd.gcd(q.numer());
                    }
                }
                let mut s = BigRational::new(den_lcm, num_gcd);
                if lc.is_negative() {
                    s = -s;
                }
                self.scale(&FieldElem::Rational(s))
            }
        }
    }

    /// Image over `F_p` of a polynomial over Q; `None` when a denominator
    /// vanishes mod `p` or the polynomial is already over a finite field.
    pub fn reduce_mod(&self, p: u64) -> Option<Poly> {
        let target = Field::Prime(p);
        let mut out = Poly::zero(target);
        for (m, c) in self.terms() {
            let FieldElem::Rational(q) = c else { return None };
            out.add_term(*m, &target.from_ratio(q.numer(), q.denom()).ok()?);
        }
        Some(out)
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other.field)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other.field)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other.field)?;
        Ok(self.mul(other))
    }

    pub fn try_scale(&self, c: &FieldElem) -> Result<Poly> {
        self.check_field(c.field())?;
        Ok(self.scale(c))
    }

    fn check_field(&self, other: Field) -> Result<()> {
        if self.field == other {
            Ok(())
        } else {
            Err(crate::Error::FieldMismatch(self.field, other))
        }
    }
}

/// One of the four checked polynomial operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Right operand of [`poly_arith`].
pub enum Operand<'a> {
    Poly(&'a Poly),
    Scalar(&'a FieldElem),
}

/// Checked arithmetic entry point. A scalar operand is only meaningful for
/// `Mul`, where it scales.
pub fn poly_arith(op: PolyOp, f: &Poly, g: Operand<'_>) -> Result<Poly> {
    match (op, g) {
        (PolyOp::Add, Operand::Poly(g)) => f.try_add(g),
        (PolyOp::Sub, Operand::Poly(g)) => f.try_sub(g),
        (PolyOp::Mul, Operand::Poly(g)) => f.try_mul(g),
        (PolyOp::Mul, Operand::Scalar(c)) => f.try_scale(c),
        (PolyOp::Add, Operand::Scalar(c)) => f.try_add(&Poly::constant(c.clone())),
        (PolyOp::Sub, Operand::Scalar(c)) => f.try_sub(&Poly::constant(c.clone())),
    }
}

impl fmt::Display for Poly {
    /// Terms from the largest monomial down, e.g. `x^2 - 3*x*y + 1/2*y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (std::cmp::Reverse(m.degree()), std::cmp::Reverse(m.a)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Poly {
        crate::arith::parse_poly(s, Field::Rational).unwrap()
    }

    #[test]
    fn cancellation() {
        assert_eq!(q("x+y").add(&q("-y")), q("x"));
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(q("x+y").mul(&q("x-y")), q("x^2-y^2"));
    }

    #[test]
    fn scale_over_f5() {
        let f = Field::Prime(5);
        let p = Poly::xy(f, 2, 0).scale(&f.from_i64(3));
        assert_eq!(p.to_string(), "3*x^2");
        assert!(p.scale(&f.from_i64(5)).is_zero());
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Poly::xy(Field::Rational, 1, 0);
        let b = Poly::xy(Field::Prime(7), 1, 0);
        assert!(matches!(
            poly_arith(PolyOp::Add, &a, Operand::Poly(&b)),
            Err(crate::Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn order_and_truncation() {
        let p = q("x^2 - y^3 + x*y^4");
        assert_eq!(p.order(), Some(2));
        assert_eq!(p.degree(), Some(5));
        assert_eq!(p.truncate(3), q("x^2"));
        assert_eq!(Poly::zero(Field::Rational).order(), None);
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let p = q("2/3*x^2 - 4*x*y");
        assert_eq!(p.normalized(), p.scale(&Field::Rational.from_i64(-7)).normalized());
    }
}
