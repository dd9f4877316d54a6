//! Monomial ideals of `k[x,y]` as staircases, with Newton polygons for
//! integral closure, adjoints and multiplicities.

use std::fmt;

use crate::arith::{Field, Monomial, Poly, PolyMatrix};
use crate::error::{Error, Result};
use crate::trunc::TruncatedIdeal;

/// A nonzero monomial ideal, stored as its minimal generators sorted by
/// decreasing x-exponent (hence increasing y-exponent).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
    hull: NewtonPolygon,
}

/// Facet inequality `alpha*a + beta*b >= gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Facet {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl Facet {
    fn value(&self, a: i64, b: i64) -> i64 {
        self.alpha * a + self.beta * b
    }
}

/// Lower-left convex hull of the generators plus the positive quadrant.
/// `facets` holds the bounded edges followed by the two unbounded ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolygon {
    pub vertices: Vec<Monomial>,
    pub facets: Vec<Facet>,
}

fn cross(o: Monomial, p: Monomial, q: Monomial) -> i64 {
    let (ox, oy) = (o.a as i64, o.b as i64);
    (p.a as i64 - ox) * (q.b as i64 - oy) - (p.b as i64 - oy) * (q.a as i64 - ox)
}

impl NewtonPolygon {
    fn of(gens: &[Monomial]) -> Self {
        // Monotone chain over points sorted by decreasing a, keeping only the
        // boundary facing the origin.
        let mut vertices: Vec<Monomial> = Vec::new();
        for &g in gens {
            while vertices.len() >= 2 && cross(vertices[vertices.len() - 2], vertices[vertices.len() - 1], g) >= 0 {
                vertices.pop();
            }
            vertices.push(g);
        }
        let mut facets: Vec<Facet> = vertices
            .windows(2)
            .map(|w| {
                let alpha = w[1].b as i64 - w[0].b as i64;
                let beta = w[0].a as i64 - w[1].a as i64;
                let g = num_integer::gcd(alpha, beta);
                let (alpha, beta) = (alpha / g, beta / g);
                Facet { alpha, beta, gamma: alpha * w[0].a as i64 + beta * w[0].b as i64 }
            })
            .collect();
        let first = vertices[0];
        let last = *vertices.last().unwrap();
        facets.push(Facet { alpha: 0, beta: 1, gamma: first.b as i64 });
        facets.push(Facet { alpha: 1, beta: 0, gamma: last.a as i64 });
        NewtonPolygon { vertices, facets }
    }

    pub fn contains(&self, a: i64, b: i64) -> bool {
        self.facets.iter().all(|f| f.value(a, b) >= f.gamma)
    }

    pub fn interior_contains(&self, a: i64, b: i64) -> bool {
        self.facets.iter().all(|f| f.value(a, b) > f.gamma)
    }
}

fn minimalize(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort_by_key(|m| (std::cmp::Reverse(m.a), m.b));
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    // Sorted by decreasing a, then increasing b: an earlier entry can only
    // divide `m` if it has the same a, and `m` divides every earlier entry
    // with b at least its own.
    for m in ms {
        if out.last().is_some_and(|l: &Monomial| l.a == m.a) {
            continue;
        }
        while out.last().is_some_and(|l| l.b >= m.b) {
            out.pop();
        }
        out.push(m);
    }
    out
}

/// Operations of [`mono_ops`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoOp {
    Sum,
    Product,
    Intersect,
    Colon,
    Contains,
    Equals,
}

/// Result of [`mono_ops`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoResult {
    Ideal(MonomialIdeal),
    Bool(bool),
}

/// `colon(I, J) = {m : m*J ⊆ I}`; `contains(I, J)` tests `J ⊆ I`.
pub fn mono_ops(op: MonoOp, i: &MonomialIdeal, j: &MonomialIdeal) -> MonoResult {
    match op {
        MonoOp::Sum => MonoResult::Ideal(i.sum(j)),
        MonoOp::Product => MonoResult::Ideal(i.product(j)),
        MonoOp::Intersect => MonoResult::Ideal(i.intersect(j)),
        MonoOp::Colon => MonoResult::Ideal(i.colon(j)),
        MonoOp::Contains => MonoResult::Bool(i.contains(j)),
        MonoOp::Equals => MonoResult::Bool(i == j),
    }
}

impl MonomialIdeal {
    pub fn new(monos: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens = minimalize(monos.into_iter().collect());
        if gens.is_empty() {
            return Err(Error::ZeroIdeal("monomial ideal without generators".into()));
        }
        Ok(Self::from_minimal(gens))
    }

    fn from_minimal(gens: Vec<Monomial>) -> Self {
        let hull = NewtonPolygon::of(&gens);
        MonomialIdeal { gens, hull }
    }

    /// Ideal generated by `x^a y^b` for the given exponent pairs.
    pub fn from_exponents(pairs: &[(u32, u32)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, b)| Monomial::new(a, b)))
    }

    pub fn unit() -> Self {
        Self::from_minimal(vec![Monomial::ONE])
    }

    /// `m^n`.
    pub fn max_power(n: u32) -> Self {
        Self::from_minimal(Monomial::of_degree(n).collect())
    }

    /// The monomial ideal generated by monomial polynomials; `None` if some
    /// generator is not a monomial.
    pub fn from_polys(polys: &[Poly]) -> Option<Result<Self>> {
        let ms: Option<Vec<Monomial>> = polys.iter().filter(|p| !p.is_zero()).map(Poly::as_monomial).collect();
        ms.map(Self::new)
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn newton_polygon(&self) -> &NewtonPolygon {
        &self.hull
    }

    pub fn is_unit(&self) -> bool {
        self.gens[0] == Monomial::ONE
    }

    pub fn is_m_primary(&self) -> bool {
        self.gens[0].b == 0 && self.gens.last().unwrap().a == 0
    }

    /// Largest monomial dividing every generator.
    pub fn content(&self) -> Monomial {
        Monomial::new(self.gens.last().unwrap().a, self.gens[0].b)
    }

    pub fn contains_monomial(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|&m| self.contains_monomial(m))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::from_minimal(minimalize(self.gens.iter().chain(&other.gens).copied().collect()))
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let ms = self.gens.iter().flat_map(|&g| other.gens.iter().map(move |&h| g.mul(h))).collect();
        Self::from_minimal(minimalize(ms))
    }

    pub fn power(&self, n: u32) -> MonomialIdeal {
        (0..n).fold(Self::unit(), |acc, _| acc.product(self))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let ms = self.gens.iter().flat_map(|&g| other.gens.iter().map(move |&h| g.lcm(h))).collect();
        Self::from_minimal(minimalize(ms))
    }

    /// `(self : m)` for a monomial `m`.
    pub fn colon_monomial(&self, m: Monomial) -> MonomialIdeal {
        let ms = self
            .gens
            .iter()
            .map(|g| Monomial::new(g.a.saturating_sub(m.a), g.b.saturating_sub(m.b)))
            .collect();
        Self::from_minimal(minimalize(ms))
    }

    /// `(self : other) = {m : m * other ⊆ self}`.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        other
            .gens
            .iter()
            .map(|&g| self.colon_monomial(g))
            .reduce(|a, b| a.intersect(&b))
            .expect("nonempty generators")
    }

    /// `self = m * rest`, if `m` divides every generator.
    pub fn divide(&self, m: Monomial) -> Option<MonomialIdeal> {
        let ms: Option<Vec<Monomial>> = self.gens.iter().map(|g| g.div(m)).collect();
        ms.map(Self::from_minimal)
    }

    pub fn multiply(&self, m: Monomial) -> MonomialIdeal {
        Self::from_minimal(self.gens.iter().map(|g| g.mul(m)).collect())
    }

    /// Least `b` with `x^a y^b` in the closure of the points satisfying `pred`,
    /// scanning columns `a` in `a_lo..=a_hi`.
    fn column_minima(a_lo: u32, a_hi: u32, min_b: impl Fn(u32) -> Option<u32>) -> Vec<Monomial> {
        minimalize((a_lo..=a_hi).filter_map(|a| min_b(a).map(|b| Monomial::new(a, b))).collect())
    }

    /// Integral closure: monomials with exponent in the Newton polygon.
    pub fn integral_closure(&self) -> MonomialIdeal {
        let first = self.gens[0];
        let last = *self.gens.last().unwrap();
        let hull = &self.hull;
        Self::from_minimal(Self::column_minima(last.a, first.a, |a| {
            let mut b = first.b as i64;
            for f in hull.facets.iter().filter(|f| f.beta > 0) {
                b = b.max(ceil_div(f.gamma - f.alpha * a as i64, f.beta));
            }
            Some(b as u32)
        }))
    }

    pub fn is_integrally_closed(&self) -> bool {
        self.integral_closure() == *self
    }

    /// Adjoint via the lattice criterion `v + (1,1)` in the interior of the
    /// Newton polygon. Monomial content is factored out first, since
    /// `adj(x^c y^d I) = x^c y^d adj(I)`.
    pub fn adjoint(&self) -> Result<MonomialIdeal> {
        let content = self.content();
        let rest = self.divide(content).expect("content divides");
        if !rest.is_m_primary() {
            return Err(Error::Unsupported(format!("adjoint of the non-m-primary ideal {self}")));
        }
        if rest.is_unit() {
            return Ok(self.clone());
        }
        let hull = &rest.hull;
        let a_max = rest.gens[0].a;
        let adj = Self::from_minimal(Self::column_minima(0, a_max, |a| {
            let mut b = 0i64;
            for f in hull.facets.iter().filter(|f| f.beta > 0) {
                // beta*(b+1) > gamma - alpha*(a+1)
                b = b.max(floor_div(f.gamma - f.alpha * (a as i64 + 1), f.beta));
            }
            Some(b as u32)
        }));
        Ok(adj.multiply(content))
    }

    /// `adj^t(self)`.
    pub fn adjoint_iterate(&self, t: u32) -> Result<MonomialIdeal> {
        let mut acc = self.clone();
        for _ in 0..t {
            if acc.is_unit() {
                break;
            }
            acc = acc.adjoint()?;
        }
        Ok(acc)
    }

    /// `dim_k R/I`: lattice points under the staircase.
    pub fn colength(&self) -> Result<u64> {
        if !self.is_m_primary() {
            return Err(Error::NotMPrimary);
        }
        Ok(self
            .gens
            .windows(2)
            .map(|w| w[0].a as u64 * (w[1].b - w[0].b) as u64)
            .sum())
    }

    /// Least `t` with `m^t ⊆ I`, from the outer corners of the staircase.
    pub fn certificate(&self) -> u32 {
        if self.is_unit() {
            return 0;
        }
        self.gens.windows(2).map(|w| w[0].a + w[1].b - 1).max().unwrap_or(u32::MAX)
    }

    /// `e(I)`: twice the area between the axes and the Newton polygon.
    pub fn multiplicity(&self) -> Result<u64> {
        if !self.is_m_primary() {
            return Err(Error::NotMPrimary);
        }
        Ok(self
            .hull
            .vertices
            .windows(2)
            .map(|w| w[0].a as u64 * w[1].b as u64 - w[1].a as u64 * w[0].b as u64)
            .sum())
    }

    /// Bidiagonal presentation: column `i` is the syzygy between generators
    /// `i` and `i+1`.
    pub fn presentation(&self, field: Field) -> PolyMatrix {
        let s = self.gens.len();
        let mut a = PolyMatrix::zeros(field, s, s.saturating_sub(1));
        for (i, w) in self.gens.windows(2).enumerate() {
            a.set(i, i, Poly::xy(field, 0, w[1].b - w[0].b));
            a.set(i + 1, i, Poly::xy(field, w[0].a - w[1].a, 0).neg());
        }
        a
    }

    pub fn to_polys(&self, field: Field) -> Vec<Poly> {
        self.gens.iter().map(|&m| Poly::monomial(field, m)).collect()
    }

    pub fn to_truncated(&self, field: Field) -> Result<TruncatedIdeal> {
        TruncatedIdeal::new(field, self.to_polys(field))
    }

    /// ASCII staircase: rows by descending y-degree, `#` in the ideal, `.` outside.
    pub fn render_staircase(&self) -> String {
        let width = self.gens.iter().map(|m| m.a).max().unwrap_or(0) + 2;
        let height = self.gens.iter().map(|m| m.b).max().unwrap_or(0) + 2;
        let mut out = String::new();
        for b in (0..height).rev() {
            for a in 0..width {
                out.push(if self.contains_monomial(Monomial::new(a, b)) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

fn floor_div(n: i64, d: i64) -> i64 {
    num_integer::Integer::div_floor(&n, &d)
}

fn ceil_div(n: i64, d: i64) -> i64 {
    -floor_div(-n, d)
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

pub fn integral_closure_mono(i: &MonomialIdeal) -> MonomialIdeal {
    i.integral_closure()
}

pub fn adjoint_mono(i: &MonomialIdeal) -> Result<MonomialIdeal> {
    i.adjoint()
}

pub fn colength_mono(i: &MonomialIdeal) -> Result<u64> {
    i.colength()
}

pub fn multiplicity_mono(i: &MonomialIdeal) -> Result<u64> {
    i.multiplicity()
}

pub fn presentation_mono(i: &MonomialIdeal, field: Field) -> PolyMatrix {
    i.presentation(field)
}
