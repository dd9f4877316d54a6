//! Echelon row spaces over Q (fraction-free, primitive integer rows) and F_p.
//!
//! Pivots are the *lowest* nonzero column of each row. With columns ordered by
//! total degree this makes truncation to lower degrees a matter of dropping
//! rows and columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{pow_mod, Field, FieldElem};

/// Sparse vector `(column, value)` with strictly increasing columns.
pub type SparseVec = Vec<(usize, FieldElem)>;

trait Elim {
    type E: Clone + PartialEq + std::fmt::Debug;
    /// Accumulated factor a reduced vector has been multiplied by.
    type S: Clone;

    fn zero(&self) -> Self::E;
    fn is_zero(e: &Self::E) -> bool;
    /// Converts to the internal representation; also returns the factor the
    /// vector was multiplied by.
    fn import(&self, v: &[(usize, FieldElem)]) -> (Vec<(usize, Self::E)>, Self::E);
    fn export(&self, e: &Self::E) -> FieldElem;
    /// Clears column `col` of `v` using `row` (whose pivot is `col`). `v` may
    /// be rescaled; the factor is multiplied into `scale` and `true` returned.
    fn eliminate(&self, v: &mut [Self::E], row: &[(usize, Self::E)], col: usize, scale: &mut Self::S) -> bool;
    /// Divides `v` by the gcd of its entries, keeping `scale` in step.
    fn tidy(&self, v: &mut [Self::E], scale: &mut Self::S);
    fn one_scale(&self) -> Self::S;
    /// `e / (scale * den)` as a field element.
    fn export_div(&self, e: &Self::E, scale: &Self::S, den: &Self::E) -> FieldElem;
    /// Canonical scaling of a freshly reduced row.
    fn normalize(&self, row: &mut [(usize, Self::E)]);
}

/// Rescalings of a vector under reduction between content divisions.
const TIDY_EVERY: u32 = 8;

#[derive(Debug, Clone)]
struct RationalElim;

impl Elim for RationalElim {
    type E = BigInt;
    type S = BigRational;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn is_zero(e: &BigInt) -> bool {
        e.is_zero()
    }

    fn import(&self, v: &[(usize, FieldElem)]) -> (Vec<(usize, BigInt)>, BigInt) {
        let mut den = BigInt::one();
        for (_, c) in v {
            if let FieldElem::Rational(q) = c {
                den = den.lcm(q.denom());
            }
        }
        let out = v
            .iter()
            .map(|(i, c)| match c {
                FieldElem::Rational(q) => (*i, q.numer() * (&den / q.denom())),
                _ => panic!("field mismatch: expected Q"),
            })
            .collect();
        (out, den)
    }

    fn export(&self, e: &BigInt) -> FieldElem {
        FieldElem::Rational(BigRational::from_integer(e.clone()))
    }

    fn one_scale(&self) -> BigRational {
        BigRational::one()
    }

    fn export_div(&self, e: &BigInt, scale: &BigRational, den: &BigInt) -> FieldElem {
        FieldElem::Rational(BigRational::from_integer(e.clone()) / (scale * den))
    }

    fn tidy(&self, v: &mut [BigInt], scale: &mut BigRational) {
        let mut g = BigInt::zero();
        for x in v.iter() {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    return;
                }
            }
        }
        if g.is_zero() {
            return;
        }
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
        *scale /= BigRational::from_integer(g);
    }

    fn eliminate(&self, v: &mut [BigInt], row: &[(usize, BigInt)], col: usize, scale: &mut BigRational) -> bool {
        let lead = &row[0].1;
        let target = std::mem::take(&mut v[col]);
        let g = lead.gcd(&target);
        let a = lead / &g;
        let b = &target / &g;
        let rescaled = !a.is_one();
        if rescaled {
            *scale *= BigRational::from_integer(a.clone());
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x *= &a;
                }
            }
        }
        for (j, r) in &row[1..] {
            v[*j] -= &b * r;
        }
        rescaled
    }

    fn normalize(&self, row: &mut [(usize, BigInt)]) {
        let mut g = BigInt::zero();
        for (_, x) in row.iter() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        if row[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, x) in row.iter_mut() {
                *x /= &g;
            }
        }
    }
}

#[derive(Debug, Clone)]
struct PrimeElim {
    p: u64,
}

impl Elim for PrimeElim {
    type E = u64;
    type S = ();

    fn zero(&self) -> u64 {
        0
    }

    fn is_zero(e: &u64) -> bool {
        *e == 0
    }

    fn import(&self, v: &[(usize, FieldElem)]) -> (Vec<(usize, u64)>, u64) {
        let out = v
            .iter()
            .map(|(i, c)| match c {
                FieldElem::Prime { value, modulus } if *modulus == self.p => (*i, *value),
                _ => panic!("field mismatch: expected F{}", self.p),
            })
            .collect();
        (out, 1)
    }

    fn export(&self, e: &u64) -> FieldElem {
        FieldElem::Prime { value: *e, modulus: self.p }
    }

    fn one_scale(&self) {}

    fn export_div(&self, e: &u64, _scale: &(), _den: &u64) -> FieldElem {
        self.export(e)
    }

    fn tidy(&self, _v: &mut [u64], _scale: &mut ()) {}

    fn eliminate(&self, v: &mut [u64], row: &[(usize, u64)], col: usize, _scale: &mut ()) -> bool {
        let p = self.p;
        let t = v[col];
        v[col] = 0;
        // Rows are normalized to a unit pivot.
        let neg = p - t;
        for (j, r) in &row[1..] {
            v[*j] = (v[*j] + neg * r) % p;
        }
        false
    }

    fn normalize(&self, row: &mut [(usize, u64)]) {
        let inv = pow_mod(row[0].1, self.p - 2, self.p);
        for (_, x) in row.iter_mut() {
            *x = *x * inv % self.p;
        }
    }
}

#[derive(Debug, Clone)]
struct Echelon<K: Elim> {
    kind: K,
    dim: usize,
    rows: Vec<Vec<(usize, K::E)>>,
    pivot_row: Vec<Option<usize>>,
}

impl<K: Elim> Echelon<K> {
    fn new(kind: K, dim: usize) -> Self {
        Echelon { kind, dim, rows: Vec::new(), pivot_row: vec![None; dim] }
    }

    fn densify(&self, v: &[(usize, K::E)]) -> Vec<K::E> {
        let mut d = vec![self.kind.zero(); self.dim];
        for (i, x) in v {
            d[*i] = x.clone();
        }
        d
    }

    /// Reduces `v` in place on columns `< bound`; returns the factor by which
    /// `v` was scaled along the way.
    fn reduce_dense(&self, v: &mut [K::E], bound: usize) -> K::S {
        let mut scale = self.kind.one_scale();
        let mut pending = 0;
        for col in 0..bound.min(self.dim) {
            if K::is_zero(&v[col]) {
                continue;
            }
            if let Some(r) = self.pivot_row[col] {
                if self.kind.eliminate(v, &self.rows[r], col, &mut scale) {
                    pending += 1;
                    if pending == TIDY_EVERY {
                        self.kind.tidy(v, &mut scale);
                        pending = 0;
                    }
                }
            }
        }
        scale
    }

    fn insert(&mut self, v: &[(usize, K::E)]) -> bool {
        if v.is_empty() {
            return false;
        }
        let mut d = self.densify(v);
        self.reduce_dense(&mut d, self.dim);
        let mut row: Vec<(usize, K::E)> = d
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !K::is_zero(x))
            .collect();
        if row.is_empty() {
            return false;
        }
        self.kind.normalize(&mut row);
        self.pivot_row[row[0].0] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    fn residual(&self, v: &[(usize, K::E)], bound: usize) -> (Vec<K::E>, K::S) {
        let mut d = self.densify(v);
        let s = self.reduce_dense(&mut d, bound);
        (d, s)
    }
}

/// A subspace of `k^dim` in echelon form.
#[derive(Debug, Clone)]
pub struct RowSpace(Inner);

#[derive(Debug, Clone)]
enum Inner {
    Q(Echelon<RationalElim>),
    P(Echelon<PrimeElim>),
}

impl RowSpace {
    pub fn new(field: Field, dim: usize) -> Self {
        match field {
            Field::Rational => RowSpace(Inner::Q(Echelon::new(RationalElim, dim))),
            Field::Prime(p) => RowSpace(Inner::P(Echelon::new(PrimeElim { p }, dim))),
        }
    }

    pub fn field(&self) -> Field {
        match &self.0 {
            Inner::Q(_) => Field::Rational,
            Inner::P(e) => Field::Prime(e.kind.p),
        }
    }

    pub fn dim(&self) -> usize {
        match &self.0 {
            Inner::Q(e) => e.dim,
            Inner::P(e) => e.dim,
        }
    }

    pub fn rank(&self) -> usize {
        match &self.0 {
            Inner::Q(e) => e.rows.len(),
            Inner::P(e) => e.rows.len(),
        }
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, FieldElem)]) -> bool {
        match &mut self.0 {
            Inner::Q(e) => {
                let (w, _) = e.kind.import(v);
                e.insert(&w)
            }
            Inner::P(e) => {
                let (w, _) = e.kind.import(v);
                e.insert(&w)
            }
        }
    }

    pub fn contains(&self, v: &[(usize, FieldElem)]) -> bool {
        self.contains_below(v, self.dim())
    }

    /// Whether `v` lies in the space after projecting both onto columns `< bound`.
    pub fn contains_below(&self, v: &[(usize, FieldElem)], bound: usize) -> bool {
        match &self.0 {
            Inner::Q(e) => {
                let (r, _) = e.residual(&e.kind.import(v).0, bound);
                r[..bound.min(e.dim)].iter().all(|x| x.is_zero())
            }
            Inner::P(e) => {
                let (r, _) = e.residual(&e.kind.import(v).0, bound);
                r[..bound.min(e.dim)].iter().all(|x| *x == 0)
            }
        }
    }

    /// Canonical representative of `v` modulo the space, supported on
    /// non-pivot columns. This is a linear map.
    pub fn normal_form(&self, v: &[(usize, FieldElem)]) -> SparseVec {
        match &self.0 {
            Inner::Q(e) => {
                let (w, den) = e.kind.import(v);
                let (r, s) = e.residual(&w, e.dim);
                export_dense(&e.kind, r, &s, &den)
            }
            Inner::P(e) => {
                let (r, s) = e.residual(&e.kind.import(v).0, e.dim);
                export_dense(&e.kind, r, &s, &1)
            }
        }
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        match &self.0 {
            Inner::Q(e) => e.pivot_row[col].is_some(),
            Inner::P(e) => e.pivot_row[col].is_some(),
        }
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&c| self.is_pivot(c)).collect()
    }

    /// The image of the space under the projection onto columns `< bound`.
    /// Only valid when columns are ordered so that pivots below `bound`
    /// determine the projection, which holds for lowest-column pivots.
    pub fn truncated(&self, bound: usize) -> RowSpace {
        let mut out = RowSpace::new(self.field(), bound);
        for row in self.basis() {
            if row[0].0 < bound {
                let r: SparseVec = row.into_iter().filter(|(i, _)| *i < bound).collect();
                out.insert(&r);
            }
        }
        out
    }

    /// Basis vectors, in insertion order.
    pub fn basis(&self) -> Vec<SparseVec> {
        match &self.0 {
            Inner::Q(e) => e.rows.iter().map(|r| export_sparse(&e.kind, r)).collect(),
            Inner::P(e) => e.rows.iter().map(|r| export_sparse(&e.kind, r)).collect(),
        }
    }
}

fn export_dense<K: Elim>(k: &K, v: Vec<K::E>, scale: &K::S, den: &K::E) -> SparseVec {
    v.into_iter()
        .enumerate()
        .filter(|(_, x)| !K::is_zero(x))
        .map(|(i, x)| (i, k.export_div(&x, scale, den)))
        .collect()
}

fn export_sparse<K: Elim>(k: &K, v: &[(usize, K::E)]) -> SparseVec {
    v.iter().map(|(i, x)| (*i, k.export(x))).collect()
}

/// Basis of the kernel of the map `e_i -> vectors[i]` (vectors in `k^dim`),
/// returned as coefficient vectors indexed by `i`.
pub fn kernel(field: Field, dim: usize, vectors: &[SparseVec]) -> Vec<SparseVec> {
    let m = vectors.len();
    let mut space = RowSpace::new(field, dim + m);
    for (i, v) in vectors.iter().enumerate() {
        let mut row = v.clone();
        row.push((dim + i, field.one()));
        space.insert(&row);
    }
    space
        .basis()
        .into_iter()
        .filter(|r| r[0].0 >= dim)
        .map(|r| r.into_iter().map(|(j, c)| (j - dim, c)).collect())
        .collect()
}

/// Basis of `span(a) ∩ span(b)` inside `k^dim` (Zassenhaus).
pub fn intersection(field: Field, dim: usize, a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    let mut space = RowSpace::new(field, 2 * dim);
    for v in a {
        let mut row = v.clone();
        row.extend(v.iter().map(|(i, c)| (dim + i, c.clone())));
        space.insert(&row);
    }
    for v in b {
        space.insert(v);
    }
    space
        .basis()
        .into_iter()
        .filter(|r| r[0].0 >= dim)
        .map(|r| r.into_iter().map(|(j, c)| (j - dim, c)).collect())
        .collect()
}

/// Inverse of a square matrix over the field (rows as dense vectors), or
/// `None` when singular.
pub fn invert(field: Field, m: &[Vec<FieldElem>]) -> Option<Vec<Vec<FieldElem>>> {
    let n = m.len();
    let mut a: Vec<Vec<FieldElem>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv();
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[allow(dead_code)]
pub(crate) fn to_u64(e: &FieldElem) -> Option<u64> {
    match e {
        FieldElem::Prime { value, .. } => Some(*value),
        FieldElem::Rational(q) => q.to_integer().to_u64(),
    }
}
