//! Finite-colength submodules of `R^s`, `R = k[x,y]` localized at `m = (x,y)`,
//! computed exactly inside the finite-dimensional truncations `(R/m^N)^s`.
//!
//! Every value carries a Nakayama certificate `n0` with `m^n0 R^s ⊆ M`: once
//! `m^t R^s ⊆ M + m^(t+1) R^s` holds, Nakayama's lemma upgrades it to
//! `m^t R^s ⊆ M`. All membership, equality and colength answers are computed
//! at an order `N > n0`, where they are exact.
//!
//! Ideals are the rank-one case, wrapped by [`TruncatedIdeal`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::arith::{Field, Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::{intersection, kernel, RowSpace, SparseVec};
use crate::staircase::MonomialIdeal;

/// Default ceiling on the truncation order.
pub const DEFAULT_CEILING: u32 = 64;

static CEILING: AtomicU32 = AtomicU32::new(DEFAULT_CEILING);

/// Sets the process-wide truncation ceiling.
pub fn set_truncation_ceiling(n: u32) {
    CEILING.store(n.max(2), Ordering::Relaxed);
}

pub fn truncation_ceiling() -> u32 {
    CEILING.load(Ordering::Relaxed)
}

/// Column layout of `(R/m^N)^s`: ordered by total degree, then component,
/// then decreasing x-exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub rank: usize,
    pub order: u32,
}

impl Layout {
    pub fn new(rank: usize, order: u32) -> Self {
        Layout { rank, order }
    }

    /// Number of columns before degree `d`.
    pub fn degree_start(&self, d: u32) -> usize {
        let d = d as usize;
        self.rank * d * (d + 1) / 2
    }

    pub fn dim(&self) -> usize {
        self.degree_start(self.order)
    }

    pub fn index(&self, comp: usize, m: Monomial) -> Option<usize> {
        let d = m.degree();
        (d < self.order).then(|| self.degree_start(d) + comp * (d as usize + 1) + (d - m.a) as usize)
    }

    pub fn entry(&self, idx: usize) -> (usize, Monomial) {
        let mut d = 0u32;
        while self.degree_start(d + 1) <= idx {
            d += 1;
        }
        let off = idx - self.degree_start(d);
        let comp = off / (d as usize + 1);
        let within = (off % (d as usize + 1)) as u32;
        (comp, Monomial::new(d - within, within))
    }

    /// `u * v` truncated at the order, as a sorted sparse vector.
    pub fn vectorize_shift(&self, v: &[Poly], u: Monomial) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (comp, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                if let Some(i) = self.index(comp, m.mul(u)) {
                    out.push((i, c.clone()));
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub fn vectorize(&self, v: &[Poly]) -> SparseVec {
        self.vectorize_shift(v, Monomial::ONE)
    }

    pub fn devectorize(&self, field: Field, sv: &SparseVec) -> Vec<Poly> {
        let mut out = vec![Poly::zero(field); self.rank];
        for (i, c) in sv {
            let (comp, m) = self.entry(*i);
            out[comp].add_term(m, c);
        }
        out
    }
}

/// Order of a vector: the least order of its components.
pub fn vector_order(v: &[Poly]) -> Option<u32> {
    v.iter().filter_map(Poly::order).min()
}

/// A certified finite-colength submodule `M ⊆ R^s`.
#[derive(Debug, Clone)]
pub struct Submodule {
    field: Field,
    rank: usize,
    gens: Vec<Vec<Poly>>,
    n0: u32,
    order: u32,
    space: RowSpace,
}

/// Images of `u * g` for all monomials `u` with `u * g` not killed by `m^order`.
/// Generators sharing a factor (products with a monomial ideal) produce many
/// identical shifts; those are inserted once.
fn fill_space(space: &mut RowSpace, layout: Layout, gens: &[Vec<Poly>], min_shift: u32) -> Vec<usize> {
    let mut seen: HashSet<SparseVec> = HashSet::new();
    let mut used = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let Some(o) = vector_order(g) else { continue };
        if o >= layout.order {
            continue;
        }
        if min_shift == 0 && space.contains(&layout.vectorize(g)) {
            continue;
        }
        used.push(gi);
        for d in min_shift..layout.order - o {
            for u in Monomial::of_degree(d) {
                let v = layout.vectorize_shift(g, u);
                if !v.is_empty() && !seen.contains(&v) {
                    space.insert(&v);
                    seen.insert(v);
                }
            }
        }
    }
    used
}

/// Least `t < order` with every degree-`t` column a pivot.
fn find_certificate(space: &RowSpace, layout: Layout) -> Option<u32> {
    (0..layout.order).find(|&t| {
        (layout.degree_start(t)..layout.degree_start(t + 1)).all(|c| space.is_pivot(c))
    })
}

/// Searches for a certificate, doubling the order up to the ceiling.
fn certify(field: Field, rank: usize, gens: &[Vec<Poly>], hint: Option<u32>) -> Result<(u32, u32, RowSpace)> {
    let ceiling = truncation_ceiling();
    let max_deg = gens.iter().flat_map(|g| g.iter().filter_map(Poly::degree)).max().unwrap_or(0);
    let mut order = hint.unwrap_or(max_deg + 2).clamp(2, ceiling);
    loop {
        let layout = Layout::new(rank, order);
        let mut space = RowSpace::new(field, layout.dim());
        fill_space(&mut space, layout, gens, 0);
        if let Some(n0) = find_certificate(&space, layout) {
            return Ok((n0, order, space));
        }
        if order >= ceiling {
            return Err(Error::TruncationCeiling { order, ceiling });
        }
        order = (order * 2).min(ceiling);
    }
}

/// Colength of a module generated by vectors with one monomial entry each,
/// read off the staircases of its components.
fn monomial_colength(rank: usize, gens: &[Vec<Poly>]) -> Option<Result<(u64, u32)>> {
    let mut comps: Vec<Vec<Monomial>> = vec![Vec::new(); rank];
    for g in gens {
        let mut nonzero = g.iter().enumerate().filter(|(_, p)| !p.is_zero());
        match (nonzero.next(), nonzero.next()) {
            (None, _) => {}
            (Some((c, p)), None) if p.num_terms() == 1 => comps[c].push(*p.terms().next()?.0),
            _ => return None,
        }
    }
    let mut total = 0;
    let mut n0 = 0;
    for ms in comps {
        let Ok(ideal) = MonomialIdeal::new(ms) else { return Some(Err(Error::NotMPrimary)) };
        match ideal.colength() {
            Ok(c) => total += c,
            Err(e) => return Some(Err(e)),
        }
        n0 = n0.max(ideal.certificate());
    }
    Some(Ok((total, n0)))
}

/// Quick rejection for generator sets that are all monomial vectors: some
/// component misses a pure power of x or of y.
fn obviously_not_primary(rank: usize, gens: &[Vec<Poly>]) -> bool {
    let all_monomial = gens.iter().all(|g| {
        g.iter().filter(|p| !p.is_zero()).count() <= 1
            && g.iter().all(|p| p.is_zero() || p.num_terms() == 1)
    });
    if !all_monomial {
        return false;
    }
    (0..rank).any(|comp| {
        let monos: Vec<Monomial> = gens
            .iter()
            .filter_map(|g| g[comp].terms().next().map(|(m, _)| *m))
            .collect();
        !monos.iter().any(|m| m.b == 0) || !monos.iter().any(|m| m.a == 0)
    })
}

impl Submodule {
    /// Materializes the submodule generated by `gens` (each of length `rank`),
    /// searching for a certificate up to the truncation ceiling.
    pub fn from_generators(field: Field, rank: usize, gens: Vec<Vec<Poly>>, hint: Option<u32>) -> Result<Self> {
        Self::check_gens(field, rank, &gens)?;
        let gens: Vec<Vec<Poly>> = gens.into_iter().filter(|g| g.iter().any(|p| !p.is_zero())).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal("no nonzero generators".into()));
        }
        if obviously_not_primary(rank, &gens) {
            return Err(Error::NotMPrimary);
        }
        let (n0, order, space) = certify(field, rank, &gens, hint)?;
        Self::finish(field, rank, gens, n0, order, space)
    }

    /// `ℓ(R^s / M)` and the certificate, without extracting minimal generators.
    pub fn certified_colength(field: Field, rank: usize, gens: &[Vec<Poly>], hint: Option<u32>) -> Result<(u64, u32)> {
        Self::check_gens(field, rank, gens)?;
        if let Some(out) = monomial_colength(rank, gens) {
            return out;
        }
        if obviously_not_primary(rank, gens) {
            return Err(Error::NotMPrimary);
        }
        let (n0, order, space) = certify(field, rank, gens, hint)?;
        Ok(((Layout::new(rank, order).dim() - space.rank()) as u64, n0))
    }

    /// Materializes at exactly `order`; fails if no certificate `n0 < order` exists there.
    pub fn materialize_at(field: Field, rank: usize, gens: Vec<Vec<Poly>>, order: u32) -> Result<Self> {
        Self::check_gens(field, rank, &gens)?;
        let gens: Vec<Vec<Poly>> = gens.into_iter().filter(|g| g.iter().any(|p| !p.is_zero())).collect();
        if gens.is_empty() {
            return Err(Error::ZeroIdeal("no nonzero generators".into()));
        }
        let layout = Layout::new(rank, order);
        let mut space = RowSpace::new(field, layout.dim());
        fill_space(&mut space, layout, &gens, 0);
        match find_certificate(&space, layout) {
            Some(n0) => Self::finish(field, rank, gens, n0, order, space),
            None => Err(Error::TruncationCeiling { order, ceiling: truncation_ceiling() }),
        }
    }

    fn check_gens(field: Field, rank: usize, gens: &[Vec<Poly>]) -> Result<()> {
        if rank == 0 {
            return Err(Error::InvalidModule("rank must be positive".into()));
        }
        for g in gens {
            if g.len() != rank {
                return Err(Error::InvalidModule(format!(
                    "generator of length {} in a rank-{rank} free module",
                    g.len()
                )));
            }
            if let Some(p) = g.iter().find(|p| p.field() != field) {
                return Err(Error::FieldMismatch(field, p.field()));
            }
        }
        Ok(())
    }

    /// Stores the space at order `n0 + 2` and extracts minimal generators.
    fn finish(field: Field, rank: usize, gens: Vec<Vec<Poly>>, n0: u32, order: u32, space: RowSpace) -> Result<Self> {
        let target = n0 + 2;
        let layout = Layout::new(rank, target);
        let space = if order == target {
            space
        } else if order > target {
            space.truncated(layout.dim())
        } else {
            let mut s = RowSpace::new(field, layout.dim());
            fill_space(&mut s, layout, &gens, 0);
            s
        };
        // m*M at the same order; generators independent modulo it are minimal.
        let mut cands = gens;
        cands.sort_by_cached_key(|g| (vector_order(g), g.iter().map(Poly::num_terms).sum::<usize>(), format!("{g:?}")));
        let mut mm = RowSpace::new(field, layout.dim());
        fill_space(&mut mm, layout, &cands, 1);
        let mut minimal = Vec::new();
        for g in cands {
            if mm.insert(&layout.vectorize(&g)) {
                minimal.push(g);
            }
        }
        let mut out = Submodule { field, rank, gens: minimal, n0, order: target, space };
        out.canonicalize_generators();
        Ok(out)
    }

    /// Replaces generators by minimal monomial generators when the module is
    /// spanned by monomial vectors; otherwise normalizes and sorts them.
    fn canonicalize_generators(&mut self) {
        let layout = self.layout();
        let mut terms: BTreeSet<(usize, Monomial)> = BTreeSet::new();
        for g in &self.gens {
            for (comp, p) in g.iter().enumerate() {
                for (m, _) in p.terms() {
                    terms.insert((comp, *m));
                }
            }
        }
        let monomial = terms.iter().all(|&(comp, m)| {
            m.degree() >= self.n0 || self.space.contains(&layout.vectorize(&self.unit_vector(comp, m)))
        });
        if monomial {
            let mut gens = Vec::new();
            for comp in 0..self.rank {
                let ms: Vec<Monomial> = terms.iter().filter(|t| t.0 == comp).map(|t| t.1).collect();
                let mut minimal: Vec<Monomial> = ms
                    .iter()
                    .copied()
                    .filter(|&m| !ms.iter().any(|&n| n != m && n.divides(m)))
                    .collect();
                minimal.sort_by_key(|m| std::cmp::Reverse(m.a));
                gens.extend(minimal.into_iter().map(|m| self.unit_vector(comp, m)));
            }
            self.gens = gens;
        } else {
            for g in &mut self.gens {
                let lead = g.iter().position(|p| !p.is_zero()).unwrap();
                let scale = normalizing_scale(&g[lead]);
                for p in g.iter_mut() {
                    *p = p.scale(&scale);
                }
            }
            self.gens.sort_by_cached_key(|g| (vector_order(g), g.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
        }
    }

    fn unit_vector(&self, comp: usize, m: Monomial) -> Vec<Poly> {
        let mut v = vec![Poly::zero(self.field); self.rank];
        v[comp] = Poly::monomial(self.field, m);
        v
    }

    /// The free module `R^rank`.
    pub fn free(field: Field, rank: usize) -> Self {
        let gens: Vec<Vec<Poly>> = (0..rank)
            .map(|i| {
                let mut v = vec![Poly::zero(field); rank];
                v[i] = Poly::one(field);
                v
            })
            .collect();
        Self::from_generators(field, rank, gens, Some(2)).expect("free module")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Minimal generators.
    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.gens
    }

    /// Nakayama certificate: least `t` with `m^t R^s ⊆ M`.
    pub fn certificate(&self) -> u32 {
        self.n0
    }

    /// The materialized truncation order.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.rank, self.order)
    }

    pub fn is_free(&self) -> bool {
        self.n0 == 0
    }

    /// `dim_k (R^s / M)`.
    pub fn colength(&self) -> u64 {
        (self.layout().dim() - self.space.rank()) as u64
    }

    /// Exact answer to `m^t R^s ⊆ M` from the truncated space alone.
    pub fn nakayama_contains_power(&self, t: u32) -> Result<bool> {
        if t + 1 > self.order {
            return Err(Error::TruncationCeiling { order: self.order, ceiling: t + 1 });
        }
        let l = self.layout();
        Ok((l.degree_start(t)..l.degree_start(t + 1)).all(|c| self.space.is_pivot(c)))
    }

    pub fn contains_vector(&self, v: &[Poly]) -> bool {
        assert_eq!(v.len(), self.rank, "rank mismatch");
        self.space.contains(&self.layout().vectorize(v))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Submodule) -> bool {
        self.witness_not_containing(other).is_none()
    }

    /// A generator of `other` outside `self`, if any.
    pub fn witness_not_containing(&self, other: &Submodule) -> Option<Vec<Poly>> {
        other.gens.iter().find(|g| !self.contains_vector(g)).cloned()
    }

    pub fn equals(&self, other: &Submodule) -> bool {
        self.rank == other.rank && self.colength() == other.colength() && self.contains(other)
    }

    /// The space at another order (projected down or rebuilt from generators).
    pub fn space_at(&self, order: u32) -> RowSpace {
        let layout = Layout::new(self.rank, order);
        if order == self.order {
            self.space.clone()
        } else if order < self.order {
            self.space.truncated(layout.dim())
        } else {
            let mut s = RowSpace::new(self.field, layout.dim());
            fill_space(&mut s, layout, &self.gens, 0);
            s
        }
    }

    fn check_compatible(&self, other: &Submodule) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.rank != other.rank {
            return Err(Error::InvalidModule(format!("rank {} vs rank {}", self.rank, other.rank)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Submodule::from_generators(self.field, self.rank, gens, Some(self.n0.min(other.n0) + 2))
    }

    /// `I * M` for an ideal `I` (rank one).
    pub fn scale(&self, ideal: &Submodule) -> Result<Submodule> {
        if ideal.rank != 1 {
            return Err(Error::InvalidModule("scaling by a module of rank > 1".into()));
        }
        if self.field != ideal.field {
            return Err(Error::FieldMismatch(self.field, ideal.field));
        }
        let mut gens = Vec::with_capacity(self.gens.len() * ideal.gens.len());
        for a in &ideal.gens {
            for g in &self.gens {
                gens.push(g.iter().map(|p| p.mul(&a[0])).collect());
            }
        }
        Submodule::from_generators(self.field, self.rank, gens, Some(self.n0 + ideal.n0 + 1))
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let order = self.n0.max(other.n0) + 1;
        let layout = Layout::new(self.rank, order);
        let a = self.space_at(order).basis();
        let b = other.space_at(order).basis();
        let basis = intersection(self.field, layout.dim(), &a, &b);
        let gens = basis.iter().map(|v| layout.devectorize(self.field, v)).collect();
        Submodule::from_generators(self.field, self.rank, gens, Some(order + 1))
    }

    /// The ideal `(self :_R other) = { r : r * other ⊆ self }`.
    pub fn colon(&self, other: &Submodule) -> Result<Submodule> {
        self.check_compatible(other)?;
        let field = self.field;
        let c = self.n0;
        if c == 0 {
            return Ok(Submodule::free(field, 1));
        }
        // Every r agrees with its truncation modulo m^c ⊆ (self : other).
        let layout = self.layout();
        let dim = layout.dim();
        let unknowns: Vec<Monomial> = (0..c).flat_map(Monomial::of_degree).collect();
        let images: Vec<SparseVec> = unknowns
            .iter()
            .map(|&u| {
                let mut img = Vec::new();
                for (k, g) in other.gens.iter().enumerate() {
                    let nf = self.space.normal_form(&layout.vectorize_shift(g, u));
                    img.extend(nf.into_iter().map(|(i, x)| (k * dim + i, x)));
                }
                img
            })
            .collect();
        let ker = kernel(field, dim * other.gens.len(), &images);
        let mut gens: Vec<Vec<Poly>> = ker
            .iter()
            .map(|v| {
                vec![Poly::from_terms(field, v.iter().map(|(i, x)| (unknowns[*i], x.clone())))]
            })
            .collect();
        gens.extend(Monomial::of_degree(c).map(|m| vec![Poly::monomial(field, m)]));
        Submodule::from_generators(field, 1, gens, Some(c + 2))
    }
}

fn normalizing_scale(p: &Poly) -> crate::arith::FieldElem {
    let n = p.normalized();
    let (m, c) = p.terms().next().expect("nonzero");
    n.coeff(*m).mul(&c.inv())
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.rank == 1 {
                write!(f, "{}", g[0])?;
            } else {
                write!(f, "(")?;
                for (j, p) in g.iter().enumerate() {
                    if j > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")?;
            }
        }
        write!(f, ">")
    }
}

/// Large prime for modular shadows of computations over Q.
pub const SHADOW_PRIME: u64 = 2_147_483_647;

/// A certified finite-colength ideal of the local ring.
#[derive(Debug, Clone)]
pub struct TruncatedIdeal(Submodule);

impl TruncatedIdeal {
    /// The ideal generated by `gens`, certified up to the truncation ceiling.
    pub fn new(field: Field, gens: Vec<Poly>) -> Result<Self> {
        Self::with_hint(field, gens, None)
    }

    pub fn with_hint(field: Field, gens: Vec<Poly>, hint: Option<u32>) -> Result<Self> {
        if gens.iter().any(|g| !g.constant_term().is_zero()) {
            return Ok(Self::unit(field));
        }
        Submodule::from_generators(field, 1, gens.into_iter().map(|g| vec![g]).collect(), hint).map(TruncatedIdeal)
    }

    /// Materializes at exactly order `n`.
    pub fn materialize(field: Field, gens: Vec<Poly>, n: u32) -> Result<Self> {
        if gens.iter().any(|g| !g.constant_term().is_zero()) {
            return Ok(Self::unit(field));
        }
        Submodule::materialize_at(field, 1, gens.into_iter().map(|g| vec![g]).collect(), n).map(TruncatedIdeal)
    }

    pub fn unit(field: Field) -> Self {
        TruncatedIdeal(Submodule::free(field, 1))
    }

    /// `m^n`.
    pub fn max_power(field: Field, n: u32) -> Self {
        if n == 0 {
            return Self::unit(field);
        }
        let gens = Monomial::of_degree(n).map(|m| Poly::monomial(field, m)).collect();
        Self::with_hint(field, gens, Some(n + 2)).expect("powers of m are m-primary")
    }

    pub fn from_monomials(field: Field, monos: &[Monomial]) -> Result<Self> {
        Self::new(field, monos.iter().map(|&m| Poly::monomial(field, m)).collect())
    }

    pub fn from_submodule(m: Submodule) -> Result<Self> {
        if m.rank() != 1 {
            return Err(Error::InvalidModule("ideal of rank > 1".into()));
        }
        Ok(TruncatedIdeal(m))
    }

    pub fn as_submodule(&self) -> &Submodule {
        &self.0
    }

    pub fn into_submodule(self) -> Submodule {
        self.0
    }

    pub fn field(&self) -> Field {
        self.0.field()
    }

    pub fn generators(&self) -> Vec<Poly> {
        self.0.gens.iter().map(|g| g[0].clone()).collect()
    }

    /// Monomial generators, if the ideal is monomial.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        self.generators().iter().map(Poly::as_monomial).collect()
    }

    pub fn certificate(&self) -> u32 {
        self.0.n0
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_free()
    }

    pub fn colength(&self) -> u64 {
        self.0.colength()
    }

    pub fn nakayama_contains_power(&self, t: u32) -> Result<bool> {
        self.0.nakayama_contains_power(t)
    }

    pub fn contains_poly(&self, f: &Poly) -> bool {
        self.0.contains_vector(std::slice::from_ref(f))
    }

    pub fn contains(&self, other: &TruncatedIdeal) -> bool {
        self.0.contains(&other.0)
    }

    pub fn witness_not_containing(&self, other: &TruncatedIdeal) -> Option<Poly> {
        self.0.witness_not_containing(&other.0).map(|mut v| v.remove(0))
    }

    pub fn equals(&self, other: &TruncatedIdeal) -> bool {
        self.0.equals(&other.0)
    }

    pub fn sum(&self, other: &TruncatedIdeal) -> Result<Self> {
        self.0.sum(&other.0).map(TruncatedIdeal)
    }

    pub fn product(&self, other: &TruncatedIdeal) -> Result<Self> {
        self.0.scale(&other.0).map(TruncatedIdeal)
    }

    pub fn power(&self, n: u32) -> Result<Self> {
        let mut acc = Self::unit(self.field());
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &TruncatedIdeal) -> Result<Self> {
        self.0.intersect(&other.0).map(TruncatedIdeal)
    }

    /// `(self : other)`.
    pub fn colon(&self, other: &TruncatedIdeal) -> Result<Self> {
        if let Some(k) = self.linked_colon(other) {
            return Ok(k);
        }
        self.0.colon(&other.0).map(TruncatedIdeal)
    }

    /// The ideal generated by the images of the generators over
    /// `F_SHADOW_PRIME`, for an ideal over Q. Ranks can only drop mod p, so
    /// its colength bounds the colength over Q from above.
    pub fn shadow(&self) -> Option<TruncatedIdeal> {
        if self.field() != Field::Rational {
            return None;
        }
        let gens = self.generators().iter().map(|g| g.reduce_mod(SHADOW_PRIME)).collect::<Option<Vec<_>>>()?;
        TruncatedIdeal::with_hint(Field::Prime(SHADOW_PRIME), gens, Some(self.order())).ok()
    }

    /// `(J : I)` for a two-generated `J ⊆ I` over Q, from a monomial
    /// candidate computed mod p. `J` is a complete intersection, so
    /// `ℓ(R/(J:I)) = ℓ(R/J) - ℓ(R/I)`, and a candidate `K` with `K I ⊆ J` of
    /// that colength is the colon.
    fn linked_colon(&self, other: &TruncatedIdeal) -> Option<Self> {
        if self.field() != Field::Rational || self.0.gens.len() != 2 || !other.contains(self) {
            return None;
        }
        let candidate = self.shadow()?.colon(&other.shadow()?).ok()?;
        let k = TruncatedIdeal::from_monomials(Field::Rational, &candidate.monomial_generators()?).ok()?;
        if k.colength() + other.colength() != self.colength() {
            return None;
        }
        let products: Vec<Poly> = match other.monomial_generators() {
            // Membership of the minimal generators of K I suffices.
            Some(ms) => {
                let ki = MonomialIdeal::new(ms).ok()?.product(&MonomialIdeal::new(candidate.monomial_generators()?).ok()?);
                ki.generators().iter().map(|&m| Poly::monomial(Field::Rational, m)).collect()
            }
            None => {
                let gens = other.generators();
                k.generators().iter().flat_map(|a| gens.iter().map(move |g| a.mul(g))).collect()
            }
        };
        products.iter().all(|f| self.contains_poly(f)).then_some(k)
    }
}

impl PartialEq for TruncatedIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.field() == other.field() && self.equals(other)
    }
}

impl fmt::Display for TruncatedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators();
        write!(f, "(")?;
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// One of the binary truncated-ideal operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncOp {
    Sum,
    Product,
    Intersect,
}

pub fn trunc_op(op: TruncOp, a: &TruncatedIdeal, b: &TruncatedIdeal) -> Result<TruncatedIdeal> {
    match op {
        TruncOp::Sum => a.sum(b),
        TruncOp::Product => a.product(b),
        TruncOp::Intersect => a.intersect(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn ideal(field: Field, gens: &[&str]) -> TruncatedIdeal {
        TruncatedIdeal::new(field, gens.iter().map(|s| parse_poly(s, field).unwrap()).collect()).unwrap()
    }

    const Q: Field = Field::Rational;

    #[test]
    fn layout_round_trips() {
        let l = Layout::new(3, 6);
        for i in 0..l.dim() {
            let (c, m) = l.entry(i);
            assert_eq!(l.index(c, m), Some(i));
        }
        assert_eq!(l.dim(), 3 * 21);
        assert_eq!(l.index(0, Monomial::new(6, 0)), None);
    }

    #[test]
    fn materialize_maximal_ideal() {
        let i = TruncatedIdeal::materialize(Q, vec![parse_poly("x", Q).unwrap(), parse_poly("y", Q).unwrap()], 3).unwrap();
        assert_eq!(i.certificate(), 1);
        assert_eq!(i.colength(), 1);
    }

    #[test]
    fn materialize_cusp_like_ideal() {
        let i = TruncatedIdeal::materialize(Q, vec![parse_poly("x^2-y^3", Q).unwrap(), parse_poly("x*y", Q).unwrap()], 8).unwrap();
        assert_eq!(i.certificate(), 4);
        assert_eq!(i.colength(), 5);
        assert!(i.nakayama_contains_power(4).unwrap());
        assert!(!i.nakayama_contains_power(3).unwrap());
    }

    #[test]
    fn principal_ideal_is_not_primary() {
        let err = TruncatedIdeal::materialize(Q, vec![parse_poly("x^2", Q).unwrap()], 6).unwrap_err();
        assert!(matches!(err, Error::TruncationCeiling { .. }));
        assert_eq!(TruncatedIdeal::new(Q, vec![parse_poly("x^2", Q).unwrap()]).unwrap_err(), Error::NotMPrimary);
        // Not recognizable as monomial; the search runs into the ceiling.
        let e = TruncatedIdeal::new(Q, vec![parse_poly("x^2+x*y", Q).unwrap()]).unwrap_err();
        assert!(matches!(e, Error::TruncationCeiling { .. }));
    }

    #[test]
    fn nakayama_on_powers() {
        let m2 = TruncatedIdeal::max_power(Q, 2);
        assert!(m2.nakayama_contains_power(2).unwrap());
        assert!(!m2.nakayama_contains_power(1).unwrap());
        let i = ideal(Q, &["x^3", "x*y", "y^2"]);
        assert!(i.nakayama_contains_power(3).unwrap());
        assert!(!i.nakayama_contains_power(2).unwrap());
    }

    #[test]
    fn ideal_operations() {
        let i = ideal(Q, &["x^3", "x*y", "y^2"]);
        let m = TruncatedIdeal::max_power(Q, 1);
        assert!(i.product(&m).unwrap().equals(&ideal(Q, &["x^4", "x^2*y", "x*y^2", "y^3"])));
        assert!(i.contains_poly(&parse_poly("x^2*y", Q).unwrap()));
        assert!(!i.contains_poly(&parse_poly("x^2", Q).unwrap()));
        let a = ideal(Q, &["x", "y^2"]);
        let b = ideal(Q, &["x^2", "y"]);
        assert_eq!(a.intersect(&b).unwrap().to_string(), "(x^2, x*y, y^2)");
    }

    #[test]
    fn colon_examples() {
        for field in [Q, Field::Prime(65537)] {
            let j = ideal(field, &["x^2", "y^2"]);
            let m2 = TruncatedIdeal::max_power(field, 2);
            assert_eq!(j.colon(&m2).unwrap().to_string(), "(x, y)");
            assert!(j.colon(&j).unwrap().is_unit());
        }
    }

    #[test]
    fn colength_examples() {
        assert_eq!(TruncatedIdeal::max_power(Q, 3).colength(), 6);
        assert_eq!(TruncatedIdeal::unit(Q).colength(), 0);
        assert_eq!(ideal(Q, &["x^2 - y^3", "x*y"]).colength(), 5);
    }

    #[test]
    fn generic_generators_stay_polynomial() {
        let i = ideal(Q, &["x^2 + y^2", "x*y"]);
        assert_eq!(i.generators().len(), 2);
        assert!(i.monomial_generators().is_none());
        assert_eq!(i.colength(), 4);
    }

    #[test]
    fn results_do_not_depend_on_order() {
        let i = ideal(Q, &["x^2 - y^3", "x*y"]);
        let hi = TruncatedIdeal::materialize(Q, i.generators(), i.order() + 2).unwrap();
        assert_eq!(hi.colength(), i.colength());
        assert!(hi.equals(&i));
    }
}
