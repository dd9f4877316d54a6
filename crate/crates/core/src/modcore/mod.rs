//! Finite-colength submodules `M ⊆ F = R^r`: representing and presenting
//! matrices, the ideal `I(M)`, reductions, Buchsbaum–Rim multiplicity and cores.

mod fitting;
mod sym;

pub use fitting::{fitting, fitting_generators};
pub use sym::{buchsbaum_rim, buchsbaum_rim_with, slot_basis, sym_colength, BuchsbaumRim, SymPower, BR_T_MAX};

use std::fmt;

use crate::arith::{Field, FieldElem, Poly, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::{invert, RowSpace};
use crate::reduction::{adjoint_ideal, apply_combination, GenericSampler};
use crate::staircase::MonomialIdeal;
use crate::trunc::{Submodule, TruncatedIdeal};

/// A submodule of `R^rank` given by generator columns, with an optional
/// presentation matrix whose columns are syzygies among those generators.
#[derive(Debug, Clone)]
pub struct ModuleRep {
    field: Field,
    rank: usize,
    gens: Vec<Vec<Poly>>,
    presentation: Option<PolyMatrix>,
    sub: Submodule,
}

impl ModuleRep {
    /// Validates the generators (finite colength) and, if given, the
    /// presentation: it must be `n x (n - r)` for a minimal generating set,
    /// kill the generators, and satisfy `I_(n-r)(A) = I(M)`.
    pub fn new(field: Field, rank: usize, gens: Vec<Vec<Poly>>, presentation: Option<PolyMatrix>) -> Result<Self> {
        let sub = Submodule::from_generators(field, rank, gens.clone(), None)?;
        let m = ModuleRep { field, rank, gens, presentation: None, sub };
        match presentation {
            None => Ok(m),
            Some(a) => m.with_presentation(a),
        }
    }

    fn with_presentation(mut self, a: PolyMatrix) -> Result<Self> {
        let n = self.gens.len();
        if a.field() != self.field {
            return Err(Error::FieldMismatch(self.field, a.field()));
        }
        if n != self.sub.generators().len() {
            return Err(Error::InvalidModule(format!(
                "a presentation needs a minimal generating set; {n} generators given, {} needed",
                self.sub.generators().len()
            )));
        }
        if a.nrows() != n || a.ncols() != n - self.rank {
            return Err(Error::InvalidModule(format!(
                "presentation is {}x{}, expected {n}x{}",
                a.nrows(),
                a.ncols(),
                n - self.rank
            )));
        }
        if !self.generator_matrix().mul(&a)?.is_zero() {
            return Err(Error::InvalidModule("presentation columns are not syzygies of the generators".into()));
        }
        let top = fitting(&a, (n - self.rank) as i64)?;
        if !top.equals(&self.ideal_i()?) {
            return Err(Error::InvalidModule("maximal minors of the presentation do not generate I(M)".into()));
        }
        self.presentation = Some(a);
        Ok(self)
    }

    /// Uses the minimal generators of `sub`; a bidiagonal presentation is
    /// attached when `sub` is a direct sum of monomial ideals.
    pub fn from_submodule(sub: Submodule) -> Self {
        let gens = sub.generators().to_vec();
        let mut m = ModuleRep { field: sub.field(), rank: sub.rank(), gens, presentation: None, sub };
        if let Some(comps) = m.monomial_components() {
            let a = comps
                .iter()
                .map(|c| c.presentation(m.field))
                .reduce(|a, b| a.block_diagonal(&b))
                .expect("rank >= 1");
            m.presentation = Some(a);
        }
        m
    }

    /// A monomial ideal as a rank-one module with its bidiagonal presentation.
    pub fn from_monomial_ideal(i: &MonomialIdeal, field: Field) -> Result<Self> {
        let t = i.to_truncated(field)?;
        Ok(Self::from_submodule(t.into_submodule()))
    }

    pub fn from_ideal(i: &TruncatedIdeal) -> Self {
        Self::from_submodule(i.as_submodule().clone())
    }

    pub fn free(field: Field, rank: usize) -> Self {
        Self::from_submodule(Submodule::free(field, rank))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Generator columns, in presentation order.
    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn presentation(&self) -> Option<&PolyMatrix> {
        self.presentation.as_ref()
    }

    pub fn submodule(&self) -> &Submodule {
        &self.sub
    }

    /// Least `t` with `m^t F ⊆ M`.
    pub fn certificate(&self) -> u32 {
        self.sub.certificate()
    }

    /// `ℓ(F/M)`.
    pub fn colength(&self) -> u64 {
        self.sub.colength()
    }

    pub fn is_free(&self) -> bool {
        self.sub.is_free()
    }

    /// The `r x n` representing matrix.
    pub fn generator_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.field, self.rank, &self.gens).expect("validated generators")
    }

    /// Component ideals when `M = a_1 e_1 + ... + a_r e_r` with monomial `a_i`.
    pub fn monomial_components(&self) -> Option<Vec<MonomialIdeal>> {
        let mut comps: Vec<Vec<crate::arith::Monomial>> = vec![Vec::new(); self.rank];
        for g in self.sub.generators() {
            let mut nz = g.iter().enumerate().filter(|(_, p)| !p.is_zero());
            let (c, p) = nz.next()?;
            if nz.next().is_some() {
                return None;
            }
            comps[c].push(p.as_monomial()?);
        }
        comps.into_iter().map(|ms| MonomialIdeal::new(ms).ok()).collect()
    }

    /// `I(M)`: the ideal of maximal minors of the representing matrix.
    pub fn ideal_i(&self) -> Result<TruncatedIdeal> {
        match fitting_generators(&self.generator_matrix(), self.rank as i64) {
            Some(gens) => TruncatedIdeal::new(self.field, gens),
            None => Err(Error::InvalidModule("representing matrix has rank below the module rank".into())),
        }
    }

    /// `M ⊕ N`, with the block-diagonal presentation when both have one.
    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let rank = self.rank + other.rank;
        let zero = Poly::zero(self.field);
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            let mut v = g.clone();
            v.resize(rank, zero.clone());
            gens.push(v);
        }
        for g in &other.gens {
            let mut v = vec![zero.clone(); self.rank];
            v.extend(g.iter().cloned());
            gens.push(v);
        }
        let hint = self.certificate().max(other.certificate()) + 2;
        let sub = Submodule::from_generators(self.field, rank, gens.clone(), Some(hint))?;
        let presentation = match (&self.presentation, &other.presentation) {
            (Some(a), Some(b)) => Some(a.block_diagonal(b)),
            _ => None,
        };
        Ok(ModuleRep { field: self.field, rank, gens, presentation, sub })
    }

    /// `a M`.
    pub fn scale_by_ideal(&self, a: &TruncatedIdeal) -> Result<ModuleRep> {
        Ok(Self::from_submodule(self.sub.scale(a.as_submodule())?))
    }

    /// `M + R v`.
    pub fn add_element(&self, v: &[Poly]) -> Result<ModuleRep> {
        let mut gens = self.sub.generators().to_vec();
        gens.push(v.to_vec());
        let sub = Submodule::from_generators(self.field, self.rank, gens, Some(self.certificate() + 2))?;
        Ok(Self::from_submodule(sub))
    }

    pub fn contains_vector(&self, v: &[Poly]) -> bool {
        self.sub.contains_vector(v)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &ModuleRep) -> bool {
        self.sub.contains(&other.sub)
    }

    pub fn witness_not_containing(&self, other: &ModuleRep) -> Option<Vec<Poly>> {
        self.sub.witness_not_containing(&other.sub)
    }

    pub fn equals(&self, other: &ModuleRep) -> bool {
        self.sub.equals(&other.sub)
    }
}

impl fmt::Display for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(comps) = self.monomial_components() {
            for (i, c) in comps.iter().enumerate() {
                if i > 0 {
                    write!(f, " ⊕ ")?;
                }
                write!(f, "{c}")?;
            }
            return Ok(());
        }
        write!(f, "{}", self.sub)
    }
}

/// The operations of [`module_op`].
#[derive(Debug, Clone)]
pub enum ModuleOp<'a> {
    DirectSum(&'a ModuleRep),
    ScaleByIdeal(&'a TruncatedIdeal),
    AddElement(&'a [Poly]),
    Membership(&'a [Poly]),
    Equals(&'a ModuleRep),
}

#[derive(Debug, Clone)]
pub enum ModuleOpResult {
    Module(ModuleRep),
    Bool(bool),
}

pub fn module_op(m: &ModuleRep, op: ModuleOp<'_>) -> Result<ModuleOpResult> {
    Ok(match op {
        ModuleOp::DirectSum(n) => ModuleOpResult::Module(m.direct_sum(n)?),
        ModuleOp::ScaleByIdeal(a) => ModuleOpResult::Module(m.scale_by_ideal(a)?),
        ModuleOp::AddElement(v) => ModuleOpResult::Module(m.add_element(v)?),
        ModuleOp::Membership(v) => ModuleOpResult::Bool(m.contains_vector(v)),
        ModuleOp::Equals(n) => ModuleOpResult::Bool(m.equals(n)),
    })
}

/// `(N :_R M) = {r : r M ⊆ N}`.
pub fn colon_into(n: &ModuleRep, m: &ModuleRep) -> Result<TruncatedIdeal> {
    TruncatedIdeal::from_submodule(n.sub.colon(&m.sub)?)
}

/// A minimal reduction `N` of `M` with its certificate.
#[derive(Debug, Clone)]
pub struct ModuleReduction {
    pub reduction: ModuleRep,
    /// Row `j` holds the coefficients of reduction generator `j` in the
    /// generators of `M`.
    pub coefficients: Vec<Vec<FieldElem>>,
    /// `S_1(N) S_t(M) = S_(t+1)(M)`; zero for a free module.
    pub t: u32,
}

/// Largest symmetric power tried for a module reduction certificate.
pub const MODULE_REDUCTION_T_MAX: u32 = 4;

/// Searches for `t <= bound` with `S_1(N) S_t(M) = S_(t+1)(M)`, where
/// `bound = min(ℓ(F/M), t_max)`.
pub fn module_reduction_certificate(n: &ModuleRep, m: &ModuleRep, t_max: u32) -> Result<Option<u32>> {
    if !m.contains(n) {
        return Err(Error::NotContained("candidate reduction is not inside the module".into()));
    }
    let bound = (m.colength().min(t_max as u64) as u32).max(1);
    for t in 1..=bound {
        let hint = Some(m.certificate() * (t + 1) + 2);
        let lhs = SymPower::product_with(n, m, t).colength(m.field, hint)?;
        let rhs = SymPower::new(m, t + 1).colength(m.field, hint)?;
        if lhs == rhs {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// `r + 1` seeded generic combinations of the generators of `M` that form a
/// certified reduction.
pub fn minimal_reduction_module(m: &ModuleRep, sampler: &GenericSampler) -> Result<ModuleReduction> {
    let field = m.field;
    if m.is_free() {
        let n = m.gens.len();
        let coefficients = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        return Ok(ModuleReduction { reduction: m.clone(), coefficients, t: 0 });
    }
    let mut rng = sampler.rng();
    let mut reason = String::new();
    // Parameter modules inside `M` have colength at least `e(F/M)`, with
    // equality for reductions: only the least colength is worth certifying.
    let mut candidates = Vec::new();
    for _ in 0..sampler.retries {
        let coefficients = sampler.coefficient_rows(field, m.gens.len(), m.rank + 1, &mut rng);
        let gens: Vec<Vec<Poly>> = coefficients.iter().map(|c| apply_combination(field, &m.gens, c)).collect();
        match Submodule::from_generators(field, m.rank, gens.clone(), Some(m.certificate() + 2)) {
            Ok(sub) => candidates.push((ModuleRep { field, rank: m.rank, gens, presentation: None, sub }, coefficients)),
            Err(e) => reason = e.to_string(),
        }
    }
    let Some(least) = candidates.iter().map(|(n, _)| n.colength()).min() else {
        return Err(Error::RetryExhausted { attempts: sampler.retries, reason });
    };
    for (n, coefficients) in candidates.into_iter().filter(|(n, _)| n.colength() == least) {
        match module_reduction_certificate(&n, m, MODULE_REDUCTION_T_MAX) {
            Ok(Some(t)) => return Ok(ModuleReduction { reduction: n, coefficients, t }),
            Ok(None) => reason = "no symmetric-power certificate".into(),
            Err(e @ Error::TruncationCeiling { .. }) => reason = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryExhausted { attempts: sampler.retries, reason })
}

/// The presentation with respect to generators whose first `r + 1` span the
/// reduction, with those `r + 1` rows deleted.
pub fn reduction_first_submatrix(m: &ModuleRep, red: &ModuleReduction) -> Result<PolyMatrix> {
    let a = m
        .presentation
        .as_ref()
        .ok_or_else(|| Error::InvalidModule("module has no presentation".into()))?;
    let field = m.field;
    let n = m.gens.len();
    // Columns of q: reduction coefficients, then unit vectors keeping q invertible.
    let mut cols: Vec<Vec<FieldElem>> = red.coefficients.clone();
    let mut span = RowSpace::new(field, n);
    for c in &cols {
        span.insert(&sparse(c));
    }
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let e: Vec<FieldElem> = (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect();
        if span.insert(&sparse(&e)) {
            cols.push(e);
        }
    }
    if cols.len() != n {
        return Err(Error::CrossCheck("reduction generators are not part of a minimal generating set".into()));
    }
    let q: Vec<Vec<FieldElem>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let qinv = invert(field, &q).ok_or_else(|| Error::CrossCheck("singular change of generators".into()))?;
    let skip = red.coefficients.len();
    let mut b = PolyMatrix::zeros(field, n - skip, a.ncols());
    for i in skip..n {
        for j in 0..a.ncols() {
            let mut acc = Poly::zero(field);
            for (k, c) in qinv[i].iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&a.get(k, j).scale(c));
                }
            }
            b.set(i - skip, j, acc);
        }
    }
    Ok(b)
}

fn sparse(v: &[FieldElem]) -> Vec<(usize, FieldElem)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// `adj(I(M)) M`. With a presentation, `I_(n-r-1)(A) M` is computed as well
/// and a mismatch is an error.
pub fn core_module(m: &ModuleRep, sampler: &GenericSampler) -> Result<ModuleRep> {
    if m.is_free() {
        return Ok(m.clone());
    }
    let adj = adjoint_ideal(&m.ideal_i()?, sampler)?;
    let core = m.scale_by_ideal(&adj)?;
    if let Some(via_fitting) = core_via_fitting(m)? {
        if !via_fitting.equals(&core) {
            return Err(Error::CrossCheck(format!("adj(I(M))M = {core} but I_(n-r-1)(A)M = {via_fitting}")));
        }
    }
    Ok(core)
}

/// `I_(n-r-1)(A) M`, when a presentation is known.
pub fn core_via_fitting(m: &ModuleRep) -> Result<Option<ModuleRep>> {
    let Some(a) = &m.presentation else { return Ok(None) };
    let k = m.gens.len() as i64 - m.rank as i64 - 1;
    Ok(Some(m.scale_by_ideal(&fitting(a, k)?)?))
}

/// `core^t(M)`, checking `core^k(M) = adj(I(M))^((r+1)^k - 1)/r M` at each step.
pub fn core_iterate(m: &ModuleRep, t: u32, sampler: &GenericSampler) -> Result<ModuleRep> {
    if t == 0 || m.is_free() {
        return Ok(m.clone());
    }
    let adj = adjoint_ideal(&m.ideal_i()?, sampler)?;
    let r = m.rank as u64;
    let mut current = m.clone();
    for k in 1..=t {
        current = core_module(&current, sampler)?;
        let exponent = ((r + 1).pow(k) - 1) / r;
        let closed = m.scale_by_ideal(&adj.power(exponent as u32)?)?;
        if !closed.equals(&current) {
            return Err(Error::CrossCheck(format!("core^{k}(M) = {current} differs from adj(I(M))^{exponent} M = {closed}")));
        }
    }
    Ok(current)
}
