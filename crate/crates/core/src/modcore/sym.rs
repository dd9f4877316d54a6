//! Symmetric powers `S_t(M) ⊆ Sym_t(F)` and Buchsbaum–Rim multiplicity.

use std::collections::{BTreeMap, HashMap};

use crate::arith::{Field, Poly};
use crate::error::{Error, Result};
use crate::trunc::Submodule;

use super::ModuleRep;

/// Element of `Sym_t(R^r)`: slot monomial (exponent vector) to coefficient.
type SymElem = BTreeMap<Vec<u32>, Poly>;

/// Exponent vectors of degree `t` in `r` slot variables, lexicographically decreasing.
pub fn slot_basis(r: usize, t: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, t: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == r {
            prefix.push(t);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=t).rev() {
            prefix.push(e);
            rec(r, t - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        rec(r, t, &mut Vec::new(), &mut out);
    }
    out
}

fn lift(v: &[Poly]) -> SymElem {
    let r = v.len();
    let mut out = SymElem::new();
    for (k, p) in v.iter().enumerate() {
        if !p.is_zero() {
            let mut e = vec![0; r];
            e[k] = 1;
            out.insert(e, p.clone());
        }
    }
    out
}

fn multiply(a: &SymElem, b: &SymElem) -> SymElem {
    let mut out = SymElem::new();
    for (ea, pa) in a {
        for (eb, pb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let term = pa.mul(pb);
            let slot = out.entry(e).or_insert_with(|| Poly::zero(term.field()));
            *slot = slot.add(&term);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Generators of `S_t(M)` as vectors over the slot basis of `Sym_t(R^r)`.
#[derive(Debug, Clone)]
pub struct SymPower {
    pub degree: u32,
    pub rank: usize,
    pub basis: Vec<Vec<u32>>,
    pub gens: Vec<Vec<Poly>>,
}

fn flatten(field: Field, basis: &[Vec<u32>], elems: &[SymElem]) -> Vec<Vec<Poly>> {
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    elems
        .iter()
        .map(|el| {
            let mut v = vec![Poly::zero(field); basis.len()];
            for (e, p) in el {
                v[index[e]] = p.clone();
            }
            v
        })
        .collect()
}

/// Products `g_{i_1} ... g_{i_t}` over multisets `i_1 <= ... <= i_t`.
fn products(vectors: &[Vec<Poly>], t: u32) -> Vec<SymElem> {
    let lifted: Vec<SymElem> = vectors.iter().map(|v| lift(v)).collect();
    let r = vectors.first().map_or(0, Vec::len);
    let mut layer: Vec<(usize, SymElem)> = vec![(0, BTreeMap::from([(vec![0; r], one_like(vectors))]))];
    for _ in 0..t {
        let mut next = Vec::new();
        for (last, el) in &layer {
            for (j, g) in lifted.iter().enumerate().skip(*last) {
                next.push((j, multiply(el, g)));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|(_, e)| e).filter(|e| !e.is_empty()).collect()
}

fn one_like(vectors: &[Vec<Poly>]) -> Poly {
    Poly::one(vectors[0][0].field())
}

impl SymPower {
    pub fn new(m: &ModuleRep, t: u32) -> Self {
        let basis = slot_basis(m.rank(), t);
        let gens = flatten(m.field(), &basis, &products(m.generators(), t));
        SymPower { degree: t, rank: basis.len(), basis, gens }
    }

    /// `S_1(N) * S_t(M)` inside `Sym_(t+1)(F)`.
    pub fn product_with(n: &ModuleRep, m: &ModuleRep, t: u32) -> Self {
        let basis = slot_basis(m.rank(), t + 1);
        let left: Vec<SymElem> = n.generators().iter().map(|v| lift(v)).collect();
        let right = products(m.generators(), t);
        let elems: Vec<SymElem> = left.iter().flat_map(|a| right.iter().map(move |b| multiply(a, b))).collect();
        let gens = flatten(m.field(), &basis, &elems);
        SymPower { degree: t + 1, rank: basis.len(), basis, gens }
    }

    /// `ℓ(Sym_t(F) / span of the generators)`.
    pub fn colength(&self, field: Field, hint: Option<u32>) -> Result<u64> {
        if self.degree == 0 {
            return Ok(0);
        }
        Submodule::certified_colength(field, self.rank, &self.gens, hint).map(|(c, _)| c)
    }
}

/// `ℓ(Sym_t(F) / S_t(M))`.
pub fn sym_colength(m: &ModuleRep, t: u32) -> Result<u64> {
    if t == 0 || m.is_free() {
        return Ok(0);
    }
    SymPower::new(m, t).colength(m.field(), Some(m.certificate() * t + 2))
}

/// Default largest symmetric power for Buchsbaum–Rim stabilization.
pub const BR_T_MAX: u32 = 12;

/// Buchsbaum–Rim multiplicity data: lengths `ℓ_0, ℓ_1, ...` and the
/// `(r+1)`-th differences that stabilized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchsbaumRim {
    pub multiplicity: u64,
    pub lengths: Vec<u64>,
    pub differences: Vec<i64>,
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `e(F/M)` as the `(r+1)`-th difference of `t -> ℓ(Sym_t(F)/S_t(M))`,
/// accepted once constant over three consecutive `t`.
pub fn buchsbaum_rim_with(m: &ModuleRep, t_max: u32) -> Result<BuchsbaumRim> {
    if m.is_free() {
        return Ok(BuchsbaumRim { multiplicity: 0, lengths: vec![0], differences: Vec::new() });
    }
    let order = m.rank() as u64 + 1;
    let mut lengths = vec![0u64];
    let mut differences: Vec<i64> = Vec::new();
    for t in 1..=t_max {
        lengths.push(sym_colength(m, t)?);
        if (t as u64) < order {
            continue;
        }
        let base = t as usize - order as usize;
        let d: i64 = (0..=order)
            .map(|i| {
                let sign = if (order - i) % 2 == 0 { 1 } else { -1 };
                sign * binomial(order, i) * lengths[base + i as usize] as i64
            })
            .sum();
        differences.push(d);
        if let [.., a, b, c] = differences[..] {
            if a == b && b == c {
                if c < 0 {
                    return Err(Error::CrossCheck(format!("negative Buchsbaum–Rim difference {c}")));
                }
                return Ok(BuchsbaumRim { multiplicity: c as u64, lengths, differences });
            }
        }
    }
    Err(Error::NoStabilization(t_max as usize))
}

pub fn buchsbaum_rim(m: &ModuleRep) -> Result<u64> {
    buchsbaum_rim_with(m, BR_T_MAX).map(|b| b.multiplicity)
}
