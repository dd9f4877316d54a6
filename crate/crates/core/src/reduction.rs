//! Reductions, integral dependence, adjoints and multiplicities of ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, FieldElem, Monomial, Poly};
use crate::error::{Error, Result};
use crate::staircase::MonomialIdeal;
use crate::trunc::{TruncatedIdeal, SHADOW_PRIME};

/// Seeded source of generic linear combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericSampler {
    pub seed: u64,
    /// Rational coefficients are drawn from `{-bound..=bound} \ {0}`.
    pub bound: i64,
    pub retries: usize,
}

impl Default for GenericSampler {
    fn default() -> Self {
        GenericSampler { seed: 42, bound: 10, retries: 8 }
    }
}

impl GenericSampler {
    pub fn new(seed: u64) -> Self {
        GenericSampler { seed, ..Self::default() }
    }

    /// A sampler with an independent seed, for cross-checks.
    pub fn derived(&self, k: u64) -> Self {
        GenericSampler { seed: self.seed.wrapping_add(k.wrapping_mul(0x9e37_79b9_7f4a_7c15)), ..*self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn coefficient(&self, field: Field, rng: &mut ChaCha8Rng) -> FieldElem {
        match field {
            Field::Rational => {
                let mut c = rng.gen_range(-self.bound..self.bound);
                if c >= 0 {
                    c += 1;
                }
                field.from_i64(c)
            }
            Field::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
        }
    }

    /// `count` rows of nonzero coefficients, one per vector.
    pub fn coefficient_rows(&self, field: Field, n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<FieldElem>> {
        (0..count).map(|_| (0..n).map(|_| self.coefficient(field, rng)).collect()).collect()
    }

    /// `count` random combinations of `vectors` with nonzero coefficients.
    pub fn combine(&self, field: Field, vectors: &[Vec<Poly>], count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Poly>> {
        let rows = self.coefficient_rows(field, vectors.len(), count, rng);
        rows.iter().map(|row| apply_combination(field, vectors, row)).collect()
    }
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn apply_combination(field: Field, vectors: &[Vec<Poly>], coeffs: &[FieldElem]) -> Vec<Poly> {
    let len = vectors.first().map_or(0, Vec::len);
    let mut acc = vec![Poly::zero(field); len];
    for (v, c) in vectors.iter().zip(coeffs) {
        for (a, p) in acc.iter_mut().zip(v) {
            *a = a.add(&p.scale(c));
        }
    }
    acc
}

/// Evidence that `J I^n = I^(n+1)`.
#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    pub reduction: TruncatedIdeal,
    pub n: u32,
    /// `ℓ(R / J I^n)`.
    pub lhs_colength: u64,
    /// `ℓ(R / I^(n+1))`.
    pub rhs_colength: u64,
}

impl ReductionCertificate {
    /// Recomputes both sides of the recorded equality.
    pub fn recheck(&self, ideal: &TruncatedIdeal) -> Result<bool> {
        let pow = ideal.power(self.n)?;
        let lhs = self.reduction.product(&pow)?;
        let rhs = pow.product(ideal)?;
        Ok(ideal.contains(&self.reduction)
            && lhs.colength() == self.lhs_colength
            && rhs.colength() == self.rhs_colength
            && lhs.equals(&rhs))
    }
}

#[derive(Debug, Clone)]
pub enum ReductionOutcome {
    Certified(ReductionCertificate),
    /// No `n <= nmax` works. This is not a proof that `J` is not a reduction.
    NotUpToBound { nmax: u32 },
}

impl ReductionOutcome {
    pub fn certificate(self) -> Option<ReductionCertificate> {
        match self {
            ReductionOutcome::Certified(c) => Some(c),
            ReductionOutcome::NotUpToBound { .. } => None,
        }
    }
}

/// Searches for `n <= nmax` with `J I^n = I^(n+1)`; `nmax` defaults to `ℓ(R/J)`.
pub fn is_reduction(j: &TruncatedIdeal, i: &TruncatedIdeal, nmax: Option<u32>) -> Result<ReductionOutcome> {
    if let Some(g) = i.witness_not_containing(j) {
        return Err(Error::NotContained(format!("generator {g} of the candidate reduction is not in {i}")));
    }
    if i.equals(j) {
        return Ok(ReductionOutcome::Certified(ReductionCertificate {
            reduction: j.clone(),
            n: 0,
            lhs_colength: j.colength(),
            rhs_colength: i.colength(),
        }));
    }
    let nmax = nmax.unwrap_or_else(|| j.colength().min(u32::MAX as u64) as u32).max(1);
    let shadows = j.shadow().zip(i.shadow());
    let mut pow = i.clone();
    let mut pow_shadow = shadows.as_ref().map(|(_, s)| s.clone());
    for n in 1..=nmax {
        let rhs = pow.product(i)?;
        // J I^n ⊆ I^(n+1) bounds ℓ(R/J I^n) from below and the shadow bounds
        // it from above; equal colengths mean equality.
        let from_shadow = match (&shadows, &pow_shadow) {
            (Some((js, _)), Some(ps)) => js.product(ps).ok().map(|x| x.colength()),
            _ => None,
        };
        let lhs_colength = match from_shadow {
            Some(c) if c == rhs.colength() => c,
            _ => j.product(&pow)?.colength(),
        };
        if lhs_colength == rhs.colength() {
            return Ok(ReductionOutcome::Certified(ReductionCertificate {
                reduction: j.clone(),
                n,
                lhs_colength,
                rhs_colength: rhs.colength(),
            }));
        }
        pow_shadow = match (&shadows, pow_shadow) {
            (Some((_, is)), Some(ps)) => ps.product(is).ok(),
            _ => None,
        };
        pow = rhs;
    }
    Ok(ReductionOutcome::NotUpToBound { nmax })
}

/// A 2-generated minimal reduction from seeded generic combinations of the
/// minimal generators. Ideals with at most two generators are their own.
pub fn minimal_reduction(i: &TruncatedIdeal, sampler: &GenericSampler) -> Result<ReductionCertificate> {
    let gens = i.generators();
    if gens.len() <= 2 {
        return Ok(ReductionCertificate { reduction: i.clone(), n: 0, lhs_colength: i.colength(), rhs_colength: i.colength() });
    }
    let field = i.field();
    let vectors: Vec<Vec<Poly>> = gens.into_iter().map(|g| vec![g]).collect();
    let mut rng = sampler.rng();
    // A 2-generated `J ⊆ I` has colength `e(J) >= e(I)` with equality exactly
    // for reductions, so candidates are certified in order of colength.
    let draws: Vec<Vec<Poly>> = (0..sampler.retries)
        .map(|_| sampler.combine(field, &vectors, 2, &mut rng).into_iter().map(|mut v| v.remove(0)).collect())
        .collect();
    let mut reason = String::from("no candidate reached a certificate");
    let mut built: Vec<(u64, TruncatedIdeal)> = Vec::new();
    if field == Field::Rational {
        // Exact elimination over Q is costly, so rank by the colength of the
        // image mod a large prime (never below the colength over Q) and build
        // lazily.
        let mut ranked: Vec<(u64, usize, Option<u32>)> = draws
            .iter()
            .enumerate()
            .map(|(k, gens)| match shadow_of(gens, i.order()) {
                // The shadow's certificate is the likely one over Q; the
                // build raises the order if it is not.
                Some(js) => (js.colength(), k, Some(js.certificate() + 2)),
                None => (u64::MAX, k, Some(i.order())),
            })
            .collect();
        ranked.sort();
        for (_, k, hint) in ranked {
            match TruncatedIdeal::with_hint(field, draws[k].clone(), hint) {
                Ok(j) => match certify_candidate(&j, i)? {
                    Ok(c) => return Ok(c),
                    Err(r) => reason = r,
                },
                Err(e) => reason = e.to_string(),
            }
        }
        return Err(Error::RetryExhausted { attempts: sampler.retries, reason });
    }
    for gens in draws {
        match TruncatedIdeal::with_hint(field, gens, Some(i.order())) {
            Ok(j) => built.push((j.colength(), j)),
            Err(e) => reason = e.to_string(),
        }
    }
    built.sort_by_key(|(c, _)| *c);
    for (_, j) in &built {
        match certify_candidate(j, i)? {
            Ok(c) => return Ok(c),
            Err(r) => reason = r,
        }
    }
    Err(Error::RetryExhausted { attempts: sampler.retries, reason })
}

fn shadow_of(gens: &[Poly], hint: u32) -> Option<TruncatedIdeal> {
    let image = gens.iter().map(|g| g.reduce_mod(SHADOW_PRIME)).collect::<Option<Vec<_>>>()?;
    TruncatedIdeal::with_hint(Field::Prime(SHADOW_PRIME), image, Some(hint)).ok()
}

/// The certificate for `j`, or why there is none. Hard errors propagate.
fn certify_candidate(j: &TruncatedIdeal, i: &TruncatedIdeal) -> Result<std::result::Result<ReductionCertificate, String>> {
    match is_reduction(j, i, None) {
        Ok(ReductionOutcome::Certified(c)) => Ok(Ok(c)),
        Ok(ReductionOutcome::NotUpToBound { nmax }) => Ok(Err(format!("no reduction certificate up to n = {nmax}"))),
        Err(e @ Error::TruncationCeiling { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

/// Outcome of an integral-dependence test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Integrality {
    /// `I (I + (f))^n = (I + (f))^(n+1)`.
    Integral { n: u32 },
    /// `e(I) != e(I + (f))`, so `f` is not integral over `I`.
    NotIntegral { e_ideal: u64, e_extended: u64 },
    /// No certificate up to the bound and no multiplicity obstruction found.
    Unknown { nmax: u32 },
}

/// Decides `f ∈ Ī` by asking whether `I` is a reduction of `I + (f)`.
pub fn is_integral_element(f: &Poly, i: &TruncatedIdeal, nmax: u32, sampler: &GenericSampler) -> Result<Integrality> {
    if i.contains_poly(f) {
        return Ok(Integrality::Integral { n: 0 });
    }
    if !f.constant_term().is_zero() {
        let e = hilbert_samuel(i, sampler)?;
        return Ok(Integrality::NotIntegral { e_ideal: e, e_extended: 0 });
    }
    let mut gens = i.generators();
    gens.push(f.clone());
    let ext = TruncatedIdeal::with_hint(i.field(), gens, Some(i.order()))?;
    if let ReductionOutcome::Certified(c) = is_reduction(i, &ext, Some(nmax))? {
        return Ok(Integrality::Integral { n: c.n });
    }
    let (e1, e2) = (hilbert_samuel(i, sampler)?, hilbert_samuel(&ext, sampler)?);
    if e1 != e2 {
        Ok(Integrality::NotIntegral { e_ideal: e1, e_extended: e2 })
    } else {
        Ok(Integrality::Unknown { nmax })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMode {
    Monomial,
    Candidate,
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub ideal: TruncatedIdeal,
    /// False when the result is only known to lie between `I` and `Ī`.
    pub exact: bool,
}

/// Monomial ideal underlying `i`, if its generators are monomials.
pub fn as_monomial_ideal(i: &TruncatedIdeal) -> Option<MonomialIdeal> {
    i.monomial_generators().map(|ms| MonomialIdeal::new(ms).expect("nonzero ideal"))
}

pub fn integral_closure_ideal(i: &TruncatedIdeal, mode: ClosureMode, sampler: &GenericSampler) -> Result<ClosureResult> {
    if i.is_unit() {
        return Ok(ClosureResult { ideal: i.clone(), exact: true });
    }
    if let Some(mono) = as_monomial_ideal(i) {
        if mode == ClosureMode::Monomial {
            let ideal = mono.integral_closure().to_truncated(i.field())?;
            return Ok(ClosureResult { ideal, exact: true });
        }
    } else if mode == ClosureMode::Monomial {
        return Err(Error::Unsupported("monomial closure of a non-monomial ideal".into()));
    }
    // Candidate mode: add every monomial below the certificate degree that
    // passes the integrality test.
    let field = i.field();
    let mut gens = i.generators();
    let mut exact = as_monomial_ideal(i).is_some();
    let mut current = i.clone();
    loop {
        let mut added = false;
        for d in 1..i.certificate() {
            for m in Monomial::of_degree(d) {
                let f = Poly::monomial(field, m);
                if current.contains_poly(&f) {
                    continue;
                }
                match is_integral_element(&f, i, 2, sampler)? {
                    Integrality::Integral { .. } => {
                        gens.push(f);
                        current = TruncatedIdeal::with_hint(field, gens.clone(), Some(i.order()))?;
                        added = true;
                    }
                    Integrality::NotIntegral { .. } => {}
                    Integrality::Unknown { .. } => exact = false,
                }
            }
        }
        if !added {
            break;
        }
    }
    Ok(ClosureResult { ideal: current, exact })
}

/// `adj(I) = (J : Ī)` for a minimal reduction `J` of `Ī`. Monomial inputs are
/// closed first; other inputs are taken to be integrally closed.
pub fn adjoint_ideal(i: &TruncatedIdeal, sampler: &GenericSampler) -> Result<TruncatedIdeal> {
    if i.is_unit() {
        return Ok(i.clone());
    }
    let closed = match as_monomial_ideal(i) {
        Some(mono) => mono.integral_closure().to_truncated(i.field())?,
        None => i.clone(),
    };
    let cert = minimal_reduction(&closed, sampler)?;
    cert.reduction.colon(&closed)
}

/// Runs [`adjoint_ideal`] under `seeds` derived samplers and errors unless all agree.
pub fn adjoint_cross_checked(i: &TruncatedIdeal, sampler: &GenericSampler, seeds: u64) -> Result<TruncatedIdeal> {
    let first = adjoint_ideal(i, sampler)?;
    for k in 1..seeds {
        let other = adjoint_ideal(i, &sampler.derived(k))?;
        if !other.equals(&first) {
            return Err(Error::CrossCheck(format!("adjoint depends on the sampled reduction: {first} vs {other}")));
        }
    }
    Ok(first)
}

/// `adj^t(I)`, stopping early at the unit ideal.
pub fn adjoint_iterate(i: &TruncatedIdeal, t: u32, sampler: &GenericSampler) -> Result<TruncatedIdeal> {
    let mut acc = i.clone();
    for _ in 0..t {
        if acc.is_unit() {
            break;
        }
        acc = adjoint_ideal(&acc, sampler)?;
    }
    Ok(acc)
}

/// Multiplicity as the colength of a certified minimal reduction.
pub fn multiplicity_by_reduction(i: &TruncatedIdeal, sampler: &GenericSampler) -> Result<u64> {
    if i.is_unit() {
        return Ok(0);
    }
    Ok(minimal_reduction(i, sampler)?.reduction.colength())
}

/// Largest power used by [`multiplicity_by_differences`].
pub const HILBERT_MAX_POWER: u32 = 12;

/// Multiplicity as the second difference of `n -> ℓ(R/I^n)`, once it is
/// constant over three consecutive `n`.
pub fn multiplicity_by_differences(i: &TruncatedIdeal) -> Result<u64> {
    if i.is_unit() {
        return Ok(0);
    }
    let mut lengths = vec![0u64, i.colength()];
    let mut pow = i.clone();
    let mut diffs: Vec<i64> = Vec::new();
    for _ in 2..=HILBERT_MAX_POWER {
        pow = pow.product(i)?;
        lengths.push(pow.colength());
        let k = lengths.len();
        diffs.push(lengths[k - 1] as i64 - 2 * lengths[k - 2] as i64 + lengths[k - 3] as i64);
        if let [.., a, b, c] = diffs[..] {
            if a == b && b == c {
                return Ok(c as u64);
            }
        }
    }
    Err(Error::NoStabilization(HILBERT_MAX_POWER as usize))
}

/// `e(I)`, computed by both methods; disagreement is an error.
pub fn hilbert_samuel(i: &TruncatedIdeal, sampler: &GenericSampler) -> Result<u64> {
    let reduction = multiplicity_by_reduction(i, sampler)?;
    let difference = multiplicity_by_differences(i)?;
    if reduction != difference {
        return Err(Error::MethodDisagreement { reduction, difference });
    }
    Ok(reduction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    const Q: Field = Field::Rational;
    const P: Field = Field::Prime(65537);

    fn ideal(field: Field, gens: &[&str]) -> TruncatedIdeal {
        TruncatedIdeal::new(field, gens.iter().map(|s| parse_poly(s, field).unwrap()).collect()).unwrap()
    }

    fn m(field: Field, n: u32) -> TruncatedIdeal {
        TruncatedIdeal::max_power(field, n)
    }

    fn s() -> GenericSampler {
        GenericSampler::new(42)
    }

    #[test]
    fn sampler_is_deterministic() {
        let v = vec![vec![Poly::xy(Q, 2, 0)], vec![Poly::xy(Q, 1, 1)], vec![Poly::xy(Q, 0, 2)]];
        let a = s().combine(Q, &v, 2, &mut s().rng());
        let b = s().combine(Q, &v, 2, &mut s().rng());
        assert_eq!(a, b);
        for c in a.iter().flat_map(|w| w[0].terms().map(|(_, c)| c.clone())) {
            assert!(!c.is_zero());
        }
        assert_ne!(s().derived(1).seed, s().seed);
    }

    #[test]
    fn reduction_examples() {
        let c = is_reduction(&ideal(Q, &["x^2", "y^2"]), &m(Q, 2), None).unwrap().certificate().unwrap();
        assert_eq!(c.n, 1);
        assert_eq!(c.lhs_colength, 10);
        assert!(c.recheck(&m(Q, 2)).unwrap());
        let c = is_reduction(&ideal(Q, &["x^2 + y^2", "x*y"]), &m(Q, 2), None).unwrap().certificate().unwrap();
        assert_eq!(c.n, 1);
        // colength 9 differs from e(m^2) = 4
        let out = is_reduction(&ideal(Q, &["x^3", "y^3"]), &m(Q, 2), Some(4)).unwrap();
        assert!(matches!(out, ReductionOutcome::NotUpToBound { nmax: 4 }));
        assert!(is_reduction(&m(Q, 1), &m(Q, 2), None).is_err());
    }

    #[test]
    fn minimal_reduction_examples() {
        for field in [Q, P] {
            let c = minimal_reduction(&m(field, 2), &s()).unwrap();
            assert_eq!(c.reduction.generators().len(), 2);
            assert_eq!(c.reduction.colength(), 4);
            assert!(c.recheck(&m(field, 2)).unwrap());
            let i = ideal(field, &["x^3", "x*y", "y^2"]);
            let c = minimal_reduction(&i, &s()).unwrap();
            assert_eq!(c.reduction.colength(), 5);
        }
        assert_eq!(TruncatedIdeal::new(Q, vec![Poly::xy(Q, 1, 0)]).unwrap_err(), Error::NotMPrimary);
    }

    #[test]
    fn integrality_examples() {
        let i = ideal(Q, &["x^2", "y^2"]);
        assert_eq!(is_integral_element(&Poly::xy(Q, 1, 1), &i, 3, &s()).unwrap(), Integrality::Integral { n: 1 });
        assert_eq!(
            is_integral_element(&Poly::xy(Q, 1, 0), &i, 3, &s()).unwrap(),
            Integrality::NotIntegral { e_ideal: 4, e_extended: 2 }
        );
        assert_eq!(is_integral_element(&Poly::xy(Q, 2, 0), &i, 3, &s()).unwrap(), Integrality::Integral { n: 0 });
    }

    #[test]
    fn closure_modes() {
        let i = ideal(Q, &["x^2", "y^2"]);
        let mono = integral_closure_ideal(&i, ClosureMode::Monomial, &s()).unwrap();
        assert!(mono.exact);
        assert!(mono.ideal.equals(&m(Q, 2)));
        let cand = integral_closure_ideal(&i, ClosureMode::Candidate, &s()).unwrap();
        assert!(cand.exact);
        assert!(cand.ideal.equals(&m(Q, 2)));
        for n in 1..4 {
            assert!(integral_closure_ideal(&m(Q, n), ClosureMode::Monomial, &s()).unwrap().ideal.equals(&m(Q, n)));
        }
        let cusp = ideal(Q, &["x^2 - y^3", "x*y"]);
        assert!(integral_closure_ideal(&cusp, ClosureMode::Monomial, &s()).is_err());
        let c = integral_closure_ideal(&cusp, ClosureMode::Candidate, &s()).unwrap();
        assert!(c.ideal.contains(&cusp));
        assert!(!c.exact);
    }

    #[test]
    fn adjoint_examples() {
        for field in [Q, P] {
            assert!(adjoint_ideal(&m(field, 2), &s()).unwrap().equals(&m(field, 1)));
            assert!(adjoint_ideal(&ideal(field, &["x^3", "x*y", "y^2"]), &s()).unwrap().equals(&m(field, 1)));
            assert!(adjoint_ideal(&m(field, 5), &s()).unwrap().equals(&m(field, 4)));
        }
        assert!(adjoint_cross_checked(&m(Q, 3), &s(), 3).unwrap().equals(&m(Q, 2)));
        assert!(adjoint_iterate(&m(Q, 5), 2, &s()).unwrap().equals(&m(Q, 3)));
        assert!(adjoint_iterate(&m(Q, 5), 0, &s()).unwrap().equals(&m(Q, 5)));
        assert!(adjoint_iterate(&m(Q, 2), 2, &s()).unwrap().is_unit());
        assert!(adjoint_iterate(&m(Q, 2), 5, &s()).unwrap().is_unit());
    }

    #[test]
    fn multiplicity_examples() {
        for n in 1..5 {
            assert_eq!(hilbert_samuel(&m(P, n), &s()).unwrap(), (n * n) as u64);
        }
        assert_eq!(hilbert_samuel(&ideal(Q, &["x^3", "x*y", "y^2"]), &s()).unwrap(), 5);
        assert_eq!(hilbert_samuel(&TruncatedIdeal::unit(Q), &s()).unwrap(), 0);
        assert_eq!(hilbert_samuel(&ideal(Q, &["x^2 - y^3", "x*y"]), &s()).unwrap(), 5);
    }
}
