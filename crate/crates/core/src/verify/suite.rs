use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{Field, Poly};
use crate::error::{Error, Result};
use crate::modcore::{
    buchsbaum_rim, colon_into, core_module, fitting, minimal_reduction_module, reduction_first_submatrix, ModuleRep,
};
use crate::reduction::{
    adjoint_ideal, as_monomial_ideal, hilbert_samuel, minimal_reduction, multiplicity_by_differences,
    multiplicity_by_reduction, GenericSampler,
};
use crate::staircase::MonomialIdeal;
use crate::trunc::TruncatedIdeal;

use super::{Family, Instance, Outcome, SuiteReport, Value, Verdict, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    pub family: Family,
    pub count: usize,
    pub seed: u64,
    pub field: Field,
    /// Record per-check wall time (breaks byte-identical output).
    pub timing: bool,
}

pub fn run_suite(family: Family, count: usize, seed: u64, field: Field) -> SuiteReport {
    run_suite_with(&SuiteOptions { family, count, seed, field, timing: false })
}

/// Cross-check seeds per colon identity.
const SEEDS: u64 = 3;
/// Largest `n - r - 1` for which minors of the reduction-first submatrix are expanded.
const REDUCTION_FIRST_MAX: usize = 6;
/// Number of ideals on which Buchsbaum–Rim is compared with Hilbert–Samuel.
const BR_RANK_ONE_CASES: usize = 10;

pub fn run_suite_with(opts: &SuiteOptions) -> SuiteReport {
    let ctx = Ctx { field: opts.field, seed: opts.seed, timing: opts.timing };
    let cases = Cases::new(opts.count, opts.seed);
    let mut tasks: Vec<Task> = Vec::new();
    for family in Family::ALL {
        if opts.family.includes(family) {
            tasks.extend(family_tasks(family, &cases));
        }
    }
    let reports: Vec<VerificationReport> = tasks
        .par_iter()
        .enumerate()
        .map(|(index, task)| {
            let mut checker = Checker { ctx, instance: task.instance(index), reports: Vec::new() };
            (task.run)(&mut checker);
            checker.reports
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    SuiteReport::new(opts.family, opts.count, opts.seed, opts.field, reports)
}

/// A closure of a random monomial set with `x^a`, `y^b` and up to three more
/// points, all of degree at most 6.
pub fn random_closed_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let mut pts = vec![(rng.gen_range(1..=6u32), 0), (0, rng.gen_range(1..=6u32))];
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(1..=6u32);
        let a = rng.gen_range(0..=d);
        pts.push((a, d - a));
    }
    MonomialIdeal::from_exponents(&pts).expect("nonempty").integral_closure()
}

#[derive(Debug, Clone, Copy)]
struct Ctx {
    field: Field,
    seed: u64,
    timing: bool,
}

impl Ctx {
    fn sampler(&self) -> GenericSampler {
        GenericSampler::new(self.seed)
    }
}

struct Checker {
    ctx: Ctx,
    instance: Instance,
    reports: Vec<VerificationReport>,
}

impl Checker {
    fn field(&self) -> Field {
        self.ctx.field
    }

    fn check(&mut self, theorem: &str, seeds: &[u64], f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let result = f();
        let timing_ms = self.ctx.timing.then(|| (start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
        let mut instance = self.instance.clone();
        instance.seeds = seeds.to_vec();
        let report = match result {
            Ok(o) => {
                instance.orders = o.orders;
                VerificationReport {
                    theorem: theorem.to_string(),
                    instance,
                    lhs: Some(o.lhs),
                    rhs: Some(o.rhs),
                    verdict: o.verdict,
                    witness: o.witness,
                    error: None,
                    timing_ms,
                }
            }
            Err(e) => VerificationReport {
                theorem: theorem.to_string(),
                instance,
                lhs: None,
                rhs: None,
                verdict: Verdict::Error,
                witness: None,
                error: Some(e.to_string()),
                timing_ms,
            },
        };
        self.reports.push(report);
    }
}

type Run = Box<dyn Fn(&mut Checker) + Send + Sync>;

struct Task {
    description: String,
    inputs: Vec<MonomialIdeal>,
    run: Run,
}

impl Task {
    fn new(description: String, inputs: Vec<MonomialIdeal>, run: impl Fn(&mut Checker) + Send + Sync + 'static) -> Self {
        Task { description, inputs, run: Box::new(run) }
    }

    fn instance(&self, index: usize) -> Instance {
        Instance {
            index,
            description: self.description.clone(),
            inputs: self.inputs.iter().map(Value::monomial).collect(),
            staircases: self.inputs.iter().map(|i| i.generators().iter().map(|m| [m.a, m.b]).collect()).collect(),
            seeds: Vec::new(),
            orders: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
struct IdealCase {
    label: String,
    ideal: MonomialIdeal,
}

/// A direct sum of monomial ideals, optionally scaled by another one.
#[derive(Debug, Clone)]
struct ModuleCase {
    label: String,
    parts: Vec<MonomialIdeal>,
    scalar: Option<MonomialIdeal>,
}

impl ModuleCase {
    fn sum(label: String, parts: Vec<MonomialIdeal>) -> Self {
        ModuleCase { label, parts, scalar: None }
    }

    fn description(&self) -> String {
        let sum: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        match &self.scalar {
            Some(a) => format!("{}: {a}·[{}]", self.label, sum.join(" ⊕ ")),
            None => format!("{}: {}", self.label, sum.join(" ⊕ ")),
        }
    }

    fn inputs(&self) -> Vec<MonomialIdeal> {
        self.scalar.iter().chain(&self.parts).cloned().collect()
    }

    /// The unscaled direct sum, with its block presentation.
    fn base(&self, field: Field) -> Result<ModuleRep> {
        build_sum(&self.parts, field)
    }
}

fn build_sum(parts: &[MonomialIdeal], field: Field) -> Result<ModuleRep> {
    let mut acc: Option<ModuleRep> = None;
    for p in parts {
        let m = ModuleRep::from_monomial_ideal(p, field)?;
        acc = Some(match acc {
            None => m,
            Some(a) => a.direct_sum(&m)?,
        });
    }
    acc.ok_or_else(|| Error::Input("empty direct sum".into()))
}

struct Cases {
    fixed_ideals: Vec<IdealCase>,
    random_ideals: Vec<IdealCase>,
    fixed_sums: Vec<ModuleCase>,
    random_sums: Vec<ModuleCase>,
    scaled: Vec<ModuleCase>,
}

impl Cases {
    fn new(count: usize, seed: u64) -> Self {
        let m = MonomialIdeal::max_power;
        let mut fixed_ideals: Vec<IdealCase> =
            (1..=6).map(|n| IdealCase { label: format!("m^{n}"), ideal: m(n) }).collect();
        fixed_ideals.push(IdealCase {
            label: "worked example".into(),
            ideal: MonomialIdeal::from_exponents(&[(3, 0), (1, 1), (0, 2)]).expect("valid"),
        });
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random_ideals: Vec<IdealCase> = (0..count)
            .map(|k| IdealCase { label: format!("random closed ideal {k}"), ideal: random_closed_ideal(&mut rng) })
            .collect();
        let fixed_sums = vec![
            ModuleCase::sum("m^2 ⊕ m^3".into(), vec![m(2), m(3)]),
            ModuleCase::sum("m ⊕ m".into(), vec![m(1), m(1)]),
            ModuleCase::sum("m^3 ⊕ m^3".into(), vec![m(3), m(3)]),
        ];
        let n_sums = (2 * count).div_ceil(5);
        let random_sums: Vec<ModuleCase> = (0..n_sums)
            .map(|k| {
                let a = random_ideals[(2 * k) % count].ideal.clone();
                let b = random_ideals[(2 * k + 1) % count].ideal.clone();
                ModuleCase::sum(format!("random direct sum {k}"), vec![a, b])
            })
            .collect();
        let mut scaled = vec![ModuleCase { label: "m·(m ⊕ m)".into(), parts: vec![m(1), m(1)], scalar: Some(m(1)) }];
        for k in 0..count.div_ceil(10) {
            let base = &random_sums[k % n_sums];
            scaled.push(ModuleCase {
                label: format!("random scaled sum {k}"),
                parts: base.parts.clone(),
                scalar: Some(random_ideals[(3 * k + 2) % count].ideal.clone()),
            });
        }
        Cases { fixed_ideals, random_ideals, fixed_sums, random_sums, scaled }
    }

    fn ideals(&self) -> Vec<IdealCase> {
        self.fixed_ideals.iter().chain(&self.random_ideals).cloned().collect()
    }

    /// Every ideal as a rank-one module, then the direct sums.
    fn presented(&self) -> Vec<ModuleCase> {
        self.ideals()
            .into_iter()
            .map(|c| ModuleCase::sum(c.label, vec![c.ideal]))
            .chain(self.fixed_sums.iter().cloned())
            .chain(self.random_sums.iter().cloned())
            .collect()
    }
}

fn family_tasks(family: Family, cases: &Cases) -> Vec<Task> {
    match family {
        Family::IdealClassics => ideal_classics(cases),
        Family::MainTheorem => main_theorem(cases),
        Family::CoreTheorems => core_theorems(cases),
        Family::MultiplicityFormulas => multiplicity_formulas(cases),
        Family::Counterexamples => counterexamples(),
        Family::All => Vec::new(),
    }
}

fn derived_seeds(ctx: &Ctx) -> Vec<GenericSampler> {
    (0..SEEDS).map(|k| ctx.sampler().derived(k)).collect()
}

fn ideal_classics(cases: &Cases) -> Vec<Task> {
    let ideals = cases.ideals();
    let n = ideals.len();
    (0..n)
        .map(|k| {
            let a = ideals[k].clone();
            let b = ideals[(k + 1) % n].clone();
            let desc = format!("{}: a = {}, b = {}", a.label, a.ideal, b.ideal);
            Task::new(desc, vec![a.ideal.clone(), b.ideal.clone()], move |c| ideal_classics_on(c, &a.ideal, &b.ideal))
        })
        .collect()
}

fn ideal_classics_on(c: &mut Checker, a_mono: &MonomialIdeal, b_mono: &MonomialIdeal) {
    let f = c.field();
    let s = c.ctx.sampler();
    let seed = [s.seed];
    let (a, b) = match (a_mono.to_truncated(f), b_mono.to_truncated(f)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return c.check("instance-generation", &[], || Err(e)),
    };
    for sk in derived_seeds(&c.ctx) {
        c.check("adj-colon-howald", &[sk.seed], || {
            Ok(Outcome::ideals_equal(&adjoint_ideal(&a, &sk)?, &a_mono.adjoint()?.to_truncated(f)?))
        });
    }
    let adj_a = adjoint_ideal(&a, &s);
    let adj_b = adjoint_ideal(&b, &s);
    c.check("adj-contains-ideal", &seed, || Ok(Outcome::ideal_contained(&a, &adj_a.clone()?)));
    c.check("huneke-swanson", &seed, || {
        Ok(Outcome::ideals_equal(&adj_a.clone()?.product(&a)?, &adjoint_ideal(&a.power(2)?, &s)?))
    });
    c.check("core-rank-one", &seed, || {
        let core = core_module(&ModuleRep::from_monomial_ideal(a_mono, f)?, &s)?;
        Ok(Outcome::modules_equal(&core, &ModuleRep::from_ideal(&adj_a.clone()?.product(&a)?)))
    });
    let ab = a.product(&b);
    c.check("kodiyalam-product", &[], || {
        let ab = ab.clone()?;
        let mono = as_monomial_ideal(&ab).ok_or_else(|| Error::Unsupported("product is not monomial".into()))?;
        Ok(Outcome::ideals_equal(&ab, &mono.integral_closure().to_truncated(f)?))
    });
    c.check("subadditivity", &seed, || {
        Ok(Outcome::ideal_contained(&adjoint_ideal(&ab.clone()?, &s)?, &adj_a.clone()?.product(&adj_b.clone()?)?))
    });
    // The identity needs m >= 1: for m = 0 and a = R it would read adj(b) = b.
    for m in 1..=2 {
        c.check(&format!("skoda-m{m}"), &seed, || {
            let lhs = adjoint_ideal(&a.product(&b.power(m + 1)?)?, &s)?;
            let rhs = b.product(&adjoint_ideal(&a.product(&b.power(m)?)?, &s)?)?;
            Ok(Outcome::ideals_equal(&lhs, &rhs))
        });
    }
    let cert = minimal_reduction(&a, &s);
    c.check("reduction-certificate", &seed, || {
        let cert = cert.clone()?;
        let lhs = cert.reduction.product(&a.power(cert.n)?)?.colength();
        let rhs = a.power(cert.n + 1)?.colength();
        Ok(Outcome::integers_equal(lhs as i64, rhs as i64))
    });
    c.check("reduction-multiplicity", &seed, || {
        Ok(Outcome::integers_equal(cert.clone()?.reduction.colength() as i64, a_mono.multiplicity()? as i64))
    });
}

fn main_theorem(cases: &Cases) -> Vec<Task> {
    cases
        .presented()
        .into_iter()
        .map(|m| Task::new(m.description(), m.inputs(), move |c| main_theorem_on(c, &m)))
        .collect()
}

fn main_theorem_on(c: &mut Checker, case: &ModuleCase) {
    let f = c.field();
    let s = c.ctx.sampler();
    let seed = [s.seed];
    let m = match case.base(f) {
        Ok(m) => m,
        Err(e) => return c.check("instance-generation", &[], || Err(e)),
    };
    let a = m.presentation().expect("block presentation").clone();
    let excess = (m.num_generators() - m.rank()) as i64;
    let adj_i = m.ideal_i().and_then(|i| adjoint_ideal(&i, &s));
    c.check("thm-main", &seed, || Ok(Outcome::ideals_equal(&adj_i.clone()?, &fitting(&a, excess - 1)?)));
    for sk in derived_seeds(&c.ctx) {
        c.check("cor-colon", &[sk.seed], || {
            let red = minimal_reduction_module(&m, &sk)?;
            Ok(Outcome::ideals_equal(&colon_into(&red.reduction, &m)?, &adj_i.clone()?))
        });
    }
    // adj^t(I(M)) against I_(n-r-t)(A), down to the unit ideal.
    let mut power = m.ideal_i();
    for t in 0..=excess {
        let k = excess - t;
        let current = power.clone();
        c.check(&format!("prop-adj-powers-t{t}"), &seed, || Ok(Outcome::ideals_equal(&current?, &fitting(&a, k)?)));
        if k > 0 {
            c.check(&format!("prop-fitting-closed-t{t}"), &[], || {
                let fit = fitting(&a, k)?;
                let mono = as_monomial_ideal(&fit).ok_or_else(|| Error::Unsupported("Fitting ideal is not monomial".into()))?;
                Ok(Outcome::ideals_equal(&fit, &mono.integral_closure().to_truncated(f)?))
            });
        }
        power = power.and_then(|p| if p.is_unit() { Ok(p) } else { adjoint_ideal(&p, &s) });
    }
    if excess - 1 <= REDUCTION_FIRST_MAX as i64 && excess >= 2 {
        let red = minimal_reduction_module(&m, &s);
        let b = red.and_then(|r| reduction_first_submatrix(&m, &r));
        for t in 1..excess {
            let k = excess - t;
            c.check(&format!("lemma-reduction-first-t{t}"), &seed, || {
                Ok(Outcome::ideals_equal(&fitting(&a, k)?, &fitting(&b.clone()?, k)?))
            });
        }
    }
}

fn core_theorems(cases: &Cases) -> Vec<Task> {
    let mut tasks: Vec<Task> = cases
        .presented()
        .into_iter()
        .map(|m| Task::new(m.description(), m.inputs(), move |c| core_theorems_on(c, &m)))
        .collect();
    let pair = (MonomialIdeal::max_power(3), MonomialIdeal::max_power(2));
    tasks.push(Task::new(
        "monotone pair: m^3 ⊕ m^3 ⊆ m^2 ⊕ m^3".into(),
        vec![pair.0.clone(), pair.1.clone(), MonomialIdeal::max_power(3)],
        move |c| monotone_on(c, &[pair.0.clone(), MonomialIdeal::max_power(3)], &[pair.1.clone(), MonomialIdeal::max_power(3)]),
    ));
    for case in &cases.random_sums {
        let small = vec![case.parts[0].product(&MonomialIdeal::max_power(1)), case.parts[1].clone()];
        let big = case.parts.clone();
        let desc = format!("monotone pair: m·{} ⊕ {} ⊆ {} ⊕ {}", big[0], big[1], big[0], big[1]);
        tasks.push(Task::new(desc, big.clone(), move |c| monotone_on(c, &small, &big)));
    }
    for case in cases.scaled.iter().cloned() {
        tasks.push(Task::new(case.description(), case.inputs(), move |c| scaled_on(c, &case)));
    }
    tasks
}

fn core_theorems_on(c: &mut Checker, case: &ModuleCase) {
    let f = c.field();
    let s = c.ctx.sampler();
    let seed = [s.seed];
    let m = match case.base(f) {
        Ok(m) => m,
        Err(e) => return c.check("instance-generation", &[], || Err(e)),
    };
    let r = m.rank() as u32;
    let a = m.presentation().expect("block presentation").clone();
    let excess = (m.num_generators() - m.rank()) as i64;
    let adj_i = m.ideal_i().and_then(|i| adjoint_ideal(&i, &s));
    c.check("thm-core-adj", &seed, || {
        Ok(Outcome::modules_equal(&m.scale_by_ideal(&adj_i.clone()?)?, &m.scale_by_ideal(&fitting(&a, excess - 1)?)?))
    });
    let core = core_module(&m, &s);
    if let [p, q] = case.parts.as_slice() {
        c.check("cor-core-sum", &seed, || {
            let adj = p.product(q).adjoint()?;
            let rhs = build_sum(&[adj.product(p), adj.product(q)], f)?;
            Ok(Outcome::modules_equal(&core.clone()?, &rhs))
        });
    }
    c.check("lemma-adj-core", &seed, || {
        let lhs = adjoint_ideal(&core.clone()?.ideal_i()?, &s)?;
        Ok(Outcome::ideals_equal(&lhs, &adj_i.clone()?.power(r + 1)?))
    });
    c.check("prop-core-iterate", &seed, || {
        let twice = core_module(&core.clone()?, &s)?;
        Ok(Outcome::modules_equal(&twice, &m.scale_by_ideal(&adj_i.clone()?.power(r + 2)?)?))
    });
}

fn monotone_on(c: &mut Checker, small: &[MonomialIdeal], big: &[MonomialIdeal]) {
    let f = c.field();
    let s = c.ctx.sampler();
    c.check("prop-monotone", &[s.seed], || {
        let (m, n) = (build_sum(small, f)?, build_sum(big, f)?);
        if !n.contains(&m) {
            return Err(Error::Input("monotone pair is not nested".into()));
        }
        Ok(Outcome::module_contained(&core_module(&m, &s)?, &core_module(&n, &s)?))
    });
}

fn scaled_on(c: &mut Checker, case: &ModuleCase) {
    let f = c.field();
    let s = c.ctx.sampler();
    let seed = [s.seed];
    let scalar = case.scalar.as_ref().expect("scaled case");
    let built = case.base(f).and_then(|m| {
        let a = scalar.to_truncated(f)?;
        let am = m.scale_by_ideal(&a)?;
        Ok((m, a, am))
    });
    let (m, a, am) = match built {
        Ok(x) => x,
        Err(e) => return c.check("instance-generation", &[], || Err(e)),
    };
    let r = m.rank() as u32;
    c.check("lemma-I-aM", &[], || Ok(Outcome::ideals_equal(&am.ideal_i()?, &a.power(r)?.product(&m.ideal_i()?)?)));
    c.check("prop-core-aM", &seed, || {
        let core_a = core_module(&ModuleRep::from_ideal(&a), &s)?;
        let core_a = TruncatedIdeal::from_submodule(core_a.submodule().clone())?;
        let rhs = core_module(&m, &s)?.scale_by_ideal(&a.power(r - 1)?.product(&core_a)?)?;
        Ok(Outcome::module_contained(&core_module(&am, &s)?, &rhs))
    });
}

fn multiplicity_formulas(cases: &Cases) -> Vec<Task> {
    let mut tasks: Vec<Task> = cases
        .ideals()
        .into_iter()
        .enumerate()
        .map(|(k, i)| {
            let br = k < BR_RANK_ONE_CASES;
            Task::new(format!("{}: {}", i.label, i.ideal), vec![i.ideal.clone()], move |c| multiplicity_on(c, &i.ideal, br))
        })
        .collect();
    for m in cases.fixed_sums.iter().chain(&cases.random_sums).cloned() {
        tasks.push(Task::new(m.description(), m.inputs(), move |c| fitting_length_on(c, &m)));
    }
    let mm = vec![MonomialIdeal::max_power(1), MonomialIdeal::max_power(1)];
    tasks.push(Task::new("m ⊕ m: ℓ(Sym_t(F)/S_t(M)) = t(t+1)^2/2".into(), mm.clone(), move |c| {
        let f = c.field();
        c.check("br-direct-sum", &[], || Ok(Outcome::integers_equal(buchsbaum_rim(&build_sum(&mm, f)?)? as i64, 3)));
    }));
    tasks
}

/// `sum_i (-1)^i e(adj^i(a))`, iterating adjoints until the unit ideal.
fn alternating_adjoint_sum(a: &TruncatedIdeal, s: &GenericSampler) -> Result<i64> {
    let mut current = a.clone();
    let mut total = 0i64;
    let mut sign = 1i64;
    for _ in 0..=a.colength() {
        if current.is_unit() {
            return Ok(total);
        }
        total += sign * hilbert_samuel(&current, s)? as i64;
        sign = -sign;
        current = adjoint_ideal(&current, s)?;
    }
    Err(Error::CrossCheck("adjoint chain did not reach the unit ideal".into()))
}

fn multiplicity_on(c: &mut Checker, mono: &MonomialIdeal, br: bool) {
    let f = c.field();
    let s = c.ctx.sampler();
    let seed = [s.seed];
    let a = match mono.to_truncated(f) {
        Ok(a) => a,
        Err(e) => return c.check("instance-generation", &[], || Err(e)),
    };
    c.check("lemma-length-alternating", &seed, || {
        Ok(Outcome::integers_equal(a.colength() as i64, alternating_adjoint_sum(&a, &s)?))
    });
    let covolume = mono.multiplicity();
    c.check("mult-reduction", &seed, || {
        Ok(Outcome::integers_equal(multiplicity_by_reduction(&a, &s)? as i64, covolume.clone()? as i64))
    });
    c.check("mult-differences", &[], || {
        Ok(Outcome::integers_equal(multiplicity_by_differences(&a)? as i64, covolume.clone()? as i64))
    });
    if br {
        c.check("br-rank-one", &seed, || {
            let e = buchsbaum_rim(&ModuleRep::from_monomial_ideal(mono, f)?)?;
            Ok(Outcome::integers_equal(e as i64, hilbert_samuel(&a, &s)? as i64))
        });
    }
    fitting_length_checks(c, &ModuleCase::sum(String::new(), vec![mono.clone()]));
}

fn fitting_length_on(c: &mut Checker, case: &ModuleCase) {
    fitting_length_checks(c, case);
}

/// `ℓ(R/I_(n-r)(A)) = sum_j (-1)^j e(I_(n-r-j)(A))`.
fn fitting_length_checks(c: &mut Checker, case: &ModuleCase) {
    let f = c.field();
    let s = c.ctx.sampler();
    c.check("prop-fitting-length", &[s.seed], || {
        let m = case.base(f)?;
        let a = m.presentation().expect("block presentation").clone();
        let excess = (m.num_generators() - m.rank()) as i64;
        let lhs = fitting(&a, excess)?.colength() as i64;
        let mut rhs = 0i64;
        for j in 0..excess {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            rhs += sign * hilbert_samuel(&fitting(&a, excess - j)?, &s)? as i64;
        }
        Ok(Outcome::integers_equal(lhs, rhs))
    });
}

fn counterexamples() -> Vec<Task> {
    let m2 = MonomialIdeal::max_power(2);
    let x2 = MonomialIdeal::from_exponents(&[(2, 0)]).expect("valid");
    vec![
        Task::new("m^2".into(), vec![m2.clone()], move |c| {
            let f = c.field();
            let s = c.ctx.sampler();
            let seed = [s.seed];
            c.check("remark-core-m2", &seed, || {
                let core = core_module(&ModuleRep::from_monomial_ideal(&m2, f)?, &s)?;
                let core = TruncatedIdeal::from_submodule(core.submodule().clone())?;
                Ok(Outcome::ideals_equal(&core, &TruncatedIdeal::max_power(f, 3)))
            });
            c.check("remark-adj-m2", &seed, || {
                Ok(Outcome::ideals_equal(&adjoint_ideal(&m2.to_truncated(f)?, &s)?, &TruncatedIdeal::max_power(f, 1)))
            });
        }),
        Task::new("(x^2) against m^2".into(), vec![x2.clone(), MonomialIdeal::max_power(2)], move |c| {
            let f = c.field();
            let s = c.ctx.sampler();
            c.check("remark-core-x2", &[s.seed], || {
                let x2p = Poly::xy(f, 2, 0);
                // The principal ideal is its own only reduction, so core((x^2)) = (x^2);
                // the engine refuses to compute it.
                let rejection = match TruncatedIdeal::new(f, vec![x2p.clone()]) {
                    Err(e @ Error::NotMPrimary) => e.to_string(),
                    Err(e) => return Err(Error::CrossCheck(format!("unexpected rejection of (x^2): {e}"))),
                    Ok(_) => return Err(Error::CrossCheck("(x^2) was accepted as m-primary".into())),
                };
                let core_m2 = core_module(&ModuleRep::from_monomial_ideal(&MonomialIdeal::max_power(2), f)?, &s)?;
                let core_m2 = TruncatedIdeal::from_submodule(core_m2.submodule().clone())?;
                let mut o = Outcome::expected_non_containment(Value::monomial(&x2), &core_m2, &x2p, true);
                if let Some(w) = o.witness.as_mut() {
                    w.detail = format!("{}; core((x^2)) computation rejected: {rejection}", w.detail);
                }
                Ok(o)
            });
        }),
    ]
}
