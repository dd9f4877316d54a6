//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines come out in order.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regcore::arith::{parse_poly, Field, PolyMatrix};
use regcore::modcore::{buchsbaum_rim, buchsbaum_rim_with, core_module, fitting, ModuleRep};
use regcore::reduction::{
    adjoint_ideal, hilbert_samuel, integral_closure_ideal, multiplicity_by_differences, multiplicity_by_reduction,
    ClosureMode, GenericSampler,
};
use regcore::staircase::MonomialIdeal;
use regcore::trunc::TruncatedIdeal;
use regcore::verify::{random_closed_ideal, render_report, run_suite, Family, Format, SuiteReport};
use regcore::Error;

const Q: Field = Field::Rational;
const SEED: u64 = 42;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f65537() -> Field {
    Field::prime(65537).unwrap()
}

fn ideal(field: Field, gens: &[&str]) -> TruncatedIdeal {
    TruncatedIdeal::new(field, gens.iter().map(|g| parse_poly(g, field).unwrap()).collect()).unwrap()
}

fn err(e: Error) -> String {
    e.to_string()
}

fn sampler() -> GenericSampler {
    GenericSampler::new(SEED)
}

fn as_ideal(m: &ModuleRep) -> Result<TruncatedIdeal, String> {
    TruncatedIdeal::from_submodule(m.submodule().clone()).map_err(err)
}

fn suite_passes(report: &SuiteReport) -> Result<(), String> {
    let s = report.summary;
    if s.all_passed() {
        return Ok(());
    }
    let first = report.reports.iter().find(|r| r.verdict != regcore::verify::Verdict::Pass).unwrap();
    Err(format!(
        "{} over {}: {} failed, {} errors; first: {} on {} {}",
        report.family,
        report.field,
        s.failed,
        s.errors,
        first.theorem,
        first.instance.description,
        first.error.clone().unwrap_or_default()
    ))
}

fn theorems(report: &SuiteReport) -> BTreeSet<&str> {
    report.reports.iter().map(|r| r.theorem.as_str()).collect()
}

fn remark() -> Outcome {
    let s = sampler();
    let core = core_module(&ModuleRep::from_monomial_ideal(&MonomialIdeal::max_power(2), Q).map_err(err)?, &s).map_err(err)?;
    ensure!(as_ideal(&core)?.equals(&TruncatedIdeal::max_power(Q, 3)), "core(m^2) != m^3");
    match TruncatedIdeal::new(Q, vec![parse_poly("x^2", Q).unwrap()]) {
        Err(e @ Error::NotMPrimary) => ensure!(e.to_string() == "ideal is not m-primary", "message {e}"),
        other => return Err(format!("(x^2) not rejected: {other:?}")),
    }
    let report = run_suite(Family::Counterexamples, 0, SEED, Q);
    suite_passes(&report)?;
    let names = theorems(&report);
    for t in ["remark-core-m2", "remark-adj-m2", "remark-core-x2"] {
        ensure!(names.contains(t), "suite lacks {t}");
    }
    Ok(format!("{} checks", report.summary.total))
}

fn worked_example() -> Outcome {
    let s = sampler();
    let i = ideal(Q, &["x^3", "x*y", "y^2"]);
    let m = TruncatedIdeal::max_power(Q, 1);
    let closure = integral_closure_ideal(&i, ClosureMode::Candidate, &s).map_err(err)?;
    ensure!(closure.ideal.equals(&i), "closure(I) != I");
    ensure!(adjoint_ideal(&i, &s).map_err(err)?.equals(&m), "adj(I) != m by the colon method");
    let mono = MonomialIdeal::from_exponents(&[(3, 0), (1, 1), (0, 2)]).unwrap();
    ensure!(mono.adjoint().map_err(err)?.to_truncated(Q).map_err(err)?.equals(&m), "adj(I) != m by lattice points");
    ensure!(i.colength() == 4, "colength {}", i.colength());
    ensure!(hilbert_samuel(&i, &s).map_err(err)? == 5, "e(I) != 5");

    let a = mono.presentation(Q);
    let rows = [["y", "0"], ["-x^2", "y"], ["0", "-x"]];
    let expected =
        PolyMatrix::from_rows(Q, rows.iter().map(|r| r.iter().map(|e| parse_poly(e, Q).unwrap()).collect()).collect())
            .unwrap();
    ensure!(a == expected, "presentation {a:?}");
    ensure!(fitting(&a, 2).map_err(err)?.equals(&i), "I_2(A) != I");
    ensure!(fitting(&a, 1).map_err(err)?.equals(&m), "I_1(A) != m");

    let adj = adjoint_ideal(&i, &s).map_err(err)?;
    let adj2 = adjoint_ideal(&adj, &s).map_err(err)?;
    ensure!(adj2.is_unit(), "adj^2(I) is not the unit ideal");
    let terms = [hilbert_samuel(&i, &s).map_err(err)?, hilbert_samuel(&adj, &s).map_err(err)?, 0];
    ensure!(terms == [5, 1, 0], "alternating terms {terms:?}");
    ensure!(terms[0] - terms[1] + terms[2] == i.colength(), "alternating sum != colength");

    let core = core_module(&ModuleRep::from_ideal(&i), &s).map_err(err)?;
    ensure!(as_ideal(&core)?.equals(&ideal(Q, &["x^4", "x^2*y", "x*y^2", "y^3"])), "core(I) wrong");
    Ok("closure, adj x2, colength 4, e 5, A, I_2, I_1, 5-1+0, core".into())
}

fn random_sums(report: &SuiteReport) -> usize {
    report
        .reports
        .iter()
        .filter(|r| r.instance.description.starts_with("random direct sum"))
        .map(|r| r.instance.index)
        .collect::<BTreeSet<_>>()
        .len()
}

fn main_theorem() -> Outcome {
    let mut notes = Vec::new();
    for field in [Q, f65537()] {
        let report = run_suite(Family::MainTheorem, 50, SEED, field);
        suite_passes(&report)?;
        let sums = random_sums(&report);
        ensure!(sums >= 20, "only {sums} random direct sums");
        let names = theorems(&report);
        for t in ["thm-main", "cor-colon", "prop-adj-powers-t0", "prop-adj-powers-t1"] {
            ensure!(names.contains(t), "suite lacks {t}");
        }
        let colon_seeds: BTreeSet<u64> =
            report.reports.iter().filter(|r| r.theorem == "cor-colon").flat_map(|r| r.instance.seeds.clone()).collect();
        ensure!(colon_seeds.len() == 3, "cor-colon used {} seeds", colon_seeds.len());
        notes.push(format!("{}: {} checks, {sums} sums", field, report.summary.total));
    }
    Ok(notes.join("; "))
}

fn core_theorems() -> Outcome {
    let s = sampler();
    let m = |n| MonomialIdeal::max_power(n);
    let m23 = ModuleRep::from_monomial_ideal(&m(2), Q).and_then(|a| a.direct_sum(&ModuleRep::from_monomial_ideal(&m(3), Q)?)).map_err(err)?;
    let twice = core_module(&core_module(&m23, &s).map_err(err)?, &s).map_err(err)?;
    let expected = ModuleRep::from_monomial_ideal(&m(18), Q)
        .and_then(|a| a.direct_sum(&ModuleRep::from_monomial_ideal(&m(19), Q)?))
        .map_err(err)?;
    ensure!(twice.equals(&expected), "core^2(m^2 + m^3) != m^18 + m^19");

    let mut notes = Vec::new();
    for (field, count) in [(Q, CORE_Q_COUNT), (f65537(), 50)] {
        let report = run_suite(Family::CoreTheorems, count, SEED, field);
        suite_passes(&report)?;
        let pair = report
            .reports
            .iter()
            .any(|r| r.theorem == "prop-monotone" && r.instance.description.contains("m^3 ⊕ m^3 ⊆ m^2 ⊕ m^3"));
        ensure!(pair, "monotone pair missing");
        notes.push(format!("{field} count {count}: {} checks", report.summary.total));
    }
    Ok(notes.join("; "))
}

/// Random ideals for the run of the core family over Q. Core iterates of the
/// larger random sums are slow over Q; count 50 runs over F65537.
const CORE_Q_COUNT: usize = 10;

fn multiplicities() -> Outcome {
    let s = sampler();
    for n in 1..=6u32 {
        let mono = MonomialIdeal::max_power(n);
        let i = TruncatedIdeal::max_power(Q, n);
        let e = [
            multiplicity_by_reduction(&i, &s).map_err(err)?,
            multiplicity_by_differences(&i).map_err(err)?,
            mono.multiplicity().map_err(err)?,
        ];
        ensure!(e == [(n * n) as u64; 3], "e(m^{n}) = {e:?}");
    }
    let mut ideals: Vec<MonomialIdeal> = (1..=3).map(MonomialIdeal::max_power).collect();
    ideals.push(MonomialIdeal::from_exponents(&[(3, 0), (1, 1), (0, 2)]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    while ideals.len() < 10 {
        ideals.push(random_closed_ideal(&mut rng));
    }
    for a in &ideals {
        let br = buchsbaum_rim(&ModuleRep::from_monomial_ideal(a, Q).map_err(err)?).map_err(err)?;
        let e = hilbert_samuel(&a.to_truncated(Q).map_err(err)?, &s).map_err(err)?;
        ensure!(br == e, "br({a}) = {br}, e = {e}");
    }
    let mm = ModuleRep::from_monomial_ideal(&MonomialIdeal::max_power(1), Q)
        .and_then(|a| a.direct_sum(&a))
        .map_err(err)?;
    let br = buchsbaum_rim_with(&mm, 8).map_err(err)?;
    ensure!(br.multiplicity == 3, "br(m + m) = {}", br.multiplicity);
    ensure!(br.differences.ends_with(&[3, 3, 3]), "differences {:?}", br.differences);
    Ok(format!("e(m^n) = n^2 three ways, br = e on {} ideals, br(m + m) = 3", ideals.len()))
}

/// A monomial ideal with pure powers of degree at most 6 and a few more
/// generators, not necessarily integrally closed.
fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> MonomialIdeal {
    let mut pts = vec![(rng.gen_range(1..=6u32), 0), (0, rng.gen_range(1..=6u32))];
    for _ in 0..rng.gen_range(0..=3) {
        let d = rng.gen_range(1..=6u32);
        let a = rng.gen_range(0..=d);
        pts.push((a, d - a));
    }
    MonomialIdeal::from_exponents(&pts).unwrap()
}

fn backends() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut equal_pairs = 0;
    for k in 0..200 {
        let i = random_monomial_ideal(&mut rng);
        let j = if rng.gen_ratio(1, 10) { i.clone() } else { random_monomial_ideal(&mut rng) };
        let (a, b) = (i.to_truncated(Q).map_err(err)?, j.to_truncated(Q).map_err(err)?);
        let ops: [(&str, MonomialIdeal, Result<TruncatedIdeal, Error>); 4] = [
            ("sum", i.sum(&j), a.sum(&b)),
            ("product", i.product(&j), a.product(&b)),
            ("intersect", i.intersect(&j), a.intersect(&b)),
            ("colon", i.colon(&j), a.colon(&b)),
        ];
        for (name, mono, trunc) in ops {
            let trunc = trunc.map_err(err)?;
            let mono_t = mono.to_truncated(Q).map_err(err)?;
            ensure!(mono_t.equals(&trunc), "pair {k}: {name} of {i} and {j}");
            ensure!(mono.colength().map_err(err)? == trunc.colength(), "pair {k}: colength of {name}");
        }
        ensure!(i.colength().map_err(err)? == a.colength(), "pair {k}: colength of {i}");
        ensure!((i == j) == a.equals(&b), "pair {k}: equality of {i} and {j}");
        ensure!(i.contains(&j) == a.contains(&b), "pair {k}: containment");
        equal_pairs += usize::from(i == j);
    }
    Ok(format!("200 pairs ({equal_pairs} equal)"))
}

fn verify_json(field: &str, count: usize) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_regcore"))
        .args(["verify", "--family", "all", "--seed", "42", "--field", field, "--count", &count.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "verify exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    Ok(out.stdout)
}

/// Fields and counts of the paired `verify --family all` runs. A full count
/// over Q takes about fifteen minutes on one core.
const DETERMINISM_RUNS: [(&str, usize); 2] = [("F65537", 50), ("Q", 5)];

fn determinism() -> Outcome {
    let mut notes = Vec::new();
    for (field, count) in DETERMINISM_RUNS {
        let first = verify_json(field, count)?;
        let second = verify_json(field, count)?;
        ensure!(first == second, "outputs over {field} differ");
        let report: SuiteReport = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
        ensure!(
            render_report(&report, Format::Json).trim_end().as_bytes() == first.trim_ascii_end(),
            "JSON over {field} does not round-trip"
        );
        notes.push(format!("{field} count {count}: {} bytes, {} checks", first.len(), report.summary.total));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("remark reproduction", remark),
        ("worked example", worked_example),
        ("main theorem suite", main_theorem),
        ("core theorems", core_theorems),
        ("multiplicity cross-checks", multiplicities),
        ("dual-backend equivalence", backends),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let n = n + 1;
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || *f == n.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n} {name}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n} {name}: FAIL ({secs:.1}s) {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
