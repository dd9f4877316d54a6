use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use regcore::arith::Field;
use regcore::io::{parse_ideal_json, parse_module_json, parse_presentation_json, IdealJson, ModuleJson};
use regcore::modcore::{buchsbaum_rim_with, core_module, fitting_generators, minimal_reduction_module, ModuleRep, BR_T_MAX};
use regcore::reduction::{
    adjoint_ideal, as_monomial_ideal, integral_closure_ideal, is_reduction, minimal_reduction, multiplicity_by_differences,
    multiplicity_by_reduction, ClosureMode, GenericSampler, ReductionOutcome,
};
use regcore::trunc::{set_truncation_ceiling, TruncatedIdeal, DEFAULT_CEILING};
use regcore::verify::{render_report, run_suite_with, Family, Format, SuiteOptions};
use regcore::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "regcore", version, about = "Integral closures, adjoints, cores and multiplicities over k[x,y] localized at (x,y)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Coefficient field: Q or F<p>. Input files declare their own field; a
    /// different value here is rejected.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for generic sampling and random instances.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest truncation order tried when certifying finite colength.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    ceiling: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Colon,
    Howald,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral closure of an ideal.
    Closure {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Adjoint ideal, via a minimal reduction colon and/or the Newton polygon.
    Adjoint {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Colon)]
        method: Method,
    },
    /// core(M) = adj(I(M)) M of a module (or of an ideal as a rank-one module).
    Core {
        #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
        module: Option<PathBuf>,
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    /// The ideal of k x k minors of a presentation matrix.
    Fitting {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Hilbert–Samuel multiplicity by a reduction and by second differences.
    Mult {
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Buchsbaum–Rim multiplicity of a module.
    Br {
        #[arg(long)]
        module: PathBuf,
        /// Largest symmetric power used for stabilization.
        #[arg(long, default_value_t = BR_T_MAX)]
        tmax: u32,
    },
    /// A certified minimal reduction of an ideal or module.
    Reduction {
        #[arg(long, conflicts_with = "module", required_unless_present = "module")]
        ideal: Option<PathBuf>,
        #[arg(long)]
        module: Option<PathBuf>,
        /// Largest exponent n tried in J I^n = I^(n+1).
        #[arg(long)]
        nmax: Option<u32>,
    },
    /// Run a verification campaign.
    Verify {
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Record per-check wall time (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn check_field(common: &Common, actual: Field) -> Result<()> {
    match &common.field {
        Some(s) => {
            let wanted: Field = s.parse()?;
            if wanted != actual {
                return Err(Error::FieldMismatch(wanted, actual));
            }
            Ok(())
        }
        None => Ok(()),
    }
}

fn load_ideal(common: &Common, path: &Path) -> Result<TruncatedIdeal> {
    let i = parse_ideal_json(&read(path)?)?;
    check_field(common, i.field())?;
    Ok(i)
}

fn load_module(common: &Common, path: &Path) -> Result<ModuleRep> {
    let m = parse_module_json(&read(path)?)?;
    check_field(common, m.field())?;
    Ok(m)
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::Input(e.to_string()))
        }
    }
}

fn emit_json(common: &Common, value: &Json) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    emit(common, &s)
}

fn ideal_json(i: &TruncatedIdeal) -> Json {
    serde_json::to_value(IdealJson::from_ideal(i)).expect("serializable")
}

fn module_json(m: &ModuleRep) -> Json {
    serde_json::to_value(ModuleJson::from_module(m)).expect("serializable")
}

fn ideal_text(i: &TruncatedIdeal) -> String {
    let mut s = format!("{i}\nn0 = {}, colength = {}\n", i.certificate(), i.colength());
    if let Some(mono) = as_monomial_ideal(i) {
        s.push_str(&mono.render_staircase());
        if !s.ends_with('\n') {
            s.push('\n');
        }
    }
    s
}

fn module_text(m: &ModuleRep) -> String {
    let mut s = format!("{m}\nrank = {}, generators = {}, colength = {}\n", m.rank(), m.num_generators(), m.colength());
    if let Some(comps) = m.monomial_components() {
        for (k, c) in comps.iter().enumerate() {
            s.push_str(&format!("component {k}:\n{}\n", c.render_staircase().trim_end()));
        }
    }
    s
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let common = &cli.common;
    if common.ceiling < 2 {
        return Err(Error::Input("truncation ceiling must be at least 2".into()));
    }
    set_truncation_ceiling(common.ceiling);
    let sampler = GenericSampler::new(common.seed);
    let text = common.format == OutFormat::Text;
    match &cli.command {
        Command::Closure { ideal } => {
            let i = load_ideal(common, ideal)?;
            let mode = if as_monomial_ideal(&i).is_some() { ClosureMode::Monomial } else { ClosureMode::Candidate };
            let r = integral_closure_ideal(&i, mode, &sampler)?;
            if text {
                let flag = if r.exact { "exact" } else { "lower bound" };
                emit(common, &format!("closure ({flag}):\n{}", ideal_text(&r.ideal)))?;
            } else {
                emit_json(common, &json!({ "closure": ideal_json(&r.ideal), "exact": r.exact }))?;
            }
        }
        Command::Adjoint { ideal, method } => {
            let i = load_ideal(common, ideal)?;
            let colon = matches!(method, Method::Colon | Method::Both).then(|| adjoint_ideal(&i, &sampler)).transpose()?;
            let howald = if matches!(method, Method::Howald | Method::Both) {
                let mono = as_monomial_ideal(&i)
                    .ok_or_else(|| Error::Unsupported("the Newton polygon method needs a monomial ideal".into()))?;
                Some(mono.adjoint()?.to_truncated(i.field())?)
            } else {
                None
            };
            let agreement = match (&colon, &howald) {
                (Some(a), Some(b)) => Some(a.equals(b)),
                _ => None,
            };
            if text {
                let mut s = String::new();
                if let Some(a) = &colon {
                    s.push_str(&format!("colon: {a}\n"));
                }
                if let Some(b) = &howald {
                    s.push_str(&format!("howald: {b}\n"));
                }
                if let Some(ok) = agreement {
                    s.push_str(&format!("agreement: {ok}\n"));
                }
                emit(common, &s)?;
            } else {
                let mut obj = serde_json::Map::new();
                if let Some(a) = &colon {
                    obj.insert("colon".into(), ideal_json(a));
                }
                if let Some(b) = &howald {
                    obj.insert("howald".into(), ideal_json(b));
                }
                if let Some(ok) = agreement {
                    obj.insert("agreement".into(), Json::Bool(ok));
                }
                emit_json(common, &Json::Object(obj))?;
            }
            if agreement == Some(false) {
                return Err(Error::CrossCheck("the two adjoint methods disagree".into()));
            }
        }
        Command::Core { module, ideal } => {
            let m = match (module, ideal) {
                (Some(p), _) => load_module(common, p)?,
                (None, Some(p)) => {
                    let i = load_ideal(common, p)?;
                    match as_monomial_ideal(&i) {
                        Some(mono) => ModuleRep::from_monomial_ideal(&mono, i.field())?,
                        None => ModuleRep::from_ideal(&i),
                    }
                }
                (None, None) => return Err(Error::Input("core needs --module or --ideal".into())),
            };
            let core = core_module(&m, &sampler)?;
            if text {
                emit(common, &module_text(&core))?;
            } else {
                emit_json(common, &module_json(&core))?;
            }
        }
        Command::Fitting { presentation, k } => {
            let a = parse_presentation_json(&read(presentation)?)?;
            check_field(common, a.field())?;
            let gens = fitting_generators(&a, *k)
                .ok_or_else(|| Error::ZeroIdeal(format!("I_{k} of a {}x{} matrix vanishes", a.nrows(), a.ncols())))?;
            let i = TruncatedIdeal::new(a.field(), gens)?;
            if text {
                emit(common, &ideal_text(&i))?;
            } else {
                emit_json(common, &ideal_json(&i))?;
            }
        }
        Command::Mult { ideal } => {
            let i = load_ideal(common, ideal)?;
            let by_reduction = multiplicity_by_reduction(&i, &sampler)?;
            let by_differences = multiplicity_by_differences(&i)?;
            if by_reduction != by_differences {
                return Err(Error::MethodDisagreement { reduction: by_reduction, difference: by_differences });
            }
            if text {
                emit(common, &format!("e = {by_reduction} (reduction colength and second difference agree)\n"))?;
            } else {
                emit_json(
                    common,
                    &json!({ "multiplicity": by_reduction, "reduction": by_reduction, "differences": by_differences }),
                )?;
            }
        }
        Command::Br { module, tmax } => {
            let m = load_module(common, module)?;
            let br = buchsbaum_rim_with(&m, *tmax)?;
            if text {
                emit(common, &format!("e(F/M) = {}\nlengths: {:?}\n", br.multiplicity, br.lengths))?;
            } else {
                emit_json(
                    common,
                    &json!({ "multiplicity": br.multiplicity, "lengths": br.lengths, "differences": br.differences }),
                )?;
            }
        }
        Command::Reduction { ideal, module, nmax } => match (ideal, module) {
            (Some(p), _) => {
                let i = load_ideal(common, p)?;
                let mut cert = minimal_reduction(&i, &sampler)?;
                if let Some(n) = nmax {
                    cert = match is_reduction(&cert.reduction, &i, Some(*n))? {
                        ReductionOutcome::Certified(c) => c,
                        ReductionOutcome::NotUpToBound { nmax } => {
                            return Err(Error::CrossCheck(format!("no reduction certificate up to n = {nmax}")))
                        }
                    };
                }
                if text {
                    emit(
                        common,
                        &format!(
                            "J = {}\nJ I^{n} = I^{m}: colengths {} = {}\n",
                            cert.reduction,
                            cert.lhs_colength,
                            cert.rhs_colength,
                            n = cert.n,
                            m = cert.n + 1
                        ),
                    )?;
                } else {
                    emit_json(
                        common,
                        &json!({
                            "reduction": ideal_json(&cert.reduction),
                            "n": cert.n,
                            "lhs_colength": cert.lhs_colength,
                            "rhs_colength": cert.rhs_colength,
                            "seed": common.seed,
                        }),
                    )?;
                }
            }
            (None, Some(p)) => {
                let m = load_module(common, p)?;
                let red = minimal_reduction_module(&m, &sampler)?;
                if text {
                    emit(common, &format!("N = {}\nS_1(N) S_{t}(M) = S_{u}(M)\n", red.reduction, t = red.t, u = red.t + 1))?;
                } else {
                    let coefficients: Vec<Vec<String>> =
                        red.coefficients.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect();
                    emit_json(
                        common,
                        &json!({
                            "reduction": module_json(&red.reduction),
                            "coefficients": coefficients,
                            "t": red.t,
                            "seed": common.seed,
                        }),
                    )?;
                }
            }
            (None, None) => return Err(Error::Input("reduction needs --ideal or --module".into())),
        },
        Command::Verify { family, count, timing } => {
            let family: Family = family.parse()?;
            let field: Field = common.field.as_deref().unwrap_or("Q").parse()?;
            let report = run_suite_with(&SuiteOptions { family, count: *count, seed: common.seed, field, timing: *timing });
            let format = if text { Format::Text } else { Format::Json };
            emit(common, &render_report(&report, format))?;
            let s = report.summary;
            eprintln!("{} checks: {} passed, {} failed, {} errors", s.total, s.passed, s.failed, s.errors);
            if !s.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
