//! `filiform`: build, analyze and check filiform Lie algebras from the shell.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 mathematical
//! precondition failure, 3 verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use filiform::exactmath::{format_rational, parse_rational};
use filiform::family::{
    enumerate_empty_region, enumerate_triples, generate_bratzlavsky, generate_general, relabel_bratzlavsky,
    specialize_fag, BratzlavskyParams, FagMode, GeneralLawParams,
};
use filiform::format::{algebra_from_json, algebra_to_json, basis_change_to_json, params_from_json};
use filiform::lemmas::{self, IdentityVerdict};
use filiform::prover::{self, SearchFamily, SearchOptions};
use filiform::series::{classify, construct_adapted, verify_adapted};
use filiform::{Error, LieAlgebra, Rational, Triple};

#[derive(Parser)]
#[command(name = "filiform", version, about = "Exact computations with filiform Lie algebras")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct TripleArgs {
    #[arg(long)]
    z1: usize,
    #[arg(long)]
    z2: usize,
    #[arg(long)]
    n: usize,
}

impl TripleArgs {
    fn triple(self) -> Result<Triple, Error> {
        Triple::new(self.z1, self.z2, self.n)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the series report of an algebra file.
    Analyze { file: PathBuf },
    /// Emit an algebra file.
    #[command(subcommand)]
    Generate(Generate),
    /// Print the Jacobi constraints of an algebra file.
    Constraints { file: PathBuf },
    /// Verify the basis of an algebra file is adapted, or construct one.
    Adapted { file: PathBuf },
    /// List valid triples of a dimension.
    Region {
        #[arg(long)]
        n: usize,
        /// Only triples of the empty region.
        #[arg(long)]
        empty: bool,
    },
    /// Emptiness certificate for a triple.
    Certify {
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Seeded grid search for Jacobi-consistent laws.
    Search {
        #[command(flatten)]
        triple: TripleArgs,
        /// Comma-separated rational values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational, required = true)]
        grid: Vec<Rational>,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FamilyArg::Fabg)]
        family: FamilyArg,
        /// Instances listed in the report; the rest are only counted.
        #[arg(long, default_value_t = 1000)]
        max_listed: usize,
    },
    /// The dimension-15 family; symbolic in b_3_3 unless a value is given.
    Paper15 {
        #[arg(long, allow_hyphen_values = true, value_parser = rational)]
        beta33: Option<Rational>,
    },
    /// The dimension-31 family and its constraint system.
    Paper31,
    /// Compare extracted Jacobi coefficients with their closed forms.
    LemmaCheck {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, requires = "k")]
        m: Option<usize>,
        #[arg(long, requires = "m")]
        k: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// The general law of a triple.
    General {
        #[command(flatten)]
        triple: TripleArgs,
        /// Parameter file; unlisted parameters are 0.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Set b_k_l = g_(k+l-1).
        #[arg(long)]
        fag: bool,
    },
    /// The metabelian law with parameters l_0, ..., l_(n-5).
    Bratzlavsky {
        #[arg(long)]
        n: usize,
        /// Comma-separated rational values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational)]
        lambda: Option<Vec<Rational>>,
        /// Emit the law in its adapted basis.
        #[arg(long)]
        relabel: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Fabg,
    Fag,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Math(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<LieAlgebra, Failure> {
    Ok(algebra_from_json(&read(path)?)?)
}

fn json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn opt(v: Option<usize>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn analyze(g: &LieAlgebra, as_json: bool) -> Outcome {
    let report = classify(g)?;
    if as_json {
        return Ok(report.to_json() + "\n");
    }
    let dims = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let violations = g.jacobi_check().len();
    Ok(format!(
        "dimension: {}\njacobi identity: {}\nlower central series dims: {}\nderived series dims: {}\n\
         nilindex: {}\nderived length: {}\nabelian: {}\nfiliform: {}\nmodel: {}\nz1: {}\nz2: {}\n",
        report.dim,
        if violations == 0 { "holds".to_string() } else { format!("fails ({violations} violations)") },
        dims(&report.lcs_dims),
        dims(&report.ds_dims),
        opt(report.nilindex),
        opt(report.derived_length),
        report.abelian,
        report.filiform,
        report.model.map_or("-".into(), |m| m.to_string()),
        opt(report.z1),
        opt(report.z2),
    ))
}

fn constraints_out(cons: &[filiform::Polynomial], as_json: bool) -> String {
    if as_json {
        return json(&serde_json::json!(cons.iter().map(ToString::to_string).collect::<Vec<_>>()));
    }
    let mut out = format!("{} constraints\n", cons.len());
    for c in cons {
        out.push_str(&format!("0 = {c}\n"));
    }
    out
}

fn verdict_line(v: &IdentityVerdict) -> String {
    format!(
        "m={} k={} e_{}: extracted {} | closed form {} | {}\n",
        v.m,
        v.k,
        v.index,
        v.extracted,
        v.closed_form,
        if v.holds { "holds" } else { "FAILS" }
    )
}

fn run(cli: Cli) -> Outcome {
    let as_json = cli.json;
    match cli.command {
        Command::Analyze { file } => analyze(&load(&file)?, as_json),
        Command::Generate(Generate::General { triple, params, fag }) => {
            let t = triple.triple()?;
            let p = match params {
                Some(path) => GeneralLawParams::from_values(t, &params_from_json(&read(&path)?)?)?,
                None => GeneralLawParams::symbolic(t)?,
            };
            let p = if fag { specialize_fag(&p, FagMode::Full) } else { p };
            Ok(algebra_to_json(&generate_general(&p)?))
        }
        Command::Generate(Generate::Bratzlavsky { n, lambda, relabel }) => {
            let p = match lambda {
                Some(values) => BratzlavskyParams::numeric(n, &values)?,
                None => BratzlavskyParams::symbolic(n)?,
            };
            let g = generate_bratzlavsky(&p)?;
            let g = if relabel { relabel_bratzlavsky(&g)? } else { g };
            Ok(algebra_to_json(&g))
        }
        Command::Constraints { file } => Ok(constraints_out(&prover::constraints(&load(&file)?), as_json)),
        Command::Adapted { file } => {
            let g = load(&file)?;
            let check = verify_adapted(&g);
            if check.ok() {
                return Ok(if as_json {
                    json(&serde_json::json!({ "adapted": true }))
                } else {
                    "basis is adapted\n".into()
                });
            }
            let b = construct_adapted(&g)?;
            let matrix: serde_json::Value = serde_json::from_str(&basis_change_to_json(&b)).expect("valid json");
            Ok(if as_json {
                json(&serde_json::json!({ "adapted": false, "failures": check.failures, "basis_change": matrix }))
            } else {
                let mut out = format!("basis is not adapted ({} failures)\nadapted basis, f_j in old coordinates:\n", check.failures.len());
                let m = b.matrix();
                for j in 0..m.cols() {
                    let col: Vec<String> = m.column(j).iter().map(format_rational).collect();
                    out.push_str(&format!("f_{} = ({})\n", j + 1, col.join(", ")));
                }
                out
            })
        }
        Command::Region { n, empty } => {
            let triples = if empty { enumerate_empty_region(n) } else { enumerate_triples(n) };
            Ok(if as_json {
                let list: Vec<[usize; 3]> = triples.iter().map(|t| [t.z1, t.z2, t.n]).collect();
                json(&serde_json::json!({ "n": n, "empty": empty, "triples": list, "count": triples.len() }))
            } else {
                let mut out: String = triples.iter().map(|t| format!("{t}\n")).collect();
                out.push_str(&format!("count: {}\n", triples.len()));
                out
            })
        }
        Command::Certify { triple } => {
            let c = prover::emptiness_certificate(triple.triple()?).map_err(|e| match e {
                Error::SignPatternFailure { .. } => Failure::Verification(e.to_string()),
                e => Failure::Math(e),
            })?;
            let out = if as_json {
                c.to_json() + "\n"
            } else {
                let k = &c.coefficients;
                let mut out = format!(
                    "triple {}\np = {}, q = {}, r = {}\na0 = {}, b0 = {}, a1 = {}, b1 = {}, c1 = {}, a' = {}, b' = {}\n\
                     signs: {}\nb0^2 a' = {}, a0 (a0 c1 - b0 b') = {}: {}\nsteps: {}\n",
                    c.triple, c.p, c.q, c.r, k.a0, k.b0, k.a1, k.b1, k.c1, k.a_prime, k.b_prime,
                    if c.signs.all() { "verified" } else { "FAIL" },
                    c.relation_lhs, c.relation_rhs,
                    if c.relation_violated { "violated" } else { "HOLDS" },
                    c.step_count,
                );
                for s in &c.steps {
                    let sym = s.symbolic.as_ref().map_or("not applicable".to_string(), |x| {
                        format!("resultant {}, forces zero: {}", format_rational(&x.resultant), x.forces_zero)
                    });
                    out.push_str(&format!("  step {}: {sym}\n", s.ell));
                }
                out.push_str(&format!(
                    "a_1 coefficient: {}\nterminal bracket: {}\nconclusion: {}\n",
                    c.alpha1_coefficient,
                    c.terminal.vanishing_bracket.as_deref().unwrap_or("none"),
                    if c.conclusion { "no algebra realizes this triple" } else { "NOT ESTABLISHED" }
                ));
                out
            };
            if c.conclusion {
                Ok(out)
            } else {
                emit(&out);
                Err(Failure::Verification(format!("certificate for {} does not conclude", c.triple)))
            }
        }
        Command::Search { triple, grid, budget, seed, family, max_listed } => {
            let options = SearchOptions {
                grid,
                budget,
                seed,
                family: match family {
                    FamilyArg::Fabg => SearchFamily::Full,
                    FamilyArg::Fag => SearchFamily::AlphaGamma,
                },
                max_listed,
            };
            let r = prover::grid_search(triple.triple()?, &options)?;
            Ok(if as_json {
                r.to_json() + "\n"
            } else {
                let mut out = format!(
                    "triple {} ({} search, {} parameters, {} constraints)\ncandidates tested: {}\ninstances found: {}\n",
                    r.triple, r.mode, r.parameters.len(), r.constraint_count, r.candidates_tested, r.instances_found
                );
                for inst in &r.instances {
                    let parts: Vec<String> = inst.0.iter().map(|(v, c)| format!("{v}={}", format_rational(c))).collect();
                    out.push_str(&format!("  {}\n", parts.join(" ")));
                }
                out.push_str(&format!("{}\n", r.label));
                out
            })
        }
        Command::Paper15 { beta33 } => Ok(algebra_to_json(&match beta33 {
            Some(b) => prover::paper15(&b),
            None => prover::paper15_symbolic(),
        })),
        Command::Paper31 => {
            let f = prover::paper31_family();
            Ok(if as_json {
                json(&serde_json::json!({
                    "triple": [4, 17, 31],
                    "parameters": f.parameters.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "constraints": f.constraints.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }))
            } else {
                let names: Vec<String> = f.parameters.iter().map(ToString::to_string).collect();
                format!("triple (4,17,31)\nparameters: {}\n{}", names.join(" "), constraints_out(&f.constraints, false))
            })
        }
        Command::LemmaCheck { triple, m, k } => {
            let t = triple.triple()?;
            let (verdicts, alpha) = match (m, k) {
                (Some(m), Some(k)) => (vec![lemmas::jacobi_coefficient_identity(t, m, k)?], None),
                _ => prover::lemma_report(t)?,
            };
            let alpha_ok = alpha.as_ref().is_none_or(|(a, b)| a == b);
            let failed = verdicts.iter().filter(|v| !v.holds).count() + usize::from(!alpha_ok);
            let out = if as_json {
                json(&serde_json::json!({
                    "triple": [t.z1, t.z2, t.n],
                    "verdicts": verdicts,
                    "alpha1": alpha.as_ref().map(|(a, b)| serde_json::json!({
                        "closed_form": a.to_string(), "extracted": b.to_string(), "holds": a == b,
                    })),
                }))
            } else {
                let mut out: String = verdicts.iter().map(verdict_line).collect();
                if let Some((a, b)) = &alpha {
                    out.push_str(&format!("a_1: extracted {b} | closed form {a} | {}\n", if a == b { "holds" } else { "FAILS" }));
                }
                out.push_str(&format!("{failed} failing of {}\n", verdicts.len() + usize::from(alpha.is_some())));
                out
            };
            if failed == 0 {
                Ok(out)
            } else {
                emit(&out);
                Err(Failure::Verification(format!("{failed} identities fail at {t}")))
            }
        }
    }
}

fn emit(text: &str) {
    use std::io::Write;
    // ignore a closed pipe, e.g. `| head`
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_verification_failure() {
                3
            } else if e.is_precondition() {
                2
            } else {
                1
            })
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(3)
        }
    }
}
