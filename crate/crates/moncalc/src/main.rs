use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use moncalc::checks::{run_suite, Status};
use moncalc::expsum::{bound_row, check_hypotheses, mellin_check, BasePoly, FiniteField, TraceFunction};
use moncalc::format::{self, boundary_doc, empty_document, singular_doc, ProfileDocument};
use moncalc::random::{env_seed, Gen, GenOptions};
use moncalc_core::conv::{convolve_with, ft_depth, phi, phi_iterate, CancellationTable, PhiMode};
use moncalc_core::foundations::{Field, Point};
use moncalc_core::lft;
use moncalc_core::localdata::Place;
use moncalc_core::pkchi::{build_p, multiply_p, predict_blocks, ChiTameData, LaurentPoly};
use moncalc_core::foundations::TameChar;
use moncalc_core::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde::Deserialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "moncalc", version, about = "Local monodromy of multiplicative convolutions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convolve two profiles.
    Convolve {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Cancellation term for an equal-slope pair of points, as `S,T,C`.
        #[arg(long = "cancel", value_name = "S,T,C")]
        cancel: Vec<String>,
    },
    /// Apply a local Fourier transform to one stratum of a document.
    Ft {
        #[arg(long, value_enum)]
        functor: Functor,
        /// The finite point for `tinf`, `inft` and `inverse-tinf`.
        #[arg(long)]
        point: Option<String>,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the Euler characteristic.
    Euler { input: PathBuf },
    /// Convolve with the Artin-Schreier sheaf.
    Phi {
        input: PathBuf,
        /// Repeat until no positive slope is left at 0; prints every step.
        #[arg(long)]
        iterate: bool,
        /// Record unplaceable slope-1 data as unresolved mass instead of failing.
        #[arg(long)]
        lenient: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite on a pair of profiles, and optionally on
    /// seeded random pairs (seed from MONCALC_SEED).
    Check {
        #[arg(requires = "b")]
        a: Option<PathBuf>,
        b: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = 0)]
        random: usize,
    },
    #[command(subcommand)]
    Expsum(ExpsumCmd),
    #[command(subcommand)]
    Pkchi(PkchiCmd),
}

#[derive(Subcommand)]
enum ExpsumCmd {
    /// Compare homothety sums with the estimate for r = 1..rmax.
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        e: u64,
        #[arg(long, default_value_t = 1)]
        rmax: u32,
        /// Coefficients of g over F_p, constant term first; defaults to x^d + x.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        g: Option<Vec<i64>>,
    },
    /// Measure how well characters diagonalize convolution on random functions.
    Mellin {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Subcommand)]
enum PkchiCmd {
    /// Multiply two P-polynomials and read off the predicted blocks.
    Multiply { p: PathBuf, q: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Functor {
    #[value(name = "0inf")]
    ZeroInf,
    #[value(name = "inf0")]
    InfZero,
    #[value(name = "infinf")]
    InfInf,
    #[value(name = "tinf")]
    TInf,
    #[value(name = "inft")]
    InfT,
    #[value(name = "inverse-0inf")]
    InvZeroInf,
    #[value(name = "inverse-inf0")]
    InvInfZero,
    #[value(name = "inverse-infinf")]
    InvInfInf,
    #[value(name = "inverse-tinf")]
    InvTInf,
}

enum Failure {
    Core(Error),
    CheckFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))
}

fn read_doc(path: &Path) -> Result<ProfileDocument, Error> {
    format::parse_document(&read(path)?).map_err(|e| with_file(path, e))
}

fn with_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Error::Validation(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_point(s: &str) -> Result<Point, Error> {
    Point::parse(s)
}

fn cancel_table(entries: &[String]) -> Result<CancellationTable, Error> {
    let mut t = CancellationTable::new();
    for e in entries {
        let parts: Vec<&str> = e.split(',').map(str::trim).collect();
        let [s, u, c] = parts[..] else {
            return Err(Error::Validation(format!("--cancel expects S,T,C, got {e:?}")));
        };
        let c = c.parse().map_err(|_| Error::Validation(format!("bad cancellation value {c:?}")))?;
        t.insert((parse_point(s)?, parse_point(u)?), c);
    }
    Ok(t)
}

fn need_point(p: &Option<String>) -> Result<Point, Error> {
    match p {
        Some(s) => parse_point(s),
        None => Err(Error::Validation("this functor needs --point".into())),
    }
}

fn ft(functor: Functor, point: &Option<String>, doc: &ProfileDocument) -> Result<ProfileDocument, Error> {
    let field = format::field_of_document(doc)?;
    let mut out = empty_document(field, doc.generators.clone());
    let b = |place| format::boundary_from_doc(doc, place);
    match functor {
        Functor::ZeroInf => out.at_inf = boundary_doc(&lft::ft_0_inf(&b(Place::Zero)?)?),
        Functor::InvInfZero => out.at_inf = boundary_doc(&lft::ft_inv_inf_0(&b(Place::Zero)?)?),
        Functor::InfZero => out.at0 = boundary_doc(&lft::ft_inf_0(&b(Place::Infinity)?)?),
        Functor::InvZeroInf => out.at0 = boundary_doc(&lft::ft_inv_0_inf(&b(Place::Infinity)?)?),
        Functor::InfInf => out.at_inf = boundary_doc(&lft::ft_inf_inf(&b(Place::Infinity)?)?),
        Functor::InvInfInf => out.at_inf = boundary_doc(&lft::ft_inv_inf_inf(&b(Place::Infinity)?)?),
        Functor::TInf => {
            let t = need_point(point)?;
            let sing = format::singular_from_doc(doc)?;
            let f = sing.get(&t).ok_or_else(|| Error::Validation(format!("no local data at {t}")))?;
            out.at_inf = boundary_doc(&lft::ft_t_inf(&t, f));
            out.generators = merged(&out.generators, &t);
        }
        Functor::InfT | Functor::InvTInf => {
            let t = need_point(point)?;
            let f = if matches!(functor, Functor::InfT) {
                lft::ft_inf_t(&t, &b(Place::Infinity)?)?
            } else {
                lft::ft_inv_t_inf(&t, &b(Place::Infinity)?)?
            };
            if !f.is_empty() {
                out.singular.push(singular_doc(&t, &f));
            }
            out.generators = merged(&out.generators, &t);
        }
    }
    Ok(out)
}

fn merged(gens: &[String], t: &Point) -> Vec<String> {
    let mut all: std::collections::BTreeSet<String> = gens.iter().cloned().collect();
    all.extend(t.generators().map(String::from));
    all.into_iter().collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PDoc {
    Poly {
        coeffs: BTreeMap<String, i64>,
    },
    #[serde(rename_all = "camelCase")]
    Blocks {
        #[serde(default)]
        blocks_at_inf: Vec<u64>,
        #[serde(default)]
        blocks_at0: Vec<u64>,
        euler: u64,
        #[serde(default)]
        pure: bool,
    },
}

fn read_p(path: &Path) -> Result<(LaurentPoly, bool), Error> {
    let d: PDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Validation(format!("{}: malformed P document: {e}", path.display())))?;
    match d {
        PDoc::Poly { coeffs } => {
            let mut c = Vec::new();
            for (k, v) in coeffs {
                let k = k.trim().parse().map_err(|_| Error::Validation(format!("{}: bad degree {k:?}", path.display())))?;
                c.push((k, v));
            }
            Ok((LaurentPoly::new(c), false))
        }
        PDoc::Blocks { blocks_at_inf, blocks_at0, euler, pure } => {
            let data = ChiTameData { chi: TameChar::trivial(), blocks_at_inf, blocks_at_0: blocks_at0, euler, pure };
            Ok((build_p(&data, true)?, pure))
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.cmd {
        Cmd::Convolve { a, b, output, cancel } => {
            let k = format::to_profile(&read_doc(&a)?).map_err(|e| with_file(&a, e))?;
            let l = format::to_profile(&read_doc(&b)?).map_err(|e| with_file(&b, e))?;
            let c = convolve_with(&k, &l, &cancel_table(&cancel)?)?;
            emit(&format::profile_to_json(&c), output.as_deref())?;
        }
        Cmd::Ft { functor, point, input, output } => {
            let doc = read_doc(&input)?;
            let out = ft(functor, &point, &doc).map_err(|e| with_file(&input, e))?;
            emit(&format::to_json(&out), output.as_deref())?;
        }
        Cmd::Euler { input } => {
            let k = format::to_profile(&read_doc(&input)?).map_err(|e| with_file(&input, e))?;
            if !k.is_determinate() {
                eprintln!("note: the value includes unresolved mass");
            }
            println!("{}", k.euler());
        }
        Cmd::Phi { input, iterate, lenient, output } => {
            let k = format::to_profile(&read_doc(&input)?).map_err(|e| with_file(&input, e))?;
            if iterate {
                let steps = phi_iterate(&k, ft_depth(&k) as usize + 2)?;
                for (i, s) in steps.iter().enumerate() {
                    eprintln!("step {i}: depth {} euler {}", ft_depth(s), s.euler());
                }
                let docs: Vec<_> = steps.iter().map(format::from_profile).collect();
                emit(&serde_json::to_string_pretty(&docs).expect("serializable"), output.as_deref())?;
            } else {
                let mode = if lenient { PhiMode::Lenient } else { PhiMode::Strict };
                emit(&format::profile_to_json(&phi(&k, mode)?), output.as_deref())?;
            }
        }
        Cmd::Check { a, b, random } => {
            let mut pairs = Vec::new();
            if let (Some(a), Some(b)) = (a, b) {
                let k = format::to_profile(&read_doc(&a)?).map_err(|e| with_file(&a, e))?;
                let l = format::to_profile(&read_doc(&b)?).map_err(|e| with_file(&b, e))?;
                pairs.push((format!("{} {}", a.display(), b.display()), k, l));
            }
            let seed = env_seed();
            let mut gen = Gen::new(seed, GenOptions { finite_wild: false, ..GenOptions::default() });
            for i in 0..random {
                let (k, l) = (gen.profile(Field::Rational), gen.profile(Field::Rational));
                pairs.push((format!("random pair {i} (seed {seed})"), k, l));
            }
            if pairs.is_empty() {
                return Err(Error::Validation("nothing to check: give two documents or --random N".into()).into());
            }
            let mut failed = false;
            for (name, k, l) in &pairs {
                if pairs.len() > 1 {
                    println!("{name}");
                }
                for o in run_suite(k, l)? {
                    match o.status {
                        Status::Pass => println!("PASS  {}", o.name),
                        Status::Skipped(why) => println!("SKIP  {} ({why})", o.name),
                        Status::Fail(why) => {
                            failed = true;
                            println!("FAIL  {}: {why}", o.name)
                        }
                    }
                }
            }
            if failed {
                return Err(Failure::CheckFailed);
            }
        }
        Cmd::Expsum(ExpsumCmd::Bound { p, d, e, rmax, g }) => {
            let coeffs = g.unwrap_or_else(|| {
                let mut c = vec![0; d as usize + 1];
                c[1] += 1;
                c[d as usize] += 1;
                c
            });
            let g = BasePoly::new(p, coeffs);
            if g.degree() != Some(d) {
                return Err(Error::Validation(format!("g = {g} does not have degree {d}")).into());
            }
            check_hypotheses(p, &g, e)?;
            println!("g = {g}, p = {p}, e = {e}");
            println!("{:>2} {:>6} {:>10} {:>14} {:>14}  result", "r", "q^r", "C_{d,r}", "|S|", "bound");
            let mut failed = false;
            for r in 1..=rmax {
                let field = FiniteField::new(p, r)?;
                let row = bound_row(&field, &g, e)?;
                failed |= !row.pass;
                println!(
                    "{:>2} {:>6} {:>10} {:>14.6} {:>14.6}  {}",
                    r,
                    field.q(),
                    row.constant.to_string(),
                    row.modulus,
                    row.bound,
                    if row.pass { "PASS" } else { "FAIL" }
                );
            }
            if failed {
                return Err(Failure::CheckFailed);
            }
        }
        Cmd::Expsum(ExpsumCmd::Mellin { p, r }) => {
            let field = Arc::new(FiniteField::new(p, r)?);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(env_seed());
            let mut random = || {
                TraceFunction::from_fn(field.clone(), |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            };
            let (f, g) = (random(), random());
            let err = mellin_check(&f, &g)?;
            let ok = err < 1e-9;
            println!("q = {}, max error {err:.3e}  {}", field.q(), if ok { "PASS" } else { "FAIL" });
            if !ok {
                return Err(Failure::CheckFailed);
            }
        }
        Cmd::Pkchi(PkchiCmd::Multiply { p, q }) => {
            let (pp, pure_p) = read_p(&p)?;
            let (qq, pure_q) = read_p(&q)?;
            let prod = multiply_p(&pp, &qq);
            let pred = predict_blocks(&prod, !(pure_p && pure_q))?;
            let out = json!({
                "coeffs": prod.coeffs(),
                "blocksAtInf": pred.blocks_at_inf,
                "blocksAt0": pred.blocks_at_0,
                "euler": pred.euler,
                "conjectural": pred.conjectural,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::HypothesisViolated(_) => 4,
        e if e.is_insufficient() => 3,
        Error::Inconsistent(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::CheckFailed) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            let diag = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{diag}");
            ExitCode::from(exit_code(&e))
        }
    }
}
