use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use latmodel::casestudies::{class_orbit_count, pgl2_sym2_report, QuadField};
use latmodel::exact::rational::to_string;
use latmodel::exact::{Lattice, LatticeJson, Ring};
use latmodel::latconstruct::{count_invariant_orbits, s_minus, s_plus, EdgeData};
use latmodel::models::{lie_invariants, lie_model};
use latmodel::rep::{build_irrep, weyl_dimension, ChevalleyLatticeData, Representation, Weight};
use latmodel::rootdata::{ChevalleyBasis, Isogeny, TypeLabel};
use latmodel::Error;

#[derive(Parser)]
#[command(name = "latmodel", version, about = "Lattices in representations of split reductive groups")]
struct Cli {
    /// Write JSON to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Representations.
    #[command(subcommand)]
    Rep(RepCommand),
    /// Lattice utilities.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Minimal and maximal split lattices for unit edge data.
    Sandwich(RepArgs),
    /// Chevalley-invariant lattices in the sandwich, grouped into classes.
    Orbits(RepArgs),
    /// Integral model shadows.
    #[command(subcommand)]
    Model(ModelCommand),
    /// Worked examples.
    #[command(subcommand)]
    Case(CaseCommand),
}

#[derive(Subcommand)]
enum RepCommand {
    /// Irreducible representation of given highest weight.
    Build(IrrepArgs),
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// p-adic distance between two lattices.
    Dist {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// The lattice of Lie algebra elements preserving a lattice.
    Lie {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
    },
}

#[derive(Subcommand)]
enum CaseCommand {
    /// PGL2 acting on Sym2 over Z_(2).
    Pgl2,
    /// Ideal classes of an imaginary quadratic field as lattice orbits.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IsogenyArg {
    Sc,
    Adjoint,
}

#[derive(Args)]
struct IrrepArgs {
    #[arg(long = "type")]
    label: String,
    #[arg(long)]
    rank: usize,
    /// Highest weight in fundamental-weight coordinates, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hw: Vec<i64>,
    #[arg(long, value_enum, default_value = "sc")]
    isogeny: IsogenyArg,
}

#[derive(Args)]
struct RepArgs {
    #[command(flatten)]
    irrep: IrrepArgs,
    #[arg(long)]
    p: u64,
}

enum Failure {
    Validation(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoStabilization(_) | Error::CapExceeded(_) => Failure::Internal(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn irrep(a: &IrrepArgs) -> Result<Representation, Failure> {
    let label: TypeLabel = a.label.parse()?;
    let isogeny = match a.isogeny {
        IsogenyArg::Sc => Isogeny::SimplyConnected,
        IsogenyArg::Adjoint => Isogeny::Adjoint,
    };
    let cb = Arc::new(ChevalleyBasis::build(label, a.rank, isogeny)?);
    Ok(build_irrep(&cb, &Weight::new(&a.hw))?)
}

fn prime(p: u64) -> Result<Ring, Failure> {
    if !latmodel::exact::module::is_prime(p) {
        return Err(Failure::Validation(format!("--p {p} is not prime")));
    }
    Ok(Ring::Local(p))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn header(a: &IrrepArgs, p: u64) -> Value {
    json!({ "type": a.label.to_uppercase(), "rank": a.rank, "hw": a.hw, "prime": p })
}

fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Rep(RepCommand::Build(a)) => {
            let rep = irrep(a)?;
            let mut v = rep.to_json();
            v["weyl_dimension"] = json!(to_string(&weyl_dimension(rep.chevalley(), &Weight::new(&a.hw))));
            Ok((v, true))
        }
        Command::Lattice(LatticeCommand::Dist { p, a, b }) => {
            let ring = prime(*p)?;
            let la = Lattice::from_json(&read_json::<LatticeJson>(a)?)?.with_ring(ring);
            let lb = Lattice::from_json(&read_json::<LatticeJson>(b)?)?.with_ring(ring);
            Ok((json!({ "distance": la.distance(&lb)?, "prime": p }), true))
        }
        Command::Sandwich(a) => {
            let ring = prime(a.p)?;
            let rep = irrep(&a.irrep)?;
            let edge = EdgeData::unit(&rep, ring);
            let (lo, hi) = (s_minus(&rep, &edge)?, s_plus(&rep, &edge)?);
            let index = lo.index_in(&hi)?;
            let mut v = header(&a.irrep, a.p);
            v["s_minus"] = serde_json::to_value(&lo).map_err(|e| Failure::Internal(e.to_string()))?;
            v["s_plus"] = serde_json::to_value(&hi).map_err(|e| Failure::Internal(e.to_string()))?;
            v["index"] = json!(to_string(&index));
            Ok((v, true))
        }
        Command::Orbits(a) => {
            let ring = prime(a.p)?;
            let rep = irrep(&a.irrep)?;
            let report = count_invariant_orbits(&rep, &EdgeData::unit(&rep, ring), &ChevalleyLatticeData::unit(rep.chevalley()))?;
            let mut v = header(&a.irrep, a.p);
            v["report"] = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
            Ok((v, true))
        }
        Command::Model(ModelCommand::Lie { rep, lattice }) => {
            let rep: Representation = read_json(rep)?;
            let lat = Lattice::from_json(&read_json::<LatticeJson>(lattice)?)?;
            let l = lie_model(&rep, &lat)?;
            let v = json!({
                "lie_lattice": l.lattice(),
                "bracket_closed": l.is_bracket_closed(),
                "invariants": lie_invariants(&l),
                "note": "invariants are necessary conditions for isomorphic models, not a decision",
            });
            Ok((v, l.is_bracket_closed()))
        }
        Command::Case(CaseCommand::Pgl2) => {
            let r = pgl2_sym2_report()?;
            let ok = r.all_pass;
            Ok((serde_json::to_value(&r).map_err(|e| Failure::Internal(e.to_string()))?, ok))
        }
        Command::Case(CaseCommand::Classgroup { disc }) => {
            let r = class_orbit_count(&QuadField::new(*disc)?)?;
            Ok((serde_json::to_value(&r).map_err(|e| Failure::Internal(e.to_string()))?, true))
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Two-column table of the top-level fields, nested objects expanded one level.
fn table(v: &Value) -> String {
    let mut rows: Vec<(String, String)> = Vec::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(inner) if inner.len() <= 16 => {
                        for (k2, y) in inner {
                            rows.push((format!("{k}.{k2}"), compact(y)));
                        }
                    }
                    Value::Array(items) if items.iter().all(|i| i.get("name").is_some()) && !items.is_empty() => {
                        for i in items {
                            rows.push((compact(&i["name"]), compact(i.get("status").unwrap_or(&Value::Null))));
                        }
                    }
                    _ => rows.push((k.clone(), compact(x))),
                }
            }
        }
        other => rows.push(("value".into(), compact(other))),
    }
    let w = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, x)| format!("{k:<w$}  {x}\n")).collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (value, ok) = match run(&cli.command) {
        Ok(r) => r,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal failure: {m}");
            return ExitCode::from(2);
        }
    };
    let text = if cli.pretty {
        table(&value)
    } else {
        serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n"
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("assertion failure: see report");
        ExitCode::from(2)
    }
}
