//! `knotconc` command-line interface.
//!
//! Exit status: 0 on success or a positive answer, 1 on a mathematical
//! negative (a pairing that is singular, a vector that does not generate, a
//! certificate that fails, a margin that is too small, an infeasible search),
//! 2 on any error.

mod plot;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use knotconc::blanchfield::{vector_from_json, Blanchfield};
use knotconc::descriptor::{KnotDescriptor, OrderSpec};
use knotconc::exactnum::{Ring, UnitCirclePoint};
use knotconc::groups::{alexander_from_presentation, GroupPresentation};
use knotconc::obstruction::{
    nonsolvability_certificate, solve_family, verify_family, FamilyCertificate, FamilySpec,
};
use knotconc::seifert::SeifertMatrix;
use knotconc::Error;

#[derive(Parser)]
#[command(
    name = "knotconc",
    version,
    about = "Exact knot concordance invariants and obstruction certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial, Arf invariant, determinant and signatures.
    Invariants {
        /// Descriptor expression; atoms may be Seifert matrix JSON files.
        knot: String,
        /// Orders of the roots of unity to evaluate at.
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5, 7, 8, 9])]
        roots: Vec<u64>,
    },
    /// Levine-Tristram signature function on the upper half circle.
    Sigfn {
        knot: String,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Abelian rho-invariant for a coefficient system of order d.
    Rho {
        knot: String,
        /// A positive integer or `inf`.
        #[arg(long)]
        order: OrderSpec,
    },
    /// Invariant factors of the Alexander module.
    Alexander {
        /// Presentation (text or JSON) or Seifert matrix JSON.
        input: PathBuf,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Blanchfield pairing of a Seifert matrix.
    Blanchfield(BlanchfieldArgs),
    /// Build or verify a family certificate.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Check the non-solvability inequality for a linear combination.
    Certify {
        cert: PathBuf,
        spec: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<i64>,
    },
}

#[derive(Args)]
struct BlanchfieldArgs {
    matrix: PathBuf,
    /// `q` or `zp` for a prime `p`.
    #[arg(long, default_value = "q")]
    ring: String,
    #[arg(long, num_args = 2, value_names = ["X", "Y"], conflicts_with_all = ["generates", "nonsingular"])]
    pair: Option<Vec<PathBuf>>,
    #[arg(long, value_name = "X", conflicts_with = "nonsingular")]
    generates: Option<PathBuf>,
    #[arg(long)]
    nonsingular: bool,
}

#[derive(Subcommand)]
enum FamilyAction {
    Build {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Verify {
        cert: PathBuf,
        spec: PathBuf,
    },
}

/// Outcome of a command that succeeded in computing something.
enum Answer {
    Yes(Value),
    No(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Answer::Yes(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Answer::No(v)) => {
            print_json(&v);
            ExitCode::from(1)
        }
        Err(e @ (Error::MarginViolated { .. } | Error::Infeasible(_))) => {
            print_json(&json!({ "verdict": variant_name(&e), "detail": e.to_string() }));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn variant_name(e: &Error) -> &'static str {
    match e {
        Error::MarginViolated { .. } => "MarginViolated",
        Error::Infeasible(_) => "Infeasible",
        _ => "Error",
    }
}

fn print_json(v: &Value) {
    let text = match v {
        Value::String(s) => s.clone(),
        _ => serde_json::to_string_pretty(v).expect("serializable"),
    };
    // a closed pipe is not an error worth reporting
    let _ = writeln!(io::stdout(), "{text}");
}

fn read(path: &Path) -> knotconc::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> knotconc::Result<Answer> {
    match cmd {
        Command::Invariants { knot, roots } => invariants(&knot, &roots),
        Command::Sigfn { knot, csv, svg } => {
            let k: KnotDescriptor = knot.parse()?;
            let f = k.signature_step()?;
            let arcs = f.arcs();
            let table = plot::csv_table(&arcs);
            if let Some(p) = csv {
                fs::write(p, &table)?;
            }
            if let Some(p) = svg {
                fs::write(p, plot::svg(&arcs, &k.to_expr()))?;
            }
            Ok(Answer::Yes(Value::String(table.trim_end().to_string())))
        }
        Command::Rho { knot, order } => {
            let k: KnotDescriptor = knot.parse()?;
            Ok(Answer::Yes(Value::String(
                k.rho_abelian(order)?.to_string(),
            )))
        }
        Command::Alexander { input, modulus } => alexander(&input, modulus),
        Command::Blanchfield(args) => blanchfield(args),
        Command::Family {
            action: FamilyAction::Build { spec, output },
        } => {
            let spec = FamilySpec::from_json(&read(&spec)?)?;
            let cert = solve_family(&spec)?;
            let text = cert.to_json();
            match output {
                Some(p) => {
                    fs::write(&p, text + "\n")?;
                    Ok(Answer::Yes(
                        json!({ "written": p.display().to_string(), "members": cert.members.len() }),
                    ))
                }
                None => Ok(Answer::Yes(Value::String(text))),
            }
        }
        Command::Family {
            action: FamilyAction::Verify { cert, spec },
        } => {
            let cert = FamilyCertificate::from_json(&read(&cert)?)?;
            let spec = FamilySpec::from_json(&read(&spec)?)?;
            let report = verify_family(&cert, &spec)?;
            let v = serde_json::to_value(&report)?;
            Ok(if report.passed {
                Answer::Yes(v)
            } else {
                Answer::No(v)
            })
        }
        Command::Certify { cert, spec, coeffs } => {
            let cert = FamilyCertificate::from_json(&read(&cert)?)?;
            let spec = FamilySpec::from_json(&read(&spec)?)?;
            let report = nonsolvability_certificate(&cert, &spec, &coeffs)?;
            Ok(Answer::Yes(serde_json::to_value(&report)?))
        }
    }
}

fn invariants(knot: &str, roots: &[u64]) -> knotconc::Result<Answer> {
    let k: KnotDescriptor = knot.parse()?;
    let delta = k.alex_eval(Ring::Integers)?;
    let mut signatures = Vec::new();
    for &q in roots {
        if q < 2 {
            return Err(Error::InvalidInput(format!(
                "root order {q} must be at least 2"
            )));
        }
        for r in 1..=q / 2 {
            let w = UnitCirclePoint::new(r as i64, q)?;
            if w.order() != q {
                continue;
            }
            let value = match k.sigma_eval(&w) {
                Ok(s) => json!(s),
                Err(e @ Error::ExceptionalPoint { .. }) => json!({ "undetermined": e.to_string() }),
                Err(e) => return Err(e),
            };
            signatures.push(json!({ "root": w.to_string(), "order": q, "r": r, "sigma": value }));
        }
    }
    Ok(Answer::Yes(json!({
        "knot": k.to_expr(),
        "alexander": delta.to_json(),
        "arf": k.arf()?,
        "det_at_minus_one": k.determinant()?.to_string(),
        "signatures": signatures,
    })))
}

fn parse_ring(s: &str) -> knotconc::Result<Ring> {
    let ring = Ring::parse(s)?;
    if !ring.is_field() {
        return Err(Error::InvalidInput(format!(
            "ring {ring} is not a field; use q or zp"
        )));
    }
    Ok(ring)
}

fn alexander(input: &Path, modulus: Option<u64>) -> knotconc::Result<Answer> {
    let ring = match modulus {
        Some(p) => Ring::mod_p(p)?,
        None => Ring::Rationals,
    };
    let text = read(input)?;
    let (source, module) = if input.extension().is_some_and(|e| e == "json") {
        let v: Value = serde_json::from_str(&text)?;
        if v.get("matrix").is_some() {
            let a = SeifertMatrix::from_json(&text)?;
            (
                "seifert",
                knotconc::blanchfield::AlexanderModule::from_seifert(&a, ring)?,
            )
        } else {
            (
                "presentation",
                alexander_from_presentation(&GroupPresentation::from_json(&text)?, ring)?,
            )
        }
    } else {
        (
            "presentation",
            alexander_from_presentation(&GroupPresentation::parse_text(&text)?, ring)?,
        )
    };
    let mut out = module.to_json();
    out["source"] = json!(source);
    if let Some(order) = module.order() {
        out["order"] = order.alexander_normalized().to_json();
    }
    Ok(Answer::Yes(out))
}

fn blanchfield(args: BlanchfieldArgs) -> knotconc::Result<Answer> {
    let ring = parse_ring(&args.ring)?;
    let a = SeifertMatrix::from_json(&read(&args.matrix)?)?;
    let bl = Blanchfield::new(&a, ring)?;
    if let Some(paths) = args.pair {
        let x = vector_from_json(&read(&paths[0])?, ring)?;
        let y = vector_from_json(&read(&paths[1])?, ring)?;
        return Ok(Answer::Yes(bl.pair(&x, &y)?.to_json()));
    }
    if let Some(path) = args.generates {
        let x = vector_from_json(&read(&path)?, ring)?;
        let g = bl.module().generates(&x)?;
        let v = json!({ "generates": g });
        return Ok(if g { Answer::Yes(v) } else { Answer::No(v) });
    }
    if args.nonsingular {
        let ns = bl.is_nonsingular();
        let v = json!({ "nonsingular": ns });
        return Ok(if ns { Answer::Yes(v) } else { Answer::No(v) });
    }
    Ok(Answer::Yes(bl.module().to_json()))
}
