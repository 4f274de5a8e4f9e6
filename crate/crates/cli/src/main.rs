//! `normideal`: weighted monomial ideals from the command line.
//!
//! Exit codes: 0 on success, 1 when a check fails (a counterexample, a
//! failed dependence equation, a certificate that does not replay), 2 on
//! invalid input.

mod render;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use normideal::closure::integral_closure;
use normideal::format::{
    poly_to_doc, CertificateDoc, ClosureDoc, DecomposeDoc, IdealDoc, PowerCheckDoc, RingDescription,
    Verifiable, WitnessDoc,
};
use normideal::normality::{certify_normal, decompose, normal_threshold, verify_truncation_power};
use normideal::poly::{check_dependence, TermOrder};
use normideal::syntax::{parse_monomial, parse_monomial_list, parse_polynomial, parse_weights};
use normideal::{truncation_ideal, MonomialIdeal};

#[derive(Parser)]
#[command(name = "normideal", version, about = "Weighted monomial ideals: truncations, normality certificates, integral closure")]
struct Cli {
    /// Emit canonical JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// Comma-separated positive weights, one per variable.
    #[arg(long, conflicts_with = "ring")]
    weights: Option<String>,

    /// Comma-separated variable names (default x,y,z,w or x0,x1,..).
    #[arg(long, requires = "weights")]
    vars: Option<String>,

    /// Ring description file: {"variables": [..], "weights": [..]}.
    #[arg(long)]
    ring: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of R_{>=alpha}.
    Gens {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        alpha: u64,
    },
    /// A power of R_{>=alpha}, or of an ideal read from a file.
    Power {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, required_unless_present = "ideal")]
        alpha: Option<u64>,
        /// Ideal JSON file (`-` for stdin) instead of a truncation.
        #[arg(long, conflicts_with_all = ["alpha", "weights", "ring"])]
        ideal: Option<PathBuf>,
        #[arg(long)]
        p: u64,
    },
    /// Compare (R_{>=alpha})^p with R_{>=p*alpha}.
    PowerCheck {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        p: u64,
    },
    /// Certify that R_{>=mA} is normal up to a given power.
    NormalCheck {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 4)]
        pmax: u64,
    },
    /// Factor a monomial of degree >= p*mA into p factors of degree >= mA.
    Decompose {
        #[command(flatten)]
        ring: RingArgs,
        /// Monomial such as x^4*y^6*z^10.
        #[arg(long)]
        monomial: String,
        #[arg(long)]
        p: u64,
    },
    /// Integral closure of the ideal in a JSON file (`-` for stdin).
    Closure { file: PathBuf },
    /// Check an integral-dependence equation modulo one relation.
    Witness {
        #[command(flatten)]
        ring: RingArgs,
        /// The relation f, e.g. "x^2 + y^3*z + z^4".
        #[arg(long)]
        relation: String,
        /// The element g.
        #[arg(long)]
        element: String,
        /// Coefficients a_1..a_n, in order; repeat the flag.
        #[arg(long = "coeff", required = true)]
        coeffs: Vec<String>,
        /// Generators of an ideal I, e.g. "x,y,z": each a_i must lie in I^i.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Replay a normality certificate or closure report.
    Verify { file: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<normideal::Error> for Failure {
    fn from(e: normideal::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult = Result<u8, Failure>;

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| input_error(format!("reading {}: {e}", path.display())))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| input_error(format!("invalid JSON: {e}")))
}

impl RingArgs {
    fn resolve(&self) -> Result<RingDescription, Failure> {
        if let Some(path) = &self.ring {
            let ring: RingDescription = parse_json(&read_input(path)?)?;
            ring.validate()?;
            return Ok(ring);
        }
        let weights = self
            .weights
            .as_deref()
            .ok_or_else(|| input_error("either --weights or --ring is required"))?;
        let names = self
            .vars
            .as_ref()
            .map(|v| v.split(',').map(|s| s.trim().to_string()).collect());
        Ok(RingDescription::new(parse_weights(weights)?, names)?)
    }
}

fn emit<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string(doc).expect("documents serialize"));
}

fn run(cli: Cli) -> CliResult {
    let json = cli.json;
    match cli.command {
        Command::Gens { ring, alpha } => {
            let ring = ring.resolve()?;
            let ideal = truncation_ideal(&ring.weight_system()?, alpha)?;
            if json {
                emit(&IdealDoc::new(&ideal, &ring.variables));
            } else {
                print!("{}", render::ideal(&format!("R_>={alpha}"), &ideal, &ring.variables));
            }
            Ok(0)
        }
        Command::Power { ring, alpha, ideal, p } => {
            let (base, names) = match (ideal, alpha) {
                (Some(path), _) => {
                    let doc: IdealDoc = parse_json(&read_input(&path)?)?;
                    (doc.to_ideal()?, doc.variables)
                }
                (None, Some(alpha)) => {
                    let ring = ring.resolve()?;
                    (truncation_ideal(&ring.weight_system()?, alpha)?, ring.variables)
                }
                (None, None) => return Err(input_error("either --alpha or --ideal is required")),
            };
            let power = base.power(p)?;
            if json {
                emit(&IdealDoc::new(&power, &names));
            } else {
                print!("{}", render::ideal(&format!("I^{p}"), &power, &names));
            }
            Ok(0)
        }
        Command::PowerCheck { ring, alpha, p } => {
            let ring = ring.resolve()?;
            let verdict = verify_truncation_power(&ring.weight_system()?, alpha, p)?;
            if json {
                emit(&PowerCheckDoc::new(&ring, alpha, p, &verdict));
            } else {
                print!("{}", render::power_check(alpha, p, &verdict, &ring));
            }
            Ok(if verdict.is_equal() { 0 } else { 1 })
        }
        Command::NormalCheck { ring, pmax } => {
            let ring = ring.resolve()?;
            let w = ring.weight_system()?;
            let th = normal_threshold(&w)?;
            match certify_normal(&w, pmax) {
                Ok(cert) => {
                    if json {
                        emit(&CertificateDoc::from(&cert));
                    } else {
                        print!("{}", render::normal_check(&th, &cert));
                    }
                    Ok(0)
                }
                Err(e @ normideal::Error::CertificationFailed { .. }) => {
                    eprintln!("threshold mA = {}", th.threshold);
                    Err(Failure {
                        code: 1,
                        message: e.to_string(),
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Decompose { ring, monomial, p } => {
            let ring = ring.resolve()?;
            let w = ring.weight_system()?;
            let mono = parse_monomial(&monomial, &ring.variables)?;
            let cert = decompose(&w, &mono, p)?;
            let threshold = normal_threshold(&w)?.threshold;
            if json {
                emit(&DecomposeDoc {
                    weights: ring.weights.clone(),
                    variables: ring.variables.clone(),
                    threshold,
                    p,
                    input: cert.input.clone(),
                    factors: cert.factors.clone(),
                });
            } else {
                print!("{}", render::decomposition(&cert, threshold, &ring.variables));
            }
            Ok(0)
        }
        Command::Closure { file } => {
            let doc: IdealDoc = parse_json(&read_input(&file)?)?;
            let ideal = doc.to_ideal()?;
            let report = integral_closure(&ideal)?;
            if json {
                emit(&ClosureDoc::new(&report, &doc.variables));
            } else {
                print!("{}", render::closure(&report, &doc.variables));
            }
            Ok(0)
        }
        Command::Witness {
            ring,
            relation,
            element,
            coeffs,
            ideal,
        } => {
            let ring = ring.resolve()?;
            let names = &ring.variables;
            let f = parse_polynomial(&relation, names)?;
            let g = parse_polynomial(&element, names)?;
            let a = coeffs
                .iter()
                .map(|c| parse_polynomial(c, names))
                .collect::<Result<Vec<_>, _>>()?;
            let w = ring.weight_system()?;
            let witness = match &ideal {
                Some(text) => Some(MonomialIdeal::minimalize(&w, parse_monomial_list(text, names)?)?),
                None => None,
            };
            let order = TermOrder::graded_lex(ring.weights.clone())?;
            let chk = check_dependence(&f, &g, &a, witness.as_ref(), &order)?;
            if json {
                emit(&WitnessDoc {
                    weights: ring.weights.clone(),
                    variables: ring.variables.clone(),
                    relation: poly_to_doc(&f),
                    element: poly_to_doc(&g),
                    coefficients: a.iter().map(poly_to_doc).collect(),
                    witness_ideal: witness.map(|i| i.generators().to_vec()),
                    remainder: poly_to_doc(&chk.remainder),
                    equation_holds: chk.equation_holds(),
                    coefficient_membership: chk.coefficient_membership.clone(),
                    holds: chk.holds(),
                });
            } else {
                print!("{}", render::witness(&chk, names, &order));
            }
            Ok(if chk.holds() { 0 } else { 1 })
        }
        Command::Verify { file } => {
            let doc = Verifiable::parse(&read_input(&file)?)?;
            let violations = doc.violations();
            if json {
                emit(&serde_json::json!({ "valid": violations.is_empty(), "violations": violations }));
            } else if violations.is_empty() {
                println!("verified");
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
