use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qav_cli::input::{CoverSpec, RawQuotient};
use qav_cli::run::{parse_orders, parse_scheme};
use qav_cli::{exit_code, parse_input, run, Command, Flags};
use qav_core::Error;

#[derive(Parser)]
#[command(name = "qav", version, about = "Characteristic varieties of plane curve complements")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Input document (JSON).
    input: PathBuf,
    /// Skip subcurves whose faces cannot carry superabundance for degree reasons.
    #[arg(long)]
    fast: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Faces, components, Milnor fibre and the resonance cross-check.
    Analyze(Common),
    /// Contributing faces with their cohomology.
    Faces(Common),
    /// Irregularity and Betti numbers of abelian covers.
    Covers {
        #[command(flatten)]
        common: Common,
        /// Orders m1,…,ms of the cyclic factors.
        #[arg(long)]
        orders: Option<String>,
        /// JSON file {"matrix": [[…]], "moduli": […]} mapping H1 onto the cover group.
        #[arg(long)]
        quotient: Option<PathBuf>,
    },
    /// First Betti number of the Milnor fibre.
    Milnor(Common),
    /// Resonance components of the Aomoto complex.
    Resonance(Common),
    /// h0, χ and h1 of a fat-point scheme on the curve's vertices.
    Superabundance {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// vertex:order,… (vertex indices as listed by `faces`); default every vertex once.
        #[arg(long)]
        scheme: Option<String>,
    },
}

fn read_quotient(path: &PathBuf) -> Result<RawQuotient, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::schema("quotient", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::schema("quotient", e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| -> Result<(qav_cli::Report, Option<PathBuf>), Error> {
        let (common, cmd) = match cli.cmd {
            Cmd::Analyze(c) => (c, None),
            Cmd::Faces(c) => (c, Some(Command::Faces)),
            Cmd::Milnor(c) => (c, Some(Command::Milnor)),
            Cmd::Resonance(c) => (c, Some(Command::Resonance)),
            Cmd::Covers { common, orders, quotient } => {
                let orders = orders.as_deref().map(parse_orders).transpose()?;
                let quotient = quotient.as_ref().map(read_quotient).transpose()?;
                let spec = match (orders, quotient) {
                    (None, None) => None,
                    (Some(orders), None) => Some(CoverSpec { orders, quotient: None }),
                    (orders, Some(q)) => {
                        let orders = orders
                            .or(q.moduli)
                            .ok_or_else(|| Error::schema("quotient.moduli", "give --orders or moduli in the quotient file"))?;
                        Some(CoverSpec { orders, quotient: Some(q.matrix) })
                    }
                };
                (common, Some(Command::Covers(spec)))
            }
            Cmd::Superabundance { common, degree, scheme } => {
                let scheme = scheme.as_deref().map(parse_scheme).transpose()?;
                (common, Some(Command::Superabundance { degree, scheme }))
            }
        };
        let doc = parse_input(&common.input)?;
        let cmd = match cmd {
            // --orders without --quotient picks up the document's default quotient
            Some(Command::Covers(Some(CoverSpec { orders, quotient: None }))) if doc.quotient.is_some() => {
                Command::Covers(Some(CoverSpec { orders, quotient: doc.quotient.as_ref().map(|q| q.matrix.clone()) }))
            }
            Some(c) => c,
            None => Command::Analyze,
        };
        let flags = Flags { fast: common.fast, seed: common.seed };
        Ok((run(&cmd, &doc, flags)?, common.json))
    })();

    match result {
        Ok((report, json)) => {
            match json {
                Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, report.to_json()) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                    print!("{}", report.to_text());
                }
                None => print!("{}", report.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
