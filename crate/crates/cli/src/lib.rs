//! Command-line front end for the `nilclean` library.

pub mod commands;
pub mod doc;
pub mod error;
pub mod input;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilclean::classifier::Property;

use crate::commands::{Enumerate, Format};
use crate::doc::BaseRing;
pub use crate::error::{exit, CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "nilclean",
    version,
    about = "Decompose matrices over Z_m into two idempotents plus a nilpotent"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a verified certificate A = E + F + W.
    Decompose(DecomposeArgs),
    /// Decide ring properties by exhaustive enumeration.
    Classify(ClassifyArgs),
    /// Rational canonical form over GF(p).
    Rcf(RcfArgs),
    /// Re-check certificate or rcf documents.
    Verify(VerifyArgs),
    /// Minimal nilpotency index table for Z2 x Z4 x ... x Z(2^k).
    DemoObstruction(DemoArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Plain,
    Doc,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => Format::Plain,
            FormatArg::Doc => Format::Doc,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EnumerateArg {
    Idempotents,
    Nilpotents,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Coefficient ring Z_m.
    #[arg(long, conflicts_with = "ring")]
    pub modulus: Option<u64>,
    /// Coefficient ring, e.g. Z12 or Z3[x]/(x^2).
    #[arg(long)]
    pub ring: Option<String>,
}

impl RingArgs {
    fn base_ring(&self) -> CliResult<Option<BaseRing>> {
        match (&self.modulus, &self.ring) {
            (Some(m), _) => Ok(Some(BaseRing::Zm(nilclean::Modulus::new(*m)?))),
            (None, Some(r)) => Ok(Some(r.parse()?)),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Matrix file (document or plain rows); stdin when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "doc")]
    pub format: FormatArg,
    /// Use the diagonal construction for upper-triangular input.
    #[arg(long)]
    pub triangular: bool,
    /// Decompose every matrix of M_N(Z_M).
    #[arg(long, num_args = 2, value_names = ["N", "M"], conflicts_with_all = ["input", "random"])]
    pub exhaustive: Option<Vec<u64>>,
    /// Decompose K random matrices of size --dim over the given ring.
    #[arg(long, value_name = "K", conflicts_with = "input")]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Ring descriptor, e.g. Z3xZ3, M2(Z2), Z2[x]/(x^3).
    #[arg(long)]
    pub ring: String,
    /// Comma-separated properties; all basic properties when omitted.
    #[arg(long, value_delimiter = ',')]
    pub property: Vec<String>,
    #[arg(long, value_enum)]
    pub enumerate: Option<EnumerateArg>,
    #[arg(long, value_enum, default_value = "doc")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct RcfArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "doc")]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Document stream; stdin when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Largest tower length, 2..=5.
    #[arg(default_value_t = 4)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: FormatArg,
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> CliResult<String> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> CliResult<String> {
    match &cli.command {
        Command::Decompose(a) => {
            let ring = a.ring.base_ring()?;
            let inputs = if let Some(nm) = &a.exhaustive {
                commands::exhaustive_matrices(nm[0] as usize, nm[1])?
            } else if let Some(k) = a.random {
                let ring =
                    ring.ok_or_else(|| CliError::parse("--random needs --modulus or --ring"))?;
                commands::random_matrices(&ring, a.dim, k, a.seed)?
            } else {
                vec![input::read_matrix(
                    &read_input(&a.input, stdin)?,
                    ring.as_ref(),
                )?]
            };
            commands::decompose_all(&inputs, a.triangular, a.format.into())
        }
        Command::Classify(a) => {
            let props = if a.property.is_empty() {
                Property::BASIC.to_vec()
            } else {
                a.property
                    .iter()
                    .map(|p| p.trim().parse())
                    .collect::<Result<Vec<Property>, _>>()?
            };
            let enumerate = a.enumerate.map(|e| match e {
                EnumerateArg::Idempotents => Enumerate::Idempotents,
                EnumerateArg::Nilpotents => Enumerate::Nilpotents,
            });
            commands::classify(&a.ring, &props, enumerate, a.format.into())
        }
        Command::Rcf(a) => {
            let ring = a.ring.base_ring()?;
            let doc = input::read_matrix(&read_input(&a.input, stdin)?, ring.as_ref())?;
            Ok(commands::format_rcf(
                &commands::rcf_document(&doc)?,
                a.format.into(),
            ))
        }
        Command::Verify(a) => commands::verify_stream(&read_input(&a.input, stdin)?),
        Command::DemoObstruction(a) => commands::demo_obstruction(a.k, a.format.into()),
    }
}

/// Parses `args` (program name first) and runs them, reading `stdin` only
/// when the command needs input. Returns `(exit code, stdout, stderr)`.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => return (exit::PARSE, String::new(), e.to_string()),
        Err(e) => return (exit::OK, e.to_string(), String::new()),
    };
    match run(&cli, stdin) {
        Ok(out) => (exit::OK, out, String::new()),
        Err(CliError::Verification { output, failed }) => (
            exit::VERIFICATION,
            output,
            format!("verification failed: {}\n", failed.join(", ")),
        ),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}

pub fn run_args<I, T>(args: I, stdin: &str) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut stdin.as_bytes())
}
