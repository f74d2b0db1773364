//! `gammawald`: run the checks on a category file and report findings.
//!
//! Exit status is 0 for a clean run, 1 when any check reports a finding and
//! 2 when the input cannot be used.

mod commands;
mod output;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Parser)]
#[command(name = "gammawald", version, about = "Checks the tuple construction Γ(C) on finite permutative categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the category and permutative tables.
    Validate(Run),
    /// Window sizes and predicate counts for Γ(C).
    Gamma(Run),
    /// Waldhausen axioms on Γ_{≤L}(C), or on a file's own Waldhausen block.
    Axioms(Run),
    /// Splitting of every cofibration in the window.
    Split(Run),
    /// Identity and associativity of composition in Γ(C).
    Laws(Run),
    /// Independence of permutation isomorphisms from the chosen word.
    Coherence(Run),
    /// K₀ of both sides, with oracle cross-checks.
    K0(Run),
    /// Terminal objects of the comma categories s↓A.
    QuillenA(Run),
    /// Coherence of the oplax structure maps of s.
    Oplax(Run),
    /// Triangle identities and exactness of the counit.
    Adjunction(Run),
    /// Nerve homology in low degrees (diagnostic).
    Homology(Run),
    /// Every check that applies to the file.
    ReportAll(Run),
    /// Print C₊ as a category file.
    EmitPlus {
        file: PathBuf,
    },
    /// Print the pointed-sets Waldhausen presentation as a category file.
    EmitPointedSets {
        #[arg(long, default_value_t = 2)]
        max: usize,
    },
}

#[derive(Args, Clone)]
pub struct Run {
    /// Category file, or `-` for standard input.
    file: PathBuf,
    #[command(flatten)]
    params: Params,
}

#[derive(Args, Clone, Debug, serde::Serialize)]
pub struct Params {
    /// Longest tuple in the Γ window.
    #[arg(long, default_value_t = 2)]
    pub max_len: usize,
    /// Highest nerve degree for homology.
    #[arg(long, default_value_t = 3)]
    pub max_dim: usize,
    /// Instances per check before seeded sampling takes over.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    /// Cap on the number of morphisms (or simplices) a window may hold.
    #[arg(long, default_value_t = 4_000_000)]
    pub max_morphisms: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Longest object sequence for the permutation-coherence check.
    #[arg(long, default_value_t = 4)]
    pub coherence_len: usize,
    /// Admit every morphism `s(X) → A` in the comma categories, not only
    /// weak equivalences.
    #[arg(long)]
    pub comma_all_morphisms: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    #[serde(skip)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, run) = match cli.command {
        Command::EmitPlus { file } => {
            let text = match read_input(&file) {
                Ok(t) => t,
                Err(e) => return input_error(e),
            };
            return match commands::emit_plus(&text) {
                Ok(json) => emit(&format!("{json}\n"), ExitCode::SUCCESS),
                Err(e) => input_error(e),
            };
        }
        Command::EmitPointedSets { max } => {
            return emit(&format!("{}\n", commands::emit_pointed_sets(max)), ExitCode::SUCCESS);
        }
        Command::Validate(r) => ("validate", r),
        Command::Gamma(r) => ("gamma", r),
        Command::Axioms(r) => ("axioms", r),
        Command::Split(r) => ("split", r),
        Command::Laws(r) => ("laws", r),
        Command::Coherence(r) => ("coherence", r),
        Command::K0(r) => ("k0", r),
        Command::QuillenA(r) => ("quillen-a", r),
        Command::Oplax(r) => ("oplax", r),
        Command::Adjunction(r) => ("adjunction", r),
        Command::Homology(r) => ("homology", r),
        Command::ReportAll(r) => ("report-all", r),
    };
    let text = match read_input(&run.file) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let report = match commands::run(name, &run.file.display().to_string(), &text, &run.params) {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    let text = match run.params.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => report.to_text(),
    };
    emit(&text, if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Writes to stdout; a closed pipe is reported as an I/O failure rather
/// than a panic.
fn emit(text: &str, code: ExitCode) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => code,
        Err(_) => ExitCode::from(2),
    }
}
