//! Argument parsing, dispatch, exit codes and output handling.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::document::{self, to_canonical_json, AlgebraDocument, DocError};
use super::report::{self, Report, Settings};
use crate::criteria::CensusFilter;
use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "graded-kummer", version, about = "Graded crossed products, Kummer subfields and their cohomology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Algebra document (or corpus directory for `corpus`).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Upper bound on search and cohomology work.
    #[arg(long, global = true, env = "GRADEDCP_BUDGET")]
    pub budget: Option<u128>,
    /// Seed for randomized property checks; searches are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    Cyclic,
    ElementaryAbelian,
    All,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the factor-set axioms exhaustively.
    Validate,
    /// Ramification type and Γ_D/Γ_F.
    Classify,
    /// Grades δ_σ of the basis elements x_σ.
    GradeAssign,
    /// Split f into its residue part d and carry cocycle h.
    Decompose,
    /// The map θ_D: Γ_D/Γ_F → Gal(Z(D₀)/F₀).
    Theta,
    /// The centralizer B of Z(D₀) and its factor set over G.
    Centralizer,
    /// Necessary conditions read off a Kummer subfield.
    KummerExtract,
    /// Build a subfield from (M, R, d′, b), or round-trip searched subfields.
    KummerConstruct,
    /// Kummer graded subfields generated within the candidate units.
    KummerSearch {
        /// Keep only subfields with [K:F] equal to this.
        #[arg(long)]
        target_order: Option<usize>,
        /// Also use the classes of kum(D₀/F₀) as unit parts.
        #[arg(long)]
        residue_translates: bool,
    },
    /// The class α_K of each subfield.
    Alpha,
    /// H² with trivial action, symmetric part by default.
    H2 {
        /// Invariant factors of H, comma separated.
        #[arg(long = "h", value_delimiter = ',', required = true)]
        h: Vec<u64>,
        /// Invariant factors of M, comma separated (empty for trivial M).
        #[arg(long = "m", value_delimiter = ',', num_args = 0..)]
        m: Vec<u64>,
        /// All of H², not only the symmetric part.
        #[arg(long)]
        full: bool,
    },
    /// Structural predicates: rank, exponent, towers.
    Criteria,
    /// Maximal Kummer graded subfields within U₀ and their Galois types.
    Census {
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
    },
    /// Check every corpus document and its golden reports.
    Corpus {
        /// Rewrite the golden reports instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::GradeAssign => "grade-assign",
            Command::Decompose => "decompose",
            Command::Theta => "theta",
            Command::Centralizer => "centralizer",
            Command::KummerExtract => "kummer-extract",
            Command::KummerConstruct => "kummer-construct",
            Command::KummerSearch { .. } => "kummer-search",
            Command::Alpha => "alpha",
            Command::H2 { .. } => "h2",
            Command::Criteria => "criteria",
            Command::Census { .. } => "census",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        e if e.is_input_contract() => EXIT_INPUT,
        _ => EXIT_VERIFICATION,
    }
}

fn io_error(path: &Path, e: std::io::Error) -> DocError {
    DocError {
        path: String::new(),
        error: Error::InvalidInput(format!("{}: {e}", path.display())),
    }
}

pub fn load(path: &Path) -> Result<AlgebraDocument, DocError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    document::parse(&text)
}

/// Runs one document subcommand.
pub fn run_on(command: &Command, doc: &AlgebraDocument, s: &Settings) -> Result<Report, DocError> {
    if let Command::Validate = command {
        return report::validate(doc, s);
    }
    let built = doc.build_with(s.exec)?;
    match command {
        Command::Validate | Command::H2 { .. } | Command::Corpus { .. } => unreachable!("handled by the caller"),
        Command::Classify => Ok(report::classify(&built)),
        Command::GradeAssign => Ok(report::grade_assign(&built)),
        Command::Decompose => report::decompose(&built),
        Command::Theta => report::theta(&built),
        Command::Centralizer => report::centralizer(&built),
        Command::KummerExtract => report::kummer_extract(&built, s),
        Command::KummerConstruct => report::kummer_construct(&built, s),
        Command::KummerSearch { target_order, residue_translates } => {
            report::kummer_search(&built, s, *target_order, *residue_translates)
        }
        Command::Alpha => report::alpha(&built, s),
        Command::Criteria => report::criteria(&built),
        Command::Census { filter } => {
            let f = match filter {
                Filter::Cyclic => CensusFilter::CyclicMaximal,
                Filter::ElementaryAbelian => CensusFilter::ElementaryAbelianMaximal,
                Filter::All => CensusFilter::All,
            };
            report::census(&built, s, f)
        }
    }
}

fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn default_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// deg(D) = √(|H|·[D₀:F₀]) read off the document.
fn degree_of(doc: &AlgebraDocument) -> usize {
    let dim = doc.h_invariants.iter().product::<u64>() as usize * doc.residue.min_poly.len().saturating_sub(1);
    (1..=dim).find(|k| k * k >= dim).unwrap_or(1)
}

/// Subcommands whose reports are kept as golden files.
pub fn golden_commands(doc: &AlgebraDocument) -> Vec<Command> {
    let mut cmds = vec![
        Command::Validate,
        Command::Classify,
        Command::GradeAssign,
        Command::Decompose,
        Command::Theta,
        Command::Centralizer,
        Command::Criteria,
    ];
    // maximal subfields only, to keep the files small
    if doc.candidate_units.is_some() {
        cmds.push(Command::KummerSearch {
            target_order: Some(degree_of(doc)),
            residue_translates: false,
        });
    }
    cmds
}

/// Checks (or rewrites) every document in `dir` and its golden reports.
pub fn run_corpus(dir: &Path, bless: bool, s: &Settings) -> Result<Report, DocError> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io_error(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    let mut entries = Vec::new();
    let mut failures = 0;
    let mut checked = 0;
    for path in &names {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let doc = document::parse(&text).map_err(|e| DocError {
            path: format!("{stem}: {}", e.path),
            error: e.error,
        })?;
        let round_trip = to_canonical_json(&doc) == text;
        failures += usize::from(!round_trip);
        let golden_dir = dir.join("golden").join(&stem);
        let mut goldens = Vec::new();
        for cmd in golden_commands(&doc) {
            let out = render(&run_on(&cmd, &doc, s)?, Format::Json);
            let file = golden_dir.join(format!("{}.json", cmd.name()));
            let status = if bless {
                std::fs::create_dir_all(&golden_dir).map_err(|e| io_error(&golden_dir, e))?;
                write_atomic(&file, &out).map_err(|e| io_error(&file, e))?;
                "written"
            } else {
                match std::fs::read_to_string(&file) {
                    Ok(g) if g == out => "match",
                    Ok(_) => "differs",
                    Err(_) => "missing",
                }
            };
            checked += 1;
            failures += usize::from(status == "differs" || status == "missing");
            goldens.push(serde_json::json!({"command": cmd.name(), "status": status}));
        }
        entries.push(serde_json::json!({"document": stem, "canonical_round_trip": round_trip, "goldens": goldens}));
    }
    let summary = format!("{} documents, {checked} golden reports, {failures} failures", names.len());
    let r = Report {
        command: "corpus".into(),
        summary,
        body: serde_json::json!({"documents": entries, "failures": failures}),
    };
    if failures > 0 {
        return Err(DocError {
            path: String::new(),
            error: Error::Verification(format!("corpus check failed: {}", r.to_text())),
        });
    }
    Ok(r)
}

/// Runs the command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let c = &cli.common;
    let settings = Settings {
        budget: c.budget,
        seed: c.seed,
        ..Settings::default()
    };
    let result = match &cli.command {
        Command::H2 { h, m, full } => report::h2(h, m, !full, &settings),
        Command::Corpus { bless } => {
            let dir = c.input.clone().unwrap_or_else(default_corpus_dir);
            run_corpus(&dir, *bless, &settings)
        }
        cmd => match &c.input {
            None => Err(DocError {
                path: "--input".into(),
                error: Error::InvalidInput(format!("{} needs --input", cmd.name())),
            }),
            Some(p) => load(p).and_then(|doc| run_on(cmd, &doc, &settings)),
        },
    };
    match result {
        Ok(r) => {
            let text = render(&r, c.format);
            match &c.output {
                Some(p) => {
                    if let Err(e) = write_atomic(p, &text) {
                        eprintln!("error: cannot write {}: {e}", p.display());
                        return EXIT_INPUT;
                    }
                }
                None => print!("{text}"),
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e.error)
        }
    }
}

pub fn main() -> i32 {
    run(Cli::parse())
}
