//! Command-line front end. Everything reads and writes JSON.
//!
//! Exit codes: 0 success, 1 expectation mismatch, 2 parse or input error,
//! 3 unsupported field, 4 equal-size violation.

use std::collections::HashSet;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::canon::build_jordan_matrix;
use crate::centralizer::{centralizer_basis, structured_centralizer_basis, SubalgebraBasis};
use crate::decide::{decide, decide_batch};
use crate::error::Error;
use crate::field::FieldSpec;
use crate::frobsys::{
    build_centralizer_system, frobenius_algebra_oracle_seeded, separability_element, verify_system,
    CentralizerSystem, SearchSpace, DEFAULT_SEED,
};
use crate::matrix::Mat;
use crate::wire;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED_FIELD: i32 = 3;
pub const EXIT_EQUAL_SIZE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "frobcent", version, about = "Centralizer algebras and Frobenius extensions, exactly")]
pub struct Cli {
    /// Override the field of every input: Q, GF(p) or a prime p.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Worker threads for corpus runs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for the random-evaluation stage of the Frobenius-algebra oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify S_n(c, F)/F for a matrix read from PATH or stdin.
    Analyze { path: Option<PathBuf> },
    /// Basis of the centralizer of a matrix, or of a Jordan spec with --structured.
    Centralizer {
        path: Option<PathBuf>,
        /// Read a Jordan spec and build the basis block by block.
        #[arg(long)]
        structured: bool,
    },
    /// Frobenius system for the centralizer of a Jordan spec.
    System {
        path: Option<PathBuf>,
        /// Include the verification report.
        #[arg(long)]
        verify: bool,
        /// Probe for a separability element in one space:
        /// relative_centralizer, center or scalars.
        #[arg(long, value_parser = parse_space)]
        separability: Option<SearchSpace>,
    },
    /// Run every corpus entry and compare against its expectations.
    Corpus { path: PathBuf },
}

fn parse_space(s: &str) -> Result<SearchSpace, String> {
    SearchSpace::from_name(s).ok_or_else(|| {
        format!("unknown space {s:?}; expected relative_centralizer, center or scalars")
    })
}

/// Result of one command: a JSON document for stdout, and an exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Option<Value>,
    pub stderr: Vec<String>,
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout: Some(v),
            stderr: Vec::new(),
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: None,
            stderr: vec![msg.into()],
        }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = match e {
        Error::UnsupportedField(_) => EXIT_UNSUPPORTED_FIELD,
        _ => EXIT_PARSE,
    };
    Outcome::fail(code, format!("error: {e}"))
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

/// Runs a parsed command line and returns what should be printed.
pub fn execute(cli: &Cli) -> Outcome {
    let field = match cli.field.as_deref().map(wire::parse_field_name).transpose() {
        Ok(f) => f,
        Err(e) => return error_outcome(&e),
    };
    let result = match &cli.command {
        Command::Analyze { path } => analyze(path, field),
        Command::Centralizer { path, structured } => centralizer(path, *structured, field, cli.seed),
        Command::System {
            path,
            verify,
            separability,
        } => system(path, *verify, *separability, field),
        Command::Corpus { path } => corpus(path, field, cli.jobs),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn analyze(path: &Option<PathBuf>, field: Option<FieldSpec>) -> Result<Outcome, Error> {
    let doc = wire::parse_document(&read_input(path)?)?;
    let c = wire::mat_from_json(&doc, field)?;
    Ok(Outcome::ok(decide(&c)?.to_json()))
}

fn centralizer(
    path: &Option<PathBuf>,
    structured: bool,
    field: Option<FieldSpec>,
    seed: u64,
) -> Result<Outcome, Error> {
    let doc = wire::parse_document(&read_input(path)?)?;
    let (source, basis): (&str, SubalgebraBasis) = if structured {
        let spec = wire::spec_from_json(&doc, field)?;
        ("structured", structured_centralizer_basis(&spec)?)
    } else {
        let c = wire::mat_from_json(&doc, field)?;
        ("kronecker", centralizer_basis(&c)?)
    };
    let oracle = match frobenius_algebra_oracle_seeded(&basis, seed) {
        Ok(o) => wire::oracle_to_json(&o),
        Err(e) => json!({ "verdict": null, "error": e.to_string() }),
    };
    Ok(Outcome::ok(json!({
        "source": source,
        "dimension": basis.dim(),
        "basis": wire::basis_to_json(&basis),
        "frobenius_algebra": oracle,
    })))
}

fn system(
    path: &Option<PathBuf>,
    verify: bool,
    separability: Option<SearchSpace>,
    field: Option<FieldSpec>,
) -> Result<Outcome, Error> {
    let doc = wire::parse_document(&read_input(path)?)?;
    let spec = wire::spec_from_json(&doc, field)?;
    let (system, permutation) = match build_centralizer_system(&spec)? {
        CentralizerSystem::Built {
            system,
            permutation,
        } => (system, permutation),
        CentralizerSystem::EqualSizeViolation { eigenvalue, sizes } => {
            let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
            return Ok(Outcome::fail(
                EXIT_EQUAL_SIZE,
                format!(
                    "equal-size violation: eigenvalue {eigenvalue} has blocks of sizes {{{}}}",
                    sizes.join(", ")
                ),
            ));
        }
    };
    let mut out = json!({
        "spec": wire::spec_to_json(&spec),
        "jordan_matrix": wire::mat_to_json(&build_jordan_matrix(&spec)),
        "permutation": permutation.as_ref().map(wire::mat_to_json),
        "system": wire::system_to_json(&system),
    });
    if verify {
        out["verification"] = wire::verification_to_json(&verify_system(&system));
    }
    if let Some(space) = separability {
        let d = separability_element(&system, space)?;
        let mut r = wire::separability_result_to_json(d.as_ref());
        r["space"] = json!(space.name());
        out["separability"] = r;
    }
    Ok(Outcome::ok(out))
}

struct Entry {
    name: String,
    matrix: Result<Mat, Error>,
    expected: Option<Value>,
}

fn parse_corpus(doc: &Value, field: Option<FieldSpec>) -> Result<Vec<Entry>, Error> {
    let entries = doc
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("corpus: expected {\"entries\": [...]}".into()))?;
    let mut seen = HashSet::new();
    entries
        .iter()
        .map(|e| {
            let name = e
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("corpus entry without a name".into()))?
                .to_string();
            if !seen.insert(name.clone()) {
                return Err(Error::Parse(format!("duplicate corpus entry {name:?}")));
            }
            let matrix = match e.get("matrix") {
                Some(m) => wire::mat_from_json(m, field),
                None => Err(Error::Parse(format!("entry {name:?} has no matrix"))),
            };
            Ok(Entry {
                name,
                matrix,
                expected: e.get("expected").cloned(),
            })
        })
        .collect()
}

fn corpus(path: &PathBuf, field: Option<FieldSpec>, jobs: Option<usize>) -> Result<Outcome, Error> {
    let doc = wire::parse_document(&read_input(&Some(path.clone()))?)?;
    let entries = parse_corpus(&doc, field)?;

    // Decide only the entries that parsed; keep positions for reassembly.
    let parsed: Vec<(usize, Mat)> = entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.matrix.as_ref().ok().map(|m| (i, m.clone())))
        .collect();
    let mats: Vec<Mat> = parsed.iter().map(|(_, m)| m.clone()).collect();
    let run = || decide_batch(&mats);
    let reports = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut by_index: Vec<Option<Result<Value, Error>>> = vec![None; entries.len()];
    for ((i, _), r) in parsed.iter().zip(reports) {
        by_index[*i] = Some(r.map(|r| r.to_json()));
    }

    let mut rows = Vec::new();
    let mut table = Vec::new();
    let (mut passed, mut failed) = (0usize, 0usize);
    for (entry, result) in entries.iter().zip(by_index) {
        let result = match (&entry.matrix, result) {
            (Err(e), _) => Err(e.clone()),
            (Ok(_), Some(r)) => r,
            (Ok(_), None) => unreachable!("every parsed entry was decided"),
        };
        let (status, mismatches, report) = match result {
            Err(e) => ("error", vec![e.to_string()], Value::Null),
            Ok(report) => {
                let m = entry
                    .expected
                    .as_ref()
                    .map(|exp| wire::partial_mismatches(exp, &report))
                    .unwrap_or_default();
                (if m.is_empty() { "pass" } else { "fail" }, m, report)
            }
        };
        if status == "pass" {
            passed += 1;
        } else {
            failed += 1;
        }
        table.push(format!("{status:<5} {}", entry.name));
        for m in &mismatches {
            table.push(format!("      {m}"));
        }
        rows.push(json!({
            "name": entry.name,
            "status": status,
            "mismatches": mismatches,
            "report": report,
        }));
    }
    table.push(format!("{passed} passed, {failed} failed, {} total", entries.len()));
    Ok(Outcome {
        code: if failed == 0 { EXIT_OK } else { EXIT_MISMATCH },
        stdout: Some(json!({
            "summary": { "total": entries.len(), "passed": passed, "failed": failed },
            "entries": rows,
        })),
        stderr: table,
    })
}

/// Parses `std::env::args`, runs, prints, and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = execute(&cli);
    if let Some(v) = &outcome.stdout {
        println!("{}", wire::to_pretty(v));
    }
    for line in &outcome.stderr {
        eprintln!("{line}");
    }
    outcome.code
}
