//! The `hda-lab` command line.
//!
//! Exit codes: 0 success or no obstruction, 1 I/O or parse error,
//! 2 validation failure, 3 obstruction found.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hdalab_core::analysis::{implements, independence, ClassSelector, Verdict};
use hdalab_core::chain::Chain;
use hdalab_core::dimap::{check_chain_map, check_homology_naturality, check_naturality, pushforward_chain, validate_dimap};
use hdalab_core::hda::{labeled_homology, validate_hda, Hda};
use hdalab_core::homology::homology;
use hdalab_core::models::{self, program_to_hda, Surface};
use hdalab_core::tensor::tensor_hda;
use hdalab_core::{Alphabet, CoefficientRing, Word};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::format::{cube_ids, find_any_cube, load_dimap, load_hda, read_json, to_canonical_json, FormatError, HdaFile, ProgramFile};
use crate::report;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "hda-lab", about = "Labeled homology of higher-dimensional automata")]
pub struct Cli {
    /// Coefficient ring: `z` or `zp:<p>`.
    #[arg(long, global = true, default_value = "z")]
    pub ring: String,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Peterson,
    Philosophers,
    PhilosopherPart,
    LockCounter,
    LockSpec,
    Circle,
    Torus,
    TorusCells,
    Klein,
    BoundarySquare,
    Program,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Hda,
    Program,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the precubical identities and the labeling laws.
    Validate {
        file: PathBuf,
    },
    /// Betti numbers, torsion and generator cycles.
    Homology {
        file: PathBuf,
    },
    /// Homology with the labels of its generators and the label images.
    Labels {
        file: PathBuf,
    },
    /// Write the tensor product of two automata.
    Tensor {
        a: PathBuf,
        b: PathBuf,
    },
    /// Write a built-in or compiled model.
    Model {
        name: ModelName,
        /// Number of philosophers, default 4.
        #[arg(long)]
        n: Option<usize>,
        /// Philosopher index for `philosopher-part`.
        #[arg(long)]
        i: Option<usize>,
        /// Program file for `program`.
        #[arg(long)]
        program: Option<PathBuf>,
        /// Edge labels; letters within a label are separated by `;`.
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
        #[arg(long, value_enum, default_value = "hda")]
        emit: Emit,
    },
    /// Validate a dimap and check that it is a chain map preserving labels.
    DimapCheck {
        file: PathBuf,
    },
    /// Push a chain of the source forward; `--chain "id:coeff; id:coeff"`, coefficients default to 1.
    Pushforward {
        file: PathBuf,
        #[arg(long)]
        chain: String,
    },
    /// Test whether parts can be independent in a system.
    Independence {
        main: PathBuf,
        #[arg(long = "part", required = true)]
        parts: Vec<PathBuf>,
        /// `degree:index` per part, default `1:0`.
        #[arg(long = "class")]
        classes: Vec<String>,
    },
    /// Test whether an implementation can realize a specification.
    Implements {
        imp: PathBuf,
        spec: PathBuf,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OBSTRUCTION: i32 = 3;

struct Output {
    body: String,
    code: i32,
}

fn fail(msg: impl Into<String>) -> Output {
    Output { body: msg.into(), code: EXIT_ERROR }
}

fn format_error(e: FormatError, fmt: OutputFormat) -> Output {
    match e {
        FormatError::Invalid(r) => {
            Output { body: render(fmt, report::validation_json(&r), report::validation_text(&r)), code: EXIT_INVALID }
        }
        e => fail(e.to_string()),
    }
}

fn render(fmt: OutputFormat, json: Value, text: String) -> String {
    match fmt {
        OutputFormat::Json => to_canonical_json(&json),
        OutputFormat::Text => text,
    }
}

/// Runs one command, writing the result to `stdout` (or `--out`) and
/// diagnostics to `stderr`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let out = execute(&cli);
    if out.code == EXIT_ERROR {
        let _ = writeln!(stderr, "error: {}", out.body);
        return out.code;
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &out.body) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return EXIT_ERROR;
            }
        }
        None => {
            let _ = stdout.write_all(out.body.as_bytes());
        }
    }
    out.code
}

fn execute(cli: &Cli) -> Output {
    let ring: CoefficientRing = match cli.ring.parse() {
        Ok(r) => r,
        Err(e) => return fail(format!("--ring: {e}")),
    };
    let fmt = cli.format;
    macro_rules! load {
        ($p:expr) => {
            match load_hda($p) {
                Ok(a) => a,
                Err(e) => return format_error(e, fmt),
            }
        };
    }
    match &cli.command {
        Command::Validate { file } => {
            let file: HdaFile = match read_json(file) {
                Ok(f) => f,
                Err(e) => return format_error(e, fmt),
            };
            let r = match file.to_hda_unchecked() {
                Ok(a) => validate_hda(&a),
                Err(e) => return format_error(e, fmt),
            };
            let code = if r.is_ok() { EXIT_OK } else { EXIT_INVALID };
            Output { body: render(fmt, report::validation_json(&r), report::validation_text(&r)), code }
        }
        Command::Homology { file } => {
            let a = load!(file);
            let groups = homology(a.precubical(), ring);
            Output { body: render(fmt, report::homology_json(&a, &groups), report::homology_text(&a, &groups)), code: EXIT_OK }
        }
        Command::Labels { file } => {
            let a = load!(file);
            let r = labeled_homology(&a, ring);
            Output { body: render(fmt, report::labels_json(&a, &r), report::labels_text(&a, &r)), code: EXIT_OK }
        }
        Command::Tensor { a, b } => {
            let (a, b) = (load!(a), load!(b));
            match tensor_hda(&a, &b) {
                Ok(t) => hda_output(&t.hda),
                Err(e) => fail(e.to_string()),
            }
        }
        Command::Model { name, n, i, program, labels, emit } => model(*name, *n, *i, program.as_deref(), labels, *emit),
        Command::DimapCheck { file } => {
            let f = match load_dimap(file) {
                Ok(f) => f,
                Err(e) => return format_error(e, fmt),
            };
            let v = validate_dimap(&f);
            if !v.is_ok() {
                return Output { body: render(fmt, report::validation_json(&v), report::validation_text(&v)), code: EXIT_INVALID };
            }
            let checks = [
                ("chain map", check_chain_map(&f, ring)),
                ("naturality", check_naturality(&f, ring)),
                ("homology naturality", check_homology_naturality(&f, ring)),
            ];
            let ok = checks.iter().all(|(_, r)| r.passed());
            let json = json!({
                "valid": true,
                "checks": checks.iter().map(|(n, r)| (n.to_string(), report::property_json(r))).collect::<serde_json::Map<_, _>>(),
            });
            let mut text = String::from("ok\n");
            for (n, r) in &checks {
                text.push_str(&report::property_text(n, r));
            }
            Output { body: render(fmt, json, text), code: if ok { EXIT_OK } else { EXIT_OBSTRUCTION } }
        }
        Command::Pushforward { file, chain } => {
            let f = match load_dimap(file) {
                Ok(f) => f,
                Err(e) => return format_error(e, fmt),
            };
            let v = validate_dimap(&f);
            if !v.is_ok() {
                return Output { body: render(fmt, report::validation_json(&v), report::validation_text(&v)), code: EXIT_INVALID };
            }
            let c = match parse_chain(f.source(), chain, ring) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            match pushforward_chain(&f, &c) {
                Ok(img) => {
                    let ids = cube_ids(f.target());
                    let json = json!({ "degree": img.degree(), "chain": report::chain_json(&ids, &img) });
                    Output { body: render(fmt, json, format!("{}\n", report::render_chain(&ids, &img))), code: EXIT_OK }
                }
                Err(e) => fail(e.to_string()),
            }
        }
        Command::Independence { main, parts, classes } => {
            let a = load!(main);
            if !classes.is_empty() && classes.len() != parts.len() {
                return fail("give one --class per --part, or none");
            }
            let mut selected = Vec::new();
            for (j, p) in parts.iter().enumerate() {
                let part = load!(p);
                let sel = match classes.get(j).map(|s| parse_selector(s)).unwrap_or(Ok(ClassSelector { degree: 1, index: 0 })) {
                    Ok(s) => s,
                    Err(e) => return fail(e),
                };
                selected.push((part, sel));
            }
            match independence(&a, &selected, ring) {
                Ok(r) => Output {
                    body: render(fmt, report::independence_json(&r), report::independence_text(&r)),
                    code: verdict_code(r.verdict()),
                },
                Err(e) => fail(e.to_string()),
            }
        }
        Command::Implements { imp, spec } => {
            let (imp, spec) = (load!(imp), load!(spec));
            match implements(&imp, &spec, ring) {
                Ok(r) => {
                    Output { body: render(fmt, report::implements_json(&r), report::implements_text(&r)), code: verdict_code(r.verdict()) }
                }
                Err(e) => fail(e.to_string()),
            }
        }
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::ObstructionFound => EXIT_OBSTRUCTION,
        Verdict::NoObstruction => EXIT_OK,
    }
}

fn hda_output(a: &Hda) -> Output {
    Output { body: to_canonical_json(&HdaFile::from_hda(a)), code: EXIT_OK }
}

fn parse_selector(s: &str) -> Result<ClassSelector, String> {
    let (d, i) = s.split_once(':').ok_or_else(|| format!("--class {s:?}: expected degree:index"))?;
    let bad = |_| format!("--class {s:?}: expected degree:index");
    Ok(ClassSelector { degree: d.trim().parse().map_err(bad)?, index: i.trim().parse().map_err(bad)? })
}

fn parse_chain(a: &Hda, spec: &str, ring: CoefficientRing) -> Result<Chain, String> {
    let ids = cube_ids(a);
    let mut terms = Vec::new();
    for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (id, coeff) = match item.rsplit_once(':') {
            Some((id, k)) if k.trim().parse::<BigInt>().is_ok() => (id.trim(), k.trim().parse::<BigInt>().expect("checked")),
            _ => (item, BigInt::from(1)),
        };
        let x = find_any_cube(&ids, id).ok_or_else(|| format!("--chain: unknown cube {id:?}"))?;
        terms.push((x, coeff));
    }
    let degree = terms.first().map(|(x, _)| x.dim).ok_or("--chain: empty chain")?;
    Chain::from_terms(degree, ring, terms).map_err(|e| format!("--chain: {e}"))
}

/// Letters in order of first appearance; each label is `;`-separated.
fn words(labels: &[String]) -> Result<(Arc<Alphabet>, Vec<Word>), String> {
    let mut letters: Vec<String> = Vec::new();
    for l in labels {
        for x in l.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if !letters.iter().any(|y| y == x) {
                letters.push(x.to_string());
            }
        }
    }
    let al = Arc::new(Alphabet::new(letters).map_err(|e| e.to_string())?);
    let ws = labels.iter().map(|l| al.word(l.split(';').map(str::trim).filter(|s| !s.is_empty())).expect("collected")).collect();
    Ok((al, ws))
}

fn model(name: ModelName, n: Option<usize>, i: Option<usize>, program: Option<&Path>, labels: &[String], emit: Emit) -> Output {
    let n = n.unwrap_or(4);
    let prog = match name {
        ModelName::Peterson => Some(models::peterson()),
        ModelName::LockCounter => Some(models::lock_counter()),
        ModelName::Philosophers => match models::dining_philosophers(n) {
            Ok(p) => Some(p),
            Err(e) => return fail(e.to_string()),
        },
        ModelName::Program => {
            let Some(path) = program else { return fail("model program needs --program <file>") };
            match read_json::<ProgramFile>(path).and_then(|f| f.to_program()) {
                Ok(p) => Some(p),
                Err(e) => return fail(e.to_string()),
            }
        }
        _ => None,
    };
    if let Some(p) = prog {
        return match emit {
            Emit::Program => Output { body: to_canonical_json(&ProgramFile::from_program(&p)), code: EXIT_OK },
            Emit::Hda => match program_to_hda(&p) {
                Ok(a) => hda_output(&a),
                Err(e) => fail(e.to_string()),
            },
        };
    }
    if emit == Emit::Program {
        return fail("only program models can be emitted as programs");
    }
    let need = |k: usize, defaults: &[&str]| -> Result<(Arc<Alphabet>, Vec<Word>), String> {
        let given: Vec<String> = if labels.is_empty() { defaults.iter().map(|s| s.to_string()).collect() } else { labels.to_vec() };
        if given.len() != k {
            return Err(format!("expected {k} labels, got {}", given.len()));
        }
        words(&given)
    };
    let built: Result<Hda, String> = (|| match name {
        ModelName::LockSpec => Ok(models::lock_spec()),
        ModelName::PhilosopherPart => models::philosopher_part(n, i.unwrap_or(0)).map_err(|e| e.to_string()),
        ModelName::Circle => {
            let given: Vec<String> = if labels.is_empty() { vec!["a".into()] } else { labels.to_vec() };
            let (al, ws) = words(&given)?;
            models::directed_circle(&al, ws).map_err(|e| e.to_string())
        }
        ModelName::Torus => {
            let (al, ws) = need(2, &["a", "b"])?;
            models::directed_torus(&al, vec![ws[0].clone()], vec![ws[1].clone()]).map(|t| t.hda).map_err(|e| e.to_string())
        }
        ModelName::TorusCells | ModelName::Klein => {
            let (kind, defaults): (Surface, &[&str]) =
                if name == ModelName::Klein { (Surface::Klein, &["a", "a", "b"]) } else { (Surface::Torus, &["a1", "a2", "b"]) };
            let (al, ws) = need(3, defaults)?;
            models::torus_or_klein(&al, kind, ws[0].clone(), ws[1].clone(), ws[2].clone()).map_err(|e| e.to_string())
        }
        ModelName::BoundarySquare => {
            let (al, ws) = need(2, &["a", "b"])?;
            models::boundary_square(&al, ws[0].clone(), ws[1].clone()).map_err(|e| e.to_string())
        }
        _ => unreachable!("program models handled above"),
    })();
    match built {
        Ok(a) => hda_output(&a),
        Err(e) => fail(e),
    }
}
