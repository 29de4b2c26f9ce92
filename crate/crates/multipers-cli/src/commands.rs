use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use multipers::complex::{build_persistence_module, homology_at, MultifilteredComplex};
use multipers::error::Error;
use multipers::family::{frame_family, verify_framed_family, verify_relation_family, FamilyReport};
use multipers::field::Field;
use multipers::grading::Degree;
use multipers::invariants::{barcode, rank_invariant};
use multipers::io::{
    self, multiset_to_doc, parse_multiset_text, AnyFamily, FamilyDoc, MultisetEntry,
    PresentationDoc,
};
use multipers::moduli::orbit_count;
use multipers::presentation::{minimal_presentation, resolve, tensor_condition};
use multipers::Result;

#[derive(Parser)]
#[command(
    name = "multipers",
    about = "Exact multiparameter persistence: presentations, invariants, and orbit counts",
    version
)]
pub struct Cli {
    /// Coefficient field: `Fp:<prime>` or `Q`.
    #[arg(long, global = true, default_value = "Fp:2")]
    field: String,

    /// Parallelism hint for grid-parallel stages (accepted for
    /// compatibility; computations run sequentially at supported sizes).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the result to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti number of a filtration at one grid degree.
    Homology {
        /// Filtration file.
        file: PathBuf,
        /// Grid degree, e.g. `(1 2)` or `1 2`.
        #[arg(long)]
        at: String,
        /// Homological degree.
        #[arg(short = 'l', long = "hdeg", default_value_t = 0)]
        l: usize,
    },
    /// The homology persistence module on its stabilization box.
    Module {
        file: PathBuf,
        #[arg(short = 'l', long = "hdeg", default_value_t = 0)]
        l: usize,
    },
    /// Minimal presentation (xi0, xi1, relations) of the homology module.
    Present {
        file: PathBuf,
        #[arg(short = 'l', long = "hdeg", default_value_t = 0)]
        l: usize,
    },
    /// Types of an iterated minimal free resolution.
    Resolve {
        file: PathBuf,
        #[arg(short = 'l', long = "hdeg", default_value_t = 0)]
        l: usize,
        /// Maximum number of hull-taking steps.
        #[arg(long, default_value_t = 3)]
        max_steps: usize,
    },
    /// Barcode of a one-parameter filtration.
    Barcode {
        file: PathBuf,
        #[arg(short = 'l', long = "hdeg", default_value_t = 0)]
        l: usize,
    },
    /// Rank invariant table on the stabilization box.
    Rank {
        file: PathBuf,
        #[arg(short = 'l', long = "hdeg", default_value_t = 0)]
        l: usize,
    },
    /// Check the tensor-condition of a presentation document's relations.
    TensorCheck {
        /// Presentation JSON file.
        file: PathBuf,
    },
    /// Verify the defining conditions of a relation or framed family.
    VerifyFamily {
        /// Family JSON file.
        file: PathBuf,
    },
    /// Frame a relation family into Grassmannian coordinates.
    Frame {
        /// Relation-family JSON file.
        file: PathBuf,
    },
    /// Count GL-orbits of framed families over a prime field.
    Orbits {
        /// Field size (prime).
        #[arg(long)]
        q: u32,
        /// Generator multiset, e.g. `{(0 0):2}`.
        #[arg(long)]
        xi0: String,
        /// Relation multiset, e.g. `{(3 0):1,(2 1):1,(1 2):1,(0 3):1}`.
        #[arg(long)]
        xi1: String,
    },
}

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::GuardExceeded(_) => 3,
        Error::InvalidFamily(_) => 1,
        _ => 2,
    }
}

fn parse_degree(text: &str) -> Result<Degree> {
    let inner = text.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(inner);
    let coords: Vec<u32> = inner
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Invalid(format!("bad coordinate `{t}` in degree `{text}`")))
        })
        .collect::<Result<_>>()?;
    if coords.is_empty() {
        return Err(Error::Invalid(format!("empty degree `{text}`")));
    }
    Ok(Degree::new(coords))
}

fn load_complex(path: &PathBuf) -> Result<MultifilteredComplex> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    MultifilteredComplex::parse(&text)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

struct Output {
    target: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: String) -> Result<()> {
        match &self.target {
            Some(path) => fs::write(path, text + "\n")
                .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display()))),
            None => {
                println!("{text}");
                Ok(())
            }
        }
    }

    fn json<T: serde::Serialize>(&self, value: &T) -> Result<()> {
        self.emit(serde_json::to_string(value)?)
    }
}

fn multiset_line(entries: &[MultisetEntry]) -> String {
    if entries.is_empty() {
        return "{}".into();
    }
    let items: Vec<String> = entries
        .iter()
        .map(|e| {
            let coords: Vec<String> = e.degree.iter().map(u32::to_string).collect();
            format!("({}):{}", coords.join(" "), e.multiplicity)
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn report_doc(kind: &str, report: &FamilyReport) -> serde_json::Value {
    serde_json::json!({
        "kind": kind,
        "ok": report.ok(),
        "failures": report
            .failures
            .iter()
            .map(|f| {
                serde_json::json!({
                    "condition": f.condition,
                    "degree": f.degree.coords(),
                    "detail": f.detail,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    let field = Field::parse(&cli.field)?;
    let out = Output {
        target: cli.output.clone(),
    };
    let pretty = cli.pretty;
    let _ = cli.threads;

    match cli.command {
        Command::Homology { file, at, l } => {
            let complex = load_complex(&file)?;
            let u = parse_degree(&at)?;
            let h = homology_at(&complex, &u, l, field)?;
            if pretty {
                out.emit(format!("dim H_{l} at {u} = {}", h.dim))?;
            } else {
                out.json(&serde_json::json!({
                    "degree": u.coords(),
                    "l": l,
                    "dim": h.dim,
                }))?;
            }
        }
        Command::Module { file, l } => {
            let complex = load_complex(&file)?;
            let m = build_persistence_module(&complex, l, field)?;
            let doc = io::module_to_doc(&m);
            if pretty {
                let mut lines = vec![format!(
                    "H_{l} module over {}, box {:?}",
                    doc.field, doc.bound
                )];
                for d in &doc.dims {
                    lines.push(format!("  dim at {:?} = {}", d.degree, d.dim));
                }
                out.emit(lines.join("\n"))?;
            } else {
                out.json(&doc)?;
            }
        }
        Command::Present { file, l } => {
            let complex = load_complex(&file)?;
            let m = build_persistence_module(&complex, l, field)?;
            let pres = minimal_presentation(&m)?;
            let doc = io::presentation_to_doc(&pres);
            if pretty {
                out.emit(format!(
                    "xi0 = {}\nxi1 = {}\n{} relations over {}",
                    multiset_line(&doc.xi0),
                    multiset_line(&doc.xi1),
                    doc.relations.len(),
                    doc.field
                ))?;
            } else {
                out.json(&doc)?;
            }
        }
        Command::Resolve { file, l, max_steps } => {
            if max_steps == 0 {
                return Err(Error::Invalid("max-steps must be >= 1".into()));
            }
            let complex = load_complex(&file)?;
            let m = build_persistence_module(&complex, l, field)?;
            let types = resolve(&m, max_steps)?;
            let docs: Vec<Vec<MultisetEntry>> = types.iter().map(multiset_to_doc).collect();
            if pretty {
                let lines: Vec<String> = docs
                    .iter()
                    .enumerate()
                    .map(|(i, t)| format!("xi{i} = {}", multiset_line(t)))
                    .collect();
                out.emit(lines.join("\n"))?;
            } else {
                out.json(&docs)?;
            }
        }
        Command::Barcode { file, l } => {
            let complex = load_complex(&file)?;
            let m = build_persistence_module(&complex, l, field)?;
            let bars = barcode(&m)?;
            let doc = io::barcode_to_doc(&bars);
            if pretty {
                let lines: Vec<String> = doc
                    .bars
                    .iter()
                    .map(|b| match b.death {
                        Some(d) => format!("[{}, {d})", b.birth),
                        None => format!("[{}, inf)", b.birth),
                    })
                    .collect();
                out.emit(if lines.is_empty() {
                    "(empty barcode)".into()
                } else {
                    lines.join("\n")
                })?;
            } else {
                out.json(&doc)?;
            }
        }
        Command::Rank { file, l } => {
            let complex = load_complex(&file)?;
            let m = build_persistence_module(&complex, l, field)?;
            let table = io::rank_to_doc(&rank_invariant(&m));
            if pretty {
                let lines: Vec<String> = table
                    .iter()
                    .map(|e| {
                        format!(
                            "rank {:?} -> {:?}: {} (dim {})",
                            e.u, e.v, e.rank, e.dim
                        )
                    })
                    .collect();
                out.emit(lines.join("\n"))?;
            } else {
                out.json(&table)?;
            }
        }
        Command::TensorCheck { file } => {
            let doc: PresentationDoc = read_json(&file)?;
            let field = Field::parse(&doc.field)?;
            let xi0 = io::multiset_from_doc(&doc.xi0)?;
            let generators = doc
                .relations
                .iter()
                .map(|r| {
                    let vector = r
                        .vector
                        .iter()
                        .map(|s| io::scalar_from_repr(field, s))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((Degree::new(r.degree.clone()), vector))
                })
                .collect::<Result<Vec<_>>>()?;
            let holds = tensor_condition(&generators, &xi0)?;
            if pretty {
                out.emit(format!(
                    "tensor-condition {}",
                    if holds { "holds" } else { "fails" }
                ))?;
            } else {
                out.json(&serde_json::json!({ "tensor_condition": holds }))?;
            }
            if !holds {
                return Ok(ExitCode::from(1));
            }
        }
        Command::VerifyFamily { file } => {
            let doc: FamilyDoc = read_json(&file)?;
            let (kind, report) = match io::family_from_doc(&doc)? {
                AnyFamily::Relation(f) => ("relation", verify_relation_family(&f)),
                AnyFamily::Framed(f) => ("framed", verify_framed_family(&f)),
            };
            if pretty {
                let mut lines = vec![format!(
                    "{kind} family: {}",
                    if report.ok() { "valid" } else { "INVALID" }
                )];
                for f in &report.failures {
                    lines.push(format!(
                        "  condition {} fails at {}: {}",
                        f.condition, f.degree, f.detail
                    ));
                }
                out.emit(lines.join("\n"))?;
            } else {
                out.json(&report_doc(kind, &report))?;
            }
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Frame { file } => {
            let doc: FamilyDoc = read_json(&file)?;
            let fam = match io::family_from_doc(&doc)? {
                AnyFamily::Relation(f) => f,
                AnyFamily::Framed(_) => {
                    return Err(Error::Invalid(
                        "frame expects a relation family (kind `relation`)".into(),
                    ))
                }
            };
            let framed = frame_family(&fam)?;
            out.json(&io::framed_family_to_doc(&framed))?;
        }
        Command::Orbits { q, xi0, xi1 } => {
            let xi0 = parse_multiset_text(&xi0)?;
            let xi1 = parse_multiset_text(&xi1)?;
            let report = orbit_count(q, &xi0, &xi1)?;
            let doc = io::orbit_report_to_doc(q, &report);
            if pretty {
                let mut lines = vec![
                    format!("q = {q}: {} families, {} orbits", doc.total, doc.orbits),
                ];
                if let Some(d) = doc.distinct_line_orbits {
                    lines.push(format!("orbits of pairwise distinct lines: {d}"));
                }
                for (size, count) in &doc.sizes {
                    lines.push(format!("  {count} orbit(s) of size {size}"));
                }
                out.emit(lines.join("\n"))?;
            } else {
                out.json(&doc)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
