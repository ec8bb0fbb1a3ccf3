//! The `zonoforge` command line.
//!
//! Every verb prints one JSON document on standard output. Exit status is 0
//! when a verdict was computed (including negative verdicts), 1 for usage and
//! input errors, and 2 when a library invariant fails.

pub mod sampling;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use zonoforge::cubillage::{self, Cubillage};
use zonoforge::extendability::{self, Certificate};
use zonoforge::membrane::{self, Membrane};
use zonoforge::setcalc::{self, Collection, SubsetMask};
use zonoforge::{zonogeom, AuditCaps, Error};

#[derive(Parser, Debug)]
#[command(name = "zonoforge", version, about = "Separated set-systems and cubillages of cyclic zonotopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Dims {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Args, Debug)]
struct SetsInput {
    /// Sets as comma-separated digit strings (`24,35,1346`) or a JSON array
    /// of element arrays.
    #[arg(long, conflicts_with = "file")]
    sets: Option<String>,
    /// Collection file: `{"n": .., "sets": [[..], ..]}`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alternation blocks and r-separation of a collection.
    Separation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: SetsInput,
    },
    /// Purity audit of maximal (d−1)-separated collections.
    Purity {
        #[command(flatten)]
        dims: Dims,
    },
    /// Front, rear and rim spectra of Z(n,d).
    Boundary {
        #[command(flatten)]
        dims: Dims,
        /// Also export vertices and edges projected to the plane.
        #[arg(long)]
        export_2d: bool,
    },
    /// The standard cubillage of Z(n,d).
    Standard {
        #[command(flatten)]
        dims: Dims,
    },
    /// The anti-standard cubillage of Z(n,d).
    Antistandard {
        #[command(flatten)]
        dims: Dims,
    },
    /// i-contraction of a cubillage.
    Contract {
        /// Cubillage file.
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        i: usize,
    },
    /// (n+1)-expansion of a cubillage along a membrane.
    Expand {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        membrane: PathBuf,
    },
    /// All cubillages of Z(n,d).
    Enumerate {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        count_only: bool,
    },
    /// All membranes of a cubillage.
    Membranes {
        #[arg(long)]
        file: PathBuf,
    },
    /// A membrane read as a cubillage one dimension down.
    Project {
        #[arg(long)]
        membrane: PathBuf,
    },
    /// A cubillage of Z(n,d) containing the given Z(n,d−1) cubillage as a membrane.
    Lift {
        #[arg(long)]
        file: PathBuf,
    },
    /// Inversion set of a membrane.
    Inversions {
        #[arg(long)]
        membrane: PathBuf,
        /// Host cubillage; enables the geometric inversion set.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Order of the packet of K in a cubillage one dimension below |K|.
    PacketOrder {
        #[arg(long)]
        file: PathBuf,
        /// The set K; all (d+1)-subsets when omitted.
        #[arg(long)]
        k: Option<String>,
    },
    /// Extendability search with a certificate.
    Extend {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        input: SetsInput,
    },
    /// Whether two membranes fit in one cubillage.
    Agreeable {
        #[arg(long)]
        membrane: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Reproduce the published results.
    VerifyPaper {
        /// Run only the named checks.
        #[arg(long)]
        only: Vec<String>,
        /// Emit the report as JSON instead of a table on stderr.
        #[arg(long)]
        json: bool,
    },
    /// Re-check a certificate without searching.
    Replay {
        #[arg(long)]
        file: PathBuf,
    },
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Library(Error),
    Suite(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

/// Parses `--sets`: a JSON array of arrays, or comma-separated set
/// literals in the compact digit form.
pub fn parse_sets(n: usize, text: &str) -> zonoforge::Result<Collection> {
    let trimmed = text.trim();
    if trimmed.starts_with("[[") || trimmed == "[]" {
        let lists: Vec<Vec<usize>> =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        return Collection::from_lists(n, &lists);
    }
    Collection::parse(n, trimmed)
}

fn read_sets(n: usize, input: &SetsInput) -> std::result::Result<Collection, Failure> {
    match (&input.sets, &input.file) {
        (Some(text), _) => Ok(parse_sets(n, text)?),
        (None, Some(path)) => {
            let c: Collection = read_json(path)?;
            if c.n() != n {
                return Err(Failure::Library(Error::GroundSetMismatch { left: n, right: c.n() }));
            }
            Ok(c)
        }
        (None, None) => Ok(Collection::empty(n)?),
    }
}

fn collection_value(c: &Collection) -> Value {
    to_value(c)
}

fn dispatch(command: Command, caps: &AuditCaps, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Separation { n, r, input } => {
            let c = read_sets(n, &input)?;
            let mut out = to_value(&setcalc::is_r_separated_collection(&c, r));
            if c.len() == 2 {
                let m = c.members();
                out["blocks"] = json!(setcalc::alternation_blocks(m[0], m[1])?);
            }
            Ok(out)
        }
        Command::Purity { dims } => {
            let p = setcalc::is_pure(dims.n, dims.d, caps)?;
            let universal = setcalc::universal_sets(dims.n, dims.d)?;
            let excluded: Vec<Vec<usize>> = SubsetMask::all(dims.n)?
                .filter(|x| !universal.contains(*x))
                .map(|x| x.to_vec())
                .collect();
            let sizes: Map<String, Value> = p
                .size_counts
                .iter()
                .map(|(s, c)| (s.to_string(), json!(c)))
                .collect();
            Ok(json!({
                "n": p.n,
                "d": p.d,
                "pure": p.pure,
                "max_size": p.max_size,
                "witness_size": p.witness.as_ref().map(Collection::len),
                "witness": p.witness.as_ref().map(collection_value),
                "collection_count": p.collection_count(),
                "size_counts": sizes,
                "universal_count": universal.len(),
                "excluded": excluded,
                "certificate": Certificate::from_purity(&p).map(|c| to_value(&c)),
            }))
        }
        Command::Boundary { dims, export_2d } => {
            let b = zonogeom::boundary_side_spectra(dims.n, dims.d)?;
            let mut out = json!({
                "n": dims.n,
                "d": dims.d,
                "front": collection_value(&b.front),
                "rear": collection_value(&b.rear),
                "rim": collection_value(&b.rim),
            });
            if export_2d {
                let e = zonogeom::export_2d(dims.n, dims.d)?;
                out["export_2d"] = json!({
                    "vertices": e.vertices.iter().map(|(x, p)| json!({"label": x.to_vec(), "xy": p})).collect::<Vec<_>>(),
                    "edges": e.edges.iter().map(|(a, b)| json!([a.to_vec(), b.to_vec()])).collect::<Vec<_>>(),
                });
            }
            Ok(out)
        }
        Command::Standard { dims } => cubillage_value(&cubillage::standard(dims.n, dims.d)?),
        Command::Antistandard { dims } => cubillage_value(&cubillage::antistandard(dims.n, dims.d)?),
        Command::Contract { file, i } => {
            let q: Cubillage = read_json(&file)?;
            let c = cubillage::contract(&q, i)?;
            Ok(json!({ "cubillage": to_value(&c.cubillage), "index_map": c.index_map }))
        }
        Command::Expand { file, membrane } => {
            let q: Cubillage = read_json(&file)?;
            let m: Membrane = read_json(&membrane)?;
            Ok(json!({ "cubillage": to_value(&cubillage::expand(&q, &m)?) }))
        }
        Command::Enumerate { dims, count_only } => {
            let mut count = 0u64;
            let mut all = Vec::new();
            for q in cubillage::enumerate(dims.n, dims.d, caps)? {
                let q = q?;
                count += 1;
                if !count_only {
                    all.push(to_value(&q));
                }
            }
            let mut out = json!({
                "n": dims.n,
                "d": dims.d,
                "count": count,
                "predicted": cubillage::predicted_count(dims.n, dims.d).map(|c| c.to_string()),
            });
            if !count_only {
                out["cubillages"] = Value::Array(all);
            }
            Ok(out)
        }
        Command::Membranes { file } => {
            let q: Cubillage = read_json(&file)?;
            let ms = membrane::membranes_of(&q)?;
            Ok(json!({ "count": ms.len(), "membranes": ms.iter().map(to_value).collect::<Vec<_>>() }))
        }
        Command::Project { membrane } => {
            let m: Membrane = read_json(&membrane)?;
            Ok(json!({ "cubillage": to_value(&m.project()?) }))
        }
        Command::Lift { file } => {
            let q: Cubillage = read_json(&file)?;
            let (host, m) = membrane::lift(&q, caps)?;
            Ok(json!({ "host": to_value(&host), "membrane": to_value(&m) }))
        }
        Command::Inversions { membrane, file } => {
            let m: Membrane = read_json(&membrane)?;
            let spectral = membrane::inversions_spectral(&m.spectrum(), m.d())?;
            let lists = |s: &membrane::InversionSet| {
                s.members.iter().map(|k| k.to_vec()).collect::<Vec<_>>()
            };
            let mut out = json!({ "n": m.n(), "d": m.d(), "spectral": lists(&spectral) });
            if let Some(path) = file {
                let q: Cubillage = read_json(&path)?;
                let geometric = membrane::inversions_geometric(&q, &m)?;
                out["geometric"] = json!(lists(&geometric));
                if geometric != spectral {
                    return Err(Failure::Library(Error::Invariant(
                        "geometric and spectral inversion sets differ".into(),
                    )));
                }
            }
            Ok(out)
        }
        Command::PacketOrder { file, k } => {
            let q: Cubillage = read_json(&file)?;
            let dag = cubillage::precedence(&q)?;
            let ks = match k {
                Some(text) => vec![SubsetMask::parse(q.n(), &text)?],
                None => SubsetMask::k_subsets(q.n(), q.d() + 1)?,
            };
            let mut orders = Vec::new();
            for k in ks {
                let order = membrane::packet_order_in(&q, &dag, k)?;
                orders.push(json!({ "k": k.to_vec(), "order": order }));
            }
            Ok(json!({ "packets": orders }))
        }
        Command::Extend { dims, input } => {
            let a = read_sets(dims.n, &input)?;
            let cert = extendability::is_extendable(&a, dims.n, dims.d, caps)?;
            Ok(json!({ "extendable": cert.extendable(), "certificate": to_value(&cert) }))
        }
        Command::Agreeable { membrane, other } => {
            let m: Membrane = read_json(&membrane)?;
            let o: Membrane = read_json(&other)?;
            let cert = membrane::agreeable(&m, &o, caps)?;
            Ok(json!({ "agreeable": cert.extendable(), "certificate": to_value(&cert) }))
        }
        Command::VerifyPaper { only, json } => {
            let report = verify::run_suite(&only, caps).map_err(Failure::Usage)?;
            if !json {
                let _ = write!(err, "{}", report.table());
            }
            let value = to_value(&report);
            if report.passed() {
                Ok(value)
            } else {
                Err(Failure::Suite(value))
            }
        }
        Command::Replay { file } => {
            let cert: Certificate = read_json(&file)?;
            Ok(to_value(&extendability::replay(&cert, caps)?))
        }
    }
}

fn cubillage_value(q: &Cubillage) -> Outcome {
    Ok(json!({ "cubillage": to_value(q), "spectrum": to_value(&q.spectrum()?) }))
}

/// The metadata every document starts with.
fn envelope(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(zonoforge::SCHEMA_VERSION));
    m.insert("version".into(), json!(zonoforge::VERSION));
    m.insert("parity_convention".into(), json!(membrane::parity_convention()));
    m.insert("command".into(), json!(command));
    m
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Separation { .. } => "separation",
        Command::Purity { .. } => "purity",
        Command::Boundary { .. } => "boundary",
        Command::Standard { .. } => "standard",
        Command::Antistandard { .. } => "antistandard",
        Command::Contract { .. } => "contract",
        Command::Expand { .. } => "expand",
        Command::Enumerate { .. } => "enumerate",
        Command::Membranes { .. } => "membranes",
        Command::Project { .. } => "project",
        Command::Lift { .. } => "lift",
        Command::Inversions { .. } => "inversions",
        Command::PacketOrder { .. } => "packet-order",
        Command::Extend { .. } => "extend",
        Command::Agreeable { .. } => "agreeable",
        Command::VerifyPaper { .. } => "verify-paper",
        Command::Replay { .. } => "replay",
    }
}

fn emit(out: &mut dyn Write, doc: Map<String, Value>) {
    let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
    let _ = writeln!(out, "{text}");
}

fn merge(mut doc: Map<String, Value>, payload: Value) -> Map<String, Value> {
    match payload {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    doc
}

/// Runs the command line `args` (including the program name), writing the
/// JSON document to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let caps = match AuditCaps::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let name = command_name(&cli.command);
    match dispatch(cli.command, &caps, err) {
        Ok(payload) => {
            emit(out, merge(envelope(name), payload));
            0
        }
        Err(Failure::Suite(report)) => {
            emit(out, merge(envelope(name), report));
            2
        }
        Err(failure) => {
            let (message, internal) = match &failure {
                Failure::Usage(m) => (m.clone(), false),
                Failure::Library(e) => (e.to_string(), e.is_internal()),
                Failure::Suite(_) => unreachable!(),
            };
            let _ = writeln!(err, "error: {message}");
            let mut doc = envelope(name);
            doc.insert("error".into(), json!(message));
            doc.insert("internal".into(), json!(internal));
            emit(out, doc);
            if internal {
                2
            } else {
                1
            }
        }
    }
}
