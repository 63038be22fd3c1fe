//! Command-line front end: positive-root listings, orbit enumeration,
//! orbit-closure class computation, and the golden-fixture check suite,
//! all speaking JSON documents.

mod docs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quiverpoly::{
    compute, enumerate_orbits, find_directed_partition, orbit_codim, positive_roots,
    positivity_report, validate_orbit, ComputeOptions, DirectedPartition, Error, GfForm,
    OrbitLabel, PartitionStrategy, PositiveRoot, Quiver, DEFAULT_TERM_CAP,
};

use docs::{
    parse_partition_file, parse_quiver_spec, partition_doc, OrbitsDocument, OrbitEntry,
    ResultDocument, RootsDocument,
};

#[derive(Parser)]
#[command(name = "qr", about = "Orbit-closure classes of Dynkin-quiver representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots of the quiver's root system.
    Roots {
        /// Path to a quiver description (JSON).
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Enumerate the orbit labels for a dimension vector.
    Orbits {
        #[arg(long)]
        quiver: PathBuf,
        /// Comma-separated dimension vector, e.g. 2,3,2.
        #[arg(long)]
        dim: String,
    },
    /// Compute the class of one orbit closure.
    Compute(ComputeArgs),
    /// Run a named check suite of golden fixtures.
    Check {
        /// Suite name; only "golden" is defined.
        #[arg(long)]
        suite: String,
    },
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    quiver: PathBuf,
    /// Comma-separated dimension vector, e.g. 2,3,2.
    #[arg(long)]
    dim: String,
    /// Orbit selected by its index in `qr orbits` order.
    #[arg(long, conflicts_with = "orbit_mults")]
    orbit_index: Option<usize>,
    /// Orbit selected by sparse multiplicities "rootIndex:mult,..." in
    /// `qr roots` order, e.g. "2:1,5:1".
    #[arg(long)]
    orbit_mults: Option<String>,
    #[arg(long, value_enum, default_value_t = FormArg::Vertex)]
    form: FormArg,
    /// "auto", "auto-high", or a path to a partition file (JSON blocks of
    /// root coordinate vectors).
    #[arg(long, default_value = "auto")]
    partition: String,
    #[arg(long, value_enum, default_value_t = BasisArg::Chern)]
    basis: BasisArg,
    /// Recompute through all three forms and a second partition and fail
    /// on any disagreement.
    #[arg(long)]
    verify: bool,
    /// Include wall-clock timing in the output (breaks byte determinism).
    #[arg(long)]
    timing: bool,
    /// Disable dropping of inert factors before expansion.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    C,
    Delta,
    Vertex,
}

impl FormArg {
    fn to_form(self) -> GfForm {
        match self {
            FormArg::C => GfForm::CForm,
            FormArg::Delta => GfForm::DeltaForm,
            FormArg::Vertex => GfForm::VertexForm,
        }
    }

    fn name(self) -> &'static str {
        match self {
            FormArg::C => "c",
            FormArg::Delta => "delta",
            FormArg::Vertex => "vertex",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Chern,
    Schur,
    Both,
}

/// Exit codes: 0 success, 2 input error, 3 verification mismatch,
/// 4 resource cap.
const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_INPUT, message: message.into() }
    }

    fn mismatch(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_MISMATCH, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::TermCapExceeded { .. } | Error::SearchSpaceTooLarge { .. } => {
                EXIT_RESOURCE
            }
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Roots { quiver } => cmd_roots(&quiver),
        Command::Orbits { quiver, dim } => cmd_orbits(&quiver, &dim),
        Command::Compute(args) => cmd_compute(&args),
        Command::Check { suite } => cmd_check(&suite),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_quiver(path: &PathBuf) -> Result<(Quiver, docs::QuiverSpec), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_quiver_spec(&text).map_err(Failure::input)
}

fn parse_dim(dim: &str, n: u32) -> Result<Vec<u32>, Failure> {
    let e: Vec<u32> = dim
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|err| Failure::input(format!("bad dimension vector {dim:?}: {err}")))?;
    if e.len() != n as usize {
        return Err(Failure::input(format!(
            "dimension vector has {} entries, quiver has {n} vertices",
            e.len()
        )));
    }
    Ok(e)
}

fn cmd_roots(path: &PathBuf) -> Result<ExitCode, Failure> {
    let (q, _) = load_quiver(path)?;
    let dynkin_type = q.detect_dynkin_type()?.to_string();
    let roots = positive_roots(&q)?;
    let doc = RootsDocument {
        dynkin_type,
        count: roots.len(),
        roots: roots.iter().map(|r| r.coords().to_vec()).collect(),
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn auto_partition(
    q: &Quiver,
    roots: &[PositiveRoot],
    m: &OrbitLabel,
    strategy: PartitionStrategy,
) -> Result<DirectedPartition, Failure> {
    let support: Vec<PositiveRoot> = m.support(roots).into_iter().cloned().collect();
    Ok(find_directed_partition(q, &support, strategy)?)
}

fn cmd_orbits(path: &PathBuf, dim: &str) -> Result<ExitCode, Failure> {
    let (q, _) = load_quiver(path)?;
    let e = parse_dim(dim, q.n_vertices())?;
    let roots = positive_roots(&q)?;
    let orbits = enumerate_orbits(&q, &e)?;
    let mut entries = Vec::with_capacity(orbits.len());
    for (index, m) in orbits.iter().enumerate() {
        let partition = auto_partition(&q, &roots, m, PartitionStrategy::PreferLow)?;
        entries.push(OrbitEntry {
            index,
            mults: m.mults.clone(),
            sparse: m.sparse().collect(),
            codim: orbit_codim(&q, m, &partition)?,
        });
    }
    let doc = OrbitsDocument { dimension: e, count: entries.len(), orbits: entries };
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn parse_sparse_orbit(
    spec: &str,
    roots: &[PositiveRoot],
) -> Result<OrbitLabel, Failure> {
    let mut mults = vec![0u32; roots.len()];
    for piece in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (idx, mult) = piece
            .split_once(':')
            .ok_or_else(|| Failure::input(format!("bad orbit entry {piece:?}, want index:mult")))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|e| Failure::input(format!("bad root index {idx:?}: {e}")))?;
        let mult: u32 = mult
            .trim()
            .parse()
            .map_err(|e| Failure::input(format!("bad multiplicity {mult:?}: {e}")))?;
        if idx >= roots.len() {
            return Err(Failure::input(format!(
                "root index {idx} out of range, {} roots exist",
                roots.len()
            )));
        }
        mults[idx] += mult;
    }
    Ok(OrbitLabel { mults })
}

fn resolve_orbit(
    args: &ComputeArgs,
    q: &Quiver,
    e: &[u32],
    roots: &[PositiveRoot],
) -> Result<OrbitLabel, Failure> {
    let m = match (&args.orbit_index, &args.orbit_mults) {
        (Some(index), None) => {
            let orbits = enumerate_orbits(q, e)?;
            orbits
                .get(*index)
                .cloned()
                .ok_or_else(|| {
                    Failure::input(format!(
                        "orbit index {index} out of range, {} orbits exist",
                        orbits.len()
                    ))
                })?
        }
        (None, Some(spec)) => parse_sparse_orbit(spec, roots)?,
        _ => {
            return Err(Failure::input(
                "select an orbit with exactly one of --orbit-index or --orbit-mults",
            ))
        }
    };
    let violations = validate_orbit(roots, e, &m);
    if !violations.is_empty() {
        return Err(Failure::input(format!(
            "orbit does not match the dimension vector: {violations:?}"
        )));
    }
    Ok(m)
}

fn resolve_partition(
    spec: &str,
    q: &Quiver,
    roots: &[PositiveRoot],
    m: &OrbitLabel,
) -> Result<DirectedPartition, Failure> {
    match spec {
        "auto" => auto_partition(q, roots, m, PartitionStrategy::PreferLow),
        "auto-high" => auto_partition(q, roots, m, PartitionStrategy::PreferHigh),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::input(format!("cannot read partition file {path}: {e}"))
            })?;
            let p = parse_partition_file(&text, q).map_err(Failure::input)?;
            let violations = quiverpoly::verify_directed(q, &p);
            if !violations.is_empty() {
                return Err(Failure::input(format!(
                    "partition is not directed: {violations:?}"
                )));
            }
            if !p.covers(&m.support(roots)) {
                return Err(Failure::input(
                    "partition does not cover the orbit support",
                ));
            }
            Ok(p)
        }
    }
}

fn term_cap() -> Result<usize, Failure> {
    match std::env::var("QR_MAX_TERMS") {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|e| Failure::input(format!("bad QR_MAX_TERMS {v:?}: {e}"))),
        Err(_) => Ok(DEFAULT_TERM_CAP),
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<ExitCode, Failure> {
    let started = std::time::Instant::now();
    let (q, spec) = load_quiver(&args.quiver)?;
    let e = parse_dim(&args.dim, q.n_vertices())?;
    let roots = positive_roots(&q)?;
    let m = resolve_orbit(args, &q, &e, &roots)?;
    let partition = resolve_partition(&args.partition, &q, &roots, &m)?;
    let opts = ComputeOptions { prune: !args.no_prune, max_terms: term_cap()? };

    let wants_schur = matches!(args.basis, BasisArg::Schur | BasisArg::Both);
    let form = if wants_schur && args.form != FormArg::Vertex {
        return Err(Failure::input(
            "the Schur basis is only available with --form vertex",
        ));
    } else {
        args.form.to_form()
    };
    let result = compute(&q, &e, &m, &partition, form, &opts)?;

    let verified = if args.verify {
        let mut others = Vec::new();
        for other_form in [GfForm::CForm, GfForm::DeltaForm, GfForm::VertexForm] {
            if other_form != form {
                others.push((
                    format!("{other_form:?}"),
                    compute(&q, &e, &m, &partition, other_form, &opts)?.chern,
                ));
            }
        }
        let second = auto_partition(&q, &roots, &m, PartitionStrategy::PreferHigh)?;
        if second != partition {
            others.push((
                "second partition".to_string(),
                compute(&q, &e, &m, &second, form, &opts)?.chern,
            ));
        }
        for (stage, chern) in others {
            if chern != result.chern {
                return Err(Failure::mismatch(format!(
                    "verification failed: {stage} disagrees with the primary computation"
                )));
            }
        }
        Some(true)
    } else {
        None
    };

    let positivity = result
        .schur
        .as_ref()
        .map(|_| positivity_report(&result).expect("schur form present"))
        .map(|r| docs::positivity_doc(&r));

    let doc = ResultDocument {
        quiver: spec,
        dimension: e,
        orbit: m.mults.clone(),
        orbit_sparse: m.sparse().collect(),
        form: args.form.name().to_string(),
        partition: partition_doc(&partition),
        degree: result.degree,
        chern: if matches!(args.basis, BasisArg::Chern | BasisArg::Both) {
            Some(docs::chern_doc(&result.chern))
        } else {
            None
        },
        schur: if wants_schur {
            result.schur.as_ref().map(docs::schur_doc)
        } else {
            None
        },
        positivity,
        verified,
        timing_ms: args.timing.then(|| started.elapsed().as_millis()),
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(suite: &str) -> Result<ExitCode, Failure> {
    if suite != "golden" {
        return Err(Failure::input(format!(
            "unknown suite {suite:?}; the defined suite is \"golden\""
        )));
    }
    let results = quiverpoly::suite::run_golden_suite();
    let mut failures = 0usize;
    for r in &results {
        if r.passed {
            println!("PASS {}", r.name);
        } else {
            failures += 1;
            println!("FAIL {}: {}", r.name, r.detail);
        }
    }
    println!("{} checks, {} failed", results.len(), failures);
    if failures == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::mismatch(format!("{failures} checks failed")))
    }
}
