//! Command-line front end: input resolution (catalog entries or JSON
//! documents), element words, command dispatch, and table or JSON output.
//!
//! Exit codes are a contract: 0 success, 1 verification failure (with the
//! report printed), 2 input or parse error, 3 resource cap exceeded.

pub mod catalog;
pub mod expr;
pub mod input;
pub mod output;
pub mod words;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::age::AgeError;
use crate::arith::{format_rational, Rational};
use crate::crring::{build_cr_ring, check_ring, kunneth_ring_compare, RingError};
use crate::group::{FiniteGroup, GroupError, DEFAULT_CLOSURE_CAP, DEFAULT_TUPLE_CAP};
use crate::obstruction::{KunnethChecker, ObstructionError, SectorEngine, TwistData};
use crate::reptheory::{RepError, Representation};
use crate::verify::{
    run_suite, SuiteOptions, VerifyError, DEFAULT_PAIR_CAP, DEFAULT_SAMPLES, DEFAULT_TRIPLE_CAP,
};

use catalog::CatalogEntry;
use expr::ExprError;
use input::InputError;
use words::{element_names, parse_element_pair};

#[derive(Parser)]
#[command(
    name = "stringy",
    version,
    about = "Exact stringy ring, age grading, and obstruction multiplicities of [C^n/G]"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Built-in catalog entry name (see `catalog`).
    #[arg(long, conflicts_with = "input")]
    catalog: Option<String>,
    /// Path to a JSON input document.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Representation name, for catalog entries with several.
    #[arg(long)]
    rep: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Seed for any sampling beyond the enumeration caps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Overrides every resource cap (closure, tuples, pair/triple scans).
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Group facts: order, exponent, classes, generators.
    Info(InputArgs),
    /// Conjugacy classes with sizes and centralizer orders.
    Classes(InputArgs),
    /// Diagonal k-tuple classes with twisting-subgroup orders.
    Sectors {
        #[command(flatten)]
        input: InputArgs,
        /// Tuple arity.
        #[arg(short = 'k', long = "arity", default_value_t = 2)]
        arity: usize,
    },
    /// Age table of the representation over the conjugacy classes.
    Ages(InputArgs),
    /// Obstruction decomposition over one 2-sector.
    Obstruction {
        #[command(flatten)]
        input: InputArgs,
        /// The sector pair, as comma-separated generator words (e.g. g,h).
        #[arg(long)]
        pair: String,
    },
    /// The stringy ring: degrees and class-sum structure constants.
    Ring {
        #[command(flatten)]
        input: InputArgs,
        /// Also run associativity/unit/grading/commutativity checks.
        #[arg(long)]
        check: bool,
    },
    /// Kunneth comparison against a second input.
    Kunneth {
        #[command(flatten)]
        input: InputArgs,
        /// Catalog name of the second factor.
        #[arg(long, conflicts_with = "with_input")]
        with: Option<String>,
        /// Input document of the second factor.
        #[arg(long)]
        with_input: Option<PathBuf>,
        /// Representation name for the second factor.
        #[arg(long)]
        with_rep: Option<String>,
    },
    /// Run the identity verification suite.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated subset of checks to run.
        #[arg(long)]
        checks: Option<String>,
    },
    /// List catalog entries, or dump one as an input document.
    Catalog {
        name: Option<String>,
        /// Print the entry as a reusable JSON input document.
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

enum CliFailure {
    Verification(String),
    Input(String),
    Cap(String),
}

impl CliFailure {
    fn code(&self) -> i32 {
        match self {
            CliFailure::Verification(_) => 1,
            CliFailure::Input(_) => 2,
            CliFailure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliFailure::Verification(m) | CliFailure::Input(m) | CliFailure::Cap(m) => m,
        }
    }
}

impl From<GroupError> for CliFailure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotClosedWithinBound { .. }
            | GroupError::InfiniteOrder { .. }
            | GroupError::CapExceeded { .. } => CliFailure::Cap(e.to_string()),
            GroupError::NotAGroup(_) => CliFailure::Input(e.to_string()),
        }
    }
}

impl From<RepError> for CliFailure {
    fn from(e: RepError) -> Self {
        match e {
            RepError::NotAHomomorphism { .. } | RepError::GroupMismatch => {
                CliFailure::Input(e.to_string())
            }
            RepError::NotAnInteger(_) | RepError::InternalInconsistency(_) => {
                CliFailure::Verification(e.to_string())
            }
            RepError::Group(inner) => inner.into(),
        }
    }
}

impl From<AgeError> for CliFailure {
    fn from(e: AgeError) -> Self {
        CliFailure::Verification(e.to_string())
    }
}

impl From<ObstructionError> for CliFailure {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::NegativeH { .. } | ObstructionError::Inconsistency(_) => {
                CliFailure::Verification(e.to_string())
            }
            ObstructionError::NotAbelian { .. } => CliFailure::Input(e.to_string()),
            ObstructionError::Rep(inner) => inner.into(),
            ObstructionError::Age(inner) => inner.into(),
            ObstructionError::Group(inner) => inner.into(),
        }
    }
}

impl From<RingError> for CliFailure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::BasisMismatch | RingError::NotSL(_) => CliFailure::Input(e.to_string()),
            RingError::Internal(_) => CliFailure::Verification(e.to_string()),
            RingError::Age(inner) => inner.into(),
            RingError::Rep(inner) => inner.into(),
            RingError::Group(inner) => inner.into(),
        }
    }
}

impl From<VerifyError> for CliFailure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownCheck(_) => CliFailure::Input(e.to_string()),
            VerifyError::Obstruction(inner) => inner.into(),
            VerifyError::Ring(inner) => inner.into(),
            VerifyError::Rep(inner) => inner.into(),
            VerifyError::Age(inner) => inner.into(),
        }
    }
}

impl From<InputError> for CliFailure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Document(_) | InputError::Expr(_) => CliFailure::Input(e.to_string()),
            InputError::Group(inner) => inner.into(),
            InputError::Rep(inner) => inner.into(),
        }
    }
}

impl From<ExprError> for CliFailure {
    fn from(e: ExprError) -> Self {
        CliFailure::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::Input(e.to_string())
    }
}

struct Resolved {
    name: String,
    group: Arc<FiniteGroup>,
    rep: Option<Arc<Representation>>,
    gen_labels: Vec<String>,
    entry: Option<CatalogEntry>,
}

impl Resolved {
    fn require_rep(&self) -> Result<&Arc<Representation>, CliFailure> {
        self.rep.as_ref().ok_or_else(|| {
            CliFailure::Input("this command needs a representation; the input has none".into())
        })
    }

    fn names(&self) -> Vec<String> {
        element_names(&self.group, &self.gen_labels)
    }
}

fn resolve(args: &InputArgs) -> Result<Resolved, CliFailure> {
    let cap = args.cap.unwrap_or(DEFAULT_CLOSURE_CAP);
    match (&args.catalog, &args.input) {
        (Some(name), None) => {
            let entry = catalog::entry(name).ok_or_else(|| {
                CliFailure::Input(format!("unknown catalog entry {name:?}; see `catalog`"))
            })?;
            let rep = match &args.rep {
                Some(rep_name) => entry
                    .rep(rep_name)
                    .ok_or_else(|| {
                        CliFailure::Input(format!(
                            "catalog entry {name} has no representation {rep_name:?}"
                        ))
                    })?
                    .clone(),
                None => entry.default_rep().clone(),
            };
            Ok(Resolved {
                name: entry.name.to_string(),
                group: entry.group.clone(),
                rep: Some(rep),
                gen_labels: entry.gen_labels.clone(),
                entry: Some(entry),
            })
        }
        (None, Some(path)) => {
            if args.rep.is_some() {
                return Err(CliFailure::Input(
                    "--rep selects among catalog representations; input documents carry \
                     their own"
                        .into(),
                ));
            }
            let text = std::fs::read_to_string(path)?;
            let doc: input::InputDocument = serde_json::from_str(&text)
                .map_err(|e| CliFailure::Input(format!("invalid input document: {e}")))?;
            let loaded = input::build(&doc, cap)?;
            Ok(Resolved {
                name: loaded.name,
                group: loaded.group,
                rep: loaded.rep,
                gen_labels: loaded.gen_labels,
                entry: None,
            })
        }
        (None, None) => Err(CliFailure::Input("give either --catalog or --input".into())),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

/// Overlay display names on the twisting group's irreducibles: when the
/// twisting group is the whole group, rows matching a named catalog
/// representation take its name.
fn irrep_display_labels(resolved: &Resolved, tw: &TwistData) -> Vec<String> {
    let mut out: Vec<String> = (1..=tw.table.len()).map(|i| format!("X{i}")).collect();
    let Some(entry) = &resolved.entry else { return out };
    if tw.local.order() != resolved.group.order() {
        return out;
    }
    for (i, row) in tw.table.rows().iter().enumerate() {
        for (name, rep) in &entry.reps {
            if rep.dim() != tw.table.dims()[i] {
                continue;
            }
            let matches = tw
                .local
                .conjugacy_classes()
                .iter()
                .zip(row.values())
                .all(|(c, v)| {
                    *rep.character().value_at(tw.to_parent[c.representative as usize]) == *v
                });
            if matches {
                out[i] = name.clone();
                break;
            }
        }
    }
    out
}

#[derive(Serialize)]
struct Meta {
    elapsed_ms: u128,
    seed: u64,
}

fn emit<D: Serialize>(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    data: &D,
    seed: u64,
    started: std::time::Instant,
    table_text: String,
) -> Result<(), CliFailure> {
    match format {
        Format::Table => write!(out, "{table_text}")?,
        Format::Json => {
            let meta = Meta { elapsed_ms: started.elapsed().as_millis(), seed };
            writeln!(out, "{}", output::json_envelope(command, data, &meta))?;
        }
    }
    Ok(())
}

/// Parses argv and runs; returns the process exit code. All output goes to
/// `out`.
pub fn run(argv: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(out, "error: {}", failure.message());
            failure.code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliFailure> {
    let started = std::time::Instant::now();
    match cli.command {
        Command::Info(args) => {
            let resolved = resolve(&args)?;
            let data = info_data(&resolved);
            let text = info_table(&data);
            emit(out, args.format, "info", &data, args.seed, started, text)?;
            Ok(0)
        }
        Command::Classes(args) => {
            let resolved = resolve(&args)?;
            let data = classes_data(&resolved);
            let text = classes_table(&data);
            emit(out, args.format, "classes", &data, args.seed, started, text)?;
            Ok(0)
        }
        Command::Sectors { input: args, arity } => {
            let resolved = resolve(&args)?;
            let cap = args.cap.unwrap_or(DEFAULT_TUPLE_CAP);
            let data = sectors_data(&resolved, arity, cap)?;
            let text = sectors_table(&data);
            emit(out, args.format, "sectors", &data, args.seed, started, text)?;
            Ok(0)
        }
        Command::Ages(args) => {
            let resolved = resolve(&args)?;
            let data = ages_data(&resolved)?;
            let text = ages_table(&data);
            emit(out, args.format, "ages", &data, args.seed, started, text)?;
            Ok(0)
        }
        Command::Obstruction { input: args, pair } => {
            let resolved = resolve(&args)?;
            let data = obstruction_data(&resolved, &pair)?;
            let text = obstruction_table(&data);
            emit(out, args.format, "obstruction", &data, args.seed, started, text)?;
            Ok(0)
        }
        Command::Ring { input: args, check } => {
            let resolved = resolve(&args)?;
            let triple_cap = args.cap.unwrap_or(DEFAULT_TRIPLE_CAP);
            let data = ring_data(&resolved, check, triple_cap, args.seed)?;
            let failed = data.check.as_ref().is_some_and(|c| !c.pass);
            let text = ring_table(&data);
            emit(out, args.format, "ring", &data, args.seed, started, text)?;
            Ok(if failed { 1 } else { 0 })
        }
        Command::Kunneth { input: args, with, with_input, with_rep } => {
            let resolved = resolve(&args)?;
            let second_args = InputArgs {
                catalog: with,
                input: with_input,
                rep: with_rep,
                format: args.format,
                seed: args.seed,
                cap: args.cap,
            };
            if second_args.catalog.is_none() && second_args.input.is_none() {
                return Err(CliFailure::Input(
                    "kunneth needs a second factor: --with or --with-input".into(),
                ));
            }
            let second = resolve(&second_args)?;
            let data = kunneth_data(&resolved, &second, &args)?;
            let failed = !data.rank.failures.is_empty()
                || data.ring.as_ref().is_some_and(|r| !r.pass);
            let text = kunneth_table(&data);
            emit(out, args.format, "kunneth", &data, args.seed, started, text)?;
            Ok(if failed { 1 } else { 0 })
        }
        Command::Verify { input: args, checks } => {
            let resolved = resolve(&args)?;
            let rep = resolved.require_rep()?.clone();
            let mut opts = SuiteOptions {
                seed: args.seed,
                ..SuiteOptions::default()
            };
            if let Some(cap) = args.cap {
                opts.pair_cap = cap;
                opts.triple_cap = cap;
            }
            if let Some(list) = checks {
                let set: BTreeSet<String> =
                    list.split(',').map(|s| s.trim().to_string()).collect();
                opts.checks = Some(set);
            }
            let report = run_suite(&rep, &opts)?;
            let names = resolved.names();
            let data = VerifyData::from_report(&resolved, &report, &names);
            let failed = !report.pass();
            let text = verify_table(&data);
            match args.format {
                Format::Table => write!(out, "{text}")?,
                Format::Json => {
                    #[derive(Serialize)]
                    struct VerifyMeta {
                        elapsed_ms: u128,
                        seed: u64,
                        pair_cap: usize,
                        triple_cap: usize,
                        samples: usize,
                    }
                    let meta = VerifyMeta {
                        elapsed_ms: report.elapsed_ms,
                        seed: opts.seed,
                        pair_cap: opts.pair_cap,
                        triple_cap: opts.triple_cap,
                        samples: opts.samples,
                    };
                    writeln!(out, "{}", output::json_envelope("verify", &data, &meta))?;
                }
            }
            Ok(if failed { 1 } else { 0 })
        }
        Command::Catalog { name, dump, rep, format } => {
            match name {
                None => {
                    let data = catalog_list_data();
                    let text = catalog_table(&data);
                    emit(out, format, "catalog", &data, 0, started, text)?;
                    Ok(0)
                }
                Some(name) => {
                    let entry = catalog::entry(&name).ok_or_else(|| {
                        CliFailure::Input(format!("unknown catalog entry {name:?}"))
                    })?;
                    let chosen = match &rep {
                        Some(r) => entry
                            .rep(r)
                            .ok_or_else(|| {
                                CliFailure::Input(format!(
                                    "catalog entry {name} has no representation {r:?}"
                                ))
                            })?
                            .clone(),
                        None => entry.default_rep().clone(),
                    };
                    if dump {
                        let source = entry
                            .tautological
                            .as_ref()
                            .and_then(|t| entry.rep(t))
                            .map(|r| r.as_ref());
                        let doc = input::document_for(
                            &entry.group,
                            source,
                            &chosen,
                            &entry.gen_labels,
                            entry.name,
                        )?;
                        writeln!(
                            out,
                            "{}",
                            serde_json::to_string_pretty(&doc).expect("document serialization")
                        )?;
                        Ok(0)
                    } else {
                        let data = catalog_entry_data(&entry, &chosen);
                        let text = catalog_entry_table(&data);
                        emit(out, format, "catalog", &data, 0, started, text)?;
                        Ok(0)
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Per-command data structures and their table renderings.

#[derive(Serialize)]
struct GeneratorInfo {
    label: String,
    order: u64,
}

#[derive(Serialize)]
struct RepInfo {
    label: String,
    dim: usize,
    sl: bool,
}

#[derive(Serialize)]
struct InfoData {
    name: String,
    order: usize,
    exponent: u64,
    provenance: String,
    abelian: bool,
    class_count: usize,
    generators: Vec<GeneratorInfo>,
    representation: Option<RepInfo>,
}

fn provenance_string(group: &FiniteGroup) -> String {
    match group.provenance() {
        crate::group::Provenance::PermutationImages { degree } => {
            format!("permutation images (degree {degree})")
        }
        crate::group::Provenance::ExplicitTable => "explicit table".to_string(),
        crate::group::Provenance::MatrixClosure { dim } => {
            format!("matrix closure (dim {dim})")
        }
    }
}

fn info_data(resolved: &Resolved) -> InfoData {
    let group = &resolved.group;
    InfoData {
        name: resolved.name.clone(),
        order: group.order(),
        exponent: group.exponent(),
        provenance: provenance_string(group),
        abelian: group.is_abelian(),
        class_count: group.conjugacy_classes().len(),
        generators: resolved
            .gen_labels
            .iter()
            .zip(group.generators())
            .map(|(label, &g)| GeneratorInfo { label: label.clone(), order: group.order_of(g) })
            .collect(),
        representation: resolved.rep.as_ref().map(|r| RepInfo {
            label: r.label().to_string(),
            dim: r.dim(),
            sl: r.is_sl(),
        }),
    }
}

fn info_table(data: &InfoData) -> String {
    let mut text = String::new();
    text.push_str(&format!("name        {}\n", data.name));
    text.push_str(&format!("order       {}\n", data.order));
    text.push_str(&format!("exponent    {}\n", data.exponent));
    text.push_str(&format!("provenance  {}\n", data.provenance));
    text.push_str(&format!("abelian     {}\n", data.abelian));
    text.push_str(&format!("classes     {}\n", data.class_count));
    let gens: Vec<String> = data
        .generators
        .iter()
        .map(|g| format!("{} (order {})", g.label, g.order))
        .collect();
    text.push_str(&format!("generators  {}\n", if gens.is_empty() {
        "none".to_string()
    } else {
        gens.join(", ")
    }));
    if let Some(rep) = &data.representation {
        text.push_str(&format!(
            "rep         {} (dim {}{})\n",
            rep.label,
            rep.dim,
            if rep.sl { ", SL" } else { "" }
        ));
    }
    text
}

#[derive(Serialize)]
struct ClassRow {
    index: usize,
    representative: String,
    size: usize,
    centralizer_order: usize,
    element_order: u64,
}

#[derive(Serialize)]
struct ClassesData {
    name: String,
    class_count: usize,
    classes: Vec<ClassRow>,
}

fn classes_data(resolved: &Resolved) -> ClassesData {
    let names = resolved.names();
    let classes = resolved
        .group
        .conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(index, c)| ClassRow {
            index,
            representative: names[c.representative as usize].clone(),
            size: c.members.len(),
            centralizer_order: c.centralizer_order,
            element_order: resolved.group.order_of(c.representative),
        })
        .collect::<Vec<_>>();
    ClassesData { name: resolved.name.clone(), class_count: classes.len(), classes }
}

fn classes_table(data: &ClassesData) -> String {
    let rows: Vec<Vec<String>> = data
        .classes
        .iter()
        .map(|c| {
            vec![
                c.index.to_string(),
                c.representative.clone(),
                c.size.to_string(),
                c.centralizer_order.to_string(),
                c.element_order.to_string(),
            ]
        })
        .collect();
    output::render_table(&["class", "representative", "size", "centralizer", "order"], &rows)
}

#[derive(Serialize)]
struct SectorRow {
    representative: Vec<String>,
    orbit_size: usize,
    centralizer_order: usize,
    twisting_order: usize,
}

#[derive(Serialize)]
struct SectorsData {
    name: String,
    arity: usize,
    count: usize,
    sectors: Vec<SectorRow>,
}

fn sectors_data(resolved: &Resolved, arity: usize, cap: usize) -> Result<SectorsData, CliFailure> {
    if arity == 0 {
        return Err(CliFailure::Input("sector arity must be at least 1".into()));
    }
    let names = resolved.names();
    let classes = resolved.group.tuple_classes(arity, cap)?;
    let sectors: Vec<SectorRow> = classes
        .iter()
        .map(|tc| SectorRow {
            representative: tc
                .representative
                .iter()
                .map(|&g| names[g as usize].clone())
                .collect(),
            orbit_size: tc.members.len(),
            centralizer_order: tc.centralizer.len(),
            twisting_order: resolved.group.subgroup_generated(&tc.representative).order(),
        })
        .collect();
    Ok(SectorsData {
        name: resolved.name.clone(),
        arity,
        count: sectors.len(),
        sectors,
    })
}

fn sectors_table(data: &SectorsData) -> String {
    let mut text = format!("{} {}-sector classes\n", data.count, data.arity);
    let rows: Vec<Vec<String>> = data
        .sectors
        .iter()
        .map(|s| {
            vec![
                format!("({})", s.representative.join(", ")),
                s.orbit_size.to_string(),
                s.centralizer_order.to_string(),
                s.twisting_order.to_string(),
            ]
        })
        .collect();
    text.push_str(&output::render_table(
        &["representative", "orbit", "centralizer", "twisting order"],
        &rows,
    ));
    text
}

#[derive(Serialize)]
struct AgeRow {
    class: usize,
    representative: String,
    element_order: u64,
    multiplicities: Vec<usize>,
    age: String,
    degree: String,
}

#[derive(Serialize)]
struct AgesData {
    name: String,
    representation: String,
    dim: usize,
    sl: bool,
    ages: Vec<AgeRow>,
}

fn ages_data(resolved: &Resolved) -> Result<AgesData, CliFailure> {
    let rep = resolved.require_rep()?;
    let names = resolved.names();
    let mut ages = Vec::new();
    for (class, c) in resolved.group.conjugacy_classes().iter().enumerate() {
        let record = crate::age::eigen_multiplicities(rep, c.representative)?;
        let two = Rational::from_integer(2.into());
        ages.push(AgeRow {
            class,
            representative: names[c.representative as usize].clone(),
            element_order: record.order,
            multiplicities: record.multiplicities.clone(),
            age: format_rational(&record.age),
            degree: format_rational(&(&record.age * two)),
        });
    }
    Ok(AgesData {
        name: resolved.name.clone(),
        representation: rep.label().to_string(),
        dim: rep.dim(),
        sl: rep.is_sl(),
        ages,
    })
}

fn ages_table(data: &AgesData) -> String {
    let mut text = format!(
        "ages of {} (dim {}) over {}\n",
        data.representation, data.dim, data.name
    );
    let rows: Vec<Vec<String>> = data
        .ages
        .iter()
        .map(|r| {
            vec![
                r.representative.clone(),
                r.element_order.to_string(),
                format!(
                    "({})",
                    r.multiplicities.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
                ),
                r.age.clone(),
                r.degree.clone(),
            ]
        })
        .collect();
    text.push_str(&output::render_table(
        &["class rep", "order", "multiplicities", "age", "degree"],
        &rows,
    ));
    text
}

#[derive(Serialize)]
struct IrrepRow {
    label: String,
    degree: usize,
    h: usize,
    t: usize,
}

#[derive(Serialize)]
struct ObstructionData {
    name: String,
    representation: String,
    pair: [String; 2],
    twisting_order: usize,
    per_irrep: Vec<IrrepRow>,
    rank: usize,
    age_defect: String,
    codim_excess: usize,
    decomposition: String,
}

fn obstruction_data(resolved: &Resolved, pair: &str) -> Result<ObstructionData, CliFailure> {
    let rep = resolved.require_rep()?.clone();
    let (g1, g2) = parse_element_pair(pair, &resolved.group, &resolved.gen_labels)?;
    let engine = SectorEngine::new(rep.clone())?;
    let sector = engine.decomposition(g1, g2)?;
    let tw = engine.twist(&[g1, g2])?;
    let labels = irrep_display_labels(resolved, &tw);
    let names = resolved.names();
    let per_irrep: Vec<IrrepRow> = sector
        .per_irrep
        .iter()
        .zip(&labels)
        .map(|(c, label)| IrrepRow { label: label.clone(), degree: c.degree, h: c.h, t: c.t })
        .collect();
    let terms: Vec<String> = per_irrep
        .iter()
        .filter(|r| r.h > 0)
        .map(|r| format!("{} \u{b7} Hom({}, V)", r.h, r.label))
        .collect();
    let decomposition = if terms.is_empty() {
        "E = 0".to_string()
    } else {
        format!("E = {}", terms.join(" + "))
    };
    Ok(ObstructionData {
        name: resolved.name.clone(),
        representation: rep.label().to_string(),
        pair: [names[g1 as usize].clone(), names[g2 as usize].clone()],
        twisting_order: sector.twisting.order(),
        per_irrep,
        rank: sector.rank,
        age_defect: format_rational(&sector.age_defect),
        codim_excess: sector.codim_excess,
        decomposition,
    })
}

fn obstruction_table(data: &ObstructionData) -> String {
    let mut text = format!(
        "sector ({}, {}) of {} with V = {}\n",
        data.pair[0], data.pair[1], data.name, data.representation
    );
    text.push_str(&format!("twisting group order {}\n", data.twisting_order));
    let rows: Vec<Vec<String>> = data
        .per_irrep
        .iter()
        .map(|r| {
            vec![
                r.label.clone(),
                r.degree.to_string(),
                r.h.to_string(),
                r.t.to_string(),
            ]
        })
        .collect();
    text.push_str(&output::render_table(&["irrep", "dim", "h", "t"], &rows));
    text.push_str(&format!(
        "rank {}   age defect {}   codim excess {}\n",
        data.rank, data.age_defect, data.codim_excess
    ));
    text.push_str(&format!("{}\n", data.decomposition));
    text
}

#[derive(Serialize)]
struct RingClassRow {
    class: usize,
    representative: String,
    degree: String,
}

#[derive(Serialize)]
struct StructureEntry {
    a: usize,
    b: usize,
    c: usize,
    coeff: String,
}

#[derive(Serialize)]
struct RingCheckData {
    pass: bool,
    triples_checked: u64,
    sampled: bool,
    unit_ok: bool,
    grading_ok: bool,
    commutativity_ok: bool,
    degrees_even: Option<bool>,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct RingData {
    name: String,
    representation: String,
    sl: bool,
    classes: Vec<RingClassRow>,
    structure: Vec<StructureEntry>,
    check: Option<RingCheckData>,
}

fn ring_data(
    resolved: &Resolved,
    check: bool,
    triple_cap: usize,
    seed: u64,
) -> Result<RingData, CliFailure> {
    let rep = resolved.require_rep()?;
    let ring = build_cr_ring(rep)?;
    let names = resolved.names();
    let classes: Vec<RingClassRow> = resolved
        .group
        .conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(class, c)| RingClassRow {
            class,
            representative: names[c.representative as usize].clone(),
            degree: format_rational(&ring.class_degrees()[class]),
        })
        .collect();
    let mut structure = Vec::new();
    for (a, per_a) in ring.structure_constants().iter().enumerate() {
        for (b, per_b) in per_a.iter().enumerate() {
            for (c, coeff) in per_b.iter().enumerate() {
                if !num_traits::Zero::is_zero(coeff) {
                    structure.push(StructureEntry { a, b, c, coeff: coeff.to_string() });
                }
            }
        }
    }
    let check = if check {
        let report = check_ring(&ring, triple_cap, DEFAULT_SAMPLES, seed);
        Some(RingCheckData {
            pass: report.pass(),
            triples_checked: report.triples_checked,
            sampled: report.sampled,
            unit_ok: report.unit_ok,
            grading_ok: report.grading_ok,
            commutativity_ok: report.commutativity_ok,
            degrees_even: report.degrees_even,
            failures: report.failures,
        })
    } else {
        None
    };
    Ok(RingData {
        name: resolved.name.clone(),
        representation: rep.label().to_string(),
        sl: ring.is_sl(),
        classes,
        structure,
        check,
    })
}

fn ring_table(data: &RingData) -> String {
    let mut text = format!(
        "stringy ring of [C^n/{}] with V = {}{}\n",
        data.name,
        data.representation,
        if data.sl { " (SL)" } else { "" }
    );
    let rows: Vec<Vec<String>> = data
        .classes
        .iter()
        .map(|c| vec![c.class.to_string(), c.representative.clone(), c.degree.clone()])
        .collect();
    text.push_str(&output::render_table(&["class", "representative", "degree"], &rows));
    text.push_str(&format!("nonzero structure constants: {}\n", data.structure.len()));
    for s in &data.structure {
        text.push_str(&format!("  E{} * E{} -> {} E{}\n", s.a, s.b, s.coeff, s.c));
    }
    if let Some(check) = &data.check {
        text.push_str(&format!(
            "check: {} (associativity on {} triples{}, unit {}, grading {}, commutativity {})\n",
            if check.pass { "pass" } else { "FAIL" },
            check.triples_checked,
            if check.sampled { ", sampled" } else { "" },
            check.unit_ok,
            check.grading_ok,
            check.commutativity_ok,
        ));
        if let Some(even) = check.degrees_even {
            text.push_str(&format!("SL degrees all even: {even}\n"));
        }
        for f in &check.failures {
            text.push_str(&format!("  failure: {f}\n"));
        }
    }
    text
}

#[derive(Serialize)]
struct KunnethRankData {
    pairs_checked: u64,
    sampled: bool,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct KunnethRingData {
    pass: bool,
    class_count: usize,
    degree_multiset: Vec<String>,
    failure_count: usize,
}

#[derive(Serialize)]
struct KunnethData {
    left: String,
    right: String,
    product_order: usize,
    rank: KunnethRankData,
    ring: Option<KunnethRingData>,
    ring_skipped: Option<String>,
}

fn kunneth_data(
    left: &Resolved,
    right: &Resolved,
    args: &InputArgs,
) -> Result<KunnethData, CliFailure> {
    let v = left.require_rep()?.clone();
    let w = right.require_rep()?.clone();
    let closure_cap = args.cap.unwrap_or(DEFAULT_CLOSURE_CAP);
    let checker = KunnethChecker::new(v.clone(), w.clone(), closure_cap)?;
    let product_order = checker.product().group.order();

    let pair_cap = args.cap.unwrap_or(DEFAULT_PAIR_CAP);
    let total_pairs = (product_order as u128) * (product_order as u128);
    let mut failures = Vec::new();
    let mut pairs_checked = 0u64;
    let sampled = total_pairs > pair_cap as u128;
    if !sampled {
        for p1 in 0..product_order as u32 {
            for p2 in 0..product_order as u32 {
                let first = checker.product().pair_of(p1);
                let second = checker.product().pair_of(p2);
                let chk = checker.rank_check(first, second)?;
                pairs_checked += 1;
                if !chk.holds() {
                    failures.push(format!(
                        "rank additivity fails at ({first:?}, {second:?}): {} vs {}",
                        chk.lhs, chk.rhs
                    ));
                }
            }
        }
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
        for _ in 0..DEFAULT_SAMPLES {
            let p1 = rng.gen_range(0..product_order) as u32;
            let p2 = rng.gen_range(0..product_order) as u32;
            let first = checker.product().pair_of(p1);
            let second = checker.product().pair_of(p2);
            let chk = checker.rank_check(first, second)?;
            pairs_checked += 1;
            if !chk.holds() {
                failures.push(format!(
                    "rank additivity fails at ({first:?}, {second:?}): {} vs {}",
                    chk.lhs, chk.rhs
                ));
            }
        }
    }

    let (ring, ring_skipped) = if v.is_sl() && w.is_sl() {
        let report = kunneth_ring_compare(&v, &w)?;
        (
            Some(KunnethRingData {
                pass: report.pass(),
                class_count: report.class_count,
                degree_multiset: report.degree_multiset.iter().map(format_rational).collect(),
                failure_count: report.failures.len(),
            }),
            None,
        )
    } else {
        (None, Some("ring comparison skipped: inputs are not both SL".to_string()))
    };

    Ok(KunnethData {
        left: format!("{} ({})", left.name, v.label()),
        right: format!("{} ({})", right.name, w.label()),
        product_order,
        rank: KunnethRankData { pairs_checked, sampled, failures },
        ring,
        ring_skipped,
    })
}

fn kunneth_table(data: &KunnethData) -> String {
    let mut text = format!(
        "Kunneth comparison: {} x {} (product order {})\n",
        data.left, data.right, data.product_order
    );
    text.push_str(&format!(
        "rank additivity: {} over {} sector pairs{}\n",
        if data.rank.failures.is_empty() { "pass" } else { "FAIL" },
        data.rank.pairs_checked,
        if data.rank.sampled { " (sampled)" } else { "" }
    ));
    for f in &data.rank.failures {
        text.push_str(&format!("  failure: {f}\n"));
    }
    if let Some(ring) = &data.ring {
        text.push_str(&format!(
            "ring comparison: {} ({} classes, degrees {{{}}})\n",
            if ring.pass { "pass" } else { "FAIL" },
            ring.class_count,
            ring.degree_multiset.join(", ")
        ));
    }
    if let Some(reason) = &data.ring_skipped {
        text.push_str(&format!("{reason}\n"));
    }
    text
}

#[derive(Serialize)]
struct VerifyCheckData {
    name: String,
    instances: u64,
    sampled: bool,
    failures: Vec<String>,
    note: Option<String>,
}

#[derive(Serialize)]
struct TightCaseData {
    g1: String,
    g2: String,
    irrep: String,
}

#[derive(Serialize)]
struct VerifyData {
    name: String,
    input: String,
    pass: bool,
    checks: Vec<VerifyCheckData>,
    tight_case_count: usize,
    tight_cases: Vec<TightCaseData>,
}

impl VerifyData {
    fn from_report(
        resolved: &Resolved,
        report: &crate::verify::VerificationReport,
        names: &[String],
    ) -> VerifyData {
        VerifyData {
            name: resolved.name.clone(),
            input: report.input.clone(),
            pass: report.pass(),
            checks: report
                .checks
                .iter()
                .map(|c| VerifyCheckData {
                    name: c.name.clone(),
                    instances: c.instances,
                    sampled: c.sampled,
                    failures: c.failures.clone(),
                    note: c.note.clone(),
                })
                .collect(),
            tight_case_count: report.tight_cases.len(),
            tight_cases: report
                .tight_cases
                .iter()
                .map(|w| TightCaseData {
                    g1: names[w.g1 as usize].clone(),
                    g2: names[w.g2 as usize].clone(),
                    irrep: w.irrep.clone(),
                })
                .collect(),
        }
    }
}

fn verify_table(data: &VerifyData) -> String {
    let mut text = format!("verification of {}: {}\n", data.input, if data.pass {
        "pass"
    } else {
        "FAIL"
    });
    let rows: Vec<Vec<String>> = data
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.instances.to_string(),
                if c.sampled { "sampled" } else { "exhaustive" }.to_string(),
                if c.failures.is_empty() { "ok" } else { "FAIL" }.to_string(),
                c.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    text.push_str(&output::render_table(
        &["check", "instances", "mode", "status", "note"],
        &rows,
    ));
    for c in &data.checks {
        for f in &c.failures {
            text.push_str(&format!("  {}: {f}\n", c.name));
        }
    }
    text.push_str(&format!("tight cases of the age inequality: {}\n", data.tight_case_count));
    text
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    order: usize,
    exponent: u64,
    classes: usize,
    representations: Vec<String>,
    default_rep: String,
}

#[derive(Serialize)]
struct CatalogList {
    entries: Vec<CatalogRow>,
}

fn catalog_list_data() -> CatalogList {
    CatalogList {
        entries: catalog::entries()
            .iter()
            .map(|e| CatalogRow {
                name: e.name.to_string(),
                order: e.group.order(),
                exponent: e.group.exponent(),
                classes: e.group.conjugacy_classes().len(),
                representations: e.reps.iter().map(|(n, _)| n.clone()).collect(),
                default_rep: e.default_rep.clone(),
            })
            .collect(),
    }
}

fn catalog_table(data: &CatalogList) -> String {
    let rows: Vec<Vec<String>> = data
        .entries
        .iter()
        .map(|e| {
            vec![
                e.name.clone(),
                e.order.to_string(),
                e.exponent.to_string(),
                e.classes.to_string(),
                e.representations.join(", "),
                e.default_rep.clone(),
            ]
        })
        .collect();
    output::render_table(
        &["name", "order", "exponent", "classes", "representations", "default"],
        &rows,
    )
}

#[derive(Serialize)]
struct CatalogEntryData {
    name: String,
    order: usize,
    exponent: u64,
    classes: usize,
    generators: Vec<String>,
    representation: RepInfo,
}

fn catalog_entry_data(entry: &CatalogEntry, rep: &Representation) -> CatalogEntryData {
    CatalogEntryData {
        name: entry.name.to_string(),
        order: entry.group.order(),
        exponent: entry.group.exponent(),
        classes: entry.group.conjugacy_classes().len(),
        generators: entry.gen_labels.clone(),
        representation: RepInfo {
            label: rep.label().to_string(),
            dim: rep.dim(),
            sl: rep.is_sl(),
        },
    }
}

fn catalog_entry_table(data: &CatalogEntryData) -> String {
    format!(
        "{}: order {}, exponent {}, {} classes, generators [{}], rep {} (dim {}{})\n",
        data.name,
        data.order,
        data.exponent,
        data.classes,
        data.generators.join(", "),
        data.representation.label,
        data.representation.dim,
        if data.representation.sl { ", SL" } else { "" }
    )
}
