//! Batch command-line front door. One invocation, one subcommand, JSON-lines
//! on stdout by default; every result object carries the ladder rule and the
//! active depth cap so runs are comparable.
//!
//! Exit codes: 0 success, 1 verification failure or counterexample, 2 usage
//! error, 3 cap or budget exceeded.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blocks::{
    closure, decompose_b, enumerate_b, member_b, part, ClosureKind, DisjointCollection,
    ExplicitFamily, PartKind,
};
use crate::cbindex::{build_schreier_family, cb_index_m, window_warning, DerivativeConfig,
    WitnessUniverse};
use crate::config;
use crate::error::Error;
use crate::ordinal::{parse_ordinal_capped, Ordinal, LADDER_RULE};
use crate::partition::{
    hindman_search, xi_mono_search, BlockColoring, CollectionColoring, ColoringSpec,
};
use crate::schreier::{decompose_a, decompose_stream_a, enumerate_a, member_a, FiniteSet};
use crate::selftest;
use crate::sumsets::{sumset_p, transport_check, SumsetMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Plain,
}

#[derive(Parser)]
#[command(name = "blockcomb", version, about = "Recursive Schreier and block-Schreier systems: membership, decomposition, family algebra, index, sum-sets, partition search")]
pub struct Cli {
    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Test membership of a set in A_xi or a collection in B^xi.
    Member {
        #[arg(long)]
        xi: String,
        /// Ascending integer array, e.g. [3,7,10].
        #[arg(long)]
        set: Option<String>,
        /// Array of blocks, e.g. [[1,2],[4]].
        #[arg(long)]
        collection: Option<String>,
    },
    /// Canonical decomposition into complete pieces plus a partial tail.
    Decompose {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        collection: Option<String>,
        /// Arithmetic source "arith:<start>,<step>"; consumed lazily.
        #[arg(long)]
        stream: Option<String>,
        /// Number of pieces to draw from a stream.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// List A_xi members within {1..bound} or complete B^xi members over a
    /// ground collection.
    Enumerate {
        /// A or B.
        #[arg(long)]
        family: FamilyKind,
        #[arg(long)]
        xi: String,
        /// Element bound for family A.
        #[arg(long)]
        bound: Option<u32>,
        /// Ground collection for family B.
        #[arg(long)]
        ground: Option<String>,
        /// Truncate family-A output after this many members.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Close an explicit family downward under refinement or upward under
    /// initial segments.
    Closure {
        #[arg(long)]
        kind: ClosureKindArg,
        /// {"ground": [[...],...], "members": [...]}.
        #[arg(long)]
        family: String,
    },
    /// The largest hereditary or tree subfamily.
    Part {
        #[arg(long)]
        kind: PartKindArg,
        #[arg(long)]
        family: String,
    },
    /// Build the hereditary B^xi family over a ground and iterate the
    /// m-witness derivative to its index.
    Index {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        ground: String,
        #[arg(long)]
        m: usize,
        /// single_blocks, full_fu, or fu_arity_capped:<k>.
        #[arg(long, default_value = "single_blocks")]
        universe: String,
    },
    /// Search for a monochromatic witness collection.
    Search {
        #[arg(long)]
        mode: SearchModeArg,
        /// {"name": "...", "params": [...], "colors": 2}.
        #[arg(long)]
        coloring: String,
        /// Number of blocks in the witness.
        #[arg(long)]
        blocks: usize,
        #[arg(long)]
        bound: u32,
        /// Required in xi mode.
        #[arg(long)]
        xi: Option<String>,
        /// Least element considered; raising it can make vacuous witnesses
        /// reachable.
        #[arg(long, default_value_t = 1)]
        start: u32,
    },
    /// The xi-sum-set (or k-fold or full sum-set) of a finite list L.
    Sumset {
        #[arg(long)]
        xi: Option<String>,
        #[arg(long, conflicts_with = "xi")]
        all: bool,
        #[arg(long, conflicts_with_all = ["xi", "all"], value_name = "K")]
        k_fold: Option<usize>,
        /// Strictly increasing positive integers, e.g. [1,2,4].
        #[arg(long = "L")]
        l: String,
    },
    /// Check the sum-set transport inclusion for L = phi(D).
    Transport {
        #[arg(long)]
        xi: String,
        /// Source collection, e.g. [[1],[2]].
        #[arg(long = "D")]
        d: String,
    },
    /// Run the acceptance suite and print one line per criterion.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyKind {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ClosureKindArg {
    #[value(name = "star_down")]
    StarDown,
    #[value(name = "star_up")]
    StarUp,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PartKindArg {
    Hereditary,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SearchModeArg {
    Hindman,
    Xi,
}

/// A failure carrying the exit code to report.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) | Error::BudgetExceeded { .. } | Error::DepthCap { .. } => {
                EXIT_CAP
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<(Vec<Value>, i32), Failure>;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((results, code)) => {
            for v in results {
                emit(cli.output, &stamp(v));
            }
            code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Embeds the reproducibility fields into a result object.
fn stamp(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.insert("ladder_rule".into(), json!(LADDER_RULE));
        obj.insert("depth_cap".into(), json!(config::depth_cap()));
    }
    v
}

fn emit(output: OutputFormat, v: &Value) {
    match output {
        OutputFormat::Json => println!("{v}"),
        OutputFormat::Plain => {
            if let Some(obj) = v.as_object() {
                let line: Vec<String> = obj
                    .iter()
                    .filter(|(k, _)| *k != "ladder_rule" && *k != "depth_cap")
                    .map(|(k, val)| format!("{k}={val}"))
                    .collect();
                println!("{}", line.join("  "));
            } else {
                println!("{v}");
            }
        }
    }
}

fn parse_xi(text: &str) -> Result<Ordinal, Failure> {
    Ok(parse_ordinal_capped(text, config::depth_cap())?)
}

fn parse_set(text: &str) -> Result<FiniteSet, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad set: {e}")))
}

fn parse_collection(text: &str) -> Result<DisjointCollection, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad collection: {e}")))
}

fn parse_family(text: &str) -> Result<ExplicitFamily, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad family: {e}")))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Member {
            xi,
            set,
            collection,
        } => {
            let xi = parse_xi(xi)?;
            let member = match (set, collection) {
                (Some(s), None) => member_a(&parse_set(s)?, &xi),
                (None, Some(c)) => member_b(&parse_collection(c)?, &xi),
                _ => return Err(Failure::usage("pass exactly one of --set, --collection")),
            };
            Ok((vec![json!({"member": member})], EXIT_OK))
        }
        Command::Decompose {
            xi,
            set,
            collection,
            stream,
            count,
        } => {
            let xi = parse_xi(xi)?;
            if xi.is_zero() {
                return Err(Failure::usage("decompose requires xi >= 1"));
            }
            match (set, collection, stream) {
                (Some(s), None, None) => {
                    let d = decompose_a(&parse_set(s)?, &xi);
                    Ok((
                        vec![json!({"pieces": to_value(&d.pieces), "tail": to_value(&d.tail)})],
                        EXIT_OK,
                    ))
                }
                (None, Some(c), None) => {
                    let (pieces, tail) = decompose_b(&parse_collection(c)?, &xi);
                    Ok((
                        vec![json!({"pieces": to_value(&pieces), "tail": to_value(&tail)})],
                        EXIT_OK,
                    ))
                }
                (None, None, Some(spec)) => {
                    let (a, step) = parse_arith(spec)?;
                    let mut source = (0u32..).map(move |i| a + i * step);
                    let pieces = decompose_stream_a(&mut source, &xi, *count)?;
                    Ok((vec![json!({"pieces": to_value(&pieces)})], EXIT_OK))
                }
                _ => Err(Failure::usage(
                    "pass exactly one of --set, --collection, --stream",
                )),
            }
        }
        Command::Enumerate {
            family,
            xi,
            bound,
            ground,
            limit,
        } => {
            let xi = parse_xi(xi)?;
            match family {
                FamilyKind::A => {
                    let bound = bound.ok_or_else(|| Failure::usage("family A needs --bound"))?;
                    if bound == 0 {
                        return Err(Failure::usage("--bound must be positive"));
                    }
                    let limit = limit.unwrap_or_else(config::family_cap);
                    let (members, truncated) = enumerate_a(&xi, bound, limit);
                    Ok((
                        vec![json!({"members": to_value(&members), "truncated": truncated})],
                        EXIT_OK,
                    ))
                }
                FamilyKind::B => {
                    let ground =
                        ground.as_ref().ok_or_else(|| Failure::usage("family B needs --ground"))?;
                    let members = enumerate_b(&xi, &parse_collection(ground)?, true)?;
                    Ok((vec![json!({"members": to_value(&members)})], EXIT_OK))
                }
            }
        }
        Command::Closure { kind, family } => {
            let f = parse_family(family)?;
            let kind = match kind {
                ClosureKindArg::StarDown => ClosureKind::StarDown,
                ClosureKindArg::StarUp => ClosureKind::StarUp,
            };
            let out = closure(&f, kind)?;
            Ok((vec![json!({"family": to_value(&out)})], EXIT_OK))
        }
        Command::Part { kind, family } => {
            let f = parse_family(family)?;
            let kind = match kind {
                PartKindArg::Hereditary => PartKind::Hereditary,
                PartKindArg::Tree => PartKind::Tree,
            };
            let out = part(&f, kind)?;
            Ok((vec![json!({"family": to_value(&out)})], EXIT_OK))
        }
        Command::Index {
            xi,
            ground,
            m,
            universe,
        } => {
            let xi = parse_xi(xi)?;
            if *m < 1 {
                return Err(Failure::usage("--m must be positive"));
            }
            let ground = parse_collection(ground)?;
            let cfg = DerivativeConfig {
                m: *m,
                universe: parse_universe(universe)?,
            };
            let f = build_schreier_family(&xi, &ground)?;
            let idx = cb_index_m(&f, &cfg)?;
            let mut obj = json!({
                "index": idx.index,
                "trace": idx.trace,
                "stalled": idx.stalled,
                "family_size": f.len(),
            });
            if let Some(w) = window_warning(&xi, &ground, *m) {
                obj["warning"] = json!(w);
            }
            Ok((vec![obj], EXIT_OK))
        }
        Command::Search {
            mode,
            coloring,
            blocks,
            bound,
            xi,
            start,
        } => {
            let spec: ColoringSpec = serde_json::from_str(coloring)
                .map_err(|e| Failure::usage(format!("bad coloring: {e}")))?;
            if *blocks < 1 || *bound < 1 || *start < 1 || *bound < *start {
                return Err(Failure::usage(
                    "--blocks, --bound, --start must be positive with start <= bound",
                ));
            }
            let report = match mode {
                SearchModeArg::Hindman => {
                    let col = BlockColoring::from_spec(&spec)?;
                    hindman_search(&col, *blocks, *bound)?
                }
                SearchModeArg::Xi => {
                    let xi = parse_xi(
                        xi.as_deref()
                            .ok_or_else(|| Failure::usage("xi mode needs --xi"))?,
                    )?;
                    if xi.is_zero() {
                        return Err(Failure::usage("xi mode needs xi >= 1"));
                    }
                    let col = CollectionColoring::from_spec(&spec)?;
                    xi_mono_search(&col, &xi, *blocks, *bound, *start)?
                }
            };
            Ok((vec![to_value(&report)], EXIT_OK))
        }
        Command::Sumset { xi, all, k_fold, l } => {
            let l: Vec<u64> =
                serde_json::from_str(l).map_err(|e| Failure::usage(format!("bad L: {e}")))?;
            let mode = match (xi, all, k_fold) {
                (Some(x), false, None) => {
                    let xi = parse_xi(x)?;
                    if xi.is_zero() {
                        return Err(Failure::usage("sum-sets need xi >= 1"));
                    }
                    SumsetMode::Xi(xi)
                }
                (None, true, None) => SumsetMode::All,
                (None, false, Some(k)) => {
                    if *k < 1 {
                        return Err(Failure::usage("--k-fold must be positive"));
                    }
                    SumsetMode::KFold(*k)
                }
                _ => return Err(Failure::usage("pass exactly one of --xi, --all, --k-fold")),
            };
            let tuples = sumset_p(&l, &mode)?;
            Ok((vec![json!({"tuples": tuples})], EXIT_OK))
        }
        Command::Transport { xi, d } => {
            let xi = parse_xi(xi)?;
            if xi.is_zero() {
                return Err(Failure::usage("transport needs xi >= 1"));
            }
            let d = parse_collection(d)?;
            let report = transport_check(&d, &xi)?;
            let code = if report.holds { EXIT_OK } else { EXIT_VERIFY };
            Ok((vec![to_value(&report)], code))
        }
        Command::Selftest => {
            let reports = selftest::run_all();
            let failed = reports.iter().filter(|r| !r.passed).count();
            let mut out: Vec<Value> = reports.iter().map(to_value).collect();
            out.push(json!({"criteria": reports.len(), "failed": failed}));
            let code = if failed == 0 { EXIT_OK } else { EXIT_VERIFY };
            Ok((out, code))
        }
    }
}

fn parse_arith(spec: &str) -> Result<(u32, u32), Failure> {
    let body = spec
        .strip_prefix("arith:")
        .ok_or_else(|| Failure::usage("stream spec must be arith:<start>,<step>"))?;
    let (a, d) = body
        .split_once(',')
        .ok_or_else(|| Failure::usage("stream spec must be arith:<start>,<step>"))?;
    let a: u32 = a.trim().parse().map_err(|_| Failure::usage("bad stream start"))?;
    let d: u32 = d.trim().parse().map_err(|_| Failure::usage("bad stream step"))?;
    if a == 0 || d == 0 {
        return Err(Failure::usage("stream start and step must be positive"));
    }
    Ok((a, d))
}

fn parse_universe(text: &str) -> Result<WitnessUniverse, Failure> {
    match text {
        "single_blocks" => Ok(WitnessUniverse::SingleBlocks),
        "full_fu" => Ok(WitnessUniverse::FullFu),
        other => {
            if let Some(k) = other.strip_prefix("fu_arity_capped:") {
                let k: usize = k
                    .parse()
                    .map_err(|_| Failure::usage("bad fu_arity_capped arity"))?;
                if k < 1 {
                    return Err(Failure::usage("fu_arity_capped arity must be positive"));
                }
                return Ok(WitnessUniverse::FuArityCapped(k));
            }
            Err(Failure::usage(
                "universe must be single_blocks, full_fu, or fu_arity_capped:<k>",
            ))
        }
    }
}
