//! The `amalgam` command line. JSON goes to stdout, summaries to stderr.
//!
//! Exit codes: 0 success, witness or ok report; 1 verification failure or
//! exhausted search; 2 input or usage error; 3 time budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use amalgam_core::construct::{
    admissible_case, amalgamate, linearize_pipeline, lift, szpilrajn, verify, AmalgamMode,
};
use amalgam_core::fixtures::{self, Observed};
use amalgam_core::fraisse::{check_ap_at_size, enumerate_models, saturate};
use amalgam_core::oracle::{search_with, FalseFirst, SearchConfig, SearchResult};
use amalgam_core::{validate, Conditions, Error, RelProps, Structure, Theory};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::clock::WallClock;
use crate::json::{self, AmalgamJson, BinRelJson, InputError, StructureJson};

pub const OK: i32 = 0;
pub const FAILED: i32 = 1;
pub const INPUT: i32 = 2;
pub const BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "amalgam", version, about = "Amalgams of finite structures with two binary relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Level {
    Ap,
    Sap,
    Super,
}

impl From<Level> for AmalgamMode {
    fn from(l: Level) -> AmalgamMode {
        match l {
            Level::Ap => AmalgamMode::Ap,
            Level::Sap => AmalgamMode::Sap,
            Level::Super => AmalgamMode::Super,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    /// Composition-union constructor.
    Construct,
    /// Superamalgam search over A ∪ B.
    Oracle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a structure against a theory.
    Validate {
        structure: PathBuf,
        #[arg(long)]
        theory: PathBuf,
    },
    /// Build a superamalgam of a V-formation.
    Amalgamate {
        vformation: PathBuf,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, value_enum, default_value = "construct")]
        mode: Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an amalgam of a V-formation at a level.
    Verify {
        vformation: PathBuf,
        amalgam: PathBuf,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, value_enum)]
        level: Level,
    },
    /// Lift ≪ from a structure D to a poset extension of its order.
    Lift {
        d: PathBuf,
        /// `{"universe": [...], "pairs": [[x, y], ...]}`
        eleq: PathBuf,
        #[arg(long)]
        theory: PathBuf,
    },
    /// Replace ≤ by a linear extension.
    Linearize { structure: PathBuf },
    /// Amalgamate structures whose ≪ linearizes ≤.
    LinearizePipeline {
        vformation: PathBuf,
        #[arg(long)]
        theory: PathBuf,
    },
    /// Exhaustive amalgam search.
    Search {
        vformation: PathBuf,
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, value_enum)]
        level: Level,
        /// Allow identifying points of A \ C with points of B \ C (AP only).
        #[arg(long)]
        identify: bool,
        /// Fresh points beyond A ∪ B.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        /// Seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    #[command(subcommand)]
    Fraisse(FraisseCommand),
    #[command(subcommand)]
    Fixture(FixtureCommand),
}

#[derive(Subcommand, Debug)]
enum FraisseCommand {
    /// Models of a given size up to isomorphism, one per line.
    Enumerate {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        size: usize,
    },
    /// Decide every V-formation with |A|, |B| <= size; one line per theory.
    CheckAp {
        #[arg(long)]
        size: usize,
        /// Defaults to every admissible theory with nonempty models.
        #[arg(long)]
        theory: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "super")]
        level: Level,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Grow a structure towards the extension property.
    Saturate {
        #[arg(long)]
        theory: PathBuf,
        /// Largest substructure size whose extensions must be realized.
        #[arg(long)]
        level: usize,
        /// Largest universe size.
        #[arg(long)]
        budget: usize,
        /// Starting structure; the empty structure if omitted.
        #[arg(long)]
        start: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureCommand {
    List,
    /// Run one fixture, or `all`.
    Run { name: String },
    /// Write every fixture as a JSON file.
    Export {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

/// A command that could not complete, with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    body: Value,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Failure {
        Failure { code: INPUT, body: json!({"error": msg.into()}) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::TimeBudgetExceeded { .. } => BUDGET,
            Error::VerificationFailed(_) => FAILED,
            _ => INPUT,
        };
        let report = match &e {
            Error::NotAModel(r)
            | Error::NotAnEmbedding(r)
            | Error::VerificationFailed(r)
            | Error::NotAPosetExtension(r)
            | Error::NotAPartialOrder(r)
            | Error::NotAPoset(r) => Some(json::report_json(r)),
            _ => None,
        };
        let mut body = json!({"error": e.to_string()});
        if let Some(r) = report {
            body["report"] = r;
        }
        Failure { code, body }
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T, InputError>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| match e {
        InputError::Model(e) => {
            let mut f = Failure::from(e);
            f.code = INPUT;
            f.body["file"] = json!(path.display().to_string());
            f
        }
        e => Failure::input(format!("{}: {e}", path.display())),
    })
}

fn emit(v: &Value) {
    println!("{v}");
}

fn with_report(code_if_bad: i32, r: &amalgam_core::Report) -> i32 {
    emit(&json::report_json(r));
    if r.ok() {
        eprintln!("ok");
        OK
    } else {
        eprintln!("{r}");
        code_if_bad
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { structure, theory } => {
            let t = load(&theory, json::parse_theory)?;
            let s = load(&structure, json::parse_structure)?;
            Ok(with_report(FAILED, &validate(&s, &t)))
        }
        Command::Amalgamate { vformation, theory, mode, out } => {
            let t = load(&theory, json::parse_theory)?;
            let v = load(&vformation, json::parse_vformation)?;
            let w = match mode {
                Method::Construct => amalgamate(&v, &t)?,
                Method::Oracle => {
                    match search_with(&v, &t, AmalgamMode::Super, &SearchConfig::OVER_UNION, &WallClock::new(None), &mut FalseFirst)? {
                        SearchResult::Witness { amalgam, .. } => amalgam,
                        r => {
                            emit(&json::search_json(&r));
                            eprintln!("no superamalgam over A ∪ B");
                            return Ok(FAILED);
                        }
                    }
                }
            };
            let out_json = serde_json::to_value(AmalgamJson::from_amalgam(&w)).expect("serializable");
            if let Some(path) = out {
                fs::write(&path, format!("{out_json:#}\n"))
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            }
            emit(&out_json);
            eprintln!("amalgam with {} points", w.d.len());
            Ok(OK)
        }
        Command::Verify { vformation, amalgam, theory, level } => {
            let t = load(&theory, json::parse_theory)?;
            let v = load(&vformation, json::parse_vformation)?;
            let w = load(&amalgam, json::parse_amalgam)?;
            Ok(with_report(FAILED, &verify(&v, &w, &t, level.into())))
        }
        Command::Lift { d, eleq, theory } => {
            let t = load(&theory, json::parse_theory)?;
            let d = load(&d, json::parse_structure)?;
            let e = load(&eleq, |s| json::parse::<BinRelJson>(s)?.to_binrel())?;
            let ll = lift(&d, &e, &t)?;
            let names = |r: &amalgam_core::BinRel| -> Vec<(String, String)> {
                r.pairs().map(|(x, y)| (x.to_string(), y.to_string())).collect()
            };
            let s = StructureJson {
                universe: e.universe().iter().map(|x| x.to_string()).collect(),
                leq: names(&e),
                ll: names(&ll),
                ..Default::default()
            };
            emit(&serde_json::to_value(&s).expect("serializable"));
            eprintln!("lifted ≪ has {} pairs", ll.len());
            Ok(OK)
        }
        Command::Linearize { structure } => {
            let s = load(&structure, json::parse_structure)?;
            let line = szpilrajn(&s.leq_rel())?;
            emit(&json::structure_value(&s.with_leq(line.relation().clone())));
            Ok(OK)
        }
        Command::LinearizePipeline { vformation, theory } => {
            let t = load(&theory, json::parse_theory)?;
            let v = load(&vformation, json::parse_vformation)?;
            for (name, s) in [("A", v.a()), ("B", v.b()), ("C", v.c())] {
                let r = validate(s, &t);
                if !r.ok() {
                    return Err(Failure {
                        code: INPUT,
                        body: json!({"error": format!("{name} is not a model of the theory"), "report": json::report_json(&r)}),
                    });
                }
            }
            let w = linearize_pipeline(&v)?;
            let r = verify(&v, &w, &t, AmalgamMode::Super);
            if !r.ok() {
                return Err(Error::VerificationFailed(Box::new(r)).into());
            }
            emit(&serde_json::to_value(AmalgamJson::from_amalgam(&w)).expect("serializable"));
            Ok(OK)
        }
        Command::Search { vformation, theory, level, identify, extra, time_budget, max_nodes } => {
            let t = load(&theory, json::parse_theory)?;
            let v = load(&vformation, json::parse_vformation)?;
            let time_budget_ms = match time_budget {
                Some(s) if !(s.is_finite() && s >= 0.0) => return Err(Failure::input("--time-budget must be nonnegative")),
                s => s.map(|s| (s * 1000.0).round() as u64),
            };
            let cfg = SearchConfig { allow_identification: identify, extra_elements: extra, max_nodes, time_budget_ms };
            let r = search_with(&v, &t, level.into(), &cfg, &WallClock::from_millis(time_budget_ms), &mut FalseFirst)?;
            emit(&json::search_json(&r));
            eprintln!("{} after {} nodes", if r.is_witness() { "witness" } else { "exhausted" }, r.nodes());
            Ok(if r.is_witness() { OK } else { FAILED })
        }
        Command::Fraisse(FraisseCommand::Enumerate { theory, size }) => {
            let t = load(&theory, json::parse_theory)?;
            let models = enumerate_models(&t, size)?;
            for m in &models {
                emit(&json::structure_value(m));
            }
            eprintln!("{} models of size {size}", models.len());
            Ok(OK)
        }
        Command::Fraisse(FraisseCommand::CheckAp { size, theory, level, jobs }) => {
            let theories = match theory {
                Some(p) => vec![load(&p, json::parse_theory)?],
                None => standard_theories(),
            };
            check_ap(&theories, size, level.into(), jobs.max(1))
        }
        Command::Fraisse(FraisseCommand::Saturate { theory, level, budget, start }) => {
            let t = load(&theory, json::parse_theory)?;
            let m = match start {
                Some(p) => load(&p, json::parse_structure)?,
                None => Structure::empty(),
            };
            let (out, report) = saturate(&m, &t, level, budget)?;
            emit(&json::saturation_json(&out, &report));
            eprintln!(
                "{} points, {} added, {} realized, {} unrealized{}",
                out.len(),
                report.added,
                report.realized,
                report.unrealized.len(),
                if report.fixpoint { ", fixpoint" } else { "" }
            );
            Ok(if report.fixpoint { OK } else { FAILED })
        }
        Command::Fixture(FixtureCommand::List) => {
            let list: Vec<Value> = fixtures::NAMES
                .iter()
                .map(|n| {
                    let f = fixtures::fixture(n).expect("builtin fixture");
                    json!({"name": f.name, "mode": f.mode.token(), "expected": f.expected.token()})
                })
                .collect();
            emit(&Value::Array(list));
            Ok(OK)
        }
        Command::Fixture(FixtureCommand::Run { name }) => {
            if name == "all" {
                let runs = fixtures::run_all();
                for r in &runs {
                    emit(&run_json(r));
                    eprintln!("{r}");
                }
                return Ok(if runs.iter().all(|r| r.ok()) { OK } else { FAILED });
            }
            let f = fixtures::fixture(&name)?;
            let r = fixtures::run(&f);
            emit(&run_json(&r));
            eprintln!("{r}");
            Ok(match r.observed {
                Observed::Witness(_) => OK,
                Observed::Exhausted { .. } => FAILED,
                Observed::Error(e) => return Err(e.into()),
            })
        }
        Command::Fixture(FixtureCommand::Export { dir }) => {
            fs::create_dir_all(&dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
            let mut written = Vec::new();
            for n in fixtures::NAMES {
                let f = fixtures::fixture(n)?;
                let path = dir.join(format!("{n}.json"));
                fs::write(&path, format!("{:#}\n", json::fixture_json(&f)))
                    .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
                written.push(path.display().to_string());
            }
            emit(&json!(written));
            Ok(OK)
        }
    }
}

fn run_json(r: &fixtures::FixtureRun) -> Value {
    let mut v = json!({"name": r.name, "expected": r.expected.token(), "ok": r.ok()});
    match &r.observed {
        Observed::Witness(w) => {
            v["outcome"] = json!("WITNESS");
            v["amalgam"] = serde_json::to_value(AmalgamJson::from_amalgam(w)).expect("serializable");
        }
        Observed::Exhausted { scope, nodes } => {
            let f = fixtures::fixture(r.name).expect("builtin fixture");
            v["outcome"] = json!("EXHAUSTED");
            v["certificate"] = json!({
                "nodes": nodes,
                "scope": json::scope_token(*scope),
                "bound": json::config_json(&f.config),
                "mode": f.mode.token(),
            });
        }
        Observed::Error(e) => {
            v["outcome"] = json!("ERROR");
            v["error"] = json!(e.to_string());
        }
    }
    v
}

/// Admissible `T_{P,Q,N}` with nonempty models.
fn standard_theories() -> Vec<Theory> {
    let mut out = Vec::new();
    for p in RelProps::all_standard() {
        for q in RelProps::all_standard() {
            for n in Conditions::all() {
                let t = Theory::new(p, q, n);
                if admissible_case(&t).is_ok() && !t.only_empty_models() {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn check_ap(theories: &[Theory], size: usize, mode: AmalgamMode, jobs: usize) -> Outcome {
    let next = AtomicUsize::new(0);
    let results = Mutex::new(vec![None; theories.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.min(theories.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(t) = theories.get(i) else { break };
                let r = check_ap_at_size(t, size, mode, 1);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let mut failing = 0;
    for (t, r) in theories.iter().zip(results.into_inner().unwrap()) {
        let r = r.expect("every theory checked")?;
        if !r.ok() {
            failing += 1;
        }
        emit(&json::ap_report_json(t, &r));
    }
    eprintln!("{} theories, {failing} failing", theories.len());
    Ok(if failing == 0 { OK } else { FAILED })
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT } else { OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            emit(&f.body);
            eprintln!("error: {}", f.body["error"].as_str().unwrap_or("failed"));
            f.code
        }
    }
}
