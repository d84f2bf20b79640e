//! `setpair` — solve, evaluate, check, sweep, and enumerate commands for the
//! set-pair graph-cut toolkit.
//!
//! Machine-readable JSON goes to stdout (one object per invocation, CSV for
//! `sweep`, JSON lines for `enumerate`); human-readable summaries including
//! wall time go to stderr. Exit codes: 0 success, 1 failed check, 2
//! parse/validation error, 3 size-guard violation. `SETPAIR_THREADS` caps
//! the rayon worker count.

mod inputs;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use rand_distr::StandardNormal;
use serde_json::{json, Map, Value};

use setpair::cuts::{CutError, CutKind, CutProblem, Sense, Witness};
use setpair::functionals::{table_extension_closed, table_function, Functional, TableRow};
use setpair::graph::Graph;
use setpair::kcut;
use setpair::lovasz::{extension_properties_check, SetPairFunction, TabulatedPairFn};
use setpair::relax::{multi_start_solve, threshold_round, DescentOpts};
use setpair::submodular::{
    check_nested_submodular, check_pair_submodular, check_partial_submodular,
    check_strict_submodular, convexity_probe, original_convexity_probe,
    original_submodular_check, sqrt_cardinality, CheckReport, NestedCondition, NestedView,
    ProbeReport, ViolationCertificate, ViolationKind,
};
use setpair::VertexSet;

use inputs::{load_block_vector, load_graph, load_vector, parse_partition, parse_witness, WitnessArg};
use output::{json_value, pair_json, put_value, witness_json};

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 2 }
    }

    pub fn guard(message: impl Into<String>) -> Self {
        CliError { message: message.into(), code: 3 }
    }

    fn from_cut_error(e: CutError) -> Self {
        match e {
            CutError::GuardExceeded { .. } => CliError::guard(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }

    fn from_kcut_error(e: kcut::KcutError) -> Self {
        match e {
            kcut::KcutError::GuardExceeded { .. } => CliError::guard(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Parser)]
#[command(name = "setpair", version, about = "Graph cuts via set-pair Lovász extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a cut problem (oracle enumeration or continuous relaxation)
    Solve {
        /// dual-cheeger | max3cut | ratio-max3cut-1 | ratio-max3cut-2 |
        /// maxcut | cheeger | anti-cheeger | kcut
        kind: String,
        #[arg(long)]
        graph: PathBuf,
        /// oracle | relax
        #[arg(long, default_value = "oracle")]
        method: String,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of parts (kcut only)
        #[arg(long)]
        k: Option<usize>,
        /// min | max (kcut only; defaults to min)
        #[arg(long)]
        sense: Option<String>,
        #[arg(long, default_value_t = 100)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Evaluate a functional, closed-form extension, or problem objective
    Eval {
        /// I | Iplus | Ihat | norm | sup-norm | median-dev | F1L..G3L |
        /// a problem kind | kcut-fl | kcut-gl | kcut-ratio
        name: String,
        #[arg(long)]
        graph: PathBuf,
        /// Vector: a file path or inline "(1,-1,0)"; for kcut-* a block
        /// vector with ';' between blocks
        #[arg(long)]
        vector: Option<String>,
        /// Witness JSON {"a":[..],"b":[..]} (optionally "c") to evaluate the
        /// discrete objective instead
        #[arg(long)]
        pair: Option<String>,
        /// Partition JSON {"parts":[[..],..]} for kcut
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a submodularity / convexity / property check
    Check {
        /// pair-submodular | strict | partial | nested-lattice |
        /// nested-corrected | convexity | properties | original
        check: String,
        /// Tabulated function file ("code value" lines; requires --n)
        #[arg(long)]
        function: Option<PathBuf>,
        /// sqrt-card (requires --n) | F1 | F2 | G1 | G2 | G3 | cut (require --graph)
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a CSV of continuous vs rounded values at random vectors
    Sweep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List all 3^n disjoint set-pairs as JSON lines
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let threads = std::env::var("SETPAIR_THREADS").ok().and_then(|s| s.parse::<usize>().ok());
    let run = || match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    };
    let code = match threads {
        Some(t) if t > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool construction")
            .install(run),
        _ => run(),
    };
    std::process::exit(code);
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Solve { kind, graph, method, restarts, seed, k, sense, max_iters, tol } => {
            cmd_solve(&kind, &graph, &method, restarts, seed, k, sense.as_deref(), max_iters, tol)
        }
        Command::Eval { name, graph, vector, pair, partition, k } => {
            cmd_eval(&name, &graph, vector.as_deref(), pair.as_deref(), partition.as_deref(), k)
        }
        Command::Check { check, function, builtin, graph, n, trials, seed } => {
            cmd_check(&check, function.as_deref(), builtin.as_deref(), graph.as_deref(), n, trials, seed)
        }
        Command::Sweep { graph, problem, samples, seed } => {
            cmd_sweep(&graph, &problem, samples, seed)
        }
        Command::Enumerate { n } => cmd_enumerate(n),
    }
}

fn graph_digest(g: &Graph) -> Value {
    let weight_sum: f64 = g.edges().iter().map(|e| e.w).sum();
    json!({ "n": g.n(), "m": g.m(), "weight_checksum": json_value(weight_sum) })
}

fn emit(record: Map<String, Value>) {
    println!("{}", Value::Object(record));
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    kind: &str,
    graph_path: &PathBuf,
    method: &str,
    restarts: usize,
    seed: u64,
    k: Option<usize>,
    sense: Option<&str>,
    max_iters: usize,
    tol: f64,
) -> Result<i32, CliError> {
    let start = Instant::now();
    let g = load_graph(graph_path)?;
    let mut record = Map::new();
    record.insert("command".into(), json!("solve"));
    record.insert("kind".into(), json!(kind));
    record.insert("graph".into(), graph_digest(&g));
    record.insert("method".into(), json!(method));

    if kind == "kcut" {
        let k = k.ok_or_else(|| CliError::usage("kcut requires --k"))?;
        let sense: Sense = sense
            .unwrap_or("min")
            .parse()
            .map_err(CliError::usage)?;
        if method != "oracle" {
            return Err(CliError::usage("kcut supports --method oracle only"));
        }
        record.insert("params".into(), json!({ "k": k, "sense": sense.to_string() }));
        let result = kcut::kcut_discrete(&g, k, sense).map_err(CliError::from_cut_error)?;
        put_value(&mut record, "value", result.value);
        record.insert("witness".into(), witness_json(&result.witness));
        record.insert("evaluations".into(), json!(result.evaluations));
        emit(record);
        eprintln!(
            "solve kcut k={k} {sense}: value {} ({} candidates, {:.1} ms)",
            output::round_sig10(result.value),
            result.evaluations,
            start.elapsed().as_secs_f64() * 1e3
        );
        return Ok(0);
    }

    let cut_kind: CutKind = kind.parse().map_err(CliError::usage)?;
    let problem = CutProblem::new(cut_kind, Arc::clone(&g));
    match method {
        "oracle" => {
            record.insert("params".into(), json!({}));
            let result = problem.discrete_optimum().map_err(CliError::from_cut_error)?;
            put_value(&mut record, "value", result.value);
            record.insert("witness".into(), witness_json(&result.witness));
            record.insert("evaluations".into(), json!(result.evaluations));
            emit(record);
            eprintln!(
                "solve {kind} (oracle): value {} ({} candidates, {:.1} ms)",
                output::round_sig10(result.value),
                result.evaluations,
                start.elapsed().as_secs_f64() * 1e3
            );
            Ok(0)
        }
        "relax" => {
            if restarts == 0 {
                return Err(CliError::usage("--restarts must be at least 1"));
            }
            record.insert(
                "params".into(),
                json!({ "restarts": restarts, "seed": seed, "max_iters": max_iters, "tol": tol }),
            );
            let ratio = problem.pair_ratio_problem();
            let opts = DescentOpts { max_iters, tol };
            let report = multi_start_solve(&ratio, g.n(), restarts, seed, &opts)
                .map_err(|e| CliError::usage(e.to_string()))?;
            put_value(&mut record, "value", report.best_value);
            record.insert("witness".into(), pair_json(&report.rounded));
            record.insert("iterations".into(), json!(report.iterations));
            record.insert("starts".into(), json!(report.starts));
            emit(record);
            eprintln!(
                "solve {kind} (relax): value {} ({} starts, {} iterations, {:.1} ms)",
                output::round_sig10(report.best_value),
                report.starts,
                report.iterations,
                start.elapsed().as_secs_f64() * 1e3
            );
            Ok(0)
        }
        other => Err(CliError::usage(format!("unknown method {other:?} (oracle | relax)"))),
    }
}

fn eval_discrete_witness(
    problem: &CutProblem,
    arg: WitnessArg,
) -> Result<(f64, Value), CliError> {
    let kind = problem.kind();
    match arg {
        WitnessArg::Triple(parts) => {
            if !kind.enumerates_pairs() || kind == CutKind::DualCheeger {
                return Err(CliError::usage(format!(
                    "{kind} takes a pair witness, not a triple"
                )));
            }
            let w = Witness::Triple(parts);
            let v = problem.discrete_value(&w).map_err(CliError::from_cut_error)?;
            Ok((v, witness_json(&w)))
        }
        WitnessArg::Pair(p) => {
            if kind == CutKind::DualCheeger {
                let w = Witness::Pair(p);
                let v = problem.discrete_value(&w).map_err(CliError::from_cut_error)?;
                return Ok((v, witness_json(&w)));
            }
            if !kind.enumerates_pairs() && *p.b() == p.a().complement() {
                // (S, S^c) is the canonical witness form for 2-cut kinds.
                let w = Witness::Set(p.a().clone());
                let v = problem.discrete_value(&w).map_err(CliError::from_cut_error)?;
                return Ok((v, witness_json(&w)));
            }
            // Any other disjoint pair: the set-pair ratio form.
            let ratio = problem.pair_ratio_problem();
            let v = ratio
                .discrete_ratio(&p)
                .ok_or_else(|| CliError::usage(format!("{kind}: pair is infeasible")))?;
            Ok((v, pair_json(&p)))
        }
    }
}

fn cmd_eval(
    name: &str,
    graph_path: &PathBuf,
    vector: Option<&str>,
    pair: Option<&str>,
    partition: Option<&str>,
    k: Option<usize>,
) -> Result<i32, CliError> {
    let start = Instant::now();
    let g = load_graph(graph_path)?;
    let n = g.n();
    let mut record = Map::new();
    record.insert("command".into(), json!("eval"));
    record.insert("name".into(), json!(name));
    record.insert("graph".into(), graph_digest(&g));

    // kcut evaluators take block vectors / partitions.
    if let Some(stripped) = name.strip_prefix("kcut-") {
        let k = k.ok_or_else(|| CliError::usage("kcut evaluators require --k"))?;
        record.insert("k".into(), json!(k));
        if let Some(text) = partition {
            let p = parse_partition(text, n)?;
            let v = kcut::kcut_discrete_value(&g, &p).map_err(CliError::from_kcut_error)?;
            put_value(&mut record, "value", v);
            emit(record);
            return Ok(0);
        }
        let spec = vector.ok_or_else(|| CliError::usage("kcut evaluators require --vector"))?;
        let x = load_block_vector(spec, n)?;
        let v = match stripped {
            "fl" => kcut::kcut_fl(&g, k, &x),
            "gl" => kcut::kcut_gl(&g, k, &x),
            "ratio" => kcut::kcut_ratio(&g, k, &x),
            other => return Err(CliError::usage(format!("unknown kcut evaluator {other:?}"))),
        }
        .map_err(CliError::from_kcut_error)?;
        put_value(&mut record, "value", v);
        emit(record);
        eprintln!("eval {name}: {} ({:.1} ms)", output::round_sig10(v), start.elapsed().as_secs_f64() * 1e3);
        return Ok(0);
    }

    if let Ok(kind) = name.parse::<CutKind>() {
        let problem = CutProblem::new(kind, Arc::clone(&g));
        if let Some(text) = pair {
            let arg = parse_witness(text, n)?;
            let (v, wjson) = eval_discrete_witness(&problem, arg)?;
            put_value(&mut record, "value", v);
            record.insert("witness".into(), wjson);
            emit(record);
            eprintln!("eval {name} at witness: {}", output::round_sig10(v));
            return Ok(0);
        }
        let spec = vector.ok_or_else(|| CliError::usage("objective eval requires --vector or --pair"))?;
        let x = load_vector(spec, n)?;
        let v = problem.continuous_objective(&x).map_err(|e| CliError::usage(e.to_string()))?;
        put_value(&mut record, "value", v);
        let ratio = problem.pair_ratio_problem();
        if let Ok(rounded) = threshold_round(&ratio, &x) {
            record.insert("rounded".into(), pair_json(&rounded.pair));
            put_value(&mut record, "rounded_value", rounded.value);
        }
        emit(record);
        eprintln!("eval {name}: {} ({:.1} ms)", output::round_sig10(v), start.elapsed().as_secs_f64() * 1e3);
        return Ok(0);
    }

    let spec = vector.ok_or_else(|| CliError::usage("eval requires --vector"))?;
    let x = load_vector(spec, n)?;
    if let Ok(f) = name.parse::<Functional>() {
        let v = f.evaluate(&g, &x);
        put_value(&mut record, "value", v);
        if f == Functional::MedianDev {
            let md = setpair::functionals::median_dev(&g, &x);
            record.insert("minimizer".into(), json_value(md.minimizer));
        }
        emit(record);
        eprintln!("eval {name}: {}", output::round_sig10(v));
        return Ok(0);
    }
    if let Some(row_name) = name.strip_suffix('L') {
        if let Ok(row) = row_name.parse::<TableRow>() {
            let v = table_extension_closed(&g, row, &x);
            put_value(&mut record, "value", v);
            emit(record);
            eprintln!("eval {name}: {}", output::round_sig10(v));
            return Ok(0);
        }
    }
    Err(CliError::usage(format!("unknown eval target {name:?}")))
}

fn certificate_json(cert: &ViolationCertificate) -> Value {
    let kind = match cert.kind {
        ViolationKind::PairSubmodular => "pair-submodular",
        ViolationKind::StrictComparability => "strict-comparability",
        ViolationKind::PartialFirstSlot => "partial-first-slot",
        ViolationKind::PartialSecondSlot => "partial-second-slot",
        ViolationKind::NestedLattice => "nested-lattice",
        ViolationKind::NestedCorrected => "nested-corrected",
        ViolationKind::OriginalSubmodular => "original-submodular",
    };
    json!({
        "kind": kind,
        "first": pair_json(&cert.first),
        "second": pair_json(&cert.second),
        "lhs": json_value(cert.lhs),
        "rhs": json_value(cert.rhs),
    })
}

enum CheckFn {
    Pair(Box<dyn SetPairFunction>, usize),
    Cut(Arc<Graph>),
}

fn resolve_check_function(
    function: Option<&std::path::Path>,
    builtin: Option<&str>,
    graph: Option<&std::path::Path>,
    n: Option<usize>,
) -> Result<CheckFn, CliError> {
    match (function, builtin) {
        (Some(path), None) => {
            let n = n.ok_or_else(|| CliError::usage("--function requires --n"))?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let f = TabulatedPairFn::parse_str(n, &text)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            Ok(CheckFn::Pair(Box::new(f), n))
        }
        (None, Some(name)) => match name {
            "sqrt-card" => {
                let n = n.ok_or_else(|| CliError::usage("sqrt-card requires --n"))?;
                Ok(CheckFn::Pair(Box::new(sqrt_cardinality), n))
            }
            "cut" => {
                let path = graph.ok_or_else(|| CliError::usage("builtin cut requires --graph"))?;
                Ok(CheckFn::Cut(load_graph(path)?))
            }
            row => match row.parse::<TableRow>() {
                Ok(row) => {
                    let path =
                        graph.ok_or_else(|| CliError::usage("table builtins require --graph"))?;
                    let g = load_graph(path)?;
                    let n = g.n();
                    Ok(CheckFn::Pair(Box::new(table_function(&g, row)), n))
                }
                Err(_) => Err(CliError::usage(format!("unknown builtin {name:?}"))),
            },
        },
        _ => Err(CliError::usage("provide exactly one of --function or --builtin")),
    }
}

fn cmd_check(
    check: &str,
    function: Option<&std::path::Path>,
    builtin: Option<&str>,
    graph: Option<&std::path::Path>,
    n: Option<usize>,
    trials: usize,
    seed: u64,
) -> Result<i32, CliError> {
    let resolved = resolve_check_function(function, builtin, graph, n)?;
    let mut record = Map::new();
    record.insert("command".into(), json!("check"));
    record.insert("check".into(), json!(check));

    let finish_report = |mut record: Map<String, Value>, report: CheckReport| -> i32 {
        match report {
            CheckReport::Pass => {
                record.insert("result".into(), json!("pass"));
                emit(record);
                eprintln!("check: pass");
                0
            }
            CheckReport::Fail(cert) => {
                record.insert("result".into(), json!("fail"));
                record.insert("certificate".into(), certificate_json(&cert));
                emit(record);
                eprintln!("check: FAIL ({} vs {})", cert.lhs, cert.rhs);
                1
            }
        }
    };

    match (check, resolved) {
        ("original", CheckFn::Cut(g)) => {
            let n = g.n();
            let cut = move |s: &VertexSet| g.boundary_weight(s);
            record.insert("n".into(), json!(n));
            let report = original_submodular_check(&cut, n);
            if report.is_pass() {
                // pair the exhaustive check with a midpoint probe
                let probe = original_convexity_probe(&cut, n, trials, seed);
                if let ProbeReport::Fail(w) = probe {
                    record.insert("result".into(), json!("fail"));
                    record.insert(
                        "probe_witness".into(),
                        json!({ "x": w.x, "y": w.y, "midpoint": json_value(w.midpoint_value),
                                "average": json_value(w.average_value) }),
                    );
                    emit(record);
                    return Ok(1);
                }
            }
            Ok(finish_report(record, report))
        }
        ("original", CheckFn::Pair(..)) => {
            Err(CliError::usage("original check takes --builtin cut --graph FILE"))
        }
        (_, CheckFn::Cut(_)) => {
            Err(CliError::usage("builtin cut is only valid for the original check"))
        }
        (name, CheckFn::Pair(f, n)) => {
            record.insert("n".into(), json!(n));
            match name {
                "pair-submodular" => Ok(finish_report(record, check_pair_submodular(&*f, n))),
                "strict" => Ok(finish_report(record, check_strict_submodular(&*f, n))),
                "partial" => Ok(finish_report(record, check_partial_submodular(&*f, n))),
                "nested-lattice" => {
                    let nested = NestedView::new(&*f);
                    Ok(finish_report(record, check_nested_submodular(&nested, n, NestedCondition::Lattice)))
                }
                "nested-corrected" => {
                    let nested = NestedView::new(&*f);
                    Ok(finish_report(record, check_nested_submodular(&nested, n, NestedCondition::Corrected)))
                }
                "convexity" => {
                    let probe = convexity_probe(&*f, n, trials, seed)
                        .map_err(|e| CliError::usage(e.to_string()))?;
                    match probe {
                        ProbeReport::Pass => {
                            record.insert("result".into(), json!("pass"));
                            emit(record);
                            Ok(0)
                        }
                        ProbeReport::Fail(w) => {
                            record.insert("result".into(), json!("fail"));
                            record.insert(
                                "witness".into(),
                                json!({ "x": w.x, "y": w.y,
                                        "midpoint": json_value(w.midpoint_value),
                                        "average": json_value(w.average_value) }),
                            );
                            emit(record);
                            Ok(1)
                        }
                    }
                }
                "properties" => {
                    let report = extension_properties_check(&*f, n, trials.max(1), seed);
                    let mut rep = Map::new();
                    rep.insert("homogeneity".into(), json_value(report.homogeneity));
                    rep.insert("sign_shift".into(), json_value(report.sign_shift));
                    rep.insert("additivity".into(), json_value(report.additivity));
                    rep.insert("scaling".into(), json_value(report.scaling));
                    rep.insert("evenness".into(), json_value(report.evenness));
                    record.insert("report".into(), Value::Object(rep));
                    let hint = f.symmetric_hint();
                    let pass = report.linear_identities_within(1e-9)
                        && match hint {
                            Some(true) => report.evenness <= 1e-9,
                            _ => true,
                        };
                    record.insert("result".into(), json!(if pass { "pass" } else { "fail" }));
                    emit(record);
                    Ok(if pass { 0 } else { 1 })
                }
                other => Err(CliError::usage(format!("unknown check {other:?}"))),
            }
        }
    }
}

fn cmd_sweep(graph_path: &PathBuf, problem: &str, samples: usize, seed: u64) -> Result<i32, CliError> {
    let g = load_graph(graph_path)?;
    let n = g.n();
    let kind: CutKind = problem.parse().map_err(CliError::usage)?;
    let cut = CutProblem::new(kind, Arc::clone(&g));
    let ratio = cut.pair_ratio_problem();
    let sense = kind.sense();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    println!("sample,continuous,rounded,gap");
    for s in 0..samples {
        // Deterministic resampling: keep drawing from the seeded stream
        // until the vector is feasible for both evaluations.
        let mut attempts = 0;
        let (cont, rounded) = loop {
            let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            if let Ok(c) = cut.continuous_objective(&x) {
                if let Ok(r) = threshold_round(&ratio, &x) {
                    break (c, r.value);
                }
            }
            attempts += 1;
            if attempts > 100 {
                return Err(CliError::usage(format!(
                    "could not draw a feasible vector for {kind}"
                )));
            }
        };
        let gap = match sense {
            Sense::Max => rounded - cont,
            Sense::Min => cont - rounded,
        };
        println!(
            "{s},{},{},{}",
            output::round_sig10(cont),
            output::round_sig10(rounded),
            output::round_sig10(gap)
        );
    }
    eprintln!("sweep {problem}: {samples} samples");
    Ok(0)
}

fn cmd_enumerate(n: usize) -> Result<i32, CliError> {
    let pairs = setpair::setpair::enumerate_setpairs(n)
        .map_err(|e| CliError::guard(e.to_string()))?;
    let mut out = String::new();
    for p in pairs {
        out.push_str(&serde_json::to_string(&p).expect("pair serializes"));
        out.push('\n');
    }
    print!("{out}");
    Ok(0)
}
