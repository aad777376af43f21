//! `cliquepf` — command-line front end for the clique partition function engine.
//!
//! Reports go to stdout (JSON by default); diagnostics go to stderr via `RUST_LOG`.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cliquepf_core::audit::{audit_min_modulus_with, sample_polydisc_with_radius, ZeroFreeConstants};
use cliquepf_core::density::{max_decision_bound, TIE_TOLERANCE};
use cliquepf_core::io::parse_graph;
use cliquepf_core::oracle::Oracle;
use cliquepf_core::taylor::estimate_ln_partition;
use cliquepf_core::{
    binomial, decide_density, density_functional_estimate, extract_dense_subset, order_for_target, parse_rational,
    weights_from_graph, AlgorithmParams, AnchorSet, EngineConfig, Error, Graph, Regime, ScalarMode, TruncationPlan,
};
use log::info;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "cliquepf", version, about = "Approximate clique partition functions and dense-subset decisions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate ln P_m(W) for the weights induced by a graph.
    Pf(EngineArgs),
    /// Estimate ln Density_m(G).
    Density(EngineArgs),
    /// Decide whether an m-subset of density >= sigma exists, or few reach sigma + eps.
    Decide {
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        eps: f64,
    },
    /// Greedily extract an m-subset of near-average density.
    Extract(EngineArgs),
    /// Exact values by exhaustive enumeration (small graphs only).
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Largest n the enumeration accepts.
        #[arg(long, default_value_t = 20)]
        cap: usize,
    },
    /// Sample the zero-free polydisc and report the smallest |P_m(Z)|.
    Audit(AuditArgs),
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Graph file: edge list (`n <count>` then `u v` lines) or DIMACS (`p edge n e`).
    input: PathBuf,
    #[arg(long)]
    m: usize,
    /// Weight deviation parameter; exact rational or decimal, defaults to the regime maximum.
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long, value_enum, default_value_t = RegimeArg::Standard)]
    regime: RegimeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Taylor order l.
    #[arg(long, conflicts_with = "target_eps")]
    order: Option<usize>,
    /// Use the smallest order whose additive error bound is at most this value.
    #[arg(long)]
    target_eps: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value_t = RegimeArg::Standard)]
    regime: RegimeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Override the polydisc radius (exploratory: no pass/fail is asserted).
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 20)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RegimeArg {
    Standard,
    LargeGap,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Standard => Regime::Standard,
            RegimeArg::LargeGap => Regime::LargeGap,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for ScalarMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => ScalarMode::Exact,
            ModeArg::Float => ScalarMode::Float,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

/// Process exit statuses.
mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const PARAMS: u8 = 3;
    pub const CAP: u8 = 4;
    pub const REFUSED: u8 = 5;
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Graph(_) | Error::Input(_) => exit::PARSE,
        Error::Parameter(_) | Error::Regime { .. } | Error::Domain(_) => exit::PARAMS,
        Error::CapExceeded { .. } => exit::CAP,
        Error::Refused { .. } => exit::REFUSED,
        Error::Degenerate => exit::FAILURE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(exit::PARAMS);
        }
    };
    match run(cli.command) {
        Ok((report, format, status)) => {
            println!("{}", report::render(&report, format == Format::Text));
            ExitCode::from(status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> Result<(Value, Format, u8), Error> {
    match command {
        Command::Pf(args) => pf(&args).map(|r| (r, args.instance.format, exit::OK)),
        Command::Density(args) => density(&args).map(|r| (r, args.instance.format, exit::OK)),
        Command::Decide { engine, sigma, eps } => {
            decide(&engine, sigma, eps).map(|r| (r, engine.instance.format, exit::OK))
        }
        Command::Extract(args) => extract(&args).map(|r| (r, args.instance.format, exit::OK)),
        Command::Oracle { instance, cap } => oracle(&instance, cap).map(|r| (r, instance.format, exit::OK)),
        Command::Audit(args) => audit(&args).map(|(r, ok)| (r, args.format, if ok { exit::OK } else { exit::FAILURE })),
    }
}

struct Instance {
    path: PathBuf,
    graph: Graph,
    params: AlgorithmParams,
}

impl Instance {
    fn load(args: &InstanceArgs) -> Result<Self, Error> {
        let graph = read_graph(&args.input)?;
        let regime = Regime::from(args.regime);
        let params = match &args.gamma {
            Some(text) => AlgorithmParams::with_gamma(args.m, regime, parse_rational(text)?)?,
            None => AlgorithmParams::new(args.m, regime)?,
        };
        params.validate_for(graph.n())?;
        info!("loaded graph with n = {}, {} edges", graph.n(), graph.edge_count());
        Ok(Instance { path: args.input.clone(), graph, params })
    }

    fn describe(&self) -> Value {
        json!({
            "input": self.path.display().to_string(),
            "graph": self.graph,
            "params": self.params,
        })
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Resolved Taylor order plus how it was chosen.
struct OrderChoice {
    order: usize,
    target_eps: Option<f64>,
}

fn choose_order(args: &EngineArgs, p: &AlgorithmParams, default_target: f64) -> Result<OrderChoice, Error> {
    match (args.order, args.target_eps) {
        (Some(order), _) => Ok(OrderChoice { order, target_eps: None }),
        (None, target) => {
            let target = target.unwrap_or(default_target);
            let order = order_for_target(p.m(), p.beta_f64(), target)?;
            info!("order {order} certifies additive error {target}");
            Ok(OrderChoice { order, target_eps: Some(target) })
        }
    }
}

fn engine_config(args: &EngineArgs) -> Result<EngineConfig, Error> {
    if args.workers == 0 {
        return Err(Error::Parameter("--workers must be at least 1".into()));
    }
    Ok(EngineConfig { mode: args.mode.into(), workers: args.workers })
}

fn engine_inputs(inst: &Instance, choice: &OrderChoice, cfg: &EngineConfig) -> Value {
    let mut v = inst.describe();
    v["order"] = json!(choice.order);
    v["target_eps"] = json!(choice.target_eps);
    v["mode"] = json!(cfg.mode);
    v["workers"] = json!(cfg.workers);
    v
}

fn pf(args: &EngineArgs) -> Result<Value, Error> {
    let inst = Instance::load(&args.instance)?;
    let p = &inst.params;
    let choice = choose_order(args, p, max_decision_bound())?;
    let cfg = engine_config(args)?;
    let plan = TruncationPlan::new(p.m(), p.beta_f64(), choice.order)?;
    let w = weights_from_graph(&inst.graph, p)?;
    let est = estimate_ln_partition(&w, p.m(), &AnchorSet::empty(), &plan, cfg.mode, cfg.workers)?;
    Ok(json!({
        "command": "pf",
        "inputs": engine_inputs(&inst, &choice, &cfg),
        "result": {
            "ln_pf": est.log,
            "relative_error_bound": est.log.relative_certificate(),
            "ln_base": est.ln_base,
            "series_exact": est.series_exact,
        },
    }))
}

fn density(args: &EngineArgs) -> Result<Value, Error> {
    let inst = Instance::load(&args.instance)?;
    let choice = choose_order(args, &inst.params, max_decision_bound())?;
    let cfg = engine_config(args)?;
    let est = density_functional_estimate(&inst.graph, &inst.params, choice.order, &cfg)?;
    Ok(json!({
        "command": "density",
        "inputs": engine_inputs(&inst, &choice, &cfg),
        "result": {
            "ln_density": est.log,
            "relative_error_bound": est.log.relative_certificate(),
            "ln_prefactor": est.ln_prefactor,
            "ln_pf": est.partition.log,
            "series_exact": est.partition.series_exact,
        },
    }))
}

fn decide(args: &EngineArgs, sigma: f64, eps: f64) -> Result<Value, Error> {
    let inst = Instance::load(&args.instance)?;
    let choice = choose_order(args, &inst.params, max_decision_bound())?;
    let cfg = engine_config(args)?;
    let v = decide_density(&inst.graph, &inst.params, sigma, eps, choice.order, &cfg)?;
    let mut inputs = engine_inputs(&inst, &choice, &cfg);
    inputs["sigma"] = json!(sigma);
    inputs["eps"] = json!(eps);
    Ok(json!({ "command": "decide", "inputs": inputs, "result": v }))
}

fn extract(args: &EngineArgs) -> Result<Value, Error> {
    let inst = Instance::load(&args.instance)?;
    let m = inst.params.m();
    // per-step error budget under which m greedy steps lose at most a factor 2
    let default_target = (2f64.ln() - m as f64 * TIE_TOLERANCE) / (2.0 * m as f64);
    let choice = choose_order(args, &inst.params, default_target)?;
    let cfg = engine_config(args)?;
    let ex = extract_dense_subset(&inst.graph, &inst.params, choice.order, &cfg)?;
    let subset: Vec<usize> = ex.subset.iter().map(|v| v + 1).collect();
    Ok(json!({
        "command": "extract",
        "inputs": engine_inputs(&inst, &choice, &cfg),
        "result": {
            "subset": subset,
            "density": inst.graph.density(&ex.subset),
            "edges_within": inst.graph.edges_within(&ex.subset),
            "ln_restricted_pf": ex.certificate,
            "step_values": ex.step_values,
        },
    }))
}

fn oracle(args: &InstanceArgs, cap: usize) -> Result<Value, Error> {
    let inst = Instance::load(args)?;
    let p = &inst.params;
    let oracle = Oracle::with_cap(cap);
    let w = weights_from_graph(&inst.graph, p)?;
    let pf = oracle.partition_function(&w, p.m())?;
    let hist = oracle.density_histogram(&inst.graph, p.m())?;
    let mut inputs = inst.describe();
    inputs["cap"] = json!(cap);
    Ok(json!({
        "command": "oracle",
        "inputs": inputs,
        "result": {
            "pf_exact": pf.to_string(),
            "ln_pf": cliquepf_core::scalar::rational_to_f64(&pf).ln(),
            "ln_density": hist.ln_density(p),
            "density_rational_part_exact": hist.density_rational_part(p).to_string(),
            "max_density": hist.max_density(),
            "edge_count_histogram": hist.counts,
            "subsets": binomial(inst.graph.n() as u64, p.m() as i64).to_string(),
        },
    }))
}

fn audit(args: &AuditArgs) -> Result<(Value, bool), Error> {
    if args.workers == 0 {
        return Err(Error::Parameter("--workers must be at least 1".into()));
    }
    if args.m < 2 || args.m > args.n {
        return Err(Error::Parameter(format!("need 2 <= m <= n (got m = {}, n = {})", args.m, args.n)));
    }
    let constants = ZeroFreeConstants::for_regime(args.regime.into(), args.m)?;
    let radius = args.radius.unwrap_or_else(|| constants.delta());
    let oracle = Oracle::with_cap(args.cap);
    let samples = sample_polydisc_with_radius(args.n, radius, args.count, args.seed)?;
    let outcome = audit_min_modulus_with(&samples, args.m, args.workers, &oracle)?;
    let scale = binomial(args.n as u64, args.m as i64).to_f64().unwrap_or(f64::INFINITY);
    // at the zero-free radius the minimum must stay clear of zero; an overridden radius is exploratory
    let passed = args.radius.is_none().then_some(outcome.min_modulus > 1e-9 * scale);
    let argmin: Vec<Value> =
        samples[outcome.argmin].upper_triangle().into_iter().map(|(i, j, re, im)| json!([i, j, re, im])).collect();
    let report = json!({
        "command": "audit",
        "inputs": {
            "n": args.n,
            "m": args.m,
            "regime": Regime::from(args.regime),
            "seed": args.seed,
            "count": args.count,
            "radius": radius,
            "radius_overridden": args.radius.is_some(),
            "workers": args.workers,
            "cap": args.cap,
        },
        "result": {
            "constants": constants,
            "min_modulus": outcome.min_modulus,
            "min_modulus_over_subsets": outcome.min_modulus / scale,
            "argmin": outcome.argmin,
            "argmin_sample": argmin,
            "evaluated": outcome.evaluated,
            "passed": passed,
        },
    });
    Ok((report, passed != Some(false)))
}
