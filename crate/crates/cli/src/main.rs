mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use landau_zener::compression::benchmark_compression;
use landau_zener::experiments::{floored_log10, SweepResult};
use landau_zener::propagation::{default_sample_every, propagate, Evaluation, Scheme};
use landau_zener::{
    oscillation_analysis, phase_comparison, run_pipeline, sweep_dt, sweep_tmax, Engine, FactorForm, LZParams, Method,
    PipelineSpec, PropagationMode, RunMetadata, State2, SweepOptions, TimeGrid,
};
use serde_json::json;

use crate::config::{parse_list, Settings};
use crate::error::CliError;
use crate::output::{suffixed, write_atomic, write_json, write_sidecar};

const AFTER_HELP: &str = "\
Units: ħ = 1 by default, so times are in units of ħ/δ₀ and energies in units of δ₀;
v has units of energy per time. The closed-form reference is exp(−πδ²/(ħv))
with ħ = 1 in the defaults, i.e. exp(−πδ²/v).

Settings are resolved as: command-line flag > LZ_* environment variable >
--config file > built-in default. Each flag FOO-BAR has the variable LZ_FOO_BAR
and the config key foo-bar (or foo_bar). The config file is flat `key = value`
with `#` comments. The effective settings are echoed in the JSON sidecar
written next to every output.

Exit status: 0 success, 1 computation failure, 2 invalid input, 3 I/O failure.";

#[derive(Parser, Debug)]
#[command(name = "lz", version, about = "Landau-Zener transitions by Trotterized propagation with perturbative tails")]
#[command(after_help = AFTER_HELP)]
struct Cli {
    /// Flat `key = value` settings file, below flags and LZ_* variables in precedence
    #[arg(long, global = true, env = "LZ_CONFIG", value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Propagate one pipeline and write the sampled P₊(t), P₋(t) trace
    #[command(allow_negative_numbers = true, after_help = AFTER_HELP)]
    Trace(TraceArgs),
    /// Error of P₊(∞) against the closed form as a function of the time step
    #[command(name = "sweep-dt", allow_negative_numbers = true, after_help = AFTER_HELP)]
    SweepDt(SweepDtArgs),
    /// Error of P₊(∞) against the closed form as a function of the window half-width
    #[command(name = "sweep-tmax", allow_negative_numbers = true, after_help = AFTER_HELP)]
    SweepTmax(SweepTmaxArgs),
    /// ⟨ψ₋|ψ(t)⟩ from a far unperturbed start against the tail state at each t
    #[command(name = "phase-compare", allow_negative_numbers = true, after_help = AFTER_HELP)]
    PhaseCompare(PhaseArgs),
    /// Local maxima of the unperturbed P₊(t) for t > 5 and their spacing in v·t²
    #[command(allow_negative_numbers = true, after_help = AFTER_HELP)]
    Oscillations(OscillationArgs),
    /// Time and accuracy of nearest-neighbour and XZX compression of a Trotter product
    #[command(name = "compress-bench", allow_negative_numbers = true, after_help = AFTER_HELP)]
    CompressBench(BenchArgs),
}

#[derive(Args, Debug)]
struct PhysicsArgs {
    /// Sweep rate v in H = vtσ_z + δσ_x, energy per time [default: π]
    #[arg(long, env = "LZ_V")]
    v: Option<f64>,
    /// Coupling δ, energy [default: 1]
    #[arg(long, env = "LZ_DELTA")]
    delta: Option<f64>,
    /// Reduced Planck constant ħ, energy × time [default: 1]
    #[arg(long, env = "LZ_HBAR")]
    hbar: Option<f64>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Window half-width T_max; propagation runs over [−T_max, T_max], time [default: 30]
    #[arg(long, env = "LZ_T_MAX")]
    t_max: Option<f64>,
    /// Time step Δt, time [default: 1e-4]
    #[arg(long, env = "LZ_DT")]
    dt: Option<f64>,
    /// Trotter factor form: exact or split [default: exact]
    #[arg(long, env = "LZ_FORM")]
    form: Option<String>,
    /// Accumulate the state or the operator: state or operator [default: state]
    #[arg(long, env = "LZ_MODE")]
    mode: Option<String>,
    /// Hamiltonian evaluation point within a step: left-endpoint or midpoint [default: left-endpoint]
    #[arg(long, env = "LZ_EVALUATION")]
    evaluation: Option<String>,
    /// Perturbative tails to apply: both, left, right or none [default: both]
    #[arg(long, env = "LZ_TAILS")]
    tails: Option<String>,
    /// Engine: stepwise, nn (exact form only) or xzx (split form only); only stepwise records a trace [default: stepwise]
    #[arg(long, env = "LZ_ENGINE")]
    engine: Option<String>,
    /// Record every N-th step, dimensionless [default: max(1, steps/10⁴)]
    #[arg(long, env = "LZ_SAMPLE_EVERY")]
    sample_every: Option<usize>,
    /// Trace CSV `t,p_plus,p_minus`; the sidecar goes to <stem>.meta.json [default: trace.csv]
    #[arg(long, short, env = "LZ_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepCommon {
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Comma-separated subset of perturbed-exact, perturbed-split, unperturbed-exact, unperturbed-split [default: all four]
    #[arg(long, env = "LZ_METHODS")]
    methods: Option<String>,
    /// Accumulate the state or the operator: state or operator [default: state]
    #[arg(long, env = "LZ_MODE")]
    mode: Option<String>,
    /// Worker threads; results do not depend on it [default: available parallelism]
    #[arg(long, env = "LZ_WORKERS")]
    workers: Option<usize>,
    /// long: one CSV with a method column; wide: one CSV per method named <stem>-<method>.csv [default: long]
    #[arg(long, env = "LZ_FORMAT")]
    format: Option<String>,
    /// Write 0 in the wall_time_s column so reruns produce identical files
    #[arg(long, env = "LZ_NO_TIMING")]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct SweepDtArgs {
    #[command(flatten)]
    common: SweepCommon,
    /// Time steps Δt as `a,b,c` or `logspace(a,b,n)`, time [default: logspace(1e-2,1e-5,7)]
    #[arg(long, env = "LZ_DTS")]
    dts: Option<String>,
    /// Window half-width T_max, time [default: 30]
    #[arg(long, env = "LZ_T_MAX")]
    t_max: Option<f64>,
    /// Sweep CSV `method,param,p_plus,delta_p,abs_delta_p,wall_time_s` [default: sweep_dt.csv]
    #[arg(long, short, env = "LZ_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepTmaxArgs {
    #[command(flatten)]
    common: SweepCommon,
    /// Window half-widths T_max as `a,b,c` or `logspace(a,b,n)`, time [default: 10,30,100,300,1000]
    #[arg(long, env = "LZ_T_MAXS")]
    t_maxs: Option<String>,
    /// Time step Δt, time [default: 1e-4]
    #[arg(long, env = "LZ_DT")]
    dt: Option<f64>,
    /// Sweep CSV `method,param,p_plus,delta_p,abs_delta_p,wall_time_s` [default: sweep_tmax.csv]
    #[arg(long, short, env = "LZ_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PhaseArgs {
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Start of the unperturbed propagation at −t_far, time [default: 1000]
    #[arg(long, env = "LZ_T_FAR")]
    t_far: Option<f64>,
    /// End of the comparison at −t_near, time, with 0 ≤ t_near ≤ t_far [default: 10]
    #[arg(long, env = "LZ_T_NEAR")]
    t_near: Option<f64>,
    /// Time step Δt, time [default: 1e-4]
    #[arg(long, env = "LZ_DT")]
    dt: Option<f64>,
    /// Record every N-th step, dimensionless [default: max(1, steps/10⁴)]
    #[arg(long, env = "LZ_SAMPLE_EVERY")]
    sample_every: Option<usize>,
    /// CSV `t,re_proj_pert,re_proj_unpert,abs_proj_pert,abs_proj_unpert` [default: phase.csv]
    #[arg(long, short, env = "LZ_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OscillationArgs {
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Window half-width T_max of the unperturbed run, time [default: 30]
    #[arg(long, env = "LZ_T_MAX")]
    t_max: Option<f64>,
    /// Time step Δt, time; every step is sampled [default: 1e-4]
    #[arg(long, env = "LZ_DT")]
    dt: Option<f64>,
    /// CSV `k,t,v_t2,spacing` of refined maxima [default: oscillations.csv]
    #[arg(long, short, env = "LZ_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    physics: PhysicsArgs,
    /// Number of Trotter steps n over [−T_max, T_max], dimensionless [default: 65536]
    #[arg(long, env = "LZ_N_FACTORS")]
    n_factors: Option<usize>,
    /// Window half-width T_max, time [default: 30]
    #[arg(long, env = "LZ_T_MAX")]
    t_max: Option<f64>,
    /// Chunk for the streaming nearest-neighbour run; 0 skips it [default: 1024]
    #[arg(long, env = "LZ_CHUNK_SIZE")]
    chunk_size: Option<usize>,
    /// Benchmark JSON including run metadata [default: compress_bench.json]
    #[arg(long, short, env = "LZ_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tails {
    Both,
    Left,
    Right,
    None,
}

impl FromStr for Tails {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "both" | "on" => Ok(Tails::Both),
            "left" => Ok(Tails::Left),
            "right" => Ok(Tails::Right),
            "none" | "off" => Ok(Tails::None),
            _ => Err(format!("expected both, left, right or none (got `{s}`)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CsvLayout {
    Long,
    Wide,
}

impl FromStr for CsvLayout {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "long" => Ok(CsvLayout::Long),
            "wide" => Ok(CsvLayout::Wide),
            _ => Err(format!("expected long or wide (got `{s}`)")),
        }
    }
}

fn params(s: &Settings, a: &PhysicsArgs) -> Result<LZParams<f64>, CliError> {
    let p = LZParams::new(
        s.pick(a.v, "v", std::f64::consts::PI)?,
        s.pick(a.delta, "delta", 1.0)?,
        s.pick(a.hbar, "hbar", 1.0)?,
    )?;
    Ok(p)
}

fn params_json(p: &LZParams<f64>) -> serde_json::Value {
    json!({ "v": p.v, "delta": p.delta, "hbar": p.hbar })
}

fn metadata(command: &str, s: &Settings, config: serde_json::Value) -> RunMetadata {
    let mut meta = RunMetadata::new(command, config);
    if let Some(path) = &s.path {
        meta.notes.push(format!("config file: {}", path.display()));
    }
    meta
}

fn cmd_trace(s: &Settings, a: &TraceArgs) -> Result<(), CliError> {
    let p = params(s, &a.physics)?;
    let t_max = s.pick(a.t_max, "t-max", 30.0)?;
    let dt = s.pick(a.dt, "dt", 1e-4)?;
    let form: FactorForm = s.pick_with(a.form.clone(), "form", "exact", str::parse)?;
    let mode: PropagationMode = s.pick_with(a.mode.clone(), "mode", "state", str::parse)?;
    let evaluation: Evaluation = s.pick_with(a.evaluation.clone(), "evaluation", "left-endpoint", str::parse)?;
    let tails: Tails = s.pick_with(a.tails.clone(), "tails", "both", str::parse)?;
    let engine: Engine = s.pick_with(a.engine.clone(), "engine", "stepwise", str::parse)?;
    let output = s.pick(a.output.clone(), "output", PathBuf::from("trace.csv"))?;

    let mut spec = PipelineSpec::new(p, t_max, dt, form)?.with_mode(mode).with_engine(engine);
    spec.evaluation = evaluation;
    spec.use_left_tail = matches!(tails, Tails::Both | Tails::Left);
    spec.use_right_tail = matches!(tails, Tails::Both | Tails::Right);
    let every = s.pick(a.sample_every, "sample-every", default_sample_every(spec.grid.n_steps()))?;
    spec.sample_every = Some(every);
    spec.validate()?;

    let out = run_pipeline(&spec)?;
    let exact = p.exact_transition_probability();
    let rows = out.trace.as_ref().map_or(0, |t| t.len());
    write_atomic(&output, |w| match &out.trace {
        Some(tr) => tr.write_csv(w),
        None => writeln!(w, "t,p_plus,p_minus"),
    })?;
    let mut meta = metadata(
        "trace",
        s,
        json!({
            "params": params_json(&p),
            "t_max": t_max,
            "dt": dt,
            "tails": format!("{tails:?}").to_lowercase(),
            "sample_every": every,
            "output": output,
            "pipeline": spec,
        }),
    );
    meta.results = json!({
        "p_plus": out.p_plus,
        "p_minus": out.p_minus,
        "exact": exact,
        "delta_p": out.p_plus - exact,
        "log10_abs_delta_p": floored_log10((out.p_plus - exact).abs()),
        "trace_rows": rows,
    });
    if engine != Engine::StepwiseProduct {
        meta.notes.push(format!("engine {engine} produces no trace; only the header is written"));
    }
    meta.diagnostics = out.diagnostics;
    let side = write_sidecar(&output, &meta)?;
    println!(
        "wrote {} ({rows} rows) and {}; P+ = {:.12}, closed form {:.12}, ΔP = {:.3e}",
        output.display(),
        side.display(),
        out.p_plus,
        exact,
        out.p_plus - exact
    );
    Ok(())
}

struct SweepSetup {
    params: LZParams<f64>,
    opts: SweepOptions,
    layout: CsvLayout,
}

fn sweep_setup(s: &Settings, c: &SweepCommon) -> Result<SweepSetup, CliError> {
    let params = params(s, &c.physics)?;
    let all = Method::ALL.map(|m| m.label()).join(",");
    let methods = s.pick_with(c.methods.clone(), "methods", &all, |raw| {
        raw.split(',').map(|m| m.trim().parse::<Method>()).collect::<Result<Vec<_>, _>>()
    })?;
    let mode: PropagationMode = s.pick_with(c.mode.clone(), "mode", "state", str::parse)?;
    let workers = s.pick_opt(c.workers, "workers")?;
    if workers == Some(0) {
        return Err(CliError::Validation("invalid value for workers: must be at least 1".into()));
    }
    let layout: CsvLayout = s.pick_with(c.format.clone(), "format", "long", str::parse)?;
    let no_timing = s.switch(c.no_timing, "no-timing")?;
    Ok(SweepSetup {
        params,
        opts: SweepOptions {
            methods,
            mode,
            workers,
            record_timing: !no_timing,
        },
        layout,
    })
}

fn sweep_config(setup: &SweepSetup, extra: serde_json::Value) -> serde_json::Value {
    let workers = setup
        .opts
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut v = json!({
        "params": params_json(&setup.params),
        "methods": setup.opts.methods.iter().map(|m| m.label()).collect::<Vec<_>>(),
        "mode": setup.opts.mode,
        "workers": workers,
        "format": format!("{:?}", setup.layout).to_lowercase(),
        "no_timing": !setup.opts.record_timing,
    });
    if let (Some(obj), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
        obj.extend(more);
    }
    v
}

fn write_sweep(
    command: &str,
    s: &Settings,
    setup: &SweepSetup,
    result: &SweepResult<f64>,
    output: &PathBuf,
    config: serde_json::Value,
) -> Result<(), CliError> {
    let mut written = Vec::new();
    match setup.layout {
        CsvLayout::Long => {
            write_atomic(output, |w| result.write_csv(w))?;
            written.push(output.clone());
        }
        CsvLayout::Wide => {
            for &m in &setup.opts.methods {
                let path = suffixed(output, m.label());
                write_atomic(&path, |w| result.write_method_csv(m, w))?;
                written.push(path);
            }
        }
    }
    let mut meta = metadata(command, s, config);
    meta.results = json!({
        "reference": result.reference,
        "records": result.records,
        "files": written,
    });
    meta.diagnostics = result.diagnostics();
    let side = write_sidecar(output, &meta)?;
    for f in &written {
        println!("wrote {}", f.display());
    }
    println!("wrote {} ({} records)", side.display(), result.records.len());
    Ok(())
}

fn cmd_sweep_dt(s: &Settings, a: &SweepDtArgs) -> Result<(), CliError> {
    let setup = sweep_setup(s, &a.common)?;
    let dts = s.pick_with(a.dts.clone(), "dts", "logspace(1e-2,1e-5,7)", parse_list)?;
    let t_max = s.pick(a.t_max, "t-max", 30.0)?;
    let output = s.pick(a.output.clone(), "output", PathBuf::from("sweep_dt.csv"))?;
    let result = sweep_dt(&dts, t_max, &setup.params, &setup.opts)?;
    let config = sweep_config(&setup, json!({ "dts": dts, "t_max": t_max, "output": output }));
    write_sweep("sweep-dt", s, &setup, &result, &output, config)
}

fn cmd_sweep_tmax(s: &Settings, a: &SweepTmaxArgs) -> Result<(), CliError> {
    let setup = sweep_setup(s, &a.common)?;
    let t_maxs = s.pick_with(a.t_maxs.clone(), "t-maxs", "10,30,100,300,1000", parse_list)?;
    let dt = s.pick(a.dt, "dt", 1e-4)?;
    let output = s.pick(a.output.clone(), "output", PathBuf::from("sweep_tmax.csv"))?;
    let result = sweep_tmax(&t_maxs, dt, &setup.params, &setup.opts)?;
    let config = sweep_config(&setup, json!({ "t_maxs": t_maxs, "dt": dt, "output": output }));
    write_sweep("sweep-tmax", s, &setup, &result, &output, config)
}

fn cmd_phase(s: &Settings, a: &PhaseArgs) -> Result<(), CliError> {
    let p = params(s, &a.physics)?;
    let t_far = s.pick(a.t_far, "t-far", 1000.0)?;
    let t_near = s.pick(a.t_near, "t-near", 10.0)?;
    let dt = s.pick(a.dt, "dt", 1e-4)?;
    let every = s.pick_opt(a.sample_every, "sample-every")?;
    let output = s.pick(a.output.clone(), "output", PathBuf::from("phase.csv"))?;
    let pc = phase_comparison(t_far, t_near, dt, &p, every)?;
    write_atomic(&output, |w| pc.write_csv(w))?;
    let mut meta = metadata(
        "phase-compare",
        s,
        json!({
            "params": params_json(&p),
            "t_far": t_far,
            "t_near": t_near,
            "dt": dt,
            "sample_every": every,
            "output": output,
        }),
    );
    meta.results = json!({
        "samples": pc.len(),
        "max_modulus_gap": pc.max_modulus_gap(),
        "max_real_gap": pc.max_real_gap(),
    });
    meta.notes.push(
        "perturbed curve: ⟨ψ₋|ψ⟩ of the first-order tail state generated at each sampled time t".into(),
    );
    meta.notes
        .push("unperturbed curve: |ψ₊⟩ at −t_far propagated with exact Trotter factors".into());
    let side = write_sidecar(&output, &meta)?;
    println!(
        "wrote {} ({} rows) and {}; max | |a_pert| − |a_unpert| | = {:.3e}",
        output.display(),
        pc.len(),
        side.display(),
        pc.max_modulus_gap()
    );
    Ok(())
}

fn cmd_oscillations(s: &Settings, a: &OscillationArgs) -> Result<(), CliError> {
    let p = params(s, &a.physics)?;
    let t_max = s.pick(a.t_max, "t-max", 30.0)?;
    let dt = s.pick(a.dt, "dt", 1e-4)?;
    let output = s.pick(a.output.clone(), "output", PathBuf::from("oscillations.csv"))?;
    let grid = TimeGrid::symmetric(t_max, dt)?;
    let run = propagate(State2::plus_basis(), &grid, &Scheme::default(), &p, 1)?;
    let rep = oscillation_analysis(&run.trace, &p)?;
    write_atomic(&output, |w| {
        writeln!(w, "k,t,v_t2,spacing")?;
        for (k, m) in rep.maxima.iter().enumerate() {
            match k.checked_sub(1).map(|j| rep.spacings[j]) {
                Some(d) => writeln!(w, "{k},{},{},{d}", m.t, m.phase)?,
                None => writeln!(w, "{k},{},{},", m.t, m.phase)?,
            }
        }
        Ok(())
    })?;
    let mean = rep.mean_spacing();
    let mut meta = metadata(
        "oscillations",
        s,
        json!({ "params": params_json(&p), "t_max": t_max, "dt": dt, "output": output }),
    );
    meta.results = json!({
        "maxima": rep.maxima.len(),
        "mean_spacing": mean,
        "mean_spacing_over_pi": mean / std::f64::consts::PI,
        "mean_spacing_over_pi_hbar": mean / (std::f64::consts::PI * p.hbar),
    });
    let side = write_sidecar(&output, &meta)?;
    println!(
        "wrote {} and {}; {} maxima, mean Δ(v t²) = {:.6}π",
        output.display(),
        side.display(),
        rep.maxima.len(),
        mean / std::f64::consts::PI
    );
    Ok(())
}

fn cmd_bench(s: &Settings, a: &BenchArgs) -> Result<(), CliError> {
    let p = params(s, &a.physics)?;
    let n = s.pick(a.n_factors, "n-factors", 1usize << 16)?;
    let t_max = s.pick(a.t_max, "t-max", 30.0)?;
    let chunk = s.pick(a.chunk_size, "chunk-size", 1024usize)?;
    let output = s.pick(a.output.clone(), "output", PathBuf::from("compress_bench.json"))?;
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(CliError::Validation(format!(
            "invalid value for t_max: must be positive and finite (got {t_max})"
        )));
    }
    if chunk == 1 {
        return Err(CliError::Validation("invalid value for chunk_size: must be 0 or at least 2".into()));
    }
    let rows = benchmark_compression(n, t_max, &p, (chunk > 0).then_some(chunk))?;
    let mut meta = metadata(
        "compress-bench",
        s,
        json!({
            "params": params_json(&p),
            "n_factors": n,
            "t_max": t_max,
            "chunk_size": chunk,
            "output": output,
        }),
    );
    meta.results = serde_json::to_value(&rows).map_err(|e| CliError::Compute(e.to_string()))?;
    write_json(&output, &meta)?;
    for r in &rows {
        println!(
            "{:<26} n={:<9} {:>10.4} s  peak {:<9} max deviation {:.3e}",
            serde_json::to_value(r.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            r.n_factors,
            r.wall_time_s,
            r.peak_versor_count,
            r.max_deviation
        );
    }
    println!("wrote {}", output.display());
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let s = Settings::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Trace(a) => cmd_trace(&s, a),
        Command::SweepDt(a) => cmd_sweep_dt(&s, a),
        Command::SweepTmax(a) => cmd_sweep_tmax(&s, a),
        Command::PhaseCompare(a) => cmd_phase(&s, a),
        Command::Oscillations(a) => cmd_oscillations(&s, a),
        Command::CompressBench(a) => cmd_bench(&s, a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
