use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use fuzzy_lcm::control::{
    convergence_probe, run_closed_loop, ControlTrace, ControllerConfig, PlantParams, ProbeReport,
};
use fuzzy_lcm::method::parse_method_list;
use fuzzy_lcm::request::InferenceRequest;
use fuzzy_lcm::rpcf::{
    check_comparison, check_report, compare_methods, fixtures, format_vector, report,
    run_experiment_with, ExperimentSpec, FixtureOutcome, RpcfReport,
};
use fuzzy_lcm::InferenceMethod;

#[derive(Parser, Debug)]
#[command(name = "fuzzy-lcm", version, about = "LCM-extended fuzzy approximate reasoning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one inference request.
    Infer(InferArgs),
    /// Score experiment suites by the reductive-property criterion.
    Evaluate(EvaluateArgs),
    /// Tabulate every method over the classed suites.
    Compare(EvaluateArgs),
    /// Closed-loop control run plus a convergence probe.
    Simulate(SimulateArgs),
    /// Wall-clock timing per method.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Input JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated method selectors, e.g. `lcm:p3,cri:godel`.
    #[arg(long)]
    method: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args, Debug)]
struct InferArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[command(flatten)]
    common: Common,
    /// Compare against stored expectations; exit nonzero on any deviation.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 300)]
    steps: usize,
    /// Controller gain; overrides the config file.
    #[arg(long)]
    rho: Option<f64>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 10)]
    repeat: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Infer(a) => cmd_infer(&a),
        Command::Evaluate(a) => cmd_evaluate(&a),
        Command::Compare(a) => cmd_compare(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn methods(common: &Common) -> Result<Option<Vec<InferenceMethod>>> {
    match &common.method {
        None => Ok(None),
        Some(s) => {
            let list = parse_method_list(s)?;
            if list.is_empty() {
                bail!("--method lists no selectors");
            }
            Ok(Some(list))
        }
    }
}

fn write_out(dir: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    if let Some(dir) = dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// File-name safe form of a selector.
fn slug(m: InferenceMethod) -> String {
    m.to_string().replace(':', "-")
}

#[derive(Serialize)]
struct MethodResult {
    method: InferenceMethod,
    result: Vec<f64>,
    distance: Option<f64>,
    degenerate: bool,
}

fn cmd_infer(args: &InferArgs) -> Result<ExitCode> {
    let c = &args.common;
    let path = c.input.as_deref().context("infer needs --input <request.json>")?;
    let request: InferenceRequest = read_json(path)?;
    let selected = match methods(c)? {
        Some(list) => list,
        None => vec![request.resolve_method(None)?],
    };
    let results = selected
        .iter()
        .map(|&m| {
            let r = request.run(Some(m)).with_context(|| format!("method {m}"))?;
            Ok(MethodResult {
                method: m,
                result: r.result,
                distance: r.distance,
                degenerate: r.degenerate,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let json = if let [single] = results.as_slice() {
        to_json(single)?
    } else {
        to_json(&results)?
    };
    write_out(c.out.as_deref(), "result.json", &json)?;

    match c.format {
        Format::Json => print!("{json}"),
        Format::Csv => {
            println!("method,distance,degenerate,result");
            for r in &results {
                let grades: Vec<String> = r.result.iter().map(|x| format!("{x:.4}")).collect();
                let distance = r.distance.map(|d| format!("{d:.4}")).unwrap_or_default();
                println!("{},{},{},{}", r.method, distance, r.degenerate, grades.join(" "));
            }
        }
        Format::Table => {
            for r in &results {
                if results.len() == 1 {
                    println!("{}", format_vector(&r.result));
                } else {
                    println!("{:<18} {}", r.method.to_string(), format_vector(&r.result));
                }
                if r.degenerate {
                    eprintln!("warning: {} result is degenerate (constant quasi-result, clamped)", r.method);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One spec object or an array of them; bundled suites when absent.
fn load_specs(input: Option<&Path>, bundled: fn() -> Vec<ExperimentSpec>) -> Result<Vec<ExperimentSpec>> {
    let Some(path) = input else {
        return Ok(bundled());
    };
    let value: serde_json::Value = read_json(path)?;
    let specs = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|s| vec![s])
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    Ok(specs)
}

fn report_check(outcomes: &[FixtureOutcome], format: Format) -> ExitCode {
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let soft = outcomes
        .iter()
        .filter(|o| o.soft && !o.within_tolerance())
        .count();
    let table = report::outcomes_text(outcomes);
    let summary = format!(
        "check: {} cells, {} failed, {} soft deviations",
        outcomes.len(),
        failed,
        soft
    );
    // keep stdout machine-readable for csv/json
    if format == Format::Table {
        print!("\n{table}");
        println!("{summary}");
    } else {
        eprint!("{table}");
        eprintln!("{summary}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<ExitCode> {
    let c = &args.common;
    let specs = load_specs(c.input.as_deref(), fixtures::bundled_specs)?;
    let override_methods = methods(c)?;
    let mut reports: Vec<RpcfReport> = Vec::with_capacity(specs.len());
    for spec in &specs {
        let list = override_methods.as_deref().unwrap_or(&spec.methods);
        reports.push(run_experiment_with(spec, list).with_context(|| format!("spec `{}`", spec.name))?);
    }

    let csv = report::reports_csv(&reports);
    let text: String = reports.iter().map(report::report_text).collect::<Vec<_>>().join("\n");
    let json = to_json(&reports)?;
    let out = c.out.as_deref();
    write_out(out, "report.csv", &csv)?;
    write_out(out, "report.txt", &text)?;
    write_out(out, "report.json", &json)?;
    match c.format {
        Format::Table => print!("{text}"),
        Format::Csv => print!("{csv}"),
        Format::Json => print!("{json}"),
    }

    if !args.check {
        return Ok(ExitCode::SUCCESS);
    }
    let mut outcomes = Vec::new();
    for (spec, rep) in specs.iter().zip(&reports) {
        // expectations for methods that were not run are skipped
        let mut spec = spec.clone();
        spec.expect.retain(|e| rep.average(e.method).is_some());
        outcomes.extend(check_report(&spec, rep)?);
    }
    write_out(out, "check.txt", &report::outcomes_text(&outcomes))?;
    Ok(report_check(&outcomes, c.format))
}

fn cmd_compare(args: &EvaluateArgs) -> Result<ExitCode> {
    let c = &args.common;
    let specs = load_specs(c.input.as_deref(), fixtures::comparison_specs)?;
    if specs.iter().all(|s| s.class.is_none()) && !specs.is_empty() {
        bail!("compare needs specs with a `class`");
    }
    let list = methods(c)?.unwrap_or_else(InferenceMethod::comparison_set);
    let cmp = compare_methods(&specs, &list)?;

    let csv = report::comparison_csv(&cmp);
    let text = report::comparison_text(&cmp);
    let json = to_json(&cmp)?;
    let out = c.out.as_deref();
    write_out(out, "comparison.csv", &csv)?;
    write_out(out, "comparison.txt", &text)?;
    write_out(out, "comparison.json", &json)?;
    match c.format {
        Format::Table => print!("{text}"),
        Format::Csv => print!("{csv}"),
        Format::Json => print!("{json}"),
    }

    if !args.check {
        return Ok(ExitCode::SUCCESS);
    }
    let outcomes = check_comparison(&cmp, &fixtures::comparison_reference());
    write_out(out, "check.txt", &report::outcomes_text(&outcomes))?;
    Ok(report_check(&outcomes, c.format))
}

/// Optional simulation config file; absent parts take defaults.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SimulationInput {
    #[serde(default)]
    plant: PlantParams,
    #[serde(default)]
    controller: Option<ControllerConfig>,
}

#[derive(Serialize)]
struct SimulationOutput<'a> {
    traces: &'a [ControlTrace],
    probe: &'a ProbeReport,
}

fn cmd_simulate(args: &SimulateArgs) -> Result<ExitCode> {
    let c = &args.common;
    let input: SimulationInput = match c.input.as_deref() {
        Some(p) => read_json(p)?,
        None => SimulationInput::default(),
    };
    let backends = match (methods(c)?, &input.controller) {
        (Some(list), _) => list,
        (None, Some(cfg)) => vec![cfg.backend],
        (None, None) => vec!["lcm:p3".parse()?],
    };

    let mut traces = Vec::with_capacity(backends.len());
    for &backend in &backends {
        let mut config = input
            .controller
            .clone()
            .unwrap_or_else(|| ControllerConfig::standard(backend));
        config.backend = backend;
        if let Some(rho) = args.rho {
            config.rho = rho;
        }
        let trace = run_closed_loop(&input.plant, &config, args.steps)
            .with_context(|| format!("simulating with {backend}"))?;
        traces.push(trace);
    }
    let probe = convergence_probe(&backends)?;

    let out = c.out.as_deref();
    for t in &traces {
        write_out(out, &format!("trace-{}.csv", slug(t.backend)), &t.to_csv())?;
        write_out(out, &format!("trace-{}.svg", slug(t.backend)), &t.to_svg())?;
    }
    write_out(out, "probe.csv", &probe.to_csv())?;

    match c.format {
        Format::Json => print!(
            "{}",
            to_json(&SimulationOutput {
                traces: &traces,
                probe: &probe,
            })?
        ),
        Format::Csv => {
            for t in &traces {
                print!("{}", t.to_csv());
            }
            print!("{}", probe.to_csv());
        }
        Format::Table => {
            println!(
                "{:<12} {:>8} {:>10} {:>9} {:>12} {:>8}",
                "backend", "final y", "|error|", "within 2", "distinct du", "stalled"
            );
            for t in &traces {
                let within = t
                    .first_within(2.0)
                    .map(|k| k.to_string())
                    .unwrap_or_else(|| "-".into());
                println!(
                    "{:<12} {:>8.3} {:>10.3} {:>9} {:>12} {:>8}",
                    t.backend.to_string(),
                    t.final_output().unwrap_or(f64::NAN),
                    t.final_error().unwrap_or(f64::NAN),
                    within,
                    t.distinct_increments(),
                    t.stalled_steps()
                );
            }
            println!();
            print!("{}", probe.to_csv());
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Timing {
    method: InferenceMethod,
    inferences: usize,
    mean_us: f64,
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    let c = &args.common;
    if args.repeat == 0 {
        bail!("--repeat must be at least 1");
    }
    let specs = load_specs(c.input.as_deref(), fixtures::comparison_specs)?;
    let list = methods(c)?.unwrap_or_else(InferenceMethod::comparison_set);
    let mut timings = Vec::with_capacity(list.len());
    for &m in &list {
        let mut inferences = 0;
        let start = Instant::now();
        for _ in 0..args.repeat {
            inferences = 0;
            for spec in &specs {
                let rep = run_experiment_with(spec, &[m])?;
                inferences += rep.rows.len();
            }
        }
        let mean_us = start.elapsed().as_secs_f64() * 1e6 / args.repeat as f64;
        timings.push(Timing {
            method: m,
            inferences,
            mean_us,
        });
    }

    let mut csv = String::from("method,inferences,mean_us\n");
    for t in &timings {
        csv.push_str(&format!("{},{},{:.3}\n", t.method, t.inferences, t.mean_us));
    }
    write_out(c.out.as_deref(), "bench.csv", &csv)?;
    match c.format {
        Format::Csv => print!("{csv}"),
        Format::Json => print!("{}", to_json(&timings)?),
        Format::Table => {
            println!("{:<18} {:>10} {:>12}", "method", "inferences", "mean (µs)");
            for t in &timings {
                println!(
                    "{:<18} {:>10} {:>12.3}",
                    t.method.to_string(),
                    t.inferences,
                    t.mean_us
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
