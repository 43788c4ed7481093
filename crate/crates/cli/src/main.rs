use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use parammp::io::{
    parse_plan_document, parse_problem, render_svg, sample_csv, serialize_plan, ProblemDocument, DEFAULT_CSV_SAMPLES,
    DEFAULT_SAMPLES_PER_SEGMENT,
};
use parammp::verification::{random_query, seeded_rng, DEFAULT_RANGE};
use parammp::{certify_separation, classify, component_count, make_frame, orderings, plan, Error, FrameMode, PlanOptions};

#[derive(Parser)]
#[command(name = "parammp", version, about = "Motion planning for point robots among point obstacles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a motion for a problem document and write the plan as JSON.
    Plan(PlanArgs),
    /// Report the stratum and domain index of a problem.
    Classify(ClassifyArgs),
    /// Certify that planned motions keep robots apart from each other and the obstacles.
    Verify(VerifyArgs),
    /// Print the number of components of the generic stratum for n robots and m obstacles.
    Components { n: u32, m: u32 },
}

#[derive(Args)]
struct ProblemArgs {
    /// Problem document (JSON).
    #[arg(long, short)]
    input: PathBuf,
    /// Projection frame: fixed or obstacle-pair (overrides the document).
    #[arg(long)]
    mode: Option<FrameMode>,
}

#[derive(Args)]
struct PlanArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Write the plan here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Also render the plan as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Also write sampled positions as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// CSV samples per unit time, or SVG samples per segment.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Problem document to plan and certify, or a plan document to certify.
    #[arg(long, short, conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Instead of a file, certify this many random queries.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 1, requires = "random")]
    robots: usize,
    #[arg(long, default_value_t = 2, requires = "random")]
    obstacles: usize,
    #[arg(long, default_value_t = 3, requires = "random")]
    dim: usize,
    #[arg(long)]
    mode: Option<FrameMode>,
    /// Samples per sub-interval for the certificate.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for random queries.
    #[arg(long, env = "PARAMMP_SEED")]
    seed: Option<u64>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

enum Failure {
    Validation(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &FsPath) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn write(path: &FsPath, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
}

fn load(args: &ProblemArgs) -> Result<(ProblemDocument, PlanOptions<f64>), Failure> {
    let doc = parse_problem(&read(&args.input)?)?;
    let mut options = doc.plan_options();
    if args.mode.is_some() {
        options.mode = args.mode;
    }
    Ok((doc, options))
}

fn run_plan(args: PlanArgs) -> Outcome {
    let (doc, options) = load(&args.problem)?;
    let result = plan(&doc.query()?, &options)?;
    let text = serialize_plan(&result);
    match &args.output {
        Some(path) => write(path, &text)?,
        None => println!("{text}"),
    }
    if let Some(path) = &args.svg {
        write(path, &render_svg(&result, args.samples.unwrap_or(DEFAULT_SAMPLES_PER_SEGMENT)))?;
    }
    if let Some(path) = &args.csv {
        write(path, &sample_csv(&result.path, args.samples.unwrap_or(DEFAULT_CSV_SAMPLES)))?;
    }
    Ok(())
}

fn run_classify(args: ClassifyArgs) -> Outcome {
    let (doc, options) = load(&args.problem)?;
    let query = doc.query()?;
    let mode = options
        .mode
        .unwrap_or_else(|| FrameMode::default_for(query.dim(), query.m()));
    let frame = make_frame(&query, mode)?.with_snap(options.snap_tolerance);
    let label = classify(&query, &frame);
    let pair = orderings(&query, &frame).ok();
    if args.json {
        let value = json!({
            "version": parammp::io::FORMAT_VERSION,
            "mode": mode.as_str(),
            "region": label,
            "domain_index": label.c,
            "generic": label.is_generic(query.n()),
            "orderings": pair.as_ref().map(|p| json!({"sigma": p.sigma, "sigma_prime": p.sigma_prime})),
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        println!("mode {mode}");
        println!("region j={} t={} c={}", label.j, label.t, label.c);
        if let Some(p) = pair {
            println!("orderings {p}");
        }
    }
    Ok(())
}

struct Verdict {
    label: String,
    pass: bool,
    value: serde_json::Value,
}

fn certify(label: String, path: &parammp::Path, samples: usize) -> Verdict {
    let cert = certify_separation(path, samples);
    Verdict {
        label,
        pass: cert.pass,
        value: serde_json::to_value(&cert).expect("json"),
    }
}

fn run_verify(args: VerifyArgs) -> Outcome {
    let mut verdicts = Vec::new();
    let mut samples = args.samples;
    if let Some(trials) = args.random {
        let samples = samples.unwrap_or(DEFAULT_SAMPLES_PER_SEGMENT);
        let mut rng = seeded_rng(args.seed.unwrap_or(0));
        let options = PlanOptions {
            mode: args.mode,
            snap_tolerance: 0.0,
        };
        for k in 0..trials {
            let query = random_query(&mut rng, args.robots, args.obstacles, args.dim, DEFAULT_RANGE);
            let result = plan(&query, &options)?;
            verdicts.push(certify(format!("query {}", k + 1), &result.path, samples));
        }
    } else if let Some(input) = &args.input {
        let text = read(input)?;
        let is_plan = serde_json::from_str::<serde_json::Value>(&text)
            .map(|v| v.get("robots").is_some())
            .unwrap_or(false);
        let path = if is_plan {
            parse_plan_document(&text)?.to_path()?
        } else {
            let doc = parse_problem(&text)?;
            samples = samples.or(doc.options.samples_per_segment);
            let mut options = doc.plan_options();
            if args.mode.is_some() {
                options.mode = args.mode;
            }
            plan(&doc.query()?, &options)?.path
        };
        let samples = samples.unwrap_or(DEFAULT_SAMPLES_PER_SEGMENT);
        verdicts.push(certify(input.display().to_string(), &path, samples));
    } else {
        return Err(Failure::Validation("verify needs --input or --random".into()));
    }

    let all = verdicts.iter().all(|v| v.pass);
    if args.json {
        let value = json!({
            "version": parammp::io::FORMAT_VERSION,
            "pass": all,
            "results": verdicts.iter().map(|v| json!({"name": v.label, "certificate": v.value})).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        for v in &verdicts {
            let bound = v.value["certified_lower_bound"].as_f64().unwrap_or(f64::NAN);
            let sampled = v.value["sampled_min"].as_f64().unwrap_or(f64::NAN);
            let word = if v.pass { "PASS" } else { "FAIL" };
            println!("{word} {}: certified >= {bound:.6e}, sampled min {sampled:.6e}", v.label);
        }
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Internal("separation certificate failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Plan(a) => run_plan(a),
        Command::Classify(a) => run_classify(a),
        Command::Verify(a) => run_verify(a),
        Command::Components { n, m } => {
            if n == 0 || m == 0 {
                Err(Failure::Validation("n and m must be at least 1".into()))
            } else {
                println!("{}", component_count(n, m));
                Ok(())
            }
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
