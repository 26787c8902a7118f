use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use realqz::error::Error;
use realqz::parse::parse;
use realqz::render::{render_proof, Format};
use realqz::solver::{decide, Limits, Verdict};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "realqz", version, about = "Decide univariate real formulas with rational and integer power predicates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a formula and print the verdict.
    Decide(DecideArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProofArg {
    Text,
    Latex,
    Json,
}

impl From<ProofArg> for Format {
    fn from(p: ProofArg) -> Format {
        match p {
            ProofArg::Text => Format::Text,
            ProofArg::Latex => Format::Latex,
            ProofArg::Json => Format::Json,
        }
    }
}

#[derive(Args)]
struct DecideArgs {
    /// Formula text.
    #[arg(conflicts_with_all = ["file", "batch"], required_unless_present_any = ["file", "batch"])]
    formula: Option<String>,
    /// Read one formula from a file.
    #[arg(short = 'f', long = "file", value_name = "FILE", conflicts_with = "batch")]
    file: Option<PathBuf>,
    /// Decide every non-blank, non-comment line of a file.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,
    /// Print the proof in this format.
    #[arg(long, value_enum, value_name = "FORMAT")]
    proof: Option<ProofArg>,
    /// Include the witness in the verdict line.
    #[arg(long)]
    witness: bool,
    /// Print the full verdict record as JSON.
    #[arg(long)]
    json: bool,
    /// Most integer candidates examined in one cell.
    #[arg(long, value_name = "N", default_value_t = 1_000_000)]
    max_integers: u64,
    /// Most disjuncts in a normal form.
    #[arg(long, value_name = "N", default_value_t = 4096)]
    max_dnf: usize,
    /// Give up on a formula after this many milliseconds.
    #[arg(long, value_name = "N")]
    timeout_ms: Option<u64>,
    /// Report wall-clock time in the stats record.
    #[arg(long)]
    timing: bool,
}

struct Outcome {
    verdict: Verdict,
    elapsed_ms: u64,
}

enum Failure {
    Error(Error),
    Timeout(u64),
    Io(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Error(e) => e.exit_code() as u8,
            Failure::Timeout(_) => 2,
            Failure::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Error(Error::Parse(_)) => "syntax",
            Failure::Error(Error::ResourceLimit(_)) | Failure::Timeout(_) => "resource_limit",
            Failure::Error(Error::Internal(_)) => "internal",
            Failure::Error(_) | Failure::Io(_) => "input",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Error(e) => e.to_string(),
            Failure::Timeout(ms) => format!("timed out after {ms} ms"),
            Failure::Io(m) => m.clone(),
        }
    }
}

fn run_one(src: String, limits: Limits, timeout_ms: Option<u64>) -> Result<Outcome, Failure> {
    let work = move || -> Result<Outcome, Error> {
        let start = Instant::now();
        let f = parse(&src)?;
        let verdict = decide(&f, &limits)?;
        Ok(Outcome { verdict, elapsed_ms: start.elapsed().as_millis() as u64 })
    };
    match timeout_ms {
        None => work().map_err(Failure::Error),
        Some(ms) => {
            let (tx, rx) = mpsc::channel();
            // the worker is abandoned on timeout; the process exits soon after
            thread::spawn(move || {
                let _ = tx.send(work());
            });
            match rx.recv_timeout(Duration::from_millis(ms)) {
                Ok(r) => r.map_err(Failure::Error),
                Err(_) => Err(Failure::Timeout(ms)),
            }
        }
    }
}

/// The short verdict line, e.g. `{"verdict": true, "witness": {...}}`.
fn verdict_line(v: &Verdict, with_witness: bool) -> String {
    let mut s = format!("{{\"verdict\": {}", v.truth);
    if with_witness {
        let w = v.witness.as_ref().map_or(Value::Null, |w| w.to_json());
        s.push_str(&format!(", \"witness\": {w}"));
    }
    s.push('}');
    s
}

fn record(o: &Outcome, a: &DecideArgs) -> Value {
    let mut j = o.verdict.to_json(a.timing.then_some(o.elapsed_ms));
    if let Some(p @ (ProofArg::Text | ProofArg::Latex)) = a.proof {
        j["rendered_proof"] = Value::String(render_proof(&o.verdict.trace, p.into()));
    }
    j
}

fn print_single(o: &Outcome, a: &DecideArgs) {
    if a.json {
        println!("{}", serde_json::to_string_pretty(&record(o, a)).expect("json"));
        return;
    }
    match a.proof {
        Some(p) => {
            let out = render_proof(&o.verdict.trace, p.into());
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
        }
        None => println!("{}", verdict_line(&o.verdict, a.witness)),
    }
}

fn batch_line(line: usize, r: &Result<Outcome, Failure>, a: &DecideArgs) -> String {
    match r {
        Ok(o) if a.json || a.proof.is_some() => {
            let mut j = json!({ "line": line });
            let full = record(o, a);
            for (k, v) in full.as_object().expect("object") {
                if k == "proof" && a.proof.is_none() {
                    continue;
                }
                j[k] = v.clone();
            }
            j.to_string()
        }
        Ok(o) => {
            let tail = verdict_line(&o.verdict, a.witness);
            format!("{{\"line\": {line}, {}", &tail[1..])
        }
        Err(f) => json!({ "line": line, "error": { "kind": f.kind(), "message": f.message() } }).to_string(),
    }
}

fn run_batch(path: &PathBuf, a: &DecideArgs, limits: Limits) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return 1;
        }
    };
    let jobs: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| (i + 1, l.to_string()))
        .collect();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1));
    let mut results: Vec<Option<Result<Outcome, Failure>>> = (0..jobs.len()).map(|_| None).collect();
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let jobs = &jobs;
                s.spawn(move || {
                    jobs.iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(k, (_, src))| (k, run_one(src.clone(), limits, a.timeout_ms)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (k, r) in h.join().expect("batch worker panicked") {
                results[k] = Some(r);
            }
        }
    });
    let mut code = 0;
    for ((line, _), r) in jobs.iter().zip(results) {
        let r = r.expect("every job ran");
        if let Err(f) = &r {
            code = code.max(f.exit_code());
        }
        println!("{}", batch_line(*line, &r, a));
    }
    code
}

fn main() -> ExitCode {
    let Command::Decide(a) = Cli::parse().command;
    let limits = Limits { max_integers: a.max_integers, max_dnf: a.max_dnf };
    if let Some(path) = &a.batch {
        return ExitCode::from(run_batch(path, &a, limits));
    }
    let src = match (&a.formula, &a.file) {
        (Some(s), _) => Ok(s.clone()),
        (None, Some(p)) => fs::read_to_string(p).map_err(|e| Failure::Io(format!("cannot read {}: {e}", p.display()))),
        (None, None) => unreachable!("clap requires an input"),
    };
    match src.and_then(|s| run_one(s, limits, a.timeout_ms)) {
        Ok(o) => {
            print_single(&o, &a);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
