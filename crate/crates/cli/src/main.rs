use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use slideocam_core::config::{parse_design_config, parse_synthesis_request, DesignConfig};
use slideocam_core::export;
use slideocam_core::report::{self, fmt_sig9, ConstraintEntry, HertzSummary, Rejection, SynthesisFailure};
use slideocam_core::strength::ReqVariant;

#[derive(Parser)]
#[command(name = "slideocam", version, about = "Slide-o-Cam transmission design toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the sampled cam profile and pitch curve.
    Profile {
        #[command(flatten)]
        input: DesignInput,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; inferred from the --out extension, csv otherwise.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate a design and print its report.
    Analyze {
        #[command(flatten)]
        input: DesignInput,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the design loop on a synthesis request.
    Synthesize {
        #[command(flatten)]
        input: DesignInput,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Args)]
struct DesignInput {
    /// JSON design configuration (or synthesis request).
    #[arg(long, visible_alias = "request")]
    config: PathBuf,
    /// Equivalent radius used for the Hertz pressure.
    #[arg(long = "req-variant", value_enum)]
    req_variant: Option<Variant>,
    /// Number of samples over one cam turn and over the active interval.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Paper,
    Local,
}

impl From<Variant> for ReqVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Paper => ReqVariant::Paper,
            Variant::Local => ReqVariant::Local,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Json,
}

enum Failure {
    Io(String),
    Invalid(String),
    Infeasible(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_design(input: &DesignInput) -> Result<DesignConfig, Failure> {
    let mut config = parse_design_config(&read(&input.config)?).map_err(|e| Failure::Invalid(e.to_string()))?;
    if let Some(v) = input.req_variant {
        config.analysis.r_eq_variant = v.into();
    }
    if let Some(n) = input.samples {
        config.analysis.n_samples = n;
    }
    Ok(config)
}

fn ledger_table(entries: &[ConstraintEntry]) -> String {
    let mut s = String::from("constraint           status  margin\n");
    for c in entries {
        let status = if c.satisfied { "ok" } else { "FAIL" };
        let margin = c.margin.map_or_else(|| "n/a".to_string(), fmt_sig9);
        let _ = writeln!(s, "{:<20} {status:<7} {margin:<16} {}", format!("{:?}", c.id), c.description);
    }
    s
}

fn rejection_message(r: &Rejection) -> String {
    let mut s = format!("{}: {}\n", r.error, r.message);
    if let Some(entries) = &r.constraints {
        s.push_str(&ledger_table(entries));
    }
    s
}

fn evaluate(config: &DesignConfig) -> Result<report::Evaluation, Failure> {
    report::evaluate_design(config).map_err(|r| Failure::Invalid(rejection_message(&r)))
}

fn infer_format(format: Option<Format>, out: Option<&Path>) -> Format {
    format.unwrap_or_else(|| match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("svg") => Format::Svg,
        Some("json") => Format::Json,
        _ => Format::Csv,
    })
}

fn cmd_profile(input: &DesignInput, out: Option<&Path>, format: Option<Format>) -> Outcome {
    let config = load_design(input)?;
    let evaluation = evaluate(&config)?;
    let text = match infer_format(format, out) {
        Format::Csv => export::profile_csv(&evaluation.profile),
        Format::Svg => export::profile_svg(&evaluation.profile),
        Format::Json => export::profile_json(&config, &evaluation.profile),
    };
    write(out, &text)
}

#[derive(Serialize)]
struct AnalysisReport {
    interval: report::IntervalDeg,
    r_eq_variant: ReqVariant,
    scalars: report::Scalars,
    hertz_variants: report::HertzVariants,
    constraints: Vec<ConstraintEntry>,
    passed: bool,
}

fn hertz_line(name: &str, h: Option<&HertzSummary>) -> String {
    match h {
        Some(h) => format!(
            "P_peak / P_low ({name})   {} / {} MPa  (r_eq {} mm)\n",
            fmt_sig9(h.P_peak_MPa),
            fmt_sig9(h.P_low_MPa),
            fmt_sig9(h.r_eq_mm)
        ),
        None => format!("P_peak / P_low ({name})   n/a\n"),
    }
}

fn analysis_table(r: &AnalysisReport) -> String {
    let s = &r.scalars;
    let mut t = String::new();
    let _ = writeln!(t, "mu_max                   {} deg", fmt_sig9(s.mu_max));
    let _ = writeln!(t, "delta_mu                 {} deg", fmt_sig9(s.delta_mu));
    let _ = writeln!(t, "active interval          [{}, {}] deg", fmt_sig9(r.interval.start_deg), fmt_sig9(r.interval.end_deg));
    let _ = writeln!(t, "F_max                    {} N", fmt_sig9(s.F_max_N));
    let _ = writeln!(t, "r_cam_min                {} mm", fmt_sig9(s.r_cam_min_mm));
    let _ = writeln!(t, "phi_cam / phi_bear       {} / {} mm", fmt_sig9(s.phi_cam_mm), fmt_sig9(s.phi_bear_mm));
    t.push_str(&hertz_line("paper", r.hertz_variants.paper.as_ref()));
    t.push_str(&hertz_line("local", r.hertz_variants.local.as_ref()));
    let _ = writeln!(t, "r_eq variant in ledger   {}", r.r_eq_variant.as_str());
    t.push('\n');
    t.push_str(&ledger_table(&r.constraints));
    let _ = writeln!(t, "\nverdict: {}", if r.passed { "all constraints satisfied" } else { "constraints violated" });
    t
}

fn cmd_analyze(input: &DesignInput, json: bool, out: Option<&Path>) -> Outcome {
    let config = load_design(input)?;
    let response = match report::evaluate_design(&config) {
        Ok(e) => e.to_response(),
        Err(r) if json => {
            write(out, &(report::to_json_fixed(&r, true) + "\n"))?;
            return Err(Failure::Invalid(format!("{}: {}", r.error, r.message)));
        }
        Err(r) => return Err(Failure::Invalid(rejection_message(&r))),
    };
    let r = AnalysisReport {
        interval: response.interval,
        r_eq_variant: response.r_eq_variant,
        scalars: response.scalars,
        hertz_variants: response.hertz_variants,
        constraints: response.constraints,
        passed: response.passed,
    };
    let text = if json { report::to_json_fixed(&r, true) + "\n" } else { analysis_table(&r) };
    write(out, &text)
}

fn trace_table(failure: &SynthesisFailure) -> String {
    let mut s = String::from("pitch_mm  n  phi_bear_mm  phi_cam_mm  a4_mm  eta  mu_max_deg  verdict\n");
    for t in &failure.trace {
        let mu = t.mu_max_deg.map_or_else(|| "n/a".to_string(), fmt_sig9);
        let _ = writeln!(
            s,
            "{}  {}  {}  {}  {}  {}  {mu}  {:?}",
            fmt_sig9(t.pitch_mm),
            t.n_cams,
            fmt_sig9(t.phi_bear_min_mm),
            fmt_sig9(t.phi_cam_min_mm),
            fmt_sig9(t.roller_radius_mm),
            fmt_sig9(t.eta),
            t.verdict
        );
    }
    s
}

fn cmd_synthesize(input: &DesignInput, out: Option<&Path>) -> Outcome {
    let mut request = parse_synthesis_request(&read(&input.config)?).map_err(|e| Failure::Invalid(e.to_string()))?;
    if let Some(v) = input.req_variant {
        request.r_eq_variant = v.into();
    }
    if let Some(n) = input.samples {
        request.n_samples = n;
    }
    match report::synthesize(&request) {
        Ok(outcome) => write(out, &(report::to_json_fixed(&outcome, true) + "\n")),
        Err(failure) => {
            write(out, &(report::to_json_fixed(&failure, true) + "\n"))?;
            let summary = format!("{}: {}", failure.error, failure.message);
            if failure.error == "infeasible" {
                Err(Failure::Infeasible(format!("{summary}\n{}", trace_table(&failure))))
            } else {
                Err(Failure::Invalid(summary))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Profile { input, out, format } => cmd_profile(input, out.as_deref(), *format),
        Command::Analyze { input, json, out } => cmd_analyze(input, *json, out.as_deref()),
        Command::Synthesize { input, out } => cmd_synthesize(input, out.as_deref()),
        Command::Serve { port } => slideocam_service::run(*port).map_err(|e| Failure::Io(format!("server error: {e}"))),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Io(m) | Failure::Invalid(m) | Failure::Infeasible(m)) = &f;
            eprintln!("{}", m.trim_end());
            ExitCode::from(f.code())
        }
    }
}
