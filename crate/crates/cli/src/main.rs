//! Command-line surface for the two-gap Airy determinant machinery:
//! numeric determinants, asymptotic evaluation, the verification suite,
//! and CSV sweeps for plotting the theta oscillation.

mod output;

use airygap::asymptotics::{separation_d, two_gap_asym, ExpansionForm};
use airygap::fredholm::{det_two_gap_opts, NystromOptions};
use airygap::geometry::{elliptic_data, GapConfig};
use airygap::verify;
use clap::{Args, Parser, Subcommand};
use output::{fmt15, write_out, AsymJson, BreakdownJson, CompareJson, DetJson, Envelope};
use rayon::prelude::*;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "airygap",
    version,
    about = "Two-gap Airy-kernel determinants and their large-s asymptotics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// Endpoint a (c < b < a < 0)
    #[arg(short = 'a', long, allow_hyphen_values = true)]
    a: f64,
    /// Endpoint b
    #[arg(short = 'b', long, allow_hyphen_values = true)]
    b: f64,
    /// Endpoint c
    #[arg(short = 'c', long, allow_hyphen_values = true)]
    c: f64,
    /// Scale s > 0 of the gap set (sc, sb) u (sa, inf)
    #[arg(short = 's', long, default_value_t = 1.0)]
    s: f64,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    output: String,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Numeric log-determinant of the Airy kernel on (sc, sb) u (sa, inf)
    Det {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Starting per-interval node count (doubled until converged)
        #[arg(long, default_value_t = 80)]
        nodes: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Per-term asymptotic expansion (one form or all three)
    Asym {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// theorem1 | remark1 | remark3 | all
        #[arg(long, default_value = "all")]
        form: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Determinant and asymptotics side by side with their difference
    Compare {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 80)]
        nodes: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the verification suite; nonzero exit if any check fails
    Verify {
        /// Seed for the random configuration sampler
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of sampled configurations for the identity checks
        #[arg(long, default_value_t = 50)]
        configs: usize,
        /// Also run the slow end-to-end gates (theorem and separation)
        #[arg(long)]
        full: bool,
        /// Output format: text (one line per check) or json
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        output: String,
    },
    /// CSV rows of determinant vs expansion over an s-grid
    Sweep {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long)]
        s_from: f64,
        #[arg(long)]
        s_to: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[arg(long, default_value_t = 80)]
        nodes: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Splitting of the two-gap determinant into sine and airy factors in
    /// the regime b = c + 2 t0 / s^{3/2}, a = -t1 / s
    Separation {
        #[arg(short = 's', long, default_value_t = 200.0)]
        s: f64,
        #[arg(long, default_value_t = 2.0)]
        t0: f64,
        #[arg(long, default_value_t = 2.0)]
        t1: f64,
        #[arg(short = 'c', long, default_value_t = -3.0, allow_hyphen_values = true)]
        c: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn nystrom_options(start: usize) -> NystromOptions {
    let mut opts = NystromOptions {
        start_nodes: start,
        ..Default::default()
    };
    if let Ok(cap) = std::env::var("AIRYGAP_MAX_NODES") {
        if let Ok(cap) = cap.parse::<usize>() {
            opts.max_nodes = cap.max(8);
            opts.start_nodes = opts.start_nodes.min(opts.max_nodes);
        }
    }
    opts
}

fn parse_cfg(args: &ConfigArgs) -> Result<GapConfig, String> {
    GapConfig::new(args.a, args.b, args.c, args.s).map_err(|e| {
        format!("{e}\nexpected ordering c < b < a < 0 with s > 0, e.g. -a -1 -b -2 -c -3 -s 2")
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(RunError::Argument(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(3)
        }
    }
}

enum RunError {
    Argument(String),
    Numeric(String),
}

impl From<airygap::Error> for RunError {
    fn from(e: airygap::Error) -> Self {
        match e {
            airygap::Error::InvalidArgument(m) | airygap::Error::Degenerate(m) => {
                RunError::Argument(m)
            }
            airygap::Error::InternalConsistency(m) | airygap::Error::NumericFailure(m) => {
                RunError::Numeric(m)
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, RunError> {
    match cli.command {
        Command::Det { cfg, nodes, out } => {
            let cfg = parse_cfg(&cfg).map_err(RunError::Argument)?;
            let opts = nystrom_options(nodes);
            let det = det_two_gap_opts(&cfg, &opts).map_err(named("det"))?;
            let body = Envelope::det(&cfg, nodes, DetJson::from(&det));
            emit(&out, body.json(), body.csv())?;
        }
        Command::Asym { cfg, form, out } => {
            let cfg = parse_cfg(&cfg).map_err(RunError::Argument)?;
            let ed = elliptic_data(&cfg).map_err(named("asym"))?;
            let forms = parse_forms(&form).map_err(RunError::Argument)?;
            let mut breakdowns = Vec::new();
            for f in forms {
                breakdowns.push(BreakdownJson::from(
                    &two_gap_asym(&cfg, &ed, f).map_err(named("asym"))?,
                ));
            }
            let body = Envelope::asym(&cfg, &form, AsymJson { forms: breakdowns });
            emit(&out, body.json(), body.csv())?;
        }
        Command::Compare { cfg, nodes, out } => {
            let cfg = parse_cfg(&cfg).map_err(RunError::Argument)?;
            let opts = nystrom_options(nodes);
            let det = det_two_gap_opts(&cfg, &opts).map_err(named("compare/det"))?;
            let ed = elliptic_data(&cfg).map_err(named("compare/elliptic"))?;
            let asym =
                two_gap_asym(&cfg, &ed, ExpansionForm::Theorem1).map_err(named("compare/asym"))?;
            let body = Envelope::compare(
                &cfg,
                nodes,
                CompareJson {
                    det: DetJson::from(&det),
                    asym: BreakdownJson::from(&asym),
                    difference: fmt15(det.log_det - asym.total),
                },
            );
            emit(&out, body.json(), body.csv())?;
        }
        Command::Verify {
            seed,
            configs,
            full,
            output,
        } => {
            return run_verify(seed, configs, full, output == "json").map_err(RunError::from);
        }
        Command::Sweep {
            cfg,
            s_from,
            s_to,
            steps,
            nodes,
            out,
        } => {
            let base = parse_cfg(&cfg).map_err(RunError::Argument)?;
            if !(s_from > 0.0 && s_to > s_from && steps >= 2) {
                return Err(RunError::Argument(
                    "sweep needs 0 < --s-from < --s-to and --steps >= 2".into(),
                ));
            }
            let opts = nystrom_options(nodes);
            let rows: Result<Vec<String>, airygap::Error> = (0..steps)
                .into_par_iter()
                .map(|i| {
                    let s = s_from + (s_to - s_from) * i as f64 / (steps - 1) as f64;
                    let cfg = base.with_s(s)?;
                    let det = det_two_gap_opts(&cfg, &opts)?;
                    let ed = elliptic_data(&cfg)?;
                    let asym = two_gap_asym(&cfg, &ed, ExpansionForm::Theorem1)?;
                    Ok(output::sweep_row(s, &det, &asym))
                })
                .collect();
            let rows = rows.map_err(named("sweep"))?;
            let mut text = String::from(output::SWEEP_HEADER);
            text.push('\n');
            for r in rows {
                text.push_str(&r);
                text.push('\n');
            }
            write_out(&out.out, &text).map_err(RunError::Numeric)?;
        }
        Command::Separation { s, t0, t1, c, out } => {
            let report = verify::check_separation(s, t0, t1, c).map_err(named("separation"))?;
            let d = separation_d(c, s, t0, t1).map_err(named("separation"))?;
            let body = Envelope::separation(s, t0, t1, c, &report, &d);
            emit(&out, body.json(), body.csv())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn named(op: &'static str) -> impl Fn(airygap::Error) -> RunError {
    move |e| match e {
        airygap::Error::InvalidArgument(m) | airygap::Error::Degenerate(m) => {
            RunError::Argument(format!("{op}: {m}"))
        }
        airygap::Error::InternalConsistency(m) | airygap::Error::NumericFailure(m) => {
            RunError::Numeric(format!("{op}: {m}"))
        }
    }
}

fn parse_forms(s: &str) -> Result<Vec<ExpansionForm>, String> {
    if s == "all" {
        return Ok(ExpansionForm::ALL.to_vec());
    }
    s.parse::<ExpansionForm>()
        .map(|f| vec![f])
        .map_err(|e| e.to_string())
}

fn emit(out: &OutputArgs, json: String, csv: String) -> Result<(), RunError> {
    let text = if out.output == "csv" { csv } else { json };
    write_out(&out.out, &text).map_err(RunError::Numeric)
}

fn run_verify(
    seed: u64,
    configs: usize,
    full: bool,
    as_json: bool,
) -> Result<ExitCode, airygap::Error> {
    let mut reports = verify::exact_identity_suite(seed, configs)?;
    for cfg in verify::sample_configs(3, seed.wrapping_add(1)) {
        reports.extend(verify::check_param_derivatives(&cfg)?);
    }
    if full {
        let cfg = GapConfig::new(-1.0, -2.0, -3.0, 1.0)?;
        reports.push(verify::check_theorem1(&cfg, &[1.5, 2.5, 3.5])?);
        let r50 = verify::check_separation(50.0, 2.0, 2.0, -3.0)?;
        let mut r200 = verify::check_separation(200.0, 2.0, 2.0, -3.0)?;
        r200.context = format!("{} | residual at s=50: {:.4}", r200.context, r50.residual);
        if r200.residual >= r50.residual {
            r200.residual = f64::INFINITY;
            r200.passed = false;
        }
        reports.push(r200);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if as_json {
        print!("{}", output::verify_json(seed, configs, full, &reports));
    } else {
        for r in &reports {
            println!(
                "{} {:<58} residual {:>12} tol {:>8} [{}]",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                format!("{:.3e}", r.residual),
                format!("{:.1e}", r.tolerance),
                r.context
            );
        }
        println!(
            "{}/{} checks passed (seed {seed}, {configs} configs)",
            reports.len() - failed,
            reports.len()
        );
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
