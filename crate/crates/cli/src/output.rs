//! Serialization: JSON envelopes with `{"request", "result", "diagnostics"}`
//! and flat CSV. All numbers are emitted as decimal strings with 15
//! significant digits so identical requests produce byte-identical output
//! on every platform.

use airygap::asymptotics::{AsymptoticBreakdown, SeparationD};
use airygap::fredholm::LogDetResult;
use airygap::geometry::GapConfig;
use airygap::verify::CheckReport;
use serde::Serialize;

/// 15 significant digits, scientific; the fixed width keeps diffs stable.
pub fn fmt15(x: f64) -> String {
    format!("{x:.14e}")
}

#[derive(Serialize)]
pub struct RequestJson {
    pub command: String,
    pub a: Option<String>,
    pub b: Option<String>,
    pub c: Option<String>,
    pub s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<String>,
}

#[derive(Serialize)]
pub struct DetJson {
    pub log_det: String,
    pub n_nodes: usize,
    pub truncation_point: String,
    pub est_error: String,
}

impl From<&LogDetResult> for DetJson {
    fn from(r: &LogDetResult) -> Self {
        DetJson {
            log_det: fmt15(r.log_det),
            n_nodes: r.n_nodes,
            truncation_point: fmt15(r.truncation_point),
            est_error: fmt15(r.est_error),
        }
    }
}

#[derive(Serialize)]
pub struct BreakdownJson {
    pub form: String,
    pub cubic_term: String,
    pub log_term: String,
    pub theta_phase: String,
    pub theta_term: String,
    pub constant_term: String,
    pub total: String,
}

impl From<&AsymptoticBreakdown> for BreakdownJson {
    fn from(b: &AsymptoticBreakdown) -> Self {
        BreakdownJson {
            form: b.form.name().to_string(),
            cubic_term: fmt15(b.cubic_term),
            log_term: fmt15(b.log_term),
            theta_phase: fmt15(b.theta_phase),
            theta_term: fmt15(b.theta_term),
            constant_term: fmt15(b.constant_term),
            total: fmt15(b.total),
        }
    }
}

#[derive(Serialize)]
pub struct AsymJson {
    pub forms: Vec<BreakdownJson>,
}

#[derive(Serialize)]
pub struct CompareJson {
    pub det: DetJson,
    pub asym: BreakdownJson,
    pub difference: String,
}

#[derive(Serialize)]
pub struct SeparationJson {
    pub splitting_residual: String,
    pub passed: bool,
    pub d_exact: String,
    pub d_expansion: String,
    pub d_difference: String,
}

#[derive(Serialize)]
pub struct DiagnosticsJson {
    pub version: &'static str,
}

/// Top-level `{"request", "result", "diagnostics"}` document.
pub struct Envelope<T: Serialize> {
    request: RequestJson,
    result: T,
    csv_header: String,
    csv_row: String,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    request: &'a RequestJson,
    result: &'a T,
    diagnostics: DiagnosticsJson,
}

impl<T: Serialize> Envelope<T> {
    pub fn json(&self) -> String {
        let doc = Document {
            request: &self.request,
            result: &self.result,
            diagnostics: DiagnosticsJson {
                version: env!("CARGO_PKG_VERSION"),
            },
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn csv(&self) -> String {
        format!("{}\n{}\n", self.csv_header, self.csv_row)
    }
}

fn cfg_request(command: &str, cfg: &GapConfig) -> RequestJson {
    RequestJson {
        command: command.to_string(),
        a: Some(fmt15(cfg.a())),
        b: Some(fmt15(cfg.b())),
        c: Some(fmt15(cfg.c())),
        s: Some(fmt15(cfg.s())),
        nodes: None,
        form: None,
        t0: None,
        t1: None,
    }
}

impl Envelope<DetJson> {
    pub fn det(cfg: &GapConfig, nodes: usize, det: DetJson) -> Self {
        let mut request = cfg_request("det", cfg);
        request.nodes = Some(nodes);
        let csv_row = format!(
            "{},{},{},{}",
            det.log_det, det.n_nodes, det.truncation_point, det.est_error
        );
        Envelope {
            request,
            result: det,
            csv_header: "log_det,n_nodes,truncation_point,est_error".into(),
            csv_row,
        }
    }
}

impl Envelope<AsymJson> {
    pub fn asym(cfg: &GapConfig, form: &str, asym: AsymJson) -> Self {
        let mut request = cfg_request("asym", cfg);
        request.form = Some(form.to_string());
        let header = "form,cubic_term,log_term,theta_phase,theta_term,constant_term,total";
        let rows: Vec<String> = asym
            .forms
            .iter()
            .map(|b| {
                format!(
                    "{},{},{},{},{},{},{}",
                    b.form,
                    b.cubic_term,
                    b.log_term,
                    b.theta_phase,
                    b.theta_term,
                    b.constant_term,
                    b.total
                )
            })
            .collect();
        Envelope {
            request,
            result: asym,
            csv_header: header.into(),
            csv_row: rows.join("\n"),
        }
    }
}

impl Envelope<CompareJson> {
    pub fn compare(cfg: &GapConfig, nodes: usize, cmp: CompareJson) -> Self {
        let mut request = cfg_request("compare", cfg);
        request.nodes = Some(nodes);
        let csv_row = format!(
            "{},{},{},{}",
            cmp.det.log_det, cmp.asym.total, cmp.difference, cmp.det.est_error
        );
        Envelope {
            request,
            result: cmp,
            csv_header: "log_det,asym_total,difference,est_error".into(),
            csv_row,
        }
    }
}

impl Envelope<SeparationJson> {
    pub fn separation(
        s: f64,
        t0: f64,
        t1: f64,
        c: f64,
        report: &CheckReport,
        d: &SeparationD,
    ) -> Self {
        let request = RequestJson {
            command: "separation".to_string(),
            a: None,
            b: None,
            c: Some(fmt15(c)),
            s: Some(fmt15(s)),
            nodes: None,
            form: None,
            t0: Some(fmt15(t0)),
            t1: Some(fmt15(t1)),
        };
        let result = SeparationJson {
            splitting_residual: fmt15(report.residual),
            passed: report.passed,
            d_exact: fmt15(d.exact),
            d_expansion: fmt15(d.expansion),
            d_difference: fmt15(d.difference),
        };
        let csv_row = format!(
            "{},{},{},{},{}",
            result.splitting_residual,
            result.passed,
            result.d_exact,
            result.d_expansion,
            result.d_difference
        );
        Envelope {
            request,
            result,
            csv_header: "splitting_residual,passed,d_exact,d_expansion,d_difference".into(),
            csv_row,
        }
    }
}

/// Stable sweep schema; one row per s.
pub const SWEEP_HEADER: &str =
    "s,log_det,asym_total,cubic_term,log_term,theta_phase,theta_term,constant_term,difference,n_nodes,est_error";

pub fn sweep_row(s: f64, det: &LogDetResult, asym: &AsymptoticBreakdown) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        fmt15(s),
        fmt15(det.log_det),
        fmt15(asym.total),
        fmt15(asym.cubic_term),
        fmt15(asym.log_term),
        fmt15(asym.theta_phase),
        fmt15(asym.theta_term),
        fmt15(asym.constant_term),
        fmt15(det.log_det - asym.total),
        det.n_nodes,
        fmt15(det.est_error)
    )
}

/// Write with LF endings to stdout or a file.
pub fn write_out(path: &Option<String>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("writing {p}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyCheckJson {
    name: String,
    residual: String,
    tolerance: String,
    passed: bool,
    context: String,
}

#[derive(Serialize)]
struct VerifyRequestJson {
    command: &'static str,
    seed: u64,
    configs: usize,
    full: bool,
}

#[derive(Serialize)]
struct VerifyResultJson {
    checks: Vec<VerifyCheckJson>,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct VerifyDocument {
    request: VerifyRequestJson,
    result: VerifyResultJson,
    diagnostics: DiagnosticsJson,
}

/// Machine-readable verification report.
pub fn verify_json(seed: u64, configs: usize, full: bool, reports: &[CheckReport]) -> String {
    let checks: Vec<VerifyCheckJson> = reports
        .iter()
        .map(|r| VerifyCheckJson {
            name: r.name.clone(),
            residual: fmt15(r.residual),
            tolerance: fmt15(r.tolerance),
            passed: r.passed,
            context: r.context.clone(),
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let doc = VerifyDocument {
        request: VerifyRequestJson {
            command: "verify",
            seed,
            configs,
            full,
        },
        result: VerifyResultJson {
            passed: checks.len() - failed,
            failed,
            checks,
        },
        diagnostics: DiagnosticsJson {
            version: env!("CARGO_PKG_VERSION"),
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}
