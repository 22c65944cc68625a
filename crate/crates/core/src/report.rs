//! JSON reports, per-curve CSV traces and atomic file output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::{Error, Result};
use crate::lindelof::{CurveReport, SliceRow, VerificationReport};

pub const REPORT_FILE: &str = "report.json";
pub const LOG_FILE: &str = "run.log";

pub const TRACE_HEADER: [&str; 11] = [
    "t",
    "s",
    "normal_dist",
    "tangential_dist",
    "ratio",
    "k",
    "R",
    "gap",
    "bound",
    "f_re",
    "f_im",
];

pub fn to_json(report: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports contain only finite numbers");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<VerificationReport> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        field: "report".into(),
        message: e.to_string(),
    })
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>, missing: &str) -> String {
    x.map_or_else(|| missing.to_string(), num)
}

/// CSV trace; a degenerate slice has `k = R = inf` and an empty bound.
pub fn trace_csv(rows: &[SliceRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRACE_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            num(r.t),
            num(r.s),
            num(r.normal_dist),
            num(r.tangential_dist),
            num(r.ratio),
            opt(r.k, "inf"),
            opt(r.radius, "inf"),
            num(r.gap),
            opt(r.bound, ""),
            num(r.f_value.re),
            num(r.f_value.im),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// File-name-safe version of a curve name.
pub fn trace_file_name(curve: &str) -> String {
    let stem: String = curve
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    format!("trace_{stem}.csv")
}

/// Writes `contents` to a sibling temporary file, then renames it into
/// place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Io(format!("{}: not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", file_name.to_string_lossy()));
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

/// Writes `report.json`, one trace per curve and the timestamped log into
/// `dir/<scenario id>`. Returns the scenario directory.
pub fn write_outputs(dir: &Path, report: &VerificationReport) -> Result<PathBuf> {
    let sdir = dir.join(&report.scenario_id);
    fs::create_dir_all(&sdir).map_err(|e| Error::Io(format!("{}: {e}", sdir.display())))?;
    write_atomic(&sdir.join(REPORT_FILE), to_json(report).as_bytes())?;
    let mut log = String::new();
    let stamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    log.push_str(&format!(
        "unix_time = {stamp}\nscenario = {}\nverdict = {:?}\n",
        report.scenario_id, report.verdict
    ));
    for c in &report.curves {
        if c.trace.is_empty() {
            continue;
        }
        let name = trace_file_name(&c.name);
        write_atomic(&sdir.join(&name), trace_csv(&c.trace).as_bytes())?;
        log.push_str(&format!("trace = {name}\n"));
    }
    write_atomic(&sdir.join(LOG_FILE), log.as_bytes())?;
    Ok(sdir)
}

/// One line per curve for terminal output.
pub fn summary_line(c: &CurveReport) -> String {
    let limit = match c.limit.and_then(|l| l.value()) {
        Some(v) => format!("{:.6e}{:+.6e}i", v.re, v.im),
        None => c.limit.map_or("-".to_string(), |l| l.label().to_string()),
    };
    let schwarz = c.schwarz.as_ref().map_or("-".to_string(), |s| {
        if s.degenerate == s.checked {
            "degenerate slices, gap 0".to_string()
        } else {
            format!(
                "{}/{} pass, gap tail {:.1e}",
                s.passed,
                s.checked - s.degenerate,
                s.max_gap_tail
            )
        }
    });
    format!(
        "  {:<18} {:<9} special={:<12} restricted={:<12} limit={:<28} schwarz: {:<32} {}",
        c.name,
        format!("{:?}", c.role),
        c.special.to_string(),
        c.restricted.to_string(),
        limit,
        schwarz,
        if !c.mandatory {
            "info"
        } else if c.passed {
            "ok"
        } else {
            "FAILED"
        }
    )
}
