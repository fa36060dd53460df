//! Report rendering in json, csv and markdown.

use dualsym::classical::SimulationSummary;
use dualsym::spectra::SpectrumRow;
use dualsym::suites::{Report, Suite};
use serde::Serialize;

use crate::{CliError, Format};

fn json<T: Serialize + ?Sized>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Runtime(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<I, R>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Runtime(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Runtime(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Runtime(e.to_string()))
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn report(r: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(
            &["suite", "check", "pass", "detail"],
            r.checks.iter().map(|c| [c.suite.to_string(), c.name.clone(), c.pass.to_string(), c.detail.clone()]),
        ),
        Format::Markdown => {
            let c = &r.config;
            let mut out = format!(
                "# Verification report: {}\n\nm = {}, hbar = {}, gamma = {}, omega = {}, tol = {:e}, seed = {}\n",
                r.suite, c.m, c.hbar, c.gamma, c.omega, c.tol, c.seed
            );
            for s in Suite::EACH {
                let checks: Vec<_> = r.checks.iter().filter(|x| x.suite == s.name()).collect();
                if checks.is_empty() {
                    continue;
                }
                out.push_str(&format!("\n## {}\n\n| check | result | detail |\n|---|---|---|\n", s.title()));
                for x in checks {
                    let mark = if x.pass { "pass" } else { "FAIL" };
                    out.push_str(&format!("| {} | {} | {} |\n", cell(&x.name), mark, cell(&x.detail)));
                }
            }
            out.push_str(&format!("\n{} checks, {} failed\n", r.checks.len(), r.failures()));
            Ok(out)
        }
    }
}

pub fn summary(s: &SimulationSummary, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json | Format::Csv => json(s),
        Format::Markdown => {
            let d = &s.dual_residuals;
            let mut rows = vec![
                ("m", s.oscillator.m.to_string()),
                ("gamma", s.oscillator.gamma.to_string()),
                ("omega", s.oscillator.omega.to_string()),
                ("t_end", s.t_end.to_string()),
                ("tol", format!("{:e}", s.tol)),
                ("steps", s.steps.to_string()),
                ("rejected steps", s.rejected_steps.to_string()),
                ("H(0)", s.energy_initial.to_string()),
                ("energy drift", format!("{:e}", s.energy_drift)),
                ("relative energy drift", format!("{:e}", s.energy_drift_relative)),
                ("pointwise dual residual", format!("{:e}", d.pointwise)),
                ("x closed-form deviation", format!("{:e}", d.x_deviation)),
                ("y closed-form deviation", format!("{:e}", d.y_deviation)),
            ];
            if let Some(r) = &s.reduction {
                rows.push(("reduction max deviation", format!("{:e}", r.max_deviation)));
                rows.push(("reduction max constraint", format!("{:e}", r.max_constraint)));
            }
            let mut out = String::from("# Simulation summary\n\n| quantity | value |\n|---|---|\n");
            for (k, v) in rows {
                out.push_str(&format!("| {k} | {v} |\n"));
            }
            Ok(out)
        }
    }
}

pub fn spectrum(rows: &[SpectrumRow], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(rows),
        Format::Csv => csv_rows(
            &["regime", "first", "lambda", "E", "residual_max", "samples"],
            rows.iter().map(|r| {
                [
                    r.regime.to_string(),
                    r.labels.first.to_string(),
                    r.labels.lambda.to_string(),
                    r.energy.to_string(),
                    format!("{:e}", r.residual_max),
                    r.samples.to_string(),
                ]
            }),
        ),
        Format::Markdown => {
            let mut out = String::from("# Spectrum\n\n| regime | first | lambda | E | residual_max | samples |\n|---|---|---|---|---|---|\n");
            for r in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {:e} | {} |\n",
                    r.regime, r.labels.first, r.labels.lambda, r.energy, r.residual_max, r.samples
                ));
            }
            Ok(out)
        }
    }
}
