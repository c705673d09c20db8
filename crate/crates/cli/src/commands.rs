use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

use klein_grassmannian::export::{to_csv, to_dot, to_json, StructureDoc};
use klein_grassmannian::{
    build_collinearity_graph, external_lines, find_heptads, find_isomorphism,
    heptad_pair_intersections, heptads_vs_marks, off_quadric_points, off_quadric_structure,
    removal_sequence, verify_certificate, Heptad, IncidenceStructure, PaperFixtures,
    QuadraticForm, SequenceStep,
};
use serde_json::{json, Value};

use crate::selector::Selector;
use crate::verify::{removal_orders, verify_all, VerifyReport};
use crate::{CliError, ExitCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Csv => "csv",
        }
    }
}

fn emit(text: &str, out: Option<&Path>, w: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => w.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn unsupported(what: &Selector, format: Format) -> CliError {
    CliError::UnsupportedFormat {
        what: what.to_string(),
        format: format.name().to_owned(),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Runs every check against `fx`. Exit 0 when all suites pass, 1 otherwise.
pub fn cmd_verify_all(
    fx: &PaperFixtures,
    seed: u64,
    random_orders: usize,
    format: Format,
    quiet: bool,
    out: Option<&Path>,
    w: &mut dyn Write,
) -> Result<(ExitCode, VerifyReport), CliError> {
    let report = verify_all(fx, seed, random_orders);
    let text = match format {
        Format::Json => pretty(&report),
        Format::Text => {
            let mut s = String::new();
            for suite in &report.suites {
                if quiet && suite.passed {
                    continue;
                }
                s.push_str(&format!(
                    "{} {}\n",
                    if suite.passed { "PASS" } else { "FAIL" },
                    suite.name
                ));
                for f in &suite.failures {
                    s.push_str(&format!("  {f}\n"));
                }
            }
            if !quiet {
                if let Some([n, r, m, k]) = report.params {
                    s.push_str(&format!("off-quadric configuration: ({n}_{r}, {m}_{k})\n"));
                }
                let passed = report.suites.iter().filter(|s| s.passed).count();
                s.push_str(&format!("{passed}/{} suites passed\n", report.suites.len()));
            }
            s
        }
        other => {
            return Err(CliError::UnsupportedFormat {
                what: "verify-all".into(),
                format: other.name().into(),
            })
        }
    };
    emit(&text, out, w)?;
    let code = if report.passed {
        ExitCode::Pass
    } else {
        ExitCode::VerificationFailed
    };
    Ok((code, report))
}

/// The off-quadric structure with points and lines listed in table order,
/// so that column `i` of the CSV export is table point `i`.
pub fn table_ordered_off_structure(fx: &PaperFixtures) -> Result<IncidenceStructure, CliError> {
    let off = off_quadric_structure(&QuadraticForm::canonical_hyperbolic());
    let bad = |m: String| CliError::Malformed(format!("point/line tables: {m}"));
    let rows = fx.table1_points().map_err(|e| bad(e.to_string()))?;
    let point_order = rows
        .iter()
        .map(|p| {
            off.point_index(&p.label())
                .ok_or_else(|| bad(format!("{p} is not off the quadric")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let line_index: HashMap<Vec<usize>, usize> = off
        .lines()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    let line_order = fx
        .table2
        .iter()
        .map(|row| {
            let mut l = row
                .iter()
                .map(|&i| point_order.get(i.wrapping_sub(1)).copied())
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| bad(format!("{row:?} refers to a missing point")))?;
            l.sort_unstable();
            line_index
                .get(&l)
                .copied()
                .ok_or_else(|| bad(format!("{row:?} is not an external line")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    off.reordered(&point_order, &line_order)
        .ok_or_else(|| bad("tables do not list every point and line once".into()))
}

pub fn canonical_heptads() -> Vec<Heptad> {
    let form = QuadraticForm::canonical_hyperbolic();
    let g = build_collinearity_graph(&off_quadric_points(&form), &external_lines(&form))
        .expect("external lines lie off the quadric");
    find_heptads(&g)
}

/// Table index (1-based) of each off-quadric point label.
fn table_rows(fx: &PaperFixtures) -> HashMap<String, usize> {
    fx.table1_points()
        .map(|pts| {
            pts.iter()
                .enumerate()
                .map(|(i, p)| (p.label(), i + 1))
                .collect()
        })
        .unwrap_or_default()
}

pub fn heptads_json(fx: &PaperFixtures) -> Result<Value, CliError> {
    let heptads = canonical_heptads();
    let rows = table_rows(fx);
    let cert = fx
        .bijection_certificate()
        .ok_or_else(|| CliError::Malformed("bijection table".into()))?;
    let marks = heptads_vs_marks(&heptads, &cert).map_err(|e| CliError::Malformed(e.to_string()))?;
    let report = heptad_pair_intersections(
        &heptads,
        &off_quadric_points(&QuadraticForm::canonical_hyperbolic()),
    )
    .map_err(|e| CliError::Malformed(e.to_string()))?;
    let list: Vec<Value> = heptads
        .iter()
        .zip(&marks)
        .enumerate()
        .map(|(i, (h, m))| {
            let mut table: Vec<usize> = h.labels().iter().filter_map(|l| rows.get(l).copied()).collect();
            table.sort_unstable();
            json!({
                "index": i,
                "points": h.labels(),
                "table_rows": table,
                "mark": m,
            })
        })
        .collect();
    Ok(json!({
        "heptads": list,
        "pair_intersections": report.pair_intersections,
        "coverage": report.coverage,
    }))
}

fn step_json(step: &SequenceStep) -> Value {
    json!({
        "step": step.step,
        "heptad": step.heptad,
        "params": step.params.map(|p| p.as_array()),
        "grassmannian": step.grassmannian_n.map(|n| [2, n]),
        "remark": step.remark,
        "points_removed": step.points_removed,
        "lines_removed": step.lines_removed,
        "certificate": step.certificate,
        "structure": StructureDoc::from_structure(&step.structure),
    })
}

pub fn sequence_steps(order: &[usize]) -> Result<Vec<SequenceStep>, CliError> {
    let off = off_quadric_structure(&QuadraticForm::canonical_hyperbolic());
    removal_sequence(&off, &canonical_heptads(), order).map_err(|e| CliError::Malformed(e.to_string()))
}

pub fn sequence_json(order: &[usize]) -> Result<Value, CliError> {
    let steps = sequence_steps(order)?;
    Ok(json!({
        "order": order,
        "steps": steps.iter().map(step_json).collect::<Vec<_>>(),
    }))
}

/// Writes the selected structure or report in the requested format.
pub fn cmd_export(
    fx: &PaperFixtures,
    what: &Selector,
    format: Format,
    out: Option<&Path>,
    w: &mut dyn Write,
) -> Result<ExitCode, CliError> {
    let text = match (what, format) {
        (Selector::OffStructure, Format::Csv) => {
            to_csv(&table_ordered_off_structure(fx)?).map_err(|e| CliError::Malformed(e.to_string()))?
        }
        (Selector::Heptads, Format::Json) => pretty(&heptads_json(fx)?),
        (Selector::Sequence, Format::Json) => pretty(&sequence_json(&(0..8).collect::<Vec<_>>())?),
        (Selector::Heptads | Selector::Sequence, f) => return Err(unsupported(what, f)),
        (_, Format::Text) => return Err(unsupported(what, Format::Text)),
        (sel, f) => {
            let s = sel.structure()?;
            match f {
                Format::Json => {
                    let mut t = to_json(&s);
                    t.push('\n');
                    t
                }
                Format::Dot => to_dot(&s),
                Format::Csv => to_csv(&s).map_err(|e| CliError::Malformed(e.to_string()))?,
                Format::Text => unreachable!("handled above"),
            }
        }
    };
    emit(&text, out, w)?;
    Ok(ExitCode::Pass)
}

/// Exit 0 with a certificate when `a ≅ b`, exit 2 otherwise.
pub fn cmd_iso(
    a: &Selector,
    b: &Selector,
    out: Option<&Path>,
    quiet: bool,
    w: &mut dyn Write,
) -> Result<ExitCode, CliError> {
    let sa = a.structure()?;
    let sb = b.structure()?;
    match find_isomorphism(&sa, &sb) {
        Some(cert) => {
            let ok = verify_certificate(&sa, &sb, &cert).unwrap_or(false);
            if !ok {
                return Ok(ExitCode::VerificationFailed);
            }
            let doc = pretty(&cert);
            match out {
                Some(_) => {
                    emit(&doc, out, w)?;
                    if !quiet {
                        emit(&format!("isomorphic: {a} ~ {b}\n"), None, w)?;
                    }
                }
                None if quiet => {}
                None => emit(&doc, None, w)?,
            }
            Ok(ExitCode::Pass)
        }
        None => {
            if !quiet {
                emit(&format!("not isomorphic: {a} vs {b}\n"), None, w)?;
            }
            Ok(ExitCode::NotIsomorphic)
        }
    }
}

pub fn cmd_heptads(fx: &PaperFixtures, format: Format, w: &mut dyn Write) -> Result<ExitCode, CliError> {
    let doc = heptads_json(fx)?;
    let text = match format {
        Format::Json => pretty(&doc),
        Format::Text => {
            let mut s = String::new();
            for h in doc["heptads"].as_array().into_iter().flatten() {
                s.push_str(&format!(
                    "heptad {} mark {}: table rows {}\n",
                    h["index"], h["mark"], h["table_rows"]
                ));
            }
            s
        }
        f => return Err(unsupported(&Selector::Heptads, f)),
    };
    emit(&text, None, w)?;
    Ok(ExitCode::Pass)
}

/// Removal sequence for an explicit order, a seeded random order, or the
/// identity order.
pub fn cmd_sequence(
    order: Option<Vec<usize>>,
    seed: Option<u64>,
    format: Format,
    w: &mut dyn Write,
) -> Result<ExitCode, CliError> {
    let order = match (order, seed) {
        (Some(o), _) => o,
        (None, Some(seed)) => removal_orders(8, seed, 1).pop().expect("one order"),
        (None, None) => (0..8).collect(),
    };
    let text = match format {
        Format::Json => pretty(&sequence_json(&order)?),
        Format::Text => {
            let steps = sequence_steps(&order)?;
            let mut s = format!("order {order:?}\n");
            for step in &steps {
                s.push_str(&format!("{step}\n"));
            }
            s
        }
        f => return Err(unsupported(&Selector::Sequence, f)),
    };
    emit(&text, None, w)?;
    Ok(ExitCode::Pass)
}
