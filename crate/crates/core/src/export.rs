//! JSON, DOT and CSV renderings of incidence structures.
//!
//! JSON layout:
//!
//! ```json
//! {
//!   "points": [{"id": "7", "tags": {"coords": "111000"}}],
//!   "lines": [["7", "11", "12"]],
//!   "meta": {"params": [28, 6, 56, 3], "name": "off-quadric"}
//! }
//! ```
//!
//! `meta.params` is `null` when the structure is not a configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::incidence::{IncidenceError, IncidenceStructure, PointRecord};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointDoc {
    pub id: String,
    #[serde(default)]
    pub tags: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaDoc {
    #[serde(default)]
    pub params: Option<[usize; 4]>,
    #[serde(default)]
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub points: Vec<PointDoc>,
    pub lines: Vec<Vec<String>>,
    pub meta: MetaDoc,
}

impl StructureDoc {
    pub fn from_structure(s: &IncidenceStructure) -> Self {
        StructureDoc {
            points: s
                .points()
                .iter()
                .map(|p| PointDoc {
                    id: p.id.clone(),
                    tags: p.tags.clone(),
                })
                .collect(),
            lines: s
                .line_labels()
                .into_iter()
                .map(|l| l.into_iter().map(str::to_owned).collect())
                .collect(),
            meta: MetaDoc {
                params: s.measure_params().ok().map(|p| p.as_array()),
                name: s.name().to_owned(),
            },
        }
    }

    pub fn into_structure(self) -> Result<IncidenceStructure, IncidenceError> {
        let points = self
            .points
            .into_iter()
            .map(|p| PointRecord {
                id: p.id,
                tags: p.tags,
            })
            .collect();
        IncidenceStructure::new(self.meta.name, points, &self.lines)
    }
}

pub fn to_json(s: &IncidenceStructure) -> String {
    serde_json::to_string_pretty(&StructureDoc::from_structure(s)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<IncidenceStructure, ExportError> {
    let doc: StructureDoc = serde_json::from_str(text)?;
    Ok(doc.into_structure()?)
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Levi graph: points as circles, lines as boxes, one edge per flag.
pub fn to_dot(s: &IncidenceStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", dot_quote(s.name()));
    let _ = writeln!(out, "  node [shape=circle];");
    for p in s.points() {
        let _ = writeln!(out, "  {} [label={}];", dot_quote(&format!("p:{}", p.id)), dot_quote(&p.id));
    }
    let _ = writeln!(out, "  node [shape=box];");
    for i in 0..s.num_lines() {
        let _ = writeln!(out, "  {} [label=\"L{}\"];", dot_quote(&format!("l:{}", i + 1)), i + 1);
    }
    for (i, line) in s.lines().iter().enumerate() {
        for &p in line {
            let _ = writeln!(
                out,
                "  {} -- {};",
                dot_quote(&format!("p:{}", s.point_label(p))),
                dot_quote(&format!("l:{}", i + 1))
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Incidence matrix with one row per line and one column per point.
///
/// The first header row numbers the columns `1..=n`, the second gives the
/// point ids. Each data row starts with the one-based line number, followed
/// by `+` where the point lies on the line and an empty cell otherwise.
pub fn to_csv(s: &IncidenceStructure) -> Result<String, ExportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let n = s.num_points();
    let mut header = vec!["No.".to_owned()];
    header.extend((1..=n).map(|i| i.to_string()));
    w.write_record(&header)?;
    let mut ids = vec!["id".to_owned()];
    ids.extend(s.points().iter().map(|p| p.id.clone()));
    w.write_record(&ids)?;
    for (i, line) in s.lines().iter().enumerate() {
        let mut row = vec![String::new(); n + 1];
        row[0] = (i + 1).to_string();
        for &p in line {
            row[p + 1] = "+".to_owned();
        }
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Parses [`to_csv`] output back into `(point ids, lines as column indices)`.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<usize>>), ExportError> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut records = r.records();
    let _numbers = records.next().transpose()?;
    let ids = records
        .next()
        .transpose()?
        .map(|rec| rec.iter().skip(1).map(str::to_owned).collect())
        .unwrap_or_default();
    let mut lines = Vec::new();
    for rec in records {
        let rec = rec?;
        lines.push(
            rec.iter()
                .skip(1)
                .enumerate()
                .filter(|(_, c)| *c == "+")
                .map(|(i, _)| i)
                .collect(),
        );
    }
    Ok((ids, lines))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmannian::build_grassmannian;
    use crate::incidence::structure_from_labels;

    #[test]
    fn json_round_trip() {
        let g = build_grassmannian(2, 5).unwrap();
        let text = to_json(&g);
        assert_eq!(from_json(&text).unwrap(), g);
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["meta"]["params"], serde_json::json!([10, 3, 10, 3]));
        assert_eq!(doc["meta"]["name"], "G_2(5)");
        assert_eq!(doc["points"][0]["id"], "{1,2}");
        assert_eq!(doc["points"][0]["tags"]["marks"], serde_json::json!([1, 2]));
    }

    #[test]
    fn json_without_tags_or_params() {
        let text = r#"{"points":[{"id":"a"},{"id":"b"}],"lines":[["a","b"]],"meta":{"name":"x"}}"#;
        let s = from_json(text).unwrap();
        assert_eq!(s.num_lines(), 1);
        assert!(matches!(from_json("{"), Err(ExportError::Json(_))));
        let bad = r#"{"points":[{"id":"a"}],"lines":[["a","b"]],"meta":{"name":"x"}}"#;
        assert!(matches!(from_json(bad), Err(ExportError::Incidence(_))));
    }

    #[test]
    fn json_params_null_for_non_configuration() {
        let s = structure_from_labels("x", &["a", "b", "c"], &[&["a", "b"]]).unwrap();
        let doc: Value = serde_json::from_str(&to_json(&s)).unwrap();
        assert!(doc["meta"]["params"].is_null());
    }

    #[test]
    fn dot_shapes() {
        let g = build_grassmannian(2, 3).unwrap();
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph \"G_2(3)\" {"));
        assert!(dot.contains("node [shape=circle];"));
        assert!(dot.contains("node [shape=box];"));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }

    #[test]
    fn csv_layout() {
        let g = build_grassmannian(2, 4).unwrap();
        let text = to_csv(&g).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("No.,1,2,3,4,5,6"));
        assert_eq!(
            lines.next(),
            Some("id,\"{1,2}\",\"{1,3}\",\"{1,4}\",\"{2,3}\",\"{2,4}\",\"{3,4}\"")
        );
        assert_eq!(lines.next(), Some("1,+,+,,+,,"));
        let (ids, parsed) = parse_csv(&text).unwrap();
        assert_eq!(ids.len(), 6);
        assert_eq!(parsed, g.lines());
    }
}
