//! Abstract point-line incidence structures.
//!
//! Points carry opaque string labels plus optional tags; lines are sets of
//! point indices. Both lists keep the order they were built in, which makes
//! every export deterministic.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde_json::Value;
use thiserror::Error;

use crate::grassmannian::ConfigParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("duplicate point label `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("line {line} repeats point `{point}`")]
    RepeatedPointOnLine { line: usize, point: String },
    #[error("lines {first} and {second} have the same point set")]
    RepeatedLine { first: usize, second: usize },
    #[error("point `{point}` lies on {degree} lines, expected {expected}")]
    NonUniformDegree {
        point: String,
        degree: usize,
        expected: usize,
    },
    #[error("line {line} has {size} points, expected {expected}")]
    NonUniformLineSize {
        line: usize,
        size: usize,
        expected: usize,
    },
    #[error("certificate domain does not match the point set: {0}")]
    DomainMismatch(String),
}

impl IncidenceError {
    /// True for the two variants that mean "not a configuration".
    pub fn is_not_a_configuration(&self) -> bool {
        matches!(
            self,
            IncidenceError::NonUniformDegree { .. } | IncidenceError::NonUniformLineSize { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointRecord {
    pub id: String,
    pub tags: BTreeMap<String, Value>,
}

impl PointRecord {
    pub fn new(id: impl Into<String>) -> Self {
        PointRecord {
            id: id.into(),
            tags: BTreeMap::new(),
        }
    }

    pub fn with_tag(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.tags.insert(key.to_owned(), value.into());
        self
    }
}

/// A finite point-line incidence structure with no repeated lines.
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    name: String,
    points: Vec<PointRecord>,
    // each line sorted ascending by point index
    lines: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl PartialEq for IncidenceStructure {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.points == other.points && self.lines == other.lines
    }
}

impl IncidenceStructure {
    /// Builds a structure from point labels and lines given by label.
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        points: Vec<PointRecord>,
        lines: &[Vec<S>],
    ) -> Result<Self, IncidenceError> {
        let index = build_index(&points)?;
        let mut idx_lines = Vec::with_capacity(lines.len());
        for line in lines {
            let mut l = Vec::with_capacity(line.len());
            for label in line {
                let label = label.as_ref();
                l.push(
                    *index
                        .get(label)
                        .ok_or_else(|| IncidenceError::UnknownPoint(label.to_owned()))?,
                );
            }
            idx_lines.push(l);
        }
        Self::assemble(name.into(), points, idx_lines, index)
    }

    /// Builds a structure from lines given as indices into `points`.
    pub fn from_indices(
        name: impl Into<String>,
        points: Vec<PointRecord>,
        lines: Vec<Vec<usize>>,
    ) -> Result<Self, IncidenceError> {
        let index = build_index(&points)?;
        for l in &lines {
            if let Some(&bad) = l.iter().find(|&&i| i >= points.len()) {
                return Err(IncidenceError::UnknownPoint(format!("#{bad}")));
            }
        }
        Self::assemble(name.into(), points, lines, index)
    }

    fn assemble(
        name: String,
        points: Vec<PointRecord>,
        mut lines: Vec<Vec<usize>>,
        index: HashMap<String, usize>,
    ) -> Result<Self, IncidenceError> {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(lines.len());
        for (li, l) in lines.iter_mut().enumerate() {
            l.sort_unstable();
            if let Some(w) = l.windows(2).find(|w| w[0] == w[1]) {
                return Err(IncidenceError::RepeatedPointOnLine {
                    line: li,
                    point: points[w[0]].id.clone(),
                });
            }
            if let Some(&first) = seen.get(l) {
                return Err(IncidenceError::RepeatedLine { first, second: li });
            }
            seen.insert(l.clone(), li);
        }
        Ok(IncidenceStructure {
            name,
            points,
            lines,
            index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn points(&self) -> &[PointRecord] {
        &self.points
    }

    pub fn point_label(&self, i: usize) -> &str {
        &self.points[i].id
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Lines as sorted lists of point indices.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Lines as lists of point labels.
    pub fn line_labels(&self) -> Vec<Vec<&str>> {
        self.lines
            .iter()
            .map(|l| l.iter().map(|&i| self.point_label(i)).collect())
            .collect()
    }

    /// Number of lines through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.points.len()];
        for l in &self.lines {
            for &p in l {
                deg[p] += 1;
            }
        }
        deg
    }

    /// Indices of the lines through each point.
    pub fn lines_through(&self) -> Vec<Vec<usize>> {
        let mut through = vec![Vec::new(); self.points.len()];
        for (li, l) in self.lines.iter().enumerate() {
            for &p in l {
                through[p].push(li);
            }
        }
        through
    }

    /// Number of flags (incident point-line pairs).
    pub fn num_flags(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    /// Any two distinct points lie on at most one common line.
    pub fn is_partial_linear_space(&self) -> bool {
        let mut pairs = HashSet::new();
        for l in &self.lines {
            for (i, &a) in l.iter().enumerate() {
                for &b in &l[i + 1..] {
                    if !pairs.insert((a, b)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Configuration parameters `(n, r, m, k)`.
    ///
    /// With no lines the line size is vacuous and reported as 0; see
    /// [`measure_params_with_line_size`](Self::measure_params_with_line_size).
    pub fn measure_params(&self) -> Result<ConfigParams, IncidenceError> {
        self.measure(None)
    }

    /// Like [`measure_params`](Self::measure_params), but a structure without
    /// lines reports `line_size` as the supplied value, so that a lone point
    /// reads `(1_0, 0_3)`.
    pub fn measure_params_with_line_size(
        &self,
        vacuous_line_size: usize,
    ) -> Result<ConfigParams, IncidenceError> {
        self.measure(Some(vacuous_line_size))
    }

    fn measure(&self, vacuous: Option<usize>) -> Result<ConfigParams, IncidenceError> {
        let degrees = self.point_degrees();
        let r = degrees.first().copied().unwrap_or(0);
        if let Some((p, &d)) = degrees.iter().enumerate().find(|(_, &d)| d != r) {
            return Err(IncidenceError::NonUniformDegree {
                point: self.points[p].id.clone(),
                degree: d,
                expected: r,
            });
        }
        let k = match self.lines.first() {
            Some(l) => l.len(),
            None => vacuous.unwrap_or(0),
        };
        if let Some((li, l)) = self.lines.iter().enumerate().find(|(_, l)| l.len() != k) {
            return Err(IncidenceError::NonUniformLineSize {
                line: li,
                size: l.len(),
                expected: k,
            });
        }
        Ok(ConfigParams {
            num_points: self.points.len(),
            point_degree: r,
            num_lines: self.lines.len(),
            line_size: k,
        })
    }

    /// Keeps `keep` and exactly the lines all of whose points are kept.
    /// Point and line order follow the original structure.
    pub fn induced_substructure<S: AsRef<str>>(
        &self,
        keep: &[S],
    ) -> Result<IncidenceStructure, IncidenceError> {
        let mut kept = vec![false; self.points.len()];
        for label in keep {
            let label = label.as_ref();
            let i = self
                .point_index(label)
                .ok_or_else(|| IncidenceError::UnknownPoint(label.to_owned()))?;
            kept[i] = true;
        }
        let mut remap = vec![usize::MAX; self.points.len()];
        let mut points = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            if kept[i] {
                remap[i] = points.len();
                points.push(p.clone());
            }
        }
        let lines = self
            .lines
            .iter()
            .filter(|l| l.iter().all(|&p| kept[p]))
            .map(|l| l.iter().map(|&p| remap[p]).collect())
            .collect();
        IncidenceStructure::from_indices(self.name.clone(), points, lines)
    }

    /// The same structure with points and lines listed in a new order.
    /// `point_order[i]` is the old index of the new i-th point.
    pub fn reordered(
        &self,
        point_order: &[usize],
        line_order: &[usize],
    ) -> Option<IncidenceStructure> {
        if !is_permutation(point_order, self.points.len())
            || !is_permutation(line_order, self.lines.len())
        {
            return None;
        }
        let mut inverse = vec![0; point_order.len()];
        for (new, &old) in point_order.iter().enumerate() {
            inverse[old] = new;
        }
        let points = point_order.iter().map(|&i| self.points[i].clone()).collect();
        let lines = line_order
            .iter()
            .map(|&li| self.lines[li].iter().map(|&p| inverse[p]).collect())
            .collect();
        IncidenceStructure::from_indices(self.name.clone(), points, lines).ok()
    }
}

fn build_index(points: &[PointRecord]) -> Result<HashMap<String, usize>, IncidenceError> {
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.id.clone(), i).is_some() {
            return Err(IncidenceError::DuplicatePoint(p.id.clone()));
        }
    }
    Ok(index)
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n
        && order
            .iter()
            .all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

/// Convenience constructor for tests and examples: points are the given
/// labels, lines are given by label.
pub fn structure_from_labels(
    name: &str,
    points: &[&str],
    lines: &[&[&str]],
) -> Result<IncidenceStructure, IncidenceError> {
    let recs = points.iter().map(|&p| PointRecord::new(p)).collect();
    let lines: Vec<Vec<&str>> = lines.iter().map(|l| l.to_vec()).collect();
    IncidenceStructure::new(name, recs, &lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            structure_from_labels("x", &["a", "a"], &[]),
            Err(IncidenceError::DuplicatePoint("a".into()))
        );
        assert_eq!(
            structure_from_labels("x", &["a", "b"], &[&["a", "c"]]),
            Err(IncidenceError::UnknownPoint("c".into()))
        );
        assert!(matches!(
            structure_from_labels("x", &["a", "b"], &[&["a", "a"]]),
            Err(IncidenceError::RepeatedPointOnLine { .. })
        ));
        assert_eq!(
            structure_from_labels("x", &["a", "b"], &[&["a", "b"], &["b", "a"]]),
            Err(IncidenceError::RepeatedLine { first: 0, second: 1 })
        );
    }

    #[test]
    fn lone_point_is_vacuously_uniform() {
        let s = structure_from_labels("pt", &["a"], &[]).unwrap();
        let p = s.measure_params().unwrap();
        assert_eq!(p.as_tuple(), (1, 0, 0, 0));
        let p = s.measure_params_with_line_size(3).unwrap();
        assert_eq!(p.as_tuple(), (1, 0, 0, 3));
        assert_eq!(p.to_string(), "(1_0, 0_3)");
    }

    #[test]
    fn non_uniform_degree() {
        let s = structure_from_labels("x", &["a", "b", "c"], &[&["a", "b"], &["a", "c"]]).unwrap();
        let err = s.measure_params().unwrap_err();
        assert!(err.is_not_a_configuration());
        assert_eq!(
            err,
            IncidenceError::NonUniformDegree {
                point: "b".into(),
                degree: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn non_uniform_line_size() {
        let s = structure_from_labels(
            "x",
            &["a", "b", "c", "d"],
            &[&["a", "b", "c"], &["d"], &["a", "b", "d"], &["c", "d"]],
        )
        .unwrap();
        // degrees: a2 b2 c2 d3
        assert!(matches!(
            s.measure_params(),
            Err(IncidenceError::NonUniformDegree { .. })
        ));
        let s = structure_from_labels("x", &["a", "b", "c"], &[&["a", "b", "c"], &["a", "b"]]);
        let s = s.unwrap();
        let s = s.induced_substructure(&["a", "b", "c"]).unwrap();
        assert!(s.measure_params().is_err());
    }

    #[test]
    fn uniform_sizes_but_mixed_line_sizes() {
        let s = structure_from_labels(
            "x",
            &["a", "b", "c", "d"],
            &[&["a", "b", "c"], &["d"]],
        )
        .unwrap();
        assert!(matches!(
            s.measure_params(),
            Err(IncidenceError::NonUniformLineSize { line: 1, size: 1, expected: 3 })
        ));
    }

    #[test]
    fn induced_substructure_keeps_full_lines_only() {
        let s = structure_from_labels(
            "fano-ish",
            &["a", "b", "c", "d", "e"],
            &[&["a", "b", "c"], &["c", "d", "e"], &["a", "d"]],
        )
        .unwrap();
        let all: Vec<&str> = vec!["a", "b", "c", "d", "e"];
        assert_eq!(s.induced_substructure(&all).unwrap(), s);
        let sub = s.induced_substructure(&["a", "c", "d", "e"]).unwrap();
        assert_eq!(sub.num_points(), 4);
        assert_eq!(sub.line_labels(), vec![vec!["c", "d", "e"], vec!["a", "d"]]);
        let empty = s.induced_substructure::<&str>(&[]).unwrap();
        assert_eq!((empty.num_points(), empty.num_lines()), (0, 0));
        assert_eq!(
            s.induced_substructure(&["z"]),
            Err(IncidenceError::UnknownPoint("z".into()))
        );
    }

    #[test]
    fn partial_linear_space() {
        let s = structure_from_labels("x", &["a", "b", "c"], &[&["a", "b", "c"]]).unwrap();
        assert!(s.is_partial_linear_space());
        let s = structure_from_labels("x", &["a", "b", "c"], &[&["a", "b", "c"], &["a", "b"]])
            .unwrap();
        assert!(!s.is_partial_linear_space());
    }

    #[test]
    fn reorder() {
        let s = structure_from_labels("x", &["a", "b", "c"], &[&["a", "b"], &["b", "c"]]).unwrap();
        let r = s.reordered(&[2, 0, 1], &[1, 0]).unwrap();
        assert_eq!(r.point_label(0), "c");
        assert_eq!(r.line_labels(), vec![vec!["c", "b"], vec!["a", "b"]]);
        assert!(s.reordered(&[0, 0, 1], &[0, 1]).is_none());
        assert!(s.reordered(&[0, 1], &[0, 1]).is_none());
    }

    #[test]
    fn flags() {
        let s = structure_from_labels("x", &["a", "b", "c"], &[&["a", "b"], &["b", "c"]]).unwrap();
        assert_eq!(s.num_flags(), s.point_degrees().iter().sum::<usize>());
    }
}
