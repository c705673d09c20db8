//! Conwell heptads and the nested removal sequence.
//!
//! Two off-quadric points are adjacent in the collinearity graph when the
//! line joining them is external. A Conwell heptad is a 7-clique of that
//! graph. Removing heptads one at a time from the off-quadric configuration
//! walks down the chain `G_2(8) ⊃ G_2(7) ⊃ … ⊃ G_2(2) ⊃ ∅`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{line_through, Line, ProjPoint};
use crate::grassmannian::{build_grassmannian, ConfigParams, KSubset};
use crate::incidence::{IncidenceError, IncidenceStructure};
use crate::iso::{find_isomorphism, IsoCertificate};

pub const HEPTAD_SIZE: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConwellError {
    #[error("line {0:?} contains a point that is not a vertex")]
    InconsistentInput(Line),
    #[error("too many vertices for the bitset graph: {0}")]
    TooManyVertices(usize),
    #[error("heptads {0} and {1} meet in {2} points")]
    PairIntersection(usize, usize, usize),
    #[error("point {0} lies in {1} heptads")]
    Coverage(ProjPoint, usize),
    #[error("heptad {0} has no single common mark")]
    NoCommonMark(usize),
    #[error("heptads {0} and {1} share mark {2}")]
    RepeatedMark(usize, usize, u8),
    #[error("certificate has no image for point {0}")]
    MissingImage(ProjPoint),
    #[error("heptad {heptad} has collinear points {points:?}")]
    CollinearTriple { heptad: usize, points: [ProjPoint; 3] },
    #[error("joining line of heptad {heptad} is not external: {line:?}")]
    NonExternalJoin { heptad: usize, line: Line },
    #[error("removal order must be a permutation of 0..{expected}: {order:?}")]
    InvalidOrder { order: Vec<usize>, expected: usize },
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}

/// Graph on the off-quadric points; `p ~ q` when `line_through(p, q)` is external.
#[derive(Debug, Clone)]
pub struct CollinearityGraph {
    vertices: Vec<ProjPoint>,
    adj: Vec<u64>,
}

impl CollinearityGraph {
    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, p: ProjPoint, q: ProjPoint) -> bool {
        match (self.index_of(p), self.index_of(q)) {
            (Some(i), Some(j)) => self.adj[i] >> j & 1 == 1,
            _ => false,
        }
    }

    fn index_of(&self, p: ProjPoint) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }

    pub fn is_clique(&self, pts: &[ProjPoint]) -> bool {
        pts.iter()
            .enumerate()
            .all(|(i, &p)| pts[i + 1..].iter().all(|&q| self.has_edge(p, q)))
    }
}

/// Builds the collinearity graph from the off-quadric points and external lines.
pub fn build_collinearity_graph(
    off_points: &[ProjPoint],
    ext_lines: &[Line],
) -> Result<CollinearityGraph, ConwellError> {
    let mut vertices = off_points.to_vec();
    vertices.sort();
    vertices.dedup();
    if vertices.len() > 64 {
        return Err(ConwellError::TooManyVertices(vertices.len()));
    }
    let mut adj = vec![0u64; vertices.len()];
    for line in ext_lines {
        let idx: Vec<usize> = line
            .points()
            .iter()
            .map(|p| vertices.binary_search(p))
            .collect::<Result<_, _>>()
            .map_err(|_| ConwellError::InconsistentInput(*line))?;
        for &i in &idx {
            for &j in &idx {
                if i != j {
                    adj[i] |= 1 << j;
                }
            }
        }
    }
    Ok(CollinearityGraph { vertices, adj })
}

/// Seven off-quadric points, sorted by encoding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Heptad {
    points: Vec<ProjPoint>,
}

impl Heptad {
    pub fn new(mut points: Vec<ProjPoint>) -> Self {
        points.sort();
        points.dedup();
        Heptad { points }
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|p| p.label()).collect()
    }

    pub fn contains(&self, p: ProjPoint) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn intersection_size(&self, other: &Heptad) -> usize {
        self.points.iter().filter(|&&p| other.contains(p)).count()
    }
}

/// Every maximal clique of size exactly 7, in lexicographic order of the
/// sorted encodings.
pub fn find_heptads(g: &CollinearityGraph) -> Vec<Heptad> {
    let mut cliques = Vec::new();
    let all = if g.vertices.len() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertices.len()) - 1
    };
    bron_kerbosch(&g.adj, 0, all, 0, &mut cliques);
    let mut heptads: Vec<Heptad> = cliques
        .into_iter()
        .filter(|c| c.count_ones() as usize == HEPTAD_SIZE)
        .map(|c| Heptad::new(bits(c).map(|i| g.vertices[i]).collect()))
        .collect();
    heptads.sort();
    heptads
}

fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (set != 0).then(|| {
            let i = set.trailing_zeros() as usize;
            set &= set - 1;
            i
        })
    })
}

/// Maximal cliques containing `r`, some of `p`, none of `x`, with pivoting.
fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    // pivot maximizing |p ∩ N(u)|
    let pivot = bits(p | x)
        .max_by_key(|&u| ((p & adj[u]).count_ones(), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    for v in bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Outcome of checking the intersection and covering properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeptadReport {
    pub num_heptads: usize,
    /// `(i, j, |Hᵢ ∩ Hⱼ|)` for all `i < j`.
    pub pair_intersections: Vec<(usize, usize, usize)>,
    /// Number of heptads through each covered point, by label.
    pub coverage: BTreeMap<String, usize>,
}

/// Checks that any two heptads share exactly one point and every point in
/// `points` lies in exactly two heptads.
pub fn heptad_pair_intersections(
    heptads: &[Heptad],
    points: &[ProjPoint],
) -> Result<HeptadReport, ConwellError> {
    let mut pairs = Vec::new();
    for (i, h) in heptads.iter().enumerate() {
        for (j, k) in heptads.iter().enumerate().skip(i + 1) {
            let n = h.intersection_size(k);
            if n != 1 {
                return Err(ConwellError::PairIntersection(i, j, n));
            }
            pairs.push((i, j, n));
        }
    }
    let mut coverage = BTreeMap::new();
    for &p in points {
        let c = heptads.iter().filter(|h| h.contains(p)).count();
        if c != 2 {
            return Err(ConwellError::Coverage(p, c));
        }
        coverage.insert(p.label(), c);
    }
    Ok(HeptadReport {
        num_heptads: heptads.len(),
        pair_intersections: pairs,
        coverage,
    })
}

/// The 21 lines joining pairs of heptad points, after checking that no three
/// heptad points are collinear and that every joining line is external.
pub fn heptad_joining_lines(
    heptad_index: usize,
    h: &Heptad,
    ext_lines: &[Line],
) -> Result<Vec<Line>, ConwellError> {
    let ext: HashSet<&Line> = ext_lines.iter().collect();
    let mut lines = BTreeSet::new();
    let pts = h.points();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let line = line_through(p, q).expect("heptad points are distinct");
            if let Some(&r) = line.points().iter().find(|&&r| r != p && r != q && h.contains(r)) {
                return Err(ConwellError::CollinearTriple {
                    heptad: heptad_index,
                    points: [p, q, r],
                });
            }
            if !ext.contains(&line) {
                return Err(ConwellError::NonExternalJoin {
                    heptad: heptad_index,
                    line,
                });
            }
            lines.insert(line);
        }
    }
    Ok(lines.into_iter().collect())
}

/// For each heptad, the single mark shared by the images of its points under
/// `cert` (off-quadric label ↦ `{a,b}` label). The marks must be distinct.
pub fn heptads_vs_marks(
    heptads: &[Heptad],
    cert: &IsoCertificate,
) -> Result<Vec<u8>, ConwellError> {
    let mut marks = Vec::with_capacity(heptads.len());
    let mut owner: BTreeMap<u8, usize> = BTreeMap::new();
    for (hi, h) in heptads.iter().enumerate() {
        let mut common: Option<BTreeSet<u8>> = None;
        for &p in h.points() {
            let image = cert
                .get(&p.label())
                .ok_or(ConwellError::MissingImage(p))?;
            let subset: KSubset = image.parse().map_err(|_| ConwellError::NoCommonMark(hi))?;
            let set: BTreeSet<u8> = subset.marks().iter().copied().collect();
            common = Some(match common {
                None => set,
                Some(c) => c.intersection(&set).copied().collect(),
            });
        }
        let common = common.unwrap_or_default();
        if common.len() != 1 {
            return Err(ConwellError::NoCommonMark(hi));
        }
        let mark = *common.iter().next().expect("one mark");
        if let Some(&prev) = owner.get(&mark) {
            return Err(ConwellError::RepeatedMark(prev, hi, mark));
        }
        owner.insert(mark, hi);
        marks.push(mark);
    }
    Ok(marks)
}

/// Result of deleting a heptad's surviving points from a structure.
#[derive(Debug, Clone)]
pub struct Removal {
    pub structure: IncidenceStructure,
    pub points_removed: usize,
    pub lines_removed: usize,
}

/// Removes the points of `h` that are still present in `s`, together with
/// every line through them. Heptad points already absent are skipped, since
/// later heptads share a point with each earlier one.
pub fn remove_heptad(s: &IncidenceStructure, h: &Heptad) -> Result<Removal, ConwellError> {
    let gone: HashSet<String> = h.labels().into_iter().collect();
    let keep: Vec<&str> = s
        .points()
        .iter()
        .map(|p| p.id.as_str())
        .filter(|id| !gone.contains(*id))
        .collect();
    let structure = s.induced_substructure(&keep)?;
    Ok(Removal {
        points_removed: s.num_points() - structure.num_points(),
        lines_removed: s.num_lines() - structure.num_lines(),
        structure,
    })
}

/// Name the classical configurations along the chain carry.
pub fn configuration_remark(n: usize) -> Option<&'static str> {
    match n {
        6 => Some("Cayley-Salmon"),
        5 => Some("Desargues"),
        4 => Some("Pasch"),
        3 => Some("single line"),
        2 => Some("single point"),
        _ => None,
    }
}

/// One row of the removal sequence.
#[derive(Debug, Clone)]
pub struct SequenceStep {
    /// Number of heptads removed so far.
    pub step: usize,
    /// Index into the heptad list of the heptad removed at this step.
    pub heptad: Option<usize>,
    pub structure: IncidenceStructure,
    /// `None` for the empty structure.
    pub params: Option<ConfigParams>,
    pub points_removed: usize,
    pub lines_removed: usize,
    /// `N` such that the structure should be `G_2(N)`, when `N ≥ 2`.
    pub grassmannian_n: Option<usize>,
    /// Isomorphism onto `G_2(N)`, when one was found.
    pub certificate: Option<IsoCertificate>,
    pub remark: Option<&'static str>,
}

impl SequenceStep {
    pub fn is_empty(&self) -> bool {
        self.structure.num_points() == 0
    }
}

impl fmt::Display for SequenceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.step)?;
        match (&self.params, self.grassmannian_n) {
            (Some(p), Some(n)) => write!(f, "{p} ~ G_2({n})")?,
            (Some(p), None) => write!(f, "{p}")?,
            (None, _) => return write!(f, "empty set"),
        }
        if let Some(r) = self.remark {
            write!(f, " [{r}]")?;
        }
        Ok(())
    }
}

/// Removes heptads from `s` in the given order and records every
/// intermediate structure, starting with `s` itself. `order` must be a
/// permutation of the heptad indices; one fewer than all heptads are
/// consumed, which already leaves the empty structure.
///
/// Each step is checked against `G_2(N)` by a fresh isomorphism search, with
/// `N` counted down from the number of heptads.
pub fn removal_sequence(
    s: &IncidenceStructure,
    heptads: &[Heptad],
    order: &[usize],
) -> Result<Vec<SequenceStep>, ConwellError> {
    let h = heptads.len();
    let mut seen = vec![false; h];
    if order.len() != h || !order.iter().all(|&i| i < h && !std::mem::replace(&mut seen[i], true)) {
        return Err(ConwellError::InvalidOrder {
            order: order.to_vec(),
            expected: h,
        });
    }
    let mut steps = vec![make_step(0, None, s.clone(), 0, 0, h)];
    let mut current = s.clone();
    for (t, &hi) in order.iter().take(h.saturating_sub(1)).enumerate() {
        let removal = remove_heptad(&current, &heptads[hi])?;
        current = removal.structure.clone();
        steps.push(make_step(
            t + 1,
            Some(hi),
            removal.structure,
            removal.points_removed,
            removal.lines_removed,
            h - t - 1,
        ));
    }
    Ok(steps)
}

fn make_step(
    step: usize,
    heptad: Option<usize>,
    structure: IncidenceStructure,
    points_removed: usize,
    lines_removed: usize,
    n: usize,
) -> SequenceStep {
    let params = if structure.num_points() == 0 {
        None
    } else {
        structure.measure_params_with_line_size(3).ok()
    };
    let grassmannian_n = (n >= 2).then_some(n);
    let remark = if structure.num_points() == 0 {
        Some("empty set")
    } else {
        grassmannian_n.and_then(configuration_remark)
    };
    let certificate = grassmannian_n
        .and_then(|n| build_grassmannian(2, n).ok())
        .and_then(|g| find_isomorphism(&structure, &g));
    SequenceStep {
        step,
        heptad,
        structure,
        params,
        points_removed,
        lines_removed,
        grassmannian_n,
        certificate,
        remark,
    }
}
