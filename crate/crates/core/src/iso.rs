//! Isomorphism search between incidence structures.
//!
//! The search is an ordered backtracking over the points of the first
//! structure. Before searching, points and lines of both structures are
//! colored jointly by iterated refinement on the incidence (Levi) graph, so
//! that a point can only be sent to a point of the same color. During the
//! search every new assignment must preserve the number of common lines with
//! all previously assigned points, and every line whose points are all
//! assigned must land on a line.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::incidence::{IncidenceError, IncidenceStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("more than {limit} automorphisms")]
    LimitExceeded { limit: u64 },
}

/// A point bijection from one structure onto another, by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    /// `(source label, target label)` pairs in source point order.
    pub mapping: Vec<(String, String)>,
}

impl IsoCertificate {
    pub fn new(mapping: Vec<(String, String)>) -> Self {
        IsoCertificate { mapping }
    }

    pub fn identity(s: &IncidenceStructure) -> Self {
        IsoCertificate {
            mapping: s
                .points()
                .iter()
                .map(|p| (p.id.clone(), p.id.clone()))
                .collect(),
        }
    }

    pub fn get(&self, from: &str) -> Option<&str> {
        self.mapping
            .iter()
            .find(|(a, _)| a == from)
            .map(|(_, b)| b.as_str())
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }
}

/// Checks that `cert` is a bijection from the points of `a` onto the points
/// of `b` that carries the line set of `a` exactly onto the line set of `b`.
///
/// Fails with [`IncidenceError::DomainMismatch`] when the mapping's sources
/// are not exactly the points of `a`.
pub fn verify_certificate(
    a: &IncidenceStructure,
    b: &IncidenceStructure,
    cert: &IsoCertificate,
) -> Result<bool, IncidenceError> {
    let mut image = vec![usize::MAX; a.num_points()];
    for (from, to) in &cert.mapping {
        let i = a
            .point_index(from)
            .ok_or_else(|| IncidenceError::DomainMismatch(format!("`{from}` is not a point")))?;
        if image[i] != usize::MAX {
            return Err(IncidenceError::DomainMismatch(format!(
                "`{from}` is mapped twice"
            )));
        }
        match b.point_index(to) {
            Some(j) => image[i] = j,
            None => return Ok(false),
        }
    }
    if let Some(i) = image.iter().position(|&j| j == usize::MAX) {
        return Err(IncidenceError::DomainMismatch(format!(
            "`{}` is not mapped",
            a.point_label(i)
        )));
    }
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return Ok(false);
    }
    let mut hit = vec![false; b.num_points()];
    for &j in &image {
        if std::mem::replace(&mut hit[j], true) {
            return Ok(false);
        }
    }
    let target: HashSet<&[usize]> = b.lines().iter().map(Vec::as_slice).collect();
    let mut images = HashSet::with_capacity(a.num_lines());
    for line in a.lines() {
        let mut img: Vec<usize> = line.iter().map(|&p| image[p]).collect();
        img.sort_unstable();
        if !target.contains(img.as_slice()) {
            return Ok(false);
        }
        images.insert(img);
    }
    Ok(images.len() == b.num_lines())
}

/// Searches for an isomorphism from `a` onto `b`. Returns `None` only after
/// the search space has been exhausted.
pub fn find_isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<IsoCertificate> {
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return None;
    }
    let pa = Prepared::new(a);
    let pb = Prepared::new(b);
    let (ca, cb) = joint_colors(&pa, &pb)?;
    let mut search = Search::new(&pa, &pb, ca, cb);
    let mut found = None;
    search.run(&mut |image: &[usize]| {
        found = Some(image.to_vec());
        ControlFlow::Break(())
    });
    let image = found?;
    let cert = IsoCertificate {
        mapping: image
            .iter()
            .enumerate()
            .map(|(i, &j)| (a.point_label(i).to_owned(), b.point_label(j).to_owned()))
            .collect(),
    };
    debug_assert_eq!(verify_certificate(a, b, &cert), Ok(true));
    verify_certificate(a, b, &cert)
        .unwrap_or(false)
        .then_some(cert)
}

pub fn are_isomorphic(a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Counts the automorphisms of `s`, failing once more than `limit` are found.
pub fn count_automorphisms(s: &IncidenceStructure, limit: u64) -> Result<u64, IsoError> {
    let mut count = 0u64;
    for_each_automorphism(s, |_| {
        count += 1;
        if count > limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if count > limit {
        Err(IsoError::LimitExceeded { limit })
    } else {
        Ok(count)
    }
}

/// Calls `visit` with every automorphism of `s`, as a point-index image
/// vector, in a deterministic order. Stops early on `Break`.
pub fn for_each_automorphism<F>(s: &IncidenceStructure, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let p = Prepared::new(s);
    let Some((ca, cb)) = joint_colors(&p, &p) else {
        return;
    };
    let mut search = Search::new(&p, &p, ca, cb);
    search.run(&mut visit);
}

struct Prepared {
    n: usize,
    lines: Vec<Vec<usize>>,
    through: Vec<Vec<usize>>,
    // lambda[i * n + j] = number of lines containing both i and j
    lambda: Vec<u32>,
    // points sharing at least one line, ascending
    neighbors: Vec<Vec<usize>>,
    line_set: HashSet<Vec<usize>>,
}

impl Prepared {
    fn new(s: &IncidenceStructure) -> Self {
        let n = s.num_points();
        let mut lambda = vec![0u32; n * n];
        for l in s.lines() {
            for &a in l {
                for &b in l {
                    if a != b {
                        lambda[a * n + b] += 1;
                    }
                }
            }
        }
        let neighbors = (0..n)
            .map(|i| (0..n).filter(|&j| lambda[i * n + j] > 0).collect())
            .collect();
        Prepared {
            n,
            neighbors,
            lines: s.lines().to_vec(),
            through: s.lines_through(),
            lambda,
            line_set: s.lines().iter().cloned().collect(),
        }
    }

    fn lambda(&self, a: usize, b: usize) -> u32 {
        self.lambda[a * self.n + b]
    }
}

type Coloring = (Vec<u32>, Vec<u32>);

/// Refines point and line colors of both structures with a shared palette.
/// Returns `None` as soon as the color histograms differ.
fn joint_colors(a: &Prepared, b: &Prepared) -> Option<(Coloring, Coloring)> {
    let init = |p: &Prepared| -> Coloring {
        (
            p.through.iter().map(|t| t.len() as u32).collect(),
            p.lines.iter().map(|l| l.len() as u32).collect(),
        )
    };
    let mut ca = init(a);
    let mut cb = init(b);
    let mut classes = 0;
    loop {
        let (pa, pb) = recolor(
            |p: &Prepared, c: &Coloring| {
                (0..p.n)
                    .map(|i| {
                        let mut lines: Vec<u32> = p.through[i].iter().map(|&l| c.1[l]).collect();
                        lines.sort_unstable();
                        let mut co: Vec<(u32, u32)> = (0..p.n)
                            .filter(|&j| p.lambda(i, j) > 0)
                            .map(|j| (c.0[j], p.lambda(i, j)))
                            .collect();
                        co.sort_unstable();
                        (c.0[i], lines, co)
                    })
                    .collect()
            },
            a,
            &ca,
            b,
            &cb,
        );
        let (la, lb) = recolor(
            |p: &Prepared, c: &Coloring| {
                p.lines
                    .iter()
                    .enumerate()
                    .map(|(li, l)| {
                        let mut pts: Vec<u32> = l.iter().map(|&q| c.0[q]).collect();
                        pts.sort_unstable();
                        (c.1[li], pts, Vec::new())
                    })
                    .collect()
            },
            a,
            &ca,
            b,
            &cb,
        );
        ca = (pa, la);
        cb = (pb, lb);
        if histogram(&ca.0) != histogram(&cb.0) || histogram(&ca.1) != histogram(&cb.1) {
            return None;
        }
        let now = distinct(&ca.0) + distinct(&ca.1);
        if now == classes {
            return Some((ca, cb));
        }
        classes = now;
    }
}

type Signature = (u32, Vec<u32>, Vec<(u32, u32)>);

fn recolor<F>(sig: F, a: &Prepared, ca: &Coloring, b: &Prepared, cb: &Coloring) -> (Vec<u32>, Vec<u32>)
where
    F: Fn(&Prepared, &Coloring) -> Vec<Signature>,
{
    let sa = sig(a, ca);
    let sb = sig(b, cb);
    let palette: BTreeMap<&Signature, u32> = sa
        .iter()
        .chain(sb.iter())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i as u32))
        .collect();
    (
        sa.iter().map(|s| palette[s]).collect(),
        sb.iter().map(|s| palette[s]).collect(),
    )
}

fn histogram(colors: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_default() += 1;
    }
    h
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

struct Search<'a> {
    a: &'a Prepared,
    b: &'a Prepared,
    order: Vec<usize>,
    candidates: HashMap<u32, Vec<usize>>,
    colors_a: Vec<u32>,
    colors_b: Vec<u32>,
    image: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(a: &'a Prepared, b: &'a Prepared, ca: Coloring, cb: Coloring) -> Self {
        let mut candidates: HashMap<u32, Vec<usize>> = HashMap::new();
        for (j, &c) in cb.0.iter().enumerate() {
            candidates.entry(c).or_default().push(j);
        }
        let order = search_order(a, &ca.0);
        Search {
            a,
            b,
            order,
            candidates,
            colors_a: ca.0,
            colors_b: cb.0,
            image: vec![usize::MAX; a.n],
            used: vec![false; b.n],
            assigned: vec![false; a.n],
        }
    }

    fn run<F>(&mut self, visit: &mut F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let _ = self.extend(0, visit);
    }

    fn extend<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let p = self.order[depth];
        let color = self.colors_a[p];
        // an image must be collinear with the image of any placed neighbor
        let b = self.b;
        let cands: Vec<usize> = match self.order[..depth]
            .iter()
            .find(|&&r| self.a.lambda(p, r) > 0)
        {
            Some(&r) => b.neighbors[self.image[r]]
                .iter()
                .copied()
                .filter(|&q| self.colors_b[q] == color)
                .collect(),
            None => self.candidates[&color].clone(),
        };
        for q in cands {
            if self.used[q] || !self.consistent(p, q, depth) {
                continue;
            }
            self.image[p] = q;
            self.used[q] = true;
            self.assigned[p] = true;
            let ok = self.lines_close(p);
            let flow = if ok {
                self.extend(depth + 1, visit)
            } else {
                ControlFlow::Continue(())
            };
            self.assigned[p] = false;
            self.used[q] = false;
            self.image[p] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn consistent(&self, p: usize, q: usize, depth: usize) -> bool {
        self.order[..depth]
            .iter()
            .all(|&r| self.a.lambda(p, r) == self.b.lambda(q, self.image[r]))
    }

    // every line through p that is now fully assigned must map onto a line
    fn lines_close(&self, p: usize) -> bool {
        self.a.through[p].iter().all(|&li| {
            let line = &self.a.lines[li];
            if !line.iter().all(|&x| self.assigned[x]) {
                return true;
            }
            let mut img: Vec<usize> = line.iter().map(|&x| self.image[x]).collect();
            img.sort_unstable();
            self.b.line_set.contains(&img)
        })
    }
}

/// Points ordered so that each next point is collinear with as many already
/// placed points as possible; ties go to smaller color classes, then lower
/// index.
fn search_order(a: &Prepared, colors: &[u32]) -> Vec<usize> {
    let sizes = histogram(colors);
    let mut placed = vec![false; a.n];
    let mut links = vec![0usize; a.n];
    let mut order = Vec::with_capacity(a.n);
    for _ in 0..a.n {
        let next = (0..a.n)
            .filter(|&i| !placed[i])
            .min_by_key(|&i| (std::cmp::Reverse(links[i]), sizes[&colors[i]], i))
            .expect("unplaced point");
        placed[next] = true;
        order.push(next);
        for (j, link) in links.iter_mut().enumerate() {
            if a.lambda(next, j) > 0 {
                *link += 1;
            }
        }
    }
    order
}
