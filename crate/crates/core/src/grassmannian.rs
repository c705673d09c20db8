//! Combinatorial Grassmannians `G_k(N)`.
//!
//! The points of `G_k(N)` are the k-element subsets of `{1, …, N}` and its
//! lines are the (k+1)-element subsets; a point lies on a line when it is a
//! subset of it. Each line therefore carries `k + 1` points and each point
//! lies on `N − k` lines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::incidence::{IncidenceStructure, PointRecord};

/// Largest ground set supported. Marks are stored as bits of a `u64`.
pub const MAX_MARKS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannianError {
    #[error("invalid arity: need 1 <= k <= N, got k = {k}, N = {n}")]
    InvalidArity { k: usize, n: usize },
    #[error("ground set of {0} marks exceeds the supported maximum of {MAX_MARKS}")]
    TooManyMarks(usize),
    #[error("cannot parse `{0}` as a mark set")]
    Parse(String),
}

/// Parameters `(n_r, m_k)` of a configuration: `n` points on `r` lines each,
/// `m` lines with `k` points each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfigParams {
    pub num_points: usize,
    pub point_degree: usize,
    pub num_lines: usize,
    pub line_size: usize,
}

impl ConfigParams {
    pub fn new(num_points: usize, point_degree: usize, num_lines: usize, line_size: usize) -> Self {
        ConfigParams {
            num_points,
            point_degree,
            num_lines,
            line_size,
        }
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.num_points, self.point_degree, self.num_lines, self.line_size)
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.num_points, self.point_degree, self.num_lines, self.line_size]
    }

    /// Double counting of flags: `n·r = m·k`.
    pub fn flags_balance(&self) -> bool {
        self.num_points * self.point_degree == self.num_lines * self.line_size
    }
}

impl fmt::Display for ConfigParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}_{}, {}_{})",
            self.num_points, self.point_degree, self.num_lines, self.line_size
        )
    }
}

/// A sorted set of distinct marks from `{1, …, N}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSubset(Vec<u8>);

impl KSubset {
    /// Sorts and deduplicates-checks the marks. Marks must be positive.
    pub fn new(mut marks: Vec<u8>) -> Option<Self> {
        marks.sort_unstable();
        if marks.contains(&0) || marks.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(KSubset(marks))
    }

    pub fn marks(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, mark: u8) -> bool {
        self.0.binary_search(&mark).is_ok()
    }

    pub fn is_subset_of(&self, other: &KSubset) -> bool {
        self.0.iter().all(|&m| other.contains(m))
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |acc, &m| acc | 1 << (m - 1))
    }

    /// Applies a permutation of marks given as `perm[m - 1]` = image of `m`.
    pub fn permuted(&self, perm: &[u8]) -> KSubset {
        KSubset::new(self.0.iter().map(|&m| perm[m as usize - 1]).collect())
            .expect("permutation keeps marks distinct")
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for KSubset {
    type Err = GrassmannianError;

    /// Parses `{1,4}` (braces optional).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GrassmannianError::Parse(s.to_owned());
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        if inner.trim().is_empty() {
            return Ok(KSubset(Vec::new()));
        }
        let marks = inner
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        KSubset::new(marks).ok_or_else(err)
    }
}

/// All k-subsets of `{1, …, n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<KSubset> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<u8> = (1..=k as u8).collect();
    loop {
        out.push(KSubset(current.clone()));
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| (current[i] as usize) < n - (k - 1 - i)) else {
            break;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check_arity(k: usize, n: usize) -> Result<(), GrassmannianError> {
    if k < 1 || k > n {
        return Err(GrassmannianError::InvalidArity { k, n });
    }
    if n > MAX_MARKS {
        return Err(GrassmannianError::TooManyMarks(n));
    }
    Ok(())
}

/// `(C(N,k)_{N−k}, C(N,k+1)_{k+1})`, computed without building anything.
pub fn grassmannian_params(k: usize, n: usize) -> Result<ConfigParams, GrassmannianError> {
    check_arity(k, n)?;
    Ok(ConfigParams::new(
        binomial(n, k),
        n - k,
        binomial(n, k + 1),
        k + 1,
    ))
}

/// Builds `G_k(N)`. Point labels are the subsets written as `{1,4}`; each
/// point carries a `marks` tag. Points and lines are listed in lexicographic
/// subset order, and each line's points are its k-subsets.
pub fn build_grassmannian(k: usize, n: usize) -> Result<IncidenceStructure, GrassmannianError> {
    check_arity(k, n)?;
    let pts = k_subsets(n, k);
    let index: std::collections::HashMap<u64, usize> =
        pts.iter().enumerate().map(|(i, s)| (s.mask(), i)).collect();
    let records = pts
        .iter()
        .map(|s| PointRecord::new(s.to_string()).with_tag("marks", s.marks().to_vec()))
        .collect();
    let lines = k_subsets(n, k + 1)
        .iter()
        .map(|l| {
            let mask = l.mask();
            l.marks()
                .iter()
                .map(|&m| index[&(mask & !(1 << (m - 1)))])
                .collect()
        })
        .collect();
    Ok(IncidenceStructure::from_indices(format!("G_{k}({n})"), records, lines)
        .expect("Grassmannian lines are distinct sets of distinct points"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_examples() {
        assert_eq!(grassmannian_params(2, 8).unwrap().as_tuple(), (28, 6, 56, 3));
        assert_eq!(grassmannian_params(2, 6).unwrap().as_tuple(), (15, 4, 20, 3));
        assert_eq!(grassmannian_params(2, 5).unwrap().as_tuple(), (10, 3, 10, 3));
        assert_eq!(grassmannian_params(2, 2).unwrap().as_tuple(), (1, 0, 0, 3));
    }

    #[test]
    fn build_examples() {
        let g = build_grassmannian(2, 8).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (28, 56));
        let g = build_grassmannian(2, 3).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (3, 1));
        let g = build_grassmannian(2, 2).unwrap();
        assert_eq!((g.num_points(), g.num_lines()), (1, 0));
        assert_eq!(g.name(), "G_2(2)");
    }

    #[test]
    fn invalid_arity() {
        assert_eq!(
            build_grassmannian(0, 3).unwrap_err(),
            GrassmannianError::InvalidArity { k: 0, n: 3 }
        );
        assert_eq!(
            grassmannian_params(4, 3).unwrap_err(),
            GrassmannianError::InvalidArity { k: 4, n: 3 }
        );
        assert!(matches!(
            build_grassmannian(2, 65),
            Err(GrassmannianError::TooManyMarks(65))
        ));
    }

    #[test]
    fn subsets_lexicographic() {
        let s: Vec<String> = k_subsets(4, 2).iter().map(ToString::to_string).collect();
        assert_eq!(s, ["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]);
        assert_eq!(k_subsets(3, 4).len(), 0);
        assert_eq!(k_subsets(3, 0).len(), 1);
        for n in 0..=9 {
            for k in 0..=n + 1 {
                assert_eq!(k_subsets(n, k).len(), binomial(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn lines_are_inclusions() {
        let g = build_grassmannian(2, 5).unwrap();
        let subs: Vec<KSubset> = g.points().iter().map(|p| p.id.parse().unwrap()).collect();
        let lines = k_subsets(5, 3);
        for (l, pts) in lines.iter().zip(g.lines()) {
            let mut expected: Vec<usize> = subs
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_subset_of(l))
                .map(|(i, _)| i)
                .collect();
            expected.sort();
            assert_eq!(&expected, pts);
        }
    }

    #[test]
    fn ksubset_parse_and_display() {
        let s: KSubset = "{1,4}".parse().unwrap();
        assert_eq!(s.marks(), &[1, 4]);
        assert_eq!(s.to_string(), "{1,4}");
        assert_eq!("4, 1".parse::<KSubset>().unwrap(), s);
        assert!("{1,1}".parse::<KSubset>().is_err());
        assert!("{0,1}".parse::<KSubset>().is_err());
        assert!("{a}".parse::<KSubset>().is_err());
        assert!("{}".parse::<KSubset>().unwrap().is_empty());
    }

    #[test]
    fn display_params() {
        assert_eq!(grassmannian_params(2, 8).unwrap().to_string(), "(28_6, 56_3)");
    }
}
