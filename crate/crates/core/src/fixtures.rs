//! The published tables for the canonical form `x₁x₂ + x₃x₄ + x₅x₆`, embedded
//! verbatim, plus a mutable copy for harnesses that need to perturb them.

use crate::geometry::{GeometryError, ProjPoint};
use crate::grassmannian::{ConfigParams, KSubset};
use crate::iso::IsoCertificate;

/// Coordinates `(x₁, …, x₆)` of the 28 off-quadric points, in table order.
pub const OFF_QUADRIC_POINTS: [[u8; 6]; 28] = [
    [1, 1, 1, 0, 0, 0],
    [1, 1, 0, 0, 1, 0],
    [1, 1, 0, 0, 0, 1],
    [1, 1, 0, 1, 0, 0],
    [1, 1, 1, 0, 1, 0],
    [1, 1, 1, 0, 0, 1],
    [1, 1, 0, 1, 1, 0],
    [1, 1, 0, 1, 0, 1],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 1, 1, 1, 0],
    [0, 0, 1, 1, 0, 1],
    [0, 1, 1, 1, 0, 0],
    [1, 0, 1, 1, 1, 0],
    [1, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 1, 1],
    [1, 0, 0, 0, 1, 1],
    [0, 0, 1, 0, 1, 1],
    [0, 0, 0, 1, 1, 1],
    [0, 1, 1, 0, 1, 1],
    [0, 1, 0, 1, 1, 1],
    [1, 1, 1, 1, 1, 1],
    [1, 1, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 0],
    [0, 1, 1, 1, 1, 0],
    [0, 1, 1, 1, 0, 1],
    [0, 1, 0, 0, 1, 1],
    [1, 0, 1, 0, 1, 1],
    [1, 0, 0, 1, 1, 1],
];

/// The 56 external lines as one-based indices into [`OFF_QUADRIC_POINTS`].
pub const EXTERNAL_LINES: [[usize; 3]; 56] = [
    [1, 4, 9],
    [1, 7, 10],
    [1, 8, 11],
    [1, 16, 19],
    [1, 18, 21],
    [2, 3, 15],
    [2, 6, 17],
    [2, 8, 18],
    [2, 11, 21],
    [2, 12, 13],
    [3, 5, 17],
    [3, 7, 18],
    [3, 10, 21],
    [3, 12, 14],
    [4, 5, 10],
    [4, 6, 11],
    [4, 16, 20],
    [4, 17, 21],
    [5, 6, 15],
    [5, 7, 9],
    [5, 14, 20],
    [6, 8, 9],
    [6, 13, 20],
    [7, 8, 15],
    [7, 14, 19],
    [8, 13, 19],
    [9, 17, 18],
    [9, 19, 20],
    [10, 11, 15],
    [10, 14, 16],
    [11, 13, 16],
    [12, 16, 21],
    [12, 17, 20],
    [12, 18, 19],
    [13, 14, 15],
    [1, 26, 27],
    [2, 23, 24],
    [3, 23, 25],
    [4, 26, 28],
    [5, 25, 28],
    [6, 24, 28],
    [7, 25, 27],
    [8, 24, 27],
    [9, 27, 28],
    [10, 25, 26],
    [11, 24, 26],
    [12, 22, 23],
    [13, 22, 24],
    [14, 22, 25],
    [15, 24, 25],
    [16, 22, 26],
    [17, 23, 28],
    [18, 23, 27],
    [19, 22, 27],
    [20, 22, 28],
    [21, 23, 26],
];

/// Image in `G_2(8)` of each off-quadric point, in table order.
pub const BIJECTION: [[u8; 2]; 28] = [
    [1, 4],
    [3, 5],
    [2, 5],
    [4, 6],
    [2, 6],
    [3, 6],
    [1, 2],
    [1, 3],
    [1, 6],
    [2, 4],
    [3, 4],
    [5, 7],
    [3, 7],
    [2, 7],
    [2, 3],
    [4, 7],
    [5, 6],
    [1, 5],
    [1, 7],
    [6, 7],
    [4, 5],
    [7, 8],
    [5, 8],
    [3, 8],
    [2, 8],
    [4, 8],
    [1, 8],
    [6, 8],
];

/// One row of the nested removal table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedRow {
    pub heptads_removed: usize,
    /// `None` for the empty set.
    pub params: Option<ConfigParams>,
    /// `N` of the matching `G_2(N)`.
    pub grassmannian_n: Option<usize>,
    pub remark: Option<String>,
}

fn row(t: usize, p: Option<(usize, usize, usize, usize)>, n: Option<usize>, remark: Option<&str>) -> NestedRow {
    NestedRow {
        heptads_removed: t,
        params: p.map(|(a, b, c, d)| ConfigParams::new(a, b, c, d)),
        grassmannian_n: n,
        remark: remark.map(str::to_owned),
    }
}

/// All four tables as owned data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperFixtures {
    pub table1: Vec<[u8; 6]>,
    /// One-based point indices.
    pub table2: Vec<[usize; 3]>,
    pub bijection: Vec<[u8; 2]>,
    pub nested: Vec<NestedRow>,
}

impl PaperFixtures {
    pub fn embedded() -> Self {
        PaperFixtures {
            table1: OFF_QUADRIC_POINTS.to_vec(),
            table2: EXTERNAL_LINES.to_vec(),
            bijection: BIJECTION.to_vec(),
            nested: vec![
                row(0, Some((28, 6, 56, 3)), Some(8), None),
                row(1, Some((21, 5, 35, 3)), Some(7), None),
                row(2, Some((15, 4, 20, 3)), Some(6), Some("Cayley-Salmon")),
                row(3, Some((10, 3, 10, 3)), Some(5), Some("Desargues")),
                row(4, Some((6, 2, 4, 3)), Some(4), Some("Pasch")),
                row(5, Some((3, 1, 1, 3)), Some(3), Some("single line")),
                row(6, Some((1, 0, 0, 3)), Some(2), Some("single point")),
                row(7, None, None, Some("empty set")),
            ],
        }
    }

    /// Rows of the point table as projective points.
    pub fn table1_points(&self) -> Result<Vec<ProjPoint>, GeometryError> {
        self.table1.iter().map(|&c| ProjPoint::from_coords(c)).collect()
    }

    /// The bijection table as a certificate from off-quadric labels to
    /// `G_2(8)` labels. `None` if a row is not a valid point or mark pair.
    pub fn bijection_certificate(&self) -> Option<IsoCertificate> {
        let points = self.table1_points().ok()?;
        if points.len() != self.bijection.len() {
            return None;
        }
        let mapping = points
            .iter()
            .zip(&self.bijection)
            .map(|(p, pair)| Some((p.label(), KSubset::new(pair.to_vec())?.to_string())))
            .collect::<Option<Vec<_>>>()?;
        Some(IsoCertificate::new(mapping))
    }
}
