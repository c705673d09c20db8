//! Points, lines and quadratic forms of PG(5,2).
//!
//! A point of PG(5,2) is a nonzero vector of GF(2)⁶. Because the only nonzero
//! scalar is 1, every point has exactly one representative, so points are
//! stored as the 6-bit integer `x₁·2⁰ + x₂·2¹ + … + x₆·2⁵`. Addition of vectors
//! is XOR of encodings.

use std::fmt;

use thiserror::Error;

/// Number of homogeneous coordinates.
pub const DIMENSION: usize = 6;

/// Number of points of PG(5,2).
pub const NUM_POINTS: usize = (1 << DIMENSION) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("encoding {0} does not fit in {DIMENSION} bits")]
    OutOfRange(u8),
    #[error("coordinate {0} is not a bit")]
    NotABit(u8),
    #[error("a line needs two distinct points, got {0} twice")]
    EqualPoints(ProjPoint),
    #[error("points {0}, {1}, {2} are not collinear")]
    NotCollinear(ProjPoint, ProjPoint, ProjPoint),
}

/// A point of PG(5,2).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(u8);

impl ProjPoint {
    /// Builds a point from its 6-bit encoding.
    pub fn from_bits(bits: u8) -> Result<Self, GeometryError> {
        if bits == 0 {
            return Err(GeometryError::ZeroVector);
        }
        if bits >> DIMENSION != 0 {
            return Err(GeometryError::OutOfRange(bits));
        }
        Ok(ProjPoint(bits))
    }

    /// Builds a point from coordinates `(x₁, …, x₆)`.
    pub fn from_coords(coords: [u8; DIMENSION]) -> Result<Self, GeometryError> {
        let mut bits = 0u8;
        for (i, &c) in coords.iter().enumerate() {
            match c {
                0 => {}
                1 => bits |= 1 << i,
                other => return Err(GeometryError::NotABit(other)),
            }
        }
        Self::from_bits(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Coordinate `x_{i+1}` (zero-based index).
    pub fn coord(self, i: usize) -> u8 {
        (self.0 >> i) & 1
    }

    pub fn coords(self) -> [u8; DIMENSION] {
        std::array::from_fn(|i| self.coord(i))
    }

    /// GF(2) sum of two distinct points, i.e. the third point on their line.
    pub fn sum(self, other: ProjPoint) -> Option<ProjPoint> {
        let s = self.0 ^ other.0;
        (s != 0).then_some(ProjPoint(s))
    }

    /// Label used when the point becomes part of an [`IncidenceStructure`](crate::IncidenceStructure).
    pub fn label(self) -> String {
        self.0.to_string()
    }

    /// Coordinates as a string such as `"111000"`.
    pub fn coord_string(self) -> String {
        self.coords().iter().map(|c| char::from(b'0' + c)).collect()
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint({})", self.coord_string())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        write!(f, "({},{},{},{},{},{})", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

/// All 63 points in ascending encoding order.
pub fn enumerate_points() -> Vec<ProjPoint> {
    (1..=NUM_POINTS as u8).map(ProjPoint).collect()
}

/// A quadratic form over GF(2) in six variables.
///
/// Entry `(i, j)` with `i ≤ j` is the coefficient of `xᵢxⱼ`; diagonal entries
/// are the square terms (`xᵢ² = xᵢ` over GF(2)). Entries below the diagonal
/// cannot be set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QuadraticForm {
    // row i holds the coefficients of x_i x_j for j >= i, bit j
    rows: [u8; DIMENSION],
}

impl QuadraticForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `x₁x₂ + x₃x₄ + x₅x₆`, whose zero set is the hyperbolic quadric Q⁺(5,2).
    pub fn canonical_hyperbolic() -> Self {
        Self::from_terms(&[(1, 2), (3, 4), (5, 6)]).expect("valid terms")
    }

    /// Builds a form from one-based monomial indices `(i, j)`, `i ≤ j`.
    /// Repeated terms cancel, as they do over GF(2).
    pub fn from_terms(terms: &[(usize, usize)]) -> Option<Self> {
        let mut form = Self::zero();
        for &(i, j) in terms {
            if i == 0 || i > j || j > DIMENSION {
                return None;
            }
            form.rows[i - 1] ^= 1 << (j - 1);
        }
        Some(form)
    }

    /// Coefficient of `x_{i+1} x_{j+1}` (zero-based). Always 0 for `i > j`.
    pub fn coeff(&self, i: usize, j: usize) -> u8 {
        if i > j || j >= DIMENSION {
            0
        } else {
            (self.rows[i] >> j) & 1
        }
    }

    /// Nonzero upper-triangular entries as zero-based `(i, j)` pairs.
    pub fn terms(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..DIMENSION {
            for j in i..DIMENSION {
                if self.coeff(i, j) == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn eval(&self, p: ProjPoint) -> u8 {
        let x = p.bits();
        let mut acc = 0u8;
        for i in 0..DIMENSION {
            if (x >> i) & 1 == 1 {
                // x_i * sum_{j >= i} c_ij x_j
                acc ^= (self.rows[i] & x).count_ones() as u8 & 1;
            }
        }
        acc
    }
}

/// Value of `form` at `p`.
pub fn eval_form(form: &QuadraticForm, p: ProjPoint) -> u8 {
    form.eval(p)
}

/// Points where `form` evaluates to 1, in ascending order.
pub fn off_quadric_points(form: &QuadraticForm) -> Vec<ProjPoint> {
    enumerate_points()
        .into_iter()
        .filter(|&p| form.eval(p) == 1)
        .collect()
}

/// Points where `form` evaluates to 0, in ascending order.
pub fn quadric_points(form: &QuadraticForm) -> Vec<ProjPoint> {
    enumerate_points()
        .into_iter()
        .filter(|&p| form.eval(p) == 0)
        .collect()
}

/// A line of PG(5,2): three distinct points, each the sum of the other two.
///
/// Stored as a sorted triple, so two lines are equal iff they have the same
/// point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line([ProjPoint; 3]);

impl Line {
    pub fn from_points(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> Result<Self, GeometryError> {
        if a.bits() ^ b.bits() ^ c.bits() != 0 || a == b {
            return Err(GeometryError::NotCollinear(a, b, c));
        }
        let mut pts = [a, b, c];
        pts.sort();
        Ok(Line(pts))
    }

    pub fn points(&self) -> [ProjPoint; 3] {
        self.0
    }

    pub fn contains(&self, p: ProjPoint) -> bool {
        self.0.contains(&p)
    }
}

/// The line `{p, q, p ⊕ q}`.
pub fn line_through(p: ProjPoint, q: ProjPoint) -> Result<Line, GeometryError> {
    let r = p.sum(q).ok_or(GeometryError::EqualPoints(p))?;
    Line::from_points(p, q, r)
}

/// All 651 lines of PG(5,2) in ascending order.
pub fn all_lines() -> Vec<Line> {
    let pts = enumerate_points();
    let mut lines = Vec::with_capacity(651);
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i + 1..] {
            let r = p.sum(q).expect("distinct");
            // emit each line once, from its two smallest points
            if r > q {
                lines.push(Line([p, q, r]));
            }
        }
    }
    lines
}

/// How a line meets the zero set of a quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LineClass {
    /// No point on the quadric.
    External,
    /// One point on the quadric.
    Tangent,
    /// Two points on the quadric.
    Secant,
    /// The whole line lies on the quadric.
    FullyContained,
}

pub fn classify_line(form: &QuadraticForm, line: &Line) -> LineClass {
    let on = line.points().iter().filter(|&&p| form.eval(p) == 0).count();
    match on {
        0 => LineClass::External,
        1 => LineClass::Tangent,
        2 => LineClass::Secant,
        _ => LineClass::FullyContained,
    }
}

/// Lines with no point on the quadric, in ascending order.
pub fn external_lines(form: &QuadraticForm) -> Vec<Line> {
    all_lines()
        .into_iter()
        .filter(|l| classify_line(form, l) == LineClass::External)
        .collect()
}
