//! The complement of the binary Klein quadric as a combinatorial Grassmannian.
//!
//! The 28 points of PG(5,2) off the hyperbolic quadric `x₁x₂ + x₃x₄ + x₅x₆ = 0`
//! and the 56 lines skew to it form a `(28_6, 56_3)` configuration. This crate
//! builds that configuration from scratch, builds the combinatorial
//! Grassmannian `G_2(8)`, finds an explicit isomorphism between them, finds
//! the eight Conwell heptads, and replays the chain of configurations obtained
//! by deleting heptads one by one.
//!
//! ```
//! use klein_grassmannian::{build_grassmannian, find_isomorphism, off_quadric_structure, QuadraticForm};
//!
//! let off = off_quadric_structure(&QuadraticForm::canonical_hyperbolic());
//! assert_eq!(off.measure_params().unwrap().to_string(), "(28_6, 56_3)");
//!
//! let g28 = build_grassmannian(2, 8).unwrap();
//! assert!(find_isomorphism(&off, &g28).is_some());
//! ```

pub mod conwell;
pub mod export;
pub mod fixtures;
pub mod geometry;
pub mod grassmannian;
pub mod incidence;
pub mod iso;

pub use conwell::{
    build_collinearity_graph, find_heptads, heptad_joining_lines, heptad_pair_intersections,
    heptads_vs_marks, remove_heptad, removal_sequence, CollinearityGraph, ConwellError, Heptad,
    SequenceStep,
};
pub use fixtures::PaperFixtures;
pub use geometry::{
    classify_line, enumerate_points, eval_form, external_lines, line_through, off_quadric_points,
    GeometryError, Line, LineClass, ProjPoint, QuadraticForm,
};
pub use grassmannian::{build_grassmannian, grassmannian_params, ConfigParams, GrassmannianError, KSubset};
pub use incidence::{IncidenceError, IncidenceStructure, PointRecord};
pub use iso::{count_automorphisms, find_isomorphism, verify_certificate, IsoCertificate, IsoError};

/// The off-quadric points of `form` and its external lines as an incidence
/// structure. Points are labelled by their 6-bit encoding and tagged with
/// their coordinates; both lists are in ascending encoding order.
pub fn off_quadric_structure(form: &QuadraticForm) -> IncidenceStructure {
    let points = off_quadric_points(form)
        .into_iter()
        .map(|p| PointRecord::new(p.label()).with_tag("coords", p.coord_string()))
        .collect();
    let lines: Vec<Vec<String>> = external_lines(form)
        .iter()
        .map(|l| l.points().iter().map(|p| p.label()).collect())
        .collect();
    IncidenceStructure::new("off-quadric", points, &lines)
        .expect("external lines consist of off-quadric points")
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/grassmannians.md")]
    mod grassmannians {}
    #[doc = include_str!("../../../book/src/isomorphism.md")]
    mod isomorphism {}
    #[doc = include_str!("../../../book/src/heptads.md")]
    mod heptads {}
    #[doc = include_str!("../../../book/src/removal.md")]
    mod removal {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
