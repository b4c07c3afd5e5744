//! Matching complexes of polygonal line tilings: graph families, independence
//! complexes, exact integral homology, reduction rules and homotopy-type
//! predictions.

pub mod complexes;
pub mod graphs;
pub mod homology;
pub mod reductions;
pub mod theory;
