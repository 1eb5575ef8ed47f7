//! Chargeless decisions for mixed 3-manifolds and special cube complexes.

pub mod charge;
pub mod cube_complex;
pub mod decomposition;
pub mod generate;
pub mod homology;
pub mod io;
pub mod manifold;
pub mod wallspace;
