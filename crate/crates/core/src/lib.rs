//! Construction and verification of connected-homogeneous digraphs: the
//! catalog families, an automorphism/isomorphism engine, (connected-)
//! homogeneity checking, reachability digraphs, finite quotients of the
//! triangle tree and an exhaustive small-order census.

pub mod census;
pub mod digraph;
pub mod families;
pub mod homogeneity;
pub mod io;
pub mod quotients;
pub mod reachability;
pub mod symmetry;
