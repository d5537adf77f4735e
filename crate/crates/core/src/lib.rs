//! Census engine for translational tiles of `Z^d`.
//!
//! * [`line_tiler`] decides tiling of `Z` by a finite set and counts the
//!   tiles of a one-dimensional box or of an arbitrary ground set.
//! * [`lattice_tiler`] enumerates sublattices in Hermite normal form,
//!   searches lattice and torus tilings, and gives an honest tri-state
//!   answer for `d >= 2`.
//! * [`constructions`] builds the word tiles of `[0, 3t)` and the sheared
//!   slab tiles of `[0, 3t)^d` with their lattice certificates.
//! * [`entropy_bound`] evaluates the entropy upper bound on the number of
//!   tiles, term by term.
//! * [`stats`] computes exact statistics over the full tile population of a
//!   box.
//! * [`cli`] is the `tilecensus` command line.
//!
//! Boxes are 0-based: `[n]` is represented as `{0, ..., n-1}`.

pub mod cli;
pub mod constructions;
pub mod domain;
pub mod entropy_bound;
pub mod error;
pub mod lattice_tiler;
pub mod line_tiler;
pub mod parallel;
pub mod stats;

pub use domain::{
    diameter, normalize_tile, parse_tile, serialize_tile, Certificate, Decision, HnfMatrix, LatticeCertificate,
    PeriodCertificate, Point, SearchSpent, Status, Tile, TorusCertificate,
};
pub use error::{Error, Result};
