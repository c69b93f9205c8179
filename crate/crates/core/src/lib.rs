//! Maximum cliques in unit-disk graphs.
//!
//! Points are adjacent when their Euclidean distance is at most 1. The crate
//! provides:
//!
//! - [`general::max_clique_general`]: a grid-localized decision procedure
//!   driven by exponential and binary search, whose cost grows with the
//!   answer rather than with `n²`;
//! - [`convex_sweep::max_clique_given_point`]: a sweep for points in convex
//!   position that finds a clique at least as large as any clique through a
//!   given anchor;
//! - [`convex_randomized::max_clique_convex`]: the randomized combination of
//!   the two for convex inputs without an anchor;
//! - [`lens::max_clique_lens_baseline`] and [`oracle`]: exact reference
//!   solvers.
//!
//! ```
//! use udg_clique::{general::max_clique_general, PointSet};
//!
//! let ps = PointSet::from_coords(&[(0.0, 0.0), (0.5, 0.2), (0.3, 0.6), (4.0, 4.0)]);
//! let (clique, _) = max_clique_general(&ps).unwrap();
//! assert_eq!(clique.indices, vec![0, 1, 2]);
//! ```

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod cobipartite;
pub mod convex_randomized;
pub mod convex_sweep;
pub mod error;
pub mod general;
pub mod geometry;
pub mod grid;
pub mod instances;
pub mod io;
pub mod lens;
pub mod oracle;
pub mod solve;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{dist_le_one, is_clique, CliqueResult, Point, PointSet};
