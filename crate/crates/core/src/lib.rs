//! Exact enumeration of magic, semimagic and magilatin labellings.
//!
//! A labelling problem is turned into an inside-out polytope: a rational
//! polytope `P` (the labellings with entries in `[0, 1]`, or nonnegative
//! labellings with line sums 1) together with the hyperplanes `x_i = x_j`
//! that distinct entries must avoid. Integer points of the dilates `tP` off
//! the hyperplanes are counted directly, or through Möbius sums over the
//! intersection poset, and the counts are fitted to quasipolynomials in `t`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, Hermite normal form, lattice bases, exact simplex
//! * [`polytope`]: H-polytopes inside a subspace, vertices, volume
//! * [`arrangement`]: graphic arrangements, flats, Möbius values, region
//!   feasibility
//! * [`clutter`]: covering clutters, form systems, built-in families
//! * [`counting`]: lattice point counts at each dilation
//! * [`quasipoly`]: period detection and exact fitting
//! * [`permutations`]: realizable orders and reverse dominance
//! * [`cli`]: problem documents, reports and the command implementations

pub mod arrangement;
pub mod cli;
pub mod clutter;
pub mod counting;
mod error;
pub mod exact;
pub mod permutations;
pub mod polytope;
pub mod quasipoly;

pub use error::{Error, Result};

pub use arrangement::{ForbiddenGraph, InducedArrangement, IntersectionPoset, Orientation};
pub use clutter::{
    builtin, Builtin, CoveringClutter, Distinctness, FormSystem, InsideOutProblem, Mode, Options, Symmetry,
};
pub use counting::{Budget, CountSeries, Counts, Regime};
pub use exact::{AffineSubspace, LinearSystem, RatMatrix, Rational};
pub use polytope::{BoundMode, HPolytope, VertexSet};
pub use quasipoly::{FitReport, Quasipolynomial};
