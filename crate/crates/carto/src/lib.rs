//! Exact combinatorics of planar maps and hypermaps: rotation systems,
//! label calculi, mobiles, distance-preserving bijections, and the truncated
//! power-series engine used to compute and cross-check distance two-point
//! functions of several map families.
//!
//! The crate is organized around the objects it manipulates:
//!
//! - [`series`] — truncated formal power series with exact rational
//!   coefficients (one variable on an integer or half-integer exponent grid,
//!   or two variables truncated in `t` with polynomial `z`-coefficients).
//! - [`maps`] — combinatorial maps as a pair of dart permutations, with
//!   faces, genus, face bicoloring, star representations and distances.
//! - [`labels`] — vertex labelling disciplines and the cyclic-sequence
//!   calculus of completions and complements.
//! - [`mobiles`] — labelled plane trees with black and white vertices:
//!   validation, exhaustive enumeration and uniform random generation.
//! - [`bijections`] — the label-driven openings and closings between
//!   labelled maps, hypermaps, mobiles and constellations, together with the
//!   parameter correspondences they guarantee.
//! - [`twopoint`] — two-point function tables computed once from
//!   recurrences and once from closed forms, continued-fraction and
//!   asymptotic cross-checks.
//! - [`oracle`] — independent brute-force enumeration of small rooted maps
//!   and hypermaps, grounding every series coefficient.
//! - [`cli`] — the `carto` command-line entry point.
//!
//! A narrative guide with runnable examples lives under `book/`; its
//! chapters are doc-tested through the [`guide`] module.

pub mod bigfloat;
pub mod bijections;
pub mod cli;
pub mod guide;
pub mod labels;
pub mod maps;
pub mod mobiles;
pub mod oracle;
pub mod rat;
pub mod twopoint;
pub mod series;

pub use maps::{DartMap, Hypermap};
pub use series::{Grid, Series, Series2};
