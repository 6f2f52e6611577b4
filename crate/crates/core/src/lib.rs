//! Exact combinatorics of pointed Heegaard diagrams.
//!
//! A diagram is loaded from `.hfd` JSON (or built from [`corpus`]) and
//! validated into a [`diagram::ValidatedDiagram`]. From there:
//!
//! - [`generators`] enumerates intersection tuples,
//! - [`domains`] solves the boundary equations and enumerates nonnegative
//!   domains of a given index,
//! - [`measures`] evaluates Euler measure, point measures, Maslov index and
//!   Chern pairings,
//! - [`spinc`] splits generators into Spin^c classes with relative gradings,
//! - [`admissibility`] decides weak and strong admissibility with witnesses
//!   and area certificates,
//! - [`floer`] counts bigons and rectangles and returns hat Floer homology
//!   over F2.
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals).

pub mod admissibility;
pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod domains;
pub mod exactla;
pub mod floer;
pub mod generators;
pub mod measures;
pub mod spinc;
