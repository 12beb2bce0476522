//! Exact-arithmetic toolkit for toroidal b-divisor combinatorics.
//!
//! Everything here runs on arbitrary-precision rationals. The library covers
//! five layers that build on each other:
//!
//! * [`exact`] - rationals, pi-graded scalars, exact symmetric-matrix
//!   certificates (positive semidefiniteness, the trace-dominance
//!   inequality), Bernoulli numbers and zeta values at negative odd
//!   integers, and a fixed-point kernel for the few transcendental
//!   evaluations that cannot stay rational.
//! * [`fan`] and [`polytope`] - rational conical polyhedral complexes with
//!   integral structure, stellar subdivision with its contraction maps, and
//!   exact polytope volume and lattice-point machinery.
//! * [`conical`] - conical functions on complexes, either as exact
//!   piecewise-linear data (the Cartier case) or as evaluation oracles (the
//!   Weil case), with piecewise-linearity detection, concavity tests, and
//!   toric degrees.
//! * [`recession`] and [`series`] - closed convex functions with recession
//!   cones and Lelong numbers, plus monomial graded linear series with
//!   volumes, Okounkov bodies, and the divisor values they induce.
//! * [`siegel`] and [`growth`] - the cones of positive semidefinite
//!   matrices used for universal families of abelian varieties, admissible
//!   cone decompositions with group actions, divisorial functions and the
//!   descended invariant function whose failure to be piecewise linear is
//!   certified exactly, and the closed-form asymptotic dimension formulas
//!   for spaces of fixed-ratio Jacobi forms.
//!
//! The `examples/` directory of this crate is the guided tour: one runnable
//! example per capability. A thin command-line front end lives in the
//! `fanfare-cli` crate.

pub mod conical;
pub mod error;
pub mod exact;
pub mod fan;
pub mod growth;
pub mod polytope;
pub mod recession;
pub mod sample;
pub mod selftest;
pub mod series;
pub mod siegel;
pub mod wire;

pub use error::{Error, Result};
