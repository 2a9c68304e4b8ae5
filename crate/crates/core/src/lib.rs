//! Exact verification of Gysin functors over GF(2).
//!
//! A Gysin functor assigns to every subgroup W of an elementary abelian
//! 2-group V a finite graded GF(2) algebra K_W, together with restriction
//! maps down the subgroup lattice and transfer maps up it, subject to a
//! three-step exactness condition along each covering pair. This crate
//! provides:
//!
//! * exact bit-packed linear algebra over GF(2) ([`gf2`]),
//! * graded vector spaces and degree-homogeneous maps ([`graded`]),
//! * the subgroup lattice of (Z/2Z)^d ([`lattice`]),
//! * modules over polynomial and exterior coefficient rings, with
//!   torsion/cotorsion functors and their six-term exact sequence
//!   ([`modules`]),
//! * graded algebras given by structure constants ([`algebra`]),
//! * the functor-level verifier and invariant reports ([`functor`],
//!   [`report`]),
//! * the nine-term commuting diagram refining a covering pair
//!   ([`diagram`]),
//! * built-in functors: a fixed 8-dimensional example, spheres with the
//!   antipodal action, and products of spheres ([`builtin`]),
//! * independent small-scale oracles used by the test suite ([`oracle`]),
//! * a JSON interchange format ([`format`]).
//!
//! All computation is exact; there are no floating point tolerances
//! anywhere. Every derived basis and every report is deterministic.

pub mod algebra;
pub mod builtin;
pub mod diagram;
pub mod format;
pub mod functor;
pub mod gf2;
pub mod graded;
pub mod lattice;
pub mod modules;
pub mod oracle;
pub mod report;

pub use algebra::GradedAlgebra;
pub use diagram::{build_diagram_d, DiagramD, DiagramError, MonogenicData};
pub use functor::{GysinFunctor, VerifyOptions};
pub use gf2::{Gf2Matrix, Gf2Vec, Quotient, Subspace};
pub use graded::{GradedMap, GradedSpace};
pub use lattice::{CoveringPair, Subgroup, SubgroupLattice};
pub use modules::{HWModule, JordanType, ShortExactSeq, TModule};
pub use report::{Finding, Report, Severity};
