//! Exact polyhedral geometry for combinatorial mutations.
//!
//! Everything in this crate is computed over arbitrary-precision rationals;
//! there is no floating point anywhere. The crate provides:
//!
//! * dual-representation rational polyhedra with polar duality and a
//!   Minkowski calculus ([`polyhedron`]),
//! * combinatorial mutations of polytopes, pointed cones and their Minkowski
//!   sums, with machine-checkable certificates ([`mutation`]),
//! * the dual piecewise-linear (tropical) maps together with an exact
//!   convexity certificate ([`tropical`]),
//! * order and chain polytopes of finite posets and a verified pipeline
//!   connecting them by tropical mutations ([`poset`]),
//! * exact lattice-point counting in dilations ([`ehrhart`]).

pub mod dd;
pub mod ehrhart;
pub mod io;
pub mod mutation;
pub mod polyhedron;
pub mod poset;
pub mod rational;
pub mod tropical;
pub mod vector;
pub mod volume;

mod error;
mod linalg;

pub use error::Error;
pub use polyhedron::{Cone, HalfSpace, Polyhedron, VRep};
pub use rational::Rational;
pub use vector::{pairing, LatticeVector, QVector, Space};

// The guide's chapters double as documentation tests, so `cargo test --doc`
// keeps every code block in the book compiling and passing.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/exact-geometry.md")]
    pub struct ExactGeometry;
    #[doc = include_str!("../../../book/src/polyhedra.md")]
    pub struct Polyhedra;
    #[doc = include_str!("../../../book/src/mutations.md")]
    pub struct Mutations;
    #[doc = include_str!("../../../book/src/tropical.md")]
    pub struct Tropical;
    #[doc = include_str!("../../../book/src/poset-polytopes.md")]
    pub struct PosetPolytopes;
    #[doc = include_str!("../../../book/src/counting.md")]
    pub struct Counting;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct CommandLine;
}
