//! Variable-sized bin packing with bin costs and bounded item fragmentation.
//!
//! Items may be cut at most `D` times each; bins come in classes with a
//! capacity and a cost, and the goal is a packing of minimum total cost.
//! The crate provides:
//!
//! * the domain model and an independent verifier ([`model`], [`verify`]),
//! * single-capacity routines NF/FF/FFD, NFC and CFF ([`auxiliary`]),
//! * the cost-aware solvers CIFFD, CFFf, CNFL and CDNFL ([`solvers`]),
//! * a branch-and-bound oracle for tiny instances ([`exact`]),
//! * seeded instance generators, including instances with a known optimum
//!   ([`instgen`]),
//! * a benchmark harness emitting CSV and SVG reports ([`bench`]).
//!
//! All structures are generic over the unsigned integer [`Size`] type; the
//! aliases below fix it to `u64`.

pub mod auxiliary;
pub mod bench;
pub mod error;
pub mod exact;
pub mod instgen;
pub mod model;
pub mod scalar;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use model::CostModel;
pub use scalar::Size;
pub use solvers::{Algorithm, FillFactor};
pub use verify::{item_mass, total_cost, verify_packing, Verdict, Violation, ViolationKind};

/// Default scalar for sizes, capacities and costs.
pub type Scalar = u64;

pub type Item = model::Item<Scalar>;
pub type BinClass = model::BinClass<Scalar>;
pub type Instance = model::Instance<Scalar>;
pub type Fragment = model::Fragment<Scalar>;
pub type PackedBin = model::PackedBin<Scalar>;
pub type Packing = model::Packing<Scalar>;
pub type SolveResult = solvers::SolveResult<Scalar>;
