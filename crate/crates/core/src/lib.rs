//! Exact-arithmetic Morse–Smale–Witten complexes for orbifolds.
//!
//! A global quotient `M/G` is described by the Morse complex of a
//! `G`-invariant function on `M`, the action of `G` on critical points and
//! flow lines, and an orientation cocycle. From it the crate builds the
//! invariant subcomplex, the intrinsic orbit-space complex with isotropy
//! weights, and checks both against simplicial homology of a triangulated
//! quotient. All arithmetic is over the rationals.

pub mod chaincx;
pub mod corpus;
pub mod error;
pub mod groups;
pub mod instance;
pub mod intrinsic;
pub(crate) mod linalg;
pub mod pipeline;
pub mod quotient;
pub mod rational;
pub mod report;
pub mod simplicial;

pub use chaincx::{betti, GradedComplex, RationalMatrix};
pub use error::{Error, Result};
pub use groups::{FiniteGroup, GroupAction, Perm};
pub use instance::{Instance, InstanceFile, Kind};
pub use intrinsic::{Convention, OrbifoldMorseSystem};
pub use quotient::EquivariantMorseSystem;
pub use rational::{Sign, Q};
pub use report::{Report, Status};
pub use simplicial::{GSimplicialComplex, SimplicialComplex};
