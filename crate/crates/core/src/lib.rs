//! Popular matchings in bipartite preference systems.
//!
//! Three problem variants are supported: house allocation with strict
//! one-sided preferences (HA), house allocation with ties (HAT), and stable
//! marriage with incomplete lists (SMI). For each variant a matching can be
//! tested for popularity in three independent ways:
//!
//! * the graph-structural characterization ([`characterize`]),
//! * the optimization characterization via maximum-weight matchings under the
//!   matching-dependent weights `w_M` ([`weights`], [`lp`]),
//! * exhaustive head-to-head comparison against every rival ([`oracle`]).
//!
//! Popular verdicts come with integral dual certificates (minimum
//! `w_M`-vertex covers) built directly from the combinatorial structure, and
//! optimal duals extracted from the solver can be turned back into the
//! structural partition ([`lp::derive_structure_ha`], [`lp::derive_structure_hat`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod audit;
pub mod characterize;
pub mod generate;
pub mod instance;
pub mod lp;
pub mod matching;
pub mod oracle;
pub mod weights;

pub use characterize::{Certificate, Method, StructuralWitness, Verdict, WitnessKind};
pub use instance::{Instance, InstanceBuilder, InstanceError, PrefList, Side, Variant, Vertex};
pub use lp::{DualVector, Regime};
pub use matching::{Graph, Matching, MatchingError};
pub use weights::EdgeWeights;
