//! Popularity tests: graph-structural, optimization-based, and helpers that
//! produce or improve matchings.

mod find;
mod fs;
mod improve;
mod optimize;
mod structural;

use alloc::vec::Vec;

use thiserror::Error;

use crate::instance::Vertex;
use crate::lp::{CertificateError, DualVector, LpError};
use crate::matching::Matching;
use crate::weights::WeightError;

pub use find::{find_popular_ha, find_popular_hat, gale_shapley_smi, is_stable};
pub use fs::{compute_fs_ha, compute_fs_hat, FsHa, FsHat};
pub use improve::{improve_matching_smi, Improvement};
pub use optimize::optimization_check;
pub use structural::{
    structural_check, structural_check_ha, structural_check_hat, structural_check_smi,
    validate_witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Structural,
    Optimization,
    BruteForce,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Structural, Method::Optimization, Method::BruteForce];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Structural => "structural",
            Method::Optimization => "optimization",
            Method::BruteForce => "bruteforce",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// Payload `[h]`: a first-choice house left unmatched.
    UnmatchedFHouse,
    /// Payload `[a, M(a)]`: partner outside `f(a)` and `s(a)`.
    BadPartner,
    /// Payload: an alternating cycle through a `(+,+)` edge.
    PlusPlusCycle,
    /// Payload: an alternating path through a `(+,+)` edge ending at an
    /// unmatched vertex.
    PlusPlusPathFromUnmatched,
    /// Payload: an alternating path through two `(+,+)` edges.
    TwoPlusPlusPath,
    /// Payload: an augmenting path for `M_f` in `G_f`.
    MfNotMaximum,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::UnmatchedFHouse => "unmatched_f_house",
            WitnessKind::BadPartner => "bad_partner",
            WitnessKind::PlusPlusCycle => "plus_plus_cycle",
            WitnessKind::PlusPlusPathFromUnmatched => "plus_plus_path_from_unmatched",
            WitnessKind::TwoPlusPlusPath => "two_plus_plus_path",
            WitnessKind::MfNotMaximum => "mf_not_maximum",
        }
    }
}

/// Why a matching fails the structural characterization. Paths and cycles
/// are vertex sequences; a cycle's last vertex joins its first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralWitness {
    pub kind: WitnessKind,
    pub vertices: Vec<Vertex>,
}

/// Primal-dual pair summary carried by a popular verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub dual: DualVector,
    pub objective: i64,
    pub primal_value: i64,
    pub cs_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RivalKind {
    /// The rival wins the head-to-head vote by `delta` (literal formula).
    Beats { delta: i64 },
    /// The rival is heavier under `w_M`.
    Heavier { weight: i64, current: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Dual(DualCertificate),
    Witness(StructuralWitness),
    Rival { matching: Matching, kind: RivalKind },
    /// Every one of `rivals` matchings was compared and none wins.
    Exhaustive { rivals: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub popular: bool,
    pub method: Method,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("witness does not describe a violation: {0}")]
    InvalidWitness(&'static str),
    #[error("flip gained {gain}, expected at least {needed}")]
    InsufficientGain { gain: i64, needed: i64 },
}
