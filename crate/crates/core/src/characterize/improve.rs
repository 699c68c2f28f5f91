use super::{validate_witness, CheckError, StructuralWitness, WitnessKind};
use crate::instance::Instance;
use crate::matching::{symmetric_difference, AltPath, Matching};
use crate::weights::labels_smi;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improvement {
    pub matching: Matching,
    /// `w_M(M') - w_M(M)`, with `w_M` fixed by the original matching.
    pub gain: i64,
}

/// Flips `m` along an SMI witness. The result is strictly heavier under the
/// original `w_M`: by at least 2 for cycles and two-`(+,+)` paths, at least 1
/// for paths ending at an unmatched vertex.
pub fn improve_matching_smi(
    inst: &Instance,
    m: &Matching,
    witness: &StructuralWitness,
) -> Result<Improvement, CheckError> {
    let closed = match witness.kind {
        WitnessKind::PlusPlusCycle => true,
        WitnessKind::PlusPlusPathFromUnmatched | WitnessKind::TwoPlusPlusPath => false,
        _ => return Err(CheckError::InvalidWitness("not an SMI witness")),
    };
    validate_witness(inst, m, witness)?;
    let alt = AltPath {
        vertices: witness.vertices.clone(),
        closed,
    };
    let improved = symmetric_difference(inst.graph(), m, &alt)
        .map_err(|_| CheckError::InvalidWitness("flip failed"))?;
    let w = labels_smi(inst, m)?.w;
    let gain = w.of(inst.graph(), &improved) - w.of(inst.graph(), m);
    let needed = if witness.kind == WitnessKind::PlusPlusPathFromUnmatched {
        1
    } else {
        2
    };
    if gain < needed {
        return Err(CheckError::InsufficientGain { gain, needed });
    }
    Ok(Improvement {
        matching: improved,
        gain,
    })
}
