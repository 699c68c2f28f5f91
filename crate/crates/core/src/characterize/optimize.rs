use super::{Certificate, CheckError, DualCertificate, Method, RivalKind, Verdict};
use crate::instance::{Instance, Variant};
use crate::lp::{check_cs, max_weight_matching, SolveMode};
use crate::matching::Matching;
use crate::weights::{labels_smi, weight_ha, weight_hat};

/// Popular iff `m` is a maximum-weight matching under its own `w_M`
/// (left-perfect matchings for HA/HAT, all matchings for SMI).
pub fn optimization_check(inst: &Instance, m: &Matching) -> Result<Verdict, CheckError> {
    let (w, mode) = match inst.variant() {
        Variant::Ha => (weight_ha(inst, m)?, SolveMode::LeftPerfect),
        Variant::Hat => (weight_hat(inst, m)?, SolveMode::LeftPerfect),
        Variant::Smi => (labels_smi(inst, m)?.w, SolveMode::Free),
    };
    let g = inst.graph();
    let current = w.of(g, m);
    let opt = max_weight_matching(g, &w, mode)?;
    let certificate = if opt.value == current {
        Certificate::Dual(DualCertificate {
            cs_ok: check_cs(g, m, &w, &opt.dual).is_ok(),
            objective: opt.dual.objective(),
            dual: opt.dual,
            primal_value: current,
        })
    } else {
        Certificate::Rival {
            matching: opt.matching,
            kind: RivalKind::Heavier {
                weight: opt.value,
                current,
            },
        }
    };
    Ok(Verdict {
        popular: opt.value == current,
        method: Method::Optimization,
        certificate,
    })
}
