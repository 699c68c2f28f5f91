use alloc::vec;
use alloc::vec::Vec;

use super::{
    compute_fs_ha, compute_fs_hat, Certificate, CheckError, DualCertificate, Method,
    StructuralWitness, Verdict, WitnessKind,
};
use crate::instance::{Instance, Variant, Vertex};
use crate::lp::{build_dual_ha, build_dual_hat, build_dual_smi, ha_partition, hat_partition, DualVector};
use crate::matching::{
    alternating_reachable, augmenting_path, symmetric_difference, AltPath, AltWalkSpec, EdgeKind,
    Graph, Matching, Reach,
};
use crate::weights::{g_m_plus, labels_smi, require_a_perfect, GmPlus, SmiEdgeLabels};

/// Runs the structural test matching the instance's variant.
pub fn structural_check(inst: &Instance, m: &Matching) -> Result<Verdict, CheckError> {
    match inst.variant() {
        Variant::Ha => structural_check_ha(inst, m),
        Variant::Hat => structural_check_hat(inst, m),
        Variant::Smi => structural_check_smi(inst, m),
    }
}

fn refuted(kind: WitnessKind, vertices: Vec<Vertex>) -> Verdict {
    Verdict {
        popular: false,
        method: Method::Structural,
        certificate: Certificate::Witness(StructuralWitness { kind, vertices }),
    }
}

fn certified(y: DualVector, primal_value: i64) -> Verdict {
    Verdict {
        popular: true,
        method: Method::Structural,
        certificate: Certificate::Dual(DualCertificate {
            objective: y.objective(),
            dual: y,
            primal_value,
            cs_ok: true,
        }),
    }
}

/// Popular iff every first-choice house is matched and every applicant is
/// matched to `f(a)` or `s(a)`. Popular verdicts carry the constructed dual.
pub fn structural_check_ha(inst: &Instance, m: &Matching) -> Result<Verdict, CheckError> {
    require_a_perfect(inst, m)?;
    let fs = compute_fs_ha(inst)?;
    if let Some(h) = fs.h_f().find(|&h| !m.is_matched(h)) {
        return Ok(refuted(WitnessKind::UnmatchedFHouse, vec![h]));
    }
    for &a in inst.left() {
        let p = m.mate(a).expect("A-perfect");
        if p != fs.f(a) && p != fs.s(a) {
            return Ok(refuted(WitnessKind::BadPartner, vec![a, p]));
        }
    }
    let y = build_dual_ha(inst, m, &ha_partition(inst, m)?)?;
    Ok(certified(y, inst.left().len() as i64))
}

/// Popular iff `M ∩ E_f` is a maximum matching of `G_f` and every applicant
/// is matched inside `f(a) ∪ s(a)`.
pub fn structural_check_hat(inst: &Instance, m: &Matching) -> Result<Verdict, CheckError> {
    require_a_perfect(inst, m)?;
    let fs = compute_fs_hat(inst)?;
    let m_f = m.restricted_to(&fs.g_f);
    if let Some(path) = augmenting_path(&fs.g_f, &m_f) {
        return Ok(refuted(WitnessKind::MfNotMaximum, path));
    }
    for &a in inst.left() {
        let p = m.mate(a).expect("A-perfect");
        if !fs.f(a).contains(&p) && !fs.s(a).contains(&p) {
            return Ok(refuted(WitnessKind::BadPartner, vec![a, p]));
        }
    }
    let y = build_dual_hat(inst, m, &hat_partition(inst, m)?)?;
    Ok(certified(y, inst.left().len() as i64))
}

/// Popular iff no `(+,+)` edge of `G_M^+` lies on an alternating cycle, on an
/// alternating path with an unmatched endpoint, or on an alternating path
/// with a second `(+,+)` edge.
pub fn structural_check_smi(inst: &Instance, m: &Matching) -> Result<Verdict, CheckError> {
    let labels = labels_smi(inst, m)?;
    let gplus = g_m_plus(inst, &labels);
    if let Some((kind, vertices)) = smi_violation(&gplus, m) {
        return Ok(refuted(kind, vertices));
    }
    let (_, y) = build_dual_smi(inst, m, &labels, &gplus)?;
    Ok(certified(y, 2 * m.len() as i64))
}

fn reach(g: &Graph, m: &Matching, starts: Vec<Vertex>, first_edge: EdgeKind) -> Reach {
    alternating_reachable(
        &AltWalkSpec {
            graph: g,
            starts,
            first_edge,
        },
        m,
    )
}

/// Orient matched edges left to right and unmatched edges right to left.
/// Every alternating path of `G_M^+` is a directed path in one of its two
/// directions, and a `(+,+)` edge `(u, v)` is traversed as `v -> u`. The
/// three conditions are checked in order, so that when a later one fires
/// the earlier ones guarantee the reconstructed path is simple.
fn smi_violation(gplus: &GmPlus, m: &Matching) -> Option<(WitnessKind, Vec<Vertex>)> {
    let g = &gplus.graph;
    let pp: Vec<(Vertex, Vertex)> = gplus.plus_plus.iter().map(|&e| g.edge(e)).collect();
    let forward: Vec<Reach> = pp
        .iter()
        .map(|&(u, _)| reach(g, m, vec![u], EdgeKind::Matched))
        .collect();

    // 1. v reachable from u closes a cycle through (u, v).
    for (i, &(_, v)) in pp.iter().enumerate() {
        if let Some(walk) = forward[i].walk_to(v, EdgeKind::Matched) {
            return Some((WitnessKind::PlusPlusCycle, walk));
        }
    }

    // 2. A directed path from an unmatched right vertex into v, or from u to
    //    an unmatched left vertex.
    let free_right: Vec<Vertex> = g.right_vertices().filter(|&v| !m.is_matched(v)).collect();
    let free_left: Vec<Vertex> = g.left_vertices().filter(|&u| !m.is_matched(u)).collect();
    let from_free_right = reach(g, m, free_right, EdgeKind::Unmatched);
    let to_free_left = reach(g, m, free_left, EdgeKind::Unmatched);
    for &(u, v) in &pp {
        // Right vertices, free starts included, are entered by matched edges.
        if let Some(mut path) = from_free_right.walk_to(v, EdgeKind::Matched) {
            path.push(u);
            path.extend(m.mate(u));
            return Some((WitnessKind::PlusPlusPathFromUnmatched, path));
        }
        if let Some(mut tail) = to_free_left.walk_to(u, EdgeKind::Matched) {
            tail.reverse();
            let mut path: Vec<Vertex> = m.mate(v).into_iter().collect();
            path.push(v);
            path.extend(tail);
            return Some((WitnessKind::PlusPlusPathFromUnmatched, path));
        }
    }

    // 3. From u1 forward to v2 of another (+,+) edge.
    for (i, &(_, v1)) in pp.iter().enumerate() {
        for (j, &(u2, v2)) in pp.iter().enumerate() {
            if i == j {
                continue;
            }
            if let Some(mid) = forward[i].walk_to(v2, EdgeKind::Matched) {
                let mut path = vec![m.mate(v1).expect("matched"), v1];
                path.extend(mid);
                path.push(u2);
                path.push(m.mate(u2).expect("matched"));
                return Some((WitnessKind::TwoPlusPlusPath, path));
            }
        }
    }
    None
}

/// Re-checks a witness against the instance and matching.
pub fn validate_witness(
    inst: &Instance,
    m: &Matching,
    w: &StructuralWitness,
) -> Result<(), CheckError> {
    use CheckError::InvalidWitness as Invalid;
    let vs = &w.vertices;
    match w.kind {
        WitnessKind::UnmatchedFHouse => {
            let fs = compute_fs_ha(inst)?;
            match vs.as_slice() {
                [h] if fs.in_h_f(*h) && !m.is_matched(*h) => Ok(()),
                _ => Err(Invalid("not an unmatched first-choice house")),
            }
        }
        WitnessKind::BadPartner => {
            let [a, p] = vs.as_slice() else {
                return Err(Invalid("payload must be an applicant and its partner"));
            };
            if m.mate(*a) != Some(*p) {
                return Err(Invalid("not the applicant's partner"));
            }
            let ok = match inst.variant() {
                Variant::Ha => {
                    let fs = compute_fs_ha(inst)?;
                    *p != fs.f(*a) && *p != fs.s(*a)
                }
                Variant::Hat => {
                    let fs = compute_fs_hat(inst)?;
                    !fs.f(*a).contains(p) && !fs.s(*a).contains(p)
                }
                Variant::Smi => false,
            };
            if ok {
                Ok(())
            } else {
                Err(Invalid("partner is in f(a) or s(a)"))
            }
        }
        WitnessKind::MfNotMaximum => {
            let fs = compute_fs_hat(inst)?;
            let m_f = m.restricted_to(&fs.g_f);
            let bigger = symmetric_difference(&fs.g_f, &m_f, &AltPath::path(vs.clone()))
                .map_err(|_| Invalid("not an alternating path of G_f"))?;
            if bigger.len() == m_f.len() + 1 {
                Ok(())
            } else {
                Err(Invalid("path does not augment M_f"))
            }
        }
        WitnessKind::PlusPlusCycle
        | WitnessKind::PlusPlusPathFromUnmatched
        | WitnessKind::TwoPlusPlusPath => {
            let labels = labels_smi(inst, m)?;
            let gplus = g_m_plus(inst, &labels);
            validate_smi_walk(inst, m, &labels, &gplus, w)
        }
    }
}

fn validate_smi_walk(
    inst: &Instance,
    m: &Matching,
    labels: &SmiEdgeLabels,
    gplus: &GmPlus,
    w: &StructuralWitness,
) -> Result<(), CheckError> {
    use CheckError::InvalidWitness as Invalid;
    let alt = AltPath {
        vertices: w.vertices.clone(),
        closed: w.kind == WitnessKind::PlusPlusCycle,
    };
    symmetric_difference(&gplus.graph, m, &alt)
        .map_err(|_| Invalid("not an alternating path or cycle of G_M^+"))?;
    let plus_plus = alt
        .steps()
        .filter(|&(a, b)| {
            let e = inst.graph().edge_id(a, b).expect("edge of G_M^+");
            labels.is_plus_plus(e)
        })
        .count();
    let ok = match w.kind {
        WitnessKind::PlusPlusCycle => plus_plus >= 1,
        WitnessKind::PlusPlusPathFromUnmatched => {
            let first = alt.vertices[0];
            let last = alt.vertices[alt.vertices.len() - 1];
            plus_plus >= 1 && (!m.is_matched(first) || !m.is_matched(last))
        }
        _ => plus_plus >= 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Invalid("walk lacks the required (+,+) edges or unmatched endpoint"))
    }
}
