use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{compute_fs_ha, compute_fs_hat, structural_check_ha, structural_check_hat, CheckError};
use crate::instance::{Instance, Variant, Vertex};
use crate::matching::{augment_to_maximum, maximum_matching, DmLabel, Matching};
use crate::weights::WeightError;

/// A popular matching of an augmented HA instance, if one exists.
///
/// Maximum matching on the `f`/`s` edges; when it is applicant-perfect, each
/// unmatched first-choice house is handed to the lowest-id applicant ranking
/// it first (who then holds `s(a)`). The result is re-validated.
pub fn find_popular_ha(inst: &Instance) -> Result<Option<Matching>, CheckError> {
    let fs = compute_fs_ha(inst)?;
    let g = inst
        .graph()
        .subgraph(|_, (a, h)| h == fs.f(a) || h == fs.s(a));
    let mut m = maximum_matching(&g);
    if !m.covers(inst.left()) {
        return Ok(None);
    }
    for h in fs.h_f().collect::<Vec<_>>() {
        if m.is_matched(h) {
            continue;
        }
        let a = *inst
            .left()
            .iter()
            .find(|&&a| fs.f(a) == h)
            .expect("h is somebody's first choice");
        m.remove(a);
        m.insert(a, h).expect("h and a are free");
    }
    Ok(structural_check_ha(inst, &m)?.popular.then_some(m))
}

/// A popular matching of an augmented HAT instance, if one exists.
///
/// Starting from a maximum matching of `G_f`, drop the first-choice edges
/// joining two odd vertices or an odd and an unreachable vertex, add the
/// edges to `s(a)`, and augment to a maximum matching. The result is kept
/// when it covers every applicant and passes the structural test.
pub fn find_popular_hat(inst: &Instance) -> Result<Option<Matching>, CheckError> {
    let fs = compute_fs_hat(inst)?;
    let label = |v: Vertex| fs.labels.get(v);
    let g = inst.graph().subgraph(|_, (a, h)| {
        let first = fs.f(a).contains(&h)
            && !matches!(
                (label(a), label(h)),
                (DmLabel::Odd, DmLabel::Odd)
                    | (DmLabel::Odd, DmLabel::Unreachable)
                    | (DmLabel::Unreachable, DmLabel::Odd)
            );
        first || fs.s(a).contains(&h)
    });
    let m = augment_to_maximum(&g, fs.m_f.clone());
    if !m.covers(inst.left()) {
        return Ok(None);
    }
    Ok(structural_check_hat(inst, &m)?.popular.then_some(m))
}

/// Left-proposing deferred acceptance.
pub fn gale_shapley_smi(inst: &Instance) -> Result<Matching, CheckError> {
    if inst.variant() != Variant::Smi {
        return Err(WeightError::WrongVariant { expected: "smi" }.into());
    }
    let n = inst.vertex_count();
    let mut next = vec![0usize; n];
    let mut m = Matching::empty(n);
    let mut free: VecDeque<Vertex> = inst.left().iter().copied().collect();
    let lists: Vec<Vec<Vertex>> = inst
        .vertices()
        .map(|v| inst.prefs(v).map(|p| p.iter().collect()).unwrap_or_default())
        .collect();
    while let Some(u) = free.pop_front() {
        let Some(&v) = lists[u.index()].get(next[u.index()]) else {
            continue;
        };
        next[u.index()] += 1;
        match m.mate(v) {
            None => m.insert(u, v).expect("both free"),
            Some(rival) if inst.partner_rank(v, Some(u)) < inst.partner_rank(v, Some(rival)) => {
                m.remove(rival);
                m.insert(u, v).expect("both free");
                free.push_back(rival);
            }
            Some(_) => free.push_back(u),
        }
    }
    Ok(m)
}

/// No edge outside `m` is preferred by both endpoints to their partners.
pub fn is_stable(inst: &Instance, m: &Matching) -> bool {
    inst.edges().iter().all(|&(u, v)| {
        m.contains(u, v)
            || inst.partner_rank(u, Some(v)) >= inst.partner_rank(u, m.mate(u))
            || inst.partner_rank(v, Some(u)) >= inst.partner_rank(v, m.mate(v))
    })
}
