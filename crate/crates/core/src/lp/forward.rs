//! Dual certificates built from the structure of a popular matching.

use alloc::vec;
use alloc::vec::Vec;

use super::{check_cs, dual_feasible, CertificateError, DualVector, Regime};
use crate::characterize::{compute_fs_ha, compute_fs_hat, FsHa, FsHat};
use crate::instance::{Instance, Vertex};
use crate::matching::{alternating_reachable, AltWalkSpec, DmLabel, EdgeKind, Matching};
use crate::weights::{require_a_perfect, weight_ha, weight_hat, EdgeWeights, GmPlus, SmiEdgeLabels};

use CertificateError::StructuralPreconditionViolated as Precondition;

/// Applicants split by whether their partner is `f(a)`, `s(a)`, or neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaPartition {
    pub fs: FsHa,
    pub a_f: Vec<Vertex>,
    pub a_s: Vec<Vertex>,
    pub rest: Vec<Vertex>,
}

pub fn ha_partition(inst: &Instance, m: &Matching) -> Result<HaPartition, CertificateError> {
    require_a_perfect(inst, m)?;
    let fs = compute_fs_ha(inst)?;
    let (mut a_f, mut a_s, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for &a in inst.left() {
        let p = m.mate(a);
        if p == Some(fs.f(a)) {
            a_f.push(a);
        } else if p == Some(fs.s(a)) {
            a_s.push(a);
        } else {
            rest.push(a);
        }
    }
    Ok(HaPartition { fs, a_f, a_s, rest })
}

/// `y = 0` on `A_f`, `1` on `A_s` and on `H_f`, `0` on the other houses.
pub fn build_dual_ha(
    inst: &Instance,
    m: &Matching,
    part: &HaPartition,
) -> Result<DualVector, CertificateError> {
    if !part.rest.is_empty() {
        return Err(Precondition("an applicant is matched outside f(a) and s(a)"));
    }
    let mut y = DualVector::zeros(Regime::LeftFree, inst.vertex_count());
    for &a in &part.a_s {
        y.set(a, 1);
    }
    for h in part.fs.h_f() {
        y.set(h, 1);
    }
    let w = weight_ha(inst, m)?;
    certify(inst, m, &w, &y, inst.left().len() as i64)?;
    Ok(y)
}

/// HAT applicants split by `M(a) ∈ f(a)`, `M(a) ∈ s(a) \ f(a)`, or neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatPartition {
    pub fs: FsHat,
    pub a_f: Vec<Vertex>,
    pub a_s: Vec<Vertex>,
    pub rest: Vec<Vertex>,
}

pub fn hat_partition(inst: &Instance, m: &Matching) -> Result<HatPartition, CertificateError> {
    require_a_perfect(inst, m)?;
    let fs = compute_fs_hat(inst)?;
    let (mut a_f, mut a_s, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for &a in inst.left() {
        let p = m.mate(a).expect("A-perfect");
        if fs.f(a).contains(&p) {
            a_f.push(a);
        } else if fs.s(a).contains(&p) {
            a_s.push(a);
        } else {
            rest.push(a);
        }
    }
    Ok(HatPartition { fs, a_f, a_s, rest })
}

/// Values from the even/odd/unreachable labels of `G_f`: applicants get 0
/// when unreachable or even in `A_f`, 1 when odd or even in `A_s`; houses get
/// 0 when even and 1 otherwise.
pub fn build_dual_hat(
    inst: &Instance,
    m: &Matching,
    part: &HatPartition,
) -> Result<DualVector, CertificateError> {
    if !part.rest.is_empty() {
        return Err(Precondition("an applicant is matched outside f(a) and s(a)"));
    }
    let labels = &part.fs.labels;
    let mut y = DualVector::zeros(Regime::LeftFree, inst.vertex_count());
    for &a in inst.left() {
        let value = match labels.get(a) {
            DmLabel::Unreachable => 0,
            DmLabel::Odd => 1,
            DmLabel::Even if part.a_f.contains(&a) => 0,
            DmLabel::Even => 1,
        };
        y.set(a, value);
    }
    for &h in inst.right() {
        y.set(h, if labels.is_even(h) { 0 } else { 1 });
    }
    let w = weight_hat(inst, m)?;
    certify(inst, m, &w, &y, inst.left().len() as i64)?;
    Ok(y)
}

/// Vertex sets gathered from the alternating paths through `(+,+)` edges,
/// split by which endpoint of the `(+,+)` edge they are closer to.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmiPathPartition {
    pub u_even: Vec<Vertex>,
    pub u_odd: Vec<Vertex>,
    pub v_even: Vec<Vertex>,
    pub v_odd: Vec<Vertex>,
    /// The `(+,+)` edges as `(u, v)` pairs.
    pub pp_edges: Vec<(Vertex, Vertex)>,
}

/// `y = 2` on `U_even ∪ V_even`, `0` on `U_odd ∪ V_odd`, and off the paths
/// `1` on matched and `0` on unmatched vertices.
pub fn build_dual_smi(
    inst: &Instance,
    m: &Matching,
    labels: &SmiEdgeLabels,
    gplus: &GmPlus,
) -> Result<(SmiPathPartition, DualVector), CertificateError> {
    let n = inst.vertex_count();
    let g = &gplus.graph;
    // 0 = untouched, 1 = even (value 2), 2 = odd (value 0).
    let mut class = vec![0u8; n];
    let mut part = SmiPathPartition::default();
    let mut mark = |v: Vertex, c: u8| -> Result<(), CertificateError> {
        match class[v.index()] {
            0 => {
                class[v.index()] = c;
                Ok(())
            }
            prev if prev == c => Ok(()),
            _ => Err(Precondition("a vertex is both even and odd")),
        }
    };
    for &pe in &gplus.plus_plus {
        let (u, v) = g.edge(pe);
        if !m.is_matched(u) || !m.is_matched(v) {
            return Err(Precondition("a (+,+) edge touches an unmatched vertex"));
        }
        part.pp_edges.push((u, v));
        for (start, near_left) in [(u, true), (v, false)] {
            let reach = alternating_reachable(
                &AltWalkSpec {
                    graph: g,
                    starts: vec![start],
                    first_edge: EdgeKind::Matched,
                },
                m,
            );
            for x in reach.vertices() {
                let even = g.is_left(x) == near_left;
                mark(x, if even { 1 } else { 2 })?;
            }
        }
    }
    let mut y = DualVector::zeros(Regime::Symmetric, n);
    for x in inst.vertices() {
        let left = g.is_left(x);
        let value = match class[x.index()] {
            1 => {
                if left { &mut part.u_even } else { &mut part.v_even }.push(x);
                2
            }
            2 => {
                if left { &mut part.u_odd } else { &mut part.v_odd }.push(x);
                0
            }
            _ => i64::from(m.is_matched(x)),
        };
        y.set(x, value);
    }
    certify(inst, m, &labels.w, &y, 2 * m.len() as i64)?;
    Ok((part, y))
}

fn certify(
    inst: &Instance,
    m: &Matching,
    w: &EdgeWeights,
    y: &DualVector,
    objective: i64,
) -> Result<(), CertificateError> {
    if dual_feasible(inst.graph(), w, y).is_err() {
        return Err(Precondition("constructed dual is infeasible"));
    }
    if check_cs(inst.graph(), m, w, y).is_err() {
        return Err(Precondition("constructed dual violates complementary slackness"));
    }
    if y.objective() != objective {
        return Err(Precondition("constructed dual has the wrong objective"));
    }
    Ok(())
}
