//! Reading the popular-matching structure back out of an optimal dual.

use alloc::vec::Vec;

use super::{check_cs, dual_feasible, CertificateError, DualVector, Regime};
use crate::characterize::{compute_fs_ha, compute_fs_hat};
use crate::instance::{Instance, Vertex};
use crate::matching::{maximum_matching, Matching};
use crate::weights::{require_a_perfect, weight_ha, weight_hat, EdgeWeights};

/// Vertices split by dual value, plus `A_1' = {a ∈ A_1 : f(a) ∩ H_0 ≠ ∅}`
/// (only filled for HAT).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivedPartition {
    pub a0: Vec<Vertex>,
    pub a1: Vec<Vertex>,
    pub h0: Vec<Vertex>,
    pub h1: Vec<Vertex>,
    pub a1_prime: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First offending vertex, when there is one.
    pub culprit: Option<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub partition: DerivedPartition,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, culprit: Option<Option<Vertex>>) {
        // `None` = passed, `Some(c)` = failed with optional culprit.
        self.checks.push(LemmaCheck {
            name,
            passed: culprit.is_none(),
            culprit: culprit.flatten(),
        });
    }
}

fn first_failure(mut it: impl Iterator<Item = Vertex>) -> Option<Option<Vertex>> {
    it.next().map(Some)
}

fn require_optimal(
    inst: &Instance,
    m: &Matching,
    w: &EdgeWeights,
    y: &DualVector,
) -> Result<(), CertificateError> {
    use CertificateError::OptimalityPreconditionViolated as Pre;
    if y.regime != Regime::LeftFree {
        return Err(Pre("dual is not in the left-free regime"));
    }
    if dual_feasible(inst.graph(), w, y).is_err() {
        return Err(Pre("dual is infeasible"));
    }
    if check_cs(inst.graph(), m, w, y).is_err() {
        return Err(Pre("complementary slackness fails"));
    }
    if y.objective() != w.of(inst.graph(), m) {
        return Err(Pre("objectives differ"));
    }
    Ok(())
}

fn split(inst: &Instance, y: &DualVector) -> DerivedPartition {
    let mut p = DerivedPartition::default();
    for &a in inst.left() {
        match y.get(a) {
            0 => p.a0.push(a),
            1 => p.a1.push(a),
            _ => {}
        }
    }
    for &h in inst.right() {
        match y.get(h) {
            0 => p.h0.push(h),
            1 => p.h1.push(h),
            _ => {}
        }
    }
    p
}

fn zero_one_check(report: &mut LemmaReport, inst: &Instance, y: &DualVector) {
    report.push(
        "dual_is_zero_one",
        first_failure(inst.vertices().filter(|&v| !(0..=1).contains(&y.get(v)))),
    );
}

/// Checks that `(m, y)` is an optimal primal-dual pair under `w_M`, then runs
/// [`lemma_checks_ha`].
pub fn derive_structure_ha(
    inst: &Instance,
    m: &Matching,
    y: &DualVector,
) -> Result<LemmaReport, CertificateError> {
    require_a_perfect(inst, m)?;
    let w = weight_ha(inst, m)?;
    require_optimal(inst, m, &w, y)?;
    lemma_checks_ha(inst, m, y)
}

/// The HA lemmas for a dual, without the optimality precondition:
/// `y ∈ {0,1}`, `M(a) = f(a)` on `A_0`, `M(a) ∈ {f(a), s(a)}` on `A_1`,
/// every `H_f` house matched.
pub fn lemma_checks_ha(
    inst: &Instance,
    m: &Matching,
    y: &DualVector,
) -> Result<LemmaReport, CertificateError> {
    let fs = compute_fs_ha(inst)?;
    let mut report = LemmaReport {
        partition: split(inst, y),
        checks: Vec::new(),
    };
    zero_one_check(&mut report, inst, y);
    let p = &report.partition;
    let a0 = first_failure(p.a0.iter().copied().filter(|&a| m.mate(a) != Some(fs.f(a))));
    let a1 = first_failure(p.a1.iter().copied().filter(|&a| {
        let q = m.mate(a);
        q != Some(fs.f(a)) && q != Some(fs.s(a))
    }));
    let hf = first_failure(fs.h_f().filter(|&h| !m.is_matched(h)));
    report.push("a0_partner_is_f", a0);
    report.push("a1_partner_in_f_or_s", a1);
    report.push("h_f_matched", hf);
    Ok(report)
}

/// Checks optimality as in [`derive_structure_ha`], then runs
/// [`lemma_checks_hat`].
pub fn derive_structure_hat(
    inst: &Instance,
    m: &Matching,
    y: &DualVector,
) -> Result<LemmaReport, CertificateError> {
    require_a_perfect(inst, m)?;
    let w = weight_hat(inst, m)?;
    require_optimal(inst, m, &w, y)?;
    lemma_checks_hat(inst, m, y)
}

/// The HAT lemmas: `y ∈ {0,1}`; `A_0` partners lie in `f(a) ∩ H_1` and
/// `|A_0| = |H_1|`; `A_1' ∪ H_1` covers `G_f`; `|M_f| = |A_1'| + |H_1|`,
/// which equals the maximum matching size of `G_f`; `A_1` partners lie in
/// `f(a) ∪ s(a)`.
pub fn lemma_checks_hat(
    inst: &Instance,
    m: &Matching,
    y: &DualVector,
) -> Result<LemmaReport, CertificateError> {
    let fs = compute_fs_hat(inst)?;
    let mut report = LemmaReport {
        partition: split(inst, y),
        checks: Vec::new(),
    };
    zero_one_check(&mut report, inst, y);
    let h0_of = |h: Vertex| y.get(h) == 0;
    report.partition.a1_prime = report
        .partition
        .a1
        .iter()
        .copied()
        .filter(|&a| fs.f(a).iter().any(|&h| h0_of(h)))
        .collect();
    let p = report.partition.clone();
    let in_f = |a: Vertex| m.mate(a).is_some_and(|h| fs.f(a).contains(&h));
    let in_s = |a: Vertex| m.mate(a).is_some_and(|h| fs.s(a).contains(&h));

    report.push(
        "a0_partner_in_f_and_h1",
        first_failure(p.a0.iter().copied().filter(|&a| {
            !in_f(a) || m.mate(a).is_none_or(|h| y.get(h) != 1)
        })),
    );
    report.push(
        "a0_h1_same_size",
        (p.a0.len() != p.h1.len()).then_some(None),
    );
    let cover_gap = fs.g_f.edges().iter().find(|&&(a, h)| {
        !(p.a1_prime.contains(&a) || p.h1.contains(&h))
    });
    report.push("a1_prime_h1_cover_g_f", cover_gap.map(|&(a, _)| Some(a)));
    let m_f = m.restricted_to(&fs.g_f);
    report.push(
        "m_f_size_is_cover_size",
        (m_f.len() != p.a1_prime.len() + p.h1.len()).then_some(None),
    );
    report.push(
        "m_f_maximum",
        (m_f.len() != maximum_matching(&fs.g_f).len()).then_some(None),
    );
    report.push(
        "a1_partner_in_f_or_s",
        first_failure(p.a1.iter().copied().filter(|&a| !in_f(a) && !in_s(a))),
    );
    Ok(report)
}
