//! Cross-validation of the three popularity tests, their certificates, and
//! the matching primitives, on every candidate matching of one instance.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::characterize::{
    compute_fs_hat, find_popular_ha, find_popular_hat, gale_shapley_smi, improve_matching_smi,
    optimization_check, structural_check, validate_witness, Certificate, RivalKind, Verdict,
};
use crate::instance::{Instance, Variant};
use crate::lp::{derive_structure_ha, derive_structure_hat, dual_feasible, DualVector};
use crate::matching::{dm_labels, konig_cover, maximum_matching, DmLabel, Graph, Matching};
use crate::oracle::{delta, Oracle, OracleError};
use crate::weights::{g_m_plus, labels_smi, weight_ha, weight_hat, EdgeWeights};

/// What an audit tally counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Structural, optimization and brute-force verdicts agree and their
    /// certificates re-validate.
    Equivalence,
    /// Constructed duals are feasible with the optimal objective.
    ForwardCertificate,
    /// Constructed duals take values in `{0,1}` (HA/HAT) or `{0,1,2}` (SMI).
    Integrality,
    /// Solver duals of popular HA/HAT matchings pass the structure lemmas.
    ReverseDerivation,
    /// Flipping an SMI witness gains the promised weight.
    Improver,
    /// König equality, label invariance, solver value against enumeration.
    Infrastructure,
    /// Popular-matching finders agree with the oracle on existence.
    Finder,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Equivalence,
        Check::ForwardCertificate,
        Check::Integrality,
        Check::ReverseDerivation,
        Check::Improver,
        Check::Infrastructure,
        Check::Finder,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Equivalence => "equivalence",
            Check::ForwardCertificate => "forward_certificate",
            Check::Integrality => "integrality",
            Check::ReverseDerivation => "reverse_derivation",
            Check::Improver => "improver",
            Check::Infrastructure => "infrastructure",
            Check::Finder => "finder",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
}

/// One failed check, with the matching involved when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: Check,
    pub matching: Option<Matching>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub candidates: u64,
    pub popular: u64,
    tallies: [Tally; 7],
    /// Structural witnesses produced, by kind name.
    pub witness_kinds: BTreeMap<&'static str, u64>,
    pub failures: Vec<Failure>,
}

impl AuditReport {
    pub fn tally(&self, check: Check) -> Tally {
        self.tallies[check.slot()]
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    /// Adds `other`'s counts and failures to this report.
    pub fn merge(&mut self, other: &AuditReport) {
        self.candidates += other.candidates;
        self.popular += other.popular;
        for (a, b) in self.tallies.iter_mut().zip(&other.tallies) {
            a.checked += b.checked;
            a.failed += b.failed;
        }
        for (k, n) in &other.witness_kinds {
            *self.witness_kinds.entry(k).or_default() += n;
        }
        self.failures.extend(other.failures.iter().cloned());
    }

    fn record(&mut self, check: Check, m: Option<&Matching>, outcome: Result<(), String>) {
        let t = &mut self.tallies[check.slot()];
        t.checked += 1;
        if let Err(detail) = outcome {
            t.failed += 1;
            self.failures.push(Failure {
                check,
                matching: m.cloned(),
                detail,
            });
        }
    }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn dual_of(v: &Verdict) -> Option<&DualVector> {
    match &v.certificate {
        Certificate::Dual(c) => Some(&c.dual),
        _ => None,
    }
}

fn w_m(inst: &Instance, m: &Matching) -> Result<EdgeWeights, String> {
    match inst.variant() {
        Variant::Ha => weight_ha(inst, m),
        Variant::Hat => weight_hat(inst, m),
        Variant::Smi => labels_smi(inst, m).map(|l| l.w),
    }
    .map_err(|e| format!("{e}"))
}

/// Audits every candidate matching of `inst` (augmented first for HA/HAT):
/// left-perfect matchings for HA/HAT, all matchings for SMI.
pub fn audit_instance(inst: &Instance, guard: usize) -> Result<AuditReport, OracleError> {
    let inst = inst.normalized();
    let inst = &inst;
    let oracle = Oracle::new(inst, guard)?;
    let mut report = AuditReport::default();
    let mut popular_sizes = Vec::new();

    audit_graph(&mut report, inst.graph(), None);
    if inst.variant().is_house_allocation() {
        if let Ok(fs) = compute_fs_hat(inst) {
            audit_graph(&mut report, &fs.g_f, None);
        }
    }

    for m in oracle.rivals() {
        report.candidates += 1;
        let verdicts = (
            structural_check(inst, m),
            optimization_check(inst, m),
            oracle.verdict(m),
        );
        let (s, o, b) = match verdicts {
            (Ok(s), Ok(o), Ok(b)) => (s, o, b),
            (s, o, b) => {
                let detail = format!(
                    "a test errored: structural {:?}, optimization {:?}, brute force {:?}",
                    s.err(),
                    o.err(),
                    b.err()
                );
                report.record(Check::Equivalence, Some(m), Err(detail));
                continue;
            }
        };
        if let Certificate::Witness(wit) = &s.certificate {
            *report.witness_kinds.entry(wit.kind.as_str()).or_default() += 1;
        }
        if b.popular {
            report.popular += 1;
            popular_sizes.push(m.len());
        }
        let w = match w_m(inst, m) {
            Ok(w) => w,
            Err(e) => {
                report.record(Check::Equivalence, Some(m), Err(e));
                continue;
            }
        };
        let own = w.of(inst.graph(), m);
        let brute_max = oracle
            .rivals()
            .iter()
            .map(|n| w.of(inst.graph(), n))
            .max()
            .unwrap_or(0);

        report.record(
            Check::Equivalence,
            Some(m),
            check_equivalence(inst, m, &s, &o, &b, &w),
        );

        let solver_value = match &o.certificate {
            Certificate::Dual(c) => c.objective,
            Certificate::Rival {
                kind: RivalKind::Heavier { weight, .. },
                ..
            } => *weight,
            _ => i64::MIN,
        };
        report.record(
            Check::Infrastructure,
            Some(m),
            ensure(solver_value == brute_max, || {
                format!("solver optimum {solver_value}, enumeration {brute_max}")
            }),
        );

        if s.popular {
            if let Some(y) = dual_of(&s) {
                report.record(
                    Check::ForwardCertificate,
                    Some(m),
                    ensure(
                        dual_feasible(inst.graph(), &w, y).is_ok()
                            && y.objective() == own
                            && own == brute_max,
                        || {
                            format!(
                                "dual objective {}, w_M(M) {own}, enumeration {brute_max}",
                                y.objective()
                            )
                        },
                    ),
                );
                let hi = if inst.variant() == Variant::Smi { 2 } else { 1 };
                report.record(
                    Check::Integrality,
                    Some(m),
                    ensure(y.within(0, hi), || format!("dual values {:?}", y.values)),
                );
            }
        }

        if o.popular && inst.variant().is_house_allocation() {
            let outcome = match dual_of(&o) {
                None => Err(String::from("popular optimization verdict without dual")),
                Some(y) => {
                    let derived = if inst.variant() == Variant::Ha {
                        derive_structure_ha(inst, m, y)
                    } else {
                        derive_structure_hat(inst, m, y)
                    };
                    match derived {
                        Ok(r) if r.all_passed() => Ok(()),
                        Ok(r) => Err(format!(
                            "failed lemmas {:?} for dual {:?}",
                            r.failed().map(|c| c.name).collect::<Vec<_>>(),
                            y.values
                        )),
                        Err(e) => Err(format!("{e}")),
                    }
                }
            };
            report.record(Check::ReverseDerivation, Some(m), outcome);
        }

        if inst.variant() == Variant::Smi {
            if let Certificate::Witness(wit) = &s.certificate {
                let outcome = improve_matching_smi(inst, m, wit)
                    .map(|_| ())
                    .map_err(|e| format!("{e} for witness {wit:?}"));
                report.record(Check::Improver, Some(m), outcome);
            }
            if let Ok(labels) = labels_smi(inst, m) {
                let gplus = g_m_plus(inst, &labels);
                audit_graph(&mut report, &gplus.graph, Some(m));
            }
        }
    }

    audit_finders(&mut report, inst, &oracle, &popular_sizes);
    Ok(report)
}

fn check_equivalence(
    inst: &Instance,
    m: &Matching,
    s: &Verdict,
    o: &Verdict,
    b: &Verdict,
    w: &EdgeWeights,
) -> Result<(), String> {
    ensure(s.popular == o.popular && o.popular == b.popular, || {
        format!(
            "verdicts disagree: structural {}, optimization {}, brute force {}",
            s.popular, o.popular, b.popular
        )
    })?;
    match &s.certificate {
        Certificate::Witness(wit) => {
            validate_witness(inst, m, wit).map_err(|e| format!("structural witness: {e}"))?
        }
        Certificate::Dual(_) => {}
        other => return Err(format!("unexpected structural certificate {other:?}")),
    }
    match &o.certificate {
        Certificate::Dual(c) => ensure(
            c.cs_ok
                && c.objective == c.primal_value
                && dual_feasible(inst.graph(), w, &c.dual).is_ok(),
            || String::from("optimization dual does not certify"),
        )?,
        Certificate::Rival {
            matching,
            kind: RivalKind::Heavier { weight, current },
        } => ensure(
            matching.check_in(inst.graph()).is_ok()
                && w.of(inst.graph(), matching) == *weight
                && weight > current,
            || String::from("heavier matching does not re-validate"),
        )?,
        other => return Err(format!("unexpected optimization certificate {other:?}")),
    }
    match &b.certificate {
        Certificate::Rival {
            matching,
            kind: RivalKind::Beats { delta: d },
        } => {
            let recomputed = delta(inst, matching, m).value;
            ensure(recomputed > 0 && recomputed == *d, || {
                format!("rival margin {d}, recomputed {recomputed}")
            })
        }
        Certificate::Exhaustive { .. } => Ok(()),
        other => Err(format!("unexpected brute-force certificate {other:?}")),
    }
}

/// König equality and DM-label invariance under a reversed edge order,
/// together with the label lemma properties.
fn audit_graph(report: &mut AuditReport, g: &Graph, m: Option<&Matching>) {
    let outcome = (|| {
        let mm = maximum_matching(g);
        let cover = konig_cover(g, &mm).map_err(|e| format!("{e}"))?;
        ensure(cover.len() == mm.len(), || {
            format!("cover size {} vs matching size {}", cover.len(), mm.len())
        })?;
        ensure(
            g.edges()
                .iter()
                .all(|(a, b)| cover.contains(a) || cover.contains(b)),
            || String::from("König set misses an edge"),
        )?;
        let labels = dm_labels(g, &mm).map_err(|e| format!("{e}"))?;
        let order: Vec<usize> = (0..g.edge_count()).rev().collect();
        let h = g.reordered(&order);
        let other = maximum_matching(&h);
        ensure(other.len() == mm.len(), || String::from("matching sizes differ"))?;
        let relabeled = dm_labels(&h, &other).map_err(|e| format!("{e}"))?;
        ensure(relabeled == labels, || String::from("labels depend on the matching"))?;
        for v in (0..g.vertex_count()).map(crate::instance::Vertex::new) {
            let ok = match labels.get(v) {
                DmLabel::Even => true,
                DmLabel::Odd => mm.mate(v).is_some_and(|p| labels.get(p) == DmLabel::Even),
                DmLabel::Unreachable => {
                    mm.mate(v).is_some_and(|p| labels.get(p) == DmLabel::Unreachable)
                }
            };
            ensure(ok, || format!("label lemma fails at {v:?}"))?;
        }
        Ok(())
    })();
    report.record(Check::Infrastructure, m, outcome);
}

fn audit_finders(report: &mut AuditReport, inst: &Instance, oracle: &Oracle<'_>, popular_sizes: &[usize]) {
    let exists = !popular_sizes.is_empty();
    let outcome = match inst.variant() {
        Variant::Ha | Variant::Hat => {
            let found = if inst.variant() == Variant::Ha {
                find_popular_ha(inst)
            } else {
                find_popular_hat(inst)
            };
            match found {
                Err(e) => Err(format!("{e}")),
                Ok(None) => ensure(!exists, || String::from("finder missed a popular matching")),
                Ok(Some(m)) => match oracle.verdict(&m) {
                    Ok(v) => ensure(v.popular, || format!("finder returned unpopular {m:?}")),
                    Err(e) => Err(format!("{e}")),
                },
            }
        }
        Variant::Smi => match gale_shapley_smi(inst) {
            Err(e) => Err(format!("{e}")),
            Ok(m) => match oracle.verdict(&m) {
                Ok(v) => ensure(
                    v.popular && popular_sizes.iter().all(|&k| k >= m.len()),
                    || format!("stable matching {m:?} is unpopular or not smallest"),
                ),
                Err(e) => Err(format!("{e}")),
            },
        },
    };
    report.record(Check::Finder, None, outcome);
}
