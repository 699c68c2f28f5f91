//! Seeded fuzzing campaigns: generate instances, audit each one, and shrink
//! the first failing instance to a small repro.

use std::fmt::Write as _;

use popmatch_core::audit::{audit_instance, AuditReport, Check};
use popmatch_core::generate::{campaign_instance, GenParams};
use popmatch_core::{Instance, Variant};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::format::serialize_instance;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: u64,
    pub variant: Variant,
    pub max_left: usize,
    pub max_right: usize,
    pub tie_prob: f64,
    pub guard: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FuzzError {
    #[error("{0}")]
    BadParameters(String),
    #[error("instances up to {left}x{right} can have {edges} edges, above the limit of {guard}")]
    TooLarge {
        left: usize,
        right: usize,
        edges: usize,
        guard: usize,
    },
}

impl FuzzConfig {
    /// Largest edge count of a generated instance, last resorts included.
    pub fn max_edges(&self) -> usize {
        let lr = if self.variant.is_house_allocation() {
            self.max_left
        } else {
            0
        };
        self.max_left * self.max_right + lr
    }

    pub fn validate(&self) -> Result<(), FuzzError> {
        GenParams {
            variant: self.variant,
            n_left: self.max_left,
            n_right: self.max_right,
            edge_density: 1.0,
            tie_prob: self.tie_prob,
        }
        .validate()
        .map_err(|e| FuzzError::BadParameters(e.to_string()))?;
        if self.max_edges() > self.guard {
            return Err(FuzzError::TooLarge {
                left: self.max_left,
                right: self.max_right,
                edges: self.max_edges(),
                guard: self.guard,
            });
        }
        Ok(())
    }

    pub fn instance(&self, index: u64) -> Instance {
        campaign_instance(
            self.seed,
            index,
            self.variant,
            self.max_left,
            self.max_right,
            self.tie_prob,
        )
        .expect("parameters were validated")
    }
}

/// The first failing instance of a campaign, after shrinking.
#[derive(Clone, Debug)]
pub struct Repro {
    pub index: u64,
    pub check: String,
    pub detail: String,
    pub instance: Instance,
}

impl Repro {
    /// Instance text preceded by comment lines describing the failure.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# instance index {}", self.index);
        let _ = writeln!(out, "# failed check: {}", self.check);
        for line in self.detail.lines() {
            let _ = writeln!(out, "# {line}");
        }
        out.push_str(&serialize_instance(&self.instance));
        out
    }
}

#[derive(Clone, Debug)]
pub struct FuzzOutcome {
    pub config: FuzzConfig,
    pub report: AuditReport,
    /// Indices of instances whose audit failed, ascending.
    pub failing: Vec<u64>,
    pub repro: Option<Repro>,
}

#[derive(Serialize)]
struct Summary<'a> {
    variant: &'a str,
    seed: u64,
    count: u64,
    max_left: usize,
    max_right: usize,
    tie_prob: f64,
    candidates: u64,
    popular: u64,
    checks: Map<String, Value>,
    witness_kinds: Map<String, Value>,
    failing_instances: &'a [u64],
}

impl FuzzOutcome {
    pub fn is_clean(&self) -> bool {
        self.failing.is_empty()
    }

    fn summary(&self) -> Summary<'_> {
        let c = &self.config;
        Summary {
            variant: c.variant.as_str(),
            seed: c.seed,
            count: c.count,
            max_left: c.max_left,
            max_right: c.max_right,
            tie_prob: c.tie_prob,
            candidates: self.report.candidates,
            popular: self.report.popular,
            checks: Check::ALL
                .iter()
                .map(|&k| {
                    let t = self.report.tally(k);
                    (
                        k.as_str().to_string(),
                        json!({ "checked": t.checked, "failed": t.failed }),
                    )
                })
                .collect(),
            witness_kinds: self
                .report
                .witness_kinds
                .iter()
                .map(|(k, n)| (k.to_string(), json!(n)))
                .collect(),
            failing_instances: &self.failing,
        }
    }

    /// Deterministic for a given configuration: no timing, fixed order.
    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary()).expect("summary serializes")
    }

    pub fn summary_text(&self) -> String {
        let s = self.summary();
        let mut out = format!(
            "fuzz {} seed={} count={} sizes<={}x{} tie_prob={}\n",
            s.variant, s.seed, s.count, s.max_left, s.max_right, s.tie_prob
        );
        let _ = writeln!(out, "candidates {}  popular {}", s.candidates, s.popular);
        for k in Check::ALL {
            let t = self.report.tally(k);
            let _ = writeln!(out, "  {:<20} checked {:>7}  failed {}", k.as_str(), t.checked, t.failed);
        }
        for (k, n) in &self.report.witness_kinds {
            let _ = writeln!(out, "  witness {k:<30} {n}");
        }
        match self.failing.first() {
            None => out.push_str("no failures\n"),
            Some(i) => {
                let _ = writeln!(out, "{} failing instances, first at index {i}", self.failing.len());
            }
        }
        out
    }
}

fn audit_or_failure(inst: &Instance, guard: usize) -> AuditReport {
    audit_instance(inst, guard).unwrap_or_else(|e| {
        let mut r = AuditReport::default();
        r.failures.push(popmatch_core::audit::Failure {
            check: Check::Infrastructure,
            matching: None,
            detail: format!("audit could not run: {e}"),
        });
        r
    })
}

/// Runs the campaign on all cores. Results are merged in index order.
pub fn run_fuzz(config: &FuzzConfig) -> Result<FuzzOutcome, FuzzError> {
    config.validate()?;
    let reports: Vec<AuditReport> = (0..config.count)
        .into_par_iter()
        .map(|i| audit_or_failure(&config.instance(i), config.guard))
        .collect();
    let mut report = AuditReport::default();
    let mut failing = Vec::new();
    for (i, r) in (0..config.count).zip(&reports) {
        if !r.is_clean() {
            failing.push(i);
        }
        report.merge(r);
    }
    let repro = failing.first().map(|&i| {
        let first = &reports[i as usize].failures[0];
        let instance = shrink(&config.instance(i), first.check, config.guard);
        let failure = audit_or_failure(&instance, config.guard)
            .failures
            .into_iter()
            .find(|f| f.check == first.check)
            .unwrap_or_else(|| first.clone());
        Repro {
            index: i,
            check: failure.check.as_str().to_string(),
            detail: failure.detail,
            instance,
        }
    });
    Ok(FuzzOutcome {
        config: *config,
        report,
        failing,
        repro,
    })
}

/// Greedily deletes preference entries while the audit still fails `check`.
pub fn shrink(inst: &Instance, check: Check, guard: usize) -> Instance {
    let fails = |i: &Instance| audit_or_failure(i, guard).failures.iter().any(|f| f.check == check);
    let mut current = inst.without_last_resorts();
    let mut e = 0;
    while e < current.edge_count() {
        let (l, r) = current.edges()[e];
        match current.without_edge(l, r) {
            Ok(smaller) if fails(&smaller) => current = smaller,
            _ => e += 1,
        }
    }
    current
}
