//! Weighted matching LP: solver with integral duals, feasibility and
//! complementary-slackness checks, and the combinatorial dual certificates.

mod forward;
mod hungarian;
mod reverse;

use alloc::vec::Vec;

use thiserror::Error;

use crate::instance::{Side, Vertex};
use crate::matching::{Graph, Matching};
use crate::weights::EdgeWeights;

pub use forward::{
    build_dual_ha, build_dual_hat, build_dual_smi, ha_partition, hat_partition, HaPartition,
    HatPartition, SmiPathPartition,
};
pub use hungarian::{max_weight_matching, Optimum, SolveMode};
pub use reverse::{
    derive_structure_ha, derive_structure_hat, lemma_checks_ha, lemma_checks_hat, DerivedPartition,
    LemmaCheck, LemmaReport,
};

/// Which dual LP a vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Every value nonnegative; dual of the plain max-weight matching LP.
    Symmetric,
    /// Left values free, right values nonnegative; dual of the LP with
    /// equality constraints on left vertices (left-perfect matchings).
    LeftFree,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Symmetric => "symmetric",
            Regime::LeftFree => "left_free",
        }
    }
}

/// An integer value per vertex, tagged with its regime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualVector {
    pub regime: Regime,
    pub values: Vec<i64>,
}

impl DualVector {
    pub fn new(regime: Regime, values: Vec<i64>) -> Self {
        DualVector { regime, values }
    }

    pub fn zeros(regime: Regime, vertex_count: usize) -> Self {
        DualVector::new(regime, alloc::vec![0; vertex_count])
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.values[v.index()]
    }

    pub fn set(&mut self, v: Vertex, value: i64) {
        self.values[v.index()] = value;
    }

    pub fn objective(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Every value lies in `lo..=hi`.
    pub fn within(&self, lo: i64, hi: i64) -> bool {
        self.values.iter().all(|&y| (lo..=hi).contains(&y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `y(u) + y(v) < w(u, v)`.
    Uncovered {
        edge: (Vertex, Vertex),
        sum: i64,
        weight: i64,
    },
    /// Negative value where the regime forbids it.
    Negative(Vertex),
    /// A matched edge with `y(u) + y(v) != w(u, v)`.
    NotTight {
        edge: (Vertex, Vertex),
        sum: i64,
        weight: i64,
    },
    /// Positive value on a vertex the matching leaves free.
    Unsaturated(Vertex),
    /// Left vertex not covered although the regime needs a left-perfect matching.
    LeftUncovered(Vertex),
}

fn sign_ok(g: &Graph, y: &DualVector, v: Vertex) -> bool {
    y.get(v) >= 0 || (y.regime == Regime::LeftFree && g.side(v) == Side::Left)
}

/// `y` is a `w`-vertex cover satisfying its regime's sign constraints.
pub fn dual_feasible(g: &Graph, w: &EdgeWeights, y: &DualVector) -> Result<(), Violation> {
    assert_eq!(y.values.len(), g.vertex_count());
    if let Some(v) = (0..g.vertex_count())
        .map(Vertex::new)
        .find(|&v| !sign_ok(g, y, v))
    {
        return Err(Violation::Negative(v));
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let sum = y.get(a) + y.get(b);
        if sum < w[e] {
            return Err(Violation::Uncovered {
                edge: (a, b),
                sum,
                weight: w[e],
            });
        }
    }
    Ok(())
}

/// Complementary slackness between `m` and `y`.
pub fn check_cs(g: &Graph, m: &Matching, w: &EdgeWeights, y: &DualVector) -> Result<(), Violation> {
    for (a, b) in m.pairs() {
        let e = g.edge_id(a, b).expect("matching lies in the graph");
        let sum = y.get(a) + y.get(b);
        if sum != w[e] {
            return Err(Violation::NotTight {
                edge: (a, b),
                sum,
                weight: w[e],
            });
        }
    }
    for v in (0..g.vertex_count()).map(Vertex::new) {
        if m.is_matched(v) {
            continue;
        }
        match (y.regime, g.side(v)) {
            (Regime::LeftFree, Side::Left) => return Err(Violation::LeftUncovered(v)),
            _ if y.get(v) > 0 => return Err(Violation::Unsaturated(v)),
            _ => {}
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("structural precondition violated: {0}")]
    StructuralPreconditionViolated(&'static str),
    #[error("optimality precondition violated: {0}")]
    OptimalityPreconditionViolated(&'static str),
    #[error(transparent)]
    Weight(#[from] crate::weights::WeightError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("no left-perfect matching exists")]
    Infeasible,
    #[error("negative edge weight")]
    NegativeWeight,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Side;

    fn v(i: usize) -> Vertex {
        Vertex::new(i)
    }

    fn path3() -> Graph {
        Graph::new(
            alloc::vec![Side::Left, Side::Right, Side::Right],
            alloc::vec![(v(0), v(1)), (v(0), v(2))],
        )
    }

    #[test]
    fn zero_dual_leaves_positive_edge_uncovered() {
        let g = path3();
        let w = EdgeWeights::new(alloc::vec![0, 3]);
        let y = DualVector::zeros(Regime::Symmetric, 3);
        assert_eq!(
            dual_feasible(&g, &w, &y),
            Err(Violation::Uncovered {
                edge: (v(0), v(2)),
                sum: 0,
                weight: 3
            })
        );
    }

    #[test]
    fn negative_house_value_rejected_in_both_regimes() {
        let g = path3();
        let w = EdgeWeights::zeros(2);
        for regime in [Regime::Symmetric, Regime::LeftFree] {
            let y = DualVector::new(regime, alloc::vec![5, -1, 0]);
            assert_eq!(dual_feasible(&g, &w, &y), Err(Violation::Negative(v(1))));
        }
        let y = DualVector::new(Regime::LeftFree, alloc::vec![-1, 1, 1]);
        assert_eq!(dual_feasible(&g, &w, &y), Ok(()));
        let y = DualVector::new(Regime::Symmetric, alloc::vec![-1, 1, 1]);
        assert_eq!(dual_feasible(&g, &w, &y), Err(Violation::Negative(v(0))));
    }

    #[test]
    fn cs_flags_loose_edge_and_unsaturated_vertex() {
        let g = path3();
        let w = EdgeWeights::new(alloc::vec![1, 0]);
        let m = Matching::from_pairs(3, [(v(0), v(1))]).unwrap();
        let y = DualVector::new(Regime::Symmetric, alloc::vec![1, 0, 0]);
        assert_eq!(check_cs(&g, &m, &w, &y), Ok(()));
        let y = DualVector::new(Regime::Symmetric, alloc::vec![1, 1, 0]);
        assert!(matches!(check_cs(&g, &m, &w, &y), Err(Violation::NotTight { .. })));
        let y = DualVector::new(Regime::Symmetric, alloc::vec![1, 0, 1]);
        assert_eq!(check_cs(&g, &m, &w, &y), Err(Violation::Unsaturated(v(2))));
        let y = DualVector::new(Regime::LeftFree, alloc::vec![1, 0, 0]);
        assert_eq!(
            check_cs(&g, &Matching::empty(3), &w, &y),
            Err(Violation::LeftUncovered(v(0)))
        );
    }
}
