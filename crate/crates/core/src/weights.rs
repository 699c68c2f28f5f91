//! Matching-dependent edge weights `w_M` and the SMI edge labels.

use alloc::vec::Vec;
use core::ops::Index;

use thiserror::Error;

use crate::instance::{Instance, Variant, Vertex};
use crate::matching::{Graph, Matching, MatchingError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("operation needs a {expected} instance")]
    WrongVariant { expected: &'static str },
    #[error("instance has no last resort houses")]
    NotAugmented,
    #[error("applicant {0:?} is unmatched")]
    NotAPerfect(Vertex),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// One integer weight per edge, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeWeights(Vec<i64>);

impl EdgeWeights {
    pub fn new(w: Vec<i64>) -> Self {
        EdgeWeights(w)
    }

    pub fn zeros(edge_count: usize) -> Self {
        EdgeWeights(alloc::vec![0; edge_count])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Total weight of `m`, whose edges must belong to `g`.
    pub fn of(&self, g: &Graph, m: &Matching) -> i64 {
        m.weight(g, &self.0)
    }
}

impl Index<usize> for EdgeWeights {
    type Output = i64;

    fn index(&self, e: usize) -> &i64 {
        &self.0[e]
    }
}

/// Checks that `m` lives in the augmented house-allocation instance and
/// matches every applicant.
pub fn require_a_perfect(inst: &Instance, m: &Matching) -> Result<(), WeightError> {
    if !inst.is_augmented() {
        return Err(WeightError::NotAugmented);
    }
    m.check_in(inst.graph())?;
    match inst.left().iter().find(|&&a| !m.is_matched(a)) {
        Some(&a) => Err(WeightError::NotAPerfect(a)),
        None => Ok(()),
    }
}

/// `w_M` for HA: 2 on edges the applicant prefers to its partner, 1 on the
/// partner's edge, 0 otherwise.
pub fn weight_ha(inst: &Instance, m: &Matching) -> Result<EdgeWeights, WeightError> {
    if inst.variant() != Variant::Ha {
        return Err(WeightError::WrongVariant { expected: "HA" });
    }
    house_weights(inst, m)
}

/// `w_M` for HAT: houses tied with the partner also weigh 1.
pub fn weight_hat(inst: &Instance, m: &Matching) -> Result<EdgeWeights, WeightError> {
    if inst.variant() != Variant::Hat {
        return Err(WeightError::WrongVariant { expected: "HAT" });
    }
    house_weights(inst, m)
}

fn house_weights(inst: &Instance, m: &Matching) -> Result<EdgeWeights, WeightError> {
    require_a_perfect(inst, m)?;
    let w = inst
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, _))| {
            let own = inst.partner_rank(a, m.mate(a));
            match inst.left_rank(e).cmp(&own) {
                core::cmp::Ordering::Less => 2,
                core::cmp::Ordering::Equal => 1,
                core::cmp::Ordering::Greater => 0,
            }
        })
        .collect();
    Ok(EdgeWeights(w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }
}

/// Per-edge SMI labels. The sign labels and the numeric labels disagree on
/// edges at unmatched vertices, so both are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmiEdgeLabels {
    pub alpha: Vec<Sign>,
    pub beta: Vec<Sign>,
    pub phi: Vec<i64>,
    pub psi: Vec<i64>,
    pub w: EdgeWeights,
}

impl SmiEdgeLabels {
    pub fn label(&self, e: usize) -> (Sign, Sign) {
        (self.alpha[e], self.beta[e])
    }

    pub fn is_plus_plus(&self, e: usize) -> bool {
        self.label(e) == (Sign::Plus, Sign::Plus)
    }
}

/// Sign and numeric label of edge `(owner, other)` at endpoint `owner`.
fn endpoint_label(inst: &Instance, m: &Matching, owner: Vertex, other: Vertex) -> (Sign, i64) {
    if m.contains(owner, other) {
        return (Sign::Zero, 1);
    }
    match m.mate(owner) {
        None => (Sign::Plus, 1),
        Some(p) => {
            if inst.partner_rank(owner, Some(other)) < inst.partner_rank(owner, Some(p)) {
                (Sign::Plus, 2)
            } else {
                (Sign::Minus, 0)
            }
        }
    }
}

pub fn labels_smi(inst: &Instance, m: &Matching) -> Result<SmiEdgeLabels, WeightError> {
    if inst.variant() != Variant::Smi {
        return Err(WeightError::WrongVariant { expected: "SMI" });
    }
    m.check_in(inst.graph())?;
    let n = inst.edge_count();
    let mut labels = SmiEdgeLabels {
        alpha: Vec::with_capacity(n),
        beta: Vec::with_capacity(n),
        phi: Vec::with_capacity(n),
        psi: Vec::with_capacity(n),
        w: EdgeWeights::zeros(0),
    };
    let mut w = Vec::with_capacity(n);
    for &(u, v) in inst.edges() {
        let (a, p) = endpoint_label(inst, m, u, v);
        let (b, q) = endpoint_label(inst, m, v, u);
        labels.alpha.push(a);
        labels.beta.push(b);
        labels.phi.push(p);
        labels.psi.push(q);
        w.push(p + q);
    }
    labels.w = EdgeWeights(w);
    Ok(labels)
}

/// `G_M^+`: the instance graph without its `(-,-)` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmPlus {
    pub graph: Graph,
    /// Instance edge id of each edge of `graph`.
    pub original: Vec<usize>,
    /// Edge ids, in `graph`, of the `(+,+)` edges.
    pub plus_plus: Vec<usize>,
}

pub fn g_m_plus(inst: &Instance, labels: &SmiEdgeLabels) -> GmPlus {
    let original: Vec<usize> = (0..inst.edge_count())
        .filter(|&e| labels.label(e) != (Sign::Minus, Sign::Minus))
        .collect();
    let graph = Graph::new(
        inst.graph().sides().to_vec(),
        original.iter().map(|&e| inst.edges()[e]).collect(),
    );
    let plus_plus = original
        .iter()
        .enumerate()
        .filter(|&(_, &e)| labels.is_plus_plus(e))
        .map(|(i, _)| i)
        .collect();
    GmPlus {
        graph,
        original,
        plus_plus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::{i1, i3, i4};

    fn by_name(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
        Matching::from_pairs(
            inst.vertex_count(),
            pairs.iter().map(|&(a, b)| {
                (
                    inst.vertex_by_name(a).unwrap(),
                    inst.vertex_by_name(b).unwrap(),
                )
            }),
        )
        .unwrap()
    }

    fn w_of(inst: &Instance, w: &EdgeWeights, a: &str, b: &str) -> i64 {
        let e = inst
            .edge_id(inst.vertex_by_name(a).unwrap(), inst.vertex_by_name(b).unwrap())
            .unwrap();
        w[e]
    }

    #[test]
    fn ha_weights_on_i1() {
        let inst = i1().normalized();
        let m = by_name(&inst, &[("a1", "h1"), ("a2", "h2")]);
        let w = weight_ha(&inst, &m).unwrap();
        assert_eq!(w_of(&inst, &w, "a1", "h1"), 1);
        assert_eq!(w_of(&inst, &w, "a1", "h2"), 0);
        assert_eq!(w_of(&inst, &w, "a2", "h1"), 2);
        assert_eq!(w_of(&inst, &w, "a2", "h2"), 1);
        assert_eq!(w_of(&inst, &w, "a1", "l(a1)"), 0);
        assert_eq!(w_of(&inst, &w, "a2", "l(a2)"), 0);
        assert_eq!(w.of(inst.graph(), &m), 2);

        let swapped = by_name(&inst, &[("a1", "h2"), ("a2", "h1")]);
        let w = weight_ha(&inst, &swapped).unwrap();
        assert_eq!(w_of(&inst, &w, "a1", "h1"), 2);
    }

    #[test]
    fn ha_weights_need_a_perfect() {
        let inst = i1().normalized();
        let m = by_name(&inst, &[("a1", "h1")]);
        let a2 = inst.vertex_by_name("a2").unwrap();
        assert_eq!(weight_ha(&inst, &m), Err(WeightError::NotAPerfect(a2)));
        assert_eq!(
            weight_ha(&i1(), &Matching::empty(4)),
            Err(WeightError::NotAugmented)
        );
    }

    #[test]
    fn hat_weights_on_i3() {
        let inst = i3().normalized();
        let m = by_name(&inst, &[("a1", "h2"), ("a2", "h1")]);
        let w = weight_hat(&inst, &m).unwrap();
        assert_eq!(w_of(&inst, &w, "a1", "h1"), 1);
        assert_eq!(w_of(&inst, &w, "a2", "h2"), 0);
    }

    #[test]
    fn smi_labels_on_stable_matching() {
        let inst = i4();
        let m = by_name(&inst, &[("u1", "v1"), ("u2", "v2")]);
        let labels = labels_smi(&inst, &m).unwrap();
        let e = |a, b| {
            inst.edge_id(inst.vertex_by_name(a).unwrap(), inst.vertex_by_name(b).unwrap())
                .unwrap()
        };
        let e21 = e("u2", "v1");
        assert_eq!(labels.label(e21), (Sign::Plus, Sign::Minus));
        assert_eq!((labels.phi[e21], labels.psi[e21]), (2, 0));
        assert_eq!(labels.w[e21], 2);
        let e11 = e("u1", "v1");
        assert_eq!(labels.label(e11), (Sign::Zero, Sign::Zero));
        assert_eq!(labels.w[e11], 2);
        let g = g_m_plus(&inst, &labels);
        assert!(g.graph.has_edge(inst.vertex_by_name("u2").unwrap(), inst.vertex_by_name("v2").unwrap()));
        // (u1,v2): u1 prefers v1, v2 prefers u1 -> (-,+), kept.
        assert_eq!(g.graph.edge_count(), 4);
        assert!(g.plus_plus.is_empty());
    }

    #[test]
    fn smi_labels_on_empty_matching() {
        let inst = i4();
        let labels = labels_smi(&inst, &Matching::empty(4)).unwrap();
        for e in 0..inst.edge_count() {
            assert!(labels.is_plus_plus(e));
            assert_eq!((labels.phi[e], labels.psi[e], labels.w[e]), (1, 1, 2));
        }
        let g = g_m_plus(&inst, &labels);
        assert_eq!(g.graph, *inst.graph());
        assert_eq!(g.plus_plus.len(), 4);
    }

    #[test]
    fn minus_minus_edge_dropped() {
        // u1-v2 and u2-v1 matched; u1 prefers v2 and v1 prefers u2,
        // so (u1,v1) is (-,-).
        let mut b = crate::instance::InstanceBuilder::new(Variant::Smi);
        b.left("u1").left("u2").right("v1").right("v2");
        b.pref("u1", alloc::vec![alloc::vec!["v2"], alloc::vec!["v1"]]);
        b.pref("u2", alloc::vec![alloc::vec!["v1"]]);
        b.pref("v1", alloc::vec![alloc::vec!["u2"], alloc::vec!["u1"]]);
        b.pref("v2", alloc::vec![alloc::vec!["u1"]]);
        let inst = b.build().unwrap();
        let m = by_name(&inst, &[("u1", "v2"), ("u2", "v1")]);
        let labels = labels_smi(&inst, &m).unwrap();
        let g = g_m_plus(&inst, &labels);
        assert_eq!(g.graph.edge_count(), 2);
        assert!(!g.graph.has_edge(inst.vertex_by_name("u1").unwrap(), inst.vertex_by_name("v1").unwrap()));
    }
}
