use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{Instance, Variant, Vertex};
use crate::matching::{dm_labels, maximum_matching, DmLabels, Graph, Matching};
use crate::weights::WeightError;

/// First choices `f(a)`, the set `H_f` of first-choice houses, and second
/// choices `s(a)` (best house outside `H_f`) of a strict HA instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsHa {
    f: Vec<Option<Vertex>>,
    s: Vec<Option<Vertex>>,
    in_h_f: Vec<bool>,
}

impl FsHa {
    pub fn f(&self, a: Vertex) -> Vertex {
        self.f[a.index()].expect("f is defined on applicants")
    }

    pub fn s(&self, a: Vertex) -> Vertex {
        self.s[a.index()].expect("s is defined on applicants")
    }

    pub fn in_h_f(&self, h: Vertex) -> bool {
        self.in_h_f[h.index()]
    }

    pub fn h_f(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.in_h_f.len())
            .map(Vertex::new)
            .filter(|&h| self.in_h_f(h))
    }
}

fn require_house_instance(inst: &Instance, variant: Variant) -> Result<(), WeightError> {
    if inst.variant() != variant {
        return Err(WeightError::WrongVariant {
            expected: variant.as_str(),
        });
    }
    if !inst.is_augmented() {
        return Err(WeightError::NotAugmented);
    }
    Ok(())
}

pub fn compute_fs_ha(inst: &Instance) -> Result<FsHa, WeightError> {
    require_house_instance(inst, Variant::Ha)?;
    let n = inst.vertex_count();
    let mut fs = FsHa {
        f: vec![None; n],
        s: vec![None; n],
        in_h_f: vec![false; n],
    };
    for &a in inst.left() {
        let top = inst.prefs(a).expect("applicants have preferences").top()[0];
        fs.f[a.index()] = Some(top);
        fs.in_h_f[top.index()] = true;
    }
    for &a in inst.left() {
        // The last resort is never a first choice, so this always succeeds.
        let s = inst
            .prefs(a)
            .expect("applicants have preferences")
            .iter()
            .find(|&h| !fs.in_h_f[h.index()])
            .expect("last resort lies outside H_f");
        fs.s[a.index()] = Some(s);
    }
    Ok(fs)
}

/// First-choice tie groups `f(a)`, the first-choice graph `G_f` with its
/// even/odd/unreachable labels, and `s(a)`: the even houses in the best tie
/// group of `a` that contains an even house.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsHat {
    f: Vec<Vec<Vertex>>,
    s: Vec<Vec<Vertex>>,
    pub g_f: Graph,
    /// Maximum matching of `G_f` the labels were computed from.
    pub m_f: Matching,
    pub labels: DmLabels,
}

impl FsHat {
    pub fn f(&self, a: Vertex) -> &[Vertex] {
        &self.f[a.index()]
    }

    pub fn s(&self, a: Vertex) -> &[Vertex] {
        &self.s[a.index()]
    }
}

/// Accepts HAT instances and, since ties are optional, HA instances too.
pub fn compute_fs_hat(inst: &Instance) -> Result<FsHat, WeightError> {
    if inst.variant() == Variant::Ha {
        require_house_instance(inst, Variant::Ha)?;
    } else {
        require_house_instance(inst, Variant::Hat)?;
    }
    let n = inst.vertex_count();
    let mut f = vec![Vec::new(); n];
    for &a in inst.left() {
        f[a.index()] = inst.prefs(a).expect("applicants have preferences").top().to_vec();
    }
    let g_f = inst
        .graph()
        .subgraph(|_, (a, h)| f[a.index()].contains(&h));
    let m_f = maximum_matching(&g_f);
    let labels = dm_labels(&g_f, &m_f).expect("maximum matching");
    let mut s = vec![Vec::new(); n];
    for &a in inst.left() {
        s[a.index()] = inst
            .prefs(a)
            .expect("applicants have preferences")
            .groups()
            .iter()
            .map(|group| {
                group
                    .iter()
                    .copied()
                    .filter(|&h| labels.is_even(h))
                    .collect::<Vec<_>>()
            })
            .find(|evens| !evens.is_empty())
            .expect("the last resort is even");
    }
    Ok(FsHat {
        f,
        s,
        g_f,
        m_f,
        labels,
    })
}
