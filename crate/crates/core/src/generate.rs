//! Seeded random instances for fuzzing.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{Instance, InstanceBuilder, Variant};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("bad generator parameters: {0}")]
pub struct BadParameters(pub &'static str);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub variant: Variant,
    pub n_left: usize,
    pub n_right: usize,
    pub edge_density: f64,
    pub tie_prob: f64,
}

impl GenParams {
    pub fn validate(&self) -> Result<(), BadParameters> {
        if self.n_left == 0 || self.n_right == 0 {
            return Err(BadParameters("both sides need at least one vertex"));
        }
        if !(self.edge_density > 0.0 && self.edge_density <= 1.0) {
            return Err(BadParameters("edge density must lie in (0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.tie_prob) {
            return Err(BadParameters("tie probability must lie in [0, 1]"));
        }
        if self.tie_prob > 0.0 && self.variant != Variant::Hat {
            return Err(BadParameters("ties are only allowed in HAT instances"));
        }
        Ok(())
    }
}

/// A random instance, identical for identical `(seed, params)`.
///
/// Each left-right pair becomes an edge with probability `edge_density`;
/// every vertex left isolated then gets one edge to a random partner.
/// Preference lists are uniform permutations of the neighborhoods, and in
/// HAT adjacent entries are merged into a tie with probability `tie_prob`.
pub fn random_instance(seed: u64, params: &GenParams) -> Result<Instance, BadParameters> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (nl, nr) = (params.n_left, params.n_right);
    let mut adj = vec![vec![false; nr]; nl];
    for row in adj.iter_mut() {
        for cell in row.iter_mut() {
            *cell = rng.random_bool(params.edge_density);
        }
    }
    for row in adj.iter_mut() {
        if !row.contains(&true) {
            row[rng.random_range(0..nr)] = true;
        }
    }
    for r in 0..nr {
        if !adj.iter().any(|row| row[r]) {
            adj[rng.random_range(0..nl)][r] = true;
        }
    }

    let (lp, rp) = if params.variant == Variant::Smi {
        ("u", "v")
    } else {
        ("a", "h")
    };
    let left: Vec<String> = (1..=nl).map(|i| format!("{lp}{i}")).collect();
    let right: Vec<String> = (1..=nr).map(|i| format!("{rp}{i}")).collect();
    let mut b = InstanceBuilder::new(params.variant);
    for name in &left {
        b.left(name.clone());
    }
    for name in &right {
        b.right(name.clone());
    }
    for (l, row) in adj.iter().enumerate() {
        let mut list: Vec<&String> = (0..nr).filter(|&r| row[r]).map(|r| &right[r]).collect();
        list.shuffle(&mut rng);
        b.pref(left[l].clone(), group(&mut rng, list, params.tie_prob));
    }
    if params.variant == Variant::Smi {
        for (r, name) in right.iter().enumerate() {
            let mut list: Vec<&String> = (0..nl).filter(|&l| adj[l][r]).map(|l| &left[l]).collect();
            list.shuffle(&mut rng);
            b.pref(name.clone(), group(&mut rng, list, 0.0));
        }
    }
    Ok(b.build().expect("generated instances are valid"))
}

/// Instance number `index` of a fuzzing campaign: sizes drawn uniformly
/// from `1..=max_left` and `1..=max_right`, density from `[0.25, 1]`, all
/// from a stream of `seed` selected by `index`.
pub fn campaign_instance(
    seed: u64,
    index: u64,
    variant: Variant,
    max_left: usize,
    max_right: usize,
    tie_prob: f64,
) -> Result<Instance, BadParameters> {
    if max_left == 0 || max_right == 0 {
        return Err(BadParameters("both sides need at least one vertex"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let params = GenParams {
        variant,
        n_left: rng.random_range(1..=max_left),
        n_right: rng.random_range(1..=max_right),
        edge_density: f64::from(rng.random_range(25u32..=100)) / 100.0,
        tie_prob,
    };
    random_instance(rng.random(), &params)
}

fn group(rng: &mut ChaCha8Rng, list: Vec<&String>, tie_prob: f64) -> Vec<Vec<String>> {
    let mut groups: Vec<Vec<String>> = Vec::new();
    for (i, item) in list.into_iter().enumerate() {
        if i > 0 && tie_prob > 0.0 && rng.random_bool(tie_prob) {
            groups.last_mut().expect("nonempty").push(item.clone());
        } else {
            groups.push(vec![item.clone()]);
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(variant: Variant, n: usize, density: f64, tie_prob: f64) -> GenParams {
        GenParams {
            variant,
            n_left: n,
            n_right: n,
            edge_density: density,
            tie_prob,
        }
    }

    #[test]
    fn complete_when_density_is_one() {
        let inst = random_instance(7, &params(Variant::Ha, 3, 1.0, 0.0)).unwrap();
        assert_eq!(inst.edge_count(), 9);
        assert_eq!(inst, random_instance(7, &params(Variant::Ha, 3, 1.0, 0.0)).unwrap());
    }

    #[test]
    fn deterministic_smi() {
        let p = params(Variant::Smi, 2, 1.0, 0.0);
        assert_eq!(random_instance(7, &p).unwrap(), random_instance(7, &p).unwrap());
    }

    #[test]
    fn ties_rejected_outside_hat() {
        assert!(random_instance(1, &params(Variant::Ha, 3, 1.0, 0.5)).is_err());
        assert!(random_instance(1, &params(Variant::Hat, 3, 1.0, 0.5)).is_ok());
        assert!(random_instance(1, &params(Variant::Ha, 0, 1.0, 0.0)).is_err());
        assert!(random_instance(1, &params(Variant::Ha, 2, 0.0, 0.0)).is_err());
    }

    #[test]
    fn campaign_is_reproducible() {
        for i in 0..20 {
            let a = campaign_instance(3, i, Variant::Hat, 4, 4, 0.3).unwrap();
            let b = campaign_instance(3, i, Variant::Hat, 4, 4, 0.3).unwrap();
            assert_eq!(a, b);
            assert!(a.left().len() <= 4 && a.right().len() <= 4);
        }
    }

    #[test]
    fn sparse_instances_have_no_isolated_vertices() {
        for seed in 0..50 {
            let inst = random_instance(seed, &params(Variant::Smi, 4, 0.1, 0.0)).unwrap();
            for v in inst.vertices() {
                assert!(inst.graph().degree(v) > 0);
            }
        }
    }
}
