use popmatch_core::characterize::{gale_shapley_smi, is_stable, structural_check};
use popmatch_core::generate::{random_instance, GenParams};
use popmatch_core::matching::{
    augmenting_path, dm_labels, konig_cover, maximum_matching, symmetric_difference, AltPath,
};
use popmatch_core::oracle::{delta, Oracle, DEFAULT_GUARD_EDGES};
use popmatch_core::{Instance, InstanceBuilder, Variant};
use proptest::prelude::*;

fn instance(variant: Variant) -> impl Strategy<Value = Instance> {
    (any::<u64>(), 1usize..=4, 1usize..=4, 25u32..=100).prop_map(move |(seed, l, r, d)| {
        let params = GenParams {
            variant,
            n_left: l,
            n_right: r,
            edge_density: f64::from(d) / 100.0,
            tie_prob: if variant == Variant::Hat { 0.3 } else { 0.0 },
        };
        random_instance(seed, &params).unwrap().normalized()
    })
}

fn any_instance() -> impl Strategy<Value = Instance> {
    prop_oneof![instance(Variant::Ha), instance(Variant::Hat), instance(Variant::Smi)]
}

/// The same preferences under another variant tag.
fn retag(inst: &Instance, variant: Variant) -> Instance {
    let inst = inst.without_last_resorts();
    let mut b = InstanceBuilder::new(variant);
    for &a in inst.left() {
        b.left(inst.name(a));
    }
    for &h in inst.right() {
        b.right(inst.name(h));
    }
    for x in inst.vertices() {
        if let Some(p) = inst.prefs(x) {
            let groups: Vec<Vec<&str>> = p
                .groups()
                .iter()
                .map(|g| g.iter().map(|&y| inst.name(y)).collect())
                .collect();
            b.pref(inst.name(x), groups);
        }
    }
    b.build().unwrap().normalized()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn konig_cover_matches_maximum_matching(inst in any_instance()) {
        let g = inst.graph();
        let m = maximum_matching(g);
        let cover = konig_cover(g, &m).unwrap();
        prop_assert_eq!(cover.len(), m.len());
        for &(a, b) in g.edges() {
            prop_assert!(cover.contains(&a) || cover.contains(&b));
        }
    }

    #[test]
    fn dm_labels_do_not_depend_on_the_maximum_matching(inst in any_instance(), rot in 0usize..16) {
        let g = inst.graph();
        let n = g.edge_count();
        let order: Vec<usize> = (0..n).rev().cycle().skip(rot % n.max(1)).take(n).collect();
        let m1 = maximum_matching(g);
        let m2 = maximum_matching(&g.reordered(&order));
        prop_assert_eq!(m1.len(), m2.len());
        let l1 = dm_labels(g, &m1).unwrap();
        let l2 = dm_labels(g, &m2).unwrap();
        prop_assert_eq!(l1.as_slice(), l2.as_slice());
    }

    #[test]
    fn delta_is_antisymmetric(inst in any_instance(), i in any::<usize>(), j in any::<usize>()) {
        let oracle = Oracle::new(&inst, DEFAULT_GUARD_EDGES).unwrap();
        let rivals = oracle.rivals();
        let (m, n) = (&rivals[i % rivals.len()], &rivals[j % rivals.len()]);
        let (mn, nm) = (delta(&inst, m, n), delta(&inst, n, m));
        prop_assert_eq!(mn.value, -nm.value);
        prop_assert_eq!(mn.prefers_m, nm.prefers_n);
        prop_assert_eq!(delta(&inst, m, m).value, 0);
    }

    #[test]
    fn flipping_an_augmenting_path_grows_the_matching(inst in instance(Variant::Smi), pick in any::<usize>()) {
        let g = inst.graph();
        let oracle = Oracle::new(&inst, DEFAULT_GUARD_EDGES).unwrap();
        let m = &oracle.rivals()[pick % oracle.rivals().len()];
        match augmenting_path(g, m) {
            None => prop_assert_eq!(m.len(), maximum_matching(g).len()),
            Some(path) => {
                let alt = AltPath { vertices: path, closed: false };
                let bigger = symmetric_difference(g, m, &alt).unwrap();
                prop_assert_eq!(bigger.len(), m.len() + 1);
                bigger.check_in(g).unwrap();
            }
        }
    }

    #[test]
    fn stable_matchings_are_popular(inst in instance(Variant::Smi)) {
        let m = gale_shapley_smi(&inst).unwrap();
        prop_assert!(is_stable(&inst, &m));
        prop_assert!(structural_check(&inst, &m).unwrap().popular);
        let oracle = Oracle::new(&inst, DEFAULT_GUARD_EDGES).unwrap();
        prop_assert!(oracle.verdict(&m).unwrap().popular);
    }

    #[test]
    fn tie_free_hat_agrees_with_ha(inst in instance(Variant::Ha)) {
        let hat = retag(&inst, Variant::Hat);
        let oracle = Oracle::new(&inst, DEFAULT_GUARD_EDGES).unwrap();
        for m in oracle.rivals() {
            let a = structural_check(&inst, m).unwrap();
            let b = structural_check(&hat, m).unwrap();
            prop_assert_eq!(a.popular, b.popular, "matching {:?}", m);
            if a.popular {
                // Popular verdicts carry the constructed dual, which must coincide.
                prop_assert_eq!(a.certificate, b.certificate);
            }
        }
    }
}
