use popmatch::format::{format_matching, parse_instance, parse_matching, serialize_instance};
use popmatch::report::instance_digest;
use popmatch_core::generate::{random_instance, GenParams};
use popmatch_core::oracle::{Oracle, DEFAULT_GUARD_EDGES};
use popmatch_core::{Instance, Variant};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = Instance> {
    (
        prop_oneof![Just(Variant::Ha), Just(Variant::Hat), Just(Variant::Smi)],
        any::<u64>(),
        1usize..=5,
        1usize..=5,
        10u32..=100,
    )
        .prop_map(|(variant, seed, l, r, d)| {
            let params = GenParams {
                variant,
                n_left: l,
                n_right: r,
                edge_density: f64::from(d) / 100.0,
                tie_prob: if variant == Variant::Hat { 0.5 } else { 0.0 },
            };
            random_instance(seed, &params).unwrap()
        })
}

proptest! {
    #[test]
    fn instances_round_trip(inst in instance()) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
        prop_assert_eq!(instance_digest(&back), instance_digest(&inst.normalized()));
    }

    #[test]
    fn matchings_round_trip(inst in instance(), pick in any::<usize>()) {
        let inst = inst.normalized();
        prop_assume!(inst.edge_count() <= DEFAULT_GUARD_EDGES);
        let oracle = Oracle::new(&inst, DEFAULT_GUARD_EDGES).unwrap();
        let m = &oracle.rivals()[pick % oracle.rivals().len()];
        let text = format_matching(&inst, m);
        prop_assert_eq!(&parse_matching(&inst, &text).unwrap(), m);
    }
}
