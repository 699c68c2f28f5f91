//! Worked examples on the four small fixtures. Every expected verdict is
//! also confirmed with the brute-force oracle inside the test.

use popmatch_core::characterize::{
    compute_fs_ha, compute_fs_hat, find_popular_ha, find_popular_hat, gale_shapley_smi,
    improve_matching_smi, optimization_check, structural_check, validate_witness, CheckError,
    RivalKind,
};
use popmatch_core::instance::fixtures;
use popmatch_core::lp::{
    build_dual_ha, build_dual_hat, build_dual_smi, dual_feasible, derive_structure_ha,
    derive_structure_hat, ha_partition, hat_partition, lemma_checks_ha, max_weight_matching,
    CertificateError, SolveMode,
};
use popmatch_core::matching::maximum_matching;
use popmatch_core::oracle::{is_popular_bruteforce, max_weight_bruteforce, Oracle, DEFAULT_GUARD_EDGES};
use popmatch_core::weights::{g_m_plus, labels_smi, weight_ha, weight_hat};
use popmatch_core::{Certificate, Instance, Matching, StructuralWitness, WitnessKind};

fn v(inst: &Instance, name: &str) -> popmatch_core::Vertex {
    inst.vertex_by_name(name).unwrap_or_else(|| panic!("no vertex {name}"))
}

fn matching(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
    Matching::from_pairs(
        inst.vertex_count(),
        pairs.iter().map(|&(a, b)| (v(inst, a), v(inst, b))),
    )
    .unwrap()
}

fn oracle_popular(inst: &Instance, m: &Matching) -> bool {
    is_popular_bruteforce(inst, m, DEFAULT_GUARD_EDGES).unwrap().popular
}

#[test]
fn fs_sets_of_the_house_fixtures() {
    let i1 = fixtures::i1().normalized();
    let fs = compute_fs_ha(&i1).unwrap();
    for a in ["a1", "a2"] {
        assert_eq!(fs.f(v(&i1, a)), v(&i1, "h1"));
        assert_eq!(fs.s(v(&i1, a)), v(&i1, "h2"));
    }
    assert_eq!(fs.h_f().collect::<Vec<_>>(), vec![v(&i1, "h1")]);

    let i3 = fixtures::i3().normalized();
    let fs = compute_fs_hat(&i3).unwrap();
    assert_eq!(fs.f(v(&i3, "a1")), &[v(&i3, "h1"), v(&i3, "h2")]);
    assert_eq!(fs.f(v(&i3, "a2")), &[v(&i3, "h1")]);
    assert_eq!(fs.g_f.edge_count(), 3);
    assert_eq!(maximum_matching(&fs.g_f).len(), 2);

    // I2 read as HAT: the best group with an even house is {h2}.
    let i2 = fixtures::i2().normalized();
    let fs = compute_fs_hat(&i2).unwrap();
    for a in ["a1", "a2", "a3"] {
        assert_eq!(fs.s(v(&i2, a)), &[v(&i2, "h2")]);
    }
}

#[test]
fn ha_dual_on_i1() {
    let inst = fixtures::i1().normalized();
    let m = matching(&inst, &[("a1", "h1"), ("a2", "h2")]);
    assert!(oracle_popular(&inst, &m));
    let y = build_dual_ha(&inst, &m, &ha_partition(&inst, &m).unwrap()).unwrap();
    let want = [("a1", 0), ("a2", 1), ("h1", 1), ("h2", 0), ("l(a1)", 0), ("l(a2)", 0)];
    for (name, val) in want {
        assert_eq!(y.get(v(&inst, name)), val, "{name}");
    }
    assert_eq!(y.objective(), 2);
    dual_feasible(inst.graph(), &weight_ha(&inst, &m).unwrap(), &y).unwrap();

    let swapped = matching(&inst, &[("a1", "h2"), ("a2", "h1")]);
    let y = build_dual_ha(&inst, &swapped, &ha_partition(&inst, &swapped).unwrap()).unwrap();
    assert_eq!(y.objective(), 2);
    assert_eq!(y.get(v(&inst, "a1")), 1);
}

#[test]
fn hat_dual_on_i3() {
    let inst = fixtures::i3().normalized();
    let m = matching(&inst, &[("a1", "h2"), ("a2", "h1")]);
    assert!(oracle_popular(&inst, &m));
    let y = build_dual_hat(&inst, &m, &hat_partition(&inst, &m).unwrap()).unwrap();
    let want = [("a1", 0), ("a2", 0), ("h1", 1), ("h2", 1), ("l(a1)", 0), ("l(a2)", 0)];
    for (name, val) in want {
        assert_eq!(y.get(v(&inst, name)), val, "{name}");
    }
    assert_eq!(y.objective(), 2);
}

#[test]
fn smi_dual_on_i4() {
    let inst = fixtures::i4();
    let m = gale_shapley_smi(&inst).unwrap();
    assert_eq!(m, matching(&inst, &[("u1", "v1"), ("u2", "v2")]));
    let labels = labels_smi(&inst, &m).unwrap();
    let (part, y) = build_dual_smi(&inst, &m, &labels, &g_m_plus(&inst, &labels)).unwrap();
    assert!(part.pp_edges.is_empty());
    assert!(inst.vertices().all(|x| y.get(x) == 1));
    assert_eq!(y.objective(), 4);

    let empty = Matching::empty(inst.vertex_count());
    let labels = labels_smi(&inst, &empty).unwrap();
    assert!(build_dual_smi(&inst, &empty, &labels, &g_m_plus(&inst, &labels)).is_err());
}

#[test]
fn solver_values_match_enumeration() {
    let i1 = fixtures::i1().normalized();
    let m = matching(&i1, &[("a1", "h1"), ("a2", "h2")]);
    let w = weight_ha(&i1, &m).unwrap();
    let opt = max_weight_matching(i1.graph(), &w, SolveMode::LeftPerfect).unwrap();
    assert_eq!(opt.value, 2);
    assert_eq!(max_weight_bruteforce(i1.graph(), &w, true, DEFAULT_GUARD_EDGES).unwrap(), 2);

    let i4 = fixtures::i4();
    let m = gale_shapley_smi(&i4).unwrap();
    let w = labels_smi(&i4, &m).unwrap().w;
    let opt = max_weight_matching(i4.graph(), &w, SolveMode::Free).unwrap();
    assert_eq!(opt.value, 4);
    assert_eq!(max_weight_bruteforce(i4.graph(), &w, false, DEFAULT_GUARD_EDGES).unwrap(), 4);
}

#[test]
fn reverse_derivation_examples() {
    let i1 = fixtures::i1().normalized();
    let oracle = Oracle::new(&i1, DEFAULT_GUARD_EDGES).unwrap();
    for m in oracle.rivals().iter().filter(|m| oracle.verdict(m).unwrap().popular) {
        let opt = optimization_check(&i1, m).unwrap();
        let Certificate::Dual(c) = opt.certificate else { panic!("popular without dual") };
        assert!(derive_structure_ha(&i1, m, &c.dual).unwrap().all_passed());
    }

    let i2 = fixtures::i2().normalized();
    let m = matching(&i2, &[("a1", "h1"), ("a2", "h2"), ("a3", "h3")]);
    let w = weight_ha(&i2, &m).unwrap();
    let y = max_weight_matching(i2.graph(), &w, SolveMode::LeftPerfect).unwrap().dual;
    assert!(matches!(
        derive_structure_ha(&i2, &m, &y),
        Err(CertificateError::OptimalityPreconditionViolated(_))
    ));

    let m1 = matching(&i1, &[("a1", "h1"), ("a2", "h2")]);
    let mut y2 = build_dual_ha(&i1, &m1, &ha_partition(&i1, &m1).unwrap()).unwrap();
    y2.set(v(&i1, "h1"), 2);
    let report = lemma_checks_ha(&i1, &m1, &y2).unwrap();
    assert!(report.failed().any(|c| c.name == "dual_is_zero_one"));

    let i3 = fixtures::i3().normalized();
    let m = matching(&i3, &[("a1", "h2"), ("a2", "h1")]);
    let w = weight_hat(&i3, &m).unwrap();
    let y = max_weight_matching(i3.graph(), &w, SolveMode::LeftPerfect).unwrap().dual;
    let report = derive_structure_hat(&i3, &m, &y).unwrap();
    assert!(report.all_passed(), "{:?}", report.checks);
    let p = &report.partition;
    let g_f = compute_fs_hat(&i3).unwrap().g_f;
    assert_eq!(p.a1_prime.len() + p.h1.len(), maximum_matching(&g_f).len());
    assert_eq!(maximum_matching(&g_f).len(), 2);
}

#[test]
fn structural_refutations() {
    let i1 = fixtures::i1().normalized();
    let m = matching(&i1, &[("a1", "l(a1)"), ("a2", "h1")]);
    let s = structural_check(&i1, &m).unwrap();
    let Certificate::Witness(w) = &s.certificate else { panic!() };
    assert_eq!(w.kind, WitnessKind::BadPartner);
    assert_eq!(w.vertices[0], v(&i1, "a1"));
    assert!(!oracle_popular(&i1, &m));

    let i3 = fixtures::i3().normalized();
    let m = matching(&i3, &[("a1", "h1"), ("a2", "h2")]);
    assert!(!structural_check(&i3, &m).unwrap().popular);
    let b = is_popular_bruteforce(&i3, &m, DEFAULT_GUARD_EDGES).unwrap();
    let Certificate::Rival { matching: rival, .. } = b.certificate else { panic!() };
    assert_eq!(rival, matching(&i3, &[("a1", "h2"), ("a2", "h1")]));

    let i4 = fixtures::i4();
    let empty = Matching::empty(i4.vertex_count());
    let s = structural_check(&i4, &empty).unwrap();
    let Certificate::Witness(w) = &s.certificate else { panic!() };
    assert_eq!(w.kind, WitnessKind::PlusPlusPathFromUnmatched);
    let m = matching(&i4, &[("u1", "v2")]);
    assert!(!structural_check(&i4, &m).unwrap().popular);
    assert!(!oracle_popular(&i4, &m));
}

#[test]
fn heavier_rival_for_i2() {
    let i2 = fixtures::i2().normalized();
    let m = matching(&i2, &[("a1", "h1"), ("a2", "h2"), ("a3", "h3")]);
    let o = optimization_check(&i2, &m).unwrap();
    assert!(!o.popular);
    let Certificate::Rival { kind, .. } = o.certificate else { panic!() };
    assert_eq!(kind, RivalKind::Heavier { weight: 4, current: 3 });
}

#[test]
fn improving_the_empty_matching_of_i4() {
    let i4 = fixtures::i4();
    let empty = Matching::empty(i4.vertex_count());
    let witness = StructuralWitness {
        kind: WitnessKind::PlusPlusPathFromUnmatched,
        vertices: vec![v(&i4, "v1"), v(&i4, "u1")],
    };
    let imp = improve_matching_smi(&i4, &empty, &witness).unwrap();
    assert_eq!(imp.matching, matching(&i4, &[("u1", "v1")]));
    assert_eq!(imp.gain, 2);

    let stable = gale_shapley_smi(&i4).unwrap();
    let tampered = StructuralWitness {
        kind: WitnessKind::PlusPlusCycle,
        vertices: vec![v(&i4, "u1"), v(&i4, "v2"), v(&i4, "u2"), v(&i4, "v1")],
    };
    assert!(validate_witness(&i4, &stable, &tampered).is_err());
    assert!(matches!(
        improve_matching_smi(&i4, &stable, &tampered),
        Err(CheckError::InvalidWitness(_))
    ));
}

#[test]
fn finders_on_fixtures() {
    let i1 = fixtures::i1().normalized();
    let m = find_popular_ha(&i1).unwrap().expect("I1 has a popular matching");
    assert!(oracle_popular(&i1, &m));
    assert!(find_popular_ha(&fixtures::i2().normalized()).unwrap().is_none());
    let i3 = fixtures::i3().normalized();
    let m = find_popular_hat(&i3).unwrap().expect("I3 has a popular matching");
    assert!(oracle_popular(&i3, &m));
}
