use super::*;
use crate::theory::{Conditions, Extras, Preserves, RelProps};
use crate::{l, Structure, StructureBuilder};

fn t(p: &[u8], q: &[u8], n: &[Condition]) -> Theory {
    Theory::new(RelProps::from_numbers(p).unwrap(), RelProps::from_numbers(q).unwrap(), Conditions::of(n))
}

fn pairs(r: &Relation, s: &Structure) -> Vec<(String, String)> {
    r.pairs().map(|(x, y)| (String::from(s.label(x).as_str()), String::from(s.label(y).as_str()))).collect()
}

fn strict_pairs(r: &Relation, s: &Structure) -> Vec<(String, String)> {
    pairs(r, s).into_iter().filter(|(x, y)| x != y).collect()
}

fn own(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|(x, y)| (String::from(*x), String::from(*y))).collect()
}

fn poset(names: &[&'static str], leq: &[(&'static str, &'static str)]) -> StructureBuilder {
    Structure::builder(names.iter().copied()).reflexive_leq().leq_pairs(leq.iter().copied())
}

fn vf(a: Structure, b: Structure, c: Structure) -> VFormation {
    VFormation::new(a, b, c).unwrap()
}

#[test]
fn dispatch_examples() {
    use Condition::*;
    assert_eq!(admissible_case(&Theory::auxiliary()), Ok(CaseTag::CaseIII));
    assert_eq!(admissible_case(&Theory::causal()), Ok(CaseTag::CaseIII));
    assert_eq!(admissible_case(&t(&[], &[5], &[Finer, A2])), Err(Error::Inadmissible(Clause::C2)));
    assert_eq!(admissible_case(&t(&[], &[], &[A1])), Err(Error::Inadmissible(Clause::C1)));
    assert_eq!(admissible_case(&t(&[5], &[5], &[Finer, A2])), Ok(CaseTag::CaseI));
    assert_eq!(admissible_case(&t(&[], &[4], &[Finer, A1])), Ok(CaseTag::CaseII));
    assert_eq!(admissible_case(&Theory::coarser_orders()), Ok(CaseTag::CaseB));
    let u = Theory::posets().with_extras(Extras { urquhart: true, ..Default::default() }).unwrap();
    assert_eq!(admissible_case(&u), Err(Error::Inadmissible(Clause::Extras)));
    assert_eq!(admissible_case(&Theory::posets().non_transitive()), Err(Error::Inadmissible(Clause::Transitivity)));
}

#[test]
fn four_term_union_adds_composite() {
    let a = poset(&["a", "c"], &[("a", "c")]).build().unwrap();
    let b = poset(&["b", "c"], &[("c", "b")]).build().unwrap();
    let c = poset(&["c"], &[]).build().unwrap();
    let r = amalgamate_leq(&vf(a, b, c));
    assert!(r.contains("a", "b"));
    assert!(!r.contains("b", "a"));
    assert_eq!(r.len(), 6);
}

#[test]
fn degenerate_and_disjoint_arms() {
    let a = poset(&["a", "c"], &[("a", "c")]).build().unwrap();
    let c = poset(&["c"], &[]).build().unwrap();
    let r = amalgamate_leq(&vf(a.clone(), c.clone(), c));
    assert_eq!(r.relation(), a.leq());

    let x = poset(&["x", "y"], &[("x", "y")]).build().unwrap();
    let z = poset(&["z"], &[]).build().unwrap();
    let r = amalgamate_leq(&vf(x, z, Structure::empty()));
    assert_eq!(r.relation().count(), 4);
    assert!(r.contains("x", "y"));
}

#[test]
fn causal_instance_gets_eight_term_pair() {
    let a = poset(&["a", "c"], &[("a", "c")]).ll("a", "c").build().unwrap();
    let b = poset(&["b", "c"], &[("c", "b")]).build().unwrap();
    let c = poset(&["c"], &[]).build().unwrap();
    let v = vf(a, b, c);
    let w = amalgamate(&v, &Theory::causal()).unwrap();
    assert_eq!(pairs(w.d.ll(), &w.d), own(&[("a", "b"), ("a", "c")]));
    assert!(verify(&v, &w, &Theory::causal(), AmalgamMode::Super).ok());
}

#[test]
fn coarser_instance_composes_ll() {
    let th = Theory::coarser_orders();
    let a = poset(&["a", "c"], &[("a", "c")]).reflexive_ll().ll("a", "c").build().unwrap();
    let b = poset(&["b", "c"], &[]).reflexive_ll().ll("c", "b").build().unwrap();
    let c = poset(&["c"], &[]).reflexive_ll().build().unwrap();
    let w = amalgamate(&vf(a, b, c), &th).unwrap();
    assert_eq!(strict_pairs(w.d.ll(), &w.d), own(&[("a", "b"), ("a", "c"), ("c", "b")]));
    assert_eq!(strict_pairs(w.d.leq(), &w.d), own(&[("a", "c")]));
}

#[test]
fn trivial_vformation_is_identity() {
    let c = poset(&["p", "q"], &[("p", "q")]).ll("p", "q").build().unwrap();
    let w = amalgamate(&vf(c.clone(), c.clone(), c.clone()), &Theory::auxiliary()).unwrap();
    assert_eq!(w.d, c);
    assert_eq!(w.iota, c.identity_map());
}

#[test]
fn op_preserving_only_ll_rejected() {
    let th = Theory::auxiliary().with_op("f", Preserves::LL).unwrap();
    let c = poset(&["c"], &[]).op("f", [("c", "c")]).build().unwrap();
    let err = amalgamate(&vf(c.clone(), c.clone(), c), &th).unwrap_err();
    assert!(matches!(err, Error::UnsupportedOperations(_)));
}

#[test]
fn ops_extend_by_union() {
    let th = Theory::posets().with_op("f", Preserves::LEQ).unwrap();
    let a = poset(&["a", "c"], &[("a", "c")]).op("f", [("a", "a"), ("c", "c")]).build().unwrap();
    let a = a.with_ll(a.leq().clone());
    let b = poset(&["b", "c"], &[("c", "b")]).op("f", [("b", "c"), ("c", "c")]).build().unwrap();
    let b = b.with_ll(b.leq().clone());
    let c = poset(&["c"], &[]).reflexive_ll().op("f", [("c", "c")]).build().unwrap();
    let w = amalgamate(&vf(a, b, c), &th).unwrap();
    let f = w.d.op("f").unwrap();
    assert_eq!(w.d.label(f[w.d.index_of("b").unwrap()]), &l("c"));
}

#[test]
fn super_violation_detected() {
    let a = poset(&["a", "c"], &[]).build().unwrap();
    let b = poset(&["b", "c"], &[]).build().unwrap();
    let c = poset(&["c"], &[]).build().unwrap();
    let v = vf(a, b, c);
    let th = Theory::new(RelProps::ORDER, RelProps::EMPTY, Conditions::EMPTY);
    let w = amalgamate(&v, &th).unwrap();
    let mut leq = w.d.leq().clone();
    leq.insert(w.d.index_of("a").unwrap(), w.d.index_of("b").unwrap());
    let bad = Amalgam { d: w.d.with_leq(leq), ..w };
    let r = verify(&v, &bad, &th, AmalgamMode::Super);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.find("SUPER").unwrap().witness, vec![l("a"), l("b")]);
    assert!(verify(&v, &bad, &th, AmalgamMode::Sap).ok());
}

#[test]
fn identification_breaks_sap() {
    let a = poset(&["a", "c"], &[]).build().unwrap();
    let b = poset(&["b", "c"], &[]).build().unwrap();
    let c = poset(&["c"], &[]).build().unwrap();
    let v = vf(a, b, c);
    let th = Theory::new(RelProps::ORDER, RelProps::EMPTY, Conditions::EMPTY);
    let d = poset(&["a", "c"], &[]).build().unwrap();
    let w = Amalgam {
        d,
        iota: [(l("a"), l("a")), (l("c"), l("c"))].into_iter().collect(),
        kappa: [(l("b"), l("a")), (l("c"), l("c"))].into_iter().collect(),
    };
    assert!(verify(&v, &w, &th, AmalgamMode::Ap).ok());
    let r = verify(&v, &w, &th, AmalgamMode::Sap);
    assert_eq!(r.find("SAP").unwrap().witness, vec![l("a"), l("b")]);
}

#[test]
fn lift_auxiliary_up_the_order() {
    let d = poset(&["a", "c"], &[("a", "c")]).ll("a", "c").build().unwrap();
    let e = BinRel::new(
        [l("a"), l("c"), l("e")],
        [("a", "a"), ("c", "c"), ("e", "e"), ("a", "c"), ("c", "e"), ("a", "e")],
    )
    .unwrap();
    let ll = lift(&d, &e, &Theory::auxiliary()).unwrap();
    let got: Vec<_> = ll.pairs().map(|(x, y)| (x.as_str(), y.as_str())).collect();
    assert_eq!(got, [("a", "c"), ("a", "e")]);
    let same = lift(&d, &d.leq_rel(), &Theory::auxiliary()).unwrap();
    assert_eq!(same.relation(), d.ll());
}

#[test]
fn lift_coarser_composes_through_the_order() {
    let th = Theory::coarser_orders();
    let d = poset(&["x", "y"], &[]).reflexive_ll().ll("x", "y").build().unwrap();
    let e = BinRel::new(
        [l("w"), l("x"), l("y"), l("z")],
        [("w", "w"), ("x", "x"), ("y", "y"), ("z", "z"), ("w", "x"), ("y", "z")],
    )
    .unwrap();
    let ll = lift(&d, &e, &th).unwrap();
    assert!(ll.contains("w", "z"));
    assert!(!ll.contains("z", "w"));
}

#[test]
fn lift_rejects_non_extension() {
    let d = poset(&["a", "c"], &[("a", "c")]).build().unwrap();
    let e = BinRel::new([l("a"), l("c")], [("a", "a"), ("c", "c")]).unwrap();
    let err = lift(&d, &e, &Theory::auxiliary()).unwrap_err();
    assert!(matches!(err, Error::NotAPosetExtension(r) if r.find("RESTRICT").is_some()));
}

#[test]
fn expansion_examples() {
    let a = poset(&["a", "c"], &[("a", "c")]).ll("a", "c").build().unwrap();
    let b = poset(&["b", "c"], &[("c", "b")]).build().unwrap();
    let c = poset(&["c"], &[]).build().unwrap();
    let v = vf(a, b, c);
    let th = Theory::auxiliary();
    let direct = amalgamate(&v, &th).unwrap();
    let same = expand_superamalgam(&v, &amalgamate_leq(&v), &th).unwrap();
    assert_eq!(same, direct);

    let mut pairs: Vec<(&str, &str)> = vec![("a", "a"), ("b", "b"), ("c", "c"), ("t", "t")];
    pairs.extend([("a", "c"), ("c", "b"), ("a", "b"), ("a", "t"), ("b", "t"), ("c", "t")]);
    let e = BinRel::new([l("a"), l("b"), l("c"), l("t")], pairs.iter().copied()).unwrap();
    let w = expand_superamalgam(&v, &e, &th).unwrap();
    assert!(w.d.ll().contains(w.d.index_of("a").unwrap(), w.d.index_of("t").unwrap()));

    let mut bad = pairs.clone();
    bad.push(("b", "a"));
    let e = BinRel::new([l("a"), l("b"), l("c"), l("t")], bad.iter().copied()).unwrap();
    assert_eq!(expand_superamalgam(&v, &e, &th).unwrap_err(), Error::NotASuperamalgam(l("b"), l("a")));
}

#[test]
fn szpilrajn_examples() {
    let r = BinRel::new([l("a"), l("b"), l("d")], [("a", "a"), ("b", "b"), ("d", "d"), ("a", "b")]).unwrap();
    let lin = szpilrajn(&r).unwrap();
    assert!(lin.contains("a", "b") && lin.contains("b", "d") && lin.contains("a", "d"));
    assert!(lin.relation().is_total());

    let anti = BinRel::new([l("z"), l("x"), l("y")], [("x", "x"), ("y", "y"), ("z", "z")]).unwrap();
    let lin = szpilrajn(&anti).unwrap();
    assert!(lin.contains("x", "y") && lin.contains("y", "z"));
    assert_eq!(szpilrajn(&lin).unwrap(), lin);

    let cyc = BinRel::new([l("p"), l("q")], [("p", "p"), ("q", "q"), ("p", "q"), ("q", "p")]).unwrap();
    assert!(matches!(szpilrajn(&cyc), Err(Error::NotAPartialOrder(_))));
}

fn linear(names: &[&'static str], leq: &[(&'static str, &'static str)], chain: &[&'static str]) -> Structure {
    let mut b = poset(names, leq).reflexive_ll();
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            b = b.ll(chain[i], chain[j]);
        }
    }
    b.build().unwrap()
}

#[test]
fn pipeline_chains_through_c() {
    let a = linear(&["a", "c"], &[("a", "c")], &["a", "c"]);
    let b = linear(&["b", "c"], &[("c", "b")], &["c", "b"]);
    let c = linear(&["c"], &[], &["c"]);
    let w = linearize_pipeline(&vf(a, b, c)).unwrap();
    assert_eq!(strict_pairs(w.d.ll(), &w.d), own(&[("a", "b"), ("a", "c"), ("c", "b")]));
}

#[test]
fn pipeline_orders_unrelated_points() {
    let a = linear(&["a@a"], &[], &["a@a"]);
    let b = linear(&["b@b"], &[], &["b@b"]);
    let w = linearize_pipeline(&vf(a, b, Structure::empty())).unwrap();
    assert_eq!(strict_pairs(w.d.ll(), &w.d), own(&[("a@a", "b@b")]));
    let c = linear(&["c"], &[], &["c"]);
    let w = linearize_pipeline(&vf(c.clone(), c.clone(), c.clone())).unwrap();
    assert_eq!(w.d, c);
}

#[test]
fn pipeline_rejects_non_linear_input() {
    let a = poset(&["a", "c"], &[]).reflexive_ll().build().unwrap();
    let c = linear(&["c"], &[], &["c"]);
    let err = linearize_pipeline(&vf(a, c.clone(), c)).unwrap_err();
    assert!(matches!(err, Error::NotAModel(r) if r.find("A.ll:TOTAL").is_some()));
}

fn urquhart_instance() -> VFormation {
    let base = |names: &[&'static str]| Structure::builder(names.iter().copied()).reflexive_leq().reflexive_ll();
    let c = base(&["c", "d"]).build().unwrap();
    let a = base(&["a", "c", "d"]).leq("a", "c").ll("a", "d").build().unwrap();
    let b = base(&["b", "c", "d"]).leq("c", "b").ll("d", "b").build().unwrap();
    vf(a, b, c)
}

fn urquhart_theory() -> Theory {
    t(&[2], &[2], &[]).with_extras(Extras { urquhart: true, ..Default::default() }).unwrap()
}

#[test]
fn free_amalgam_of_urquhart_instance() {
    let v = urquhart_instance();
    let th = urquhart_theory().non_transitive();
    let w = free_amalgamate(&v, &th).unwrap();
    assert_eq!(w.d.len(), 4);
    assert!(!w.d.leq().contains(w.d.index_of("a").unwrap(), w.d.index_of("b").unwrap()));
    assert!(verify(&v, &w, &th, AmalgamMode::Sap).ok());
    assert_eq!(free_amalgamate(&v, &urquhart_theory()).unwrap_err(), Error::TheoryRequiresTransitivity);
}

#[test]
fn free_amalgam_of_disjoint_arms() {
    let th = t(&[5], &[], &[]).non_transitive();
    let a = Structure::builder(["x", "y"]).leq("x", "y").build().unwrap();
    let b = Structure::builder(["z"]).ll("z", "z").build().unwrap();
    let w = free_amalgamate(&vf(a, b, Structure::empty()), &th).unwrap();
    assert_eq!(w.d.leq().count(), 1);
    assert_eq!(w.d.ll().count(), 1);
}

#[test]
fn one_sided_cases_compose_across_the_arms() {
    use Condition::*;
    // a ≤ c in A and c ≪ b in B: (A1) forces a ≪ b
    let a = Structure::builder(["a", "c"]).leq("a", "c").build().unwrap();
    let b = Structure::builder(["b", "c"]).leq("c", "b").ll("c", "b").build().unwrap();
    let c = Structure::builder(["c"]).build().unwrap();
    let v = vf(a, b, c);
    let w = amalgamate(&v, &t(&[], &[], &[Finer, A1])).unwrap();
    assert_eq!(strict_pairs(w.d.ll(), &w.d), own(&[("a", "b"), ("c", "b")]));
    // mirror: a ≪ c in A and c ≤ b in B under (A2)
    let a = Structure::builder(["a", "c"]).leq("a", "c").ll("a", "c").build().unwrap();
    let b = Structure::builder(["b", "c"]).leq("c", "b").build().unwrap();
    let c = Structure::builder(["c"]).build().unwrap();
    let v = vf(a, b, c);
    let w = amalgamate(&v, &t(&[], &[], &[Finer, A2])).unwrap();
    assert_eq!(strict_pairs(w.d.ll(), &w.d), own(&[("a", "b"), ("a", "c")]));
}

mod containment {
    use super::*;
    use crate::oracle::extend_model;
    use proptest::prelude::*;

    fn sample(t: &Theory, base: &Structure, fresh: &[&str], bits: u64) -> Structure {
        let mut k = 0;
        let mut order = |_: usize| {
            k += 1;
            bits.rotate_left(k) & 1 == 1
        };
        let fresh: Vec<Label> = fresh.iter().map(|x| l(x)).collect();
        extend_model(base, t, &fresh, &mut order).unwrap().unwrap()
    }

    proptest! {
        #[test]
        fn eight_terms_contain_the_smaller_recipes(p in 0usize..6, q in 0usize..6, bits in any::<[u64; 3]>()) {
            use Condition::*;
            let p = RelProps::all_standard().nth(p).unwrap();
            let q = RelProps::all_standard().nth(q).unwrap();
            let t = Theory::new(p, q, Conditions::of(&[Finer, A1, A2]));
            prop_assume!(!t.only_empty_models());
            let c = sample(&t, &Structure::empty(), &["c1", "c2"], bits[0]);
            let a = sample(&t, &c, &["a1", "a2"], bits[1]);
            let b = sample(&t, &c, &["b1", "b2"], bits[2]);
            let lay = Layout::new(&a, &b);
            let full = ll_union(&lay, &a, &b, CaseTag::CaseIII);
            for case in [CaseTag::CaseB, CaseTag::CaseI, CaseTag::CaseII] {
                prop_assert!(ll_union(&lay, &a, &b, case).is_subset(&full));
            }
        }
    }
}
