//! Axiom checks with lexicographically least witnesses.
//!
//! Every finder scans tuples in increasing index order and stops at the first
//! failure; since universes are sorted, that tuple is also least by label.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::relation::{bit, ones, Relation};
use crate::theory::{Condition, Prop, RelProps, Theory};
use crate::{BinRel, Label, LabelMap, Report, Structure};

pub(crate) fn transitivity_witness(r: &Relation) -> Option<[usize; 3]> {
    for x in 0..r.len() {
        let row = r.row(x);
        for y in ones(row) {
            let missing = r.row(y) & !row;
            if missing != 0 {
                return Some([x, y, missing.trailing_zeros() as usize]);
            }
        }
    }
    None
}

pub(crate) fn reflexivity_witness(r: &Relation) -> Option<usize> {
    (0..r.len()).find(|&x| !r.contains(x, x))
}

pub(crate) fn antireflexivity_witness(r: &Relation) -> Option<usize> {
    (0..r.len()).find(|&x| r.contains(x, x))
}

pub(crate) fn symmetry_witness(r: &Relation) -> Option<[usize; 2]> {
    r.pairs().find(|&(x, y)| !r.contains(y, x)).map(|(x, y)| [x, y])
}

pub(crate) fn antisymmetry_witness(r: &Relation) -> Option<[usize; 2]> {
    r.pairs().find(|&(x, y)| x != y && r.contains(y, x)).map(|(x, y)| [x, y])
}

/// Least pair in `r` but not in `s`.
pub(crate) fn inclusion_witness(r: &Relation, s: &Relation) -> Option<[usize; 2]> {
    (0..r.len()).find_map(|x| {
        let d = r.row(x) & !s.row(x);
        (d != 0).then(|| [x, d.trailing_zeros() as usize])
    })
}

/// `w ≤ x ≪ y` without `w ≪ y`.
pub(crate) fn a1_witness(leq: &Relation, ll: &Relation) -> Option<[usize; 3]> {
    for w in 0..leq.len() {
        for x in ones(leq.row(w)) {
            let missing = ll.row(x) & !ll.row(w);
            if missing != 0 {
                return Some([w, x, missing.trailing_zeros() as usize]);
            }
        }
    }
    None
}

/// `x ≪ y ≤ z` without `x ≪ z`.
pub(crate) fn a2_witness(leq: &Relation, ll: &Relation) -> Option<[usize; 3]> {
    for x in 0..ll.len() {
        for y in ones(ll.row(x)) {
            let missing = leq.row(y) & !ll.row(x);
            if missing != 0 {
                return Some([x, y, missing.trailing_zeros() as usize]);
            }
        }
    }
    None
}

/// `x ≤ y` and `x ≪ y` with `x ≠ y`.
pub(crate) fn urquhart_witness(leq: &Relation, ll: &Relation) -> Option<[usize; 2]> {
    (0..leq.len()).find_map(|x| {
        let both = leq.row(x) & ll.row(x) & !bit(x);
        (both != 0).then(|| [x, both.trailing_zeros() as usize])
    })
}

fn comparable(r: &Relation, x: usize) -> u64 {
    r.row(x) | r.column(x)
}

/// `x ≥ z`, `y ≥ z` with `x`, `y` incomparable; witness `(x, y, z)`.
pub(crate) fn union_of_chains_witness(leq: &Relation) -> Option<[usize; 3]> {
    let n = leq.len();
    let cols: Vec<u64> = (0..n).map(|x| comparable(leq, x)).collect();
    for x in 0..n {
        for y in 0..n {
            if cols[x] & bit(y) != 0 {
                continue;
            }
            // common lower bounds of x and y
            let lower = leq.column(x) & leq.column(y);
            if lower != 0 {
                return Some([x, y, lower.trailing_zeros() as usize]);
            }
        }
    }
    None
}

/// `x ≤ z`, `y ≤ z` with `x`, `y` incomparable; witness `(x, y, z)`.
pub(crate) fn union_of_chains_dual_witness(leq: &Relation) -> Option<[usize; 3]> {
    let n = leq.len();
    let cols: Vec<u64> = (0..n).map(|x| comparable(leq, x)).collect();
    for x in 0..n {
        for y in 0..n {
            if cols[x] & bit(y) != 0 {
                continue;
            }
            let upper = leq.row(x) & leq.row(y);
            if upper != 0 {
                return Some([x, y, upper.trailing_zeros() as usize]);
            }
        }
    }
    None
}

/// Least antichain of `size` elements, where `incomparable[x]` is the set of
/// elements incomparable to `x` (excluding `x`).
pub(crate) fn antichain_in(incomparable: &[u64], size: usize) -> Option<Vec<usize>> {
    fn extend(inc: &[u64], chosen: &mut Vec<usize>, candidates: u64, size: usize) -> bool {
        if chosen.len() == size {
            return true;
        }
        for c in ones(candidates) {
            chosen.push(c);
            // only larger indices, keeps tuples sorted
            let next = candidates & inc[c] & !((bit(c) << 1).wrapping_sub(1));
            if (next.count_ones() as usize) + chosen.len() >= size && extend(inc, chosen, next, size) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if size == 0 {
        return Some(Vec::new());
    }
    let n = incomparable.len();
    let mut chosen = Vec::with_capacity(size);
    extend(incomparable, &mut chosen, crate::relation::full_mask(n), size).then_some(chosen)
}

pub(crate) fn antichain_witness(leq: &Relation, size: usize) -> Option<Vec<usize>> {
    let n = leq.len();
    let inc: Vec<u64> = (0..n)
        .map(|x| crate::relation::full_mask(n) & !comparable(leq, x) & !bit(x))
        .collect();
    antichain_in(&inc, size)
}

/// `x R y` without `f(x) R f(y)`.
pub(crate) fn preservation_witness(r: &Relation, f: &[usize]) -> Option<[usize; 2]> {
    r.pairs().find(|&(x, y)| !r.contains(f[x], f[y])).map(|(x, y)| [x, y])
}

pub(crate) fn labels(universe: &[Label], idx: &[usize]) -> Vec<Label> {
    idx.iter().map(|&i| universe[i].clone()).collect()
}

fn check_relation(report: &mut Report, prefix: &str, universe: &[Label], r: &Relation, props: RelProps, transitive: bool) {
    let name = |axiom: &str| {
        if prefix.is_empty() {
            alloc::string::String::from(axiom)
        } else {
            format!("{prefix}:{axiom}")
        }
    };
    if transitive {
        if let Some(w) = transitivity_witness(r) {
            report.push(name("TRANSITIVE"), labels(universe, &w));
        }
    }
    for p in props.iter() {
        let w: Option<Vec<usize>> = match p {
            Prop::Reflexive => reflexivity_witness(r).map(|x| vec![x]),
            Prop::Antireflexive => antireflexivity_witness(r).map(|x| vec![x]),
            Prop::Symmetric => symmetry_witness(r).map(|w| w.to_vec()),
            Prop::Antisymmetric => antisymmetry_witness(r).map(|w| w.to_vec()),
        };
        if let Some(w) = w {
            report.push(name(p.name()), labels(universe, &w));
        }
    }
}

/// Transitivity plus each property in `props`.
pub fn check_rel_props(r: &BinRel, props: RelProps) -> Report {
    let mut report = Report::new();
    check_relation(&mut report, "", r.universe(), r.relation(), props, true);
    report
}

/// Checks `s` against every axiom of `t`.
///
/// Violation names: `leq:*`/`ll:*` for single-relation axioms, `FINER`,
/// `COARSER`, `A1`, `A2`, `U`, `UNION_OF_CHAINS`, `UNION_OF_CHAINS_DUAL`,
/// `MAX_ANTICHAIN`, `SIGNATURE(f)` and `f:PRESERVES_LEQ`/`f:PRESERVES_LL`.
pub fn validate(s: &Structure, t: &Theory) -> Report {
    let mut report = Report::new();
    let u = s.universe();
    let (leq, ll) = (s.leq(), s.ll());
    check_relation(&mut report, "leq", u, leq, t.leq, t.transitive);
    check_relation(&mut report, "ll", u, ll, t.ll, t.transitive);
    if t.has(Condition::Finer) {
        if let Some(w) = inclusion_witness(ll, leq) {
            report.push("FINER", labels(u, &w));
        }
    }
    if t.has(Condition::Coarser) {
        if let Some(w) = inclusion_witness(leq, ll) {
            report.push("COARSER", labels(u, &w));
        }
    }
    if t.has(Condition::A1) {
        if let Some(w) = a1_witness(leq, ll) {
            report.push("A1", labels(u, &w));
        }
    }
    if t.has(Condition::A2) {
        if let Some(w) = a2_witness(leq, ll) {
            report.push("A2", labels(u, &w));
        }
    }
    if t.extras.urquhart {
        if let Some(w) = urquhart_witness(leq, ll) {
            report.push("U", labels(u, &w));
        }
    }
    if t.extras.union_of_chains {
        if let Some(w) = union_of_chains_witness(leq) {
            report.push("UNION_OF_CHAINS", labels(u, &w));
        }
        if let Some(w) = union_of_chains_dual_witness(leq) {
            report.push("UNION_OF_CHAINS_DUAL", labels(u, &w));
        }
    }
    if let Some(n) = t.extras.max_antichain {
        if let Some(w) = antichain_witness(leq, n + 1) {
            report.push("MAX_ANTICHAIN", labels(u, &w));
        }
    }
    let mut names: Vec<&alloc::string::String> = t.ops.keys().chain(s.ops().keys()).collect();
    names.sort();
    names.dedup();
    for name in names {
        if t.ops.contains_key(name) != s.ops().contains_key(name) {
            report.push(format!("SIGNATURE({name})"), Vec::new());
        }
    }
    for (name, pres) in &t.ops {
        let Some(f) = s.op(name) else { continue };
        if pres.leq {
            if let Some(w) = preservation_witness(leq, f) {
                report.push(format!("{name}:PRESERVES_LEQ"), labels(u, &w));
            }
        }
        if pres.ll {
            if let Some(w) = preservation_witness(ll, f) {
                report.push(format!("{name}:PRESERVES_LL"), labels(u, &w));
            }
        }
    }
    report
}

/// Embedding check on an index map `f: src → tgt`.
pub(crate) fn embedding_report_idx(f: &[usize], src: &Structure, tgt: &Structure) -> Report {
    let mut report = Report::new();
    let u = src.universe();
    let n = src.len();
    'inj: for x in 0..n {
        for y in x + 1..n {
            if f[x] == f[y] {
                report.push("INJECTIVE", labels(u, &[x, y]));
                break 'inj;
            }
        }
    }
    for (name, r_src, r_tgt) in [("leq", src.leq(), tgt.leq()), ("ll", src.ll(), tgt.ll())] {
        let mut preserve = None;
        let mut reflect = None;
        for x in 0..n {
            for y in 0..n {
                let a = r_src.contains(x, y);
                let b = r_tgt.contains(f[x], f[y]);
                if a && !b && preserve.is_none() {
                    preserve = Some([x, y]);
                }
                if !a && b && reflect.is_none() {
                    reflect = Some([x, y]);
                }
            }
        }
        if let Some(w) = preserve {
            report.push(format!("{name}:PRESERVE"), labels(u, &w));
        }
        if let Some(w) = reflect {
            report.push(format!("{name}:REFLECT"), labels(u, &w));
        }
    }
    for (name, op) in src.ops() {
        match tgt.op(name) {
            None => report.push(format!("{name}:MISSING"), Vec::new()),
            Some(g) => {
                if let Some(x) = (0..n).find(|&x| f[op[x]] != g[f[x]]) {
                    report.push(format!("{name}:COMMUTES"), labels(u, &[x]));
                }
            }
        }
    }
    report
}

/// `f` is injective, preserves and reflects both relations, and commutes
/// with every operation of `src`.
pub fn is_embedding(f: &LabelMap, src: &Structure, tgt: &Structure) -> Report {
    let mut report = Report::new();
    let mut idx = Vec::with_capacity(src.len());
    for x in src.universe() {
        match f.get(x) {
            None => report.push("TOTAL", vec![x.clone()]),
            Some(y) => match tgt.index_of(y.as_str()) {
                None => report.push("CODOMAIN", vec![x.clone()]),
                Some(j) => idx.push(j),
            },
        }
    }
    if !report.ok() {
        return report;
    }
    embedding_report_idx(&idx, src, tgt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::l;

    fn rel(u: &[&str], pairs: &[(&str, &str)]) -> BinRel {
        BinRel::new(u.iter().map(|s| l(s)), pairs.iter().copied()).unwrap()
    }

    #[test]
    fn rel_props_examples() {
        assert!(check_rel_props(&rel(&["a"], &[("a", "a")]), RelProps::REFLEXIVE).ok());
        let r = check_rel_props(
            &rel(&["a", "b"], &[("a", "b"), ("b", "a")]),
            RelProps::from_numbers(&[5]).unwrap(),
        );
        let v = r.find("ANTISYMMETRIC").unwrap();
        assert_eq!(v.witness, vec![l("a"), l("b")]);
        // the 2-cycle also fails transitivity (a ≤ b ≤ a without a ≤ a)
        assert_eq!(r.find("TRANSITIVE").unwrap().witness, vec![l("a"), l("b"), l("a")]);
        let r = check_rel_props(&rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]), RelProps::EMPTY);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].axiom, "TRANSITIVE");
        assert_eq!(r.violations[0].witness, vec![l("a"), l("b"), l("c")]);
    }

    #[test]
    fn finer_violation_names_the_offending_pair() {
        let s = Structure::builder(["x", "y"]).reflexive_leq().leq("x", "y").ll("y", "x").build().unwrap();
        let t = Theory::new(RelProps::ORDER, RelProps::EMPTY, crate::Conditions::of(&[Condition::Finer]));
        let r = validate(&s, &t);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].axiom, "FINER");
        assert_eq!(r.violations[0].witness, vec![l("y"), l("x")]);
    }

    #[test]
    fn antichain_search_finds_least() {
        // 4-antichain: least 3-subset is (0,1,2)
        let leq = Relation::identity(4);
        assert_eq!(antichain_witness(&leq, 3), Some(vec![0, 1, 2]));
        let chain = Relation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(antichain_witness(&chain, 2), None);
    }

    #[test]
    fn union_of_chains_detects_fork() {
        // z ≤ x, z ≤ y, x and y incomparable
        let s = Structure::builder(["x", "y", "z"]).reflexive_leq().leq("z", "x").leq("z", "y").build().unwrap();
        let t = Theory::posets().with_extras(crate::Extras { union_of_chains: true, ..Default::default() }).unwrap();
        let r = validate(&s, &t);
        assert_eq!(r.find("UNION_OF_CHAINS").unwrap().witness, vec![l("x"), l("y"), l("z")]);
        assert!(r.find("UNION_OF_CHAINS_DUAL").is_none());
    }

    #[test]
    fn signature_mismatch_reported() {
        let s = Structure::builder(["a"]).op("g", [("a", "a")]).build().unwrap();
        let r = validate(&s, &Theory::new(RelProps::EMPTY, RelProps::EMPTY, crate::Conditions::EMPTY));
        assert!(r.find("SIGNATURE(g)").is_some());
    }

    #[test]
    fn constant_map_not_injective() {
        let s = Structure::builder(["a", "b"]).build().unwrap();
        let f: LabelMap = [(l("a"), l("a")), (l("b"), l("a"))].into_iter().collect();
        let r = is_embedding(&f, &s, &s);
        assert_eq!(r.violations[0].axiom, "INJECTIVE");
    }
}
