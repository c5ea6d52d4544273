//! Extending `≪` along a poset extension, and expanding `≤`-superamalgams.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{amalgamate, AmalgamMode};
use crate::relation::Relation;
use crate::theory::{Condition, Prop, RelProps, Theory};
use crate::validate::{check_rel_props, labels, validate};
use crate::{Amalgam, BinRel, Error, Report, Structure, VFormation};

/// `≪_E` from `≪_D` (already mapped into `E` as `m`) and `≤_E`.
pub(crate) fn lift_relation(m: &Relation, e_leq: &Relation, t: &Theory) -> Relation {
    let a1 = t.has(Condition::A1);
    let a2 = t.has(Condition::A2);
    let reflexive = t.ll.contains(Prop::Reflexive);
    let mut out = if t.has(Condition::Coarser) {
        let mut r = e_leq.compose(m).compose(e_leq);
        r.union_with(e_leq);
        r
    } else {
        let mut r = match (a1, a2) {
            (false, false) => m.clone(),
            (false, true) => m.compose(e_leq),
            (true, false) => e_leq.compose(m),
            (true, true) => e_leq.compose(m).compose(e_leq),
        };
        // a reflexive ≪ with (A1) or (A2) already contains ≤
        if reflexive && (a1 || a2) {
            r.union_with(e_leq);
        }
        r
    };
    if reflexive {
        out.union_with(&Relation::identity(out.len()));
    }
    out
}

/// Positions of `d`'s elements in `universe`, or the first missing label.
fn positions(d: &Structure, universe: &[crate::Label]) -> Result<Vec<usize>, Error> {
    d.universe()
        .iter()
        .map(|x| {
            universe.binary_search(x).map_err(|_| {
                let mut r = Report::new();
                r.push("UNIVERSE", alloc::vec![x.clone()]);
                Error::NotAPosetExtension(Box::new(r))
            })
        })
        .collect()
}

fn restriction_witness(small: &Relation, big: &Relation, pos: &[usize]) -> Option<[usize; 2]> {
    let n = small.len();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find_map(|(x, y)| {
        (small.contains(x, y) != big.contains(pos[x], pos[y])).then_some([x, y])
    })
}

/// Lifts `≪_D` to a poset `(E, ≤_E)` extending `(D, ≤_D)`.
///
/// With (C) the result is `≤_E ∪ ≤_E∘≪_D∘≤_E`. Otherwise (A1) contributes
/// a left `≤_E` factor and (A2) a right one; without either, `≪_E = ≪_D`. A reflexive `≪` adds
/// `≤_E` (under (A1) or (A2)) or the diagonal. The result is validated and
/// must restrict to `≪_D`.
pub fn lift(d: &Structure, e_leq: &BinRel, t: &Theory) -> Result<BinRel, Error> {
    if !d.ops().is_empty() {
        return Err(Error::UnsupportedOperations(String::from("lift works on relational structures")));
    }
    let pos = positions(d, e_leq.universe())?;
    let mut report = check_rel_props(e_leq, RelProps::ORDER);
    if let Some(w) = restriction_witness(d.leq(), e_leq.relation(), &pos) {
        report.push("RESTRICT", labels(d.universe(), &w));
    }
    if !report.ok() {
        return Err(Error::NotAPosetExtension(Box::new(report)));
    }
    let t = t.relational();
    let r = validate(d, &t);
    if !r.ok() {
        return Err(Error::NotAModel(Box::new(r)));
    }
    let m = d.ll().map(&pos, e_leq.universe().len());
    let ll = lift_relation(&m, e_leq.relation(), &t);
    let e = Structure::from_sorted(e_leq.universe().to_vec(), e_leq.relation().clone(), ll.clone(), BTreeMap::new());
    let mut report = validate(&e, &t);
    if let Some(w) = restriction_witness(d.ll(), &ll, &pos) {
        report.push("ll:RESTRICT", labels(d.universe(), &w));
    }
    if !report.ok() {
        return Err(Error::VerificationFailed(Box::new(report)));
    }
    Ok(BinRel::from_relation(e_leq.universe().to_vec(), ll))
}

/// Expands a superamalgam `(E, ≤_E)` of the `≤`-reducts to a full model.
///
/// Builds `D` over `A ∪ B` with [`amalgamate`], checks that `≤_E` restricted
/// to `A ∪ B` is `≤_D` (the order superamalgamation forces there), lifts `≪`
/// to `E` and verifies the result at [`AmalgamMode::Super`].
pub fn expand_superamalgam(v: &VFormation, e_leq: &BinRel, t: &Theory) -> Result<Amalgam, Error> {
    if !v.c().ops().is_empty() {
        return Err(Error::UnsupportedOperations(String::from("expansion works on relational structures")));
    }
    let w = amalgamate(v, t)?;
    let pos = positions(&w.d, e_leq.universe())?;
    if let Some([x, y]) = restriction_witness(w.d.leq(), e_leq.relation(), &pos) {
        return Err(Error::NotASuperamalgam(w.d.label(x).clone(), w.d.label(y).clone()));
    }
    let ll = lift(&w.d, e_leq, t)?;
    let e = Structure::from_sorted(
        e_leq.universe().to_vec(),
        e_leq.relation().clone(),
        ll.relation().clone(),
        BTreeMap::new(),
    );
    let out = Amalgam { d: e, iota: w.iota, kappa: w.kappa };
    let report = super::verify(v, &out, t, AmalgamMode::Super);
    if !report.ok() {
        return Err(Error::VerificationFailed(Box::new(report)));
    }
    Ok(out)
}
