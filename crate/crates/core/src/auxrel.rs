//! Auxiliary relations, causal spaces, and relations induced by operators.
//!
//! `≪` is auxiliary to a partial order `≤` when it is finer than `≤` and
//! `w ≤ x ≪ y ≤ z` implies `w ≪ z`. Adding antireflexivity gives a causal
//! space.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;

use crate::relation::Relation;
use crate::theory::RelProps;
use crate::validate::{check_rel_props, inclusion_witness, labels};
use crate::{BinRel, Error, Report, Structure};

/// How an operator induces `≪`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorMode {
    /// `K` is extensive (`x ≤ Kx`) and `x ≪ y` iff `Kx ≤ y`.
    Extensive,
    /// `I` is contractive (`Ix ≤ x`) and `x ≪ y` iff `x ≤ Iy`.
    Contractive,
}

fn poset_report(s: &Structure) -> Report {
    let mut r = Report::new();
    for v in check_rel_props(&s.leq_rel(), RelProps::ORDER).violations {
        r.push(alloc::format!("leq:{}", v.axiom), v.witness);
    }
    r
}

/// Least `(w, x, y, z)` with `w ≤ x ≪ y ≤ z` and not `w ≪ z`.
fn condition_a_witness(leq: &Relation, ll: &Relation) -> Option<[usize; 4]> {
    let n = leq.len();
    for w in 0..n {
        for x in 0..n {
            if !leq.contains(w, x) {
                continue;
            }
            for y in 0..n {
                if !ll.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if leq.contains(y, z) && !ll.contains(w, z) {
                        return Some([w, x, y, z]);
                    }
                }
            }
        }
    }
    None
}

fn auxiliary_violations(s: &Structure, r: &mut Report) {
    let u = s.universe();
    if let Some(w) = inclusion_witness(s.ll(), s.leq()) {
        r.push("FINER", labels(u, &w));
    }
    if let Some(w) = condition_a_witness(s.leq(), s.ll()) {
        r.push("A", labels(u, &w));
    }
}

/// Checks that `≪` is auxiliary to the partial order `≤`.
///
/// Violations: `FINER` with the offending pair, `A` with `(w, x, y, z)`.
pub fn is_auxiliary(s: &Structure) -> Result<Report, Error> {
    let p = poset_report(s);
    if !p.ok() {
        return Err(Error::NotAPoset(Box::new(p)));
    }
    let mut r = Report::new();
    auxiliary_violations(s, &mut r);
    if r.ok() {
        // finer than an antisymmetric order, and transitive via (A)
        debug_assert!(s.ll().is_antisymmetric());
        debug_assert!(s.ll().is_transitive());
    }
    Ok(r)
}

/// A poset with an antireflexive auxiliary relation. A failed poset check is
/// reported as `leq:*` violations rather than an error.
pub fn is_causal_space(s: &Structure) -> Report {
    let mut r = poset_report(s);
    auxiliary_violations(s, &mut r);
    if let Some(x) = (0..s.len()).find(|&x| s.ll().contains(x, x)) {
        r.push("ANTIREFLEXIVE", vec![s.label(x).clone()]);
    }
    r
}

/// The relation induced on a poset by an isotone extensive or contractive
/// operator stored among `p`'s operations.
pub fn auxiliary_from_operator(p: &Structure, op: &str, mode: OperatorMode) -> Result<BinRel, Error> {
    let pr = poset_report(p);
    if !pr.ok() {
        return Err(Error::NotAPoset(Box::new(pr)));
    }
    let k = p.op(op).ok_or_else(|| Error::UnknownOperation(String::from(op)))?;
    let leq = p.leq();
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            if leq.contains(x, y) && !leq.contains(k[x], k[y]) {
                return Err(Error::NotIsotone(p.label(x).clone(), p.label(y).clone()));
            }
        }
    }
    for x in 0..n {
        match mode {
            OperatorMode::Extensive if !leq.contains(x, k[x]) => return Err(Error::NotExtensive(p.label(x).clone())),
            OperatorMode::Contractive if !leq.contains(k[x], x) => {
                return Err(Error::NotContractive(p.label(x).clone()))
            }
            _ => {}
        }
    }
    let mut ll = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            let related = match mode {
                OperatorMode::Extensive => leq.contains(k[x], y),
                OperatorMode::Contractive => leq.contains(x, k[y]),
            };
            if related {
                ll.insert(x, y);
            }
        }
    }
    debug_assert!(is_auxiliary(&p.without_ops().with_ll(ll.clone())).is_ok_and(|r| r.ok()));
    Ok(BinRel::from_relation(p.universe().to_vec(), ll))
}
