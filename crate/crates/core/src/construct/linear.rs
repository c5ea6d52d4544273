//! Linear extensions and the linearization pipeline.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;

use super::{amalgamate, verify, AmalgamMode};
use crate::relation::{bit, full_mask, Relation};
use crate::theory::{RelProps, Theory};
use crate::validate::{check_rel_props, labels};
use crate::{Amalgam, BinRel, Error, Report, Structure, VFormation};

/// Linear order extending a partial order: repeatedly emits the
/// label-least minimal element among those remaining.
pub fn szpilrajn(r: &BinRel) -> Result<BinRel, Error> {
    let report = check_rel_props(r, RelProps::ORDER);
    if !report.ok() {
        return Err(Error::NotAPartialOrder(Box::new(report)));
    }
    let rel = linear_extension(r.relation());
    Ok(BinRel::from_relation(r.universe().to_vec(), rel))
}

/// Index-level core of [`szpilrajn`]; `r` must be a partial order.
pub(crate) fn linear_extension(r: &Relation) -> Relation {
    let n = r.len();
    let mut remaining = full_mask(n);
    let mut out = Relation::identity(n);
    let mut placed = 0u64;
    while remaining != 0 {
        // x is minimal iff nothing else remaining lies strictly below it
        let x = (0..n)
            .find(|&x| remaining & bit(x) != 0 && r.column(x) & remaining & !bit(x) == 0)
            .expect("a finite partial order has a minimal element");
        for p in crate::relation::ones(placed) {
            out.insert(p, x);
        }
        placed |= bit(x);
        remaining &= !bit(x);
    }
    out
}

fn linear_report(s: &Structure, which: &str, report: &mut Report) {
    let sub = check_rel_props(&s.ll_rel(), RelProps::ORDER);
    for v in sub.violations {
        report.push(format!("{which}.ll:{}", v.axiom), v.witness);
    }
    if let Some((x, y)) = (0..s.len()).flat_map(|x| (0..s.len()).map(move |y| (x, y))).find(|&(x, y)| {
        !s.ll().contains(x, y) && !s.ll().contains(y, x)
    }) {
        report.push(format!("{which}.ll:TOTAL"), labels(s.universe(), &[x, y]));
    }
}

/// Amalgamates structures whose `≪` is a linear order coarser than the
/// partial order `≤`.
///
/// The `≤`-reducts are superamalgamated by the four-term union, `≪` is
/// carried along as a coarser order, and the result is linearized with
/// [`szpilrajn`]. The output is verified against both arms, never assumed.
pub fn linearize_pipeline(v: &VFormation) -> Result<Amalgam, Error> {
    if !v.c().ops().is_empty() {
        return Err(Error::UnsupportedOperations(String::from("linearization works on relational structures")));
    }
    let t = Theory::coarser_orders();
    let mut pre = Report::new();
    for (which, s) in [("A", v.a()), ("B", v.b()), ("C", v.c())] {
        for viol in crate::validate(s, &t).violations {
            pre.push(format!("{which}.{}", viol.axiom), viol.witness);
        }
        linear_report(s, which, &mut pre);
    }
    if !pre.ok() {
        return Err(Error::NotAModel(Box::new(pre)));
    }
    let w = amalgamate(v, &t)?;
    let ll = linear_extension(w.d.ll());
    let f = Amalgam { d: w.d.with_ll(ll), iota: w.iota, kappa: w.kappa };
    let mut report = verify(v, &f, &t, AmalgamMode::Super);
    linear_report(&f.d, "D", &mut report);
    if !report.ok() {
        return Err(Error::VerificationFailed(Box::new(report)));
    }
    Ok(f)
}
