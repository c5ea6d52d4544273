//! Constructive amalgamation and amalgam verification.
//!
//! All constructors build `D` over `A ∪ B` and run [`verify`] on the result
//! before returning it. A failed check comes back as
//! [`Error::VerificationFailed`], never as a silently wrong amalgam.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::relation::{ones, Relation};
use crate::theory::{Condition, Prop, Theory};
use crate::validate::{embedding_report_idx, validate};
use crate::vformation::Layout;
use crate::{Amalgam, BinRel, Error, Label, Report, Structure, VFormation};

mod lift;
mod linear;

pub use lift::{expand_superamalgam, lift};
pub use linear::{linearize_pipeline, szpilrajn};

/// Which composition-union recipe applies to a theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Neither (A1) nor (A2).
    CaseB,
    /// (A2) only; (F) holds and so does the antisymmetry side condition.
    CaseI,
    /// (A1) only; mirror of [`CaseTag::CaseI`].
    CaseII,
    /// Both (A1) and (A2).
    CaseIII,
}

/// The first admissibility requirement a theory fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    /// Transitivity is switched off; see [`free_amalgamate`].
    Transitivity,
    /// Symmetric relations are outside the recipes.
    Symmetric,
    /// Extra axioms (U, union of chains, antichain bounds) are never routed to
    /// the constructor.
    Extras,
    /// Exactly one of (A1), (A2) without (F).
    C1,
    /// Exactly one of (A1), (A2) with (F), but `5 ∉ P`, `4 ∉ Q` and `5 ∈ Q`.
    C2,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Transitivity => "transitivity",
            Clause::Symmetric => "symmetric",
            Clause::Extras => "extras",
            Clause::C1 => "c1",
            Clause::C2 => "c2",
        })
    }
}

/// Amalgamation strength. Each level includes the checks of the ones below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmalgamMode {
    Ap,
    Sap,
    Super,
}

impl AmalgamMode {
    pub fn token(self) -> &'static str {
        match self {
            AmalgamMode::Ap => "ap",
            AmalgamMode::Sap => "sap",
            AmalgamMode::Super => "super",
        }
    }

    pub fn from_token(s: &str) -> Option<AmalgamMode> {
        [AmalgamMode::Ap, AmalgamMode::Sap, AmalgamMode::Super].into_iter().find(|m| m.token() == s)
    }
}

pub fn admissible_case(t: &Theory) -> Result<CaseTag, Error> {
    if !t.transitive {
        return Err(Error::Inadmissible(Clause::Transitivity));
    }
    if t.leq.contains(Prop::Symmetric) || t.ll.contains(Prop::Symmetric) {
        return Err(Error::Inadmissible(Clause::Symmetric));
    }
    if !t.extras.is_empty() {
        return Err(Error::Inadmissible(Clause::Extras));
    }
    let a1 = t.has(Condition::A1);
    let a2 = t.has(Condition::A2);
    match (a1, a2) {
        (true, true) => return Ok(CaseTag::CaseIII),
        (false, false) => return Ok(CaseTag::CaseB),
        _ => {}
    }
    if !t.has(Condition::Finer) {
        return Err(Error::Inadmissible(Clause::C1));
    }
    let c2 = t.leq.contains(Prop::Antisymmetric)
        || t.ll.contains(Prop::Antireflexive)
        || !t.ll.contains(Prop::Antisymmetric);
    if !c2 {
        return Err(Error::Inadmissible(Clause::C2));
    }
    Ok(if a2 { CaseTag::CaseI } else { CaseTag::CaseII })
}

fn four_term(lay: &Layout, ra: &Relation, rb: &Relation) -> Relation {
    let n = lay.len();
    let ma = ra.map(&lay.a_to_d, n);
    let mb = rb.map(&lay.b_to_d, n);
    let mut out = ma.union(&mb);
    out.union_with(&ma.compose(&mb));
    out.union_with(&mb.compose(&ma));
    out
}

/// `≤_A ∪ ≤_B ∪ ≤_A∘≤_B ∪ ≤_B∘≤_A` over `A ∪ B`.
pub(crate) fn leq_union(lay: &Layout, a: &Structure, b: &Structure) -> Relation {
    four_term(lay, a.leq(), b.leq())
}

/// `≪_D`: the four-term union, plus the cross compositions (A1) and (A2) force.
pub(crate) fn ll_union(lay: &Layout, a: &Structure, b: &Structure, case: CaseTag) -> Relation {
    let mut out = four_term(lay, a.ll(), b.ll());
    if case == CaseTag::CaseB {
        return out;
    }
    let n = lay.len();
    let (lla, llb) = (a.ll().map(&lay.a_to_d, n), b.ll().map(&lay.b_to_d, n));
    let (lea, leb) = (a.leq().map(&lay.a_to_d, n), b.leq().map(&lay.b_to_d, n));
    // (A2) in D needs ≪∘≤ across the arms, (A1) needs ≤∘≪
    if matches!(case, CaseTag::CaseI | CaseTag::CaseIII) {
        out.union_with(&lla.compose(&leb));
        out.union_with(&llb.compose(&lea));
    }
    if matches!(case, CaseTag::CaseII | CaseTag::CaseIII) {
        out.union_with(&lea.compose(&llb));
        out.union_with(&leb.compose(&lla));
    }
    out
}

/// The four-term union for `≤` over `A ∪ B`.
pub fn amalgamate_leq(v: &VFormation) -> BinRel {
    let lay = v.layout();
    let rel = leq_union(&lay, v.a(), v.b());
    BinRel::from_relation(lay.universe, rel)
}

fn require_model(s: &Structure, t: &Theory, which: &str) -> Result<(), Error> {
    let r = validate(s, t);
    if r.ok() {
        Ok(())
    } else {
        let mut tagged = Report::new();
        for v in r.violations {
            tagged.push(format!("{which}.{}", v.axiom), v.witness);
        }
        Err(Error::NotAModel(Box::new(tagged)))
    }
}

pub(crate) fn require_models(v: &VFormation, t: &Theory) -> Result<(), Error> {
    require_model(v.a(), t, "A")?;
    require_model(v.b(), t, "B")?;
    require_model(v.c(), t, "C")
}

/// Composition-union amalgam over `A ∪ B`, verified at [`AmalgamMode::Super`].
///
/// Operations must be declared `≤`-preserving; operations preserving only
/// `≪` are rejected because amalgamation can fail for them.
pub fn amalgamate(v: &VFormation, t: &Theory) -> Result<Amalgam, Error> {
    let case = admissible_case(t)?;
    let bad_ops: Vec<&str> = v
        .a()
        .ops()
        .keys()
        .filter(|name| !t.ops.get(*name).is_some_and(|p| p.leq))
        .map(String::as_str)
        .collect();
    if !bad_ops.is_empty() {
        return Err(Error::UnsupportedOperations(format!(
            "{} must be declared ≤-preserving",
            bad_ops.join(", ")
        )));
    }
    require_models(v, t)?;
    let lay = v.layout();
    let (a, b) = (v.a(), v.b());
    let leq = leq_union(&lay, a, b);
    let ll = ll_union(&lay, a, b, case);
    let ops = lay.union_ops(a, b);
    let iota = lay.iota(a);
    let kappa = lay.kappa(b);
    let d = Structure::from_sorted(lay.universe, leq, ll, ops);
    let w = Amalgam { d, iota, kappa };
    let report = verify(v, &w, t, AmalgamMode::Super);
    if !report.ok() {
        return Err(Error::VerificationFailed(Box::new(report)));
    }
    Ok(w)
}

/// Plain union of both relations over `A ∪ B`, for theories without transitivity.
pub fn free_amalgamate(v: &VFormation, t: &Theory) -> Result<Amalgam, Error> {
    if t.transitive {
        return Err(Error::TheoryRequiresTransitivity);
    }
    require_models(v, t)?;
    let lay = v.layout();
    let (a, b) = (v.a(), v.b());
    let leq = lay.union_of(a.leq(), b.leq());
    let ll = lay.union_of(a.ll(), b.ll());
    let ops = lay.union_ops(a, b);
    let iota = lay.iota(a);
    let kappa = lay.kappa(b);
    let w = Amalgam { d: Structure::from_sorted(lay.universe, leq, ll, ops), iota, kappa };
    let report = verify(v, &w, t, AmalgamMode::Sap);
    if !report.ok() {
        return Err(Error::VerificationFailed(Box::new(report)));
    }
    Ok(w)
}

/// Checks `w` as an amalgam of `v` at the requested level.
///
/// In order: `D ⊨ T`; `ι`, `κ` are embeddings (`iota:*`, `kappa:*`); they
/// agree on `C` (`AGREE`); for SAP the images meet only in `C` (`SAP`); for
/// SUPER every cross pair `ι(a) ≤ κ(b)` has an interpolant `a ≤ c ≤ b`
/// (`SUPER`), and dually (`SUPER_DUAL`). Witnesses are `(a, b)`.
pub fn verify(v: &VFormation, w: &Amalgam, t: &Theory, mode: AmalgamMode) -> Report {
    let mut report = validate(&w.d, t);
    let (a, b, c) = (v.a(), v.b(), v.c());
    let maps = [("iota", a, &w.iota), ("kappa", b, &w.kappa)].map(|(name, src, f)| {
        let idx = src.index_map(f, &w.d);
        (name, src, idx)
    });
    let mut idx_maps: Vec<Vec<usize>> = Vec::with_capacity(2);
    for (name, src, idx) in maps {
        match idx {
            None => {
                report.push(format!("{name}:TOTAL"), Vec::new());
                return report;
            }
            Some(idx) => {
                for viol in embedding_report_idx(&idx, src, &w.d).violations {
                    report.push(format!("{name}:{}", viol.axiom), viol.witness);
                }
                idx_maps.push(idx);
            }
        }
    }
    let (ia, kb) = (&idx_maps[0], &idx_maps[1]);
    let a_of = |x: &Label| a.index_of(x.as_str()).unwrap();
    let b_of = |x: &Label| b.index_of(x.as_str()).unwrap();
    if let Some(x) = c.universe().iter().find(|x| ia[a_of(x)] != kb[b_of(x)]) {
        report.push("AGREE", vec![x.clone()]);
    }
    if mode == AmalgamMode::Ap {
        return report;
    }
    let a_out: Vec<usize> = (0..a.len()).filter(|&i| !c.contains_label(a.label(i).as_str())).collect();
    let b_out: Vec<usize> = (0..b.len()).filter(|&j| !c.contains_label(b.label(j).as_str())).collect();
    'sap: for &i in &a_out {
        for &j in &b_out {
            if ia[i] == kb[j] {
                report.push("SAP", vec![a.label(i).clone(), b.label(j).clone()]);
                break 'sap;
            }
        }
    }
    if mode == AmalgamMode::Sap {
        return report;
    }
    let c_in_a: Vec<usize> = c.universe().iter().map(|x| a_of(x)).collect();
    let c_in_b: Vec<usize> = c.universe().iter().map(|x| b_of(x)).collect();
    let c_a_mask = c_in_a.iter().fold(0u64, |m, &i| m | 1 << i);
    let c_b_mask = c_in_b.iter().fold(0u64, |m, &j| m | 1 << j);
    // interpolants: a ≤A c ≤B b, read through C's two copies
    let interp = |from: &Structure, to: &Structure, from_c_mask: u64, x: usize, y: usize, c_from: &[usize], c_to: &[usize]| {
        let ups = from.leq().row(x) & from_c_mask;
        ones(ups).any(|ci| {
            let k = c_from.iter().position(|&p| p == ci).unwrap();
            to.leq().contains(c_to[k], y)
        })
    };
    let mut sup = None;
    let mut dual = None;
    for &i in &a_out {
        for &j in &b_out {
            if sup.is_none() && w.d.leq().contains(ia[i], kb[j]) && !interp(a, b, c_a_mask, i, j, &c_in_a, &c_in_b) {
                sup = Some((i, j));
            }
            if dual.is_none() && w.d.leq().contains(kb[j], ia[i]) && !interp(b, a, c_b_mask, j, i, &c_in_b, &c_in_a) {
                dual = Some((i, j));
            }
        }
    }
    if let Some((i, j)) = sup {
        report.push("SUPER", vec![a.label(i).clone(), b.label(j).clone()]);
    }
    if let Some((i, j)) = dual {
        report.push("SUPER_DUAL", vec![a.label(i).clone(), b.label(j).clone()]);
    }
    report
}

#[cfg(test)]
mod tests;
