//! Amalgamation inputs (V-formations) and outputs (amalgams).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::relation::Relation;
use crate::validate::is_embedding;
use crate::{Error, Label, LabelMap, Structure};

/// `C ⊆ A, B` with `A ∩ B = C`, all embeddings being inclusions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VFormation {
    a: Structure,
    b: Structure,
    c: Structure,
}

impl VFormation {
    pub fn new(a: Structure, b: Structure, c: Structure) -> Result<VFormation, Error> {
        let keep_a = common_indices(&a, &b, &c).ok_or_else(|| {
            Error::InvalidVFormation(String::from("universe of C must equal the intersection of A and B"))
        })?;
        if !a.ops().keys().eq(c.ops().keys()) || !b.ops().keys().eq(c.ops().keys()) {
            return Err(Error::InvalidVFormation(String::from("A, B and C must share one operation signature")));
        }
        let keep_b: Vec<usize> = c.universe().iter().map(|x| b.index_of(x.as_str()).unwrap()).collect();
        for (arm, s, keep) in [("A", &a, &keep_a), ("B", &b, &keep_b)] {
            check_induced(arm, s, keep, &c)?;
        }
        Ok(VFormation { a, b, c })
    }

    pub fn a(&self) -> &Structure {
        &self.a
    }

    pub fn b(&self) -> &Structure {
        &self.b
    }

    pub fn c(&self) -> &Structure {
        &self.c
    }

    pub fn into_parts(self) -> (Structure, Structure, Structure) {
        (self.a, self.b, self.c)
    }

    /// Index bookkeeping for the universe `A ∪ B`.
    pub(crate) fn layout(&self) -> Layout {
        Layout::new(&self.a, &self.b)
    }

    /// The same instance with the arms exchanged.
    pub fn swapped(&self) -> VFormation {
        VFormation { a: self.b.clone(), b: self.a.clone(), c: self.c.clone() }
    }
}

/// Indices in `a` of `A ∩ B`, provided that intersection is exactly `C`'s universe.
fn common_indices(a: &Structure, b: &Structure, c: &Structure) -> Option<Vec<usize>> {
    let (ua, ub, uc) = (a.universe(), b.universe(), c.universe());
    let mut keep = Vec::with_capacity(uc.len());
    let (mut i, mut j) = (0, 0);
    while i < ua.len() && j < ub.len() {
        match ua[i].cmp(&ub[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                if uc.get(keep.len()) != Some(&ua[i]) {
                    return None;
                }
                keep.push(i);
                i += 1;
                j += 1;
            }
        }
    }
    (keep.len() == uc.len()).then_some(keep)
}

/// `s` restricted to `keep` is `c`, operations included.
fn check_induced(arm: &str, s: &Structure, keep: &[usize], c: &Structure) -> Result<(), Error> {
    for (name, table) in s.ops() {
        let ct = c.op(name).expect("shared signature");
        for (i, &k) in keep.iter().enumerate() {
            let img = table[k];
            let Some(pos) = keep.iter().position(|&x| x == img) else {
                let e = Error::PartialOperation { op: name.clone(), at: s.label(k).clone() };
                return Err(Error::InvalidVFormation(format!("C is not closed in {arm}: {e}")));
            };
            if ct[i] != pos {
                return Err(Error::InvalidVFormation(format!("C is not the induced substructure of {arm}")));
            }
        }
    }
    let same = keep.iter().enumerate().all(|(i, &x)| {
        keep.iter().enumerate().all(|(j, &y)| {
            s.leq().contains(x, y) == c.leq().contains(i, j) && s.ll().contains(x, y) == c.ll().contains(i, j)
        })
    });
    if !same {
        return Err(Error::InvalidVFormation(format!("C is not the induced substructure of {arm}")));
    }
    Ok(())
}

/// `A ∪ B` with the arms' index maps into it.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub universe: Vec<Label>,
    pub a_to_d: Vec<usize>,
    pub b_to_d: Vec<usize>,
}

impl Layout {
    pub fn new(a: &Structure, b: &Structure) -> Layout {
        let (ua, ub) = (a.universe(), b.universe());
        let mut universe = Vec::with_capacity(ua.len() + ub.len());
        let mut a_to_d = Vec::with_capacity(ua.len());
        let mut b_to_d = Vec::with_capacity(ub.len());
        let (mut i, mut j) = (0, 0);
        while i < ua.len() || j < ub.len() {
            let next = match (ua.get(i), ub.get(j)) {
                (Some(x), Some(y)) => x.cmp(y),
                (Some(_), None) => core::cmp::Ordering::Less,
                _ => core::cmp::Ordering::Greater,
            };
            let d = universe.len();
            match next {
                core::cmp::Ordering::Less => {
                    universe.push(ua[i].clone());
                    a_to_d.push(d);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    universe.push(ub[j].clone());
                    b_to_d.push(d);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    universe.push(ua[i].clone());
                    a_to_d.push(d);
                    b_to_d.push(d);
                    i += 1;
                    j += 1;
                }
            }
        }
        Layout { universe, a_to_d, b_to_d }
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    /// Union of the arms' images of a relation.
    pub fn union_of(&self, ra: &Relation, rb: &Relation) -> Relation {
        let n = self.len();
        let mut out = ra.map(&self.a_to_d, n);
        out.union_with(&rb.map(&self.b_to_d, n));
        out
    }

    /// Ops on `A ∪ B` as the union of the arms' graphs.
    pub fn union_ops(&self, a: &Structure, b: &Structure) -> BTreeMap<String, Vec<usize>> {
        let mut ops = BTreeMap::new();
        for (name, fa) in a.ops() {
            let fb = b.op(name).expect("shared signature");
            let mut table = alloc::vec![0; self.len()];
            for (x, &y) in fa.iter().enumerate() {
                table[self.a_to_d[x]] = self.a_to_d[y];
            }
            for (x, &y) in fb.iter().enumerate() {
                table[self.b_to_d[x]] = self.b_to_d[y];
            }
            ops.insert(name.clone(), table);
        }
        ops
    }

    pub fn iota(&self, a: &Structure) -> LabelMap {
        a.universe().iter().zip(&self.a_to_d).map(|(x, &d)| (x.clone(), self.universe[d].clone())).collect()
    }

    pub fn kappa(&self, b: &Structure) -> LabelMap {
        b.universe().iter().zip(&self.b_to_d).map(|(x, &d)| (x.clone(), self.universe[d].clone())).collect()
    }
}

/// A candidate `D` with embeddings `ι: A → D`, `κ: B → D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    pub d: Structure,
    pub iota: LabelMap,
    pub kappa: LabelMap,
}

/// Result of [`normalize_instance`]: the normalized V-formation plus the
/// renamings of the original arms into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub vformation: VFormation,
    pub a_renaming: LabelMap,
    pub b_renaming: LabelMap,
}

/// Turns `i1: C → A`, `k1: C → B` into inclusions with `A ∩ B = C`.
///
/// Elements in the image of `C` take the `C` label; the rest of `A` gets the
/// suffix `@a` and the rest of `B` the suffix `@b` (repeated if the result
/// would clash with a `C` label).
pub fn normalize_instance(
    a: &Structure,
    b: &Structure,
    c: &Structure,
    i1: &LabelMap,
    k1: &LabelMap,
) -> Result<Normalized, Error> {
    for (map, tgt) in [(i1, a), (k1, b)] {
        let r = is_embedding(map, c, tgt);
        if !r.ok() {
            return Err(Error::NotAnEmbedding(Box::new(r)));
        }
    }
    let rename = |arm: &Structure, emb: &LabelMap, suffix: &str| -> LabelMap {
        let inverse: BTreeMap<&Label, &Label> = emb.iter().map(|(x, y)| (y, x)).collect();
        arm.universe()
            .iter()
            .map(|x| {
                let new = match inverse.get(x) {
                    Some(cx) => (*cx).clone(),
                    None => {
                        let mut l = x.suffixed(suffix);
                        while c.contains_label(l.as_str()) {
                            l = l.suffixed(suffix);
                        }
                        l
                    }
                };
                (x.clone(), new)
            })
            .collect()
    };
    let a_renaming = rename(a, i1, "@a");
    let b_renaming = rename(b, k1, "@b");
    let a2 = a.relabel(|_, x| a_renaming[x].clone())?;
    let b2 = b.relabel(|_, x| b_renaming[x].clone())?;
    let vformation = VFormation::new(a2, b2, c.clone())?;
    Ok(Normalized { vformation, a_renaming, b_renaming })
}
