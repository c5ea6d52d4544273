//! Finite structures `(S, ≤, ≪, f…)` and labeled binary relations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::relation::{Relation, MAX_ELEMENTS};
use crate::{Error, Label};

/// Element-to-element map, used for embeddings and renamings.
pub type LabelMap = BTreeMap<Label, Label>;

/// A binary relation over an explicit universe. The universe is kept sorted,
/// so index order is label order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinRel {
    universe: Vec<Label>,
    rel: Relation,
}

impl BinRel {
    pub fn new<'a>(
        universe: impl IntoIterator<Item = Label>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<BinRel, Error> {
        let universe = sorted_universe(universe)?;
        let mut rel = Relation::empty(universe.len());
        for (x, y) in pairs {
            rel.insert(lookup(&universe, x)?, lookup(&universe, y)?);
        }
        Ok(BinRel { universe, rel })
    }

    pub(crate) fn from_relation(universe: Vec<Label>, rel: Relation) -> BinRel {
        debug_assert_eq!(universe.len(), rel.len());
        debug_assert!(universe.windows(2).all(|w| w[0] < w[1]));
        BinRel { universe, rel }
    }

    pub fn universe(&self) -> &[Label] {
        &self.universe
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn contains(&self, x: &str, y: &str) -> bool {
        match (index_in(&self.universe, x), index_in(&self.universe, y)) {
            (Some(i), Some(j)) => self.rel.contains(i, j),
            _ => false,
        }
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Label, &Label)> + '_ {
        self.rel.pairs().map(|(x, y)| (&self.universe[x], &self.universe[y]))
    }

    pub fn len(&self) -> usize {
        self.rel.count()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }
}

/// Left-to-right composition: `x (R∘S) z` iff `x R y` and `y S z` for some `y`.
pub fn compose(r: &BinRel, s: &BinRel) -> Result<BinRel, Error> {
    if r.universe != s.universe {
        return Err(Error::UniverseMismatch);
    }
    Ok(BinRel { universe: r.universe.clone(), rel: r.rel.compose(&s.rel) })
}

pub fn transitive_closure(r: &BinRel) -> BinRel {
    BinRel { universe: r.universe.clone(), rel: r.rel.transitive_closure() }
}

pub(crate) fn index_in(universe: &[Label], x: &str) -> Option<usize> {
    universe.binary_search_by(|l| l.as_str().cmp(x)).ok()
}

fn lookup(universe: &[Label], x: &str) -> Result<usize, Error> {
    index_in(universe, x).ok_or_else(|| Error::UnknownLabel(Label::new(x).unwrap_or_else(|_| crate::l("?"))))
}

fn sorted_universe(universe: impl IntoIterator<Item = Label>) -> Result<Vec<Label>, Error> {
    let mut u: Vec<Label> = universe.into_iter().collect();
    u.sort();
    if let Some(w) = u.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateLabel(w[0].clone()));
    }
    if u.len() > MAX_ELEMENTS {
        return Err(Error::UniverseTooLarge(u.len(), MAX_ELEMENTS));
    }
    Ok(u)
}

/// A finite universe with `≤`, `≪` and total unary operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    universe: Vec<Label>,
    leq: Relation,
    ll: Relation,
    ops: BTreeMap<String, Vec<usize>>,
}

impl Structure {
    pub fn empty() -> Structure {
        Structure { universe: Vec::new(), leq: Relation::empty(0), ll: Relation::empty(0), ops: BTreeMap::new() }
    }

    pub fn builder<'a>(universe: impl IntoIterator<Item = &'a str>) -> StructureBuilder {
        StructureBuilder::new(universe)
    }

    /// Assembles a structure from index-level parts in any label order.
    pub fn from_parts(
        universe: Vec<Label>,
        leq: Relation,
        ll: Relation,
        ops: BTreeMap<String, Vec<usize>>,
    ) -> Result<Structure, Error> {
        let n = universe.len();
        if n > MAX_ELEMENTS {
            return Err(Error::UniverseTooLarge(n, MAX_ELEMENTS));
        }
        assert_eq!(leq.len(), n);
        assert_eq!(ll.len(), n);
        for (name, table) in &ops {
            if table.len() != n {
                return Err(Error::PartialOperation { op: name.clone(), at: universe[table.len().min(n - 1)].clone() });
            }
            if let Some((x, _)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::PartialOperation { op: name.clone(), at: universe[x].clone() });
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| universe[a].cmp(&universe[b]));
        if let Some(w) = order.windows(2).find(|w| universe[w[0]] == universe[w[1]]) {
            return Err(Error::DuplicateLabel(universe[w[0]].clone()));
        }
        if order.iter().enumerate().all(|(i, &o)| i == o) {
            return Ok(Structure { universe, leq, ll, ops });
        }
        let mut new_index = alloc::vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let universe = order.iter().map(|&o| universe[o].clone()).collect();
        let ops = ops
            .into_iter()
            .map(|(name, table)| (name, order.iter().map(|&o| new_index[table[o]]).collect()))
            .collect();
        Ok(Structure { universe, leq: leq.map(&new_index, n), ll: ll.map(&new_index, n), ops })
    }

    /// Caller guarantees a strictly increasing universe and well-formed ops.
    pub(crate) fn from_sorted(
        universe: Vec<Label>,
        leq: Relation,
        ll: Relation,
        ops: BTreeMap<String, Vec<usize>>,
    ) -> Structure {
        debug_assert!(universe.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(ops.values().all(|t| t.len() == universe.len() && t.iter().all(|&v| v < universe.len())));
        Structure { universe, leq, ll, ops }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.universe.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    /// Labels in increasing order; positions are element indices.
    pub fn universe(&self) -> &[Label] {
        &self.universe
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.universe[i]
    }

    pub fn index_of(&self, x: &str) -> Option<usize> {
        index_in(&self.universe, x)
    }

    pub fn contains_label(&self, x: &str) -> bool {
        self.index_of(x).is_some()
    }

    #[inline]
    pub fn leq(&self) -> &Relation {
        &self.leq
    }

    #[inline]
    pub fn ll(&self) -> &Relation {
        &self.ll
    }

    pub fn ops(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Option<&[usize]> {
        self.ops.get(name).map(Vec::as_slice)
    }

    pub fn leq_rel(&self) -> BinRel {
        BinRel::from_relation(self.universe.clone(), self.leq.clone())
    }

    pub fn ll_rel(&self) -> BinRel {
        BinRel::from_relation(self.universe.clone(), self.ll.clone())
    }

    /// Same universe and ops with `≤` replaced.
    pub fn with_leq(&self, leq: Relation) -> Structure {
        assert_eq!(leq.len(), self.len());
        Structure { leq, ..self.clone() }
    }

    /// Same universe and ops with `≪` replaced.
    pub fn with_ll(&self, ll: Relation) -> Structure {
        assert_eq!(ll.len(), self.len());
        Structure { ll, ..self.clone() }
    }

    pub fn without_ops(&self) -> Structure {
        Structure { ops: BTreeMap::new(), ..self.clone() }
    }

    /// Induced substructure on `keep` (ascending indices). Fails if `keep` is
    /// not closed under the operations.
    pub fn induced(&self, keep: &[usize]) -> Result<Structure, Error> {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut new_index = alloc::vec![usize::MAX; self.len()];
        for (i, &k) in keep.iter().enumerate() {
            new_index[k] = i;
        }
        let mut ops = BTreeMap::new();
        for (name, table) in &self.ops {
            let mut t = Vec::with_capacity(keep.len());
            for &k in keep {
                let img = new_index[table[k]];
                if img == usize::MAX {
                    return Err(Error::PartialOperation { op: name.clone(), at: self.universe[k].clone() });
                }
                t.push(img);
            }
            ops.insert(name.clone(), t);
        }
        Ok(Structure {
            universe: keep.iter().map(|&k| self.universe[k].clone()).collect(),
            leq: self.leq.restrict(keep),
            ll: self.ll.restrict(keep),
            ops,
        })
    }

    /// Induced substructure on a bit mask of indices.
    pub fn induced_mask(&self, mask: u64) -> Result<Structure, Error> {
        let keep: Vec<usize> = crate::relation::ones(mask).collect();
        self.induced(&keep)
    }

    /// Renames every element; the universe is re-sorted afterwards.
    pub fn relabel(&self, mut rename: impl FnMut(usize, &Label) -> Label) -> Result<Structure, Error> {
        let universe = self.universe.iter().enumerate().map(|(i, l)| rename(i, l)).collect();
        Structure::from_parts(universe, self.leq.clone(), self.ll.clone(), self.ops.clone())
    }

    /// Index map of a label map from `self` into `target`, if total and in range.
    pub fn index_map(&self, f: &LabelMap, target: &Structure) -> Option<Vec<usize>> {
        // keys are sorted like the universe, so a total map walks in step with it
        if f.len() == self.len() && f.keys().zip(&self.universe).all(|(k, x)| k == x) {
            return f.values().map(|y| target.index_of(y.as_str())).collect();
        }
        self.universe
            .iter()
            .map(|x| f.get(x).and_then(|y| target.index_of(y.as_str())))
            .collect()
    }

    /// The identity map on this structure's labels.
    pub fn identity_map(&self) -> LabelMap {
        self.universe.iter().map(|x| (x.clone(), x.clone())).collect()
    }
}

/// Incremental construction by label; errors surface at [`StructureBuilder::build`].
#[derive(Clone, Debug)]
pub struct StructureBuilder {
    universe: Vec<Label>,
    leq: Vec<(String, String)>,
    ll: Vec<(String, String)>,
    ops: BTreeMap<String, Vec<(String, String)>>,
    reflexive_leq: bool,
    reflexive_ll: bool,
    error: Option<Error>,
}

impl StructureBuilder {
    fn new<'a>(universe: impl IntoIterator<Item = &'a str>) -> StructureBuilder {
        let mut error = None;
        let labels = universe
            .into_iter()
            .filter_map(|s| match Label::new(s) {
                Ok(l) => Some(l),
                Err(e) => {
                    error.get_or_insert(e);
                    None
                }
            })
            .collect();
        StructureBuilder {
            universe: labels,
            leq: Vec::new(),
            ll: Vec::new(),
            ops: BTreeMap::new(),
            reflexive_leq: false,
            reflexive_ll: false,
            error,
        }
    }

    pub fn leq(mut self, x: &str, y: &str) -> Self {
        self.leq.push((x.into(), y.into()));
        self
    }

    pub fn ll(mut self, x: &str, y: &str) -> Self {
        self.ll.push((x.into(), y.into()));
        self
    }

    pub fn leq_pairs<'a>(mut self, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        self.leq.extend(pairs.into_iter().map(|(x, y)| (x.into(), y.into())));
        self
    }

    pub fn ll_pairs<'a>(mut self, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        self.ll.extend(pairs.into_iter().map(|(x, y)| (x.into(), y.into())));
        self
    }

    /// Adds the diagonal to `≤`.
    pub fn reflexive_leq(mut self) -> Self {
        self.reflexive_leq = true;
        self
    }

    /// Adds the diagonal to `≪`.
    pub fn reflexive_ll(mut self) -> Self {
        self.reflexive_ll = true;
        self
    }

    pub fn op<'a>(mut self, name: &str, graph: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        self.ops
            .entry(name.into())
            .or_default()
            .extend(graph.into_iter().map(|(x, y)| (x.into(), y.into())));
        self
    }

    pub fn build(self) -> Result<Structure, Error> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let universe = sorted_universe(self.universe)?;
        let n = universe.len();
        let rel = |pairs: &[(String, String)], diag: bool| -> Result<Relation, Error> {
            let mut r = if diag { Relation::identity(n) } else { Relation::empty(n) };
            for (x, y) in pairs {
                r.insert(lookup(&universe, x)?, lookup(&universe, y)?);
            }
            Ok(r)
        };
        let leq = rel(&self.leq, self.reflexive_leq)?;
        let ll = rel(&self.ll, self.reflexive_ll)?;
        let mut ops = BTreeMap::new();
        for (name, graph) in self.ops {
            let mut table = alloc::vec![usize::MAX; n];
            for (x, y) in &graph {
                table[lookup(&universe, x)?] = lookup(&universe, y)?;
            }
            if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
                return Err(Error::PartialOperation { op: name, at: universe[i].clone() });
            }
            ops.insert(name, table);
        }
        Ok(Structure { universe, leq, ll, ops })
    }
}
