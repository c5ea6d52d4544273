//! Exhaustive search for amalgams.
//!
//! Over-union mode fixes the universe to `A ∪ B` with inclusions and solves
//! only the cross cells. General mode also tries identifying points of
//! `A \ C` with points of `B \ C` and adding fresh points `@x1`, `@x2`, ….
//! Candidates are tried smallest first (fresh count, then identifications in
//! lexicographic order), and inside a candidate the branch order is fixed, so
//! the first witness is deterministic.
//!
//! All supported theories are universal, so an amalgam restricts to one over
//! the images of `A` and `B`. Exhaustion without fresh points is therefore a
//! complete refutation for SAP and SUPER, and for AP when identification is
//! allowed; [`Scope`] records which case applies.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::construct::{require_models, verify, AmalgamMode};
use crate::relation::{bit, Relation};
use crate::{Amalgam, Error, Label, LabelMap, Structure, Theory, VFormation};

mod solver;

pub use solver::{FalseFirst, ValueOrder};
use solver::{Dfs, Outcome, Rel, Rules, State, Var};

/// Wall-clock budget hook. The core crate has no clock of its own.
pub trait Clock {
    fn expired(&self) -> bool;
}

/// Never expires.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn expired(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchConfig {
    pub allow_identification: bool,
    pub extra_elements: usize,
    /// Deterministic cap on branch nodes; exceeding it reports
    /// [`Error::TimeBudgetExceeded`].
    pub max_nodes: Option<u64>,
    /// Wall-clock budget in milliseconds, enforced through a [`Clock`].
    pub time_budget_ms: Option<u64>,
}

impl SearchConfig {
    /// Universe fixed to `A ∪ B`, embeddings are inclusions.
    pub const OVER_UNION: SearchConfig =
        SearchConfig { allow_identification: false, extra_elements: 0, max_nodes: None, time_budget_ms: None };

    pub fn general(allow_identification: bool, extra_elements: usize) -> SearchConfig {
        SearchConfig { allow_identification, extra_elements, ..SearchConfig::OVER_UNION }
    }

    pub fn is_over_union(&self) -> bool {
        !self.allow_identification && self.extra_elements == 0
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::OVER_UNION
    }
}

/// What an exhausted search rules out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    /// No amalgam of any size exists.
    Complete,
    /// No amalgam exists within the configured bound.
    AtBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Witness { amalgam: Amalgam, nodes: u64 },
    Exhausted { nodes: u64, bound: SearchConfig, scope: Scope },
}

impl SearchResult {
    pub fn is_witness(&self) -> bool {
        matches!(self, SearchResult::Witness { .. })
    }

    pub fn witness(&self) -> Option<&Amalgam> {
        match self {
            SearchResult::Witness { amalgam, .. } => Some(amalgam),
            SearchResult::Exhausted { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchResult::Witness { nodes, .. } | SearchResult::Exhausted { nodes, .. } => *nodes,
        }
    }
}

pub fn search(v: &VFormation, t: &Theory, mode: AmalgamMode, cfg: &SearchConfig) -> Result<SearchResult, Error> {
    search_with(v, t, mode, cfg, &NoClock, &mut FalseFirst)
}

/// Superamalgamation over `A ∪ B`. Exhaustion here is a genuine refutation.
pub fn decide_superamalgamation_over_union(v: &VFormation, t: &Theory) -> Result<SearchResult, Error> {
    search(v, t, AmalgamMode::Super, &SearchConfig::OVER_UNION)
}

/// [`search`] with an explicit clock and branch value order.
pub fn search_with(
    v: &VFormation,
    t: &Theory,
    mode: AmalgamMode,
    cfg: &SearchConfig,
    clock: &dyn Clock,
    order: &mut dyn ValueOrder,
) -> Result<SearchResult, Error> {
    require_models(v, t)?;
    let identify = cfg.allow_identification && mode == AmalgamMode::Ap;
    let (a, b, c) = (v.a(), v.b(), v.c());
    let a_out: Vec<usize> = (0..a.len()).filter(|&i| !c.contains_label(a.label(i).as_str())).collect();
    let b_out: Vec<usize> = (0..b.len()).filter(|&j| !c.contains_label(b.label(j).as_str())).collect();
    let op_names: Vec<&str> = c.ops().keys().map(String::as_str).collect();
    let rules = Rules::new(t, &op_names);
    let mut nodes = 0;
    for fresh in 0..=cfg.extra_elements {
        let mut matching = vec![None; a_out.len()];
        loop {
            if clock.expired() {
                return Err(Error::TimeBudgetExceeded { nodes });
            }
            if let Some(shape) = Shape::build(v, &a_out, &b_out, &matching, fresh, &op_names) {
                let state = shape.initial(v, mode, &op_names);
                let vars = shape.vars(&op_names);
                let mut dfs = Dfs {
                    rules: &rules,
                    vars: &vars,
                    n: shape.n,
                    nodes: 0,
                    max_nodes: cfg.max_nodes.map(|m| m.saturating_sub(nodes)),
                    clock,
                    order: &mut *order,
                };
                let mut accept = |st: &State| {
                    let w = shape.amalgam(st, &op_names);
                    let ok = verify(v, &w, t, mode).ok();
                    debug_assert!(ok, "solver produced an unverified amalgam");
                    ok
                };
                let outcome = dfs.run(state, 0, &mut accept);
                nodes += dfs.nodes;
                match outcome {
                    Outcome::Found(st) => {
                        return Ok(SearchResult::Witness { amalgam: shape.amalgam(&st, &op_names), nodes });
                    }
                    Outcome::Budget => return Err(Error::TimeBudgetExceeded { nodes }),
                    Outcome::Exhausted => {}
                }
            }
            if !identify || !next_matching(&mut matching, b_out.len()) {
                break;
            }
        }
    }
    let complete = cfg.extra_elements == 0 && (mode != AmalgamMode::Ap || cfg.allow_identification);
    Ok(SearchResult::Exhausted { nodes, bound: *cfg, scope: if complete { Scope::Complete } else { Scope::AtBound } })
}

/// Every way to add `extra` points to a relational model of `t`, as
/// `(≤, ≪)` over the old points followed by the new ones. The old points keep
/// their relations; order is the solver's branch order.
pub(crate) fn completions(base: &Structure, t: &Theory, extra: usize) -> Vec<(Relation, Relation)> {
    let rules = Rules::new(&t.relational(), &[]);
    let m = base.len();
    let n = m + extra;
    let mut st = State::new(n, 0);
    for x in 0..m {
        for y in 0..m {
            st.set(Rel::Leq, x, y, base.leq().contains(x, y));
            st.set(Rel::Ll, x, y, base.ll().contains(x, y));
        }
    }
    let mut vars = Vec::new();
    for rel in [Rel::Leq, Rel::Ll] {
        for x in 0..n {
            for y in 0..n {
                if x >= m || y >= m {
                    vars.push(Var::Cell(rel, x, y));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut dfs = Dfs { rules: &rules, vars: &vars, n, nodes: 0, max_nodes: None, clock: &NoClock, order: &mut FalseFirst };
    dfs.run(st, 0, &mut |st: &State| {
        out.push((Relation::from_rows(st.leq_k.clone()), Relation::from_rows(st.ll_k.clone())));
        false
    });
    out
}

/// The first model of `t` over `base` plus the points `fresh` in the search
/// order `order`; `base` keeps its relations. A random order samples models.
pub fn extend_model(
    base: &Structure,
    t: &Theory,
    fresh: &[Label],
    order: &mut dyn ValueOrder,
) -> Result<Option<Structure>, Error> {
    if !t.ops.is_empty() || !base.ops().is_empty() {
        return Err(Error::UnsupportedOperations("extend_model".into()));
    }
    let r = crate::validate(base, t);
    if !r.ok() {
        return Err(Error::NotAModel(alloc::boxed::Box::new(r)));
    }
    let rules = Rules::new(&t.relational(), &[]);
    let m = base.len();
    let n = m + fresh.len();
    if n > crate::MAX_ELEMENTS {
        return Err(Error::UniverseTooLarge(n, crate::MAX_ELEMENTS));
    }
    let mut universe = base.universe().to_vec();
    universe.extend(fresh.iter().cloned());
    // reject label clashes before searching
    Structure::from_parts(universe.clone(), Relation::empty(n), Relation::empty(n), BTreeMap::new())?;
    let mut st = State::new(n, 0);
    let mut vars = Vec::new();
    for (rel, r) in [(Rel::Leq, base.leq()), (Rel::Ll, base.ll())] {
        for x in 0..n {
            for y in 0..n {
                if x < m && y < m {
                    st.set(rel, x, y, r.contains(x, y));
                } else {
                    vars.push(Var::Cell(rel, x, y));
                }
            }
        }
    }
    let mut found = None;
    let mut dfs = Dfs { rules: &rules, vars: &vars, n, nodes: 0, max_nodes: None, clock: &NoClock, order };
    dfs.run(st, 0, &mut |st: &State| {
        let s = Structure::from_parts(
            universe.clone(),
            Relation::from_rows(st.leq_k.clone()),
            Relation::from_rows(st.ll_k.clone()),
            BTreeMap::new(),
        )
        .expect("labels checked");
        let ok = t.extras.is_empty() || crate::validate(&s, t).ok();
        if ok {
            found = Some(s);
        }
        ok
    });
    Ok(found)
}

/// Next injective partial map `A \ C → B \ C` in lexicographic order (`None` first).
fn next_matching(m: &mut [Option<usize>], targets: usize) -> bool {
    let mut i = m.len();
    while i > 0 {
        i -= 1;
        let taken = m[..i].iter().flatten().fold(0u64, |acc, &v| acc | bit(v));
        let start = match m[i] {
            None => 0,
            Some(v) => v + 1,
        };
        if let Some(v) = (start..targets).find(|&v| taken & bit(v) == 0) {
            m[i] = Some(v);
            // reset the tail to its least value
            for slot in m[i + 1..].iter_mut() {
                *slot = None;
            }
            return true;
        }
        m[i] = None;
    }
    false
}

/// One candidate universe: `A`, then unmatched `B \ C`, then fresh points.
struct Shape {
    n: usize,
    labels: Vec<Label>,
    a_idx: Vec<usize>,
    b_idx: Vec<usize>,
    fresh_from: usize,
    ops: Vec<Vec<Option<usize>>>,
    iota: LabelMap,
    kappa: LabelMap,
}

impl Shape {
    fn build(
        v: &VFormation,
        a_out: &[usize],
        b_out: &[usize],
        matching: &[Option<usize>],
        fresh: usize,
        op_names: &[&str],
    ) -> Option<Shape> {
        let (a, b) = (v.a(), v.b());
        let mut labels: Vec<Label> = a.universe().to_vec();
        let a_idx: Vec<usize> = (0..a.len()).collect();
        let mut b_idx = vec![usize::MAX; b.len()];
        for (j, x) in b.universe().iter().enumerate() {
            if let Some(i) = a.index_of(x.as_str()) {
                b_idx[j] = i;
            }
        }
        for (k, m) in matching.iter().enumerate() {
            if let Some(t) = m {
                b_idx[b_out[*t]] = a_out[k];
            }
        }
        for j in 0..b.len() {
            if b_idx[j] == usize::MAX {
                b_idx[j] = labels.len();
                labels.push(b.label(j).clone());
            }
        }
        let fresh_from = labels.len();
        for k in 1..=fresh {
            let mut name = format!("@x{k}");
            while labels.iter().any(|l| l.as_str() == name) {
                name.insert(0, '@');
            }
            labels.push(Label::new(&name).expect("fresh label"));
        }
        let n = labels.len();
        if n > crate::MAX_ELEMENTS {
            return None;
        }
        let mut ops = Vec::with_capacity(op_names.len());
        for name in op_names {
            let mut table = vec![None; n];
            for (i, &y) in a.op(name).expect("shared signature").iter().enumerate() {
                table[a_idx[i]] = Some(a_idx[y]);
            }
            for (j, &y) in b.op(name).expect("shared signature").iter().enumerate() {
                let want = Some(b_idx[y]);
                match table[b_idx[j]] {
                    Some(_) if table[b_idx[j]] != want => return None,
                    _ => table[b_idx[j]] = want,
                }
            }
            ops.push(table);
        }
        let iota = a.universe().iter().zip(&a_idx).map(|(x, &i)| (x.clone(), labels[i].clone())).collect();
        let kappa = b.universe().iter().zip(&b_idx).map(|(x, &i)| (x.clone(), labels[i].clone())).collect();
        Some(Shape { n, labels, a_idx, b_idx, fresh_from, ops, iota, kappa })
    }

    fn initial(&self, v: &VFormation, mode: AmalgamMode, op_names: &[&str]) -> State {
        let mut st = State::new(self.n, op_names.len());
        st.ops = self.ops.clone();
        for (s, idx) in [(v.a(), &self.a_idx), (v.b(), &self.b_idx)] {
            for x in 0..s.len() {
                for y in 0..s.len() {
                    st.set(Rel::Leq, idx[x], idx[y], s.leq().contains(x, y));
                    st.set(Rel::Ll, idx[x], idx[y], s.ll().contains(x, y));
                }
            }
        }
        if mode == AmalgamMode::Super {
            // superamalgamation pins ≤ between the arms to the interpolated pairs
            let (a, b, c) = (v.a(), v.b(), v.c());
            let c_in_a: Vec<usize> = c.universe().iter().map(|x| a.index_of(x.as_str()).unwrap()).collect();
            let c_in_b: Vec<usize> = c.universe().iter().map(|x| b.index_of(x.as_str()).unwrap()).collect();
            for x in 0..a.len() {
                if c.contains_label(a.label(x).as_str()) {
                    continue;
                }
                for y in 0..b.len() {
                    if c.contains_label(b.label(y).as_str()) {
                        continue;
                    }
                    let up = (0..c.len()).any(|k| a.leq().contains(x, c_in_a[k]) && b.leq().contains(c_in_b[k], y));
                    let down = (0..c.len()).any(|k| b.leq().contains(y, c_in_b[k]) && a.leq().contains(c_in_a[k], x));
                    st.set(Rel::Leq, self.a_idx[x], self.b_idx[y], up);
                    st.set(Rel::Leq, self.b_idx[y], self.a_idx[x], down);
                }
            }
        }
        st
    }

    /// Fresh op values first, then cells among old points, then cells touching fresh points.
    fn vars(&self, op_names: &[&str]) -> Vec<Var> {
        let mut vars = Vec::new();
        for i in 0..op_names.len() {
            for x in self.fresh_from..self.n {
                vars.push(Var::Op(i, x));
            }
        }
        let m = self.fresh_from;
        for rel in [Rel::Leq, Rel::Ll] {
            for x in 0..m {
                for y in 0..m {
                    vars.push(Var::Cell(rel, x, y));
                }
            }
        }
        for rel in [Rel::Leq, Rel::Ll] {
            for x in 0..self.n {
                for y in 0..self.n {
                    if x >= m || y >= m {
                        vars.push(Var::Cell(rel, x, y));
                    }
                }
            }
        }
        vars
    }

    fn amalgam(&self, st: &State, op_names: &[&str]) -> Amalgam {
        let leq = Relation::from_rows(st.leq_k.clone());
        let ll = Relation::from_rows(st.ll_k.clone());
        let ops: BTreeMap<String, Vec<usize>> = op_names
            .iter()
            .zip(&st.ops)
            .map(|(name, t)| (String::from(*name), t.iter().map(|v| v.expect("assigned")).collect()))
            .collect();
        let d = Structure::from_parts(self.labels.clone(), leq, ll, ops).expect("well-formed candidate");
        Amalgam { d, iota: self.iota.clone(), kappa: self.kappa.clone() }
    }
}
