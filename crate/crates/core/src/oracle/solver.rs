//! Backtracking over undecided relation cells with eager propagation.
//!
//! Each relation is held as a pair of bit matrices: cells known to hold and
//! cells known not to hold. Propagation only ever adds consequences that every
//! model extending the current partial assignment must satisfy, so pruning
//! never loses a solution.

use alloc::vec::Vec;

use crate::relation::{bit, ones};
use crate::theory::{Condition, Preserves, Prop, Theory};
use crate::validate::antichain_in;

#[derive(Clone, Debug)]
pub(crate) struct State {
    pub leq_k: Vec<u64>,
    pub leq_f: Vec<u64>,
    pub ll_k: Vec<u64>,
    pub ll_f: Vec<u64>,
    pub ops: Vec<Vec<Option<usize>>>,
}

impl State {
    pub fn new(n: usize, op_count: usize) -> State {
        State {
            leq_k: alloc::vec![0; n],
            leq_f: alloc::vec![0; n],
            ll_k: alloc::vec![0; n],
            ll_f: alloc::vec![0; n],
            ops: alloc::vec![alloc::vec![None; n]; op_count],
        }
    }

    pub fn set(&mut self, rel: Rel, x: usize, y: usize, value: bool) {
        let (k, f) = self.rel_mut(rel);
        if value {
            k[x] |= bit(y);
        } else {
            f[x] |= bit(y);
        }
    }

    fn rel_mut(&mut self, rel: Rel) -> (&mut Vec<u64>, &mut Vec<u64>) {
        match rel {
            Rel::Leq => (&mut self.leq_k, &mut self.leq_f),
            Rel::Ll => (&mut self.ll_k, &mut self.ll_f),
        }
    }

    fn decided(&self, rel: Rel, x: usize, y: usize) -> bool {
        let (k, f) = match rel {
            Rel::Leq => (&self.leq_k, &self.leq_f),
            Rel::Ll => (&self.ll_k, &self.ll_f),
        };
        (k[x] | f[x]) & bit(y) != 0
    }

    fn conflict(&self) -> bool {
        self.leq_k.iter().zip(&self.leq_f).any(|(k, f)| k & f != 0)
            || self.ll_k.iter().zip(&self.ll_f).any(|(k, f)| k & f != 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rel {
    Leq,
    Ll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Var {
    Op(usize, usize),
    Cell(Rel, usize, usize),
}

/// Chooses the value tried first at each branch.
pub trait ValueOrder {
    /// For a cell: try "holds" before "does not hold".
    fn true_first(&mut self, var: usize) -> bool;
}

/// Always tries "does not hold" first, and operation values in index order.
#[derive(Clone, Copy, Debug, Default)]
pub struct FalseFirst;

impl ValueOrder for FalseFirst {
    fn true_first(&mut self, _var: usize) -> bool {
        false
    }
}

impl<F: FnMut(usize) -> bool> ValueOrder for F {
    fn true_first(&mut self, var: usize) -> bool {
        self(var)
    }
}

/// Theory flags the propagator consults, flattened once.
pub(crate) struct Rules {
    transitive: bool,
    leq_props: [bool; 4],
    ll_props: [bool; 4],
    finer: bool,
    coarser: bool,
    a1: bool,
    a2: bool,
    urquhart: bool,
    union_of_chains: bool,
    max_antichain: Option<usize>,
    ops: Vec<Preserves>,
}

fn props(p: crate::RelProps) -> [bool; 4] {
    [
        p.contains(Prop::Reflexive),
        p.contains(Prop::Symmetric),
        p.contains(Prop::Antireflexive),
        p.contains(Prop::Antisymmetric),
    ]
}

impl Rules {
    pub fn new(t: &Theory, op_names: &[&str]) -> Rules {
        Rules {
            transitive: t.transitive,
            leq_props: props(t.leq),
            ll_props: props(t.ll),
            finer: t.has(Condition::Finer),
            coarser: t.has(Condition::Coarser),
            a1: t.has(Condition::A1),
            a2: t.has(Condition::A2),
            urquhart: t.extras.urquhart,
            union_of_chains: t.extras.union_of_chains,
            max_antichain: t.extras.max_antichain,
            ops: op_names.iter().map(|n| t.ops.get(*n).copied().unwrap_or(Preserves::BOTH)).collect(),
        }
    }
}

fn or_rows(rows: &mut [u64], src: &[u64]) -> bool {
    let mut changed = false;
    for (r, s) in rows.iter_mut().zip(src) {
        let new = *r | s;
        changed |= new != *r;
        *r = new;
    }
    changed
}

/// `k` transitive and forbidden cells closed under the two contrapositives.
fn transitivity(k: &mut [u64], f: &mut [u64]) -> bool {
    let n = k.len();
    let mut changed = false;
    for x in 0..n {
        let mut row = k[x];
        for y in ones(k[x]) {
            row |= k[y];
        }
        if row != k[x] {
            k[x] = row;
            changed = true;
        }
    }
    for x in 0..n {
        // x ≤ y, not x ≤ z  ⇒  not y ≤ z
        for y in ones(k[x]) {
            let new = f[y] | f[x];
            changed |= new != f[y];
            f[y] = new;
        }
        // y ≤ z, not x ≤ z  ⇒  not x ≤ y
        let mut extra = 0;
        for y in 0..n {
            if k[y] & f[x] != 0 {
                extra |= bit(y);
            }
        }
        let new = f[x] | extra;
        changed |= new != f[x];
        f[x] = new;
    }
    changed
}

/// `r ∘ s ⊆ t` on known cells plus both contrapositives.
fn composition_rule(rk: &mut [u64], rf: &mut [u64], sk: &mut [u64], sf: &mut [u64], tk: &mut [u64], tf: &mut [u64]) -> bool {
    let n = rk.len();
    let mut changed = false;
    for x in 0..n {
        let mut row = tk[x];
        for y in ones(rk[x]) {
            row |= sk[y];
        }
        if row != tk[x] {
            tk[x] = row;
            changed = true;
        }
    }
    for x in 0..n {
        // r(x,y), not t(x,z) ⇒ not s(y,z)
        for y in ones(rk[x]) {
            let new = sf[y] | tf[x];
            changed |= new != sf[y];
            sf[y] = new;
        }
        // s(y,z), not t(x,z) ⇒ not r(x,y)
        let mut extra = 0;
        for y in 0..n {
            if sk[y] & tf[x] != 0 {
                extra |= bit(y);
            }
        }
        let new = rf[x] | extra;
        changed |= new != rf[x];
        rf[x] = new;
    }
    changed
}

fn rel_props(k: &mut [u64], f: &mut [u64], p: [bool; 4]) -> bool {
    let n = k.len();
    let mut changed = false;
    let [refl, sym, irrefl, antisym] = p;
    for x in 0..n {
        if refl && k[x] & bit(x) == 0 {
            k[x] |= bit(x);
            changed = true;
        }
        if irrefl && f[x] & bit(x) == 0 {
            f[x] |= bit(x);
            changed = true;
        }
    }
    if sym || antisym {
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                if sym {
                    if k[x] & bit(y) != 0 && k[y] & bit(x) == 0 {
                        k[y] |= bit(x);
                        changed = true;
                    }
                    if f[x] & bit(y) != 0 && f[y] & bit(x) == 0 {
                        f[y] |= bit(x);
                        changed = true;
                    }
                }
                if antisym && k[x] & bit(y) != 0 && f[y] & bit(x) == 0 {
                    f[y] |= bit(x);
                    changed = true;
                }
            }
        }
    }
    changed
}

/// One propagation pass. Returns `None` on conflict, otherwise whether anything changed.
fn step(st: &mut State, r: &Rules) -> Option<bool> {
    let n = st.leq_k.len();
    let mut changed = false;
    changed |= rel_props(&mut st.leq_k, &mut st.leq_f, r.leq_props);
    changed |= rel_props(&mut st.ll_k, &mut st.ll_f, r.ll_props);
    if r.transitive {
        changed |= transitivity(&mut st.leq_k, &mut st.leq_f);
        changed |= transitivity(&mut st.ll_k, &mut st.ll_f);
    }
    if r.finer {
        changed |= or_rows(&mut st.leq_k, &st.ll_k.clone());
        changed |= or_rows(&mut st.ll_f, &st.leq_f.clone());
    }
    if r.coarser {
        changed |= or_rows(&mut st.ll_k, &st.leq_k.clone());
        changed |= or_rows(&mut st.leq_f, &st.ll_f.clone());
    }
    if r.a1 {
        // w ≤ x ≪ y ⇒ w ≪ y
        let (mut lk, mut lf) = (st.leq_k.clone(), st.leq_f.clone());
        let (mut sk, mut sf) = (st.ll_k.clone(), st.ll_f.clone());
        changed |= composition_rule(&mut lk, &mut lf, &mut sk, &mut sf, &mut st.ll_k, &mut st.ll_f);
        changed |= or_rows(&mut st.leq_f, &lf);
        changed |= or_rows(&mut st.ll_f, &sf);
    }
    if r.a2 {
        // x ≪ y ≤ z ⇒ x ≪ z
        let (mut lk, mut lf) = (st.ll_k.clone(), st.ll_f.clone());
        let (mut sk, mut sf) = (st.leq_k.clone(), st.leq_f.clone());
        changed |= composition_rule(&mut lk, &mut lf, &mut sk, &mut sf, &mut st.ll_k, &mut st.ll_f);
        changed |= or_rows(&mut st.ll_f, &lf);
        changed |= or_rows(&mut st.leq_f, &sf);
    }
    if r.urquhart {
        for x in 0..n {
            let off = !bit(x);
            let a = st.ll_f[x] | (st.leq_k[x] & off);
            let b = st.leq_f[x] | (st.ll_k[x] & off);
            changed |= a != st.ll_f[x] || b != st.leq_f[x];
            st.ll_f[x] = a;
            st.leq_f[x] = b;
        }
    }
    if r.union_of_chains {
        // two elements above (or below) a common point are comparable
        let cols: Vec<u64> = (0..n).map(|z| (0..n).filter(|&x| st.leq_k[x] & bit(z) != 0).fold(0, |m, x| m | bit(x))).collect();
        for z in 0..n {
            for group in [st.leq_k[z], cols[z]] {
                for x in ones(group) {
                    for y in ones(group) {
                        if x != y && st.leq_f[x] & bit(y) != 0 && st.leq_k[y] & bit(x) == 0 {
                            st.leq_k[y] |= bit(x);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    for (i, pres) in r.ops.iter().enumerate() {
        let table = &st.ops[i];
        for x in 0..n {
            let Some(fx) = table[x] else { continue };
            for y in 0..n {
                let Some(fy) = table[y] else { continue };
                for (on, k, f) in [(pres.leq, &mut st.leq_k, &mut st.leq_f), (pres.ll, &mut st.ll_k, &mut st.ll_f)] {
                    if !on {
                        continue;
                    }
                    if k[x] & bit(y) != 0 && k[fx] & bit(fy) == 0 {
                        k[fx] |= bit(fy);
                        changed = true;
                    }
                    if f[fx] & bit(fy) != 0 && f[x] & bit(y) == 0 {
                        f[x] |= bit(y);
                        changed = true;
                    }
                }
            }
        }
    }
    if st.conflict() {
        return None;
    }
    if let Some(m) = r.max_antichain {
        let inc: Vec<u64> = (0..n).map(|x| {
            (0..n).filter(|&y| y != x && st.leq_f[x] & bit(y) != 0 && st.leq_f[y] & bit(x) != 0).fold(0, |acc, y| acc | bit(y))
        }).collect();
        if antichain_in(&inc, m + 1).is_some() {
            return None;
        }
    }
    Some(changed)
}

/// Propagates to a fixpoint; `false` on conflict.
pub(crate) fn propagate(st: &mut State, r: &Rules) -> bool {
    loop {
        match step(st, r) {
            None => return false,
            Some(false) => return true,
            Some(true) => {}
        }
    }
}

pub(crate) enum Outcome {
    Found(State),
    Exhausted,
    Budget,
}

pub(crate) struct Dfs<'a> {
    pub rules: &'a Rules,
    pub vars: &'a [Var],
    pub n: usize,
    pub nodes: u64,
    pub max_nodes: Option<u64>,
    pub clock: &'a dyn super::Clock,
    pub order: &'a mut dyn ValueOrder,
}

impl Dfs<'_> {
    fn out_of_budget(&self) -> bool {
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            return true;
        }
        self.nodes % 256 == 0 && self.clock.expired()
    }

    /// Depth-first search from `st`; `accept` vets complete assignments.
    pub fn run(&mut self, mut st: State, from: usize, accept: &mut dyn FnMut(&State) -> bool) -> Outcome {
        if !propagate(&mut st, self.rules) {
            return Outcome::Exhausted;
        }
        let next = self.vars[from..].iter().position(|v| match *v {
            Var::Op(i, x) => st.ops[i][x].is_none(),
            Var::Cell(rel, x, y) => !st.decided(rel, x, y),
        });
        let Some(offset) = next else {
            return if accept(&st) { Outcome::Found(st) } else { Outcome::Exhausted };
        };
        let idx = from + offset;
        self.nodes += 1;
        if self.out_of_budget() {
            return Outcome::Budget;
        }
        let flip = self.order.true_first(idx);
        match self.vars[idx] {
            Var::Cell(rel, x, y) => {
                for value in [flip, !flip] {
                    let mut child = st.clone();
                    child.set(rel, x, y, value);
                    match self.run(child, idx + 1, accept) {
                        Outcome::Exhausted => {}
                        other => return other,
                    }
                }
            }
            Var::Op(i, x) => {
                for k in 0..self.n {
                    let value = if flip { self.n - 1 - k } else { k };
                    let mut child = st.clone();
                    child.ops[i][x] = Some(value);
                    match self.run(child, idx + 1, accept) {
                        Outcome::Exhausted => {}
                        other => return other,
                    }
                }
            }
        }
        Outcome::Exhausted
    }
}
