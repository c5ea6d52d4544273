//! Finite models up to isomorphism, exhaustive amalgamation checks at small
//! sizes, and finite approximations of Fraïssé limits.
//!
//! Every supported theory is universal, so each model on `n + 1` points has
//! a submodel on `n` points. Relational models of size `n + 1` are therefore
//! found as one-point extensions of the canonical models of size `n`, and
//! operations are added afterwards by brute force over all tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::construct::{admissible_case, amalgamate, AmalgamMode};
use crate::oracle::{completions, search, SearchConfig};
use crate::relation::{bit, Relation};
use crate::{canonical_label, canonical_structure, validate, CanonicalForm, Error, Label, Structure, Theory, VFormation};

/// Largest size accepted by [`enumerate_models`].
pub const ENUMERATION_BOUND: usize = 6;

/// All models of `t` with exactly `n` points, one per isomorphism class,
/// labeled `e1..en` and sorted by canonical form.
pub fn enumerate_models(t: &Theory, n: usize) -> Result<Vec<Structure>, Error> {
    if n > ENUMERATION_BOUND {
        return Err(Error::SizeBoundExceeded(n, ENUMERATION_BOUND));
    }
    let mut layer: BTreeMap<CanonicalForm, Structure> = BTreeMap::new();
    let empty = Structure::empty();
    if validate(&empty, &t.relational()).ok() {
        layer.insert(crate::canonical_form(&empty)?, empty);
    }
    for k in 0..n {
        let mut next = BTreeMap::new();
        for m in layer.values() {
            for s in one_point_extensions(m, t, &canonical_label(k)) {
                let (form, canon) = canonical_structure(&s)?;
                next.entry(form).or_insert(canon);
            }
        }
        layer = next;
    }
    if t.ops.is_empty() {
        return Ok(layer.into_values().collect());
    }
    let mut out = BTreeMap::new();
    for m in layer.values() {
        for s in with_operations(m, t, &Structure::empty()) {
            let (form, canon) = canonical_structure(&s)?;
            out.entry(form).or_insert(canon);
        }
    }
    Ok(out.into_values().collect())
}

/// Relational one-point extensions of `m` by a point named `label`.
fn one_point_extensions(m: &Structure, t: &Theory, label: &Label) -> Vec<Structure> {
    let mut universe = m.universe().to_vec();
    universe.push(label.clone());
    let bare = without_ops(t);
    completions(m, t, 1)
        .into_iter()
        .map(|(leq, ll)| Structure::from_parts(universe.clone(), leq, ll, BTreeMap::new()).expect("fresh label"))
        .filter(|s| t.extras.is_empty() || validate(s, &bare).ok())
        .collect()
}

/// `t` with its extras but no operation signature.
fn without_ops(t: &Theory) -> Theory {
    Theory { ops: BTreeMap::new(), ..t.clone() }
}

/// Expansions of a relational model by all admissible operation tables.
/// Tables on points below `fixed.len()` are copied from `fixed`.
fn with_operations(m: &Structure, t: &Theory, fixed: &Structure) -> Vec<Structure> {
    let n = m.len();
    let f = fixed.len();
    let names: Vec<&String> = t.ops.keys().collect();
    let mut tables: Vec<Vec<Vec<usize>>> = Vec::new();
    for name in &names {
        let pres = t.ops[*name];
        let mut ok = Vec::new();
        let mut table = vec![0; n];
        if f > 0 {
            table[..f].copy_from_slice(fixed.op(name).expect("shared signature"));
        }
        loop {
            let keeps = |r: &Relation| r.pairs().all(|(x, y)| r.contains(table[x], table[y]));
            if (!pres.leq || keeps(m.leq())) && (!pres.ll || keeps(m.ll())) {
                ok.push(table.clone());
            }
            // odometer over n^n tables
            let mut i = f;
            while i < n && table[i] == n - 1 {
                table[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            table[i] += 1;
        }
        tables.push(ok);
    }
    let mut out = Vec::new();
    let mut pick = vec![0; names.len()];
    if tables.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let ops = names.iter().zip(&pick).enumerate().map(|(i, (name, &p))| ((*name).clone(), tables[i][p].clone())).collect();
        out.push(Structure::from_parts(m.universe().to_vec(), m.leq().clone(), m.ll().clone(), ops).expect("total tables"));
        let mut i = 0;
        while i < pick.len() && pick[i] + 1 == tables[i].len() {
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            return out;
        }
        pick[i] += 1;
    }
}

/// Models of sizes `0..=n`, indexed by size.
pub fn models_up_to(t: &Theory, n: usize) -> Result<Vec<Vec<Structure>>, Error> {
    (0..=n).map(|k| enumerate_models(t, k)).collect()
}

/// Extensions of `c` by up to `extra` new points appended after it, one per
/// orbit under permutations of the new points. Sorted by size.
fn arm_extensions(c: &Structure, t: &Theory, extra: usize, prefix: &str) -> Vec<Structure> {
    let m = c.len();
    let mut out = Vec::new();
    for k in 0..=extra {
        let mut universe = c.universe().to_vec();
        universe.extend((1..=k).map(|i| Label::new(&format!("{prefix}{i}")).expect("label")));
        let perms = permutations(k);
        let mut seen = BTreeSet::new();
        let bare = without_ops(t);
        for (leq, ll) in completions(c, t, k) {
            let s = Structure::from_parts(universe.clone(), leq, ll, BTreeMap::new()).expect("fresh labels");
            if !t.extras.is_empty() && !validate(&s, &bare).ok() {
                continue;
            }
            let expanded = if t.ops.is_empty() { vec![s] } else { with_operations(&s, t, c) };
            for s in expanded {
                let key = perms.iter().map(|p| orbit_key(&s, m, p)).min().expect("identity");
                if seen.insert(key) {
                    out.push(s);
                }
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Bit image of `s` after permuting the points from `m` on by `p`.
fn orbit_key(s: &Structure, m: usize, p: &[usize]) -> Vec<u8> {
    let n = s.len();
    let to = |x: usize| if x < m { x } else { m + p[x - m] };
    let mut inv = vec![0; n];
    for x in 0..n {
        inv[to(x)] = x;
    }
    let mut key = Vec::new();
    for r in [s.leq(), s.ll()] {
        for x in 0..n {
            for y in 0..n {
                key.push(u8::from(r.contains(inv[x], inv[y])));
            }
        }
    }
    for op in s.ops().values() {
        key.extend((0..n).map(|x| to(op[inv[x]]) as u8));
    }
    key
}

/// Calls `visit` on every normalized V-formation with `|A|, |B| ≤ n`, up to
/// isomorphism fixing `C` and up to swapping the arms. `C` ranges over the
/// canonical models, and each arm over the extensions of `C` modulo
/// permutations of its new points (`a1, a2, …` in `A`, `b1, b2, …` in `B`).
/// Stops early when `visit` returns `false`.
pub fn visit_vformations(t: &Theory, n: usize, mut visit: impl FnMut(&VFormation) -> bool) -> Result<u64, Error> {
    let mut count = 0;
    for k in 0..=n {
        for c in enumerate_models(t, k)? {
            let (seen, done) = visit_over(t, &c, n, &mut visit)?;
            count += seen;
            if !done {
                return Ok(count);
            }
        }
    }
    Ok(count)
}

/// [`visit_vformations`] restricted to one base `c`, a model of `t`.
pub fn visit_vformations_over(
    t: &Theory,
    c: &Structure,
    n: usize,
    mut visit: impl FnMut(&VFormation) -> bool,
) -> Result<u64, Error> {
    let r = validate(c, t);
    if !r.ok() {
        return Err(Error::NotAModel(alloc::boxed::Box::new(r)));
    }
    visit_over(t, c, n, &mut visit).map(|(count, _)| count)
}

/// Count visited and whether the sweep ran to the end.
fn visit_over(t: &Theory, c: &Structure, n: usize, visit: &mut dyn FnMut(&VFormation) -> bool) -> Result<(u64, bool), Error> {
    let mut count = 0;
    if c.len() > n {
        return Ok((0, true));
    }
    let arms_a = arm_extensions(c, t, n - c.len(), "a");
    let arms_b = arm_extensions(c, t, n - c.len(), "b");
    for (i, a) in arms_a.iter().enumerate() {
        for b in &arms_b[i..] {
            let v = VFormation::new(a.clone(), b.clone(), c.clone())?;
            count += 1;
            if !visit(&v) {
                return Ok((count, false));
            }
        }
    }
    Ok((count, true))
}

/// Number of instances [`visit_vformations`] would visit.
pub fn count_vformations(t: &Theory, n: usize) -> Result<u64, Error> {
    let mut count = 0;
    for k in 0..=n {
        for c in enumerate_models(t, k)? {
            let e = arm_extensions(&c, t, n - k, "a").len() as u64;
            count += e * (e + 1) / 2;
        }
    }
    Ok(count)
}

/// How one instance was settled by [`decide`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Constructed,
    Searched,
    Failed,
}

/// Settles an instance with the constructor when the theory is admissible,
/// otherwise with the oracle (with identifications for AP, so every answer is
/// a complete decision).
pub fn decide(v: &VFormation, t: &Theory, mode: AmalgamMode) -> Result<Decision, Error> {
    let constructible = admissible_case(t).is_ok() && t.ops.values().all(|p| p.leq);
    if constructible {
        // amalgamate verifies at SUPER, which implies every weaker level
        return match amalgamate(v, t) {
            Ok(_) => Ok(Decision::Constructed),
            Err(Error::VerificationFailed(_)) => Ok(Decision::Failed),
            Err(e) => Err(e),
        };
    }
    let cfg = if mode == AmalgamMode::Ap { SearchConfig::general(true, 0) } else { SearchConfig::OVER_UNION };
    Ok(if search(v, t, mode, &cfg)?.is_witness() { Decision::Searched } else { Decision::Failed })
}

/// Outcome of [`check_ap_at_size`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ApReport {
    pub checked: u64,
    pub constructed: u64,
    pub searched: u64,
    /// Instances without an amalgam at the requested level.
    pub failures: Vec<VFormation>,
}

impl ApReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ApReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} instances ({} constructed, {} searched), {} failing",
            self.checked,
            self.constructed,
            self.searched,
            self.failures.len()
        )
    }
}

/// Decides every V-formation with `|A|, |B| ≤ n`. At most `max_failures`
/// failing instances are collected before stopping.
pub fn check_ap_at_size(t: &Theory, n: usize, mode: AmalgamMode, max_failures: usize) -> Result<ApReport, Error> {
    let mut report = ApReport::default();
    let mut err = None;
    visit_vformations(t, n, |v| tally(&mut report, &mut err, v, t, mode, max_failures))?;
    err.map_or(Ok(report), Err)
}

/// [`check_ap_at_size`] over one base `c`; the sweeps over all canonical
/// models of size at most `n` add up to [`check_ap_at_size`].
pub fn check_ap_over(
    t: &Theory,
    c: &Structure,
    n: usize,
    mode: AmalgamMode,
    max_failures: usize,
) -> Result<ApReport, Error> {
    let mut report = ApReport::default();
    let mut err = None;
    visit_vformations_over(t, c, n, |v| tally(&mut report, &mut err, v, t, mode, max_failures))?;
    err.map_or(Ok(report), Err)
}

fn tally(
    report: &mut ApReport,
    err: &mut Option<Error>,
    v: &VFormation,
    t: &Theory,
    mode: AmalgamMode,
    max_failures: usize,
) -> bool {
    report.checked += 1;
    match decide(v, t, mode) {
        Ok(Decision::Constructed) => report.constructed += 1,
        Ok(Decision::Searched) => report.searched += 1,
        Ok(Decision::Failed) => report.failures.push(v.clone()),
        Err(e) => {
            *err = Some(e);
            return false;
        }
    }
    report.failures.len() < max_failures
}

/// A one-point extension of a concrete subset `base` of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionType {
    pub base: Vec<Label>,
    /// `base` plus the new point [`NEW_POINT`].
    pub extension: Structure,
}

/// Label of the new point in an [`ExtensionType`].
pub const NEW_POINT: &str = "@new";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SaturationReport {
    pub rounds: usize,
    pub added: usize,
    /// Every extension type over every small subset is realized.
    pub fixpoint: bool,
    pub realized: usize,
    pub unrealized: Vec<ExtensionType>,
}

/// Cell pattern of point `z` relative to `subset`, plus its diagonal.
fn pattern(leq: &Relation, ll: &Relation, subset: &[usize], z: usize) -> u64 {
    let mut p = 0u64;
    for (i, &s) in subset.iter().enumerate() {
        let cells = [leq.contains(z, s), leq.contains(s, z), ll.contains(z, s), ll.contains(s, z)];
        for (j, c) in cells.into_iter().enumerate() {
            if c {
                p |= bit(4 * i + j);
            }
        }
    }
    let d = 4 * subset.len();
    if leq.contains(z, z) {
        p |= bit(d);
    }
    if ll.contains(z, z) {
        p |= bit(d + 1);
    }
    p
}

fn placeholder(i: usize) -> Label {
    Label::new(&format!("s{i}")).expect("label")
}

/// Extension types over a subset, cached by the subset's own cell pattern.
#[derive(Default)]
struct TypeCache {
    cache: BTreeMap<(usize, Vec<u64>, Vec<u64>), Vec<(u64, Structure)>>,
}

impl TypeCache {
    /// `(pattern, S')` for each type over `subset`, with `S'` carrying `m`'s labels.
    fn types(&mut self, m: &Structure, subset: &[usize], t: &Theory) -> Result<Vec<(u64, Structure)>, Error> {
        let s = m.induced(subset)?;
        let key = (s.len(), s.leq().rows().to_vec(), s.ll().rows().to_vec());
        let k = s.len();
        let entry = self.cache.entry(key).or_insert_with(|| {
            let mut universe: Vec<Label> = (0..k).map(placeholder).collect();
            universe.push(Label::new(NEW_POINT).expect("label"));
            let idx: Vec<usize> = (0..k).collect();
            completions(&s, t, 1)
                .into_iter()
                .map(|(leq, ll)| {
                    let p = pattern(&leq, &ll, &idx, k);
                    (p, Structure::from_parts(universe.clone(), leq, ll, BTreeMap::new()).expect("distinct labels"))
                })
                .collect()
        });
        let names: BTreeMap<Label, Label> = (0..k).map(|i| (placeholder(i), m.label(subset[i]).clone())).collect();
        entry
            .iter()
            .map(|(p, ext)| Ok((*p, ext.relabel(|_, x| names.get(x).cloned().unwrap_or_else(|| x.clone()))?)))
            .collect()
    }
}

fn subsets_up_to(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for size in 0..=s.min(n) {
        let mut cur: Vec<usize> = (0..size).collect();
        loop {
            out.push(cur.clone());
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if cur[i] < n - size + i {
                    cur[i] += 1;
                    for j in i + 1..size {
                        cur[j] = cur[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

/// Grows `m` until every one-point extension of every subset of at most `s`
/// points is realized, or until the next step would exceed `budget` points.
///
/// Each missing type `S ⊆ S'` is realized by amalgamating `m` with `S'` over
/// `S` with the verified constructor, so `t` must be admissible. The result
/// always contains `m` as an induced substructure and is a model of `t`.
pub fn saturate(m: &Structure, t: &Theory, s: usize, budget: usize) -> Result<(Structure, SaturationReport), Error> {
    admissible_case(t)?;
    if !m.ops().is_empty() || !t.ops.is_empty() {
        return Err(Error::UnsupportedOperations(String::from("saturation works on relational structures")));
    }
    let r = validate(m, t);
    if !r.ok() {
        return Err(Error::NotAModel(alloc::boxed::Box::new(r)));
    }
    let mut cur = m.clone();
    let mut report = SaturationReport::default();
    let mut cache = TypeCache::default();
    let mut fresh = 0usize;
    'rounds: loop {
        report.rounds += 1;
        let mut grew = false;
        let snapshot: Vec<Vec<Label>> = subsets_up_to(cur.len(), s)
            .into_iter()
            .map(|sub| sub.iter().map(|&i| cur.label(i).clone()).collect())
            .collect();
        for labels in snapshot {
            let sub: Vec<usize> = labels.iter().map(|x| cur.index_of(x.as_str()).expect("grows only")).collect();
            for (p, ext) in cache.types(&cur, &sub, t)? {
                // indices shift as new labels are inserted
                let sub: Vec<usize> = labels.iter().map(|x| cur.index_of(x.as_str()).expect("grows only")).collect();
                let in_sub: u64 = sub.iter().fold(0, |acc, &i| acc | bit(i));
                if (0..cur.len()).any(|z| in_sub & bit(z) == 0 && pattern(cur.leq(), cur.ll(), &sub, z) == p) {
                    continue;
                }
                if cur.len() + 1 > budget {
                    break 'rounds;
                }
                fresh += 1;
                let name = loop {
                    let candidate = format!("p{fresh}");
                    if !cur.contains_label(&candidate) {
                        break Label::new(&candidate).expect("label");
                    }
                    fresh += 1;
                };
                let ext = ext.relabel(|_, x| if x.as_str() == NEW_POINT { name.clone() } else { x.clone() })?;
                let base = cur.induced(&sub)?;
                let v = VFormation::new(cur.clone(), ext, base)?;
                cur = amalgamate(&v, t)?.d;
                report.added += 1;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut realized = 0;
    let mut unrealized = Vec::new();
    for sub in subsets_up_to(cur.len(), s) {
        let in_sub: u64 = sub.iter().fold(0, |acc, &i| acc | bit(i));
        let present: BTreeSet<u64> =
            (0..cur.len()).filter(|&z| in_sub & bit(z) == 0).map(|z| pattern(cur.leq(), cur.ll(), &sub, z)).collect();
        for (p, ext) in cache.types(&cur, &sub, t)? {
            if present.contains(&p) {
                realized += 1;
            } else {
                let base = sub.iter().map(|&i| cur.label(i).clone()).collect();
                unrealized.push(ExtensionType { base, extension: ext });
            }
        }
    }
    report.realized = realized;
    report.unrealized = unrealized;
    report.fixpoint = report.unrealized.is_empty();
    Ok((cur, report))
}
