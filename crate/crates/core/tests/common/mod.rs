//! Random generators shared by the property and acceptance tests.
#![allow(dead_code)]

use amalgam_core::construct::admissible_case;
use amalgam_core::oracle::extend_model;
use amalgam_core::{Conditions, Label, Relation, RelProps, Structure, Theory, VFormation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Every `T_{P,Q,N}` with the default transitivity.
pub fn all_theories() -> Vec<Theory> {
    let mut out = Vec::new();
    for p in RelProps::all_standard() {
        for q in RelProps::all_standard() {
            for n in Conditions::all() {
                out.push(Theory::new(p, q, n));
            }
        }
    }
    out
}

/// Admissible theories with nonempty models.
pub fn admissible_theories() -> Vec<Theory> {
    all_theories().into_iter().filter(|t| admissible_case(t).is_ok() && !t.only_empty_models()).collect()
}

/// Theories with nonempty models, admissible or not.
pub fn inhabited_theories() -> Vec<Theory> {
    all_theories().into_iter().filter(|t| !t.only_empty_models()).collect()
}

pub fn labels(prefix: &str, k: usize) -> Vec<Label> {
    (1..=k).map(|i| Label::new(&format!("{prefix}{i}")).unwrap()).collect()
}

/// A model of `t` over `base` plus `fresh`, found with a random branch order.
pub fn extend(rng: &mut StdRng, base: &Structure, t: &Theory, fresh: &[Label]) -> Structure {
    let bias: f64 = rng.gen_range(0.1..0.9);
    let mut r = rng.clone();
    let mut order = move |_: usize| r.gen_bool(bias);
    rng.gen::<u64>();
    extend_model(base, t, fresh, &mut order).unwrap().expect("disjoint unions keep models")
}

pub fn model(rng: &mut StdRng, t: &Theory, prefix: &str, k: usize) -> Structure {
    extend(rng, &Structure::empty(), t, &labels(prefix, k))
}

/// A V-formation of random models with `|A|, |B| ≤ max`.
pub fn vformation(rng: &mut StdRng, t: &Theory, max: usize) -> VFormation {
    let k = rng.gen_range(0..=max.min(3));
    let c = model(rng, t, "c", k);
    let (ka, kb) = (rng.gen_range(0..=max - k), rng.gen_range(0..=max - k));
    let a = extend(rng, &c, t, &labels("a", ka));
    let b = extend(rng, &c, t, &labels("b", kb));
    VFormation::new(a, b, c).unwrap()
}

/// Uniformly random relation on `n` points.
pub fn relation(rng: &mut StdRng, n: usize, density: f64) -> Relation {
    let mut r = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(density) {
                r.insert(x, y);
            }
        }
    }
    r
}

/// A random partial order contained in a random linear order `line`
/// (`line[i]` is the point at position `i`).
pub fn order_below(rng: &mut StdRng, line: &[usize], density: f64) -> Relation {
    let n = line.len();
    let mut r = Relation::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                r.insert(line[i], line[j]);
            }
        }
    }
    r.transitive_closure()
}

pub fn shuffled(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A structure with random relations on the given labels.
pub fn raw_structure(rng: &mut StdRng, universe: Vec<Label>, density: f64) -> Structure {
    let n = universe.len();
    let leq = relation(rng, n, density);
    let ll = relation(rng, n, density);
    Structure::from_parts(universe, leq, ll, Default::default()).unwrap()
}
