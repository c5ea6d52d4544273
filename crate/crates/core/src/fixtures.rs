//! The counterexamples and constructions from the literature, encoded as
//! instances with the outcome the oracle should reproduce.
//!
//! Bounds are the smallest at which the known contradiction already shows:
//! identifications plus at most two fresh points.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::construct::{free_amalgamate, AmalgamMode};
use crate::oracle::{search, Scope, SearchConfig, SearchResult};
use crate::theory::{Condition, Conditions, Extras, Preserves, RelProps, Theory};
use crate::{Amalgam, Error, Structure, StructureBuilder, VFormation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expected {
    Witness,
    Exhausted,
}

impl Expected {
    pub fn token(self) -> &'static str {
        match self {
            Expected::Witness => "WITNESS",
            Expected::Exhausted => "EXHAUSTED",
        }
    }
}

/// How a fixture is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Runner {
    Oracle,
    FreeAmalgam,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub vformation: VFormation,
    pub theory: Theory,
    pub mode: AmalgamMode,
    pub config: SearchConfig,
    pub runner: Runner,
    pub expected: Expected,
}

pub const NAMES: [&str; 8] = [
    "urquhart-5.1",
    "urquhart-free-5.3",
    "aux-op-3.3b",
    "tuc-6.1b",
    "tucn-6.2b",
    "antichain-6.3",
    "c2-fails-6.4-sap",
    "c2-fails-6.4-ap",
];

pub fn names() -> &'static [&'static str] {
    &NAMES
}

pub fn fixture(name: &str) -> Result<Fixture, Error> {
    let f = match name {
        "urquhart-5.1" => urquhart(false),
        "urquhart-free-5.3" => urquhart(true),
        "aux-op-3.3b" => aux_op(),
        "tuc-6.1b" => union_of_chains(),
        "tucn-6.2b" => isotone_antichain(),
        "antichain-6.3" => antichain(),
        "c2-fails-6.4-sap" => c2_sap(),
        "c2-fails-6.4-ap" => c2_ap(),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    };
    f.map_err(|e| match e {
        Error::UnknownFixture(_) => e,
        other => Error::InvalidVFormation(alloc::format!("fixture {name}: {other}")),
    })
}

fn build(b: StructureBuilder) -> Result<Structure, Error> {
    b.build()
}

fn urquhart(free: bool) -> Result<Fixture, Error> {
    let base = |names: &[&'static str]| Structure::builder(names.iter().copied()).reflexive_leq().reflexive_ll();
    let c = build(base(&["c", "d"]))?;
    let a = build(base(&["a", "c", "d"]).leq("a", "c").ll("a", "d"))?;
    let b = build(base(&["b", "c", "d"]).leq("c", "b").ll("d", "b"))?;
    let theory = Theory::new(RelProps::REFLEXIVE, RelProps::REFLEXIVE, Conditions::EMPTY)
        .with_extras(Extras { urquhart: true, ..Default::default() })?;
    let vformation = VFormation::new(a, b, c)?;
    Ok(if free {
        Fixture {
            name: "urquhart-free-5.3",
            vformation,
            theory: theory.non_transitive(),
            mode: AmalgamMode::Sap,
            config: SearchConfig::OVER_UNION,
            runner: Runner::FreeAmalgam,
            expected: Expected::Witness,
        }
    } else {
        Fixture {
            name: "urquhart-5.1",
            vformation,
            theory,
            mode: AmalgamMode::Ap,
            config: SearchConfig::general(true, 2),
            runner: Runner::Oracle,
            expected: Expected::Exhausted,
        }
    })
}

fn aux_op() -> Result<Fixture, Error> {
    let c = build(Structure::builder(["c", "c1", "c2"]).reflexive_leq().op("f", [("c", "c"), ("c1", "c2"), ("c2", "c1")]))?;
    let a = build(
        Structure::builder(["a1", "a2", "c", "c1", "c2"])
            .reflexive_leq()
            .leq_pairs([("c1", "a1"), ("c2", "a2")])
            .ll_pairs([("c1", "a1"), ("c2", "a2")])
            .op("f", [("c", "c"), ("c1", "c2"), ("c2", "c1"), ("a1", "a2"), ("a2", "a1")]),
    )?;
    let b = build(
        Structure::builder(["b1", "b2", "c", "c1", "c2"])
            .reflexive_leq()
            .leq_pairs([("b1", "c1"), ("c", "b2")])
            .op("f", [("c", "c"), ("c1", "c2"), ("c2", "c1"), ("b1", "b2"), ("b2", "b1")]),
    )?;
    let theory = Theory::new(
        RelProps::ORDER,
        RelProps::STRICT,
        Conditions::of(&[Condition::A1, Condition::A2, Condition::Finer]),
    )
    .with_op("f", Preserves::LL)?;
    Ok(Fixture {
        name: "aux-op-3.3b",
        vformation: VFormation::new(a, b, c)?,
        theory,
        mode: AmalgamMode::Ap,
        config: SearchConfig::general(true, 1),
        runner: Runner::Oracle,
        expected: Expected::Exhausted,
    })
}

fn union_of_chains() -> Result<Fixture, Error> {
    let base = |names: &[&'static str]| Structure::builder(names.iter().copied()).reflexive_leq().reflexive_ll();
    let c = build(base(&["c", "d", "e"]))?;
    let a = build(base(&["a", "c", "d", "e"]).leq("d", "a").ll_pairs([("d", "a"), ("c", "a")]))?;
    let b = build(base(&["b", "c", "d", "e"]).leq("d", "b").ll_pairs([("d", "b"), ("e", "b")]))?;
    let theory = Theory::new(RelProps::ORDER, RelProps::EMPTY, Conditions::of(&[Condition::Coarser]))
        .with_extras(Extras { union_of_chains: true, ..Default::default() })?;
    Ok(Fixture {
        name: "tuc-6.1b",
        vformation: VFormation::new(a, b, c)?,
        theory,
        mode: AmalgamMode::Ap,
        config: SearchConfig::general(true, 1),
        runner: Runner::Oracle,
        expected: Expected::Exhausted,
    })
}

/// Posets with `≪ = ≤`, as the class of posets is encoded.
fn poset(names: &[&'static str], pairs: &[(&'static str, &'static str)]) -> StructureBuilder {
    Structure::builder(names.iter().copied())
        .reflexive_leq()
        .reflexive_ll()
        .leq_pairs(pairs.iter().copied())
        .ll_pairs(pairs.iter().copied())
}

fn antichain_posets(width: usize) -> Result<Theory, Error> {
    Theory::posets().with_extras(Extras { max_antichain: Some(width), ..Default::default() })
}

fn isotone_antichain() -> Result<Fixture, Error> {
    let c = build(poset(&["c"], &[]).op("f", [("c", "c")]))?;
    let a = build(poset(&["a", "c"], &[]).op("f", [("a", "c"), ("c", "c")]))?;
    let b = build(poset(&["b1", "c"], &[]).op("f", [("b1", "b1"), ("c", "c")]))?;
    Ok(Fixture {
        name: "tucn-6.2b",
        vformation: VFormation::new(a, b, c)?,
        theory: antichain_posets(2)?.with_op("f", Preserves::LEQ)?,
        mode: AmalgamMode::Ap,
        config: SearchConfig::general(true, 1),
        runner: Runner::Oracle,
        expected: Expected::Exhausted,
    })
}

fn antichain() -> Result<Fixture, Error> {
    let below = [("c1", "c"), ("c2", "c")];
    let c = build(poset(&["c", "c1", "c2"], &below))?;
    let a = build(poset(&["a", "c", "c1", "c2"], &[below[0], below[1], ("c1", "a")]))?;
    let b = build(poset(&["b1", "c", "c1", "c2"], &[below[0], below[1], ("c2", "b1")]))?;
    Ok(Fixture {
        name: "antichain-6.3",
        vformation: VFormation::new(a, b, c)?,
        theory: antichain_posets(2)?,
        mode: AmalgamMode::Ap,
        config: SearchConfig::general(true, 1),
        runner: Runner::Oracle,
        expected: Expected::Exhausted,
    })
}

fn c2_theory() -> Theory {
    Theory::new(RelProps::EMPTY, RelProps::ANTISYMMETRIC, Conditions::of(&[Condition::Finer, Condition::A2]))
}

fn c2_sap() -> Result<Fixture, Error> {
    let c = build(Structure::builder(["c"]).leq("c", "c"))?;
    let arm = |x: &'static str| {
        build(
            Structure::builder([x, "c"])
                .leq_pairs([(x, x), (x, "c"), ("c", x), ("c", "c")])
                .ll_pairs([(x, x), (x, "c")]),
        )
    };
    Ok(Fixture {
        name: "c2-fails-6.4-sap",
        vformation: VFormation::new(arm("a1")?, arm("a2")?, c)?,
        theory: c2_theory(),
        mode: AmalgamMode::Sap,
        config: SearchConfig::OVER_UNION,
        runner: Runner::Oracle,
        expected: Expected::Exhausted,
    })
}

/// Read literally: `a_i` and `c` are `≤`-related both ways, `d ≤ c` but not
/// `c ≤ d`, `a1 ≪ d`, `a1 ≤ d`, and not `a2 ≪ d`. Only the stated pairs
/// are present, so `A1` breaks transitivity (`c ≤ a1 ≤ d`).
fn c2_ap() -> Result<Fixture, Error> {
    let c = build(Structure::builder(["c", "d"]).leq_pairs([("c", "c"), ("d", "c")]))?;
    let arm = |x: &'static str, extra_leq: &[(&'static str, &'static str)], extra_ll: &[(&'static str, &'static str)]| {
        build(
            Structure::builder([x, "c", "d"])
                .leq_pairs([(x, x), (x, "c"), ("c", x), ("c", "c"), ("d", "c")])
                .leq_pairs(extra_leq.iter().copied())
                .ll_pairs([(x, x), (x, "c")])
                .ll_pairs(extra_ll.iter().copied()),
        )
    };
    let a = arm("a1", &[("a1", "d")], &[("a1", "d")])?;
    let b = arm("a2", &[], &[])?;
    Ok(Fixture {
        name: "c2-fails-6.4-ap",
        vformation: VFormation::new(a, b, c)?,
        theory: c2_theory(),
        mode: AmalgamMode::Ap,
        config: SearchConfig::general(true, 1),
        runner: Runner::Oracle,
        expected: Expected::Exhausted,
    })
}

/// What running a fixture produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observed {
    Witness(Amalgam),
    Exhausted { scope: Scope, nodes: u64 },
    Error(Error),
}

impl Observed {
    pub fn matches(&self, expected: Expected) -> bool {
        matches!(
            (self, expected),
            (Observed::Witness(_), Expected::Witness) | (Observed::Exhausted { .. }, Expected::Exhausted)
        )
    }

    pub fn token(&self) -> String {
        match self {
            Observed::Witness(_) => String::from("WITNESS"),
            Observed::Exhausted { scope: Scope::Complete, .. } => String::from("EXHAUSTED (complete)"),
            Observed::Exhausted { scope: Scope::AtBound, .. } => String::from("EXHAUSTED (at bound)"),
            Observed::Error(e) => alloc::format!("ERROR: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRun {
    pub name: &'static str,
    pub expected: Expected,
    pub observed: Observed,
}

impl FixtureRun {
    pub fn ok(&self) -> bool {
        self.observed.matches(self.expected)
    }
}

impl fmt::Display for FixtureRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "ok" } else { "MISMATCH" };
        write!(f, "{}: expected {}, got {} [{status}]", self.name, self.expected.token(), self.observed.token())
    }
}

pub fn run(f: &Fixture) -> FixtureRun {
    let observed = match f.runner {
        Runner::FreeAmalgam => match free_amalgamate(&f.vformation, &f.theory) {
            Ok(w) => Observed::Witness(w),
            Err(e) => Observed::Error(e),
        },
        Runner::Oracle => match search(&f.vformation, &f.theory, f.mode, &f.config) {
            Ok(SearchResult::Witness { amalgam, .. }) => Observed::Witness(amalgam),
            Ok(SearchResult::Exhausted { scope, nodes, .. }) => Observed::Exhausted { scope, nodes },
            Err(e) => Observed::Error(e),
        },
    };
    FixtureRun { name: f.name, expected: f.expected, observed }
}

/// Every fixture, in [`NAMES`] order.
pub fn run_all() -> Vec<FixtureRun> {
    NAMES
        .iter()
        .map(|name| match fixture(name) {
            Ok(f) => run(&f),
            Err(e) => FixtureRun { name, expected: expected_of(name), observed: Observed::Error(e) },
        })
        .collect()
}

fn expected_of(name: &str) -> Expected {
    if name == "urquhart-free-5.3" {
        Expected::Witness
    } else {
        Expected::Exhausted
    }
}
