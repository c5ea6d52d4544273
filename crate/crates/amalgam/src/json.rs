//! JSON encodings of structures, theories, V-formations, amalgams and search results.
//!
//! Arrays are order-insensitive on input and emitted sorted. Duplicate pairs,
//! properties, condition tokens and map keys are rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;

use amalgam_core::fixtures::{Fixture, Runner};
use amalgam_core::fraisse::{ApReport, ExtensionType, SaturationReport};
use amalgam_core::oracle::{Scope, SearchConfig, SearchResult};
use amalgam_core::{
    normalize_instance, Amalgam, BinRel, Condition, Conditions, Error, Extras, Label, LabelMap, Preserves, RelProps,
    Report, Structure, Theory, VFormation,
};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Why an input could not be decoded.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Model(#[from] Error),
    #[error("{0}")]
    Invalid(String),
}

type Pair = (String, String);

/// A JSON object whose keys must be distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrictMap<V>(pub BTreeMap<String, V>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for StrictMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V_<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V_<V> {
            type Value = StrictMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<M: MapAccess<'de>>(self, mut m: M) -> Result<Self::Value, M::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = m.next_entry::<String, V>()? {
                    if out.contains_key(&k) {
                        return Err(de::Error::custom(format!("duplicate key {k:?}")));
                    }
                    out.insert(k, v);
                }
                Ok(StrictMap(out))
            }
        }
        d.deserialize_map(V_(PhantomData))
    }
}

impl<V: Serialize> Serialize for StrictMap<V> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct StructureJson {
    pub universe: Vec<String>,
    #[serde(default)]
    pub leq: Vec<Pair>,
    #[serde(default)]
    pub ll: Vec<Pair>,
    #[serde(default, skip_serializing_if = "is_empty_ops")]
    pub ops: StrictMap<StrictMap<String>>,
}

fn is_empty_ops(ops: &StrictMap<StrictMap<String>>) -> bool {
    ops.0.is_empty()
}

fn no_duplicates<T: Ord + fmt::Debug>(items: &[T], what: &str) -> Result<(), InputError> {
    let mut seen = BTreeSet::new();
    for x in items {
        if !seen.insert(x) {
            return Err(InputError::Invalid(format!("duplicate {what} {x:?}")));
        }
    }
    Ok(())
}

fn no_duplicate_pairs(pairs: &[Pair], rel: &'static str) -> Result<(), InputError> {
    let mut seen = BTreeSet::new();
    for (x, y) in pairs {
        if !seen.insert((x, y)) {
            return Err(Error::DuplicatePair(Label::new(x)?, Label::new(y)?, rel).into());
        }
    }
    Ok(())
}

fn pairs_of<'a>(it: impl Iterator<Item = (&'a Label, &'a Label)>) -> Vec<Pair> {
    it.map(|(x, y)| (x.to_string(), y.to_string())).collect()
}

impl StructureJson {
    pub fn from_structure(s: &Structure) -> StructureJson {
        let u = s.universe();
        let rel = |r: &amalgam_core::Relation| pairs_of(r.pairs().map(|(x, y)| (&u[x], &u[y])));
        let ops = s
            .ops()
            .iter()
            .map(|(name, table)| {
                let graph = table.iter().enumerate().map(|(x, &y)| (u[x].to_string(), u[y].to_string())).collect();
                (name.clone(), StrictMap(graph))
            })
            .collect();
        StructureJson {
            universe: u.iter().map(Label::to_string).collect(),
            leq: rel(s.leq()),
            ll: rel(s.ll()),
            ops: StrictMap(ops),
        }
    }

    pub fn to_structure(&self) -> Result<Structure, InputError> {
        no_duplicate_pairs(&self.leq, "leq")?;
        no_duplicate_pairs(&self.ll, "ll")?;
        let mut b = Structure::builder(self.universe.iter().map(String::as_str))
            .leq_pairs(self.leq.iter().map(|(x, y)| (x.as_str(), y.as_str())))
            .ll_pairs(self.ll.iter().map(|(x, y)| (x.as_str(), y.as_str())));
        for (name, graph) in &self.ops.0 {
            b = b.op(name, graph.0.iter().map(|(x, y)| (x.as_str(), y.as_str())));
        }
        Ok(b.build()?)
    }
}

/// A relation over an explicit universe, as consumed by `lift`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BinRelJson {
    pub universe: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<Pair>,
}

impl BinRelJson {
    pub fn from_binrel(r: &BinRel) -> BinRelJson {
        BinRelJson { universe: r.universe().iter().map(Label::to_string).collect(), pairs: pairs_of(r.pairs()) }
    }

    pub fn to_binrel(&self) -> Result<BinRel, InputError> {
        no_duplicate_pairs(&self.pairs, "pairs")?;
        let universe = self.universe.iter().map(|x| Label::new(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(BinRel::new(universe, self.pairs.iter().map(|(x, y)| (x.as_str(), y.as_str())))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtraJson {
    Flag(String),
    #[serde(rename_all = "camelCase")]
    MaxAntichain {
        max_antichain: usize,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TheoryJson {
    #[serde(rename = "P", default)]
    pub leq: Vec<u8>,
    #[serde(rename = "Q", default)]
    pub ll: Vec<u8>,
    #[serde(rename = "N", default)]
    pub conditions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extras: Vec<ExtraJson>,
    #[serde(rename = "opSig", default, skip_serializing_if = "is_empty_sig")]
    pub op_sig: StrictMap<Vec<String>>,
    /// Both relations transitive; only free amalgamation drops this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitive: Option<bool>,
}

fn is_empty_sig(m: &StrictMap<Vec<String>>) -> bool {
    m.0.is_empty()
}

impl TheoryJson {
    pub fn from_theory(t: &Theory) -> TheoryJson {
        let mut extras = Vec::new();
        if t.extras.urquhart {
            extras.push(ExtraJson::Flag("U".into()));
        }
        if t.extras.union_of_chains {
            extras.push(ExtraJson::Flag("unionOfChains".into()));
        }
        if let Some(n) = t.extras.max_antichain {
            extras.push(ExtraJson::MaxAntichain { max_antichain: n });
        }
        let op_sig = t
            .ops
            .iter()
            .map(|(name, p)| {
                let mut kinds = Vec::new();
                if p.leq {
                    kinds.push("LEQ".to_string());
                }
                if p.ll {
                    kinds.push("LL".to_string());
                }
                (name.clone(), kinds)
            })
            .collect();
        TheoryJson {
            leq: t.leq.numbers(),
            ll: t.ll.numbers(),
            conditions: t.conditions.iter().map(|c| c.token().to_string()).collect(),
            extras,
            op_sig: StrictMap(op_sig),
            transitive: (!t.transitive).then_some(false),
        }
    }

    pub fn to_theory(&self) -> Result<Theory, InputError> {
        no_duplicates(&self.leq, "property in P")?;
        no_duplicates(&self.ll, "property in Q")?;
        no_duplicates(&self.conditions, "condition")?;
        let conds = self
            .conditions
            .iter()
            .map(|s| Condition::from_token(s).ok_or_else(|| InputError::Invalid(format!("unknown condition {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut t = Theory::new(
            RelProps::from_numbers(&self.leq)?,
            RelProps::from_numbers(&self.ll)?,
            Conditions::of(&conds),
        );
        let mut extras = Extras::default();
        let mut seen = BTreeSet::new();
        for e in &self.extras {
            let key = match e {
                ExtraJson::Flag(s) if s == "U" => {
                    extras.urquhart = true;
                    "U"
                }
                ExtraJson::Flag(s) if s == "unionOfChains" => {
                    extras.union_of_chains = true;
                    "unionOfChains"
                }
                ExtraJson::Flag(s) => return Err(InputError::Invalid(format!("unknown extra {s:?}"))),
                ExtraJson::MaxAntichain { max_antichain } => {
                    extras.max_antichain = Some(*max_antichain);
                    "maxAntichain"
                }
            };
            if !seen.insert(key) {
                return Err(InputError::Invalid(format!("duplicate extra {key:?}")));
            }
        }
        t = t.with_extras(extras)?;
        for (name, kinds) in &self.op_sig.0 {
            no_duplicates(kinds, "preserved relation")?;
            let mut p = Preserves { leq: false, ll: false };
            for k in kinds {
                match k.as_str() {
                    "LEQ" => p.leq = true,
                    "LL" => p.ll = true,
                    _ => return Err(InputError::Invalid(format!("unknown relation {k:?} in opSig"))),
                }
            }
            t = t.with_op(name, p)?;
        }
        if self.transitive == Some(false) {
            t = t.non_transitive();
        }
        Ok(t)
    }
}

/// `C ⊆ A, B`. With `i1` and `k1` (maps `C → A`, `C → B`) the arms are
/// normalized first.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct VFormationJson {
    #[serde(rename = "A")]
    pub a: StructureJson,
    #[serde(rename = "B")]
    pub b: StructureJson,
    #[serde(rename = "C")]
    pub c: StructureJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i1: Option<StrictMap<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<StrictMap<String>>,
}

fn label_map(m: &StrictMap<String>) -> Result<LabelMap, InputError> {
    m.0.iter().map(|(x, y)| Ok((Label::new(x)?, Label::new(y)?))).collect()
}

fn map_json(m: &LabelMap) -> StrictMap<String> {
    StrictMap(m.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect())
}

impl VFormationJson {
    pub fn from_vformation(v: &VFormation) -> VFormationJson {
        VFormationJson {
            a: StructureJson::from_structure(v.a()),
            b: StructureJson::from_structure(v.b()),
            c: StructureJson::from_structure(v.c()),
            i1: None,
            k1: None,
        }
    }

    pub fn to_vformation(&self) -> Result<VFormation, InputError> {
        let (a, b, c) = (self.a.to_structure()?, self.b.to_structure()?, self.c.to_structure()?);
        match (&self.i1, &self.k1) {
            (None, None) => Ok(VFormation::new(a, b, c)?),
            (Some(i1), Some(k1)) => Ok(normalize_instance(&a, &b, &c, &label_map(i1)?, &label_map(k1)?)?.vformation),
            _ => Err(InputError::Invalid("i1 and k1 must be given together".into())),
        }
    }
}

/// A structure plus the embeddings of both arms.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AmalgamJson {
    pub universe: Vec<String>,
    #[serde(default)]
    pub leq: Vec<Pair>,
    #[serde(default)]
    pub ll: Vec<Pair>,
    #[serde(default, skip_serializing_if = "is_empty_ops")]
    pub ops: StrictMap<StrictMap<String>>,
    pub iota: StrictMap<String>,
    pub kappa: StrictMap<String>,
}

impl AmalgamJson {
    pub fn from_amalgam(w: &Amalgam) -> AmalgamJson {
        let StructureJson { universe, leq, ll, ops } = StructureJson::from_structure(&w.d);
        AmalgamJson { universe, leq, ll, ops, iota: map_json(&w.iota), kappa: map_json(&w.kappa) }
    }

    pub fn to_amalgam(&self) -> Result<Amalgam, InputError> {
        let d = StructureJson {
            universe: self.universe.clone(),
            leq: self.leq.clone(),
            ll: self.ll.clone(),
            ops: self.ops.clone(),
        }
        .to_structure()?;
        Ok(Amalgam { d, iota: label_map(&self.iota)?, kappa: label_map(&self.kappa)? })
    }
}

pub fn report_json(r: &Report) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({"axiom": v.axiom, "witness": v.witness.iter().map(Label::as_str).collect::<Vec<_>>()}))
        .collect();
    json!({"ok": r.ok(), "violations": violations})
}

pub fn config_json(c: &SearchConfig) -> Value {
    json!({
        "allowIdentification": c.allow_identification,
        "extraElements": c.extra_elements,
        "maxNodes": c.max_nodes,
        "timeBudgetMs": c.time_budget_ms,
    })
}

pub fn scope_token(s: Scope) -> &'static str {
    match s {
        Scope::Complete => "complete",
        Scope::AtBound => "atBound",
    }
}

pub fn search_json(r: &SearchResult) -> Value {
    match r {
        SearchResult::Witness { amalgam, nodes } => {
            json!({"outcome": "WITNESS", "nodes": nodes, "amalgam": AmalgamJson::from_amalgam(amalgam)})
        }
        SearchResult::Exhausted { nodes, bound, scope } => json!({
            "outcome": "EXHAUSTED",
            "nodes": nodes,
            "bound": config_json(bound),
            "scope": scope_token(*scope),
        }),
    }
}

pub fn ap_report_json(t: &Theory, r: &ApReport) -> Value {
    json!({
        "theory": TheoryJson::from_theory(t),
        "ok": r.ok(),
        "checked": r.checked,
        "constructed": r.constructed,
        "searched": r.searched,
        "failures": r.failures.iter().map(VFormationJson::from_vformation).collect::<Vec<_>>(),
    })
}

fn extension_json(e: &ExtensionType) -> Value {
    json!({
        "base": e.base.iter().map(Label::as_str).collect::<Vec<_>>(),
        "extension": StructureJson::from_structure(&e.extension),
    })
}

pub fn saturation_json(m: &Structure, r: &SaturationReport) -> Value {
    json!({
        "structure": StructureJson::from_structure(m),
        "rounds": r.rounds,
        "added": r.added,
        "fixpoint": r.fixpoint,
        "realized": r.realized,
        "unrealized": r.unrealized.iter().map(extension_json).collect::<Vec<_>>(),
    })
}

pub fn runner_token(r: Runner) -> &'static str {
    match r {
        Runner::Oracle => "oracle",
        Runner::FreeAmalgam => "freeAmalgam",
    }
}

/// A fixture as exported for external tooling.
pub fn fixture_json(f: &Fixture) -> Value {
    json!({
        "name": f.name,
        "theory": TheoryJson::from_theory(&f.theory),
        "vformation": VFormationJson::from_vformation(&f.vformation),
        "mode": f.mode.token(),
        "config": config_json(&f.config),
        "runner": runner_token(f.runner),
        "expected": f.expected.token(),
    })
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, InputError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_structure(text: &str) -> Result<Structure, InputError> {
    parse::<StructureJson>(text)?.to_structure()
}

pub fn parse_theory(text: &str) -> Result<Theory, InputError> {
    parse::<TheoryJson>(text)?.to_theory()
}

pub fn parse_vformation(text: &str) -> Result<VFormation, InputError> {
    parse::<VFormationJson>(text)?.to_vformation()
}

pub fn parse_amalgam(text: &str) -> Result<Amalgam, InputError> {
    parse::<AmalgamJson>(text)?.to_amalgam()
}

pub fn structure_value(s: &Structure) -> Value {
    serde_json::to_value(StructureJson::from_structure(s)).expect("serializable")
}
