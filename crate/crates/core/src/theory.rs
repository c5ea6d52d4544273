//! Theories over the signature `{≤, ≪}` plus named unary operations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// A single-relation property, numbered as in the literature on comparable
/// binary relations. Transitivity is not a member: it is governed by
/// [`Theory::transitive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop {
    Reflexive = 2,
    Symmetric = 3,
    Antireflexive = 4,
    Antisymmetric = 5,
}

impl Prop {
    pub const ALL: [Prop; 4] = [Prop::Reflexive, Prop::Symmetric, Prop::Antireflexive, Prop::Antisymmetric];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Prop> {
        Prop::ALL.into_iter().find(|p| p.number() == n)
    }

    pub fn name(self) -> &'static str {
        match self {
            Prop::Reflexive => "REFLEXIVE",
            Prop::Symmetric => "SYMMETRIC",
            Prop::Antireflexive => "ANTIREFLEXIVE",
            Prop::Antisymmetric => "ANTISYMMETRIC",
        }
    }
}

/// A set of [`Prop`]s. Reflexive and antireflexive together are rejected.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelProps(u8);

impl RelProps {
    pub const EMPTY: RelProps = RelProps(0);
    /// `{2, 5}`: reflexive and antisymmetric, i.e. a partial order once transitive.
    pub const ORDER: RelProps = RelProps((1 << 2) | (1 << 5));
    /// `{4}`.
    pub const STRICT: RelProps = RelProps(1 << 4);
    /// `{2}`.
    pub const REFLEXIVE: RelProps = RelProps(1 << 2);
    /// `{5}`.
    pub const ANTISYMMETRIC: RelProps = RelProps(1 << 5);

    pub fn of(props: &[Prop]) -> Result<RelProps, Error> {
        let set = RelProps(props.iter().fold(0, |acc, p| acc | (1 << p.number())));
        if set.contains(Prop::Reflexive) && set.contains(Prop::Antireflexive) {
            return Err(Error::InvalidTheory(String::from(
                "a relation cannot be both reflexive (2) and antireflexive (4)",
            )));
        }
        Ok(set)
    }

    pub fn from_numbers(numbers: &[u8]) -> Result<RelProps, Error> {
        let props = numbers
            .iter()
            .map(|&n| Prop::from_number(n).ok_or_else(|| Error::InvalidTheory(format!("unknown relation property {n}"))))
            .collect::<Result<Vec<_>, _>>()?;
        RelProps::of(&props)
    }

    pub fn contains(self, p: Prop) -> bool {
        self.0 & (1 << p.number()) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Prop> {
        Prop::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    pub fn numbers(self) -> Vec<u8> {
        self.iter().map(Prop::number).collect()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Every valid subset of `{2, 4, 5}`.
    pub fn all_standard() -> impl Iterator<Item = RelProps> {
        (0u8..8).filter_map(|mask| {
            let props: Vec<Prop> = [Prop::Reflexive, Prop::Antireflexive, Prop::Antisymmetric]
                .into_iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| p)
                .collect();
            RelProps::of(&props).ok()
        })
    }
}

impl fmt::Debug for RelProps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.numbers()).finish()
    }
}

/// Conditions linking `≪` to `≤`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `≪ ⊆ ≤`.
    Finer,
    /// `≤ ⊆ ≪`.
    Coarser,
    /// `w ≤ x ≪ y` implies `w ≪ y`.
    A1,
    /// `x ≪ y ≤ z` implies `x ≪ z`.
    A2,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::Finer, Condition::Coarser, Condition::A1, Condition::A2];

    pub fn token(self) -> &'static str {
        match self {
            Condition::Finer => "F",
            Condition::Coarser => "C",
            Condition::A1 => "A1",
            Condition::A2 => "A2",
        }
    }

    pub fn from_token(s: &str) -> Option<Condition> {
        Condition::ALL.into_iter().find(|c| c.token() == s)
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Conditions(u8);

impl Conditions {
    pub const EMPTY: Conditions = Conditions(0);

    pub fn of(conds: &[Condition]) -> Conditions {
        Conditions(conds.iter().fold(0, |acc, &c| acc | (1 << c as u8)))
    }

    pub fn contains(self, c: Condition) -> bool {
        self.0 & (1 << c as u8) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Condition> {
        Condition::ALL.into_iter().filter(move |&c| self.contains(c))
    }

    pub fn with(self, c: Condition) -> Conditions {
        Conditions(self.0 | (1 << c as u8))
    }

    /// All sixteen subsets of `{F, C, A1, A2}`.
    pub fn all() -> impl Iterator<Item = Conditions> {
        (0u8..16).map(Conditions)
    }
}

impl fmt::Debug for Conditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Condition::token)).finish()
    }
}

/// Further universal axioms, all about `≤` except [`Extras::urquhart`],
/// which reads `≤` and `≪` as the two preorders `≤1`, `≤2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Extras {
    /// `x ≤ y` and `x ≪ y` imply `x = y`.
    pub urquhart: bool,
    /// Elements with a common lower bound are comparable, and dually.
    pub union_of_chains: bool,
    /// No antichain of cardinality `n + 1`.
    pub max_antichain: Option<usize>,
}

impl Extras {
    pub fn is_empty(&self) -> bool {
        !self.urquhart && !self.union_of_chains && self.max_antichain.is_none()
    }
}

/// Which relations a unary operation must preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Preserves {
    pub leq: bool,
    pub ll: bool,
}

impl Preserves {
    pub const LEQ: Preserves = Preserves { leq: true, ll: false };
    pub const LL: Preserves = Preserves { leq: false, ll: true };
    pub const BOTH: Preserves = Preserves { leq: true, ll: true };
}

/// `T = T_{P,Q,N}` with optional extra axioms and an operation signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    /// Properties of `≤`.
    pub leq: RelProps,
    /// Properties of `≪`.
    pub ll: RelProps,
    pub conditions: Conditions,
    pub extras: Extras,
    pub ops: BTreeMap<String, Preserves>,
    /// Both relations are transitive. Only the free-amalgamation regime turns this off.
    pub transitive: bool,
}

impl Theory {
    pub fn new(leq: RelProps, ll: RelProps, conditions: Conditions) -> Theory {
        Theory { leq, ll, conditions, extras: Extras::default(), ops: BTreeMap::new(), transitive: true }
    }

    /// Partial orders; `≪` is forced equal to `≤`.
    pub fn posets() -> Theory {
        Theory::new(RelProps::ORDER, RelProps::EMPTY, Conditions::of(&[Condition::Finer, Condition::Coarser]))
    }

    /// A partial order with a coarser partial order.
    pub fn coarser_orders() -> Theory {
        Theory::new(RelProps::ORDER, RelProps::ORDER, Conditions::of(&[Condition::Coarser]))
    }

    /// Posets with an auxiliary relation.
    pub fn auxiliary() -> Theory {
        Theory::new(
            RelProps::ORDER,
            RelProps::EMPTY,
            Conditions::of(&[Condition::Finer, Condition::A1, Condition::A2]),
        )
    }

    /// Causal spaces: posets with an antireflexive auxiliary relation.
    pub fn causal() -> Theory {
        Theory { ll: RelProps::STRICT, ..Theory::auxiliary() }
    }

    pub fn with_extras(mut self, extras: Extras) -> Result<Theory, Error> {
        if extras.max_antichain == Some(0) {
            return Err(Error::InvalidTheory(String::from("maxAntichain bound must be positive")));
        }
        self.extras = extras;
        Ok(self)
    }

    pub fn with_op(mut self, name: &str, preserves: Preserves) -> Result<Theory, Error> {
        if !preserves.leq && !preserves.ll {
            return Err(Error::InvalidTheory(format!("operation {name} must preserve at least one relation")));
        }
        if name.is_empty() {
            return Err(Error::InvalidTheory(String::from("empty operation name")));
        }
        self.ops.insert(String::from(name), preserves);
        Ok(self)
    }

    pub fn non_transitive(mut self) -> Theory {
        self.transitive = false;
        self
    }

    pub fn has(&self, c: Condition) -> bool {
        self.conditions.contains(c)
    }

    /// The relational core `T_{P,Q,N}` without extras or operations.
    pub fn relational(&self) -> Theory {
        Theory::new(self.leq, self.ll, self.conditions)
    }

    /// Combinations of `(P, Q, N)` that collapse the class of models.
    pub fn degeneracies(&self) -> Vec<Degeneracy> {
        let mut out = Vec::new();
        let f = self.has(Condition::Finer);
        let c = self.has(Condition::Coarser);
        let a = self.has(Condition::A1) || self.has(Condition::A2);
        if f && c {
            out.push(Degeneracy::LlEqualsLeq);
        }
        if self.ll.contains(Prop::Reflexive) && a {
            out.push(Degeneracy::ReflexiveAuxiliaryIsCoarser);
            if f && !c {
                out.push(Degeneracy::LlEqualsLeq);
            }
        }
        if self.leq.contains(Prop::Reflexive) && self.ll.contains(Prop::Antireflexive) && c {
            out.push(Degeneracy::OnlyEmptyModel);
        }
        if self.ll.contains(Prop::Reflexive) && self.leq.contains(Prop::Antireflexive) && f {
            out.push(Degeneracy::OnlyEmptyModel);
        }
        out
    }

    /// Nonempty models exist only if this is false.
    pub fn only_empty_models(&self) -> bool {
        self.degeneracies().contains(&Degeneracy::OnlyEmptyModel)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// `≪ = ≤` in every model.
    LlEqualsLeq,
    /// A reflexive `≪` with (A1) or (A2) is coarser than `≤`.
    ReflexiveAuxiliaryIsCoarser,
    /// No nonempty model exists.
    OnlyEmptyModel,
}
