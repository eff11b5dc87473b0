use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A cost in ℕ ∪ {TOP}. `Fin` values always compare below `Top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cost {
    Fin(u64),
    Top,
}

impl Cost {
    pub const ZERO: Cost = Cost::Fin(0);

    pub fn is_top(self) -> bool {
        matches!(self, Cost::Top)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Fin(x) => Some(x),
            Cost::Top => None,
        }
    }

    pub fn plus(self, w: u64) -> Cost {
        match self {
            Cost::Fin(x) => Cost::Fin(x.saturating_add(w)),
            Cost::Top => Cost::Top,
        }
    }

    /// Subtraction used for residual bounds; `Top` stays `Top`.
    pub fn minus(self, w: u64) -> Option<Cost> {
        match self {
            Cost::Fin(x) => x.checked_sub(w).map(Cost::Fin),
            Cost::Top => Some(Cost::Top),
        }
    }

    /// Maps values above `cap` to `Top`.
    pub fn cap(self, cap: u64) -> Cost {
        match self {
            Cost::Fin(x) if x > cap => Cost::Top,
            c => c,
        }
    }
}

impl From<u64> for Cost {
    fn from(x: u64) -> Self {
        Cost::Fin(x)
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Fin(a), Cost::Fin(b)) => Cost::Fin(a.saturating_add(b)),
            _ => Cost::Top,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Fin(x) => write!(f, "{x}"),
            Cost::Top => f.write_str("inf"),
        }
    }
}

impl FromStr for Cost {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" => Ok(Cost::Top),
            _ => s
                .parse::<u64>()
                .map(Cost::Fin)
                .map_err(|_| format!("expected a natural number or `inf`, found `{s}`")),
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cost::Fin(x) => s.serialize_u64(*x),
            Cost::Top => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CostVisitor;
        impl<'de> Visitor<'de> for CostVisitor {
            type Value = Cost;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a natural number or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Cost, E> {
                Ok(Cost::Fin(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Cost, E> {
                u64::try_from(v)
                    .map(Cost::Fin)
                    .map_err(|_| E::custom("negative cost"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Cost, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(CostVisitor)
    }
}

/// One cost per player, indexed by player id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CostVector(pub Vec<Cost>);

impl CostVector {
    pub fn new(entries: Vec<Cost>) -> Self {
        CostVector(entries)
    }

    pub fn top(len: usize) -> Self {
        CostVector(vec![Cost::Top; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Cost> + '_ {
        self.0.iter().copied()
    }

    /// Componentwise `≤` on the given players.
    pub fn le_on(&self, other: &CostVector, players: PlayerSet) -> bool {
        players.iter().all(|i| self.0[i] <= other.0[i])
    }

    /// Strict Pareto order on the given players: `≤` everywhere, `<` somewhere.
    pub fn lt_on(&self, other: &CostVector, players: PlayerSet) -> bool {
        self.le_on(other, players) && players.iter().any(|i| self.0[i] < other.0[i])
    }

    pub fn lt(&self, other: &CostVector) -> bool {
        self.lt_on(other, PlayerSet::all(self.len()))
    }
}

impl Index<usize> for CostVector {
    type Output = Cost;
    fn index(&self, i: usize) -> &Cost {
        &self.0[i]
    }
}

impl fmt::Display for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Small bitset of player ids (at most 32 players).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerSet(pub u32);

impl PlayerSet {
    pub const MAX_PLAYERS: usize = 32;

    pub fn empty() -> Self {
        PlayerSet(0)
    }

    pub fn all(n: usize) -> Self {
        if n >= 32 {
            PlayerSet(u32::MAX)
        } else {
            PlayerSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        PlayerSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn with(self, i: usize) -> Self {
        PlayerSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        PlayerSet(self.0 & !(1 << i))
    }

    pub fn union(self, o: PlayerSet) -> Self {
        PlayerSet(self.0 | o.0)
    }

    pub fn intersect(self, o: PlayerSet) -> Self {
        PlayerSet(self.0 & o.0)
    }

    pub fn minus(self, o: PlayerSet) -> Self {
        PlayerSet(self.0 & !o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, o: PlayerSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }
}

impl FromIterator<usize> for PlayerSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PlayerSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_absorbs_and_orders_last() {
        assert_eq!(Cost::Fin(3) + Cost::Top, Cost::Top);
        assert_eq!(Cost::Top.plus(1), Cost::Top);
        assert!(Cost::Fin(u64::MAX) < Cost::Top);
        assert_eq!(Cost::Fin(7).cap(6), Cost::Top);
        assert_eq!(Cost::Top.minus(4), Some(Cost::Top));
        assert_eq!(Cost::Fin(2).minus(3), None);
    }

    #[test]
    fn pareto_order() {
        let a = CostVector(vec![Cost::Fin(0), Cost::Fin(3), Cost::Fin(1)]);
        let b = CostVector(vec![Cost::Fin(9), Cost::Fin(3), Cost::Fin(2)]);
        let env = PlayerSet(0b110);
        assert!(a.lt_on(&b, env));
        assert!(!a.lt_on(&a, env));
        assert!(!b.lt_on(&a, env));
    }

    #[test]
    fn cost_text_and_json() {
        assert_eq!("inf".parse::<Cost>().unwrap(), Cost::Top);
        assert_eq!("12".parse::<Cost>().unwrap(), Cost::Fin(12));
        assert!("-1".parse::<Cost>().is_err());
        let v = CostVector(vec![Cost::Fin(2), Cost::Top]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[2,"inf"]"#);
        assert_eq!(serde_json::from_str::<CostVector>(&s).unwrap(), v);
    }
}
