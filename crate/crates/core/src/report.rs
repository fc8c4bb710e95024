//! Summary of where a loop sits in the solvability and nilpotence hierarchy.

use std::collections::BTreeMap;
use std::fmt;

use crate::commutator::{
    classical_derived_series, congruence_derived_series, is_supernilpotent, nilpotency_class_loop,
};
use crate::error::{Error, Result};
use crate::loops::LoopTable;
use crate::mult::{assoc_group, AssocGroup};
use crate::permgroup::Class;
use crate::structure::center_subloop;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HierarchyReport {
    pub order: usize,
    pub commutative: bool,
    pub associative: bool,
    pub center_size: usize,
    pub nilpotency_class: Class,
    pub congruence_solvability_class: Class,
    pub classical_solvability_class: Class,
    pub supernilpotent: bool,
    pub mlt_order: u128,
    pub mlt_solvable_class: Class,
    pub mlt_nilpotency_class: Class,
    pub inn_order: u128,
    pub inn_solvable_class: Class,
}

/// Field names in serialization order.
pub const REPORT_KEYS: [&str; 13] = [
    "associative",
    "center_size",
    "classical_solvability_class",
    "commutative",
    "congruence_solvability_class",
    "inn_order",
    "inn_solvable_class",
    "mlt_nilpotency_class",
    "mlt_order",
    "mlt_solvable_class",
    "nilpotency_class",
    "order",
    "supernilpotent",
];

impl HierarchyReport {
    pub fn analyze(q: &LoopTable) -> Result<Self> {
        let mlt = assoc_group(q, AssocGroup::Mlt)?;
        let inn = assoc_group(q, AssocGroup::Inn)?;
        Ok(HierarchyReport {
            order: q.order(),
            commutative: q.is_commutative(),
            associative: q.is_associative(),
            center_size: center_subloop(q).len(),
            nilpotency_class: nilpotency_class_loop(q)?,
            congruence_solvability_class: congruence_derived_series(q)?.class,
            classical_solvability_class: classical_derived_series(q)?.class,
            supernilpotent: is_supernilpotent(q)?,
            mlt_order: mlt.order()?,
            mlt_solvable_class: mlt.solvable_class()?,
            mlt_nilpotency_class: mlt.nilpotency_class()?,
            inn_order: inn.order()?,
            inn_solvable_class: inn.solvable_class()?,
        })
    }

    /// `(key, value)` pairs in key order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let v = [
            self.associative.to_string(),
            self.center_size.to_string(),
            self.classical_solvability_class.to_string(),
            self.commutative.to_string(),
            self.congruence_solvability_class.to_string(),
            self.inn_order.to_string(),
            self.inn_solvable_class.to_string(),
            self.mlt_nilpotency_class.to_string(),
            self.mlt_order.to_string(),
            self.mlt_solvable_class.to_string(),
            self.nilpotency_class.to_string(),
            self.order.to_string(),
            self.supernilpotent.to_string(),
        ];
        REPORT_KEYS.into_iter().zip(v).collect()
    }

    /// Single-line `key=value,key=value` form.
    pub fn to_compact(&self) -> String {
        self.fields()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_compact(s: &str) -> Result<Self> {
        let pairs = s.split(',').map(|kv| {
            kv.split_once('=')
                .ok_or_else(|| Error::Malformed(format!("bad report field {kv:?}")))
        });
        Self::from_pairs(pairs)
    }

    /// Parses the multi-line `key: value` form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let pairs = s.lines().filter(|l| !l.trim().is_empty()).map(|l| {
            l.split_once(':')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Malformed(format!("bad report line {l:?}")))
        });
        Self::from_pairs(pairs)
    }

    fn from_pairs<'a>(pairs: impl Iterator<Item = Result<(&'a str, &'a str)>>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for p in pairs {
            let (k, v) = p?;
            if !REPORT_KEYS.contains(&k) {
                return Err(Error::Malformed(format!("unknown report key {k:?}")));
            }
            if map.insert(k, v).is_some() {
                return Err(Error::Malformed(format!("duplicate report key {k:?}")));
            }
        }
        fn get<'a>(map: &BTreeMap<&str, &'a str>, k: &str) -> Result<&'a str> {
            map.get(k)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("missing report key {k:?}")))
        }
        fn num<T: std::str::FromStr>(map: &BTreeMap<&str, &str>, k: &str) -> Result<T> {
            let v = get(map, k)?;
            v.parse()
                .map_err(|_| Error::Malformed(format!("bad value {v:?} for {k}")))
        }
        Ok(HierarchyReport {
            order: num(&map, "order")?,
            commutative: num(&map, "commutative")?,
            associative: num(&map, "associative")?,
            center_size: num(&map, "center_size")?,
            nilpotency_class: num(&map, "nilpotency_class")?,
            congruence_solvability_class: num(&map, "congruence_solvability_class")?,
            classical_solvability_class: num(&map, "classical_solvability_class")?,
            supernilpotent: num(&map, "supernilpotent")?,
            mlt_order: num(&map, "mlt_order")?,
            mlt_solvable_class: num(&map, "mlt_solvable_class")?,
            mlt_nilpotency_class: num(&map, "mlt_nilpotency_class")?,
            inn_order: num(&map, "inn_order")?,
            inn_solvable_class: num(&map, "inn_solvable_class")?,
        })
    }

    /// Relations that must hold between the fields of any report.
    pub fn consistency_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.nilpotency_class.is_finite() && !self.congruence_solvability_class.is_finite() {
            out.push("nilpotent but not congruence solvable");
        }
        if self.congruence_solvability_class < self.classical_solvability_class {
            out.push("classical class exceeds congruence class");
        }
        if self.supernilpotent && !self.nilpotency_class.is_finite() {
            out.push("supernilpotent but not nilpotent");
        }
        if self.order == 0 || self.center_size == 0 || !self.order.is_multiple_of(self.center_size) {
            out.push("center size does not divide order");
        }
        if !self.mlt_order.is_multiple_of(self.inn_order) || self.mlt_order / self.inn_order != self.order as u128 {
            out.push("inner mapping group index is not the order");
        }
        if self.commutative && self.associative && self.inn_order != 1 {
            out.push("abelian group with nontrivial inner mappings");
        }
        out
    }
}

impl fmt::Display for HierarchyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.fields() {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}
