//! Named searches for loops with prescribed properties.
//!
//! A preset is either a cocycle search over a fixed fiber and base, or a
//! scan of all loops `G[⊕]` over the Latin squares `⊕` on a group `G`.
//! Results depend only on the preset, seed and budget.

use std::fmt;
use std::str::FromStr;

use crate::commutator::{
    a3_conditions, classical_derived_series, congruence_derived_series, is_abelian_in_a1,
    is_supernilpotent, nilpotency_class_loop, A3Conditions,
};
use crate::error::{Error, Result};
use crate::extensions::{
    search_cocycles, AbelianGroup, Cocycle, CocycleKind, CocycleSpace, SearchMode,
};
use crate::library::{abelian_group, latin_squares, small_groups};
use crate::loops::{g_oplus, LatinSquare, LoopTable};
use crate::mult::{assoc_group, AssocGroup};
use crate::structure::{is_normal, Subloop};

/// Properties a witness must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// The fiber `A × {1}` is not abelian in the loop.
    FiberNotAbelian,
    /// Not associative and centrally nilpotent.
    NonassociativeNilpotent,
    /// The inner mapping group is not solvable.
    InnNonsolvable,
    /// Multiplication group solvable, loop not congruence solvable.
    MltSolvableCongruenceNonsolvable,
    /// Inner mapping group solvable, multiplication group not.
    InnSolvableMltNonsolvable,
    /// The fiber's six abelianness conditions match the pattern exactly.
    A3Pattern([bool; 6]),
    /// Conditions ii) to vi) match one of two patterns; i) is ignored.
    A3EitherPattern([bool; 6], [bool; 6]),
    Any,
}

impl Property {
    const NAMES: [(&'static str, Property); 6] = [
        ("fiber-not-abelian", Property::FiberNotAbelian),
        ("nonassociative-nilpotent", Property::NonassociativeNilpotent),
        ("inn-nonsolvable", Property::InnNonsolvable),
        ("inn-solvable-mlt-nonsolvable", Property::InnSolvableMltNonsolvable),
        ("mlt-solvable-congruence-nonsolvable", Property::MltSolvableCongruenceNonsolvable),
        ("any", Property::Any),
    ];
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|&(_, p)| p)
            .ok_or_else(|| Error::Malformed(format!("unknown property {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Cocycles {
        fiber: AbelianGroup,
        base: LoopTable,
        kind: CocycleKind,
        random: bool,
    },
    GOplus { group: LoopTable },
    /// Every loop on `G × Z₂` with `(x,a)(y,b) = (f_{a,b}(x,y), a+b)` and
    /// `f_{0,0}` the group operation, for Latin squares `f_{0,1}` with
    /// identity first row, `f_{1,0}` with identity first column, and any
    /// `f_{1,1}`. Candidates where `G × 0` is not normal are skipped.
    IndexTwo { group: LoopTable },
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: String,
    pub source: Source,
    pub property: Property,
}

/// Names of the built-in presets.
pub const PRESET_NAMES: [&str; 9] = [
    "z4-by-z2-nonabelian",
    "z4-by-z2-abelian-cocycles",
    "order6-nilpotent",
    "z2cubed-nonsolvable-inn",
    "inn-solvable-mlt-nonsolvable-hunt",
    "goplus-z2sq-not-i",
    "goplus-z4-not-i",
    "goplus-z4-not-vi",
    "z4-by-z2-partial-associators",
];

const ALL_BUT_I: [bool; 6] = [false, true, true, true, true, true];
const ALL_BUT_VI: [bool; 6] = [true, true, true, true, true, false];
const ONLY_III_FAILS: [bool; 6] = [false, true, false, true, true, true];
const ONLY_V_FAILS: [bool; 6] = [false, true, true, true, false, true];

fn fiber_group(spec: &str) -> Result<AbelianGroup> {
    AbelianGroup::new(named_loop(spec)?)
}

/// `Zn`, products `Z2xZ4`, powers `Z2^3`, or a name from the small-group list.
pub fn named_loop(spec: &str) -> Result<LoopTable> {
    if let Some((_, g)) = small_groups().into_iter().find(|(n, _)| *n == spec) {
        return Ok(g);
    }
    let mut factors = Vec::new();
    for part in spec.split('x') {
        let body = part
            .strip_prefix('Z')
            .ok_or_else(|| Error::Malformed(format!("unknown group {spec:?}")))?;
        let (n, k) = match body.split_once('^') {
            Some((n, k)) => (n, k),
            None => (body, "1"),
        };
        let bad = || Error::Malformed(format!("unknown group {spec:?}"));
        let n: usize = n.parse().map_err(|_| bad())?;
        let k: usize = k.parse().map_err(|_| bad())?;
        if n == 0 || k == 0 || k > 9 {
            return Err(bad());
        }
        factors.extend(std::iter::repeat_n(n, k));
    }
    abelian_group(&factors)
}

impl Preset {
    pub fn builtin(name: &str) -> Result<Preset> {
        let cocycles = |a: &str, f: &str, kind, random, property| -> Result<Preset> {
            Ok(Preset {
                name: name.to_string(),
                source: Source::Cocycles {
                    fiber: fiber_group(a)?,
                    base: named_loop(f)?,
                    kind,
                    random,
                },
                property,
            })
        };
        let goplus = |g: &str, property| -> Result<Preset> {
            Ok(Preset {
                name: name.to_string(),
                source: Source::GOplus {
                    group: named_loop(g)?,
                },
                property,
            })
        };
        use CocycleKind::*;
        match name {
            "z4-by-z2-nonabelian" => goplus("Z4", Property::MltSolvableCongruenceNonsolvable),
            "z4-by-z2-abelian-cocycles" => {
                cocycles("Z4", "Z2", Abelian, false, Property::FiberNotAbelian)
            }
            "order6-nilpotent" => cocycles("Z2", "Z3", Central, false, Property::NonassociativeNilpotent),
            "z2cubed-nonsolvable-inn" => cocycles("Z2^3", "Z2", Abelian, true, Property::InnNonsolvable),
            "inn-solvable-mlt-nonsolvable-hunt" => {
                cocycles("Z2^3", "Z2", Abelian, true, Property::InnSolvableMltNonsolvable)
            }
            "goplus-z2sq-not-i" => goplus("Z2^2", Property::A3Pattern(ALL_BUT_I)),
            "goplus-z4-not-i" => goplus("Z4", Property::A3Pattern(ALL_BUT_I)),
            "goplus-z4-not-vi" => goplus("Z4", Property::A3Pattern(ALL_BUT_VI)),
            "z4-by-z2-partial-associators" => Ok(Preset {
                name: name.to_string(),
                source: Source::IndexTwo {
                    group: named_loop("Z4")?,
                },
                property: Property::A3EitherPattern(ONLY_III_FAILS, ONLY_V_FAILS),
            }),
            _ => Err(Error::Malformed(format!("unknown preset {name:?}"))),
        }
    }

    /// `kind:fiber:base:property`, for instance `central:Z2:Z3:any` or
    /// `abelian:Z2^2:S3:inn-nonsolvable`. A `kind` of `abelian-random` or
    /// `central-random` selects random mode.
    pub fn custom(spec: &str) -> Result<Preset> {
        let parts: Vec<&str> = spec.split(':').collect();
        let [kind, a, f, prop] = parts[..] else {
            return Err(Error::Malformed(format!(
                "custom search {spec:?} is not kind:fiber:base:property"
            )));
        };
        let (kind, random) = match kind {
            "abelian" => (CocycleKind::Abelian, false),
            "central" => (CocycleKind::Central, false),
            "abelian-random" => (CocycleKind::Abelian, true),
            "central-random" => (CocycleKind::Central, true),
            _ => return Err(Error::Malformed(format!("unknown cocycle kind {kind:?}"))),
        };
        Ok(Preset {
            name: "custom".into(),
            source: Source::Cocycles {
                fiber: fiber_group(a)?,
                base: named_loop(f)?,
                kind,
                random,
            },
            property: prop.parse()?,
        })
    }
}

/// A loop found by a preset, with the data needed to reproduce it.
#[derive(Clone, Debug)]
pub struct Witness {
    /// Candidate index within the preset's enumeration.
    pub index: u128,
    pub table: LoopTable,
    pub cocycle: Option<Cocycle>,
    pub verdict: Verdict,
}

/// The properties recorded for each witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub fields: Vec<(&'static str, String)>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn a3_pattern(q: &LoopTable, fiber: &Subloop) -> Option<A3Conditions> {
    a3_conditions(q, fiber).ok()
}

/// Evaluates `property` and, on success, the verdict fields.
fn judge(q: &LoopTable, fiber: &Subloop, property: Property) -> Result<Option<Verdict>> {
    let ok = match property {
        Property::Any => true,
        Property::FiberNotAbelian => !is_abelian_in_a1(q, fiber)?,
        Property::NonassociativeNilpotent => {
            !q.is_associative() && nilpotency_class_loop(q)?.is_finite()
        }
        Property::InnNonsolvable => !assoc_group(q, AssocGroup::Inn)?.solvable_class()?.is_finite(),
        Property::MltSolvableCongruenceNonsolvable => {
            !congruence_derived_series(q)?.class.is_finite()
                && assoc_group(q, AssocGroup::Mlt)?.solvable_class()?.is_finite()
        }
        Property::InnSolvableMltNonsolvable => {
            assoc_group(q, AssocGroup::Inn)?.solvable_class()?.is_finite()
                && !assoc_group(q, AssocGroup::Mlt)?.solvable_class()?.is_finite()
        }
        Property::A3Pattern(p) => a3_pattern(q, fiber).is_some_and(|c| c.as_array() == p),
        Property::A3EitherPattern(p, r) => {
            a3_pattern(q, fiber).is_some_and(|c| {
                let c = c.as_array();
                c[1..] == p[1..] || c[1..] == r[1..]
            })
        }
    };
    if !ok {
        return Ok(None);
    }
    let mlt = assoc_group(q, AssocGroup::Mlt)?;
    let inn = assoc_group(q, AssocGroup::Inn)?;
    let mut fields = vec![
        ("order", q.order().to_string()),
        ("associative", q.is_associative().to_string()),
        ("nilpotency_class", nilpotency_class_loop(q)?.to_string()),
        ("supernilpotent", is_supernilpotent(q)?.to_string()),
        ("congruence_solvability_class", congruence_derived_series(q)?.class.to_string()),
        ("classical_solvability_class", classical_derived_series(q)?.class.to_string()),
        ("mlt_order", mlt.order()?.to_string()),
        ("mlt_solvable_class", mlt.solvable_class()?.to_string()),
        ("inn_order", inn.order()?.to_string()),
        ("inn_solvable_class", inn.solvable_class()?.to_string()),
    ];
    match a3_pattern(q, fiber) {
        Some(c) => {
            let fails = c.failures();
            fields.push(("fiber_abelian_in", c.all().to_string()));
            fields.push((
                "fiber_failed_conditions",
                if fails.is_empty() { "none".into() } else { fails.join(",") },
            ));
        }
        None => fields.push(("fiber_abelian_in", "not-normal".into())),
    }
    Ok(Some(Verdict { fields }))
}

/// Runs a preset. `budget` bounds the number of random candidates and is
/// ignored by exhaustive presets; at most `max_hits` witnesses are kept.
pub fn run_preset(preset: &Preset, seed: u64, budget: u64, max_hits: Option<usize>) -> Result<Vec<Witness>> {
    match &preset.source {
        Source::Cocycles {
            fiber,
            base,
            kind,
            random,
        } => {
            let space = CocycleSpace::new(fiber.clone(), base.clone(), *kind)?;
            let mode = if *random {
                SearchMode::Random { seed, budget }
            } else {
                SearchMode::Exhaustive
            };
            let fiber_elems: Vec<usize> = (0..fiber.order()).collect();
            let mut verdicts = Vec::new();
            let mut err = None;
            let hits = search_cocycles(&space, mode, max_hits, |q, _| {
                if err.is_some() {
                    return false;
                }
                let sub = Subloop::from_elements(q, &fiber_elems).expect("fiber is a subloop");
                match judge(q, &sub, preset.property) {
                    Ok(Some(v)) => {
                        verdicts.push(v);
                        true
                    }
                    Ok(None) => false,
                    Err(e) => {
                        err = Some(e);
                        false
                    }
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            Ok(hits
                .into_iter()
                .zip(verdicts)
                .map(|(h, verdict)| Witness {
                    index: h.index,
                    table: h.table,
                    cocycle: Some(h.cocycle),
                    verdict,
                })
                .collect())
        }
        Source::GOplus { group } => {
            let n = group.order();
            let fiber_elems: Vec<usize> = (0..n).collect();
            let mut out = Vec::new();
            for (index, sq) in latin_squares(n).into_iter().enumerate() {
                if max_hits.is_some_and(|m| out.len() >= m) {
                    break;
                }
                let q = g_oplus(group, &sq)?;
                let sub = Subloop::from_elements(&q, &fiber_elems)?;
                if let Some(verdict) = judge(&q, &sub, preset.property)? {
                    out.push(Witness {
                        index: index as u128,
                        table: q,
                        cocycle: None,
                        verdict,
                    });
                }
            }
            Ok(out)
        }
        Source::IndexTwo { group } => {
            let n = group.order();
            let squares = latin_squares(n);
            let first_row: Vec<&LatinSquare> = squares
                .iter()
                .filter(|s| (0..n).all(|y| s.get(group.neutral(), y) == y))
                .collect();
            let first_col: Vec<&LatinSquare> = squares
                .iter()
                .filter(|s| (0..n).all(|x| s.get(x, group.neutral()) == x))
                .collect();
            let fiber_elems: Vec<usize> = (0..n).collect();
            let mut out = Vec::new();
            let mut index: u128 = 0;
            for f01 in &first_row {
                for f10 in &first_col {
                    for f11 in &squares {
                        if max_hits.is_some_and(|m| out.len() >= m) {
                            return Ok(out);
                        }
                        let blocks = [[group.square(), *f01], [*f10, f11]];
                        let q = LoopTable::from_fn(2 * n, |p, r| {
                            let (x, a) = (p % n, p / n);
                            let (y, b) = (r % n, r / n);
                            blocks[a][b].get(x, y) + n * ((a + b) % 2)
                        })?;
                        let sub = Subloop::from_elements(&q, &fiber_elems)?;
                        if is_normal(&q, &sub) {
                            if let Some(verdict) = judge(&q, &sub, preset.property)? {
                                out.push(Witness {
                                    index,
                                    table: q,
                                    cocycle: None,
                                    verdict,
                                });
                            }
                        }
                        index += 1;
                    }
                }
            }
            Ok(out)
        }
    }
}
