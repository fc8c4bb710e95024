//! Subloops, normality, centers, quotients and direct decompositions.
//!
//! All enumeration orders are lexicographic and coset representatives are
//! least indices, so every result here is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::loops::{direct_product, Element, LoopTable};
use crate::mult::inner_generators;

/// Order limit for the enumerating operations of this module.
pub const STRUCTURE_ORDER_CAP: usize = 64;

/// A subloop, stored as the sorted list of its elements in the owning table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subloop {
    elements: Vec<Element>,
    mask: Vec<bool>,
}

impl Subloop {
    fn from_mask(mask: Vec<bool>) -> Self {
        let elements = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subloop { elements, mask }
    }

    pub fn trivial(q: &LoopTable) -> Self {
        let mut mask = vec![false; q.order()];
        mask[q.neutral()] = true;
        Subloop::from_mask(mask)
    }

    pub fn whole(q: &LoopTable) -> Self {
        Subloop::from_mask(vec![true; q.order()])
    }

    /// Validates that `elements` is closed under the three operations.
    pub fn from_elements(q: &LoopTable, elements: &[Element]) -> Result<Self> {
        let mut mask = vec![false; q.order()];
        for &x in elements {
            q.check_element(x)?;
            mask[x] = true;
        }
        let s = Subloop::from_mask(mask);
        if !s.contains(q.neutral()) || subloop_generated(q, &s.elements)? != s {
            return Err(Error::NotSubloop);
        }
        Ok(s)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        self.mask[x]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.mask.len()
    }

    pub fn is_subset_of(&self, other: &Subloop) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subloop) -> Subloop {
        Subloop::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(&a, &b)| a && b)
                .collect(),
        )
    }

    /// Position of `x` within the sorted element list.
    pub fn index_of(&self, x: Element) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }
}

impl Ord for Subloop {
    /// Size first, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subloop {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subloop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subloop{:?}", self.elements)
    }
}

/// Sorted, space-separated element list.
impl fmt::Display for Subloop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Parses a whitespace- or comma-separated element list.
pub fn parse_element_list(text: &str) -> Result<Vec<Element>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Malformed(format!("bad element {t:?}")))
        })
        .collect()
}

/// Closes `mask`/`members` under multiplication and both divisions.
fn close_subloop(q: &LoopTable, mask: &mut [bool], members: &mut Vec<Element>) {
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        for i in 0..=k {
            let y = members[i];
            for (a, b) in [(x, y), (y, x)] {
                for z in [q.mul(a, b), q.ldiv(a, b), q.rdiv(a, b)] {
                    if !mask[z] {
                        mask[z] = true;
                        members.push(z);
                    }
                }
            }
        }
        k += 1;
    }
}

/// The least subloop containing `seed`.
pub fn subloop_generated(q: &LoopTable, seed: &[Element]) -> Result<Subloop> {
    let mut mask = vec![false; q.order()];
    let mut members = Vec::new();
    for &x in std::iter::once(&q.neutral()).chain(seed) {
        q.check_element(x)?;
        if !mask[x] {
            mask[x] = true;
            members.push(x);
        }
    }
    close_subloop(q, &mut mask, &mut members);
    Ok(Subloop::from_mask(mask))
}

/// Whether every `T_x`, `L_{x,y}`, `R_{x,y}` maps `a` onto itself.
pub fn is_normal(q: &LoopTable, a: &Subloop) -> bool {
    inner_generators(q)
        .iter()
        .all(|g| a.elements().iter().all(|&x| a.contains(g.apply(x))))
}

pub(crate) fn require_normal(q: &LoopTable, a: &Subloop) -> Result<()> {
    if a.mask.len() != q.order() {
        return Err(Error::DegreeMismatch {
            expected: q.order(),
            got: a.mask.len(),
        });
    }
    if is_normal(q, a) {
        Ok(())
    } else {
        Err(Error::NotNormal)
    }
}

/// The least normal subloop containing `seed`, by alternating subloop
/// closure with closure under inner-mapping generators.
pub fn normal_closure(q: &LoopTable, seed: &[Element]) -> Result<Subloop> {
    let gens = inner_generators(q);
    let mut mask = vec![false; q.order()];
    let mut members = Vec::new();
    for &x in std::iter::once(&q.neutral()).chain(seed) {
        q.check_element(x)?;
        if !mask[x] {
            mask[x] = true;
            members.push(x);
        }
    }
    loop {
        close_subloop(q, &mut mask, &mut members);
        let before = members.len();
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for g in gens.iter() {
                let y = g.apply(x);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        if members.len() == before {
            return Ok(Subloop::from_mask(mask));
        }
    }
}

/// `Z(Q)` by the defining identities: `[a,x] = 1` and all three associator
/// placements of `a` vanish.
pub fn center_by_identities(q: &LoopTable) -> Subloop {
    let e = q.neutral();
    let mask = q
        .elements()
        .map(|a| {
            q.elements().all(|x| {
                q.commutator(a, x) == e
                    && q.elements().all(|y| {
                        q.associator(a, x, y) == e
                            && q.associator(x, a, y) == e
                            && q.associator(x, y, a) == e
                    })
            })
        })
        .collect();
    Subloop::from_mask(mask)
}

/// `Z(Q)` as the common fixed points of the inner-mapping generators.
pub fn center_by_inner_fixed_points(q: &LoopTable) -> Subloop {
    let gens = inner_generators(q);
    let mask = q
        .elements()
        .map(|a| gens.iter().all(|g| g.fixes(a)))
        .collect();
    Subloop::from_mask(mask)
}

pub fn center_subloop(q: &LoopTable) -> Subloop {
    let z = center_by_identities(q);
    debug_assert_eq!(z, center_by_inner_fixed_points(q));
    z
}

fn check_structure_cap(q: &LoopTable) -> Result<()> {
    if q.order() > STRUCTURE_ORDER_CAP {
        Err(Error::CapExceeded {
            what: "loop order for normal-subloop enumeration",
            limit: STRUCTURE_ORDER_CAP as u128,
        })
    } else {
        Ok(())
    }
}

/// Every normal subloop, sorted by size and then lexicographically.
///
/// Each normal subloop is the join of the normal closures of its elements,
/// so closing the singleton closures under joins reaches all of them.
pub fn all_normal_subloops(q: &LoopTable) -> Result<Vec<Subloop>> {
    check_structure_cap(q)?;
    let singles: BTreeSet<Subloop> = q
        .elements()
        .map(|x| normal_closure(q, &[x]))
        .collect::<Result<_>>()?;
    let mut all: BTreeSet<Subloop> = singles.clone();
    all.insert(Subloop::trivial(q));
    let mut frontier: Vec<Subloop> = all.iter().cloned().collect();
    while let Some(m) = frontier.pop() {
        for s in &singles {
            if s.is_subset_of(&m) {
                continue;
            }
            let mut seed = m.elements().to_vec();
            seed.extend_from_slice(s.elements());
            let j = normal_closure(q, &seed)?;
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// `Q/A` together with the canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub table: LoopTable,
    /// Coset index of each element of `Q`.
    pub projection: Vec<usize>,
    /// Cosets ordered by least member; each coset is sorted.
    pub cosets: Vec<Vec<Element>>,
}

impl Quotient {
    /// Least member of each coset.
    pub fn representatives(&self) -> Vec<Element> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    /// The subloop of `Q` mapping into `sub` (a subloop of the quotient).
    pub fn preimage(&self, sub: &Subloop) -> Subloop {
        Subloop::from_mask(self.projection.iter().map(|&c| sub.contains(c)).collect())
    }
}

pub fn quotient(q: &LoopTable, a: &Subloop) -> Result<Quotient> {
    require_normal(q, a)?;
    let n = q.order();
    let mut projection = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<Element>> = Vec::new();
    for x in 0..n {
        if projection[x] != usize::MAX {
            continue;
        }
        let idx = cosets.len();
        let mut coset: Vec<Element> = a.elements().iter().map(|&b| q.mul(x, b)).collect();
        coset.sort_unstable();
        for &y in &coset {
            projection[y] = idx;
        }
        cosets.push(coset);
    }
    let k = cosets.len();
    let reps: Vec<Element> = cosets.iter().map(|c| c[0]).collect();
    let cells = (0..k * k)
        .map(|c| projection[q.mul(reps[c / k], reps[c % k])])
        .collect();
    let table = LoopTable::from_cells(k, cells)?;
    debug_assert!(q.is_homomorphism(&table, &projection));
    Ok(Quotient {
        table,
        projection,
        cosets,
    })
}

/// The subloop as a loop in its own right, indexed by position in
/// `a.elements()`.
pub fn subloop_table(q: &LoopTable, a: &Subloop) -> LoopTable {
    let m = a.len();
    let els = a.elements();
    LoopTable::from_fn(m, |i, j| {
        a.index_of(q.mul(els[i], els[j]))
            .expect("subloops are closed")
    })
    .expect("subloops are loops")
}

/// Pairs `(A, B)` of nontrivial normal subloops with `A ∩ B = 1`,
/// `|A|·|B| = |Q|` and `(a, b) ↦ ab` an isomorphism `A × B → Q`.
/// Each unordered pair is reported once, `A` before `B` in subloop order.
pub fn direct_decomposition(q: &LoopTable) -> Result<Vec<(Subloop, Subloop)>> {
    let normals = all_normal_subloops(q)?;
    let n = q.order();
    let mut out = Vec::new();
    for (i, a) in normals.iter().enumerate() {
        if a.is_trivial() || a.is_whole() {
            continue;
        }
        for b in &normals[i + 1..] {
            if b.is_trivial() || b.is_whole() || a.len() * b.len() != n {
                continue;
            }
            if !a.intersection(b).is_trivial() {
                continue;
            }
            if pairing_is_isomorphism(q, a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

fn pairing_is_isomorphism(q: &LoopTable, a: &Subloop, b: &Subloop) -> bool {
    let ta = subloop_table(q, a);
    let tb = subloop_table(q, b);
    let prod = direct_product(&ta, &tb).expect("order bounded by |Q|");
    let na = a.len();
    let f: Vec<Element> = (0..prod.order())
        .map(|p| q.mul(a.elements()[p % na], b.elements()[p / na]))
        .collect();
    let mut hit = vec![false; q.order()];
    for &y in &f {
        if std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    prod.is_homomorphism(q, &f)
}
