//! Finitely generated permutation groups.
//!
//! Orders and membership come from a deterministic Schreier–Sims
//! stabilizer chain. The base is fixed up front: an optional caller-given
//! prefix followed by every point moved by a generator, in increasing order.
//! Derived and lower central series are computed by normal closures of
//! generator commutators, never by enumerating elements.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Orders above this are rejected with [`Error::CapExceeded`].
pub const ORDER_CAP: u128 = 1_000_000_000_000;

/// Series computations stop after this many steps.
pub const SERIES_CAP: usize = 60;

/// Length of a series, or `Infinite` when it stabilizes short of its target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    Finite(usize),
    Infinite,
}

impl Class {
    pub fn is_finite(self) -> bool {
        matches!(self, Class::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Class::Finite(k) => Some(k),
            Class::Infinite => None,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Finite(k) => write!(f, "{k}"),
            Class::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Class::Infinite);
        }
        s.parse()
            .map(Class::Finite)
            .map_err(|_| Error::Malformed(format!("bad class value {s:?}")))
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Indices into `StabChain::strong` of generators fixing all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `transversal[b] = (u, u⁻¹)` with `u(point) = b`, for `b` in the orbit.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    /// `checked[k][i]`: Schreier generator for `orbit[i]` and `gens[k]` already sifted.
    checked: Vec<Vec<bool>>,
}

/// A stabilizer chain relative to a fixed base.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, base: Vec<usize>) -> Self {
        let levels = base
            .iter()
            .map(|&point| {
                let mut transversal = vec![None; degree];
                let id = Permutation::identity(degree);
                transversal[point] = Some((id.clone(), id));
                Level {
                    point,
                    gens: Vec::new(),
                    orbit: vec![point],
                    transversal,
                    checked: Vec::new(),
                }
            })
            .collect();
        StabChain {
            degree,
            base,
            strong: Vec::new(),
            levels,
        }
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Order of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_order(&self, k: usize) -> u128 {
        self.levels[k..].iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Strong generators fixing the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        match self.levels.get(k) {
            Some(level) => level.gens.iter().map(|&i| self.strong[i].clone()).collect(),
            None => Vec::new(),
        }
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped, or `None` if it passed every level.
    fn sift(&self, g: &Permutation, from: usize) -> (Permutation, Option<usize>) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let level = &self.levels[i];
            let beta = h.apply(level.point);
            match &level.transversal[beta] {
                Some((_, u_inv)) => h = u_inv.compose(&h),
                None => return (h, Some(i)),
            }
        }
        (h, None)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, stop) = self.sift(g, 0);
        stop.is_none() && h.is_identity()
    }

    fn extend_orbit(&mut self, i: usize) {
        let level = &mut self.levels[i];
        let mut k = 0;
        while k < level.orbit.len() {
            let p = level.orbit[k];
            for &gi in &level.gens {
                let s = &self.strong[gi];
                let q = s.apply(p);
                if level.transversal[q].is_none() {
                    let u = s.compose(&level.transversal[p].as_ref().unwrap().0);
                    let u_inv = u.inverse();
                    level.transversal[q] = Some((u, u_inv));
                    level.orbit.push(q);
                }
            }
            k += 1;
        }
        let orbit_len = level.orbit.len();
        level.checked.resize(level.gens.len(), Vec::new());
        for row in &mut level.checked {
            row.resize(orbit_len, false);
        }
    }

    /// Registers `h` as a strong generator for levels `from..=to`.
    fn install(&mut self, h: Permutation, from: usize, to: usize) -> Result<()> {
        let idx = self.strong.len();
        self.strong.push(h);
        for m in from..=to {
            self.levels[m].gens.push(idx);
            self.extend_orbit(m);
        }
        if self.order() > ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "group order",
                limit: ORDER_CAP,
            });
        }
        Ok(())
    }

    /// Adds `g` to the group. Returns `false` when `g` was already a member.
    pub(crate) fn add(&mut self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        let (h, stop) = self.sift(g, 0);
        let Some(j) = stop else {
            if !h.is_identity() {
                return Err(Error::Malformed(
                    "element moves a point outside the base".into(),
                ));
            }
            return Ok(false);
        };
        self.install(h, 0, j)?;
        self.close_from(j)?;
        Ok(true)
    }

    /// Restores the Schreier property on levels `0..=start`.
    fn close_from(&mut self, start: usize) -> Result<()> {
        let mut i = start as isize;
        while i >= 0 {
            let li = i as usize;
            let mut descend = None;
            'scan: for k in 0..self.levels[li].gens.len() {
                for oi in 0..self.levels[li].orbit.len() {
                    if self.levels[li].checked[k][oi] {
                        continue;
                    }
                    self.levels[li].checked[k][oi] = true;
                    let level = &self.levels[li];
                    let p = level.orbit[oi];
                    let s = &self.strong[level.gens[k]];
                    let q = s.apply(p);
                    let u_p = &level.transversal[p].as_ref().unwrap().0;
                    let u_q_inv = &level.transversal[q].as_ref().unwrap().1;
                    let schreier = u_q_inv.compose(&s.compose(u_p));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, stop) = self.sift(&schreier, li + 1);
                    if let Some(j) = stop {
                        self.install(h, li + 1, j)?;
                        descend = Some(j);
                        break 'scan;
                    }
                }
            }
            match descend {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        Ok(())
    }
}

/// A permutation group given by generators, with a lazily built chain.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base_prefix: Vec<usize>,
    chain: OnceLock<Result<Arc<StabChain>>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            base_prefix: self.base_prefix.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl PermGroup {
    /// Identity generators are dropped and duplicates removed, keeping first occurrences.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        PermGroup::with_base_prefix(degree, generators, Vec::new())
    }

    /// Like [`PermGroup::new`] but the chain's base starts with `prefix`.
    pub fn with_base_prefix(
        degree: usize,
        generators: Vec<Permutation>,
        prefix: Vec<usize>,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: g.degree(),
            });
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::OutOfRange {
                element: p,
                order: degree,
            });
        }
        let mut seen = HashSet::new();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        Ok(PermGroup {
            degree,
            generators,
            base_prefix: prefix,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).unwrap()
    }

    fn from_chain(chain: StabChain, generators: Vec<Permutation>) -> Self {
        let g = PermGroup {
            degree: chain.degree,
            generators,
            base_prefix: Vec::new(),
            chain: OnceLock::new(),
        };
        let _ = g.chain.set(Ok(Arc::new(chain)));
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn initial_base(&self) -> Vec<usize> {
        let mut base = self.base_prefix.clone();
        let mut in_base = vec![false; self.degree];
        for &p in &base {
            in_base[p] = true;
        }
        for (p, &seen) in in_base.iter().enumerate() {
            if !seen && self.generators.iter().any(|g| !g.fixes(p)) {
                base.push(p);
            }
        }
        base
    }

    /// The stabilizer chain, built on first use.
    pub fn chain(&self) -> Result<Arc<StabChain>> {
        self.chain
            .get_or_init(|| {
                let mut chain = StabChain::new(self.degree, self.initial_base());
                for g in &self.generators {
                    chain.add(g)?;
                }
                Ok(Arc::new(chain))
            })
            .clone()
    }

    pub fn order(&self) -> Result<u128> {
        Ok(self.chain()?.order())
    }

    pub fn base(&self) -> Result<Vec<usize>> {
        Ok(self.chain()?.base().to_vec())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: p.degree(),
            });
        }
        Ok(self.chain()?.contains(p))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators[i + 1..]
                .iter()
                .all(|h| g.compose(h) == h.compose(g))
        })
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `sub` is normalized by every generator of `self`.
    pub fn normalizes(&self, sub: &PermGroup) -> Result<bool> {
        for g in &self.generators {
            for n in sub.generators() {
                if !sub.contains(&n.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Normal closure in `self` of the subgroup generated by `seeds`.
    pub fn normal_closure(&self, seeds: Vec<Permutation>) -> Result<PermGroup> {
        let base = self.chain()?.base().to_vec();
        let mut chain = StabChain::new(self.degree, base);
        let mut gens: Vec<Permutation> = Vec::new();
        let mut queue: Vec<Permutation> = seeds;
        while let Some(x) = queue.pop() {
            if chain.add(&x)? {
                for g in &self.generators {
                    queue.push(x.conjugate_by(g));
                }
                gens.push(x);
            }
        }
        Ok(PermGroup::from_chain(chain, gens))
    }

    /// `[self, other]`, assuming `other` is normalized by `ambient`; the
    /// result is the normal closure in `ambient` of generator commutators.
    pub fn commutator_subgroup_in(
        &self,
        other: &PermGroup,
        ambient: &PermGroup,
    ) -> Result<PermGroup> {
        let seeds = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.commutator(h)))
            .filter(|c| !c.is_identity())
            .collect();
        ambient.normal_closure(seeds)
    }

    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        self.commutator_subgroup_in(self, self)
    }

    /// `1, G', G'', ...` until it stabilizes or reaches the trivial group.
    pub fn derived_series(&self) -> Result<Series> {
        self.series(|g| g.derived_subgroup())
    }

    /// `G, [G,G], [[G,G],G], ...`.
    pub fn lower_central_series(&self) -> Result<Series> {
        self.series(|g| g.commutator_subgroup_in(self, self))
    }

    fn series(&self, step: impl Fn(&PermGroup) -> Result<PermGroup>) -> Result<Series> {
        let mut terms = vec![self.clone()];
        let mut order = self.order()?;
        loop {
            if order == 1 {
                let class = Class::Finite(terms.len() - 1);
                return Ok(Series {
                    terms,
                    class,
                    hit_cap: false,
                });
            }
            if terms.len() > SERIES_CAP {
                return Ok(Series {
                    terms,
                    class: Class::Infinite,
                    hit_cap: true,
                });
            }
            let next = step(terms.last().unwrap())?;
            let next_order = next.order()?;
            if next_order == order {
                return Ok(Series {
                    terms,
                    class: Class::Infinite,
                    hit_cap: false,
                });
            }
            order = next_order;
            terms.push(next);
        }
    }

    pub fn solvable_class(&self) -> Result<Class> {
        Ok(self.derived_series()?.class)
    }

    pub fn nilpotency_class(&self) -> Result<Class> {
        Ok(self.lower_central_series()?.class)
    }

    /// All elements, by breadth-first closure. Intended for small groups.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            for g in &self.generators {
                let p = g.compose(&out[k]);
                if seen.insert(p.clone()) {
                    out.push(p);
                    if out.len() > limit {
                        return Err(Error::CapExceeded {
                            what: "element enumeration",
                            limit: limit as u128,
                        });
                    }
                }
            }
            k += 1;
        }
        Ok(out)
    }
}

/// Terms of a group series together with its length.
#[derive(Clone, Debug)]
pub struct Series {
    pub terms: Vec<PermGroup>,
    pub class: Class,
    /// Set when the iteration cap was reached rather than a fixed point.
    pub hit_cap: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let mut gens = vec![perm(n, &[&[0, 1]])];
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(perm(n, &[&cycle]));
        PermGroup::new(n, gens).unwrap()
    }

    fn alternating5() -> PermGroup {
        PermGroup::new(5, vec![perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])]).unwrap()
    }

    fn dihedral8() -> PermGroup {
        PermGroup::new(4, vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(PermGroup::trivial(3).order().unwrap(), 1);
        assert_eq!(
            PermGroup::new(3, vec![perm(3, &[&[0, 1, 2]])])
                .unwrap()
                .order()
                .unwrap(),
            3
        );
        assert_eq!(symmetric(3).order().unwrap(), 6);
        assert_eq!(alternating5().order().unwrap(), 60);
        assert_eq!(symmetric(8).order().unwrap(), 40320);
    }

    #[test]
    fn membership() {
        let s3 = PermGroup::new(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[1, 2]])]).unwrap();
        assert!(s3.contains(&perm(3, &[&[0, 2]])).unwrap());
        assert!(s3.contains(&Permutation::identity(3)).unwrap());
        let z2 = PermGroup::new(3, vec![perm(3, &[&[0, 1]])]).unwrap();
        assert!(!z2.contains(&perm(3, &[&[0, 1, 2]])).unwrap());
        assert!(z2.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(symmetric(3).derived_subgroup().unwrap().order().unwrap(), 3);
        assert_eq!(alternating5().derived_subgroup().unwrap().order().unwrap(), 60);
        let z3 = PermGroup::new(3, vec![perm(3, &[&[0, 1, 2]])]).unwrap();
        assert!(z3.derived_subgroup().unwrap().is_trivial());
    }

    #[test]
    fn solvable_classes() {
        assert_eq!(PermGroup::trivial(2).solvable_class().unwrap(), Class::Finite(0));
        assert_eq!(symmetric(3).solvable_class().unwrap(), Class::Finite(2));
        assert_eq!(symmetric(4).solvable_class().unwrap(), Class::Finite(3));
        assert_eq!(alternating5().solvable_class().unwrap(), Class::Infinite);
    }

    #[test]
    fn nilpotency_classes() {
        let z4 = PermGroup::new(4, vec![perm(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(z4.nilpotency_class().unwrap(), Class::Finite(1));
        assert_eq!(dihedral8().nilpotency_class().unwrap(), Class::Finite(2));
        assert_eq!(symmetric(3).nilpotency_class().unwrap(), Class::Infinite);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            symmetric(16).order(),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn class_display_round_trip() {
        assert_eq!(Class::Infinite.to_string(), "inf");
        assert_eq!("inf".parse::<Class>().unwrap(), Class::Infinite);
        assert_eq!("3".parse::<Class>().unwrap(), Class::Finite(3));
        assert!(Class::Finite(100) < Class::Infinite);
    }
}
