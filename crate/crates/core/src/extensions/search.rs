//! Enumeration of loop cocycles over a fixed fiber and base.
//!
//! Border cells pinned by the loop-cocycle conditions are fixed at the
//! identity or zero; every other cell is free. Candidates are addressed by
//! a single index so that runs can be split and replayed.
//!
//! Random mode draws from the SplitMix64 stream of the seed: draw `i` is
//! `mix(seed + (i + 1)·0x9e3779b97f4a7c15)` with the finalizer constants
//! `0xbf58476d1ce4e5b9` and `0x94d049bb133111eb`. Candidate `k` consumes
//! draws `k·c .. k·c + c` where `c` is the number of free cells, each cell
//! value being the draw modulo that cell's range.

use super::abelian::AbelianGroup;
use super::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::loops::{Element, LoopTable};
use crate::perm::Permutation;

/// Candidate cap for exhaustive enumeration.
pub const EXHAUSTIVE_CAP: u128 = 100_000_000;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// The SplitMix64 output function.
#[inline]
pub fn splitmix_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// SplitMix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Positioned so that the next output is draw `index` of `seed`'s stream.
    pub fn at(seed: u64, index: u64) -> Self {
        SplitMix64 {
            state: seed.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        splitmix_mix(self.state)
    }

    /// Value in `0..bound` by reduction modulo `bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    /// `φ` and `ψ` range over `Aut(A)`.
    Abelian,
    /// `φ = ψ = id`; only `θ` varies.
    Central,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Phi(Element, Element),
    Psi(Element, Element),
    Theta(Element, Element),
}

/// The loop cocycles of one kind over a fiber `A` and base `F`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    a: AbelianGroup,
    f: LoopTable,
    kind: CocycleKind,
    automorphisms: Vec<Permutation>,
    cells: Vec<Cell>,
}

impl CocycleSpace {
    pub fn new(a: AbelianGroup, f: LoopTable, kind: CocycleKind) -> Result<Self> {
        let automorphisms = match kind {
            CocycleKind::Abelian => a.automorphisms()?,
            CocycleKind::Central => vec![Permutation::identity(a.order())],
        };
        let one = f.neutral();
        let m = f.order();
        let mut cells = Vec::new();
        if kind == CocycleKind::Abelian {
            cells.extend((0..m * m).map(|c| (c / m, c % m)).filter(|&(_, y)| y != one).map(|(x, y)| Cell::Phi(x, y)));
            cells.extend((0..m * m).map(|c| (c / m, c % m)).filter(|&(x, _)| x != one).map(|(x, y)| Cell::Psi(x, y)));
        }
        cells.extend(
            (0..m * m)
                .map(|c| (c / m, c % m))
                .filter(|&(x, y)| x != one && y != one)
                .map(|(x, y)| Cell::Theta(x, y)),
        );
        Ok(CocycleSpace {
            a,
            f,
            kind,
            automorphisms,
            cells,
        })
    }

    pub fn kind(&self) -> CocycleKind {
        self.kind
    }

    pub fn fiber(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn base(&self) -> &LoopTable {
        &self.f
    }

    pub fn automorphisms(&self) -> &[Permutation] {
        &self.automorphisms
    }

    pub fn free_cells(&self) -> usize {
        self.cells.len()
    }

    fn radix(&self, cell: Cell) -> u64 {
        match cell {
            Cell::Phi(..) | Cell::Psi(..) => self.automorphisms.len() as u64,
            Cell::Theta(..) => self.a.order() as u64,
        }
    }

    /// Number of candidates, `None` on `u128` overflow.
    pub fn size(&self) -> Option<u128> {
        self.cells
            .iter()
            .try_fold(1u128, |acc, &c| acc.checked_mul(self.radix(c) as u128))
    }

    fn assemble(&self, digits: impl Iterator<Item = u64>) -> Cocycle {
        let mut cocycle = Cocycle::trivial(self.a.clone(), self.f.clone());
        for (&cell, d) in self.cells.iter().zip(digits) {
            let d = d as usize;
            let res = match cell {
                Cell::Phi(x, y) => cocycle.set_phi(x, y, self.automorphisms[d].clone()),
                Cell::Psi(x, y) => cocycle.set_psi(x, y, self.automorphisms[d].clone()),
                Cell::Theta(x, y) => cocycle.set_theta(x, y, d),
            };
            res.expect("digits are in range");
        }
        cocycle
    }

    /// Candidate `index` in lexicographic order of cell values, cells
    /// ordered as `φ` row-major, then `ψ`, then `θ`.
    pub fn candidate(&self, index: u128) -> Cocycle {
        let mut digits = vec![0u64; self.cells.len()];
        let mut rest = index;
        for (k, &cell) in self.cells.iter().enumerate().rev() {
            let r = self.radix(cell) as u128;
            digits[k] = (rest % r) as u64;
            rest /= r;
        }
        self.assemble(digits.into_iter())
    }

    /// Random candidate `k` of the stream for `seed`.
    pub fn random_candidate(&self, seed: u64, k: u64) -> Cocycle {
        let draws = self.cells.len() as u64;
        let mut rng = SplitMix64::at(seed, k.wrapping_mul(draws));
        let digits: Vec<u64> = self.cells.iter().map(|&c| rng.below(self.radix(c))).collect();
        self.assemble(digits.into_iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { seed: u64, budget: u64 },
}

/// A candidate that satisfied the predicate.
#[derive(Clone, Debug)]
pub struct Hit {
    /// Candidate index within the mode's sequence.
    pub index: u128,
    pub cocycle: Cocycle,
    pub table: LoopTable,
}

/// Runs `predicate` over the candidates in order and collects hits,
/// stopping after `max_hits` if given.
pub fn search_cocycles(
    space: &CocycleSpace,
    mode: SearchMode,
    max_hits: Option<usize>,
    mut predicate: impl FnMut(&LoopTable, &Cocycle) -> bool,
) -> Result<Vec<Hit>> {
    let count = match mode {
        SearchMode::Exhaustive => {
            let size = space.size().filter(|&s| s <= EXHAUSTIVE_CAP);
            size.ok_or(Error::CapExceeded {
                what: "exhaustive cocycle candidates",
                limit: EXHAUSTIVE_CAP,
            })?
        }
        SearchMode::Random { budget, .. } => budget as u128,
    };
    let mut hits = Vec::new();
    for index in 0..count {
        if max_hits.is_some_and(|m| hits.len() >= m) {
            break;
        }
        let cocycle = match mode {
            SearchMode::Exhaustive => space.candidate(index),
            SearchMode::Random { seed, .. } => space.random_candidate(seed, index as u64),
        };
        let table = cocycle.build_extension()?;
        if predicate(&table, &cocycle) {
            hits.push(Hit {
                index,
                cocycle,
                table,
            });
        }
    }
    Ok(hits)
}
