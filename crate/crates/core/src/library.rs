//! Standard small groups and exhaustive enumerations of small loops.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::loops::{direct_product, LatinSquare, LoopTable, MAX_ORDER};
use crate::perm::Permutation;

/// The group generated by `gens`, elements sorted by image list (so the
/// identity is element 0).
pub fn group_from_permutations(degree: usize, gens: &[Permutation]) -> Result<LoopTable> {
    let id = Permutation::identity(degree);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            if s.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: s.degree(),
                });
            }
            let h = g.compose(s);
            if seen.insert(h.clone()) {
                if seen.len() > MAX_ORDER {
                    return Err(Error::CapExceeded {
                        what: "table order",
                        limit: MAX_ORDER as u128,
                    });
                }
                queue.push_back(h);
            }
        }
    }
    let els: Vec<Permutation> = seen.into_iter().collect();
    let n = els.len();
    LoopTable::from_fn(n, |x, y| {
        els.binary_search(&els[x].compose(&els[y])).expect("closed")
    })
}

pub fn symmetric_group(n: usize) -> LoopTable {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]]).unwrap());
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap());
    }
    group_from_permutations(n.max(1), &gens).unwrap()
}

pub fn alternating_group(n: usize) -> LoopTable {
    let gens: Vec<Permutation> = (2..n)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap())
        .collect();
    group_from_permutations(n.max(1), &gens).unwrap()
}

/// `Z_n ⋊ Z_m` with the generator of `Z_m` acting as multiplication by `k`,
/// where `k^m ≡ 1 (mod n)`. The pair `(a, b)` is encoded as `a + n·b`.
pub fn metacyclic(n: usize, m: usize, k: usize) -> Result<LoopTable> {
    let mut pow = vec![1 % n.max(1); m + 1];
    for i in 1..=m {
        pow[i] = pow[i - 1] * k % n;
    }
    if pow[m] != 1 % n {
        return Err(Error::Malformed(format!("{k} has no order dividing {m} mod {n}")));
    }
    LoopTable::from_fn(n * m, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        (a + pow[b] * c) % n + n * ((b + d) % m)
    })
}

/// Dihedral group of order `2n`.
pub fn dihedral_group(n: usize) -> LoopTable {
    metacyclic(n, 2, n - 1).unwrap()
}

/// Dicyclic group of order `4n` (`n = 2` gives the quaternions).
pub fn dicyclic_group(n: usize) -> LoopTable {
    let m = 2 * n;
    LoopTable::from_fn(2 * m, |x, y| {
        let (a, b) = (x % m, x / m);
        let (c, d) = (y % m, y / m);
        match (b, d) {
            (0, _) => (a + c) % m + m * d,
            (1, 0) => (a + m - c) % m + m,
            _ => (a + m - c + n) % m,
        }
    })
    .unwrap()
}

/// `Z_{n1} × Z_{n2} × ...`.
pub fn abelian_group(factors: &[usize]) -> Result<LoopTable> {
    factors
        .iter()
        .try_fold(LoopTable::trivial(), |acc, &n| direct_product(&acc, &LoopTable::cyclic(n)?))
}

/// A selection of groups of order at most 16 with names, covering every
/// isomorphism type up to order 15 and the common ones of order 16.
pub fn small_groups() -> Vec<(&'static str, LoopTable)> {
    let ab = |f: &[usize]| abelian_group(f).unwrap();
    let mut out = vec![
        ("Z1", LoopTable::trivial()),
        ("Z2", ab(&[2])),
        ("Z3", ab(&[3])),
        ("Z4", ab(&[4])),
        ("Z2^2", ab(&[2, 2])),
        ("Z5", ab(&[5])),
        ("Z6", ab(&[6])),
        ("S3", symmetric_group(3)),
        ("Z7", ab(&[7])),
        ("Z8", ab(&[8])),
        ("Z4xZ2", ab(&[4, 2])),
        ("Z2^3", ab(&[2, 2, 2])),
        ("D8", dihedral_group(4)),
        ("Q8", dicyclic_group(2)),
        ("Z9", ab(&[9])),
        ("Z3^2", ab(&[3, 3])),
        ("Z10", ab(&[10])),
        ("D10", dihedral_group(5)),
        ("Z11", ab(&[11])),
        ("Z12", ab(&[12])),
        ("Z6xZ2", ab(&[6, 2])),
        ("A4", alternating_group(4)),
        ("D12", dihedral_group(6)),
        ("Dic12", dicyclic_group(3)),
        ("Z13", ab(&[13])),
        ("Z14", ab(&[14])),
        ("D14", dihedral_group(7)),
        ("Z15", ab(&[15])),
        ("Z16", ab(&[16])),
        ("Z4^2", ab(&[4, 4])),
        ("Z8xZ2", ab(&[8, 2])),
        ("Z4xZ2^2", ab(&[4, 2, 2])),
        ("Z2^4", ab(&[2, 2, 2, 2])),
        ("D16", dihedral_group(8)),
        ("Q16", dicyclic_group(4)),
        ("SD16", metacyclic(8, 2, 3).unwrap()),
        ("M16", metacyclic(8, 2, 5).unwrap()),
        ("Z4:Z4", metacyclic(4, 4, 3).unwrap()),
    ];
    out.push(("Z2xD8", direct_product(&ab(&[2]), &dihedral_group(4)).unwrap()));
    out.push(("Z2xQ8", direct_product(&ab(&[2]), &dicyclic_group(2)).unwrap()));
    out
}

/// Every Latin square of order `n`, rows in lexicographic order.
pub fn latin_squares(n: usize) -> Vec<LatinSquare> {
    let mut out = Vec::new();
    let mut cells = vec![usize::MAX; n * n];
    fill(n, 0, &mut cells, &mut |c| out.push(LatinSquare::new(n, c.to_vec()).unwrap()));
    out
}

/// Every loop on `0..n` with `0` neutral (the reduced Latin squares).
pub fn loops_with_neutral_zero(n: usize) -> Vec<LoopTable> {
    let mut cells = vec![usize::MAX; n * n];
    for i in 0..n {
        cells[i] = i;
        cells[i * n] = i;
    }
    let mut out = Vec::new();
    fill(n, 0, &mut cells, &mut |c| {
        out.push(LoopTable::from_cells(n, c.to_vec()).unwrap())
    });
    out
}

fn fill(n: usize, pos: usize, cells: &mut [usize], emit: &mut dyn FnMut(&[usize])) {
    if pos == n * n {
        emit(cells);
        return;
    }
    if cells[pos] != usize::MAX {
        return fill(n, pos + 1, cells, emit);
    }
    let (i, j) = (pos / n, pos % n);
    for v in 0..n {
        let clash = (0..n).any(|k| cells[i * n + k] == v || cells[k * n + j] == v);
        if !clash {
            cells[pos] = v;
            fill(n, pos + 1, cells, emit);
            cells[pos] = usize::MAX;
        }
    }
}
