//! Brute-force oracles and test pools shared by the integration tests.
//!
//! Nothing here calls the engine's commutator, closure or series code; the
//! oracles work on raw tables and explicit element sets.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use loopcomm::extensions::{AbelianGroup, Cocycle, CocycleKind, CocycleSpace};
use loopcomm::library::{abelian_group, loops_with_neutral_zero, small_groups, symmetric_group};
use loopcomm::{LoopTable, Permutation};

pub type Set = BTreeSet<usize>;

/// Elements of the group generated by `gens`, by breadth-first closure.
pub fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// Smallest subset containing `seed` and closed under `·`, `\` and `/`.
pub fn sub_closure(q: &LoopTable, seed: &Set) -> Set {
    let mut s = seed.clone();
    s.insert(q.neutral());
    loop {
        let mut next = s.clone();
        for &x in &s {
            for &y in &s {
                next.insert(q.mul(x, y));
                next.insert(q.ldiv(x, y));
                next.insert(q.rdiv(x, y));
            }
        }
        if next.len() == s.len() {
            return s;
        }
        s = next;
    }
}

/// Normality by the coset identities `xA = Ax`, `(xA)y = x(Ay)`,
/// `x(yA) = (xy)A` for a subloop `A`.
pub fn is_normal_brute(q: &LoopTable, a: &Set) -> bool {
    let coset = |f: &dyn Fn(usize) -> usize| -> Set { a.iter().map(|&t| f(t)).collect() };
    q.elements().all(|x| {
        coset(&|t| q.mul(x, t)) == coset(&|t| q.mul(t, x))
            && q.elements().all(|y| {
                coset(&|t| q.mul(q.mul(x, t), y)) == coset(&|t| q.mul(x, q.mul(t, y)))
                    && coset(&|t| q.mul(x, q.mul(y, t))) == coset(&|t| q.mul(q.mul(x, y), t))
            })
    })
}

/// The pointwise inner words `T_x`, `L_{x,y}`, `R_{x,y}` applied to `a`.
pub fn inner_images(q: &LoopTable, a: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for x in q.elements() {
        out.push(q.rdiv(q.mul(x, a), x));
        for y in q.elements() {
            out.push(q.ldiv(q.mul(x, y), q.mul(x, q.mul(y, a))));
            out.push(q.rdiv(q.mul(q.mul(a, y), x), q.mul(y, x)));
        }
    }
    out
}

/// Least normal subloop containing `seed`, alternating subloop closure and
/// closure under the inner words.
pub fn normal_closure_brute(q: &LoopTable, seed: &Set) -> Set {
    let mut s = sub_closure(q, seed);
    loop {
        let mut next = s.clone();
        for &a in &s {
            next.extend(inner_images(q, a));
        }
        let next = sub_closure(q, &next);
        if next.len() == s.len() {
            return s;
        }
        s = next;
    }
}

/// All normal subloops by subset enumeration (small orders only).
pub fn normal_subloops_brute(q: &LoopTable) -> Vec<Set> {
    let n = q.order();
    assert!(n <= 12, "subset enumeration is for tiny loops");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let s: Set = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if !s.contains(&q.neutral()) || !n.is_multiple_of(s.len()) {
            continue;
        }
        if sub_closure(q, &s) == s && is_normal_brute(q, &s) {
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

/// Five tot-inner words, evaluated from their defining formulas.
fn tot_inner_word(q: &LoopTable, w: usize, args: &[usize], a: usize) -> usize {
    match w {
        0 => q.rdiv(q.mul(args[0], a), args[0]),
        1 => q.rdiv(q.ldiv(a, args[0]), args[0]),
        2 => q.ldiv(q.mul(args[0], args[1]), q.mul(args[0], q.mul(args[1], a))),
        3 => q.rdiv(q.mul(q.mul(a, args[1]), args[0]), q.mul(args[1], args[0])),
        _ => q.rdiv(q.ldiv(args[1], args[0]), q.ldiv(q.ldiv(a, args[1]), args[0])),
    }
}

/// `[A,B]_Q` from every pair of `B`-congruent argument tuples.
pub fn commutator_naive(q: &LoopTable, a: &Set, b: &Set) -> Set {
    let n = q.order();
    let congruent = |u: usize, v: usize| b.contains(&q.rdiv(u, v));
    let mut seeds = Set::new();
    for w in 0..5 {
        let arity = if w < 2 { 1 } else { 2 };
        let tuples: Vec<Vec<usize>> = if arity == 1 {
            (0..n).map(|x| vec![x]).collect()
        } else {
            (0..n * n).map(|c| vec![c / n, c % n]).collect()
        };
        for u in &tuples {
            for v in &tuples {
                if !u.iter().zip(v).all(|(&x, &y)| congruent(x, y)) {
                    continue;
                }
                for &t in a {
                    seeds.insert(q.rdiv(tot_inner_word(q, w, u, t), tot_inner_word(q, w, v, t)));
                }
            }
        }
    }
    normal_closure_brute(q, &seeds)
}

/// Group commutator `⟨[a,b] : a ∈ A, b ∈ B⟩` in a group table.
pub fn group_commutator(g: &LoopTable, a: &Set, b: &Set) -> Set {
    let inv = |x: usize| g.ldiv(x, g.neutral());
    let mut seeds = Set::new();
    for &x in a {
        for &y in b {
            seeds.insert(g.mul(g.mul(x, y), g.mul(inv(x), inv(y))));
        }
    }
    sub_closure(g, &seeds)
}

fn group_series_length(g: &LoopTable, step: impl Fn(&Set) -> Set) -> Option<usize> {
    let mut cur: Set = g.elements().collect();
    let mut k = 0;
    loop {
        if cur.len() == 1 {
            return Some(k);
        }
        let next = step(&cur);
        if next == cur {
            return None;
        }
        cur = next;
        k += 1;
    }
}

pub fn group_derived_length(g: &LoopTable) -> Option<usize> {
    group_series_length(g, |d| group_commutator(g, d, d))
}

pub fn group_nilpotency_class(g: &LoopTable) -> Option<usize> {
    let whole: Set = g.elements().collect();
    group_series_length(g, |d| group_commutator(g, d, &whole))
}

/// Center by the defining identities.
pub fn center_brute(q: &LoopTable) -> Set {
    q.elements()
        .filter(|&a| {
            q.elements().all(|x| {
                q.mul(a, x) == q.mul(x, a)
                    && q.elements().all(|y| {
                        q.mul(q.mul(a, x), y) == q.mul(a, q.mul(x, y))
                            && q.mul(q.mul(x, a), y) == q.mul(x, q.mul(a, y))
                            && q.mul(q.mul(x, y), a) == q.mul(x, q.mul(y, a))
                    })
            })
        })
        .collect()
}

/// Whether `q` is a commutative group.
pub fn is_abelian_group_brute(q: &LoopTable) -> bool {
    q.elements().all(|x| {
        q.elements().all(|y| {
            q.mul(x, y) == q.mul(y, x)
                && q.elements().all(|z| q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z)))
        })
    })
}

/// The loop `Q/A` on cosets, for a normal subloop `A`, by explicit cosets.
pub fn quotient_brute(q: &LoopTable, a: &Set) -> LoopTable {
    let mut cosets: Vec<Set> = Vec::new();
    for x in q.elements() {
        let c: Set = a.iter().map(|&t| q.mul(x, t)).collect();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let find = |z: usize| cosets.iter().position(|c| c.contains(&z)).unwrap();
    let k = cosets.len();
    let cells = (0..k * k)
        .map(|c| {
            let x = *cosets[c / k].first().unwrap();
            let y = *cosets[c % k].first().unwrap();
            find(q.mul(x, y))
        })
        .collect();
    LoopTable::from_cells(k, cells).unwrap()
}

/// Least normal subloop with a commutative-group quotient, by minimizing
/// over all normal subloops.
pub fn derived_subloop_brute(q: &LoopTable) -> Set {
    normal_subloops_brute(q)
        .into_iter()
        .filter(|a| is_abelian_group_brute(&quotient_brute(q, a)))
        .min_by_key(|a| a.len())
        .unwrap()
}

#[derive(Clone, Debug)]
pub struct PoolEntry {
    pub name: String,
    pub q: LoopTable,
    pub cocycle: Option<Cocycle>,
}

fn entry(name: impl Into<String>, q: LoopTable) -> PoolEntry {
    PoolEntry {
        name: name.into(),
        q,
        cocycle: None,
    }
}

fn exhaustive_extensions(a: &str, fiber: AbelianGroup, base: LoopTable, base_name: &str) -> Vec<PoolEntry> {
    let space = CocycleSpace::new(fiber, base, CocycleKind::Abelian).unwrap();
    let size = space.size().unwrap();
    (0..size)
        .map(|i| {
            let c = space.candidate(i);
            PoolEntry {
                name: format!("ext {a} by {base_name} #{i}"),
                q: c.build_extension().unwrap(),
                cocycle: Some(c),
            }
        })
        .collect()
}

/// Loops of order at most 6: group tables, every exhaustive abelian
/// extension with fiber and base of order at most 3, every loop of order 5
/// with neutral 0, and (when `with_order6_loops`) every loop of order 6
/// with neutral 0.
pub fn small_pool(with_order6_loops: bool) -> Vec<PoolEntry> {
    let mut out = Vec::new();
    for (name, g) in small_groups() {
        if g.order() <= 6 {
            out.push(entry(name, g));
        }
    }
    let z = |n| AbelianGroup::cyclic(n).unwrap();
    let c = |n| LoopTable::cyclic(n).unwrap();
    out.extend(exhaustive_extensions("Z2", z(2), c(2), "Z2"));
    out.extend(exhaustive_extensions("Z2", z(2), c(3), "Z3"));
    out.extend(exhaustive_extensions("Z3", z(3), c(2), "Z2"));
    for (i, q) in loops_with_neutral_zero(5).into_iter().enumerate() {
        out.push(entry(format!("order-5 loop #{i}"), q));
    }
    if with_order6_loops {
        for (i, q) in loops_with_neutral_zero(6).into_iter().enumerate() {
            out.push(entry(format!("order-6 loop #{i}"), q));
        }
    }
    out
}

/// Fiber/base pairs for random extensions of order 8 to 16.
pub fn extension_shapes() -> Vec<(String, AbelianGroup, String, LoopTable)> {
    let ab = |f: &[usize]| AbelianGroup::new(abelian_group(f).unwrap()).unwrap();
    let five = loops_with_neutral_zero(5)
        .into_iter()
        .find(|q| !q.is_associative())
        .unwrap();
    vec![
        ("Z2".into(), ab(&[2]), "Z4".into(), LoopTable::cyclic(4).unwrap()),
        ("Z4".into(), ab(&[4]), "Z2".into(), LoopTable::cyclic(2).unwrap()),
        ("Z2^2".into(), ab(&[2, 2]), "Z2".into(), LoopTable::cyclic(2).unwrap()),
        ("Z2".into(), ab(&[2]), "Z2^2".into(), abelian_group(&[2, 2]).unwrap()),
        ("Z3".into(), ab(&[3]), "Z3".into(), LoopTable::cyclic(3).unwrap()),
        ("Z5".into(), ab(&[5]), "Z2".into(), LoopTable::cyclic(2).unwrap()),
        ("Z2".into(), ab(&[2]), "L5".into(), five),
        ("Z3".into(), ab(&[3]), "Z4".into(), LoopTable::cyclic(4).unwrap()),
        ("Z6".into(), ab(&[6]), "Z2".into(), LoopTable::cyclic(2).unwrap()),
        ("Z2".into(), ab(&[2]), "S3".into(), symmetric_group(3)),
        ("Z3".into(), ab(&[3]), "Z2^2".into(), abelian_group(&[2, 2]).unwrap()),
        ("Z7".into(), ab(&[7]), "Z2".into(), LoopTable::cyclic(2).unwrap()),
        ("Z5".into(), ab(&[5]), "Z3".into(), LoopTable::cyclic(3).unwrap()),
        ("Z2^3".into(), ab(&[2, 2, 2]), "Z2".into(), LoopTable::cyclic(2).unwrap()),
        ("Z4".into(), ab(&[4]), "Z4".into(), LoopTable::cyclic(4).unwrap()),
        ("Z2^2".into(), ab(&[2, 2]), "Z2^2".into(), abelian_group(&[2, 2]).unwrap()),
        ("Z2".into(), ab(&[2]), "D8".into(), loopcomm::library::dihedral_group(4)),
    ]
}

/// `count` random abelian extensions of order 8 to 16, cycling through
/// [`extension_shapes`]; candidate `k` of shape `k mod s` uses stream `seed`.
pub fn random_extension_pool(seed: u64, count: usize) -> Vec<PoolEntry> {
    let shapes = extension_shapes();
    let spaces: Vec<CocycleSpace> = shapes
        .iter()
        .map(|(_, a, _, f)| CocycleSpace::new(a.clone(), f.clone(), CocycleKind::Abelian).unwrap())
        .collect();
    (0..count)
        .map(|k| {
            let s = k % shapes.len();
            let c = spaces[s].random_candidate(seed, k as u64);
            PoolEntry {
                name: format!("random ext {} by {} #{k}", shapes[s].0, shapes[s].2),
                q: c.build_extension().unwrap(),
                cocycle: Some(c),
            }
        })
        .collect()
}

/// Subset of `0..n` given by sorted elements.
pub fn set_of(elements: &[usize]) -> Set {
    elements.iter().copied().collect()
}
