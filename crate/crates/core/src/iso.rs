//! Isomorphism testing and canonical labelings.

use crate::error::{Error, Result};
use crate::loops::{Element, LoopTable, TranslationKind};
use crate::perm::Permutation;

/// Per-element isomorphism invariant: cycle types of `L_x` and `R_x`.
fn element_invariant(q: &LoopTable, x: Element) -> (Vec<usize>, Vec<usize>) {
    (
        q.translation(TranslationKind::Left, x).cycle_type(),
        q.translation(TranslationKind::Right, x).cycle_type(),
    )
}

fn invariants(q: &LoopTable) -> Vec<(Vec<usize>, Vec<usize>)> {
    q.elements().map(|x| element_invariant(q, x)).collect()
}

/// Partial map from `q1` into `q2` closed under the three operations.
#[derive(Clone)]
struct PartialMap {
    image: Vec<Option<Element>>,
    used: Vec<bool>,
    domain: Vec<Element>,
}

impl PartialMap {
    fn assign(&mut self, x: Element, y: Element) -> bool {
        match self.image[x] {
            Some(z) => z == y,
            None if self.used[y] => false,
            None => {
                self.image[x] = Some(y);
                self.used[y] = true;
                self.domain.push(x);
                true
            }
        }
    }

    /// Extends the map to the subloop generated by its domain.
    fn close(&mut self, q1: &LoopTable, q2: &LoopTable) -> bool {
        let mut k = 0;
        while k < self.domain.len() {
            let x = self.domain[k];
            let fx = self.image[x].unwrap();
            for i in 0..=k {
                let y = self.domain[i];
                let fy = self.image[y].unwrap();
                for (a, b, fa, fb) in [(x, y, fx, fy), (y, x, fy, fx)] {
                    if !self.assign(q1.mul(a, b), q2.mul(fa, fb))
                        || !self.assign(q1.ldiv(a, b), q2.ldiv(fa, fb))
                        || !self.assign(q1.rdiv(a, b), q2.rdiv(fa, fb))
                    {
                        return false;
                    }
                }
            }
            k += 1;
        }
        true
    }
}

/// An isomorphism `q1 → q2` as an image list, if one exists.
///
/// Generators are taken as the least unmapped element at each stage and
/// candidate images are tried in increasing order, so the answer is
/// deterministic: the first isomorphism met in that search order.
pub fn is_isomorphic(q1: &LoopTable, q2: &LoopTable) -> Option<Vec<Element>> {
    let n = q1.order();
    if n != q2.order()
        || q1.is_commutative() != q2.is_commutative()
        || q1.is_associative() != q2.is_associative()
    {
        return None;
    }
    let inv1 = invariants(q1);
    let inv2 = invariants(q2);
    let mut sorted1 = inv1.clone();
    let mut sorted2 = inv2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    let mut start = PartialMap {
        image: vec![None; n],
        used: vec![false; n],
        domain: Vec::new(),
    };
    if !start.assign(q1.neutral(), q2.neutral()) || !start.close(q1, q2) {
        return None;
    }
    let found = extend(q1, q2, &inv1, &inv2, start)?;
    debug_assert!(q1.is_homomorphism(q2, &found));
    Some(found)
}

fn extend(
    q1: &LoopTable,
    q2: &LoopTable,
    inv1: &[(Vec<usize>, Vec<usize>)],
    inv2: &[(Vec<usize>, Vec<usize>)],
    map: PartialMap,
) -> Option<Vec<Element>> {
    let Some(x) = map.image.iter().position(Option::is_none) else {
        let f: Vec<Element> = map.image.iter().map(|y| y.unwrap()).collect();
        return q1.is_homomorphism(q2, &f).then_some(f);
    };
    for y in q2.elements() {
        if map.used[y] || inv1[x] != inv2[y] {
            continue;
        }
        let mut next = map.clone();
        if next.assign(x, y) && next.close(q1, q2) {
            if let Some(f) = extend(q1, q2, inv1, inv2, next) {
                return Some(f);
            }
        }
    }
    None
}

/// Search-tree budget for [`canonical_form`].
pub const CANONICAL_NODE_CAP: usize = 2_000_000;

struct Labeler<'a> {
    q: &'a LoopTable,
    keys: Vec<(Vec<usize>, Vec<usize>)>,
    best: Option<Vec<usize>>,
    nodes: usize,
}

impl Labeler<'_> {
    /// Labels everything generated by the already labeled elements, in a
    /// fixed order that depends only on the labels.
    fn close(&self, labels: &mut Vec<Element>, label_of: &mut [Option<usize>], from: usize) {
        let q = self.q;
        let mut k = from;
        while k < labels.len() {
            for i in 0..=k {
                for (a, b) in [(labels[i], labels[k]), (labels[k], labels[i])] {
                    for z in [q.mul(a, b), q.ldiv(a, b), q.rdiv(a, b)] {
                        if label_of[z].is_none() {
                            label_of[z] = Some(labels.len());
                            labels.push(z);
                        }
                    }
                }
            }
            k += 1;
        }
    }

    fn search(&mut self, labels: Vec<Element>, label_of: Vec<Option<usize>>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > CANONICAL_NODE_CAP {
            return Err(Error::CapExceeded {
                what: "canonical labeling search",
                limit: CANONICAL_NODE_CAP as u128,
            });
        }
        let n = self.q.order();
        if labels.len() == n {
            let cells: Vec<usize> = (0..n * n)
                .map(|c| {
                    let (i, j) = (c / n, c % n);
                    label_of[self.q.mul(labels[i], labels[j])].unwrap()
                })
                .collect();
            if self.best.as_ref().is_none_or(|b| cells < *b) {
                self.best = Some(cells);
            }
            return Ok(());
        }
        let unlabeled = (0..n).filter(|&x| label_of[x].is_none());
        let min_key = unlabeled
            .clone()
            .map(|x| &self.keys[x])
            .min()
            .unwrap()
            .clone();
        let candidates: Vec<Element> = unlabeled.filter(|&x| self.keys[x] == min_key).collect();
        for g in candidates {
            let mut labels = labels.clone();
            let mut label_of = label_of.clone();
            let from = labels.len();
            label_of[g] = Some(from);
            labels.push(g);
            self.close(&mut labels, &mut label_of, 0);
            self.search(labels, label_of)?;
        }
        Ok(())
    }
}

/// The lexicographically least table among the relabelings produced by
/// generator-driven labeling, with every isomorphism-invariant choice of
/// generators explored. Isomorphic loops get identical canonical tables.
pub fn canonical_form(q: &LoopTable) -> Result<LoopTable> {
    let n = q.order();
    let mut labeler = Labeler {
        q,
        keys: invariants(q),
        best: None,
        nodes: 0,
    };
    let mut label_of = vec![None; n];
    label_of[q.neutral()] = Some(0);
    let mut labels = vec![q.neutral()];
    labeler.close(&mut labels, &mut label_of, 0);
    labeler.search(labels, label_of)?;
    let cells = labeler.best.expect("search visits at least one leaf");
    LoopTable::from_cells(n, cells)
}

/// 64-bit fingerprint of the canonical table.
///
/// FNV-1a (offset basis `0xcbf29ce484222325`, prime `0x100000001b3`) over
/// the order and then every cell, each as 4 little-endian bytes, followed by
/// the SplitMix64 finalizer (`0xbf58476d1ce4e5b9`, `0x94d049bb133111eb`).
pub fn fingerprint(q: &LoopTable) -> Result<u64> {
    let canon = canonical_form(q)?;
    Ok(fingerprint_table(&canon))
}

/// The fingerprint hash applied to a table as given (no canonicalization).
pub fn fingerprint_table(q: &LoopTable) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |v: usize| {
        for b in (v as u32).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    feed(q.order());
    for &c in q.cells() {
        feed(c);
    }
    let mut z = h;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Converts an image list into a permutation.
pub fn as_permutation(f: &[Element]) -> Permutation {
    Permutation::from_images(f.to_vec()).expect("isomorphisms are bijections")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::direct_product;

    #[test]
    fn self_isomorphism_is_identity() {
        let q = LoopTable::cyclic(5).unwrap();
        assert_eq!(is_isomorphic(&q, &q).unwrap(), (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn z4_is_not_klein() {
        let z2 = LoopTable::cyclic(2).unwrap();
        let klein = direct_product(&z2, &z2).unwrap();
        assert!(is_isomorphic(&LoopTable::cyclic(4).unwrap(), &klein).is_none());
    }

    #[test]
    fn z2_times_z3_is_z6() {
        let p = direct_product(&LoopTable::cyclic(2).unwrap(), &LoopTable::cyclic(3).unwrap())
            .unwrap();
        let z6 = LoopTable::cyclic(6).unwrap();
        let f = is_isomorphic(&p, &z6).unwrap();
        assert!(p.is_homomorphism(&z6, &f));
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let q = LoopTable::parse("3\n1 2 0\n2 0 1\n0 1 2").unwrap();
        let z3 = LoopTable::cyclic(3).unwrap();
        assert_eq!(canonical_form(&q).unwrap(), canonical_form(&z3).unwrap());
        assert_eq!(fingerprint(&q).unwrap(), fingerprint(&z3).unwrap());
        assert_ne!(
            fingerprint(&LoopTable::cyclic(4).unwrap()).unwrap(),
            fingerprint(&direct_product(&LoopTable::cyclic(2).unwrap(), &LoopTable::cyclic(2).unwrap()).unwrap())
                .unwrap()
        );
    }
}
