use crate::error::{Error, Result};
use crate::loops::{Element, LoopTable};
use crate::perm::Permutation;

/// Largest group order for which [`AbelianGroup::automorphisms`] enumerates.
pub const AUTOMORPHISM_ORDER_CAP: usize = 10;

/// A commutative group written additively, with zero the table's neutral.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianGroup {
    table: LoopTable,
    neg: Vec<Element>,
}

impl AbelianGroup {
    pub fn new(table: LoopTable) -> Result<Self> {
        if !table.is_abelian_group() {
            return Err(Error::NotAbelianGroup(
                "table is not commutative and associative".into(),
            ));
        }
        let neg = table.elements().map(|x| table.inverse(x)).collect();
        Ok(AbelianGroup { table, neg })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        AbelianGroup::new(LoopTable::cyclic(n)?)
    }

    pub fn table(&self) -> &LoopTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn zero(&self) -> Element {
        self.table.neutral()
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        self.table.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg[b])
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        let n = self.order();
        p.degree() == n
            && (0..n).all(|a| (0..n).all(|b| p.apply(self.add(a, b)) == self.add(p.apply(a), p.apply(b))))
    }

    /// Every automorphism, in lexicographic order of image lists. The
    /// identity comes first.
    pub fn automorphisms(&self) -> Result<Vec<Permutation>> {
        let n = self.order();
        if n > AUTOMORPHISM_ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "automorphism enumeration order",
                limit: AUTOMORPHISM_ORDER_CAP as u128,
            });
        }
        let orders: Vec<usize> = self.table.elements().map(|x| self.table.element_order(x)).collect();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut out = Vec::new();
        self.extend_aut(0, &orders, &mut image, &mut used, &mut out);
        Ok(out)
    }

    fn extend_aut(
        &self,
        k: usize,
        orders: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        let n = self.order();
        if k == n {
            out.push(Permutation::from_images(image.to_vec()).expect("bijection"));
            return;
        }
        for y in 0..n {
            if used[y] || orders[y] != orders[k] || (k == self.zero()) != (y == self.zero()) {
                continue;
            }
            image[k] = y;
            // check every sum relation whose three terms are now all mapped
            let consistent = (0..=k).all(|i| {
                let s = self.add(i, k);
                s > k || image[s] == self.add(image[i], y)
            }) && (0..k).all(|i| {
                let j = self.sub(k, i);
                j >= k || y == self.add(image[i], image[j])
            });
            if consistent {
                used[y] = true;
                self.extend_aut(k + 1, orders, image, used, out);
                used[y] = false;
            }
            image[k] = usize::MAX;
        }
    }
}
