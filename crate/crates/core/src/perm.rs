//! Permutations of `0..degree`.
//!
//! Composition follows the right-to-left convention used for mappings:
//! `f.compose(&g)` is the permutation `x ↦ f(g(x))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Malformed(format!(
                    "image list is not a permutation of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::Malformed(format!("bad cycle entry {x}")));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// Group commutator `self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    /// Conjugate `by · self · by⁻¹`.
    pub fn conjugate_by(&self, by: &Permutation) -> Permutation {
        by.compose(self).compose(&by.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.images[x] == x
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u128 {
        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycle_type()
            .into_iter()
            .fold(1u128, |acc, l| acc / gcd(acc, l as u128) * l as u128)
    }

    /// Restriction to an invariant subset, relabeled by position in `subset`.
    ///
    /// Returns `None` when the subset is not mapped into itself.
    pub fn restrict(&self, subset: &[usize]) -> Option<Permutation> {
        let mut pos = vec![usize::MAX; self.degree()];
        for (i, &x) in subset.iter().enumerate() {
            pos[x] = i;
        }
        let images: Option<Vec<usize>> = subset
            .iter()
            .map(|&x| {
                let p = pos[self.images[x]];
                (p != usize::MAX).then_some(p)
            })
            .collect();
        images.map(|images| Permutation { images })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// One line of space-separated images.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("bad permutation token {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            return Err(Error::Malformed("empty permutation".into()));
        }
        Permutation::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_right_to_left() {
        let f = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let g = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // g first: 1 -> 2, then f leaves 2 alone
        assert_eq!(f.compose(&g).apply(1), 2);
        assert_eq!(f.compose(&g).apply(2), 0);
    }

    #[test]
    fn serialization_round_trip() {
        let p: Permutation = "2 0 1 3".parse().unwrap();
        assert_eq!(p.to_string(), "2 0 1 3");
        assert!("0 0 1".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
    }

    #[test]
    fn order_and_cycle_type() {
        let p = Permutation::from_cycles(6, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2, 1]);
        assert_eq!(p.order(), 6);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn restrict_to_invariant_block() {
        let p = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        assert_eq!(p.restrict(&[1, 3]).unwrap().images(), &[1, 0]);
        assert!(p.restrict(&[0, 1]).is_none());
    }
}
