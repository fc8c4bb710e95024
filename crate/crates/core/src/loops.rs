//! Finite loops given by Cayley tables.
//!
//! Elements are plain indices `0..n`. The neutral element is detected from
//! the table and is not required to be `0`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An element of a loop, as an index into its table.
pub type Element = usize;

/// Largest order any table may have.
pub const MAX_ORDER: usize = 512;

/// A validated Latin square (a quasigroup table), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    pub fn new(order: usize, cells: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "table order",
                limit: MAX_ORDER as u128,
            });
        }
        if cells.len() != order * order {
            return Err(Error::Malformed(format!(
                "expected {} cells, got {}",
                order * order,
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c >= order) {
            return Err(Error::Malformed(format!(
                "entry {bad} out of range 0..{order}"
            )));
        }
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                let r = cells[i * order + j];
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(Error::NotLatin(format!("row {i} repeats {r}")));
                }
                let c = cells[j * order + i];
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(Error::NotLatin(format!("column {i} repeats {c}")));
                }
            }
        }
        Ok(LatinSquare { order, cells })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("table is not square".into()));
        }
        LatinSquare::new(n, rows.concat())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// The two-sided identity, if the square has one.
    pub fn find_neutral(&self) -> Option<usize> {
        let n = self.order;
        (0..n).find(|&e| (0..n).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Mul,
    LeftDiv,
    RightDiv,
}

/// Translations `L_x(y) = xy`, `R_x(y) = yx`, `M_x(y) = y\x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TranslationKind {
    Left,
    Right,
    Middle,
}

/// A finite loop: a Latin square with a two-sided neutral element.
pub struct LoopTable {
    square: LatinSquare,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
    neutral: Element,
    inner_cache: OnceLock<Arc<[Permutation]>>,
}

impl Clone for LoopTable {
    fn clone(&self) -> Self {
        LoopTable {
            square: self.square.clone(),
            ldiv: self.ldiv.clone(),
            rdiv: self.rdiv.clone(),
            neutral: self.neutral,
            inner_cache: self.inner_cache.clone(),
        }
    }
}

impl PartialEq for LoopTable {
    fn eq(&self, other: &Self) -> bool {
        self.square == other.square
    }
}

impl Eq for LoopTable {}

impl fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoopTable")
            .field("order", &self.order())
            .field("neutral", &self.neutral)
            .field("table", &self.square.cells)
            .finish()
    }
}

impl LoopTable {
    pub fn from_square(square: LatinSquare) -> Result<Self> {
        let neutral = square.find_neutral().ok_or(Error::NoNeutral)?;
        let n = square.order;
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for x in 0..n {
            for z in 0..n {
                let y = square.get(x, z);
                // x·z = y  =>  x\y = z and y/z = x
                ldiv[x * n + y] = z;
                rdiv[y * n + z] = x;
            }
        }
        Ok(LoopTable {
            square,
            ldiv,
            rdiv,
            neutral,
            inner_cache: OnceLock::new(),
        })
    }

    pub fn from_cells(order: usize, cells: Vec<usize>) -> Result<Self> {
        LoopTable::from_square(LatinSquare::new(order, cells)?)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        LoopTable::from_square(LatinSquare::from_rows(rows)?)
    }

    /// Builds a table from a multiplication closure on `0..n`.
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let cells = (0..order * order)
            .map(|i| mul(i / order, i % order))
            .collect();
        LoopTable::from_cells(order, cells)
    }

    /// Parses the Cayley-table text format: the order on the first line,
    /// then one row per line; `#` lines are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let first = lines
            .next()
            .ok_or_else(|| Error::Malformed("empty table file".into()))?;
        let order: usize = first
            .parse()
            .map_err(|_| Error::Malformed(format!("bad order line {first:?}")))?;
        if order == 0 {
            return Err(Error::Malformed("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "table order",
                limit: MAX_ORDER as u128,
            });
        }
        let mut cells = Vec::with_capacity(order * order);
        for r in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| Error::Malformed(format!("missing row {r}")))?;
            let row = parse_row(line)?;
            if row.len() != order {
                return Err(Error::Malformed(format!(
                    "row {r} has {} entries, expected {order}",
                    row.len()
                )));
            }
            cells.extend(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Malformed(format!("trailing content {extra:?}")));
        }
        LoopTable::from_cells(order, cells)
    }

    /// The table in the Cayley-table file format, with a trailing newline.
    pub fn to_table_string(&self) -> String {
        self.to_string()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.square.order
    }

    #[inline]
    pub fn neutral(&self) -> Element {
        self.neutral
    }

    pub fn square(&self) -> &LatinSquare {
        &self.square
    }

    pub fn cells(&self) -> &[usize] {
        &self.square.cells
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order()
    }

    pub fn check_element(&self, x: Element) -> Result<()> {
        if x < self.order() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                element: x,
                order: self.order(),
            })
        }
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.square.get(x, y)
    }

    /// `x\y`, the unique `z` with `x·z = y`.
    #[inline]
    pub fn ldiv(&self, x: Element, y: Element) -> Element {
        self.ldiv[x * self.order() + y]
    }

    /// `x/y`, the unique `z` with `z·y = x`.
    #[inline]
    pub fn rdiv(&self, x: Element, y: Element) -> Element {
        self.rdiv[x * self.order() + y]
    }

    pub fn op(&self, kind: OpKind, x: Element, y: Element) -> Element {
        match kind {
            OpKind::Mul => self.mul(x, y),
            OpKind::LeftDiv => self.ldiv(x, y),
            OpKind::RightDiv => self.rdiv(x, y),
        }
    }

    pub fn translation(&self, kind: TranslationKind, x: Element) -> Permutation {
        let images = self
            .elements()
            .map(|y| match kind {
                TranslationKind::Left => self.mul(x, y),
                TranslationKind::Right => self.mul(y, x),
                TranslationKind::Middle => self.ldiv(y, x),
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// `[y,x] = ((yx)/y)/x`.
    #[inline]
    pub fn commutator(&self, y: Element, x: Element) -> Element {
        self.rdiv(self.rdiv(self.mul(y, x), y), x)
    }

    /// `[x,y,z] = (((xy)z)/(yz))/x`.
    #[inline]
    pub fn associator(&self, x: Element, y: Element, z: Element) -> Element {
        self.rdiv(
            self.rdiv(self.mul(self.mul(x, y), z), self.mul(y, z)),
            x,
        )
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_group(&self) -> bool {
        self.is_associative()
    }

    pub fn is_abelian_group(&self) -> bool {
        self.is_commutative() && self.is_associative()
    }

    /// Two-sided inverse `1/x`, meaningful in groups.
    pub fn inverse(&self, x: Element) -> Element {
        self.rdiv(self.neutral, x)
    }

    /// Order of `x` as a power-associative element: least `k` with the
    /// left-nested power `x(x(...x))` equal to the neutral element.
    pub fn element_order(&self, x: Element) -> usize {
        let mut p = x;
        let mut k = 1;
        while p != self.neutral && k <= self.order() {
            p = self.mul(x, p);
            k += 1;
        }
        k
    }

    /// The table transported along the bijection `f` (`new[f(x)][f(y)] = f(xy)`).
    pub fn relabel(&self, f: &Permutation) -> LoopTable {
        let n = self.order();
        let mut cells = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[f.apply(x) * n + f.apply(y)] = f.apply(self.mul(x, y));
            }
        }
        LoopTable::from_cells(n, cells).expect("relabeling preserves the loop axioms")
    }

    /// Relabels so that the neutral element becomes `0` by swapping it with `0`.
    pub fn with_neutral_zero(&self) -> LoopTable {
        if self.neutral == 0 {
            return self.clone();
        }
        let swap = Permutation::from_cycles(self.order(), &[&[0, self.neutral]])
            .expect("valid transposition");
        self.relabel(&swap)
    }

    /// Whether `f` (given by its image list) is a homomorphism into `other`.
    pub fn is_homomorphism(&self, other: &LoopTable, f: &[Element]) -> bool {
        f.len() == self.order()
            && self.elements().all(|x| {
                self.elements()
                    .all(|y| f[self.mul(x, y)] == other.mul(f[x], f[y]))
            })
    }

    pub(crate) fn inner_cache(&self) -> &OnceLock<Arc<[Permutation]>> {
        &self.inner_cache
    }

    /// The trivial loop of order one.
    pub fn trivial() -> LoopTable {
        LoopTable::from_cells(1, vec![0]).unwrap()
    }

    /// `Z_n` with `0` neutral.
    pub fn cyclic(n: usize) -> Result<LoopTable> {
        LoopTable::from_fn(n, |x, y| (x + y) % n)
    }
}

fn parse_row(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Malformed(format!("bad table entry {t:?}")))
        })
        .collect()
}

impl fmt::Display for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        writeln!(f, "{n}")?;
        for x in 0..n {
            for y in 0..n {
                if y > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.mul(x, y))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for LoopTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LoopTable::parse(s)
    }
}

/// Componentwise product; the pair `(a, b)` is encoded as `a + |Q1|·b`.
pub fn direct_product(q1: &LoopTable, q2: &LoopTable) -> Result<LoopTable> {
    let (n1, n2) = (q1.order(), q2.order());
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= MAX_ORDER)
        .ok_or(Error::CapExceeded {
            what: "table order",
            limit: MAX_ORDER as u128,
        })?;
    LoopTable::from_fn(n, |x, y| {
        let (a, b) = (x % n1, x / n1);
        let (c, d) = (y % n1, y / n1);
        q1.mul(a, c) + n1 * q2.mul(b, d)
    })
}

/// The loop `G[⊕]` on `G × Z₂`, with `(x, a)` encoded as `x + |G|·a`:
/// `(x,a)(y,b) = (x+y, a+b)` unless `a = b = 1`, where it is `(x⊕y, 0)`.
pub fn g_oplus(g: &LoopTable, oplus: &LatinSquare) -> Result<LoopTable> {
    if !g.is_abelian_group() {
        return Err(Error::NotAbelianGroup(
            "G[⊕] needs a commutative group".into(),
        ));
    }
    let n = g.order();
    if oplus.order() != n {
        return Err(Error::NotLatin(format!(
            "⊕ has order {}, expected {n}",
            oplus.order()
        )));
    }
    LoopTable::from_fn(2 * n, |p, q| {
        let (x, a) = (p % n, p / n);
        let (y, b) = (q % n, q / n);
        if a == 1 && b == 1 {
            oplus.get(x, y)
        } else {
            g.mul(x, y) + n * ((a + b) % 2)
        }
    })
}
