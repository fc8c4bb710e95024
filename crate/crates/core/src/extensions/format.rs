//! Line-oriented cocycle files.
//!
//! ```text
//! A
//! <table of the fiber>
//! F
//! <table of the base>
//! PHI
//! <|F| lines of |F| automorphism indices>
//! PSI
//! <likewise>
//! THETA
//! <|F| lines of |F| fiber elements>
//! ```
//!
//! Automorphism indices refer to [`AbelianGroup::automorphisms`] order.
//! Blank lines and lines starting with `#` are ignored.

use super::abelian::AbelianGroup;
use super::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::loops::LoopTable;

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<&'a str> {
        let line = self
            .lines
            .get(self.pos)
            .ok_or_else(|| Error::Malformed("unexpected end of cocycle file".into()))?;
        self.pos += 1;
        Ok(line)
    }

    fn header(&mut self, name: &str) -> Result<()> {
        let line = self.next()?;
        if line != name {
            return Err(Error::Malformed(format!(
                "expected section {name}, found {line:?}"
            )));
        }
        Ok(())
    }

    fn table(&mut self) -> Result<LoopTable> {
        let first = self.next()?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::Malformed(format!("bad table order {first:?}")))?;
        if n > crate::loops::MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "table order",
                limit: crate::loops::MAX_ORDER as u128,
            });
        }
        let mut text = format!("{n}\n");
        for _ in 0..n {
            text.push_str(self.next()?);
            text.push('\n');
        }
        LoopTable::parse(&text)
    }

    fn grid(&mut self, m: usize, bound: usize, what: &str) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(m * m);
        for _ in 0..m {
            let row: Vec<usize> = self
                .next()?
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Malformed(format!("bad {what} entry {t:?}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != m {
                return Err(Error::Malformed(format!(
                    "{what} row has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= bound) {
                return Err(Error::Malformed(format!(
                    "{what} entry {v} out of range 0..{bound}"
                )));
            }
            out.extend(row);
        }
        Ok(out)
    }
}

pub fn parse_cocycle(text: &str) -> Result<Cocycle> {
    let mut lines = Lines {
        lines: text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect(),
        pos: 0,
    };
    lines.header("A")?;
    let a = AbelianGroup::new(lines.table()?)?;
    lines.header("F")?;
    let f = lines.table()?;
    let auts = a.automorphisms()?;
    let m = f.order();
    lines.header("PHI")?;
    let phi = lines.grid(m, auts.len(), "PHI")?;
    lines.header("PSI")?;
    let psi = lines.grid(m, auts.len(), "PSI")?;
    lines.header("THETA")?;
    let theta = lines.grid(m, a.order(), "THETA")?;
    if lines.pos != lines.lines.len() {
        return Err(Error::Malformed("trailing content after THETA".into()));
    }
    let pick = |idx: Vec<usize>| idx.into_iter().map(|i| auts[i].clone()).collect();
    Cocycle::new(a, f, pick(phi), pick(psi), theta)
}

pub fn write_cocycle(c: &Cocycle) -> Result<String> {
    let auts = c.fiber().automorphisms()?;
    let index = |p: &crate::perm::Permutation| auts.iter().position(|q| q == p).expect("entries are automorphisms");
    let m = c.base().order();
    let mut out = String::new();
    out.push_str("A\n");
    out.push_str(&c.fiber().table().to_table_string());
    out.push_str("F\n");
    out.push_str(&c.base().to_table_string());
    let mut grid = |name: &str, cell: &dyn Fn(usize, usize) -> usize| {
        out.push_str(name);
        out.push('\n');
        for x in 0..m {
            let row: Vec<String> = (0..m).map(|y| cell(x, y).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    };
    grid("PHI", &|x, y| index(c.phi(x, y)));
    grid("PSI", &|x, y| index(c.psi(x, y)));
    grid("THETA", &|x, y| c.theta(x, y));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4_FILE: &str = "\
# Z2 by Z2 with theta(1,1) = 1
A
2
0 1
1 0
F
2
0 1
1 0
PHI
0 0
0 0
PSI
0 0
0 0
THETA
0 0
0 1
";

    #[test]
    fn round_trip() {
        let c = parse_cocycle(Z4_FILE).unwrap();
        assert_eq!(c.theta(1, 1), 1);
        let text = write_cocycle(&c).unwrap();
        assert_eq!(parse_cocycle(&text).unwrap(), c);
        assert!(!text.contains('#'));
    }

    #[test]
    fn errors() {
        assert!(parse_cocycle("").is_err());
        assert!(parse_cocycle(&Z4_FILE.replace("PSI", "PSX")).is_err());
        assert!(parse_cocycle(&Z4_FILE.replace("0 1\n", "0 2\n")).is_err());
        assert!(parse_cocycle(&format!("{Z4_FILE}junk\n")).is_err());
    }
}
