//! Append-only catalog of analyzed loops.
//!
//! One record per line, tab separated: fingerprint (16 hex digits), order,
//! compact report, source tag. Writers take an exclusive lock on the file.

use std::cmp::Ordering;
use std::fmt;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::iso::fingerprint;
use crate::loops::LoopTable;
use crate::permgroup::Class;
use crate::report::{HierarchyReport, REPORT_KEYS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRecord {
    pub fingerprint: u64,
    pub order: usize,
    pub report: HierarchyReport,
    pub source: String,
}

impl CatalogRecord {
    pub fn for_loop(q: &LoopTable, source: &str) -> Result<Self> {
        Ok(CatalogRecord {
            fingerprint: fingerprint(q)?,
            order: q.order(),
            report: HierarchyReport::analyze(q)?,
            source: source.replace(['\t', '\n', '\r'], " "),
        })
    }

    pub fn parse(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').collect();
        let [fp, order, report, source] = fields[..] else {
            return Err(Error::Malformed(format!("catalog line has {} fields", fields.len())));
        };
        let bad = |what: &str| Error::Malformed(format!("bad catalog {what} in {line:?}"));
        Ok(CatalogRecord {
            fingerprint: u64::from_str_radix(fp, 16).map_err(|_| bad("fingerprint"))?,
            order: order.parse().map_err(|_| bad("order"))?,
            report: HierarchyReport::from_compact(report)?,
            source: source.to_string(),
        })
    }
}

impl fmt::Display for CatalogRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:016x}\t{}\t{}\t{}",
            self.fingerprint,
            self.order,
            self.report.to_compact(),
            self.source
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

/// A condition `key op value` on report fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    pub key: String,
    pub op: CompareOp,
    pub value: String,
}

impl Filter {
    pub fn parse(s: &str) -> Result<Self> {
        const OPS: [(&str, CompareOp); 6] = [
            ("<=", CompareOp::Le),
            (">=", CompareOp::Ge),
            ("!=", CompareOp::Ne),
            ("=", CompareOp::Eq),
            ("<", CompareOp::Lt),
            (">", CompareOp::Gt),
        ];
        for (sym, op) in OPS {
            if let Some((k, v)) = s.split_once(sym) {
                let key = k.trim();
                if !REPORT_KEYS.contains(&key) {
                    return Err(Error::Malformed(format!("unknown field {key:?}")));
                }
                return Ok(Filter {
                    key: key.to_string(),
                    op,
                    value: v.trim().to_string(),
                });
            }
        }
        Err(Error::Malformed(format!("filter {s:?} has no comparison")))
    }

    pub fn matches(&self, report: &HierarchyReport) -> bool {
        let field = report
            .fields()
            .into_iter()
            .find(|(k, _)| *k == self.key)
            .map(|(_, v)| v)
            .expect("key validated on parse");
        // numbers and "inf" compare as classes, anything else only by equality
        let ord = match (field.parse::<Class>(), self.value.parse::<Class>()) {
            (Ok(a), Ok(b)) => Some(a.cmp(&b)),
            _ => (field == self.value).then_some(Ordering::Equal),
        };
        match self.op {
            CompareOp::Eq => ord == Some(Ordering::Equal),
            CompareOp::Ne => ord != Some(Ordering::Equal),
            CompareOp::Lt => ord == Some(Ordering::Less),
            CompareOp::Le => matches!(ord, Some(Ordering::Less | Ordering::Equal)),
            CompareOp::Gt => ord == Some(Ordering::Greater),
            CompareOp::Ge => matches!(ord, Some(Ordering::Greater | Ordering::Equal)),
        }
    }
}

pub struct Catalog {
    path: PathBuf,
}

impl Catalog {
    pub fn new(path: impl AsRef<Path>) -> Self {
        Catalog {
            path: path.as_ref().to_path_buf(),
        }
    }

    fn parse_all(text: &str) -> Result<Vec<CatalogRecord>> {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(CatalogRecord::parse)
            .collect()
    }

    /// All records in file order; a missing file is an empty catalog.
    pub fn records(&self) -> Result<Vec<CatalogRecord>> {
        match std::fs::read_to_string(&self.path) {
            Ok(text) => Self::parse_all(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
            Err(e) => Err(e.into()),
        }
    }

    /// Appends `record` unless one with the same fingerprint exists.
    pub fn add(&self, record: &CatalogRecord) -> Result<bool> {
        let mut file: File = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(&self.path)?;
        file.lock()?;
        let mut text = String::new();
        file.seek(SeekFrom::Start(0))?;
        file.read_to_string(&mut text)?;
        let existing = Self::parse_all(&text)?;
        if existing.iter().any(|r| r.fingerprint == record.fingerprint) {
            return Ok(false);
        }
        if !text.is_empty() && !text.ends_with('\n') {
            file.write_all(b"\n")?;
        }
        writeln!(file, "{record}")?;
        file.flush()?;
        Ok(true)
    }

    /// Records satisfying every filter, sorted by fingerprint.
    pub fn query(&self, filters: &[Filter]) -> Result<Vec<CatalogRecord>> {
        let mut out: Vec<CatalogRecord> = self
            .records()?
            .into_iter()
            .filter(|r| filters.iter().all(|f| f.matches(&r.report)))
            .collect();
        out.sort_by_key(|r| r.fingerprint);
        Ok(out)
    }
}
