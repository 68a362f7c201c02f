//! Result tables: CSV with a `#`-prefixed JSON metadata line, optional JSON
//! mirror.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: &str, unit: &str) -> Self {
        Self { name: name.into(), unit: unit.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableMeta {
    pub table: String,
    pub tool: String,
    pub version: String,
    pub constants_sha256: String,
    pub columns: Vec<Column>,
    /// Free-form run description: parameter snapshot, cutoffs, flags.
    pub run: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub meta: TableMeta,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(name: &str, constants_sha256: &str, columns: Vec<Column>) -> Self {
        Self {
            meta: TableMeta {
                table: name.into(),
                tool: env!("CARGO_PKG_NAME").into(),
                version: env!("CARGO_PKG_VERSION").into(),
                constants_sha256: constants_sha256.into(),
                columns,
                run: BTreeMap::new(),
            },
            rows: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.meta.table
    }

    pub fn with_run(mut self, key: &str, value: impl Serialize) -> Self {
        self.set_run(key, value);
        self
    }

    pub fn set_run(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.meta.run.insert(key.into(), v);
    }

    /// Appends a row; rejects wrong widths and non-finite values.
    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.meta.columns.len() {
            return Err(Error::DimensionMismatch {
                context: "ResultTable::push",
                expected: self.meta.columns.len(),
                found: row.len(),
            });
        }
        if let Some(x) = row.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter {
                name: self.meta.table.clone(),
                reason: format!("non-finite value {x}"),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.meta.columns.iter().position(|c| c.name == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Header row and data rows only.
    pub fn csv_body(&self) -> String {
        let mut s = String::new();
        let names: Vec<&str> = self.meta.columns.iter().map(|c| c.name.as_str()).collect();
        s.push_str(&names.join(","));
        s.push('\n');
        for row in &self.rows {
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                write_number(&mut s, *x);
            }
            s.push('\n');
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let meta = serde_json::to_string(&self.meta).expect("metadata serializes");
        format!("# {meta}\n{}", self.csv_body())
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Mirror<'a> {
            meta: &'a TableMeta,
            rows: &'a [Vec<f64>],
        }
        serde_json::to_string_pretty(&Mirror { meta: &self.meta, rows: &self.rows }).expect("table serializes")
    }
}

/// Shortest round-trip form; exponent notation outside [1e-4, 1e15).
fn write_number(s: &mut String, x: f64) {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) {
        let _ = write!(s, "{x}");
    } else {
        let _ = write!(s, "{x:e}");
    }
}

/// Parses the metadata line and body of a CSV written by [`ResultTable::to_csv`].
pub fn split_csv(text: &str) -> Result<(Value, &str)> {
    let (first, body) = text.split_once('\n').ok_or_else(|| Error::Config("empty table".into()))?;
    let json = first.strip_prefix("# ").ok_or_else(|| Error::Config("missing metadata line".into()))?;
    let meta = serde_json::from_str(json).map_err(|e| Error::Config(format!("bad metadata: {e}")))?;
    Ok((meta, body))
}

/// Output sink that refuses to overwrite unless forced.
#[derive(Clone, Debug)]
pub struct OutputDir {
    pub root: PathBuf,
    pub force: bool,
    pub json: bool,
}

impl OutputDir {
    pub fn new(root: impl Into<PathBuf>, force: bool, json: bool) -> Self {
        Self { root: root.into(), force, json }
    }

    fn targets(&self, table: &ResultTable) -> Vec<PathBuf> {
        let mut t = vec![self.root.join(format!("{}.csv", table.name()))];
        if self.json {
            t.push(self.root.join(format!("{}.json", table.name())));
        }
        t
    }

    /// Fails before writing anything if a target exists and `force` is off.
    pub fn check(&self, names: &[&str]) -> Result<()> {
        if self.force {
            return Ok(());
        }
        for name in names {
            for ext in ["csv", "json"] {
                let p = self.root.join(format!("{name}.{ext}"));
                if (ext == "csv" || self.json) && p.exists() {
                    return Err(Error::Config(format!("{} exists; pass --force to overwrite", p.display())));
                }
            }
        }
        Ok(())
    }

    /// Like [`OutputDir::check`] for a JSON report written by [`OutputDir::write_report`].
    pub fn check_report(&self, name: &str) -> Result<()> {
        let p = self.root.join(format!("{name}.json"));
        if !self.force && p.exists() {
            return Err(Error::Config(format!("{} exists; pass --force to overwrite", p.display())));
        }
        Ok(())
    }

    pub fn write(&self, tables: &[ResultTable]) -> Result<Vec<PathBuf>> {
        let names: Vec<&str> = tables.iter().map(|t| t.name()).collect();
        self.check(&names)?;
        std::fs::create_dir_all(&self.root)?;
        let mut written = Vec::new();
        for t in tables {
            for p in self.targets(t) {
                let text = if p.extension().is_some_and(|e| e == "csv") { t.to_csv() } else { t.to_json() };
                std::fs::write(&p, text)?;
                written.push(p);
            }
        }
        Ok(written)
    }

    pub fn write_report(&self, name: &str, report: &impl Serialize) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.root)?;
        let p = self.root.join(format!("{name}.json"));
        let text = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(&p, text + "\n")?;
        Ok(p)
    }

    pub fn path(&self, file: &str) -> PathBuf {
        self.root.join(file)
    }
}
