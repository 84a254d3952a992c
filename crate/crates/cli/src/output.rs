use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};

/// Where results go: files in a directory, or stdout.
pub struct Output {
    dir: Option<PathBuf>,
    timestamp: bool,
}

/// A CSV table built row by row.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// Columns padded to their widest cell.
    pub fn to_text(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut s = line(&self.header);
        for r in &self.rows {
            s += &line(r);
        }
        s
    }
}

impl Output {
    pub fn new(dir: Option<PathBuf>, timestamp: bool) -> Self {
        Output { dir, timestamp }
    }

    pub fn to_files(&self) -> bool {
        self.dir.is_some()
    }

    fn write(&self, name: &str, body: &str) -> Result<()> {
        match &self.dir {
            Some(d) => {
                std::fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
                let p = d.join(name);
                std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(body.as_bytes())?;
                Ok(())
            }
        }
    }

    /// Writes `name.csv`, preceded by a `# generated ...` line unless
    /// timestamps are off.
    pub fn csv(&self, name: &str, table: &Table) -> Result<()> {
        let mut body = String::new();
        if self.timestamp {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            body += &format!("# generated at unix time {secs}\n");
        }
        body += &table.to_csv()?;
        self.write(&format!("{name}.csv"), &body)
    }

    pub fn json(&self, name: &str, body: &str) -> Result<()> {
        let mut body = body.to_string();
        if !body.ends_with('\n') {
            body.push('\n');
        }
        self.write(&format!("{name}.json"), &body)
    }

    pub fn text(&self, name: &str, body: &str) -> Result<()> {
        self.write(&format!("{name}.txt"), body)
    }
}

/// Fixed-precision float cell, so CSV output does not depend on float
/// formatting heuristics.
pub fn f(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        x.to_string()
    }
}
