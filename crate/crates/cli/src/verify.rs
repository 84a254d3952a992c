use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use hybrid_routing::lowerbound::{verify, GammaInstance, VerificationReport};
use serde::Serialize;

use crate::output::{Output, Table};
use crate::{Global, Outcome};

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Instance JSON file.
    pub instance: PathBuf,
}

pub fn load_instance(path: &PathBuf) -> Result<GammaInstance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn report_table(inst: &GammaInstance, r: &VerificationReport) -> Table {
    let mut t = Table::new(&[
        "bit", "i", "j", "source", "target", "x", "expected", "measured", "via_v", "ok",
    ]);
    for rec in &r.records {
        let (s, tt) = inst.pair(rec.bit);
        t.push(vec![
            rec.bit.to_string(),
            rec.i.to_string(),
            rec.j.to_string(),
            s.to_string(),
            tt.to_string(),
            (rec.x as u8).to_string(),
            rec.expected.to_string(),
            rec.measured.to_string(),
            rec.via_v.to_string(),
            rec.ok.to_string(),
        ]);
    }
    t
}

pub fn summary(r: &VerificationReport) -> String {
    let failed = r.failures().count();
    format!(
        "{}: {}/{} pairs ok, d1 = {}, d0 = {}, hop(A, B) = {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.records.len() - failed,
        r.records.len(),
        r.d1,
        r.d0,
        r.hop_ab.map_or("inf".to_string(), |h| h.to_string()),
    )
}

pub fn cmd(_: &Global, a: &VerifyArgs, out: &Output) -> Outcome {
    let inst = load_instance(&a.instance)?;
    let report = verify(&inst);
    out.csv("verify", &report_table(&inst, &report))?;
    eprintln!("{}", summary(&report));
    Ok(report.pass)
}
